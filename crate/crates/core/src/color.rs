//! Colors as nonempty sets of primary colors.
//!
//! A color is a positive integer whose set bits are the primary colors
//! `1, 2, 4, ..., 2^(k-1)` it is made of. At level `k` the admissible colors
//! are `1..=2^k - 1`; the top primary color `2^(k-1)` plays a special role in
//! the level-`k` bijection.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest level supported. Colors are stored in a `u32`.
pub const MAX_LEVEL: u8 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("invalid color {0}: a color must be a positive integer")]
    InvalidColor(i64),
    #[error("color {color} is out of range for level {level}")]
    OutOfRange { color: u32, level: u8 },
    #[error("invalid level {0}: levels run from 1 to {MAX_LEVEL}")]
    InvalidLevel(i64),
    #[error("delta* is undefined when the left color is the top primary color {0}")]
    UndefinedDeltaStar(u32),
    #[error("color {color} has {bits} primary colors, cannot move {j} of them and keep a remainder")]
    InsufficientBits { color: u32, bits: u32, j: u32 },
    #[error("cannot undo a redistribution between colors {prev} and {cur} at level {level}")]
    InvalidRedistribution { prev: u32, cur: u32, level: u8 },
}

/// Ambient number of primary colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u8")]
pub struct Level(u8);

impl Level {
    pub fn new(k: i64) -> Result<Self, ColorError> {
        if (1..=MAX_LEVEL as i64).contains(&k) {
            Ok(Level(k as u8))
        } else {
            Err(ColorError::InvalidLevel(k))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// The top primary color `2^(k-1)`.
    pub fn top(self) -> Color {
        Color(1 << (self.0 - 1))
    }

    /// Largest admissible color `2^k - 1`.
    pub fn max_color(self) -> u32 {
        (1u32 << self.0) - 1
    }

    pub fn colors(self) -> impl Iterator<Item = Color> {
        (1..=self.max_color()).map(Color)
    }

    pub fn contains(self, c: Color) -> bool {
        c.0 <= self.max_color()
    }

    pub fn previous(self) -> Option<Level> {
        (self.0 > 1).then(|| Level(self.0 - 1))
    }

    pub fn next(self) -> Option<Level> {
        (self.0 < MAX_LEVEL).then(|| Level(self.0 + 1))
    }
}

impl TryFrom<i64> for Level {
    type Error = ColorError;
    fn try_from(k: i64) -> Result<Self, Self::Error> {
        Level::new(k)
    }
}

impl From<Level> for u8 {
    fn from(l: Level) -> u8 {
        l.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A nonempty set of primary colors, encoded in binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u32")]
pub struct Color(u32);

impl Color {
    pub const ONE: Color = Color(1);

    pub fn new(value: i64) -> Result<Self, ColorError> {
        if value >= 1 && value <= u32::MAX as i64 {
            Ok(Color(value as u32))
        } else {
            Err(ColorError::InvalidColor(value))
        }
    }

    pub fn in_level(value: i64, level: Level) -> Result<Self, ColorError> {
        let c = Color::new(value)?;
        if level.contains(c) {
            Ok(c)
        } else {
            Err(ColorError::OutOfRange { color: c.0, level: level.0 })
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of primary colors in `self`.
    pub fn omega(self) -> u32 {
        self.0.count_ones()
    }

    /// Smallest primary color in `self`.
    pub fn v_min(self) -> u32 {
        1 << self.0.trailing_zeros()
    }

    /// Largest primary color in `self`.
    pub fn z_max(self) -> u32 {
        1 << (31 - self.0.leading_zeros())
    }

    pub fn has_bit(self, primary: u32) -> bool {
        self.0 & primary != 0
    }

    pub fn is_primary(self) -> bool {
        self.0.is_power_of_two()
    }

    /// Index `r` such that `v_min = 2^r`.
    pub fn v_index(self) -> u32 {
        self.0.trailing_zeros()
    }
}

impl TryFrom<i64> for Color {
    type Error = ColorError;
    fn try_from(value: i64) -> Result<Self, Self::Error> {
        Color::new(value)
    }
}

impl From<Color> for u32 {
    fn from(c: Color) -> u32 {
        c.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn omega(c: Color) -> u32 {
    c.omega()
}

pub fn v_min(c: Color) -> u32 {
    c.v_min()
}

pub fn z_max(c: Color) -> u32 {
    c.z_max()
}

/// 1 when every primary color of `c1` is below every primary color of `c2`.
pub fn delta(c1: Color, c2: Color) -> u32 {
    u32::from(c1.z_max() < c2.v_min())
}

/// `delta` computed after discarding the top primary color of `level` from
/// the left color. Undefined when the left color is the top primary color.
pub fn delta_star(c1: Color, c2: Color, level: Level) -> Result<u32, ColorError> {
    let top = level.top().0;
    match c1.0.cmp(&top) {
        std::cmp::Ordering::Less => Ok(delta(c1, c2)),
        std::cmp::Ordering::Equal => Err(ColorError::UndefinedDeltaStar(top)),
        std::cmp::Ordering::Greater => Ok(delta(Color(c1.0 - top), c2)),
    }
}

/// Moves the `j` lowest primary colors of `c_prev`, together with the top
/// primary color, onto the left part; the rest of `c_prev` goes to the right
/// part. Returns `(left, right)`.
pub fn redistribute_forward(c_prev: Color, j: u32, level: Level) -> Result<(Color, Color), ColorError> {
    if !level.contains(c_prev) {
        return Err(ColorError::OutOfRange { color: c_prev.0, level: level.0 });
    }
    let bits = c_prev.omega();
    if j == 0 || bits <= j {
        return Err(ColorError::InsufficientBits { color: c_prev.0, bits, j });
    }
    let mut low = 0u32;
    let mut rest = c_prev.0;
    for _ in 0..j {
        let bit = rest & rest.wrapping_neg();
        low |= bit;
        rest &= !bit;
    }
    Ok((Color(low | level.top().0), Color(rest)))
}

/// Undoes [`redistribute_forward`]: the right color is merged back into the
/// left one and the right part returns to the top primary color.
pub fn redistribute_inverse(c_prev: Color, c_i: Color, level: Level) -> Result<(Color, Color), ColorError> {
    let top = level.top().0;
    let bad = || ColorError::InvalidRedistribution { prev: c_prev.0, cur: c_i.0, level: level.0 };
    if !level.contains(c_prev) || !level.contains(c_i) || c_prev.0 <= top || c_i.0 == top {
        return Err(bad());
    }
    let stripped = c_prev.0 - top;
    if stripped & c_i.0 != 0 {
        return Err(bad());
    }
    Ok((Color(stripped | c_i.0), Color(top)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Color {
        Color::new(v).unwrap()
    }

    fn lvl(k: i64) -> Level {
        Level::new(k).unwrap()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(c(3)), 2);
        assert_eq!(omega(c(1)), 1);
        assert_eq!(omega(c(5)), 2);
    }

    #[test]
    fn nonpositive_colors_are_rejected() {
        assert_eq!(Color::new(0), Err(ColorError::InvalidColor(0)));
        assert_eq!(Color::new(-3), Err(ColorError::InvalidColor(-3)));
        assert!(Color::in_level(8, lvl(3)).is_err());
        assert!(Level::new(0).is_err());
    }

    #[test]
    fn v_and_z() {
        assert_eq!((v_min(c(3)), z_max(c(3))), (1, 2));
        assert_eq!((v_min(c(4)), z_max(c(4))), (4, 4));
        assert_eq!((v_min(c(5)), z_max(c(5))), (1, 4));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(c(3), c(4)), 1);
        assert_eq!(delta(c(5), c(2)), 0);
        assert_eq!(delta(c(1), c(1)), 0);
        // 7 - 6 = 1 < 2 = omega(3) + delta(3, 4) - 1
        assert_eq!(omega(c(3)) + delta(c(3), c(4)) - 1, 2);
        // 1 >= 1 = omega(5) + delta(5, 2) - 1
        assert_eq!(omega(c(5)) + delta(c(5), c(2)) - 1, 1);
    }

    #[test]
    fn delta_star_examples() {
        assert_eq!(delta_star(c(5), c(2), lvl(3)), Ok(1));
        assert_eq!(delta_star(c(3), c(2), lvl(3)), Ok(0));
        assert_eq!(delta_star(c(4), c(1), lvl(3)), Err(ColorError::UndefinedDeltaStar(4)));
    }

    #[test]
    fn forward_redistribution_examples() {
        assert_eq!(redistribute_forward(c(3), 1, lvl(3)), Ok((c(5), c(2))));
        assert_eq!(redistribute_forward(c(7), 2, lvl(4)), Ok((c(11), c(4))));
        assert!(matches!(
            redistribute_forward(c(1), 1, lvl(3)),
            Err(ColorError::InsufficientBits { .. })
        ));
    }

    #[test]
    fn inverse_redistribution_examples() {
        assert_eq!(redistribute_inverse(c(5), c(2), lvl(3)), Ok((c(3), c(4))));
        let (a, b) = redistribute_forward(c(3), 1, lvl(3)).unwrap();
        assert_eq!(redistribute_inverse(a, b, lvl(3)), Ok((c(3), c(4))));
        // 9 = 8 + 1 and 6 = 4 + 2 share no primary color; 1 + 6 = 7.
        assert_eq!(redistribute_inverse(c(9), c(6), lvl(4)), Ok((c(7), c(8))));
        assert!(redistribute_inverse(c(9), c(3), lvl(4)).is_err());
        assert!(redistribute_inverse(c(3), c(2), lvl(3)).is_err());
        assert!(redistribute_inverse(c(5), c(4), lvl(3)).is_err());
    }

    #[test]
    fn basic_bounds_exhaustive() {
        for k in 1..=6 {
            for col in lvl(k).colors() {
                assert!(1 <= col.v_min() && col.v_min() <= col.z_max() && col.z_max() <= col.get());
                assert!(col.omega() <= col.get().ilog2() + 1);
            }
        }
    }

    #[test]
    fn delta_excludes_both_directions() {
        for a in lvl(5).colors() {
            for b in lvl(5).colors() {
                if delta(a, b) == 1 {
                    assert_eq!(delta(b, a), 0, "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn redistribution_involutions_exhaustive() {
        for k in 2..=4 {
            let level = lvl(k);
            let top = level.top().get();
            for cp in level.colors() {
                // with the top color present, j = omega - 1 would leave the
                // right part in the bare top color, which an exchange never does
                let max_j = if cp.has_bit(top) { cp.omega() - 1 } else { cp.omega() };
                for j in 1..max_j {
                    let (a, b) = redistribute_forward(cp, j, level).unwrap();
                    // bit multiset conservation across the pair plus the top token
                    assert_eq!(a.get() + b.get(), cp.get() + top);
                    assert_eq!(a.get() & !top, cp.get() & !(b.get()));
                    assert_ne!(b.get(), 0);
                    assert_eq!(redistribute_inverse(a, b, level), Ok((cp, level.top())));
                }
            }
            // inverse then forward, on every pair the inverse accepts with
            // the bits of the right color above those of the stripped left
            for a in level.colors().filter(|a| a.get() > top) {
                for b in level.colors().filter(|b| b.get() != top) {
                    let stripped = Color(a.get() - top);
                    if stripped.z_max() >= b.v_min() {
                        continue;
                    }
                    let (merged, t) = redistribute_inverse(a, b, level).unwrap();
                    assert_eq!(t, level.top());
                    assert_eq!(redistribute_forward(merged, stripped.omega(), level), Ok((a, b)));
                }
            }
        }
    }
}
