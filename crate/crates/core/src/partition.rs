//! Colored overpartitions, single-color partitions and staircases.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::{Color, ColorError, Level};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("part sizes must be positive")]
    ZeroPart,
    #[error("parts must be strictly decreasing, got {0:?}")]
    NotStrictlyDecreasing(Vec<u32>),
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotWeaklyDecreasing(Vec<u32>),
    #[error("staircase parts must be strictly decreasing and nonnegative, got {0:?}")]
    BadStaircase(Vec<u32>),
    #[error(transparent)]
    Color(#[from] ColorError),
    #[error("statistic overflow")]
    Overflow,
}

/// One part of a colored overpartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredPart {
    pub value: u32,
    pub color: Color,
    pub overlined: bool,
}

impl ColoredPart {
    pub fn new(value: u32, color: Color, overlined: bool) -> Self {
        ColoredPart { value, color, overlined }
    }

    pub fn plain(value: u32, color: Color) -> Self {
        ColoredPart::new(value, color, false)
    }

    pub fn over(value: u32, color: Color) -> Self {
        ColoredPart::new(value, color, true)
    }
}

impl fmt::Display for ColoredPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.overlined {
            write!(f, "^{}_{}", self.value, self.color)
        } else {
            write!(f, "{}_{}", self.value, self.color)
        }
    }
}

/// An ordered sequence of colored parts, largest first.
///
/// The sequence is the object: nothing is sorted or normalized. Whether it
/// is a genuine overpartition is answered by [`Overpartition::is_wellformed`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Overpartition {
    pub parts: Vec<ColoredPart>,
}

impl Overpartition {
    pub fn new(parts: Vec<ColoredPart>) -> Self {
        Overpartition { parts }
    }

    pub fn empty() -> Self {
        Overpartition::default()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|p| p.value as u64).sum()
    }

    pub fn last(&self) -> Option<&ColoredPart> {
        self.parts.last()
    }

    /// Parts are positive and weakly decreasing, and every overlined part is
    /// the first occurrence of its value.
    pub fn is_wellformed(&self) -> bool {
        self.parts.iter().all(|p| p.value >= 1)
            && self.parts.windows(2).all(|w| {
                w[0].value >= w[1].value && (!w[1].overlined || w[0].value > w[1].value)
            })
    }

    pub fn has_overlines(&self) -> bool {
        self.parts.iter().any(|p| p.overlined)
    }

    pub fn statistics(&self, level: Level) -> Result<Statistics, PartitionError> {
        Statistics::of(self, level)
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A partition into distinct parts, all in one color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistinctPartition {
    color: Color,
    parts: Vec<u32>,
}

impl DistinctPartition {
    pub fn new(color: Color, parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(PartitionError::NotStrictlyDecreasing(parts));
        }
        Ok(DistinctPartition { color, parts })
    }

    pub fn empty(color: Color) -> Self {
        DistinctPartition { color, parts: Vec::new() }
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }
}

impl fmt::Display for DistinctPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})_{}", body.join(","), self.color)
    }
}

/// A partition with weakly decreasing positive parts, all in one color.
///
/// This is the shape of the color-`2^(k-1)` block once a staircase has been
/// taken away from a distinct partition: repeated values are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonochromePartition {
    color: Color,
    parts: Vec<u32>,
}

impl MonochromePartition {
    pub fn new(color: Color, parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotWeaklyDecreasing(parts));
        }
        Ok(MonochromePartition { color, parts })
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }
}

impl fmt::Display for MonochromePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})_{}", body.join(","), self.color)
    }
}

/// Strictly decreasing nonnegative parts, largest first. At most one zero,
/// necessarily last.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Staircase(Vec<u32>);

impl Staircase {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(PartitionError::BadStaircase(parts));
        }
        Ok(Staircase(parts))
    }

    pub fn empty() -> Self {
        Staircase(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.first().copied()
    }
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

/// The statistics every identity quantifies over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Statistics {
    /// Sum of the parts.
    pub weight: u64,
    pub length: usize,
    /// Number of non-overlined parts.
    pub nonoverlined: usize,
    /// `x[i]` counts parts whose color contains the primary color `2^i`.
    pub x: Vec<usize>,
    /// `vcounts[r]` counts parts whose smallest primary color is `2^r`.
    pub vcounts: Vec<usize>,
    /// `vcounts[1] + ... + vcounts[k-1]`.
    pub s: usize,
}

impl Statistics {
    pub fn of(op: &Overpartition, level: Level) -> Result<Self, PartitionError> {
        let k = level.get() as usize;
        let mut weight: u64 = 0;
        let mut nonoverlined = 0;
        let mut x = vec![0; k];
        let mut vcounts = vec![0; k];
        for p in &op.parts {
            if !level.contains(p.color) {
                return Err(ColorError::OutOfRange { color: p.color.get(), level: level.get() }.into());
            }
            weight = weight.checked_add(p.value as u64).ok_or(PartitionError::Overflow)?;
            if !p.overlined {
                nonoverlined += 1;
            }
            for (i, slot) in x.iter_mut().enumerate() {
                if p.color.has_bit(1 << i) {
                    *slot += 1;
                }
            }
            vcounts[p.color.v_index() as usize] += 1;
        }
        let s = vcounts.iter().skip(1).sum();
        Ok(Statistics { weight, length: op.len(), nonoverlined, x, vcounts, s })
    }
}

/// Text shorthand used throughout the tests: parts separated by commas,
/// `^` marks an overline and `_c` gives the color (default 1), e.g.
/// `"^12_3, ^9_1, 9_3, 1"`.
pub fn parse_overpartition(text: &str) -> Result<Overpartition, String> {
    let mut parts = Vec::new();
    for raw in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (overlined, rest) = match raw.strip_prefix('^') {
            Some(r) => (true, r),
            None => (false, raw),
        };
        let (value, color) = match rest.split_once('_') {
            Some((v, c)) => (v, c),
            None => (rest, "1"),
        };
        let value: u32 = value.trim().parse().map_err(|e| format!("{raw}: {e}"))?;
        let color: i64 = color.trim().parse().map_err(|e| format!("{raw}: {e}"))?;
        let color = Color::new(color).map_err(|e| e.to_string())?;
        parts.push(ColoredPart::new(value, color, overlined));
    }
    Ok(Overpartition::new(parts))
}
