//! Membership tests for the constrained overpartition families.
//!
//! Every family shares the same skeleton: a condition on the smallest part,
//! a gap condition between consecutive parts, and (for most families) a
//! requirement that some number of the smallest parts be overlined.

use std::fmt;

use thiserror::Error;

use crate::color::{delta, Color, Level};
use crate::partition::{ColoredPart, Overpartition, Statistics};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("family {family} requires level 2, got {k}")]
    NeedsLevelTwo { family: &'static str, k: u8 },
    #[error("sbar-j needs 1 <= j <= k, got j = {j}, k = {k}")]
    BadIndex { j: u8, k: u8 },
    #[error("unknown family tag {0:?}")]
    UnknownFamily(String),
    #[error("family {0} needs an index j")]
    MissingIndex(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// Smallest part, gap and overlined-suffix conditions.
    Sbar,
    /// As `Sbar`, with the suffix count taken over every primary color but `2^(j-1)`.
    SbarJ(u8),
    /// As `Sbar` without the overlined-suffix condition.
    Tbar,
    /// Distinct colored parts with the strict gap `omega + delta` and no overlines.
    B,
    /// Three colors, gap matrix, smallest parts overlined as many as parts of color 2.
    D1,
    /// Three colors, gap matrix, smallest parts overlined as many as parts of color 1.
    D2,
    /// Three colors and the gap matrix only.
    DbarMatrix,
    /// Uncolored partitions with gap 3, or 6 between two multiples of 3.
    Schur,
}

/// A family selector together with its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    kind: FamilyKind,
    level: Level,
}

impl Family {
    pub fn new(kind: FamilyKind, level: Level) -> Result<Self, ConfigError> {
        let k = level.get();
        match kind {
            FamilyKind::SbarJ(j) if j < 1 || j > k => return Err(ConfigError::BadIndex { j, k }),
            FamilyKind::D1 | FamilyKind::D2 | FamilyKind::DbarMatrix if k != 2 => {
                return Err(ConfigError::NeedsLevelTwo { family: kind.tag(), k })
            }
            _ => {}
        }
        let level = if kind == FamilyKind::Schur { Level::new(1).expect("level 1") } else { level };
        Ok(Family { kind, level })
    }

    pub fn sbar(level: Level) -> Self {
        Family { kind: FamilyKind::Sbar, level }
    }

    /// Parses a command-line tag such as `sbar`, `sbar-j`, `tbar`, `b`.
    pub fn from_tag(tag: &str, level: Level, j: Option<u8>) -> Result<Self, ConfigError> {
        let kind = match tag {
            "sbar" => FamilyKind::Sbar,
            "sbar-j" => FamilyKind::SbarJ(j.ok_or(ConfigError::MissingIndex("sbar-j"))?),
            "tbar" => FamilyKind::Tbar,
            "b" => FamilyKind::B,
            "d1" => FamilyKind::D1,
            "d2" => FamilyKind::D2,
            "dbar" => FamilyKind::DbarMatrix,
            "schur" => FamilyKind::Schur,
            other => return Err(ConfigError::UnknownFamily(other.to_string())),
        };
        Family::new(kind, level)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Whether members may carry overlines at all.
    pub fn allows_overlines(&self) -> bool {
        !matches!(self.kind, FamilyKind::B | FamilyKind::Schur)
    }

    /// Minimal difference `a.value - b.value` allowed when `b` follows `a`.
    pub fn min_gap(&self, a: &ColoredPart, b: &ColoredPart) -> i64 {
        let not_over = i64::from(!b.overlined);
        match self.kind {
            FamilyKind::Sbar | FamilyKind::SbarJ(_) | FamilyKind::Tbar => {
                (a.color.omega() + delta(a.color, b.color)) as i64 - not_over
            }
            FamilyKind::B => (a.color.omega() + delta(a.color, b.color)) as i64,
            FamilyKind::D1 | FamilyKind::D2 | FamilyKind::DbarMatrix => {
                dbar_matrix_entry(a.color, b.color, b.overlined).map_or(i64::MAX, i64::from)
            }
            FamilyKind::Schur => {
                if a.value.is_multiple_of(3) && b.value.is_multiple_of(3) {
                    6
                } else {
                    3
                }
            }
        }
    }

    pub fn gap_ok(&self, a: &ColoredPart, b: &ColoredPart) -> bool {
        a.value as i64 - b.value as i64 >= self.min_gap(a, b)
    }

    fn color_ok(&self, c: Color) -> bool {
        match self.kind {
            FamilyKind::Schur => c == Color::ONE,
            _ => self.level.contains(c),
        }
    }

    /// The condition on the smallest part, or on every part for the
    /// three-color families (no part `1` in color 3).
    fn smallest_ok(&self, op: &Overpartition) -> Option<usize> {
        match self.kind {
            FamilyKind::Schur => None,
            FamilyKind::D1 | FamilyKind::D2 | FamilyKind::DbarMatrix => {
                op.parts.iter().position(|p| p.value == 1 && p.color.get() == 3)
            }
            _ => {
                let last = op.last()?;
                (last.value < last.color.omega()).then(|| op.len() - 1)
            }
        }
    }

    /// Number of smallest parts that must be overlined.
    pub fn overlined_suffix(&self, op: &Overpartition) -> usize {
        let count_v = |skip: u32| {
            op.parts.iter().filter(|p| p.color.v_index() != skip).count()
        };
        match self.kind {
            FamilyKind::Sbar => count_v(0),
            FamilyKind::SbarJ(j) => count_v(j as u32 - 1),
            FamilyKind::D1 => op.parts.iter().filter(|p| p.color.get() == 2).count(),
            FamilyKind::D2 => op.parts.iter().filter(|p| p.color.get() == 1).count(),
            FamilyKind::Tbar | FamilyKind::B | FamilyKind::DbarMatrix | FamilyKind::Schur => 0,
        }
    }

    pub fn tag(&self) -> &'static str {
        self.kind.tag()
    }
}

impl FamilyKind {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilyKind::Sbar => "sbar",
            FamilyKind::SbarJ(_) => "sbar-j",
            FamilyKind::Tbar => "tbar",
            FamilyKind::B => "b",
            FamilyKind::D1 => "d1",
            FamilyKind::D2 => "d2",
            FamilyKind::DbarMatrix => "dbar",
            FamilyKind::Schur => "schur",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::SbarJ(j) => write!(f, "sbar-j(j={j}, k={})", self.level),
            FamilyKind::Schur => write!(f, "schur"),
            _ => write!(f, "{}(k={})", self.kind.tag(), self.level),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// (i) smallest part at least the number of primary colors of its color.
    SmallestPart,
    /// (ii) primary-color counts differ from the requested ones.
    XCounts,
    /// (iii) gap between consecutive parts.
    Gap,
    /// (iv) the required number of smallest parts are not all overlined.
    OverlineSuffix,
    Wellformed,
    ColorRange,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::SmallestPart => "(i) smallest-part",
            Condition::XCounts => "(ii) x-counts",
            Condition::Gap => "(iii) gap",
            Condition::OverlineSuffix => "(iv) overline-suffix",
            Condition::Wellformed => "wellformed",
            Condition::ColorRange => "color-range",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MembershipReport {
    pub member: bool,
    pub violated: Option<Condition>,
    /// Index of the offending part, when there is one.
    pub location: Option<usize>,
}

impl MembershipReport {
    pub fn pass() -> Self {
        MembershipReport { member: true, violated: None, location: None }
    }

    pub fn fail(cond: Condition, location: Option<usize>) -> Self {
        MembershipReport { member: false, violated: Some(cond), location }
    }
}

impl fmt::Display for MembershipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.violated, self.location) {
            (None, _) => write!(f, "member"),
            (Some(c), Some(i)) => write!(f, "not a member: condition {c} fails at part {}", i + 1),
            (Some(c), None) => write!(f, "not a member: condition {c} fails"),
        }
    }
}

pub fn check_membership(op: &Overpartition, family: &Family) -> MembershipReport {
    if let Some(i) = first_malformed(op) {
        return MembershipReport::fail(Condition::Wellformed, Some(i));
    }
    if !family.allows_overlines() {
        if let Some(i) = op.parts.iter().position(|p| p.overlined) {
            return MembershipReport::fail(Condition::Wellformed, Some(i));
        }
    }
    if let Some(i) = op.parts.iter().position(|p| !family.color_ok(p.color)) {
        return MembershipReport::fail(Condition::ColorRange, Some(i));
    }
    if let Some(i) = family.smallest_ok(op) {
        return MembershipReport::fail(Condition::SmallestPart, Some(i));
    }
    if let Some(i) = op.parts.windows(2).position(|w| !family.gap_ok(&w[0], &w[1])) {
        return MembershipReport::fail(Condition::Gap, Some(i));
    }
    let s = family.overlined_suffix(op);
    if s > op.len() {
        return MembershipReport::fail(Condition::OverlineSuffix, None);
    }
    let start = op.len() - s;
    if let Some(off) = op.parts[start..].iter().position(|p| !p.overlined) {
        return MembershipReport::fail(Condition::OverlineSuffix, Some(start + off));
    }
    MembershipReport::pass()
}

/// Membership in the cell with prescribed primary-color counts `x` and
/// number `m` of non-overlined parts.
pub fn check_in_cell(op: &Overpartition, family: &Family, x: &[usize], m: usize) -> MembershipReport {
    let report = check_membership(op, family);
    if !report.member {
        return report;
    }
    match Statistics::of(op, family.level()) {
        Ok(st) if st.x.as_slice() == x && st.nonoverlined == m => report,
        Ok(_) => MembershipReport::fail(Condition::XCounts, None),
        Err(_) => MembershipReport::fail(Condition::ColorRange, None),
    }
}

fn first_malformed(op: &Overpartition) -> Option<usize> {
    if let Some(i) = op.parts.iter().position(|p| p.value == 0) {
        return Some(i);
    }
    op.parts
        .windows(2)
        .position(|w| w[0].value < w[1].value || (w[1].overlined && w[0].value == w[1].value))
        .map(|i| i + 1)
}

const DBAR_LABELS: [&str; 6] = ["1", "2", "3", "1d", "2d", "3d"];

/// Minimal differences for three colors, rows and columns ordered
/// `1, 2, 3, 1d, 2d, 3d` where `d` marks a non-overlined part.
const DBAR_MATRIX: [[u32; 6]; 6] = [
    [1, 2, 1, 0, 1, 0],
    [1, 1, 1, 0, 0, 0],
    [2, 2, 2, 1, 1, 1],
    [1, 2, 1, 0, 1, 0],
    [1, 1, 1, 0, 0, 0],
    [2, 2, 2, 1, 1, 1],
];

fn dbar_index(c: Color, overlined: bool) -> Option<usize> {
    let c = c.get();
    (1..=3).contains(&c).then(|| (c as usize - 1) + if overlined { 0 } else { 3 })
}

/// Looks up the matrix entry for a part of color `a` followed by a part of
/// color `b`. The row does not depend on whether the upper part is
/// overlined, so the overlined row is used.
pub fn dbar_matrix_entry(a: Color, b: Color, b_overlined: bool) -> Option<u32> {
    let row = dbar_index(a, true)?;
    let col = dbar_index(b, b_overlined)?;
    Some(DBAR_MATRIX[row][col])
}

/// Checks that the gap matrix and the `omega + delta - [not overlined]` rule
/// agree on every consecutive pair of `op`, trying both overline states of
/// the upper part.
pub fn check_dbar_equivalence(op: &Overpartition) -> bool {
    op.parts.windows(2).all(|w| {
        let (a, b) = (&w[0], &w[1]);
        let formula = (a.color.omega() + delta(a.color, b.color)) as i64 - i64::from(!b.overlined);
        let col = match dbar_index(b.color, b.overlined) {
            Some(col) => col,
            None => return false,
        };
        [true, false].iter().all(|&a_over| match dbar_index(a.color, a_over) {
            Some(row) => DBAR_MATRIX[row][col] as i64 == formula,
            None => false,
        })
    })
}

pub fn dbar_labels() -> &'static [&'static str; 6] {
    &DBAR_LABELS
}
