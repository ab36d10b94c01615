//! Assertions evaluated between the steps when checked mode is on.

use std::fmt;

use crate::color::{delta, delta_star, Color, Level};
use crate::partition::Overpartition;

use super::steps::Redistribution;
use super::BijectionError;

/// Position of a check inside a merge or a split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Forward(u8),
    Inverse(u8),
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Forward(n) => write!(f, "forward-{n}"),
            Stage::Inverse(n) => write!(f, "inverse-{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma {
    Gap(Stage),
    SmallestPart(Stage),
    WeightConservation(Stage),
    /// The lower part of an exchange does not end up in the top color.
    ExchangeNotTop,
    /// Smallest color kept on the upper part, largest moved to the lower
    /// one, and the two separated once the top color is ignored.
    ExchangeShape,
    /// After an exchange the gap is tight for the new colors.
    ExchangeTight,
    /// Number of parts required to be overlined grows by the size of the
    /// unused part of `mu`.
    SuffixGrowth,
    /// The staircase has at most as many parts as the overpartition.
    StaircaseLength,
    /// The largest staircase parts descend by one from `L - 1`.
    StaircasePrefix,
    /// No more parts are extracted than the guaranteed staircase prefix.
    ExtractionBound,
    /// Inverse exchanges use disjoint primary colors.
    InverseDisjoint,
    /// Inverse exchanges happen exactly one below the number of colors.
    InverseGap,
    /// After an inverse exchange the gap is strictly below the forward bound.
    InverseStrict,
    /// The output of a merge or split lies in the expected family.
    ImageMembership,
    /// Non-overlined count and color counts are carried over.
    StatisticsPreserved,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lemma::Gap(s) => write!(f, "gap-{s}"),
            Lemma::SmallestPart(s) => write!(f, "smallest-part-{s}"),
            Lemma::WeightConservation(s) => write!(f, "weight-{s}"),
            Lemma::ExchangeNotTop => f.write_str("exchange-not-top"),
            Lemma::ExchangeShape => f.write_str("exchange-shape"),
            Lemma::ExchangeTight => f.write_str("exchange-tight"),
            Lemma::SuffixGrowth => f.write_str("suffix-growth"),
            Lemma::StaircaseLength => f.write_str("staircase-length"),
            Lemma::StaircasePrefix => f.write_str("staircase-prefix"),
            Lemma::ExtractionBound => f.write_str("extraction-bound"),
            Lemma::InverseDisjoint => f.write_str("inverse-disjoint"),
            Lemma::InverseGap => f.write_str("inverse-gap"),
            Lemma::InverseStrict => f.write_str("inverse-strict"),
            Lemma::ImageMembership => f.write_str("image-membership"),
            Lemma::StatisticsPreserved => f.write_str("statistics-preserved"),
        }
    }
}

pub(crate) fn ensure(lemma: Lemma, ok: bool, detail: impl FnOnce() -> String) -> Result<(), BijectionError> {
    if ok {
        Ok(())
    } else {
        Err(BijectionError::Lemma { lemma, detail: detail() })
    }
}

/// Which difference condition a stage is expected to satisfy.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GapRule {
    /// Use `delta*` instead of `delta`.
    pub star: bool,
    /// Subtract one only when the lower part is not overlined; otherwise
    /// subtract one unconditionally.
    pub overline_aware: bool,
}

impl GapRule {
    pub const fn new(star: bool, overline_aware: bool) -> Self {
        GapRule { star, overline_aware }
    }
}

pub(crate) fn check_gaps(op: &Overpartition, rule: GapRule, k: Level, stage: Stage) -> Result<(), BijectionError> {
    for (i, w) in op.parts.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        let d = if rule.star {
            delta_star(a.color, b.color, k).map_err(|e| BijectionError::Lemma {
                lemma: Lemma::Gap(stage),
                detail: format!("part {}: {e}", i + 1),
            })?
        } else {
            delta(a.color, b.color)
        };
        let minus = if rule.overline_aware { i64::from(!b.overlined) } else { 1 };
        let bound = (a.color.omega() + d) as i64 - minus;
        let gap = a.value as i64 - b.value as i64;
        ensure(Lemma::Gap(stage), gap >= bound, || {
            format!("{a} then {b} has gap {gap} below {bound} in {op}")
        })?;
    }
    Ok(())
}

pub(crate) fn check_smallest(op: &Overpartition, stage: Stage) -> Result<(), BijectionError> {
    match op.last() {
        Some(p) => ensure(Lemma::SmallestPart(stage), p.value >= p.color.omega(), || {
            format!("smallest part {p} in {op}")
        }),
        None => Ok(()),
    }
}

pub(crate) fn check_stage(op: &Overpartition, rule: GapRule, k: Level, stage: Stage) -> Result<(), BijectionError> {
    check_gaps(op, rule, k, stage)?;
    check_smallest(op, stage)
}

pub(crate) fn check_forward_exchange(ev: &Redistribution, k: Level) -> Result<(), BijectionError> {
    let top = k.top();
    let (upper, lower) = ev.after;
    let (old_upper, _) = ev.before;
    ensure(Lemma::ExchangeNotTop, lower != top, || format!("{ev:?}"))?;
    let stripped = upper.get() - top.get();
    let separated = stripped != 0
        && Color::new(stripped.into()).is_ok_and(|s| delta(s, lower) == 1);
    ensure(
        Lemma::ExchangeShape,
        upper.v_min() == old_upper.v_min() && lower.z_max() == old_upper.z_max() && separated,
        || format!("{ev:?}"),
    )?;
    let gap = (ev.upper - ev.lower) as i64;
    let tight = (upper.omega() + delta(upper, lower)) as i64 - 1;
    ensure(Lemma::ExchangeTight, gap == tight, || format!("{ev:?}: gap {gap}, bound {tight}"))
}

pub(crate) fn check_inverse_exchange(ev: &Redistribution, k: Level) -> Result<(), BijectionError> {
    let top = k.top().get();
    let (cp, ci) = ev.before;
    let (np, nl) = ev.after;
    let stripped = cp.get().wrapping_sub(top);
    let separated = cp.get() > top
        && stripped & ci.get() == 0
        && (32 - stripped.leading_zeros()) <= ci.get().trailing_zeros();
    ensure(Lemma::InverseDisjoint, separated && nl.get() == top, || format!("{ev:?}"))?;
    let gap = (ev.upper - ev.lower) as i64;
    ensure(Lemma::InverseGap, gap == cp.omega() as i64 - 1, || format!("{ev:?}: gap {gap}"))?;
    let bound = (np.omega() + delta(np, nl)) as i64 - 1;
    ensure(Lemma::InverseStrict, gap < bound, || format!("{ev:?}: gap {gap}, bound {bound}"))
}
