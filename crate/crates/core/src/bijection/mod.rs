//! The level-raising bijection and its inverse.
//!
//! [`merge_one_level`] combines a level-`k-1` member with a distinct partition
//! in the top color of level `k`; [`split_one_level`] takes it apart again.
//! Iterating from a plain overpartition gives [`fold_full`] and
//! [`unfold_full`].

mod lemmas;
mod steps;

use thiserror::Error;

use crate::color::{ColorError, Level};
use crate::partition::{DistinctPartition, MonochromePartition, Overpartition, PartitionError, Staircase};
use crate::predicates::{check_membership, Family};

pub use lemmas::{Lemma, Stage};
pub use steps::{
    add_generalized_staircase, inv_step1, inv_step2, inv_step3, inv_step3_with_events, inv_step4,
    remove_generalized_staircase, step1, step2, step3, step3_with_events, step4, Redistribution,
};

use lemmas::{check_forward_exchange, check_inverse_exchange, check_stage, ensure, GapRule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("{op}: precondition failed: {reason}")]
    Precondition { op: &'static str, reason: String },
    #[error("lemma {lemma} violated: {detail}")]
    Lemma { lemma: Lemma, detail: String },
    #[error("staircase part {part} does not fit in an overpartition with {len} parts")]
    StaircaseTooLarge { part: u32, len: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Color(#[from] ColorError),
}

/// Whether lemma assertions are evaluated while running the bijection.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckedMode {
    pub enabled: bool,
}

impl CheckedMode {
    pub const ON: CheckedMode = CheckedMode { enabled: true };
    pub const OFF: CheckedMode = CheckedMode { enabled: false };
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnapshotValue {
    Over(Overpartition),
    Distinct(DistinctPartition),
    Mono(MonochromePartition),
    Stair(Staircase),
}

impl SnapshotValue {
    pub fn weight(&self) -> u64 {
        match self {
            SnapshotValue::Over(p) => p.weight(),
            SnapshotValue::Distinct(p) => p.weight(),
            SnapshotValue::Mono(p) => p.weight(),
            SnapshotValue::Stair(p) => p.weight(),
        }
    }
}

impl std::fmt::Display for SnapshotValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SnapshotValue::Over(p) => p.fmt(f),
            SnapshotValue::Distinct(p) => p.fmt(f),
            SnapshotValue::Mono(p) => p.fmt(f),
            SnapshotValue::Stair(p) => p.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub label: &'static str,
    pub value: SnapshotValue,
}

/// Every intermediate object of one merge or split, in the order produced.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepTrace {
    pub snapshots: Vec<Snapshot>,
    pub redistributions: Vec<Redistribution>,
}

impl StepTrace {
    fn push(&mut self, label: &'static str, value: SnapshotValue) {
        self.snapshots.push(Snapshot { label, value });
    }

    pub fn get(&self, label: &str) -> Option<&SnapshotValue> {
        self.snapshots.iter().find(|s| s.label == label).map(|s| &s.value)
    }
}

fn suffix_count(op: &Overpartition) -> usize {
    op.parts.iter().filter(|p| p.color.v_index() != 0).count()
}

fn weight_check(stage: Stage, before: u64, after: u64, on: bool) -> Result<(), BijectionError> {
    if !on {
        return Ok(());
    }
    ensure(Lemma::WeightConservation(stage), before == after, || format!("{before} became {after}"))
}

/// Raises `lambda` from level `k-1` to level `k` by absorbing `mu`.
pub fn merge_one_level(
    lambda: &Overpartition,
    mu: &DistinctPartition,
    k: Level,
    checked: CheckedMode,
) -> Result<(Overpartition, StepTrace), BijectionError> {
    let on = checked.enabled;
    let mut trace = StepTrace::default();
    trace.push("lambda", SnapshotValue::Over(lambda.clone()));
    trace.push("mu", SnapshotValue::Distinct(mu.clone()));
    let total = lambda.weight() + mu.weight();

    let (l1, m1) = step1(lambda, mu, k)?;
    if on {
        check_stage(&l1, GapRule::new(true, true), k, Stage::Forward(1))?;
    }
    weight_check(Stage::Forward(1), total, l1.weight() + m1.weight(), on)?;
    trace.push("lambda1", SnapshotValue::Over(l1.clone()));
    trace.push("mu1", SnapshotValue::Distinct(m1.clone()));

    let (l2, m2, nu) = step2(&l1, &m1)?;
    if on {
        check_stage(&l2, GapRule::new(true, false), k, Stage::Forward(2))?;
    }
    weight_check(Stage::Forward(2), total, l2.weight() + m2.weight() + nu.weight(), on)?;
    trace.push("lambda2", SnapshotValue::Over(l2.clone()));
    trace.push("mu2", SnapshotValue::Mono(m2.clone()));
    trace.push("nu", SnapshotValue::Stair(nu.clone()));

    let (l3, events) = step3_with_events(&l2, &m2, k)?;
    if on {
        for ev in &events {
            check_forward_exchange(ev, k)?;
        }
        check_stage(&l3, GapRule::new(false, false), k, Stage::Forward(3))?;
    }
    weight_check(Stage::Forward(3), total, l3.weight() + nu.weight(), on)?;
    trace.push("lambda3", SnapshotValue::Over(l3.clone()));
    trace.redistributions = events;

    let l4 = step4(&l3, &nu)?;
    if on {
        check_stage(&l4, GapRule::new(false, true), k, Stage::Forward(4))?;
        ensure(Lemma::SuffixGrowth, suffix_count(&l4) == suffix_count(lambda) + m1.len(), || {
            format!("{} overline-suffix parts, expected {} + {}", suffix_count(&l4), suffix_count(lambda), m1.len())
        })?;
        check_merge_image(lambda, mu, &l4, k)?;
    }
    weight_check(Stage::Forward(4), total, l4.weight(), on)?;
    trace.push("lambda4", SnapshotValue::Over(l4.clone()));
    Ok((l4, trace))
}

fn check_merge_image(lambda: &Overpartition, mu: &DistinctPartition, out: &Overpartition, k: Level) -> Result<(), BijectionError> {
    let report = check_membership(out, &Family::sbar(k));
    ensure(Lemma::ImageMembership, report.member, || format!("{out}: {report}"))?;
    let below = k.previous().expect("merge level is at least 2");
    let before = lambda.statistics(below)?;
    let after = out.statistics(k)?;
    let mut expected_x = before.x.clone();
    expected_x.push(mu.len());
    ensure(
        Lemma::StatisticsPreserved,
        after.nonoverlined == before.nonoverlined && after.x == expected_x,
        || format!("m {} -> {}, x {:?} -> {:?}", before.nonoverlined, after.nonoverlined, before.x, after.x),
    )
}

/// Splits a level-`k` member into a level-`k-1` member and a distinct
/// partition in the top color of level `k`.
pub fn split_one_level(
    lambda4: &Overpartition,
    k: Level,
    checked: CheckedMode,
) -> Result<(Overpartition, DistinctPartition, StepTrace), BijectionError> {
    let on = checked.enabled;
    let below = k
        .previous()
        .ok_or_else(|| BijectionError::Precondition { op: "split_one_level", reason: "level must be at least 2".into() })?;
    let report = check_membership(lambda4, &Family::sbar(k));
    if !report.member {
        return Err(BijectionError::Precondition {
            op: "split_one_level",
            reason: format!("not a level-{k} member: {report}"),
        });
    }
    let mut trace = StepTrace::default();
    trace.push("lambda4", SnapshotValue::Over(lambda4.clone()));
    let total = lambda4.weight();
    let len = lambda4.len();
    let s4 = suffix_count(lambda4);

    let (l3, nu) = inv_step4(lambda4)?;
    if on {
        check_stage(&l3, GapRule::new(false, false), k, Stage::Inverse(4))?;
        ensure(Lemma::StaircaseLength, nu.len() <= len, || format!("{nu} for {len} parts"))?;
        let prefix = nu.parts().iter().take(s4).enumerate().all(|(i, &p)| p as usize + i + 1 == len);
        ensure(Lemma::StaircasePrefix, nu.len() >= s4 && prefix, || format!("{nu}, expected {s4} parts from {}", len as i64 - 1))?;
    }
    weight_check(Stage::Inverse(4), total, l3.weight() + nu.weight(), on)?;
    trace.push("lambda3", SnapshotValue::Over(l3.clone()));
    trace.push("nu", SnapshotValue::Stair(nu.clone()));

    let (l2, m2, events) = inv_step3_with_events(&l3, k)?;
    if on {
        for ev in &events {
            check_inverse_exchange(ev, k)?;
        }
        check_stage(&l2, GapRule::new(true, false), k, Stage::Inverse(3))?;
        ensure(Lemma::ExtractionBound, m2.len() <= s4, || format!("{} extracted, bound {s4}", m2.len()))?;
    }
    weight_check(Stage::Inverse(3), total, l2.weight() + m2.weight() + nu.weight(), on)?;
    trace.push("lambda2", SnapshotValue::Over(l2.clone()));
    trace.push("mu2", SnapshotValue::Mono(m2.clone()));
    trace.redistributions = events;

    let (l1, m1) = inv_step2(&l2, &m2, &nu)?;
    if on {
        check_stage(&l1, GapRule::new(true, true), k, Stage::Inverse(2))?;
    }
    weight_check(Stage::Inverse(2), total, l1.weight() + m1.weight(), on)?;
    trace.push("lambda1", SnapshotValue::Over(l1.clone()));
    trace.push("mu1", SnapshotValue::Distinct(m1.clone()));

    let (l, m) = inv_step1(&l1, &m1, k)?;
    if on {
        check_stage(&l, GapRule::new(false, true), k, Stage::Inverse(1))?;
        let report = check_membership(&l, &Family::sbar(below));
        ensure(Lemma::ImageMembership, report.member, || format!("{l}: {report}"))?;
        let after = l.statistics(below)?;
        let before = lambda4.statistics(k)?;
        ensure(
            Lemma::StatisticsPreserved,
            after.nonoverlined == before.nonoverlined
                && after.x[..] == before.x[..below.get() as usize]
                && m.len() == before.x[below.get() as usize],
            || format!("{before:?} -> {after:?} with {} parts in mu", m.len()),
        )?;
    }
    weight_check(Stage::Inverse(1), total, l.weight() + m.weight(), on)?;
    trace.push("lambda", SnapshotValue::Over(l.clone()));
    trace.push("mu", SnapshotValue::Distinct(m.clone()));
    Ok((l, m, trace))
}

/// Folds `mus[i]`, a distinct partition in color `2^(i+1)`, into `base`
/// one level at a time.
pub fn fold_full(base: &Overpartition, mus: &[DistinctPartition], checked: CheckedMode) -> Result<Overpartition, BijectionError> {
    let one = Level::new(1).expect("level 1");
    let report = check_membership(base, &Family::sbar(one));
    if !report.member {
        return Err(BijectionError::Precondition { op: "fold_full", reason: format!("base: {report}") });
    }
    let mut current = base.clone();
    for (i, mu) in mus.iter().enumerate() {
        let k = Level::new(i as i64 + 2)?;
        current = merge_one_level(&current, mu, k, checked)?.0;
    }
    Ok(current)
}

/// Splits a level-`k` member down to level 1; `mus[i]` is in color `2^(i+1)`.
pub fn unfold_full(
    lambda: &Overpartition,
    k: Level,
    checked: CheckedMode,
) -> Result<(Overpartition, Vec<DistinctPartition>), BijectionError> {
    let report = check_membership(lambda, &Family::sbar(k));
    if !report.member {
        return Err(BijectionError::Precondition { op: "unfold_full", reason: report.to_string() });
    }
    let mut current = lambda.clone();
    let mut mus = Vec::with_capacity(k.get() as usize - 1);
    let mut level = k;
    while let Some(below) = level.previous() {
        let (l, m, _) = split_one_level(&current, level, checked)?;
        mus.push(m);
        current = l;
        level = below;
    }
    mus.reverse();
    Ok((current, mus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::Color;
    use crate::partition::parse_overpartition;

    fn op(s: &str) -> Overpartition {
        parse_overpartition(s).unwrap()
    }

    fn dp(color: i64, parts: &[u32]) -> DistinctPartition {
        DistinctPartition::new(Color::new(color).unwrap(), parts.to_vec()).unwrap()
    }

    fn lvl(k: i64) -> Level {
        Level::new(k).unwrap()
    }

    #[test]
    fn merge_and_split_level_two() {
        let lambda = op("^8,^6,6,^4,3,1");
        let mu = dp(2, &[8, 7, 3, 1]);
        let (out, trace) = merge_one_level(&lambda, &mu, lvl(2), CheckedMode::ON).unwrap();
        assert_eq!(out, op("^12_3,^9_1,9_3,^6_1,5_1,3_2,^2_2,^1_1"));
        assert!(trace.redistributions.is_empty());
        let labels: Vec<_> = trace.snapshots.iter().map(|s| s.label).collect();
        assert_eq!(labels, ["lambda", "mu", "lambda1", "mu1", "lambda2", "mu2", "nu", "lambda3", "lambda4"]);
        let (l, m, _) = split_one_level(&out, lvl(2), CheckedMode::ON).unwrap();
        assert_eq!((l, m), (lambda, mu));
    }

    #[test]
    fn merge_and_split_level_three() {
        let lambda = op("^12_3,^9_1,9_3,^6_1,5_1,3_2,^2_2,^1_1");
        let mu = dp(4, &[17, 12, 11, 9, 5, 2]);
        let (out, trace) = merge_one_level(&lambda, &mu, lvl(3), CheckedMode::ON).unwrap();
        assert_eq!(out, op("^18_3,^15_5,14_5,^12_2,11_1,10_5,^7_4,^6_4,^4_4,^3_2,^2_2,^1_1"));
        assert_eq!(out.weight(), 103);
        assert_eq!(trace.redistributions.len(), 1);
        let (l, m, back) = split_one_level(&out, lvl(3), CheckedMode::ON).unwrap();
        assert_eq!((l, m), (lambda, mu));
        assert_eq!(back.redistributions.len(), 1);
    }

    #[test]
    fn chained_fold_reproduces_level_three_output() {
        let base = op("^8,^6,6,^4,3,1");
        let mus = [dp(2, &[8, 7, 3, 1]), dp(4, &[17, 12, 11, 9, 5, 2])];
        let out = fold_full(&base, &mus, CheckedMode::ON).unwrap();
        assert_eq!(out, op("^18_3,^15_5,14_5,^12_2,11_1,10_5,^7_4,^6_4,^4_4,^3_2,^2_2,^1_1"));
        let (b, ms) = unfold_full(&out, lvl(3), CheckedMode::ON).unwrap();
        assert_eq!(b, base);
        assert_eq!(ms, mus);
        assert_eq!(fold_full(&base, &[], CheckedMode::ON).unwrap(), base);
    }

    #[test]
    fn empty_mu_is_identity() {
        let lambda = op("5_1,^2_2");
        let (out, _) = merge_one_level(&lambda, &DistinctPartition::empty(Color::new(4).unwrap()), lvl(3), CheckedMode::ON)
            .unwrap();
        assert_eq!(out, lambda);
        let (l, m, _) = split_one_level(&lambda, lvl(3), CheckedMode::ON).unwrap();
        assert_eq!(l, lambda);
        assert!(m.is_empty());
    }

    #[test]
    fn non_members_are_rejected() {
        assert!(matches!(
            merge_one_level(&op("1_3"), &dp(4, &[1]), lvl(3), CheckedMode::ON),
            Err(BijectionError::Precondition { .. })
        ));
        assert!(matches!(split_one_level(&op("1_2"), lvl(2), CheckedMode::ON), Err(BijectionError::Precondition { .. })));
        assert!(split_one_level(&op("1"), lvl(1), CheckedMode::ON).is_err());
    }

    #[test]
    fn lemma_identifiers_are_descriptive() {
        assert_eq!(Lemma::Gap(Stage::Forward(3)).to_string(), "gap-forward-3");
        assert_eq!(Lemma::ExtractionBound.to_string(), "extraction-bound");
    }
}
