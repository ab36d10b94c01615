//! Exhaustive generation of family members and their count tables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::color::Color;
use crate::partition::{ColoredPart, Overpartition, Statistics};
use crate::predicates::{check_membership, Family, FamilyKind};
use crate::qseries::{family_nvars, ExponentKey, MultiSeries};

/// Candidate parts following `prev` (or opening the sequence), in
/// generation order: value descending, color ascending, overlined first.
fn candidates(family: &Family, prev: Option<&ColoredPart>, remaining: u32, pruned: bool) -> Vec<ColoredPart> {
    let colors: Vec<Color> = match family.kind() {
        FamilyKind::Schur if pruned => vec![Color::ONE],
        _ => family.level().colors().collect(),
    };
    let overlines: &[bool] = if pruned && !family.allows_overlines() { &[false] } else { &[true, false] };
    let top = prev.map_or(remaining, |p| p.value.min(remaining));
    let mut out = Vec::new();
    for value in (1..=top).rev() {
        for &color in &colors {
            for &overlined in overlines {
                if overlined && prev.is_some_and(|p| p.value == value) {
                    continue;
                }
                let part = ColoredPart::new(value, color, overlined);
                if pruned && prev.is_some_and(|p| !family.gap_ok(p, &part)) {
                    continue;
                }
                out.push(part);
            }
        }
    }
    out
}

fn dfs(family: &Family, stack: &mut Vec<ColoredPart>, remaining: u32, pruned: bool, visit: &mut dyn FnMut(&Overpartition)) {
    if remaining == 0 {
        let op = Overpartition::new(stack.clone());
        if check_membership(&op, family).member {
            visit(&op);
        }
        return;
    }
    for part in candidates(family, stack.last(), remaining, pruned) {
        stack.push(part);
        dfs(family, stack, remaining - part.value, pruned, visit);
        stack.pop();
    }
}

fn walk(family: &Family, n: u32, pruned: bool, visit: &mut dyn FnMut(&Overpartition)) {
    dfs(family, &mut Vec::new(), n, pruned, visit);
}

/// Every member of `family` of weight exactly `n`, in generation order.
pub fn enumerate_family(family: &Family, n: u32) -> Vec<Overpartition> {
    let mut out = Vec::new();
    walk(family, n, true, &mut |op| out.push(op.clone()));
    out
}

/// Unpruned reference: every well-formed sequence of weight `n` over all
/// colors of the level and both overline states, filtered by membership.
pub fn enumerate_unpruned(family: &Family, n: u32) -> Vec<Overpartition> {
    let mut out = Vec::new();
    walk(family, n, false, &mut |op| out.push(op.clone()));
    out
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}

/// Same output as [`enumerate_family`], with the first-part choices spread
/// over `jobs` workers and the results concatenated in candidate order.
pub fn enumerate_family_parallel(family: &Family, n: u32, jobs: usize) -> Vec<Overpartition> {
    if n == 0 || jobs <= 1 {
        return enumerate_family(family, n);
    }
    let firsts = candidates(family, None, n, true);
    let chunks: Vec<Vec<Overpartition>> = pool(jobs).install(|| {
        firsts
            .par_iter()
            .map(|&first| {
                let mut out = Vec::new();
                dfs(family, &mut vec![first], n - first.value, true, &mut |op| out.push(op.clone()));
                out
            })
            .collect()
    });
    chunks.into_iter().flatten().collect()
}

/// The key under which a member is counted, matching the variables of the
/// family's product.
pub fn project_key(family: &Family, op: &Overpartition) -> ExponentKey {
    let st = Statistics::of(op, family.level()).expect("members have in-range colors");
    let x: Vec<u32> = st.x.iter().map(|&v| v as u32).collect();
    let n = st.weight as u32;
    match family.kind() {
        FamilyKind::Schur => ExponentKey::new(n, 0, Vec::new()),
        FamilyKind::B => ExponentKey::new(n, 0, x),
        _ => ExponentKey::new(n, st.nonoverlined as u32, x),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub family: Family,
    pub max_n: u32,
    pub entries: BTreeMap<ExponentKey, u64>,
}

impl CountTable {
    pub fn nvars(&self) -> usize {
        family_nvars(&self.family)
    }

    /// Total number of members of each weight `0..=N`.
    pub fn by_weight(&self) -> Vec<u64> {
        let mut out = vec![0; self.max_n as usize + 1];
        for (k, &c) in &self.entries {
            out[k.n as usize] += c;
        }
        out
    }

    pub fn restrict(&self, max_n: u32) -> CountTable {
        let entries = self.entries.iter().filter(|(k, _)| k.n <= max_n).map(|(k, &v)| (k.clone(), v)).collect();
        CountTable { family: self.family, max_n: max_n.min(self.max_n), entries }
    }

    pub fn to_series(&self) -> MultiSeries {
        MultiSeries::from_coeffs(self.nvars(), self.max_n, self.entries.iter().map(|(k, &v)| (k.clone(), BigInt::from(v))))
            .expect("keys carry one exponent per variable")
    }
}

fn count_into(family: &Family, n: u32, entries: &mut BTreeMap<ExponentKey, u64>) {
    walk(family, n, true, &mut |op| *entries.entry(project_key(family, op)).or_default() += 1);
}

pub fn count_table(family: &Family, max_n: u32) -> CountTable {
    let mut entries = BTreeMap::new();
    for n in 0..=max_n {
        count_into(family, n, &mut entries);
    }
    CountTable { family: *family, max_n, entries }
}

/// [`count_table`] with every `(n, first part)` cell handled by a worker.
pub fn count_table_parallel(family: &Family, max_n: u32, jobs: usize) -> CountTable {
    if jobs <= 1 {
        return count_table(family, max_n);
    }
    let mut cells = Vec::new();
    for n in 1..=max_n {
        for first in candidates(family, None, n, true) {
            cells.push((n, first));
        }
    }
    let partials: Vec<BTreeMap<ExponentKey, u64>> = pool(jobs).install(|| {
        cells
            .par_iter()
            .map(|&(n, first)| {
                let mut local = BTreeMap::new();
                dfs(family, &mut vec![first], n - first.value, true, &mut |op| {
                    *local.entry(project_key(family, op)).or_default() += 1
                });
                local
            })
            .collect()
    });
    let mut entries = BTreeMap::new();
    count_into(family, 0, &mut entries);
    for local in partials {
        for (k, v) in local {
            *entries.entry(k).or_default() += v;
        }
    }
    CountTable { family: *family, max_n, entries }
}

/// A key where a count table and a series disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub key: ExponentKey,
    pub count: BigInt,
    pub coefficient: BigInt,
}

/// The smallest key at which `table` and `series` differ, if any.
pub fn first_mismatch(table: &CountTable, series: &MultiSeries) -> Option<Mismatch> {
    let mut keys: Vec<&ExponentKey> = table.entries.keys().chain(series.coeffs().keys()).filter(|k| k.n <= table.max_n).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|key| {
        let count = BigInt::from(table.entries.get(key).copied().unwrap_or(0));
        let coefficient = series.coefficient(key);
        (count != coefficient).then(|| Mismatch { key: key.clone(), count, coefficient })
    })
}
