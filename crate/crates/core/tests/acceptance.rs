//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use colored_overpartitions::bijection::{merge_one_level, split_one_level, CheckedMode};
use colored_overpartitions::color::{redistribute_forward, redistribute_inverse};
use colored_overpartitions::enumerate::{count_table, enumerate_family, first_mismatch, CountTable};
use colored_overpartitions::predicates::{check_dbar_equivalence, check_in_cell, check_membership, Family, FamilyKind};
use colored_overpartitions::qseries::{rhs_family, schur_by_dilation, ExponentKey, MultiSeries};
use colored_overpartitions::{Color, Level};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use common::{all_colored_overpartitions, dp, lvl, op};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn fam(kind: FamilyKind, k: i64) -> Family {
    Family::new(kind, lvl(k)).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))
}

fn against_product(family: &Family, n: u32) -> Result<CountTable, String> {
    let table = count_table(family, n);
    match first_mismatch(&table, &rhs_family(family, n)) {
        None => Ok(table),
        Some(m) => Err(format!(
            "{family} N={n}: n={} m={} x={:?} counts {} vs product {}",
            m.key.n, m.key.m, m.key.x, m.count, m.coefficient
        )),
    }
}

fn golden_two() -> Verdict {
    let lambda = op("^8,^6,6,^4,3,1");
    let mu = dp(2, &[8, 7, 3, 1]);
    let start = Instant::now();
    let out = merge_one_level(&lambda, &mu, lvl(2), CheckedMode::ON).map_err(|e| e.to_string())?.0;
    let spent = start.elapsed();
    let want = op("^12_3,^9_1,9_3,^6_1,5_1,3_2,^2_2,^1_1");
    ensure(out == want, || format!("got {out}"))?;
    ensure(spent < Duration::from_millis(1), || format!("took {spent:?}"))?;
    Ok(format!("{out}, {spent:?}"))
}

fn golden_three() -> Verdict {
    let lambda = op("^12_3,^9_1,9_3,^6_1,5_1,3_2,^2_2,^1_1");
    let mu = dp(4, &[17, 12, 11, 9, 5, 2]);
    let start = Instant::now();
    let out = merge_one_level(&lambda, &mu, lvl(3), CheckedMode::ON).map_err(|e| e.to_string())?.0;
    let (l, m, _) = split_one_level(&out, lvl(3), CheckedMode::ON).map_err(|e| e.to_string())?;
    let spent = start.elapsed();
    let want = op("^18_3,^15_5,14_5,^12_2,11_1,10_5,^7_4,^6_4,^4_4,^3_2,^2_2,^1_1");
    ensure(out == want, || format!("got {out}"))?;
    ensure(check_in_cell(&out, &Family::sbar(lvl(3)), &[6, 4, 6], 3).member && out.weight() == 103, || {
        "image not in the cell x=(6,4,6), m=3, n=103".into()
    })?;
    ensure((&l, &m) == (&lambda, &mu), || format!("split gave {l} and {m}"))?;
    ensure(spent < Duration::from_millis(1), || format!("took {spent:?}"))?;
    Ok(format!("{out}, round trip exact, {spent:?}"))
}

fn main_identity() -> Verdict {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for (k, n) in [(1, 15), (2, 12), (3, 10)] {
        let table = against_product(&Family::sbar(lvl(k)), n)?;
        sizes.push(format!("k={k} N={n}: {} keys", table.entries.len()));
    }
    within(Duration::from_secs(120), start)?;
    Ok(sizes.join("; "))
}

fn bijectivity() -> Verdict {
    let start = Instant::now();
    let mut counts = Vec::new();
    for k in [2, 3] {
        counts.push(format!("k={k}: {} pairs", common::exhaustive_pairs(lvl(k), 14)?));
    }
    within(Duration::from_secs(300), start)?;
    Ok(counts.join("; "))
}

fn specializations() -> Verdict {
    let sbar = count_table(&fam(FamilyKind::Sbar, 2), 12);
    let d1 = against_product(&fam(FamilyKind::D1, 2), 12)?;
    ensure(sbar.entries == d1.entries, || "two-color counts differ from D1".into())?;
    for k in 1..=3 {
        let sbar = count_table(&fam(FamilyKind::Sbar, k), 10);
        let b = against_product(&fam(FamilyKind::B, k), 10)?;
        let restricted: Vec<_> = sbar.entries.iter().filter(|(key, _)| key.m == 0).collect();
        ensure(restricted == b.entries.iter().collect::<Vec<_>>(), || format!("m=0 differs from B at k={k}"))?;
    }
    let mut checked = 0usize;
    for n in 0..=10 {
        for candidate in all_colored_overpartitions(n, lvl(2)) {
            ensure(check_dbar_equivalence(&candidate), || format!("gap matrix disagrees on {candidate}"))?;
            checked += 1;
        }
    }
    Ok(format!("D1 N=12, B k<=3 N=10, matrix on {checked} partitions"))
}

fn companions() -> Verdict {
    against_product(&fam(FamilyKind::D2, 2), 12)?;
    for k in [2, 3] {
        against_product(&fam(FamilyKind::Tbar, k), 10)?;
    }
    Ok("D2 N=12, TBAR k=2,3 N=10".into())
}

fn conjecture() -> Verdict {
    let mut lines = Vec::new();
    for j in [2u8, 3] {
        let f = fam(FamilyKind::SbarJ(j), 3);
        lines.push(match against_product(&f, 10) {
            Ok(_) => format!("j={j}: match"),
            Err(e) => format!("j={j}: counterexample {e}"),
        });
    }
    Ok(lines.join("; "))
}

fn anchors() -> Verdict {
    let expected: Vec<u64> = vec![1, 2, 4, 8, 14, 24, 40, 64, 100, 154];
    let got = count_table(&Family::sbar(lvl(1)), 9).by_weight();
    ensure(got == expected, || format!("overpartition counts {got:?}"))?;
    let brute: Vec<u64> = (0..=9)
        .map(|n| {
            all_colored_overpartitions(n, lvl(1))
                .iter()
                .filter(|o| check_membership(o, &Family::sbar(lvl(1))).member)
                .count() as u64
        })
        .collect();
    ensure(brute == expected, || format!("brute-force counts {brute:?}"))?;
    let schur: Vec<BigInt> =
        count_table(&fam(FamilyKind::Schur, 1), 15).by_weight().into_iter().map(BigInt::from).collect();
    let product = schur_by_dilation(15).map_err(|e| e.to_string())?;
    ensure(schur == product, || format!("Schur counts {schur:?} vs {product:?}"))?;
    Ok("overpartitions n<=9, Schur n<=15".into())
}

fn involutions() -> Result<usize, String> {
    let mut cases = 0;
    for k in 2..=4 {
        let level = lvl(k);
        let top = level.top().get();
        for cp in level.colors() {
            let max_j = if cp.has_bit(top) { cp.omega() - 1 } else { cp.omega() };
            for j in 1..max_j {
                let (a, b) = redistribute_forward(cp, j, level).map_err(|e| e.to_string())?;
                ensure(redistribute_inverse(a, b, level) == Ok((cp, level.top())), || format!("k={k} {cp} j={j}"))?;
                cases += 1;
            }
        }
        for a in level.colors().filter(|a| a.get() > top) {
            let stripped = Color::new((a.get() - top) as i64).unwrap();
            for b in level.colors().filter(|b| b.get() != top && stripped.z_max() < b.v_min()) {
                let (merged, t) = redistribute_inverse(a, b, level).map_err(|e| e.to_string())?;
                let again = redistribute_forward(merged, stripped.omega(), level);
                ensure(t == level.top() && again == Ok((a, b)), || format!("k={k} inverse of ({a},{b})"))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn pruning(level: Level, families: &[Family]) -> Result<(), String> {
    for n in 0..=8 {
        let all = all_colored_overpartitions(n, level);
        for f in families {
            let brute: Vec<_> = all.iter().filter(|o| check_membership(o, f).member).cloned().collect();
            ensure(enumerate_family(f, n) == brute, || format!("{f} at n={n}"))?;
        }
    }
    Ok(())
}

fn coherence() -> Result<(), String> {
    let term = (0..=8u32, 0..3u32, prop::collection::vec(0..3u32, 2), -5i64..=5);
    let series = prop::collection::vec(term, 0..12).prop_map(|terms| {
        MultiSeries::from_coeffs(2, 8, terms.into_iter().map(|(n, m, x, c)| (ExponentKey::new(n, m, x), BigInt::from(c))))
            .unwrap()
    });
    let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
    runner
        .run(&(series.clone(), series, 0..=8u32), |(a, b, t)| {
            let whole = a.mul(&b).unwrap().restrict(t).unwrap();
            let parts = a.restrict(t).unwrap().mul(&b.restrict(t).unwrap()).unwrap();
            prop_assert_eq!(whole, parts);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn properties() -> Verdict {
    let cases = involutions()?;
    for k in 1..=3i64 {
        let mut families = vec![fam(FamilyKind::Sbar, k), fam(FamilyKind::Tbar, k), fam(FamilyKind::B, k)];
        if k == 2 {
            families.extend([FamilyKind::D1, FamilyKind::D2, FamilyKind::DbarMatrix].map(|kind| fam(kind, 2)));
        }
        pruning(lvl(k), &families)?;
    }
    coherence()?;
    Ok(format!("{cases} exchanges, pruning n<=8, 200 random truncations"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("golden merge, two colors", golden_two),
        ("golden merge and split, three colors", golden_three),
        ("main identity by counting", main_identity),
        ("exhaustive bijectivity", bijectivity),
        ("specializations", specializations),
        ("companion identities", companions),
        ("shifted-denominator probe", conjecture),
        ("sanity anchors", anchors),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let spent = start.elapsed();
        match verdict {
            Ok(detail) => println!("PASS {}: {name} ({detail}) [{spent:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}: {name} ({detail}) [{spent:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
