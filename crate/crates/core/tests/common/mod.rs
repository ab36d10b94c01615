#![allow(dead_code)]

use colored_overpartitions::partition::parse_overpartition;
use colored_overpartitions::{Color, DistinctPartition, Level, Overpartition};

pub fn op(s: &str) -> Overpartition {
    parse_overpartition(s).unwrap()
}

pub fn lvl(k: i64) -> Level {
    Level::new(k).unwrap()
}

pub fn dp(color: i64, parts: &[u32]) -> DistinctPartition {
    DistinctPartition::new(Color::new(color).unwrap(), parts.to_vec()).unwrap()
}

/// Every partition of `n` into distinct parts, largest part first, in
/// reverse lexicographic order.
pub fn distinct_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=cap.min(n)).rev() {
            prefix.push(p);
            go(n - p, p - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every well-formed colored overpartition of weight `n` with colors
/// `1..2^k`, listed by value descending, color ascending, overlined first.
pub fn all_colored_overpartitions(n: u32, k: Level) -> Vec<Overpartition> {
    use colored_overpartitions::ColoredPart;
    fn go(
        n: u32,
        prev: Option<ColoredPart>,
        colors: &[Color],
        stack: &mut Vec<ColoredPart>,
        out: &mut Vec<Overpartition>,
    ) {
        if n == 0 {
            out.push(Overpartition::new(stack.clone()));
            return;
        }
        let cap = prev.map_or(n, |p| p.value.min(n));
        for value in (1..=cap).rev() {
            for &color in colors {
                for overlined in [true, false] {
                    if overlined && prev.is_some_and(|p| p.value == value) {
                        continue;
                    }
                    let part = ColoredPart::new(value, color, overlined);
                    stack.push(part);
                    go(n - value, Some(part), colors, stack, out);
                    stack.pop();
                }
            }
        }
    }
    let colors: Vec<Color> = (1..=k.max_color() as i64).map(|c| Color::new(c).unwrap()).collect();
    let mut out = Vec::new();
    go(n, None, &colors, &mut Vec::new(), &mut out);
    out
}

/// Merges every pair `(lambda, mu)` with `lambda` in the level `k - 1`
/// family and `mu` distinct in the top color, `|lambda| + |mu| <= max_weight`,
/// and checks membership, statistics, the overlined suffix, the inverse and
/// that the images are distinct and cover every level-`k` member. Returns
/// the number of pairs.
pub fn exhaustive_pairs(k: Level, max_weight: u32) -> Result<usize, String> {
    use colored_overpartitions::bijection::{merge_one_level, split_one_level, CheckedMode};
    use colored_overpartitions::enumerate::{count_table, enumerate_family};
    use colored_overpartitions::predicates::{check_membership, Family};
    use std::collections::HashSet;

    let suffix = |op: &Overpartition| op.parts.iter().filter(|p| p.color.v_index() != 0).count();
    let below = k.previous().ok_or("level one has no pairs")?;
    let top = k.top();
    let mut images = HashSet::new();
    let mut pairs = 0usize;
    for w1 in 0..=max_weight {
        let lambdas = enumerate_family(&Family::sbar(below), w1);
        for w2 in 0..=max_weight - w1 {
            for parts in distinct_partitions(w2) {
                let mu = DistinctPartition::new(top, parts).unwrap();
                for lambda in &lambdas {
                    let ctx = || format!("lambda = {lambda}, mu = {mu}");
                    let (out, fwd) =
                        merge_one_level(lambda, &mu, k, CheckedMode::ON).map_err(|e| format!("{}: {e}", ctx()))?;
                    if !check_membership(&out, &Family::sbar(k)).member {
                        return Err(format!("{}: image {out} is not a member", ctx()));
                    }
                    let before = lambda.statistics(below).unwrap();
                    let after = out.statistics(k).unwrap();
                    let kb = below.get() as usize;
                    let unused = mu.parts().iter().filter(|&&p| p as usize > lambda.len()).count();
                    if after.weight != before.weight + mu.weight()
                        || after.nonoverlined != before.nonoverlined
                        || after.x[..kb] != before.x[..]
                        || after.x[kb] != mu.len()
                        || suffix(&out) != suffix(lambda) + unused
                    {
                        return Err(format!("{}: statistics of {out} are off", ctx()));
                    }
                    let (l, m, back) = split_one_level(&out, k, CheckedMode::ON).map_err(|e| format!("{}: {e}", ctx()))?;
                    if (&l, &m) != (lambda, &mu) {
                        return Err(format!("{}: split returned {l}, {m}", ctx()));
                    }
                    for label in ["lambda3", "nu", "lambda2", "mu2", "lambda1", "mu1"] {
                        if fwd.get(label) != back.get(label) {
                            return Err(format!("{}: intermediate {label} differs", ctx()));
                        }
                    }
                    if !images.insert(out) {
                        return Err(format!("{}: image already produced", ctx()));
                    }
                    pairs += 1;
                }
            }
        }
    }
    let members: u64 = count_table(&Family::sbar(k), max_weight).by_weight().iter().sum();
    if pairs as u64 != members {
        return Err(format!("{pairs} pairs but {members} members at level {k}"));
    }
    Ok(pairs)
}
