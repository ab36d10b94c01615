//! The four forward steps and their inverses, as pure functions.

use crate::color::{delta, delta_star, redistribute_forward, redistribute_inverse, Color, Level};
use crate::partition::{
    ColoredPart, DistinctPartition, MonochromePartition, Overpartition, PartitionError, Staircase,
};
use crate::predicates::{check_membership, Family};

use super::BijectionError;

/// A color exchange between two neighbouring parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Redistribution {
    /// Index of the upper part of the pair in the partition being built.
    pub index: usize,
    pub upper: u32,
    pub lower: u32,
    pub before: (Color, Color),
    pub after: (Color, Color),
}

fn precondition(op: &'static str, reason: impl Into<String>) -> BijectionError {
    BijectionError::Precondition { op, reason: reason.into() }
}

fn bump(part: &mut ColoredPart) -> Result<(), BijectionError> {
    part.value = part.value.checked_add(1).ok_or(PartitionError::Overflow)?;
    Ok(())
}

fn lower(part: &mut ColoredPart, op: &'static str) -> Result<(), BijectionError> {
    part.value = part
        .value
        .checked_sub(1)
        .filter(|&v| v > 0)
        .ok_or_else(|| precondition(op, "a part would drop to zero"))?;
    Ok(())
}

fn lower_level(k: Level, op: &'static str) -> Result<Level, BijectionError> {
    k.previous().ok_or_else(|| precondition(op, "level must be at least 2"))
}

/// Absorbs every part `p <= L` of `mu` into the first `p` parts of `lambda`,
/// smallest part first, tagging part `p` with the top color of `k`.
pub fn step1(
    lambda: &Overpartition,
    mu: &DistinctPartition,
    k: Level,
) -> Result<(Overpartition, DistinctPartition), BijectionError> {
    let below = lower_level(k, "step1")?;
    let report = check_membership(lambda, &Family::sbar(below));
    if !report.member {
        return Err(precondition("step1", format!("lambda is not a level-{below} member: {report}")));
    }
    let top = k.top();
    if mu.color() != top {
        return Err(precondition("step1", format!("mu must be in color {top}")));
    }
    let len = lambda.len();
    let mut parts = lambda.parts.clone();
    for &p in mu.parts().iter().rev().filter(|&&p| p as usize <= len) {
        let p = p as usize;
        for part in &mut parts[..p] {
            bump(part)?;
        }
        let c = parts[p - 1].color.get() | top.get();
        parts[p - 1].color = Color::new(c.into())?;
    }
    let rest: Vec<u32> = mu.parts().iter().copied().filter(|&p| p as usize > len).collect();
    Ok((Overpartition::new(parts), DistinctPartition::new(top, rest)?))
}

/// Removes the generalized staircase carried by the overlines of `op`.
/// Returns the overline-free remainder and the staircase, largest first.
pub fn remove_generalized_staircase(op: &Overpartition) -> (Overpartition, Staircase) {
    let mut parts = op.parts.clone();
    let mut stair = Vec::new();
    for i in 0..parts.len() {
        if parts[i].overlined {
            parts[i].overlined = false;
            for part in &mut parts[..i] {
                part.value -= 1;
            }
            stair.push(i as u32);
        }
    }
    stair.reverse();
    (Overpartition::new(parts), Staircase::new(stair).expect("positions are distinct"))
}

/// Adds a generalized staircase: for each part `p`, one is added to the
/// first `p` parts and part `p + 1` is overlined.
pub fn add_generalized_staircase(op: &Overpartition, nu: &[u32]) -> Result<Overpartition, BijectionError> {
    let len = op.len();
    let mut parts = op.parts.clone();
    for &p in nu.iter().rev() {
        let p = p as usize;
        if p >= len {
            return Err(BijectionError::StaircaseTooLarge { part: p as u32, len });
        }
        for part in &mut parts[..p] {
            bump(part)?;
        }
        parts[p].overlined = true;
    }
    Ok(Overpartition::new(parts))
}

/// Subtracts the staircase `(L+M-1, ..., L)` from `mu1` and the generalized
/// staircase of the overlines from `lambda1`.
pub fn step2(
    lambda1: &Overpartition,
    mu1: &DistinctPartition,
) -> Result<(Overpartition, MonochromePartition, Staircase), BijectionError> {
    let len = lambda1.len();
    let m = mu1.len();
    if let Some(&p) = mu1.parts().iter().find(|&&p| p as usize <= len) {
        return Err(BijectionError::Internal(format!("step2: part {p} of mu1 does not exceed {len}")));
    }
    let prime: Vec<u32> = (0..m).map(|i| (len + m - 1 - i) as u32).collect();
    let mu2: Vec<u32> = mu1.parts().iter().zip(&prime).map(|(a, b)| a - b).collect();
    let mu2 = MonochromePartition::new(mu1.color(), mu2)?;
    let (lambda2, second) = remove_generalized_staircase(lambda1);
    let mut nu = prime;
    nu.extend_from_slice(second.parts());
    let nu = Staircase::new(nu)
        .map_err(|e| BijectionError::Internal(format!("step2: staircases do not concatenate: {e}")))?;
    Ok((lambda2, mu2, nu))
}

/// Inserts the parts of `mu2`, largest first, each above every part of the
/// same value, exchanging colors with the part above when the gap is too small.
pub fn step3_with_events(
    lambda2: &Overpartition,
    mu2: &MonochromePartition,
    k: Level,
) -> Result<(Overpartition, Vec<Redistribution>), BijectionError> {
    let top = k.top();
    if lambda2.has_overlines() {
        return Err(precondition("step3", "lambda2 must be overline-free"));
    }
    if !mu2.is_empty() && mu2.color() != top {
        return Err(precondition("step3", format!("mu2 must be in color {top}")));
    }
    let mut parts = lambda2.parts.clone();
    let mut events = Vec::new();
    for &b in mu2.parts() {
        let pos = parts.iter().position(|p| p.value <= b).unwrap_or(parts.len());
        parts.insert(pos, ColoredPart::plain(b, top));
        if pos == 0 {
            continue;
        }
        let prev = parts[pos - 1];
        let gap = prev.value - b;
        let bound = prev.color.omega() + delta(prev.color, top);
        if gap + 1 < bound {
            let after = redistribute_forward(prev.color, gap, k)?;
            parts[pos - 1].color = after.0;
            parts[pos].color = after.1;
            events.push(Redistribution {
                index: pos - 1,
                upper: prev.value,
                lower: b,
                before: (prev.color, top),
                after,
            });
        }
    }
    Ok((Overpartition::new(parts), events))
}

pub fn step3(lambda2: &Overpartition, mu2: &MonochromePartition, k: Level) -> Result<Overpartition, BijectionError> {
    step3_with_events(lambda2, mu2, k).map(|(op, _)| op)
}

pub fn step4(lambda3: &Overpartition, nu: &Staircase) -> Result<Overpartition, BijectionError> {
    add_generalized_staircase(lambda3, nu.parts())
}

pub fn inv_step4(lambda4: &Overpartition) -> Result<(Overpartition, Staircase), BijectionError> {
    if !lambda4.is_wellformed() {
        return Err(precondition("inv_step4", "input is not a well-formed overpartition"));
    }
    Ok(remove_generalized_staircase(lambda4))
}

/// Extracts the parts in the top color, scanning from the smallest part up,
/// and undoes the color exchanges made when they were inserted.
pub fn inv_step3_with_events(
    lambda3: &Overpartition,
    k: Level,
) -> Result<(Overpartition, MonochromePartition, Vec<Redistribution>), BijectionError> {
    let top = k.top();
    if lambda3.has_overlines() {
        return Err(precondition("inv_step3", "input must be overline-free"));
    }
    if let Some(i) = lambda3.parts.windows(2).position(|w| {
        (w[0].value as i64 - w[1].value as i64)
            < (w[0].color.omega() + delta(w[0].color, w[1].color)) as i64 - 1
    }) {
        return Err(precondition("inv_step3", format!("gap condition fails at part {}", i + 1)));
    }
    let mut parts = lambda3.parts.clone();
    let mut extracted = vec![false; parts.len()];
    let mut events = Vec::new();
    for i in (0..parts.len()).rev() {
        if parts[i].color != top {
            let above = (0..i).rev().find(|&p| parts[p].color != top);
            if let Some(p) = above {
                let (cp, ci) = (parts[p].color, parts[i].color);
                if cp > top {
                    let gap = (parts[p].value - parts[i].value) as i64;
                    let bound = (cp.omega() + delta_star(cp, ci, k)?) as i64 - 1;
                    if gap < bound {
                        let after = redistribute_inverse(cp, ci, k)?;
                        parts[p].color = after.0;
                        parts[i].color = after.1;
                        events.push(Redistribution {
                            index: p,
                            upper: parts[p].value,
                            lower: parts[i].value,
                            before: (cp, ci),
                            after,
                        });
                    }
                }
            }
        }
        if parts[i].color == top {
            extracted[i] = true;
        }
    }
    let mut kept = Vec::new();
    let mut taken = Vec::new();
    for (part, out) in parts.into_iter().zip(extracted) {
        if out {
            taken.push(part.value);
        } else {
            kept.push(part);
        }
    }
    Ok((Overpartition::new(kept), MonochromePartition::new(top, taken)?, events))
}

pub fn inv_step3(lambda3: &Overpartition, k: Level) -> Result<(Overpartition, MonochromePartition), BijectionError> {
    inv_step3_with_events(lambda3, k).map(|(op, mu, _)| (op, mu))
}

/// Gives the `M` largest parts of `nu` back to `mu2` and the remaining
/// parts back to `lambda2` as a generalized staircase.
pub fn inv_step2(
    lambda2: &Overpartition,
    mu2: &MonochromePartition,
    nu: &Staircase,
) -> Result<(Overpartition, DistinctPartition), BijectionError> {
    let m = mu2.len();
    let total = lambda2.len() + m;
    let stair = nu.parts();
    let prefix_ok = stair.len() >= m && (0..m).all(|i| stair[i] as usize == total - 1 - i);
    if !prefix_ok {
        return Err(BijectionError::InvalidInput(format!(
            "inv_step2: the {m} largest parts of {nu} do not form the staircase ending at {}",
            total.saturating_sub(m)
        )));
    }
    let mu1: Vec<u32> = mu2.parts().iter().zip(stair).map(|(a, b)| a + b).collect();
    let mu1 = DistinctPartition::new(mu2.color(), mu1)?;
    let lambda1 = add_generalized_staircase(lambda2, &stair[m..])?;
    Ok((lambda1, mu1))
}

/// Removes the top color from every part carrying it, smallest part first,
/// returning the freed positions to `mu`.
pub fn inv_step1(
    lambda1: &Overpartition,
    mu1: &DistinctPartition,
    k: Level,
) -> Result<(Overpartition, DistinctPartition), BijectionError> {
    let top = k.top();
    let len = lambda1.len();
    if !mu1.is_empty() && mu1.color() != top {
        return Err(precondition("inv_step1", format!("mu must be in color {top}")));
    }
    if let Some(&p) = mu1.parts().iter().find(|&&p| p as usize <= len) {
        return Err(BijectionError::InvalidInput(format!("inv_step1: part {p} of mu does not exceed {len}")));
    }
    let mut parts = lambda1.parts.clone();
    let mut freed = Vec::new();
    for p in (0..len).rev() {
        let c = parts[p].color;
        if !c.has_bit(top.get()) {
            continue;
        }
        if c == top {
            return Err(precondition("inv_step1", format!("part {} is in the bare top color", p + 1)));
        }
        parts[p].color = Color::new((c.get() - top.get()).into())?;
        for part in &mut parts[..=p] {
            lower(part, "inv_step1")?;
        }
        freed.push(p as u32 + 1);
    }
    let mut mu: Vec<u32> = mu1.parts().to_vec();
    mu.extend(freed);
    Ok((Overpartition::new(parts), DistinctPartition::new(top, mu)?))
}
