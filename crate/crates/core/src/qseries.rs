//! Truncated power series in `q`, `d` and `y_1, ..., y_k` with exact
//! integer coefficients, and the infinite products on the right-hand side
//! of every identity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::predicates::{Family, FamilyKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("marker y{index} out of range for {nvars} variables")]
    MarkerOutOfRange { index: usize, nvars: usize },
    #[error("progression needs start >= 1 and step >= 1, got start {start}, step {step}")]
    BadProgression { start: u32, step: u32 },
    #[error("dilation sends q^{n} with y-exponents {x:?} to a negative power")]
    DilationRange { n: u32, x: Vec<u32> },
    #[error("dilation needs one shift per variable: {shifts} shifts for {nvars} variables")]
    ShiftCount { shifts: usize, nvars: usize },
    #[error("cannot restrict truncation {from} up to {to}")]
    RestrictUp { from: u32, to: u32 },
}

/// Exponents of the monomial `y_1^{x_1} ... y_k^{x_k} d^m q^n`.
///
/// Ordering is lexicographic on `(n, m, x)`, which is also the row order of
/// exported tables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentKey {
    pub n: u32,
    pub m: u32,
    pub x: Vec<u32>,
}

impl ExponentKey {
    pub fn new(n: u32, m: u32, x: Vec<u32>) -> Self {
        ExponentKey { n, m, x }
    }
}

/// Which markers accompany `q` in a factor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Markers {
    /// Zero-based index of the `y` variable, if any.
    pub y: Option<usize>,
    pub d: bool,
}

impl Markers {
    pub fn y(index: usize) -> Self {
        Markers { y: Some(index), d: false }
    }

    pub fn yd(index: usize) -> Self {
        Markers { y: Some(index), d: true }
    }

    pub fn none() -> Self {
        Markers::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    nvars: usize,
    truncation: u32,
    coeffs: BTreeMap<ExponentKey, BigInt>,
}

impl MultiSeries {
    pub fn zero(nvars: usize, truncation: u32) -> Self {
        MultiSeries { nvars, truncation, coeffs: BTreeMap::new() }
    }

    pub fn one(nvars: usize, truncation: u32) -> Self {
        let mut s = MultiSeries::zero(nvars, truncation);
        s.coeffs.insert(ExponentKey::new(0, 0, vec![0; nvars]), BigInt::one());
        s
    }

    /// Builds a series from explicit coefficients, dropping zeros and every
    /// key above the truncation.
    pub fn from_coeffs(
        nvars: usize,
        truncation: u32,
        coeffs: impl IntoIterator<Item = (ExponentKey, BigInt)>,
    ) -> Result<Self, SeriesError> {
        let mut s = MultiSeries::zero(nvars, truncation);
        for (key, c) in coeffs {
            if key.x.len() != nvars {
                return Err(SeriesError::VariableMismatch(key.x.len(), nvars));
            }
            if key.n <= truncation {
                s.add_term(key, c);
            }
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn coeffs(&self) -> &BTreeMap<ExponentKey, BigInt> {
        &self.coeffs
    }

    pub fn coefficient(&self, key: &ExponentKey) -> BigInt {
        self.coeffs.get(key).cloned().unwrap_or_default()
    }

    /// Coefficient of `y^x d^m q^n`.
    pub fn get(&self, n: u32, m: u32, x: &[u32]) -> BigInt {
        self.coefficient(&ExponentKey::new(n, m, x.to_vec()))
    }

    fn add_term(&mut self, key: ExponentKey, c: BigInt) {
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(key) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn compatible(&self, other: &MultiSeries) -> Result<(), SeriesError> {
        if self.truncation != other.truncation {
            return Err(SeriesError::TruncationMismatch(self.truncation, other.truncation));
        }
        if self.nvars != other.nvars {
            return Err(SeriesError::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiSeries) -> Result<MultiSeries, SeriesError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MultiSeries) -> Result<MultiSeries, SeriesError> {
        self.compatible(other)?;
        let mut acc: BTreeMap<ExponentKey, BigInt> = BTreeMap::new();
        for (ka, va) in &self.coeffs {
            for (kb, vb) in &other.coeffs {
                let n = ka.n + kb.n;
                if n > self.truncation {
                    // keys are sorted by n, so the rest of `other` is too large
                    break;
                }
                let x = ka.x.iter().zip(&kb.x).map(|(a, b)| a + b).collect();
                *acc.entry(ExponentKey::new(n, ka.m + kb.m, x)).or_default() += va * vb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(MultiSeries { nvars: self.nvars, truncation: self.truncation, coeffs: acc })
    }

    fn check_markers(&self, markers: Markers) -> Result<(), SeriesError> {
        match markers.y {
            Some(index) if index >= self.nvars => Err(SeriesError::MarkerOutOfRange { index, nvars: self.nvars }),
            _ => Ok(()),
        }
    }

    fn shifted(&self, key: &ExponentKey, markers: Markers, a: u32) -> Option<ExponentKey> {
        let n = key.n.checked_add(a).filter(|&n| n <= self.truncation)?;
        let mut x = key.x.clone();
        if let Some(i) = markers.y {
            x[i] += 1;
        }
        Some(ExponentKey::new(n, key.m + u32::from(markers.d), x))
    }

    fn exponents(&self, start: u32, step: u32) -> Result<impl Iterator<Item = u32>, SeriesError> {
        if start == 0 || step == 0 {
            return Err(SeriesError::BadProgression { start, step });
        }
        let top = self.truncation;
        Ok((0..).map(move |j: u32| start.saturating_add(j.saturating_mul(step))).take_while(move |&a| a <= top))
    }

    /// Multiplies by `prod_{j >= 0} (1 + markers q^{start + j step})`.
    pub fn times_one_plus(&self, markers: Markers, start: u32, step: u32) -> Result<MultiSeries, SeriesError> {
        self.check_markers(markers)?;
        let mut acc = self.clone();
        for a in self.exponents(start, step)? {
            let mut next = acc.coeffs.clone();
            for (key, c) in &acc.coeffs {
                if let Some(k) = acc.shifted(key, markers, a) {
                    *next.entry(k).or_default() += c;
                }
            }
            acc.coeffs = next;
        }
        Ok(acc)
    }

    /// Multiplies by `prod_{j >= 0} 1 / (1 - markers q^{start + j step})`,
    /// expanding each factor as a geometric series of at most `N / a` terms.
    pub fn times_inv_one_minus(&self, markers: Markers, start: u32, step: u32) -> Result<MultiSeries, SeriesError> {
        self.check_markers(markers)?;
        let mut acc = self.clone();
        for a in self.exponents(start, step)? {
            let mut next = acc.coeffs.clone();
            let mut term = acc.coeffs.clone();
            for _ in 0..self.truncation / a {
                let shifted: BTreeMap<ExponentKey, BigInt> = term
                    .iter()
                    .filter_map(|(key, c)| acc.shifted(key, markers, a).map(|k| (k, c.clone())))
                    .collect();
                if shifted.is_empty() {
                    break;
                }
                for (k, c) in &shifted {
                    *next.entry(k.clone()).or_default() += c;
                }
                term = shifted;
            }
            acc.coeffs = next;
        }
        Ok(acc)
    }

    /// Re-keys `q^n y^x` as `q^{t n + sum x_i shift_i} y^x`, dropping keys
    /// above the truncation.
    pub fn dilate(&self, t: u32, shifts: &[i64]) -> Result<MultiSeries, SeriesError> {
        if shifts.len() != self.nvars {
            return Err(SeriesError::ShiftCount { shifts: shifts.len(), nvars: self.nvars });
        }
        let mut out = MultiSeries::zero(self.nvars, self.truncation);
        for (key, c) in &self.coeffs {
            let n = t as i64 * key.n as i64 + key.x.iter().zip(shifts).map(|(&x, &s)| x as i64 * s).sum::<i64>();
            if n < 0 {
                return Err(SeriesError::DilationRange { n: key.n, x: key.x.clone() });
            }
            if n <= self.truncation as i64 {
                out.add_term(ExponentKey::new(n as u32, key.m, key.x.clone()), c.clone());
            }
        }
        Ok(out)
    }

    /// Coefficients of `q^0, ..., q^N` after setting every marker to 1.
    pub fn q_coefficients(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.truncation as usize + 1];
        for (key, c) in &self.coeffs {
            out[key.n as usize] += c;
        }
        out
    }

    pub fn restrict(&self, truncation: u32) -> Result<MultiSeries, SeriesError> {
        if truncation > self.truncation {
            return Err(SeriesError::RestrictUp { from: self.truncation, to: truncation });
        }
        let coeffs = self.coeffs.iter().filter(|(k, _)| k.n <= truncation).map(|(k, v)| (k.clone(), v.clone())).collect();
        Ok(MultiSeries { nvars: self.nvars, truncation, coeffs })
    }

    /// Keeps the terms whose key satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&ExponentKey) -> bool) -> MultiSeries {
        let coeffs = self.coeffs.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
        MultiSeries { nvars: self.nvars, truncation: self.truncation, coeffs }
    }

    /// Sets `d = 0`.
    pub fn without_d(&self) -> MultiSeries {
        self.filter(|k| k.m == 0)
    }
}

pub fn series_one(nvars: usize, truncation: u32) -> MultiSeries {
    MultiSeries::one(nvars, truncation)
}

pub fn series_mul(a: &MultiSeries, b: &MultiSeries) -> Result<MultiSeries, SeriesError> {
    a.mul(b)
}

pub fn prod_one_plus(nvars: usize, markers: Markers, start: u32, step: u32, truncation: u32) -> Result<MultiSeries, SeriesError> {
    MultiSeries::one(nvars, truncation).times_one_plus(markers, start, step)
}

pub fn prod_inv_one_minus(
    nvars: usize,
    markers: Markers,
    start: u32,
    step: u32,
    truncation: u32,
) -> Result<MultiSeries, SeriesError> {
    MultiSeries::one(nvars, truncation).times_inv_one_minus(markers, start, step)
}

/// Number of `y` variables in the right-hand side of `family`.
pub fn family_nvars(family: &Family) -> usize {
    match family.kind() {
        FamilyKind::Schur => 0,
        _ => family.level().get() as usize,
    }
}

/// The product side of the identity attached to `family`, truncated at `q^N`.
pub fn rhs_family(family: &Family, truncation: u32) -> MultiSeries {
    let nvars = family_nvars(family);
    let k = nvars;
    let fold = |denominators: &[usize]| -> MultiSeries {
        let mut s = MultiSeries::one(nvars, truncation);
        for i in 0..k {
            s = s.times_one_plus(Markers::y(i), 1, 1).expect("marker in range");
        }
        for &i in denominators {
            s = s.times_inv_one_minus(Markers::yd(i), 1, 1).expect("marker in range");
        }
        s
    };
    match family.kind() {
        FamilyKind::Sbar | FamilyKind::D1 => fold(&[0]),
        FamilyKind::SbarJ(j) => fold(&[j as usize - 1]),
        FamilyKind::D2 => fold(&[1]),
        FamilyKind::Tbar | FamilyKind::DbarMatrix => fold(&(0..k).collect::<Vec<_>>()),
        FamilyKind::B => fold(&[]),
        FamilyKind::Schur => MultiSeries::one(0, truncation)
            .times_one_plus(Markers::none(), 1, 3)
            .and_then(|s| s.times_one_plus(Markers::none(), 2, 3))
            .expect("valid progressions"),
    }
}

/// `(-q;q^3)(-q^2;q^3)` obtained from `(-y_1 q;q)(-y_2 q;q)` by `q -> q^3`,
/// `y_1 -> y_1 q^{-2}`, `y_2 -> y_2 q^{-1}`, then `y_1 = y_2 = 1`.
pub fn schur_by_dilation(truncation: u32) -> Result<Vec<BigInt>, SeriesError> {
    // every part of weight w in color y_i lands at 3w - shift >= w, so
    // monomials above the truncation cannot come back down
    let base = MultiSeries::one(2, truncation).times_one_plus(Markers::y(0), 1, 1)?.times_one_plus(Markers::y(1), 1, 1)?;
    Ok(base.dilate(3, &[-2, -1])?.q_coefficients())
}
