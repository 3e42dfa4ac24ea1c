//! Highest weights over an archimedean local field.
//!
//! A weight over `R` has one row (the single embedding), a weight over `C`
//! has two rows ordered `(iota, iota-bar)`. Conjugation of embeddings is then
//! a row swap, and for real fields the single row plays both roles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::GammaProduct;
use crate::halfint::HalfInt;
use crate::local_factors::l_pair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl FieldKind {
    /// Number of embeddings into `C`, i.e. `[K : R]`.
    pub const fn degree(self) -> usize {
        match self {
            FieldKind::Real => 1,
            FieldKind::Complex => 2,
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldKind::Real => "R",
            FieldKind::Complex => "C",
        })
    }
}

/// A highest weight `mu = {mu^iota}` with non-increasing rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWeight", into = "RawWeight")]
pub struct Weight {
    field: FieldKind,
    n: usize,
    rows: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawWeight {
    field: FieldKind,
    #[serde(default)]
    n: Option<usize>,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<RawWeight> for Weight {
    type Error = Error;

    fn try_from(raw: RawWeight) -> Result<Self> {
        let w = Weight::new(raw.field, raw.rows)?;
        match raw.n {
            Some(n) if n != w.n => Err(Error::MalformedWeight(format!(
                "declared n = {n} but rows have length {}",
                w.n
            ))),
            _ => Ok(w),
        }
    }
}

impl From<Weight> for RawWeight {
    fn from(w: Weight) -> Self {
        RawWeight { field: w.field, n: Some(w.n), rows: w.rows }
    }
}

impl Weight {
    pub fn new(field: FieldKind, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.len() != field.degree() {
            return Err(Error::MalformedWeight(format!(
                "field {field} needs {} row(s), got {}",
                field.degree(),
                rows.len()
            )));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::MalformedWeight("n must be at least 1".into()));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::MalformedWeight("rows have different lengths".into()));
            }
            if row.windows(2).any(|p| p[0] < p[1]) {
                return Err(Error::MalformedWeight(format!("row {row:?} is not non-increasing")));
            }
        }
        Ok(Weight { field, n, rows })
    }

    pub fn real(row: Vec<i64>) -> Result<Self> {
        Weight::new(FieldKind::Real, vec![row])
    }

    pub fn complex(iota: Vec<i64>, iota_bar: Vec<i64>) -> Result<Self> {
        Weight::new(FieldKind::Complex, vec![iota, iota_bar])
    }

    pub fn zero(field: FieldKind, n: usize) -> Self {
        Weight { field, n, rows: vec![vec![0; n]; field.degree()] }
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Row for embedding `e` (0 = iota, 1 = iota-bar). Real fields have a
    /// single embedding, equal to its own conjugate.
    pub fn row(&self, e: usize) -> &[i64] {
        &self.rows[e.min(self.rows.len() - 1)]
    }

    pub fn embeddings(&self) -> usize {
        self.rows.len()
    }

    /// Entry `mu_i^e` with 1-based `i`.
    pub fn entry(&self, e: usize, i: usize) -> i64 {
        self.row(e)[i - 1]
    }

    /// Sum over embeddings of the 1-based entry `i`.
    pub fn entry_sum(&self, i: usize) -> i64 {
        (0..self.embeddings()).map(|e| self.entry(e, i)).sum()
    }

    /// Swap the two embedding rows (the action of complex conjugation).
    pub fn conjugate(&self) -> Weight {
        let mut rows = self.rows.clone();
        rows.reverse();
        Weight { field: self.field, n: self.n, rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(|&x| x == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.field, self.rows)
    }
}

/// The purity weight `w` with `mu_k^iota + mu_{n+1-k}^{iota-bar} = w` for all
/// `k` and all embeddings, if it exists.
pub fn is_pure(w: &Weight) -> Option<i64> {
    let n = w.n;
    let mut target = None;
    for e in 0..w.embeddings() {
        let conj = w.embeddings() - 1 - e;
        for k in 0..n {
            let v = w.row(e)[k] + w.row(conj)[n - 1 - k];
            match target {
                None => target = Some(v),
                Some(t) if t != v => return None,
                _ => {}
            }
        }
    }
    target
}

/// The contragredient weight: each row `(mu_1, ..., mu_n)` becomes
/// `(-mu_n, ..., -mu_1)`.
pub fn dual_weight(w: &Weight) -> Weight {
    let rows = w.rows.iter().map(|row| row.iter().rev().map(|x| -x).collect()).collect();
    Weight { field: w.field, n: w.n, rows }
}

/// Infinitesimal character entries `mu_i + (n + 1 - 2i)/2`, one tuple per
/// embedding row.
pub fn infinitesimal(w: &Weight) -> Vec<Vec<HalfInt>> {
    let n = w.n as i64;
    w.rows
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(idx, &m)| {
                    let i = idx as i64 + 1;
                    HalfInt::from_twice(2 * m + n + 1 - 2 * i)
                })
                .collect()
        })
        .collect()
}

/// Infinitesimal entry for embedding `e` and 1-based index `i`.
pub(crate) fn infinitesimal_entry(w: &Weight, e: usize, i: usize) -> HalfInt {
    let n = w.n as i64;
    HalfInt::from_twice(2 * w.entry(e, i) + n + 1 - 2 * i as i64)
}

/// A closed integer interval, possibly empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct BalancedInterval {
    bounds: Option<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    lo: Option<i64>,
    hi: Option<i64>,
}

impl TryFrom<RawInterval> for BalancedInterval {
    type Error = Error;

    fn try_from(raw: RawInterval) -> Result<Self> {
        match (raw.lo, raw.hi) {
            (Some(lo), Some(hi)) if lo <= hi => Ok(BalancedInterval::new(lo, hi)),
            (None, None) => Ok(BalancedInterval::EMPTY),
            _ => Err(Error::Parse("interval needs lo <= hi, or both null".into())),
        }
    }
}

impl From<BalancedInterval> for RawInterval {
    fn from(iv: BalancedInterval) -> Self {
        RawInterval { lo: iv.lo(), hi: iv.hi() }
    }
}

impl BalancedInterval {
    pub const EMPTY: BalancedInterval = BalancedInterval { bounds: None };

    /// `[lo, hi]`, empty when `lo > hi`.
    pub fn new(lo: i64, hi: i64) -> Self {
        BalancedInterval { bounds: (lo <= hi).then_some((lo, hi)) }
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_none()
    }

    pub fn lo(&self) -> Option<i64> {
        self.bounds.map(|b| b.0)
    }

    pub fn hi(&self) -> Option<i64> {
        self.bounds.map(|b| b.1)
    }

    pub fn contains(&self, j: i64) -> bool {
        matches!(self.bounds, Some((lo, hi)) if lo <= j && j <= hi)
    }

    pub fn len(&self) -> usize {
        self.bounds.map_or(0, |(lo, hi)| (hi - lo + 1) as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        let (lo, hi) = self.bounds.unwrap_or((1, 0));
        lo..=hi
    }
}

/// Checks that `mu` and `nu` can be paired: same field, sizes `n` and `n - 1`.
pub(crate) fn check_pair_shape(mu: &Weight, nu: &Weight) -> Result<()> {
    if mu.field != nu.field {
        return Err(Error::FieldMismatch);
    }
    if mu.n < 2 || nu.n + 1 != mu.n {
        return Err(Error::DimensionMismatch(format!(
            "expected sizes (n, n-1) with n >= 2, got ({}, {})",
            mu.n, nu.n
        )));
    }
    Ok(())
}

pub(crate) fn check_pure_pair(mu: &Weight, nu: &Weight) -> Result<()> {
    check_pair_shape(mu, nu)?;
    if is_pure(mu).is_none() || is_pure(nu).is_none() {
        return Err(Error::NotPure);
    }
    Ok(())
}

/// The balanced places `j` of `(mu, nu)` as the interval `[m-, m+]` with
/// `m- = max(-mu_{n-i} - nu_i)` and `m+ = min(-mu_{n+1-i} - nu_i)`.
pub fn balanced_places(mu: &Weight, nu: &Weight) -> Result<BalancedInterval> {
    check_pure_pair(mu, nu)?;
    let n = mu.n;
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for e in 0..mu.embeddings() {
        for i in 1..n {
            lo = lo.max(-mu.entry(e, n - i) - nu.entry(e, i));
            hi = hi.min(-mu.entry(e, n + 1 - i) - nu.entry(e, i));
        }
    }
    Ok(BalancedInterval::new(lo, hi))
}

/// Direct interlacing test
/// `-mu_n >= nu_1 + j >= -mu_{n-1} >= ... >= nu_{n-1} + j >= -mu_1`
/// at every embedding.
pub fn is_balanced_at(mu: &Weight, nu: &Weight, j: i64) -> Result<bool> {
    check_pair_shape(mu, nu)?;
    let n = mu.n;
    for e in 0..mu.embeddings() {
        let mut chain = Vec::with_capacity(2 * n - 1);
        chain.push(-mu.entry(e, n));
        for i in 1..n {
            chain.push(nu.entry(e, i) + j);
            chain.push(-mu.entry(e, n - i));
        }
        if chain.windows(2).any(|p| p[0] < p[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Half-integers `s0` such that `s0` is not a pole of `L(s, mu x nu)` and
/// `1 - s0` is not a pole of `L(s, mu^v x nu^v)`.
pub fn critical_places_via_poles(mu: &Weight, nu: &Weight) -> Result<Vec<HalfInt>> {
    let direct = l_pair(mu, nu)?;
    let dual = l_pair(&dual_weight(mu), &dual_weight(nu))?;
    let reach = direct
        .atoms()
        .chain(dual.atoms())
        .map(|(atom, _)| atom.shift.abs().twice() / 2 + 2)
        .max()
        .unwrap_or(2);
    let candidates = (-reach..=reach).map(|j| HalfInt::from_twice(2 * j + 1));
    Ok(candidates
        .filter(|&s0| !has_pole_at(&direct, s0) && !has_pole_at(&dual, HalfInt::ONE - s0))
        .collect())
}

/// True iff some atom with positive exponent has a pole at `s`. The
/// products handled here are `L`-factors, so all atoms have sign `+1` and
/// positive exponent; `Gamma_C(s + m)` has poles at `-m, -m - 1, ...`.
fn has_pole_at(product: &GammaProduct, s: HalfInt) -> bool {
    product.atoms().any(|(atom, exp)| exp > 0 && atom.has_pole_at(s))
}

/// `(b_{n,K}, d_{n,K})`.
pub fn dims(n: u64, field: FieldKind) -> (u64, u64) {
    match field {
        FieldKind::Real => (n * n / 4, n * (n + 1) / 2),
        FieldKind::Complex => (n * (n - 1) / 2, n * n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hi(v: &[i64]) -> Vec<HalfInt> {
        v.iter().map(|&t| HalfInt::from_twice(t)).collect()
    }

    #[test]
    fn purity_examples() {
        assert_eq!(is_pure(&Weight::real(vec![2, 1, 0]).unwrap()), Some(2));
        assert_eq!(is_pure(&Weight::complex(vec![1, 0], vec![0, -1]).unwrap()), Some(0));
        assert_eq!(is_pure(&Weight::real(vec![3, 1, 0]).unwrap()), None);
    }

    #[test]
    fn complex_purity_uses_conjugate_row() {
        // Each row is symmetric on its own (w = 2 and w = 0), but
        // mu^iota_k + mu^iotabar_{n+1-k} is not constant.
        let w = Weight::complex(vec![2, 0], vec![0, 0]).unwrap();
        assert_eq!(is_pure(&w), None);
        let w = Weight::complex(vec![1, 0], vec![1, 0]).unwrap();
        assert_eq!(is_pure(&w), Some(1));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_weight(&Weight::real(vec![2, 0]).unwrap()).rows(), &[vec![0, -2]]);
        assert_eq!(dual_weight(&Weight::real(vec![0, 0]).unwrap()).rows(), &[vec![0, 0]]);
        let c = dual_weight(&Weight::complex(vec![1, 0], vec![0, -1]).unwrap());
        assert_eq!(c.rows(), &[vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn infinitesimal_examples() {
        assert_eq!(infinitesimal(&Weight::real(vec![2, 0]).unwrap()), vec![hi(&[5, -1])]);
        assert_eq!(infinitesimal(&Weight::real(vec![0, 0]).unwrap()), vec![hi(&[1, -1])]);
        let c = infinitesimal(&Weight::complex(vec![1, 0], vec![0, -1]).unwrap());
        assert_eq!(c[0], hi(&[3, -1]));
    }

    #[test]
    fn balanced_examples() {
        let mu = Weight::real(vec![2, 0]).unwrap();
        let nu = Weight::real(vec![0]).unwrap();
        assert_eq!(balanced_places(&mu, &nu).unwrap(), BalancedInterval::new(-2, 0));
        assert!(is_balanced_at(&mu, &nu, 0).unwrap());
        assert!(!is_balanced_at(&mu, &nu, 1).unwrap());

        let zero = balanced_places(&Weight::zero(FieldKind::Real, 4), &Weight::zero(FieldKind::Real, 3));
        assert_eq!(zero.unwrap(), BalancedInterval::new(0, 0));

        let mu = Weight::complex(vec![1, 0], vec![0, -1]).unwrap();
        let nu = Weight::complex(vec![5], vec![-5]).unwrap();
        assert!(balanced_places(&mu, &nu).unwrap().is_empty());
    }

    #[test]
    fn balanced_rejects_bad_shapes() {
        let mu = Weight::real(vec![2, 0]).unwrap();
        assert!(matches!(
            balanced_places(&mu, &Weight::real(vec![0, 0]).unwrap()),
            Err(Error::DimensionMismatch(_))
        ));
        assert_eq!(
            balanced_places(&mu, &Weight::complex(vec![0], vec![0]).unwrap()),
            Err(Error::FieldMismatch)
        );
        assert_eq!(
            balanced_places(&Weight::real(vec![3, 1, 0]).unwrap(), &Weight::real(vec![0, 0]).unwrap()),
            Err(Error::NotPure)
        );
    }

    #[test]
    fn critical_examples() {
        let mu = Weight::real(vec![2, 0]).unwrap();
        let nu = Weight::real(vec![0]).unwrap();
        assert_eq!(critical_places_via_poles(&mu, &nu).unwrap(), hi(&[-3, -1, 1]));
        let z = critical_places_via_poles(&Weight::zero(FieldKind::Real, 2), &Weight::zero(FieldKind::Real, 1));
        assert_eq!(z.unwrap(), hi(&[1]));
        let mu = Weight::complex(vec![1, 0], vec![0, -1]).unwrap();
        let nu = Weight::complex(vec![0], vec![0]).unwrap();
        assert_eq!(critical_places_via_poles(&mu, &nu).unwrap(), hi(&[1]));
    }

    #[test]
    fn dims_examples() {
        assert_eq!(dims(3, FieldKind::Real), (2, 6));
        assert_eq!(dims(2, FieldKind::Complex), (1, 4));
        assert_eq!(dims(1, FieldKind::Real), (0, 1));
    }

    #[test]
    fn malformed_weights() {
        assert!(Weight::real(vec![0, 1]).is_err());
        assert!(Weight::real(vec![]).is_err());
        assert!(Weight::new(FieldKind::Complex, vec![vec![1]]).is_err());
        assert!(Weight::complex(vec![1, 0], vec![0]).is_err());
    }

    #[test]
    fn weight_json() {
        let w: Weight = serde_json::from_str(r#"{"field":"C","n":2,"rows":[[1,0],[0,-1]]}"#).unwrap();
        assert_eq!(w, Weight::complex(vec![1, 0], vec![0, -1]).unwrap());
        let back: Weight = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<Weight>(r#"{"field":"R","n":3,"rows":[[1,0]]}"#).is_err());
    }

    #[test]
    fn interval_json() {
        let iv = BalancedInterval::new(-2, 0);
        assert_eq!(serde_json::to_string(&iv).unwrap(), r#"{"lo":-2,"hi":0}"#);
        assert_eq!(serde_json::to_string(&BalancedInterval::EMPTY).unwrap(), r#"{"lo":null,"hi":null}"#);
        assert_eq!(iv.iter().collect::<Vec<_>>(), vec![-2, -1, 0]);
        assert_eq!(BalancedInterval::EMPTY.iter().count(), 0);
    }
}
