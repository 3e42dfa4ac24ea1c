//! Exact arithmetic in `Q(zeta_M)`, Dirichlet characters, Gauss sums and the
//! cyclotomic Galois action.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, k)| (p - 1) * p.pow(k - 1)).product()
}

/// Prime factorization as `(p, k)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / lead;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// `Phi_M` as integer coefficients, lowest degree first.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial of level 0");
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

/// `X^k mod Phi_L` for `k = 0 .. L-1`, as `i64` rows of length `phi(L)`.
struct PowerTable {
    degree: usize,
    rows: Vec<Vec<i64>>,
}

impl PowerTable {
    fn build(level: u64) -> PowerTable {
        let phi: Vec<i64> = cyclotomic_poly(level)
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient fits in i64"))
            .collect();
        let d = phi.len() - 1;
        let mut rows = Vec::with_capacity(level as usize);
        let mut cur = vec![0i64; d];
        if d > 0 {
            cur[0] = 1;
        }
        for _ in 0..level {
            rows.push(cur.clone());
            // multiply by X and reduce using X^d = -sum phi_i X^i
            let top = cur[d - 1];
            for i in (1..d).rev() {
                cur[i] = cur[i - 1] - top * phi[i];
            }
            cur[0] = -top * phi[0];
        }
        PowerTable { degree: d, rows }
    }
}

thread_local! {
    static TABLES: RefCell<HashMap<u64, Rc<PowerTable>>> = RefCell::new(HashMap::new());
}

fn power_table(level: u64) -> Rc<PowerTable> {
    TABLES.with(|t| t.borrow_mut().entry(level).or_insert_with(|| Rc::new(PowerTable::build(level))).clone())
}

/// An element of `Q(zeta_M)` in the power basis `1, zeta, ..., zeta^{phi(M)-1}`,
/// with `zeta = e^{2 pi i / M}`.
#[derive(Debug, Clone)]
pub struct CyclotomicNumber {
    level: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(level: u64) -> Self {
        assert!(level >= 1, "level must be positive");
        CyclotomicNumber { level, coeffs: vec![BigRational::zero(); euler_phi(level) as usize] }
    }

    pub fn rational(level: u64, q: BigRational) -> Self {
        let mut x = CyclotomicNumber::zero(level);
        x.coeffs[0] = q;
        x
    }

    pub fn from_integer(level: u64, n: i64) -> Self {
        CyclotomicNumber::rational(level, BigRational::from_integer(n.into()))
    }

    pub fn one(level: u64) -> Self {
        CyclotomicNumber::from_integer(level, 1)
    }

    /// `zeta_M^k`.
    pub fn zeta_power(level: u64, k: i64) -> Self {
        CyclotomicNumber::from_exponents(level, [(k, BigRational::one())])
    }

    /// `sum c * zeta_M^k` over the given terms.
    pub fn from_exponents(level: u64, terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut ring = vec![BigRational::zero(); level as usize];
        for (k, c) in terms {
            ring[k.rem_euclid(level as i64) as usize] += c;
        }
        reduce_group_ring(level, ring)
    }

    pub fn from_coeffs(level: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if level == 0 || coeffs.len() != euler_phi(level) as usize {
            return Err(Error::InvalidArgument(format!(
                "level {level} needs {} coefficients, got {}",
                euler_phi(level.max(1)),
                coeffs.len()
            )));
        }
        Ok(CyclotomicNumber { level, coeffs })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn terms(&self) -> impl Iterator<Item = (i64, BigRational)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i64, c.clone()))
    }

    /// The same number viewed in `Q(zeta_L)`; requires `M | L`.
    pub fn raise_level(&self, level: u64) -> Result<Self> {
        if !level.is_multiple_of(self.level) {
            return Err(Error::InvalidArgument(format!("{} does not divide {level}", self.level)));
        }
        if level == self.level {
            return Ok(self.clone());
        }
        let step = (level / self.level) as i64;
        Ok(CyclotomicNumber::from_exponents(level, self.terms().map(|(i, c)| (i * step, c))))
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = self.level.lcm(&other.level);
        (self.raise_level(l).expect("divides lcm"), other.raise_level(l).expect("divides lcm"))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicNumber { level: a.level, coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let terms: Vec<(i64, BigRational)> = a
            .terms()
            .flat_map(|(i, x)| b.terms().map(move |(j, y)| (i + j, &x * &y)).collect::<Vec<_>>())
            .collect();
        CyclotomicNumber::from_exponents(a.level, terms)
    }

    /// Multiplication by `zeta_L^k`, where `L` is the level of `self`.
    pub fn mul_zeta_power(&self, k: i64) -> Self {
        CyclotomicNumber::from_exponents(self.level, self.terms().map(|(i, c)| (i + k, c)))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber { level: self.level, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Complex conjugation, i.e. `galois_apply(-1, _)`.
    pub fn conj(&self) -> Self {
        galois_apply(-1, self).expect("-1 is a unit")
    }

    pub fn to_complex(&self) -> Complex64 {
        let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.level as f64);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| zeta.powi(i as i32) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

/// Converts a vector indexed by `k mod L` (coefficient of `zeta^k`) into the
/// power basis. Uses an `i128` accumulation over a common denominator when the
/// numerators are small, which covers every Gauss sum computed here.
fn reduce_group_ring(level: u64, ring: Vec<BigRational>) -> CyclotomicNumber {
    let table = power_table(level);
    let d = table.degree;
    let nonzero: Vec<(usize, &BigRational)> = ring.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();

    let denom = nonzero.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let small: Option<Vec<(usize, i64)>> = nonzero
        .iter()
        .map(|(k, c)| (c.numer() * (&denom / c.denom())).to_i64().map(|v| (*k, v)))
        .collect();

    let coeffs = match small {
        Some(small) => {
            let mut acc = vec![0i128; d];
            let mut overflow = false;
            'outer: for (k, v) in &small {
                for (slot, t) in acc.iter_mut().zip(&table.rows[*k]) {
                    match (*v as i128).checked_mul(*t as i128).and_then(|p| slot.checked_add(p)) {
                        Some(x) => *slot = x,
                        None => {
                            overflow = true;
                            break 'outer;
                        }
                    }
                }
            }
            if overflow {
                None
            } else {
                Some(acc.into_iter().map(|a| BigRational::new(BigInt::from(a), denom.clone())).collect())
            }
        }
        None => None,
    };
    let coeffs = coeffs.unwrap_or_else(|| {
        let mut acc = vec![BigRational::zero(); d];
        for (k, c) in &nonzero {
            for (slot, t) in acc.iter_mut().zip(&table.rows[*k]) {
                if *t != 0 {
                    *slot += *c * BigRational::from_integer((*t).into());
                }
            }
        }
        acc
    });
    CyclotomicNumber { level, coeffs }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match i {
                0 => format!("{c}"),
                1 => format!("({c})*z{}", self.level),
                _ => format!("({c})*z{}^{i}", self.level),
            });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct RawCyclotomic {
    level: u64,
    coeffs: Vec<String>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawCyclotomic { level: self.level, coeffs: self.coeffs.iter().map(ToString::to_string).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawCyclotomic::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(|_| D::Error::custom(format!("bad rational {s:?}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CyclotomicNumber::from_coeffs(raw.level, coeffs).map_err(D::Error::custom)
    }
}

pub fn cyc_add(x: &CyclotomicNumber, y: &CyclotomicNumber) -> CyclotomicNumber {
    x.add(y)
}

pub fn cyc_mul(x: &CyclotomicNumber, y: &CyclotomicNumber) -> CyclotomicNumber {
    x.mul(y)
}

pub fn cyc_conj(x: &CyclotomicNumber) -> CyclotomicNumber {
    x.conj()
}

/// The automorphism `zeta_M -> zeta_M^t`.
pub fn galois_apply(t: i64, x: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    if (t.rem_euclid(x.level as i64) as u64).gcd(&x.level) != 1 {
        return Err(Error::NotCoprime(t, x.level));
    }
    Ok(CyclotomicNumber::from_exponents(x.level, x.terms().map(|(i, c)| (i * t, c))))
}

/// Generators of `(Z/N)^x` with their orders, one or two per prime power
/// factor (`-1` and `5` for `2^k`, `k >= 3`), lifted by CRT.
fn unit_generators(modulus: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    for (p, k) in factorize(modulus) {
        let q = p.pow(k);
        let local: Vec<(u64, u64)> = if p == 2 {
            match k {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(q - 1, 2), (5, q / 4)],
            }
        } else {
            let order = (p - 1) * p.pow(k - 1);
            let g = (2..q).find(|&g| g.gcd(&p) == 1 && mult_order(g, q) == order).expect("odd prime powers are cyclic");
            vec![(g, order)]
        };
        let rest = modulus / q;
        for (g, order) in local {
            gens.push((crt_pair(g, q, 1, rest), order));
        }
    }
    gens
}

fn mult_order(g: u64, q: u64) -> u64 {
    let mut x = g % q;
    let mut k = 1;
    while x != 1 % q {
        x = x * g % q;
        k += 1;
    }
    k
}

/// `x = a mod m`, `x = b mod n` for coprime `m, n`.
fn crt_pair(a: u64, m: u64, b: u64, n: u64) -> u64 {
    if n == 1 {
        return a % m;
    }
    let mn = m * n;
    (0..mn).find(|x| x % m == a % m && x % n == b % n).expect("coprime moduli")
}

/// The structure of `(Z/N)^x` with a discrete logarithm table.
#[derive(Debug, Clone)]
struct UnitGroup {
    modulus: u64,
    orders: Vec<u64>,
    exponent: u64,
    /// `logs[x]` are the exponents of `x` on the generators, `None` for non-units.
    logs: Vec<Option<Vec<u64>>>,
}

impl UnitGroup {
    fn new(modulus: u64) -> Self {
        let gens = unit_generators(modulus);
        let orders: Vec<u64> = gens.iter().map(|g| g.1).collect();
        let exponent = orders.iter().fold(1u64, |a, b| a.lcm(b));
        let mut logs = vec![None; modulus as usize];
        let mut exps = vec![0u64; gens.len()];
        loop {
            let mut x = 1 % modulus;
            for ((g, _), e) in gens.iter().zip(&exps) {
                for _ in 0..*e {
                    x = x * g % modulus;
                }
            }
            logs[x as usize] = Some(exps.clone());
            if !advance(&mut exps, &orders) {
                break;
            }
        }
        UnitGroup { modulus, orders, exponent, logs }
    }
}

/// Mixed-radix increment; returns false after wrapping around.
fn advance(digits: &mut [u64], radices: &[u64]) -> bool {
    for (d, r) in digits.iter_mut().zip(radices) {
        *d += 1;
        if *d < *r {
            return true;
        }
        *d = 0;
    }
    false
}

/// A Dirichlet character modulo `N`, with values `chi(x) = zeta_m^{v(x)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    /// `chi(g_i) = e^{2 pi i a_i / ord(g_i)}` on the fixed generators.
    exponents: Vec<u64>,
    orders: Vec<u64>,
    order: u64,
    /// `v(x)` for units, `None` otherwise.
    values: Vec<Option<u64>>,
    conductor: u64,
}

impl DirichletCharacter {
    fn from_exponents(group: &UnitGroup, exponents: Vec<u64>) -> Self {
        let e = group.exponent;
        let raw: Vec<Option<u64>> = group
            .logs
            .iter()
            .map(|log| {
                log.as_ref().map(|l| {
                    l.iter()
                        .zip(&exponents)
                        .zip(&group.orders)
                        .map(|((li, ai), oi)| li * ai % oi * (e / oi))
                        .sum::<u64>()
                        % e
                })
            })
            .collect();
        let g = raw.iter().flatten().fold(e, |acc, v| acc.gcd(v));
        let order = e / g;
        let values = raw.into_iter().map(|v| v.map(|v| v / g)).collect();
        let mut chi = DirichletCharacter {
            modulus: group.modulus,
            exponents,
            orders: group.orders.clone(),
            order,
            values,
            conductor: group.modulus,
        };
        chi.conductor = chi.compute_conductor();
        chi
    }

    fn compute_conductor(&self) -> u64 {
        let n = self.modulus;
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .find(|&d| {
                (0..n).all(|x| match self.values[x as usize] {
                    Some(v) if x % d == 1 % d => v == 0,
                    _ => true,
                })
            })
            .unwrap_or(n)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `m` such that every value is an `m`-th root of unity.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Position in [`dirichlet_characters`].
    pub fn index(&self) -> usize {
        let mut idx = 0u64;
        for (a, o) in self.exponents.iter().zip(&self.orders).rev() {
            idx = idx * o + a;
        }
        idx as usize
    }

    /// `v(x)` with `chi(x) = zeta_m^{v(x)}`, or `None` when `gcd(x, N) > 1`.
    pub fn value_exponent(&self, x: i64) -> Option<u64> {
        self.values[x.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn value(&self, x: i64) -> CyclotomicNumber {
        match self.value_exponent(x) {
            Some(v) => CyclotomicNumber::zeta_power(self.order, v as i64),
            None => CyclotomicNumber::zero(self.order),
        }
    }

    /// `chi(-1)` as `+1` or `-1`.
    pub fn parity(&self) -> i64 {
        match self.value_exponent(-1) {
            Some(0) => 1,
            _ => -1,
        }
    }

    /// `chi^sigma = sigma_t o chi`. Order and conductor are Galois invariant.
    pub fn galois_conjugate(&self, t: i64) -> Result<DirichletCharacter> {
        if (t.rem_euclid(self.order as i64) as u64).gcd(&self.order) != 1 {
            return Err(Error::NotCoprime(t, self.order));
        }
        let scale = |v: u64, m: u64| (v as i64 * t).rem_euclid(m as i64) as u64;
        Ok(DirichletCharacter {
            modulus: self.modulus,
            exponents: self.exponents.iter().zip(&self.orders).map(|(a, o)| scale(*a, *o)).collect(),
            orders: self.orders.clone(),
            order: self.order,
            values: self.values.iter().map(|v| v.map(|v| scale(v, self.order))).collect(),
            conductor: self.conductor,
        })
    }

    pub fn inverse(&self) -> DirichletCharacter {
        self.galois_conjugate(-1).expect("-1 is a unit")
    }
}

/// All `phi(N)` characters modulo `N`, in mixed-radix order of their
/// exponents on the fixed generators; index 0 is the trivial character.
pub fn dirichlet_characters(modulus: u64) -> Result<Vec<DirichletCharacter>> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let group = UnitGroup::new(modulus);
    let mut out = Vec::new();
    let mut exps = vec![0u64; group.orders.len()];
    loop {
        out.push(DirichletCharacter::from_exponents(&group, exps.clone()));
        if !advance(&mut exps, &group.orders) {
            break;
        }
    }
    Ok(out)
}

/// `sum_{x in (Z/N)^x} chi(x)^-1 zeta_N^x` in `Q(zeta_{lcm(N, m)})`, divided by
/// `phi(N)` when `normalize` is set.
pub fn gauss_sum(chi: &DirichletCharacter, normalize: bool) -> CyclotomicNumber {
    let n = chi.modulus;
    let m = chi.order;
    let level = n.lcm(&m);
    let terms = (0..n).filter_map(|x| {
        chi.values[x as usize].map(|v| {
            let k = (x * (level / n)) as i64 - (v * (level / m)) as i64;
            (k, BigRational::one())
        })
    });
    let g = CyclotomicNumber::from_exponents(level, terms);
    if normalize {
        g.scale(&BigRational::new(BigInt::one(), BigInt::from(euler_phi(n))))
    } else {
        g
    }
}

/// `sigma_t(G(chi)) == chi^sigma(t) G(chi^sigma)`, with `sigma_t: zeta -> zeta^t`.
pub fn check_equivariance(chi: &DirichletCharacter, t: i64) -> Result<bool> {
    let level = chi.modulus.lcm(&chi.order);
    if (t.rem_euclid(level as i64) as u64).gcd(&level) != 1 {
        return Err(Error::NotCoprime(t, level));
    }
    let lhs = galois_apply(t, &gauss_sum(chi, false))?;
    let conj = chi.galois_conjugate(t)?;
    let v = conj.value_exponent(t).expect("t is a unit mod N");
    let rhs = gauss_sum(&conj, false).mul_zeta_power((v * (level / chi.order)) as i64);
    Ok(lhs == rhs)
}

/// Units modulo `level` as representatives in `1..level`.
pub fn units_mod(level: u64) -> Vec<i64> {
    (1..=level.max(1)).filter(|t| t.gcd(&level) == 1).map(|t| (t % level.max(1)) as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
        for m in 1..60 {
            assert_eq!(cyclotomic_poly(m).len() as u64 - 1, euler_phi(m), "m = {m}");
        }
        // first level with a coefficient of absolute value 2
        assert!(cyclotomic_poly(105).iter().any(|c| c.abs() == BigInt::from(2)));
    }

    #[test]
    fn arithmetic() {
        let i = CyclotomicNumber::zeta_power(4, 1);
        assert_eq!(i.mul(&i), CyclotomicNumber::from_integer(4, -1));
        let z5 = CyclotomicNumber::zeta_power(5, 1);
        let sum = (0..5).fold(CyclotomicNumber::zero(5), |acc, k| acc.add(&CyclotomicNumber::zeta_power(5, k)));
        assert!(sum.is_zero());
        assert_eq!(z5.mul(&z5.conj()), CyclotomicNumber::one(5));
        // zeta_4 = zeta_12^3 across levels
        assert_eq!(i, CyclotomicNumber::zeta_power(12, 3));
        assert_eq!(i.raise_level(12).unwrap().level(), 12);
        assert!(i.raise_level(6).is_err());
        let x = CyclotomicNumber::from_exponents(7, [(1, q(3)), (5, BigRational::new(1.into(), 2.into()))]);
        assert!((x.to_complex() - (3.0 * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 7.0)
            + 0.5 * Complex64::from_polar(1.0, 10.0 * std::f64::consts::PI / 7.0)))
        .norm()
            < 1e-12);
    }

    #[test]
    fn galois_action() {
        let x = CyclotomicNumber::zeta_power(4, 1).scale(&q(2));
        assert_eq!(galois_apply(1, &x).unwrap(), x);
        assert_eq!(galois_apply(3, &x).unwrap(), x.neg());
        let r = CyclotomicNumber::from_integer(9, 7);
        assert_eq!(galois_apply(2, &r).unwrap(), r);
        assert_eq!(galois_apply(3, &CyclotomicNumber::one(9)), Err(Error::NotCoprime(3, 9)));
        let y = CyclotomicNumber::from_exponents(15, [(1, q(2)), (4, q(-1)), (7, q(5))]);
        for t in units_mod(15) {
            for u in units_mod(15) {
                let lhs = galois_apply(t, &galois_apply(u, &y).unwrap()).unwrap();
                assert_eq!(lhs, galois_apply(t * u % 15, &y).unwrap());
            }
        }
    }

    #[test]
    fn galois_is_a_ring_homomorphism() {
        let a = CyclotomicNumber::from_exponents(20, [(1, q(2)), (3, q(-1)), (9, BigRational::new(1.into(), 3.into()))]);
        let b = CyclotomicNumber::from_exponents(20, [(0, q(4)), (7, q(5))]);
        for t in units_mod(20) {
            let s = |x: &CyclotomicNumber| galois_apply(t, x).unwrap();
            assert_eq!(s(&a.add(&b)), s(&a).add(&s(&b)));
            assert_eq!(s(&a.mul(&b)), s(&a).mul(&s(&b)));
        }
    }

    #[test]
    fn character_enumeration() {
        let c1 = dirichlet_characters(1).unwrap();
        assert_eq!(c1.len(), 1);
        assert!(c1[0].is_trivial());

        let c4 = dirichlet_characters(4).unwrap();
        assert_eq!(c4.len(), 2);
        assert!(c4[0].is_trivial());
        assert_eq!(c4[1].value(3), CyclotomicNumber::from_integer(1, -1));
        assert_eq!(c4[1].conductor(), 4);

        let c5 = dirichlet_characters(5).unwrap();
        assert_eq!(c5.len(), 4);
        assert!(c5.iter().all(|c| 4 % c.order() == 0));

        for n in 1..=36 {
            let chars = dirichlet_characters(n).unwrap();
            assert_eq!(chars.len() as u64, euler_phi(n));
            for (i, c) in chars.iter().enumerate() {
                assert_eq!(c.index(), i);
                assert_eq!(c.value_exponent(1), Some(0));
                // multiplicativity on a few pairs
                for x in 1..n.min(8) as i64 {
                    for y in 1..n.min(8) as i64 {
                        if let (Some(a), Some(b)) = (c.value_exponent(x), c.value_exponent(y)) {
                            assert_eq!(c.value_exponent(x * y), Some((a + b) % c.order()));
                        }
                    }
                }
            }
            let distinct: std::collections::HashSet<_> = chars.iter().map(|c| c.values.clone()).collect();
            assert_eq!(distinct.len(), chars.len(), "n = {n}");
        }
    }

    #[test]
    fn conductors() {
        // mod 12: conductors 1, 3, 4, 12
        let mut conds: Vec<u64> = dirichlet_characters(12).unwrap().iter().map(|c| c.conductor()).collect();
        conds.sort_unstable();
        assert_eq!(conds, vec![1, 3, 4, 12]);
        // number of primitive characters mod 8 is 2
        assert_eq!(dirichlet_characters(8).unwrap().iter().filter(|c| c.is_primitive()).count(), 2);
    }

    #[test]
    fn gauss_sum_examples() {
        let chi = &dirichlet_characters(4).unwrap()[1];
        let g = gauss_sum(chi, false);
        assert_eq!(g, CyclotomicNumber::zeta_power(4, 1).scale(&q(2)));
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"level":4,"coeffs":["0","2"]}"#);

        let quad = dirichlet_characters(5).unwrap().into_iter().find(|c| c.order() == 2).unwrap();
        let g = gauss_sum(&quad, false);
        let expect = CyclotomicNumber::from_exponents(5, [(1, q(1)), (2, q(-1)), (3, q(-1)), (4, q(1))]);
        assert_eq!(g, expect);
        assert!((g.to_complex() - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-12);

        let triv = &dirichlet_characters(1).unwrap()[0];
        assert_eq!(gauss_sum(triv, false), CyclotomicNumber::one(1));

        let norm = gauss_sum(&quad, true);
        assert_eq!(norm.scale(&q(4)), g);
    }

    #[test]
    fn equivariance_examples() {
        let chi = &dirichlet_characters(4).unwrap()[1];
        assert!(check_equivariance(chi, 3).unwrap());
        let quad = dirichlet_characters(5).unwrap().into_iter().find(|c| c.order() == 2).unwrap();
        assert!(check_equivariance(&quad, 3).unwrap());
        assert_eq!(check_equivariance(&quad, 2), Err(Error::NotCoprime(2, 10)));
        assert_eq!(quad.value_exponent(2), Some(1));
        let triv = &dirichlet_characters(7).unwrap()[0];
        for t in units_mod(7) {
            assert!(check_equivariance(triv, t).unwrap());
        }
        assert_eq!(check_equivariance(chi, 2), Err(Error::NotCoprime(2, 4)));
    }

    #[test]
    fn conjugate_characters_match_a_fresh_construction() {
        for n in [7u64, 15, 16, 21, 36] {
            let group = UnitGroup::new(n);
            for chi in dirichlet_characters(n).unwrap() {
                for t in units_mod(chi.order()) {
                    let conj = chi.galois_conjugate(t).unwrap();
                    assert_eq!(conj, DirichletCharacter::from_exponents(&group, conj.exponents.clone()));
                    for x in 0..n as i64 {
                        assert_eq!(conj.value(x), galois_apply(t, &chi.value(x)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn zeta_shift_agrees_with_multiplication() {
        let x = CyclotomicNumber::from_exponents(12, [(1, q(2)), (3, q(-1)), (2, BigRational::new(1.into(), 5.into()))]);
        for k in -13..13 {
            assert_eq!(x.mul_zeta_power(k), x.mul(&CyclotomicNumber::zeta_power(12, k)));
        }
    }

    #[test]
    fn norm_identities() {
        for n in [3u64, 4, 5, 7, 8, 9, 11, 12, 13] {
            for chi in dirichlet_characters(n).unwrap().iter().filter(|c| c.is_primitive()) {
                let g = gauss_sum(chi, false);
                let nn = CyclotomicNumber::from_integer(1, n as i64);
                assert_eq!(g.mul(&g.conj()), nn);
                let gi = gauss_sum(&chi.inverse(), false);
                assert_eq!(g.mul(&gi).scale(&q(chi.parity())), nn);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let x = CyclotomicNumber::from_exponents(9, [(1, BigRational::new(3.into(), 7.into())), (5, q(-2))]);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<CyclotomicNumber>(&text).unwrap(), x);
        assert!(serde_json::from_str::<CyclotomicNumber>(r#"{"level":5,"coeffs":["1"]}"#).is_err());
    }
}
