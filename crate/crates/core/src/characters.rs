//! Algebraic characters of `R^x` and `C^x`.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::weights::{infinitesimal, is_pure, FieldKind, Weight};

/// `|.|^t sgn^delta` on `R^x`, or `iota^a iota-bar^b` on `C^x` with `a - b`
/// an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawCharacter")]
pub enum ArchCharacter {
    Real { t: HalfInt, delta: u8 },
    Complex { a: HalfInt, b: HalfInt },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawCharacter {
    Real { t: HalfInt, delta: u8 },
    Complex { a: HalfInt, b: HalfInt },
}

impl TryFrom<RawCharacter> for ArchCharacter {
    type Error = Error;

    fn try_from(raw: RawCharacter) -> Result<Self> {
        match raw {
            RawCharacter::Real { t, delta } => ArchCharacter::real(t, delta),
            RawCharacter::Complex { a, b } => ArchCharacter::complex(a, b),
        }
    }
}

impl ArchCharacter {
    pub const TRIVIAL_REAL: ArchCharacter = ArchCharacter::Real { t: HalfInt::ZERO, delta: 0 };
    pub const SGN_REAL: ArchCharacter = ArchCharacter::Real { t: HalfInt::ZERO, delta: 1 };
    pub const TRIVIAL_COMPLEX: ArchCharacter =
        ArchCharacter::Complex { a: HalfInt::ZERO, b: HalfInt::ZERO };

    pub fn real(t: HalfInt, delta: u8) -> Result<Self> {
        if delta > 1 {
            return Err(Error::InvalidCharacter(format!("delta must be 0 or 1, got {delta}")));
        }
        Ok(ArchCharacter::Real { t, delta })
    }

    pub fn complex(a: HalfInt, b: HalfInt) -> Result<Self> {
        if !(a - b).is_integer() {
            return Err(Error::InvalidCharacter(format!("a - b must be an integer ({a}, {b})")));
        }
        Ok(ArchCharacter::Complex { a, b })
    }

    /// The quadratic character `chi_K` on a field: trivial, or `sgn` (which
    /// is itself trivial on `C^x`).
    pub fn quadratic(field: FieldKind, sgn_power: u8) -> Self {
        match field {
            FieldKind::Real => ArchCharacter::Real { t: HalfInt::ZERO, delta: sgn_power % 2 },
            FieldKind::Complex => ArchCharacter::TRIVIAL_COMPLEX,
        }
    }

    pub fn field(&self) -> FieldKind {
        match self {
            ArchCharacter::Real { .. } => FieldKind::Real,
            ArchCharacter::Complex { .. } => FieldKind::Complex,
        }
    }

    pub fn is_finite_order(&self) -> bool {
        match *self {
            ArchCharacter::Real { t, .. } => t == HalfInt::ZERO,
            ArchCharacter::Complex { a, b } => a == HalfInt::ZERO && b == HalfInt::ZERO,
        }
    }

    /// Exponent `d` with `chi(-1) = (-1)^d`. For `iota^a iota-bar^b` the value
    /// at `-1` is `(-1)^(a - b)`.
    pub fn sign_exponent(&self) -> u8 {
        match *self {
            ArchCharacter::Real { delta, .. } => delta,
            ArchCharacter::Complex { a, b } => ((a - b).twice() / 2).rem_euclid(2) as u8,
        }
    }
}

impl fmt::Display for ArchCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArchCharacter::Real { t, delta } => write!(f, "|.|^{t} sgn^{delta}"),
            ArchCharacter::Complex { a, b } => write!(f, "iota^{a} iotabar^{b}"),
        }
    }
}

pub fn char_mul(x: &ArchCharacter, y: &ArchCharacter) -> Result<ArchCharacter> {
    match (*x, *y) {
        (ArchCharacter::Real { t: t1, delta: d1 }, ArchCharacter::Real { t: t2, delta: d2 }) => {
            Ok(ArchCharacter::Real { t: t1 + t2, delta: d1 ^ d2 })
        }
        (ArchCharacter::Complex { a: a1, b: b1 }, ArchCharacter::Complex { a: a2, b: b2 }) => {
            Ok(ArchCharacter::Complex { a: a1 + a2, b: b1 + b2 })
        }
        _ => Err(Error::VariantMismatch),
    }
}

pub fn char_inv(x: &ArchCharacter) -> ArchCharacter {
    match *x {
        ArchCharacter::Real { t, delta } => ArchCharacter::Real { t: -t, delta },
        ArchCharacter::Complex { a, b } => ArchCharacter::Complex { a: -a, b: -b },
    }
}

/// The real exponent of `|chi|` with respect to the normalized absolute value.
pub fn ex(x: &ArchCharacter) -> Rational64 {
    match *x {
        ArchCharacter::Real { t, .. } => Rational64::new(t.twice(), 2),
        ArchCharacter::Complex { a, b } => Rational64::new((a + b).twice(), 4),
    }
}

/// `chi * sgn^j`.
pub fn chi_twist(chi: &ArchCharacter, j: i64) -> Result<ArchCharacter> {
    if !chi.is_finite_order() {
        return Err(Error::NotFiniteOrder);
    }
    Ok(match *chi {
        ArchCharacter::Real { t, delta } => {
            ArchCharacter::Real { t, delta: delta ^ (j.rem_euclid(2) as u8) }
        }
        c @ ArchCharacter::Complex { .. } => c,
    })
}

/// Sign exponents of the central characters `eps_{n,K}` and `eps_{n-1,K}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct EpsilonChoice {
    #[serde(default)]
    pub delta_n: u8,
    #[serde(default)]
    pub delta_n1: u8,
}

/// Whether `eps_{rank,K}` may be `sgn`: only for real fields and odd rank.
pub(crate) fn sign_allowed(field: FieldKind, rank: usize) -> bool {
    field == FieldKind::Real && rank % 2 == 1
}

impl EpsilonChoice {
    pub fn new(delta_n: u8, delta_n1: u8) -> Self {
        EpsilonChoice { delta_n, delta_n1 }
    }

    pub fn validate(&self, field: FieldKind, n: usize) -> Result<()> {
        for (delta, rank) in [(self.delta_n, n), (self.delta_n1, n - 1)] {
            if delta > 1 {
                return Err(Error::InvalidEpsilon(format!("delta must be 0 or 1, got {delta}")));
            }
            if delta == 1 && !sign_allowed(field, rank) {
                return Err(Error::InvalidEpsilon(format!(
                    "eps_{{{rank},{field}}} must be trivial unless the field is real and the rank odd"
                )));
            }
        }
        Ok(())
    }

    /// Every valid choice for `GL(n) x GL(n-1)` over `field`.
    pub fn all_valid(field: FieldKind, n: usize) -> Vec<EpsilonChoice> {
        let opts = |rank| if sign_allowed(field, rank) { vec![0, 1] } else { vec![0] };
        let mut out = Vec::new();
        for d in opts(n) {
            for d1 in opts(n - 1) {
                out.push(EpsilonChoice::new(d, d1));
            }
        }
        out
    }
}

/// Principal-series parameters `rho^mu_i = eps |.|^{(n+1)/2 - i} prod iota^{mu_i^iota}`.
///
/// Over `R`, `iota^m = |.|^m sgn^m`, so `rho_i = |.|^{mu~_i} sgn^{mu_i + eps}`.
/// Over `C`, `|.|_C = iota iota-bar`, so `rho_i = iota^{mu~_i} iota-bar^{mu~bar_i}`.
pub fn rho_list(mu: &Weight, eps: u8) -> Result<Vec<ArchCharacter>> {
    if is_pure(mu).is_none() {
        return Err(Error::NotPure);
    }
    if eps > 1 || (eps == 1 && !sign_allowed(mu.field(), mu.n())) {
        return Err(Error::InvalidEpsilon(format!(
            "sign exponent {eps} not allowed for {} and n = {}",
            mu.field(),
            mu.n()
        )));
    }
    let shifted = infinitesimal(mu);
    Ok(match mu.field() {
        FieldKind::Real => (0..mu.n())
            .map(|k| ArchCharacter::Real {
                t: shifted[0][k],
                delta: (mu.row(0)[k] + eps as i64).rem_euclid(2) as u8,
            })
            .collect(),
        FieldKind::Complex => (0..mu.n())
            .map(|k| ArchCharacter::Complex { a: shifted[0][k], b: shifted[1][k] })
            .collect(),
    })
}
