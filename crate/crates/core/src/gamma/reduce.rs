//! Exact constancy test for Gamma products.
//!
//! After duplication every atom is `Gamma_R(sigma s + a)`. Atoms with the same
//! sign and the same `a mod 2` differ by the recurrence
//! `Gamma_R(z + 2) = z / (2 pi) * Gamma_R(z)`, so each such class is rewritten
//! over its lowest shift, leaving one base atom times linear factors
//! `sigma s + c`.
//!
//! The product is constant exactly when every class has net exponent zero and
//! the linear factors cancel. A class with nonzero net exponent has
//! unbounded poles or zeros on one side of the real axis that nothing else in
//! the product can cancel; the linear factors form a rational function, which
//! is constant only when it is identically a constant. Since the number of
//! linear factors with each sign then balances, the powers of `2 pi` cancel
//! and the constant is the unit times a sign.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{GammaKind, GammaProduct, Sign, UnitI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduced {
    Constant(UnitI),
    NotConstant,
}

impl Reduced {
    pub fn constant(self) -> Option<UnitI> {
        match self {
            Reduced::Constant(u) => Some(u),
            Reduced::NotConstant => None,
        }
    }
}

impl std::fmt::Display for Reduced {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Reduced::Constant(u) => write!(f, "{u}"),
            Reduced::NotConstant => f.write_str("not-constant"),
        }
    }
}

impl Serialize for Reduced {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Reduced {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "not-constant" {
            return Ok(Reduced::NotConstant);
        }
        s.parse().map(Reduced::Constant).map_err(serde::de::Error::custom)
    }
}

pub(super) fn reduce_to_constant(x: &GammaProduct) -> Reduced {
    let expanded = x.expand_dup();

    // (sign, twice(shift) mod 4) -> list of (twice(shift), exponent)
    let mut classes: BTreeMap<(Sign, i64), Vec<(i64, i64)>> = BTreeMap::new();
    for (atom, exp) in expanded.atoms() {
        debug_assert_eq!(atom.kind, GammaKind::R);
        let t = atom.shift.twice();
        classes.entry((atom.sign, t.rem_euclid(4))).or_default().push((t, exp));
    }

    // Linear factors sigma*s + c are stored as sigma * (s - r) with r = -sigma*c,
    // keyed by twice(r).
    let mut roots: BTreeMap<i64, i64> = BTreeMap::new();
    let mut sign_parity = 0i64;
    for ((sign, _), members) in &classes {
        if members.iter().map(|(_, e)| e).sum::<i64>() != 0 {
            return Reduced::NotConstant;
        }
        let base = members.iter().map(|(t, _)| *t).min().unwrap_or(0);
        for &(t, exp) in members {
            let steps = (t - base) / 4;
            for k in 0..steps {
                let c_twice = base + 4 * k;
                let r_twice = -sign.value() * c_twice;
                *roots.entry(r_twice).or_insert(0) += exp;
                if *sign == Sign::Minus {
                    sign_parity += exp;
                }
            }
        }
    }

    if roots.values().any(|e| *e != 0) {
        return Reduced::NotConstant;
    }
    Reduced::Constant(x.unit() * UnitI::sign(sign_parity))
}
