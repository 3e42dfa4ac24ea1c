//! Formal products of shifted `Gamma_R` / `Gamma_C` symbols.
//!
//! A [`GammaProduct`] is a unit `i^k` times a Laurent monomial in atoms
//! `Gamma_K(+-s + a)` with `a` a half-integer. Every archimedean `L`-factor,
//! `gamma`-factor and ratio of them handled by this crate is such a product.
//!
//! `Gamma_R(s) = pi^{-s/2} Gamma(s/2)` and `Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s)`.

mod numeric;
mod reduce;
mod render;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, MulAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

pub use numeric::{eval_numeric, gamma_c, gamma_r, ln_gamma};
pub use reduce::Reduced;

/// A fourth root of unity `i^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct UnitI(u8);

impl UnitI {
    pub const ONE: UnitI = UnitI(0);
    pub const I: UnitI = UnitI(1);
    pub const MINUS_ONE: UnitI = UnitI(2);
    pub const MINUS_I: UnitI = UnitI(3);

    pub fn new(k: i64) -> Self {
        UnitI(k.rem_euclid(4) as u8)
    }

    /// `(-1)^e`.
    pub fn sign(e: i64) -> Self {
        UnitI::new(2 * e.rem_euclid(2))
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn inv(self) -> Self {
        UnitI::new(-(self.0 as i64))
    }

    pub fn pow(self, e: i64) -> Self {
        UnitI::new(self.0 as i64 * e.rem_euclid(4))
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        use num_complex::Complex64;
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for UnitI {
    type Output = UnitI;
    #[allow(clippy::suspicious_arithmetic_impl)] // exponents of i add
    fn mul(self, rhs: UnitI) -> UnitI {
        UnitI::new(self.0 as i64 + rhs.0 as i64)
    }
}

impl MulAssign for UnitI {
    fn mul_assign(&mut self, rhs: UnitI) {
        *self = *self * rhs;
    }
}

impl fmt::Display for UnitI {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

impl FromStr for UnitI {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(UnitI::ONE),
            "i" => Ok(UnitI::I),
            "-1" => Ok(UnitI::MINUS_ONE),
            "-i" => Ok(UnitI::MINUS_I),
            other => Err(Error::Parse(format!("not a fourth root of unity: {other:?}"))),
        }
    }
}

impl Serialize for UnitI {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for UnitI {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GammaKind {
    R,
    C,
}

/// Coefficient of the formal variable `s` inside an atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match i64::deserialize(deserializer)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("sign must be +1 or -1, got {other}"))),
        }
    }
}

/// `Gamma_K(sign * s + shift)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaAtom {
    pub kind: GammaKind,
    pub sign: Sign,
    pub shift: HalfInt,
}

impl GammaAtom {
    pub fn new(kind: GammaKind, sign: Sign, shift: HalfInt) -> Self {
        GammaAtom { kind, sign, shift }
    }

    pub fn r(sign: Sign, shift: HalfInt) -> Self {
        GammaAtom::new(GammaKind::R, sign, shift)
    }

    pub fn c(sign: Sign, shift: HalfInt) -> Self {
        GammaAtom::new(GammaKind::C, sign, shift)
    }

    /// Whether the atom has a pole at the point `s`. `Gamma_R(z)` has poles
    /// at `z = 0, -2, -4, ...` and `Gamma_C(z)` at `z = 0, -1, -2, ...`.
    pub fn has_pole_at(&self, s: HalfInt) -> bool {
        let z = self.argument_at(s);
        match self.kind {
            GammaKind::R => z.twice() <= 0 && z.twice() % 4 == 0,
            GammaKind::C => z.twice() <= 0 && z.is_integer(),
        }
    }

    /// `sign * s + shift` at the point `s`.
    pub fn argument_at(&self, s: HalfInt) -> HalfInt {
        match self.sign {
            Sign::Plus => s + self.shift,
            Sign::Minus => self.shift - s,
        }
    }
}

/// `unit * prod atom^exp`, with zero exponents never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GammaProduct {
    unit: UnitI,
    atoms: BTreeMap<GammaAtom, i64>,
}

impl GammaProduct {
    pub fn one() -> Self {
        GammaProduct::default()
    }

    pub fn from_unit(unit: UnitI) -> Self {
        GammaProduct { unit, atoms: BTreeMap::new() }
    }

    pub fn from_atom(atom: GammaAtom) -> Self {
        GammaProduct::from_atoms(UnitI::ONE, [(atom, 1)])
    }

    pub fn from_atoms(unit: UnitI, atoms: impl IntoIterator<Item = (GammaAtom, i64)>) -> Self {
        let mut p = GammaProduct::from_unit(unit);
        for (atom, exp) in atoms {
            p.add_atom(atom, exp);
        }
        p
    }

    /// `Gamma_R(s + shift)`.
    pub fn gamma_r(shift: HalfInt) -> Self {
        GammaProduct::from_atom(GammaAtom::r(Sign::Plus, shift))
    }

    /// `Gamma_C(s + shift)`.
    pub fn gamma_c(shift: HalfInt) -> Self {
        GammaProduct::from_atom(GammaAtom::c(Sign::Plus, shift))
    }

    pub fn unit(&self) -> UnitI {
        self.unit
    }

    pub fn atoms(&self) -> impl Iterator<Item = (GammaAtom, i64)> + '_ {
        self.atoms.iter().map(|(a, e)| (*a, *e))
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Total number of atom factors counted with multiplicity.
    pub fn degree(&self) -> i64 {
        self.atoms.values().map(|e| e.abs()).sum()
    }

    pub fn exponent_of(&self, atom: &GammaAtom) -> i64 {
        self.atoms.get(atom).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.atoms.is_empty()
    }

    fn add_atom(&mut self, atom: GammaAtom, exp: i64) {
        if exp == 0 {
            return;
        }
        let entry = self.atoms.entry(atom).or_insert(0);
        *entry += exp;
        if *entry == 0 {
            self.atoms.remove(&atom);
        }
    }

    pub fn times_unit(mut self, unit: UnitI) -> Self {
        self.unit *= unit;
        self
    }

    pub fn inv(&self) -> Self {
        GammaProduct {
            unit: self.unit.inv(),
            atoms: self.atoms.iter().map(|(a, e)| (*a, -e)).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return GammaProduct::one();
        }
        GammaProduct {
            unit: self.unit.pow(e),
            atoms: self.atoms.iter().map(|(a, x)| (*a, x * e)).collect(),
        }
    }

    pub fn div(&self, other: &GammaProduct) -> Self {
        self * &other.inv()
    }

    /// Substitutes `s -> s + c`.
    pub fn shift(&self, c: HalfInt) -> Self {
        self.substitute(|atom| GammaAtom {
            shift: match atom.sign {
                Sign::Plus => atom.shift + c,
                Sign::Minus => atom.shift - c,
            },
            ..atom
        })
    }

    /// Substitutes `s -> 1 - s`.
    pub fn reflect(&self) -> Self {
        self.substitute(|atom| GammaAtom {
            sign: atom.sign.flip(),
            shift: atom.shift + HalfInt::from_int(atom.sign.value()),
            ..atom
        })
    }

    fn substitute(&self, f: impl Fn(GammaAtom) -> GammaAtom) -> Self {
        GammaProduct::from_atoms(self.unit, self.atoms().map(|(a, e)| (f(a), e)))
    }

    /// Legendre duplication: every `Gamma_C(z)^m` becomes
    /// `Gamma_R(z)^m Gamma_R(z + 1)^m`.
    pub fn expand_dup(&self) -> Self {
        let mut out = GammaProduct::from_unit(self.unit);
        for (atom, exp) in self.atoms() {
            match atom.kind {
                GammaKind::R => out.add_atom(atom, exp),
                GammaKind::C => {
                    out.add_atom(GammaAtom::r(atom.sign, atom.shift), exp);
                    out.add_atom(GammaAtom::r(atom.sign, atom.shift + HalfInt::ONE), exp);
                }
            }
        }
        out
    }

    /// Decides whether the product is a constant function of `s`; see
    /// [`reduce`](self::reduce) for the procedure.
    pub fn reduce_to_constant(&self) -> Reduced {
        reduce::reduce_to_constant(self)
    }
}

impl Mul for &GammaProduct {
    type Output = GammaProduct;
    fn mul(self, rhs: &GammaProduct) -> GammaProduct {
        let mut out = self.clone();
        out *= rhs;
        out
    }
}

impl Mul for GammaProduct {
    type Output = GammaProduct;
    fn mul(mut self, rhs: GammaProduct) -> GammaProduct {
        self *= &rhs;
        self
    }
}

impl MulAssign<&GammaProduct> for GammaProduct {
    fn mul_assign(&mut self, rhs: &GammaProduct) {
        self.unit *= rhs.unit;
        for (atom, exp) in rhs.atoms() {
            self.add_atom(atom, exp);
        }
    }
}

impl std::iter::Product for GammaProduct {
    fn product<I: Iterator<Item = GammaProduct>>(iter: I) -> Self {
        iter.fold(GammaProduct::one(), |acc, x| acc * x)
    }
}

pub fn gp_mul(x: &GammaProduct, y: &GammaProduct) -> GammaProduct {
    x * y
}

pub fn gp_inv(x: &GammaProduct) -> GammaProduct {
    x.inv()
}

pub fn gp_shift(x: &GammaProduct, c: HalfInt) -> GammaProduct {
    x.shift(c)
}

pub fn expand_dup(x: &GammaProduct) -> GammaProduct {
    x.expand_dup()
}

pub fn reduce_to_constant(x: &GammaProduct) -> Reduced {
    x.reduce_to_constant()
}

/// JSON form `{unit, atoms: [{kind, sign, shift, exp}]}`.
#[derive(Serialize, Deserialize)]
struct RawProduct {
    unit: UnitI,
    atoms: Vec<RawAtom>,
}

#[derive(Serialize, Deserialize)]
struct RawAtom {
    kind: GammaKind,
    sign: Sign,
    shift: HalfInt,
    exp: i64,
}

impl Serialize for GammaProduct {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawProduct {
            unit: self.unit,
            atoms: self
                .atoms()
                .map(|(a, exp)| RawAtom { kind: a.kind, sign: a.sign, shift: a.shift, exp })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GammaProduct {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawProduct::deserialize(deserializer)?;
        Ok(GammaProduct::from_atoms(
            raw.unit,
            raw.atoms.into_iter().map(|a| (GammaAtom::new(a.kind, a.sign, a.shift), a.exp)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn unit_group() {
        assert_eq!(UnitI::I * UnitI::I, UnitI::MINUS_ONE);
        assert_eq!(UnitI::I.inv(), UnitI::MINUS_I);
        assert_eq!(UnitI::I.pow(4), UnitI::ONE);
        assert_eq!(UnitI::MINUS_I.pow(-1), UnitI::I);
        assert_eq!(UnitI::sign(3), UnitI::MINUS_ONE);
        for u in [UnitI::ONE, UnitI::I, UnitI::MINUS_ONE, UnitI::MINUS_I] {
            assert_eq!(u.to_string().parse::<UnitI>().unwrap(), u);
        }
    }

    #[test]
    fn monoid_examples() {
        let r1 = GammaProduct::gamma_r(HalfInt::ONE);
        let sq = gp_mul(&r1, &r1);
        assert_eq!(sq.exponent_of(&GammaAtom::r(Sign::Plus, HalfInt::ONE)), 2);

        let x = GammaProduct::gamma_c(h(5)).times_unit(UnitI::I);
        let inv = gp_inv(&x);
        assert_eq!(inv.unit(), UnitI::MINUS_I);
        assert_eq!(inv.exponent_of(&GammaAtom::c(Sign::Plus, h(5))), -1);

        let y = GammaProduct::from_atom(GammaAtom::r(Sign::Minus, h(3)));
        let shifted = gp_shift(&y, HalfInt::ONE);
        assert_eq!(shifted, GammaProduct::from_atom(GammaAtom::r(Sign::Minus, h(1))));
    }

    #[test]
    fn mul_by_inverse_is_empty() {
        let x = GammaProduct::from_atoms(
            UnitI::I,
            [(GammaAtom::r(Sign::Plus, h(3)), 2), (GammaAtom::c(Sign::Minus, h(-1)), -1)],
        );
        let p = &x * &x.inv();
        assert!(p.is_unit());
        assert_eq!(p.unit(), UnitI::ONE);
    }

    #[test]
    fn duplication_examples() {
        let c = GammaProduct::gamma_c(h(5));
        let expect = GammaProduct::gamma_r(h(5)) * GammaProduct::gamma_r(h(7));
        assert_eq!(expand_dup(&c), expect);

        let c = GammaProduct::from_atoms(UnitI::ONE, [(GammaAtom::c(Sign::Minus, h(2)), -1)]);
        let expect = GammaProduct::from_atoms(
            UnitI::ONE,
            [(GammaAtom::r(Sign::Minus, h(2)), -1), (GammaAtom::r(Sign::Minus, h(4)), -1)],
        );
        assert_eq!(expand_dup(&c), expect);

        let r = GammaProduct::gamma_r(h(1)) * GammaProduct::from_atom(GammaAtom::r(Sign::Minus, h(0)));
        assert_eq!(expand_dup(&r), r);
    }

    #[test]
    fn reflect_substitutes_one_minus_s() {
        // Gamma_R(s + 1/2) at 1 - s is Gamma_R(-s + 3/2).
        let x = GammaProduct::gamma_r(h(1));
        assert_eq!(x.reflect(), GammaProduct::from_atom(GammaAtom::r(Sign::Minus, h(3))));
        assert_eq!(x.reflect().reflect(), x);
    }

    #[test]
    fn poles() {
        let r = GammaAtom::r(Sign::Plus, h(1));
        assert!(r.has_pole_at(h(-1)));
        assert!(!r.has_pole_at(h(-3)));
        assert!(r.has_pole_at(h(-5)));
        let c = GammaAtom::c(Sign::Plus, h(5));
        assert!(c.has_pole_at(h(-5)));
        assert!(c.has_pole_at(h(-7)));
        assert!(!c.has_pole_at(h(-3)));
        let m = GammaAtom::c(Sign::Minus, h(2));
        assert!(m.has_pole_at(h(2)));
        assert!(!m.has_pole_at(h(0)));
    }

    #[test]
    fn json_shape() {
        let x = GammaProduct::gamma_c(h(5)).times_unit(UnitI::I);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"unit":"i","atoms":[{"kind":"C","sign":1,"shift":"5/2","exp":1}]}"#);
        assert_eq!(serde_json::from_str::<GammaProduct>(&text).unwrap(), x);
    }
}
