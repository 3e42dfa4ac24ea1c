//! Text form of Gamma products, e.g. `i * Γ_R(s+5/2)^2 * Γ_C(-s+1)^-1`.
//!
//! The unit is written as one of `1`, `i`, `-1`, `-i` (or `i^k`) and is
//! omitted when it is `1` and atoms are present. The parser also accepts `G_R`
//! and `G_C` in place of `Γ_R` and `Γ_C`.

use std::fmt;
use std::str::FromStr;

use super::{GammaAtom, GammaKind, GammaProduct, Sign, UnitI};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;

impl fmt::Display for GammaAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GammaKind::R => "R",
            GammaKind::C => "C",
        };
        let var = match self.sign {
            Sign::Plus => "s",
            Sign::Minus => "-s",
        };
        write!(f, "Γ_{kind}({var}")?;
        if self.shift > HalfInt::ZERO {
            write!(f, "+{}", self.shift)?;
        } else if self.shift < HalfInt::ZERO {
            write!(f, "{}", self.shift)?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.is_unit() || self.unit() != UnitI::ONE {
            parts.push(self.unit().to_string());
        }
        for (atom, exp) in self.atoms() {
            if exp == 1 {
                parts.push(atom.to_string());
            } else {
                parts.push(format!("{atom}^{exp}"));
            }
        }
        f.write_str(&parts.join(" * "))
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_unit(tok: &str) -> Result<UnitI> {
    if let Some(k) = tok.strip_prefix("i^") {
        let k: i64 = k.parse().map_err(|_| parse_err(format!("bad unit exponent in {tok:?}")))?;
        return Ok(UnitI::new(k));
    }
    tok.parse()
}

fn parse_atom(tok: &str) -> Result<(GammaAtom, i64)> {
    let rest = tok
        .strip_prefix("Γ_")
        .or_else(|| tok.strip_prefix("G_"))
        .ok_or_else(|| parse_err(format!("expected Γ_R or Γ_C, got {tok:?}")))?;
    let mut chars = rest.chars();
    let kind = match chars.next() {
        Some('R') => GammaKind::R,
        Some('C') => GammaKind::C,
        _ => return Err(parse_err(format!("unknown Gamma kind in {tok:?}"))),
    };
    let rest = chars.as_str();
    let inner_start = rest.strip_prefix('(').ok_or_else(|| parse_err(format!("missing '(' in {tok:?}")))?;
    let close = inner_start.find(')').ok_or_else(|| parse_err(format!("missing ')' in {tok:?}")))?;
    let inner: String = inner_start[..close].chars().filter(|c| !c.is_whitespace()).collect();
    let tail = inner_start[close + 1..].trim();

    let (sign, after) = if let Some(a) = inner.strip_prefix("-s") {
        (Sign::Minus, a)
    } else if let Some(a) = inner.strip_prefix("+s").or_else(|| inner.strip_prefix('s')) {
        (Sign::Plus, a)
    } else {
        return Err(parse_err(format!("argument must start with s or -s in {tok:?}")));
    };
    let shift = if after.is_empty() {
        HalfInt::ZERO
    } else if let Some(v) = after.strip_prefix('+') {
        v.parse()?
    } else if after.starts_with('-') {
        after.parse()?
    } else {
        return Err(parse_err(format!("bad shift in {tok:?}")));
    };

    let exp = if tail.is_empty() {
        1
    } else {
        let e = tail.strip_prefix('^').ok_or_else(|| parse_err(format!("trailing text in {tok:?}")))?;
        e.trim().parse().map_err(|_| parse_err(format!("bad exponent in {tok:?}")))?
    };
    Ok((GammaAtom::new(kind, sign, shift), exp))
}

impl FromStr for GammaProduct {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = GammaProduct::one();
        let mut any = false;
        for tok in s.split(['*', '·']) {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(parse_err(format!("empty factor in {s:?}")));
            }
            any = true;
            if tok.starts_with("Γ_") || tok.starts_with("G_") {
                let (atom, exp) = parse_atom(tok)?;
                out *= &GammaProduct::from_atoms(UnitI::ONE, [(atom, exp)]);
            } else {
                out = out.times_unit(parse_unit(tok)?);
            }
        }
        if !any {
            return Err(parse_err("empty expression"));
        }
        Ok(out)
    }
}
