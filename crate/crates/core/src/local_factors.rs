//! Archimedean `L`-, `epsilon`- and `gamma`-factors.

use serde::{Deserialize, Serialize};

use crate::characters::{char_inv, char_mul, ArchCharacter};
use crate::error::{Error, Result};
use crate::gamma::{GammaAtom, GammaProduct, Sign, UnitI};
use crate::halfint::HalfInt;
use crate::weights::{check_pure_pair, infinitesimal_entry, Weight};

/// The additive character `psi^(n)(x) = psi((-1)^n x)` where `psi(x) = e^{2 pi i eps_psi x}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PsiData {
    pub eps_psi: i8,
    pub n: usize,
}

impl PsiData {
    pub fn new(eps_psi: i8, n: usize) -> Result<Self> {
        if eps_psi != 1 && eps_psi != -1 {
            return Err(Error::InvalidArgument(format!("eps_psi must be +1 or -1, got {eps_psi}")));
        }
        Ok(PsiData { eps_psi, n })
    }

    /// `(-1)^n eps_psi i`.
    pub fn base(&self) -> UnitI {
        let sign = self.n as i64 + if self.eps_psi < 0 { 1 } else { 0 };
        UnitI::I * UnitI::sign(sign)
    }
}

/// `eps_psi` as a unit.
pub(crate) fn eps_psi_unit(eps_psi: i8) -> UnitI {
    if eps_psi < 0 {
        UnitI::MINUS_ONE
    } else {
        UnitI::ONE
    }
}

pub fn l_char(w: &ArchCharacter) -> GammaProduct {
    match *w {
        ArchCharacter::Real { t, delta } => GammaProduct::gamma_r(t + HalfInt::from_int(delta as i64)),
        ArchCharacter::Complex { a, b } => GammaProduct::gamma_c(a.max(b)),
    }
}

/// `L(s, D_{a,b} x |.|^t sgn^delta) = Gamma_C(s + t + max(a, b))`.
pub fn l_discrete(a: HalfInt, b: HalfInt, twist: &ArchCharacter) -> Result<GammaProduct> {
    check_discrete(a, b)?;
    let t = match *twist {
        ArchCharacter::Real { t, .. } => t,
        ArchCharacter::Complex { .. } => return Err(Error::VariantMismatch),
    };
    Ok(GammaProduct::gamma_c(t + a.max(b)))
}

/// `L(s, D_{a,b} x D_{a',b'})`.
pub fn l_discrete_pair(a: HalfInt, b: HalfInt, a2: HalfInt, b2: HalfInt) -> Result<GammaProduct> {
    check_discrete(a, b)?;
    check_discrete(a2, b2)?;
    Ok(GammaProduct::gamma_c((a + a2).max(b + b2)) * GammaProduct::gamma_c((a + b2).max(b + a2)))
}

fn check_discrete(a: HalfInt, b: HalfInt) -> Result<()> {
    if a == b || !(a - b).is_integer() {
        return Err(Error::DegenerateDiscrete);
    }
    Ok(())
}

pub fn eps_char(w: &ArchCharacter, psi: PsiData) -> UnitI {
    let e = match *w {
        ArchCharacter::Real { delta, .. } => delta as i64,
        ArchCharacter::Complex { a, b } => (a - b).abs().twice() / 2,
    };
    psi.base().pow(e)
}

/// `gamma(s, w, psi) = eps(s, w, psi) L(1 - s, w^-1) / L(s, w)`.
pub fn gamma_char(w: &ArchCharacter, psi: PsiData) -> GammaProduct {
    let numer = l_char(&char_inv(w)).reflect();
    numer.div(&l_char(w)).times_unit(eps_char(w, psi))
}

/// `prod_{i + k <= n} Gamma_C(s + mu~_i + nu~_k)`, over both embeddings in the
/// complex case.
pub fn l_pair(mu: &Weight, nu: &Weight) -> Result<GammaProduct> {
    check_pure_pair(mu, nu)?;
    let n = mu.n();
    let mut out = GammaProduct::one();
    for e in 0..mu.embeddings() {
        for i in 1..=n {
            for k in 1..=n - i {
                let shift = infinitesimal_entry(mu, e, i) + infinitesimal_entry(nu, e, k);
                out *= &GammaProduct::from_atom(GammaAtom::c(Sign::Plus, shift));
            }
        }
    }
    Ok(out)
}

fn check_lists(rho: &[ArchCharacter], rho2: &[ArchCharacter], chi: &ArchCharacter) -> Result<()> {
    if rho.len() < 2 || rho2.len() + 1 != rho.len() {
        return Err(Error::DimensionMismatch(format!(
            "expected lists of lengths (n, n-1) with n >= 2, got ({}, {})",
            rho.len(),
            rho2.len()
        )));
    }
    let field = chi.field();
    if rho.iter().chain(rho2).any(|c| c.field() != field) {
        return Err(Error::VariantMismatch);
    }
    Ok(())
}

/// `prod_{k < i, i + k <= n} (rho_i rho'_k chi)(-1)`.
pub fn sgn_triple(rho: &[ArchCharacter], rho2: &[ArchCharacter], chi: &ArchCharacter) -> Result<UnitI> {
    check_lists(rho, rho2, chi)?;
    let n = rho.len();
    let mut out = UnitI::ONE;
    for i in 1..=n {
        for k in 1..i.min(n - i + 1) {
            let c = char_mul(&char_mul(&rho[i - 1], &rho2[k - 1])?, chi)?;
            out *= UnitI::sign(c.sign_exponent() as i64);
        }
    }
    Ok(out)
}

/// `sgn(rho, rho', chi) prod_{i + k <= n} gamma(s, rho_i rho'_k chi, psi^(n))`.
pub fn big_gamma(
    rho: &[ArchCharacter],
    rho2: &[ArchCharacter],
    chi: &ArchCharacter,
    psi: PsiData,
) -> Result<GammaProduct> {
    let sign = sgn_triple(rho, rho2, chi)?;
    if psi.n != rho.len() {
        return Err(Error::DimensionMismatch(format!(
            "psi twisted for n = {} but rho has length {}",
            psi.n,
            rho.len()
        )));
    }
    let n = rho.len();
    let mut out = GammaProduct::from_unit(sign);
    for i in 1..=n {
        for k in 1..=n - i {
            let c = char_mul(&char_mul(&rho[i - 1], &rho2[k - 1])?, chi)?;
            out *= &gamma_char(&c, psi);
        }
    }
    Ok(out)
}
