//! The period constant `Omega_{mu,nu,j}` and its verification against the
//! ratio of archimedean gamma and `L`-factors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::{chi_twist, rho_list, ArchCharacter, EpsilonChoice};
use crate::error::{Error, Result};
use crate::gamma::{eval_numeric, GammaProduct, Reduced, UnitI};
use crate::halfint::HalfInt;
use crate::local_factors::{big_gamma, eps_psi_unit, l_pair, PsiData};
use crate::weights::{check_pure_pair, is_balanced_at, FieldKind, Weight};

/// Points in the strip `0 < Re s < 1`, `0.3 <= Im s <= 1` where the ratio is
/// sampled. All poles of the atoms lie on the real axis.
pub const STRIP_POINTS: [Complex64; 3] = [
    Complex64::new(0.37, 0.41),
    Complex64::new(0.61, 0.73),
    Complex64::new(0.23, 0.95),
];

/// `(eps_psi i)^{j n(n-1)/2 [K:R]} c'_mu c_nu eps_{mu,nu}`.
///
/// Defined for every `j`; only the period relation itself needs `j` to be
/// balanced.
pub fn omega_constant(mu: &Weight, nu: &Weight, j: i64, eps_psi: i8) -> Result<UnitI> {
    check_pure_pair(mu, nu)?;
    let n = mu.n();
    let psi = PsiData::new(eps_psi, n)?;
    let degree = mu.field().degree() as i64;
    let n64 = n as i64;

    let prefactor = (UnitI::I * eps_psi_unit(eps_psi)).pow(j * n64 * (n64 - 1) / 2 * degree);

    let mut c_exp = 0i64;
    for i in 1..n {
        c_exp += (n64 - i as i64) * (mu.entry_sum(i) + nu.entry_sum(i));
    }
    let c = psi.base().pow(c_exp);

    let mut sign_exp = 0i64;
    for i in 1..=n {
        for k in 1..i.min(n - i + 1) {
            sign_exp += mu.entry_sum(i) + nu.entry_sum(k);
        }
    }

    Ok(prefactor * c * UnitI::sign(sign_exp))
}

fn check_inputs(mu: &Weight, nu: &Weight, j: i64, chi: &ArchCharacter, eps: EpsilonChoice) -> Result<()> {
    check_pure_pair(mu, nu)?;
    if chi.field() != mu.field() {
        return Err(Error::FieldMismatch);
    }
    if !chi.is_finite_order() {
        return Err(Error::NotFiniteOrder);
    }
    eps.validate(mu.field(), mu.n())?;
    if !is_balanced_at(mu, nu, j)? {
        return Err(Error::NotBalanced(j));
    }
    Ok(())
}

/// `Gamma_psi(s+j, rho^mu, rho^nu, chi) / Gamma_psi(s, rho^0, rho^0, chi sgn^j)
///  * L(s+j, mu x nu) / L(s, 0 x 0)`.
pub fn archimedean_ratio(
    mu: &Weight,
    nu: &Weight,
    j: i64,
    chi: &ArchCharacter,
    eps: EpsilonChoice,
    eps_psi: i8,
) -> Result<GammaProduct> {
    check_inputs(mu, nu, j, chi, eps)?;
    let n = mu.n();
    let field = mu.field();
    let psi = PsiData::new(eps_psi, n)?;
    let shift = HalfInt::from_int(j);
    let mu0 = Weight::zero(field, n);
    let nu0 = Weight::zero(field, n - 1);

    let top = big_gamma(&rho_list(mu, eps.delta_n)?, &rho_list(nu, eps.delta_n1)?, chi, psi)?.shift(shift);
    let bottom = big_gamma(
        &rho_list(&mu0, eps.delta_n)?,
        &rho_list(&nu0, eps.delta_n1)?,
        &chi_twist(chi, j)?,
        psi,
    )?;
    let l_top = l_pair(mu, nu)?.shift(shift);
    let l_bottom = l_pair(&mu0, &nu0)?;
    Ok(top.div(&bottom) * l_top.div(&l_bottom))
}

/// Input of a single verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCase", into = "RawCase")]
pub struct Case {
    pub mu: Weight,
    pub nu: Weight,
    pub j: i64,
    pub chi: ArchCharacter,
    pub eps: EpsilonChoice,
    pub eps_psi: i8,
}

#[derive(Serialize, Deserialize)]
struct RawCase {
    field: FieldKind,
    mu: Vec<Vec<i64>>,
    nu: Vec<Vec<i64>>,
    #[serde(default)]
    j: i64,
    #[serde(default)]
    chi: Option<ArchCharacter>,
    #[serde(default)]
    eps: EpsilonChoice,
    #[serde(default = "default_eps_psi")]
    eps_psi: i8,
}

fn default_eps_psi() -> i8 {
    1
}

impl TryFrom<RawCase> for Case {
    type Error = Error;

    fn try_from(raw: RawCase) -> Result<Self> {
        let mu = Weight::new(raw.field, raw.mu)?;
        let nu = Weight::new(raw.field, raw.nu)?;
        let chi = raw.chi.unwrap_or(ArchCharacter::quadratic(raw.field, 0));
        PsiData::new(raw.eps_psi, 1)?;
        Ok(Case { mu, nu, j: raw.j, chi, eps: raw.eps, eps_psi: raw.eps_psi })
    }
}

impl From<Case> for RawCase {
    fn from(c: Case) -> Self {
        RawCase {
            field: c.mu.field(),
            mu: c.mu.rows().to_vec(),
            nu: c.nu.rows().to_vec(),
            j: c.j,
            chi: Some(c.chi),
            eps: c.eps,
            eps_psi: c.eps_psi,
        }
    }
}

impl Case {
    pub fn field(&self) -> FieldKind {
        self.mu.field()
    }

    pub fn ratio(&self) -> Result<GammaProduct> {
        archimedean_ratio(&self.mu, &self.nu, self.j, &self.chi, self.eps, self.eps_psi)
    }

    pub fn omega(&self) -> Result<UnitI> {
        omega_constant(&self.mu, &self.nu, self.j, self.eps_psi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// Largest relative spread of the sampled values; `None` if sampling failed.
    pub constancy: Option<f64>,
    /// Largest distance of a sampled value from `Omega`.
    #[serde(rename = "match")]
    pub match_: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub constant: Reduced,
    pub omega: UnitI,
    pub exact_match: bool,
    pub residuals: Residuals,
    pub inputs: Case,
}

fn residuals(ratio: &GammaProduct, omega: UnitI) -> Residuals {
    let values: Option<Vec<Complex64>> = STRIP_POINTS.iter().map(|s| eval_numeric(ratio, *s).ok()).collect();
    let Some(values) = values else {
        return Residuals { constancy: None, match_: None };
    };
    let scale = values[0].norm();
    let mut constancy = 0f64;
    for a in &values {
        for b in &values {
            constancy = constancy.max((a - b).norm() / scale);
        }
    }
    let target = omega.to_complex();
    let match_ = values.iter().map(|v| (v - target).norm()).fold(0f64, f64::max);
    let finite = |x: f64| x.is_finite().then_some(x);
    Residuals { constancy: finite(constancy), match_: finite(match_) }
}

pub fn verify_archimedean(case: &Case) -> Result<VerificationReport> {
    let ratio = case.ratio()?;
    let omega = case.omega()?;
    let constant = ratio.reduce_to_constant();
    Ok(VerificationReport {
        constant,
        omega,
        exact_match: constant == Reduced::Constant(omega),
        residuals: residuals(&ratio, omega),
        inputs: case.clone(),
    })
}
