//! Floating-point evaluation of Gamma products, used as an independent check
//! on the exact reduction.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{GammaKind, GammaProduct};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Minimum distance from a pole accepted by [`eval_numeric`].
pub const POLE_MARGIN: f64 = 0.1;

/// A logarithm of `Gamma(z)`; the branch is unspecified, only `exp` of the
/// result is meaningful.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi.ln() - (pi * z).sin().ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

fn ln_gamma_r(z: Complex64) -> Complex64 {
    -0.5 * z * PI.ln() + ln_gamma(z / 2.0)
}

fn ln_gamma_c(z: Complex64) -> Complex64 {
    2f64.ln() - z * (2.0 * PI).ln() + ln_gamma(z)
}

/// `pi^{-z/2} Gamma(z/2)`.
pub fn gamma_r(z: Complex64) -> Complex64 {
    ln_gamma_r(z).exp()
}

/// `2 (2 pi)^{-z} Gamma(z)`.
pub fn gamma_c(z: Complex64) -> Complex64 {
    ln_gamma_c(z).exp()
}

fn pole_distance(kind: GammaKind, z: Complex64) -> f64 {
    let step = match kind {
        GammaKind::R => 2.0,
        GammaKind::C => 1.0,
    };
    let k = (-z.re / step).round().max(0.0);
    (z + k * step).norm()
}

/// Evaluates the product at `s`.
pub fn eval_numeric(x: &GammaProduct, s: Complex64) -> Result<Complex64> {
    let mut log = Complex64::new(0.0, 0.0);
    for (atom, exp) in x.atoms() {
        let z = atom.sign.value() as f64 * s + atom.shift.to_f64();
        if pole_distance(atom.kind, z) < POLE_MARGIN {
            return Err(Error::PoleProximity(s.to_string()));
        }
        let l = match atom.kind {
            GammaKind::R => ln_gamma_r(z),
            GammaKind::C => ln_gamma_c(z),
        };
        log += exp as f64 * l;
    }
    Ok(x.unit().to_complex() * log.exp())
}
