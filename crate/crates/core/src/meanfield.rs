//! Holstein-Primakoff mean-field ground state.
//!
//! After eliminating the photon amplitudes the energy depends on the atomic
//! condensate only through `n = |alpha3|^2`:
//!
//! ```text
//! E(n) = wz n - (g1^2 + g2^2) n (N - n) / (N (wc_tilde + U n))
//! ```
//!
//! Energies here omit the constant `-wz N / 2`; see
//! [`MeanFieldSolution::total_energy_per_atom`] for the value comparable with
//! exact diagonalization.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{DickeError, Result};
use crate::numdiff;
use crate::params::ModelParams;

/// Half-width of the band `|mu_tilde - 1|` labelled [`Phase::Critical`].
pub const CRITICAL_BAND: f64 = 1e-12;

/// Relative tolerance on `dE/dn` for an accepted superradiant solution.
pub const STATIONARITY_TOL: f64 = 1e-9;

/// Second derivatives smaller than this (units of `omega_c`) are not classified.
pub const FLAT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Phase {
    Normal,
    Superradiant,
    Critical,
}

impl Phase {
    pub fn label(self) -> &'static str {
        match self {
            Phase::Normal => "normal",
            Phase::Superradiant => "superradiant",
            Phase::Critical => "critical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stationarity {
    Minimum,
    Maximum,
    SaddleOrFlat,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanFieldSolution {
    /// Condensate occupation `|alpha3|^2`, in `[0, N)`.
    pub alpha3_abs2: f64,
    /// Phase of `alpha3`; [`solve`] always returns `0`.
    pub theta: f64,
    pub alpha1: Complex64,
    pub alpha2: Complex64,
    pub phase: Phase,
    /// `E(|alpha3|^2) / N`, without the `-wz/2` vacuum offset.
    pub energy_per_atom: f64,
    pub mu_tilde: f64,
}

impl MeanFieldSolution {
    pub fn alpha3(&self) -> Complex64 {
        Complex64::from_polar(self.alpha3_abs2.sqrt(), self.theta)
    }

    /// Ground-state energy per atom including the `-wz/2` offset of `wz S^z`.
    pub fn total_energy_per_atom(&self, p: &ModelParams) -> f64 {
        self.energy_per_atom - 0.5 * p.omega_z()
    }

    /// The same stationary point rotated by the chiral U(1):
    /// `alpha1 -> e^{i t} alpha1`, `alpha2 -> e^{-i t} alpha2`, `alpha3 -> e^{i t} alpha3`.
    pub fn with_gauge(&self, theta: f64) -> Self {
        let dt = theta - self.theta;
        let rot = Complex64::from_polar(1.0, dt);
        Self {
            theta,
            alpha1: self.alpha1 * rot,
            alpha2: self.alpha2 * rot.conj(),
            ..*self
        }
    }
}

/// `E(n)` for any `n` where the denominator is positive; no domain check.
fn energy_unchecked(p: &ModelParams, n: f64) -> f64 {
    let nn = p.n();
    p.omega_z() * n - p.g_squared() * n * (nn - n) / (nn * (p.omega_c_tilde() + p.u() * n))
}

/// Effective mean-field energy `E(|alpha3|^2)` with the photons eliminated.
pub fn effective_energy(p: &ModelParams, alpha3_abs2: f64) -> Result<f64> {
    let n = alpha3_abs2;
    if !(n >= 0.0 && n < p.n()) {
        return Err(DickeError::Domain(format!(
            "|alpha3|^2 = {n} outside [0, N = {})",
            p.n()
        )));
    }
    let denom = p.omega_c_tilde() + p.u() * n;
    if !(denom > 0.0) {
        return Err(DickeError::Singular(format!(
            "wc_tilde + U |alpha3|^2 = {denom}"
        )));
    }
    Ok(energy_unchecked(p, n))
}

/// Mean-field energy before eliminating the photons, as a function of all three
/// complex amplitudes (constant `-wz N / 2` dropped).
pub fn energy_functional(
    p: &ModelParams,
    alpha1: Complex64,
    alpha2: Complex64,
    alpha3: Complex64,
) -> Result<f64> {
    let n3 = alpha3.norm_sqr();
    if !(n3 < p.n()) {
        return Err(DickeError::Domain(format!(
            "|alpha3|^2 = {n3} outside [0, N = {})",
            p.n()
        )));
    }
    let photons = alpha1.norm_sqr() + alpha2.norm_sqr();
    let hp = ((p.n() - n3) / p.n()).sqrt();
    let co = alpha1 * alpha3.conj();
    let counter = alpha2 * alpha3;
    Ok(p.omega_c_tilde() * photons
        + p.omega_z() * n3
        + p.u() * n3 * photons
        + hp * (2.0 * p.g1() * co.re + 2.0 * p.g2() * counter.re))
}

/// Photon amplitudes minimizing the energy functional at fixed `alpha3`.
pub fn photon_amplitudes(p: &ModelParams, alpha3: Complex64) -> (Complex64, Complex64) {
    let n3 = alpha3.norm_sqr();
    let s = (1.0 - n3 / p.n()).sqrt();
    let denom = p.omega_c_tilde() + p.u() * n3;
    let alpha1 = -p.g1() * s / denom * alpha3;
    let alpha2 = -p.g2() * s / denom * alpha3.conj();
    (alpha1, alpha2)
}

/// Radius `sqrt(wz * wc_tilde)` of the normal region in the `(g1, g2)` plane.
/// The couplings of `p` are ignored.
pub fn critical_coupling(p: &ModelParams) -> f64 {
    p.critical_coupling()
}

/// Superradiant occupation `|alpha3|^2` for `mu_tilde < 1`.
///
/// For `U != 0` the closed form `(wc_tilde/U)(sqrt((wc_tilde + UN)/(wc_tilde + mu UN)) - 1)`
/// is evaluated through `expm1`/`ln_1p` so that it stays accurate as `U -> 0`.
pub fn superradiant_occupation(p: &ModelParams) -> f64 {
    let mu = p.mu_tilde();
    let nn = p.n();
    if p.u() == 0.0 {
        return 0.5 * nn * (1.0 - mu);
    }
    let wct = p.omega_c_tilde();
    let un = p.un();
    let ratio_minus_one = un * (1.0 - mu) / (wct + mu * un);
    wct / p.u() * (0.5 * ratio_minus_one.ln_1p()).exp_m1()
}

pub fn solve(p: &ModelParams) -> Result<MeanFieldSolution> {
    if !(p.omega_c_tilde() > 0.0) {
        return Err(DickeError::Singular(format!(
            "wc_tilde = {} must be positive",
            p.omega_c_tilde()
        )));
    }
    let mu = p.mu_tilde();
    let (phase, n) = if (mu - 1.0).abs() <= CRITICAL_BAND {
        (Phase::Critical, 0.0)
    } else if mu > 1.0 {
        (Phase::Normal, 0.0)
    } else {
        (Phase::Superradiant, superradiant_occupation(p))
    };
    if !(n >= 0.0 && n < p.n()) {
        return Err(DickeError::Domain(format!(
            "superradiant occupation {n} violates 0 <= |alpha3|^2 < N"
        )));
    }
    let energy = effective_energy(p, n)?;
    if phase == Phase::Superradiant {
        check_stationary(p, n)?;
    }
    let alpha3 = Complex64::new(n.sqrt(), 0.0);
    let (alpha1, alpha2) = photon_amplitudes(p, alpha3);
    Ok(MeanFieldSolution {
        alpha3_abs2: n,
        theta: 0.0,
        alpha1,
        alpha2,
        phase,
        energy_per_atom: energy / p.n(),
        mu_tilde: mu,
    })
}

/// Energy per atom as a function of the filling `x = n / N`.
fn energy_density(p: &ModelParams) -> impl Fn(f64) -> f64 + '_ {
    move |x: f64| energy_unchecked(p, x * p.n()) / p.n()
}

fn check_stationary(p: &ModelParams, n: f64) -> Result<()> {
    let x = n / p.n();
    let h = 1e-3 * x.min(1.0 - x);
    let grad = numdiff::derivative(energy_density(p), x, h);
    let scale = p.omega_z() + p.g_squared() / p.omega_c_tilde();
    if grad.abs() > STATIONARITY_TOL * scale {
        return Err(DickeError::NotStationary {
            gradient: grad,
            alpha3_abs2: n,
        });
    }
    Ok(())
}

/// Classifies a stationary point by the curvature of the energy along the
/// real `alpha3` axis, `d^2/dr^2 E(r^2)` at `r = |alpha3|`.
///
/// At `r = 0` this is `2 E'(0)`, whose sign flips exactly at the critical coupling.
pub fn classify_stability(p: &ModelParams, alpha3_abs2: f64) -> Result<Stationarity> {
    effective_energy(p, alpha3_abs2)?;
    let e = energy_density(p);
    let rho = (alpha3_abs2 / p.n()).sqrt();
    let mut h: f64 = 1e-3;
    if rho > 0.0 {
        h = h.min(0.5 * rho).min(0.5 * (1.0 - rho));
    }
    let curvature = numdiff::second_derivative(|r| e(r * r), rho, h);
    Ok(if curvature.abs() < FLAT_TOL * p.energy_scale() {
        Stationarity::SaddleOrFlat
    } else if curvature > 0.0 {
        Stationarity::Minimum
    } else {
        Stationarity::Maximum
    })
}
