//! Gap closing at the normal-superradiant boundary.
//!
//! On approach from the normal phase the lowest mode generically closes
//! linearly, `eps ~ 2 g_c / |wc + cos(2 phi) wz| * |g_c - g|`. On the line
//! `cos(2 phi) = -wc / wz` the two lowest branches are degenerate and the gap
//! closes as `sqrt(2) wc / sqrt(g_c) * |g_c - g|^{1/2}` instead.
//! All formulas here use `wc_tilde` in place of `wc`, which covers the normal
//! side for any `U`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::bogoliubov::{self, polariton_energies_squared};
use crate::error::{DickeError, Result};
use crate::params::ModelParams;

/// `|wc + cos(2 phi) wz|` below this (units of `omega_c`) counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;
/// Fits with a coefficient of determination below this carry a warning.
pub const R_SQUARED_WARN: f64 = 0.999;
/// `|eps_-|` below this (units of `omega_c`) is reported as a zero.
pub const ZERO_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FitSide {
    FromNormal,
    FromSuperradiant,
}

impl FitSide {
    pub fn label(self) -> &'static str {
        match self {
            FitSide::FromNormal => "from_normal",
            FitSide::FromSuperradiant => "from_superradiant",
        }
    }
}

/// Log-spaced sampling of the relative distance `t = |g - g_c| / g_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitWindow {
    pub lower: f64,
    pub upper: f64,
    pub points: usize,
}

impl Default for FitWindow {
    fn default() -> Self {
        Self {
            lower: 1e-4,
            upper: 1e-2,
            points: 40,
        }
    }
}

impl FitWindow {
    pub const MAX_UPPER: f64 = 0.05;
    pub const MIN_POINTS: usize = 20;

    pub fn new(lower: f64, upper: f64, points: usize) -> Result<Self> {
        let w = Self { lower, upper, points };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lower > 0.0 && self.lower < self.upper && self.upper <= Self::MAX_UPPER) {
            return Err(DickeError::FitWindow(format!(
                "need 0 < lower < upper <= {}, got [{}, {}]",
                Self::MAX_UPPER,
                self.lower,
                self.upper
            )));
        }
        if self.points < Self::MIN_POINTS {
            return Err(DickeError::FitWindow(format!(
                "need at least {} points, got {}",
                Self::MIN_POINTS,
                self.points
            )));
        }
        Ok(())
    }

    pub fn distances(&self) -> Vec<f64> {
        let (a, b) = (self.lower.ln(), self.upper.ln());
        let step = (b - a) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.upper
                } else {
                    (a + step * i as f64).exp()
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalFit {
    pub z_nu: f64,
    /// Amplitude in energy per `|g_c - g|^{z_nu}`.
    pub prefactor: f64,
    pub window: (f64, f64),
    pub r_squared: f64,
    pub side: FitSide,
    /// `r_squared` fell below [`R_SQUARED_WARN`].
    pub poor_fit: bool,
    /// `(|g_c - g|, gap)` pairs the fit used.
    pub samples: Vec<(f64, f64)>,
}

/// Linear-gap slope `2 g_c / |wc_tilde + cos(2 phi) wz|`.
pub fn analytic_slope(p: &ModelParams, phi: f64) -> Result<f64> {
    let gap = (p.omega_c_tilde() + (2.0 * phi).cos() * p.omega_z()).abs();
    if gap < DEGENERACY_TOL * p.energy_scale() {
        return Err(DickeError::SingularSlope { gap });
    }
    Ok(2.0 * p.critical_coupling() / gap)
}

/// Square-root amplitude `sqrt(2) wc_tilde / sqrt(g_c)` on the degeneracy line.
pub fn analytic_sqrt_prefactor(p: &ModelParams) -> Result<f64> {
    let wct = p.omega_c_tilde();
    if p.omega_z() < wct {
        return Err(DickeError::NoDegeneracy {
            omega_z: p.omega_z(),
            omega_c_tilde: wct,
        });
    }
    Ok(2f64.sqrt() * wct / p.critical_coupling().sqrt())
}

/// Coupling angle `0.5 acos(-wc_tilde / wz)` where the two lowest normal
/// branches are degenerate, if `wz >= wc_tilde`.
pub fn degeneracy_angle(p: &ModelParams) -> Option<f64> {
    let ratio = p.omega_c_tilde() / p.omega_z();
    (ratio <= 1.0).then(|| 0.5 * (-ratio).acos())
}

/// Lowest gapped mode at relative distance `t` from the boundary along the ray `phi`.
pub fn gap_at(p: &ModelParams, phi: f64, side: FitSide, t: f64) -> Result<f64> {
    let gc = p.critical_coupling();
    let g = match side {
        FitSide::FromNormal => gc * (1.0 - t),
        FitSide::FromSuperradiant => gc * (1.0 + t),
    };
    let q = p.with_polar(g, phi)?;
    let s = bogoliubov::spectrum(&q)?;
    s.lowest_gapped()
        .ok_or_else(|| DickeError::NoVanishingBranch("every mode is gapless".into()))
}

/// `eps(g_c (1 - t)) / (g_c t)`, the secant slope of the lowest normal branch.
pub fn finite_difference_slope(p: &ModelParams, phi: f64, t: f64) -> Result<f64> {
    Ok(gap_at(p, phi, FitSide::FromNormal, t)? / (p.critical_coupling() * t))
}

pub fn gap_samples(
    p: &ModelParams,
    phi: f64,
    side: FitSide,
    window: &FitWindow,
) -> Result<Vec<(f64, f64)>> {
    window.validate()?;
    let gc = p.critical_coupling();
    window
        .distances()
        .into_iter()
        .map(|t| Ok((gc * t, gap_at(p, phi, side, t)?)))
        .collect()
}

struct Line {
    slope: f64,
    intercept: f64,
    r_squared: f64,
}

fn least_squares(xy: &[(f64, f64)]) -> Line {
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = xy.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xy
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r_squared = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    Line {
        slope,
        intercept,
        r_squared,
    }
}

fn check_vanishing(samples: &[(f64, f64)], side: FitSide, phi: f64) -> Result<()> {
    let (near, far) = (samples[0], samples[samples.len() - 1]);
    // A vanishing branch must shrink by at least (t_min / t_max)^0.1 over the window.
    let required = (near.0 / far.0).powf(0.1);
    if !(near.1 > 0.0 && near.1 / far.1 < required) {
        return Err(DickeError::NoVanishingBranch(format!(
            "{} at phi = {phi}: gap {:.6e} at |g - g_c| = {:.3e} vs {:.6e} at {:.3e}",
            side.label(),
            near.1,
            near.0,
            far.1,
            far.0
        )));
    }
    Ok(())
}

/// Log-log fit `ln eps = ln prefactor + z_nu ln |g_c - g|` of the lowest
/// gapped branch.
pub fn fit_exponent(
    p: &ModelParams,
    phi: f64,
    side: FitSide,
    window: &FitWindow,
) -> Result<CriticalFit> {
    let samples = gap_samples(p, phi, side, window)?;
    check_vanishing(&samples, side, phi)?;
    let logs: Vec<(f64, f64)> = samples.iter().map(|&(d, e)| (d.ln(), e.ln())).collect();
    let line = least_squares(&logs);
    Ok(CriticalFit {
        z_nu: line.slope,
        prefactor: line.intercept.exp(),
        window: (window.lower, window.upper),
        r_squared: line.r_squared,
        side,
        poor_fit: line.r_squared < R_SQUARED_WARN,
        samples,
    })
}

/// Amplitude of `eps = A |g_c - g|^exponent` with the exponent held fixed.
pub fn fit_amplitude(
    p: &ModelParams,
    phi: f64,
    side: FitSide,
    window: &FitWindow,
    exponent: f64,
) -> Result<f64> {
    let samples = gap_samples(p, phi, side, window)?;
    check_vanishing(&samples, side, phi)?;
    let mean = samples
        .iter()
        .map(|&(d, e)| e.ln() - exponent * d.ln())
        .sum::<f64>()
        / samples.len() as f64;
    Ok(mean.exp())
}

/// Lower superradiant polariton `eps_-` evaluated on the boundary `g = g_c`
/// along the ray `phi`; requires `U = 0`.
pub fn lower_polariton_on_critical_line(p: &ModelParams, phi: f64) -> Result<f64> {
    if p.u() != 0.0 {
        return Err(DickeError::Domain(
            "closed-form polaritons exist only for U = 0".into(),
        ));
    }
    let q = p.with_polar(p.critical_coupling(), phi)?;
    let (lower, _) = polariton_energies_squared(&q);
    Ok(lower.max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalLineMinimum {
    pub phi: f64,
    pub eps_lower: f64,
    pub is_zero: bool,
}

/// Minimum of `eps_-(phi)` on the critical line over `phi in [0, pi/2]`.
///
/// `eps_-` touches zero without changing sign, so the zero is located by
/// bracketed golden-section minimization seeded from a `grid`-point scan.
pub fn critical_line_minimum(p: &ModelParams, grid: usize) -> Result<CriticalLineMinimum> {
    let grid = grid.max(3);
    let f = |phi: f64| lower_polariton_on_critical_line(p, phi);
    let step = FRAC_PI_2 / (grid - 1) as f64;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..grid {
        let v = f(step * i as f64)?;
        if v < best.1 {
            best = (i, v);
        }
    }
    let mut lo = step * best.0.saturating_sub(1) as f64;
    let mut hi = (step * (best.0 + 1) as f64).min(FRAC_PI_2);
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..200 {
        if hi - lo <= 4.0 * f64::EPSILON * hi.max(1.0) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let mut candidates = vec![(x1, f1), (x2, f2), (lo, f(lo)?), (hi, f(hi)?)];
    candidates.push((step * best.0 as f64, best.1));
    let (phi, eps_lower) = candidates
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty");
    Ok(CriticalLineMinimum {
        phi,
        eps_lower,
        is_zero: eps_lower < ZERO_TOL * p.energy_scale(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn params(wz: f64) -> ModelParams {
        ModelParams::builder().omega_z(wz).atoms(100).build().unwrap()
    }

    #[test]
    fn slope_examples() {
        let s = analytic_slope(&params(1.5), FRAC_PI_4).unwrap();
        assert!((s - 2.449_489_742_783_178).abs() < 1e-12);
        let s = analytic_slope(&params(1.5), 0.0).unwrap();
        assert!((s - 0.979_795_897_113_271_2).abs() < 1e-12);
        assert!(matches!(
            analytic_slope(&params(1.0), FRAC_PI_2),
            Err(DickeError::SingularSlope { .. })
        ));
    }

    #[test]
    fn sqrt_prefactor_examples() {
        let a = analytic_sqrt_prefactor(&params(1.5)).unwrap();
        assert!((a - 1.277_886_208_492_545).abs() < 1e-12);
        assert!((analytic_sqrt_prefactor(&params(1.0)).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            analytic_sqrt_prefactor(&params(0.5)),
            Err(DickeError::NoDegeneracy { .. })
        ));
    }

    #[test]
    fn degeneracy_angle_examples() {
        let phi = degeneracy_angle(&params(1.5)).unwrap();
        assert!((phi - 1.15026).abs() < 5e-6);
        assert!((degeneracy_angle(&params(1.0)).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(degeneracy_angle(&params(0.5)), None);
        // With UN = 1 the renormalized cavity frequency enters.
        let p = ModelParams::builder().omega_z(1.5).un(1.0).atoms(10).build().unwrap();
        assert!((degeneracy_angle(&p).unwrap() - 0.5 * (-1.0f64 / 3.0).acos()).abs() < 1e-15);
    }

    #[test]
    fn window_validation() {
        assert!(FitWindow::new(1e-4, 1e-2, 40).is_ok());
        assert!(FitWindow::new(1e-2, 1e-2, 40).is_err());
        assert!(FitWindow::new(1e-4, 0.2, 40).is_err());
        assert!(FitWindow::new(1e-4, 1e-2, 1).is_err());
        assert!(FitWindow::new(0.0, 1e-2, 40).is_err());
        let d = FitWindow::default().distances();
        assert_eq!(d.len(), 40);
        assert!((d[0] - 1e-4).abs() < 1e-18 && d[39] == 1e-2);
    }

    #[test]
    fn superradiant_side_has_no_vanishing_branch_off_degeneracy() {
        let err = fit_exponent(&params(1.5), FRAC_PI_4, FitSide::FromSuperradiant, &FitWindow::default());
        assert!(matches!(err, Err(DickeError::NoVanishingBranch(_))), "{err:?}");
    }

    #[test]
    fn least_squares_recovers_line() {
        let xy: Vec<_> = (0..10).map(|i| (i as f64, 2.0 * i as f64 - 1.0)).collect();
        let l = least_squares(&xy);
        assert!((l.slope - 2.0).abs() < 1e-14 && (l.intercept + 1.0).abs() < 1e-13);
        assert_eq!(l.r_squared, 1.0);
    }
}
