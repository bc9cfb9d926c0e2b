//! Gaussian fluctuations around the mean-field state.
//!
//! The quadratic Hamiltonian is
//!
//! ```text
//! H_B = sum_ij A_ij a_i† a_j + 1/2 B_ij a_i† a_j† + 1/2 B*_ij a_i a_j
//! ```
//!
//! with `A` Hermitian and `B` symmetric. Mode energies are the positive
//! eigenvalues of the dynamical matrix `D = [[A, B], [-B*, -A*]]`. Two routes
//! compute them:
//!
//! - [`spectrum_matrix`] works on the matrices alone.
//! - [`spectrum_charpoly_normal`] / [`spectrum_charpoly_superradiant`] use the
//!   closed-form characteristic polynomials of the `U = 0` problem.
//!
//! [`spectrum`] runs both where the second exists and insists they agree.

use nalgebra::{Matrix3, Matrix6, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::cubic::{Cubic, CubicRoots};
use crate::error::{DickeError, Result};
use crate::meanfield::{self, MeanFieldSolution, Phase};
use crate::params::ModelParams;

/// Modes below `GOLDSTONE_TOL * max(omega_c, largest mode)` count as gapless.
pub const GOLDSTONE_TOL: f64 = 1e-7;
/// `|Im eps|` above this (units of `omega_c`) marks a dynamical instability.
pub const INSTABILITY_TOL: f64 = 1e-9;
/// Window for matching eigenvalues into `±eps` pairs (units of `omega_c`).
pub const PAIRING_WINDOW: f64 = 1e-8;
/// Allowed disagreement between the matrix and polynomial routes (units of `omega_c`).
pub const ROUTE_TOL: f64 = 1e-10;
/// Negative `eps^2` roots beyond this (units of `omega_c^2`) signal instability.
pub const NEGATIVE_ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovMatrices {
    pub a: Matrix3<Complex64>,
    pub b: Matrix3<Complex64>,
    /// `omega_c` of the model the blocks were built for.
    pub energy_scale: f64,
}

/// Superradiant-phase branch names, ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// The gapless mode `eps_Delta`.
    Goldstone,
    /// `eps_-`.
    Lower,
    /// `eps_+`.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluctuationSpectrum {
    /// Real parts of the three nonnegative-branch energies, ascending.
    pub modes: [f64; 3],
    /// The same branches as complex numbers; nonzero imaginary parts mean instability.
    pub eigenvalues: [Complex64; 3],
    pub goldstone_count: usize,
    pub stable: bool,
    pub branch_labels: Option<[Branch; 3]>,
}

impl FluctuationSpectrum {
    fn from_eigenvalues(mut eig: [Complex64; 3], scale: f64) -> Self {
        eig.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.abs().total_cmp(&y.im.abs())));
        let modes = eig.map(|z| z.re);
        let largest = eig.iter().map(|z| z.norm()).fold(scale, f64::max);
        let gapless = GOLDSTONE_TOL * largest;
        let goldstone_count = eig.iter().filter(|z| z.norm() < gapless).count();
        let stable = eig
            .iter()
            .all(|z| z.norm() < gapless || z.im.abs() <= INSTABILITY_TOL * scale);
        let branch_labels =
            (goldstone_count == 1 && stable).then_some([Branch::Goldstone, Branch::Lower, Branch::Upper]);
        Self {
            modes,
            eigenvalues: eig,
            goldstone_count,
            stable,
            branch_labels,
        }
    }

    /// Lowest mode that is not gapless.
    pub fn lowest_gapped(&self) -> Option<f64> {
        self.modes.get(self.goldstone_count).copied()
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.eigenvalues
            .iter()
            .zip(other.eigenvalues.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl BogoliubovMatrices {
    pub fn hermiticity_defect(&self) -> f64 {
        (self.a - self.a.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn symmetry_defect(&self) -> f64 {
        (self.b - self.b.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `[[A, B], [-B*, -A*]]`, the generator of `i d/dt (a, a†)`.
    pub fn dynamical_matrix(&self) -> Matrix6<Complex64> {
        let mut d = Matrix6::zeros();
        for i in 0..3 {
            for j in 0..3 {
                d[(i, j)] = self.a[(i, j)];
                d[(i, j + 3)] = self.b[(i, j)];
                d[(i + 3, j)] = -self.b[(i, j)].conj();
                d[(i + 3, j + 3)] = -self.a[(i, j)].conj();
            }
        }
        d
    }

    /// Real symmetric form of the Hamiltonian in quadratures `a = (x + i p)/sqrt 2`,
    /// ordered `(x1, x2, x3, p1, p2, p3)`.
    pub fn quadrature_hamiltonian(&self) -> Matrix6<f64> {
        let mut h = Matrix6::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let a = self.a[(i, j)];
                let b = self.b[(i, j)];
                h[(i, j)] = a.re + b.re;
                h[(i, j + 3)] = b.im - a.im;
                h[(i + 3, j)] = a.im + b.im;
                h[(i + 3, j + 3)] = a.re - b.re;
            }
        }
        // Symmetrize away round-off.
        (h + h.transpose()) * 0.5
    }

    /// Coefficients `(e1, e2, e3)` of `eps^6 - e1 eps^4 + e2 eps^2 - e3`, the
    /// characteristic polynomial of the dynamical matrix, computed numerically.
    pub fn characteristic_coefficients(&self) -> [f64; 3] {
        let d = self.dynamical_matrix();
        let d2 = d * d;
        let d4 = d2 * d2;
        let p1 = 0.5 * d2.trace().re;
        let p2 = 0.5 * d4.trace().re;
        let e1 = p1;
        let e2 = 0.5 * (e1 * p1 - p2);
        let e3 = -d.determinant().re;
        [e1, e2, e3]
    }
}

/// Coefficient blocks of the quadratic fluctuation Hamiltonian around `mf`.
///
/// Valid for any `U`; at `|alpha3|^2 = 0` the blocks reduce to the normal-phase
/// form with `omega_c -> wc_tilde`.
pub fn build_matrices(p: &ModelParams, mf: &MeanFieldSolution) -> Result<BogoliubovMatrices> {
    let nn = p.n();
    let n = mf.alpha3_abs2;
    if !(n >= 0.0 && n < nn) {
        return Err(DickeError::Domain(format!(
            "Holstein-Primakoff breakdown: |alpha3|^2 = {n}, N = {nn}"
        )));
    }
    let w = p.omega_c_tilde() + p.u() * n;
    if !(w > 0.0) {
        return Err(DickeError::Singular(format!("wc_tilde + U |alpha3|^2 = {w}")));
    }
    let g_sq = p.g_squared();
    let (g1, g2, u) = (p.g1(), p.g2(), p.u());
    let rest = nn - n;
    let sqrt_rest = rest.sqrt();
    let sqrt_n_atoms = nn.sqrt();

    let atom = p.omega_z()
        + u * g_sq * n * rest / (nn * w * w)
        + g_sq * n * (4.0 * nn - 3.0 * n) / (2.0 * w * nn * rest);
    let direct = (2.0 * nn - 3.0 * n) / (2.0 * sqrt_rest) - u * n * sqrt_rest / w;
    let crossed = n / (2.0 * sqrt_rest) + u * n * sqrt_rest / w;
    let squeeze = g_sq * n * (2.0 * nn - n) / (2.0 * w * nn * rest);

    let phase2 = Complex64::from_polar(1.0, 2.0 * mf.theta);
    let re = |x: f64| Complex64::new(x, 0.0);

    let mut a = Matrix3::zeros();
    let mut b = Matrix3::zeros();
    a[(0, 0)] = re(w);
    a[(1, 1)] = re(w);
    a[(2, 2)] = re(atom);
    a[(0, 2)] = re(g1 * direct / sqrt_n_atoms);
    a[(2, 0)] = a[(0, 2)];
    a[(1, 2)] = -g2 * crossed / sqrt_n_atoms * phase2.conj();
    a[(2, 1)] = a[(1, 2)].conj();

    b[(0, 2)] = -g1 * crossed / sqrt_n_atoms * phase2;
    b[(2, 0)] = b[(0, 2)];
    b[(1, 2)] = re(g2 * direct / sqrt_n_atoms);
    b[(2, 1)] = b[(1, 2)];
    b[(2, 2)] = squeeze * phase2;

    Ok(BogoliubovMatrices {
        a,
        b,
        energy_scale: p.energy_scale(),
    })
}

const J: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];

fn symplectic_form() -> Matrix6<f64> {
    let mut j = Matrix6::zeros();
    for i in 0..3 {
        j[(i, i + 3)] = J[0][1];
        j[(i + 3, i)] = J[1][0];
    }
    j
}

/// Mode energies from the matrices alone.
///
/// When the quadrature Hamiltonian `H` is positive semidefinite the spectrum is
/// real and equals the singular values of the antisymmetric `H^{1/2} Ω H^{1/2}`
/// (each appearing twice), which resolves the gapless Goldstone pair to full
/// precision. Otherwise the eigenvalues of the dynamical matrix are paired into
/// `±eps` and the nonnegative member of each pair is reported.
pub fn spectrum_matrix(m: &BogoliubovMatrices) -> Result<FluctuationSpectrum> {
    let scale = m.energy_scale;
    let h = m.quadrature_hamiltonian();
    let eig = SymmetricEigen::new(h);
    let norm = eig.eigenvalues.iter().map(|x| x.abs()).fold(scale, f64::max);
    let lowest = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);

    // Eigenvalues of H at rounding level are zero modes; their square roots
    // would otherwise leak O(sqrt(eps)) into the Goldstone singular value.
    let null = 32.0 * f64::EPSILON * norm;
    if lowest >= -1e-13 * norm {
        let sqrt_h = eig.eigenvectors
            * Matrix6::from_diagonal(&eig.eigenvalues.map(|x| if x > null { x.sqrt() } else { 0.0 }))
            * eig.eigenvectors.transpose();
        let s = sqrt_h * symplectic_form() * sqrt_h;
        let mut sv: Vec<f64> = s.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        let mut modes = [Complex64::default(); 3];
        for k in 0..3 {
            let (hi, lo) = (sv[2 * k], sv[2 * k + 1]);
            if hi - lo > PAIRING_WINDOW * scale {
                return Err(DickeError::Pairing {
                    window: PAIRING_WINDOW * scale,
                    eigenvalues: sv.iter().map(|&x| (x, 0.0)).collect(),
                });
            }
            modes[k] = Complex64::new(0.5 * (hi + lo), 0.0);
        }
        return Ok(FluctuationSpectrum::from_eigenvalues(modes, scale));
    }

    let reps = paired_dynamical_eigenvalues(m)?;
    Ok(FluctuationSpectrum::from_eigenvalues(reps, scale))
}

/// All six eigenvalues of the dynamical matrix.
pub fn dynamical_eigenvalues(m: &BogoliubovMatrices) -> [Complex64; 6] {
    // D = T (i Ω H) T^{-1} with T the quadrature transform, so the spectrum of the
    // complex 6×6 D is i times that of the real matrix Ω H.
    let k = symplectic_form() * m.quadrature_hamiltonian();
    let ev = k.complex_eigenvalues();
    let mut out = [Complex64::default(); 6];
    for (o, z) in out.iter_mut().zip(ev.iter()) {
        *o = Complex64::new(-z.im, z.re);
    }
    out
}

/// Greedy `±eps` matching of the dynamical eigenvalues; returns one member of
/// each pair, the one with nonnegative real part (or imaginary part, if purely
/// imaginary).
pub fn paired_dynamical_eigenvalues(m: &BogoliubovMatrices) -> Result<[Complex64; 3]> {
    let scale = m.energy_scale;
    let window = PAIRING_WINDOW * scale;
    let ev = dynamical_eigenvalues(m);
    let mut used = [false; 6];
    let mut reps = Vec::with_capacity(3);
    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&i, &j| ev[j].norm().total_cmp(&ev[i].norm()));
    for &i in &order {
        if used[i] {
            continue;
        }
        used[i] = true;
        let partner = (0..6)
            .filter(|&j| !used[j])
            .min_by(|&x, &y| (ev[i] + ev[x]).norm().total_cmp(&(ev[i] + ev[y]).norm()));
        let Some(j) = partner else { break };
        if (ev[i] + ev[j]).norm() > window {
            return Err(DickeError::Pairing {
                window,
                eigenvalues: ev.iter().map(|z| (z.re, z.im)).collect(),
            });
        }
        used[j] = true;
        let pos = |z: Complex64| z.re > window || (z.re.abs() <= window && z.im >= 0.0);
        let r = if pos(ev[i]) { ev[i] } else { ev[j] };
        let r = if (r.re).abs() <= window && r.im.abs() <= window {
            // Treat a tiny pair as centred on the origin.
            Complex64::new(0.5 * (ev[i].re - ev[j].re).abs(), 0.0)
        } else {
            r
        };
        reps.push(r);
    }
    Ok([reps[0], reps[1], reps[2]])
}

/// Zero-point correction `(sum eps - tr A)/2` to the ground-state energy.
pub fn zero_point_energy(m: &BogoliubovMatrices, s: &FluctuationSpectrum) -> f64 {
    0.5 * (s.modes.iter().sum::<f64>() - m.a.trace().re)
}

/// Coefficients `(c2, c1, c0)` of the normal-phase polynomial
/// `x^3 - c2 x^2 + c1 x - c0` in `x = eps^2`, with `omega_c -> wc_tilde`.
pub fn normal_charpoly(p: &ModelParams) -> [f64; 3] {
    let wc = p.omega_c_tilde();
    let wz = p.omega_z();
    let (g1s, g2s) = (p.g1() * p.g1(), p.g2() * p.g2());
    let t = wc * wc + g1s - g2s;
    let c2 = wz * wz + 2.0 * t;
    let c1 = 2.0 * wz * wz * wc * wc + t * t - 2.0 * wz * wc * (g1s + g2s);
    let d = g1s + g2s - wz * wc;
    let c0 = wc * wc * d * d;
    [c2, c1, c0]
}

/// Rounding uncertainties of [`normal_charpoly`]. `c1` cancels to nearly zero
/// on the degeneracy line near `g_c`, where its relative error is large.
fn normal_charpoly_uncertainty(p: &ModelParams) -> [f64; 3] {
    let eps = f64::EPSILON;
    let wc = p.omega_c_tilde().abs();
    let wz = p.omega_z().abs();
    let g_sq = p.g_squared();
    let t = wc * wc + g_sq;
    let d = (g_sq - wz * wc).abs();
    let d2 = 4.0 * eps * (wz * wz + 2.0 * t);
    let d1 = 8.0 * eps * (2.0 * wz * wz * wc * wc + 3.0 * t * t + 2.0 * wz * wc * g_sq);
    let d0 = 8.0 * eps * wc * wc * d * (d + g_sq + wz * wc);
    [d2, d1, d0]
}

/// Normal-phase spectrum from the closed-form characteristic cubic.
///
/// Negative or complex roots in `eps^2` (the normal state above threshold)
/// are reported with `stable = false`.
pub fn spectrum_charpoly_normal(p: &ModelParams) -> FluctuationSpectrum {
    let scale = p.energy_scale();
    let [c2, c1, c0] = normal_charpoly(p);
    let cubic = Cubic::new(-c2, c1, -c0).with_uncertainty(normal_charpoly_uncertainty(p));
    let roots: [Complex64; 3] = match cubic.roots() {
        CubicRoots::ThreeReal(r) => r.map(|x| {
            if x >= -NEGATIVE_ROOT_TOL * scale * scale {
                Complex64::new(x.max(0.0).sqrt(), 0.0)
            } else {
                Complex64::new(0.0, (-x).sqrt())
            }
        }),
        CubicRoots::OneReal(x, z) => {
            let first = if x >= -NEGATIVE_ROOT_TOL * scale * scale {
                Complex64::new(x.max(0.0).sqrt(), 0.0)
            } else {
                Complex64::new(0.0, (-x).sqrt())
            };
            let s = z.sqrt();
            let s = if s.re < 0.0 { -s } else { s };
            [first, s, s.conj()]
        }
    };
    FluctuationSpectrum::from_eigenvalues(roots, scale)
}

/// `(eps_-^2, eps_+^2)` of the superradiant polaritons at `U = 0`.
///
/// Uses `eps_-^2 eps_+^2 = wc^2 (wc + wz cos2phi)^2 + G^2 - wz^2 wc^2` and
/// `eps_-^2 + eps_+^2 = P` so that `eps_-` keeps full relative precision.
pub fn polariton_energies_squared(p: &ModelParams) -> (f64, f64) {
    let wc = p.omega_c();
    let wz = p.omega_z();
    let g_sq = p.g_squared();
    let (g1s, g2s) = (p.g1() * p.g1(), p.g2() * p.g2());
    let cos2 = (g1s - g2s) / g_sq;
    let sum = 2.0 * wc * wc + g_sq * g_sq / (wc * wc) + 2.0 * wz * wc * cos2;
    let radicand = g_sq.powi(4) / wc.powi(4) + 4.0 * wz * (g1s - g2s) * g_sq / wc + 4.0 * wz * wz * wc * wc;
    let root = radicand.max(0.0).sqrt();
    let shifted = wc + wz * cos2;
    let product = wc * wc * shifted * shifted + g_sq * g_sq - wz * wz * wc * wc;
    let upper = 0.5 * (sum + root);
    let lower = if upper > 0.0 { product / upper } else { 0.5 * (sum - root) };
    (lower, upper)
}

/// Superradiant spectrum `{0, eps_-, eps_+}` from the closed form at `U = 0`.
pub fn spectrum_charpoly_superradiant(p: &ModelParams) -> Result<FluctuationSpectrum> {
    if p.u() != 0.0 {
        return Err(DickeError::Domain(
            "closed-form superradiant polaritons exist only for U = 0".into(),
        ));
    }
    if !(p.mu_tilde() < 1.0) {
        return Err(DickeError::Domain(format!(
            "not superradiant: mu_tilde = {}",
            p.mu_tilde()
        )));
    }
    let scale = p.energy_scale();
    let (lower, upper) = polariton_energies_squared(p);
    let branch = |x: f64| {
        if x >= -NEGATIVE_ROOT_TOL * scale * scale {
            Complex64::new(x.max(0.0).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-x).sqrt())
        }
    };
    let mut s = FluctuationSpectrum::from_eigenvalues(
        [Complex64::default(), branch(lower), branch(upper)],
        scale,
    );
    if s.goldstone_count >= 1 && s.stable {
        s.branch_labels = Some([Branch::Goldstone, Branch::Lower, Branch::Upper]);
    }
    Ok(s)
}

/// Spectrum of the mean-field ground state of `p`.
///
/// Always computed from the matrices. Where a closed-form polynomial exists
/// (`U = 0`, or the normal phase for any `U`) it is evaluated as well and the
/// two must agree to [`ROUTE_TOL`].
pub fn spectrum(p: &ModelParams) -> Result<FluctuationSpectrum> {
    let mf = meanfield::solve(p)?;
    spectrum_at(p, &mf)
}

pub fn spectrum_at(p: &ModelParams, mf: &MeanFieldSolution) -> Result<FluctuationSpectrum> {
    let m = build_matrices(p, mf)?;
    let matrix = spectrum_matrix(&m)?;
    let charpoly = match mf.phase {
        Phase::Superradiant if p.u() == 0.0 => Some(spectrum_charpoly_superradiant(p)?),
        Phase::Superradiant => None,
        Phase::Normal | Phase::Critical => Some(spectrum_charpoly_normal(p)),
    };
    if let Some(cp) = charpoly {
        let deviation = matrix.max_deviation(&cp);
        if !(deviation <= ROUTE_TOL * p.energy_scale()) {
            return Err(DickeError::RouteDisagreement {
                matrix: matrix.modes,
                charpoly: cp.modes,
                deviation,
            });
        }
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn params(wz: f64, g: f64, phi: f64, un: f64) -> ModelParams {
        ModelParams::builder()
            .omega_z(wz)
            .polar(g, phi)
            .un(un)
            .atoms(100)
            .build()
            .unwrap()
    }

    fn close(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn normal_blocks_match_closed_form() {
        let p = ModelParams::new(1.0, 1.5, 0.3, 0.7, 0.0, 10).unwrap();
        let m = build_matrices(&p, &meanfield::solve(&p).unwrap()).unwrap();
        let re = |x: f64| Complex64::new(x, 0.0);
        let a = Matrix3::new(1.0, 0.0, 0.3, 0.0, 1.0, 0.0, 0.3, 0.0, 1.5).map(re);
        let b = Matrix3::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.7, 0.0, 0.7, 0.0).map(re);
        assert!((m.a - a).norm() < 1e-15);
        assert!((m.b - b).norm() < 1e-15);

        let q = ModelParams::new(1.0, 1.5, 0.3, 0.4, 0.1, 10).unwrap();
        let m = build_matrices(&q, &meanfield::solve(&q).unwrap()).unwrap();
        assert!((m.a[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((m.a[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!((m.a[(2, 2)].re - 1.5).abs() < 1e-15);
    }

    #[test]
    fn superradiant_blocks_match_closed_form() {
        let p = params(1.5, 2.0, 0.6, 0.0);
        let mf = meanfield::solve(&p).unwrap();
        let m = build_matrices(&p, &mf).unwrap();
        let mu = p.omega_z() * p.omega_c() / p.g_squared();
        let r = 2.0 * 2f64.sqrt() * (1.0 + mu).sqrt();
        assert!((m.a[(0, 2)].re - p.g1() * (1.0 + 3.0 * mu) / r).abs() < 1e-14);
        assert!((m.a[(1, 2)].re + p.g2() * (1.0 - mu) / r).abs() < 1e-14);
        assert!((m.b[(0, 2)].re + p.g1() * (1.0 - mu) / r).abs() < 1e-14);
        assert!((m.b[(1, 2)].re - p.g2() * (1.0 + 3.0 * mu) / r).abs() < 1e-14);
        let a33 = p.omega_z() * (4.0 + (1.0 + mu).powi(2)) / (4.0 * mu * (1.0 + mu));
        let b33 = p.omega_z() * (1.0 - mu) * (3.0 + mu) / (4.0 * mu * (1.0 + mu));
        assert!((m.a[(2, 2)].re - a33).abs() < 1e-14);
        assert!((m.b[(2, 2)].re - b33).abs() < 1e-14);
        assert!(m.a.iter().chain(m.b.iter()).all(|z| z.im == 0.0));
    }

    #[test]
    fn blocks_are_hermitian_and_symmetric() {
        let p = params(1.5, 2.0, 0.6, 1.0);
        let mf = meanfield::solve(&p).unwrap().with_gauge(0.9);
        let m = build_matrices(&p, &mf).unwrap();
        assert!(m.hermiticity_defect() < 1e-14);
        assert!(m.symmetry_defect() < 1e-14);
    }

    #[test]
    fn holstein_primakoff_breakdown_is_an_error() {
        let p = params(1.5, 2.0, 0.6, 0.0);
        let mut mf = meanfield::solve(&p).unwrap();
        mf.alpha3_abs2 = p.n();
        assert!(matches!(build_matrices(&p, &mf), Err(DickeError::Domain(_))));
    }

    #[test]
    fn decoupled_oscillators() {
        let p = params(1.5, 0.0, 0.0, 0.0);
        let s = spectrum(&p).unwrap();
        assert!(close(s.modes, [1.0, 1.0, 1.5], 1e-14));
        assert_eq!(s.goldstone_count, 0);
        assert!(s.stable);
    }

    #[test]
    fn degenerate_pair_at_resonance() {
        let p = params(1.0, 0.6, FRAC_PI_2, 0.0);
        let s = spectrum(&p).unwrap();
        assert!(close(s.modes, [0.8, 0.8, 1.0], 1e-12), "{:?}", s.modes);
    }

    #[test]
    fn superradiant_at_threshold_tc_limit() {
        // Evaluated on the superradiant branch at g = g_c.
        let p = params(1.5, 1.5f64.sqrt(), 0.0, 0.0);
        let mut mf = meanfield::solve(&p).unwrap();
        mf.phase = Phase::Superradiant;
        let m = build_matrices(&p, &mf).unwrap();
        let s = spectrum_matrix(&m).unwrap();
        assert!(close(s.modes, [0.0, 1.0, 2.5], 1e-12), "{:?}", s.modes);
        let (lo, hi) = polariton_energies_squared(&p);
        assert!((lo.sqrt() - 1.0).abs() < 1e-14 && (hi.sqrt() - 2.5).abs() < 1e-14);
    }

    #[test]
    fn goldstone_in_superradiant_phase() {
        for un in [0.0, 1.0, -0.5] {
            let p = params(1.5, 2.0, 0.7, un);
            let s = spectrum(&p).unwrap();
            assert_eq!(s.goldstone_count, 1, "UN = {un}: {:?}", s.modes);
            assert!(s.stable);
            assert_eq!(s.branch_labels, Some([Branch::Goldstone, Branch::Lower, Branch::Upper]));
            assert!(s.modes[0].abs() < 1e-12);
        }
    }

    #[test]
    fn limiting_cases_of_normal_cubic() {
        let (wz, wc) = (1.5f64, 1.0f64);
        let g2 = 0.9;
        let s = spectrum_charpoly_normal(&params(wz, g2, FRAC_PI_2, 0.0));
        let disc = ((wz * wz - wc * wc).powi(2) - 4.0 * g2 * g2 * (wz - wc).powi(2)).sqrt();
        let ep = ((wz * wz + wc * wc - 2.0 * g2 * g2 + disc) / 2.0).sqrt();
        let em = ((wz * wz + wc * wc - 2.0 * g2 * g2 - disc) / 2.0).sqrt();
        let mut want = [em, wc, ep];
        want.sort_by(f64::total_cmp);
        assert!(close(s.modes, want, 1e-13), "{:?} vs {want:?}", s.modes);

        let g1 = 0.9;
        let s = spectrum_charpoly_normal(&params(wz, g1, 0.0, 0.0));
        let disc = ((wz * wz - wc * wc).powi(2) + 4.0 * g1 * g1 * (wz + wc).powi(2)).sqrt();
        let ep = ((wz * wz + wc * wc + 2.0 * g1 * g1 + disc) / 2.0).sqrt();
        let em = ((wz * wz + wc * wc + 2.0 * g1 * g1 - disc) / 2.0).sqrt();
        let mut want = [em, wc, ep];
        want.sort_by(f64::total_cmp);
        assert!(close(s.modes, want, 1e-13), "{:?} vs {want:?}", s.modes);
    }

    #[test]
    fn degeneracy_line_roots() {
        let (wz, wc) = (1.5f64, 1.0f64);
        let phi = 0.5 * (-wc / wz).acos();
        for g in [0.2, 0.6, 1.0, 1.2] {
            let s = spectrum_charpoly_normal(&params(wz, g, phi, 0.0));
            let d = (wc * wc - g * g * wc / wz).sqrt();
            assert!(close(s.modes, [d, d, wz], 1e-12), "g = {g}: {:?}", s.modes);
        }
    }

    #[test]
    fn normal_state_above_threshold_is_flagged() {
        let s = spectrum_charpoly_normal(&params(1.5, 2.0, FRAC_PI_4, 0.0));
        assert!(!s.stable);
        // Same verdict from the matrices of the normal saddle.
        let p = params(1.5, 2.0, FRAC_PI_4, 0.0);
        let mut mf = meanfield::solve(&p).unwrap();
        mf.alpha3_abs2 = 0.0;
        mf.alpha1 = Complex64::default();
        mf.alpha2 = Complex64::default();
        let m = build_matrices(&p, &mf).unwrap();
        let sm = spectrum_matrix(&m).unwrap();
        assert!(!sm.stable);
        assert!(sm.max_deviation(&s) < 1e-10, "{sm:?} vs {s:?}");
    }

    #[test]
    fn numeric_coefficients_match_closed_form() {
        let p = params(1.5, 0.8, 0.4, 0.0);
        let m = build_matrices(&p, &meanfield::solve(&p).unwrap()).unwrap();
        let [e1, e2, e3] = m.characteristic_coefficients();
        let [c2, c1, c0] = normal_charpoly(&p);
        assert!((e1 - c2).abs() < 1e-13 && (e2 - c1).abs() < 1e-13 && (e3 - c0).abs() < 1e-13);
    }

    #[test]
    fn zero_point_energy_of_decoupled_modes_vanishes() {
        let p = params(1.5, 0.0, 0.0, 0.0);
        let m = build_matrices(&p, &meanfield::solve(&p).unwrap()).unwrap();
        let s = spectrum_matrix(&m).unwrap();
        assert!(zero_point_energy(&m, &s).abs() < 1e-14);
        let p = params(1.5, 0.9, 1.0, 0.0);
        let m = build_matrices(&p, &meanfield::solve(&p).unwrap()).unwrap();
        let s = spectrum_matrix(&m).unwrap();
        assert!(zero_point_energy(&m, &s) < 0.0);
    }
}
