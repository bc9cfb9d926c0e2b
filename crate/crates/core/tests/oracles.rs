//! Cross-checks against independent computations.
//!
//! Frozen spectra come from a symbolic Hessian of the mean-field functional
//! evaluated at a numerically minimized condensate. Frozen ED energies come from
//! dense diagonalization in the full `2^N` atomic product space with the same
//! photon cutoffs.

use std::f64::consts::FRAC_PI_4;

use chiral_dicke::bogoliubov::{self, build_matrices, spectrum_matrix};
use chiral_dicke::ed::{self, BasisSpec};
use chiral_dicke::meanfield::{self, energy_functional, Phase};
use chiral_dicke::{Complex64, ModelParams};

fn params(wz: f64, g1: f64, g2: f64, un: f64, n: u32) -> ModelParams {
    ModelParams::builder()
        .omega_z(wz)
        .g1(g1)
        .g2(g2)
        .un(un)
        .atoms(n)
        .build()
        .unwrap()
}

struct Frozen {
    p: ModelParams,
    alpha3_abs2: f64,
    energy: f64,
    modes: [f64; 2],
}

fn frozen_spectra() -> Vec<Frozen> {
    let g = 2.0 * 1.5f64.sqrt();
    vec![
        Frozen {
            p: params(1.5, g * FRAC_PI_4.cos(), g * FRAC_PI_4.sin(), 0.0, 100),
            alpha3_abs2: 37.5,
            energy: -84.37499999999966,
            modes: [0.9683016739692009, 6.087888950053884],
        },
        Frozen {
            p: params(1.5, 1.6, 0.7, 0.8, 100),
            alpha3_abs2: 22.052138807235078,
            energy: -34.446025173127396,
            modes: [0.7680589719030231, 4.110336906601314],
        },
        Frozen {
            p: params(0.8, 0.5, 1.4, -0.6, 50),
            alpha3_abs2: 18.48448073396371,
            energy: -9.093838899190722,
            modes: [0.9801091668726897, 1.946150072112876],
        },
    ]
}

#[test]
fn spectra_match_symbolic_hessian() {
    for f in frozen_spectra() {
        let mf = meanfield::solve(&f.p).unwrap();
        assert_eq!(mf.phase, Phase::Superradiant);
        assert!((mf.alpha3_abs2 - f.alpha3_abs2).abs() < 1e-9, "{}", mf.alpha3_abs2);
        assert!((mf.energy_per_atom * f.p.n() - f.energy).abs() < 1e-9);
        let s = bogoliubov::spectrum(&f.p).unwrap();
        assert_eq!(s.goldstone_count, 1);
        assert!(s.modes[0].abs() < 1e-12);
        for (m, r) in s.modes[1..].iter().zip(f.modes) {
            assert!((m - r).abs() < 1e-9, "{:?} vs {:?}", s.modes, f.modes);
        }
    }
}

#[test]
fn ed_matches_product_space_diagonalization() {
    let cases = [
        (params(1.5, 0.7, 0.4, 0.0, 1), (12, 12), -0.8188694137808342),
        (params(1.5, 1.2, 0.9, 0.2, 4), (9, 9), -3.6831443361187377),
        (params(0.8, 1.5, 0.3, -0.3, 3), (10, 8), -2.1341111520110485),
    ];
    for (p, (c1, c2), reference) in cases {
        let b = BasisSpec::new(c1, c2, p.n_atoms());
        let scan = ed::sector_scan(&p, &b, &b.sector_range().collect::<Vec<_>>()).unwrap();
        let (_, e) = scan.minimum().unwrap();
        assert!((e - reference).abs() < 1e-10, "{e} vs {reference}");
    }
}

/// Mixed second partial derivative by centered differences, Richardson-extrapolated.
fn mixed_partial(f: &dyn Fn(&[f64; 6]) -> f64, x: &[f64; 6], i: usize, j: usize, h: f64) -> f64 {
    let d = |h: f64| {
        let at = |si: f64, sj: f64| {
            let mut y = *x;
            y[i] += si * h;
            y[j] += sj * h;
            f(&y)
        };
        (at(1.0, 1.0) - at(1.0, -1.0) - at(-1.0, 1.0) + at(-1.0, -1.0)) / (4.0 * h * h)
    };
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

/// The fluctuation blocks are the Wirtinger Hessian of the mean-field functional:
/// `A_ij = d^2 E / d a_i* d a_j`, `B_ij = d^2 E / d a_i* d a_j*`.
#[test]
fn fluctuation_blocks_are_hessian_of_functional() {
    let cases = [
        params(1.5, 1.6, 0.7, 0.8, 20),
        params(0.8, 0.5, 1.4, -0.6, 20),
        params(1.5, 0.6, 0.4, 0.3, 20),
        params(1.2, 1.9, 0.2, 0.0, 20),
    ];
    for p in cases {
        for theta in [0.0, 0.7] {
            let mf = meanfield::solve(&p).unwrap().with_gauge(theta);
            let m = build_matrices(&p, &mf).unwrap();
            let a = [mf.alpha1, mf.alpha2, mf.alpha3()];
            let x0 = [a[0].re, a[1].re, a[2].re, a[0].im, a[1].im, a[2].im];
            let f = |x: &[f64; 6]| {
                energy_functional(
                    &p,
                    Complex64::new(x[0], x[3]),
                    Complex64::new(x[1], x[4]),
                    Complex64::new(x[2], x[5]),
                )
                .unwrap()
            };
            let h = 1e-3;
            for i in 0..3 {
                for j in 0..3 {
                    let xx = mixed_partial(&f, &x0, i, j, h);
                    let yy = mixed_partial(&f, &x0, i + 3, j + 3, h);
                    let yx = mixed_partial(&f, &x0, i + 3, j, h);
                    let xy = mixed_partial(&f, &x0, i, j + 3, h);
                    let a_ij = Complex64::new(xx + yy, yx - xy) * 0.25;
                    let b_ij = Complex64::new(xx - yy, yx + xy) * 0.25;
                    assert!((a_ij - m.a[(i, j)]).norm() < 1e-7, "A[{i}{j}] {a_ij} vs {}", m.a[(i, j)]);
                    assert!((b_ij - m.b[(i, j)]).norm() < 1e-7, "B[{i}{j}] {b_ij} vs {}", m.b[(i, j)]);
                }
            }
        }
    }
}

fn golden_minimum(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    while hi - lo > 1e-12 * hi.max(1.0) {
        let a = hi - r * (hi - lo);
        let b = lo + r * (hi - lo);
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn condensate_minimizes_effective_energy() {
    for (wz, g1, g2, un) in [(1.5, 1.6, 0.7, 0.8), (0.8, 0.5, 1.4, -0.6), (1.0, 2.0, 2.0, 1.5), (2.0, 1.8, 0.1, -1.2)] {
        let p = params(wz, g1, g2, un, 64);
        let mf = meanfield::solve(&p).unwrap();
        let n = golden_minimum(|n| meanfield::effective_energy(&p, n).unwrap(), 0.0, p.n() * (1.0 - 1e-9));
        assert!((mf.alpha3_abs2 - n).abs() < 1e-5 * p.n(), "{} vs {n}", mf.alpha3_abs2);
        let e = meanfield::effective_energy(&p, n).unwrap() / p.n();
        assert!(mf.energy_per_atom <= e + 1e-13);
        assert!((mf.energy_per_atom - e).abs() < 1e-11);
        // Photons eliminated at their optimum reproduce the effective energy.
        let full = energy_functional(&p, mf.alpha1, mf.alpha2, mf.alpha3()).unwrap() / p.n();
        assert!((full - mf.energy_per_atom).abs() < 1e-13);
    }
}

#[test]
fn normal_cubic_matches_dynamical_matrix_invariants() {
    for (wz, g1, g2, un) in [(1.5, 0.3, 0.8, 0.0), (0.8, 0.5, 0.2, -0.6), (1.0, 0.1, 0.6, 0.9), (2.0, 0.9, 1.0, 0.0)] {
        let p = params(wz, g1, g2, un, 30);
        let mf = meanfield::solve(&p).unwrap();
        assert_eq!(mf.phase, Phase::Normal);
        let m = build_matrices(&p, &mf).unwrap();
        let numeric = m.characteristic_coefficients();
        let closed = bogoliubov::normal_charpoly(&p);
        for (x, y) in numeric.iter().zip(closed) {
            assert!((x - y).abs() < 1e-12 * (1.0 + y.abs()), "{numeric:?} vs {closed:?}");
        }
        let s = spectrum_matrix(&m).unwrap();
        let zp = bogoliubov::zero_point_energy(&m, &s);
        assert!(zp <= 0.0);
    }
}

/// Normal phase at weak coupling: ED approaches the vacuum energy plus the
/// Gaussian zero-point shift, with residual O(1/N^2) per atom.
#[test]
fn ed_zero_point_correction_scales_as_inverse_square() {
    let mut residuals = Vec::new();
    for n in [8u32, 16, 32] {
        let base = params(1.5, 0.0, 0.0, 0.0, n);
        let p = base.with_polar(0.4 * base.critical_coupling(), 0.6).unwrap();
        let mf = meanfield::solve(&p).unwrap();
        let m = build_matrices(&p, &mf).unwrap();
        let zp = bogoliubov::zero_point_energy(&m, &spectrum_matrix(&m).unwrap());
        let r = ed::ground_state(&p, &BasisSpec::from_mean_field(&p).unwrap()).unwrap();
        assert!(r.converged);
        residuals.push(r.ground_energy - (-0.75 * p.n() + zp));
    }
    // Total-energy residual ~ 1/N: halves with each doubling of N.
    for w in residuals.windows(2) {
        let ratio = w[0] / w[1];
        assert!((1.6..2.4).contains(&ratio), "{residuals:?}");
    }
}
