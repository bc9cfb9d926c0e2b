//! Real roots of monic cubics `x^3 + a2 x^2 + a1 x + a0`.
//!
//! Three-real-root cases use the trigonometric form; the single-real-root case
//! uses Cardano. Every real root is polished by Newton iteration. Near-double
//! roots are snapped to the critical point of the cubic when the residual there
//! is at rounding level, since the coefficients cannot resolve a smaller split.

use std::f64::consts::PI;

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CubicRoots {
    /// Ascending.
    ThreeReal([f64; 3]),
    /// The real root and one member of the complex-conjugate pair.
    OneReal(f64, Complex64),
}

impl CubicRoots {
    pub fn real(&self) -> Option<[f64; 3]> {
        match *self {
            CubicRoots::ThreeReal(r) => Some(r),
            CubicRoots::OneReal(..) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    /// Absolute uncertainties of `(a2, a1, a0)` from how they were computed.
    pub uncertainty: [f64; 3],
}

impl Cubic {
    pub fn new(a2: f64, a1: f64, a0: f64) -> Self {
        Self {
            a2,
            a1,
            a0,
            uncertainty: [0.0; 3],
        }
    }

    /// Coefficients that lost precision to cancellation can only resolve
    /// near-double roots down to their uncertainty.
    pub fn with_uncertainty(self, uncertainty: [f64; 3]) -> Self {
        Self { uncertainty, ..self }
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((x + self.a2) * x + self.a1) * x + self.a0
    }

    fn deriv(&self, x: f64) -> f64 {
        (3.0 * x + 2.0 * self.a2) * x + self.a1
    }

    /// Forward-error bound for Horner evaluation at `x`, plus the propagated
    /// coefficient uncertainty.
    fn eval_error(&self, x: f64) -> f64 {
        let ax = x.abs();
        let [d2, d1, d0] = self.uncertainty;
        8.0 * f64::EPSILON * (((ax + self.a2.abs()) * ax + self.a1.abs()) * ax + self.a0.abs())
            + (d2 * ax + d1) * ax
            + d0
    }

    fn polish(&self, mut x: f64) -> f64 {
        for _ in 0..4 {
            let d = self.deriv(x);
            if d == 0.0 {
                break;
            }
            let step = self.eval(x) / d;
            let next = x - step;
            if !next.is_finite() || self.eval(next).abs() >= self.eval(x).abs() {
                break;
            }
            x = next;
        }
        x
    }

    /// Critical points of the cubic, if real.
    fn critical_points(&self) -> Option<[f64; 2]> {
        // 3x^2 + 2 a2 x + a1 = 0
        let (a, b, c) = (3.0, 2.0 * self.a2, self.a1);
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return None;
        }
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        if q == 0.0 {
            return Some([0.0, 0.0]);
        }
        Some([q / a, c / q])
    }

    pub fn roots(&self) -> CubicRoots {
        if let Some(crit) = self.critical_points() {
            for xc in crit {
                if self.eval(xc).abs() <= self.eval_error(xc) {
                    let other = self.polish(-self.a2 - 2.0 * xc);
                    let mut r = [xc, xc, other];
                    r.sort_by(f64::total_cmp);
                    return CubicRoots::ThreeReal(r);
                }
            }
        }

        let shift = self.a2 / 3.0;
        let p = self.a1 - self.a2 * shift;
        let q = 2.0 * shift * shift * shift - shift * self.a1 + self.a0;
        let disc = 4.0 * p * p * p + 27.0 * q * q;

        if p < 0.0 && disc <= 0.0 {
            let m = 2.0 * (-p / 3.0).sqrt();
            let arg = ((3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            let mut r = [0.0; 3];
            for (k, root) in r.iter_mut().enumerate() {
                let t = m * (theta - 2.0 * PI * k as f64 / 3.0).cos();
                *root = self.polish(t - shift);
            }
            r.sort_by(f64::total_cmp);
            return CubicRoots::ThreeReal(r);
        }

        // One real root: t = u + v with u^3, v^3 the roots of z^2 + q z - p^3/27.
        let sqrt_d = (q * q / 4.0 + p * p * p / 27.0).max(0.0).sqrt();
        let big = -0.5 * q - q.signum() * sqrt_d;
        let u = big.cbrt();
        let v = if u == 0.0 { 0.0 } else { -p / (3.0 * u) };
        let real = self.polish(u + v - shift);
        // Deflate: x^3 + a2 x^2 + a1 x + a0 = (x - real)(x^2 + b x + c).
        let b = self.a2 + real;
        let c = if real != 0.0 {
            -self.a0 / real
        } else {
            self.a1 + b * real
        };
        let im2 = c - 0.25 * b * b;
        if im2 <= 0.0 {
            // Rounding placed a near-double real pair on the wrong side.
            let s = (-im2).sqrt();
            let mut r = [real, self.polish(-0.5 * b - s), self.polish(-0.5 * b + s)];
            r.sort_by(f64::total_cmp);
            return CubicRoots::ThreeReal(r);
        }
        CubicRoots::OneReal(real, Complex64::new(-0.5 * b, im2.sqrt()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(r: [f64; 3]) -> Cubic {
        Cubic::new(
            -(r[0] + r[1] + r[2]),
            r[0] * r[1] + r[1] * r[2] + r[0] * r[2],
            -(r[0] * r[1] * r[2]),
        )
    }

    #[test]
    fn distinct_roots() {
        let r = from_roots([1.0, 2.0, 3.0]).roots().real().unwrap();
        for (a, b) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn tiny_root_keeps_relative_accuracy() {
        let r = from_roots([1e-9, 1.5, 4.0]).roots().real().unwrap();
        assert!((r[0] - 1e-9).abs() < 1e-22);
        assert!((r[2] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn zero_root() {
        let r = Cubic::new(-3.0, 2.0, 0.0).roots().real().unwrap();
        assert_eq!(r[0], 0.0);
        assert!((r[1] - 1.0).abs() < 1e-14 && (r[2] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn double_root_resolved_to_full_precision() {
        let a = 0.2f64.sqrt();
        let r = from_roots([a, a, 2.25]).roots().real().unwrap();
        assert!((r[0] - a).abs() < 1e-14 && (r[1] - a).abs() < 1e-14, "{r:?}");
        assert!((r[2] - 2.25).abs() < 1e-14);
        let r = from_roots([3.0, 0.7, 3.0]).roots().real().unwrap();
        assert!((r[1] - 3.0).abs() < 1e-13 && (r[2] - 3.0).abs() < 1e-13, "{r:?}");
    }

    #[test]
    fn complex_pair() {
        // (x - 2)(x^2 + 1)
        match Cubic::new(-2.0, 1.0, -2.0).roots() {
            CubicRoots::OneReal(x, z) => {
                assert!((x - 2.0).abs() < 1e-14);
                assert!(z.re.abs() < 1e-14 && (z.im.abs() - 1.0).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn uncertain_coefficients_snap_split_double_root() {
        // (x - 1e-5)^2 (x - 2) with a1 perturbed at the 1e-15 level.
        let c = from_roots([1e-5, 1e-5, 2.0]);
        let c = Cubic::new(c.a2, c.a1 + 3e-15, c.a0);
        assert!(matches!(c.roots(), CubicRoots::OneReal(..)) || c.roots().real().unwrap()[0] != c.roots().real().unwrap()[1]);
        let r = c.with_uncertainty([0.0, 1e-14, 0.0]).roots().real().unwrap();
        assert_eq!(r[0], r[1]);
        assert!((r[0] - 1e-5).abs() < 1e-13 && (r[2] - 2.0).abs() < 1e-14, "{r:?}");
    }

    proptest::proptest! {
        #[test]
        fn recovers_well_separated_roots(
            a in -5.0f64..5.0, d1 in 0.05f64..3.0, d2 in 0.05f64..3.0
        ) {
            let roots = [a, a + d1, a + d1 + d2];
            let r = from_roots(roots).roots().real().unwrap();
            for (x, y) in r.iter().zip(roots) {
                proptest::prop_assert!((x - y).abs() < 1e-11 * (1.0 + y.abs()), "{:?} vs {:?}", r, roots);
            }
        }
    }
}
