//! Model parameters and coupling-plane coordinates.
//!
//! Energies are accepted in arbitrary units. Every formula in the crate is
//! homogeneous of degree one in the energies, so helpers such as
//! [`ModelParams::energy_scale`] are used to express numerical tolerances in
//! units of `omega_c` rather than rescaling the inputs.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{DickeError, Result};

/// The five couplings of the chiral Dicke Hamiltonian plus the atom number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    omega_c: f64,
    omega_z: f64,
    g1: f64,
    g2: f64,
    u: f64,
    n_atoms: u32,
}

/// Polar form `(g, phi)` of the coupling pair, `g1 = g cos(phi)`, `g2 = g sin(phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingPolar {
    pub g: f64,
    pub phi: f64,
}

impl CouplingPolar {
    /// Converts Cartesian couplings. `g1 = g2 = 0` maps to `phi = 0`.
    pub fn from_cartesian(g1: f64, g2: f64) -> Result<Self> {
        check_nonneg("g1", g1)?;
        check_nonneg("g2", g2)?;
        let g = g1.hypot(g2);
        let phi = if g == 0.0 { 0.0 } else { g2.atan2(g1) };
        Ok(Self { g, phi })
    }

    pub fn to_cartesian(self) -> (f64, f64) {
        let (s, c) = self.phi.sin_cos();
        // Pin the endpoints so that the Tavis-Cummings and anti-Tavis-Cummings
        // limits have an exactly vanishing partner coupling.
        if self.phi == 0.0 {
            (self.g, 0.0)
        } else if self.phi == FRAC_PI_2 {
            (0.0, self.g)
        } else {
            (self.g * c, self.g * s)
        }
    }
}

pub fn to_polar(g1: f64, g2: f64) -> Result<CouplingPolar> {
    CouplingPolar::from_cartesian(g1, g2)
}

pub fn from_polar(c: CouplingPolar) -> (f64, f64) {
    c.to_cartesian()
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(DickeError::InvalidParameter {
            name,
            reason: format!("must be finite and > 0, got {v}"),
        })
    }
}

fn check_nonneg(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(DickeError::InvalidParameter {
            name,
            reason: format!("must be finite and >= 0, got {v}"),
        })
    }
}

impl ModelParams {
    pub fn new(omega_c: f64, omega_z: f64, g1: f64, g2: f64, u: f64, n_atoms: u32) -> Result<Self> {
        check_positive("omega_c", omega_c)?;
        check_positive("omega_z", omega_z)?;
        check_nonneg("g1", g1)?;
        check_nonneg("g2", g2)?;
        if !u.is_finite() {
            return Err(DickeError::InvalidParameter {
                name: "U",
                reason: format!("must be finite, got {u}"),
            });
        }
        if n_atoms == 0 {
            return Err(DickeError::InvalidParameter {
                name: "N",
                reason: "atom number must be >= 1".into(),
            });
        }
        let un = u * f64::from(n_atoms);
        let lhs = 4.0 * omega_c * omega_c;
        let rhs = un * un;
        if !(lhs > rhs) {
            return Err(DickeError::Unbounded { lhs, rhs });
        }
        Ok(Self {
            omega_c,
            omega_z,
            g1,
            g2,
            u,
            n_atoms,
        })
    }

    pub fn builder() -> ModelParamsBuilder {
        ModelParamsBuilder::default()
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }
    pub fn omega_z(&self) -> f64 {
        self.omega_z
    }
    pub fn g1(&self) -> f64 {
        self.g1
    }
    pub fn g2(&self) -> f64 {
        self.g2
    }
    pub fn u(&self) -> f64 {
        self.u
    }
    pub fn n_atoms(&self) -> u32 {
        self.n_atoms
    }
    /// Atom number as the real thermodynamic scale used by mean-field formulas.
    pub fn n(&self) -> f64 {
        f64::from(self.n_atoms)
    }
    pub fn un(&self) -> f64 {
        self.u * self.n()
    }
    /// `g1^2 + g2^2`.
    pub fn g_squared(&self) -> f64 {
        self.g1 * self.g1 + self.g2 * self.g2
    }
    pub fn polar(&self) -> CouplingPolar {
        CouplingPolar::from_cartesian(self.g1, self.g2).expect("validated at construction")
    }

    /// Cavity frequency renormalized by the dispersive shift, `wc - U N / 2`.
    pub fn omega_c_tilde(&self) -> f64 {
        self.omega_c - 0.5 * self.un()
    }

    /// Critical radius `sqrt(wz * wc_tilde)` in the `(g1, g2)` plane.
    pub fn critical_coupling(&self) -> f64 {
        (self.omega_z * self.omega_c_tilde()).sqrt()
    }

    /// Effective coupling `wz * wc_tilde / (g1^2 + g2^2)`; infinite without coupling.
    pub fn mu_tilde(&self) -> f64 {
        let g2 = self.g_squared();
        if g2 == 0.0 {
            f64::INFINITY
        } else {
            self.omega_z * self.omega_c_tilde() / g2
        }
    }

    /// Unit in which absolute numerical tolerances are expressed.
    pub fn energy_scale(&self) -> f64 {
        self.omega_c
    }

    pub fn with_couplings(&self, g1: f64, g2: f64) -> Result<Self> {
        Self::new(self.omega_c, self.omega_z, g1, g2, self.u, self.n_atoms)
    }

    pub fn with_polar(&self, g: f64, phi: f64) -> Result<Self> {
        check_nonneg("g", g)?;
        if !(0.0..=FRAC_PI_2).contains(&phi) {
            return Err(DickeError::InvalidParameter {
                name: "phi",
                reason: format!("must lie in [0, pi/2], got {phi}"),
            });
        }
        let (g1, g2) = CouplingPolar { g, phi }.to_cartesian();
        self.with_couplings(g1, g2)
    }

    pub fn with_omega_z(&self, omega_z: f64) -> Result<Self> {
        Self::new(self.omega_c, omega_z, self.g1, self.g2, self.u, self.n_atoms)
    }

    pub fn with_omega_c(&self, omega_c: f64) -> Result<Self> {
        Self::new(omega_c, self.omega_z, self.g1, self.g2, self.u, self.n_atoms)
    }

    pub fn with_u(&self, u: f64) -> Result<Self> {
        Self::new(self.omega_c, self.omega_z, self.g1, self.g2, u, self.n_atoms)
    }

    /// Sets the dispersive coupling through the product `U N`.
    pub fn with_un(&self, un: f64) -> Result<Self> {
        self.with_u(un / self.n())
    }

    /// Changes the atom number at fixed `U N`.
    pub fn with_atoms(&self, n_atoms: u32) -> Result<Self> {
        if n_atoms == 0 {
            return Err(DickeError::InvalidParameter {
                name: "N",
                reason: "atom number must be >= 1".into(),
            });
        }
        let un = self.un();
        Self::new(
            self.omega_c,
            self.omega_z,
            self.g1,
            self.g2,
            un / f64::from(n_atoms),
            n_atoms,
        )
    }
}

/// Builder accepting either Cartesian or polar couplings and either `U` or `U N`.
///
/// When both `u` and `un` are given, `un` wins. Defaults: `omega_c = 1`,
/// no coupling, `U = 0`, `N = 1`.
#[derive(Debug, Clone, Default)]
pub struct ModelParamsBuilder {
    omega_c: Option<f64>,
    omega_z: Option<f64>,
    g1: Option<f64>,
    g2: Option<f64>,
    polar: Option<CouplingPolar>,
    u: Option<f64>,
    un: Option<f64>,
    n_atoms: Option<u32>,
}

impl ModelParamsBuilder {
    pub fn omega_c(mut self, v: f64) -> Self {
        self.omega_c = Some(v);
        self
    }
    pub fn omega_z(mut self, v: f64) -> Self {
        self.omega_z = Some(v);
        self
    }
    pub fn g1(mut self, v: f64) -> Self {
        self.g1 = Some(v);
        self
    }
    pub fn g2(mut self, v: f64) -> Self {
        self.g2 = Some(v);
        self
    }
    pub fn polar(mut self, g: f64, phi: f64) -> Self {
        self.polar = Some(CouplingPolar { g, phi });
        self
    }
    pub fn u(mut self, v: f64) -> Self {
        self.u = Some(v);
        self
    }
    pub fn un(mut self, v: f64) -> Self {
        self.un = Some(v);
        self
    }
    pub fn atoms(mut self, n: u32) -> Self {
        self.n_atoms = Some(n);
        self
    }

    pub fn build(self) -> Result<ModelParams> {
        let omega_c = self.omega_c.unwrap_or(1.0);
        let omega_z = self.omega_z.ok_or(DickeError::InvalidParameter {
            name: "omega_z",
            reason: "required".into(),
        })?;
        let n_atoms = self.n_atoms.unwrap_or(1);
        let (g1, g2) = match self.polar {
            Some(c) => {
                if self.g1.is_some() || self.g2.is_some() {
                    return Err(DickeError::InvalidParameter {
                        name: "g",
                        reason: "give either (g1, g2) or (g, phi), not both".into(),
                    });
                }
                check_nonneg("g", c.g)?;
                if !(0.0..=FRAC_PI_2).contains(&c.phi) {
                    return Err(DickeError::InvalidParameter {
                        name: "phi",
                        reason: format!("must lie in [0, pi/2], got {}", c.phi),
                    });
                }
                c.to_cartesian()
            }
            None => (self.g1.unwrap_or(0.0), self.g2.unwrap_or(0.0)),
        };
        let u = match (self.un, self.u) {
            (Some(un), _) => un / f64::from(n_atoms.max(1)),
            (None, Some(u)) => u,
            (None, None) => 0.0,
        };
        ModelParams::new(omega_c, omega_z, g1, g2, u, n_atoms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn base(un: f64) -> ModelParams {
        ModelParams::builder().omega_z(1.5).un(un).atoms(100).build().unwrap()
    }

    #[test]
    fn omega_c_tilde_examples() {
        assert_eq!(base(0.0).omega_c_tilde(), 1.0);
        assert!((base(1.0).omega_c_tilde() - 0.5).abs() < 1e-15);
        assert!((base(-1.0).omega_c_tilde() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn polar_examples() {
        let c = to_polar(2.0, 0.0).unwrap();
        assert_eq!((c.g, c.phi), (2.0, 0.0));
        let c = to_polar(0.0, 2.0).unwrap();
        assert_eq!(c.g, 2.0);
        assert!((c.phi - FRAC_PI_2).abs() < 1e-15);
        let c = to_polar(3.0, 4.0).unwrap();
        assert!((c.g - 5.0).abs() < 1e-15);
        assert!((c.phi - (4.0f64 / 3.0).atan()).abs() < 1e-15);
        let c = to_polar(0.0, 0.0).unwrap();
        assert_eq!((c.g, c.phi), (0.0, 0.0));
        assert_eq!(from_polar(CouplingPolar { g: 2.0, phi: FRAC_PI_2 }), (0.0, 2.0));
    }

    #[test]
    fn rejects_invalid() {
        assert!(matches!(
            ModelParams::new(1.0, 1.0, 0.0, 0.0, 0.02, 100),
            Err(DickeError::Unbounded { .. })
        ));
        // |UN| = 2 wc sits exactly on the boundary and is rejected.
        assert!(ModelParams::new(1.0, 1.0, 0.0, 0.0, -0.02, 100).is_err());
        assert!(ModelParams::new(0.0, 1.0, 0.0, 0.0, 0.0, 1).is_err());
        assert!(ModelParams::new(1.0, -1.0, 0.0, 0.0, 0.0, 1).is_err());
        assert!(ModelParams::new(1.0, 1.0, -0.1, 0.0, 0.0, 1).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0.0, 0.0, 0.0, 0).is_err());
        assert!(ModelParams::new(1.0, 1.0, f64::NAN, 0.0, 0.0, 1).is_err());
        assert!(base(0.0).with_polar(1.0, PI).is_err());
    }

    #[test]
    fn un_takes_precedence_over_u() {
        let p = ModelParams::builder().omega_z(1.5).u(0.3).un(1.0).atoms(10).build().unwrap();
        assert!((p.u() - 0.1).abs() < 1e-16);
        assert!((p.un() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn critical_coupling_and_mu() {
        let p = base(0.0).with_polar(1.0, FRAC_PI_4).unwrap();
        assert!((p.critical_coupling() - 1.5f64.sqrt()).abs() < 1e-15);
        assert!((p.mu_tilde() - 1.5).abs() < 1e-14);
        assert!((base(1.0).critical_coupling() - 0.75f64.sqrt()).abs() < 1e-15);
        assert_eq!(base(0.0).mu_tilde(), f64::INFINITY);
    }

    #[test]
    fn with_atoms_preserves_un() {
        let p = base(1.0).with_atoms(7).unwrap();
        assert!((p.un() - 1.0).abs() < 1e-15);
        assert_eq!(p.n_atoms(), 7);
    }

    proptest::proptest! {
        #[test]
        fn polar_round_trip(g1 in 0.0f64..10.0, g2 in 0.0f64..10.0) {
            let c = to_polar(g1, g2).unwrap();
            proptest::prop_assert!((0.0..=FRAC_PI_2).contains(&c.phi));
            let (h1, h2) = from_polar(c);
            let scale = g1.hypot(g2).max(f64::MIN_POSITIVE);
            proptest::prop_assert!((h1 - g1).abs() <= 1e-14 * scale);
            proptest::prop_assert!((h2 - g2).abs() <= 1e-14 * scale);
        }
    }
}
