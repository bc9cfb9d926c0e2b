//! Numerical toolkit for the chiral Dicke model.
//!
//! `N` two-level atoms couple to two degenerate cavity modes, mode 1 through
//! co-rotating terms (`g1`) and mode 2 through counter-rotating terms (`g2`),
//! with an optional dispersive shift `U S^z (n1 + n2)`:
//!
//! ```text
//! H = wc (n1 + n2) + wz Sz + U Sz (n1 + n2)
//!   + g1/sqrt(N) (a1 S+ + a1† S-) + g2/sqrt(N) (a2 S- + a2† S+)
//! ```
//!
//! The crate is organized by solver:
//!
//! - [`params`]: the parameter set shared by every solver.
//! - [`meanfield`]: Holstein-Primakoff mean-field ground state and phase boundary.
//! - [`bogoliubov`]: Gaussian fluctuation spectrum, by a 6×6 dynamical matrix and
//!   by characteristic polynomials.
//! - [`criticality`]: gap-closing laws and log-log exponent fits.
//! - [`ed`]: finite-`N` exact diagonalization on the Dicke ladder.

pub mod bogoliubov;
pub mod criticality;
pub mod cubic;
pub mod ed;
mod error;
pub mod meanfield;
pub mod numdiff;
pub mod params;

pub use bogoliubov::{BogoliubovMatrices, Branch, FluctuationSpectrum};
pub use criticality::{CriticalFit, FitSide, FitWindow};
pub use ed::{BasisSpec, EdResult};
pub use error::{DickeError, Result};
pub use meanfield::{MeanFieldSolution, Phase, Stationarity};
pub use params::{CouplingPolar, ModelParams, ModelParamsBuilder};

pub use num_complex::Complex64;
