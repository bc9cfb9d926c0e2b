use thiserror::Error;

pub type Result<T, E = DickeError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DickeError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// `4 wc^2 > U^2 N^2` is required for the mean-field energy to be bounded.
    #[error("unbounded energy: 4 wc^2 = {lhs} must exceed (U N)^2 = {rhs}")]
    Unbounded { lhs: f64, rhs: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular denominator: {0}")]
    Singular(String),

    #[error("eigenvalues do not pair into ±ε within {window:e}: {eigenvalues:?}")]
    Pairing {
        window: f64,
        eigenvalues: Vec<(f64, f64)>,
    },

    #[error(
        "spectral routes disagree by {deviation:e}: matrix {matrix:?} vs characteristic polynomial {charpoly:?}"
    )]
    RouteDisagreement {
        matrix: [f64; 3],
        charpoly: [f64; 3],
        deviation: f64,
    },

    #[error("stationarity check failed: |dE/dn| = {gradient:e} at |alpha3|^2 = {alpha3_abs2}")]
    NotStationary { gradient: f64, alpha3_abs2: f64 },

    #[error(
        "linear slope diverges at cos(2 phi) = -wc/wz (|wc + cos(2 phi) wz| = {gap:e}); use the square-root prefactor"
    )]
    SingularSlope { gap: f64 },

    #[error("no branch degeneracy: requires wz >= wc_tilde (wz = {omega_z}, wc_tilde = {omega_c_tilde})")]
    NoDegeneracy { omega_z: f64, omega_c_tilde: f64 },

    #[error("fit window invalid: {0}")]
    FitWindow(String),

    #[error("no vanishing branch in the fit window: {0}")]
    NoVanishingBranch(String),

    #[error("Hilbert-space dimension {dim} exceeds budget {budget}")]
    Resource { dim: usize, budget: usize },
}
