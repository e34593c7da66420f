use thiserror::Error;

/// Errors produced by the simulator, the analytic model and the IO layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("wave packet too close to the grid boundary: centroid {centroid:e} m needs {needed:e} m of clearance")]
    PacketTooCloseToBoundary { centroid: f64, needed: f64 },

    #[error("wave packet under-resolved: sigma = {sigma:e} m but dx = {dx:e} m (need sigma >= 4 dx)")]
    UnderResolved { sigma: f64, dx: f64 },

    #[error("energy {energy:e} J is outside the sub-barrier branch (V0 = {v0:e} J)")]
    OutOfBranch { energy: f64, v0: f64 },

    #[error("kick q = {q:e} 1/m aliases on a grid with Nyquist limit {nyquist:e} 1/m")]
    Aliasing { q: f64, nyquist: f64 },

    #[error("kick duration {duration:e} s cannot be resolved with dt = {dt:e} s and {substeps} sub-kicks")]
    UnresolvedKick { duration: f64, dt: f64, substeps: usize },

    #[error("tridiagonal elimination broke down at row {row}")]
    SolverBreakdown { row: usize },

    #[error("wave number {k:e} 1/m outside the admissible range ({range})")]
    WaveNumberOutOfRange { k: f64, range: &'static str },

    #[error("coefficient evaluation within pole tolerance (k = {k:e}, k' = {k_prime:e}, q = {q:e})")]
    PoleProximity { k: f64, k_prime: f64, q: f64 },

    #[error("{quantity} not converged: residual {residual:e} >= tolerance {tolerance:e}")]
    NotConverged {
        quantity: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("fit rejected: {reason}")]
    FitRejected { reason: String },

    #[error("config line {line}: {reason}")]
    ConfigSyntax { line: usize, reason: String },

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("config key `{key}` has the wrong unit suffix (expected `{expected}`)")]
    UnitMismatch { key: String, expected: String },

    #[error("missing config key `{0}`")]
    MissingKey(String),

    #[error("config key `{key}`: cannot parse `{value}`")]
    BadValue { key: String, value: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for convergence failures (plateau, fit, quadrature, extrapolation).
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::NotConverged { .. } | Error::FitRejected { .. } | Error::PoleProximity { .. }
        )
    }

    /// True for errors caused by user-supplied configuration.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::PacketTooCloseToBoundary { .. }
                | Error::UnderResolved { .. }
                | Error::Aliasing { .. }
                | Error::UnresolvedKick { .. }
                | Error::ConfigSyntax { .. }
                | Error::UnknownKey(_)
                | Error::UnitMismatch { .. }
                | Error::MissingKey(_)
                | Error::BadValue { .. }
                | Error::OutOfBranch { .. }
                | Error::WaveNumberOutOfRange { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
