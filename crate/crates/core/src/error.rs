use thiserror::Error;

/// Errors raised anywhere in the pipeline. Locations are stored as `f64`
/// so the type does not depend on the scalar in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("domain error in {op} at (u, v) = ({u}, {v})")]
    Domain { op: &'static str, u: f64, v: f64 },
    #[error("degenerate metric at (u, v) = ({u}, {v}): EG - F^2 = {det:e}")]
    DegenerateMetric { u: f64, v: f64, det: f64 },
    #[error("minimal point at (u, v) = ({u}, {v}): |H| = {norm:e}")]
    MinimalPoint { u: f64, v: f64, norm: f64 },
    #[error("parametrization is not principal at (u, v) = ({u}, {v}): residual {residual:e}")]
    NonPrincipal { u: f64, v: f64, residual: f64 },
    #[error("degenerate denominator at (u, v) = ({u}, {v}): {value:e}")]
    DegenerateDenominator { u: f64, v: f64, value: f64 },
    #[error("point (u, v) = ({u}, {v}) lies outside the integration domain")]
    IntegrationDomain { u: f64, v: f64 },
    #[error("scale function {name} is not positive at {at}: {value:e}")]
    NonMonotone { name: &'static str, at: f64, value: f64 },
    #[error("v-spread of {name} is {spread:e}, above tolerance {tol:e}")]
    LineDependence { name: &'static str, spread: f64, tol: f64 },
    #[error("rotation pattern does not apply: {0}")]
    PatternNotApplicable(String),
    #[error("data is not of parallel normalized mean curvature type: {0}")]
    NotPnmcv(String),
    #[error("{name} is not positive at (u, v) = ({u}, {v}): {value:e}")]
    NonPositiveMetric { name: &'static str, u: f64, v: f64, value: f64 },
    #[error("marching solver failed at (u, v) = ({u}, {v}): {reason}")]
    NonConvergence { u: f64, v: f64, reason: String },
    #[error("compatibility residual {residual:e} exceeds tolerance {tol:e}")]
    CompatibilityGate { residual: f64, tol: f64 },
    #[error("integration blew up at (u, v) = ({u}, {v})")]
    BlowUp { u: f64, v: f64 },
    #[error("frame lost orthonormality at (u, v) = ({u}, {v}): drift {drift:e}")]
    OrthonormalityDrift { u: f64, v: f64, drift: f64 },
    #[error("point cloud is rank deficient (rank {rank})")]
    RankDeficient { rank: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownIdentifier { .. } => "unknown_identifier",
            Error::Domain { .. } => "domain",
            Error::DegenerateMetric { .. } => "degenerate_metric",
            Error::MinimalPoint { .. } => "minimal_point",
            Error::NonPrincipal { .. } => "non_principal",
            Error::DegenerateDenominator { .. } => "degenerate_denominator",
            Error::IntegrationDomain { .. } => "integration_domain",
            Error::NonMonotone { .. } => "non_monotone",
            Error::LineDependence { .. } => "line_dependence",
            Error::PatternNotApplicable(_) => "pattern_not_applicable",
            Error::NotPnmcv(_) => "not_pnmcv",
            Error::NonPositiveMetric { .. } => "non_positive_metric",
            Error::NonConvergence { .. } => "non_convergence",
            Error::CompatibilityGate { .. } => "compatibility_gate",
            Error::BlowUp { .. } => "blow_up",
            Error::OrthonormalityDrift { .. } => "orthonormality_drift",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
