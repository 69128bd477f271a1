use thiserror::Error;

/// Errors raised by the toolkit. Numeric payloads are widened to `f64`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {re}+{im}i is not inside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("parameter `{name}` = {value} out of range: {bound}")]
    ParameterRange {
        name: &'static str,
        value: f64,
        bound: String,
    },

    #[error("majorant rejected: {0}")]
    Majorant(#[from] MajorantError),

    #[error("harmonic decomposition requires g(0) = 0, got |g(0)| = {0}")]
    NonCanonical(f64),

    #[error("symbol is not an analytic self-map of the disk: {0}")]
    InadmissibleSymbol(String),

    #[error("angular mean did not converge with {nodes} nodes (last {last}, previous {previous})")]
    NonConvergence {
        nodes: usize,
        last: f64,
        previous: f64,
    },

    #[error("pair is degenerate: pseudo-hyperbolic distance {0} below 1e-14")]
    DegeneratePair(f64),

    #[error("Bloch seminorm is zero; the Lipschitz scan needs a nonconstant map")]
    ZeroSeminorm,

    #[error("{what} is infinite (heuristic verdict)")]
    Infinite { what: &'static str },

    #[error("bound not applicable: |z| = {abs_z} exceeds admissible radius {radius}")]
    NotApplicable { abs_z: f64, radius: f64 },

    #[error("invalid function descriptor: {0}")]
    Descriptor(String),
}

/// Reasons a candidate weight fails to be a majorant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MajorantError {
    #[error("omega(0) = {value}, expected 0")]
    NonzeroAtOrigin { value: f64 },

    #[error("not strictly increasing at t = {t}")]
    NotIncreasing { t: f64 },

    #[error("omega(t)/t increases at t = {t}")]
    RatioIncreasing { t: f64 },

    #[error("omega(t)/t is unbounded as t -> 0+ (last sampled ratio {last})")]
    UnboundedSlope { last: f64 },

    #[error("tabulation invalid: {0}")]
    BadTable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn range_err<T: crate::Real>(name: &'static str, value: T, bound: &str) -> Error {
    Error::ParameterRange {
        name,
        value: crate::scalar::to_f64(value),
        bound: bound.to_string(),
    }
}
