use thiserror::Error;

/// Errors produced by the scattering and delay computations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the over-barrier domain or otherwise invalid.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quantity with no defined value for these inputs (e.g. the half
    /// width at a symmetric barrier where k1 = k2).
    #[error("undefined: {0}")]
    Undefined(String),

    /// Phase changed by more than pi/2 between finite-difference stencil
    /// points; the derivative cannot be trusted.
    #[error("phase wrap across stencil: {0}")]
    PhaseWrap(String),

    /// A consecutive phase jump of ~pi was seen while unwrapping; the branch
    /// is ambiguous and the caller must refine the grid.
    #[error("phase unwrap ambiguity at sample {index}: wrapped jump {jump:.6} rad")]
    WrapAmbiguity { index: usize, jump: f64 },

    /// Wave-packet construction failed (e.g. spectrum crosses V0).
    #[error("packet construction: {0}")]
    Construction(String),

    /// No interior peak of |psi|^2 found in the time window.
    #[error("no peak of |psi|^2 in the time window for the {0} field")]
    NoPeak(&'static str),

    /// Malformed input to the CLI or a config file.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Filesystem or serialization failure while emitting artifacts.
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
