use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures of the exact kernel and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("input is a pole of the Moebius transformation")]
    PoleAtInput,

    #[error("spine curve is a straight line; surfaces of revolution need an axis-of-revolution detector, which this crate does not provide")]
    LinearSpine,

    #[error("operation requires an exact isometry")]
    ExactnessRequired,

    #[error("Frenet frame is degenerate at every attempted parameter")]
    FrameDegenerate,

    #[error("envelope condition |c'|^2 - r'^2 vanishes identically")]
    DegenerateEnvelope,

    #[error("characteristic circle is degenerate at t = {0}")]
    DegenerateCircle(String),

    #[error("curve is not planar")]
    NotPlanar,

    #[error("degenerate conic: {0}")]
    DegenerateConic(String),

    #[error("not a Dupin cyclide configuration: {0}")]
    NotADupinConfiguration(String),

    #[error("invalid canonical parameters: {0}")]
    InvalidParams(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("inconsistent constraint: {0}")]
    InconsistentConstraint(String),

    #[error("symmetry precondition fails at derivative order {order}: {reason}")]
    SymmetryIncompatible { order: usize, reason: String },

    #[error("degenerate blend: {0}")]
    DegenerateBlend(String),

    #[error("parameter window contains a pole or frame degeneracy near t = {0}")]
    PoleInWindow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
