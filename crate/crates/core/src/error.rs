use thiserror::Error;

/// Errors raised by the transform, simulator and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadonError {
    #[error("image side must be at least 2, got {0}")]
    ImageTooSmall(usize),

    #[error("pixel buffer holds {got} values, expected {expected}")]
    PixelCount { expected: usize, got: usize },

    #[error("image must be square, got {width}x{height}")]
    NotSquare { width: usize, height: usize },

    #[error("{name} = {value} is out of range [0, {bound})")]
    IndexOutOfRange {
        name: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("size mismatch: {what} is built for n = {expected}, image has n = {got}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("angle {0} degrees is outside [0, 180)")]
    AngleOutOfRange(f64),

    #[error("vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("vector must hold at least {min} values, got {got}")]
    TooShort { min: usize, got: usize },

    #[error("correlation is undefined: both inputs are constant")]
    UndefinedCorrelation,

    #[error("exact sinogram has no angle matching {0} degrees")]
    MissingAngle(f64),
}

pub type Result<T, E = RadonError> = std::result::Result<T, E>;
