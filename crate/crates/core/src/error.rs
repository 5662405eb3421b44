use thiserror::Error;

/// Errors raised by the series, coefficient and oscillator routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    MismatchedDegree { left: usize, right: usize },

    #[error("series has a nonzero constant term; exp is only defined on the augmentation ideal")]
    NonZeroConstant,

    #[error("series constant term is not 1; log is only defined near the unit")]
    ConstantNotOne,

    #[error("letter {letter} is outside the alphabet of size {alphabet}")]
    LetterOutOfRange { letter: usize, alphabet: usize },

    #[error("product of exponentials needs at least one factor")]
    EmptyProduct,

    #[error("invalid word pattern: {0}")]
    InvalidPattern(String),

    #[error("F(x) diverges for |x| >= 2 (x = {x})")]
    Divergent { x: f64 },

    #[error("no real elliptic logarithm: trace {trace} is outside (-2, 2)")]
    NoEllipticLog { trace: f64 },

    #[error("exact trajectory exceeded {limit} bits at step {step}")]
    RationalOverflow { step: usize, limit: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
