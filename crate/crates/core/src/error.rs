use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different signatures")]
    SignatureMismatch,

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// An argument lies outside the domain of the operation (zero element,
    /// degree bound of zero, out-of-range index).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("negative exponent at position {position}: `{name}` is not an invertible variable")]
    NegativeExponent { name: String, position: usize },

    #[error("negative exponent on non-invertible variable `{0}`")]
    NonInvertible(String),

    #[error("coefficient {0} is not representable in the coefficient field")]
    Unrepresentable(String),

    #[error("bracket matrix is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("bracket {{{left}, {right}}} = {entry} is not homogeneous linear")]
    NonlinearBracket { left: String, right: String, entry: String },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
