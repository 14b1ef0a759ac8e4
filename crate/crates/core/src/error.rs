use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("precision loss: {0}")]
    PrecisionLoss(String),

    #[error("insufficient precision: need at least {required} digits, context has {available}")]
    InsufficientPrecision { required: u32, available: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("modulus is reducible: {0}")]
    ReducibleModulus(String),

    #[error("incompatible field tower: {0}")]
    IncompatibleTower(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("multiplication table is not associative at basis triple ({0}, {1}, {2})")]
    Associativity(usize, usize, usize),

    #[error("identity coordinates do not act as a two-sided identity on basis element {0}")]
    Identity(usize),

    #[error("algebras are defined over different base fields")]
    MixedBaseFields,

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
