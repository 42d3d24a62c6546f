use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid cyclotomic order {0}")]
    InvalidOrder(u32),
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{what} has size {size}, above the cap {cap}")]
    ResourceCap { what: String, size: u128, cap: u128 },
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("objects have different types")]
    TypeMismatch,
    #[error("parameters differ between operands")]
    ParameterMismatch,
    #[error("{k} does not divide {ell}")]
    NotDivisor { k: u32, ell: u32 },
    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported label: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn cap(what: &str, size: u128, cap: usize) -> Self {
        Error::ResourceCap {
            what: what.into(),
            size,
            cap: cap as u128,
        }
    }
}
