use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two operands live over different coefficient rings.
    SpecMismatch,
    /// Two operands live over different Lie algebras.
    AlgebraMismatch,
    /// A ring description violates its own invariants.
    InvalidRing(String),
    /// A negative power of a polynomial (non-invertible) variable.
    IllegalMonomial(String),
    /// A ring homomorphism that does not send units to units.
    InvalidHom(String),
    InvalidLieAlgebra(String),
    /// The operation needs a distinguished loop variable `t`.
    MissingLoopVariable,
    /// The requested configuration is outside what the operation supports.
    Unsupported(String),
    /// Sugawara construction at `K = -h^∨`.
    CriticalLevel,
    /// Sugawara construction without a known dual Coxeter number.
    MissingDualCoxeter,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SpecMismatch => write!(f, "operands live over different rings"),
            Error::AlgebraMismatch => write!(f, "operands live over different Lie algebras"),
            Error::InvalidRing(msg) => write!(f, "invalid ring: {msg}"),
            Error::IllegalMonomial(msg) => write!(f, "illegal monomial: {msg}"),
            Error::InvalidHom(msg) => write!(f, "invalid ring homomorphism: {msg}"),
            Error::InvalidLieAlgebra(msg) => write!(f, "invalid Lie algebra: {msg}"),
            Error::MissingLoopVariable => write!(f, "ring has no distinguished loop variable t"),
            Error::Unsupported(msg) => write!(f, "unsupported configuration: {msg}"),
            Error::CriticalLevel => write!(f, "critical level K = -h^vee: Sugawara vector undefined"),
            Error::MissingDualCoxeter => write!(f, "Lie algebra has no dual Coxeter number"),
        }
    }
}

impl core::error::Error for Error {}
