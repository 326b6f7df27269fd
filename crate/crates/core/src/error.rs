use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quadratic field mismatch: m = {left} vs m = {right}")]
    ContextMismatch { left: i64, right: i64 },
    #[error("m = {0} is not a negative square-free integer congruent to 1 mod 4")]
    InvalidFieldParameter(i64),
    #[error("W3 = {0} >= 0: the quadratic subfield is real")]
    RealSubfield(i64),
    #[error("W3 = {0} is not square-free")]
    NotSquarefree(i64),
    #[error("f(x) is reducible for (a, b) = ({a}, {b})")]
    Reducible { a: i64, b: i64 },
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("monogenity undecided: {0}")]
    IndeterminateMonogenity(String),
    #[error("lattice basis is linearly dependent")]
    DegenerateLattice,
    #[error("conjugates too close for case i0 = {i0}: distance {distance}")]
    RootsTooClose { i0: usize, distance: String },
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("reduction stalled for case i0 = {i0} at bound {bound}")]
    ReductionStalled { i0: usize, bound: String },
    #[error("element does not generate the octic field")]
    NotAGenerator,
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
