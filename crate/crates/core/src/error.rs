use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),
    #[error("operation is not associative: ({a}·{b})·{c} != {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("Cayley table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NotInvertible(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("character is not constant on conjugacy class {class}")]
    NotClassConstant { class: usize },
    #[error("decomposition failed after {attempts} attempts: {reason}")]
    DecompositionFailed { attempts: usize, reason: String },
    #[error("isotype index {index} out of range (have {count})")]
    InvalidIndex { index: usize, count: usize },
    #[error("the dual of isotype {0} does not occur in this representation")]
    DualNotPresent(usize),
    #[error("isotype {0} is trivial")]
    TrivialIsotype(usize),
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("state is not an optimal input (residual {residual:e}, cyclic dim {cyclic_dim}, expected {expected})")]
    NotOptimalInput { residual: f64, cyclic_dim: usize, expected: usize },
    #[error(
        "isotype {isotype} has multiplicity {multiplicity} < dimension {dim}; closed-form confusion requires m >= d"
    )]
    HypothesisViolated { isotype: usize, multiplicity: usize, dim: usize },
    #[error("value {0} is not an integer within tolerance")]
    NotInteger(f64),
}
