use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad classes of failure, used by the command line to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Validation,
    Precondition,
    Resource,
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    // groups
    #[error("group order must be at least 1")]
    ZeroOrder,
    #[error("element {index} out of range for group of order {order}")]
    ElementOutOfRange { index: u64, order: u32 },
    #[error("element {elem} has the wrong kind for this group ({expected} expected)")]
    ElementKind { elem: String, expected: &'static str },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("multiplication table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: u32, b: u32, c: u32 },
    #[error("set map domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("injectivity is undecidable by table scan on an infinite domain")]
    UndecidableInjectivity,
    #[error("set map is not invertible: {0}")]
    NotInvertible(String),

    // graphs
    #[error("vertex {vertex} out of range for graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("loop at vertex {0} is not allowed in a simplicial graph")]
    Loop(usize),
    #[error("vertex count mismatch: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("edge {{{0},{1}}} of the base graph is missing from the extended graph")]
    ExtensionMissingEdge(usize, usize),
    #[error("unsupported: non-injective simplicial map (vertices {0} and {1} share image {2})")]
    NonInjectiveSimplicialMap(usize, usize, usize),
    #[error("simplicial map sends edge {{{0},{1}}} to a non-edge")]
    EdgeNotPreserved(usize, usize),
    #[error("vertex map has length {got}, expected {expected}")]
    VertexMapLength { got: usize, expected: usize },

    // words
    #[error("identity syllable at position {0} is not allowed in a word")]
    IdentitySyllable(usize),
    #[error("words live in different contexts")]
    ContextMismatch,
    #[error("cannot parse word token {token:?}: {reason}")]
    WordSyntax { token: String, reason: String },

    // kernels and induced maps
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("family is not injective; the isometry check requires injective set maps")]
    NonInjectiveFamily,

    // complex and oracle
    #[error("operation requires finite vertex groups")]
    InfiniteGroup,
    #[error("cell complex would have {needed} vertices, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("exploration budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),

    // configuration
    #[error("{0}")]
    Config(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            Config(_) => ErrorClass::Config,
            Precondition(_) | NonInjectiveFamily | NonInjectiveSimplicialMap(..) | UndecidableInjectivity => {
                ErrorClass::Precondition
            }
            CapExceeded { .. } | BudgetExceeded(_) => ErrorClass::Resource,
            Internal(_) => ErrorClass::Internal,
            _ => ErrorClass::Validation,
        }
    }
}
