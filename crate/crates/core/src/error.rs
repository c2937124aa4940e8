use thiserror::Error;

/// Errors raised while building or transforming graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("graph has {0} vertices, over the canonical-form limit of {1}")]
    TooLarge(usize, usize),
}

/// Errors raised by the edge-list / JSON readers.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Schema(String),
}

/// Errors raised when a preimage witness is malformed (as opposed to merely wrong).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("map has {0} entries but the candidate has {1} edges")]
    DomainSize(usize, usize),
    #[error("map has {0} entries but the target has {1} vertices")]
    CodomainSize(usize, usize),
    #[error("({0}, {1}) is not an edge of the candidate")]
    NotAnEdge(usize, usize),
    #[error("edge ({0}, {1}) is mapped twice")]
    EdgeMappedTwice(usize, usize),
    #[error("target vertex {0} is hit twice")]
    NotInjective(usize),
    #[error("target vertex {0} does not exist")]
    UnknownTarget(usize),
    #[error("witness does not certify its target")]
    Invalid,
    #[error("vertex subset is not triangle-induced")]
    NotTriangleInduced,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors raised by the gadget constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("{kind} requires k >= {min}, got {k}")]
    SizeOutOfRange { kind: &'static str, k: usize, min: usize },
    #[error("missing role `{0}`")]
    MissingRole(String),
    #[error("role `{0}` is malformed: {1}")]
    MalformedRole(String, String),
    #[error("expected a {expected}, found {found}")]
    WrongKind { expected: String, found: String },
    #[error("appendix data `{0}` failed its integrity check")]
    Integrity(String),
    #[error("appendix data `{name}`: {msg}")]
    Data { name: String, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors raised by the preimage solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("target has {0} vertices, over the search limit of {1}")]
    TargetTooLarge(usize, usize),
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("triangle {0:?} is not covered by any registered sub-gadget")]
    UnregisteredTriangle([usize; 3]),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

/// Errors raised by the 3-SAT reduction.
#[derive(Debug, Error)]
pub enum SatError {
    #[error("line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("clause {clause} has {size} literals, expected 3")]
    ClauseSize { clause: usize, size: usize },
    #[error("clause {clause} repeats variable x{var}")]
    RepeatedVariable { clause: usize, var: usize },
    #[error("literal mentions x{var} but the formula has {count} variables")]
    VariableOutOfRange { var: usize, count: usize },
    #[error("assignment has {0} values, formula has {1} variables")]
    AssignmentLength(usize, usize),
    #[error("assignment does not satisfy clause {0}")]
    Unsatisfied(usize),
    #[error("formula has {0} variables, over the guard of {1}")]
    TooManyVariables(usize, usize),
    #[error("no verified preimage glues under assignment {0}")]
    NotRealizable(String),
    #[error("witness restricted to {0} matches neither template")]
    CorruptedWitness(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}
