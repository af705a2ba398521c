use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("poset has no elements")]
    Empty,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("cover relation has a cycle through `{0}`")]
    CycleDetected(String),
    #[error("arity {arity} out of range 1..={max}")]
    ArityOutOfRange { arity: usize, max: usize },
    #[error("poset too large ({size} elements, limit {max})")]
    TooLarge { size: usize, max: usize },
    #[error("map table has {found} entries, domain has {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("cube image is not an order-embedding at ({x}, {y})")]
    NotAnEmbedding { x: String, y: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown algebra `{0}`")]
    UnknownName(String),
    #[error("chain size {0} out of range 2..=16")]
    ChainSizeOutOfRange(usize),
    #[error("operation table `{table}` is malformed: {reason}")]
    BadTable { table: &'static str, reason: String },
    #[error(
        "no residual z with compose({approx}, z) = {target}; the algebra violates its axiom 4"
    )]
    NoResidual { approx: usize, target: usize },
    #[error("target {target} is outside the solvable regime for approximation {approx}")]
    OutsideRegime { approx: usize, target: usize },
    #[error("level set too large for exhaustive subset enumeration ({size} > {max})")]
    DomainTooLarge { size: usize, max: usize },
    #[error("set aggregation undefined on {0:?}")]
    NoSupremum(Vec<usize>),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("part {step} is not monotone: ({low}, {high})")]
    NonMonotonePart {
        step: usize,
        low: String,
        high: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("step {step}: the active set did not shrink")]
    NoProgress { step: usize },
    #[error("more than {limit} steps")]
    IterationOverflow { limit: usize },
    #[error("approximation at `{element}` is not an upper bound of the map (axiom 2 defect)")]
    UpperBoundViolated { element: String },
    #[error("algebra fails axiom system {system}: {detail}")]
    AlgebraRejected { system: String, detail: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("monotone residual is not spanned by the leaf class: {table}")]
    NotRepresentable { table: String },
    #[error("`{x}` does not cover `{y}`")]
    NotCoverPair { y: String, x: String },
    #[error("the algebra's ⊙ is not a constant map")]
    NonConstantDot,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("unbound unary `{0}`")]
    UnboundUnary(String),
    #[error("assignment has {found} values, formula arity is {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unbound variable z{0}")]
    UnboundVariable(usize),
    #[error("level {level} out of range for q = {q}")]
    LevelOutOfRange { level: usize, q: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("table has {found} entries, expected {expected}")]
    TableShapeMismatch { expected: usize, found: usize },
    #[error("formula is not equivalent to its table at point {point:?}")]
    NotEquivalent { point: Vec<usize> },
    #[error("theta leaf cannot be evaluated without a domain element")]
    UnresolvedTheta,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("truth table length {0} is not 2^n for 1 <= n <= 16")]
    BadLength(usize),
    #[error("truth table character {0:?} is not 0 or 1")]
    BadChar(char),
    #[error("part {0} is not monotone")]
    NotMonotone(String),
}

/// Umbrella error for file-level operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Input(String),
}

impl Error {
    /// Whether this is a construction failure rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Decompose(
                DecomposeError::NoProgress { .. }
                    | DecomposeError::NonMonotonePart { .. }
                    | DecomposeError::IterationOverflow { .. }
                    | DecomposeError::UpperBoundViolated { .. }
                    | DecomposeError::NotRepresentable { .. }
                    | DecomposeError::Algebra(AlgebraError::NoResidual { .. })
            ) | Error::Formula(FormulaError::NotEquivalent { .. })
        )
    }
}
