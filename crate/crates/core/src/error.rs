use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Variant names are part of the CLI contract: `latskel` prints
/// [`Error::name`] on failure, so renaming a variant is a breaking change.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a lattice needs at least one element")]
    EmptyLattice,
    #[error("element {element} is out of range 0..{n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("the cover relation contains a cycle through element {0}")]
    CycleDetected(usize),
    #[error("elements {a} and {b} have no {which}")]
    NotALattice {
        a: usize,
        b: usize,
        which: &'static str,
    },
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("{what} would have {size} elements, cap is {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("relation is not a tolerance: {0}")]
    NotATolerance(String),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("maximal clique {0:?} of the tolerance is not an interval")]
    BlockNotInterval(Vec<usize>),
    #[error("maximal chains from {from} to {to} carry different weight sums {sums:?}")]
    ChainDependentWeight {
        from: usize,
        to: usize,
        sums: Vec<u64>,
    },
    #[error("block {0} is the least block")]
    IsZeta0(usize),
    #[error("block {block} would contain {count} join-irreducibles")]
    NegativeJCount { block: usize, count: i64 },
    #[error("inconsistent counts: {0}")]
    InconsistentCounts(String),
    #[error("weighted double skeleton violates `{axiom}`: {detail}")]
    InvalidWds { axiom: &'static str, detail: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Stable identifier used for exit diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyLattice => "EmptyLattice",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::CycleDetected(_) => "CycleDetected",
            Error::NotALattice { .. } => "NotALattice",
            Error::NotAPartialOrder(_) => "NotAPartialOrder",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotATolerance(_) => "NotATolerance",
            Error::NotComparable(..) => "NotComparable",
            Error::BlockNotInterval(_) => "BlockNotInterval",
            Error::ChainDependentWeight { .. } => "ChainDependentWeight",
            Error::IsZeta0(_) => "IsZeta0",
            Error::NegativeJCount { .. } => "NegativeJCount",
            Error::InconsistentCounts(_) => "InconsistentCounts",
            Error::InvalidWds { .. } => "InvalidWds",
            Error::UnknownSuite(_) => "UnknownSuite",
            Error::Internal(_) => "Internal",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
