use std::fmt;

use thiserror::Error;

/// A sample point `value` that belongs to bar `label` (1-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub value: f64,
    pub label: usize,
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (bar {})", self.value, self.label)
    }
}

/// Which precondition of the convergence bound check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precondition {
    /// One of the barcodes is not k-strict.
    Strictness,
    /// The barcodes have different numbers of bars.
    BarCount,
    /// The power-k invariants differ.
    InvariantEquality,
    /// No bar of the first barcode contains all the others.
    ContainingBar,
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Precondition::Strictness => "strictness",
            Precondition::BarCount => "bar count",
            Precondition::InvariantEquality => "invariant equality",
            Precondition::ContainingBar => "containing bar",
        };
        f.write_str(s)
    }
}

fn list_preconditions(items: &[Precondition]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid bar ({birth}, {death}): birth must be finite and strictly less than death")]
    InvalidBar { birth: f64, death: f64 },

    #[error("a barcode needs at least one bar")]
    EmptyBarcode,

    #[error("barcode is not strict: sample points {first} and {second} coincide")]
    NotStrict {
        first: SamplePoint,
        second: SamplePoint,
    },

    #[error("barcode is not {k}-strict: sample points {first} and {second} coincide")]
    NotKStrict {
        k: u32,
        first: SamplePoint,
        second: SamplePoint,
    },

    #[error("invalid bar label pair ({i}, {j}) for a barcode with {n} bars")]
    InvalidLabel { i: usize, j: usize, n: usize },

    #[error("scale factor must be positive and finite, got {0}")]
    InvalidScale(f64),

    #[error("invalid multipermutation: {0}")]
    InvalidWord(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("word {0} is not canonical (first occurrences out of order)")]
    NotCanonical(String),

    #[error("lattice with {positions} positions exceeds the cap of {cap}")]
    TooLarge { positions: usize, cap: usize },

    #[error("word {0} is not an element of the lattice")]
    NotAnElement(String),

    #[error("lattice invariant violated: {0}")]
    LatticeInvariant(String),

    #[error("Wasserstein exponent must be finite and at least 1, got {0}")]
    InvalidQ(f64),

    #[error("degenerate bar with zero length")]
    DegenerateBar,

    #[error("precondition failed: {}", list_preconditions(.0))]
    PreconditionFailed(Vec<Precondition>),

    #[error("no invariant-preserving perturbation found after {0} attempts")]
    RetriesExhausted(usize),

    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
