use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A named mathematical rule that justifies a negative answer.
///
/// The kebab-case names are part of the CLI contract (`REFUSED <rule>`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Some vertex degree is not a multiple of `k`.
    DegreeDivisibility,
    /// A graph without isolated vertices has fewer than `2k` vertices.
    OrderBound,
    /// A regular graph whose order is not a multiple of `k`.
    RegularOrder,
    /// A regular graph whose size is not a multiple of `k^2`.
    RegularSize,
    /// Complete multipartite graph with a part size not divisible by `k`.
    PartSizeDivisibility,
    /// Union count `n` outside the admissible residue class.
    UnionCongruence,
    /// Glue set in a cycle that is not an ideal dependent set.
    NotIdeal,
    /// The hypotheses of a sufficient condition are not met; nothing is
    /// claimed about colorability.
    Hypothesis,
    /// A construction produced a coloring that failed the balance check.
    VerificationFailed,
    /// A coloring was checked and is not neighborhood-balanced.
    Unbalanced,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::DegreeDivisibility => "degree-divisibility",
            Rule::OrderBound => "order-bound",
            Rule::RegularOrder => "regular-order",
            Rule::RegularSize => "regular-size",
            Rule::PartSizeDivisibility => "part-size-divisibility",
            Rule::UnionCongruence => "union-congruence",
            Rule::NotIdeal => "not-ideal",
            Rule::Hypothesis => "hypothesis",
            Rule::VerificationFailed => "verification-failed",
            Rule::Unbalanced => "unbalanced",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A reasoned refusal to produce a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refusal {
    pub rule: Rule,
    pub reasons: Vec<String>,
}

impl Refusal {
    pub fn new(rule: Rule, reason: impl Into<String>) -> Self {
        Refusal { rule, reasons: vec![reason.into()] }
    }

    pub fn with_reasons(rule: Rule, reasons: Vec<String>) -> Self {
        Refusal { rule, reasons }
    }
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rule)?;
        if !self.reasons.is_empty() {
            write!(f, ": {}", self.reasons.join("; "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("coloring covers {got} vertices but the graph has {expected}")]
    ColoringLength { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color}, outside 1..={k}")]
    ColorOutOfRange { vertex: usize, color: usize, k: usize },
    #[error("color count must be at least 2, got {0}")]
    InvalidColorCount(usize),
    #[error("color counts differ: {0} vs {1}")]
    ColorCountMismatch(usize, usize),
    #[error("{p} does not divide {k}")]
    NotDivisor { p: usize, k: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("coloring is not neighborhood-balanced")]
    NotBalanced,
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("refused ({0})")]
    Refused(Refusal),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<Refusal> for Error {
    fn from(r: Refusal) -> Self {
        Error::Refused(r)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
