use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid arena: {0}")]
    InvalidArena(String),
    #[error("not a subarena: vertices {0:?} have no successor inside the set")]
    NotASubarena(Vec<usize>),
    #[error("request tracker needs an even maximal color, got {0}")]
    OddMaxColor(u32),
    #[error("restart gadget needs an odd maximal color, got {0}")]
    EvenMaxColor(u32),
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("strategy space too large: {0} candidates")]
    SpaceTooLarge(String),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no bound found up to cap {0}")]
    CapExceeded(usize),
    #[error("dead-end configuration {0}")]
    DeadEndConfiguration(String),
    #[error("unfolding is empty")]
    EmptyUnfolding,
    #[error("nondeterministic configuration {0}")]
    Nondeterministic(String),
    #[error("no cycle within {0} steps")]
    NoCycleWithinBudget(usize),
    #[error("value does not fit in {0} bits")]
    Overflow(u32),
    #[error("unknown example {0}")]
    UnknownExample(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
