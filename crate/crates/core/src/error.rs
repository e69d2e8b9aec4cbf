use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported base field: {0}")]
    UnsupportedBase(String),
    #[error("zero is not a unit")]
    ZeroElement,
    #[error("{0} is not a unit in the base field")]
    NotAUnit(i64),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands live over different fields")]
    MixedFields,
    #[error("square class {0:#b} is not valid over this field")]
    InvalidClass(u64),
    #[error("the base field has no tower variables")]
    BaseFieldHasNoVariables,
    #[error("field has no orderings")]
    NoOrderings,
    #[error("multiple count must be positive")]
    ZeroMultiple,
    #[error("search budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("no witness found: {0}")]
    WitnessNotFound(String),
    #[error("hypothesis not satisfied: {0}")]
    HypothesisViolated(String),
    #[error("check `{0}` ran no instances")]
    EmptySample(String),
    #[error("check `{check}` failed: {counterexample}")]
    CheckFailed { check: String, counterexample: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
