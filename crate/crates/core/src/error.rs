use thiserror::Error;

use crate::syntax::{Formula, Variable};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("unbound variable `{0}`")]
    Unbound(Variable),

    #[error("`{0}` is not a sentence")]
    NotSentence(Formula),

    #[error("truth atom or marker in `{0}`, expected an arithmetical formula")]
    NotArithmetical(Formula),

    #[error("uninterpreted marker atom in `{0}`")]
    Uninterpreted(Formula),

    #[error("not a code")]
    NotACode,

    #[error("value {value} outside the structure domain of size {size}")]
    OutOfDomain { value: u64, size: usize },

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("formula `{0}` is not in the closure")]
    NotInClosure(Formula),

    #[error("similarity classes form a cycle through `{0}`")]
    Cycle(Formula),

    #[error("incoherent base predicate: {0}")]
    IncoherentBase(String),

    #[error("conflict at `{formula}` under {assignment}: {reason}")]
    Conflict {
        formula: Formula,
        assignment: String,
        reason: String,
    },

    #[error("stages disagree at `{formula}` under {assignment}")]
    Unstable { formula: Formula, assignment: String },

    #[error("`{formula}` has more than {allowed} free variable(s)")]
    TooManyFree { formula: Formula, allowed: usize },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}
