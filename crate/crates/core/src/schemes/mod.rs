//! Scheme instances as formula objects and a Hilbert-style proof checker.

mod generators;
mod proof;
mod verify;

pub use generators::{
    default_induction_var, gen_collection, gen_gr, gen_induction, gen_int, gen_loccoll,
    gen_locind, restrict_truth,
};
pub use proof::{Justification, ProofLine, ProofObject};
pub use verify::{
    reflect_check, verify_proof, ReflectReport, Verdict, LOGICAL_AXIOMS, ROBINSON_AXIOMS,
};
