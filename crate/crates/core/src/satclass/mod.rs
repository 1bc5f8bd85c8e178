//! Finite satisfaction classes: the staged extension construction over a
//! finite structure and exhaustive checkers for the axioms it must satisfy.

mod check;
mod closure;
mod extend;
mod predicate;

pub use check::{
    check_collection_instance, check_comp, check_ct_restr, check_extensionality, check_int,
    check_strreg, disintegrate, CollectionBound, Report, Violation,
};
pub use closure::{class_order, subformula_closure, ClassOrder, SimilarityClass};
pub use extend::{extend, extend_chain};
pub use predicate::{BasePredicate, SatPredicate};
