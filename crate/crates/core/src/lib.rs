//! Arithmetized syntax, structural templates, partial truth evaluation and
//! finite satisfaction classes for first-order arithmetic with a truth
//! predicate.

pub mod coding;
pub mod error;
pub mod gen;
pub mod satclass;
pub mod schemes;
pub mod selftest;
pub mod structural;
pub mod structure;
pub mod syntax;
pub mod truth;

pub use error::{Error, Result};
