//! Seeded random terms and formulae for property tests and the self-test.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::syntax::{Formula, Term, Variable};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape limits for random formulae.
#[derive(Clone, Debug)]
pub struct FormulaShape {
    pub max_depth: usize,
    /// Node budget for each side of an atom.
    pub term_size: usize,
    /// Names binders are drawn from.
    pub binders: Vec<Variable>,
    /// Free variables atoms may use besides the ones in scope.
    pub free: Vec<Variable>,
    /// Allow `T(t)` atoms.
    pub truth_atoms: bool,
}

impl FormulaShape {
    pub fn sentences(max_depth: usize, term_size: usize) -> Self {
        FormulaShape {
            max_depth,
            term_size,
            binders: ["x", "y", "z"].iter().map(|n| Variable::named(n)).collect(),
            free: Vec::new(),
            truth_atoms: false,
        }
    }

    pub fn with_free(mut self, free: &[&str]) -> Self {
        self.free = free.iter().map(|n| Variable::named(n)).collect();
        self
    }
}

/// A term with at most `size` nodes over `vars` (closed when `vars` is
/// empty).
pub fn random_term(rng: &mut impl Rng, vars: &[Variable], size: usize) -> Term {
    if size <= 1 || rng.gen_bool(0.3) {
        return if vars.is_empty() || rng.gen_bool(0.3) {
            Term::numeral(rng.gen_range(0..size.clamp(1, 3) as u64))
        } else {
            Term::Var(vars.choose(rng).expect("nonempty").clone())
        };
    }
    let op = if size == 2 { 0 } else { rng.gen_range(0..3) };
    if op == 0 {
        return Term::succ(random_term(rng, vars, size - 1));
    }
    let left = rng.gen_range(1..=size - 2);
    let l = random_term(rng, vars, left);
    let r = random_term(rng, vars, size - 1 - left);
    if op == 1 {
        Term::add(l, r)
    } else {
        Term::mul(l, r)
    }
}

/// A closed term with at most `size` nodes.
pub fn random_closed_term(rng: &mut impl Rng, size: usize) -> Term {
    random_term(rng, &[], size)
}

/// A closed term whose value is `value`, built from numerals, `S`, `+`, `×`.
pub fn term_with_value(rng: &mut impl Rng, value: u64, size: usize) -> Term {
    if size <= 2 || value > 64 {
        return Term::numeral(value);
    }
    match rng.gen_range(0..4) {
        0 if value > 0 => Term::succ(term_with_value(rng, value - 1, size - 1)),
        1 => {
            let a = rng.gen_range(0..=value);
            Term::add(
                term_with_value(rng, a, size / 2),
                term_with_value(rng, value - a, size / 2),
            )
        }
        2 if value > 0 => {
            let divisors: Vec<u64> = (1..=value).filter(|d| value.is_multiple_of(*d)).collect();
            let d = *divisors.choose(rng).expect("1 divides");
            Term::mul(
                term_with_value(rng, d, size / 2),
                term_with_value(rng, value / d, size / 2),
            )
        }
        2 => Term::mul(Term::Zero, random_closed_term(rng, size / 2)),
        _ => Term::numeral(value),
    }
}

/// A formula of depth at most `shape.max_depth`. Atoms only mention bound
/// variables in scope and `shape.free`, so with no free names this is a
/// sentence.
pub fn random_formula(rng: &mut impl Rng, shape: &FormulaShape) -> Formula {
    let mut scope = Vec::new();
    let depth = rng.gen_range(0..=shape.max_depth);
    build(rng, shape, depth, &mut scope)
}

fn build(rng: &mut impl Rng, shape: &FormulaShape, depth: usize, scope: &mut Vec<Variable>) -> Formula {
    if depth == 0 {
        let mut vars: Vec<Variable> = scope.clone();
        vars.extend(shape.free.iter().cloned());
        vars.sort();
        vars.dedup();
        if shape.truth_atoms && rng.gen_bool(0.25) {
            return Formula::Truth(random_term(rng, &vars, shape.term_size));
        }
        return Formula::eq(
            random_term(rng, &vars, shape.term_size),
            random_term(rng, &vars, shape.term_size),
        );
    }
    match rng.gen_range(0..6) {
        0 => Formula::not(build(rng, shape, depth - 1, scope)),
        k @ 1..=3 => {
            let (dl, dr) = if rng.gen_bool(0.5) {
                (depth - 1, rng.gen_range(0..depth))
            } else {
                (rng.gen_range(0..depth), depth - 1)
            };
            let a = build(rng, shape, dl, scope);
            let b = build(rng, shape, dr, scope);
            match k {
                1 => Formula::or(a, b),
                2 => Formula::and(a, b),
                _ => Formula::imp(a, b),
            }
        }
        k => {
            let v = shape.binders.choose(rng).expect("binder names").clone();
            scope.push(v.clone());
            let body = build(rng, shape, depth - 1, scope);
            scope.pop();
            if k == 4 {
                Formula::exists(v, body)
            } else {
                Formula::forall(v, body)
            }
        }
    }
}
