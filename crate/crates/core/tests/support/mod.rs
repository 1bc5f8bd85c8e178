//! Independent reference implementations the library is checked against.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::Rng;
use veritas::satclass::SatPredicate;
use veritas::structure::FiniteStructure;
use veritas::syntax::{Assignment, Formula, Term, Variable};

/// Value of a closed term over N, by structural recursion on the tree.
pub fn nat_value(t: &Term) -> BigUint {
    match t {
        Term::Zero => BigUint::from(0u32),
        Term::Var(v) => panic!("open term: {v}"),
        Term::Succ(s) => nat_value(s) + 1u32,
        Term::Add(a, b) => nat_value(a) + nat_value(b),
        Term::Mul(a, b) => nat_value(a) * nat_value(b),
    }
}

pub fn term_in(s: &FiniteStructure, t: &Term, env: &[(Variable, usize)]) -> usize {
    match t {
        Term::Zero => 0,
        Term::Var(v) => env
            .iter()
            .rev()
            .find(|(w, _)| w == v)
            .map(|(_, d)| *d)
            .unwrap_or_else(|| panic!("unbound {v}")),
        Term::Succ(a) => s.succ(term_in(s, a, env)),
        Term::Add(a, b) => s.add(term_in(s, a, env), term_in(s, b, env)),
        Term::Mul(a, b) => s.mul(term_in(s, a, env), term_in(s, b, env)),
    }
}

/// Tarski truth in a finite structure with an explicit variable stack;
/// `T(t)` goes through `truth`.
pub fn tarski(
    s: &FiniteStructure,
    f: &Formula,
    env: &mut Vec<(Variable, usize)>,
    truth: &dyn Fn(usize) -> bool,
) -> bool {
    match f {
        Formula::Eq(a, b) => term_in(s, a, env) == term_in(s, b, env),
        Formula::Truth(t) => truth(term_in(s, t, env)),
        Formula::Marked(_) => panic!("marker in {f}"),
        Formula::Not(a) => !tarski(s, a, env, truth),
        Formula::Or(a, b) => tarski(s, a, env, truth) || tarski(s, b, env, truth),
        Formula::And(a, b) => tarski(s, a, env, truth) && tarski(s, b, env, truth),
        Formula::Imp(a, b) => !tarski(s, a, env, truth) || tarski(s, b, env, truth),
        Formula::Exists(v, a) | Formula::Forall(v, a) => {
            let universal = matches!(f, Formula::Forall(..));
            for d in 0..s.size() {
                env.push((v.clone(), d));
                let value = tarski(s, a, env, truth);
                env.pop();
                if value != universal {
                    return !universal;
                }
            }
            universal
        }
    }
}

pub fn holds(s: &FiniteStructure, f: &Formula, alpha: &Assignment) -> bool {
    let mut env: Vec<(Variable, usize)> = alpha.iter().map(|(v, n)| (v.clone(), n as usize)).collect();
    tarski(s, f, &mut env, &|_| false)
}

/// Random tables; successor is `i ↦ i+1` below the top element.
pub fn random_structure(rng: &mut impl Rng, n: usize) -> FiniteStructure {
    let mut succ: Vec<usize> = (1..=n).collect();
    succ[n - 1] = rng.gen_range(0..n);
    let table = |rng: &mut _| -> Vec<usize> { (0..n * n).map(|_| Rng::gen_range(rng, 0..n)).collect() };
    let add = table(rng);
    let mul = table(rng);
    FiniteStructure::from_tables(n, succ, add, mul).expect("valid tables")
}

pub fn atom_template() -> Formula {
    Formula::eq(
        Term::Var(Variable::Placeholder(0)),
        Term::Var(Variable::Placeholder(1)),
    )
}

/// Direct-subformula closure plus the atomic template.
pub fn closure_of(formulas: &[Formula]) -> BTreeSet<Formula> {
    fn walk(f: &Formula, out: &mut BTreeSet<Formula>) {
        if !out.insert(f.clone()) {
            return;
        }
        match f {
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => walk(a, out),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            _ => {}
        }
    }
    let mut out = BTreeSet::new();
    for f in formulas {
        walk(f, &mut out);
    }
    out.insert(atom_template());
    out
}

/// Every `(φ, α)` with `φ` in the closure and `α` ranging over the domain on
/// `FV(φ)`.
pub fn all_cells(closure: &BTreeSet<Formula>, n: usize) -> Vec<(Formula, Assignment)> {
    let mut out = Vec::new();
    for f in closure {
        let vars: Vec<Variable> = f.free_vars().into_iter().collect();
        let total = n.pow(vars.len() as u32);
        for mut k in 0..total {
            let mut a = Assignment::new();
            for v in &vars {
                a.set(v.clone(), (k % n) as u64);
                k /= n;
            }
            out.push((f.clone(), a));
        }
    }
    out
}

/// A base predicate for `formulas` filled in by brute force from Tarski
/// truth.
pub fn brute_base(s: &FiniteStructure, formulas: &[Formula]) -> SatPredicate {
    let closure = closure_of(formulas);
    let mut sat = SatPredicate::new(closure.clone());
    for (f, a) in all_cells(&closure, s.size()) {
        if holds(s, &f, &a) {
            sat.insert(f, a).expect("in closure");
        }
    }
    sat
}

/// Cells on which two predicates disagree, over `closure`.
pub fn disagreements(
    a: &SatPredicate,
    b: &SatPredicate,
    closure: &BTreeSet<Formula>,
    n: usize,
) -> Vec<(Formula, Assignment)> {
    all_cells(closure, n)
        .into_iter()
        .filter(|(f, alpha)| a.holds(f, alpha) != b.holds(f, alpha))
        .collect()
}

pub fn depth(f: &Formula) -> usize {
    match f {
        Formula::Eq(..) | Formula::Truth(_) | Formula::Marked(_) => 0,
        Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => depth(a) + 1,
        Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => depth(a).max(depth(b)) + 1,
    }
}
