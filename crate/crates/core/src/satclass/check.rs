use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::structural::template;
use crate::structure::FiniteStructure;
use crate::syntax::{Assignment, Formula, Term, Variable};
use crate::truth::satisfies;

use super::extend::{compositional, variants};
use super::predicate::SatPredicate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Which clause or axiom fails, e.g. `comp/exists` or `ct/5`.
    pub clause: String,
    pub formula: Formula,
    pub assignment: Assignment,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: `{}` under {{{}}}: {}",
            self.clause, self.formula, self.assignment, self.detail
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// Number of cells or instances examined.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn flag(&mut self, clause: &str, formula: &Formula, assignment: &Assignment, detail: String) {
        self.violations.push(Violation {
            clause: clause.to_owned(),
            formula: formula.clone(),
            assignment: assignment.clone(),
            detail,
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return writeln!(f, "ok: {} checked, no violations", self.checked);
        }
        writeln!(
            f,
            "{} violation(s) in {} checked",
            self.violations.len(),
            self.checked
        )?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

fn clause_name(f: &Formula) -> &'static str {
    match f {
        Formula::Eq(..) => "atomic",
        Formula::Truth(_) | Formula::Marked(_) => "atom",
        Formula::Not(_) => "not",
        Formula::Or(..) => "or",
        Formula::And(..) => "and",
        Formula::Imp(..) => "implies",
        Formula::Exists(..) => "exists",
        Formula::Forall(..) => "forall",
    }
}

fn cells<'a>(
    sat: &'a SatPredicate,
    structure: &FiniteStructure,
) -> impl Iterator<Item = (&'a Formula, Assignment)> + 'a {
    let size = structure.size() as u64;
    sat.closure()
        .iter()
        .flat_map(move |f| Assignment::enumerate(&f.free_vars(), size).into_iter().map(move |a| (f, a)))
}

/// The compositional clauses for every closure formula under every
/// assignment of its free variables.
pub fn check_comp(sat: &SatPredicate, structure: &FiniteStructure) -> Report {
    let mut report = Report::default();
    for f in sat.closure() {
        if let Some(missing) = f.direct_subformulas().into_iter().find(|g| !sat.closure().contains(*g)) {
            report.flag(
                &format!("comp/{}", clause_name(f)),
                f,
                &Assignment::new(),
                format!("direct subformula `{missing}` is not in the closure"),
            );
        }
    }
    for (f, alpha) in cells(sat, structure) {
        report.checked += 1;
        let clause = format!("comp/{}", clause_name(f));
        match compositional(f, &alpha, sat, structure) {
            Ok(expected) => {
                let actual = sat.holds(f, &alpha);
                if expected != actual {
                    report.flag(
                        &clause,
                        f,
                        &alpha,
                        format!("S is {actual}, the clause requires {expected}"),
                    );
                }
            }
            Err(e) => report.flag(&clause, f, &alpha, e.to_string()),
        }
    }
    report
}

/// Template of `f` together with the structure values of its abstracted
/// subterms under `alpha`: the data `≈` compares for `f[α]`.
fn regularity_key(
    f: &Formula,
    alpha: &Assignment,
    structure: &FiniteStructure,
    cache: &mut BTreeMap<Formula, (Formula, Vec<Term>)>,
) -> Result<(Formula, Vec<usize>)> {
    if !cache.contains_key(f) {
        let d = template(f)?;
        cache.insert(f.clone(), (d.template, d.args));
    }
    let (tmpl, args) = &cache[f];
    let values = args
        .iter()
        .map(|t| structure.eval_term(t, alpha))
        .collect::<Result<Vec<_>>>()?;
    Ok((tmpl.clone(), values))
}

/// `S(φ,α) ⟺ S(ψ,β)` whenever `φ[α] ≈ ψ[β]` over the structure.
pub fn check_strreg(sat: &SatPredicate, structure: &FiniteStructure) -> Result<Report> {
    let mut report = Report::default();
    let mut cache = BTreeMap::new();
    let mut groups: BTreeMap<(Formula, Vec<usize>), (Formula, Assignment, bool)> = BTreeMap::new();
    for (f, alpha) in cells(sat, structure) {
        report.checked += 1;
        let key = regularity_key(f, &alpha, structure, &mut cache)?;
        let value = sat.holds(f, &alpha);
        match groups.get(&key) {
            None => {
                groups.insert(key, (f.clone(), alpha, value));
            }
            Some((g, beta, first)) if *first != value => {
                let detail = format!(
                    "S is {value}, but {first} at the equivalent `{g}` under {{{beta}}}"
                );
                report.flag("strreg", f, &alpha, detail);
            }
            Some(_) => {}
        }
    }
    Ok(report)
}

/// `S(φ,α) ⟺ S(φ[α],∅)` whenever `φ[α]` is in the closure.
pub fn check_extensionality(sat: &SatPredicate, structure: &FiniteStructure) -> Report {
    let mut report = Report::default();
    let empty = Assignment::new();
    for (f, alpha) in cells(sat, structure) {
        if alpha.is_empty() {
            continue;
        }
        let instance = f.substitute(&alpha);
        if !sat.closure().contains(&instance) {
            continue;
        }
        report.checked += 1;
        let open = sat.holds(f, &alpha);
        let closed = sat.holds(&instance, &empty);
        if open != closed {
            report.flag(
                "ext",
                f,
                &alpha,
                format!("S is {open}, but {closed} at the instance `{instance}`"),
            );
        }
    }
    report
}

/// Replaces the maximal closed subterms of a formula by placeholders, left to
/// right, keeping bound variables as they are.
fn closed_skeleton(f: &Formula, args: &mut Vec<Term>) -> Formula {
    match f {
        Formula::Eq(s, t) => {
            let s = abstract_closed(s, args);
            Formula::Eq(s, abstract_closed(t, args))
        }
        Formula::Truth(t) => Formula::Truth(abstract_closed(t, args)),
        Formula::Marked(_) => f.clone(),
        Formula::Not(a) => Formula::not(closed_skeleton(a, args)),
        Formula::Or(a, b) => {
            let a = closed_skeleton(a, args);
            Formula::or(a, closed_skeleton(b, args))
        }
        Formula::And(a, b) => {
            let a = closed_skeleton(a, args);
            Formula::and(a, closed_skeleton(b, args))
        }
        Formula::Imp(a, b) => {
            let a = closed_skeleton(a, args);
            Formula::imp(a, closed_skeleton(b, args))
        }
        Formula::Exists(v, a) => Formula::exists(v.clone(), closed_skeleton(a, args)),
        Formula::Forall(v, a) => Formula::forall(v.clone(), closed_skeleton(a, args)),
    }
}

fn abstract_closed(t: &Term, args: &mut Vec<Term>) -> Term {
    if t.is_closed() {
        args.push(t.clone());
        return Term::Var(Variable::Placeholder(args.len() as u32 - 1));
    }
    match t {
        Term::Succ(s) => Term::succ(abstract_closed(s, args)),
        Term::Add(s, u) => {
            let s = abstract_closed(s, args);
            Term::add(s, abstract_closed(u, args))
        }
        Term::Mul(s, u) => {
            let s = abstract_closed(s, args);
            Term::mul(s, abstract_closed(u, args))
        }
        Term::Zero | Term::Var(_) => t.clone(),
    }
}

/// The axioms of compositional truth restricted to depths `0..=c`, with
/// `T(φ) := S(φ, ∅)` on closure sentences.
///
/// Axiom 5 reads `T(φ[x̄/v])` off the instance when it is in the closure and
/// off `S(φ, {v ↦ x})` otherwise.
pub fn check_ct_restr(sat: &SatPredicate, structure: &FiniteStructure, c: usize) -> Result<Report> {
    let mut report = Report::default();
    let empty = Assignment::new();
    let t = |f: &Formula| sat.holds(f, &empty);

    for (f, a) in sat.entries() {
        if !a.is_empty() {
            continue;
        }
        report.checked += 1;
        if !f.is_sentence() {
            report.flag("ct/1", f, a, "T holds of a formula that is not a sentence".into());
        } else if f.depth() > c {
            report.flag("ct/1", f, a, format!("T holds of a sentence of depth {} > {c}", f.depth()));
        }
    }

    let sentences: Vec<&Formula> = sat.closure().iter().filter(|f| f.is_sentence()).collect();
    for &f in &sentences {
        let expected = match f {
            Formula::Eq(s, u) => {
                let s = structure.eval_term(s, &empty)?;
                Some(("ct/2", s == structure.eval_term(u, &empty)?))
            }
            _ if f.depth() > c => None,
            Formula::Not(a) => Some(("ct/3", !t(a))),
            Formula::Or(a, b) => Some(("ct/4", t(a) || t(b))),
            Formula::And(a, b) => Some(("ct/4", t(a) && t(b))),
            Formula::Imp(a, b) => Some(("ct/4", !t(a) || t(b))),
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                let mut instances = variants(&empty, v, structure).map(|beta| {
                    let instance = a.substitute(&beta);
                    if sat.closure().contains(&instance) {
                        t(&instance)
                    } else {
                        sat.holds(a, &beta)
                    }
                });
                if matches!(f, Formula::Exists(..)) {
                    Some(("ct/5", instances.any(|b| b)))
                } else {
                    Some(("ct/5", instances.all(|b| b)))
                }
            }
            Formula::Truth(_) | Formula::Marked(_) => None,
        };
        if let Some((clause, expected)) = expected {
            report.checked += 1;
            if t(f) != expected {
                report.flag(clause, f, &empty, format!("T is {}, the axiom requires {expected}", t(f)));
            }
        }
    }

    let mut groups: BTreeMap<(Formula, Vec<usize>), (&Formula, bool)> = BTreeMap::new();
    for &f in &sentences {
        let mut args = Vec::new();
        let skeleton = closed_skeleton(f, &mut args);
        let values = args
            .iter()
            .map(|a| structure.eval_term(a, &empty))
            .collect::<Result<Vec<_>>>()?;
        report.checked += 1;
        let value = t(f);
        match groups.get(&(skeleton.clone(), values.clone())) {
            None => {
                groups.insert((skeleton, values), (f, value));
            }
            Some((g, first)) if *first != value => {
                report.flag("ct/6", f, &empty, format!("T is {value}, but {first} at `{g}`"));
            }
            Some(_) => {}
        }
    }
    Ok(report)
}

/// `T(φ)` at domain element `x`: `S(φ, {v ↦ x})` for the free variable `v`.
fn one_place<'a>(
    sat: &'a SatPredicate,
    phi: &'a Formula,
) -> Result<impl Fn(usize) -> bool + 'a> {
    if !sat.closure().contains(phi) {
        return Err(Error::NotInClosure(phi.clone()));
    }
    let free = phi.free_vars();
    if free.len() > 1 {
        return Err(Error::TooManyFree {
            formula: phi.clone(),
            allowed: 1,
        });
    }
    let var = free.into_iter().next();
    Ok(move |x: usize| {
        let a = match &var {
            Some(v) => Assignment::new().with(v.clone(), x as u64),
            None => Assignment::new(),
        };
        sat.holds(phi, &a)
    })
}

/// The internal induction instance for `φ` (at most one free variable),
/// with `x+1` read as `x + S(0)` in the structure.
pub fn check_int(sat: &SatPredicate, structure: &FiniteStructure, phi: &Formula) -> Result<bool> {
    let holds = one_place(sat, phi)?;
    let one = structure.succ(0);
    let base = holds(0);
    let step = structure
        .domain()
        .all(|x| !holds(x) || holds(structure.add(x, one)));
    let conclusion = structure.domain().all(holds);
    Ok(!(base && step) || conclusion)
}

/// How the bound `y < b` of the collection conclusion is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CollectionBound {
    /// `y ≤ b`; the form that holds in every finite structure.
    #[default]
    Inclusive,
    /// `y < b`; fails whenever a needed witness is the top element.
    Strict,
}

/// The collection instance `∀x<a ∃y φ → ∃b ∀x<a ∃y<b φ` for every `a` in
/// the domain and every value of the remaining free variables of `φ`.
///
/// `<` is the domain order. `T(t)` in `φ` holds when the value of `t`
/// indexes a closure sentence that `S` makes true (see
/// [`SatPredicate::indexed_sentences`]).
pub fn check_collection_instance(
    sat: &SatPredicate,
    structure: &FiniteStructure,
    phi: &Formula,
    x: &Variable,
    y: &Variable,
    bound: CollectionBound,
) -> Result<bool> {
    let truth = sat.truth_of_index();
    let mut params: BTreeSet<Variable> = phi.free_vars();
    params.remove(x);
    params.remove(y);
    let n = structure.size();
    for p in Assignment::enumerate(&params, n as u64) {
        // relation[x][y]
        let mut relation = vec![vec![false; n]; n];
        for (i, row) in relation.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let env = p.clone().with(x.clone(), i as u64).with(y.clone(), j as u64);
                *cell = satisfies(phi, structure, &env, &truth)?;
            }
        }
        for a in 0..n {
            let premise = (0..a).all(|i| relation[i].iter().any(|&r| r));
            let conclusion = (0..n).any(|b| {
                (0..a).all(|i| {
                    relation[i].iter().enumerate().any(|(j, &r)| {
                        r && match bound {
                            CollectionBound::Inclusive => j <= b,
                            CollectionBound::Strict => j < b,
                        }
                    })
                })
            });
            if premise && !conclusion {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `{α ∈ Val(φ) : S(φ, α)}`.
pub fn disintegrate(sat: &SatPredicate, phi: &Formula) -> Result<BTreeSet<Assignment>> {
    if !sat.closure().contains(phi) {
        return Err(Error::NotInClosure(phi.clone()));
    }
    Ok(sat.true_set(phi))
}
