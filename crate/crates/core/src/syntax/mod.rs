//! Abstract syntax of first-order arithmetic over `0, S, +, ×` extended with a
//! unary truth atom `T(t)`.
//!
//! Terms and formulae are plain immutable trees. Everything else in the crate
//! (coding, templates, evaluation, satisfaction classes, proofs) works on these
//! types.

mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

pub use parse::{parse_formula, parse_term, parse_variable};

/// A first-order variable.
///
/// Only `Named` variables can be written by users (`[a-z][a-z0-9_]*`). The two
/// reserved families are produced by template extraction: `Placeholder(i)`
/// prints as `$vi`, `Bound(i)` as `$wi`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Variable {
    Named(String),
    Placeholder(u32),
    Bound(u32),
}

impl Variable {
    /// Builds a user variable, checking the identifier syntax.
    pub fn new(name: &str) -> Result<Self> {
        if is_identifier(name) {
            Ok(Variable::Named(name.to_owned()))
        } else {
            Err(Error::Parse {
                pos: 0,
                message: format!("`{name}` is not a variable name"),
            })
        }
    }

    /// Shorthand for tests and generators; panics on a malformed name.
    pub fn named(name: &str) -> Self {
        Self::new(name).expect("valid variable name")
    }

    pub fn is_reserved(&self) -> bool {
        !matches!(self, Variable::Named(_))
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Zero,
    Var(Variable),
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Variable::named(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn succ(t: Term) -> Self {
        Term::Succ(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(s: Term, t: Term) -> Self {
        Term::Add(Box::new(s), Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(s: Term, t: Term) -> Self {
        Term::Mul(Box::new(s), Box::new(t))
    }

    /// The unary numeral `S(…S(0)…)` with `n` successors.
    pub fn numeral(n: u64) -> Self {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    /// If this term is a numeral, the number it spells.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Variable>) {
        match self {
            Term::Zero => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Add(s, t) | Term::Mul(s, t) => {
                s.collect_vars(out);
                t.collect_vars(out);
            }
        }
    }

    pub fn contains_var(&self, v: &Variable) -> bool {
        match self {
            Term::Zero => false,
            Term::Var(w) => w == v,
            Term::Succ(t) => t.contains_var(v),
            Term::Add(s, t) | Term::Mul(s, t) => s.contains_var(v) || t.contains_var(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Var(_) => false,
            Term::Succ(t) => t.is_closed(),
            Term::Add(s, t) | Term::Mul(s, t) => s.is_closed() && t.is_closed(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::Var(_) => 1,
            Term::Succ(t) => 1 + t.size(),
            Term::Add(s, t) | Term::Mul(s, t) => 1 + s.size() + t.size(),
        }
    }

    /// Replaces every occurrence of `v` by `by`.
    pub fn replace(&self, v: &Variable, by: &Term) -> Term {
        self.map_vars(&mut |w| (w == v).then(|| by.clone()))
    }

    /// Rebuilds the term, replacing each variable for which `f` answers `Some`.
    pub fn map_vars(&self, f: &mut impl FnMut(&Variable) -> Option<Term>) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Var(v) => f(v).unwrap_or_else(|| self.clone()),
            Term::Succ(t) => Term::succ(t.map_vars(f)),
            Term::Add(s, t) => Term::add(s.map_vars(f), t.map_vars(f)),
            Term::Mul(s, t) => Term::mul(s.map_vars(f), t.map_vars(f)),
        }
    }

    /// Value over the standard model under `assignment`.
    pub fn value(&self, assignment: &Assignment) -> Result<BigUint> {
        match self {
            Term::Zero => Ok(BigUint::zero()),
            Term::Var(v) => assignment
                .get(v)
                .map(BigUint::from)
                .ok_or_else(|| Error::Unbound(v.clone())),
            Term::Succ(_) => {
                // numerals are long S-chains; walk them without recursion
                let mut n = 0u64;
                let mut t = self;
                while let Term::Succ(inner) = t {
                    n += 1;
                    t = inner;
                }
                Ok(t.value(assignment)? + BigUint::from(n))
            }
            Term::Add(s, t) => Ok(s.value(assignment)? + t.value(assignment)?),
            Term::Mul(s, t) => Ok(s.value(assignment)? * t.value(assignment)?),
        }
    }

    /// Value of a closed term over the standard model.
    pub fn closed_value(&self) -> Result<BigUint> {
        self.value(&Assignment::new())
    }
}

/// Uninterpreted atoms used only inside generated scheme instances
/// (`dpt(t) ≤ c`, `Sent(t)`, `Pr_PA(t)`, and the coded instance `z = ⌜φ(ẋ)⌝`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Marker {
    /// `@dpt(t, c)`: the formula coded by `t` has depth at most `c`.
    Depth(Term, Term),
    /// `@sent(t)`
    Sent(Term),
    /// `@pr(t)`
    Provable(Term),
    /// `@sub(z, x){φ}`: `z` codes `φ` with the numeral of `x` put in for its
    /// free variable. `φ` is quoted, its variables are not in scope.
    Subst {
        code: Term,
        arg: Term,
        formula: Box<Formula>,
    },
}

impl Marker {
    fn terms(&self) -> Vec<&Term> {
        match self {
            Marker::Depth(s, t) => vec![s, t],
            Marker::Sent(t) | Marker::Provable(t) => vec![t],
            Marker::Subst { code, arg, .. } => vec![code, arg],
        }
    }

    fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Marker {
        match self {
            Marker::Depth(s, t) => Marker::Depth(f(s), f(t)),
            Marker::Sent(t) => Marker::Sent(f(t)),
            Marker::Provable(t) => Marker::Provable(f(t)),
            Marker::Subst { code, arg, formula } => Marker::Subst {
                code: f(code),
                arg: f(arg),
                formula: formula.clone(),
            },
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Eq(Term, Term),
    Truth(Term),
    Marked(Marker),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Exists(Variable, Box<Formula>),
    Forall(Variable, Box<Formula>),
}

impl Formula {
    pub fn eq(s: Term, t: Term) -> Self {
        Formula::Eq(s, t)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Variable, body: Formula) -> Self {
        Formula::Exists(v, Box::new(body))
    }

    pub fn forall(v: Variable, body: Formula) -> Self {
        Formula::Forall(v, Box::new(body))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Eq(..) | Formula::Truth(_) | Formula::Marked(_))
    }

    /// No truth atom and no marker occurs.
    pub fn is_arithmetical(&self) -> bool {
        match self {
            Formula::Eq(..) => true,
            Formula::Truth(_) | Formula::Marked(_) => false,
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => a.is_arithmetical(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.is_arithmetical() && b.is_arithmetical()
            }
        }
    }

    pub fn has_markers(&self) -> bool {
        match self {
            Formula::Marked(_) => true,
            Formula::Eq(..) | Formula::Truth(_) => false,
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => a.has_markers(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.has_markers() || b.has_markers()
            }
        }
    }

    pub fn ensure_arithmetical(&self) -> Result<()> {
        if self.is_arithmetical() {
            Ok(())
        } else {
            Err(Error::NotArithmetical(self.clone()))
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a Variable>, out: &mut BTreeSet<Variable>) {
        let mut term = |t: &Term, bound: &Vec<&Variable>| {
            for v in t.free_vars() {
                if !bound.contains(&&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Eq(s, t) => {
                term(s, bound);
                term(t, bound);
            }
            Formula::Truth(t) => term(t, bound),
            Formula::Marked(m) => {
                for t in m.terms() {
                    term(t, bound);
                }
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                bound.push(v);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, v: &Variable) -> bool {
        match self {
            Formula::Eq(s, t) => s.contains_var(v) || t.contains_var(v),
            Formula::Truth(t) => t.contains_var(v),
            Formula::Marked(m) => m.terms().iter().any(|t| t.contains_var(v)),
            Formula::Not(a) => a.has_free(v),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.has_free(v) || b.has_free(v)
            }
            Formula::Exists(w, a) | Formula::Forall(w, a) => w != v && a.has_free(v),
        }
    }

    /// All variables occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<Variable>) {
        match self {
            Formula::Eq(s, t) => {
                s.collect_vars(out);
                t.collect_vars(out);
            }
            Formula::Truth(t) => t.collect_vars(out),
            Formula::Marked(m) => m.terms().iter().for_each(|t| t.collect_vars(out)),
            Formula::Not(a) => a.collect_all_vars(out),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            Formula::Exists(v, a) | Formula::Forall(v, a) => {
                out.insert(v.clone());
                a.collect_all_vars(out);
            }
        }
    }

    /// Syntactic depth: atoms are 0, every connective and quantifier adds one.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Truth(_) | Formula::Marked(_) => 0,
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => 1 + a.depth(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Number of nodes, counting term nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(s, t) => 1 + s.size() + t.size(),
            Formula::Truth(t) => 1 + t.size(),
            Formula::Marked(m) => 1 + m.terms().iter().map(|t| t.size()).sum::<usize>(),
            Formula::Not(a) => 1 + a.size(),
            Formula::Exists(_, a) | Formula::Forall(_, a) => 2 + a.size(),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn direct_subformulas(&self) -> Vec<&Formula> {
        match self {
            Formula::Eq(..) | Formula::Truth(_) | Formula::Marked(_) => vec![],
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => vec![a],
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => vec![a, b],
        }
    }

    /// Replaces the free occurrences of `v` by `by`, with no capture check.
    /// Use [`Formula::is_free_for`] first when `by` has variables.
    pub fn replace_free(&self, v: &Variable, by: &Term) -> Formula {
        let mut map = BTreeMap::new();
        map.insert(v.clone(), by.clone());
        self.replace_free_many(&map)
    }

    pub(crate) fn replace_free_many(&self, map: &BTreeMap<Variable, Term>) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        let term = |t: &Term| t.map_vars(&mut |w| map.get(w).cloned());
        match self {
            Formula::Eq(s, t) => Formula::Eq(term(s), term(t)),
            Formula::Truth(t) => Formula::Truth(term(t)),
            Formula::Marked(m) => Formula::Marked(m.map_terms(term)),
            Formula::Not(a) => Formula::not(a.replace_free_many(map)),
            Formula::Or(a, b) => Formula::or(a.replace_free_many(map), b.replace_free_many(map)),
            Formula::And(a, b) => Formula::and(a.replace_free_many(map), b.replace_free_many(map)),
            Formula::Imp(a, b) => Formula::imp(a.replace_free_many(map), b.replace_free_many(map)),
            Formula::Exists(w, a) | Formula::Forall(w, a) => {
                let body = if map.contains_key(w) {
                    let mut inner = map.clone();
                    inner.remove(w);
                    a.replace_free_many(&inner)
                } else {
                    a.replace_free_many(map)
                };
                match self {
                    Formula::Exists(..) => Formula::exists(w.clone(), body),
                    _ => Formula::forall(w.clone(), body),
                }
            }
        }
    }

    /// `term` is substitutable for `v`: no free occurrence of `v` lies in the
    /// scope of a binder of a variable of `term`.
    pub fn is_free_for(&self, term: &Term, v: &Variable) -> bool {
        let vars = term.free_vars();
        self.free_for_under(&vars, v, false)
    }

    fn free_for_under(&self, vars: &BTreeSet<Variable>, v: &Variable, captured: bool) -> bool {
        match self {
            Formula::Eq(..) | Formula::Truth(_) | Formula::Marked(_) => {
                !(captured && self.has_free(v))
            }
            Formula::Not(a) => a.free_for_under(vars, v, captured),
            Formula::Or(a, b) | Formula::And(a, b) | Formula::Imp(a, b) => {
                a.free_for_under(vars, v, captured) && b.free_for_under(vars, v, captured)
            }
            Formula::Exists(w, a) | Formula::Forall(w, a) => {
                if w == v {
                    true
                } else {
                    a.free_for_under(vars, v, captured || vars.contains(w))
                }
            }
        }
    }

    /// `φ[α]`: every free variable in `dom(α)` replaced by the numeral of its
    /// value. Variables outside `dom(α)` stay free.
    pub fn substitute(&self, assignment: &Assignment) -> Formula {
        let map: BTreeMap<Variable, Term> = assignment
            .iter()
            .map(|(v, n)| (v.clone(), Term::numeral(n)))
            .collect();
        self.replace_free_many(&map)
    }

    /// `φ[α]` for `α ∈ Val(φ)`; fails on the first free variable `α` misses.
    pub fn instantiate(&self, assignment: &Assignment) -> Result<Formula> {
        if let Some(v) = self.free_vars().into_iter().find(|v| assignment.get(v).is_none()) {
            return Err(Error::Unbound(v));
        }
        Ok(self.substitute(assignment))
    }

    /// Universal closure over the free variables, in variable order.
    pub fn universal_closure(&self) -> Formula {
        self.free_vars()
            .into_iter()
            .rev()
            .fold(self.clone(), |body, v| Formula::forall(v, body))
    }

    /// Replaces every truth atom `T(t)` by `f(t)`.
    pub fn map_truth_atoms(&self, f: &impl Fn(&Term) -> Formula) -> Formula {
        match self {
            Formula::Truth(t) => f(t),
            Formula::Eq(..) | Formula::Marked(_) => self.clone(),
            Formula::Not(a) => Formula::not(a.map_truth_atoms(f)),
            Formula::Or(a, b) => Formula::or(a.map_truth_atoms(f), b.map_truth_atoms(f)),
            Formula::And(a, b) => Formula::and(a.map_truth_atoms(f), b.map_truth_atoms(f)),
            Formula::Imp(a, b) => Formula::imp(a.map_truth_atoms(f), b.map_truth_atoms(f)),
            Formula::Exists(v, a) => Formula::exists(v.clone(), a.map_truth_atoms(f)),
            Formula::Forall(v, a) => Formula::forall(v.clone(), a.map_truth_atoms(f)),
        }
    }
}

/// A finite map from variables to natural numbers (or to domain elements of a
/// finite structure).
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Assignment(BTreeMap<Variable, u64>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: &Variable) -> Option<u64> {
        self.0.get(v).copied()
    }

    pub fn set(&mut self, v: Variable, value: u64) {
        self.0.insert(v, value);
    }

    pub fn with(mut self, v: Variable, value: u64) -> Self {
        self.set(v, value);
        self
    }

    pub fn remove(&mut self, v: &Variable) -> Option<u64> {
        self.0.remove(v)
    }

    pub fn contains(&self, v: &Variable) -> bool {
        self.0.contains_key(v)
    }

    pub fn domain(&self) -> BTreeSet<Variable> {
        self.0.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Variable, u64)> {
        self.0.iter().map(|(v, n)| (v, *n))
    }

    /// The restriction of `self` to `vars`.
    pub fn restrict(&self, vars: &BTreeSet<Variable>) -> Assignment {
        Assignment(
            self.0
                .iter()
                .filter(|(v, _)| vars.contains(*v))
                .map(|(v, n)| (v.clone(), *n))
                .collect(),
        )
    }

    /// `α ∈ Val(φ)`: the domain covers the free variables of `φ`.
    pub fn covers(&self, formula: &Formula) -> bool {
        formula.free_vars().iter().all(|v| self.contains(v))
    }

    /// Every assignment with domain exactly `vars` and values below `size`,
    /// in lexicographic order.
    pub fn enumerate(vars: &BTreeSet<Variable>, size: u64) -> Vec<Assignment> {
        let vars: Vec<&Variable> = vars.iter().collect();
        let mut out = Vec::new();
        if size == 0 && !vars.is_empty() {
            return out;
        }
        let mut digits = vec![0u64; vars.len()];
        loop {
            out.push(Assignment(
                vars.iter().zip(&digits).map(|(v, &d)| ((*v).clone(), d)).collect(),
            ));
            let mut i = digits.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < size {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

impl FromIterator<(Variable, u64)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Variable, u64)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, n) in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{v}={n}")?;
        }
        Ok(())
    }
}

/// `β ∼_v α`: `dom(β) = dom(α) ∪ {v}` and `β` agrees with `α` off `v`.
pub fn assignment_extends(beta: &Assignment, alpha: &Assignment, v: &Variable) -> bool {
    let mut expected = alpha.domain();
    expected.insert(v.clone());
    beta.domain() == expected
        && alpha
            .iter()
            .filter(|(w, _)| *w != v)
            .all(|(w, n)| beta.get(w) == Some(n))
}

/// Parses an assignment written `v=n,w=m` (empty text is the empty assignment).
pub fn parse_assignment(text: &str) -> Result<Assignment> {
    let mut out = Assignment::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item.split_once('=').ok_or_else(|| Error::Parse {
            pos: 0,
            message: format!("expected `var=value`, got `{item}`"),
        })?;
        let v = parse_variable(name.trim())?;
        let n = value.trim().parse::<u64>().map_err(|_| Error::Parse {
            pos: 0,
            message: format!("`{}` is not a natural number", value.trim()),
        })?;
        out.set(v, n);
    }
    Ok(out)
}
