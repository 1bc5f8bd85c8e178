use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::structural::alpha_similar;
use crate::syntax::{parse_formula, parse_term, parse_variable, Formula, Term, Variable};
use crate::truth::{eval, EvalBudget, TruthValue};

use super::generators::{default_induction_var, gen_induction};
use super::proof::{Justification, ProofObject};

/// Robinson's axioms for `0, S, +, ×`.
pub const ROBINSON_AXIOMS: [(&str, &str); 7] = [
    ("q1", "A x. ~(S(x) = 0)"),
    ("q2", "A x. A y. ((S(x) = S(y)) -> (x = y))"),
    ("q3", "A x. (~(x = 0) -> E y. (x = S(y)))"),
    ("q4", "A x. ((x + 0) = x)"),
    ("q5", "A x. A y. ((x + S(y)) = S((x + y)))"),
    ("q6", "A x. ((x * 0) = 0)"),
    ("q7", "A x. A y. ((x * S(y)) = ((x * y) + x))"),
];

/// Logical axiom schemata with their shapes.
pub const LOGICAL_AXIOMS: [(&str, &str); 19] = [
    ("k", "(p -> (q -> p))"),
    ("s", "((p -> (q -> r)) -> ((p -> q) -> (p -> r)))"),
    ("contra", "((~p -> ~q) -> (q -> p))"),
    ("or_def1", "((p | q) -> (~p -> q))"),
    ("or_def2", "((~p -> q) -> (p | q))"),
    ("and_def1", "((p & q) -> ~(p -> ~q))"),
    ("and_def2", "(~(p -> ~q) -> (p & q))"),
    ("ex_def1", "(E x. p -> ~A x. ~p)"),
    ("ex_def2", "(~A x. ~p -> E x. p)"),
    ("all_inst", "(A x. phi -> phi[t/x]), t free for x in phi"),
    ("ex_intro", "(phi[t/x] -> E x. phi), t free for x in phi"),
    ("all_dist", "(A x. (p -> q) -> (p -> A x. q)), x not free in p"),
    ("eq_refl", "(t = t)"),
    ("eq_eq", "((s = t) -> ((s = u) -> (t = u)))"),
    ("eq_succ", "((s = t) -> (S(s) = S(t)))"),
    ("eq_add_l", "((s = t) -> ((s + u) = (t + u)))"),
    ("eq_add_r", "((s = t) -> ((u + s) = (u + t)))"),
    ("eq_mul_l", "((s = t) -> ((s * u) = (t * u)))"),
    ("eq_mul_r", "((s = t) -> ((u * s) = (u * t)))"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Part {
    F(Formula),
    T(Term),
    V(Variable),
}

type Parts = BTreeMap<&'static str, Part>;

fn imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Imp(a, b) => Some((a, b)),
        _ => None,
    }
}

fn not(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(a) => Some(a),
        _ => None,
    }
}

fn eq(f: &Formula) -> Option<(&Term, &Term)> {
    match f {
        Formula::Eq(s, t) => Some((s, t)),
        _ => None,
    }
}

fn parts<const N: usize>(items: [(&'static str, Part); N]) -> Parts {
    items.into_iter().collect()
}

fn fp(f: &Formula) -> Part {
    Part::F(f.clone())
}

fn tp(t: &Term) -> Part {
    Part::T(t.clone())
}

/// Finds `t` with `phi[t/x] = target`. `Some(None)` when `x` is not free
/// in `phi` and the two agree.
fn find_instance(phi: &Formula, x: &Variable, target: &Formula) -> Option<Option<Term>> {
    let mut slot = None;
    if !match_formula(phi, target, x, &mut slot) {
        return None;
    }
    match slot {
        None => (phi == target).then_some(None),
        Some(t) => (phi.replace_free(x, &t) == *target).then_some(Some(t)),
    }
}

fn match_term(p: &Term, t: &Term, x: &Variable, slot: &mut Option<Term>) -> bool {
    match (p, t) {
        (Term::Var(v), _) if v == x => match slot {
            Some(seen) => seen == t,
            None => {
                *slot = Some(t.clone());
                true
            }
        },
        (Term::Zero, Term::Zero) => true,
        (Term::Var(a), Term::Var(b)) => a == b,
        (Term::Succ(a), Term::Succ(b)) => match_term(a, b, x, slot),
        (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
            match_term(a1, b1, x, slot) && match_term(a2, b2, x, slot)
        }
        _ => false,
    }
}

fn match_formula(p: &Formula, t: &Formula, x: &Variable, slot: &mut Option<Term>) -> bool {
    match (p, t) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) => {
            match_term(a1, b1, x, slot) && match_term(a2, b2, x, slot)
        }
        (Formula::Not(a), Formula::Not(b)) => match_formula(a, b, x, slot),
        (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => {
            match_formula(a1, b1, x, slot) && match_formula(a2, b2, x, slot)
        }
        (Formula::Exists(v, a), Formula::Exists(w, b))
        | (Formula::Forall(v, a), Formula::Forall(w, b)) => {
            v == w && if v == x { a == b } else { match_formula(a, b, x, slot) }
        }
        _ => p == t,
    }
}

/// Matches `f` against the schema `id`; on success returns the parts.
fn match_axiom(id: &str, f: &Formula) -> std::result::Result<Parts, String> {
    if !LOGICAL_AXIOMS.iter().any(|(name, _)| *name == id) {
        return Err(format!("unknown logical axiom `{id}`"));
    }
    let shape = || format!("not an instance of `{id}`");
    let m: Option<Parts> = (|| match id {
        "k" => {
            let (p, r) = imp(f)?;
            let (q, p2) = imp(r)?;
            (p == p2).then(|| parts([("p", fp(p)), ("q", fp(q))]))
        }
        "s" => {
            let (l, r) = imp(f)?;
            let (p, qr) = imp(l)?;
            let (q, r0) = imp(qr)?;
            let (pq, pr) = imp(r)?;
            let (p1, q1) = imp(pq)?;
            let (p2, r1) = imp(pr)?;
            (p == p1 && p == p2 && q == q1 && r0 == r1)
                .then(|| parts([("p", fp(p)), ("q", fp(q)), ("r", fp(r0))]))
        }
        "contra" => {
            let (l, r) = imp(f)?;
            let (np, nq) = imp(l)?;
            let (p, q) = (not(np)?, not(nq)?);
            let (q1, p1) = imp(r)?;
            (p == p1 && q == q1).then(|| parts([("p", fp(p)), ("q", fp(q))]))
        }
        "or_def1" | "or_def2" => {
            let (l, r) = imp(f)?;
            let (disj, arrow) = if id == "or_def1" { (l, r) } else { (r, l) };
            let Formula::Or(p, q) = disj else { return None };
            let (np, q1) = imp(arrow)?;
            (not(np)? == &**p && q1 == &**q).then(|| parts([("p", fp(p)), ("q", fp(q))]))
        }
        "and_def1" | "and_def2" => {
            let (l, r) = imp(f)?;
            let (conj, neg) = if id == "and_def1" { (l, r) } else { (r, l) };
            let Formula::And(p, q) = conj else { return None };
            let (p1, nq) = imp(not(neg)?)?;
            (p1 == &**p && not(nq)? == &**q).then(|| parts([("p", fp(p)), ("q", fp(q))]))
        }
        "ex_def1" | "ex_def2" => {
            let (l, r) = imp(f)?;
            let (ex, neg) = if id == "ex_def1" { (l, r) } else { (r, l) };
            let Formula::Exists(x, p) = ex else { return None };
            let Formula::Forall(y, np) = not(neg)? else { return None };
            (x == y && not(np)? == &**p)
                .then(|| parts([("x", Part::V(x.clone())), ("p", fp(p))]))
        }
        "all_inst" | "ex_intro" => {
            let (l, r) = imp(f)?;
            let (quantified, instance) = if id == "all_inst" { (l, r) } else { (r, l) };
            let (x, phi) = match (id, quantified) {
                ("all_inst", Formula::Forall(x, phi)) | ("ex_intro", Formula::Exists(x, phi)) => (x, phi),
                _ => return None,
            };
            let t = find_instance(phi, x, instance)?;
            let mut out = parts([("x", Part::V(x.clone())), ("phi", fp(phi))]);
            if let Some(t) = t {
                if !phi.is_free_for(&t, x) {
                    return None;
                }
                out.insert("t", Part::T(t));
            }
            Some(out)
        }
        "all_dist" => {
            let (l, r) = imp(f)?;
            let Formula::Forall(x, body) = l else { return None };
            let (p, q) = imp(body)?;
            let (p1, aq) = imp(r)?;
            let Formula::Forall(y, q1) = aq else { return None };
            (x == y && p == p1 && q == &**q1 && !p.has_free(x)).then(|| {
                parts([("x", Part::V(x.clone())), ("p", fp(p)), ("q", fp(q))])
            })
        }
        "eq_refl" => {
            let (s, t) = eq(f)?;
            (s == t).then(|| parts([("t", tp(t))]))
        }
        "eq_eq" => {
            let (l, r) = imp(f)?;
            let (s, t) = eq(l)?;
            let (l2, r2) = imp(r)?;
            let (s1, u) = eq(l2)?;
            let (t1, u1) = eq(r2)?;
            (s == s1 && t == t1 && u == u1).then(|| parts([("s", tp(s)), ("t", tp(t)), ("u", tp(u))]))
        }
        "eq_succ" => {
            let (l, r) = imp(f)?;
            let (s, t) = eq(l)?;
            let (ss, st) = eq(r)?;
            (*ss == Term::succ(s.clone()) && *st == Term::succ(t.clone()))
                .then(|| parts([("s", tp(s)), ("t", tp(t))]))
        }
        "eq_add_l" | "eq_add_r" | "eq_mul_l" | "eq_mul_r" => {
            let (l, r) = imp(f)?;
            let (s, t) = eq(l)?;
            let (a, b) = eq(r)?;
            let u = match (a, b) {
                (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
                    let mul = matches!(a, Term::Mul(..));
                    if mul != id.starts_with("eq_mul") {
                        return None;
                    }
                    if id.ends_with("_l") {
                        (**a1 == *s && **b1 == *t && a2 == b2).then_some(a2)?
                    } else {
                        (**a2 == *s && **b2 == *t && a1 == b1).then_some(a1)?
                    }
                }
                _ => return None,
            };
            Some(parts([("s", tp(s)), ("t", tp(t)), ("u", tp(u))]))
        }
        _ => None,
    })();
    m.ok_or_else(shape)
}

fn check_instantiation(
    id: &str,
    matched: &Parts,
    given: &BTreeMap<String, String>,
) -> std::result::Result<(), String> {
    for (key, text) in given {
        let parsed = match key.as_str() {
            "p" | "q" | "r" | "phi" => parse_formula(text).map(Part::F),
            "s" | "t" | "u" => parse_term(text).map(Part::T),
            "x" => parse_variable(text).map(Part::V),
            _ => return Err(format!("`{id}` has no part named `{key}`")),
        }
        .map_err(|e| format!("bad value for `{key}`: {e}"))?;
        match matched.get(key.as_str()) {
            Some(actual) if *actual != parsed => {
                return Err(format!("`{key}={text}` does not agree with the instance"))
            }
            None if !(id == "all_inst" || id == "ex_intro") || key != "t" => {
                return Err(format!("`{id}` has no part named `{key}`"))
            }
            _ => {}
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every line checks; `depth_bound` is the largest line depth.
    Accept { depth_bound: usize },
    /// The first failing line (numbered from 1).
    Reject { line: usize, reason: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept { depth_bound } => write!(f, "accept depth_bound={depth_bound}"),
            Verdict::Reject { line, reason } => write!(f, "reject line {line}: {reason}"),
        }
    }
}

fn robinson(id: &str) -> Option<Formula> {
    ROBINSON_AXIOMS
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, text)| parse_formula(text).expect("well-formed axiom"))
}

fn check_line(proof: &ProofObject, n: usize) -> std::result::Result<(), String> {
    let line = &proof.lines[n - 1];
    let f = &line.formula;
    if !f.is_arithmetical() {
        return Err("proof lines must be arithmetical".into());
    }
    let earlier = |i: usize| -> std::result::Result<&Formula, String> {
        if i == 0 || i >= n {
            Err(format!("line {i} is not an earlier line"))
        } else {
            Ok(&proof.lines[i - 1].formula)
        }
    };
    match &line.justification {
        Justification::LogicalAxiom { id, instantiation } => {
            let matched = match_axiom(id, f)?;
            check_instantiation(id, &matched, instantiation)
        }
        Justification::Base(id) => {
            let axiom = robinson(id)
                .or_else(|| proof.declared.get(id).cloned())
                .ok_or_else(|| format!("unknown base axiom `{id}`"))?;
            if alpha_similar(&axiom, f) {
                Ok(())
            } else {
                Err(format!("not the axiom `{id}`: {axiom}"))
            }
        }
        Justification::Induction(phi) => {
            if !phi.is_arithmetical() {
                return Err("induction formula must be arithmetical".into());
            }
            let expected = gen_induction(phi, &default_induction_var(phi));
            if alpha_similar(&expected, f) {
                Ok(())
            } else {
                Err(format!("not the induction instance {expected}"))
            }
        }
        Justification::ModusPonens(i, j) => {
            let (a, b) = (earlier(*i)?, earlier(*j)?);
            match b {
                Formula::Imp(ante, cons) if **ante == *a && **cons == *f => Ok(()),
                Formula::Imp(ante, _) if **ante != *a => {
                    Err(format!("line {j} does not have line {i} as its antecedent"))
                }
                Formula::Imp(..) => Err(format!("line {j} does not conclude this line")),
                _ => Err(format!("line {j} is not an implication")),
            }
        }
        Justification::Generalization(i, v) => {
            let a = earlier(*i)?;
            if *f == Formula::forall(v.clone(), a.clone()) {
                Ok(())
            } else {
                Err(format!("not the generalization of line {i} over {v}"))
            }
        }
    }
}

/// Checks every line in order and reports the first failure.
pub fn verify_proof(proof: &ProofObject) -> Verdict {
    let mut depth_bound = 0;
    for n in 1..=proof.lines.len() {
        if let Err(reason) = check_line(proof, n) {
            return Verdict::Reject { line: n, reason };
        }
        depth_bound = depth_bound.max(proof.lines[n - 1].formula.depth());
    }
    Verdict::Accept { depth_bound }
}

/// Truth values of the universal closures of the proof lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReflectReport {
    pub values: Vec<(usize, TruthValue)>,
}

impl ReflectReport {
    /// Lines whose closure evaluates to false.
    pub fn alarms(&self) -> Vec<usize> {
        self.values
            .iter()
            .filter(|(_, v)| *v == TruthValue::False)
            .map(|(n, _)| *n)
            .collect()
    }
}

impl fmt::Display for ReflectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, v) in &self.values {
            let flag = if *v == TruthValue::False { "  FALSE: soundness alarm" } else { "" };
            writeln!(f, "line {n}: {v}{flag}")?;
        }
        Ok(())
    }
}

/// Evaluates the universal closure of every line under `budget`.
pub fn reflect_check(proof: &ProofObject, budget: &EvalBudget) -> Result<ReflectReport> {
    let mut values = Vec::with_capacity(proof.lines.len());
    for (i, line) in proof.lines.iter().enumerate() {
        values.push((i + 1, eval(&line.formula.universal_closure(), budget)?));
    }
    Ok(ReflectReport { values })
}
