//! Structural templates, similarity (`∼`), α-similarity (`≃`) and structural
//! equivalence (`≈`).
//!
//! The template of a formula is computed in two passes over the tree:
//!
//! 1. every binder is renamed to `$w<i>`, where `i` is the smallest index not
//!    held by an enclosing binder whose variable is still referenced inside the
//!    new binder's body;
//! 2. every maximal subterm containing no bound variable is replaced by a fresh
//!    placeholder `$v0, $v1, …` in left-to-right order.
//!
//! The renaming in pass 1 depends only on the binding structure, so
//! α-similar formulae get identical templates.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::structure::FiniteStructure;
use crate::syntax::{Assignment, Formula, Term, Variable};

/// A formula split into its structural template and the data needed to get
/// the original back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateDecomposition {
    pub template: Formula,
    /// One `(template name, original name)` pair per binder, in pre-order.
    /// A template name may appear several times.
    pub bound_renaming: Vec<(Variable, Variable)>,
    /// `args[i]` is the subterm abstracted as `$v<i>`.
    pub args: Vec<Term>,
}

impl TemplateDecomposition {
    pub fn placeholders(&self) -> Vec<Variable> {
        (0..self.args.len() as u32).map(Variable::Placeholder).collect()
    }

    /// Puts the arguments back and restores the original binder names.
    pub fn reconstruct(&self) -> Formula {
        let mut binders = self.bound_renaming.iter().map(|(_, original)| original);
        let mut env = Vec::new();
        rebuild(&self.template, &self.args, &mut binders, &mut env)
    }
}

fn rebuild<'a>(
    f: &Formula,
    args: &[Term],
    binders: &mut impl Iterator<Item = &'a Variable>,
    env: &mut Vec<(Variable, Variable)>,
) -> Formula {
    let term = |t: &Term, env: &Vec<(Variable, Variable)>| {
        t.map_vars(&mut |v| match v {
            Variable::Placeholder(i) => args.get(*i as usize).cloned(),
            _ => env
                .iter()
                .rev()
                .find(|(tmpl, _)| tmpl == v)
                .map(|(_, orig)| Term::Var(orig.clone())),
        })
    };
    match f {
        Formula::Eq(s, t) => Formula::Eq(term(s, env), term(t, env)),
        Formula::Truth(t) => Formula::Truth(term(t, env)),
        Formula::Marked(_) => f.clone(),
        Formula::Not(a) => Formula::not(rebuild(a, args, binders, env)),
        Formula::Or(a, b) => {
            let a = rebuild(a, args, binders, env);
            Formula::or(a, rebuild(b, args, binders, env))
        }
        Formula::And(a, b) => {
            let a = rebuild(a, args, binders, env);
            Formula::and(a, rebuild(b, args, binders, env))
        }
        Formula::Imp(a, b) => {
            let a = rebuild(a, args, binders, env);
            Formula::imp(a, rebuild(b, args, binders, env))
        }
        Formula::Exists(w, a) | Formula::Forall(w, a) => {
            let original = binders.next().cloned().unwrap_or_else(|| w.clone());
            env.push((w.clone(), original.clone()));
            let body = rebuild(a, args, binders, env);
            env.pop();
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(original, body)
            } else {
                Formula::forall(original, body)
            }
        }
    }
}

struct Extractor {
    // (source variable, template index), innermost last
    env: Vec<(Variable, u32)>,
    renaming: Vec<(Variable, Variable)>,
    args: Vec<Term>,
}

impl Extractor {
    fn binding(&self, v: &Variable) -> Option<u32> {
        self.env.iter().rev().find(|(src, _)| src == v).map(|(_, i)| *i)
    }

    fn mentions_bound(&self, t: &Term) -> bool {
        t.free_vars().iter().any(|v| self.binding(v).is_some())
    }

    fn term(&mut self, t: &Term) -> Term {
        if !self.mentions_bound(t) {
            let index = self.args.len() as u32;
            self.args.push(t.clone());
            return Term::Var(Variable::Placeholder(index));
        }
        match t {
            Term::Var(v) => Term::Var(Variable::Bound(self.binding(v).expect("bound variable"))),
            Term::Succ(s) => Term::succ(self.term(s)),
            Term::Add(s, u) => {
                let s = self.term(s);
                Term::add(s, self.term(u))
            }
            Term::Mul(s, u) => {
                let s = self.term(s);
                Term::mul(s, self.term(u))
            }
            Term::Zero => unreachable!("0 mentions no bound variable"),
        }
    }

    fn formula(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Eq(s, t) => {
                let s = self.term(s);
                Formula::Eq(s, self.term(t))
            }
            Formula::Truth(_) | Formula::Marked(_) => unreachable!("checked arithmetical"),
            Formula::Not(a) => Formula::not(self.formula(a)),
            Formula::Or(a, b) => {
                let a = self.formula(a);
                Formula::or(a, self.formula(b))
            }
            Formula::And(a, b) => {
                let a = self.formula(a);
                Formula::and(a, self.formula(b))
            }
            Formula::Imp(a, b) => {
                let a = self.formula(a);
                Formula::imp(a, self.formula(b))
            }
            Formula::Exists(v, body) | Formula::Forall(v, body) => {
                let taken: Vec<u32> = body
                    .free_vars()
                    .iter()
                    .filter(|w| *w != v)
                    .filter_map(|w| self.binding(w))
                    .collect();
                let index = (0..).find(|i| !taken.contains(i)).expect("free index");
                let name = Variable::Bound(index);
                self.renaming.push((name.clone(), v.clone()));
                self.env.push((v.clone(), index));
                let body = self.formula(body);
                self.env.pop();
                if matches!(f, Formula::Exists(..)) {
                    Formula::exists(name, body)
                } else {
                    Formula::forall(name, body)
                }
            }
        }
    }
}

/// Computes the structural template `φ̂` of an arithmetical formula.
pub fn template(f: &Formula) -> Result<TemplateDecomposition> {
    f.ensure_arithmetical()?;
    let mut ex = Extractor {
        env: Vec::new(),
        renaming: Vec::new(),
        args: Vec::new(),
    };
    let template = ex.formula(f);
    Ok(TemplateDecomposition {
        template,
        bound_renaming: ex.renaming,
        args: ex.args,
    })
}

/// `φ ∼ ψ`: identical structural templates.
pub fn similar(a: &Formula, b: &Formula) -> Result<bool> {
    Ok(template(a)?.template == template(b)?.template)
}

/// `φ ≃ ψ`: equal up to renaming bound variables without capture.
pub fn alpha_similar(a: &Formula, b: &Formula) -> bool {
    alpha_formula(a, b, &mut Vec::new(), &mut Vec::new())
}

fn alpha_var(a: &Variable, b: &Variable, env_a: &[&Variable], env_b: &[&Variable]) -> bool {
    let ia = env_a.iter().rev().position(|v| *v == a);
    let ib = env_b.iter().rev().position(|v| *v == b);
    match (ia, ib) {
        (Some(i), Some(j)) => i == j,
        (None, None) => a == b,
        _ => false,
    }
}

fn alpha_term(a: &Term, b: &Term, env_a: &[&Variable], env_b: &[&Variable]) -> bool {
    match (a, b) {
        (Term::Zero, Term::Zero) => true,
        (Term::Var(x), Term::Var(y)) => alpha_var(x, y, env_a, env_b),
        (Term::Succ(x), Term::Succ(y)) => alpha_term(x, y, env_a, env_b),
        (Term::Add(x1, x2), Term::Add(y1, y2)) | (Term::Mul(x1, x2), Term::Mul(y1, y2)) => {
            alpha_term(x1, y1, env_a, env_b) && alpha_term(x2, y2, env_a, env_b)
        }
        _ => false,
    }
}

fn alpha_formula<'a>(
    a: &'a Formula,
    b: &'a Formula,
    env_a: &mut Vec<&'a Variable>,
    env_b: &mut Vec<&'a Variable>,
) -> bool {
    match (a, b) {
        (Formula::Eq(s1, t1), Formula::Eq(s2, t2)) => {
            alpha_term(s1, s2, env_a, env_b) && alpha_term(t1, t2, env_a, env_b)
        }
        (Formula::Truth(s), Formula::Truth(t)) => alpha_term(s, t, env_a, env_b),
        (Formula::Marked(_), Formula::Marked(_)) => env_a.is_empty() && env_b.is_empty() && a == b,
        (Formula::Not(x), Formula::Not(y)) => alpha_formula(x, y, env_a, env_b),
        (Formula::Or(x1, x2), Formula::Or(y1, y2))
        | (Formula::And(x1, x2), Formula::And(y1, y2))
        | (Formula::Imp(x1, x2), Formula::Imp(y1, y2)) => {
            alpha_formula(x1, y1, env_a, env_b) && alpha_formula(x2, y2, env_a, env_b)
        }
        (Formula::Exists(v, x), Formula::Exists(w, y))
        | (Formula::Forall(v, x), Formula::Forall(w, y)) => {
            env_a.push(v);
            env_b.push(w);
            let same = alpha_formula(x, y, env_a, env_b);
            env_a.pop();
            env_b.pop();
            same
        }
        _ => false,
    }
}

/// The data `≈` compares: the template and the values of its arguments.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EquivalenceKey {
    pub template: Formula,
    pub values: Vec<BigUint>,
}

/// Template plus argument values of an arithmetical sentence, over the
/// standard model or over `structure`.
pub fn equivalence_key(
    sentence: &Formula,
    structure: Option<&FiniteStructure>,
) -> Result<EquivalenceKey> {
    if !sentence.is_sentence() {
        return Err(Error::NotSentence(sentence.clone()));
    }
    let decomposition = template(sentence)?;
    let empty = Assignment::new();
    let values = decomposition
        .args
        .iter()
        .map(|t| crate::structure::term_value(t, &empty, structure))
        .collect::<Result<Vec<_>>>()?;
    Ok(EquivalenceKey {
        template: decomposition.template,
        values,
    })
}

/// `φ ≈ ψ` for sentences: similar, with argument values equal componentwise.
pub fn equivalent(a: &Formula, b: &Formula, structure: Option<&FiniteStructure>) -> Result<bool> {
    Ok(equivalence_key(a, structure)? == equivalence_key(b, structure)?)
}

/// `(φ, α) ≈ (ψ, β)` iff `φ[α] ≈ ψ[β]`.
pub fn equivalent_under(
    a: &Formula,
    alpha: &Assignment,
    b: &Formula,
    beta: &Assignment,
    structure: Option<&FiniteStructure>,
) -> Result<bool> {
    equivalent(&a.instantiate(alpha)?, &b.instantiate(beta)?, structure)
}
