use crate::error::{Error, Result};
use crate::structural::template;
use crate::structure::FiniteStructure;
use crate::syntax::{Assignment, Formula, Variable};

use super::closure::{class_order, subformula_closure};
use super::predicate::{BasePredicate, SatPredicate};

/// One extension step: a satisfaction predicate on the closure of
/// `formulas` together with the base's formula set.
///
/// Classes are filled in `⊴` order. A minimal class that misses the old set
/// is false everywhere; one that meets it is read off the base through the
/// template and the values of the abstracted subterms. Every other class
/// follows the compositional clauses, quantifiers ranging over the domain.
/// The result must agree with the base on the old set.
pub fn extend(
    structure: &FiniteStructure,
    formulas: &[Formula],
    base: &BasePredicate,
) -> Result<SatPredicate> {
    let mut seed: Vec<Formula> = formulas.to_vec();
    seed.extend(base.old_set().iter().cloned());
    let closure = subformula_closure(&seed)?;
    let order = class_order(&closure)?;
    let size = structure.size() as u64;
    let mut sat = SatPredicate::new(closure);

    for (index, class) in order.classes.iter().enumerate() {
        let minimal = order.is_minimal(index);
        let inherits = class.members.iter().any(|m| base.old_set().contains(m));
        for member in &class.members {
            let decomposition = template(member)?;
            let placeholders = decomposition.placeholders();
            for alpha in Assignment::enumerate(&member.free_vars(), size) {
                let value = if !minimal {
                    compositional(member, &alpha, &sat, structure)?
                } else if inherits {
                    let mut beta = Assignment::new();
                    for (v, arg) in placeholders.iter().zip(&decomposition.args) {
                        beta.set(v.clone(), structure.eval_term(arg, &alpha)? as u64);
                    }
                    base.holds(&decomposition.template, &beta)
                } else {
                    false
                };
                if value {
                    sat.insert(member.clone(), alpha)?;
                }
            }
        }
    }

    for f in base.old_set() {
        for alpha in Assignment::enumerate(&f.free_vars(), size) {
            let old = base.holds(f, &alpha);
            if old != sat.holds(f, &alpha) {
                return Err(Error::Conflict {
                    formula: f.clone(),
                    assignment: alpha.to_string(),
                    reason: if old {
                        "the base makes this cell true, the compositional clauses make it false".into()
                    } else {
                        "the compositional clauses make this cell true, the base makes it false".into()
                    },
                });
            }
        }
    }
    Ok(sat)
}

/// The value the compositional clauses give `(f, α)` from the subformula
/// values already in `sat`.
pub(crate) fn compositional(
    f: &Formula,
    alpha: &Assignment,
    sat: &SatPredicate,
    structure: &FiniteStructure,
) -> Result<bool> {
    Ok(match f {
        Formula::Eq(s, t) => structure.eval_term(s, alpha)? == structure.eval_term(t, alpha)?,
        Formula::Truth(_) | Formula::Marked(_) => return Err(Error::NotArithmetical(f.clone())),
        Formula::Not(a) => !sat.holds(a, alpha),
        Formula::Or(a, b) => sat.holds(a, alpha) || sat.holds(b, alpha),
        Formula::And(a, b) => sat.holds(a, alpha) && sat.holds(b, alpha),
        Formula::Imp(a, b) => !sat.holds(a, alpha) || sat.holds(b, alpha),
        Formula::Exists(v, a) => variants(alpha, v, structure).any(|beta| sat.holds(a, &beta)),
        Formula::Forall(v, a) => variants(alpha, v, structure).all(|beta| sat.holds(a, &beta)),
    })
}

/// Every `β ∼_v α` over the domain.
pub(crate) fn variants<'a>(
    alpha: &'a Assignment,
    v: &'a Variable,
    structure: &FiniteStructure,
) -> impl Iterator<Item = Assignment> + 'a {
    structure
        .domain()
        .map(move |d| alpha.clone().with(v.clone(), d as u64))
}

/// Folds [`extend`] over `stages`, each output serving as the next base.
/// Returns the seed followed by one predicate per stage, after checking
/// that every stage agrees with all earlier ones on their formula sets.
pub fn extend_chain(
    structure: &FiniteStructure,
    stages: &[Vec<Formula>],
    seed: BasePredicate,
) -> Result<Vec<SatPredicate>> {
    let mut out = vec![seed.predicate().clone()];
    let mut base = seed;
    for stage in stages {
        let next = extend(structure, stage, &base)?;
        out.push(next.clone());
        base = BasePredicate::new(next, structure)?;
    }
    let size = structure.size() as u64;
    for (j, later) in out.iter().enumerate().skip(1) {
        for earlier in &out[..j] {
            for f in earlier.closure() {
                for alpha in Assignment::enumerate(&f.free_vars(), size) {
                    if earlier.holds(f, &alpha) != later.holds(f, &alpha) {
                        return Err(Error::Unstable {
                            formula: f.clone(),
                            assignment: alpha.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}
