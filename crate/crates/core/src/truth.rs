//! Truth evaluation.
//!
//! Over ℕ the evaluator is three-valued: quantifiers search witnesses up to a
//! cap, and a failed search only counts as a refutation when the quantified
//! variable does not occur in the matrix. Over a finite structure evaluation
//! is exact.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::structure::FiniteStructure;
use crate::syntax::{Assignment, Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    Unknown,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    pub fn is_decided(self) -> bool {
        self != TruthValue::Unknown
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            TruthValue::True => Some(true),
            TruthValue::False => Some(false),
            TruthValue::Unknown => None,
        }
    }


    pub fn or(self, other: Self) -> Self {
        match (self, other) {
            (TruthValue::True, _) | (_, TruthValue::True) => TruthValue::True,
            (TruthValue::False, TruthValue::False) => TruthValue::False,
            _ => TruthValue::Unknown,
        }
    }

    pub fn and(self, other: Self) -> Self {
        !(!self).or(!other)
    }

    pub fn implies(self, other: Self) -> Self {
        (!self).or(other)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TruthValue::True => "true",
            TruthValue::False => "false",
            TruthValue::Unknown => "unknown",
        })
    }
}

impl std::ops::Not for TruthValue {
    type Output = Self;

    fn not(self) -> Self {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            TruthValue::Unknown => TruthValue::Unknown,
        }
    }
}

/// Witness cap for quantifiers over ℕ and the set of codes `T` holds of.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvalBudget {
    pub quantifier_cap: u64,
    pub oracle: Option<BTreeSet<BigUint>>,
}

impl EvalBudget {
    pub fn new(quantifier_cap: u64) -> Self {
        EvalBudget {
            quantifier_cap,
            oracle: None,
        }
    }

    pub fn with_oracle(mut self, oracle: BTreeSet<BigUint>) -> Self {
        self.oracle = Some(oracle);
        self
    }
}

fn check_sentence(f: &Formula) -> Result<()> {
    if f.has_markers() {
        return Err(Error::Uninterpreted(f.clone()));
    }
    if !f.is_sentence() {
        return Err(Error::NotSentence(f.clone()));
    }
    Ok(())
}

/// Kleene evaluation of a sentence over ℕ.
pub fn eval(f: &Formula, budget: &EvalBudget) -> Result<TruthValue> {
    check_sentence(f)?;
    eval_under(f, &mut Assignment::new(), budget)
}

fn eval_under(f: &Formula, env: &mut Assignment, budget: &EvalBudget) -> Result<TruthValue> {
    Ok(match f {
        Formula::Eq(s, t) => TruthValue::from_bool(s.value(env)? == t.value(env)?),
        Formula::Truth(t) => {
            let value = t.value(env)?;
            TruthValue::from_bool(budget.oracle.as_ref().is_some_and(|o| o.contains(&value)))
        }
        Formula::Marked(_) => return Err(Error::Uninterpreted(f.clone())),
        Formula::Not(a) => !eval_under(a, env, budget)?,
        Formula::Or(a, b) => {
            let a = eval_under(a, env, budget)?;
            if a == TruthValue::True {
                a
            } else {
                a.or(eval_under(b, env, budget)?)
            }
        }
        Formula::And(a, b) => {
            let a = eval_under(a, env, budget)?;
            if a == TruthValue::False {
                a
            } else {
                a.and(eval_under(b, env, budget)?)
            }
        }
        Formula::Imp(a, b) => {
            let a = eval_under(a, env, budget)?;
            if a == TruthValue::False {
                TruthValue::True
            } else {
                a.implies(eval_under(b, env, budget)?)
            }
        }
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let universal = matches!(f, Formula::Forall(..));
            // the value a witness must reach to settle the quantifier
            let decisive = if universal {
                TruthValue::False
            } else {
                TruthValue::True
            };
            let saved = env.remove(v);
            let result = if !body.has_free(v) {
                eval_under(body, env, budget)
            } else {
                let mut found = None;
                for w in 0..=budget.quantifier_cap {
                    env.set(v.clone(), w);
                    match eval_under(body, env, budget) {
                        Ok(value) if value == decisive => {
                            found = Some(Ok(decisive));
                            break;
                        }
                        Ok(_) => {}
                        Err(e) => {
                            found = Some(Err(e));
                            break;
                        }
                    }
                }
                env.remove(v);
                found.unwrap_or(Ok(TruthValue::Unknown))
            };
            if let Some(n) = saved {
                env.set(v.clone(), n);
            }
            result?
        }
    })
}

/// `Tr_c`: false above depth `c`, otherwise [`eval`].
pub fn eval_restricted(f: &Formula, c: usize, budget: &EvalBudget) -> Result<TruthValue> {
    check_sentence(f)?;
    if f.depth() > c {
        return Ok(TruthValue::False);
    }
    eval(f, budget)
}

/// Exact Tarski truth of a sentence in a finite structure. `T(t)` holds when
/// the value of `t` is in `oracle`.
pub fn eval_in_structure(
    f: &Formula,
    structure: &FiniteStructure,
    oracle: Option<&BTreeSet<BigUint>>,
) -> Result<bool> {
    check_sentence(f)?;
    satisfies(f, structure, &Assignment::new(), &|d| {
        oracle.is_some_and(|o| o.contains(&BigUint::from(d)))
    })
}

/// `structure ⊨ f[α]` with `T(t)` read through `truth` on the value of `t`.
/// `α` must cover the free variables of `f`.
pub fn satisfies(
    f: &Formula,
    structure: &FiniteStructure,
    assignment: &Assignment,
    truth: &dyn Fn(usize) -> bool,
) -> Result<bool> {
    let mut env = assignment.clone();
    sat_under(f, structure, &mut env, truth)
}

fn sat_under(
    f: &Formula,
    s: &FiniteStructure,
    env: &mut Assignment,
    truth: &dyn Fn(usize) -> bool,
) -> Result<bool> {
    let term = |t: &Term, env: &Assignment| s.eval_term(t, env);
    Ok(match f {
        Formula::Eq(a, b) => term(a, env)? == term(b, env)?,
        Formula::Truth(t) => truth(term(t, env)?),
        Formula::Marked(_) => return Err(Error::Uninterpreted(f.clone())),
        Formula::Not(a) => !sat_under(a, s, env, truth)?,
        Formula::Or(a, b) => sat_under(a, s, env, truth)? || sat_under(b, s, env, truth)?,
        Formula::And(a, b) => sat_under(a, s, env, truth)? && sat_under(b, s, env, truth)?,
        Formula::Imp(a, b) => !sat_under(a, s, env, truth)? || sat_under(b, s, env, truth)?,
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let universal = matches!(f, Formula::Forall(..));
            let saved = env.remove(v);
            let mut result = Ok(universal);
            for d in s.domain() {
                env.set(v.clone(), d as u64);
                match sat_under(body, s, env, truth) {
                    Ok(value) if value != universal => {
                        result = Ok(value);
                        break;
                    }
                    Ok(_) => {}
                    Err(e) => {
                        result = Err(e);
                        break;
                    }
                }
            }
            env.remove(v);
            if let Some(n) = saved {
                env.set(v.clone(), n);
            }
            result?
        }
    })
}
