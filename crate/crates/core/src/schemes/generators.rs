use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::syntax::{Formula, Marker, Term, Variable};

/// `base`, or `base1`, `base2`, … : the first name not in `avoid`.
pub(crate) fn fresh(base: &str, avoid: &BTreeSet<Variable>) -> Variable {
    let plain = Variable::named(base);
    if !avoid.contains(&plain) {
        return plain;
    }
    (1..)
        .map(|i| Variable::named(&format!("{base}{i}")))
        .find(|v| !avoid.contains(v))
        .expect("some fresh name")
}

fn one() -> Term {
    Term::succ(Term::Zero)
}

/// `s < t` written in the language: `∃u (S(u) + s = t)`.
fn less_than(s: Term, t: Term, u: &Variable) -> Formula {
    Formula::exists(
        u.clone(),
        Formula::eq(Term::add(Term::succ(Term::Var(u.clone())), s), t),
    )
}

fn var(v: &Variable) -> Term {
    Term::Var(v.clone())
}

/// The variable an induction instance runs over when none is given: `x`
/// if it is free, otherwise the least free variable, otherwise `x`.
pub fn default_induction_var(phi: &Formula) -> Variable {
    let x = Variable::named("x");
    let free = phi.free_vars();
    if free.contains(&x) {
        return x;
    }
    free.into_iter().next().unwrap_or(x)
}

fn collection_with(phi: &Formula, x: &Variable, y: &Variable, avoid: &mut BTreeSet<Variable>) -> Result<Formula> {
    if x == y {
        return Err(Error::Parse {
            pos: 0,
            message: "collection needs two distinct variables".into(),
        });
    }
    avoid.extend(phi.all_vars());
    avoid.insert(x.clone());
    avoid.insert(y.clone());
    let a = fresh("a", avoid);
    avoid.insert(a.clone());
    let b = fresh("b", avoid);
    avoid.insert(b.clone());
    let u = fresh("u", avoid);
    avoid.insert(u.clone());

    let premise = Formula::forall(
        x.clone(),
        Formula::imp(
            less_than(var(x), var(&a), &u),
            Formula::exists(y.clone(), phi.clone()),
        ),
    );
    let conclusion = Formula::exists(
        b.clone(),
        Formula::forall(
            x.clone(),
            Formula::imp(
                less_than(var(x), var(&a), &u),
                Formula::exists(
                    y.clone(),
                    Formula::and(less_than(var(y), var(&b), &u), phi.clone()),
                ),
            ),
        ),
    );
    Ok(Formula::imp(premise, conclusion))
}

/// `∀x<a ∃y φ → ∃b ∀x<a ∃y<b φ` with `<` spelled out. `a` is left free;
/// `a`, `b` and the witness variable of `<` are fresh for `φ`.
pub fn gen_collection(phi: &Formula, x: &Variable, y: &Variable) -> Result<Formula> {
    collection_with(phi, x, y, &mut BTreeSet::new())
}

/// `ind(φ)`: `φ(0) ∧ ∀x (φ(x) → φ(x+1)) → ∀x φ(x)`.
pub fn gen_induction(phi: &Formula, x: &Variable) -> Formula {
    let x_term = var(x);
    let base = phi.replace_free(x, &Term::Zero);
    let next = phi.replace_free(x, &Term::add(x_term, one()));
    Formula::imp(
        Formula::and(
            base,
            Formula::forall(x.clone(), Formula::imp(phi.clone(), next)),
        ),
        Formula::forall(x.clone(), phi.clone()),
    )
}

/// `T(φ(ẋ))` as `∃z (z = ⌜φ(ẋ)⌝ ∧ T(z))`, with the coding left as a marker.
fn truth_of_instance(phi: &Formula, arg: Term, z: &Variable) -> Formula {
    Formula::exists(
        z.clone(),
        Formula::and(
            Formula::Marked(Marker::Subst {
                code: var(z),
                arg,
                formula: Box::new(phi.clone()),
            }),
            Formula::Truth(var(z)),
        ),
    )
}

/// The internal induction instance for `φ` (at most one free variable).
pub fn gen_int(phi: &Formula) -> Result<Formula> {
    if phi.free_vars().len() > 1 {
        return Err(Error::TooManyFree {
            formula: phi.clone(),
            allowed: 1,
        });
    }
    let x = Variable::named("x");
    let z = Variable::named("z");
    let at = |t: Term| truth_of_instance(phi, t, &z);
    Ok(Formula::imp(
        Formula::and(
            at(Term::Zero),
            Formula::forall(
                x.clone(),
                Formula::imp(at(var(&x)), at(Term::add(var(&x), one()))),
            ),
        ),
        Formula::forall(x.clone(), at(var(&x))),
    ))
}

/// `φ[T_c/T]`: every `T(t)` becomes `T(t) ∧ dpt(t) ≤ c`.
pub fn restrict_truth(phi: &Formula, c: &Variable) -> Formula {
    phi.map_truth_atoms(&|t| {
        Formula::and(
            Formula::Truth(t.clone()),
            Formula::Marked(Marker::Depth(t.clone(), var(c))),
        )
    })
}

/// `∀c (collection for φ[T_c/T])`.
pub fn gen_loccoll(phi: &Formula, x: &Variable, y: &Variable) -> Result<Formula> {
    let mut avoid = phi.all_vars();
    avoid.insert(x.clone());
    avoid.insert(y.clone());
    let c = fresh("c", &avoid);
    avoid.insert(c.clone());
    let body = collection_with(&restrict_truth(phi, &c), x, y, &mut avoid)?;
    Ok(Formula::forall(c, body))
}

/// `∀c ind(φ[T_c/T])`.
pub fn gen_locind(phi: &Formula, x: &Variable) -> Formula {
    let mut avoid = phi.all_vars();
    avoid.insert(x.clone());
    let c = fresh("c", &avoid);
    Formula::forall(c.clone(), gen_induction(&restrict_truth(phi, &c), x))
}

/// Global reflection: `∀p (Sent(p) ∧ Pr(p) → T(p))`.
pub fn gen_gr() -> Formula {
    let p = Variable::named("p");
    Formula::forall(
        p.clone(),
        Formula::imp(
            Formula::and(
                Formula::Marked(Marker::Sent(var(&p))),
                Formula::Marked(Marker::Provable(var(&p))),
            ),
            Formula::Truth(var(&p)),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structural::template;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn v(s: &str) -> Variable {
        Variable::named(s)
    }

    #[test]
    fn collection_shape() {
        let g = gen_collection(&f("(y = x)"), &v("x"), &v("y")).unwrap();
        assert_eq!(
            g,
            f("(A x. (E u. ((S(u) + x) = a) -> E y. (y = x)) -> E b. A x. (E u. ((S(u) + x) = a) -> E y. (E u. ((S(u) + y) = b) & (y = x))))")
        );
        assert_eq!(parse_formula(&g.to_string()).unwrap(), g);
        assert_eq!(g.free_vars(), [v("a")].into());
    }

    #[test]
    fn collection_avoids_clashes() {
        let g = gen_collection(&f("((y = a) & (b = u))"), &v("x"), &v("y")).unwrap();
        assert_eq!(g.free_vars(), [v("a"), v("a1"), v("b"), v("u")].into());
        let h = gen_collection(&f("((y = c) & (x = d))"), &v("x"), &v("y")).unwrap();
        assert_eq!(template(&g).unwrap().template.depth(), template(&h).unwrap().template.depth());
        let renamed = gen_collection(&f("((q = c) & (p = d))"), &v("p"), &v("q")).unwrap();
        assert_eq!(template(&h).unwrap().template, template(&renamed).unwrap().template);
    }

    #[test]
    fn induction_shape() {
        let g = gen_induction(&f("(x = x)"), &v("x"));
        assert_eq!(
            g,
            f("(((0 = 0) & A x. ((x = x) -> ((x + S(0)) = (x + S(0))))) -> A x. (x = x))")
        );
        assert!(g.is_sentence());
        let h = gen_induction(&f("(x = y)"), &v("x"));
        assert_eq!(h.free_vars(), [v("y")].into());
        assert_eq!(default_induction_var(&f("(y = z)")), v("y"));
        assert_eq!(default_induction_var(&f("(x = y)")), v("x"));
        assert_eq!(default_induction_var(&f("(0 = 0)")), v("x"));
    }

    #[test]
    fn truth_schemes() {
        let phi = f("(x = 0)");
        let int = gen_int(&phi).unwrap();
        assert!(int.is_sentence());
        assert_eq!(int.depth(), 6);
        assert!(gen_int(&f("(x = y)")).is_err());

        let loccoll = gen_loccoll(&f("T(y)"), &v("x"), &v("y")).unwrap();
        assert_eq!(loccoll.free_vars(), [v("a")].into());
        assert!(loccoll.to_string().contains("(T(y) & @dpt(y, c))"));

        let locind = gen_locind(&phi, &v("x"));
        assert!(locind.is_sentence());
        assert_eq!(locind.depth(), 5);

        let gr = gen_gr();
        assert!(gr.is_sentence());
        assert_eq!(gr.to_string(), "A p. ((@sent(p) & @pr(p)) -> T(p))");
        assert_eq!(parse_formula(&gr.to_string()).unwrap(), gr);
    }
}
