mod support;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use veritas::gen::{random_closed_term, random_formula, rng, FormulaShape};
use veritas::schemes::{
    gen_collection, gen_induction, gen_int, gen_loccoll, gen_locind, reflect_check, verify_proof,
    Justification, ProofLine, ProofObject, Verdict, ROBINSON_AXIOMS,
};
use veritas::syntax::{parse_formula, Formula, Term, Variable};
use veritas::truth::{EvalBudget, TruthValue};

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn v(name: &str) -> Variable {
    Variable::named(name)
}

fn desk() -> ProofObject {
    ProofObject::parse(include_str!("data/desk_proof.txt")).unwrap()
}

fn push(proof: &mut ProofObject, formula: Formula, justification: Justification) -> usize {
    proof.lines.push(ProofLine { formula, justification });
    proof.lines.len()
}

fn axiom(id: &str) -> Justification {
    Justification::LogicalAxiom { id: id.into(), instantiation: Default::default() }
}

/// A forward derivation from the Robinson axioms using K, universal
/// instantiation with closed terms, reflexivity and generalization.
fn random_proof(seed: u64, steps: usize) -> ProofObject {
    let mut r = rng(seed);
    let shape = FormulaShape::sentences(2, 3).with_free(&["x", "y"]);
    let mut p = ProofObject::default();
    while p.lines.len() < steps {
        match r.gen_range(0..5) {
            0 => {
                let (id, text) = ROBINSON_AXIOMS.choose(&mut r).unwrap();
                push(&mut p, f(text), Justification::Base(id.to_string()));
            }
            1 => {
                let t = random_closed_term(&mut r, 4);
                push(&mut p, Formula::eq(t.clone(), t), axiom("eq_refl"));
            }
            2 if !p.lines.is_empty() => {
                let i = r.gen_range(1..=p.lines.len());
                let a = p.lines[i - 1].formula.clone();
                let b = random_formula(&mut r, &shape);
                let k = Formula::imp(a.clone(), Formula::imp(b.clone(), a.clone()));
                let j = push(&mut p, k, axiom("k"));
                push(&mut p, Formula::imp(b, a), Justification::ModusPonens(i, j));
            }
            3 => {
                let universals: Vec<usize> = (1..=p.lines.len())
                    .filter(|i| matches!(p.lines[i - 1].formula, Formula::Forall(..)))
                    .collect();
                let Some(&i) = universals.choose(&mut r) else { continue };
                let Formula::Forall(x, body) = p.lines[i - 1].formula.clone() else { unreachable!() };
                let t = random_closed_term(&mut r, 3);
                let instance = body.replace_free(&x, &t);
                let line = Formula::imp(p.lines[i - 1].formula.clone(), instance.clone());
                let j = push(&mut p, line, axiom("all_inst"));
                push(&mut p, instance, Justification::ModusPonens(i, j));
            }
            4 if !p.lines.is_empty() => {
                let i = r.gen_range(1..=p.lines.len());
                let x = v(["x", "y", "z"].choose(&mut r).unwrap());
                let g = Formula::forall(x.clone(), p.lines[i - 1].formula.clone());
                push(&mut p, g, Justification::Generalization(i, x));
            }
            _ => {}
        }
    }
    p
}

fn budget() -> EvalBudget {
    EvalBudget::new(6)
}

fn clash_shape() -> FormulaShape {
    FormulaShape::sentences(3, 3).with_free(&["x", "y", "a", "b", "u", "c", "z"])
}

fn minus(set: BTreeSet<Variable>, drop: &[&Variable]) -> BTreeSet<Variable> {
    set.into_iter().filter(|w| !drop.contains(&w)).collect()
}

/// `out` is free in exactly `kept` plus one variable that `phi` never mentions.
fn one_fresh_parameter(out: &Formula, kept: &BTreeSet<Variable>, phi: &Formula) -> bool {
    let free = out.free_vars();
    let extra: Vec<&Variable> = free.difference(kept).collect();
    kept.is_subset(&free) && extra.len() == 1 && !phi.all_vars().contains(extra[0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_proofs_are_accepted_and_sound(seed in any::<u64>(), steps in 1usize..14) {
        let p = random_proof(seed, steps);
        let verdict = verify_proof(&p);
        let expected = p.lines.iter().map(|l| support::depth(&l.formula)).max().unwrap();
        prop_assert_eq!(verdict, Verdict::Accept { depth_bound: expected });
        let report = reflect_check(&p, &budget()).unwrap();
        prop_assert_eq!(report.values.len(), p.lines.len());
        prop_assert!(report.alarms().is_empty(), "{}", report);
    }

    #[test]
    fn prefixes_of_accepted_proofs_are_accepted(seed in any::<u64>(), cut in 0usize..14) {
        let p = random_proof(seed, 12);
        let n = cut.min(p.lines.len());
        let accepted = matches!(verify_proof(&p.prefix(n)), Verdict::Accept { .. });
        prop_assert!(accepted);
    }

    #[test]
    fn rejection_is_at_the_first_bad_line(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let mut p = random_proof(seed, 10);
        let n = pick.index(p.lines.len()) + 1;
        p.lines[n - 1].formula = Formula::eq(Term::Zero, Term::succ(Term::Zero));
        match verify_proof(&p) {
            Verdict::Reject { line, .. } => prop_assert!(line <= n),
            Verdict::Accept { .. } => prop_assert!(false, "accepted a corrupted line {}", n),
        }
        if let Verdict::Reject { line, .. } = verify_proof(&p) {
            let accepted = matches!(verify_proof(&p.prefix(line - 1)), Verdict::Accept { .. });
            prop_assert!(accepted);
        }
    }

    #[test]
    fn rendered_proofs_parse_back(seed in any::<u64>()) {
        let p = random_proof(seed, 10);
        prop_assert_eq!(ProofObject::parse(&p.render()).unwrap(), p);
    }

    #[test]
    fn collection_binds_only_its_variables(seed in any::<u64>()) {
        let phi = random_formula(&mut rng(seed), &clash_shape());
        let (x, y) = (v("x"), v("y"));
        let out = gen_collection(&phi, &x, &y).unwrap();
        let kept = minus(phi.free_vars(), &[&x, &y]);
        prop_assert!(one_fresh_parameter(&out, &kept, &phi), "{}", out);
        let local = gen_loccoll(&phi, &x, &y).unwrap();
        prop_assert!(one_fresh_parameter(&local, &kept, &phi), "{}", local);
    }

    #[test]
    fn induction_binds_only_its_variable(seed in any::<u64>()) {
        let phi = random_formula(&mut rng(seed), &clash_shape());
        let x = v("x");
        prop_assert_eq!(gen_induction(&phi, &x).free_vars(), minus(phi.free_vars(), &[&x]));
        prop_assert_eq!(gen_locind(&phi, &x).free_vars(), minus(phi.free_vars(), &[&x]));
    }

    #[test]
    fn internal_induction_is_a_sentence(seed in any::<u64>()) {
        let shape = FormulaShape::sentences(3, 3).with_free(&["x"]);
        let phi = random_formula(&mut rng(seed), &shape);
        prop_assert!(gen_int(&phi).unwrap().is_sentence());
    }
}

#[test]
fn desk_proof_is_accepted() {
    let p = desk();
    assert_eq!(p.lines.len(), 15);
    assert_eq!(verify_proof(&p), Verdict::Accept { depth_bound: 4 });
    let report = reflect_check(&p, &EvalBudget::new(50)).unwrap();
    assert!(report.alarms().is_empty());
    let unknown: Vec<usize> = report
        .values
        .iter()
        .filter(|(_, value)| *value == TruthValue::Unknown)
        .map(|(n, _)| *n)
        .collect();
    assert_eq!(unknown, vec![1, 6, 11, 12, 13]);
}

#[test]
fn empty_proof_has_an_empty_report() {
    let p = ProofObject::default();
    assert_eq!(verify_proof(&p), Verdict::Accept { depth_bound: 0 });
    assert!(reflect_check(&p, &budget()).unwrap().values.is_empty());
}

#[test]
fn unsound_declared_axioms_raise_an_alarm() {
    let p = ProofObject::parse(
        "axiom bad: (0 = S(0))\n\
         (0 = S(0)) ; base:bad\n\
         ((0 = S(0)) -> (~(0 = 0) -> (0 = S(0)))) ; ax:k\n\
         (~(0 = 0) -> (0 = S(0))) ; mp:1,2\n",
    )
    .unwrap();
    assert!(matches!(verify_proof(&p), Verdict::Accept { .. }));
    assert_eq!(reflect_check(&p, &budget()).unwrap().alarms(), vec![1]);
}

#[test]
fn undeclared_axioms_are_rejected() {
    let p = ProofObject::parse("(0 = S(0)) ; base:bad\n").unwrap();
    assert!(matches!(verify_proof(&p), Verdict::Reject { line: 1, .. }));
}

#[test]
fn instantiation_must_be_capture_free() {
    let p = ProofObject::parse("(A x. E y. ~(x = y) -> E y. ~(y = y)) ; ax:all_inst\n").unwrap();
    assert!(matches!(verify_proof(&p), Verdict::Reject { line: 1, .. }));
}
