//! Acceptance criteria, one pass/fail line each. Exits nonzero if any fail.

mod support;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use veritas::coding::{decode, decode_formula, encode_formula, encode_term, formula_order, Decoded};
use veritas::gen::{random_closed_term, random_formula, rng, term_with_value, FormulaShape};
use veritas::satclass::{
    check_collection_instance, check_comp, check_extensionality, check_strreg, extend, extend_chain,
    BasePredicate, CollectionBound, SatPredicate,
};
use veritas::schemes::{reflect_check, verify_proof, ProofObject, Verdict};
use veritas::structural::{equivalent, similar, template, TemplateDecomposition};
use veritas::structure::FiniteStructure;
use veritas::syntax::{parse_formula, Formula, Marker, Term, Variable};
use veritas::truth::{eval, eval_restricted, EvalBudget, TruthValue};

use support::*;

type Outcome = Result<String, String>;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn v(s: &str) -> Variable {
    Variable::named(s)
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn template_example() -> Outcome {
    let start = Instant::now();
    let input = f("A x. E x. A z. (((x + S(0)) * (((y * S(0)) + 0) + (y + z))) = ((z * (x + S(0))) * S(y)))");
    let d = template(&input).map_err(|e| e.to_string())?;
    let (w0, w1) = (Variable::Bound(0), Variable::Bound(1));
    let p = |i| Term::Var(Variable::Placeholder(i));
    let w = |v: &Variable| Term::Var(v.clone());
    let expected = Formula::forall(
        w0.clone(),
        Formula::exists(
            w0.clone(),
            Formula::forall(
                w1.clone(),
                Formula::eq(
                    Term::mul(Term::add(w(&w0), p(0)), Term::add(p(1), Term::add(p(2), w(&w1)))),
                    Term::mul(Term::mul(w(&w1), Term::add(w(&w0), p(3))), p(4)),
                ),
            ),
        ),
    );
    let one = Term::succ(Term::Zero);
    let y = Term::var("y");
    let args = vec![
        one.clone(),
        Term::add(Term::mul(y.clone(), one.clone()), Term::Zero),
        y.clone(),
        one,
        Term::succ(y),
    ];
    ensure(d.template == expected, || format!("got {}", d.template))?;
    ensure(d.args == args, || "argument list differs".into())?;
    ensure(d.reconstruct() == input, || "reconstruction differs".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("exact template and args in {elapsed:?}"))
}

fn similarity_triptych() -> Outcome {
    let pairs = [
        ("E x. A x. ((x + y) = 0)", "E y. A y. ((y + x) = (z * S(S(S(0)))))"),
        ("E x. A y. ((x + y) = 0)", "E y. A y. ((x + y) = 0)"),
        ("E x. A y. ((x + y) = 0)", "E x. A y. ((x + y) = y)"),
    ];
    let got: Vec<bool> = pairs
        .iter()
        .map(|(a, b)| similar(&f(a), &f(b)).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure(got == [true, false, false], || format!("got {got:?}"))?;
    Ok("(true, false, false)".into())
}

/// Refills a template with `args`, renaming each bound index to a distinct
/// name from `names`.
fn refill(d: &TemplateDecomposition, args: Vec<Term>, names: &[Variable]) -> Formula {
    let bound_renaming = d
        .bound_renaming
        .iter()
        .map(|(w, _)| match w {
            Variable::Bound(i) => (w.clone(), names[*i as usize].clone()),
            other => panic!("unexpected binder {other}"),
        })
        .collect();
    TemplateDecomposition {
        template: d.template.clone(),
        bound_renaming,
        args,
    }
    .reconstruct()
}

fn shuffled_names(r: &mut impl Rng) -> Vec<Variable> {
    let mut names: Vec<Variable> = ["x", "y", "z", "u", "w", "p", "q", "r"].iter().map(|n| v(n)).collect();
    names.shuffle(r);
    names
}

fn structural_equivalence() -> Outcome {
    let phi = f("E x. ((x + S(0)) = (0 + S(0)))");
    let psi = f("E y. ((y + ((S(0) + 0) * S(0))) = S(0))");
    ensure(equivalent(&phi, &psi, None) == Ok(true), || "the example pair is not equivalent".into())?;
    let d = template(&phi).map_err(|e| e.to_string())?;
    let values: Vec<u64> = d.args.iter().map(|t| nat_value(t).try_into().unwrap()).collect();
    let mut r = rng(30);
    let (mut perturbed, mut same) = (0, 0);
    for _ in 0..1000 {
        let mut target = values.clone();
        loop {
            for t in target.iter_mut() {
                if r.gen_bool(0.5) {
                    *t = r.gen_range(0..6);
                }
            }
            if target != values {
                break;
            }
        }
        let args: Vec<Term> = target.iter().map(|&n| term_with_value(&mut r, n, 7)).collect();
        let got: Vec<u64> = args.iter().map(|t| nat_value(t).try_into().unwrap()).collect();
        ensure(got == target, || "generated arguments have the wrong values".into())?;
        let variant = refill(&d, args, &shuffled_names(&mut r));
        if equivalent(&phi, &variant, None) != Ok(false) {
            return Err(format!("{variant} reported equivalent"));
        }
        perturbed += 1;

        let args: Vec<Term> = values.iter().map(|&n| term_with_value(&mut r, n, 7)).collect();
        let control = refill(&d, args, &shuffled_names(&mut r));
        if equivalent(&phi, &control, None) != Ok(true) {
            return Err(format!("same-valued {control} reported inequivalent"));
        }
        same += 1;
    }
    Ok(format!("example true; {perturbed} perturbed variants false, {same} same-valued controls true"))
}

fn closed_term_values() -> Outcome {
    let t = Term::add(Term::succ(Term::Zero), Term::succ(Term::succ(Term::Zero)));
    ensure(t.closed_value() == Ok(3u32.into()), || "val(S(0)+S(S(0))) is not 3".into())?;
    let mut r = rng(40);
    for _ in 0..10_000 {
        let t = random_closed_term(&mut r, 12);
        ensure(t.size() <= 12, || format!("{t} is too large"))?;
        let value = t.closed_value().map_err(|e| e.to_string())?;
        ensure(value == nat_value(&t), || format!("val({t}) = {value}"))?;
        let root = match &t {
            Term::Zero => 0u32.into(),
            Term::Succ(a) => a.closed_value().unwrap() + 1u32,
            Term::Add(a, b) => a.closed_value().unwrap() + b.closed_value().unwrap(),
            Term::Mul(a, b) => a.closed_value().unwrap() * b.closed_value().unwrap(),
            Term::Var(_) => unreachable!(),
        };
        ensure(value == root, || format!("val is not a homomorphism at {t}"))?;
    }
    Ok("val = 3; homomorphic on 10000 random closed terms".into())
}

fn strreg_of_truth() -> Outcome {
    let mut r = rng(50);
    let budget = EvalBudget::new(12);
    let shape = FormulaShape::sentences(4, 4);
    let (mut pairs, mut decided) = (0, 0);
    while pairs < 1000 {
        let phi = random_formula(&mut r, &shape);
        let d = template(&phi).map_err(|e| e.to_string())?;
        let values: Vec<BigValue> = d.args.iter().map(nat_value).collect();
        if values.iter().any(|v| *v > 20u32.into()) {
            continue;
        }
        let args: Vec<Term> = values
            .iter()
            .map(|n| term_with_value(&mut r, n.try_into().unwrap(), 7))
            .collect();
        let psi = refill(&d, args, &shuffled_names(&mut r));
        ensure(equivalent(&phi, &psi, None) == Ok(true), || format!("{phi} and {psi} not equivalent"))?;
        pairs += 1;
        let a = eval(&phi, &budget).map_err(|e| e.to_string())?;
        let b = eval(&psi, &budget).map_err(|e| e.to_string())?;
        if a.is_decided() && b.is_decided() {
            decided += 1;
            ensure(a == b, || format!("{phi} is {a} but {psi} is {b}"))?;
        }
    }
    Ok(format!("0 disagreements over {pairs} pairs ({decided} decided on both sides)"))
}

type BigValue = num_bigint::BigUint;

fn restricted_truth() -> Outcome {
    let mut r = rng(60);
    let budget = EvalBudget::new(10);
    let shape = FormulaShape::sentences(6, 4);
    let (mut below, mut above) = (0, 0);
    for c in 0..=4 {
        for _ in 0..500 {
            let phi = random_formula(&mut r, &shape);
            let restricted = eval_restricted(&phi, c, &budget).map_err(|e| e.to_string())?;
            if depth(&phi) <= c {
                below += 1;
                let full = eval(&phi, &budget).map_err(|e| e.to_string())?;
                ensure(restricted == full, || format!("Tr_{c}({phi}) = {restricted}, eval = {full}"))?;
            } else {
                above += 1;
                ensure(restricted == TruthValue::False, || format!("Tr_{c}({phi}) = {restricted}"))?;
            }
        }
    }
    Ok(format!("{below} within depth agree with eval, {above} above depth are false"))
}

fn arithmetical(r: &mut impl Rng, count: usize, depth: usize) -> Vec<Formula> {
    let shape = FormulaShape::sentences(depth, 4).with_free(&["x", "y"]);
    (0..count).map(|_| random_formula(r, &shape)).collect()
}

fn some_structure(r: &mut impl Rng) -> FiniteStructure {
    let n = r.gen_range(1..=5);
    if r.gen_bool(0.5) {
        FiniteStructure::saturating(n).unwrap()
    } else {
        random_structure(r, n)
    }
}

/// A coherent base over a random formula set, built by brute force.
fn random_base(r: &mut impl Rng, s: &FiniteStructure) -> Result<BasePredicate, String> {
    let count = r.gen_range(1..=3);
    let sat = brute_base(s, &arithmetical(r, count, 3));
    BasePredicate::new(sat, s).map_err(|e| format!("brute-force base rejected: {e}"))
}

/// Everything the checkers have to say about an output, with the base.
fn findings(out: &SatPredicate, s: &FiniteStructure, base: &BasePredicate) -> Result<Vec<String>, String> {
    let mut found: Vec<String> = Vec::new();
    found.extend(check_comp(out, s).violations.iter().map(ToString::to_string));
    let strreg = check_strreg(out, s).map_err(|e| e.to_string())?;
    found.extend(strreg.violations.iter().map(ToString::to_string));
    found.extend(check_extensionality(out, s).violations.iter().map(ToString::to_string));
    for (g, a) in disagreements(out, base.predicate(), base.old_set(), s.size()) {
        found.push(format!("base disagreement at {g} under {{{a}}}"));
    }
    Ok(found)
}

fn engine_soundness() -> Outcome {
    let mut r = rng(70);
    let mut slowest = Duration::ZERO;
    let mut cells = 0;
    for run in 0..200 {
        let start = Instant::now();
        let s = some_structure(&mut r);
        let base = random_base(&mut r, &s)?;
        let count = r.gen_range(1..=6);
        let phis = arithmetical(&mut r, count, 3);
        let out = extend(&s, &phis, &base).map_err(|e| format!("run {run}: {e}"))?;
        let found = findings(&out, &s, &base)?;
        ensure(found.is_empty(), || format!("run {run}: {}", found[0]))?;
        let closure = closure_of(&[phis, base.old_set().iter().cloned().collect()].concat());
        ensure(*out.closure() == closure, || format!("run {run}: unexpected closure"))?;
        let tarski = brute_base(&s, &closure.iter().cloned().collect::<Vec<_>>());
        ensure(disagreements(&out, &tarski, &closure, s.size()).is_empty(), || {
            format!("run {run}: output differs from truth in the structure")
        })?;
        cells += all_cells(&closure, s.size()).len();
        slowest = slowest.max(start.elapsed());
        ensure(slowest < Duration::from_secs(10), || format!("run {run} took {slowest:?}"))?;
    }
    Ok(format!("200 runs, {cells} cells checked, slowest run {slowest:?}"))
}

fn mutation_sensitivity() -> Outcome {
    let mut r = rng(80);
    let mut detected = 0;
    while detected < 100 {
        let s = some_structure(&mut r);
        let base = random_base(&mut r, &s)?;
        let count = r.gen_range(1..=4);
        let out = extend(&s, &arithmetical(&mut r, count, 3), &base).map_err(|e| e.to_string())?;
        let cells = all_cells(out.closure(), s.size());
        for _ in 0..5 {
            let (g, a) = cells.choose(&mut r).expect("nonempty closure");
            let mut mutant = out.clone();
            mutant.flip(g, a).map_err(|e| e.to_string())?;
            let found = findings(&mutant, &s, &base)?;
            ensure(!found.is_empty(), || format!("flipping {g} under {{{a}}} went unnoticed"))?;
            detected += 1;
        }
    }
    Ok(format!("{detected}/{detected} single-cell flips detected"))
}

fn stabilisation() -> Outcome {
    let mut r = rng(90);
    for run in 0..50 {
        let s = some_structure(&mut r);
        let seed = random_base(&mut r, &s)?;
        let (n1, n2) = (r.gen_range(1..=4), r.gen_range(1..=4));
        let stage1 = arithmetical(&mut r, n1, 3);
        let stage2 = arithmetical(&mut r, n2, 3);
        let chain = extend_chain(&s, &[stage1.clone(), stage2], seed.clone())
            .map_err(|e| format!("run {run}: {e}"))?;
        ensure(chain.len() == 3, || format!("run {run}: {} stages", chain.len()))?;
        let direct = extend(&s, &stage1, &seed).map_err(|e| e.to_string())?;
        ensure(chain[1] == direct, || format!("run {run}: first stage is not a plain extension"))?;
        let closure = chain[1].closure().clone();
        ensure(closure.is_subset(chain[2].closure()), || format!("run {run}: closure shrank"))?;
        let bad = disagreements(&chain[1], &chain[2], &closure, s.size());
        ensure(bad.is_empty(), || format!("run {run}: stages disagree at {}", bad[0].0))?;
    }
    Ok("50 two-stage chains agree with stage 1 on its closure".into())
}

/// Bit position of `(x, y)` in the structure of size `n` within a key over
/// sizes 1..=4.
fn bit(n: usize, x: usize, y: usize) -> u32 {
    let offset: usize = (1..n).map(|k| k * k).sum();
    (offset + x * n + y) as u32
}

fn quantify(key: u32, over_x: bool, universal: bool) -> u32 {
    let mut out = 0;
    for n in 1..=4 {
        for x in 0..n {
            for y in 0..n {
                let mut values = (0..n).map(|d| {
                    let (a, b) = if over_x { (d, y) } else { (x, d) };
                    key >> bit(n, a, b) & 1 == 1
                });
                let value = if universal { values.all(|b| b) } else { values.any(|b| b) };
                if value {
                    out |= 1 << bit(n, x, y);
                }
            }
        }
    }
    out
}

/// Every formula of depth at most 3 over a fixed set of atoms in `x`, `y`,
/// one representative per truth table across the structures. Tables of
/// compound formulae are derived from those of their parts.
fn formulas_up_to_depth_three(key_of: &dyn Fn(&Formula) -> u32) -> Vec<(u32, Formula)> {
    let atoms = [
        "(x = y)",
        "(x = 0)",
        "(y = S(x))",
        "((x + x) = y)",
        "((x * y) = S(0))",
        "T(x)",
        "T(y)",
    ];
    let mut seen: BTreeMap<u32, Formula> = BTreeMap::new();
    let mut level: Vec<(u32, Formula)> = Vec::new();
    for a in atoms {
        let g = f(a);
        let k = key_of(&g);
        if let Entry::Vacant(e) = seen.entry(k) {
            e.insert(g.clone());
            level.push((k, g));
        }
    }
    let mut all: Vec<(u32, Formula)> = level.clone();
    for _ in 0..3 {
        let mut next: Vec<(u32, Formula)> = Vec::new();
        let mut add = |k: u32, build: &dyn Fn() -> Formula, next: &mut Vec<(u32, Formula)>| {
            if let Entry::Vacant(e) = seen.entry(k) {
                let g = build();
                e.insert(g.clone());
                next.push((k, g));
            }
        };
        let mask = (1u32 << 30) - 1;
        for (k, g) in &level {
            add(!k & mask, &|| Formula::not(g.clone()), &mut next);
            for (over_x, name) in [(true, "x"), (false, "y")] {
                add(quantify(*k, over_x, false), &|| Formula::exists(v(name), g.clone()), &mut next);
                add(quantify(*k, over_x, true), &|| Formula::forall(v(name), g.clone()), &mut next);
            }
        }
        let fresh: BTreeSet<u32> = level.iter().map(|(k, _)| *k).collect();
        for (ka, a) in &all {
            for (kb, b) in &all {
                if !fresh.contains(ka) && !fresh.contains(kb) {
                    continue;
                }
                add(ka | kb, &|| Formula::or(a.clone(), b.clone()), &mut next);
                add(ka & kb, &|| Formula::and(a.clone(), b.clone()), &mut next);
                add((!ka | kb) & mask, &|| Formula::imp(a.clone(), b.clone()), &mut next);
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    seen.into_iter().collect()
}

fn finite_collection() -> Outcome {
    let structures: Vec<FiniteStructure> = (1..=4).map(|n| FiniteStructure::saturating(n).unwrap()).collect();
    let sentences = [
        f("(0 = 0)"),
        f("~(0 = 0)"),
        f("E x. (x = S(0))"),
        f("A x. (x = 0)"),
        f("A x. E y. (y = S(x))"),
    ];
    let sats: Vec<SatPredicate> = structures
        .iter()
        .map(|s| extend(s, &sentences, &BasePredicate::atomic(s)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let key_of = |g: &Formula| -> u32 {
        let mut key = 0;
        for (s, sat) in structures.iter().zip(&sats) {
            let truth = sat.truth_of_index();
            let n = s.size();
            for x in 0..n {
                for y in 0..n {
                    let mut env = vec![(v("x"), x), (v("y"), y)];
                    if tarski(s, g, &mut env, &truth) {
                        key |= 1 << bit(n, x, y);
                    }
                }
            }
        }
        key
    };
    let family = formulas_up_to_depth_three(&key_of);
    let mut checked = 0;
    let mut r = rng(100);
    for (key, g) in &family {
        ensure(depth(g) <= 3, || format!("{g} is too deep"))?;
        if r.gen_ratio(1, 50) {
            ensure(key_of(g) == *key, || format!("derived truth table of {g} is wrong"))?;
        }
        for (s, sat) in structures.iter().zip(&sats) {
            let ok = check_collection_instance(sat, s, g, &v("x"), &v("y"), CollectionBound::Inclusive)
                .map_err(|e| e.to_string())?;
            ensure(ok, || format!("collection fails for {g} at N={}", s.size()))?;
            checked += 1;
        }
    }
    Ok(format!(
        "{} truth-table classes of depth <= 3 formulae, {checked} instances over N = 1..4",
        family.len()
    ))
}

/// Every formula of AST size at most `max` over a small alphabet.
fn small_formulas(max: usize) -> Vec<Formula> {
    let leaves = [
        Term::Zero,
        Term::var("x"),
        Term::var("y"),
        Term::Var(Variable::Placeholder(0)),
        Term::Var(Variable::Bound(0)),
    ];
    let mut terms: Vec<Vec<Term>> = vec![Vec::new(), leaves.to_vec()];
    for size in 2..max {
        let mut here: Vec<Term> = terms[size - 1].iter().map(|t| Term::succ(t.clone())).collect();
        for left in 1..size - 1 {
            let right = size - 1 - left;
            for a in &terms[left] {
                for b in &terms[right] {
                    here.push(Term::add(a.clone(), b.clone()));
                    here.push(Term::mul(a.clone(), b.clone()));
                }
            }
        }
        terms.push(here);
    }
    let mut formulas: Vec<Vec<Formula>> = vec![Vec::new(); max + 1];
    for size in 2..=max {
        let mut here = Vec::new();
        for t in &terms[size - 1] {
            here.push(Formula::Truth(t.clone()));
            here.push(Formula::Marked(Marker::Sent(t.clone())));
            here.push(Formula::Marked(Marker::Provable(t.clone())));
        }
        for left in 1..size - 1 {
            for a in &terms[left] {
                for b in &terms[size - 1 - left] {
                    here.push(Formula::eq(a.clone(), b.clone()));
                    here.push(Formula::Marked(Marker::Depth(a.clone(), b.clone())));
                    here.push(Formula::Marked(Marker::Subst {
                        code: a.clone(),
                        arg: b.clone(),
                        formula: Box::new(f("(x = 0)")),
                    }));
                }
            }
        }
        for a in &formulas[size - 1] {
            here.push(Formula::not(a.clone()));
        }
        if size >= 3 {
            for a in &formulas[size - 2] {
                for name in ["x", "y"] {
                    here.push(Formula::exists(v(name), a.clone()));
                    here.push(Formula::forall(v(name), a.clone()));
                }
            }
        }
        for left in 1..size - 1 {
            for a in &formulas[left] {
                for b in &formulas[size - 1 - left] {
                    here.push(Formula::or(a.clone(), b.clone()));
                    here.push(Formula::and(a.clone(), b.clone()));
                    here.push(Formula::imp(a.clone(), b.clone()));
                }
            }
        }
        formulas[size] = here;
    }
    formulas.into_iter().flatten().collect()
}

fn coding_round_trip() -> Outcome {
    let small = small_formulas(5);
    let mut codes = BTreeSet::new();
    for g in &small {
        ensure(g.size() <= 5, || format!("{g} is too large"))?;
        let code = encode_formula(g);
        ensure(decode_formula(&code).as_ref() == Ok(g), || format!("{g} does not round-trip"))?;
        ensure(codes.insert(code), || format!("{g} shares its code"))?;
    }
    let mut r = rng(110);
    let mut shape = FormulaShape::sentences(6, 8).with_free(&["a", "b"]);
    shape.truth_atoms = true;
    let mut sample = Vec::new();
    for _ in 0..10_000 {
        let g = random_formula(&mut r, &shape);
        ensure(decode_formula(&encode_formula(&g)).as_ref() == Ok(&g), || format!("{g} does not round-trip"))?;
        let t = random_closed_term(&mut r, 12);
        ensure(decode(&encode_term(&t)) == Ok(Decoded::Term(t.clone())), || format!("{t} does not round-trip"))?;
        sample.push(g);
    }
    for _ in 0..1000 {
        let a = sample.choose(&mut r).unwrap();
        let b = if r.gen_bool(0.1) { a } else { sample.choose(&mut r).unwrap() };
        let c = sample.choose(&mut r).unwrap();
        use std::cmp::Ordering::*;
        ensure((formula_order(a, b) == Equal) == (a == b), || format!("order identifies {a} and {b}"))?;
        ensure(formula_order(a, b) == formula_order(b, a).reverse(), || "order is not antisymmetric".into())?;
        let mut three = [a, b, c];
        three.sort_by(|x, y| formula_order(x, y));
        ensure(formula_order(three[0], three[2]) != Greater, || "order is not transitive".into())?;
    }
    Ok(format!("{} formulae of size <= 5 exhaustively, 10000 random; order laws on 1000 triples", small.len()))
}

fn proof_pipeline() -> Outcome {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");
    let load = |name: &str| -> Result<ProofObject, String> {
        let text = std::fs::read_to_string(format!("{dir}/{name}")).map_err(|e| format!("{name}: {e}"))?;
        ProofObject::parse(&text).map_err(|e| format!("{name}: {e}"))
    };
    let proof = load("desk_proof.txt")?;
    let deepest = proof.lines.iter().map(|l| depth(&l.formula)).max().unwrap_or(0);
    ensure(proof.lines.len() == 15, || format!("{} lines", proof.lines.len()))?;
    ensure(deepest == 4, || format!("deepest line has depth {deepest}"))?;
    let verdict = verify_proof(&proof);
    ensure(verdict == Verdict::Accept { depth_bound: 4 }, || format!("desk proof: {verdict}"))?;
    let report = reflect_check(&proof, &EvalBudget::new(50)).map_err(|e| e.to_string())?;
    ensure(report.alarms().is_empty(), || format!("false lines {:?}", report.alarms()))?;
    for (name, line) in [("bad_mp.txt", 5), ("forward_ref.txt", 3), ("bad_instance.txt", 7)] {
        match verify_proof(&load(name)?) {
            Verdict::Reject { line: got, .. } if got == line => {}
            other => return Err(format!("{name}: {other}, expected rejection at line {line}")),
        }
    }
    let truths = report.values.iter().filter(|(_, v)| *v == TruthValue::True).count();
    Ok(format!(
        "accept depth_bound=4; reflection: {truths} true, {} unknown, 0 false; 3 corruptions rejected at lines 5, 3, 7",
        report.values.len() - truths
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("template example", template_example),
        ("similarity triptych", similarity_triptych),
        ("structural equivalence", structural_equivalence),
        ("closed-term value", closed_term_values),
        ("regularity of truth", strreg_of_truth),
        ("restricted truth", restricted_truth),
        ("extension soundness", engine_soundness),
        ("mutation sensitivity", mutation_sensitivity),
        ("stabilisation", stabilisation),
        ("finite collection", finite_collection),
        ("coding round-trip", coding_round_trip),
        ("proof pipeline", proof_pipeline),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
