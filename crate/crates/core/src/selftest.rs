//! Brute-force verification suites behind `veritas selftest`.

use std::fmt;

use rand::Rng;

use crate::coding::{decode_formula, encode_formula};
use crate::gen::{random_formula, rng, FormulaShape};
use crate::satclass::{
    check_collection_instance, check_comp, check_extensionality, check_strreg, extend,
    BasePredicate, CollectionBound,
};
use crate::structural::template;
use crate::structure::FiniteStructure;
use crate::syntax::{Assignment, Formula, Variable};
use crate::truth::{eval, eval_restricted, satisfies, EvalBudget, TruthValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    /// The first few failures, described.
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(describe());
        }
    }

    fn error(&mut self, e: impl fmt::Display) {
        self.record(false, || e.to_string());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{:<12} {:>6} cases  {verdict}", self.name, self.cases)?;
        for failure in &self.failures {
            write!(f, "\n    {failure}")?;
        }
        Ok(())
    }
}

/// Runs every suite. `small` limits structures to `N ≤ 4` and trims the
/// sample counts.
pub fn run(small: bool) -> Vec<SuiteResult> {
    let scale = if small { 1 } else { 4 };
    let max_n = if small { 4 } else { 5 };
    vec![
        coding(500 * scale),
        templates(500 * scale),
        restricted_truth(200 * scale),
        extension(max_n, 10 * scale),
        collection(4, 10 * scale),
    ]
}

fn coding(samples: usize) -> SuiteResult {
    let mut result = SuiteResult::new("coding");
    let mut r = rng(1);
    let shape = FormulaShape::sentences(4, 6).with_free(&["a"]);
    for _ in 0..samples {
        let f = random_formula(&mut r, &shape);
        match decode_formula(&encode_formula(&f)) {
            Ok(g) => result.record(g == f, || format!("{f} decodes to {g}")),
            Err(e) => result.error(e),
        }
    }
    result
}

fn templates(samples: usize) -> SuiteResult {
    let mut result = SuiteResult::new("templates");
    let mut r = rng(2);
    let shape = FormulaShape::sentences(4, 6).with_free(&["a", "b"]);
    for _ in 0..samples {
        let f = random_formula(&mut r, &shape);
        let outcome = template(&f).and_then(|d| {
            let again = template(&d.template)?;
            Ok((d.reconstruct() == f, again.template == d.template))
        });
        match outcome {
            Ok((rebuilt, idempotent)) => {
                result.record(rebuilt && idempotent, || format!("template of {f} misbehaves"))
            }
            Err(e) => result.error(e),
        }
    }
    result
}

fn restricted_truth(samples: usize) -> SuiteResult {
    let mut result = SuiteResult::new("tr_c");
    let mut r = rng(3);
    let shape = FormulaShape::sentences(4, 5);
    let budget = EvalBudget::new(20);
    for _ in 0..samples {
        let f = random_formula(&mut r, &shape);
        let c = r.gen_range(0..=4);
        let outcome = eval_restricted(&f, c, &budget).and_then(|restricted| {
            let expected = if f.depth() > c {
                TruthValue::False
            } else {
                eval(&f, &budget)?
            };
            Ok(restricted == expected)
        });
        match outcome {
            Ok(ok) => result.record(ok, || format!("Tr_{c} disagrees on {f}")),
            Err(e) => result.error(e),
        }
    }
    result
}

fn random_formulas(r: &mut impl Rng, count: usize, depth: usize, truth_atoms: bool) -> Vec<Formula> {
    let mut shape = FormulaShape::sentences(depth, 4).with_free(&["x", "y"]);
    shape.truth_atoms = truth_atoms;
    (0..count).map(|_| random_formula(r, &shape)).collect()
}

/// `extend` over the equality base: the checkers pass and every cell agrees
/// with Tarski truth in the structure.
fn extension(max_n: usize, runs_per_size: usize) -> SuiteResult {
    let mut result = SuiteResult::new("extend");
    let mut r = rng(4);
    for n in 1..=max_n {
        let structure = FiniteStructure::saturating(n).expect("positive size");
        let base = BasePredicate::atomic(&structure);
        for _ in 0..runs_per_size {
            let count = r.gen_range(1..=4);
            let formulas = random_formulas(&mut r, count, 3, false);
            let sat = match extend(&structure, &formulas, &base) {
                Ok(sat) => sat,
                Err(e) => {
                    result.error(e);
                    continue;
                }
            };
            let comp = check_comp(&sat, &structure);
            result.record(comp.is_clean(), || format!("N={n}: {comp}"));
            match check_strreg(&sat, &structure) {
                Ok(report) => result.record(report.is_clean(), || format!("N={n}: {report}")),
                Err(e) => result.error(e),
            }
            let ext = check_extensionality(&sat, &structure);
            result.record(ext.is_clean(), || format!("N={n}: {ext}"));
            for f in sat.closure() {
                for alpha in Assignment::enumerate(&f.free_vars(), n as u64) {
                    match satisfies(f, &structure, &alpha, &|_| false) {
                        Ok(truth) => result.record(truth == sat.holds(f, &alpha), || {
                            format!("N={n}: S({f}, {alpha}) differs from truth")
                        }),
                        Err(e) => result.error(e),
                    }
                }
            }
        }
    }
    result
}

/// Collection instances with `T` read through an extension.
fn collection(max_n: usize, runs_per_size: usize) -> SuiteResult {
    let mut result = SuiteResult::new("collection");
    let mut r = rng(5);
    let (x, y) = (Variable::named("x"), Variable::named("y"));
    for n in 1..=max_n {
        let structure = FiniteStructure::saturating(n).expect("positive size");
        let base = BasePredicate::atomic(&structure);
        for _ in 0..runs_per_size {
            let sentences = random_formulas(&mut r, 3, 2, false)
                .into_iter()
                .map(|f| f.universal_closure())
                .collect::<Vec<_>>();
            let sat = match extend(&structure, &sentences, &base) {
                Ok(sat) => sat,
                Err(e) => {
                    result.error(e);
                    continue;
                }
            };
            for phi in random_formulas(&mut r, 3, 3, true) {
                match check_collection_instance(&sat, &structure, &phi, &x, &y, CollectionBound::Inclusive) {
                    Ok(ok) => result.record(ok, || format!("N={n}: collection fails for {phi}")),
                    Err(e) => result.error(e),
                }
            }
        }
    }
    result
}
