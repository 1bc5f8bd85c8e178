use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use veritas::coding::{decode, encode_formula, encode_term, Code, Decoded};
use veritas::satclass::{
    check_collection_instance, check_comp, check_ct_restr, check_extensionality, check_int,
    check_strreg, disintegrate, extend, extend_chain, CollectionBound, Report,
    SatPredicate,
};
use veritas::schemes::{
    default_induction_var, gen_collection, gen_gr, gen_induction, gen_int, gen_loccoll,
    gen_locind, reflect_check, verify_proof, ProofObject, Verdict,
};
use veritas::selftest;
use veritas::structural::{equivalent, similar, template};
use veritas::structure::FiniteStructure;
use veritas::syntax::{parse_formula, parse_term, Formula};
use veritas::truth::{eval, eval_in_structure, eval_restricted, EvalBudget, TruthValue};

use crate::input;
use crate::{CheckKind, Cli, Command, SchemeKind};

pub const USAGE: u8 = 64;

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub status: u8,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        let mut text = text.into();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        Outcome { text, json, status: 0 }
    }

    fn status(mut self, status: u8) -> Self {
        self.status = status;
        self
    }
}

fn verdict(b: bool) -> Outcome {
    Outcome::ok(b.to_string(), json!({ "result": b })).status(u8::from(!b))
}

fn truth(value: TruthValue) -> Outcome {
    let status = match value {
        TruthValue::True => 0,
        TruthValue::False => 1,
        TruthValue::Unknown => 2,
    };
    Outcome::ok(value.to_string(), json!({ "result": value.to_string() })).status(status)
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|i| i.to_string()).collect()
}

fn describe(f: &Formula) -> Value {
    json!({
        "formula": f.to_string(),
        "depth": f.depth(),
        "free": strings(f.free_vars()),
    })
}

fn report(r: &Report) -> Outcome {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "clause": v.clause,
                "formula": v.formula.to_string(),
                "assignment": v.assignment.to_string(),
                "detail": v.detail,
            })
        })
        .collect();
    Outcome::ok(r.to_string(), json!({ "checked": r.checked, "violations": violations }))
        .status(u8::from(!r.is_clean()))
}

fn sat_json(sat: &SatPredicate) -> Value {
    let entries: Vec<Value> = sat
        .entries()
        .map(|(f, a)| json!([f.to_string(), a.to_string()]))
        .collect();
    json!({ "closure": strings(sat.closure()), "entries": entries })
}

fn summary(sat: &SatPredicate) -> String {
    format!("{} formulas, {} true cells", sat.closure().len(), sat.len())
}

fn oracle(path: &Path) -> Result<BTreeSet<num_bigint::BigUint>> {
    let text = input::read(path)?;
    let mut out = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let code = match line.parse::<Code>() {
            Ok(code) => code,
            Err(_) => encode_formula(
                &parse_formula(line).with_context(|| format!("{}:{}", path.display(), idx + 1))?,
            ),
        };
        out.insert(code.into_value());
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    Ok(match &cli.command {
        Command::Parse { text } => {
            let text = if text == "-" { input::read(Path::new("-"))? } else { text.clone() };
            let text = text.trim();
            match parse_formula(text) {
                Ok(f) => Outcome::ok(f.to_string(), json!({ "kind": "formula", "text": f.to_string() })),
                Err(formula_error) => match parse_term(text) {
                    Ok(t) => Outcome::ok(t.to_string(), json!({ "kind": "term", "text": t.to_string() })),
                    Err(_) => bail!("parsing `{text}`: {formula_error}"),
                },
            }
        }
        Command::Depth { formula } => {
            let f = input::formula(formula)?;
            Outcome::ok(f.depth().to_string(), json!({ "depth": f.depth() }))
        }
        Command::Template { formula } => {
            let f = input::formula(formula)?;
            let d = template(&f)?;
            let args: Vec<String> = d
                .placeholders()
                .iter()
                .zip(&d.args)
                .map(|(v, t)| format!("{v} := {t}"))
                .collect();
            let bound: Vec<String> = d
                .bound_renaming
                .iter()
                .map(|(w, v)| format!("{w} := {v}"))
                .collect();
            let text = format!(
                "template: {}\nargs: {}\nbound: {}\n",
                d.template,
                args.join(", "),
                bound.join(", ")
            );
            let renaming: Vec<Value> = d
                .bound_renaming
                .iter()
                .map(|(w, v)| json!([w.to_string(), v.to_string()]))
                .collect();
            Outcome::ok(
                text,
                json!({
                    "template": d.template.to_string(),
                    "args": strings(&d.args),
                    "bound_renaming": renaming,
                }),
            )
        }
        Command::Sim { first, second } => {
            verdict(similar(&input::formula(first)?, &input::formula(second)?)?)
        }
        Command::Equiv {
            first,
            second,
            structure,
        } => {
            let s = structure.as_deref().map(input::structure).transpose()?;
            verdict(equivalent(
                &input::formula(first)?,
                &input::formula(second)?,
                s.as_ref(),
            )?)
        }
        Command::Code { text } => {
            let text = text.trim();
            let code = match parse_formula(text) {
                Ok(f) => encode_formula(&f),
                Err(formula_error) => match parse_term(text) {
                    Ok(t) => encode_term(&t),
                    Err(_) => bail!("parsing `{text}`: {formula_error}"),
                },
            };
            Outcome::ok(code.to_string(), json!({ "code": code.to_string() }))
        }
        Command::Decode { code } => {
            let code: Code = code.parse().with_context(|| format!("`{code}` is not a natural number"))?;
            let decoded = decode(&code).with_context(|| format!("decoding {code}"))?;
            let kind = match decoded {
                Decoded::Term(_) => "term",
                Decoded::Formula(_) => "formula",
            };
            Outcome::ok(decoded.to_string(), json!({ "kind": kind, "text": decoded.to_string() }))
        }
        Command::Eval {
            formula,
            cap,
            tr_depth,
            oracle: oracle_file,
            structure,
        } => {
            let f = input::formula(formula)?;
            let oracle = oracle_file.as_deref().map(oracle).transpose()?;
            match structure {
                Some(path) => {
                    let s = input::structure(path)?;
                    let value = match tr_depth {
                        Some(c) if f.depth() > *c => false,
                        _ => eval_in_structure(&f, &s, oracle.as_ref())?,
                    };
                    truth(TruthValue::from_bool(value))
                }
                None => {
                    let mut budget = EvalBudget::new(cap.cap);
                    if let Some(o) = oracle {
                        budget = budget.with_oracle(o);
                    }
                    truth(match tr_depth {
                        Some(c) => eval_restricted(&f, *c, &budget)?,
                        None => eval(&f, &budget)?,
                    })
                }
            }
        }
        Command::Extend {
            structure,
            formulas,
            base,
            out,
        } => {
            let s = input::structure(structure)?;
            let fs = input::formulas(&input::read(formulas)?, formulas)?;
            let base = input::base(base.as_deref(), &s)?;
            let sat = extend(&s, &fs, &base)?;
            let json = sat_json(&sat);
            match out {
                Some(path) => {
                    input::write(path, &sat.render())?;
                    Outcome::ok(format!("{}; wrote {}", summary(&sat), path.display()), json)
                }
                None => Outcome::ok(sat.render(), json),
            }
        }
        Command::ExtendChain {
            structure,
            stages,
            base,
            out,
        } => {
            let s = input::structure(structure)?;
            let stages = input::stages(&input::read(stages)?, stages)?;
            let base = input::base(base.as_deref(), &s)?;
            let chain = extend_chain(&s, &stages, base)?;
            let mut text = String::new();
            for (j, stage) in chain.iter().enumerate() {
                let _ = writeln!(text, "stage {j}: {}", summary(stage));
            }
            text.push_str("stable\n");
            let last = chain.last().expect("the seed is always present");
            if let Some(path) = out {
                input::write(path, &last.render())?;
                let _ = writeln!(text, "wrote {}", path.display());
            }
            let json = json!({
                "stages": chain.iter().map(sat_json).collect::<Vec<_>>(),
                "stable": true,
            });
            Outcome::ok(text, json)
        }
        Command::Check { kind } => check(kind)?,
        Command::Disintegrate { sat, phi } => {
            let sat = input::sat(sat)?;
            let fiber = disintegrate(&sat, &input::formula(phi)?)?;
            let lines: Vec<String> = fiber.iter().map(|a| format!("{{{a}}}")).collect();
            let mut text = lines.join("\n");
            if lines.is_empty() {
                text.push_str("(empty)");
            }
            Outcome::ok(text, json!({ "assignments": lines }))
        }
        Command::Scheme { kind, phi, vars } => {
            let phi = || -> Result<Formula> {
                match phi {
                    Some(p) => input::formula(p),
                    None => bail!("this scheme needs --phi"),
                }
            };
            let (x, y) = (input::variable(&vars.x)?, input::variable(&vars.y)?);
            let f = match kind {
                SchemeKind::Coll => gen_collection(&phi()?, &x, &y)?,
                SchemeKind::Ind => {
                    let phi = phi()?;
                    gen_induction(&phi, &default_induction_var(&phi))
                }
                SchemeKind::Int => gen_int(&phi()?)?,
                SchemeKind::Loccoll => gen_loccoll(&phi()?, &x, &y)?,
                SchemeKind::Locind => {
                    let phi = phi()?;
                    gen_locind(&phi, &default_induction_var(&phi))
                }
                SchemeKind::Gr => gen_gr(),
            };
            Outcome::ok(f.to_string(), describe(&f))
        }
        Command::ProveVerify { file } => {
            let proof = proof(file)?;
            let v = verify_proof(&proof);
            Outcome::ok(v.to_string(), verdict_json(&v)).status(u8::from(!matches!(v, Verdict::Accept { .. })))
        }
        Command::Reflect { file, cap } => {
            let proof = proof(file)?;
            let v = verify_proof(&proof);
            if !matches!(v, Verdict::Accept { .. }) {
                return Ok(Outcome::ok(v.to_string(), verdict_json(&v)).status(1));
            }
            let r = reflect_check(&proof, &EvalBudget::new(cap.cap))?;
            let status = if !r.alarms().is_empty() {
                1
            } else if r.values.iter().any(|(_, v)| *v == TruthValue::Unknown) {
                2
            } else {
                0
            };
            let lines: Vec<Value> = r
                .values
                .iter()
                .map(|(n, v)| json!({ "line": n, "value": v.to_string() }))
                .collect();
            Outcome::ok(r.to_string(), json!({ "lines": lines, "alarms": r.alarms() })).status(status)
        }
        Command::Selftest { small } => {
            let suites = selftest::run(*small);
            let passed = suites.iter().all(|s| s.passed());
            let text: Vec<String> = suites.iter().map(ToString::to_string).collect();
            let json: Vec<Value> = suites
                .iter()
                .map(|s| json!({ "suite": s.name, "cases": s.cases, "failures": s.failures }))
                .collect();
            Outcome::ok(text.join("\n"), json!({ "suites": json, "passed": passed }))
                .status(u8::from(!passed))
        }
    })
}

fn proof(path: &Path) -> Result<ProofObject> {
    ProofObject::parse(&input::read(path)?).with_context(|| format!("in {}", path.display()))
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Accept { depth_bound } => json!({ "verdict": "accept", "depth_bound": depth_bound }),
        Verdict::Reject { line, reason } => {
            json!({ "verdict": "reject", "line": line, "reason": reason })
        }
    }
}

fn load(files: &crate::SatFiles) -> Result<(SatPredicate, FiniteStructure)> {
    let s = input::structure(&files.structure)?;
    let sat = input::sat(&files.sat)?;
    sat.well_formed(&s).with_context(|| format!("in {}", files.sat.display()))?;
    Ok((sat, s))
}

fn check(kind: &CheckKind) -> Result<Outcome> {
    Ok(match kind {
        CheckKind::Comp { files } => {
            let (sat, s) = load(files)?;
            report(&check_comp(&sat, &s))
        }
        CheckKind::Strreg { files } => {
            let (sat, s) = load(files)?;
            report(&check_strreg(&sat, &s)?)
        }
        CheckKind::Ext { files } => {
            let (sat, s) = load(files)?;
            report(&check_extensionality(&sat, &s))
        }
        CheckKind::Ct { depth, files } => {
            let (sat, s) = load(files)?;
            report(&check_ct_restr(&sat, &s, *depth)?)
        }
        CheckKind::Int { phi, files } => {
            let (sat, s) = load(files)?;
            verdict(check_int(&sat, &s, &input::formula(phi)?)?)
        }
        CheckKind::Coll {
            phi,
            vars,
            strict,
            files,
        } => {
            let (sat, s) = load(files)?;
            let bound = if *strict {
                CollectionBound::Strict
            } else {
                CollectionBound::Inclusive
            };
            let (x, y) = (input::variable(&vars.x)?, input::variable(&vars.y)?);
            verdict(check_collection_instance(&sat, &s, &input::formula(phi)?, &x, &y, bound)?)
        }
    })
}
