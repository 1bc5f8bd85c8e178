use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{parse_formula, parse_variable, Formula, Variable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// `ax:<id>[k=v,…]`: an instance of a logical axiom schema. The listed
    /// parts are optional; given ones must agree with the instance.
    LogicalAxiom {
        id: String,
        instantiation: BTreeMap<String, String>,
    },
    /// `base:<id>`: a Robinson axiom `q1`…`q7` or a declared axiom.
    Base(String),
    /// `ind:<φ>`: the induction instance for `φ`.
    Induction(Formula),
    /// `mp:i,j`: line `i` is `φ`, line `j` is `φ → ψ`.
    ModusPonens(usize, usize),
    /// `gen:i,v`
    Generalization(usize, Variable),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::LogicalAxiom { id, instantiation } => {
                write!(f, "ax:{id}")?;
                if !instantiation.is_empty() {
                    let parts: Vec<String> =
                        instantiation.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    write!(f, "[{}]", parts.join(","))?;
                }
                Ok(())
            }
            Justification::Base(id) => write!(f, "base:{id}"),
            Justification::Induction(phi) => write!(f, "ind:{phi}"),
            Justification::ModusPonens(i, j) => write!(f, "mp:{i},{j}"),
            Justification::Generalization(i, v) => write!(f, "gen:{i},{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

/// A Hilbert-style derivation. Lines are numbered from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofObject {
    pub lines: Vec<ProofLine>,
    /// Extra base axioms declared with `axiom <id>: <formula>`.
    pub declared: BTreeMap<String, Formula>,
}

/// Splits at commas outside brackets and parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn parse_index(text: &str) -> std::result::Result<usize, String> {
    text.trim()
        .parse::<usize>()
        .map_err(|_| format!("`{}` is not a line number", text.trim()))
}

pub(crate) fn parse_justification(text: &str) -> std::result::Result<Justification, String> {
    let text = text.trim();
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| format!("justification `{text}` lacks a `kind:` prefix"))?;
    let rest = rest.trim();
    match kind.trim() {
        "ax" => {
            let (id, inst) = match rest.split_once('[') {
                Some((id, tail)) => {
                    let body = tail
                        .strip_suffix(']')
                        .ok_or("unterminated `[` in axiom instantiation")?;
                    (id.trim(), body)
                }
                None => (rest, ""),
            };
            let mut instantiation = BTreeMap::new();
            for item in split_top_level(inst).into_iter().map(str::trim).filter(|s| !s.is_empty()) {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| format!("expected `name=value` in `{item}`"))?;
                // a value may itself contain `=`: split at the first one only
                instantiation.insert(k.trim().to_owned(), v.trim().to_owned());
            }
            Ok(Justification::LogicalAxiom {
                id: id.to_owned(),
                instantiation,
            })
        }
        "base" => Ok(Justification::Base(rest.to_owned())),
        "ind" => parse_formula(rest)
            .map(Justification::Induction)
            .map_err(|e| e.to_string()),
        "mp" => {
            let (i, j) = rest.split_once(',').ok_or("expected `mp:i,j`")?;
            Ok(Justification::ModusPonens(parse_index(i)?, parse_index(j)?))
        }
        "gen" => {
            let (i, v) = rest.split_once(',').ok_or("expected `gen:i,var`")?;
            let v = parse_variable(v.trim()).map_err(|e| e.to_string())?;
            Ok(Justification::Generalization(parse_index(i)?, v))
        }
        other => Err(format!("unknown justification kind `{other}`")),
    }
}

impl ProofObject {
    /// Reads the line format `<formula> ; <justification>`. Blank lines and
    /// `#` comments are skipped; `axiom <id>: <formula>` declares a base
    /// axiom.
    pub fn parse(text: &str) -> Result<Self> {
        let mut proof = ProofObject::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fail = |message: String| Error::Format {
                line: idx + 1,
                message,
            };
            if let Some(decl) = line.strip_prefix("axiom ") {
                let (id, formula) = decl
                    .split_once(':')
                    .ok_or_else(|| fail("expected `axiom <id>: <formula>`".into()))?;
                let formula = parse_formula(formula.trim()).map_err(|e| fail(e.to_string()))?;
                proof.declared.insert(id.trim().to_owned(), formula);
                continue;
            }
            let (formula, justification) = line
                .split_once(';')
                .ok_or_else(|| fail("expected `<formula> ; <justification>`".into()))?;
            let formula = parse_formula(formula.trim()).map_err(|e| fail(e.to_string()))?;
            let justification = parse_justification(justification).map_err(fail)?;
            proof.lines.push(ProofLine {
                formula,
                justification,
            });
        }
        Ok(proof)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (id, f) in &self.declared {
            out.push_str(&format!("axiom {id}: {f}\n"));
        }
        for line in &self.lines {
            out.push_str(&format!("{} ; {}\n", line.formula, line.justification));
        }
        out
    }

    /// The first `n` lines.
    pub fn prefix(&self, n: usize) -> ProofObject {
        ProofObject {
            lines: self.lines[..n.min(self.lines.len())].to_vec(),
            declared: self.declared.clone(),
        }
    }
}
