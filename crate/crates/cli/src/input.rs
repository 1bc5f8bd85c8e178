use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use veritas::satclass::{BasePredicate, SatPredicate};
use veritas::structure::FiniteStructure;
use veritas::syntax::{parse_formula, parse_variable, Formula, Variable};

fn stdin() -> Result<String> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .context("reading stdin")?;
    Ok(text)
}

pub fn read(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        return stdin();
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// A formula given inline, or `-` for stdin.
pub fn formula(arg: &str) -> Result<Formula> {
    let text = if arg == "-" { stdin()? } else { arg.to_owned() };
    parse_formula(text.trim()).with_context(|| format!("parsing `{}`", text.trim()))
}

pub fn variable(arg: &str) -> Result<Variable> {
    parse_variable(arg).with_context(|| format!("parsing variable `{arg}`"))
}

pub fn structure(path: &Path) -> Result<FiniteStructure> {
    FiniteStructure::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn sat(path: &Path) -> Result<SatPredicate> {
    SatPredicate::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// The equality base when no file is given.
pub fn base(path: Option<&Path>, structure: &FiniteStructure) -> Result<BasePredicate> {
    match path {
        None => Ok(BasePredicate::atomic(structure)),
        Some(p) => BasePredicate::new(sat(p)?, structure).with_context(|| format!("in {}", p.display())),
    }
}

/// Formulae one per line; blank lines and `#` comments are skipped.
pub fn formulas(text: &str, origin: &Path) -> Result<Vec<Formula>> {
    numbered(text.lines().enumerate(), origin)
}

fn numbered<'a>(lines: impl Iterator<Item = (usize, &'a str)>, origin: &Path) -> Result<Vec<Formula>> {
    let mut out = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = parse_formula(line)
            .with_context(|| format!("{}:{}", origin.display(), idx + 1))?;
        out.push(f);
    }
    Ok(out)
}

/// Stages separated by lines consisting of `---`.
pub fn stages(text: &str, origin: &Path) -> Result<Vec<Vec<Formula>>> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().collect();
    lines
        .split(|(_, line)| line.trim() == "---")
        .map(|chunk| numbered(chunk.iter().copied(), origin))
        .collect()
}
