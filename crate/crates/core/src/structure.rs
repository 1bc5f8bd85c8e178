//! Finite interpretations of `0, S, +, ×`.
//!
//! The domain is `{0, …, N−1}` with its numeric order. Successor must be the
//! honest `i ↦ i+1` below the top element so that the numeral of every domain
//! element denotes that element; the successor of the top element and the
//! addition and multiplication tables are free.

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::syntax::{Assignment, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    size: usize,
    succ: Vec<usize>,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl FiniteStructure {
    /// Saturating arithmetic: every result is capped at `N−1`.
    pub fn saturating(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Structure("size must be at least 1".into()));
        }
        let top = size - 1;
        let succ = (0..size).map(|i| (i + 1).min(top)).collect();
        let table = |op: fn(usize, usize) -> usize| {
            (0..size * size)
                .map(|k| op(k / size, k % size).min(top))
                .collect::<Vec<_>>()
        };
        Ok(FiniteStructure {
            size,
            succ,
            add: table(|a, b| a + b),
            mul: table(|a, b| a * b),
        })
    }

    /// Builds a structure from explicit tables (`add` and `mul` row-major).
    pub fn from_tables(
        size: usize,
        succ: Vec<usize>,
        add: Vec<usize>,
        mul: Vec<usize>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Structure("size must be at least 1".into()));
        }
        if succ.len() != size || add.len() != size * size || mul.len() != size * size {
            return Err(Error::Structure("table has the wrong number of entries".into()));
        }
        if let Some(bad) = succ.iter().chain(&add).chain(&mul).find(|&&v| v >= size) {
            return Err(Error::Structure(format!("table entry {bad} outside the domain")));
        }
        if let Some(i) = (0..size - 1).find(|&i| succ[i] != i + 1) {
            return Err(Error::Structure(format!(
                "succ({i}) must be {} so that numerals denote their values",
                i + 1
            )));
        }
        Ok(FiniteStructure { size, succ, add, mul })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> {
        0..self.size
    }

    pub fn succ(&self, a: usize) -> usize {
        self.succ[a]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    fn element(&self, value: u64) -> Result<usize> {
        usize::try_from(value)
            .ok()
            .filter(|&v| v < self.size)
            .ok_or(Error::OutOfDomain { value, size: self.size })
    }

    /// Value of `t` in this structure; assigned values must lie in the domain.
    pub fn eval_term(&self, t: &Term, assignment: &Assignment) -> Result<usize> {
        match t {
            Term::Zero => Ok(0),
            Term::Var(v) => {
                let value = assignment.get(v).ok_or_else(|| Error::Unbound(v.clone()))?;
                self.element(value)
            }
            Term::Succ(_) => {
                let mut depth = 0usize;
                let mut inner = t;
                while let Term::Succ(next) = inner {
                    depth += 1;
                    inner = next;
                }
                let mut value = self.eval_term(inner, assignment)?;
                for _ in 0..depth {
                    let next = self.succ(value);
                    if next == value {
                        break;
                    }
                    value = next;
                }
                Ok(value)
            }
            Term::Add(s, t) => Ok(self.add(self.eval_term(s, assignment)?, self.eval_term(t, assignment)?)),
            Term::Mul(s, t) => Ok(self.mul(self.eval_term(s, assignment)?, self.eval_term(t, assignment)?)),
        }
    }

    /// Parses the line-oriented structure format:
    ///
    /// ```text
    /// # comment
    /// N=3
    /// succ=1,2,2
    /// add=0,1,2;1,2,2;2,2,2
    /// mul=0,0,0;0,1,2;0,2,2
    /// ```
    ///
    /// Omitted tables default to saturating arithmetic.
    pub fn parse(text: &str) -> Result<Self> {
        let mut size = None;
        let mut succ = None;
        let mut add = None;
        let mut mul = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let line_no = idx + 1;
            let (key, value) = line.split_once('=').ok_or(Error::Format {
                line: line_no,
                message: "expected `key=value`".into(),
            })?;
            let numbers = |value: &str| -> Result<Vec<usize>> {
                value
                    .split([',', ';'])
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<usize>().map_err(|_| Error::Format {
                            line: line_no,
                            message: format!("`{s}` is not a number"),
                        })
                    })
                    .collect()
            };
            match key.trim() {
                "N" => {
                    size = Some(value.trim().parse::<usize>().map_err(|_| Error::Format {
                        line: line_no,
                        message: "N must be a natural number".into(),
                    })?)
                }
                "succ" => succ = Some(numbers(value)?),
                "add" => add = Some(numbers(value)?),
                "mul" => mul = Some(numbers(value)?),
                other => {
                    return Err(Error::Format {
                        line: line_no,
                        message: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        let size = size.ok_or(Error::Format {
            line: 1,
            message: "missing `N=<size>` header".into(),
        })?;
        let base = Self::saturating(size)?;
        Self::from_tables(
            size,
            succ.unwrap_or(base.succ),
            add.unwrap_or(base.add),
            mul.unwrap_or(base.mul),
        )
    }

    /// Writes the structure with all tables explicit.
    pub fn render(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let rows = |table: &[usize]| {
            table
                .chunks(self.size)
                .map(join)
                .collect::<Vec<_>>()
                .join(";")
        };
        let mut out = String::new();
        let _ = writeln!(out, "N={}", self.size);
        let _ = writeln!(out, "succ={}", join(&self.succ));
        let _ = writeln!(out, "add={}", rows(&self.add));
        let _ = writeln!(out, "mul={}", rows(&self.mul));
        out
    }
}

/// Value of `t` over the standard model, or over `structure` when given.
pub fn term_value(
    t: &Term,
    assignment: &Assignment,
    structure: Option<&FiniteStructure>,
) -> Result<BigUint> {
    match structure {
        None => t.value(assignment),
        Some(s) => s.eval_term(t, assignment).map(BigUint::from),
    }
}
