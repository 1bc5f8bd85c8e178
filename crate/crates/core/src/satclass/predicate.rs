use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::coding::formula_order;
use crate::error::{Error, Result};
use crate::structure::FiniteStructure;
use crate::syntax::{parse_assignment, parse_formula, Assignment, Formula, Term, Variable};

use super::check::{check_comp, check_extensionality, check_strreg};
use super::closure::subformula_closure;

/// A finite satisfaction relation: the set of true `(φ, α)` cells, with `φ`
/// ranging over an explicit closure and `dom(α) = FV(φ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SatPredicate {
    closure: BTreeSet<Formula>,
    entries: BTreeMap<Formula, BTreeSet<Assignment>>,
}

impl SatPredicate {
    pub fn new(closure: BTreeSet<Formula>) -> Self {
        SatPredicate {
            closure,
            entries: BTreeMap::new(),
        }
    }

    pub fn closure(&self) -> &BTreeSet<Formula> {
        &self.closure
    }

    /// Marks `(f, α)` true. `f` must be in the closure; the assignment is
    /// stored as given (see [`SatPredicate::well_formed`]).
    pub fn insert(&mut self, f: Formula, assignment: Assignment) -> Result<()> {
        if !self.closure.contains(&f) {
            return Err(Error::NotInClosure(f));
        }
        self.entries.entry(f).or_default().insert(assignment);
        Ok(())
    }

    pub fn set(&mut self, f: &Formula, assignment: &Assignment, value: bool) -> Result<()> {
        if value {
            return self.insert(f.clone(), assignment.clone());
        }
        if let Some(set) = self.entries.get_mut(f) {
            set.remove(assignment);
            if set.is_empty() {
                self.entries.remove(f);
            }
        }
        Ok(())
    }

    /// Toggles one cell; `α` is cut down to `FV(f)` first.
    pub fn flip(&mut self, f: &Formula, assignment: &Assignment) -> Result<()> {
        let a = assignment.restrict(&f.free_vars());
        let value = self.holds(f, &a);
        self.set(f, &a, !value)
    }

    /// `S(f, α)`, reading `α` on `FV(f)` only. Formulae outside the closure
    /// are false.
    pub fn holds(&self, f: &Formula, assignment: &Assignment) -> bool {
        self.entries.get(f).is_some_and(|set| {
            let fv = f.free_vars();
            if assignment.len() == fv.len() {
                set.contains(assignment)
            } else {
                set.contains(&assignment.restrict(&fv))
            }
        })
    }

    pub fn true_set(&self, f: &Formula) -> BTreeSet<Assignment> {
        self.entries.get(f).cloned().unwrap_or_default()
    }

    /// All true cells, formula by formula.
    pub fn entries(&self) -> impl Iterator<Item = (&Formula, &Assignment)> {
        self.entries
            .iter()
            .flat_map(|(f, set)| set.iter().map(move |a| (f, a)))
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The same relation cut down to `closure`.
    pub fn restrict(&self, closure: &BTreeSet<Formula>) -> SatPredicate {
        SatPredicate {
            closure: self.closure.intersection(closure).cloned().collect(),
            entries: self
                .entries
                .iter()
                .filter(|(f, _)| closure.contains(*f))
                .map(|(f, s)| (f.clone(), s.clone()))
                .collect(),
        }
    }

    /// Closure sentences in code order. Over a finite structure the element
    /// `d` stands for the `d`-th of them when `T` is read through `S`.
    pub fn indexed_sentences(&self) -> Vec<&Formula> {
        let mut out: Vec<&Formula> = self.closure.iter().filter(|f| f.is_sentence()).collect();
        out.sort_by(|a, b| formula_order(a, b));
        out
    }

    /// `T(d)` for a domain element, see [`SatPredicate::indexed_sentences`].
    pub fn truth_of_index(&self) -> impl Fn(usize) -> bool + '_ {
        let sentences = self.indexed_sentences();
        let empty = Assignment::new();
        move |d| sentences.get(d).is_some_and(|f| self.holds(f, &empty))
    }

    /// Every stored assignment has domain `FV(φ)` and values in the domain.
    pub fn well_formed(&self, structure: &FiniteStructure) -> Result<()> {
        for (f, a) in self.entries() {
            if a.domain() != f.free_vars() {
                return Err(Error::IncoherentBase(format!(
                    "assignment {{{a}}} does not match the free variables of `{f}`"
                )));
            }
            if let Some((_, n)) = a.iter().find(|(_, n)| *n >= structure.size() as u64) {
                return Err(Error::OutOfDomain {
                    value: n,
                    size: structure.size(),
                });
            }
        }
        Ok(())
    }

    /// Reads the `[closure]` / `[entries]` text format:
    ///
    /// ```text
    /// [closure]
    /// E x. (x = 0)
    /// (x = 0)
    /// [entries]
    /// E x. (x = 0) |
    /// (x = 0) | x=0
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        #[derive(PartialEq)]
        enum Section {
            None,
            Closure,
            Entries,
        }
        let mut section = Section::None;
        let mut closure = BTreeSet::new();
        let mut cells = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |e: Error| Error::Format {
                line: line_no,
                message: e.to_string(),
            };
            match line {
                "[closure]" => section = Section::Closure,
                "[entries]" => section = Section::Entries,
                _ => match section {
                    Section::None => {
                        return Err(Error::Format {
                            line: line_no,
                            message: "expected `[closure]` or `[entries]`".into(),
                        })
                    }
                    Section::Closure => {
                        closure.insert(parse_formula(line).map_err(err)?);
                    }
                    Section::Entries => {
                        let (f, a) = line.rsplit_once('|').ok_or(Error::Format {
                            line: line_no,
                            message: "expected `<formula> | <assignment>`".into(),
                        })?;
                        let f = parse_formula(f.trim()).map_err(err)?;
                        let a = parse_assignment(a).map_err(err)?;
                        cells.push((line_no, f, a));
                    }
                },
            }
        }
        let mut sat = SatPredicate::new(closure);
        for (line, f, a) in cells {
            sat.insert(f, a).map_err(|e| Error::Format {
                line,
                message: e.to_string(),
            })?;
        }
        Ok(sat)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("[closure]\n");
        for f in &self.closure {
            let _ = writeln!(out, "{f}");
        }
        out.push_str("[entries]\n");
        for (f, a) in self.entries() {
            if a.is_empty() {
                let _ = writeln!(out, "{f} |");
            } else {
                let _ = writeln!(out, "{f} | {a}");
            }
        }
        out
    }
}

/// The predicate an extension starts from. Its formula set is closed under
/// direct subformulae and contains the atomic template, and the predicate is
/// compositional, structurally regular and extensional on it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasePredicate {
    sat: SatPredicate,
}

impl BasePredicate {
    pub fn empty() -> Self {
        BasePredicate::default()
    }

    /// The atomic template `($v0 = $v1)` with true equality: the least
    /// nonempty coherent base.
    pub fn atomic(structure: &FiniteStructure) -> Self {
        let atom = Formula::eq(
            Term::Var(Variable::Placeholder(0)),
            Term::Var(Variable::Placeholder(1)),
        );
        let mut sat = SatPredicate::new([atom.clone()].into());
        for d in structure.domain() {
            let a = Assignment::new()
                .with(Variable::Placeholder(0), d as u64)
                .with(Variable::Placeholder(1), d as u64);
            sat.insert(atom.clone(), a).expect("atom is in the closure");
        }
        BasePredicate { sat }
    }

    /// Checks coherence of `sat` over `structure`.
    pub fn new(sat: SatPredicate, structure: &FiniteStructure) -> Result<Self> {
        sat.well_formed(structure)?;
        let formulas: Vec<Formula> = sat.closure().iter().cloned().collect();
        let closed = subformula_closure(&formulas)?;
        if let Some(missing) = closed.difference(sat.closure()).next() {
            return Err(Error::IncoherentBase(format!(
                "formula set is not closed: `{missing}` is missing"
            )));
        }
        for (name, report) in [
            ("compositionality", check_comp(&sat, structure)),
            ("structural regularity", check_strreg(&sat, structure)?),
            ("extensionality", check_extensionality(&sat, structure)),
        ] {
            if let Some(v) = report.violations.first() {
                return Err(Error::IncoherentBase(format!("{name} fails: {v}")));
            }
        }
        Ok(BasePredicate { sat })
    }

    pub fn old_set(&self) -> &BTreeSet<Formula> {
        self.sat.closure()
    }

    pub fn predicate(&self) -> &SatPredicate {
        &self.sat
    }

    pub fn into_predicate(self) -> SatPredicate {
        self.sat
    }

    pub fn holds(&self, f: &Formula, assignment: &Assignment) -> bool {
        self.sat.holds(f, assignment)
    }
}
