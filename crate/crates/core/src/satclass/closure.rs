use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::structural::template;
use crate::syntax::Formula;

/// Smallest superset of `formulas` closed under direct subformulae and
/// containing the template of every atom.
///
/// Atoms form the only minimal similarity class of such a set, and that is
/// the one class whose values are read off a base through its template.
pub fn subformula_closure(formulas: &[Formula]) -> Result<BTreeSet<Formula>> {
    let mut out = BTreeSet::new();
    let mut todo: Vec<Formula> = formulas.to_vec();
    while let Some(f) = todo.pop() {
        if out.contains(&f) {
            continue;
        }
        f.ensure_arithmetical()?;
        todo.extend(f.direct_subformulas().into_iter().cloned());
        if f.is_atomic() {
            todo.push(template(&f)?.template);
        }
        out.insert(f);
    }
    Ok(out)
}

/// One `∼`-class of a closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityClass {
    pub template: Formula,
    pub members: Vec<Formula>,
}

/// The classes of a closure in a topological order of `⊴`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassOrder {
    pub classes: Vec<SimilarityClass>,
    /// `(i, j)` when some member of class `i` is a direct subformula of some
    /// member of class `j`.
    pub edges: BTreeSet<(usize, usize)>,
}

impl ClassOrder {
    pub fn class_of(&self, f: &Formula) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(f))
    }

    /// No class sits directly below this one.
    pub fn is_minimal(&self, class: usize) -> bool {
        !self.edges.iter().any(|&(_, j)| j == class)
    }

    /// `[a] ⊴ [b]`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        let mut seen = BTreeSet::new();
        let mut todo = vec![a];
        while let Some(i) = todo.pop() {
            if i == b {
                return true;
            }
            if seen.insert(i) {
                todo.extend(self.edges.iter().filter(|&&(s, _)| s == i).map(|&(_, t)| t));
            }
        }
        false
    }
}

/// Partitions a subformula-closed set by similarity and sorts the classes.
pub fn class_order(closure: &BTreeSet<Formula>) -> Result<ClassOrder> {
    let mut by_template: BTreeMap<Formula, Vec<Formula>> = BTreeMap::new();
    for f in closure {
        by_template
            .entry(template(f)?.template)
            .or_default()
            .push(f.clone());
    }
    let keys: Vec<Formula> = by_template.keys().cloned().collect();
    let mut member_class = BTreeMap::new();
    for (i, members) in by_template.values().enumerate() {
        for m in members {
            member_class.insert(m, i);
        }
    }
    let mut edges = BTreeSet::new();
    for (j, members) in by_template.values().enumerate() {
        for m in members {
            for sub in m.direct_subformulas() {
                let i = *member_class.get(sub).ok_or_else(|| Error::NotInClosure(sub.clone()))?;
                if i == j {
                    return Err(Error::Cycle(keys[i].clone()));
                }
                edges.insert((i, j));
            }
        }
    }

    // Kahn's algorithm, smallest template first
    let n = keys.len();
    let mut indegree = vec![0usize; n];
    for &(_, j) in &edges {
        indegree[j] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop_first() {
        order.push(i);
        for &(_, j) in edges.range((i, 0)..=(i, usize::MAX)) {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&i| indegree[i] > 0).expect("a class left over");
        return Err(Error::Cycle(keys[stuck].clone()));
    }

    let position: BTreeMap<usize, usize> = order.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut members: Vec<Vec<Formula>> = by_template.into_values().collect();
    let classes = order
        .iter()
        .map(|&i| SimilarityClass {
            template: keys[i].clone(),
            members: std::mem::take(&mut members[i]),
        })
        .collect();
    let edges = edges
        .into_iter()
        .map(|(i, j)| (position[&i], position[&j]))
        .collect();
    Ok(ClassOrder { classes, edges })
}
