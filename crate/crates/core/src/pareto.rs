//! Optimization sets: canonical antichains of cost vectors.
//!
//! A label `a` *covers* `u` under a relation vector `R` when `a = u` or
//! every component pair satisfies its relation. A front keeps exactly one
//! label per minimal value, so it is the unique minimum-cardinality subset
//! that covers every input.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{PrimInt, Unsigned};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Unsigned integer usable as a label component.
pub trait Cost:
    PrimInt + Unsigned + Hash + fmt::Debug + fmt::Display + FromStr + Serialize + DeserializeOwned + Send + Sync + 'static
{
}

impl<T> Cost for T where
    T: PrimInt + Unsigned + Hash + fmt::Debug + fmt::Display + FromStr + Serialize + DeserializeOwned + Send + Sync + 'static
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParetoError {
    #[error("arity mismatch: expected {expected} components, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("fronts use different relation vectors ({left} vs {right})")]
    RelationMismatch { left: String, right: String },
    #[error("label component overflow")]
    Overflow,
    #[error("label component would become negative")]
    Underflow,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relation {
    pub fn holds<W: Ord>(self, x: &W, y: &W) -> bool {
        match self {
            Relation::Lt => x < y,
            Relation::Le => x <= y,
            Relation::Gt => x > y,
            Relation::Ge => x >= y,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        })
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "<" | "lt" => Ok(Relation::Lt),
            "<=" | "≤" | "le" => Ok(Relation::Le),
            ">" | "gt" => Ok(Relation::Gt),
            ">=" | "≥" | "ge" => Ok(Relation::Ge),
            other => Err(format!("unknown relation {other:?}")),
        }
    }
}

/// One relation per dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationVector(Vec<Relation>);

impl RelationVector {
    pub fn new(relations: Vec<Relation>) -> Self {
        assert!(!relations.is_empty(), "relation vector needs at least one dimension");
        RelationVector(relations)
    }

    /// The same relation in all `k` dimensions.
    pub fn uniform(k: usize, r: Relation) -> Self {
        Self::new(vec![r; k])
    }

    /// `(<=, ..., <=)`, the relation used by the solver.
    pub fn weak_min(k: usize) -> Self {
        Self::uniform(k, Relation::Le)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn relations(&self) -> &[Relation] {
        &self.0
    }

    fn is_weak_min_2d(&self) -> bool {
        self.0 == [Relation::Le, Relation::Le]
    }
}

impl fmt::Display for RelationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A k-dimensional cost vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label<W>(Vec<W>);

impl<W: Cost> Label<W> {
    pub fn new(components: Vec<W>) -> Self {
        Label(components)
    }

    pub fn zero(k: usize) -> Self {
        Label(vec![W::zero(); k])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[W] {
        &self.0
    }

    pub fn checked_add(&self, delta: &Label<W>) -> Result<Label<W>, ParetoError> {
        check_arity(delta.arity(), self.arity())?;
        self.0
            .iter()
            .zip(&delta.0)
            .map(|(a, b)| a.checked_add(b).ok_or(ParetoError::Overflow))
            .collect::<Result<_, _>>()
            .map(Label)
    }

    pub fn checked_sub(&self, delta: &Label<W>) -> Result<Label<W>, ParetoError> {
        check_arity(delta.arity(), self.arity())?;
        self.0
            .iter()
            .zip(&delta.0)
            .map(|(a, b)| a.checked_sub(b).ok_or(ParetoError::Underflow))
            .collect::<Result<_, _>>()
            .map(Label)
    }

    /// Componentwise `<=`.
    pub fn fits_within(&self, bounds: &[W]) -> bool {
        self.0.iter().zip(bounds).all(|(a, b)| a <= b)
    }
}

impl<W> From<Vec<W>> for Label<W> {
    fn from(v: Vec<W>) -> Self {
        Label(v)
    }
}

impl<W: fmt::Display> fmt::Display for Label<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn check_arity(found: usize, expected: usize) -> Result<(), ParetoError> {
    if found == expected {
        Ok(())
    } else {
        Err(ParetoError::ArityMismatch { expected, found })
    }
}

/// Whether `a` is related to `b` by `r` in every component.
pub fn dominates<W: Cost>(a: &Label<W>, b: &Label<W>, r: &RelationVector) -> Result<bool, ParetoError> {
    check_arity(a.arity(), r.len())?;
    check_arity(b.arity(), r.len())?;
    Ok(related(a, b, r))
}

fn related<W: Ord>(a: &Label<W>, b: &Label<W>, r: &RelationVector) -> bool {
    r.0.iter().zip(a.0.iter().zip(&b.0)).all(|(rel, (x, y))| rel.holds(x, y))
}

fn covers<W: Ord>(a: &Label<W>, u: &Label<W>, r: &RelationVector) -> bool {
    a == u || related(a, u, r)
}

/// Canonical optimization set: labels sorted ascending, no duplicates, no
/// member covering another.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParetoFront<W> {
    labels: Vec<Label<W>>,
    relation: RelationVector,
}

impl<W: Cost> ParetoFront<W> {
    pub fn empty(relation: RelationVector) -> Self {
        ParetoFront { labels: Vec::new(), relation }
    }

    pub fn singleton(label: Label<W>, relation: RelationVector) -> Result<Self, ParetoError> {
        check_arity(label.arity(), relation.len())?;
        Ok(ParetoFront { labels: vec![label], relation })
    }

    /// Minimum covering subset of `labels`.
    pub fn from_set(labels: Vec<Label<W>>, relation: RelationVector) -> Result<Self, ParetoError> {
        for l in &labels {
            check_arity(l.arity(), relation.len())?;
        }
        let mut sorted = labels;
        sorted.sort_unstable();
        sorted.dedup();
        let labels = if relation.is_weak_min_2d() {
            // sorted by first component: keep strictly improving second component
            let mut kept: Vec<Label<W>> = Vec::new();
            for l in sorted {
                if kept.last().is_none_or(|last| l.0[1] < last.0[1]) {
                    kept.push(l);
                }
            }
            kept
        } else {
            sorted
                .iter()
                .filter(|u| !sorted.iter().any(|a| a != *u && related(a, u, &relation)))
                .cloned()
                .collect()
        };
        Ok(ParetoFront { labels, relation })
    }

    pub fn labels(&self) -> &[Label<W>] {
        &self.labels
    }

    pub fn relation(&self) -> &RelationVector {
        &self.relation
    }

    pub fn arity(&self) -> usize {
        self.relation.len()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, label: &Label<W>) -> bool {
        self.labels.binary_search(label).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Label<W>> {
        self.labels.iter()
    }

    /// Whether some member covers `x`.
    pub fn covers(&self, x: &Label<W>) -> bool {
        if self.relation.is_weak_min_2d() {
            let p = self.labels.partition_point(|l| l.0[0] <= x.0[0]);
            return p > 0 && self.labels[p - 1].0[1] <= x.0[1];
        }
        self.labels.iter().any(|a| covers(a, x, &self.relation))
    }

    /// Adds `x` unless it is covered; drops members `x` covers. Returns
    /// whether `x` was added.
    pub fn insert(&mut self, x: Label<W>) -> Result<bool, ParetoError> {
        check_arity(x.arity(), self.arity())?;
        if self.covers(&x) {
            return Ok(false);
        }
        if self.relation.is_weak_min_2d() {
            // members with first >= x.0 and second >= x.1 form a contiguous run
            let start = self.labels.partition_point(|l| l.0[0] < x.0[0]);
            let run = self.labels[start..].iter().take_while(|l| l.0[1] >= x.0[1]).count();
            self.labels.splice(start..start + run, std::iter::once(x));
            return Ok(true);
        }
        let relation = &self.relation;
        self.labels.retain(|l| !related(&x, l, relation));
        let pos = self.labels.partition_point(|l| l < &x);
        self.labels.insert(pos, x);
        Ok(true)
    }

    /// Functional form of [`ParetoFront::insert`].
    pub fn with(&self, x: Label<W>) -> Result<Self, ParetoError> {
        let mut out = self.clone();
        out.insert(x)?;
        Ok(out)
    }

    /// Front of the union.
    pub fn merge(&self, other: &ParetoFront<W>) -> Result<Self, ParetoError> {
        if self.relation != other.relation {
            return Err(ParetoError::RelationMismatch {
                left: self.relation.to_string(),
                right: other.relation.to_string(),
            });
        }
        let (mut big, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for l in small.iter() {
            big.insert(l.clone())?;
        }
        Ok(big)
    }

    /// In-place merge used by the solver's relaxation loop.
    pub fn absorb(&mut self, other: &ParetoFront<W>) -> Result<(), ParetoError> {
        for l in other.iter() {
            self.insert(l.clone())?;
        }
        Ok(())
    }

    /// Every member shifted by `delta`; dominance and order are preserved.
    pub fn translate(&self, delta: &Label<W>) -> Result<Self, ParetoError> {
        check_arity(delta.arity(), self.arity())?;
        let labels = self.labels.iter().map(|l| l.checked_add(delta)).collect::<Result<_, _>>()?;
        Ok(ParetoFront { labels, relation: self.relation.clone() })
    }

    /// Every member shifted by `-delta`.
    pub fn translate_back(&self, delta: &Label<W>) -> Result<Self, ParetoError> {
        check_arity(delta.arity(), self.arity())?;
        let labels = self.labels.iter().map(|l| l.checked_sub(delta)).collect::<Result<_, _>>()?;
        Ok(ParetoFront { labels, relation: self.relation.clone() })
    }

    /// One label per line, components separated by spaces.
    pub fn to_text(&self) -> String {
        self.labels.iter().map(|l| format!("{l}\n")).collect()
    }

    pub fn parse_text(text: &str, relation: RelationVector) -> Result<Self, ParetoError> {
        let mut labels = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let comps = line
                .split_whitespace()
                .map(|c| {
                    c.parse::<W>().map_err(|_| ParetoError::Parse {
                        line: i + 1,
                        message: format!("bad component {c:?}"),
                    })
                })
                .collect::<Result<Vec<W>, _>>()?;
            labels.push(Label(comps));
        }
        Self::from_set(labels, relation)
    }
}

impl<'a, W> IntoIterator for &'a ParetoFront<W> {
    type Item = &'a Label<W>;
    type IntoIter = std::slice::Iter<'a, Label<W>>;

    fn into_iter(self) -> Self::IntoIter {
        self.labels.iter()
    }
}
