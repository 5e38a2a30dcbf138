use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Edge, MultiWeightGraph, PathError};
use crate::pareto::{Cost, Label, ParetoFront, RelationVector};

/// Which labels a front at step `i` keeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Walks with at most `i` edges.
    #[default]
    AtMost,
    /// Walks with exactly `i` edges; different step counts are not compared.
    Exactly,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub variant: Variant,
    /// Keep every layer `M[i, .]` (needed for path reconstruction).
    pub keep_layers: bool,
    /// Abort when any front grows beyond this many labels.
    pub max_front: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { variant: Variant::AtMost, keep_layers: true, max_front: None }
    }
}

impl SolveOptions {
    pub fn variant(variant: Variant) -> Self {
        SolveOptions { variant, ..Self::default() }
    }
}

/// Front sizes per layer and node, with their per-layer and overall maxima.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunStats {
    /// `sizes[i][v] = |M[i, v]|` for `i = 0..n-1`.
    pub sizes: Vec<Vec<usize>>,
    /// `p_ei[i] = max_v sizes[i][v]`.
    pub p_ei: Vec<usize>,
    pub p_e: usize,
}

impl RunStats {
    fn from_sizes(sizes: Vec<Vec<usize>>) -> Self {
        let p_ei: Vec<usize> = sizes.iter().map(|row| row.iter().copied().max().unwrap_or(0)).collect();
        let p_e = p_ei.iter().copied().max().unwrap_or(0);
        RunStats { sizes, p_ei, p_e }
    }

    /// Recomputes the statistics from a table that kept all of its layers.
    pub fn from_table<W: Cost>(table: &LabelTable<W>) -> Result<Self, PathError> {
        if !table.all_layers_retained() {
            return Err(PathError::LayersNotRetained);
        }
        Ok(Self::from_sizes(
            table.layers.iter().map(|layer| layer.iter().map(ParetoFront::len).collect()).collect(),
        ))
    }
}

/// Fronts `M[i, v]` of labels of `v -> t` walks, relation `(<=, .., <=)`.
#[derive(Clone, Debug)]
pub struct LabelTable<W> {
    variant: Variant,
    target: usize,
    n: usize,
    k: usize,
    /// Retained layers, the last being `M[n-1, .]`.
    layers: Vec<Vec<ParetoFront<W>>>,
    first_retained: usize,
    /// Exactly variant: front of the union of all layers, per node.
    union: Option<Vec<ParetoFront<W>>>,
}

impl<W: Cost> LabelTable<W> {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Index of the last layer, `n - 1` (0 for an empty graph).
    pub fn last_layer(&self) -> usize {
        self.first_retained + self.layers.len() - 1
    }

    pub fn all_layers_retained(&self) -> bool {
        self.first_retained == 0
    }

    /// `M[i, v]` if layer `i` was retained.
    pub fn front(&self, i: usize, v: usize) -> Option<&ParetoFront<W>> {
        i.checked_sub(self.first_retained).and_then(|j| self.layers.get(j)).and_then(|layer| layer.get(v))
    }

    /// The front consulted for decisions: `M[n-1, v]` for the at-most
    /// variant, the front of the union over all layers for the exactly one.
    pub fn final_front(&self, v: usize) -> &ParetoFront<W> {
        match &self.union {
            Some(u) => &u[v],
            None => &self.layers[self.layers.len() - 1][v],
        }
    }
}

fn check_budget<W: Cost>(front: &ParetoFront<W>, limit: Option<usize>, node: usize, iteration: usize) -> Result<(), PathError> {
    match limit {
        Some(l) if front.len() > l => Err(PathError::FrontBudget { node, iteration, size: front.len(), limit: l }),
        _ => Ok(()),
    }
}

/// Multi-criteria Bellman-Ford toward `t` with default options.
pub fn bf_md<W: Cost>(
    g: &MultiWeightGraph<W>,
    t: usize,
    variant: Variant,
) -> Result<(LabelTable<W>, RunStats), PathError> {
    bf_md_with(g, t, &SolveOptions::variant(variant))
}

/// Computes `M[i, v]` for `i = 0..n-1`:
/// at-most: `M[i,v] = front(M[i-1,v] + U_{v->w} (M[i-1,w] + a_vw))`,
/// exactly: the same without the `M[i-1,v]` term.
pub fn bf_md_with<W: Cost>(
    g: &MultiWeightGraph<W>,
    t: usize,
    opts: &SolveOptions,
) -> Result<(LabelTable<W>, RunStats), PathError> {
    g.check_node(t)?;
    let (n, k) = (g.node_count(), g.k());
    let relation = RelationVector::weak_min(k);
    let mut current: Vec<ParetoFront<W>> = (0..n)
        .map(|v| {
            if v == t {
                ParetoFront::singleton(Label::zero(k), relation.clone()).expect("arity matches")
            } else {
                ParetoFront::empty(relation.clone())
            }
        })
        .collect();
    let mut union = (opts.variant == Variant::Exactly).then(|| current.clone());
    let mut sizes = vec![current.iter().map(ParetoFront::len).collect::<Vec<_>>()];
    let mut layers = Vec::new();
    let iterations = n.saturating_sub(1);
    for i in 1..=iterations {
        let next: Vec<ParetoFront<W>> = (0..n)
            .into_par_iter()
            .map(|v| {
                let mut acc = match opts.variant {
                    Variant::AtMost => current[v].clone(),
                    Variant::Exactly => ParetoFront::empty(relation.clone()),
                };
                for arc in g.out_arcs(v) {
                    for label in current[arc.to].iter() {
                        acc.insert(label.checked_add(&arc.weights)?)?;
                    }
                    check_budget(&acc, opts.max_front, v, i)?;
                }
                Ok(acc)
            })
            .collect::<Result<_, PathError>>()?;
        if let Some(u) = union.as_mut() {
            for (v, f) in next.iter().enumerate() {
                u[v].absorb(f)?;
                check_budget(&u[v], opts.max_front, v, i)?;
            }
        }
        sizes.push(next.iter().map(ParetoFront::len).collect());
        let prev = std::mem::replace(&mut current, next);
        if opts.keep_layers {
            layers.push(prev);
        }
    }
    let first_retained = if opts.keep_layers { 0 } else { iterations };
    layers.push(current);
    let table = LabelTable { variant: opts.variant, target: t, n, k, layers, first_retained, union };
    Ok((table, RunStats::from_sizes(sizes)))
}

/// Whether some label in the final front at `s` is componentwise `<= bounds`.
pub fn decide<W: Cost>(table: &LabelTable<W>, s: usize, bounds: &[W]) -> Result<bool, PathError> {
    if bounds.len() != table.k {
        return Err(PathError::Arity { expected: table.k, found: bounds.len() });
    }
    if s >= table.n {
        return Err(PathError::InvalidNode { node: s, n: table.n });
    }
    Ok(table.final_front(s).iter().any(|l| l.fits_within(bounds)))
}

/// A walk `s -> t` whose weights add up to `label`, which must belong to the
/// final front at `s`. Needs a table that kept its layers.
pub fn reconstruct_path<W: Cost>(
    g: &MultiWeightGraph<W>,
    table: &LabelTable<W>,
    s: usize,
    label: &Label<W>,
) -> Result<Vec<Edge<W>>, PathError> {
    g.check_node(s)?;
    if label.arity() != table.k {
        return Err(PathError::Arity { expected: table.k, found: label.arity() });
    }
    if !table.final_front(s).contains(label) {
        return Err(PathError::LabelNotFound { node: s, label: label.to_string() });
    }
    if !table.all_layers_retained() {
        return Err(PathError::LayersNotRetained);
    }
    let last = table.last_layer();
    let mut i = match table.variant {
        Variant::AtMost => last,
        Variant::Exactly => (0..=last)
            .find(|&i| table.front(i, s).is_some_and(|f| f.contains(label)))
            .expect("union label comes from some layer"),
    };
    let (mut v, mut rest) = (s, label.clone());
    let mut walk = Vec::new();
    while !(v == table.target && rest.components().iter().all(|c| c.is_zero())) {
        if i == 0 {
            return Err(PathError::Internal("walk did not reach the target".into()));
        }
        let below = |w: usize, l: &Label<W>| table.front(i - 1, w).is_some_and(|f| f.contains(l));
        if table.variant == Variant::AtMost && below(v, &rest) {
            i -= 1;
            continue;
        }
        let step = g
            .out_arcs(v)
            .find_map(|arc| rest.checked_sub(&arc.weights).ok().filter(|r| below(arc.to, r)).map(|r| (arc, r)))
            .ok_or_else(|| PathError::Internal(format!("no predecessor for {rest} at node {v}, layer {i}")))?;
        walk.push(step.0.clone());
        v = step.0.to;
        rest = step.1;
        i -= 1;
    }
    Ok(walk)
}
