use super::{MultiWeightGraph, PathError};
use crate::pareto::{Cost, Label, ParetoFront, RelationVector};

/// Largest graph [`brute_force_paths`] accepts by default.
pub const DEFAULT_BRUTE_LIMIT: usize = 10;

/// Front of the weight vectors of all simple `s -> t` paths, found by
/// depth-first search. Refuses graphs with more than `limit` nodes.
pub fn brute_force_paths<W: Cost>(
    g: &MultiWeightGraph<W>,
    s: usize,
    t: usize,
    limit: usize,
) -> Result<ParetoFront<W>, PathError> {
    g.check_node(s)?;
    g.check_node(t)?;
    if g.node_count() > limit {
        return Err(PathError::LimitExceeded { n: g.node_count(), limit });
    }
    let mut found = Vec::new();
    let mut visited = vec![false; g.node_count()];
    visited[s] = true;
    dfs(g, s, t, Label::zero(g.k()), &mut visited, &mut found)?;
    Ok(ParetoFront::from_set(found, RelationVector::weak_min(g.k()))?)
}

fn dfs<W: Cost>(
    g: &MultiWeightGraph<W>,
    v: usize,
    t: usize,
    acc: Label<W>,
    visited: &mut [bool],
    found: &mut Vec<Label<W>>,
) -> Result<(), PathError> {
    if v == t {
        found.push(acc);
        return Ok(());
    }
    for arc in g.out_arcs(v) {
        if visited[arc.to] {
            continue;
        }
        visited[arc.to] = true;
        dfs(g, arc.to, t, acc.checked_add(&arc.weights)?, visited, found)?;
        visited[arc.to] = false;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = MultiWeightGraph<u64>;

    fn values(f: &ParetoFront<u64>) -> Vec<Vec<u64>> {
        f.iter().map(|l| l.components().to_vec()).collect()
    }

    #[test]
    fn diamond() {
        let g = G::from_edges(4, 2, true, [(0, 1, vec![1, 3]), (1, 3, vec![1, 3]), (0, 2, vec![2, 1]), (2, 3, vec![2, 1])])
            .unwrap();
        assert_eq!(values(&brute_force_paths(&g, 0, 3, 10).unwrap()), vec![vec![2, 6], vec![4, 2]]);
        assert_eq!(values(&brute_force_paths(&g, 2, 2, 10).unwrap()), vec![vec![0, 0]]);
        assert!(brute_force_paths(&g, 3, 0, 10).unwrap().is_empty());
        assert_eq!(brute_force_paths(&g, 0, 3, 3), Err(PathError::LimitExceeded { n: 4, limit: 3 }));
    }

    #[test]
    fn undirected_cycle_paths_are_simple() {
        let g = G::from_edges(3, 1, false, [(0, 1, vec![1]), (1, 2, vec![1]), (0, 2, vec![5])]).unwrap();
        assert_eq!(values(&brute_force_paths(&g, 0, 2, 10).unwrap()), vec![vec![2]]);
    }
}
