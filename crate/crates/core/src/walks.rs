//! Iterative h-hop walk statistics: per-node walk counts and total walk
//! weights, computed with matrix-vector recurrences so no matrix power is
//! ever materialized.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Walk counts stay exact as long as they fit in the f64 integer range.
const EXACT_LIMIT: f64 = 9007199254740992.0; // 2^53

/// Per-node h-hop walk counts and total walk weights for h = 1..=max_hops.
#[derive(Debug, Clone)]
pub struct WalkStatistics {
    pub max_hops: usize,
    /// counts[h-1][i] = number of h-hop walks starting at node i.
    pub counts: Vec<Vec<f64>>,
    /// weight_totals[h-1][i] = summed edge-weight total over all h-hop
    /// walks starting at node i.
    pub weight_totals: Vec<Vec<f64>>,
}

impl WalkStatistics {
    pub fn compute(g: &Graph, max_hops: usize) -> Result<WalkStatistics> {
        let counts = walk_counts(g, max_hops)?;
        let weight_totals = walk_weight_totals_from_counts(g, max_hops, &counts)?;
        Ok(WalkStatistics {
            max_hops,
            counts,
            weight_totals,
        })
    }
}

fn apply_adjacency(g: &Graph, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; g.node_count()];
    for i in 0..g.node_count() {
        let mut acc = 0.0;
        for &(j, _) in g.out_neighbors(i) {
            acc += v[j];
        }
        out[i] = acc;
    }
    out
}

fn apply_weights(g: &Graph, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; g.node_count()];
    for i in 0..g.node_count() {
        let mut acc = 0.0;
        for &(j, w) in g.out_neighbors(i) {
            acc += w * v[j];
        }
        out[i] = acc;
    }
    out
}

fn check_exact(v: &[f64], hop: usize) -> Result<()> {
    if v.iter().any(|&x| !x.is_finite() || x > EXACT_LIMIT) {
        Err(Error::CountOverflow { hop })
    } else {
        Ok(())
    }
}

/// Number of h-hop walks starting at each node, h = 1..=max_hops, via the
/// recurrence a(h+1) = A a(h) with a(1) = A 1.
pub fn walk_counts(g: &Graph, max_hops: usize) -> Result<Vec<Vec<f64>>> {
    assert!(max_hops >= 1, "max_hops must be positive");
    let ones = vec![1.0; g.node_count()];
    let mut current = apply_adjacency(g, &ones);
    check_exact(&current, 1)?;
    let mut result = vec![current.clone()];
    for h in 2..=max_hops {
        current = apply_adjacency(g, &current);
        check_exact(&current, h)?;
        result.push(current.clone());
    }
    Ok(result)
}

/// Total h-hop walk weight starting at each node, h = 1..=max_hops, via
/// w(h+1) = W a(h) + A w(h) with w(1) = W 1.
pub fn walk_weight_totals(g: &Graph, max_hops: usize) -> Result<Vec<Vec<f64>>> {
    let counts = walk_counts(g, max_hops)?;
    walk_weight_totals_from_counts(g, max_hops, &counts)
}

fn walk_weight_totals_from_counts(
    g: &Graph,
    max_hops: usize,
    counts: &[Vec<f64>],
) -> Result<Vec<Vec<f64>>> {
    assert!(max_hops >= 1, "max_hops must be positive");
    let ones = vec![1.0; g.node_count()];
    let mut current = apply_weights(g, &ones);
    if current.iter().any(|x| !x.is_finite()) {
        return Err(Error::CountOverflow { hop: 1 });
    }
    let mut result = vec![current.clone()];
    for h in 2..=max_hops {
        let wa = apply_weights(g, &counts[h - 2]);
        let aw = apply_adjacency(g, &current);
        current = wa.iter().zip(&aw).map(|(a, b)| a + b).collect();
        if current.iter().any(|x| !x.is_finite()) {
            return Err(Error::CountOverflow { hop: h });
        }
        result.push(current.clone());
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::build(&[(0, 1, None), (1, 2, None)], false, None).unwrap()
    }

    #[test]
    fn path_counts() {
        let a = walk_counts(&path3(), 2).unwrap();
        assert_eq!(a[0], vec![1.0, 2.0, 1.0]);
        assert_eq!(a[1], vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn directed_edge_has_no_two_hop_walk() {
        let g = Graph::build(&[(0, 1, None)], true, None).unwrap();
        let a = walk_counts(&g, 2).unwrap();
        assert_eq!(a[0], vec![1.0, 0.0]);
        assert_eq!(a[1], vec![0.0, 0.0]);
    }

    #[test]
    fn empty_graph_all_zero() {
        let g = Graph::build(&[], false, Some(3)).unwrap();
        let a = walk_counts(&g, 4).unwrap();
        let w = walk_weight_totals(&g, 4).unwrap();
        for h in 0..4 {
            assert_eq!(a[h], vec![0.0; 3]);
            assert_eq!(w[h], vec![0.0; 3]);
        }
    }

    #[test]
    fn weighted_edge_totals() {
        let g = Graph::build(&[(0, 1, Some(3.0))], false, None).unwrap();
        let w = walk_weight_totals(&g, 2).unwrap();
        assert_eq!(w[0], vec![3.0, 3.0]);
        assert_eq!(w[1], vec![6.0, 6.0]);
    }

    #[test]
    fn unit_weights_match_counts_times_hops() {
        let g = path3();
        let a = walk_counts(&g, 4).unwrap();
        let w = walk_weight_totals(&g, 4).unwrap();
        for h in 1..=4 {
            for i in 0..3 {
                assert_eq!(w[h - 1][i], h as f64 * a[h - 1][i]);
            }
        }
    }

    #[test]
    fn overflow_detected() {
        // K8 grows counts by 7x per hop; 2^53 overflows near hop 63.
        let mut edges = Vec::new();
        for i in 0..8usize {
            for j in (i + 1)..8 {
                edges.push((i, j, None));
            }
        }
        let g = Graph::build(&edges, false, None).unwrap();
        let err = walk_counts(&g, 100).unwrap_err();
        assert!(matches!(err, Error::CountOverflow { .. }));
    }
}
