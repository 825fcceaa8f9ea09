//! Synthetic graph generators used by the demo walkthrough, the smoke
//! tests and the synthetic intrusion experiment.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Erdos-Renyi G(n, p), undirected, unit weights, seeded.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_range(0.0..1.0) < p {
                edges.push((i, j, None));
            }
        }
    }
    Graph::build(&edges, false, Some(n)).expect("generated edges are valid")
}

/// Star of cliques: a central hub plus `cliques` complete graphs of
/// `clique_size` nodes each; one gateway node per clique connects to the
/// hub. All edges undirected with unit weight. Node 0 is the hub, clique
/// c occupies nodes 1 + c*clique_size .. 1 + (c+1)*clique_size, with the
/// gateway first.
pub fn star_of_cliques(cliques: usize, clique_size: usize) -> Graph {
    let mut edges = Vec::new();
    for c in 0..cliques {
        let base = 1 + c * clique_size;
        edges.push((0, base, None));
        for a in 0..clique_size {
            for b in (a + 1)..clique_size {
                edges.push((base + a, base + b, None));
            }
        }
    }
    Graph::build(&edges, false, Some(1 + cliques * clique_size)).expect("valid")
}

/// Add a DoS-like star burst: `extra_edges` new edges from `hub` to
/// random nodes it is not yet connected to. Returns the perturbed graph.
pub fn inject_star_burst(g: &Graph, hub: usize, extra_edges: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.node_count();
    let mut edges: Vec<(usize, usize, Option<f64>)> = g
        .edges()
        .iter()
        .map(|e| (e.source, e.target, Some(e.weight)))
        .collect();
    let mut candidates: Vec<usize> = (0..n)
        .filter(|&v| v != hub && !g.has_edge(hub, v) && !g.has_edge(v, hub))
        .collect();
    let mut added = 0;
    while added < extra_edges && !candidates.is_empty() {
        let pick = rng.random_range(0..candidates.len());
        let target = candidates.swap_remove(pick);
        edges.push((hub, target, None));
        added += 1;
    }
    Graph::build(&edges, g.is_directed(), Some(n)).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degree_vectors;

    #[test]
    fn erdos_renyi_deterministic() {
        let a = erdos_renyi(30, 0.2, 7);
        let b = erdos_renyi(30, 0.2, 7);
        assert_eq!(a.edges().len(), b.edges().len());
        assert_eq!(a.edge_count(), b.edge_count());
    }

    #[test]
    fn star_of_cliques_shape() {
        let g = star_of_cliques(5, 4);
        assert_eq!(g.node_count(), 21);
        let (_, _, total) = degree_vectors(&g);
        assert_eq!(total[0], 5); // hub touches one gateway per clique
        assert_eq!(total[1], 4); // gateway: 3 clique peers + hub
        assert_eq!(total[2], 3); // interior clique node
    }

    #[test]
    fn burst_raises_hub_degree() {
        let g = erdos_renyi(100, 0.03, 3);
        let (_, _, before) = degree_vectors(&g);
        let burst = inject_star_burst(&g, 0, 50, 9);
        let (_, _, after) = degree_vectors(&burst);
        assert_eq!(after[0], before[0] + 50);
    }
}
