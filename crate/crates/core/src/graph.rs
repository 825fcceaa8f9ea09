//! Immutable weighted directed/undirected graph plus the shortest-path
//! primitives shared by the centrality and distance features.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Distance metric for shortest paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Every edge counts as length 1.
    Hop,
    /// Edge weight is interpreted as length (larger weight = longer path).
    Weighted,
}

impl Metric {
    pub fn parse(s: &str) -> Option<Metric> {
        match s {
            "hop" => Some(Metric::Hop),
            "weighted" => Some(Metric::Weighted),
            _ => None,
        }
    }
}

/// One edge of a constructed graph, after duplicate collapse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

/// Immutable graph with adjacency and weight structure.
///
/// Duplicate edges collapse at construction by summing their weights;
/// self-loops are rejected. Undirected graphs store both orientations of
/// every edge so the adjacency and weight relations are symmetric.
#[derive(Debug, Clone)]
pub struct Graph {
    node_count: usize,
    directed: bool,
    out_adj: Vec<Vec<(usize, f64)>>,
    in_adj: Vec<Vec<(usize, f64)>>,
    labels: Vec<String>,
    weighted: bool,
}

impl Graph {
    /// Build a graph from an edge list. Missing weights default to 1.0,
    /// `node_count` may be given explicitly to include trailing isolated
    /// nodes; otherwise it is 1 + the largest index seen.
    pub fn build(
        edges: &[(usize, usize, Option<f64>)],
        directed: bool,
        node_count: Option<usize>,
    ) -> Result<Graph> {
        let mut max_index = 0usize;
        for &(s, t, w) in edges {
            if s == t {
                return Err(Error::SelfLoopRejected(s));
            }
            if let Some(w) = w {
                if w < 0.0 || !w.is_finite() {
                    return Err(Error::InvalidWeight {
                        from: s,
                        to: t,
                        weight: w,
                    });
                }
            }
            max_index = max_index.max(s).max(t);
        }
        let n = match node_count {
            Some(n) => {
                if !edges.is_empty() && max_index >= n {
                    return Err(Error::NodeOutOfRange {
                        index: max_index,
                        node_count: n,
                    });
                }
                n
            }
            None => {
                if edges.is_empty() {
                    0
                } else {
                    max_index + 1
                }
            }
        };

        // Collapse duplicates by summing weights. Undirected edges are
        // keyed on the unordered pair.
        let mut collapsed: HashMap<(usize, usize), f64> = HashMap::new();
        for &(s, t, w) in edges {
            let w = w.unwrap_or(1.0);
            let key = if directed || s <= t { (s, t) } else { (t, s) };
            *collapsed.entry(key).or_insert(0.0) += w;
        }

        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut weighted = false;
        for (&(s, t), &w) in &collapsed {
            if w != 1.0 {
                weighted = true;
            }
            out_adj[s].push((t, w));
            in_adj[t].push((s, w));
            if !directed {
                out_adj[t].push((s, w));
                in_adj[s].push((t, w));
            }
        }
        for adj in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            adj.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Graph {
            node_count: n,
            directed,
            out_adj,
            in_adj,
            labels,
            weighted,
        })
    }

    /// Parse the edge-list text format: one edge per line,
    /// `source target [weight]`, `#` starts a comment line, labels are
    /// arbitrary non-whitespace tokens mapped to dense indices in order
    /// of first appearance.
    pub fn parse_edge_list(text: &str, directed: bool) -> Result<Graph> {
        let mut label_index: HashMap<String, usize> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut edges: Vec<(usize, usize, Option<f64>)> = Vec::new();
        let mut intern = |tok: &str, labels: &mut Vec<String>| -> usize {
            match label_index.get(tok) {
                Some(&i) => i,
                None => {
                    let i = labels.len();
                    labels.push(tok.to_string());
                    label_index.insert(tok.to_string(), i);
                    i
                }
            }
        };
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 2 || toks.len() > 3 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected 'source target [weight]', got '{line}'"),
                });
            }
            let s = intern(toks[0], &mut labels);
            let t = intern(toks[1], &mut labels);
            let w = match toks.get(2) {
                Some(tok) => Some(tok.parse::<f64>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    message: format!("bad weight '{tok}'"),
                })?),
                None => None,
            };
            edges.push((s, t, w));
        }
        let n = labels.len();
        let mut g = Graph::build(&edges, directed, Some(n.max(1)).filter(|_| n > 0))?;
        g.labels = labels;
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// True when any collapsed edge weight differs from 1.0.
    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.node_count);
        self.labels = labels;
        self
    }

    pub fn out_neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.out_adj[i]
    }

    pub fn in_neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.in_adj[i]
    }

    /// Nodes connected to or from `i`, deduplicated and sorted.
    pub fn neighbors_union(&self, i: usize) -> Vec<usize> {
        let mut ns: Vec<usize> = self.out_adj[i]
            .iter()
            .chain(self.in_adj[i].iter())
            .map(|&(j, _)| j)
            .collect();
        ns.sort_unstable();
        ns.dedup();
        ns
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.out_adj[i].binary_search_by(|probe| probe.0.cmp(&j)).is_ok()
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        match self.out_adj[i].binary_search_by(|probe| probe.0.cmp(&j)) {
            Ok(pos) => self.out_adj[i][pos].1,
            Err(_) => 0.0,
        }
    }

    /// Collapsed edges; undirected edges are reported once with
    /// source <= target.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (s, adj) in self.out_adj.iter().enumerate() {
            for &(t, w) in adj {
                if self.directed || s <= t {
                    out.push(Edge {
                        source: s,
                        target: t,
                        weight: w,
                    });
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        let arcs: usize = self.out_adj.iter().map(Vec::len).sum();
        if self.directed {
            arcs
        } else {
            arcs / 2
        }
    }

    /// Connectivity in the sense relevant to shortest-path features:
    /// every node reaches every other node (strong connectivity for
    /// directed graphs). The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.node_count <= 1 {
            return true;
        }
        let reach = |adj: &Vec<Vec<(usize, f64)>>| {
            let mut seen = vec![false; self.node_count];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for &(v, _) in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        count += 1;
                        stack.push(v);
                    }
                }
            }
            count == self.node_count
        };
        if self.directed {
            reach(&self.out_adj) && reach(&self.in_adj)
        } else {
            reach(&self.out_adj)
        }
    }
}

/// Single-source shortest-path result.
#[derive(Debug, Clone)]
pub struct PathDistances {
    pub source: usize,
    /// Distance per node; unreachable nodes hold `f64::INFINITY`.
    pub dist: Vec<f64>,
    /// Number of distinct shortest paths from the source.
    pub path_counts: Vec<f64>,
    /// Predecessors of each node on some shortest path (for Brandes).
    pub predecessors: Vec<Vec<usize>>,
    /// Nodes in nondecreasing distance order, reachable only.
    pub order: Vec<usize>,
}

const DIST_EPS: f64 = 1e-12;

/// Dijkstra-semantics single-source shortest paths with shortest-path
/// counting. The hop metric treats every edge as length 1.
pub fn shortest_paths(g: &Graph, source: usize, metric: Metric) -> PathDistances {
    assert!(source < g.node_count(), "source out of range");
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut counts = vec![0.0; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order: Vec<usize> = Vec::new();
    dist[source] = 0.0;
    counts[source] = 1.0;

    match metric {
        Metric::Hop => {
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(source);
            order.push(source);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in g.out_neighbors(u) {
                    let cand = dist[u] + 1.0;
                    if dist[v].is_infinite() {
                        dist[v] = cand;
                        counts[v] = counts[u];
                        preds[v].push(u);
                        order.push(v);
                        queue.push_back(v);
                    } else if dist[v] == cand {
                        counts[v] += counts[u];
                        preds[v].push(u);
                    }
                }
            }
        }
        Metric::Weighted => {
            #[derive(PartialEq)]
            struct State(f64, usize);
            impl Eq for State {}
            impl Ord for State {
                fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                    other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
                }
            }
            impl PartialOrd for State {
                fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                    Some(self.cmp(other))
                }
            }
            let mut heap = std::collections::BinaryHeap::new();
            let mut settled = vec![false; n];
            heap.push(State(0.0, source));
            while let Some(State(d, u)) = heap.pop() {
                if settled[u] {
                    continue;
                }
                settled[u] = true;
                order.push(u);
                for &(v, w) in g.out_neighbors(u) {
                    let cand = d + w;
                    if cand < dist[v] - DIST_EPS {
                        dist[v] = cand;
                        heap.push(State(cand, v));
                    }
                }
            }
            // Accumulate path counts and predecessors in settled order;
            // ties are detected within DIST_EPS.
            for &v in &order {
                if v == source {
                    continue;
                }
                for &(u, w) in g.in_neighbors(v) {
                    if dist[u].is_finite() && (dist[u] + w - dist[v]).abs() <= DIST_EPS {
                        counts[v] += counts[u];
                        preds[v].push(u);
                    }
                }
            }
        }
    }

    PathDistances {
        source,
        dist,
        path_counts: counts,
        predecessors: preds,
        order,
    }
}

/// In-, out- and total degree per node. For undirected graphs the total
/// equals the plain degree.
pub fn degree_vectors(g: &Graph) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = g.node_count();
    let out_deg: Vec<usize> = (0..n).map(|i| g.out_neighbors(i).len()).collect();
    let in_deg: Vec<usize> = (0..n).map(|i| g.in_neighbors(i).len()).collect();
    let total = if g.is_directed() {
        (0..n).map(|i| in_deg[i] + out_deg[i]).collect()
    } else {
        out_deg.clone()
    };
    (in_deg, out_deg, total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_symmetry() {
        let g = Graph::build(&[(0, 1, None), (1, 2, None)], false, None).unwrap();
        assert_eq!(g.node_count(), 3);
        assert!(!g.is_weighted());
        assert_eq!(g.weight(1, 0), 1.0);
        assert_eq!(g.weight(0, 1), 1.0);
    }

    #[test]
    fn single_directed_edge() {
        let g = Graph::build(&[(0, 1, Some(3.0))], true, None).unwrap();
        assert!(g.has_edge(0, 1));
        assert!(!g.has_edge(1, 0));
        assert_eq!(g.weight(0, 1), 3.0);
    }

    #[test]
    fn duplicate_edges_collapse_by_sum() {
        let g = Graph::build(&[(0, 1, Some(2.0)), (0, 1, Some(3.0))], true, None).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.weight(0, 1), 5.0);
    }

    #[test]
    fn self_loop_rejected() {
        let err = Graph::build(&[(2, 2, None)], false, None).unwrap_err();
        assert!(matches!(err, Error::SelfLoopRejected(2)));
    }

    #[test]
    fn negative_weight_rejected() {
        let err = Graph::build(&[(0, 1, Some(-1.0))], false, None).unwrap_err();
        assert!(matches!(err, Error::InvalidWeight { .. }));
    }

    #[test]
    fn hop_path_counts_on_path_graph() {
        let g = Graph::build(&[(0, 1, None), (1, 2, None)], false, None).unwrap();
        let sp = shortest_paths(&g, 0, Metric::Hop);
        assert_eq!(sp.dist, vec![0.0, 1.0, 2.0]);
        assert_eq!(sp.path_counts, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn unreachable_is_infinite() {
        let g = Graph::build(&[(0, 1, None)], false, Some(4)).unwrap();
        let sp = shortest_paths(&g, 0, Metric::Hop);
        assert!(sp.dist[3].is_infinite());
        assert_eq!(sp.path_counts[3], 0.0);
    }

    #[test]
    fn four_cycle_has_two_shortest_paths() {
        let g = Graph::build(
            &[(0, 1, None), (1, 2, None), (2, 3, None), (3, 0, None)],
            false,
            None,
        )
        .unwrap();
        for metric in [Metric::Hop, Metric::Weighted] {
            let sp = shortest_paths(&g, 0, metric);
            assert_eq!(sp.dist[2], 2.0);
            assert_eq!(sp.path_counts[2], 2.0);
        }
    }

    #[test]
    fn degrees() {
        let star = Graph::build(&[(0, 1, None), (0, 2, None), (0, 3, None)], false, None).unwrap();
        let (_, _, total) = degree_vectors(&star);
        assert_eq!(total, vec![3, 1, 1, 1]);

        let g = Graph::build(&[(0, 1, None)], true, None).unwrap();
        let (ind, outd, total) = degree_vectors(&g);
        assert_eq!(outd, vec![1, 0]);
        assert_eq!(ind, vec![0, 1]);
        assert_eq!(total, vec![1, 1]);

        let empty = Graph::build(&[], false, Some(4)).unwrap();
        let (ind, outd, total) = degree_vectors(&empty);
        assert_eq!(ind, vec![0; 4]);
        assert_eq!(outd, vec![0; 4]);
        assert_eq!(total, vec![0; 4]);
    }

    #[test]
    fn edge_list_parsing() {
        let text = "# comment\nalpha beta 2.0\nbeta gamma\n\ngamma alpha 0.5\n";
        let g = Graph::parse_edge_list(text, true).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.labels(), &["alpha", "beta", "gamma"]);
        assert_eq!(g.weight(0, 1), 2.0);
        assert_eq!(g.weight(1, 2), 1.0);
    }

    #[test]
    fn edge_list_bad_weight() {
        let err = Graph::parse_edge_list("a b notanumber", false).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn connectivity() {
        let g = Graph::build(&[(0, 1, None)], false, Some(3)).unwrap();
        assert!(!g.is_connected());
        let g = Graph::build(&[(0, 1, None), (1, 2, None)], false, None).unwrap();
        assert!(g.is_connected());
        // Directed path is weakly but not strongly connected.
        let g = Graph::build(&[(0, 1, None), (1, 2, None)], true, None).unwrap();
        assert!(!g.is_connected());
    }
}
