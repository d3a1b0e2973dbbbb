//! Simple undirected graphs on dense integer vertices.
//!
//! One representation serves three roles: pattern graphs F, shadow graphs
//! built by the embedding procedures, and the base graphs consumed by the
//! blow-up constructions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph. Edges are stored sorted with `u < v`, no loops,
/// no duplicates; every endpoint is `< n`. Isolated vertices are allowed and
/// counted in `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, normalizing edge orientation and order. Duplicate
    /// edges collapse; loops and out-of-range endpoints are errors.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut es: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Validation(format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::Validation(format!(
                    "edge ({a},{b}) has endpoint >= n = {n}"
                )));
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        es.dedup();
        Ok(Graph { n, edges: es })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Vertices with positive degree, ascending.
    pub fn support(&self) -> Vec<usize> {
        let d = self.degrees();
        (0..self.n).filter(|&v| d[v] > 0).collect()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn adjacency(&self) -> AdjBits {
        AdjBits::from_graph(self)
    }

    /// True when the graph is bipartite; returns the two-coloring by BFS from
    /// the least vertex of each component (even levels in side A).
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let adj: Vec<Vec<usize>> = (0..self.n).map(|v| self.neighbors(v)).collect();
        let mut side = vec![u8::MAX; self.n];
        for root in 0..self.n {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| side[v] == 0).collect();
        let b = (0..self.n).filter(|&v| side[v] == 1).collect();
        Some((a, b))
    }
}

/// Row-major adjacency bitsets (`ceil(n/64)` words per vertex).
pub struct AdjBits {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl AdjBits {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for &(a, b) in g.edges() {
            bits[a * words + b / 64] |= 1 << (b % 64);
            bits[b * words + a / 64] |= 1 << (a % 64);
        }
        AdjBits { n, words, bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn test(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 != 0
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// |N(u) ∩ N(v)|.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        let (ru, rv) = (self.row(u), self.row(v));
        ru.iter()
            .zip(rv)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Searches for `pattern` as a (not necessarily induced) subgraph of `host`.
/// Returns the injective map from the pattern's positive-degree vertices to
/// host vertices, as `(pattern_vertex, host_vertex)` pairs. Deterministic:
/// pattern vertices are placed in descending-degree order and host candidates
/// tried in ascending id order.
pub fn find_subgraph(host: &Graph, pattern: &Graph) -> Option<Vec<(usize, usize)>> {
    find_subgraph_with(host, pattern, None)
}

/// Like [`find_subgraph`] but requiring the copy to use `required_edge`
/// (either orientation). Used for incremental freeness checks: when the host
/// was pattern-free before an edge was added, any new copy must use it.
pub fn find_subgraph_with(
    host: &Graph,
    pattern: &Graph,
    required_edge: Option<(usize, usize)>,
) -> Option<Vec<(usize, usize)>> {
    let support = pattern.support();
    if support.is_empty() {
        return Some(Vec::new());
    }
    if support.len() > host.n() {
        return None;
    }
    let host_adj = host.adjacency();
    let host_deg: Vec<usize> = (0..host.n()).map(|v| host_adj.degree(v)).collect();
    let pat_deg = pattern.degrees();

    // Order: descending pattern degree, tie by ascending id; but when a
    // required edge is present, seed the search at one of its endpoints so
    // the constraint prunes immediately.
    let mut order = support.clone();
    order.sort_by_key(|&v| (std::cmp::Reverse(pat_deg[v]), v));
    let mut pos = vec![usize::MAX; pattern.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }

    let mut assignment: Vec<usize> = vec![usize::MAX; order.len()];
    let mut used = vec![false; host.n()];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        depth: usize,
        order: &[usize],
        pos: &[usize],
        pattern: &Graph,
        pat_deg: &[usize],
        host_adj: &AdjBits,
        host_deg: &[usize],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        required_edge: Option<(usize, usize)>,
    ) -> bool {
        if depth == order.len() {
            // All pattern edges are checked incrementally; only the required
            // edge remains to verify.
            if let Some((a, b)) = required_edge {
                return pattern.edges().iter().any(|&(u, v)| {
                    let (x, y) = (assignment[pos[u]], assignment[pos[v]]);
                    (x == a && y == b) || (x == b && y == a)
                });
            }
            return true;
        }
        let pv = order[depth];
        'cand: for h in 0..host_adj.n() {
            if used[h] || host_deg[h] < pat_deg[pv] {
                continue;
            }
            for earlier in 0..depth {
                let pu = order[earlier];
                if pattern.has_edge(pu, pv) && !host_adj.test(assignment[earlier], h) {
                    continue 'cand;
                }
            }
            assignment[depth] = h;
            used[h] = true;
            if rec(
                depth + 1,
                order,
                pos,
                pattern,
                pat_deg,
                host_adj,
                host_deg,
                assignment,
                used,
                required_edge,
            ) {
                return true;
            }
            used[h] = false;
            assignment[depth] = usize::MAX;
        }
        false
    }

    if rec(
        0,
        &order,
        &pos,
        pattern,
        &pat_deg,
        &host_adj,
        &host_deg,
        &mut assignment,
        &mut used,
        required_edge,
    ) {
        let mut map: Vec<(usize, usize)> = order
            .iter()
            .enumerate()
            .map(|(i, &pv)| (pv, assignment[i]))
            .collect();
        map.sort_unstable();
        Some(map)
    } else {
        None
    }
}

/// K_{2,t} fast path: exists iff some vertex pair has >= t common neighbors.
pub fn contains_k2t(host: &Graph, t: usize) -> bool {
    let adj = host.adjacency();
    for u in 0..host.n() {
        for v in u + 1..host.n() {
            if adj.common_neighbors(u, v) >= t {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_rejects_bad_edges() {
        let g = Graph::new(4, [(2, 0), (0, 2), (3, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 3)]);
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn subgraph_search_finds_c4_in_k23() {
        let k23 = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let found = find_subgraph(&k23, &c4).unwrap();
        // edge-preserving check
        for &(u, v) in c4.edges() {
            let hu = found.iter().find(|&&(p, _)| p == u).unwrap().1;
            let hv = found.iter().find(|&&(p, _)| p == v).unwrap().1;
            assert!(k23.has_edge(hu, hv));
        }
    }

    #[test]
    fn subgraph_search_rejects_k3_in_bipartite() {
        let k23 = Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(find_subgraph(&k23, &k3).is_none());
    }

    #[test]
    fn k2t_fast_path_matches_structure() {
        let k24 = Graph::new(6, (2..6).flat_map(|v| [(0, v), (1, v)])).unwrap();
        assert!(contains_k2t(&k24, 4));
        assert!(!contains_k2t(&k24, 5));
        let c5 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert!(!contains_k2t(&c5, 2));
    }

    #[test]
    fn bipartition_detects_components() {
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let (a, b) = g.bipartition().unwrap();
        assert_eq!(a.len() + b.len(), 6);
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(tri.bipartition().is_none());
    }
}
