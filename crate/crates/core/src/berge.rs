//! Berge containment: decision, witnesses, verification, girth.
//!
//! A hypergraph H contains a Berge copy of a graph G when there is an
//! injective placement of G's positive-degree vertices into V(H) together
//! with a bijection from E(G) onto distinct hyperedges such that each graph
//! edge lands inside its image hyperedge. The decision procedure enumerates
//! injective placements (pattern vertices in descending-degree order, host
//! candidates in ascending id order, pruned by per-vertex candidate
//! hyperedge counts) and solves the edge-to-hyperedge assignment as a
//! bipartite matching via augmenting paths.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::matching::saturating_matching;
use crate::pattern::PatternFamily;

/// Default cap on pattern core vertices for the exhaustive search.
pub const DEFAULT_PATTERN_GUARD: usize = 8;

/// An explicit, checkable certificate of Berge containment.
///
/// For the degenerate C2 pattern the two parallel edges are recorded as two
/// assignment entries on the same vertex pair with distinct hyperedges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeWitness {
    /// Pattern vertex (positive degree only) -> host vertex, injective.
    pub vertex_map: BTreeMap<usize, usize>,
    /// `(pattern_u, pattern_v, hyperedge_index)` with `u < v`; hyperedge
    /// indices pairwise distinct.
    pub edge_assignment: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GirthValue {
    Exact(usize),
    AtLeast(usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct GirthReport {
    pub girth: GirthValue,
    pub witness: Option<BergeWitness>,
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// True iff every pair of distinct hyperedges (by index) shares at most one
/// vertex. Duplicate hyperedges of size >= 2 therefore make H non-linear.
pub fn is_linear(h: &Hypergraph) -> bool {
    let es = h.hyperedges();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if sorted_intersection(&es[i], &es[j]).len() >= 2 {
                return false;
            }
        }
    }
    true
}

/// First (lexicographic by index pair) C2 witness: two hyperedges sharing
/// two vertices.
fn find_c2(h: &Hypergraph) -> Option<BergeWitness> {
    let es = h.hyperedges();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            let common = sorted_intersection(&es[i], &es[j]);
            if common.len() >= 2 {
                let mut vertex_map = BTreeMap::new();
                vertex_map.insert(0, common[0]);
                vertex_map.insert(1, common[1]);
                return Some(BergeWitness {
                    vertex_map,
                    edge_assignment: vec![(0, 1, i), (0, 1, j)],
                });
            }
        }
    }
    None
}

struct SearchCtx<'a> {
    host: &'a Hypergraph,
    pattern: &'a Graph,
    /// Pattern vertices in placement order.
    order: Vec<usize>,
    /// For each placement depth, the earlier depths adjacent in the pattern.
    earlier_neighbors: Vec<Vec<usize>>,
    /// Host vertex -> hyperedge indices containing it, ascending.
    incidence: Vec<Vec<usize>>,
    pattern_degree: Vec<usize>,
    required: Option<usize>,
}

impl<'a> SearchCtx<'a> {
    fn new(host: &'a Hypergraph, pattern: &'a Graph, required: Option<usize>) -> Self {
        let pattern_degree = pattern.degrees();
        let mut order = pattern.support();
        order.sort_by_key(|&v| (std::cmp::Reverse(pattern_degree[v]), v));
        let earlier_neighbors = (0..order.len())
            .map(|d| {
                (0..d)
                    .filter(|&e| pattern.has_edge(order[e], order[d]))
                    .collect()
            })
            .collect();
        SearchCtx {
            host,
            pattern,
            order,
            earlier_neighbors,
            incidence: host.incidence(),
            pattern_degree,
            required,
        }
    }

    /// Hyperedge indices containing both vertices, ascending.
    fn pair_cover(&self, a: usize, b: usize) -> Vec<usize> {
        sorted_intersection(&self.incidence[a], &self.incidence[b])
    }

    fn pair_covered(&self, a: usize, b: usize) -> bool {
        let (x, y) = (&self.incidence[a], &self.incidence[b]);
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Host vertices sharing a hyperedge with `a`, ascending.
    fn co_occurring(&self, a: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.incidence[a]
            .iter()
            .flat_map(|&i| self.host.hyperedges()[i].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Completes the placement from `depth` on; `assignment[d]` is the host
    /// vertex for `order[d]`.
    fn dfs(&self, depth: usize, assignment: &mut Vec<usize>, used: &mut Vec<bool>) -> Option<BergeWitness> {
        if depth == self.order.len() {
            return self.solve_assignment(assignment);
        }
        let pv = self.order[depth];
        // an already-placed pattern neighbor confines the candidates to its
        // co-occurrence set; candidate order stays ascending either way
        let candidates: Vec<usize> = match self.earlier_neighbors[depth].first() {
            Some(&e) => self.co_occurring(assignment[e]),
            None => (0..self.host.n()).collect(),
        };
        'cand: for hv in candidates {
            if used[hv] || self.incidence[hv].len() < self.pattern_degree[pv] {
                continue;
            }
            for &e in &self.earlier_neighbors[depth] {
                if !self.pair_covered(assignment[e], hv) {
                    continue 'cand;
                }
            }
            assignment.push(hv);
            used[hv] = true;
            if let Some(w) = self.dfs(depth + 1, assignment, used) {
                return Some(w);
            }
            used[hv] = false;
            assignment.pop();
        }
        None
    }

    /// Fixed placement -> availability matching (pattern edges vs hyperedges
    /// containing both mapped endpoints).
    fn solve_assignment(&self, assignment: &[usize]) -> Option<BergeWitness> {
        let mut pos = vec![usize::MAX; self.pattern.n()];
        for (d, &pv) in self.order.iter().enumerate() {
            pos[pv] = d;
        }
        let edges = self.pattern.edges();
        let adj: Vec<Vec<usize>> = edges
            .iter()
            .map(|&(u, v)| self.pair_cover(assignment[pos[u]], assignment[pos[v]]))
            .collect();

        let matched = match self.required {
            None => saturating_matching(&adj, self.host.len())?,
            Some(req) => {
                // The copy must use hyperedge `req`: force each pattern edge
                // that can take it in turn.
                let mut found = None;
                for forced in 0..edges.len() {
                    if !adj[forced].contains(&req) {
                        continue;
                    }
                    let restricted: Vec<Vec<usize>> = adj
                        .iter()
                        .enumerate()
                        .map(|(i, cands)| {
                            if i == forced {
                                vec![req]
                            } else {
                                cands.iter().copied().filter(|&c| c != req).collect()
                            }
                        })
                        .collect();
                    if let Some(m) = saturating_matching(&restricted, self.host.len()) {
                        found = Some(m);
                        break;
                    }
                }
                found?
            }
        };

        let vertex_map: BTreeMap<usize, usize> = self
            .order
            .iter()
            .enumerate()
            .map(|(d, &pv)| (pv, assignment[d]))
            .collect();
        let edge_assignment = edges
            .iter()
            .zip(&matched)
            .map(|(&(u, v), &idx)| (u, v, idx))
            .collect();
        Some(BergeWitness { vertex_map, edge_assignment })
    }
}

/// Decides Berge containment, returning a witness iff one exists.
///
/// The search is exhaustive. With a parallel [`Exec`] the enumeration is
/// sharded by the host choice for the first pattern vertex; the leftmost
/// successful shard wins, so the answer does not depend on the worker count.
pub fn contains_berge(
    host: &Hypergraph,
    pattern: &PatternFamily,
    guard: usize,
    exec: &Exec,
) -> Result<Option<BergeWitness>> {
    contains_berge_requiring(host, pattern, guard, exec, None)
}

/// Like [`contains_berge`] but, when `required` is set, only copies whose
/// edge assignment uses that hyperedge index count. Sound for incremental
/// search: if H minus that hyperedge is pattern-free, any copy must use it.
pub fn contains_berge_requiring(
    host: &Hypergraph,
    pattern: &PatternFamily,
    guard: usize,
    exec: &Exec,
    required: Option<usize>,
) -> Result<Option<BergeWitness>> {
    host.ensure_valid()?;
    pattern.validate()?;

    if pattern.is_c2() {
        let witness = match required {
            None => find_c2(host),
            Some(req) => {
                let es = host.hyperedges();
                (0..es.len()).filter(|&i| i != req).find_map(|i| {
                    let (a, b) = (i.min(req), i.max(req));
                    let common = sorted_intersection(&es[a], &es[b]);
                    (common.len() >= 2).then(|| {
                        let mut vertex_map = BTreeMap::new();
                        vertex_map.insert(0, common[0]);
                        vertex_map.insert(1, common[1]);
                        BergeWitness {
                            vertex_map,
                            edge_assignment: vec![(0, 1, a), (0, 1, b)],
                        }
                    })
                })
            }
        };
        return Ok(witness);
    }

    let core = pattern.core_vertex_count();
    if core > guard {
        return Err(Error::GuardExceeded {
            what: "pattern core vertices",
            got: core,
            guard,
            knob: "--pattern-guard",
        });
    }

    let realized = pattern.realize()?;
    if realized.edge_count() == 0 {
        return Ok(Some(BergeWitness {
            vertex_map: BTreeMap::new(),
            edge_assignment: Vec::new(),
        }));
    }
    if realized.edge_count() > host.len() || core > host.n() {
        return Ok(None);
    }

    let ctx = SearchCtx::new(host, &realized, required);
    let first = ctx.order[0];
    let candidates: Vec<usize> = (0..host.n())
        .filter(|&v| ctx.incidence[v].len() >= ctx.pattern_degree[first])
        .collect();

    let search_from = |c0: usize| -> Option<BergeWitness> {
        let mut assignment = vec![c0];
        let mut used = vec![false; host.n()];
        used[c0] = true;
        ctx.dfs(1, &mut assignment, &mut used)
    };

    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return Ok(exec.run(|| candidates.par_iter().find_map_first(|&c0| search_from(c0))));
    }
    let _ = exec;
    Ok(candidates.into_iter().find_map(search_from))
}

/// Checks a witness against the definition; `Err` carries the reason.
pub fn verify_witness(
    host: &Hypergraph,
    pattern: &PatternFamily,
    witness: &BergeWitness,
) -> std::result::Result<(), String> {
    // injectivity of the vertex map
    let mut images: Vec<usize> = witness.vertex_map.values().copied().collect();
    images.sort_unstable();
    let before = images.len();
    images.dedup();
    if images.len() != before {
        return Err("vertex map not injective".into());
    }
    for (&pv, &hv) in &witness.vertex_map {
        let _ = pv;
        if hv >= host.n() {
            return Err(format!("host vertex {hv} out of range"));
        }
    }

    // hyperedge indices pairwise distinct and in range
    let mut indices: Vec<usize> = witness.edge_assignment.iter().map(|&(_, _, i)| i).collect();
    indices.sort_unstable();
    let before = indices.len();
    indices.dedup();
    if indices.len() != before {
        return Err("assignment not injective".into());
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= host.len()) {
        return Err(format!("hyperedge index {bad} out of range"));
    }

    // the assigned pattern pairs must be exactly the pattern's edges
    if pattern.is_c2() {
        if witness.edge_assignment.len() != 2 {
            return Err("C2 witness needs exactly two parallel assignments".into());
        }
        let pairs: Vec<(usize, usize)> = witness
            .edge_assignment
            .iter()
            .map(|&(u, v, _)| (u.min(v), u.max(v)))
            .collect();
        if pairs[0] != pairs[1] {
            return Err("C2 witness edges must share both endpoints".into());
        }
        if witness.vertex_map.len() != 2 {
            return Err("C2 witness must map exactly two vertices".into());
        }
    } else {
        let realized = match pattern.realize() {
            Ok(g) => g,
            Err(e) => return Err(e.to_string()),
        };
        let mut expected: Vec<(usize, usize)> = realized.edges().to_vec();
        expected.sort_unstable();
        let mut got: Vec<(usize, usize)> = witness
            .edge_assignment
            .iter()
            .map(|&(u, v, _)| (u.min(v), u.max(v)))
            .collect();
        got.sort_unstable();
        if expected != got {
            return Err("assigned pairs do not match the pattern's edge set".into());
        }
        let support = realized.support();
        let mapped: Vec<usize> = witness.vertex_map.keys().copied().collect();
        if mapped != support {
            return Err("vertex map domain must be the pattern's positive-degree vertices".into());
        }
    }

    // containment of each edge in its hyperedge
    for &(u, v, idx) in &witness.edge_assignment {
        let (hu, hv) = match (witness.vertex_map.get(&u), witness.vertex_map.get(&v)) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return Err(format!("pattern vertex {u} or {v} unmapped")),
        };
        if !host.contains_vertex(idx, hu) || !host.contains_vertex(idx, hv) {
            return Err("endpoint not covered".into());
        }
    }
    Ok(())
}

/// Smallest k in `2..=g_max` with a Berge-C_k, else "at least g_max+1".
pub fn berge_girth(
    host: &Hypergraph,
    g_max: usize,
    guard: usize,
    exec: &Exec,
) -> Result<GirthReport> {
    if g_max < 2 {
        return Err(Error::Precondition(format!("g_max must be >= 2, got {g_max}")));
    }
    for k in 2..=g_max {
        if let Some(w) = contains_berge(host, &PatternFamily::CycleCk(k), guard, exec)? {
            return Ok(GirthReport {
                girth: GirthValue::Exact(k),
                witness: Some(w),
            });
        }
    }
    Ok(GirthReport {
        girth: GirthValue::AtLeast(g_max + 1),
        witness: None,
    })
}
