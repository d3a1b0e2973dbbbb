//! Shared test oracles, independent of the library's search path.
#![allow(dead_code)]

use berge_core::graph::Graph;
use berge_core::hypergraph::Hypergraph;
use berge_core::pattern::PatternFamily;

/// Brute-force Berge containment: enumerate every |E(P)|-subset of
/// hyperedge indices, every bijection from pattern edges onto it, and every
/// injective placement of the pattern's positive-degree vertices. No
/// matching, no pruning: the reference the production search is judged by.
pub fn naive_contains(host: &Hypergraph, pattern: &PatternFamily) -> bool {
    if pattern.is_c2() {
        let es = host.hyperedges();
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                let shared = es[i].iter().filter(|v| es[j].contains(v)).count();
                if shared >= 2 {
                    return true;
                }
            }
        }
        return false;
    }
    let realized = pattern.realize().expect("realizable pattern");
    let edges = realized.edges();
    let support = realized.support();
    if edges.is_empty() {
        return true;
    }
    if edges.len() > host.len() || support.len() > host.n() {
        return false;
    }

    let subsets = k_subsets(host.len(), edges.len());
    let placements = injective_maps(&support, host.n());
    for subset in &subsets {
        for perm in permutations(subset) {
            'placement: for placement in &placements {
                for (e, &(u, v)) in edges.iter().enumerate() {
                    let (hu, hv) = (placement[&u], placement[&v]);
                    let idx = perm[e];
                    if !host.contains_vertex(idx, hu) || !host.contains_vertex(idx, hv) {
                        continue 'placement;
                    }
                }
                return true;
            }
        }
    }
    false
}

pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// All injective maps from `domain` into `0..n`, as lookup tables.
pub fn injective_maps(
    domain: &[usize],
    n: usize,
) -> Vec<std::collections::BTreeMap<usize, usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        domain: &[usize],
        n: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<std::collections::BTreeMap<usize, usize>>,
    ) {
        if cur.len() == domain.len() {
            out.push(domain.iter().copied().zip(cur.iter().copied()).collect());
            return;
        }
        for h in 0..n {
            if !cur.contains(&h) {
                cur.push(h);
                rec(domain, n, cur, out);
                cur.pop();
            }
        }
    }
    rec(domain, n, &mut cur, &mut out);
    out
}

/// Patterns with at most 5 core vertices, for fuzzing.
pub fn small_patterns() -> Vec<PatternFamily> {
    vec![
        PatternFamily::CompleteKr(2),
        PatternFamily::CompleteKr(3),
        PatternFamily::CompleteKr(4),
        PatternFamily::CycleCk(2),
        PatternFamily::CycleCk(3),
        PatternFamily::CycleCk(4),
        PatternFamily::CycleCk(5),
        PatternFamily::PathPk(3),
        PatternFamily::PathPk(4),
        PatternFamily::PathPk(5),
        PatternFamily::BicliqueKst(1, 2),
        PatternFamily::BicliqueKst(1, 3),
        PatternFamily::BicliqueKst(2, 2),
        PatternFamily::BicliqueKst(2, 3),
    ]
}

/// Seeded random hypergraph: up to `max_edges` hyperedges of sizes 2..=4 on
/// `n` vertices (duplicates possible by construction).
pub fn random_hypergraph(n: usize, max_edges: usize, seed: u64) -> Hypergraph {
    // xorshift-style generator is enough for fuzz corpora
    let mut state = seed.wrapping_mul(2654435761).wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let count = (next() as usize) % (max_edges + 1);
    let mut hyperedges = Vec::new();
    for _ in 0..count {
        let size = 2 + (next() as usize) % 3;
        let mut h = Vec::new();
        while h.len() < size.min(n) {
            let v = (next() as usize) % n;
            if !h.contains(&v) {
                h.push(v);
            }
        }
        hyperedges.push(h);
    }
    Hypergraph::new(n, hyperedges)
}

#[allow(dead_code)]
pub fn complete_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
}
