//! Hypergraphs as ordered lists of hyperedges, duplicates allowed.
//!
//! The list order is significant: the greedy embedding procedures consume
//! hyperedges in order, and duplicate hyperedges count as distinct by index
//! everywhere (a duplicate pair is a Berge-C2).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    hyperedges: Vec<Vec<usize>>,
}

/// One violated invariant, as data rather than a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationIssue {
    pub hyperedge: usize,
    pub rule: String,
}

/// Edge/size tallies. `degree_sum` is the paper-facing "size" of a
/// non-uniform hypergraph; `deficiency_sum` is the objective Σ(|h|−3)
/// tracked for C4-free families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub edge_count: usize,
    pub degree_sum: usize,
    pub deficiency_sum: i64,
    pub min_size: Option<usize>,
    pub max_size: Option<usize>,
}

impl Hypergraph {
    /// Builds a hypergraph; vertices inside each hyperedge are sorted but
    /// duplicates (inside a hyperedge or between hyperedges) are kept so that
    /// `validate` can report them.
    pub fn new(n: usize, hyperedges: Vec<Vec<usize>>) -> Self {
        let mut hs = hyperedges;
        for h in &mut hs {
            h.sort_unstable();
        }
        Hypergraph { n, hyperedges: hs }
    }

    pub fn empty(n: usize) -> Self {
        Hypergraph { n, hyperedges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    pub fn len(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperedges.is_empty()
    }

    pub fn push(&mut self, hyperedge: Vec<usize>) {
        let mut h = hyperedge;
        h.sort_unstable();
        self.hyperedges.push(h);
    }

    pub fn pop(&mut self) {
        self.hyperedges.pop();
    }

    /// Membership test; hyperedges are sorted at construction.
    pub fn contains_vertex(&self, idx: usize, v: usize) -> bool {
        self.hyperedges[idx].binary_search(&v).is_ok()
    }

    /// Checks every type invariant; empty iff the hypergraph is valid.
    pub fn validate(&self) -> Vec<ValidationIssue> {
        let mut issues = Vec::new();
        for (i, h) in self.hyperedges.iter().enumerate() {
            for w in h.windows(2) {
                if w[0] == w[1] {
                    issues.push(ValidationIssue {
                        hyperedge: i,
                        rule: format!("repeated vertex {} in hyperedge {i}", w[0]),
                    });
                    break;
                }
            }
            if let Some(&v) = h.iter().find(|&&v| v >= self.n) {
                issues.push(ValidationIssue {
                    hyperedge: i,
                    rule: format!("vertex {v} in hyperedge {i} is >= n = {}", self.n),
                });
            }
        }
        issues
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let issues = self.validate();
        if issues.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(
                issues
                    .iter()
                    .map(|i| i.rule.clone())
                    .collect::<Vec<_>>()
                    .join("; "),
            ))
        }
    }

    /// Vertex -> indices of hyperedges containing it, each list ascending.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, h) in self.hyperedges.iter().enumerate() {
            for &v in h {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Indices of hyperedges containing both `u` and `v`, ascending.
    pub fn covering_pair(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.contains_vertex(i, u) && self.contains_vertex(i, v))
            .collect()
    }

    /// Returns the same hyperedges in a seeded shuffled order together with
    /// the permutation applied (`order[new_index] = old_index`).
    pub fn shuffled(&self, seed: u64) -> (Hypergraph, Vec<usize>) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.shuffle(&mut rng);
        let hyperedges = order.iter().map(|&i| self.hyperedges[i].clone()).collect();
        (
            Hypergraph { n: self.n, hyperedges },
            order,
        )
    }
}

/// Tallies sizes and degrees; the degree sum is computed both by vertex and
/// by hyperedge and the identity Σ d(v) = Σ |h| asserted.
pub fn count_report(h: &Hypergraph) -> Result<CountReport> {
    h.ensure_valid()?;
    let by_hyperedge: usize = h.hyperedges().iter().map(|e| e.len()).sum();
    let mut degree = vec![0usize; h.n()];
    for e in h.hyperedges() {
        for &v in e {
            degree[v] += 1;
        }
    }
    let by_vertex: usize = degree.iter().sum();
    assert_eq!(by_vertex, by_hyperedge, "degree-sum identity violated");
    let sizes = h.hyperedges().iter().map(|e| e.len());
    Ok(CountReport {
        edge_count: h.len(),
        degree_sum: by_hyperedge,
        deficiency_sum: h
            .hyperedges()
            .iter()
            .map(|e| e.len() as i64 - 3)
            .sum(),
        min_size: sizes.clone().min(),
        max_size: sizes.max(),
    })
}
