//! Pattern families: the graphs F sought as Berge copies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// C2 is the two-parallel-edges "cycle": it has no simple-graph realization
/// and is decided by the intersection predicate (two hyperedges sharing two
/// vertices) instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternFamily {
    CompleteKr(usize),
    BicliqueKst(usize, usize),
    CycleCk(usize),
    PathPk(usize),
    Arbitrary(Graph),
}

impl PatternFamily {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PatternFamily::CompleteKr(r) if r >= 2 => Ok(()),
            PatternFamily::CompleteKr(r) => {
                Err(Error::Precondition(format!("K_r needs r >= 2, got {r}")))
            }
            PatternFamily::BicliqueKst(s, t) if s >= 1 && s <= t => Ok(()),
            PatternFamily::BicliqueKst(s, t) => Err(Error::Precondition(format!(
                "K_{{s,t}} needs 1 <= s <= t, got ({s},{t})"
            ))),
            PatternFamily::CycleCk(k) if k >= 2 => Ok(()),
            PatternFamily::CycleCk(k) => {
                Err(Error::Precondition(format!("C_k needs k >= 2, got {k}")))
            }
            PatternFamily::PathPk(k) if k >= 2 => Ok(()),
            PatternFamily::PathPk(k) => {
                Err(Error::Precondition(format!("P_k needs k >= 2 vertices, got {k}")))
            }
            PatternFamily::Arbitrary(_) => Ok(()),
        }
    }

    pub fn is_c2(&self) -> bool {
        matches!(self, PatternFamily::CycleCk(2))
    }

    /// Number of vertices that must be mapped (positive degree only).
    pub fn core_vertex_count(&self) -> usize {
        match self {
            PatternFamily::CompleteKr(r) => *r,
            PatternFamily::BicliqueKst(s, t) => s + t,
            PatternFamily::CycleCk(k) => *k,
            PatternFamily::PathPk(k) => *k,
            PatternFamily::Arbitrary(g) => g.support().len(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            PatternFamily::CompleteKr(r) => r * (r - 1) / 2,
            PatternFamily::BicliqueKst(s, t) => s * t,
            PatternFamily::CycleCk(k) => *k,
            PatternFamily::PathPk(k) => k - 1,
            PatternFamily::Arbitrary(g) => g.edge_count(),
        }
    }

    /// The concrete canonical graph: vertices 0-based, `K_{s,t}` with the
    /// s-side first, cycles in vertex order. C2 is refused.
    pub fn realize(&self) -> Result<Graph> {
        self.validate()?;
        match self {
            PatternFamily::CompleteKr(r) => {
                let edges = (0..*r).flat_map(|i| (i + 1..*r).map(move |j| (i, j)));
                Graph::new(*r, edges)
            }
            PatternFamily::BicliqueKst(s, t) => {
                let (s, t) = (*s, *t);
                let edges = (0..s).flat_map(move |i| (0..t).map(move |j| (i, s + j)));
                Graph::new(s + t, edges)
            }
            PatternFamily::CycleCk(2) => Err(Error::C2NotRealizable),
            PatternFamily::CycleCk(k) => {
                let k = *k;
                let edges = (0..k).map(|i| (i, (i + 1) % k));
                Graph::new(k, edges)
            }
            PatternFamily::PathPk(k) => Graph::new(*k, (0..k - 1).map(|i| (i, i + 1))),
            PatternFamily::Arbitrary(g) => Ok(g.clone()),
        }
    }

    /// Parses a compact spec: `K3`, `K2,3`, `C4`, `P4`.
    pub fn parse(spec: &str) -> Result<PatternFamily> {
        let spec = spec.trim();
        let err = || Error::Parse(format!("unrecognized pattern spec `{spec}`"));
        let (head, rest) = spec.split_at(1);
        let fam = match head {
            "K" | "k" => {
                if let Some((s, t)) = rest.split_once(',') {
                    PatternFamily::BicliqueKst(
                        s.parse().map_err(|_| err())?,
                        t.parse().map_err(|_| err())?,
                    )
                } else {
                    PatternFamily::CompleteKr(rest.parse().map_err(|_| err())?)
                }
            }
            "C" | "c" => PatternFamily::CycleCk(rest.parse().map_err(|_| err())?),
            "P" | "p" => PatternFamily::PathPk(rest.parse().map_err(|_| err())?),
            _ => return Err(err()),
        };
        fam.validate()?;
        Ok(fam)
    }
}

impl std::fmt::Display for PatternFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PatternFamily::CompleteKr(r) => write!(f, "K{r}"),
            PatternFamily::BicliqueKst(s, t) => write!(f, "K{s},{t}"),
            PatternFamily::CycleCk(k) => write!(f, "C{k}"),
            PatternFamily::PathPk(k) => write!(f, "P{k}"),
            PatternFamily::Arbitrary(g) => {
                write!(f, "graph(n={},m={})", g.n(), g.edge_count())
            }
        }
    }
}
