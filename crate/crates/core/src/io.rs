//! Text and JSON readers/writers for hypergraphs and graphs.
//!
//! Text format: UTF-8, one hyperedge per line, vertices as space-separated
//! decimal labels; `#` starts a comment; an optional `n=<int>` header fixes
//! the vertex count (labels are then used as-is and must be `< n`). Without
//! the header, arbitrary non-negative labels are remapped to dense 0-based
//! ids in ascending label order and the mapping is reported. Writers emit
//! the header and sort vertices ascending within a hyperedge, so writing and
//! re-reading is the identity, duplicate hyperedges and list order included.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;

/// A parsed hypergraph plus `labels[internal_id] = original label`.
#[derive(Debug, Clone)]
pub struct LoadedHypergraph {
    pub hypergraph: Hypergraph,
    pub labels: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    hyperedges: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

fn parse_lines(text: &str) -> Result<(Option<usize>, Vec<Vec<usize>>)> {
    let mut fixed_n = None;
    let mut rows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            fixed_n = Some(rest.trim().parse().map_err(|_| {
                Error::Parse(format!("line {}: bad vertex count `{rest}`", lineno + 1))
            })?);
            continue;
        }
        let mut row = Vec::new();
        for tok in line.split_whitespace() {
            row.push(tok.parse().map_err(|_| {
                Error::Parse(format!("line {}: bad vertex label `{tok}`", lineno + 1))
            })?);
        }
        rows.push(row);
    }
    Ok((fixed_n, rows))
}

fn remap(fixed_n: Option<usize>, rows: Vec<Vec<usize>>) -> Result<(usize, Vec<Vec<usize>>, Vec<usize>)> {
    match fixed_n {
        Some(n) => {
            for row in &rows {
                if let Some(&v) = row.iter().find(|&&v| v >= n) {
                    return Err(Error::Parse(format!(
                        "label {v} out of range for declared n={n}"
                    )));
                }
            }
            Ok((n, rows, (0..n).collect()))
        }
        None => {
            let mut labels: Vec<usize> = rows.iter().flatten().copied().collect();
            labels.sort_unstable();
            labels.dedup();
            let index = |v: usize| labels.binary_search(&v).unwrap();
            let mapped = rows
                .into_iter()
                .map(|row| row.into_iter().map(index).collect())
                .collect();
            let n = labels.len();
            Ok((n, mapped, labels))
        }
    }
}

pub fn read_hypergraph_text(text: &str) -> Result<LoadedHypergraph> {
    let (fixed_n, rows) = parse_lines(text)?;
    let (n, rows, labels) = remap(fixed_n, rows)?;
    let hypergraph = Hypergraph::new(n, rows);
    hypergraph.ensure_valid()?;
    Ok(LoadedHypergraph { hypergraph, labels })
}

pub fn read_graph_text(text: &str) -> Result<LoadedGraph> {
    let (fixed_n, rows) = parse_lines(text)?;
    for row in &rows {
        if row.len() != 2 {
            return Err(Error::Parse(format!(
                "graph line must have exactly two labels, got {:?}",
                row
            )));
        }
    }
    let (n, rows, labels) = remap(fixed_n, rows)?;
    let graph = Graph::new(n, rows.into_iter().map(|r| (r[0], r[1])))?;
    Ok(LoadedGraph { graph, labels })
}

pub fn write_hypergraph_text(h: &Hypergraph) -> String {
    let mut out = format!("n={}\n", h.n());
    for e in h.hyperedges() {
        let toks: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_graph_text(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn read_hypergraph_json(text: &str) -> Result<LoadedHypergraph> {
    let parsed: HypergraphJson = serde_json::from_str(text)?;
    let hypergraph = Hypergraph::new(parsed.n, parsed.hyperedges);
    hypergraph.ensure_valid()?;
    let labels = (0..hypergraph.n()).collect();
    Ok(LoadedHypergraph { hypergraph, labels })
}

pub fn write_hypergraph_json(h: &Hypergraph) -> String {
    serde_json::to_string(&HypergraphJson {
        n: h.n(),
        hyperedges: h.hyperedges().to_vec(),
    })
    .expect("serialization cannot fail")
}

pub fn read_graph_json(text: &str) -> Result<LoadedGraph> {
    let parsed: GraphJson = serde_json::from_str(text)?;
    let graph = Graph::new(parsed.n, parsed.edges)?;
    let labels = (0..graph.n()).collect();
    Ok(LoadedGraph { graph, labels })
}

pub fn write_graph_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson {
        n: g.n(),
        edges: g.edges().to_vec(),
    })
    .expect("serialization cannot fail")
}

/// Reads either format, sniffing JSON by a leading `{`.
pub fn read_hypergraph_auto(text: &str) -> Result<LoadedHypergraph> {
    if text.trim_start().starts_with('{') {
        read_hypergraph_json(text)
    } else {
        read_hypergraph_text(text)
    }
}

pub fn read_graph_auto(text: &str) -> Result<LoadedGraph> {
    if text.trim_start().starts_with('{') {
        read_graph_json(text)
    } else {
        read_graph_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remaps_sparse_labels_and_reports_mapping() {
        let loaded = read_hypergraph_text("10 20 30\n20 40\n").unwrap();
        assert_eq!(loaded.labels, vec![10, 20, 30, 40]);
        assert_eq!(loaded.hypergraph.hyperedges(), &[vec![0, 1, 2], vec![1, 3]]);
    }

    #[test]
    fn header_fixes_n_and_keeps_labels() {
        let loaded = read_hypergraph_text("# comment\nn=6\n0 1 2\n").unwrap();
        assert_eq!(loaded.hypergraph.n(), 6);
        assert_eq!(loaded.labels, (0..6).collect::<Vec<_>>());
        assert!(read_hypergraph_text("n=2\n0 5\n").is_err());
    }

    #[test]
    fn text_round_trip_preserves_duplicates_and_order() {
        let h = Hypergraph::new(5, vec![vec![2, 3, 4], vec![0, 1, 2], vec![0, 1, 2]]);
        let text = write_hypergraph_text(&h);
        let back = read_hypergraph_text(&text).unwrap();
        assert_eq!(back.hypergraph, h);
    }

    #[test]
    fn json_round_trip() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 3], vec![0, 1, 3]]);
        let back = read_hypergraph_json(&write_hypergraph_json(&h)).unwrap();
        assert_eq!(back.hypergraph, h);
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let back = read_graph_json(&write_graph_json(&g)).unwrap();
        assert_eq!(back.graph, g);
    }

    #[test]
    fn graph_lines_need_two_labels() {
        assert!(read_graph_text("0 1 2\n").is_err());
        let g = read_graph_text("0 1\n1 2\n").unwrap();
        assert_eq!(g.graph.edge_count(), 2);
    }
}
