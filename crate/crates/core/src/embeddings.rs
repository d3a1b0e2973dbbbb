//! Greedy shadow-graph embeddings: embed unique edges, matchings, or
//! triangle systems into hyperedges so that the resulting graph inherits
//! F-freeness, with Berge-witness extraction when greediness fails.
//!
//! All procedures consume hyperedges in input order and pick pairs in
//! lexicographic order within each hyperedge's sorted vertex list, so runs
//! are deterministic. A run owns a single used-pair map (pair -> the
//! hyperedge index that embedded it); across the outcome no unordered pair
//! is embedded twice.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::berge::BergeWitness;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::matching::saturating_matching;
use crate::pattern::PatternFamily;
use crate::ramsey::{find_rainbow_biclique, find_rainbow_clique, ColoringBase, EdgeColoring};

/// Where and why a greedy step failed: the hyperedge, the saturated vertex
/// set whose internal pairs are all used, and those pairs' source
/// hyperedges. Carries enough state for witness extraction without
/// replaying the run.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub hyperedge_index: usize,
    pub saturated: Vec<usize>,
    /// `(u, v, source_hyperedge)` for every used pair inside `saturated`.
    pub color_map: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingOutcome {
    pub shadow: Graph,
    pub per_hyperedge: Vec<Vec<(usize, usize)>>,
    pub violation: Option<Violation>,
}

impl EmbeddingOutcome {
    pub fn edges_embedded(&self) -> usize {
        self.per_hyperedge.iter().map(|s| s.len()).sum()
    }
}

struct Run<'a> {
    host: &'a Hypergraph,
    used: BTreeMap<(usize, usize), usize>,
    per_hyperedge: Vec<Vec<(usize, usize)>>,
}

impl<'a> Run<'a> {
    fn new(host: &'a Hypergraph) -> Self {
        Run {
            host,
            used: BTreeMap::new(),
            per_hyperedge: vec![Vec::new(); host.len()],
        }
    }

    fn pair(u: usize, v: usize) -> (usize, usize) {
        (u.min(v), u.max(v))
    }

    fn is_used(&self, u: usize, v: usize) -> bool {
        self.used.contains_key(&Self::pair(u, v))
    }

    fn embed(&mut self, idx: usize, u: usize, v: usize) {
        let p = Self::pair(u, v);
        let prev = self.used.insert(p, idx);
        debug_assert!(prev.is_none(), "pair embedded twice");
        self.per_hyperedge[idx].push(p);
    }

    /// Pairs inside `vertices` already used, with their source hyperedges.
    fn color_map_of(&self, vertices: &[usize]) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if let Some(&src) = self.used.get(&Self::pair(u, v)) {
                    let p = Self::pair(u, v);
                    out.push((p.0, p.1, src));
                }
            }
        }
        out
    }

    fn violation(&self, idx: usize, saturated: Vec<usize>) -> Violation {
        Violation {
            hyperedge_index: idx,
            color_map: self.color_map_of(&saturated),
            saturated,
        }
    }

    fn finish(self, violation: Option<Violation>) -> EmbeddingOutcome {
        let edges: Vec<(usize, usize)> = self.used.keys().copied().collect();
        let shadow = Graph::new(self.host.n(), edges).expect("embedded pairs are valid edges");
        EmbeddingOutcome {
            shadow,
            per_hyperedge: self.per_hyperedge,
            violation,
        }
    }
}

/// Embeds one previously-unused edge into each hyperedge. On failure the
/// hyperedge's vertex set is saturated: it spans a complete graph of
/// already-embedded edges.
pub fn embed_unique_edges(host: &Hypergraph) -> Result<EmbeddingOutcome> {
    host.ensure_valid()?;
    if let Some((i, _)) = host
        .hyperedges()
        .iter()
        .enumerate()
        .find(|(_, h)| h.len() < 2)
    {
        return Err(Error::Precondition(format!(
            "embed_unique_edges needs hyperedges of size >= 2; hyperedge {i} is smaller"
        )));
    }
    let mut run = Run::new(host);
    for (idx, h) in host.hyperedges().iter().enumerate() {
        let mut embedded = false;
        'pairs: for (i, &u) in h.iter().enumerate() {
            for &v in &h[i + 1..] {
                if !run.is_used(u, v) {
                    run.embed(idx, u, v);
                    embedded = true;
                    break 'pairs;
                }
            }
        }
        if !embedded {
            let violation = run.violation(idx, h.clone());
            return Ok(run.finish(Some(violation)));
        }
    }
    Ok(run.finish(None))
}

/// Size threshold for [`embed_matchings`]: r^3 for K_r, s+s(s-1)(t-1)+t for
/// K_{s,t}.
pub fn matching_threshold(pattern: &PatternFamily) -> Result<usize> {
    match *pattern {
        PatternFamily::CompleteKr(r) => Ok(r * r * r),
        PatternFamily::BicliqueKst(s, t) => Ok(s + s * (s - 1) * (t - 1) + t),
        ref other => Err(Error::UnsupportedPattern(format!(
            "embed_matchings supports K_r and K_(s,t), got {other}"
        ))),
    }
}

/// Embeds into each hyperedge of size >= T a maximal matching of unused
/// pairs (smaller hyperedges contribute zero edges). If some matching falls
/// short of (|h|-T)/2, the untouched vertices form a saturated set of more
/// than T vertices whose pairs are all used, reported with its color map
/// (proper, since same-hyperedge matching edges are disjoint).
pub fn embed_matchings(host: &Hypergraph, pattern: &PatternFamily) -> Result<EmbeddingOutcome> {
    host.ensure_valid()?;
    let threshold = matching_threshold(pattern)?;
    let mut run = Run::new(host);
    for (idx, h) in host.hyperedges().iter().enumerate() {
        if h.len() < threshold {
            continue;
        }
        let mut touched = vec![false; h.len()];
        let mut matching_size = 0usize;
        for i in 0..h.len() {
            if touched[i] {
                continue;
            }
            for j in i + 1..h.len() {
                if touched[j] || run.is_used(h[i], h[j]) {
                    continue;
                }
                run.embed(idx, h[i], h[j]);
                touched[i] = true;
                touched[j] = true;
                matching_size += 1;
                break;
            }
        }
        // the floor-free inequality exactly as stated: size >= (|h|-T)/2
        if 2 * matching_size < h.len() - threshold {
            let saturated: Vec<usize> = h
                .iter()
                .enumerate()
                .filter(|&(i, _)| !touched[i])
                .map(|(_, &v)| v)
                .collect();
            let violation = run.violation(idx, saturated);
            return Ok(run.finish(Some(violation)));
        }
    }
    Ok(run.finish(None))
}

/// Embeds ceil((|h|-3)/2) unused independent edges per hyperedge of size
/// at least 4 (smaller hyperedges are skipped). A failing step exhibits
/// four untouched vertices with all six pairs used, from which a Berge-C4
/// is extractable.
pub fn embed_c4_matchings(host: &Hypergraph) -> Result<EmbeddingOutcome> {
    host.ensure_valid()?;
    let mut run = Run::new(host);
    for (idx, h) in host.hyperedges().iter().enumerate() {
        if h.len() < 4 {
            continue;
        }
        let target = (h.len() - 3).div_ceil(2);
        let mut touched = vec![false; h.len()];
        let mut size = 0usize;
        while size < target {
            let free: Vec<usize> = (0..h.len()).filter(|&i| !touched[i]).collect();
            debug_assert!(free.len() >= 4);
            let mut picked = None;
            'pairs: for (a, &i) in free.iter().enumerate() {
                for &j in &free[a + 1..] {
                    if !run.is_used(h[i], h[j]) {
                        picked = Some((i, j));
                        break 'pairs;
                    }
                }
            }
            match picked {
                Some((i, j)) => {
                    run.embed(idx, h[i], h[j]);
                    touched[i] = true;
                    touched[j] = true;
                    size += 1;
                }
                None => {
                    // all pairs among the untouched vertices are used; the
                    // first four witness the C4
                    let saturated: Vec<usize> = free[..4].iter().map(|&i| h[i]).collect();
                    let violation = run.violation(idx, saturated);
                    return Ok(run.finish(Some(violation)));
                }
            }
        }
    }
    Ok(run.finish(None))
}

/// Embeds exactly |h|-3 unused edges per hyperedge of size >= 4, forming
/// vertex-disjoint triangles plus at most three independent edges, by the
/// size case analysis: 4 -> one edge; 5 -> a 2-matching; 6 -> a triangle
/// (preferred) or a 3-matching; >= 7 -> a triangle, then recurse on the
/// untouched remainder. Before each hyperedge, asserts that no 4 of its
/// vertices carry 5 or more previously embedded edges; a violation reports
/// that 4-vertex configuration for Berge-C4 extraction.
pub fn embed_triangles_and_edges(host: &Hypergraph) -> Result<EmbeddingOutcome> {
    host.ensure_valid()?;
    let mut run = Run::new(host);
    for (idx, h) in host.hyperedges().iter().enumerate() {
        if h.len() < 4 {
            continue;
        }
        // at most 4 already-embedded edges on any 4 vertices of h
        if let Some(quad) = find_overloaded_quad(&run, h) {
            let violation = run.violation(idx, quad);
            return Ok(run.finish(Some(violation)));
        }
        let mut remaining: Vec<usize> = h.clone();
        while remaining.len() >= 4 {
            match remaining.len() {
                4 => {
                    let (u, v) = first_free_pair(&run, &remaining)
                        .expect("4 vertices with no red K4^- leave a free pair");
                    run.embed(idx, u, v);
                    remaining.clear();
                }
                5 => {
                    let pairs = first_free_matching(&run, &remaining, 2)
                        .expect("K5 with no red K4^- has a free 2-matching");
                    for (u, v) in pairs {
                        run.embed(idx, u, v);
                    }
                    remaining.clear();
                }
                6 => {
                    if let Some([a, b, c]) = first_free_triangle(&run, &remaining) {
                        run.embed(idx, a, b);
                        run.embed(idx, a, c);
                        run.embed(idx, b, c);
                    } else {
                        let pairs = first_free_matching(&run, &remaining, 3)
                            .expect("K6 with no red K4^- has a free triangle or 3-matching");
                        for (u, v) in pairs {
                            run.embed(idx, u, v);
                        }
                    }
                    remaining.clear();
                }
                _ => {
                    let [a, b, c] = first_free_triangle(&run, &remaining)
                        .expect("K7 with no red K4^- has a free triangle");
                    run.embed(idx, a, b);
                    run.embed(idx, a, c);
                    run.embed(idx, b, c);
                    remaining.retain(|&v| v != a && v != b && v != c);
                }
            }
        }
    }
    Ok(run.finish(None))
}

fn find_overloaded_quad(run: &Run, h: &[usize]) -> Option<Vec<usize>> {
    let k = h.len();
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for d in c + 1..k {
                    let quad = [h[a], h[b], h[c], h[d]];
                    let mut used = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if run.is_used(quad[i], quad[j]) {
                                used += 1;
                            }
                        }
                    }
                    if used >= 5 {
                        return Some(quad.to_vec());
                    }
                }
            }
        }
    }
    None
}

fn first_free_pair(run: &Run, vs: &[usize]) -> Option<(usize, usize)> {
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if !run.is_used(u, v) {
                return Some((u, v));
            }
        }
    }
    None
}

fn first_free_matching(run: &Run, vs: &[usize], k: usize) -> Option<Vec<(usize, usize)>> {
    fn rec(
        run: &Run,
        vs: &[usize],
        k: usize,
        start: usize,
        acc: &mut Vec<(usize, usize)>,
        taken: &mut Vec<usize>,
    ) -> bool {
        if acc.len() == k {
            return true;
        }
        for i in start..vs.len() {
            if taken.contains(&vs[i]) {
                continue;
            }
            for j in i + 1..vs.len() {
                if taken.contains(&vs[j]) || run.is_used(vs[i], vs[j]) {
                    continue;
                }
                acc.push((vs[i], vs[j]));
                taken.push(vs[i]);
                taken.push(vs[j]);
                if rec(run, vs, k, i + 1, acc, taken) {
                    return true;
                }
                acc.pop();
                taken.pop();
                taken.pop();
            }
        }
        false
    }
    let mut acc = Vec::new();
    let mut taken = Vec::new();
    rec(run, vs, k, 0, &mut acc, &mut taken).then_some(acc)
}

fn first_free_triangle(run: &Run, vs: &[usize]) -> Option<[usize; 3]> {
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate().skip(i + 1) {
            if run.is_used(a, b) {
                continue;
            }
            for &c in &vs[j + 1..] {
                if !run.is_used(a, c) && !run.is_used(b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Transcribes a rainbow copy of `pattern` into a Berge witness.
/// `placement[i]` is the host vertex for pattern vertex i of the canonical
/// realization and `colors` the hyperedge index per pattern edge, aligned
/// with the realization's edge order. Errors on repeated colors or an edge
/// not inside its hyperedge.
pub fn lift_rainbow_to_berge(
    host: &Hypergraph,
    pattern: &PatternFamily,
    placement: &[usize],
    colors: &[usize],
) -> Result<BergeWitness> {
    let realized = pattern.realize()?;
    if placement.len() != realized.n() {
        return Err(Error::InvalidViolation(format!(
            "placement covers {} vertices, pattern has {}",
            placement.len(),
            realized.n()
        )));
    }
    if colors.len() != realized.edge_count() {
        return Err(Error::InvalidViolation(format!(
            "got {} colors for {} pattern edges",
            colors.len(),
            realized.edge_count()
        )));
    }
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != colors.len() {
        return Err(Error::InvalidViolation("color repeated in rainbow copy".into()));
    }
    let mut hosts = placement.to_vec();
    hosts.sort_unstable();
    hosts.dedup();
    if hosts.len() != placement.len() {
        return Err(Error::InvalidViolation("placement repeats a host vertex".into()));
    }
    for (&(u, v), &idx) in realized.edges().iter().zip(colors) {
        if idx >= host.len()
            || !host.contains_vertex(idx, placement[u])
            || !host.contains_vertex(idx, placement[v])
        {
            return Err(Error::InvalidViolation(format!(
                "edge ({u},{v}) is not inside hyperedge {idx}"
            )));
        }
    }
    let vertex_map: BTreeMap<usize, usize> = realized
        .support()
        .into_iter()
        .map(|pv| (pv, placement[pv]))
        .collect();
    let edge_assignment = realized
        .edges()
        .iter()
        .zip(colors)
        .map(|(&(u, v), &idx)| (u, v, idx))
        .collect();
    Ok(BergeWitness { vertex_map, edge_assignment })
}

/// Lifts an [`embed_matchings`] violation to a Berge witness for its
/// pattern: the saturated set is a properly edge-colored complete graph, so
/// the rainbow finders locate a rainbow K_r (resp. K_{s,t}) inside it.
pub fn matching_violation_to_witness(
    host: &Hypergraph,
    violation: &Violation,
    pattern: &PatternFamily,
) -> Result<BergeWitness> {
    let verts = &violation.saturated;
    let index_of = |v: usize| verts.iter().position(|&x| x == v);
    let k = verts.len();
    // relabel the color map onto K_k; every pair must be present
    let mut colors = vec![u32::MAX; k * (k - 1) / 2];
    let probe = EdgeColoring::new(ColoringBase::Complete { n: k }, colors.clone())?;
    for &(u, v, src) in &violation.color_map {
        if let (Some(iu), Some(iv)) = (index_of(u), index_of(v)) {
            colors[probe.edge_index(iu, iv).unwrap()] = src as u32;
        }
    }
    if colors.contains(&u32::MAX) {
        return Err(Error::InvalidViolation(
            "saturated set has an uncolored pair".into(),
        ));
    }

    match *pattern {
        PatternFamily::CompleteKr(r) => {
            let coloring = EdgeColoring::new(ColoringBase::Complete { n: k }, colors)?;
            let clique = find_rainbow_clique(&coloring, r)?.ok_or_else(|| {
                Error::InvalidViolation("no rainbow clique in saturated set".into())
            })?;
            let placement: Vec<usize> = clique.iter().map(|&i| verts[i]).collect();
            let realized = pattern.realize()?;
            let edge_colors: Vec<usize> = realized
                .edges()
                .iter()
                .map(|&(u, v)| coloring.color_of(clique[u], clique[v]).unwrap() as usize)
                .collect();
            lift_rainbow_to_berge(host, pattern, &placement, &edge_colors)
        }
        PatternFamily::BicliqueKst(s, t) => {
            // restrict the proper coloring to K_{s, k-s}: rows = first s
            // saturated vertices, columns = the rest
            let full = EdgeColoring::new(ColoringBase::Complete { n: k }, colors)?;
            let m = k - s;
            let mut bip_colors = Vec::with_capacity(s * m);
            for row in 0..s {
                for col in 0..m {
                    bip_colors.push(full.color_of(row, s + col).unwrap());
                }
            }
            let bip = EdgeColoring::new(ColoringBase::CompleteBipartite { s, m }, bip_colors)?;
            let cols = find_rainbow_biclique(&bip, s, t)?.ok_or_else(|| {
                Error::InvalidViolation("no rainbow biclique in saturated set".into())
            })?;
            // canonical K_{s,t}: vertices 0..s are rows, s..s+t the columns
            let mut placement: Vec<usize> = (0..s).map(|r| verts[r]).collect();
            placement.extend(cols.iter().map(|&c| verts[c]));
            let realized = pattern.realize()?;
            let edge_colors: Vec<usize> = realized
                .edges()
                .iter()
                .map(|&(u, v)| bip.color_of(u, cols[v - s]).unwrap() as usize)
                .collect();
            lift_rainbow_to_berge(host, pattern, &placement, &edge_colors)
        }
        ref other => Err(Error::UnsupportedPattern(format!(
            "matching violations carry K_r or K_(s,t) structure, got {other}"
        ))),
    }
}

/// Lifts a four-vertex violation (from [`embed_c4_matchings`] or the
/// triangle procedure's overload check) to a verified Berge-C4: tries every
/// 4-cycle on the saturated vertices and assigns its edges to distinct
/// hyperedges drawn from the color map plus the violating hyperedge, by
/// bipartite matching.
pub fn c4_violation_to_witness(host: &Hypergraph, violation: &Violation) -> Result<BergeWitness> {
    if violation.saturated.len() != 4 {
        return Err(Error::InvalidViolation(format!(
            "C4 extraction needs 4 saturated vertices, got {}",
            violation.saturated.len()
        )));
    }
    let vs = &violation.saturated;
    let mut involved: Vec<usize> = violation.color_map.iter().map(|&(_, _, s)| s).collect();
    involved.push(violation.hyperedge_index);
    involved.sort_unstable();
    involved.dedup();

    // the three undirected 4-cycles on {0,1,2,3} in cycle order
    const CYCLES: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]];
    for cyc in CYCLES {
        let placement: Vec<usize> = cyc.iter().map(|&i| vs[i]).collect();
        // candidates per cycle edge: involved hyperedges containing the pair
        let adj: Vec<Vec<usize>> = (0..4)
            .map(|e| {
                let (a, b) = (placement[e], placement[(e + 1) % 4]);
                involved
                    .iter()
                    .enumerate()
                    .filter(|&(_, &idx)| {
                        host.contains_vertex(idx, a) && host.contains_vertex(idx, b)
                    })
                    .map(|(pos, _)| pos)
                    .collect()
            })
            .collect();
        if let Some(m) = saturating_matching(&adj, involved.len()) {
            // cycle edge e joins pattern vertices e and (e+1) mod 4; align
            // with the canonical C4 edge order (0,1),(1,2),(2,3),(0,3)
            let realized = PatternFamily::CycleCk(4).realize()?;
            let mut colors = vec![0usize; 4];
            for (e, &slot) in m.iter().enumerate() {
                let (u, v) = (e, (e + 1) % 4);
                let key = (u.min(v), u.max(v));
                let pos = realized.edges().iter().position(|&p| p == key).unwrap();
                colors[pos] = involved[slot];
            }
            return lift_rainbow_to_berge(host, &PatternFamily::CycleCk(4), &placement, &colors);
        }
    }
    Err(Error::InvalidViolation(
        "no Berge-C4 assignment over the saturated quadruple".into(),
    ))
}

/// Lifts an [`embed_unique_edges`] violation to a witness for any pattern
/// with at most |saturated| vertices: every pair in the saturated set is
/// embedded with a globally unique color, so any placement is rainbow.
pub fn unique_violation_to_witness(
    host: &Hypergraph,
    violation: &Violation,
    pattern: &PatternFamily,
) -> Result<BergeWitness> {
    let realized = pattern.realize()?;
    if realized.n() > violation.saturated.len() {
        return Err(Error::InvalidViolation(format!(
            "pattern needs {} vertices but only {} are saturated",
            realized.n(),
            violation.saturated.len()
        )));
    }
    let placement: Vec<usize> = violation.saturated[..realized.n()].to_vec();
    let color_of = |a: usize, b: usize| -> Option<usize> {
        let key = (a.min(b), a.max(b));
        violation
            .color_map
            .iter()
            .find(|&&(u, v, _)| (u, v) == key)
            .map(|&(_, _, s)| s)
    };
    let colors: Vec<usize> = realized
        .edges()
        .iter()
        .map(|&(u, v)| {
            color_of(placement[u], placement[v]).ok_or_else(|| {
                Error::InvalidViolation("saturated set has an uncolored pair".into())
            })
        })
        .collect::<Result<_>>()?;
    lift_rainbow_to_berge(host, pattern, &placement, &colors)
}
