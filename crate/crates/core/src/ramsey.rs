//! Exhaustive verification of the K5/K6/K7 two-coloring lemmas and greedy
//! rainbow-subgraph finders for properly edge-colored complete and complete
//! bipartite graphs.
//!
//! Two-colorings of K_n are enumerated as bitmasks over the C(n,2) edges in
//! lexicographic edge order; bit value 1 is red, 0 is blue. No isomorphism
//! reduction is applied: 2^21 cases are cheap and the unreduced enumeration
//! is unarguably exhaustive.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;

pub const RED: u32 = 1;
pub const BLUE: u32 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ColoringBase {
    Complete { n: usize },
    /// Left class `0..s`, right class `s..s+m`.
    CompleteBipartite { s: usize, m: usize },
}

/// A total edge coloring of a complete or complete bipartite base graph.
/// Colors are aligned with the base's lexicographic edge order.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeColoring {
    pub base: ColoringBase,
    pub colors: Vec<u32>,
}

/// Lexicographic edge list of the base graph.
pub fn base_edges(base: ColoringBase) -> Vec<(usize, usize)> {
    match base {
        ColoringBase::Complete { n } => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect(),
        ColoringBase::CompleteBipartite { s, m } => (0..s)
            .flat_map(|i| (0..m).map(move |j| (i, s + j)))
            .collect(),
    }
}

impl EdgeColoring {
    pub fn new(base: ColoringBase, colors: Vec<u32>) -> Result<Self> {
        let expect = base_edges(base).len();
        if colors.len() != expect {
            return Err(Error::Validation(format!(
                "coloring has {} colors but the base has {expect} edges",
                colors.len()
            )));
        }
        Ok(EdgeColoring { base, colors })
    }

    /// Red/blue coloring of K_n from a bitmask (bit i colors edge i).
    /// Defined for up to 64 edges (n <= 11).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let m = n * (n - 1) / 2;
        assert!(m <= 64, "bitmask colorings cover at most 64 edges");
        let colors = (0..m).map(|i| (mask >> i & 1) as u32).collect();
        EdgeColoring {
            base: ColoringBase::Complete { n },
            colors,
        }
    }

    pub fn to_mask(&self) -> Option<u64> {
        if self.colors.len() > 64 || self.colors.iter().any(|&c| c > 1) {
            return None;
        }
        Some(
            self.colors
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c as u64) << i),
        )
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = (u.min(v), u.max(v));
        match self.base {
            ColoringBase::Complete { n } => {
                if v >= n || u == v {
                    return None;
                }
                // prefix count: sum over i < u of (n-1-i)
                let prefix = u * (n - 1) - u * (u.saturating_sub(1)) / 2;
                Some(prefix + (v - u - 1))
            }
            ColoringBase::CompleteBipartite { s, m } => {
                if u >= s || v < s || v >= s + m {
                    return None;
                }
                Some(u * m + (v - s))
            }
        }
    }

    pub fn color_of(&self, u: usize, v: usize) -> Option<u32> {
        self.edge_index(u, v).map(|i| self.colors[i])
    }

    pub fn vertex_count(&self) -> usize {
        match self.base {
            ColoringBase::Complete { n } => n,
            ColoringBase::CompleteBipartite { s, m } => s + m,
        }
    }

    /// Proper = incident edges receive distinct colors. Two-colorings are
    /// generally not proper; properness is a checkable predicate here, not
    /// an invariant.
    pub fn is_proper(&self) -> bool {
        let n = self.vertex_count();
        let edges = base_edges(self.base);
        let mut seen: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            let c = self.colors[idx];
            for &w in &[u, v] {
                if seen[w].contains(&c) {
                    return false;
                }
                seen[w].push(c);
            }
        }
        true
    }

    /// Random proper coloring: edges are visited in a seeded shuffled order
    /// and each receives the least color not conflicting at either endpoint.
    pub fn random_proper(base: ColoringBase, seed: u64) -> Self {
        let edges = base_edges(base);
        let n = match base {
            ColoringBase::Complete { n } => n,
            ColoringBase::CompleteBipartite { s, m } => s + m,
        };
        let mut order: Vec<usize> = (0..edges.len()).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
        let mut colors = vec![u32::MAX; edges.len()];
        let mut at_vertex: Vec<Vec<u32>> = vec![Vec::new(); n];
        for &idx in &order {
            let (u, v) = edges[idx];
            let mut c = 0u32;
            while at_vertex[u].contains(&c) || at_vertex[v].contains(&c) {
                c += 1;
            }
            colors[idx] = c;
            at_vertex[u].push(c);
            at_vertex[v].push(c);
        }
        EdgeColoring { base, colors }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substructure {
    RedK4Minus,
    BlueMatching(usize),
    BlueTriangle,
    MonochromaticTriangle,
}

/// Precomputed edge-subset masks for the fixed-order predicates.
struct MaskTables {
    n: usize,
    /// For each 4-subset, the mask of its 6 edges.
    quads: Vec<u64>,
    /// For each 3-subset, the mask of its 3 edges.
    triples: Vec<u64>,
    /// All masks of k pairwise-disjoint edges, k <= 3.
    matchings: Vec<Vec<u64>>,
}

fn edge_index_complete(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    u * (n - 1) - u * (u.saturating_sub(1)) / 2 + (v - u - 1)
}

impl MaskTables {
    fn new(n: usize) -> Self {
        let mut quads = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let vs = [a, b, c, d];
                        let mut mask = 0u64;
                        for i in 0..4 {
                            for j in i + 1..4 {
                                mask |= 1 << edge_index_complete(n, vs[i], vs[j]);
                            }
                        }
                        quads.push(mask);
                    }
                }
            }
        }
        let mut triples = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    triples.push(
                        1u64 << edge_index_complete(n, a, b)
                            | 1 << edge_index_complete(n, a, c)
                            | 1 << edge_index_complete(n, b, c),
                    );
                }
            }
        }
        let edges = base_edges(ColoringBase::Complete { n });
        let mut matchings = vec![Vec::new(); 4];
        for (i, &(a, b)) in edges.iter().enumerate() {
            matchings[1].push(1u64 << i);
            for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    matchings[2].push(1u64 << i | 1 << j);
                    for (k, &(e, f)) in edges.iter().enumerate().skip(j + 1) {
                        if [e, f].iter().all(|&x| x != a && x != b && x != c && x != d) {
                            matchings[3].push(1u64 << i | 1 << j | 1 << k);
                        }
                    }
                }
            }
        }
        MaskTables { n, quads, triples, matchings }
    }

    fn has_red_k4_minus(&self, red: u64) -> bool {
        self.quads.iter().any(|&q| (red & q).count_ones() >= 5)
    }

    fn has_blue_triangle(&self, red: u64) -> bool {
        self.triples.iter().any(|&t| red & t == 0)
    }

    fn has_red_triangle(&self, red: u64) -> bool {
        self.triples.iter().any(|&t| t & !red == 0)
    }

    fn has_blue_matching(&self, red: u64, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        self.matchings[k].iter().any(|&m| red & m == 0)
    }

    fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }
}

/// Exact predicate over a 2-coloring by enumeration.
pub fn has_substructure(coloring: &EdgeColoring, kind: Substructure) -> Result<bool> {
    let n = match coloring.base {
        ColoringBase::Complete { n } => n,
        ColoringBase::CompleteBipartite { .. } => {
            return Err(Error::UnsupportedPattern(
                "substructure predicates are defined on complete bases".into(),
            ))
        }
    };
    let red = coloring.to_mask().ok_or_else(|| {
        Error::Precondition("substructure predicates need a 2-coloring".into())
    })?;
    if matches!(kind, Substructure::BlueMatching(k) if k > 3) {
        return Err(Error::UnsupportedPattern(
            "blue matchings supported up to size 3".into(),
        ));
    }
    let tables = MaskTables::new(n);
    Ok(match kind {
        Substructure::RedK4Minus => tables.has_red_k4_minus(red),
        Substructure::BlueMatching(k) => tables.has_blue_matching(red, k),
        Substructure::BlueTriangle => tables.has_blue_triangle(red),
        Substructure::MonochromaticTriangle => {
            tables.has_blue_triangle(red) || tables.has_red_triangle(red)
        }
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RamseyVerdict {
    pub order: usize,
    pub colorings_checked: u64,
    pub counterexample: Option<EdgeColoring>,
}

fn scan_all_colorings(
    n: usize,
    exec: &Exec,
    holds: impl Fn(&MaskTables, u64) -> bool + Sync,
) -> RamseyVerdict {
    let tables = MaskTables::new(n);
    let total: u64 = 1 << tables.edge_count();

    let min_failure: Option<u64>;
    #[cfg(feature = "parallel")]
    {
        if exec.is_parallel() {
            use rayon::prelude::*;
            min_failure = exec.run(|| {
                (0..total)
                    .into_par_iter()
                    .filter(|&mask| !holds(&tables, mask))
                    .min()
            });
        } else {
            min_failure = (0..total).find(|&mask| !holds(&tables, mask));
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = exec;
        min_failure = (0..total).find(|&mask| !holds(&tables, mask));
    }

    RamseyVerdict {
        order: n,
        colorings_checked: total,
        counterexample: min_failure.map(|mask| EdgeColoring::from_mask(n, mask)),
    }
}

/// Exhaustively checks the stated disjunction for K5, K6, or K7:
/// order 5: red K4^- or blue 2-matching; order 6: red K4^- or blue triangle
/// or blue 3-matching; order 7: red K4^- or blue triangle. The
/// counterexample, were one ever found, is the least failing bitmask
/// regardless of worker count.
pub fn verify_ramsey_lemma(order: usize, exec: &Exec) -> Result<RamseyVerdict> {
    match order {
        5 => Ok(scan_all_colorings(5, exec, |t, red| {
            t.has_red_k4_minus(red) || t.has_blue_matching(red, 2)
        })),
        6 => Ok(scan_all_colorings(6, exec, |t, red| {
            t.has_red_k4_minus(red) || t.has_blue_triangle(red) || t.has_blue_matching(red, 3)
        })),
        7 => Ok(scan_all_colorings(7, exec, |t, red| {
            t.has_red_k4_minus(red) || t.has_blue_triangle(red)
        })),
        other => Err(Error::Precondition(format!(
            "ramsey lemma is stated for orders 5, 6, 7; got {other}"
        ))),
    }
}

/// Every 2-coloring of K6 has a monochromatic triangle (sanity check of the
/// predicates; 32768 cases).
pub fn verify_mono_triangle_k6(exec: &Exec) -> RamseyVerdict {
    scan_all_colorings(6, exec, |t, red| {
        t.has_blue_triangle(red) || t.has_red_triangle(red)
    })
}

/// Greedy maximal rainbow clique growth with restarts over all seed
/// vertices. Returns `r` vertices (ascending) whose pairwise edge colors are
/// distinct, if any restart succeeds; guaranteed on proper colorings of K_N
/// once N >= r^3.
pub fn find_rainbow_clique(coloring: &EdgeColoring, r: usize) -> Result<Option<Vec<usize>>> {
    let n = match coloring.base {
        ColoringBase::Complete { n } => n,
        _ => {
            return Err(Error::Precondition(
                "find_rainbow_clique needs a complete base".into(),
            ))
        }
    };
    if !coloring.is_proper() {
        return Err(Error::Precondition("coloring is not proper".into()));
    }
    if r < 2 || n < r {
        return Ok(None);
    }

    for seed in 0..n {
        let mut clique = vec![seed];
        let mut palette: Vec<u32> = Vec::new();
        loop {
            let mut grew = false;
            'outside: for x in 0..n {
                if clique.contains(&x) {
                    continue;
                }
                // properness makes the new edges pairwise distinct; only a
                // clash with colors already inside the clique can block x
                let mut fresh = Vec::new();
                for &y in &clique {
                    let c = coloring.color_of(x, y).unwrap();
                    if palette.contains(&c) {
                        continue 'outside;
                    }
                    fresh.push(c);
                }
                clique.push(x);
                palette.extend(fresh);
                grew = true;
                break;
            }
            if !grew {
                break;
            }
        }
        if clique.len() >= r {
            let mut out = clique[..r].to_vec();
            out.sort_unstable();
            debug_assert!(is_rainbow_clique(coloring, &out));
            return Ok(Some(out));
        }
    }
    Ok(None)
}

pub fn is_rainbow_clique(coloring: &EdgeColoring, vertices: &[usize]) -> bool {
    let mut seen = Vec::new();
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            match coloring.color_of(u, v) {
                Some(c) if !seen.contains(&c) => seen.push(c),
                _ => return false,
            }
        }
    }
    true
}

/// Grows the largest rainbow K_{s,t'} using all of the left class, greedily
/// in ascending column order; returns `t` columns once t' >= t. Guaranteed
/// on proper colorings when the right class has >= s(s-1)(t-1)+t vertices.
pub fn find_rainbow_biclique(
    coloring: &EdgeColoring,
    s: usize,
    t: usize,
) -> Result<Option<Vec<usize>>> {
    let (bs, m) = match coloring.base {
        ColoringBase::CompleteBipartite { s, m } => (s, m),
        _ => {
            return Err(Error::Precondition(
                "find_rainbow_biclique needs a complete bipartite base".into(),
            ))
        }
    };
    if bs != s {
        return Err(Error::Precondition(format!(
            "left class has size {bs}, expected s = {s}"
        )));
    }
    if !coloring.is_proper() {
        return Err(Error::Precondition("coloring is not proper".into()));
    }

    let mut columns: Vec<usize> = Vec::new();
    let mut palette: Vec<u32> = Vec::new();
    for col in s..s + m {
        // the s edges at this column are pairwise distinct by properness;
        // the column joins unless one of them repeats a used color
        let mut fresh = Vec::new();
        let mut ok = true;
        for row in 0..s {
            let c = coloring.color_of(row, col).unwrap();
            if palette.contains(&c) || fresh.contains(&c) {
                ok = false;
                break;
            }
            fresh.push(c);
        }
        if ok {
            columns.push(col);
            palette.extend(fresh);
            if columns.len() == t {
                return Ok(Some(columns));
            }
        }
    }
    Ok(None)
}

pub fn is_rainbow_biclique(coloring: &EdgeColoring, s: usize, columns: &[usize]) -> bool {
    let mut seen = Vec::new();
    for row in 0..s {
        for &col in columns {
            match coloring.color_of(row, col) {
                Some(c) if !seen.contains(&c) => seen.push(c),
                _ => return false,
            }
        }
    }
    true
}

/// Round-robin proper coloring of K_n (n odd uses n classes, n even n-1):
/// the classic 1-factorization schedule.
pub fn round_robin_coloring(n: usize) -> EdgeColoring {
    let edges = base_edges(ColoringBase::Complete { n });
    let classes = if n.is_multiple_of(2) { n - 1 } else { n };
    let colors = edges
        .iter()
        .map(|&(u, v)| {
            if !n.is_multiple_of(2) || (u != n - 1 && v != n - 1) {
                ((u + v) % classes) as u32
            } else {
                // even n: vertex n-1 plays the slot whose round matches
                let w = u.min(v);
                ((2 * w) % classes) as u32
            }
        })
        .collect();
    EdgeColoring {
        base: ColoringBase::Complete { n },
        colors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_index_is_lexicographic() {
        let c = EdgeColoring::from_mask(5, 0);
        let edges = base_edges(ColoringBase::Complete { n: 5 });
        for (i, &(u, v)) in edges.iter().enumerate() {
            assert_eq!(c.edge_index(u, v), Some(i));
            assert_eq!(c.edge_index(v, u), Some(i));
        }
        assert_eq!(c.edge_index(2, 2), None);
    }

    #[test]
    fn all_red_k5_has_k4minus_but_no_blue_matching() {
        let all_red = EdgeColoring::from_mask(5, (1 << 10) - 1);
        assert!(has_substructure(&all_red, Substructure::RedK4Minus).unwrap());
        assert!(!has_substructure(&all_red, Substructure::BlueMatching(2)).unwrap());
    }

    #[test]
    fn all_blue_k6_has_blue_triangle() {
        let all_blue = EdgeColoring::from_mask(6, 0);
        assert!(has_substructure(&all_blue, Substructure::BlueTriangle).unwrap());
    }

    #[test]
    fn red_perfect_matching_on_k6_leaves_blue_triangle() {
        let mut mask = 0u64;
        let c0 = EdgeColoring::from_mask(6, 0);
        for &(u, v) in &[(0, 1), (2, 3), (4, 5)] {
            mask |= 1 << c0.edge_index(u, v).unwrap();
        }
        let c = EdgeColoring::from_mask(6, mask);
        assert!(has_substructure(&c, Substructure::BlueTriangle).unwrap());
    }

    #[test]
    fn k5_lemma_holds() {
        let v = verify_ramsey_lemma(5, &Exec::sequential()).unwrap();
        assert_eq!(v.colorings_checked, 1024);
        assert!(v.counterexample.is_none());
    }

    #[test]
    fn proper_coloring_generator_is_proper() {
        for seed in 0..5 {
            let c = EdgeColoring::random_proper(ColoringBase::Complete { n: 9 }, seed);
            assert!(c.is_proper());
            let cb =
                EdgeColoring::random_proper(ColoringBase::CompleteBipartite { s: 2, m: 5 }, seed);
            assert!(cb.is_proper());
        }
    }

    #[test]
    fn round_robin_is_proper() {
        for n in [4, 5, 8, 27] {
            assert!(round_robin_coloring(n).is_proper(), "n = {n}");
        }
    }

    #[test]
    fn rainbow_triangle_in_round_robin_k27() {
        let c = round_robin_coloring(27);
        let t = find_rainbow_clique(&c, 3).unwrap().unwrap();
        assert!(is_rainbow_clique(&c, &t));
    }

    #[test]
    fn k4_perfect_matching_coloring_triangles_are_rainbow() {
        // colors = the three perfect matchings of K4: every triangle rainbow
        let c0 = EdgeColoring::from_mask(4, 0);
        let mut colors = vec![0u32; 6];
        for (cls, pairs) in [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]]
            .iter()
            .enumerate()
        {
            for &(u, v) in pairs {
                colors[c0.edge_index(u, v).unwrap()] = cls as u32;
            }
        }
        let c = EdgeColoring::new(ColoringBase::Complete { n: 4 }, colors).unwrap();
        assert!(c.is_proper());
        let t = find_rainbow_clique(&c, 3).unwrap().unwrap();
        assert!(is_rainbow_clique(&c, &t));
    }

    #[test]
    fn rainbow_biclique_k24_always_found() {
        for seed in 0..20 {
            let c =
                EdgeColoring::random_proper(ColoringBase::CompleteBipartite { s: 2, m: 4 }, seed);
            let cols = find_rainbow_biclique(&c, 2, 2).unwrap().unwrap();
            assert!(is_rainbow_biclique(&c, 2, &cols));
        }
    }

    #[test]
    fn star_side_is_trivially_rainbow() {
        let c = EdgeColoring::random_proper(ColoringBase::CompleteBipartite { s: 1, m: 3 }, 11);
        let cols = find_rainbow_biclique(&c, 1, 3).unwrap().unwrap();
        assert_eq!(cols.len(), 3);
    }

    #[test]
    fn no_false_positives_below_threshold() {
        // greedy may return none below the threshold but must never return a
        // non-rainbow clique
        for seed in 0..50 {
            let c = EdgeColoring::random_proper(ColoringBase::Complete { n: 6 }, seed);
            if let Some(k) = find_rainbow_clique(&c, 4).unwrap() {
                assert!(is_rainbow_clique(&c, &k));
            }
        }
    }
}
