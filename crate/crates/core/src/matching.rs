//! Kuhn's augmenting-path bipartite matching.
//!
//! Deterministic: left vertices are processed in index order and adjacency
//! lists in the order given, so the matched set is a function of the input.

pub struct Matching {
    /// For each left vertex, the matched right vertex if any.
    pub left_match: Vec<Option<usize>>,
    pub size: usize,
}

pub fn maximum_matching(adj: &[Vec<usize>], n_right: usize) -> Matching {
    let n_left = adj.len();
    let mut right_match: Vec<Option<usize>> = vec![None; n_right];
    let mut size = 0;

    fn augment(
        v: usize,
        adj: &[Vec<usize>],
        right_match: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &r in &adj[v] {
            if visited[r] {
                continue;
            }
            visited[r] = true;
            if right_match[r].is_none()
                || augment(right_match[r].unwrap(), adj, right_match, visited)
            {
                right_match[r] = Some(v);
                return true;
            }
        }
        false
    }

    for v in 0..n_left {
        let mut visited = vec![false; n_right];
        if augment(v, adj, &mut right_match, &mut visited) {
            size += 1;
        }
    }

    let mut left_match = vec![None; n_left];
    for (r, lm) in right_match.iter().enumerate() {
        if let Some(l) = lm {
            left_match[*l] = Some(r);
        }
    }
    Matching { left_match, size }
}

/// A perfect matching on the left side, if one exists.
pub fn saturating_matching(adj: &[Vec<usize>], n_right: usize) -> Option<Vec<usize>> {
    let m = maximum_matching(adj, n_right);
    if m.size == adj.len() {
        Some(m.left_match.into_iter().map(|o| o.unwrap()).collect())
    } else {
        None
    }
}
