//! Closed walks of a fixed length in a small digraph.

/// Returns the nodes `v_0, …, v_{h-1}` of a closed walk with exactly `h` arcs
/// (`v_i → v_{i+1}` and `v_{h-1} → v_0`), preferring the least start node.
pub(crate) fn closed_walk(adj: &[Vec<usize>], h: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    if h == 0 {
        return None;
    }
    for start in 0..n {
        // parent[t][v] = predecessor of v on some walk of length t from start.
        let mut parent: Vec<Vec<Option<usize>>> = vec![vec![None; n]; h + 1];
        parent[0][start] = Some(start);
        for t in 1..=h {
            for u in 0..n {
                if parent[t - 1][u].is_none() {
                    continue;
                }
                for &v in &adj[u] {
                    if parent[t][v].is_none() {
                        parent[t][v] = Some(u);
                    }
                }
            }
        }
        if parent[h][start].is_some() {
            let mut walk = vec![0; h];
            let mut v = start;
            for t in (1..=h).rev() {
                let u = parent[t][v].unwrap();
                walk[t - 1] = u;
                v = u;
            }
            return Some(walk);
        }
    }
    None
}

/// Like [`closed_walk`], but minimizing the total weight of the visited
/// nodes; ties go to the least start node.
pub(crate) fn lightest_closed_walk(
    adj: &[Vec<usize>],
    weight: &[usize],
    h: usize,
) -> Option<Vec<usize>> {
    let n = adj.len();
    if h == 0 {
        return None;
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for start in 0..n {
        // cost[t][v]: lightest walk of t arcs from start to v, counting the
        // weights of its first t nodes.
        let mut cost: Vec<Vec<Option<(usize, usize)>>> = vec![vec![None; n]; h + 1];
        cost[0][start] = Some((0, start));
        for t in 1..=h {
            for u in 0..n {
                let Some((c, _)) = cost[t - 1][u] else {
                    continue;
                };
                for &v in &adj[u] {
                    let next = c + weight[u];
                    if cost[t][v].is_none_or(|(old, _)| next < old) {
                        cost[t][v] = Some((next, u));
                    }
                }
            }
        }
        if let Some((total, _)) = cost[h][start] {
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                let mut walk = vec![0; h];
                let mut v = start;
                for t in (1..=h).rev() {
                    let u = cost[t][v].unwrap().1;
                    walk[t - 1] = u;
                    v = u;
                }
                best = Some((total, walk));
            }
        }
    }
    best.map(|(_, w)| w)
}
