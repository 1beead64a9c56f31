//! Dense assignment solvers used by the distance oracles.

/// Minimum-cost perfect assignment on a square matrix (Hungarian method with
/// potentials, O(n^3)). Returns `row -> column`.
pub fn min_cost_assignment(costs: &[Vec<f64>]) -> Vec<usize> {
    let n = costs.len();
    if n == 0 {
        return Vec::new();
    }
    debug_assert!(costs.iter().all(|row| row.len() == n));

    // 1-based arrays; index 0 is a virtual column.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = costs[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Perfect matching in the bipartite graph `{(i, j) : costs[i][j] <= threshold}`
/// by augmenting paths. Returns `row -> column`, or `None` if none exists.
pub fn perfect_matching_below(costs: &[Vec<f64>], threshold: f64) -> Option<Vec<usize>> {
    let n = costs.len();
    let adjacency: Vec<Vec<usize>> = costs
        .iter()
        .map(|row| (0..n).filter(|&j| row[j] <= threshold).collect())
        .collect();
    let mut match_col: Vec<Option<usize>> = vec![None; n];
    let mut match_row: Vec<Option<usize>> = vec![None; n];

    // greedy start
    for i in 0..n {
        if let Some(&j) = adjacency[i].iter().find(|&&j| match_col[j].is_none()) {
            match_col[j] = Some(i);
            match_row[i] = Some(j);
        }
    }

    let mut visited = vec![false; n];
    for i in 0..n {
        if match_row[i].is_some() {
            continue;
        }
        visited.iter_mut().for_each(|x| *x = false);
        if !augment(i, &adjacency, &mut visited, &mut match_col, &mut match_row) {
            return None;
        }
    }
    match_row.into_iter().collect()
}

fn augment(
    row: usize,
    adjacency: &[Vec<usize>],
    visited: &mut [bool],
    match_col: &mut [Option<usize>],
    match_row: &mut [Option<usize>],
) -> bool {
    for &j in &adjacency[row] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        let free = match match_col[j] {
            None => true,
            Some(other) => augment(other, adjacency, visited, match_col, match_row),
        };
        if free {
            match_col[j] = Some(row);
            match_row[row] = Some(j);
            return true;
        }
    }
    false
}
