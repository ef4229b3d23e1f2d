//! Brute-force reference computations for the coauthnet test suites.
//!
//! Everything here works on plain `(n, edge list)` or nested `Vec` inputs and
//! deliberately shares no code with the library: distances come from
//! Floyd-Warshall, path counts from layer-by-layer dynamic programming or
//! explicit enumeration, eigenvectors from a dense symmetric eigensolver,
//! modularity optima from exhaustive set-partition search, and TOPSIS from a
//! literal transcription of the step formulas.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const UNREACHABLE: usize = usize::MAX;

/// Erdos-Renyi G(n, p) edge list with `u < v`, seeded.
pub fn random_gnp(seed: u64, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Random simple graph with exactly `m` distinct edges (capped at n(n-1)/2).
pub fn random_gnm(seed: u64, n: usize, m: usize) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max = n * n.saturating_sub(1) / 2;
    let m = m.min(max);
    let mut seen = std::collections::HashSet::with_capacity(m * 2);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            edges.push(key);
        }
    }
    edges
}

pub fn adjacency_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        if u != v {
            a[u][v] = true;
            a[v][u] = true;
        }
    }
    a
}

/// All-pairs hop distances by Floyd-Warshall.
pub fn floyd_warshall(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let a = adjacency_matrix(n, edges);
    let mut d = vec![vec![UNREACHABLE; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if a[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == UNREACHABLE {
                continue;
            }
            for j in 0..n {
                if d[k][j] == UNREACHABLE {
                    continue;
                }
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Number of shortest paths between every pair, from the distance matrix:
/// `sigma[s][t]` sums `sigma[s][u]` over neighbors `u` of `t` one hop closer
/// to `s`, filling targets in order of distance.
pub fn shortest_path_counts(n: usize, edges: &[(usize, usize)], d: &[Vec<usize>]) -> Vec<Vec<f64>> {
    let a = adjacency_matrix(n, edges);
    let mut sigma = vec![vec![0.0; n]; n];
    for s in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&t| d[s][t] != UNREACHABLE).collect();
        order.sort_by_key(|&t| d[s][t]);
        for &t in &order {
            if t == s {
                sigma[s][t] = 1.0;
                continue;
            }
            let mut count = 0.0;
            for u in 0..n {
                if a[u][t] && d[s][u] != UNREACHABLE && d[s][u] + 1 == d[s][t] {
                    count += sigma[s][u];
                }
            }
            sigma[s][t] = count;
        }
    }
    sigma
}

/// Raw betweenness summed over unordered pairs `{s, t}` with `s != i != t`:
/// `sigma_si * sigma_it / sigma_st` whenever `i` lies on a shortest s-t path.
pub fn betweenness_pairs(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let d = floyd_warshall(n, edges);
    let sigma = shortest_path_counts(n, edges, &d);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] == UNREACHABLE {
                continue;
            }
            for (i, b) in bc.iter_mut().enumerate() {
                if i == s || i == t || d[s][i] == UNREACHABLE || d[i][t] == UNREACHABLE {
                    continue;
                }
                if d[s][i] + d[i][t] == d[s][t] {
                    *b += sigma[s][i] * sigma[i][t] / sigma[s][t];
                }
            }
        }
    }
    bc
}

/// Raw betweenness by listing every shortest path explicitly. Exponential;
/// only for tiny graphs.
pub fn betweenness_enumerated(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let a = adjacency_matrix(n, edges);
    let d = floyd_warshall(n, edges);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if d[s][t] == UNREACHABLE {
                continue;
            }
            let mut paths = Vec::new();
            let mut stack = vec![s];
            enumerate_paths(&a, &d, t, &mut stack, &mut paths);
            let total = paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    bc[v] += 1.0 / total;
                }
            }
        }
    }
    bc
}

fn enumerate_paths(
    a: &[Vec<bool>],
    d: &[Vec<usize>],
    target: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let u = *stack.last().unwrap();
    if u == target {
        out.push(stack.clone());
        return;
    }
    for v in 0..a.len() {
        // Stepping to v keeps the path shortest iff v is one hop closer to t.
        if a[u][v] && d[v][target] != UNREACHABLE && d[v][target] + 1 == d[u][target] {
            stack.push(v);
            enumerate_paths(a, d, target, stack, out);
            stack.pop();
        }
    }
}

/// `(N_c - 1) / sum of distances` within each node's component; 0 for
/// isolated nodes.
pub fn closeness_component(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let d = floyd_warshall(n, edges);
    (0..n)
        .map(|j| {
            let reachable: Vec<usize> = (0..n).filter(|&i| d[j][i] != UNREACHABLE).collect();
            let total: usize = reachable.iter().map(|&i| d[j][i]).sum();
            if total == 0 {
                0.0
            } else {
                (reachable.len() - 1) as f64 / total as f64
            }
        })
        .collect()
}

/// `sum over reachable i != j of 1/d(j,i)`, divided by `n - 1`.
pub fn closeness_harmonic(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let d = floyd_warshall(n, edges);
    (0..n)
        .map(|j| {
            if n < 2 {
                return 0.0;
            }
            let s: f64 = (0..n)
                .filter(|&i| i != j && d[j][i] != UNREACHABLE)
                .map(|i| 1.0 / d[j][i] as f64)
                .sum();
            s / (n - 1) as f64
        })
        .collect()
}

/// Connected components as sorted node lists, by smallest member.
pub fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let d = floyd_warshall(n, edges);
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if assigned[s] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&t| d[s][t] != UNREACHABLE).collect();
        for &v in &comp {
            assigned[v] = true;
        }
        out.push(comp);
    }
    out
}

/// Principal eigenpair of a dense symmetric matrix, eigenvector signed
/// nonnegative and scaled to max 1.
pub fn dense_principal_eigen(matrix: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let k = matrix.len();
    let m = DMatrix::from_fn(k, k, |i, j| matrix[i][j]);
    let eig = SymmetricEigen::new(m);
    let (best, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    let col = eig.eigenvectors.column(best);
    let mut v: Vec<f64> = col.iter().copied().collect();
    let sum: f64 = v.iter().sum();
    if sum < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    let max = v.iter().copied().fold(f64::MIN, f64::max);
    if max > 0.0 {
        v.iter_mut().for_each(|x| *x /= max);
    }
    (lambda, v)
}

pub fn cosine_similarity(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    dot / (na * nb)
}

/// Local clustering by checking every neighbor pair for an edge.
pub fn clustering_triangles(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let a = adjacency_matrix(n, edges);
    (0..n)
        .map(|v| {
            let nbrs: Vec<usize> = (0..n).filter(|&u| a[v][u]).collect();
            let k = nbrs.len();
            if k < 2 {
                return 0.0;
            }
            let mut closed = 0usize;
            for i in 0..k {
                for j in i + 1..k {
                    if a[nbrs[i]][nbrs[j]] {
                        closed += 1;
                    }
                }
            }
            closed as f64 / (k * (k - 1) / 2) as f64
        })
        .collect()
}

/// Weighted modularity straight from the pairwise definition
/// `Q = 1/(2m) * sum_ij [A_ij - gamma * k_i k_j / (2m)] * delta(c_i, c_j)`.
pub fn modularity_pairwise(
    n: usize,
    edges: &[(usize, usize, f64)],
    assignment: &[usize],
    resolution: f64,
) -> f64 {
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, w) in edges {
        a[u][v] += w;
        a[v][u] += w;
    }
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    if two_m == 0.0 {
        return 0.0;
    }
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if assignment[i] == assignment[j] {
                q += a[i][j] - resolution * k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Every set partition of `0..n` as restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    fn rec(i: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        for c in 0..=max + 1 {
            current[i] = c;
            rec(i + 1, max.max(c), current, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    current[0] = 0;
    rec(1, 0, &mut current, &mut out);
    out
}

/// Best modularity over all partitions, with every partition attaining it.
pub fn exhaustive_best_partitions(
    n: usize,
    edges: &[(usize, usize, f64)],
) -> (f64, Vec<Vec<usize>>) {
    let mut best = f64::NEG_INFINITY;
    let mut winners = Vec::new();
    for p in all_partitions(n) {
        let q = modularity_pairwise(n, edges, &p, 1.0);
        if q > best + 1e-12 {
            best = q;
            winners.clear();
            winners.push(p);
        } else if (q - best).abs() <= 1e-12 {
            winners.push(p);
        }
    }
    (best, winners)
}

/// TOPSIS intermediate values, transcribed step by step.
#[derive(Debug, Clone)]
pub struct TopsisReference {
    pub normalized: Vec<Vec<f64>>,
    pub weighted: Vec<Vec<f64>>,
    pub ideal: Vec<f64>,
    pub anti_ideal: Vec<f64>,
    pub s_plus: Vec<f64>,
    pub s_minus: Vec<f64>,
    pub closeness: Vec<f64>,
}

/// `benefit[j]` marks column j as "larger is better".
pub fn topsis_reference(d: &[Vec<f64>], weights: &[f64], benefit: &[bool]) -> TopsisReference {
    let p = d.len();
    let q = d[0].len();
    let mut l = vec![vec![0.0; q]; p];
    for j in 0..q {
        let mut sum_sq = 0.0;
        for row in d {
            sum_sq += row[j] * row[j];
        }
        let norm = sum_sq.sqrt();
        for i in 0..p {
            l[i][j] = if norm == 0.0 { 0.0 } else { d[i][j] / norm };
        }
    }
    let mut t = vec![vec![0.0; q]; p];
    for i in 0..p {
        for j in 0..q {
            t[i][j] = weights[j] * l[i][j];
        }
    }
    let mut ideal = vec![0.0; q];
    let mut anti = vec![0.0; q];
    for j in 0..q {
        let mut max = f64::NEG_INFINITY;
        let mut min = f64::INFINITY;
        for row in &t {
            if row[j] > max {
                max = row[j];
            }
            if row[j] < min {
                min = row[j];
            }
        }
        if benefit[j] {
            ideal[j] = max;
            anti[j] = min;
        } else {
            ideal[j] = min;
            anti[j] = max;
        }
    }
    let mut s_plus = vec![0.0; p];
    let mut s_minus = vec![0.0; p];
    let mut c = vec![0.0; p];
    for i in 0..p {
        let mut a = 0.0;
        let mut b = 0.0;
        for j in 0..q {
            a += (t[i][j] - ideal[j]).powi(2);
            b += (t[i][j] - anti[j]).powi(2);
        }
        s_plus[i] = a.sqrt();
        s_minus[i] = b.sqrt();
        c[i] = if s_plus[i] + s_minus[i] == 0.0 {
            0.5
        } else {
            s_minus[i] / (s_minus[i] + s_plus[i])
        };
    }
    TopsisReference {
        normalized: l,
        weighted: t,
        ideal,
        anti_ideal: anti,
        s_plus,
        s_minus,
        closeness: c,
    }
}
