use std::str::FromStr;

use rayon::prelude::*;

use crate::network::{connected_components, WeightedGraph};

use super::MetricsError;

/// Rows at or above this size use the parallel matrix-vector product.
const PARALLEL_ROWS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenWeighting {
    /// 0/1 adjacency.
    #[default]
    Binary,
    /// Collaboration counts as matrix entries.
    Weighted,
}

impl EigenWeighting {
    pub fn as_str(self) -> &'static str {
        match self {
            EigenWeighting::Binary => "binary",
            EigenWeighting::Weighted => "weighted",
        }
    }
}

impl FromStr for EigenWeighting {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary" => Ok(EigenWeighting::Binary),
            "weighted" => Ok(EigenWeighting::Weighted),
            other => Err(format!("unknown eigenvector weighting `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorResult {
    pub values: Vec<f64>,
    /// Largest component eigenvalue.
    pub eigenvalue: f64,
    /// Eigenvalue of the component each node belongs to (0 for isolated
    /// nodes).
    pub component_eigenvalues: Vec<f64>,
    /// Most iterations any component needed.
    pub iterations: usize,
}

/// Principal eigenvector by power iteration, one connected component at a
/// time.
///
/// Each step averages the current iterate with its max-normalized image,
/// `x <- (x + Ax / max(Ax)) / 2`, then rescales to max 1. The fixed points
/// are unchanged and the period-2 oscillation of plain power iteration on
/// bipartite components disappears. Iteration stops once successive
/// iterates differ by less than `tol` in max norm.
///
/// A component with eigenvalue `lambda_c` is scaled by
/// `lambda_c / lambda_max`, so the component with the largest eigenvalue has
/// maximum exactly 1 and the vector is comparable across components.
/// Isolated nodes are 0. A graph without edges yields all zeros.
pub fn eigenvector_centrality(
    g: &WeightedGraph,
    weighting: EigenWeighting,
    tol: f64,
    max_iter: usize,
) -> Result<EigenvectorResult, MetricsError> {
    let n = g.node_count();
    let mut values = vec![0.0; n];
    let mut lambdas = vec![0.0; n];
    let mut iterations = 0;
    let mut per_component = Vec::new();

    for members in connected_components(g).members() {
        if members.len() < 2 {
            continue;
        }
        let (x, lambda, iters) = component_eigenvector(g, &members, weighting, tol, max_iter)?;
        iterations = iterations.max(iters);
        per_component.push((members, x, lambda));
    }

    let lambda_max = per_component
        .iter()
        .map(|(_, _, l)| *l)
        .fold(0.0_f64, f64::max);
    for (members, x, lambda) in per_component {
        let scale = lambda / lambda_max;
        for (&v, xv) in members.iter().zip(x) {
            values[v] = xv * scale;
            lambdas[v] = lambda;
        }
    }
    Ok(EigenvectorResult {
        values,
        eigenvalue: lambda_max,
        component_eigenvalues: lambdas,
        iterations,
    })
}

fn component_eigenvector(
    g: &WeightedGraph,
    members: &[usize],
    weighting: EigenWeighting,
    tol: f64,
    max_iter: usize,
) -> Result<(Vec<f64>, f64, usize), MetricsError> {
    let k = members.len();
    // Members are ascending, so a binary search maps global to local index.
    let local = |v: usize| members.binary_search(&v).expect("neighbor in component");
    let rows: Vec<Vec<(usize, f64)>> = members
        .iter()
        .map(|&u| {
            g.neighbors(u)
                .iter()
                .zip(g.neighbor_weights(u))
                .map(|(&v, &w)| {
                    let a = match weighting {
                        EigenWeighting::Binary => 1.0,
                        EigenWeighting::Weighted => f64::from(w),
                    };
                    (local(v), a)
                })
                .collect()
        })
        .collect();

    let mut x = vec![1.0; k];
    let mut y = vec![0.0; k];
    let mut residual = f64::INFINITY;
    for iter in 1..=max_iter {
        multiply(&rows, &x, &mut y);
        let mu = y.iter().copied().fold(0.0_f64, f64::max);
        let mut top = 0.0_f64;
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi = 0.5 * (xi + *yi / mu);
            top = top.max(*yi);
        }
        residual = 0.0;
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi /= top;
            residual = residual.max((*yi - xi).abs());
        }
        std::mem::swap(&mut x, &mut y);
        if residual < tol {
            multiply(&rows, &x, &mut y);
            let lambda = y.iter().copied().fold(0.0_f64, f64::max);
            return Ok((x, lambda, iter));
        }
    }
    Err(MetricsError::NotConverged {
        iterations: max_iter,
        residual,
    })
}

fn multiply(rows: &[Vec<(usize, f64)>], x: &[f64], y: &mut [f64]) {
    let row_product = |row: &Vec<(usize, f64)>| row.iter().map(|&(j, a)| a * x[j]).sum::<f64>();
    if rows.len() >= PARALLEL_ROWS {
        y.par_iter_mut()
            .zip(rows.par_iter())
            .for_each(|(yi, row)| *yi = row_product(row));
    } else {
        for (yi, row) in y.iter_mut().zip(rows) {
            *yi = row_product(row);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-10;

    #[test]
    fn triangle_is_uniform() {
        let g = WeightedGraph::from_unweighted(3, &[(0, 1), (1, 2), (0, 2)]);
        let r = eigenvector_centrality(&g, EigenWeighting::Binary, TOL, 10_000).unwrap();
        for v in r.values {
            assert!((v - 1.0).abs() < 1e-12);
        }
        assert!((r.eigenvalue - 2.0).abs() < 1e-9);
    }

    #[test]
    fn star_leaves() {
        // Bipartite: plain power iteration would oscillate here.
        let g = WeightedGraph::from_unweighted(4, &[(0, 1), (0, 2), (0, 3)]);
        let r = eigenvector_centrality(&g, EigenWeighting::Binary, TOL, 10_000).unwrap();
        assert!((r.values[0] - 1.0).abs() < 1e-12);
        for leaf in 1..4 {
            assert!((r.values[leaf] - 1.0 / 3f64.sqrt()).abs() < 1e-9);
        }
        assert!((r.eigenvalue - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn isolated_and_edgeless() {
        let g = WeightedGraph::from_unweighted(4, &[(0, 1)]);
        let r = eigenvector_centrality(&g, EigenWeighting::Binary, TOL, 10_000).unwrap();
        assert_eq!(r.values[2..], [0.0, 0.0]);
        let empty = WeightedGraph::from_unweighted(3, &[]);
        let r = eigenvector_centrality(&empty, EigenWeighting::Binary, TOL, 10_000).unwrap();
        assert_eq!(r.values, [0.0; 3]);
        assert_eq!(r.eigenvalue, 0.0);
    }

    #[test]
    fn smaller_component_scaled_by_eigenvalue_ratio() {
        // Triangle (lambda 2) plus a single edge (lambda 1).
        let g = WeightedGraph::from_unweighted(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]);
        let r = eigenvector_centrality(&g, EigenWeighting::Binary, TOL, 10_000).unwrap();
        assert!((r.values[0] - 1.0).abs() < 1e-12);
        assert!((r.values[3] - 0.5).abs() < 1e-9);
        assert!((r.component_eigenvalues[3] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn weighted_variant_uses_counts() {
        let g = WeightedGraph::from_edges(&["a", "b", "c"], [(0, 1, 3), (1, 2, 1)]);
        let b = eigenvector_centrality(&g, EigenWeighting::Binary, TOL, 10_000).unwrap();
        let w = eigenvector_centrality(&g, EigenWeighting::Weighted, TOL, 10_000).unwrap();
        assert!((b.values[0] - b.values[2]).abs() < 1e-9);
        assert!(w.values[0] > w.values[2]);
    }

    #[test]
    fn iteration_cap_reports_residual() {
        let edges: Vec<_> = (0..30).map(|i| (i, i + 1)).collect();
        let g = WeightedGraph::from_unweighted(31, &edges);
        match eigenvector_centrality(&g, EigenWeighting::Binary, TOL, 5) {
            Err(MetricsError::NotConverged {
                iterations,
                residual,
            }) => {
                assert_eq!(iterations, 5);
                assert!(residual > TOL);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
