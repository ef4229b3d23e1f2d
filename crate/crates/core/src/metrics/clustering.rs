use crate::network::WeightedGraph;

/// Fraction of neighbor pairs that are themselves adjacent; 0 below degree 2.
pub fn local_clustering(g: &WeightedGraph) -> Vec<f64> {
    let n = g.node_count();
    let mut mark = vec![false; n];
    (0..n)
        .map(|v| {
            let nbrs = g.neighbors(v);
            let k = nbrs.len();
            if k < 2 {
                return 0.0;
            }
            for &u in nbrs {
                mark[u] = true;
            }
            let mut closed = 0u64;
            for &u in nbrs {
                closed += g.neighbors(u).iter().filter(|&&w| w > u && mark[w]).count() as u64;
            }
            for &u in nbrs {
                mark[u] = false;
            }
            closed as f64 / (k * (k - 1) / 2) as f64
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub local: Vec<f64>,
    /// Mean of `local`; 0 for an empty graph.
    pub average: f64,
}

pub fn clustering_coefficient(g: &WeightedGraph) -> Clustering {
    let local = local_clustering(g);
    let average = if local.is_empty() {
        0.0
    } else {
        local.iter().sum::<f64>() / local.len() as f64
    };
    Clustering { local, average }
}
