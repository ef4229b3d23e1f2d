use crate::network::WeightedGraph;

/// Number of distinct neighbors.
pub fn degree_centrality(g: &WeightedGraph) -> Vec<u32> {
    (0..g.node_count()).map(|v| g.degree(v) as u32).collect()
}

/// Sum of incident edge weights.
pub fn strength(g: &WeightedGraph) -> Vec<u64> {
    (0..g.node_count())
        .map(|v| g.neighbor_weights(v).iter().map(|&w| u64::from(w)).sum())
        .collect()
}
