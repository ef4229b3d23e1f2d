use std::collections::{BTreeMap, HashMap};

use super::GraphError;

/// Undirected simple graph with positive integer edge weights.
///
/// Nodes carry a label and a dense index assigned in insertion order.
/// Adjacency is stored in compressed-row form with each neighbor list sorted
/// by index, and every edge appears once in each endpoint's list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<u32>,
}

impl WeightedGraph {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Neighbor indices of `node`, ascending.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.targets[self.offsets[node]..self.offsets[node + 1]]
    }

    /// Edge weights aligned with [`neighbors`](Self::neighbors).
    pub fn neighbor_weights(&self, node: usize) -> &[u32] {
        &self.weights[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u32> {
        let nbrs = self.neighbors(u);
        nbrs.binary_search(&v)
            .ok()
            .map(|pos| self.neighbor_weights(u)[pos])
    }

    /// Each undirected edge once as `(u, v, weight)` with `u < v`, ordered by
    /// `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .zip(self.neighbor_weights(u))
                .filter(move |(&v, _)| v > u)
                .map(move |(&v, &w)| (u, v, w))
        })
    }

    pub fn total_weight(&self) -> u64 {
        self.edges().map(|(_, _, w)| u64::from(w)).sum()
    }

    /// Subgraph on the given node indices, keeping every edge with both
    /// endpoints inside. Nodes keep their relative order from `self`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<WeightedGraph, GraphError> {
        let n = self.node_count();
        if let Some(&bad) = nodes.iter().find(|&&v| v >= n) {
            return Err(GraphError::UnknownNodeIndex(bad));
        }
        let mut keep: Vec<usize> = nodes.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut remap = vec![usize::MAX; n];
        let mut builder = GraphBuilder::new();
        for &v in &keep {
            remap[v] = builder.add_node(&self.labels[v]);
        }
        for &u in &keep {
            for (&v, &w) in self.neighbors(u).iter().zip(self.neighbor_weights(u)) {
                if v > u && remap[v] != usize::MAX {
                    builder.add_weight(remap[u], remap[v], w);
                }
            }
        }
        Ok(builder.build())
    }

    /// Same as [`induced_subgraph`](Self::induced_subgraph) but addressed by
    /// label.
    pub fn induced_subgraph_by_label<S: AsRef<str>>(
        &self,
        labels: &[S],
    ) -> Result<WeightedGraph, GraphError> {
        let nodes = labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| GraphError::UnknownNode(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.induced_subgraph(&nodes)
    }
}

/// Incremental construction of a [`WeightedGraph`].
///
/// Adding weight to a pair accumulates; self-pairs are ignored.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    pairs: BTreeMap<(usize, usize), u32>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Index of `label`, inserting it if new.
    pub fn add_node(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn add_weight(&mut self, u: usize, v: usize, weight: u32) {
        assert!(
            u < self.labels.len() && v < self.labels.len(),
            "node index out of range"
        );
        if u == v || weight == 0 {
            return;
        }
        let key = (u.min(v), u.max(v));
        let w = self.pairs.entry(key).or_insert(0);
        *w = w.saturating_add(weight);
    }

    pub fn build(self) -> WeightedGraph {
        let n = self.labels.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in self.pairs.keys() {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let mut targets = vec![0usize; total];
        let mut weights = vec![0u32; total];
        let mut cursor = offsets[..n].to_vec();
        // Keys iterate in (u, v) order, so each row receives its neighbors in
        // ascending order: lower-indexed neighbors arrive via the `v` side
        // before higher ones via the `u` side.
        for (&(u, v), &w) in &self.pairs {
            targets[cursor[u]] = v;
            weights[cursor[u]] = w;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            weights[cursor[v]] = w;
            cursor[v] += 1;
        }
        WeightedGraph {
            labels: self.labels,
            index: self.index,
            offsets,
            targets,
            weights,
        }
    }
}

impl WeightedGraph {
    /// Graph from labeled nodes and weighted index pairs.
    pub fn from_edges<S: AsRef<str>>(
        labels: &[S],
        edges: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> WeightedGraph {
        let mut b = GraphBuilder::new();
        for l in labels {
            b.add_node(l.as_ref());
        }
        for (u, v, w) in edges {
            b.add_weight(u, v, w);
        }
        b.build()
    }

    /// Unit-weight graph on nodes labeled `"0".."n-1"`.
    pub fn from_unweighted(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::from_edges(&labels, edges.iter().map(|&(u, v)| (u, v, 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_sorted_and_symmetric() {
        let g =
            WeightedGraph::from_unweighted(5, &[(3, 1), (0, 4), (1, 0), (4, 2), (2, 1), (1, 4)]);
        for u in 0..5 {
            let nbrs = g.neighbors(u);
            assert!(nbrs.windows(2).all(|w| w[0] < w[1]));
            for &v in nbrs {
                assert_eq!(g.weight(u, v), g.weight(v, u));
            }
        }
        assert_eq!(g.neighbors(1), &[0, 2, 3, 4]);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn self_loops_dropped_and_weights_accumulate() {
        let g = WeightedGraph::from_edges(&["a", "b"], [(0, 0, 1), (0, 1, 1), (1, 0, 2)]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(3));
        assert_eq!(g.weight(0, 0), None);
    }

    #[test]
    fn induced_full_set_is_identity() {
        let g = WeightedGraph::from_unweighted(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.induced_subgraph(&[0, 1, 2, 3]).unwrap(), g);
    }

    #[test]
    fn induced_empty_set() {
        let g = WeightedGraph::from_unweighted(3, &[(0, 1)]);
        let h = g.induced_subgraph(&[]).unwrap();
        assert_eq!(h.node_count(), 0);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn induced_one_of_two_triangles() {
        let g =
            WeightedGraph::from_unweighted(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let h = g.induced_subgraph_by_label(&["3", "4", "5"]).unwrap();
        assert_eq!((h.node_count(), h.edge_count()), (3, 3));
    }

    #[test]
    fn induced_unknown_node_is_named() {
        let g = WeightedGraph::from_unweighted(2, &[(0, 1)]);
        assert_eq!(
            g.induced_subgraph_by_label(&["0", "zz"]),
            Err(GraphError::UnknownNode("zz".into()))
        );
        assert_eq!(
            g.induced_subgraph(&[7]),
            Err(GraphError::UnknownNodeIndex(7))
        );
    }
}
