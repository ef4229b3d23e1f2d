use std::collections::VecDeque;

use super::graph::WeightedGraph;
use super::GraphError;

/// Whole-network summary figures.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub average_degree: f64,
    pub density: f64,
    pub giant_component_size: usize,
    pub component_count: usize,
}

/// Edges present over the `n(n-1)/2` possible in a simple undirected graph;
/// zero below two nodes.
pub fn density(nodes: usize, edges: usize) -> f64 {
    if nodes < 2 {
        return 0.0;
    }
    let n = nodes as f64;
    edges as f64 / (n * (n - 1.0) / 2.0)
}

/// `2m / n`, zero for the empty graph.
pub fn average_degree(nodes: usize, edges: usize) -> f64 {
    if nodes == 0 {
        0.0
    } else {
        2.0 * edges as f64 / nodes as f64
    }
}

pub fn graph_stats(g: &WeightedGraph) -> GraphStats {
    let comps = connected_components(g);
    GraphStats {
        nodes: g.node_count(),
        edges: g.edge_count(),
        average_degree: average_degree(g.node_count(), g.edge_count()),
        density: density(g.node_count(), g.edge_count()),
        giant_component_size: comps.sizes.iter().copied().max().unwrap_or(0),
        component_count: comps.sizes.len(),
    }
}

/// Component label per node. Components are numbered by their smallest node
/// index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub membership: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl Components {
    /// Node indices of each component, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.sizes.len()];
        for (v, &c) in self.membership.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

pub fn connected_components(g: &WeightedGraph) -> Components {
    let n = g.node_count();
    let mut membership = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if membership[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        membership[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in g.neighbors(u) {
                if membership[v] == usize::MAX {
                    membership[v] = id;
                    queue.push_back(v);
                }
            }
        }
        sizes.push(size);
    }
    Components { membership, sizes }
}

/// Hop distance between two labeled nodes; `None` when they lie in
/// different components.
pub fn shortest_path_length(
    g: &WeightedGraph,
    from: &str,
    to: &str,
) -> Result<Option<usize>, GraphError> {
    let s = g
        .index_of(from)
        .ok_or_else(|| GraphError::UnknownNode(from.to_string()))?;
    let t = g
        .index_of(to)
        .ok_or_else(|| GraphError::UnknownNode(to.to_string()))?;
    if s == t {
        return Ok(Some(0));
    }
    let mut dist = vec![usize::MAX; g.node_count()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                if v == t {
                    return Ok(Some(dist[v]));
                }
                queue.push_back(v);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reported_average_degree() {
        assert!((average_degree(43_789, 81_891) - 3.74).abs() < 0.005);
    }

    #[test]
    fn reported_community_density() {
        assert!((density(32, 160) - 0.3226).abs() < 1e-4);
    }

    #[test]
    fn complete_and_edgeless() {
        for n in 2..10 {
            assert_eq!(density(n, n * (n - 1) / 2), 1.0);
            assert_eq!(density(n, 0), 0.0);
        }
        assert_eq!(density(1, 0), 0.0);
        assert_eq!(density(0, 0), 0.0);
        assert_eq!(average_degree(0, 0), 0.0);
    }

    #[test]
    fn k4_stats() {
        let g =
            WeightedGraph::from_unweighted(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let s = graph_stats(&g);
        assert_eq!(s.density, 1.0);
        assert_eq!(s.average_degree, 3.0);
        assert_eq!((s.giant_component_size, s.component_count), (4, 1));
    }

    #[test]
    fn giant_component() {
        let g = WeightedGraph::from_unweighted(7, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 6)]);
        let s = graph_stats(&g);
        assert_eq!((s.giant_component_size, s.component_count), (4, 2));
        let c = connected_components(&g);
        assert_eq!(c.members(), vec![vec![0, 1, 2], vec![3, 4, 5, 6]]);
    }

    #[test]
    fn path_distances() {
        let g = WeightedGraph::from_unweighted(4, &[(0, 1), (1, 2)]);
        assert_eq!(shortest_path_length(&g, "0", "2").unwrap(), Some(2));
        assert_eq!(shortest_path_length(&g, "1", "1").unwrap(), Some(0));
        assert_eq!(shortest_path_length(&g, "0", "3").unwrap(), None);
        assert_eq!(
            shortest_path_length(&g, "0", "x"),
            Err(GraphError::UnknownNode("x".into()))
        );
    }
}
