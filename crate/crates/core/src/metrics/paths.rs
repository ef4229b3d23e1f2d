//! Hop-count shortest paths: BFS distances, closeness and Brandes
//! betweenness. Edge weights never shorten a path.

use std::str::FromStr;

use rayon::prelude::*;

use crate::network::WeightedGraph;

const UNSEEN: u32 = u32::MAX;

/// Upper bound on the number of source chunks betweenness is split into.
/// Chunk boundaries depend only on the node count, so the reduction order,
/// and therefore every output bit, is independent of the worker count.
const MAX_CHUNKS: usize = 64;

/// Hop distances from one source; `None` marks unreachable nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: usize,
    pub distances: Vec<Option<u32>>,
}

pub fn bfs_distances(g: &WeightedGraph, source: usize) -> DistanceRow {
    let mut dist = vec![UNSEEN; g.node_count()];
    let mut queue = Vec::with_capacity(g.node_count());
    bfs_into(g, source, &mut dist, &mut queue);
    DistanceRow {
        source,
        distances: dist
            .into_iter()
            .map(|d| (d != UNSEEN).then_some(d))
            .collect(),
    }
}

/// BFS filling `dist` for reached nodes; `order` ends up holding the reached
/// nodes in nondecreasing distance. `dist` must be all-UNSEEN on entry.
fn bfs_into(g: &WeightedGraph, source: usize, dist: &mut [u32], order: &mut Vec<usize>) {
    order.clear();
    dist[source] = 0;
    order.push(source);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        let next = dist[u] + 1;
        for &v in g.neighbors(u) {
            if dist[v] == UNSEEN {
                dist[v] = next;
                order.push(v);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClosenessMode {
    /// `(N - 1) / sum of distances`, with `N` and the sum taken over the
    /// node's own connected component. Isolated nodes score 0.
    #[default]
    Component,
    /// Sum of reciprocal distances to every reachable node over `n - 1`.
    Harmonic,
}

impl ClosenessMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ClosenessMode::Component => "component",
            ClosenessMode::Harmonic => "harmonic",
        }
    }
}

impl FromStr for ClosenessMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "component" => Ok(ClosenessMode::Component),
            "harmonic" | "global-harmonic" => Ok(ClosenessMode::Harmonic),
            other => Err(format!("unknown closeness mode `{other}`")),
        }
    }
}

pub fn closeness_centrality(g: &WeightedGraph, mode: ClosenessMode) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || (vec![UNSEEN; n], Vec::with_capacity(n)),
            |(dist, order), j| {
                bfs_into(g, j, dist, order);
                let value = match mode {
                    ClosenessMode::Component => {
                        let total: u64 = order.iter().map(|&v| u64::from(dist[v])).sum();
                        if total == 0 {
                            0.0
                        } else {
                            (order.len() - 1) as f64 / total as f64
                        }
                    }
                    ClosenessMode::Harmonic => {
                        if n < 2 {
                            0.0
                        } else {
                            let s: f64 = order[1..].iter().map(|&v| 1.0 / f64::from(dist[v])).sum();
                            s / (n - 1) as f64
                        }
                    }
                };
                for &v in order.iter() {
                    dist[v] = UNSEEN;
                }
                value
            },
        )
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BetweennessNorm {
    /// Raw pair sum divided by `n²`.
    #[default]
    Paper,
    /// Raw pair sum divided by `(n-1)(n-2)/2`, the number of pairs excluding
    /// the node itself.
    Pairs,
    None,
}

impl BetweennessNorm {
    pub fn as_str(self) -> &'static str {
        match self {
            BetweennessNorm::Paper => "paper",
            BetweennessNorm::Pairs => "pairs",
            BetweennessNorm::None => "none",
        }
    }
}

impl FromStr for BetweennessNorm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(BetweennessNorm::Paper),
            "pairs" => Ok(BetweennessNorm::Pairs),
            "none" => Ok(BetweennessNorm::None),
            other => Err(format!("unknown betweenness normalization `{other}`")),
        }
    }
}

/// Per-source scratch space for Brandes' algorithm: shortest-path counts
/// (sigma), hop distances, and the dependency of the source on each node.
struct PathCountAccumulator {
    sigma: Vec<f64>,
    dist: Vec<u32>,
    delta: Vec<f64>,
    order: Vec<usize>,
}

impl PathCountAccumulator {
    fn new(n: usize) -> Self {
        Self {
            sigma: vec![0.0; n],
            dist: vec![UNSEEN; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
        }
    }

    /// Adds the dependencies of `source` on every other node to `into`.
    fn accumulate(&mut self, g: &WeightedGraph, source: usize, into: &mut [f64]) {
        let Self {
            sigma,
            dist,
            delta,
            order,
        } = self;
        order.clear();
        dist[source] = 0;
        sigma[source] = 1.0;
        order.push(source);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let next = dist[u] + 1;
            for &v in g.neighbors(u) {
                if dist[v] == UNSEEN {
                    dist[v] = next;
                    order.push(v);
                }
                if dist[v] == next {
                    sigma[v] += sigma[u];
                }
            }
        }
        // Predecessors of w are exactly its neighbors one hop closer to the
        // source, so no predecessor lists are stored.
        for &w in order.iter().rev() {
            let dw = dist[w];
            if dw > 0 {
                let coeff = (1.0 + delta[w]) / sigma[w];
                for &v in g.neighbors(w) {
                    if dist[v] + 1 == dw {
                        delta[v] += sigma[v] * coeff;
                    }
                }
                into[w] += delta[w];
            }
        }
        for &v in order.iter() {
            sigma[v] = 0.0;
            dist[v] = UNSEEN;
            delta[v] = 0.0;
        }
    }
}

/// Sum over unordered pairs `{s, t}` not containing the node of the fraction
/// of shortest s-t paths through it.
pub fn betweenness_raw(g: &WeightedGraph) -> Vec<f64> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let chunk = n.div_ceil(MAX_CHUNKS).max(1);
    let starts: Vec<usize> = (0..n).step_by(chunk).collect();
    let partials: Vec<Vec<f64>> = starts
        .par_iter()
        .map(|&start| {
            let mut acc = PathCountAccumulator::new(n);
            let mut part = vec![0.0; n];
            for s in start..(start + chunk).min(n) {
                acc.accumulate(g, s, &mut part);
            }
            part
        })
        .collect();
    let mut total = vec![0.0; n];
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    // Every unordered pair was visited from both ends.
    total.iter_mut().for_each(|t| *t /= 2.0);
    total
}

pub fn betweenness_centrality(g: &WeightedGraph, norm: BetweennessNorm) -> Vec<f64> {
    let mut values = betweenness_raw(g);
    let n = g.node_count() as f64;
    let scale = match norm {
        BetweennessNorm::Paper => n * n,
        BetweennessNorm::Pairs => (n - 1.0) * (n - 2.0) / 2.0,
        BetweennessNorm::None => 1.0,
    };
    if scale > 0.0 {
        values.iter_mut().for_each(|v| *v /= scale);
    } else {
        values.iter_mut().for_each(|v| *v = 0.0);
    }
    values
}
