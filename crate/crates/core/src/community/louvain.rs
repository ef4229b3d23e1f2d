use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::network::WeightedGraph;

use super::{modularity_unchecked, CommunityPartition};

/// A move must beat staying put by more than this (in units of edge weight)
/// to count as an improvement, so rounding noise cannot cause cycling.
const GAIN_EPS: f64 = 1e-10;

/// One aggregation level: community-graph adjacency without self-loops, plus
/// the internal weight folded into each node.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    internal: Vec<f64>,
}

impl Level {
    fn from_graph(g: &WeightedGraph) -> Self {
        let adj = (0..g.node_count())
            .map(|u| {
                g.neighbors(u)
                    .iter()
                    .zip(g.neighbor_weights(u))
                    .map(|(&v, &w)| (v, f64::from(w)))
                    .collect()
            })
            .collect();
        Level {
            adj,
            internal: vec![0.0; g.node_count()],
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn strength(&self, u: usize) -> f64 {
        self.adj[u].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.internal[u]
    }

    /// Collapses every community of `comm` (contiguous ids) into one node.
    fn aggregate(&self, comm: &[usize], count: usize) -> Level {
        let mut internal = vec![0.0; count];
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); count];
        for u in 0..self.len() {
            let cu = comm[u];
            internal[cu] += self.internal[u];
            for &(v, w) in &self.adj[u] {
                let cv = comm[v];
                if cu == cv {
                    // Each internal edge is seen from both ends.
                    internal[cu] += w / 2.0;
                } else {
                    rows[cu].push((cv, w));
                }
            }
        }
        let adj = rows
            .into_iter()
            .map(|mut row| {
                row.sort_unstable_by_key(|&(v, _)| v);
                let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
                for (v, w) in row {
                    match merged.last_mut() {
                        Some((last, acc)) if *last == v => *acc += w,
                        _ => merged.push((v, w)),
                    }
                }
                merged
            })
            .collect();
        Level { adj, internal }
    }
}

/// Local-move phase. Returns the community of each level node (not yet
/// contiguous) and whether anything moved.
fn local_moves(
    level: &Level,
    resolution: f64,
    m2: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<usize>, bool) {
    let n = level.len();
    let k: Vec<f64> = (0..n).map(|u| level.strength(u)).collect();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot = k.clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut any_move = false;
    loop {
        let mut moved = false;
        for &i in &order {
            let old = comm[i];
            for &(j, w) in &level.adj[i] {
                let c = comm[j];
                if link[c] == 0.0 {
                    touched.push(c);
                }
                link[c] += w;
            }
            tot[old] -= k[i];
            let gain = |c: usize, link: &[f64]| link[c] - resolution * tot[c] * k[i] / m2;
            let mut best = old;
            let mut best_gain = gain(old, &link);
            for &c in &touched {
                let g = gain(c, &link);
                if g > best_gain + GAIN_EPS {
                    best = c;
                    best_gain = g;
                }
            }
            tot[best] += k[i];
            comm[i] = best;
            if best != old {
                moved = true;
            }
            for &c in &touched {
                link[c] = 0.0;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        any_move = true;
    }
    (comm, any_move)
}

/// Relabels to 0.. in order of first appearance.
pub(super) fn renumber(assignment: &[usize]) -> (Vec<usize>, usize) {
    let mut map = vec![usize::MAX; assignment.iter().max().map_or(0, |&m| m + 1)];
    let mut next = 0;
    let out = assignment
        .iter()
        .map(|&c| {
            if map[c] == usize::MAX {
                map[c] = next;
                next += 1;
            }
            map[c]
        })
        .collect();
    (out, next)
}

/// Louvain modularity maximization on the weighted graph.
///
/// Each level shuffles the node visiting order with a ChaCha8 stream seeded
/// by `seed`, repeatedly moves single nodes to the neighboring community of
/// largest modularity gain until no move helps, then merges communities into
/// nodes. A node stays put unless some move strictly beats staying.
/// Community ids are numbered by first appearance in node order.
pub fn detect_communities(g: &WeightedGraph, seed: u64, resolution: f64) -> CommunityPartition {
    let n = g.node_count();
    let m2 = 2.0 * g.total_weight() as f64;
    let mut assignment: Vec<usize> = (0..n).collect();
    let mut level_modularity = vec![modularity_unchecked(g, &assignment, resolution)];
    if m2 > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut level = Level::from_graph(g);
        loop {
            let (comm, moved) = local_moves(&level, resolution, m2, &mut rng);
            if !moved {
                break;
            }
            let (comm, count) = renumber(&comm);
            for a in assignment.iter_mut() {
                *a = comm[*a];
            }
            level_modularity.push(modularity_unchecked(g, &assignment, resolution));
            if count == level.len() {
                break;
            }
            level = level.aggregate(&comm, count);
        }
    }
    let (assignment, community_count) = renumber(&assignment);
    let modularity = *level_modularity.last().expect("initial level");
    CommunityPartition {
        assignment,
        community_count,
        modularity,
        seed,
        resolution,
        level_modularity,
    }
}
