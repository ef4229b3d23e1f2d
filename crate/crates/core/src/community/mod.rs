//! Modularity-based community detection and per-community summaries.

mod louvain;

use thiserror::Error;

use crate::format::{csv_writer, fmt_float};
use crate::network::{density, WeightedGraph};

pub use louvain::detect_communities;

pub const PARTITION_HEADER: [&str; 3] = ["id", "label", "community"];
pub const SUMMARY_HEADER: [&str; 5] = ["community", "nodes", "edges", "density", "top_members"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommunityError {
    #[error("assignment has {found} entries for a graph of {expected} nodes")]
    AssignmentLength { expected: usize, found: usize },
    #[error("community id {id} of node {node} is not below the node count")]
    IdOutOfRange { node: usize, id: usize },
    #[error("top-k must be at least 1")]
    InvalidTopK,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommunityPartition {
    /// Community of each node; ids run 0..community_count.
    pub assignment: Vec<usize>,
    pub community_count: usize,
    pub modularity: f64,
    pub seed: u64,
    pub resolution: f64,
    /// Modularity of the singleton partition followed by the value after
    /// each Louvain level.
    pub level_modularity: Vec<f64>,
}

impl CommunityPartition {
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.community_count];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommunitySummary {
    pub community: usize,
    pub nodes: usize,
    pub edges: usize,
    pub density: f64,
    /// Labels of the highest-degree members (whole-graph degree), ties by
    /// label.
    pub top_members: Vec<String>,
}

/// `Q = sum_c [ e_c/m - resolution * (d_c/2m)^2 ]` with weighted internal
/// edges `e_c` and weighted degree sums `d_c`. Zero for a graph without
/// edges.
pub fn modularity(
    g: &WeightedGraph,
    assignment: &[usize],
    resolution: f64,
) -> Result<f64, CommunityError> {
    let n = g.node_count();
    if assignment.len() != n {
        return Err(CommunityError::AssignmentLength {
            expected: n,
            found: assignment.len(),
        });
    }
    if let Some((node, &id)) = assignment.iter().enumerate().find(|(_, &c)| c >= n) {
        return Err(CommunityError::IdOutOfRange { node, id });
    }
    Ok(modularity_unchecked(g, assignment, resolution))
}

pub(crate) fn modularity_unchecked(
    g: &WeightedGraph,
    assignment: &[usize],
    resolution: f64,
) -> f64 {
    let n = g.node_count();
    let m = g.total_weight() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let mut internal = vec![0.0; n];
    let mut degree = vec![0.0; n];
    for (u, v, w) in g.edges() {
        let w = f64::from(w);
        degree[assignment[u]] += w;
        degree[assignment[v]] += w;
        if assignment[u] == assignment[v] {
            internal[assignment[u]] += w;
        }
    }
    internal
        .iter()
        .zip(&degree)
        .map(|(e, d)| e / m - resolution * (d / (2.0 * m)).powi(2))
        .sum()
}

pub fn summarize_communities(
    g: &WeightedGraph,
    partition: &CommunityPartition,
    k: usize,
) -> Result<Vec<CommunitySummary>, CommunityError> {
    if k < 1 {
        return Err(CommunityError::InvalidTopK);
    }
    let n = g.node_count();
    if partition.assignment.len() != n {
        return Err(CommunityError::AssignmentLength {
            expected: n,
            found: partition.assignment.len(),
        });
    }
    let mut edges = vec![0usize; partition.community_count];
    for (u, v, _) in g.edges() {
        if partition.assignment[u] == partition.assignment[v] {
            edges[partition.assignment[u]] += 1;
        }
    }
    Ok(partition
        .members()
        .into_iter()
        .enumerate()
        .map(|(c, mut members)| {
            members.sort_by(|&a, &b| {
                g.degree(b)
                    .cmp(&g.degree(a))
                    .then_with(|| g.label(a).cmp(g.label(b)))
            });
            CommunitySummary {
                community: c,
                nodes: members.len(),
                edges: edges[c],
                density: density(members.len(), edges[c]),
                top_members: members
                    .iter()
                    .take(k)
                    .map(|&v| g.label(v).to_string())
                    .collect(),
            }
        })
        .collect())
}

pub fn write_partition_csv(g: &WeightedGraph, partition: &CommunityPartition) -> String {
    let mut out = csv_writer();
    out.write_record(PARTITION_HEADER).expect("in-memory write");
    for (v, c) in partition.assignment.iter().enumerate() {
        out.write_record([v.to_string().as_str(), g.label(v), &c.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(out.into_inner().expect("in-memory flush")).expect("utf-8 labels")
}

pub fn write_summary_csv(summaries: &[CommunitySummary]) -> String {
    let mut out = csv_writer();
    out.write_record(SUMMARY_HEADER).expect("in-memory write");
    for s in summaries {
        out.write_record([
            s.community.to_string().as_str(),
            &s.nodes.to_string(),
            &s.edges.to_string(),
            &fmt_float(s.density),
            &s.top_members.join(";"),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(out.into_inner().expect("in-memory flush")).expect("utf-8 labels")
}
