//! Node centralities and clustering.

mod clustering;
mod degree;
mod eigen;
mod paths;

use thiserror::Error;

use crate::format::{csv_reader, csv_writer};
use crate::network::WeightedGraph;

pub use clustering::{clustering_coefficient, local_clustering, Clustering};
pub use degree::{degree_centrality, strength};
pub use eigen::{eigenvector_centrality, EigenWeighting, EigenvectorResult};
pub use paths::{
    betweenness_centrality, betweenness_raw, bfs_distances, closeness_centrality, BetweennessNorm,
    ClosenessMode, DistanceRow,
};

pub const CENTRALITY_HEADER: [&str; 7] = [
    "id",
    "label",
    "degree",
    "strength",
    "closeness",
    "betweenness",
    "eigenvector",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("eigenvector iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("centrality table, line {line}: {message}")]
    Csv { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralityOptions {
    pub betweenness: BetweennessNorm,
    pub closeness: ClosenessMode,
    pub eigen: EigenWeighting,
    pub eigen_tol: f64,
    pub eigen_max_iter: usize,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        Self {
            betweenness: BetweennessNorm::Paper,
            closeness: ClosenessMode::Component,
            eigen: EigenWeighting::Binary,
            eigen_tol: 1e-10,
            eigen_max_iter: 10_000,
        }
    }
}

/// How a [`CentralityTable`] was computed. Absent for tables read from disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralityRun {
    pub options: CentralityOptions,
    pub eigenvalue: f64,
    pub eigen_iterations: usize,
}

/// One row per node, in node-index order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CentralityTable {
    pub labels: Vec<String>,
    pub degree: Vec<u32>,
    pub strength: Vec<u64>,
    pub closeness: Vec<f64>,
    pub betweenness: Vec<f64>,
    pub eigenvector: Vec<f64>,
    pub run: Option<CentralityRun>,
}

impl CentralityTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

pub fn compute_centralities(
    g: &WeightedGraph,
    options: &CentralityOptions,
) -> Result<CentralityTable, MetricsError> {
    let eigen =
        eigenvector_centrality(g, options.eigen, options.eigen_tol, options.eigen_max_iter)?;
    Ok(CentralityTable {
        labels: g.labels().to_vec(),
        degree: degree_centrality(g),
        strength: strength(g),
        closeness: closeness_centrality(g, options.closeness),
        betweenness: betweenness_centrality(g, options.betweenness),
        eigenvector: eigen.values,
        run: Some(CentralityRun {
            options: *options,
            eigenvalue: eigen.eigenvalue,
            eigen_iterations: eigen.iterations,
        }),
    })
}

/// CSV with [`CENTRALITY_HEADER`]. Floats use the shortest representation
/// that reads back to the same value, so a table survives a round trip
/// unchanged.
pub fn write_centrality_csv(table: &CentralityTable) -> String {
    let mut out = csv_writer();
    out.write_record(CENTRALITY_HEADER)
        .expect("in-memory write");
    for i in 0..table.len() {
        out.write_record([
            i.to_string().as_str(),
            &table.labels[i],
            &table.degree[i].to_string(),
            &table.strength[i].to_string(),
            &table.closeness[i].to_string(),
            &table.betweenness[i].to_string(),
            &table.eigenvector[i].to_string(),
        ])
        .expect("in-memory write");
    }
    let bytes = out.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("utf-8 labels")
}

pub fn read_centrality_csv(text: &str) -> Result<CentralityTable, MetricsError> {
    let err = |line: usize, message: String| MetricsError::Csv { line, message };
    let mut reader = csv_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| err(1, e.to_string()))?;
    if header.iter().ne(CENTRALITY_HEADER) {
        return Err(err(
            1,
            format!("expected header {:?}", CENTRALITY_HEADER.join(",")),
        ));
    }
    let mut table = CentralityTable::default();
    for (i, row) in reader.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| err(line, e.to_string()))?;
        if row.len() != CENTRALITY_HEADER.len() {
            return Err(err(
                line,
                format!("expected {} columns", CENTRALITY_HEADER.len()),
            ));
        }
        if row[0].parse::<usize>().ok() != Some(i) {
            return Err(err(line, format!("id {:?} out of sequence", &row[0])));
        }
        if row[1].is_empty() {
            return Err(err(line, "empty label".into()));
        }
        let int = |col: usize| {
            row[col].parse::<u64>().map_err(|_| {
                err(
                    line,
                    format!("bad {} {:?}", CENTRALITY_HEADER[col], &row[col]),
                )
            })
        };
        let float = |col: usize| {
            row[col]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v >= 0.0)
                .ok_or_else(|| {
                    err(
                        line,
                        format!("bad {} {:?}", CENTRALITY_HEADER[col], &row[col]),
                    )
                })
        };
        let degree = u32::try_from(int(2)?).map_err(|_| err(line, "degree out of range".into()))?;
        table.labels.push(row[1].to_string());
        table.degree.push(degree);
        table.strength.push(int(3)?);
        table.closeness.push(float(4)?);
        table.betweenness.push(float(5)?);
        table.eigenvector.push(float(6)?);
    }
    Ok(table)
}
