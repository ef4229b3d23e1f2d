//! TOPSIS ranking of nodes by their centralities.
//!
//! Columns are normalized to unit Euclidean length, scaled by the criterion
//! weights, and each alternative is scored by its relative closeness
//! `C = S- / (S- + S+)` to the ideal point, where `S+` and `S-` are the
//! Euclidean distances to the columnwise best and worst weighted values.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::format::csv_writer;
use crate::metrics::CentralityTable;

pub const RANKING_HEADER: [&str; 8] = [
    "rank",
    "id",
    "label",
    "C",
    "degree",
    "closeness",
    "betweenness",
    "eigenvector",
];

/// Allowed distance of the weight sum from 1.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopsisError {
    #[error("no criteria selected")]
    EmptySelection,
    #[error("decision matrix has no alternatives")]
    NoAlternatives,
    #[error("row {row} has {found} values, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value at row {row}, column {column}")]
    NonFinite { row: usize, column: usize },
    #[error("{weights} weights for {columns} criteria")]
    WeightCount { weights: usize, columns: usize },
    #[error("{directions} directions for {weights} weights")]
    DirectionCount { weights: usize, directions: usize },
    #[error("weight {index} is {value}; weights must be finite and nonnegative")]
    InvalidWeight { index: usize, value: f64 },
    #[error("weights sum to {sum}, not 1")]
    WeightSum { sum: f64 },
    #[error("all weights are zero")]
    AllZeroWeights,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    Degree,
    Closeness,
    Betweenness,
    Eigenvector,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::Degree,
        Criterion::Closeness,
        Criterion::Betweenness,
        Criterion::Eigenvector,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::Degree => "degree",
            Criterion::Closeness => "closeness",
            Criterion::Betweenness => "betweenness",
            Criterion::Eigenvector => "eigenvector",
        }
    }

    fn column(self, table: &CentralityTable, row: usize) -> f64 {
        match self {
            Criterion::Degree => f64::from(table.degree[row]),
            Criterion::Closeness => table.closeness[row],
            Criterion::Betweenness => table.betweenness[row],
            Criterion::Eigenvector => table.eigenvector[row],
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown criterion `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// Larger is better.
    #[default]
    Benefit,
    /// Smaller is better.
    Cost,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Benefit => "benefit",
            Direction::Cost => "cost",
        }
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "benefit" | "+" => Ok(Direction::Benefit),
            "cost" | "-" => Ok(Direction::Cost),
            other => Err(format!("unknown criterion direction `{other}`")),
        }
    }
}

/// `p x q` matrix of alternatives (rows) by criteria (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMatrix {
    labels: Vec<String>,
    criteria: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    pub fn new(
        labels: Vec<String>,
        criteria: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self, TopsisError> {
        if criteria.is_empty() {
            return Err(TopsisError::EmptySelection);
        }
        if rows.is_empty() {
            return Err(TopsisError::NoAlternatives);
        }
        assert_eq!(labels.len(), rows.len(), "one label per row");
        for (row, values) in rows.iter().enumerate() {
            if values.len() != criteria.len() {
                return Err(TopsisError::RaggedRow {
                    row,
                    expected: criteria.len(),
                    found: values.len(),
                });
            }
            if let Some(column) = values.iter().position(|v| !v.is_finite()) {
                return Err(TopsisError::NonFinite { row, column });
            }
        }
        Ok(Self {
            labels,
            criteria,
            rows,
        })
    }

    /// Unlabeled matrix; rows are named by their index.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, TopsisError> {
        let q = rows.first().map_or(0, Vec::len);
        let labels = (0..rows.len()).map(|i| i.to_string()).collect();
        let criteria = (0..q).map(|j| format!("c{j}")).collect();
        Self::new(labels, criteria, rows)
    }

    pub fn alternatives(&self) -> usize {
        self.rows.len()
    }

    pub fn criteria_count(&self) -> usize {
        self.criteria.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn criteria(&self) -> &[String] {
        &self.criteria
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

/// One row per node, with the selected criteria in the fixed order degree,
/// closeness, betweenness, eigenvector.
pub fn build_decision_matrix(
    table: &CentralityTable,
    selection: &[Criterion],
) -> Result<DecisionMatrix, TopsisError> {
    let mut selected = selection.to_vec();
    selected.sort();
    selected.dedup();
    if selected.is_empty() {
        return Err(TopsisError::EmptySelection);
    }
    let rows = (0..table.len())
        .map(|i| selected.iter().map(|c| c.column(table, i)).collect())
        .collect();
    DecisionMatrix::new(
        table.labels.clone(),
        selected.iter().map(|c| c.as_str().to_string()).collect(),
        rows,
    )
}

/// Weights and directions, one per criterion column.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaSpec {
    weights: Vec<f64>,
    directions: Vec<Direction>,
}

impl CriteriaSpec {
    pub fn new(weights: Vec<f64>, directions: Vec<Direction>) -> Result<Self, TopsisError> {
        if weights.len() != directions.len() {
            return Err(TopsisError::DirectionCount {
                weights: weights.len(),
                directions: directions.len(),
            });
        }
        if weights.is_empty() {
            return Err(TopsisError::EmptySelection);
        }
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(TopsisError::InvalidWeight { index, value });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(TopsisError::WeightSum { sum });
        }
        if weights.iter().all(|&w| w == 0.0) {
            return Err(TopsisError::AllZeroWeights);
        }
        Ok(Self {
            weights,
            directions,
        })
    }

    /// `1/q` each, all benefit.
    pub fn equal(q: usize) -> Result<Self, TopsisError> {
        Self::new(vec![1.0 / q as f64; q], vec![Direction::Benefit; q])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub values: Vec<Vec<f64>>,
    /// Columns whose entries are all zero; they stay zero and add nothing to
    /// either distance.
    pub zero_columns: Vec<bool>,
}

/// Divides each column by its Euclidean norm.
pub fn normalize(d: &DecisionMatrix) -> Normalized {
    let q = d.criteria_count();
    let norms: Vec<f64> = (0..q)
        .map(|j| d.rows.iter().map(|r| r[j] * r[j]).sum::<f64>().sqrt())
        .collect();
    let values = d
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .zip(&norms)
                .map(|(&x, &norm)| if norm == 0.0 { 0.0 } else { x / norm })
                .collect()
        })
        .collect();
    Normalized {
        values,
        zero_columns: norms.iter().map(|&n| n == 0.0).collect(),
    }
}

pub fn apply_weights(l: &[Vec<f64>], spec: &CriteriaSpec) -> Result<Vec<Vec<f64>>, TopsisError> {
    let columns = l.first().map_or(spec.len(), Vec::len);
    if columns != spec.len() {
        return Err(TopsisError::WeightCount {
            weights: spec.len(),
            columns,
        });
    }
    Ok(l.iter()
        .map(|r| r.iter().zip(&spec.weights).map(|(x, w)| x * w).collect())
        .collect())
}

/// Columnwise best (`t+`) and worst (`t-`) weighted values.
pub fn ideal_solutions(t: &[Vec<f64>], spec: &CriteriaSpec) -> (Vec<f64>, Vec<f64>) {
    let q = spec.len();
    let mut plus = Vec::with_capacity(q);
    let mut minus = Vec::with_capacity(q);
    for j in 0..q {
        let hi = t.iter().map(|r| r[j]).fold(f64::NEG_INFINITY, f64::max);
        let lo = t.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min);
        match spec.directions[j] {
            Direction::Benefit => {
                plus.push(hi);
                minus.push(lo);
            }
            Direction::Cost => {
                plus.push(lo);
                minus.push(hi);
            }
        }
    }
    (plus, minus)
}

/// Euclidean distance of every row to `t+` and to `t-`.
pub fn separations(t: &[Vec<f64>], plus: &[f64], minus: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let dist = |row: &[f64], target: &[f64]| {
        row.iter()
            .zip(target)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    };
    t.iter().map(|r| (dist(r, plus), dist(r, minus))).unzip()
}

/// `S- / (S- + S+)`, or 0.5 when both distances are zero.
pub fn closeness_coefficient(s_plus: &[f64], s_minus: &[f64]) -> Vec<f64> {
    s_plus
        .iter()
        .zip(s_minus)
        .map(|(&sp, &sm)| {
            let total = sp + sm;
            if total == 0.0 {
                0.5
            } else {
                sm / total
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopsisTableau {
    pub normalized: Vec<Vec<f64>>,
    pub weighted: Vec<Vec<f64>>,
    pub ideal: Vec<f64>,
    pub anti_ideal: Vec<f64>,
    pub s_plus: Vec<f64>,
    pub s_minus: Vec<f64>,
    pub closeness: Vec<f64>,
    pub zero_columns: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedAlternative {
    /// 1-based.
    pub rank: usize,
    /// Row of the decision matrix.
    pub index: usize,
    pub label: String,
    pub closeness: f64,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankingResult {
    pub criteria: Vec<String>,
    pub spec: CriteriaSpec,
    pub tableau: TopsisTableau,
    /// Descending closeness, ties by label ascending.
    pub order: Vec<RankedAlternative>,
}

impl RankingResult {
    /// Names of criteria whose column was entirely zero.
    pub fn zero_criteria(&self) -> Vec<&str> {
        self.criteria
            .iter()
            .zip(&self.tableau.zero_columns)
            .filter(|(_, &z)| z)
            .map(|(c, _)| c.as_str())
            .collect()
    }
}

pub fn rank(d: &DecisionMatrix, spec: &CriteriaSpec) -> Result<RankingResult, TopsisError> {
    let Normalized {
        values: normalized,
        zero_columns,
    } = normalize(d);
    let weighted = apply_weights(&normalized, spec)?;
    let (ideal, anti_ideal) = ideal_solutions(&weighted, spec);
    let (s_plus, s_minus) = separations(&weighted, &ideal, &anti_ideal);
    let closeness = closeness_coefficient(&s_plus, &s_minus);

    let mut idx: Vec<usize> = (0..d.alternatives()).collect();
    idx.sort_by(|&a, &b| {
        closeness[b]
            .total_cmp(&closeness[a])
            .then_with(|| d.labels[a].cmp(&d.labels[b]))
    });
    let order = idx
        .into_iter()
        .enumerate()
        .map(|(pos, i)| RankedAlternative {
            rank: pos + 1,
            index: i,
            label: d.labels[i].clone(),
            closeness: closeness[i],
            values: d.rows[i].clone(),
        })
        .collect();
    Ok(RankingResult {
        criteria: d.criteria.clone(),
        spec: spec.clone(),
        tableau: TopsisTableau {
            normalized,
            weighted,
            ideal,
            anti_ideal,
            s_plus,
            s_minus,
            closeness,
            zero_columns,
        },
        order,
    })
}

/// Ranking CSV: a `# provenance` comment line, then [`RANKING_HEADER`] and
/// the first `top_k` alternatives. `id` is the node index in `table`, whose
/// rows must be the rows the ranking was built from.
pub fn write_ranking_csv(
    result: &RankingResult,
    table: &CentralityTable,
    provenance: &str,
    top_k: usize,
) -> String {
    let mut out = String::new();
    out.push_str("# ");
    out.push_str(&provenance.replace(['\n', '\r'], " "));
    out.push('\n');
    let mut w = csv_writer();
    w.write_record(RANKING_HEADER).expect("in-memory write");
    for r in result.order.iter().take(top_k) {
        let i = r.index;
        w.write_record([
            r.rank.to_string().as_str(),
            &i.to_string(),
            &r.label,
            &r.closeness.to_string(),
            &table.degree[i].to_string(),
            &table.closeness[i].to_string(),
            &table.betweenness[i].to_string(),
            &table.eigenvector[i].to_string(),
        ])
        .expect("in-memory write");
    }
    out.push_str(std::str::from_utf8(&w.into_inner().expect("in-memory flush")).expect("utf-8"));
    out
}
