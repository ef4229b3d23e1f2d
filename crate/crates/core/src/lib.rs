//! Co-occurrence network analysis for bibliographic corpora.
//!
//! The crate turns publication records into weighted co-authorship,
//! co-affiliation, country and keyword networks, computes degree, closeness,
//! betweenness and eigenvector centralities, detects communities by
//! modularity maximization, and ranks nodes by TOPSIS aggregation of the
//! centralities.
//!
//! ```
//! use coauthnet::corpus::{BiblioRecord, EntityKind};
//! use coauthnet::network::{build_co_network, graph_stats};
//!
//! let paper = |id: &str, authors: &[&str]| BiblioRecord {
//!     record_id: id.into(),
//!     authors: authors.iter().map(|a| a.to_string()).collect(),
//!     ..Default::default()
//! };
//! let g = build_co_network(&[paper("1", &["a", "b"]), paper("2", &["a", "b", "c"])], EntityKind::Author);
//! assert_eq!(g.weight(0, 1), Some(2));
//! assert_eq!(graph_stats(&g).edges, 3);
//! ```

pub mod community;
pub mod corpus;
pub mod format;
pub mod metrics;
pub mod network;
pub mod topsis;
