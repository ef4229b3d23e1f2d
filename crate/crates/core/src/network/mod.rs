//! Weighted co-occurrence networks: construction by clique expansion,
//! whole-network statistics and file export.

mod build;
mod graph;
mod io;
mod stats;

use thiserror::Error;

pub use crate::corpus::EntityKind;
pub use build::build_co_network;
pub use graph::{GraphBuilder, WeightedGraph};
pub use io::{
    read_graph_csv, write_edge_list, write_gexf, write_node_list, AttributeValues, NodeAttribute,
    EDGE_HEADER, NODE_HEADER,
};
pub use stats::{
    average_degree, connected_components, density, graph_stats, shortest_path_length, Components,
    GraphStats,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("unknown node index {0}")]
    UnknownNodeIndex(usize),
    #[error("{what}, line {line}: {message}")]
    Csv {
        what: &'static str,
        line: usize,
        message: String,
    },
}

impl GraphError {
    pub(crate) fn csv(what: &'static str, line: usize, message: impl Into<String>) -> Self {
        GraphError::Csv {
            what,
            line,
            message: message.into(),
        }
    }
}
