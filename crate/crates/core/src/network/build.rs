use crate::corpus::{extract_entities, BiblioRecord, EntityKind};

use super::graph::{GraphBuilder, WeightedGraph};

/// Co-occurrence network of one entity level.
///
/// Every record contributes +1 to the weight of each unordered pair of
/// distinct entities it mentions (clique expansion). Entities become nodes in
/// order of first appearance, including ones that never co-occur with
/// anything.
pub fn build_co_network(records: &[BiblioRecord], kind: EntityKind) -> WeightedGraph {
    let mut builder = GraphBuilder::new();
    let mut ids = Vec::new();
    for record in records {
        ids.clear();
        ids.extend(
            extract_entities(record, kind)
                .iter()
                .map(|name| builder.add_node(name)),
        );
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                builder.add_weight(u, v, 1);
            }
        }
    }
    builder.build()
}
