#![no_main]

use coauthnet::network::{read_graph_csv, write_edge_list, write_node_list};
use libfuzzer_sys::fuzz_target;

// Input is the node list and the edge list separated by a NUL byte.
fuzz_target!(|text: &str| {
    let (nodes, edges) = text.split_once('\0').unwrap_or((text, ""));
    if let Ok(g) = read_graph_csv(nodes, edges) {
        let back = read_graph_csv(&write_node_list(&g), &write_edge_list(&g))
            .expect("written graph parses");
        assert_eq!(back, g);
    }
});
