#![no_main]

use coauthnet::metrics::{read_centrality_csv, write_centrality_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(table) = read_centrality_csv(text) {
        let back =
            read_centrality_csv(&write_centrality_csv(&table)).expect("written table parses");
        assert_eq!(back, table);
    }
});
