#![no_main]

use std::path::Path;

use coauthnet_cli::{ConfigLayer, RunConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(layer) = ConfigLayer::parse(text, "fuzz.conf", Path::new("")) {
        if let Ok(config) = RunConfig::from_layer(layer) {
            let _ = config.echo();
        }
    }
});
