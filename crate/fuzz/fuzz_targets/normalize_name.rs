#![no_main]

use coauthnet::corpus::{normalize_author_name, normalize_label};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|raw: &str| {
    if let Ok(name) = normalize_author_name(raw) {
        let twice = normalize_author_name(name.as_str()).expect("normalized name stays valid");
        assert_eq!(twice, name);
    }
    let label = normalize_label(raw);
    assert_eq!(normalize_label(&label), label);
});
