#![no_main]

use coauthnet::corpus::{parse_canonical_records, parse_wos_export, serialize_canonical};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(mut records) = parse_wos_export(text) else {
        return;
    };
    // Affiliations are not part of the canonical line format.
    for r in &mut records {
        r.affiliations.clear();
    }
    let back =
        parse_canonical_records(&serialize_canonical(&records)).expect("canonical output parses");
    assert_eq!(back, records);
});
