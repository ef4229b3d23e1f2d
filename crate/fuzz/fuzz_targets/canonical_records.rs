#![no_main]

use coauthnet::corpus::{parse_canonical_records, serialize_canonical};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(records) = parse_canonical_records(text) {
        let again = serialize_canonical(&records);
        assert_eq!(parse_canonical_records(&again).unwrap(), records);
    }
});
