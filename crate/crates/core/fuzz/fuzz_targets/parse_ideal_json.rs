#![no_main]

use libfuzzer_sys::fuzz_target;
use monores::parse::{ideal_to_json, parse_ideal_json};

fuzz_target!(|data: &str| {
    if let Ok(parsed) = parse_ideal_json(data) {
        let again = parse_ideal_json(&ideal_to_json(&parsed.ideal)).expect("printed ideal parses");
        assert_eq!(again.ideal, parsed.ideal);
    }
});
