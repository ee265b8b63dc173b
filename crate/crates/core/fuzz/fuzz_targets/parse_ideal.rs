#![no_main]

use libfuzzer_sys::fuzz_target;
use monores::parse_ideal;

fuzz_target!(|data: &str| {
    if let Ok(parsed) = parse_ideal(data) {
        let again = parse_ideal(&parsed.ideal.to_text()).expect("printed ideal parses");
        assert_eq!(again.ideal, parsed.ideal);
        assert!(again.was_minimal());
    }
});
