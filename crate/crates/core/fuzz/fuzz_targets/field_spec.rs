#![no_main]

use libfuzzer_sys::fuzz_target;
use monores::FieldSpec;

fuzz_target!(|data: &str| {
    if let Ok(field) = data.parse::<FieldSpec>() {
        assert_eq!(field.to_string().parse::<FieldSpec>().unwrap(), field);
    }
});
