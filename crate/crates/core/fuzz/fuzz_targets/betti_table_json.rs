#![no_main]

use libfuzzer_sys::fuzz_target;
use monores::BettiTable;

fuzz_target!(|data: &str| {
    if let Ok(table) = BettiTable::from_json_str(data) {
        let again = BettiTable::from_json_str(&table.to_json_string()).expect("printed table parses");
        assert_eq!(again, table);
    }
});
