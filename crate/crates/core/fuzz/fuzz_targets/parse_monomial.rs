#![no_main]

use libfuzzer_sys::fuzz_target;
use monores::{parse_monomial, VariableSet};

fuzz_target!(|data: &str| {
    let vars = VariableSet::new(["a", "b", "c", "x1", "x2"]).unwrap();
    if let Ok(m) = parse_monomial(data, &vars) {
        let printed = vars.display(&m).to_string();
        assert_eq!(parse_monomial(&printed, &vars).unwrap(), m);
    }
});
