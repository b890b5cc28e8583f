#![no_main]

use altvertex::verify::{parse_bundle, write_bundle};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(fixtures) = parse_bundle(text) {
        let printed = write_bundle(&fixtures);
        assert_eq!(parse_bundle(&printed).expect("printed bundles parse"), fixtures);
    }
});
