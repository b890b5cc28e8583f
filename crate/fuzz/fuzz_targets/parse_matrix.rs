#![no_main]

use altvertex::linalg::Matrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = text.parse::<Matrix>() {
        let printed = m.to_string();
        assert_eq!(printed.parse::<Matrix>().expect("printed matrices parse"), m);
    }
});
