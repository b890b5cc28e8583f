#![no_main]

use altvertex::gmod::GModule;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = GModule::from_fixture(text) {
        let printed = v.to_fixture();
        assert_eq!(GModule::from_fixture(&printed).expect("printed modules parse").to_fixture(), printed);
    }
});
