#![no_main]

use altvertex::constructions::parse_perm_list;
use altvertex::perm::Perm;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<Perm>() {
        let again: Perm = p.to_string().parse().expect("printed permutations parse");
        assert_eq!(Perm::parse_with_degree(&again.to_string(), p.degree()).unwrap(), p);
    }
    if let Ok(perms) = parse_perm_list(text, 16) {
        assert!(perms.iter().all(|p| p.degree() == 16));
    }
});
