#![no_main]

use antimatroid::instance::{format_family, parse_family_listing};
use antimatroid::GroundSet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else {
        return;
    };
    let Ok(ground) = GroundSet::new(1 + n as usize % 64) else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(family) = parse_family_listing(&ground, text) {
        let again = parse_family_listing(&ground, &format_family(&family)).expect("formatted family parses");
        assert_eq!(family, again);
    }
});
