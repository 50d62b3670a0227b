#![no_main]

use antimatroid::instance::{format_words, parse_word_list};
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
    if let Ok(words) = parse_word_list(&ground, text) {
        let again = parse_word_list(&ground, &format_words(&words)).expect("formatted words parse");
        assert_eq!(words, again);
    }
});
