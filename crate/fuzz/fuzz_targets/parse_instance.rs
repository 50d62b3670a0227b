#![no_main]

use antimatroid::Instance;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(inst) = Instance::parse(text) else {
        return;
    };
    // whatever parses must serialize and parse back to the same instance
    let again = Instance::parse(&inst.to_json()).expect("serialized instance parses");
    assert_eq!(inst, again);
    if let Some(op) = &inst.operator {
        if op.ground().len() <= 8 {
            let _ = op.family();
        }
    }
});
