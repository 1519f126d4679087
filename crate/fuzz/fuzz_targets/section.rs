#![no_main]

use libfuzzer_sys::fuzz_target;
use quintic::sections::AnySection;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    let Ok(sec) = AnySection::from_json(&v) else { return };
    assert_eq!(AnySection::from_json(&sec.to_json()).unwrap(), sec);
});
