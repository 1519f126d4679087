#![no_main]

use libfuzzer_sys::fuzz_target;
use quintic::bundles::BundlePair;

fuzz_target!(|data: &[u8]| {
    let Ok(bp) = serde_json::from_slice::<BundlePair>(data) else { return };
    let again: BundlePair = serde_json::from_value(serde_json::to_value(&bp).unwrap()).unwrap();
    assert_eq!(again, bp);
    let _ = (bp.degree_matrix(), bp.fin_active(), bp.level());
});
