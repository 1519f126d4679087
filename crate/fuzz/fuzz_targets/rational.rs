#![no_main]

use libfuzzer_sys::fuzz_target;
use quintic::exactalg::codec::{format_rational, parse_rational};

// accepts a bare string or a JSON array of strings
fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    let items = match &v {
        serde_json::Value::String(s) => vec![s.clone()],
        serde_json::Value::Array(a) => a.iter().filter_map(|x| x.as_str().map(str::to_owned)).collect(),
        _ => return,
    };
    for s in items {
        if let Ok(r) = parse_rational(&s) {
            let text = format_rational(&r);
            assert_eq!(parse_rational(&text).unwrap(), r);
            assert_eq!(format_rational(&parse_rational(&text).unwrap()), text);
        }
    }
});
