#![no_main]

use libfuzzer_sys::fuzz_target;
use quintic::exactalg::codec::{form_from_json, form_to_json};
use quintic::exactalg::{PrimeField, Rationals};

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(form) = form_from_json(&Rationals, &v) {
        assert_eq!(form_from_json(&Rationals, &form_to_json(&Rationals, &form)).unwrap(), form);
    }
    let f = PrimeField::new(101).unwrap();
    if let Ok(form) = form_from_json(&f, &v) {
        assert_eq!(form_from_json(&f, &form_to_json(&f, &form)).unwrap(), form);
    }
});
