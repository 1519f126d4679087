#![no_main]

use libfuzzer_sys::fuzz_target;
use quintic::exactalg::{PrimeField, Rationals};
use quintic::minimize::NormalFormCertificate;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(c) = NormalFormCertificate::from_json(&Rationals, &v) {
        assert_eq!(NormalFormCertificate::from_json(&Rationals, &c.to_json(&Rationals)).unwrap(), c);
    }
    let f = PrimeField::new(101).unwrap();
    if let Ok(c) = NormalFormCertificate::from_json(&f, &v) {
        assert_eq!(NormalFormCertificate::from_json(&f, &c.to_json(&f)).unwrap(), c);
    }
});
