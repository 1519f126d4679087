//! JSON encodings of scalars and forms. Rationals travel as "num/den"
//! strings, prime-field residues as plain integers.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::form::BinaryForm;
use crate::exactalg::ops::{FieldOps, PrimeField, Rationals};

/// The two coefficient fields that appear in serialized data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn to_json(self) -> Value {
        match self {
            FieldSpec::Rational => json!("Q"),
            FieldSpec::Prime(p) => json!({ "p": p }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) if s == "Q" => Ok(FieldSpec::Rational),
            Value::Object(m) => {
                let p = m
                    .get("p")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Parse("field object needs an integer \"p\"".into()))?;
                PrimeField::new(p)?;
                Ok(FieldSpec::Prime(p))
            }
            _ => Err(Error::Parse(format!("unrecognised field {v}"))),
        }
    }
}

pub trait ScalarCodec: FieldOps {
    fn spec(&self) -> FieldSpec;
    fn encode(&self, e: &Self::E) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::E>;
}

impl ScalarCodec for Rationals {
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn encode(&self, e: &BigRational) -> Value {
        Value::String(format_rational(e))
    }
    fn decode(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
            _ => Err(Error::Parse(format!("expected a rational string, got {v}"))),
        }
    }
}

impl ScalarCodec for PrimeField {
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.modulus())
    }
    fn encode(&self, e: &u64) -> Value {
        json!(e)
    }
    fn decode(&self, v: &Value) -> Result<u64> {
        if let Some(x) = v.as_i64() {
            return Ok(self.reduce_i64(x));
        }
        if let Some(x) = v.as_u64() {
            return Ok(x % self.modulus());
        }
        Err(Error::Parse(format!("expected an integer residue, got {v}")))
    }
}

pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts "n" or "n/d" with optional sign on the numerator.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    if n.is_empty() || d.is_empty() || d.starts_with(['-', '+']) {
        return Err(bad());
    }
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

pub fn form_to_json<F: ScalarCodec>(f: &F, form: &BinaryForm<F::E>) -> Value {
    let coeffs: Vec<Value> = form.coeffs().iter().map(|c| f.encode(c)).collect();
    match f.spec() {
        FieldSpec::Prime(p) => json!({ "deg": form.deg(), "p": p, "coeffs": coeffs }),
        FieldSpec::Rational => json!({ "deg": form.deg(), "coeffs": coeffs }),
    }
}

pub fn form_from_json<F: ScalarCodec>(f: &F, v: &Value) -> Result<BinaryForm<F::E>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("a form must be a JSON object".into()))?;
    let deg = obj
        .get("deg")
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::Parse("form needs an integer \"deg\"".into()))?;
    match (obj.get("p").map(Value::as_u64), f.spec()) {
        (None, FieldSpec::Rational) => {}
        (Some(Some(p)), FieldSpec::Prime(q)) if p == q => {}
        (found, expected) => {
            return Err(Error::FieldMismatch(format!(
                "form field {found:?} does not match {expected:?}"
            )))
        }
    }
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("form needs a \"coeffs\" array".into()))?;
    if deg > 4096 {
        return Err(Error::Parse(format!("form degree {deg} is unreasonably large")));
    }
    let coeffs = coeffs.iter().map(|c| f.decode(c)).collect::<Result<Vec<_>>>()?;
    BinaryForm::new(f, deg, coeffs)
}

/// Integer-valued rationals print as plain integers in human summaries.
pub fn rational_is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}
