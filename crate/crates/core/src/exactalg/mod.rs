//! Exact coefficient fields, univariate helpers and binary forms.

pub mod codec;
pub mod form;
pub mod linalg;
pub mod ops;
pub mod point;
pub mod ring;
pub mod upoly;

pub use codec::{FieldSpec, ScalarCodec};
pub use form::BinaryForm;
pub use ops::{ExtField, FieldOps, FiniteFieldOps, Gf, PrimeField, Rationals};
pub use point::P1Point;

/// Modulus used when none is given on the command line or in the
/// environment.
pub const DEFAULT_PRIME: u64 = 10007;

/// Below this modulus the "large characteristic" assumption behind the
/// geometric statements is no longer comfortable and a warning is issued.
pub const SMALL_PRIME_WARNING: u64 = 1000;
