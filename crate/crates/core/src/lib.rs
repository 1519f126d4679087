//! Exact computations with quintic covers of the projective line given by
//! quadruples of alternating 5x5 matrices of binary forms.

pub mod error;
pub mod bundles;
pub mod cli;
pub mod exactalg;
pub mod fiber;
pub mod sections;
pub mod minimize;
pub mod polytopes;
pub mod singularity;
pub mod strata;

pub use error::{Error, Result};
