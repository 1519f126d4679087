use crate::error::{Error, Result};
use crate::exactalg::ops::FieldOps;

/// A point of the projective line, stored with its leading nonzero
/// coordinate equal to one: either (1, t0) or (0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point<E> {
    s: E,
    t: E,
}

impl<E: Clone + PartialEq> P1Point<E> {
    pub fn new<F: FieldOps<E = E>>(f: &F, s: E, t: E) -> Result<Self> {
        if !f.is_zero(&s) {
            let si = f.inv(&s).expect("nonzero");
            Ok(P1Point { s: f.one(), t: f.mul(&t, &si) })
        } else if !f.is_zero(&t) {
            Ok(P1Point { s: f.zero(), t: f.one() })
        } else {
            Err(Error::Degenerate("both coordinates of a point of P^1 are zero".into()))
        }
    }

    /// The affine point (1 : t0).
    pub fn affine<F: FieldOps<E = E>>(f: &F, t0: E) -> Self {
        P1Point { s: f.one(), t: t0 }
    }

    /// The point (0 : 1).
    pub fn infinity<F: FieldOps<E = E>>(f: &F) -> Self {
        P1Point { s: f.zero(), t: f.one() }
    }

    pub fn s(&self) -> &E {
        &self.s
    }

    pub fn t(&self) -> &E {
        &self.t
    }

    pub fn is_infinity<F: FieldOps<E = E>>(&self, f: &F) -> bool {
        f.is_zero(&self.s)
    }

    /// Affine coordinate t0 for points other than (0 : 1).
    pub fn affine_coord<F: FieldOps<E = E>>(&self, f: &F) -> Option<&E> {
        if self.is_infinity(f) {
            None
        } else {
            Some(&self.t)
        }
    }

    pub fn map<G: Clone + PartialEq>(&self, phi: impl Fn(&E) -> G) -> P1Point<G> {
        P1Point { s: phi(&self.s), t: phi(&self.t) }
    }
}
