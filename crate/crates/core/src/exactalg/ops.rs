//! Scalar field back ends used by the numeric kernels.
//!
//! `FieldOps` is a context object: elements are plain values and all
//! arithmetic goes through the context, so a prime field or an extension
//! field can be chosen at run time without boxing every scalar.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactalg::upoly;

pub trait FieldOps: Clone + Debug {
    type E: Clone + PartialEq + Eq + Ord + Debug;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;

    /// Distinct roots in this field of a nonzero univariate polynomial
    /// (coefficients low to high).
    fn roots(&self, f: &[Self::E]) -> Vec<Self::E>;

    fn div(&self, a: &Self::E, b: &Self::E) -> Option<Self::E> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::E, mut e: u128) -> Self::E {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Finite fields additionally expose their order and a uniform sampler.
pub trait FiniteFieldOps: FieldOps {
    fn characteristic(&self) -> u64;
    fn degree(&self) -> usize;
    fn order(&self) -> u128 {
        (self.characteristic() as u128).pow(self.degree() as u32)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::E;
    /// The `idx`-th element in a fixed enumeration of the field.
    fn element(&self, idx: u128) -> Self::E;
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
    is_prime_u64(n)
}

/// The prime field F_p for an odd prime p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= (1 << 31) || !is_prime_u64(p) {
            return Err(Error::InvalidField(format!(
                "modulus {p} must be an odd prime below 2^31"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Image of a rational whose denominator is prime to p.
    pub fn reduce_rational(&self, r: &BigRational) -> Result<u64> {
        let m = BigInt::from(self.p);
        let res = |x: &BigInt| -> u64 {
            let v = ((x % &m) + &m) % &m;
            v.try_into().expect("residue below p")
        };
        let d = res(r.denom());
        let di = self
            .inv(&d)
            .ok_or_else(|| Error::FieldMismatch(format!("denominator of {r} vanishes mod {}", self.p)))?;
        Ok(self.mul(&res(r.numer()), &di))
    }
}

impl FieldOps for PrimeField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u128))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn roots(&self, f: &[u64]) -> Vec<u64> {
        upoly::finite_field_roots(self, f)
    }
}

impl FiniteFieldOps for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn element(&self, idx: u128) -> u64 {
        (idx % self.p as u128) as u64
    }
}

pub const MAX_EXT_DEGREE: usize = 6;

/// Element of F_{p^m}: coefficients of a polynomial in the generator,
/// low degree first; unused slots stay zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf(pub [u64; MAX_EXT_DEGREE]);

/// F_{p^m} realised as F_p[z]/(m(z)) for a fixed monic irreducible m.
///
/// The modulus is the lexicographically first monic irreducible
/// polynomial of the requested degree, so the representation of every
/// element is reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    deg: usize,
    /// Monic modulus, low to high, length deg + 1.
    modulus: Vec<u64>,
}

impl ExtField {
    pub fn new(base: PrimeField, deg: usize) -> Result<Self> {
        if deg == 0 || deg > MAX_EXT_DEGREE {
            return Err(Error::InvalidField(format!(
                "extension degree {deg} outside 1..={MAX_EXT_DEGREE}"
            )));
        }
        let modulus = first_irreducible(&base, deg);
        Ok(ExtField { base, deg, modulus })
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    pub fn embed(&self, a: u64) -> Gf {
        let mut c = [0u64; MAX_EXT_DEGREE];
        c[0] = a % self.base.p;
        Gf(c)
    }

    /// Returns the prime-field value if `a` lies in F_p.
    pub fn as_base(&self, a: &Gf) -> Option<u64> {
        if a.0[1..].iter().all(|&c| c == 0) {
            Some(a.0[0])
        } else {
            None
        }
    }

    /// The generator z of the extension.
    pub fn generator(&self) -> Gf {
        if self.deg == 1 {
            // F_p itself: pick any element, the caller only needs a nonzero one
            return self.embed(1);
        }
        let mut c = [0u64; MAX_EXT_DEGREE];
        c[1] = 1;
        Gf(c)
    }

    /// a^(p^k)
    pub fn frobenius(&self, a: &Gf, k: usize) -> Gf {
        let mut x = *a;
        for _ in 0..k {
            x = self.pow(&x, self.base.p as u128);
        }
        x
    }

    /// Smallest m dividing the extension degree with a in F_{p^m}.
    pub fn definition_degree(&self, a: &Gf) -> usize {
        (1..=self.deg)
            .filter(|m| self.deg.is_multiple_of(*m))
            .find(|&m| self.frobenius(a, m) == *a)
            .unwrap_or(self.deg)
    }
}

fn first_irreducible(base: &PrimeField, deg: usize) -> Vec<u64> {
    let p = base.p;
    if deg == 1 {
        return vec![0, 1];
    }
    let total = (p as u128).pow(deg as u32);
    for idx in 0..total {
        let mut f = vec![0u64; deg + 1];
        let mut r = idx;
        for c in f.iter_mut().take(deg) {
            *c = (r % p as u128) as u64;
            r /= p as u128;
        }
        f[deg] = 1;
        if f[0] != 0 && upoly::is_irreducible(base, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldOps for ExtField {
    type E = Gf;

    fn zero(&self) -> Gf {
        Gf([0; MAX_EXT_DEGREE])
    }
    fn one(&self) -> Gf {
        self.embed(1)
    }
    fn from_i64(&self, v: i64) -> Gf {
        self.embed(self.base.reduce_i64(v))
    }
    fn add(&self, a: &Gf, b: &Gf) -> Gf {
        let mut c = [0u64; MAX_EXT_DEGREE];
        for i in 0..self.deg {
            c[i] = self.base.add(&a.0[i], &b.0[i]);
        }
        Gf(c)
    }
    fn sub(&self, a: &Gf, b: &Gf) -> Gf {
        let mut c = [0u64; MAX_EXT_DEGREE];
        for i in 0..self.deg {
            c[i] = self.base.sub(&a.0[i], &b.0[i]);
        }
        Gf(c)
    }
    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        let p = self.base.p;
        let n = self.deg;
        if n == 1 {
            return self.embed(a.0[0] * b.0[0] % p);
        }
        let mut prod = [0u64; 2 * MAX_EXT_DEGREE];
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + a.0[i] * b.0[j]) % p;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..n {
                // z^n = -sum m_j z^j
                let t = c * self.modulus[j] % p;
                prod[k - n + j] = (prod[k - n + j] + p - t) % p;
            }
        }
        let mut c = [0u64; MAX_EXT_DEGREE];
        c[..n].copy_from_slice(&prod[..n]);
        Gf(c)
    }
    fn neg(&self, a: &Gf) -> Gf {
        self.sub(&self.zero(), a)
    }
    fn inv(&self, a: &Gf) -> Option<Gf> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }
    fn is_zero(&self, a: &Gf) -> bool {
        a.0.iter().all(|&c| c == 0)
    }
    fn roots(&self, f: &[Gf]) -> Vec<Gf> {
        upoly::finite_field_roots(self, f)
    }
}

impl FiniteFieldOps for ExtField {
    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn degree(&self) -> usize {
        self.deg
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Gf {
        let mut c = [0u64; MAX_EXT_DEGREE];
        for x in c.iter_mut().take(self.deg) {
            *x = rng.gen_range(0..self.base.p);
        }
        Gf(c)
    }
    fn element(&self, mut idx: u128) -> Gf {
        let p = self.base.p as u128;
        let mut c = [0u64; MAX_EXT_DEGREE];
        for x in c.iter_mut().take(self.deg) {
            *x = (idx % p) as u64;
            idx /= p;
        }
        Gf(c)
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl FieldOps for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn roots(&self, f: &[BigRational]) -> Vec<BigRational> {
        upoly::rational_roots(f)
    }
}
