use crate::error::{Error, Result};
use crate::exactalg::ops::FieldOps;
use crate::exactalg::point::P1Point;
use crate::exactalg::upoly;

/// A homogeneous form in (s, t). The coefficient of s^(deg-m) t^m sits at
/// index m. The zero form is stored with degree -1 and no coefficients,
/// so two zero forms compare equal whatever degree they were built with.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm<E> {
    deg: i64,
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> BinaryForm<E> {
    pub fn zero() -> Self {
        BinaryForm { deg: -1, coeffs: Vec::new() }
    }

    pub fn new<F: FieldOps<E = E>>(f: &F, deg: i64, coeffs: Vec<E>) -> Result<Self> {
        if deg < -1 {
            return Err(Error::Parse(format!("form degree {deg} below -1")));
        }
        if deg == -1 {
            if !coeffs.is_empty() {
                return Err(Error::Parse("zero form must have no coefficients".into()));
            }
            return Ok(Self::zero());
        }
        if coeffs.len() as i64 != deg + 1 {
            return Err(Error::Parse(format!(
                "degree {deg} form needs {} coefficients, got {}",
                deg + 1,
                coeffs.len()
            )));
        }
        Ok(Self::normalized(f, deg, coeffs))
    }

    fn normalized<F: FieldOps<E = E>>(f: &F, deg: i64, coeffs: Vec<E>) -> Self {
        if coeffs.iter().all(|c| f.is_zero(c)) {
            Self::zero()
        } else {
            BinaryForm { deg, coeffs }
        }
    }

    pub fn constant<F: FieldOps<E = E>>(f: &F, c: E) -> Self {
        Self::normalized(f, 0, vec![c])
    }

    /// s^(deg-m) t^m scaled by c.
    pub fn monomial<F: FieldOps<E = E>>(f: &F, deg: i64, m: usize, c: E) -> Self {
        let mut coeffs = vec![f.zero(); (deg + 1) as usize];
        coeffs[m] = c;
        Self::normalized(f, deg, coeffs)
    }

    /// The uniformizer at `pt`: t - t0 s on the chart s = 1, and s at (0 : 1).
    pub fn uniformizer<F: FieldOps<E = E>>(f: &F, pt: &P1Point<E>) -> Self {
        match pt.affine_coord(f) {
            Some(t0) => BinaryForm { deg: 1, coeffs: vec![f.neg(t0), f.one()] },
            None => BinaryForm { deg: 1, coeffs: vec![f.one(), f.zero()] },
        }
    }

    /// A linear form taking the value 1 at the stored representative of `pt`.
    pub fn unit_at<F: FieldOps<E = E>>(f: &F, pt: &P1Point<E>) -> Self {
        if pt.is_infinity(f) {
            BinaryForm { deg: 1, coeffs: vec![f.zero(), f.one()] }
        } else {
            BinaryForm { deg: 1, coeffs: vec![f.one(), f.zero()] }
        }
    }

    pub fn deg(&self) -> i64 {
        self.deg
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.deg < 0
    }

    pub fn add<F: FieldOps<E = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.combine(f, other, |a, b| f.add(a, b))
    }

    pub fn sub<F: FieldOps<E = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.combine(f, other, |a, b| f.sub(a, b))
    }

    fn combine<F: FieldOps<E = E>>(
        &self,
        f: &F,
        other: &Self,
        op: impl Fn(&E, &E) -> E,
    ) -> Result<Self> {
        let z = f.zero();
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            let coeffs = other.coeffs.iter().map(|c| op(&z, c)).collect();
            return Ok(Self::normalized(f, other.deg, coeffs));
        }
        if self.deg != other.deg {
            return Err(Error::Precondition(format!(
                "cannot add forms of degrees {} and {}",
                self.deg, other.deg
            )));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| op(a, b)).collect();
        Ok(Self::normalized(f, self.deg, coeffs))
    }

    pub fn neg<F: FieldOps<E = E>>(&self, f: &F) -> Self {
        BinaryForm { deg: self.deg, coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn scale<F: FieldOps<E = E>>(&self, f: &F, c: &E) -> Self {
        let coeffs = self.coeffs.iter().map(|x| f.mul(x, c)).collect();
        Self::normalized(f, self.deg, coeffs)
    }

    pub fn mul<F: FieldOps<E = E>>(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::normalized(f, self.deg + other.deg, out)
    }

    pub fn pow<F: FieldOps<E = E>>(&self, f: &F, n: u32) -> Self {
        let mut acc = Self::constant(f, f.one());
        for _ in 0..n {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Exact quotient by a nonzero form; errors when a remainder is left.
    pub fn div_exact<F: FieldOps<E = E>>(&self, f: &F, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::Degenerate("division by the zero form".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let qdeg = self.deg - divisor.deg;
        let fail = || Error::InvalidCertificate("form division leaves a remainder".into());
        if qdeg < 0 {
            return Err(fail());
        }
        // coefficient arrays multiply as polynomials in one variable
        let a = upoly::trim(f, self.coeffs.clone());
        let b = upoly::trim(f, divisor.coeffs.clone());
        let (q, r) = upoly::divrem(f, &a, &b);
        if !r.is_empty() || q.len() as i64 > qdeg + 1 {
            return Err(fail());
        }
        let mut q = q;
        q.resize((qdeg + 1) as usize, f.zero());
        Ok(Self::normalized(f, qdeg, q))
    }

    /// Value at (s, t).
    pub fn eval_st<F: FieldOps<E = E>>(&self, f: &F, s: &E, t: &E) -> E {
        // Horner in t/s is unavailable when s = 0, so accumulate both powers.
        let n = self.coeffs.len();
        let mut spow = vec![f.one(); n];
        for i in 1..n {
            spow[i] = f.mul(&spow[i - 1], s);
        }
        let mut acc = f.zero();
        let mut tp = f.one();
        for (m, c) in self.coeffs.iter().enumerate() {
            if !f.is_zero(c) {
                acc = f.add(&acc, &f.mul(c, &f.mul(&tp, &spow[n - 1 - m])));
            }
            tp = f.mul(&tp, t);
        }
        acc
    }

    pub fn eval<F: FieldOps<E = E>>(&self, f: &F, pt: &P1Point<E>) -> E {
        self.eval_st(f, pt.s(), pt.t())
    }

    /// Value and first derivative with respect to the uniformizer at `pt`.
    pub fn eval_with_derivative<F: FieldOps<E = E>>(&self, f: &F, pt: &P1Point<E>) -> (E, E) {
        let poly = self.local_poly(f, pt);
        let v = poly.first().cloned().unwrap_or_else(|| f.zero());
        let d = poly.get(1).cloned().unwrap_or_else(|| f.zero());
        (v, d)
    }

    /// The form as a polynomial in the affine coordinate of the chart
    /// containing `pt` (t on s = 1, s on t = 1), low degree first.
    pub fn chart_poly<F: FieldOps<E = E>>(&self, f: &F, pt: &P1Point<E>) -> Vec<E> {
        if self.is_zero() {
            return Vec::new();
        }
        if pt.is_infinity(f) {
            upoly::trim(f, self.coeffs.iter().rev().cloned().collect())
        } else {
            upoly::trim(f, self.coeffs.clone())
        }
    }

    /// Taylor coefficients in the uniformizer at `pt`, low order first.
    pub fn local_poly<F: FieldOps<E = E>>(&self, f: &F, pt: &P1Point<E>) -> Vec<E> {
        let p = self.chart_poly(f, pt);
        match pt.affine_coord(f) {
            None => p,
            Some(t0) => taylor_shift(f, &p, t0),
        }
    }

    /// Vanishing order at `pt` with respect to the uniformizer; None for
    /// the zero form.
    pub fn order_at<F: FieldOps<E = E>>(&self, f: &F, pt: &P1Point<E>) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let p = self.local_poly(f, pt);
        Some(p.iter().position(|c| !f.is_zero(c)).unwrap_or(p.len()) as u32)
    }

    /// All zeros rational over the coefficient field, with multiplicities.
    pub fn roots_in_field<F: FieldOps<E = E>>(&self, f: &F) -> Result<Vec<(P1Point<E>, u32)>>
    where
        E: Ord,
    {
        if self.is_zero() {
            return Err(Error::Degenerate("the zero form vanishes everywhere".into()));
        }
        let poly = upoly::trim(f, self.coeffs.clone());
        let mut roots: Vec<E> = f.roots(&poly);
        roots.sort();
        let mut out: Vec<(P1Point<E>, u32)> = roots
            .into_iter()
            .map(|r| {
                let m = upoly::root_multiplicity(f, &poly, &r) as u32;
                (P1Point::affine(f, r), m)
            })
            .collect();
        let inf = P1Point::infinity(f);
        let k = self.order_at(f, &inf).unwrap_or(0);
        if k > 0 {
            out.push((inf, k));
        }
        Ok(out)
    }

    pub fn map<G: Clone + PartialEq>(&self, phi: impl Fn(&E) -> G) -> BinaryForm<G> {
        BinaryForm { deg: self.deg, coeffs: self.coeffs.iter().map(phi).collect() }
    }
}

/// Coefficients of p(t0 + u) as a polynomial in u.
fn taylor_shift<F: FieldOps>(f: &F, p: &[F::E], t0: &F::E) -> Vec<F::E> {
    let mut out: Vec<F::E> = Vec::new();
    for c in p.iter().rev() {
        // out = out * (u + t0) + c
        let mut next = vec![f.zero(); out.len() + 1];
        for (i, o) in out.iter().enumerate() {
            next[i + 1] = f.add(&next[i + 1], o);
            next[i] = f.add(&next[i], &f.mul(o, t0));
        }
        next[0] = f.add(&next[0], c);
        out = next;
    }
    out
}
