//! Oracles shared by several test targets.
#![allow(dead_code)]

use std::collections::BTreeMap;

use quintic::bundles::BundlePair;
use quintic::exactalg::{BinaryForm, FieldOps};
use quintic::minimize::NormalFormKind;
use quintic::sections::{Section, QUAD_MONOMIALS};

/// Exponents of (s, t, x1, x2, x3, x4).
pub type Mono = [u32; 6];

/// A sparse polynomial in s, t, x1..x4 with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E>(pub BTreeMap<Mono, E>);

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    fn insert<F: FieldOps<E = E>>(&mut self, f: &F, m: Mono, c: E) {
        let v = match self.0.remove(&m) {
            Some(old) => f.add(&old, &c),
            None => c,
        };
        if !f.is_zero(&v) {
            self.0.insert(m, v);
        }
    }

    pub fn add<F: FieldOps<E = E>>(&self, f: &F, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.insert(f, *m, c.clone());
        }
        out
    }

    pub fn neg<F: FieldOps<E = E>>(&self, f: &F) -> Self {
        Poly(self.0.iter().map(|(m, c)| (*m, f.neg(c))).collect())
    }

    pub fn mul<F: FieldOps<E = E>>(&self, f: &F, o: &Self) -> Self {
        let mut out = Poly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                let m: Mono = std::array::from_fn(|n| m1[n] + m2[n]);
                out.insert(f, m, f.mul(c1, c2));
            }
        }
        out
    }

    /// form(s, t) times the monomial `x`, as a polynomial.
    pub fn from_form<F: FieldOps<E = E>>(f: &F, form: &BinaryForm<E>, x: [u32; 4]) -> Self {
        let mut out = Poly::zero();
        if form.is_zero() {
            return out;
        }
        let d = form.deg() as u32;
        for (m, c) in form.coeffs().iter().enumerate() {
            let m = m as u32;
            out.insert(f, [d - m, m, x[0], x[1], x[2], x[3]], c.clone());
        }
        out
    }
}

fn unit(a: usize) -> [u32; 4] {
    std::array::from_fn(|n| (n == a) as u32)
}

/// Entry (i, j) of A(x) = sum_k x_k A_k, 1-based.
pub fn matrix_entry<F: FieldOps>(sec: &Section<F>, i: usize, j: usize) -> Poly<F::E> {
    let f = sec.field();
    (1..=4).fold(Poly::zero(), |acc, k| acc.add(f, &Poly::from_form(f, &sec.a(k, i, j), unit(k - 1))))
}

/// Determinant by cofactor expansion along the first row.
pub fn det<F: FieldOps>(f: &F, m: &[Vec<Poly<F::E>>]) -> Poly<F::E> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for c in 0..n {
        if m[0][c].0.is_empty() {
            continue;
        }
        let minor: Vec<Vec<Poly<F::E>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(x, _)| x != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = m[0][c].mul(f, &det(f, &minor));
        acc = acc.add(f, &if c % 2 == 0 { term } else { term.neg(f) });
    }
    acc
}

/// The quadric Q_l of the section's Pfaffian system as a polynomial.
pub fn quadric<F: FieldOps>(sec: &Section<F>, l: usize) -> Poly<F::E> {
    let f = sec.field();
    let pf = sec.pfaffians();
    let mut out = Poly::zero();
    for (n, &(a, b)) in QUAD_MONOMIALS.iter().enumerate() {
        let mut x = [0u32; 4];
        x[a] += 1;
        x[b] += 1;
        out = out.add(f, &Poly::from_form(f, &pf.quads[l - 1][n], x));
    }
    out
}

/// Q_l^2 == det of the principal minor of A(x) omitting row and column l.
pub fn pfaffian_identity_holds<F: FieldOps>(sec: &Section<F>) -> bool {
    let f = sec.field();
    (1..=5).all(|l| {
        let idx: Vec<usize> = (1..=5).filter(|&x| x != l).collect();
        let minor: Vec<Vec<Poly<F::E>>> =
            idx.iter().map(|&i| idx.iter().map(|&j| matrix_entry(sec, i, j)).collect()).collect();
        let q = quadric(sec, l);
        q.mul(f, &q) == det(f, &minor)
    })
}

impl<E: Clone + PartialEq> Poly<E> {
    /// Partial derivative in variable `v` (0 = s, 1 = t, 2.. = x).
    pub fn derivative<F: FieldOps<E = E>>(&self, f: &F, v: usize) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            if m[v] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[v] -= 1;
            out.insert(f, m2, f.mul(c, &f.from_i64(m[v] as i64)));
        }
        out
    }

    pub fn eval<F: FieldOps<E = E>>(&self, f: &F, at: &[E; 6]) -> E {
        self.0.iter().fold(f.zero(), |acc, (m, c)| {
            let mono = (0..6).fold(c.clone(), |p, n| f.mul(&p, &f.pow(&at[n], m[n] as u128)));
            f.add(&acc, &mono)
        })
    }
}

/// Rank of the Jacobian of Q_1..Q_5 at the affine base point t = t0 and
/// fiber point x, in the chart where the last nonzero coordinate of x is
/// 1, with respect to the other three coordinates and t.
pub fn jacobian_rank_oracle<F: FieldOps>(sec: &Section<F>, t0: &F::E, x: &[F::E]) -> usize {
    let f = sec.field();
    let chart = x.iter().rposition(|c| !f.is_zero(c)).unwrap();
    let xs: Vec<F::E> = x.iter().map(|c| f.div(c, &x[chart]).unwrap()).collect();
    let at: [F::E; 6] = [f.one(), t0.clone(), xs[0].clone(), xs[1].clone(), xs[2].clone(), xs[3].clone()];
    let mut vars: Vec<usize> = (0..4).filter(|&a| a != chart).map(|a| a + 2).collect();
    vars.push(1);
    let jac: Vec<Vec<F::E>> = (1..=5)
        .map(|l| {
            let q = quadric(sec, l);
            assert!(f.is_zero(&q.eval(f, &at)), "point is not on the curve");
            vars.iter().map(|&v| q.derivative(f, v).eval(f, &at)).collect()
        })
        .collect();
    quintic::exactalg::linalg::rank(f, &jac)
}

/// Expected (g, e, f) after normalization, with e and f sorted.
pub fn expected_base(bp: &BundlePair, kind: NormalFormKind) -> (i64, Vec<i64>, Vec<i64>) {
    let (mut e, mut f) = (bp.e.to_vec(), bp.f.to_vec());
    match kind {
        NormalFormKind::TypeK(k) => {
            for (n, x) in e.iter_mut().enumerate() {
                *x -= if n + 1 == k { 2 } else { 1 };
            }
            f.iter_mut().for_each(|x| *x -= 2);
            e.sort();
            (bp.g - 5, e, f)
        }
        NormalFormKind::TypeIJK(i, j, k) => {
            e[k - 1] -= 1;
            f[i - 1] -= 1;
            f[j - 1] -= 1;
            e.sort();
            f.sort();
            (bp.g - 1, e, f)
        }
    }
}
