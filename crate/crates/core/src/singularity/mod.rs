//! Smoothness of the Pfaffian locus: the Jacobian criterion at fiber
//! points, the congruence pattern forcing a singular point, and the
//! checks attached to the fin.

mod scan;

pub use scan::{singular_scan, singular_scan_with, ScanMethod, ScanPoint, ScanStatus, SingularityReport, DEFAULT_M_MAX};

use crate::bundles::theorem15_check;
use crate::error::{Error, Result};
use crate::exactalg::linalg;
use crate::exactalg::{BinaryForm, FieldOps, P1Point};
use crate::fiber::{eval_quadric, normalize_projective};
use crate::sections::{PfaffianSystem, Section, QUAD_MONOMIALS};

/// A point x of the fiber P^3 above the base point p.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiberPoint<E> {
    pub p: P1Point<E>,
    pub x: Vec<E>,
}

impl<E: Clone + PartialEq> FiberPoint<E> {
    /// Normalizes x so that its last nonzero coordinate is 1.
    pub fn new<F: FieldOps<E = E>>(f: &F, p: P1Point<E>, x: &[E]) -> Result<Self> {
        if x.len() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: x.len() });
        }
        if x.iter().all(|c| f.is_zero(c)) {
            return Err(Error::NotOnCurve("the zero vector is not a projective point".into()));
        }
        Ok(FiberPoint { p, x: normalize_projective(f, x) })
    }

    /// Index of the chart used for local coordinates.
    pub fn chart<F: FieldOps<E = E>>(&self, f: &F) -> usize {
        self.x.iter().rposition(|c| !f.is_zero(c)).unwrap_or(3)
    }
}

/// Quadric coefficients at p, as five rows of ten scalars.
pub fn quadrics_at<F: FieldOps>(f: &F, pf: &PfaffianSystem<F::E>, p: &P1Point<F::E>) -> Vec<Vec<F::E>> {
    pf.quads.iter().map(|q| q.iter().map(|c| c.eval(f, p)).collect()).collect()
}

/// Rank of the 5x4 Jacobian of the quadrics in the three affine fiber
/// coordinates and the base uniformizer.
pub fn jacobian_rank_with<F: FieldOps>(f: &F, pf: &PfaffianSystem<F::E>, fp: &FiberPoint<F::E>) -> Result<usize> {
    let x = &fp.x;
    let chart = fp.chart(f);
    let mut jac = Vec::with_capacity(5);
    for q in &pf.quads {
        let (vals, ders): (Vec<F::E>, Vec<F::E>) = q.iter().map(|c| c.eval_with_derivative(f, &fp.p)).unzip();
        if !f.is_zero(&eval_quadric(f, &vals, x)) {
            return Err(Error::NotOnCurve("a Pfaffian quadric does not vanish at the point".into()));
        }
        let mut row = Vec::with_capacity(4);
        for a in (0..4).filter(|&a| a != chart) {
            let mut d = f.zero();
            for (m, &(i, j)) in QUAD_MONOMIALS.iter().enumerate() {
                if f.is_zero(&vals[m]) {
                    continue;
                }
                // derivative of x_i x_j with respect to x_a
                let term = match (i == a, j == a) {
                    (true, true) => f.mul(&f.from_i64(2), &x[a]),
                    (true, false) => x[j].clone(),
                    (false, true) => x[i].clone(),
                    (false, false) => continue,
                };
                d = f.add(&d, &f.mul(&vals[m], &term));
            }
            row.push(d);
        }
        row.push(eval_quadric(f, &ders, x));
        jac.push(row);
    }
    Ok(linalg::rank(f, &jac))
}

pub fn jacobian_rank_at<F: FieldOps>(sec: &Section<F>, fp: &FiberPoint<F::E>) -> Result<usize> {
    jacobian_rank_with(sec.field(), &sec.pfaffians(), fp)
}

fn order_at_least<F: FieldOps>(f: &F, form: &BinaryForm<F::E>, p: &P1Point<F::E>, n: u32) -> bool {
    form.order_at(f, p).is_none_or(|o| o >= n)
}

/// The congruences a^(K)_IJ = 0 mod u^2, a^(k)_IJ = 0 mod u for all k,
/// and a^(K)_Ij = a^(K)_iJ = 0 mod u for all i, j.
pub fn shape_singular_check<F: FieldOps>(sec: &Section<F>, p: &P1Point<F::E>, triple: (usize, usize, usize)) -> bool {
    let f = sec.field();
    let (i, j, k) = triple;
    if !(1..=5).contains(&i) || !(1..=5).contains(&j) || i == j || !(1..=4).contains(&k) {
        return false;
    }
    order_at_least(f, &sec.a(k, i, j), p, 2)
        && (1..=4).all(|kk| order_at_least(f, &sec.a(kk, i, j), p, 1))
        && (1..=5).all(|jj| order_at_least(f, &sec.a(k, i, jj), p, 1))
        && (1..=5).all(|ii| order_at_least(f, &sec.a(k, ii, j), p, 1))
}

/// The coordinate point e_K above p, singular when the congruences hold.
pub fn distinguished_point<F: FieldOps>(f: &F, p: &P1Point<F::E>, k: usize) -> FiberPoint<F::E> {
    let mut x = vec![f.zero(); 4];
    x[k - 1] = f.one();
    FiberPoint { p: p.clone(), x }
}

/// Rational zeros of a^(1)_25 on a pair where a^(1)_15, a^(1)_24 and
/// a^(4)_12 are forced to vanish. At each of them the congruences of
/// `shape_singular_check` hold for the triple (1, 2, 1), so the point
/// e_1 above it is singular.
pub fn fin_witnesses<F: FieldOps>(sec: &Section<F>) -> Result<Vec<P1Point<F::E>>> {
    if !sec.base().fin_active() {
        return Err(Error::Precondition("the fin degrees d_15^(1), d_24^(1), d_12^(4) are not all negative".into()));
    }
    let a = sec.entry(1, 2, 5);
    if a.is_zero() {
        return Err(Error::Degenerate("a_25^(1) vanishes identically, so every base point is a witness".into()));
    }
    Ok(a.roots_in_field(sec.field())?.into_iter().map(|(p, _)| p).collect())
}

/// On a realizable pair on the fin: every supplied curve point makes the
/// 2x2 minors of rows 1, 2 and columns 3, 4, 5 of A(x) vanish, and the
/// x_1 coefficient of A(x)_25 is a nonzero constant.
pub fn fin_minor_check<F: FieldOps>(sec: &Section<F>, points: &[FiberPoint<F::E>]) -> Result<bool> {
    let bp = sec.base();
    if !bp.fin_active() || !theorem15_check(bp).is_satisfied() {
        return Err(Error::Precondition("the pair is not a realizable pair on the fin".into()));
    }
    let f = sec.field();
    let a125 = sec.entry(1, 2, 5);
    if a125.deg() != 0 {
        return Ok(false);
    }
    for fp in points {
        let mats = sec.specialize_fiber(&fp.p);
        let entry = |i: usize, j: usize| -> F::E {
            (0..4).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&fp.x[k], &mats[k][i - 1][j - 1])))
        };
        let rows = [[entry(1, 3), entry(1, 4), entry(1, 5)], [entry(2, 3), entry(2, 4), entry(2, 5)]];
        for c1 in 0..3 {
            for c2 in c1 + 1..3 {
                let minor = f.sub(&f.mul(&rows[0][c1], &rows[1][c2]), &f.mul(&rows[0][c2], &rows[1][c1]));
                if !f.is_zero(&minor) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
