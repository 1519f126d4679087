//! A minimal commutative-ring interface so that Pfaffians, determinants
//! and matrix products can be written once for scalars and for forms.

use crate::exactalg::form::BinaryForm;
use crate::exactalg::ops::FieldOps;

pub trait RingOps {
    type T: Clone;
    fn r_zero(&self) -> Self::T;
    fn r_one(&self) -> Self::T;
    fn r_add(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn r_sub(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn r_mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn r_neg(&self, a: &Self::T) -> Self::T;
    fn r_is_zero(&self, a: &Self::T) -> bool;
}

impl<F: FieldOps> RingOps for F {
    type T = F::E;
    fn r_zero(&self) -> F::E {
        self.zero()
    }
    fn r_one(&self) -> F::E {
        self.one()
    }
    fn r_add(&self, a: &F::E, b: &F::E) -> F::E {
        self.add(a, b)
    }
    fn r_sub(&self, a: &F::E, b: &F::E) -> F::E {
        self.sub(a, b)
    }
    fn r_mul(&self, a: &F::E, b: &F::E) -> F::E {
        self.mul(a, b)
    }
    fn r_neg(&self, a: &F::E) -> F::E {
        self.neg(a)
    }
    fn r_is_zero(&self, a: &F::E) -> bool {
        self.is_zero(a)
    }
}

/// Binary forms under the graded ring operations. Sums of nonzero forms
/// of different degrees are a programming error and panic; callers
/// validate degrees before combining.
#[derive(Clone, Debug)]
pub struct FormRing<'a, F: FieldOps>(pub &'a F);

impl<F: FieldOps> RingOps for FormRing<'_, F> {
    type T = BinaryForm<F::E>;
    fn r_zero(&self) -> Self::T {
        BinaryForm::zero()
    }
    fn r_one(&self) -> Self::T {
        BinaryForm::constant(self.0, self.0.one())
    }
    fn r_add(&self, a: &Self::T, b: &Self::T) -> Self::T {
        a.add(self.0, b).expect("homogeneous sum")
    }
    fn r_sub(&self, a: &Self::T, b: &Self::T) -> Self::T {
        a.sub(self.0, b).expect("homogeneous difference")
    }
    fn r_mul(&self, a: &Self::T, b: &Self::T) -> Self::T {
        a.mul(self.0, b)
    }
    fn r_neg(&self, a: &Self::T) -> Self::T {
        a.neg(self.0)
    }
    fn r_is_zero(&self, a: &Self::T) -> bool {
        a.is_zero()
    }
}

/// Square matrix determinant by cofactor expansion along the first row.
/// Only used for n <= 5, where this is cheap and needs no division.
pub fn det<R: RingOps>(r: &R, m: &[Vec<R::T>]) -> R::T {
    let n = m.len();
    if n == 0 {
        return r.r_one();
    }
    let cols: Vec<usize> = (0..n).collect();
    det_rec(r, m, 0, &cols)
}

fn det_rec<R: RingOps>(r: &R, m: &[Vec<R::T>], row: usize, cols: &[usize]) -> R::T {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = r.r_zero();
    for (idx, &c) in cols.iter().enumerate() {
        if r.r_is_zero(&m[row][c]) {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = r.r_mul(&m[row][c], &det_rec(r, m, row + 1, &rest));
        acc = if idx % 2 == 0 { r.r_add(&acc, &term) } else { r.r_sub(&acc, &term) };
    }
    acc
}

pub fn mat_mul<R: RingOps>(r: &R, a: &[Vec<R::T>], b: &[Vec<R::T>]) -> Vec<Vec<R::T>> {
    let n = a.len();
    let m = b.first().map_or(0, |row| row.len());
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = r.r_zero();
                    for k in 0..inner {
                        if r.r_is_zero(&a[i][k]) || r.r_is_zero(&b[k][j]) {
                            continue;
                        }
                        acc = r.r_add(&acc, &r.r_mul(&a[i][k], &b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Pfaffian of a 4x4 alternating matrix given by its upper entries.
pub fn pfaffian4<R: RingOps>(r: &R, a: impl Fn(usize, usize) -> R::T) -> R::T {
    let t1 = r.r_mul(&a(0, 1), &a(2, 3));
    let t2 = r.r_mul(&a(0, 2), &a(1, 3));
    let t3 = r.r_mul(&a(0, 3), &a(1, 2));
    r.r_add(&r.r_sub(&t1, &t2), &t3)
}
