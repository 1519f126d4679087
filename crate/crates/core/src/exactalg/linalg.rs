//! Dense exact linear algebra over a `FieldOps` context. Matrices are
//! row-major `Vec<Vec<E>>`.

use crate::exactalg::ops::FieldOps;

pub type Mat<E> = Vec<Vec<E>>;

pub fn zeros<F: FieldOps>(f: &F, rows: usize, cols: usize) -> Mat<F::E> {
    vec![vec![f.zero(); cols]; rows]
}

pub fn identity<F: FieldOps>(f: &F, n: usize) -> Mat<F::E> {
    let mut m = zeros(f, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: FieldOps>(f: &F, m: &mut Mat<F::E>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                if !f.is_zero(pv) {
                    *x = f.sub(x, &f.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldOps>(f: &F, m: &Mat<F::E>) -> usize {
    let mut c = m.clone();
    rref(f, &mut c).len()
}

/// Basis of the right null space {x : m x = 0}.
pub fn kernel<F: FieldOps>(f: &F, m: &Mat<F::E>, cols: usize) -> Vec<Vec<F::E>> {
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&r[row][fc]);
            }
            v
        })
        .collect()
}

pub fn mul<F: FieldOps>(f: &F, a: &Mat<F::E>, b: &Mat<F::E>) -> Mat<F::E> {
    let n = a.len();
    let inner = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = zeros(f, n, m);
    for i in 0..n {
        for k in 0..inner {
            if f.is_zero(&a[i][k]) {
                continue;
            }
            for j in 0..m {
                out[i][j] = f.add(&out[i][j], &f.mul(&a[i][k], &b[k][j]));
            }
        }
    }
    out
}

pub fn transpose<E: Clone>(a: &Mat<E>) -> Mat<E> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn inverse<F: FieldOps>(f: &F, a: &Mat<F::E>) -> Option<Mat<F::E>> {
    let n = a.len();
    let mut aug: Mat<F::E> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det<F: FieldOps>(f: &F, a: &Mat<F::E>) -> F::E {
    let n = a.len();
    let mut m = a.clone();
    let mut acc = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(&m[i][c])) else {
            return f.zero();
        };
        if p != c {
            m.swap(p, c);
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &m[c][c]);
        let inv = f.inv(&m[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if f.is_zero(&m[i][c]) {
                continue;
            }
            let factor = f.mul(&m[i][c], &inv);
            for j in c..n {
                let t = f.mul(&factor, &m[c][j]);
                m[i][j] = f.sub(&m[i][j], &t);
            }
        }
    }
    acc
}

/// Characteristic polynomial det(x I - a), monic, low degree first, via
/// reduction to upper Hessenberg form (valid in every characteristic).
pub fn charpoly<F: FieldOps>(f: &F, a: &Mat<F::E>) -> Vec<F::E> {
    let n = a.len();
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        if f.is_zero(&h[j + 1][j]) {
            if let Some(i) = (j + 2..n).find(|&i| !f.is_zero(&h[i][j])) {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            } else {
                continue;
            }
        }
        let inv = f.inv(&h[j + 1][j]).expect("nonzero pivot");
        for i in j + 2..n {
            if f.is_zero(&h[i][j]) {
                continue;
            }
            let u = f.mul(&h[i][j], &inv);
            for c in 0..n {
                let t = f.mul(&u, &h[j + 1][c]);
                h[i][c] = f.sub(&h[i][c], &t);
            }
            for row in h.iter_mut() {
                let t = f.mul(&u, &row[i]);
                row[j + 1] = f.add(&row[j + 1], &t);
            }
        }
    }
    // p[k] = char poly of the leading k x k block
    let mut p: Vec<Vec<F::E>> = vec![vec![f.one()]];
    for k in 0..n {
        // (x - h_kk) p_k
        let mut next = vec![f.zero(); k + 2];
        for (i, c) in p[k].iter().enumerate() {
            next[i + 1] = f.add(&next[i + 1], c);
            next[i] = f.sub(&next[i], &f.mul(c, &h[k][k]));
        }
        let mut prod = f.one();
        for i in (0..k).rev() {
            prod = f.mul(&prod, &h[i + 1][i]);
            let coef = f.mul(&h[i][k], &prod);
            if f.is_zero(&coef) {
                continue;
            }
            for (d, c) in p[i].iter().enumerate() {
                next[d] = f.sub(&next[d], &f.mul(&coef, c));
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

pub fn mat_vec<F: FieldOps>(f: &F, a: &Mat<F::E>, v: &[F::E]) -> Vec<F::E> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
        })
        .collect()
}
