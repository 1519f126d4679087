use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Eq,
    Lt,
}

/// coeffs . x (rel) rhs
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn lhs(&self, x: &[BigRational]) -> BigRational {
        self.coeffs.iter().zip(x).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let l = self.lhs(x);
        match self.rel {
            Relation::Le => l <= self.rhs,
            Relation::Eq => l == self.rhs,
            Relation::Lt => l < self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRegion {
    pub dim: usize,
    pub constraints: Vec<Constraint>,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LinearRegion {
    pub fn new(dim: usize) -> Self {
        LinearRegion { dim, constraints: Vec::new() }
    }

    pub fn push(&mut self, coeffs: Vec<BigRational>, rel: Relation, rhs: BigRational) -> Result<()> {
        if coeffs.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: coeffs.len() });
        }
        self.constraints.push(Constraint { coeffs, rel, rhs });
        Ok(())
    }

    /// Integer-coefficient shorthand used by the fixed regions below.
    fn push_int(&mut self, coeffs: &[i64], rel: Relation, rhs: i64) {
        self.push(coeffs.iter().map(|&c| int(c)).collect(), rel, int(rhs)).expect("fixed dimension");
    }

    pub fn contains(&self, x: &[BigRational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(self.constraints.iter().all(|c| c.holds(x)))
    }

    /// Strict inequalities replaced by their closures.
    pub fn closure(&self) -> Self {
        let constraints = self
            .constraints
            .iter()
            .map(|c| Constraint { rel: if c.rel == Relation::Lt { Relation::Le } else { c.rel }, ..c.clone() })
            .collect();
        LinearRegion { dim: self.dim, constraints }
    }

    /// The slice where the leading coordinates equal `head`, as a region
    /// in the remaining coordinates.
    pub fn fiber(&self, head: &[BigRational]) -> Result<Self> {
        if head.len() > self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: head.len() });
        }
        let n = head.len();
        let constraints = self
            .constraints
            .iter()
            .map(|c| Constraint {
                coeffs: c.coeffs[n..].to_vec(),
                rel: c.rel,
                rhs: &c.rhs - c.coeffs[..n].iter().zip(head).fold(BigRational::zero(), |acc, (a, b)| acc + a * b),
            })
            .collect();
        Ok(LinearRegion { dim: self.dim - n, constraints })
    }
}

/// Pieces of the region of realizable normalized pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Piece {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl Piece {
    pub const ALL: [Piece; 4] = [Piece::Q1, Piece::Q2, Piece::Q3, Piece::Q4];
}

/// A union of linear regions in R^9 (coordinates e1..e4, f1..f5).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalRegion {
    pub pieces: Vec<(Piece, LinearRegion)>,
}

impl ConditionalRegion {
    pub fn contains(&self, x: &[BigRational]) -> Result<Vec<Piece>> {
        let mut out = Vec::new();
        for (p, r) in &self.pieces {
            if r.contains(x)? {
                out.push(*p);
            }
        }
        Ok(out)
    }

    pub fn without(&self, piece: Piece) -> Self {
        ConditionalRegion { pieces: self.pieces.iter().filter(|(p, _)| *p != piece).cloned().collect() }
    }
}

fn sorted_rows(dim: usize, offset: usize, n: usize, r: &mut LinearRegion) {
    for a in 0..n - 1 {
        let mut c = vec![0; dim];
        c[offset + a] = 1;
        c[offset + a + 1] = -1;
        r.push_int(&c, Relation::Le, 0);
    }
}

/// e_{i+j} <= e_i + e_j and sortedness, without normalization.
pub fn scrollar_cone() -> LinearRegion {
    let mut r = LinearRegion::new(4);
    sorted_rows(4, 0, 4, &mut r);
    for i in 1..=4 {
        for j in i..=4 {
            if i + j <= 4 {
                let mut c = vec![0; 4];
                c[i + j - 1] += 1;
                c[i - 1] -= 1;
                c[j - 1] -= 1;
                r.push_int(&c, Relation::Le, 0);
            }
        }
    }
    r
}

/// The scrollar cone cut by e1 + ... + e4 = 1.
pub fn scrollar_polytope() -> LinearRegion {
    let mut r = scrollar_cone();
    r.push_int(&[1, 1, 1, 1], Relation::Eq, 1);
    r
}

/// Coefficients of d_ij^(k) = f_i + f_j + e_k - 1 on R^9, and its constant.
pub fn d_bar(i: usize, j: usize, k: usize) -> (Vec<i64>, i64) {
    let mut c = vec![0; 9];
    c[k - 1] += 1;
    c[3 + i] += 1;
    c[3 + j] += 1;
    (c, -1)
}

fn neg(c: &[i64]) -> Vec<i64> {
    c.iter().map(|x| -x).collect()
}

const LINEAR: [(usize, usize, usize); 7] =
    [(2, 5, 1), (3, 4, 1), (1, 5, 2), (2, 4, 2), (1, 4, 3), (2, 3, 3), (1, 3, 4)];
const FIN: [(usize, usize, usize); 3] = [(1, 5, 1), (2, 4, 1), (1, 2, 4)];

/// Sortedness, the two sums and the seven linear conditions.
fn base_region() -> LinearRegion {
    let mut r = LinearRegion::new(9);
    sorted_rows(9, 0, 4, &mut r);
    sorted_rows(9, 4, 5, &mut r);
    r.push_int(&[1, 1, 1, 1, 0, 0, 0, 0, 0], Relation::Eq, 1);
    r.push_int(&[0, 0, 0, 0, 1, 1, 1, 1, 1], Relation::Eq, 2);
    for (i, j, k) in LINEAR {
        // f_i + f_j + e_k >= 1
        let (c, _) = d_bar(i, j, k);
        r.push_int(&neg(&c), Relation::Le, -1);
    }
    r
}

/// The four pieces; Q4 is the fin, carrying d_25^(1) = 0 and the three
/// strict negativity constraints.
pub fn q_region() -> ConditionalRegion {
    let mut pieces = Vec::new();
    for (piece, t) in [Piece::Q1, Piece::Q2, Piece::Q3].into_iter().zip(FIN) {
        let mut r = base_region();
        let (c, _) = d_bar(t.0, t.1, t.2);
        r.push_int(&neg(&c), Relation::Le, -1);
        pieces.push((piece, r));
    }
    let mut fin = base_region();
    for (i, j, k) in FIN {
        let (c, _) = d_bar(i, j, k);
        fin.push_int(&c, Relation::Lt, 1);
    }
    let (c, _) = d_bar(2, 5, 1);
    fin.push_int(&c, Relation::Eq, 1);
    pieces.push((Piece::Q4, fin));
    ConditionalRegion { pieces }
}

/// (e, f) / (sum of e) as a point of R^9.
pub fn scaled_point(e: &[i64; 4], f: &[i64; 5]) -> Result<Vec<BigRational>> {
    let l: i64 = e.iter().sum();
    if l <= 0 {
        return Err(Error::Precondition(format!("sum of e={e:?} must be positive")));
    }
    let den = BigInt::from(l);
    Ok(e.iter().chain(f.iter()).map(|&x| BigRational::new(BigInt::from(x), den.clone())).collect())
}

/// Membership of the integer pair in Q intersected with f2 + f5 + e1 = sum e.
pub fn in_q_prime(e: &[i64; 4], f: &[i64; 5]) -> Result<bool> {
    let l: i64 = e.iter().sum();
    let x = scaled_point(e, f)?;
    Ok(!q_region().contains(&x)?.is_empty() && f[1] + f[4] + e[0] == l)
}

