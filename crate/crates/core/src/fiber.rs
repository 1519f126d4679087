//! The fiber of the Pfaffian locus over a single base point: five
//! quadrics in four variables, solved through the multiplication
//! matrices of the length-5 coordinate ring.

use crate::exactalg::linalg::{self, Mat};
use crate::exactalg::upoly;
use crate::exactalg::FieldOps;
use crate::sections::QUAD_MONOMIALS;

/// Cubic monomials x_a x_b x_c with a <= b <= c.
pub const CUBIC_MONOMIALS: [(usize, usize, usize); 20] = {
    let mut out = [(0, 0, 0); 20];
    let mut n = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = a;
        while b < 4 {
            let mut c = b;
            while c < 4 {
                out[n] = (a, b, c);
                n += 1;
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

pub fn cubic_index(a: usize, b: usize, c: usize) -> usize {
    let mut v = [a, b, c];
    v.sort_unstable();
    CUBIC_MONOMIALS.iter().position(|&m| m == (v[0], v[1], v[2])).unwrap()
}

/// Why a fiber could not be treated as a length-5 scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irregularity {
    /// The five quadrics span less than five dimensions.
    QuadricRank(usize),
    /// Their degree-3 multiples span less than fifteen dimensions.
    CubicRank(usize),
    /// No sampled linear form was a nonzerodivisor.
    NoUnit,
    /// The multiplication operators do not commute.
    NonCommuting,
}

/// Coordinate ring of a regular fiber: R_2 with the operators x_k / l.
#[derive(Clone, Debug)]
pub struct FiberAlgebra<E> {
    pub mult: [Mat<E>; 4],
}

/// Points of a regular fiber rational over the working field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoints<E> {
    /// Normalized coordinates (last nonzero entry 1) and local length.
    pub rational: Vec<(Vec<E>, usize)>,
    /// Total length of the points not rational over the field.
    pub irrational_length: usize,
    /// Whether every non-rational point has length one.
    pub irrational_reduced: bool,
}

impl<E> FiberPoints<E> {
    pub fn total_length(&self) -> usize {
        self.rational.iter().map(|(_, m)| m).sum::<usize>() + self.irrational_length
    }
}

/// Sets the last nonzero coordinate to one.
pub fn normalize_projective<F: FieldOps>(f: &F, x: &[F::E]) -> Vec<F::E> {
    let Some(k) = x.iter().rposition(|c| !f.is_zero(c)) else {
        return x.to_vec();
    };
    let inv = f.inv(&x[k]).unwrap();
    x.iter().map(|c| f.mul(c, &inv)).collect()
}

pub fn eval_quadric<F: FieldOps>(f: &F, q: &[F::E], x: &[F::E]) -> F::E {
    QUAD_MONOMIALS.iter().zip(q).fold(f.zero(), |acc, (&(a, b), c)| {
        if f.is_zero(c) {
            acc
        } else {
            f.add(&acc, &f.mul(c, &f.mul(&x[a], &x[b])))
        }
    })
}

/// Multiplication by x_k as maps R_2 -> R_3 in standard monomial bases.
fn degree_two_maps<F: FieldOps>(f: &F, quads: &[Vec<F::E>]) -> Result<Vec<Mat<F::E>>, Irregularity> {
    let mut q2: Mat<F::E> = quads.to_vec();
    let piv2 = linalg::rref(f, &mut q2);
    if piv2.len() != 5 {
        return Err(Irregularity::QuadricRank(piv2.len()));
    }
    q2.truncate(5);
    let mut rows3: Mat<F::E> = Vec::with_capacity(20);
    for q in &q2 {
        for k in 0..4 {
            let mut row = vec![f.zero(); 20];
            for (m, c) in q.iter().enumerate() {
                if !f.is_zero(c) {
                    let (a, b) = QUAD_MONOMIALS[m];
                    row[cubic_index(a, b, k)] = c.clone();
                }
            }
            rows3.push(row);
        }
    }
    let piv3 = linalg::rref(f, &mut rows3);
    if piv3.len() != 15 {
        return Err(Irregularity::CubicRank(piv3.len()));
    }
    let basis2: Vec<usize> = (0..10).filter(|m| !piv2.contains(m)).collect();
    let basis3: Vec<usize> = (0..20).filter(|m| !piv3.contains(m)).collect();
    // normal form of a cubic monomial in the basis3 coordinates
    let nf3 = |m: usize| -> Vec<F::E> {
        if let Some(pos) = basis3.iter().position(|&b| b == m) {
            let mut v = vec![f.zero(); 5];
            v[pos] = f.one();
            v
        } else {
            let r = piv3.iter().position(|&p| p == m).unwrap();
            basis3.iter().map(|&b| f.neg(&rows3[r][b])).collect()
        }
    };
    let x: Vec<Mat<F::E>> = (0..4)
        .map(|k| {
            let cols: Vec<Vec<F::E>> = basis2
                .iter()
                .map(|&m| {
                    let (a, b) = QUAD_MONOMIALS[m];
                    nf3(cubic_index(a, b, k))
                })
                .collect();
            linalg::transpose(&cols)
        })
        .collect();
    Ok(x)
}

/// Builds the fiber algebra of the quadrics `quads` (five rows of ten
/// coefficients). `sample` supplies random scalars for the auxiliary
/// linear form l.
pub fn fiber_algebra<F: FieldOps>(
    f: &F,
    quads: &[Vec<F::E>],
    sample: &mut impl FnMut() -> F::E,
) -> Result<FiberAlgebra<F::E>, Irregularity> {
    let x = degree_two_maps(f, quads)?;
    for _ in 0..30 {
        let l: Vec<F::E> = (0..4).map(|_| sample()).collect();
        if let Some(alg) = with_unit(f, &x, &l)? {
            return Ok(alg);
        }
    }
    Err(Irregularity::NoUnit)
}

/// Like `fiber_algebra` with a prescribed l; Ok(None) when l is a zero
/// divisor on the fiber.
pub fn fiber_algebra_with_unit<F: FieldOps>(
    f: &F,
    quads: &[Vec<F::E>],
    l: &[F::E],
) -> Result<Option<FiberAlgebra<F::E>>, Irregularity> {
    let x = degree_two_maps(f, quads)?;
    with_unit(f, &x, l)
}

fn with_unit<F: FieldOps>(f: &F, x: &[Mat<F::E>], l: &[F::E]) -> Result<Option<FiberAlgebra<F::E>>, Irregularity> {
    let mut lm = linalg::zeros(f, 5, 5);
    for k in 0..4 {
        for i in 0..5 {
            for j in 0..5 {
                lm[i][j] = f.add(&lm[i][j], &f.mul(&l[k], &x[k][i][j]));
            }
        }
    }
    let Some(linv) = linalg::inverse(f, &lm) else {
        return Ok(None);
    };
    let mult: [Mat<F::E>; 4] = std::array::from_fn(|k| linalg::mul(f, &linv, &x[k]));
    for a in 0..4 {
        for b in a + 1..4 {
            if linalg::mul(f, &mult[a], &mult[b]) != linalg::mul(f, &mult[b], &mult[a]) {
                return Err(Irregularity::NonCommuting);
            }
        }
    }
    Ok(Some(FiberAlgebra { mult }))
}


impl<E: Clone + PartialEq + Eq + Ord + std::fmt::Debug> FiberAlgebra<E> {
    /// Operator of the linear combination sum c_k x_k / l.
    pub fn combination<F: FieldOps<E = E>>(&self, f: &F, c: &[E]) -> Mat<E> {
        let mut m = linalg::zeros(f, 5, 5);
        for (k, ck) in c.iter().enumerate() {
            if f.is_zero(ck) {
                continue;
            }
            for i in 0..5 {
                for j in 0..5 {
                    m[i][j] = f.add(&m[i][j], &f.mul(ck, &self.mult[k][i][j]));
                }
            }
        }
        m
    }

    /// Monic characteristic polynomial of (sum c_k x_k) / l.
    pub fn charpoly<F: FieldOps<E = E>>(&self, f: &F, c: &[E]) -> Vec<E> {
        linalg::charpoly(f, &self.combination(f, c))
    }

    /// Splits the algebra along a generic combination and reads off the
    /// rational points. Returns None if `sample` never produced a
    /// combination separating the rational points.
    pub fn points<F: FieldOps<E = E>>(&self, f: &F, sample: &mut impl FnMut() -> E) -> Option<FiberPoints<E>> {
        let mut fallback = None;
        for _ in 0..12 {
            let lam: Vec<E> = (0..4).map(|_| sample()).collect();
            let m = self.combination(f, &lam);
            let chi = linalg::charpoly(f, &m);
            let mut rest = chi.clone();
            let mut rational = Vec::new();
            let mut separated = true;
            for c in f.roots(&chi) {
                let mult = upoly::root_multiplicity(f, &chi, &c);
                for _ in 0..mult {
                    rest = upoly::divrem(f, &rest, &[f.neg(&c), f.one()]).0;
                }
                match self.joint_eigenvalue(f, &m, &c, mult) {
                    Some(x) => rational.push((normalize_projective(f, &x), mult)),
                    None => {
                        separated = false;
                        break;
                    }
                }
            }
            if !separated {
                continue;
            }
            let irrational_length = rest.len() - 1;
            let reduced = irrational_length == 0
                || upoly::degree::<F>(&upoly::gcd(f, &rest, &upoly::derivative(f, &rest))) == Some(0);
            rational.sort();
            let pts = FiberPoints { rational, irrational_length, irrational_reduced: reduced };
            if reduced {
                return Some(pts);
            }
            // a repeated irrational eigenvalue may be a collision of the
            // combination; keep trying before accepting it
            fallback = Some(pts);
        }
        fallback
    }

    /// Values of x_k / l on the generalized eigenspace of `m` for `c`,
    /// provided each x_k / l has a single eigenvalue there.
    fn joint_eigenvalue<F: FieldOps<E = E>>(&self, f: &F, m: &Mat<E>, c: &E, mult: usize) -> Option<Vec<E>> {
        let mut shifted = m.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = f.sub(&row[i], c);
        }
        let mut power = linalg::identity(f, 5);
        for _ in 0..mult {
            power = linalg::mul(f, &power, &shifted);
        }
        let ker = linalg::kernel(f, &power, 5);
        if ker.len() != mult {
            return None;
        }
        let w = linalg::transpose(&ker);
        (0..4)
            .map(|k| {
                let image = linalg::mul(f, &self.mult[k], &w);
                let r = restrict(f, &w, &image)?;
                let chi = linalg::charpoly(f, &r);
                let roots = f.roots(&chi);
                match roots.as_slice() {
                    [v] if upoly::root_multiplicity(f, &chi, v) == mult => Some(v.clone()),
                    _ => None,
                }
            })
            .collect()
    }
}

/// Solves w r = image for r, w having independent columns.
fn restrict<F: FieldOps>(f: &F, w: &Mat<F::E>, image: &Mat<F::E>) -> Option<Mat<F::E>> {
    let d = w[0].len();
    let mut aug: Mat<F::E> = w
        .iter()
        .zip(image)
        .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
        .collect();
    let piv = linalg::rref(f, &mut aug);
    if piv.len() < d || piv[d - 1] != d - 1 || piv.len() > d {
        return None;
    }
    Some(aug[..d].iter().map(|row| row[d..].to_vec()).collect())
}
