use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::region::{q_region, scrollar_polytope};
use super::vertices::vertices;
use crate::bundles::{codim_hef, hurwitz_dim, scrollar_tuples, sorted_tuples, theorem15_check, BundlePair};
use crate::error::{Error, Result};

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

/// 1 + 1/2 sum max(0, 1 - f_i - f_j - e_k) - 1/2 sum (f_j - f_i) - 1/2 sum (e_l - e_k).
pub fn objective(e: &[BigRational], f: &[BigRational]) -> BigRational {
    let one = BigRational::one();
    let mut deficit = BigRational::zero();
    let mut f_spread = BigRational::zero();
    for i in 0..5 {
        for j in i + 1..5 {
            f_spread += &f[j] - &f[i];
            for ek in e {
                let d = &one - &f[i] - &f[j] - ek;
                if d > BigRational::zero() {
                    deficit += d;
                }
            }
        }
    }
    let mut e_spread = BigRational::zero();
    for k in 0..4 {
        for l in k + 1..4 {
            e_spread += &e[l] - &e[k];
        }
    }
    one + half() * (deficit - f_spread - e_spread)
}

/// Limit density at a normalized scrollar vector: the maximum of the
/// objective over the fiber of each closed piece. The objective is convex
/// in f, so each maximum sits at a vertex.
pub fn rho_geo(e_bar: &[BigRational]) -> Result<BigRational> {
    if e_bar.len() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: e_bar.len() });
    }
    if e_bar.windows(2).any(|w| w[0] > w[1]) || e_bar.iter().sum::<BigRational>() != BigRational::one() {
        return Err(Error::Precondition("e must be sorted with sum 1".into()));
    }
    if !scrollar_polytope().contains(e_bar)? {
        return Ok(BigRational::zero());
    }
    let mut best: Option<BigRational> = None;
    for (_, piece) in q_region().pieces {
        let fiber = piece.closure().fiber(e_bar)?;
        for v in vertices(&fiber)? {
            let val = objective(e_bar, &v);
            if best.as_ref().is_none_or(|b| val > *b) {
                best = Some(val);
            }
        }
    }
    best.ok_or_else(|| Error::Degenerate("no realizable f above a point of the scrollar polytope".into()))
}

/// Closed box lo <= e <= hi in normalized coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EBox {
    pub lo: [BigRational; 4],
    pub hi: [BigRational; 4],
}

impl EBox {
    pub fn point(x: &[BigRational; 4]) -> Self {
        EBox { lo: x.clone(), hi: x.clone() }
    }

    pub fn around(x: &[BigRational; 4], radius: &BigRational) -> Self {
        EBox { lo: x.clone().map(|c| c - radius), hi: x.clone().map(|c| c + radius) }
    }

    pub fn contains(&self, e: &[i64; 4], level: i64) -> bool {
        let l = BigInt::from(level);
        (0..4).all(|c| {
            let x = BigRational::new(BigInt::from(e[c]), l.clone());
            self.lo[c] <= x && x <= self.hi[c]
        })
    }
}

/// Largest dim H_{E,F} / (2g + 8) over realizable pairs of genus g with
/// e / (g + 4) in the window; -1 / (2g + 8) if there are none.
pub fn pi_geo_finite(window: &EBox, g: i64) -> BigRational {
    let level = g + 4;
    let hd = hurwitz_dim(g);
    let mut best = -1;
    for e in scrollar_tuples(g) {
        if !window.contains(&e, level) {
            continue;
        }
        // the linear conditions force e1 <= f1 and f5 <= 2 e3
        for f in sorted_tuples(5, 2 * level, e[0], 2 * e[2]) {
            let bp = BundlePair { g, e, f: [f[0], f[1], f[2], f[3], f[4]] };
            if !theorem15_check(&bp).is_satisfied() {
                continue;
            }
            let dim = hd - codim_hef(&bp).expect("checked realizable");
            best = best.max(dim);
        }
    }
    BigRational::new(BigInt::from(best), BigInt::from(hd))
}
