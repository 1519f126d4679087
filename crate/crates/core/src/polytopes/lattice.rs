use std::collections::BTreeSet;

use serde::Serialize;

use super::region::{q_region, scaled_point, scrollar_cone, ConditionalRegion, Piece};
use crate::bundles::sorted_tuples;
use crate::error::{Error, Result};

fn to_rat(v: &[i64]) -> Vec<num_rational::BigRational> {
    v.iter().map(|&x| num_rational::BigRational::from_integer(x.into())).collect()
}

fn in_cone(e: &[i64; 4]) -> bool {
    scrollar_cone().contains(&to_rat(e)).expect("dimension 4")
}

/// Integer points of the scrollar cone with coordinate sum `level`.
/// Sortedness and e2 <= 2 e1 force e1 >= 0, so [0, level] is a complete box.
pub fn p_points(level: i64) -> Vec<[i64; 4]> {
    if level < 1 {
        return Vec::new();
    }
    sorted_tuples(4, level, 0, level)
        .into_iter()
        .map(|v| [v[0], v[1], v[2], v[3]])
        .filter(in_cone)
        .collect()
}

/// Integer pairs (e, f) with sums (level, 2 level) whose scaled point lies
/// in `region`, with the pieces containing it. The linear conditions give
/// 0 <= e1 <= f1 and f5 <= 2 e3, which bounds the search.
pub fn q_points(region: &ConditionalRegion, level: i64) -> Vec<([i64; 4], [i64; 5], Vec<Piece>)> {
    let mut out = Vec::new();
    if level < 1 {
        return out;
    }
    for e in sorted_tuples(4, level, 0, level) {
        let e = [e[0], e[1], e[2], e[3]];
        for f in sorted_tuples(5, 2 * level, e[0], 2 * e[2]) {
            let f = [f[0], f[1], f[2], f[3], f[4]];
            let x = scaled_point(&e, &f).expect("positive level");
            let pieces = region.contains(&x).expect("dimension 9");
            if !pieces.is_empty() {
                out.push((e, f, pieces));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCheck {
    pub g: i64,
    pub p_points: usize,
    pub q_points: usize,
    pub projection_size: usize,
    /// Points of P with no lift to Q.
    pub missing: Vec<[i64; 4]>,
    /// Projections of Q points outside P.
    pub extra: Vec<[i64; 4]>,
}

impl LevelCheck {
    pub fn ok(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Level-by-level comparison of the e-projection of Q with P.
pub fn projection_report(region: &ConditionalRegion, g_max: i64) -> Vec<LevelCheck> {
    (0..=g_max)
        .map(|g| {
            let level = g + 4;
            let p: BTreeSet<[i64; 4]> = p_points(level).into_iter().collect();
            let q = q_points(region, level);
            let proj: BTreeSet<[i64; 4]> = q.iter().map(|(e, _, _)| *e).collect();
            LevelCheck {
                g,
                p_points: p.len(),
                q_points: q.len(),
                projection_size: proj.len(),
                missing: p.difference(&proj).copied().collect(),
                extra: proj.difference(&p).copied().collect(),
            }
        })
        .collect()
}

pub fn verify_projection(g_max: i64) -> bool {
    projection_report(&q_region(), g_max).iter().all(LevelCheck::ok)
}

/// Irreducible elements of the monoid of integer points of the cone with
/// all coordinates at most `bound`.
pub fn irreducible_in_box(bound: i64) -> Vec<[i64; 4]> {
    let elems: Vec<[i64; 4]> = (1..=4 * bound).flat_map(p_points).filter(|e| e[3] <= bound).collect();
    let set: BTreeSet<[i64; 4]> = elems.iter().copied().collect();
    elems
        .iter()
        .filter(|z| {
            !elems.iter().any(|x| {
                let y = [z[0] - x[0], z[1] - x[1], z[2] - x[2], z[3] - x[3]];
                y != [0; 4] && set.contains(&y)
            })
        })
        .copied()
        .collect()
}

/// The irreducible elements of the scrollar monoid. Searched with
/// coordinates at most 4 and confirmed stable when the box is doubled.
pub fn irreducible_generators() -> Vec<[i64; 4]> {
    let small = irreducible_in_box(4);
    debug_assert_eq!(small, irreducible_in_box(8));
    small
}

/// The generators paired with f-vectors lifting them into Q'.
pub const GENERATOR_LIFTS: [([i64; 4], [i64; 5]); 7] = [
    ([1, 1, 1, 1], [1, 1, 2, 2, 2]),
    ([1, 1, 1, 2], [2, 2, 2, 2, 2]),
    ([1, 1, 2, 2], [2, 2, 2, 3, 3]),
    ([1, 2, 2, 2], [2, 3, 3, 3, 3]),
    ([1, 2, 2, 3], [2, 3, 3, 4, 4]),
    ([1, 2, 3, 3], [2, 3, 4, 4, 5]),
    ([1, 2, 3, 4], [2, 3, 4, 5, 6]),
];

/// Multiplicities of the generators summing to e, preferring as many
/// copies of earlier generators as possible. Every generator has e1 = 1,
/// so exactly e1 generators are used.
pub fn decompose(e: &[i64; 4]) -> Result<[i64; 7]> {
    fn search(rest: [i64; 4], from: usize, mult: &mut [i64; 7]) -> bool {
        if rest == [0; 4] {
            return true;
        }
        if from == 7 || rest[0] <= 0 {
            return false;
        }
        let g = GENERATOR_LIFTS[from].0;
        let max = (0..4).map(|c| rest[c] / g[c]).min().unwrap();
        for m in (0..=max).rev() {
            let r = [rest[0] - m * g[0], rest[1] - m * g[1], rest[2] - m * g[2], rest[3] - m * g[3]];
            if r.iter().any(|&x| x < 0) {
                continue;
            }
            mult[from] = m;
            if search(r, from + 1, mult) {
                return true;
            }
        }
        mult[from] = 0;
        false
    }
    if !in_cone(e) || e[0] < 1 {
        return Err(Error::NotInMonoid(format!("{e:?} is not a nonzero point of the scrollar cone")));
    }
    let mut mult = [0; 7];
    if search(*e, 0, &mut mult) {
        Ok(mult)
    } else {
        Err(Error::NotInMonoid(format!("{e:?} is not a sum of generators")))
    }
}

/// An f with (e, f) in Q', built by summing the generator lifts.
pub fn lift_scrollar(e: &[i64; 4]) -> Result<[i64; 5]> {
    let mult = decompose(e)?;
    let mut f = [0; 5];
    for (m, (_, lf)) in mult.iter().zip(GENERATOR_LIFTS) {
        for c in 0..5 {
            f[c] += m * lf[c];
        }
    }
    Ok(f)
}
