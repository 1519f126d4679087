//! Splitting types of the Tschirnhausen bundle E = O(e1) + ... + O(e4) and
//! the syzygy bundle F = O(f1) + ... + O(f5), the degree matrix, and the
//! realizability tests built on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The seven (i, j, k) with i < j and i + j + k = 8.
pub const LINEAR_TRIPLES: [(usize, usize, usize); 7] =
    [(2, 5, 1), (3, 4, 1), (1, 5, 2), (2, 4, 2), (1, 4, 3), (2, 3, 3), (1, 3, 4)];

/// Index pairs i < j of {1..5} in lexicographic order.
pub const PAIRS: [(usize, usize); 10] =
    [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct BundlePair {
    pub g: i64,
    pub e: [i64; 4],
    pub f: [i64; 5],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    g: i64,
    e: [i64; 4],
    f: [i64; 5],
}

impl TryFrom<RawPair> for BundlePair {
    type Error = Error;
    fn try_from(r: RawPair) -> Result<Self> {
        BundlePair::new(r.g, r.e, r.f)
    }
}

impl BundlePair {
    /// A pair satisfying every convention: g >= 0, 1 <= e1, both tuples
    /// sorted, sum e = g + 4 and sum f = 2(g + 4).
    pub fn new(g: i64, e: [i64; 4], f: [i64; 5]) -> Result<Self> {
        let bp = Self::relaxed(g, e, f)?;
        if g < 0 {
            return Err(Error::InvalidBundle(format!("genus {g} is negative")));
        }
        if e[0] < 1 {
            return Err(Error::InvalidBundle(format!("e1 = {} must be at least 1", e[0])));
        }
        Ok(bp)
    }

    /// Only sortedness and the degree sums are enforced. Partial
    /// normalization can leave the positive range, and its output is
    /// reported through this constructor.
    pub fn relaxed(g: i64, e: [i64; 4], f: [i64; 5]) -> Result<Self> {
        if e.iter().chain(&f).chain([&g]).any(|x| x.unsigned_abs() > 1 << 40) {
            return Err(Error::InvalidBundle("splitting degrees out of range".into()));
        }
        if e.windows(2).any(|w| w[0] > w[1]) || f.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidBundle(format!("e={e:?}, f={f:?} must be sorted")));
        }
        if e.iter().sum::<i64>() != g + 4 {
            return Err(Error::InvalidBundle(format!("sum of e={e:?} is not g+4 = {}", g + 4)));
        }
        if f.iter().sum::<i64>() != 2 * (g + 4) {
            return Err(Error::InvalidBundle(format!(
                "sum of f={f:?} is not 2(g+4) = {}",
                2 * (g + 4)
            )));
        }
        Ok(BundlePair { g, e, f })
    }

    /// True when the pair obeys the conventions of `new`.
    pub fn is_standard(&self) -> bool {
        self.g >= 0 && self.e[0] >= 1
    }

    pub fn level(&self) -> i64 {
        self.g + 4
    }

    /// d_ij^(k) = f_i + f_j + e_k - (g + 4), indices 1-based, symmetric in i, j.
    pub fn d(&self, i: usize, j: usize, k: usize) -> i64 {
        self.f[i - 1] + self.f[j - 1] + self.e[k - 1] - self.level()
    }

    pub fn degree_matrix(&self) -> DegreeMatrix {
        let mut d = [[[0i64; 4]; 5]; 5];
        for i in 1..=5 {
            for j in 1..=5 {
                for k in 1..=4 {
                    d[i - 1][j - 1][k - 1] = self.d(i, j, k);
                }
            }
        }
        DegreeMatrix { d }
    }

    /// The three degrees whose simultaneous negativity switches on the
    /// extra condition of the realizability theorem.
    pub fn fin_active(&self) -> bool {
        self.d(1, 5, 1) < 0 && self.d(2, 4, 1) < 0 && self.d(1, 2, 4) < 0
    }
}

/// All d_ij^(k); the diagonal i = j is stored but never used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeMatrix {
    d: [[[i64; 4]; 5]; 5],
}

impl DegreeMatrix {
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.d[i - 1][j - 1][k - 1]
    }

    /// The 40 values with i < j, ordered by (k, i, j).
    pub fn entries(&self) -> Vec<((usize, usize, usize), i64)> {
        let mut out = Vec::with_capacity(40);
        for k in 1..=4 {
            for &(i, j) in &PAIRS {
                out.push(((i, j, k), self.get(i, j, k)));
            }
        }
        out
    }
}

pub fn degree_matrix(bp: &BundlePair) -> DegreeMatrix {
    bp.degree_matrix()
}

/// (h0, h1) of the direct sum of O(n) over the given twists.
pub fn split_cohomology(twists: &[i64]) -> (i64, i64) {
    twists.iter().fold((0, 0), |(h0, h1), &n| (h0 + (n + 1).max(0), h1 + (-n - 1).max(0)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "violations")]
pub enum Theorem15Verdict {
    Satisfied,
    /// The triples (i, j, k) with i + j + k = 8 and d_ij^(k) < 0.
    FailsLinear(Vec<(usize, usize, usize)>),
    /// Linear conditions hold, the three fin degrees are negative, and
    /// d_25^(1) is nonzero.
    FailsFin,
}

impl Theorem15Verdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Theorem15Verdict::Satisfied)
    }
}

pub fn theorem15_check(bp: &BundlePair) -> Theorem15Verdict {
    let bad: Vec<_> = LINEAR_TRIPLES
        .iter()
        .copied()
        .filter(|&(i, j, k)| bp.d(i, j, k) < 0)
        .collect();
    if !bad.is_empty() {
        return Theorem15Verdict::FailsLinear(bad);
    }
    if bp.fin_active() && bp.d(2, 5, 1) != 0 {
        return Theorem15Verdict::FailsFin;
    }
    Theorem15Verdict::Satisfied
}

/// Whether e/(g+4) lies in the scrollar polytope: e_{k+l} <= e_k + e_l.
pub fn realizable_scrollar(e: &[i64; 4], g: i64) -> Result<bool> {
    if e.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition(format!("e={e:?} must be sorted")));
    }
    if e[0] < 1 {
        return Err(Error::Precondition(format!("e1 = {} must be at least 1", e[0])));
    }
    if e.iter().sum::<i64>() != g + 4 {
        return Err(Error::Precondition(format!("sum of e={e:?} is not g+4")));
    }
    Ok(subadditive(e))
}

pub(crate) fn subadditive(e: &[i64; 4]) -> bool {
    for k in 1..=4 {
        for l in k..=4 {
            if k + l <= 4 && e[k + l - 1] > e[k - 1] + e[l - 1] {
                return false;
            }
        }
    }
    true
}

fn e_diffs(bp: &BundlePair) -> Vec<i64> {
    let mut v = Vec::with_capacity(16);
    for a in bp.e {
        for b in bp.e {
            v.push(a - b);
        }
    }
    v
}

fn f_diffs(bp: &BundlePair) -> Vec<i64> {
    let mut v = Vec::with_capacity(25);
    for a in bp.f {
        for b in bp.f {
            v.push(a - b);
        }
    }
    v
}

fn d_twists(bp: &BundlePair) -> Vec<i64> {
    bp.degree_matrix().entries().into_iter().map(|(_, d)| d).collect()
}

/// Dimension 2g + 8 of the space of degree-5 genus-g covers.
pub fn hurwitz_dim(g: i64) -> i64 {
    2 * g + 8
}

/// Codimension of the stratum with splitting types (e, f):
/// h1(End E) + h1(End F) - h1(wedge^2 F (x) E (x) det E^dual).
pub fn codim_hef(bp: &BundlePair) -> Result<i64> {
    if !theorem15_check(bp).is_satisfied() {
        return Err(Error::Precondition(format!(
            "pair g={}, e={:?}, f={:?} fails the realizability conditions",
            bp.g, bp.e, bp.f
        )));
    }
    Ok(codim_hef_unchecked(bp))
}

pub(crate) fn codim_hef_unchecked(bp: &BundlePair) -> i64 {
    let (_, he) = split_cohomology(&e_diffs(bp));
    let (_, hf) = split_cohomology(&f_diffs(bp));
    let (_, hd) = split_cohomology(&d_twists(bp));
    he + hf - hd
}

/// Parameter count h0(sections) - dim G, with dim G = h0(End E) + h0(End F) - 1.
pub fn dim_hef(bp: &BundlePair) -> i64 {
    let (hd, _) = split_cohomology(&d_twists(bp));
    let (he, _) = split_cohomology(&e_diffs(bp));
    let (hf, _) = split_cohomology(&f_diffs(bp));
    hd - he - hf + 1
}

/// Sorted tuples of `n` integers in [lo, hi] with the given sum.
pub fn sorted_tuples(n: usize, sum: i64, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fill_sorted(n, sum, lo, hi, &mut cur, &mut out);
    out
}

fn fill_sorted(n: usize, sum: i64, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if n == 0 {
        if sum == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let rest = n as i64 - 1;
    for x in lo..=hi {
        // remaining entries lie in [x, hi]
        if x + rest * x > sum {
            break;
        }
        if x + rest * hi < sum {
            continue;
        }
        cur.push(x);
        fill_sorted(n - 1, sum - x, x, hi, cur, out);
        cur.pop();
    }
}

/// Every e with 1 <= e1 <= ... <= e4 and sum g + 4.
pub fn scrollar_tuples(g: i64) -> Vec<[i64; 4]> {
    let l = g + 4;
    sorted_tuples(4, l, 1, l).into_iter().map(|v| [v[0], v[1], v[2], v[3]]).collect()
}

/// Every standard pair of genus g whose f entries lie in [lo, hi].
pub fn pairs_in_box(g: i64, lo: i64, hi: i64) -> Vec<BundlePair> {
    let l = g + 4;
    let fs = sorted_tuples(5, 2 * l, lo, hi);
    let mut out = Vec::new();
    for e in scrollar_tuples(g) {
        for f in &fs {
            let f = [f[0], f[1], f[2], f[3], f[4]];
            out.push(BundlePair { g, e, f });
        }
    }
    out
}

/// Every pair of genus g satisfying the realizability conditions. The
/// conditions force 0 <= e1 <= f1 and f5 <= 2 e4, so [0, 2(g+4)] is a
/// complete search box for f.
pub fn admissible_pairs(g: i64) -> Vec<BundlePair> {
    pairs_in_box(g, 0, 2 * (g + 4))
        .into_iter()
        .filter(|bp| theorem15_check(bp).is_satisfied())
        .collect()
}
