//! Dimension counts for the loci of sections admitting a normal form:
//! maximal and accessory triples, codim G_IJK, the offset nu and the
//! exact codimension of U_IJK.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bundles::{theorem15_check, BundlePair, PAIRS};
use crate::error::{Error, Result};

/// (I, J, K) with 1 <= I < J <= 5 and 1 <= K <= 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Triple {
    pub fn new(i: usize, j: usize, k: usize) -> Result<Self> {
        if !(1 <= i && i < j && j <= 5 && (1..=4).contains(&k)) {
            return Err(Error::Precondition(format!("({i},{j},{k}) is not a triple")));
        }
        Ok(Triple { i, j, k })
    }

    pub fn all() -> impl Iterator<Item = Triple> {
        PAIRS.iter().flat_map(|&(i, j)| (1..=4).map(move |k| Triple { i, j, k }))
    }

    fn sum(self) -> i64 {
        (self.i + self.j + self.k) as i64
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

pub fn is_maximal(bp: &BundlePair, t: Triple) -> bool {
    (t.k + 1..=4).all(|k| bp.e[k - 1] > bp.e[t.k - 1])
        && (t.j + 1..=5).all(|j| bp.f[j - 1] > bp.f[t.j - 1])
        && (t.i + 1..=5).filter(|&i| i != t.j).all(|i| bp.f[i - 1] > bp.f[t.i - 1])
}

pub fn maximal_triples(bp: &BundlePair) -> Vec<Triple> {
    Triple::all().filter(|&t| is_maximal(bp, t)).collect()
}

/// The maximal triple obtained by moving each index to the end of its
/// block of equal degrees.
pub fn maximal_reduction(bp: &BundlePair, t: Triple) -> Triple {
    let last = |v: &[i64], x: usize, skip: usize| -> usize {
        (1..=v.len()).filter(|&y| y != skip && v[y - 1] == v[x - 1]).max().unwrap()
    };
    let k = last(&bp.e, t.k, 0);
    let j = last(&bp.f, t.j, 0);
    let i = last(&bp.f, t.i, j);
    Triple { i, j, k }
}

/// The counting expression for codim G_IJK, valid for any triple.
pub fn codim_g_direct(bp: &BundlePair, t: Triple) -> i64 {
    let ek = (1..=4).filter(|&k| k != t.k && bp.e[k - 1] <= bp.e[t.k - 1]).count();
    let fij = (1..=5)
        .filter(|&i| i != t.i && i != t.j)
        .flat_map(|i| [t.i, t.j].map(|j| (i, j)))
        .filter(|&(i, j)| bp.f[i - 1] <= bp.f[j - 1])
        .count();
    (ek + fij) as i64
}

/// I + J + K - 4, for maximal triples only.
pub fn codim_g(bp: &BundlePair, t: Triple) -> Result<i64> {
    if !is_maximal(bp, t) {
        return Err(Error::Precondition(format!("{t} is not maximal for this pair")));
    }
    Ok(t.sum() - 4)
}

/// Degrees of a_Ij^(K) for j outside {I, J}, and of a_iJ^(K) likewise.
fn side_entries(t: Triple) -> impl Iterator<Item = (usize, usize)> {
    (1..=5)
        .filter(move |&x| x != t.i && x != t.j)
        .flat_map(move |x| [(t.i, x), (x, t.j)])
}

pub fn nu_offset(bp: &BundlePair, t: Triple) -> i64 {
    let zero = bp.d(t.i, t.j, t.k) <= 1
        && (1..=4).filter(|&k| k != t.k).all(|k| bp.d(t.i, t.j, k) <= 0)
        && side_entries(t).all(|(a, b)| bp.d(a, b, t.k) <= 0);
    (!zero) as i64
}

/// Accessory triples, written with the smaller index first.
pub fn accessory_triples(bp: &BundlePair, t: Triple) -> Vec<Triple> {
    let sorted = |a: usize, b: usize, k: usize| Triple { i: a.min(b), j: a.max(b), k };
    let mut out: Vec<Triple> = (1..=4)
        .map(|k| sorted(t.i, t.j, k))
        .chain(side_entries(t).map(|(a, b)| sorted(a, b, t.k)))
        .filter(|x| bp.d(x.i, x.j, x.k) >= 0)
        .collect();
    out.sort();
    out
}

/// Number of coefficients the normal-form congruences kill: one per
/// accessory triple, plus one when a_IJ^(K) has a linear term to lose.
pub fn codim_u_exact(bp: &BundlePair, t: Triple) -> i64 {
    accessory_triples(bp, t).len() as i64 + (bp.d(t.i, t.j, t.k) >= 1) as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub triple: Triple,
    pub codim_g: i64,
    pub nu: i64,
    pub n_accessory: i64,
    pub codim_u_exact: i64,
    /// nu + codim G < codim U.
    pub pass: bool,
    /// One of the numerical criteria on the accessory count holds.
    pub numerical_criterion: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    pub triples: Vec<TripleReport>,
    /// dim H for k = 1..4.
    pub dim_h: [i64; 4],
    /// Every d_ij^(k) with i + j + k >= 8 is nonnegative.
    pub evaluation_surjective: bool,
}

impl StratumReport {
    pub fn pass(&self) -> bool {
        self.evaluation_surjective && self.triples.iter().all(|t| t.pass)
    }

    pub fn to_json(&self) -> Value {
        let triples: Vec<Value> = self
            .triples
            .iter()
            .map(|t| {
                json!({
                    "triple": [t.triple.i, t.triple.j, t.triple.k],
                    "codimG": t.codim_g,
                    "nu": t.nu,
                    "n_accessory": t.n_accessory,
                    "codimU_exact": t.codim_u_exact,
                    "numerical_criterion": t.numerical_criterion,
                    "pass": t.pass,
                })
            })
            .collect();
        json!({
            "pass": self.pass(),
            "maximal_triples": triples,
            "dimH": self.dim_h,
            "evaluation_surjective": self.evaluation_surjective,
        })
    }

    /// Inverse of `to_json`. The stored "pass" flags must agree with the
    /// numbers they summarize.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("stratum report: {what}"));
        let int = |o: &Value, key: &str| o.get(key).and_then(Value::as_i64).ok_or_else(|| bad(key));
        let flag = |o: &Value, key: &str| o.get(key).and_then(Value::as_bool).ok_or_else(|| bad(key));
        let dims: Vec<i64> = v
            .get("dimH")
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(Value::as_i64).collect())
            .ok_or_else(|| bad("dimH"))?;
        let dim_h: [i64; 4] = dims.try_into().map_err(|_| bad("dimH must have four entries"))?;
        let mut triples = Vec::new();
        for t in v.get("maximal_triples").and_then(Value::as_array).ok_or_else(|| bad("maximal_triples"))? {
            let idx: Vec<usize> = t
                .get("triple")
                .and_then(Value::as_array)
                .map(|a| a.iter().filter_map(Value::as_u64).map(|x| x as usize).collect())
                .ok_or_else(|| bad("triple"))?;
            let [i, j, k] = idx[..] else { return Err(bad("triple must have three entries")) };
            let r = TripleReport {
                triple: Triple::new(i, j, k)?,
                codim_g: int(t, "codimG")?,
                nu: int(t, "nu")?,
                n_accessory: int(t, "n_accessory")?,
                codim_u_exact: int(t, "codimU_exact")?,
                pass: flag(t, "pass")?,
                numerical_criterion: flag(t, "numerical_criterion")?,
            };
            if r.pass != (r.nu + r.codim_g < r.codim_u_exact) {
                return Err(bad("pass flag disagrees with the counts"));
            }
            triples.push(r);
        }
        let report = StratumReport { triples, dim_h, evaluation_surjective: flag(v, "evaluation_surjective")? };
        if report.pass() != flag(v, "pass")? {
            return Err(bad("overall pass flag disagrees with the triples"));
        }
        Ok(report)
    }
}

/// #{(i, j) : i < j, i + j + k >= 8}.
pub fn dim_h(k: usize) -> i64 {
    PAIRS.iter().filter(|&&(i, j)| i + j + k >= 8).count() as i64
}

pub fn triple_report(bp: &BundlePair, t: Triple) -> Result<TripleReport> {
    let codim_g = codim_g(bp, t)?;
    let nu = nu_offset(bp, t);
    let n = accessory_triples(bp, t).len() as i64;
    let codim_u = codim_u_exact(bp, t);
    let s = t.sum();
    let numerical_criterion = n >= s - 2 || (n >= s - 3 && (nu == 0 || bp.d(t.i, t.j, t.k) >= 1));
    Ok(TripleReport {
        triple: t,
        codim_g,
        nu,
        n_accessory: n,
        codim_u_exact: codim_u,
        pass: nu + codim_g < codim_u,
        numerical_criterion,
    })
}

pub fn counting_verdict(bp: &BundlePair) -> Result<StratumReport> {
    if !theorem15_check(bp).is_satisfied() {
        return Err(Error::Precondition(format!(
            "pair g={}, e={:?}, f={:?} fails the realizability conditions",
            bp.g, bp.e, bp.f
        )));
    }
    let triples = maximal_triples(bp).into_iter().map(|t| triple_report(bp, t)).collect::<Result<_>>()?;
    let evaluation_surjective = Triple::all().filter(|t| t.sum() >= 8).all(|t| bp.d(t.i, t.j, t.k) >= 0);
    Ok(StratumReport { triples, dim_h: [1, 2, 3, 4].map(dim_h), evaluation_surjective })
}
