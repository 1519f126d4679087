//! Scanning every fiber point over F_{q^m}, m <= m_max, for singularities.
//!
//! Fibers over F_q-rational base points are solved one by one. Over a
//! base point of degree m >= 2 a fiber can only contain a singular point
//! if it is non-reduced or not a length-5 scheme at all. Such base points
//! are roots of three polynomials over F_q: the resultant of the norm form
//! of a generic projection (which vanishes where the fiber is non-reduced
//! or meets the auxiliary hyperplane), and two fixed maximal minors of the
//! quadrics and of their cubic multiples. Only those roots are solved;
//! every other fiber is reduced and hence smooth. If the polynomials
//! cannot be reconstructed the scan falls back to solving every fiber.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{jacobian_rank_with, quadrics_at, FiberPoint};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{self, Mat};
use crate::exactalg::ops::MAX_EXT_DEGREE;
use crate::exactalg::upoly;
use crate::exactalg::{ExtField, FieldOps, FiniteFieldOps, Gf, P1Point, PrimeField};
use crate::fiber::{cubic_index, fiber_algebra, fiber_algebra_with_unit, FiberAlgebra};
use crate::sections::{PfaffianSystem, Section, QUAD_MONOMIALS};

pub const DEFAULT_M_MAX: usize = 2;

const SCAN_SEED: u64 = 0x5ca4;
/// Sample counts tried when reconstructing the norm form.
const SAMPLE_SIZES: [usize; 6] = [48, 96, 192, 384, 768, 1536];
const CHECK_SAMPLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanStatus {
    SmoothScanned,
    SingularAt,
    Degenerate,
}

impl ScanStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanStatus::SmoothScanned => "SmoothScanned",
            ScanStatus::SingularAt => "SingularAt",
            ScanStatus::Degenerate => "Degenerate",
        }
    }
}

/// A scanned curve point with coordinates in F_{q^m}, m = `field_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanPoint {
    pub field_degree: usize,
    pub point: FiberPoint<Gf>,
    /// Length of the fiber scheme at the point.
    pub length: usize,
    pub rank: usize,
}

impl ScanPoint {
    pub fn is_singular(&self) -> bool {
        self.rank <= 2
    }

    /// Coordinates as residues when the point is F_q-rational.
    pub fn as_prime_point(&self, fq: &PrimeField) -> Option<FiberPoint<u64>> {
        let base = |g: &Gf| g.0[1..].iter().all(|&c| c == 0).then_some(g.0[0]);
        let p = P1Point::new(fq, base(self.point.p.s())?, base(self.point.p.t())?).ok()?;
        let x = self.point.x.iter().map(base).collect::<Option<Vec<u64>>>()?;
        Some(FiberPoint { p, x })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub prime: u64,
    pub m_max: usize,
    pub status: ScanStatus,
    /// Every curve point over an F_q-rational base point with F_q-rational
    /// coordinates, followed by every singular point found elsewhere.
    pub points: Vec<ScanPoint>,
    /// Base points whose fiber is not a length-5 scheme.
    pub degenerate: Vec<(usize, P1Point<Gf>)>,
    pub fibers_solved: usize,
    /// How base points of each degree 2..=m_max were selected.
    pub methods: Vec<(usize, &'static str)>,
}

impl SingularityReport {
    pub fn singular_points(&self) -> impl Iterator<Item = &ScanPoint> {
        self.points.iter().filter(|p| p.is_singular())
    }

    pub fn to_json(&self, full: bool) -> Value {
        let fields: Vec<Value> = (1..=self.m_max)
            .map(|m| {
                let k = ExtField::new(PrimeField::new(self.prime).unwrap(), m).unwrap();
                json!({ "degree": m, "modulus": k.modulus_poly() })
            })
            .collect();
        let point_json = |sp: &ScanPoint| {
            json!({
                "field_degree": sp.field_degree,
                "p": [gf_json(sp.point.p.s(), sp.field_degree), gf_json(sp.point.p.t(), sp.field_degree)],
                "x": sp.point.x.iter().map(|c| gf_json(c, sp.field_degree)).collect::<Vec<_>>(),
                "length": sp.length,
                "rank": sp.rank,
            })
        };
        let singular: Vec<Value> = self.singular_points().map(point_json).collect();
        let mut out = json!({
            "status": self.status.as_str(),
            "p": self.prime,
            "m_max": self.m_max,
            "fields": fields,
            "singular_points": singular,
            "degenerate_fibers": self.degenerate.iter().map(|(m, p)| json!({
                "field_degree": m,
                "p": [gf_json(p.s(), *m), gf_json(p.t(), *m)],
            })).collect::<Vec<_>>(),
            "scanned_rational_points": self.points.iter().filter(|p| p.field_degree == 1).count(),
            "fibers_solved": self.fibers_solved,
            "methods": self.methods.iter().map(|(m, s)| json!({ "degree": m, "method": s })).collect::<Vec<_>>(),
        });
        if full {
            out["points"] = Value::Array(self.points.iter().map(point_json).collect());
        }
        out
    }
}

/// An element of F_{q^m} as its residue (m = 1) or its coefficient list
/// in the generator of the stored modulus.
fn gf_json(a: &Gf, m: usize) -> Value {
    if m == 1 {
        json!(a.0[0])
    } else {
        json!(a.0[..m].to_vec())
    }
}

struct Level {
    field: ExtField,
    pf: PfaffianSystem<Gf>,
}

struct Scanner<'a> {
    fq: PrimeField,
    pf: &'a PfaffianSystem<u64>,
    levels: Vec<Level>,
    rng: ChaCha8Rng,
    report: SingularityReport,
}

fn lift_pf(pf: &PfaffianSystem<u64>, k: &ExtField) -> PfaffianSystem<Gf> {
    PfaffianSystem { quads: pf.quads.iter().map(|q| q.iter().map(|c| c.map(|&x| k.embed(x))).collect()).collect() }
}

/// Smallest common multiple of the definition degrees of the entries.
fn point_degree(k: &ExtField, vals: &[&Gf]) -> usize {
    vals.iter().fold(1, |acc, v| {
        let d = k.definition_degree(v);
        acc * d / gcd_usize(acc, d)
    })
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// How fibers over base points of degree >= 2 are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMethod {
    /// Solve only the fibers located by the discriminant-type polynomials.
    Candidates,
    /// Solve every fiber.
    Exhaustive,
}

pub fn singular_scan(sec: &Section<PrimeField>, m_max: usize) -> Result<SingularityReport> {
    singular_scan_with(sec, m_max, ScanMethod::Candidates)
}

pub fn singular_scan_with(sec: &Section<PrimeField>, m_max: usize, method: ScanMethod) -> Result<SingularityReport> {
    if !(1..=MAX_EXT_DEGREE).contains(&m_max) {
        return Err(Error::Precondition(format!("m_max must lie in 1..={MAX_EXT_DEGREE}")));
    }
    let fq = *sec.field();
    let pf = sec.pfaffians();
    let levels = (1..=m_max)
        .map(|m| {
            let field = ExtField::new(fq, m)?;
            let lifted = lift_pf(&pf, &field);
            Ok(Level { field, pf: lifted })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sc = Scanner {
        fq,
        pf: &pf,
        levels,
        rng: ChaCha8Rng::seed_from_u64(SCAN_SEED),
        report: SingularityReport {
            prime: fq.modulus(),
            m_max,
            status: ScanStatus::SmoothScanned,
            points: Vec::new(),
            degenerate: Vec::new(),
            fibers_solved: 0,
            methods: Vec::new(),
        },
    };
    let k1 = sc.levels[0].field.clone();
    for t in 0..fq.modulus() {
        sc.scan_fiber(1, P1Point::affine(&k1, k1.embed(t)));
    }
    sc.scan_fiber(1, P1Point::infinity(&k1));
    for m in 2..=m_max {
        let located = match method {
            ScanMethod::Candidates => sc.candidates(m),
            ScanMethod::Exhaustive => None,
        };
        let (base_points, method) = match located {
            Some(c) => (c, "candidates"),
            None => (sc.all_points_of_degree(m), "exhaustive"),
        };
        sc.report.methods.push((m, method));
        let km = sc.levels[m - 1].field.clone();
        for t in base_points {
            sc.scan_fiber(m, P1Point::affine(&km, t));
        }
    }
    let mut report = sc.report;
    report.status = if !report.degenerate.is_empty() {
        ScanStatus::Degenerate
    } else if report.points.iter().any(ScanPoint::is_singular) {
        ScanStatus::SingularAt
    } else {
        ScanStatus::SmoothScanned
    };
    Ok(report)
}

impl Scanner<'_> {
    /// Solves the fiber above p (a point of degree m) over F_{q^m} and, if
    /// its non-rational part is not reduced, over larger fields too.
    fn scan_fiber(&mut self, m: usize, p: P1Point<Gf>) {
        let mut level_deg = m;
        let mut p_here = p.clone();
        loop {
            let level = &self.levels[level_deg - 1];
            let k = level.field.clone();
            let quads = quadrics_at(&k, &level.pf, &p_here);
            self.report.fibers_solved += 1;
            let rng = &mut self.rng;
            let mut sample = || k.random(rng);
            let alg = match fiber_algebra(&k, &quads, &mut sample) {
                Ok(a) => a,
                Err(_) => {
                    self.report.degenerate.push((m, p.clone()));
                    return;
                }
            };
            let Some(pts) = alg.points(&k, &mut sample) else {
                self.report.degenerate.push((m, p.clone()));
                return;
            };
            for (x, length) in pts.rational {
                let fp = FiberPoint { p: p_here.clone(), x };
                let mut coords: Vec<&Gf> = fp.x.iter().collect();
                coords.push(fp.p.s());
                coords.push(fp.p.t());
                let deg = point_degree(&k, &coords);
                if level_deg > m && m.is_multiple_of(deg) {
                    // already found over the smaller field
                    continue;
                }
                let rank = jacobian_rank_with(&k, &level.pf, &fp).expect("solved points lie on the curve");
                if level_deg == 1 || rank <= 2 {
                    self.report.points.push(ScanPoint { field_degree: level_deg, point: fp, length, rank });
                }
            }
            if pts.irrational_reduced {
                return;
            }
            let Some(next) = (level_deg + 1..=self.levels.len()).find(|d| d % m == 0) else {
                return;
            };
            let from = &self.levels[level_deg - 1].field;
            let to = &self.levels[next - 1].field;
            let emb = upoly::embedding(from, to).expect("degrees divide");
            p_here = p_here.map(&emb);
            level_deg = next;
        }
    }

    fn all_points_of_degree(&self, m: usize) -> Vec<Gf> {
        let k = &self.levels[m - 1].field;
        (0..k.order())
            .map(|i| k.element(i))
            .filter(|t| k.definition_degree(t) == m)
            .collect()
    }

    /// Base points of degree exactly m over which a fiber may be singular
    /// or degenerate; None if the locating polynomials were not recovered.
    fn candidates(&mut self, m: usize) -> Option<Vec<Gf>> {
        let q = self.fq.modulus() as u128;
        let ms = (1..=MAX_EXT_DEGREE).find(|&d| q.pow(d as u32) >= 1 << 14).unwrap_or(MAX_EXT_DEGREE);
        let s = ExtField::new(self.fq, ms).ok()?;
        let pf_s = lift_pf(self.pf, &s);
        let qdeg = self.pf.quads.iter().flatten().map(|c| c.deg()).max().unwrap_or(-1);
        if qdeg < 0 {
            return None;
        }
        let qdeg = qdeg as usize;
        let mut locators: Vec<Vec<u64>> = Vec::new();
        locators.push(self.norm_resultant(&s, &pf_s)?);
        for minor in [MinorKind::Quadrics, MinorKind::Cubics] {
            locators.push(self.minor_polynomial(&s, &pf_s, minor, qdeg)?);
        }
        let km = &self.levels[m - 1].field;
        let mut out = BTreeSet::new();
        for poly in &locators {
            for r in upoly::roots_in_extension(km, poly) {
                if km.definition_degree(&r) == m {
                    out.insert(r);
                }
            }
        }
        Some(out.into_iter().collect())
    }

    fn random_prime_vec(&mut self, s: &ExtField) -> Vec<Gf> {
        (0..4).map(|_| s.embed(self.fq.random(&mut self.rng))).collect()
    }

    /// Res_T(N, dN/dT) for the norm form N(t, T) of lambda / l with random
    /// F_q-linear forms lambda, l, reconstructed from sampled fibers.
    fn norm_resultant(&mut self, s: &ExtField, pf_s: &PfaffianSystem<Gf>) -> Option<Vec<u64>> {
        let l = self.random_prime_vec(s);
        let mut used = BTreeSet::new();
        let mut samples: Vec<(Gf, FiberAlgebra<Gf>)> = Vec::new();
        let max_needed = SAMPLE_SIZES[SAMPLE_SIZES.len() - 1] + CHECK_SAMPLES;
        if s.order() < 4 * max_needed as u128 {
            return None;
        }
        for _attempt in 0..4 {
            let lambda = self.random_prime_vec(s);
            for &n in &SAMPLE_SIZES {
                let mut misses = 0;
                while samples.len() < n + CHECK_SAMPLES {
                    let t = s.random(&mut self.rng);
                    if !used.insert(t) {
                        continue;
                    }
                    let quads = quadrics_at(s, pf_s, &P1Point::affine(s, t));
                    match fiber_algebra_with_unit(s, &quads, &l) {
                        Ok(Some(alg)) => samples.push((t, alg)),
                        _ => {
                            misses += 1;
                            if misses > 4 * n {
                                return None;
                            }
                        }
                    }
                }
                if let Some(coeffs) = reconstruct_norm(s, &samples[..n + CHECK_SAMPLES], n, &lambda) {
                    let res = resultant_poly(s, &coeffs)?;
                    if res.is_empty() {
                        // lambda / l does not separate generic fibers
                        break;
                    }
                    return Some(res);
                }
            }
        }
        None
    }

    /// A fixed maximal minor of the quadric matrix (5 x 10) or of the
    /// matrix of cubic multiples (20 x 20, rank 15), as a polynomial in t.
    fn minor_polynomial(&mut self, s: &ExtField, pf_s: &PfaffianSystem<Gf>, kind: MinorKind, qdeg: usize) -> Option<Vec<u64>> {
        let size = match kind {
            MinorKind::Quadrics => 5,
            MinorKind::Cubics => 15,
        };
        let matrix_at = |t: &Gf| -> Mat<Gf> {
            let quads = quadrics_at(s, pf_s, &P1Point::affine(s, *t));
            match kind {
                MinorKind::Quadrics => quads,
                MinorKind::Cubics => cubic_multiples(s, &quads),
            }
        };
        let t0 = s.random(&mut self.rng);
        let m0 = matrix_at(&t0);
        let cols = {
            let mut c = m0.clone();
            linalg::rref(s, &mut c)
        };
        let rows = {
            let mut c = linalg::transpose(&m0);
            linalg::rref(s, &mut c)
        };
        if cols.len() != size || rows.len() != size {
            return None;
        }
        let bound = size * qdeg;
        let mut xs = Vec::with_capacity(bound + 1);
        let mut used = BTreeSet::new();
        while xs.len() <= bound {
            let t = s.random(&mut self.rng);
            if used.insert(t) {
                xs.push(t);
            }
        }
        let ys: Vec<Gf> = xs
            .iter()
            .map(|t| {
                let full = matrix_at(t);
                let minor: Mat<Gf> = rows.iter().map(|&r| cols.iter().map(|&c| full[r][c]).collect()).collect();
                linalg::det(s, &minor)
            })
            .collect();
        let poly = upoly::interpolate(s, &xs, &ys);
        let out = to_prime(s, &poly)?;
        (!out.is_empty()).then_some(out)
    }
}

#[derive(Clone, Copy)]
enum MinorKind {
    Quadrics,
    Cubics,
}

fn cubic_multiples(f: &ExtField, quads: &[Vec<Gf>]) -> Mat<Gf> {
    let mut rows = Vec::with_capacity(20);
    for q in quads {
        for k in 0..4 {
            let mut row = vec![f.zero(); 20];
            for (m, c) in q.iter().enumerate() {
                let (a, b) = QUAD_MONOMIALS[m];
                row[cubic_index(a, b, k)] = *c;
            }
            rows.push(row);
        }
    }
    rows
}

fn to_prime(s: &ExtField, poly: &[Gf]) -> Option<Vec<u64>> {
    poly.iter().map(|c| s.as_base(c)).collect()
}

/// Coefficients of N(t, T) = B T^5 + sum A_j T^j over F_q, from the
/// first n samples, checked on the rest.
fn reconstruct_norm(s: &ExtField, samples: &[(Gf, FiberAlgebra<Gf>)], n: usize, lambda: &[Gf]) -> Option<Vec<Vec<u64>>> {
    let xs: Vec<Gf> = samples.iter().map(|(t, _)| *t).collect();
    let chis: Vec<Vec<Gf>> = samples.iter().map(|(_, a)| a.charpoly(s, lambda)).collect();
    let mut fracs = Vec::with_capacity(5);
    for j in 0..5 {
        let ys: Vec<Gf> = chis.iter().map(|c| c.get(j).copied().unwrap_or_else(|| s.zero())).collect();
        let (num, den) = upoly::rational_reconstruct(s, &xs[..n], &ys[..n])?;
        for i in n..xs.len() {
            let d = upoly::eval(s, &den, &xs[i]);
            if s.is_zero(&d) || upoly::eval(s, &num, &xs[i]) != s.mul(&ys[i], &d) {
                return None;
            }
        }
        fracs.push((to_prime(s, &num)?, to_prime(s, &den)?));
    }
    let fq = *s.base();
    let common = fracs.iter().fold(vec![1u64], |acc, (_, d)| upoly::lcm(&fq, &acc, d));
    let mut coeffs: Vec<Vec<u64>> = fracs
        .iter()
        .map(|(num, den)| upoly::mul(&fq, num, &upoly::divrem(&fq, &common, den).0))
        .collect();
    coeffs.push(common);
    Some(coeffs)
}

/// Res_T(N, dN/dT) as a polynomial in t, by evaluation and interpolation.
fn resultant_poly(s: &ExtField, coeffs: &[Vec<u64>]) -> Option<Vec<u64>> {
    let fq = *s.base();
    let maxdeg = coeffs.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0);
    let bound = 9 * maxdeg;
    if (bound as u128) + 1 > s.order() {
        return None;
    }
    let lifted: Vec<Vec<Gf>> = coeffs.iter().map(|c| c.iter().map(|&x| s.embed(x)).collect()).collect();
    let xs: Vec<Gf> = (0..=bound as u128).map(|i| s.element(i)).collect();
    let ys: Vec<Gf> = xs
        .iter()
        .map(|t| {
            let n: Vec<Gf> = lifted.iter().map(|c| upoly::eval(s, c, t)).collect();
            let dn: Vec<Gf> = (1..=5).map(|j| s.mul(&s.from_i64(j as i64), &n[j])).collect();
            linalg::det(s, &sylvester(s, &n, &dn))
        })
        .collect();
    let poly = upoly::interpolate(s, &xs, &ys);
    let out = to_prime(s, &poly)?;
    Some(upoly::trim(&fq, out))
}

/// Sylvester matrix of a (degree 5) and b (degree 4), low-first inputs.
fn sylvester(f: &ExtField, a: &[Gf], b: &[Gf]) -> Mat<Gf> {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let n = da + db;
    let mut m = vec![vec![f.zero(); n]; n];
    for r in 0..db {
        for (i, c) in a.iter().rev().enumerate() {
            m[r][r + i] = *c;
        }
    }
    for r in 0..da {
        for (i, c) in b.iter().rev().enumerate() {
            m[db + r][r + i] = *c;
        }
    }
    m
}
