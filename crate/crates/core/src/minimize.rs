//! Normal forms of singular sections at a base point, the constructive
//! reduction to them by unipotent transformations, and the partial
//! normalization they enable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bundles::{BundlePair, PAIRS};
use crate::error::{Error, Result};
use crate::exactalg::codec::ScalarCodec;
use crate::exactalg::{linalg, upoly, BinaryForm, FieldOps, P1Point};
use crate::fiber::{eval_quadric, fiber_algebra, normalize_projective};
use crate::sections::{act, GroupElement, SampleScalar, Section};
use crate::singularity::{jacobian_rank_with, quadrics_at, FiberPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NormalFormKind {
    /// A_K vanishes at p.
    TypeK(usize),
    /// (I, J, K) with I < J.
    TypeIJK(usize, usize, usize),
}

impl NormalFormKind {
    pub fn k(self) -> usize {
        match self {
            NormalFormKind::TypeK(k) | NormalFormKind::TypeIJK(_, _, k) => k,
        }
    }

    fn valid(self) -> bool {
        match self {
            NormalFormKind::TypeK(k) => (1..=4).contains(&k),
            NormalFormKind::TypeIJK(i, j, k) => 1 <= i && i < j && j <= 5 && (1..=4).contains(&k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormCertificate<E> {
    pub kind: NormalFormKind,
    pub p: P1Point<E>,
    pub witness: GroupElement<E>,
}

fn ord_at_least<F: FieldOps>(f: &F, form: &BinaryForm<F::E>, p: &P1Point<F::E>, n: u32) -> bool {
    form.order_at(f, p).is_none_or(|o| o >= n)
}

pub fn is_normal_form<F: FieldOps>(sec: &Section<F>, p: &P1Point<F::E>, kind: NormalFormKind) -> bool {
    if !kind.valid() {
        return false;
    }
    let f = sec.field();
    match kind {
        NormalFormKind::TypeK(k) => PAIRS.iter().all(|&(i, j)| ord_at_least(f, sec.entry(k, i, j), p, 1)),
        NormalFormKind::TypeIJK(i, j, k) => crate::singularity::shape_singular_check(sec, p, (i, j, k)),
    }
}

/// Order at p that the normal form `kind` demands of a_ij^(k).
pub fn required_order(kind: NormalFormKind, k: usize, i: usize, j: usize) -> u32 {
    match kind {
        NormalFormKind::TypeK(kk) => (k == kk) as u32,
        NormalFormKind::TypeIJK(ii, jj, kk) => {
            let hits = (i == ii || j == ii) as u32 + (i == jj || j == jj) as u32;
            match (hits, k == kk) {
                (2, true) => 2,
                (2, false) | (1, true) => 1,
                _ => 0,
            }
        }
    }
}

/// Random section in the normal form `kind` at p: each entry is u^n
/// times a random form, n being the order the normal form requires.
pub fn plant_normal_form<F: SampleScalar, R: Rng>(
    bp: &BundlePair,
    field: &F,
    p: &P1Point<F::E>,
    kind: NormalFormKind,
    rng: &mut R,
    bound: i64,
) -> Result<Section<F>> {
    if !kind.valid() {
        return Err(Error::Precondition(format!("indices out of range in {kind:?}")));
    }
    let u = BinaryForm::uniformizer(field, p);
    Section::from_fn(field.clone(), bp.clone(), |k, i, j| {
        let n = required_order(kind, k, i, j);
        let d = bp.d(i, j, k) - n as i64;
        if d < 0 {
            return BinaryForm::zero();
        }
        let coeffs = (0..=d).map(|_| field.sample(rng, bound)).collect();
        BinaryForm::new(field, d, coeffs).expect("length matches").mul(field, &u.pow(field, n))
    })
}

/// Value and first Taylor coefficient in the uniformizer.
fn jet<F: FieldOps>(f: &F, form: &BinaryForm<F::E>, p: &P1Point<F::E>) -> (F::E, F::E) {
    form.eval_with_derivative(f, p)
}

/// Finds a singular fiber point above p with coordinates in the field.
fn singular_point<F: FieldOps>(sec: &Section<F>, p: &P1Point<F::E>) -> Result<Vec<F::E>> {
    let f = sec.field();
    let pf = sec.pfaffians();
    let quads = quadrics_at(f, &pf, p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d1);
    let mut sample = || f.from_i64(rng.gen_range(-1000..=1000));
    match fiber_algebra(f, &quads, &mut sample) {
        Ok(alg) => {
            let pts = alg
                .points(f, &mut sample)
                .ok_or_else(|| Error::Degenerate("could not split the fiber algebra".into()))?;
            for (x, _) in &pts.rational {
                let fp = FiberPoint { p: p.clone(), x: x.clone() };
                if jacobian_rank_with(f, &pf, &fp)? <= 2 {
                    return Ok(x.clone());
                }
            }
            if !pts.irrational_reduced {
                return Err(Error::IrrationalSingularPoint);
            }
            Err(Error::NotSingular)
        }
        Err(_) => {
            // not a finite fiber: try the coordinate points, then points on
            // the positive-dimensional part
            for k in (0..4).rev() {
                let mut x = vec![f.zero(); 4];
                x[k] = f.one();
                let fp = FiberPoint { p: p.clone(), x: x.clone() };
                if let Ok(r) = jacobian_rank_with(f, &pf, &fp) {
                    if r <= 2 {
                        return Ok(x);
                    }
                }
            }
            // points where the whole matrix A(x) vanishes at p
            let mats = sec.specialize_fiber(p);
            let rows: Vec<Vec<F::E>> =
                PAIRS.iter().map(|&(i, j)| (0..4).map(|k| mats[k][i - 1][j - 1].clone()).collect()).collect();
            for x in linalg::kernel(f, &rows, 4) {
                let fp = FiberPoint { p: p.clone(), x: x.clone() };
                if jacobian_rank_with(f, &pf, &fp).is_ok_and(|r| r <= 2) {
                    return Ok(normalize_projective(f, &x));
                }
            }
            for _ in 0..PLANE_TRIES {
                let plane: [Vec<F::E>; 3] = std::array::from_fn(|_| (0..4).map(|_| sample()).collect());
                for x in plane_section_points(f, &quads, &plane) {
                    let fp = FiberPoint { p: p.clone(), x: x.clone() };
                    if jacobian_rank_with(f, &pf, &fp).is_ok_and(|r| r <= 2) {
                        return Ok(normalize_projective(f, &x));
                    }
                }
            }
            Err(Error::Degenerate("the fiber is not finite and no rational singular point was found on it".into()))
        }
    }
}

/// Random planes tried when the fiber is not finite.
const PLANE_TRIES: usize = 40;

/// Rational points of the fiber on the plane spanned by `plane`, when the
/// intersection is finite. On the plane the quadrics become ternary forms
/// in (y0, y1, y2); writing two random combinations as a y2^2 + b y2 + c
/// with b, c forms in (y0, y1), their resultant is a binary quartic whose
/// roots carry every common zero.
fn plane_section_points<F: FieldOps>(f: &F, quads: &[Vec<F::E>], plane: &[Vec<F::E>; 3]) -> Vec<Vec<F::E>> {
    let on = |q: &[F::E], x: &[F::E]| eval_quadric(f, q, x);
    let sum = |u: &[F::E], v: &[F::E]| -> Vec<F::E> { u.iter().zip(v).map(|(a, b)| f.add(a, b)).collect() };
    // ternary coefficients [y0^2, y0y1, y1^2, y0y2, y1y2, y2^2]
    let ternary: Vec<[F::E; 6]> = quads
        .iter()
        .map(|q| {
            let sq: [F::E; 3] = std::array::from_fn(|r| on(q, &plane[r]));
            let cross = |r: usize, s: usize| f.sub(&f.sub(&on(q, &sum(&plane[r], &plane[s])), &sq[r]), &sq[s]);
            [sq[0].clone(), cross(0, 1), sq[1].clone(), cross(0, 2), cross(1, 2), sq[2].clone()]
        })
        .collect();
    let combo = |w: &[i64]| -> [F::E; 6] {
        std::array::from_fn(|m| {
            ternary.iter().zip(w).fold(f.zero(), |acc, (t, &c)| f.add(&acc, &f.mul(&f.from_i64(c), &t[m])))
        })
    };
    let split = |t: &[F::E; 6]| -> Option<(BinaryForm<F::E>, BinaryForm<F::E>, BinaryForm<F::E>)> {
        Some((
            BinaryForm::constant(f, t[5].clone()),
            BinaryForm::new(f, 1, vec![t[3].clone(), t[4].clone()]).ok()?,
            BinaryForm::new(f, 2, vec![t[0].clone(), t[1].clone(), t[2].clone()]).ok()?,
        ))
    };
    let (Some((a1, b1, c1)), Some((a2, b2, c2))) = (split(&combo(&[1, 2, 3, 5, 7])), split(&combo(&[3, -1, 4, -2, 1])))
    else {
        return Vec::new();
    };
    // Res = (a1 c2 - a2 c1)^2 - (a1 b2 - a2 b1)(b1 c2 - b2 c1)
    let res = (|| -> Result<BinaryForm<F::E>> {
        let u = a1.mul(f, &c2).sub(f, &a2.mul(f, &c1))?;
        let v = a1.mul(f, &b2).sub(f, &a2.mul(f, &b1))?;
        let w = b1.mul(f, &c2).sub(f, &b2.mul(f, &c1))?;
        u.mul(f, &u).sub(f, &v.mul(f, &w))
    })();
    let Ok(res) = res else { return Vec::new() };
    if res.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let point = |y: [&F::E; 3]| -> Vec<F::E> {
        (0..4).map(|n| (0..3).fold(f.zero(), |acc, r| f.add(&acc, &f.mul(y[r], &plane[r][n])))).collect()
    };
    if ternary.iter().all(|t| f.is_zero(&t[5])) {
        out.push(point([&f.zero(), &f.zero(), &f.one()]));
    }
    for (root, _) in res.roots_in_field(f).unwrap_or_default() {
        let (s, t) = (root.s(), root.t());
        let polys: Vec<Vec<F::E>> = ternary
            .iter()
            .map(|c| {
                let c0 = f.add(&f.add(&f.mul(&c[0], &f.mul(s, s)), &f.mul(&c[1], &f.mul(s, t))), &f.mul(&c[2], &f.mul(t, t)));
                let c1 = f.add(&f.mul(&c[3], s), &f.mul(&c[4], t));
                upoly::trim(f, vec![c0, c1, c[5].clone()])
            })
            .collect();
        let candidates: Vec<F::E> = match polys.iter().find(|q| !q.is_empty()) {
            Some(q) => f.roots(q),
            None => vec![f.zero(), f.one()],
        };
        for y2 in candidates {
            if polys.iter().all(|q| f.is_zero(&upoly::eval(f, q, &y2))) {
                out.push(point([s, t, &y2]));
            }
        }
    }
    out.retain(|x| x.iter().any(|c| !f.is_zero(c)) && quads.iter().all(|q| f.is_zero(&on(q, x))));
    out
}

struct Reducer<'a, F: FieldOps> {
    f: &'a F,
    p: &'a P1Point<F::E>,
    cur: Section<F>,
    g: GroupElement<F::E>,
}

impl<F: FieldOps> Reducer<'_, F> {
    fn apply(&mut self, h: GroupElement<F::E>) -> Result<()> {
        self.cur = act(&h, &self.cur)?;
        self.g = h.compose(self.f, &self.g);
        Ok(())
    }

    /// g5 shear adding c times index `from` to index `to` (from < to).
    fn shear5(&mut self, to: usize, from: usize, c: F::E) -> Result<()> {
        if self.f.is_zero(&c) {
            return Ok(());
        }
        let h = GroupElement::g5_shear(self.f, self.cur.base(), self.p, to, from, c);
        self.apply(h)
    }

    fn value(&self, k: usize, i: usize, j: usize) -> F::E {
        self.cur.a(k, i, j).eval(self.f, self.p)
    }

    /// Coefficient vector over k of the linear form A(x)_ij at p.
    fn column(&self, i: usize, j: usize) -> Vec<F::E> {
        (1..=4).map(|k| self.value(k, i, j)).collect()
    }
}

fn is_zero_vec<F: FieldOps>(f: &F, v: &[F::E]) -> bool {
    v.iter().all(|c| f.is_zero(c))
}

/// Some c with v = c w, provided w is nonzero and v is parallel to w.
fn ratio<F: FieldOps>(f: &F, v: &[F::E], w: &[F::E]) -> Option<F::E> {
    let i = w.iter().position(|c| !f.is_zero(c))?;
    let c = f.div(&v[i], &w[i])?;
    v.iter().zip(w).all(|(a, b)| *a == f.mul(&c, b)).then_some(c)
}

/// (alpha, beta) with n3 = alpha n1 + beta n2, for independent n1, n2.
fn solve2<F: FieldOps>(f: &F, n1: &[F::E], n2: &[F::E], n3: &[F::E]) -> Option<(F::E, F::E)> {
    for r in 0..4 {
        for s in r + 1..4 {
            let det = f.sub(&f.mul(&n1[r], &n2[s]), &f.mul(&n1[s], &n2[r]));
            if f.is_zero(&det) {
                continue;
            }
            let a = f.div(&f.sub(&f.mul(&n3[r], &n2[s]), &f.mul(&n3[s], &n2[r])), &det)?;
            let b = f.div(&f.sub(&f.mul(&n1[r], &n3[s]), &f.mul(&n1[s], &n3[r])), &det)?;
            let ok = (0..4).all(|t| n3[t] == f.add(&f.mul(&a, &n1[t]), &f.mul(&b, &n2[t])));
            return ok.then_some((a, b));
        }
    }
    None
}

/// Moves a section singular above p into a normal form at p.
pub fn minimize_at<F: FieldOps>(sec: &Section<F>, p: &P1Point<F::E>) -> Result<NormalFormCertificate<F::E>> {
    let f = sec.field();
    let x = singular_point(sec, p)?;
    let kk = x.iter().rposition(|c| !f.is_zero(c)).expect("projective point") + 1;
    let mut red = Reducer { f, p, cur: sec.clone(), g: GroupElement::identity(f) };

    // move the singular point to the coordinate point e_K
    let mut g4 = GroupElement::identity(f);
    let w = BinaryForm::unit_at(f, p);
    let bp = sec.base().clone();
    let xk_inv = f.inv(&x[kk - 1]).unwrap();
    for l in 1..kk {
        let c = f.mul(&x[l - 1], &xk_inv);
        if !f.is_zero(&c) {
            g4.g4[kk - 1][l - 1] = w.pow(f, (bp.e[kk - 1] - bp.e[l - 1]) as u32).scale(f, &c);
        }
    }
    red.apply(g4)?;

    // A_K(p) = v ^ w
    let ak: Vec<Vec<F::E>> = (1..=5).map(|i| (1..=5).map(|j| red.value(kk, i, j)).collect()).collect();
    let Some((pi, pj)) = crate::bundles::PAIRS.iter().copied().find(|&(i, j)| !f.is_zero(&ak[i - 1][j - 1])) else {
        return finish(red, NormalFormKind::TypeK(kk));
    };
    let aij_inv = f.inv(&ak[pi - 1][pj - 1]).unwrap();
    let mut v: Vec<F::E> = ak[pi - 1].iter().map(|c| f.mul(c, &aij_inv)).collect();
    let mut wv: Vec<F::E> = ak[pj - 1].clone();

    // clear every column of M = [v; w] except two independent ones
    let l = (0..5).find(|&c| !f.is_zero(&v[c]) || !f.is_zero(&wv[c])).unwrap();
    let m = (l + 1..5)
        .find(|&c| !f.is_zero(&f.sub(&f.mul(&v[l], &wv[c]), &f.mul(&v[c], &wv[l]))))
        .ok_or_else(|| Error::InvalidCertificate("A_K(p) is not of rank 2".into()))?;
    let det = f.sub(&f.mul(&v[l], &wv[m]), &f.mul(&v[m], &wv[l]));
    for c in 0..5 {
        if c == l || c == m {
            continue;
        }
        // column c = alpha col l + beta col m, with l, m < c unless col c lies in span(col l)
        let alpha = f.div(&f.sub(&f.mul(&v[c], &wv[m]), &f.mul(&v[m], &wv[c])), &det).unwrap();
        let beta = f.div(&f.sub(&f.mul(&v[l], &wv[c]), &f.mul(&v[c], &wv[l])), &det).unwrap();
        red.shear5(c + 1, l + 1, f.neg(&alpha))?;
        red.shear5(c + 1, m + 1, f.neg(&beta))?;
        let (va, wa) = (f.sub(&v[c], &f.add(&f.mul(&alpha, &v[l]), &f.mul(&beta, &v[m]))), f.sub(&wv[c], &f.add(&f.mul(&alpha, &wv[l]), &f.mul(&beta, &wv[m]))));
        v[c] = va;
        wv[c] = wa;
    }
    let s: Vec<usize> = (1..=5).filter(|&i| i != l + 1 && i != m + 1).collect();
    let (s1, s2, s3) = (s[0], s[1], s[2]);

    let n12 = red.column(s1, s2);
    let n13 = red.column(s1, s3);
    let n23 = red.column(s2, s3);
    let rank2 = {
        let mat = vec![n12.clone(), n13.clone(), n23.clone()];
        crate::exactalg::linalg::rank(f, &mat) == 2
    };
    if !rank2 {
        // two columns of N can be cleared; the case (i) pattern
        let (lidx, i, j) = if !is_zero_vec(f, &n12) {
            let c = ratio(f, &n13, &n12).ok_or_else(|| Error::InvalidCertificate("rank of N exceeds 1".into()))?;
            red.shear5(s3, s2, f.neg(&c))?;
            let b = ratio(f, &n23, &n12).ok_or_else(|| Error::InvalidCertificate("rank of N exceeds 1".into()))?;
            red.shear5(s3, s1, b)?;
            (s3, s1, s2)
        } else if !is_zero_vec(f, &n13) {
            let a = ratio(f, &n23, &n13).ok_or_else(|| Error::InvalidCertificate("rank of N exceeds 1".into()))?;
            red.shear5(s2, s1, f.neg(&a))?;
            (s2, s1, s3)
        } else {
            (s1, s2, s3)
        };
        return case_one(red, kk, lidx, i, j);
    }
    let (i, j) = if is_zero_vec(f, &n12) {
        (s1, s2)
    } else if let Some(c) = ratio(f, &n13, &n12) {
        red.shear5(s3, s2, f.neg(&c))?;
        (s1, s3)
    } else {
        let (alpha, beta) = solve2(f, &n12, &n13, &n23)
            .ok_or_else(|| Error::InvalidCertificate("rank of N exceeds 2".into()))?;
        red.shear5(s2, s1, f.neg(&beta))?;
        red.shear5(s3, s1, alpha)?;
        (s2, s3)
    };
    finish(red, NormalFormKind::TypeIJK(i, j, kk))
}

/// A(x)_{IL} and A(x)_{JL} vanish at p; force a^(K) of one of them to
/// vanish to second order.
fn case_one<F: FieldOps>(mut red: Reducer<'_, F>, kk: usize, l: usize, i: usize, j: usize) -> Result<NormalFormCertificate<F::E>> {
    let f = red.f;
    let sorted = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let (_, di) = jet(f, &red.cur.a(kk, i, l), red.p);
    let (_, dj) = jet(f, &red.cur.a(kk, j, l), red.p);
    if f.is_zero(&di) {
        let (a, b) = sorted(i, l);
        return finish(red, NormalFormKind::TypeIJK(a, b, kk));
    }
    if f.is_zero(&dj) {
        let (a, b) = sorted(j, l);
        return finish(red, NormalFormKind::TypeIJK(a, b, kk));
    }
    let (y, x) = sorted(i, j);
    let (dy, dx) = if y == i { (di, dj) } else { (dj, di) };
    red.shear5(x, y, f.neg(&f.div(&dx, &dy).unwrap()))?;
    let (a, b) = sorted(x, l);
    finish(red, NormalFormKind::TypeIJK(a, b, kk))
}

fn finish<F: FieldOps>(red: Reducer<'_, F>, kind: NormalFormKind) -> Result<NormalFormCertificate<F::E>> {
    if !is_normal_form(&red.cur, red.p, kind) {
        return Err(Error::InvalidCertificate(format!("reduction did not reach the normal form {kind:?}")));
    }
    let cert = NormalFormCertificate { kind, p: red.p.clone(), witness: red.g };
    Ok(cert)
}

/// Result of the partial normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized<F: FieldOps> {
    pub base: BundlePair,
    pub section: Section<F>,
    /// Set when the new splitting types leave the range of honest covers.
    pub warning: Option<String>,
}

/// Divides out the powers of u dictated by the normal form and returns
/// the section on the new pair of bundles.
pub fn partial_normalize<F: FieldOps>(sec: &Section<F>, cert: &NormalFormCertificate<F::E>) -> Result<Normalized<F>> {
    let f = sec.field();
    let b = act(&cert.witness, sec).map_err(|e| Error::InvalidCertificate(e.to_string()))?;
    if !is_normal_form(&b, &cert.p, cert.kind) {
        return Err(Error::InvalidCertificate("the witness does not produce the stated normal form".into()));
    }
    let u = BinaryForm::uniformizer(f, &cert.p);
    let bp = sec.base();
    let (mut e, mut fv, g) = (bp.e, bp.f, bp.g);
    // power of u to multiply entry (k, i, j) by
    let shift: Box<dyn Fn(usize, usize, usize) -> i32> = match cert.kind {
        NormalFormKind::TypeK(kk) => {
            for (idx, x) in e.iter_mut().enumerate() {
                *x -= if idx + 1 == kk { 2 } else { 1 };
            }
            for x in fv.iter_mut() {
                *x -= 2;
            }
            Box::new(move |k, _, _| if k == kk { -1 } else { 0 })
        }
        NormalFormKind::TypeIJK(ii, jj, kk) => {
            e[kk - 1] -= 1;
            fv[ii - 1] -= 1;
            fv[jj - 1] -= 1;
            Box::new(move |k, i, j| {
                let hits = (i == ii || i == jj) as i32 + (j == ii || j == jj) as i32;
                1 - hits - (k == kk) as i32
            })
        }
    };
    let g_new = match cert.kind {
        NormalFormKind::TypeK(_) => g - 5,
        NormalFormKind::TypeIJK(..) => g - 1,
    };
    let mut entries = std::collections::BTreeMap::new();
    for k in 1..=4 {
        for &(i, j) in &crate::bundles::PAIRS {
            let a = b.entry(k, i, j).clone();
            let s = shift(k, i, j);
            let out = if a.is_zero() {
                a
            } else if s >= 0 {
                a.mul(f, &u.pow(f, s as u32))
            } else {
                a.div_exact(f, &u.pow(f, (-s) as u32))?
            };
            entries.insert((k, i, j), out);
        }
    }
    // re-sort both splitting types, carrying the entries along
    let mut eperm: Vec<usize> = (1..=4).collect();
    eperm.sort_by_key(|&k| (e[k - 1], k));
    let mut fperm: Vec<usize> = (1..=5).collect();
    fperm.sort_by_key(|&i| (fv[i - 1], i));
    let e_sorted: [i64; 4] = std::array::from_fn(|n| e[eperm[n] - 1]);
    let f_sorted: [i64; 5] = std::array::from_fn(|n| fv[fperm[n] - 1]);
    let base = BundlePair::relaxed(g_new, e_sorted, f_sorted)?;
    let section = Section::from_fn(f.clone(), base.clone(), |k, i, j| {
        let (ok, oi, oj) = (eperm[k - 1], fperm[i - 1], fperm[j - 1]);
        if oi < oj {
            entries[&(ok, oi, oj)].clone()
        } else {
            entries[&(ok, oj, oi)].neg(f)
        }
    })?;
    let warning = (!base.is_standard()).then(|| {
        format!(
            "normalized pair g={}, e={:?}, f={:?} violates the conventions g >= 0 and e1 >= 1",
            base.g, base.e, base.f
        )
    });
    Ok(Normalized { base, section, warning })
}

impl<E: Clone + PartialEq> NormalFormCertificate<E> {
    pub fn to_json<F: ScalarCodec<E = E>>(&self, f: &F) -> Value {
        let (kind, i, j, k) = match self.kind {
            NormalFormKind::TypeK(k) => ("K", Value::Null, Value::Null, k),
            NormalFormKind::TypeIJK(i, j, k) => ("IJK", json!(i), json!(j), k),
        };
        json!({
            "kind": kind,
            "I": i,
            "J": j,
            "K": k,
            "p": [f.encode(self.p.s()), f.encode(self.p.t())],
            "witness": self.witness.to_json(f),
        })
    }

    pub fn from_json<F: ScalarCodec<E = E>>(f: &F, v: &Value) -> Result<Self> {
        let idx = |key: &str| -> Result<usize> {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Parse(format!("certificate needs an integer {key:?}")))
        };
        let kind = match v.get("kind").and_then(Value::as_str) {
            Some("K") => NormalFormKind::TypeK(idx("K")?),
            Some("IJK") => NormalFormKind::TypeIJK(idx("I")?, idx("J")?, idx("K")?),
            _ => return Err(Error::Parse("certificate kind must be \"K\" or \"IJK\"".into())),
        };
        if !kind.valid() {
            return Err(Error::InvalidCertificate(format!("indices out of range in {kind:?}")));
        }
        let p = v
            .get("p")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse("certificate point must be [s, t]".into()))?;
        let p = P1Point::new(f, f.decode(&p[0])?, f.decode(&p[1])?)?;
        let witness = GroupElement::from_json(f, v.get("witness").unwrap_or(&Value::Null))?;
        Ok(NormalFormCertificate { kind, p, witness })
    }
}
