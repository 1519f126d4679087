//! Quadruples of alternating 5x5 matrices of binary forms, the group
//! action on them, and the five sub-Pfaffian quadrics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::bundles::{BundlePair, PAIRS};
use crate::error::{Error, Result};
use crate::exactalg::codec::{form_from_json, form_to_json, FieldSpec, ScalarCodec};
use crate::exactalg::linalg::Mat;
use crate::exactalg::ring::{self, FormRing, RingOps};
use crate::exactalg::{BinaryForm, ExtField, FieldOps, FiniteFieldOps, P1Point, PrimeField, Rationals};

/// Monomials x_a x_b (a <= b, 0-based) indexing quadric coefficients.
pub const QUAD_MONOMIALS: [(usize, usize); 10] =
    [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

pub fn quad_index(a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    QUAD_MONOMIALS.iter().position(|&m| m == (a, b)).unwrap()
}

pub(crate) fn pair_index(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&p| p == (i, j)).expect("1 <= i < j <= 5")
}

/// Default half-width of the integer box used when sampling over Q.
pub const RATIONAL_SAMPLE_BOUND: i64 = 50;

/// Fields that can produce uniformly random coefficients.
pub trait SampleScalar: FieldOps {
    fn sample<R: Rng>(&self, rng: &mut R, bound: i64) -> Self::E;
}

impl SampleScalar for Rationals {
    fn sample<R: Rng>(&self, rng: &mut R, bound: i64) -> Self::E {
        self.from_i64(rng.gen_range(-bound..=bound))
    }
}

impl SampleScalar for PrimeField {
    fn sample<R: Rng>(&self, rng: &mut R, _bound: i64) -> u64 {
        self.random(rng)
    }
}

impl SampleScalar for ExtField {
    fn sample<R: Rng>(&self, rng: &mut R, _bound: i64) -> Self::E {
        self.random(rng)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section<F: FieldOps> {
    base: BundlePair,
    field: F,
    /// a_ij^(k) at index (k-1)*10 + pair_index(i, j)
    entries: Vec<BinaryForm<F::E>>,
}

impl<F: FieldOps> Section<F> {
    pub fn zero(field: F, base: BundlePair) -> Self {
        Section { base, field, entries: vec![BinaryForm::zero(); 40] }
    }

    /// Builds a section from a_ij^(k) given for i < j, checking degrees.
    pub fn from_fn(
        field: F,
        base: BundlePair,
        mut a: impl FnMut(usize, usize, usize) -> BinaryForm<F::E>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(40);
        for k in 1..=4 {
            for &(i, j) in &PAIRS {
                entries.push(a(k, i, j));
            }
        }
        let s = Section { base, field, entries };
        s.validate()?;
        Ok(s)
    }

    pub fn base(&self) -> &BundlePair {
        &self.base
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// The stored entry a_ij^(k) for i < j.
    pub fn entry(&self, k: usize, i: usize, j: usize) -> &BinaryForm<F::E> {
        &self.entries[(k - 1) * 10 + pair_index(i, j)]
    }

    /// a_ij^(k) for any i, j, using antisymmetry.
    pub fn a(&self, k: usize, i: usize, j: usize) -> BinaryForm<F::E> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.entry(k, i, j).clone(),
            std::cmp::Ordering::Greater => self.entry(k, j, i).neg(&self.field),
            std::cmp::Ordering::Equal => BinaryForm::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BinaryForm::is_zero)
    }

    /// Every entry is zero or of degree exactly d_ij^(k).
    pub fn validate(&self) -> Result<()> {
        if self.entries.len() != 40 {
            return Err(Error::InvalidSection("a section has 40 entries".into()));
        }
        for k in 1..=4 {
            for &(i, j) in &PAIRS {
                let form = self.entry(k, i, j);
                let d = self.base.d(i, j, k);
                if !form.is_zero() && form.deg() != d {
                    return Err(Error::InvalidSection(format!(
                        "a_{i}{j}^({k}) has degree {} but d = {d}",
                        form.deg()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Same data with coefficients pushed through a field embedding.
    pub fn lift<G: FieldOps>(&self, field: G, phi: impl Fn(&F::E) -> G::E) -> Section<G> {
        Section {
            base: self.base.clone(),
            field,
            entries: self.entries.iter().map(|e| e.map(&phi)).collect(),
        }
    }

    /// Entry-wise evaluation at p: four constant alternating matrices.
    pub fn specialize_fiber(&self, p: &P1Point<F::E>) -> [Mat<F::E>; 4] {
        let f = &self.field;
        std::array::from_fn(|k| {
            let mut m = vec![vec![f.zero(); 5]; 5];
            for &(i, j) in &PAIRS {
                let v = self.entry(k + 1, i, j).eval(f, p);
                m[j - 1][i - 1] = f.neg(&v);
                m[i - 1][j - 1] = v;
            }
            m
        })
    }

    /// Values and first uniformizer derivatives of all entries at p.
    pub fn jet_at(&self, p: &P1Point<F::E>) -> ([Mat<F::E>; 4], [Mat<F::E>; 4]) {
        let f = &self.field;
        let mut val: [Mat<F::E>; 4] = std::array::from_fn(|_| vec![vec![f.zero(); 5]; 5]);
        let mut der = val.clone();
        for k in 0..4 {
            for &(i, j) in &PAIRS {
                let (v, d) = self.entry(k + 1, i, j).eval_with_derivative(f, p);
                val[k][j - 1][i - 1] = f.neg(&v);
                val[k][i - 1][j - 1] = v;
                der[k][j - 1][i - 1] = f.neg(&d);
                der[k][i - 1][j - 1] = d;
            }
        }
        (val, der)
    }

    pub fn pfaffians(&self) -> PfaffianSystem<F::E> {
        let r = FormRing(&self.field);
        PfaffianSystem { quads: pfaffian_quadrics(&r, |k, i, j| self.a(k + 1, i + 1, j + 1)) }
    }

    pub(crate) fn set_entry(&mut self, k: usize, i: usize, j: usize, form: BinaryForm<F::E>) {
        self.entries[(k - 1) * 10 + pair_index(i, j)] = form;
    }

}

/// The five quadrics Q_l = (-1)^(l+1) Pf(minor of A(x) omitting row and
/// column l), as coefficient vectors over `QUAD_MONOMIALS`. `a(k, i, j)`
/// is 0-based and must be antisymmetric in (i, j).
pub fn pfaffian_quadrics<R: RingOps>(r: &R, a: impl Fn(usize, usize, usize) -> R::T) -> Vec<Vec<R::T>> {
    let lin = |i: usize, j: usize| -> Vec<R::T> { (0..4).map(|k| a(k, i, j)).collect() };
    (0..5)
        .map(|l| {
            let idx: Vec<usize> = (0..5).filter(|&x| x != l).collect();
            let mut q = vec![r.r_zero(); 10];
            let terms = [((0, 1), (2, 3), false), ((0, 2), (1, 3), true), ((0, 3), (1, 2), false)];
            for ((p1, p2), (p3, p4), minus) in terms {
                let u = lin(idx[p1], idx[p2]);
                let v = lin(idx[p3], idx[p4]);
                for x in 0..4 {
                    for y in 0..4 {
                        if r.r_is_zero(&u[x]) || r.r_is_zero(&v[y]) {
                            continue;
                        }
                        let prod = r.r_mul(&u[x], &v[y]);
                        let m = quad_index(x, y);
                        q[m] = if minus ^ (l % 2 == 1) {
                            r.r_sub(&q[m], &prod)
                        } else {
                            r.r_add(&q[m], &prod)
                        };
                    }
                }
            }
            q
        })
        .collect()
}

/// Q_1..Q_5 with binary-form coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianSystem<E> {
    pub quads: Vec<Vec<BinaryForm<E>>>,
}

impl<E: Clone + PartialEq> PfaffianSystem<E> {
    pub fn coefficient(&self, l: usize, a: usize, b: usize) -> &BinaryForm<E> {
        &self.quads[l - 1][quad_index(a - 1, b - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.quads.iter().flatten().all(BinaryForm::is_zero)
    }
}

/// An element (g4, g5) of the structure group: entry (k, l) of g4 is a
/// form of degree e_k - e_l, entry (i, j) of g5 one of degree f_i - f_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement<E> {
    pub g4: Vec<Vec<BinaryForm<E>>>,
    pub g5: Vec<Vec<BinaryForm<E>>>,
}

impl<E: Clone + PartialEq> GroupElement<E> {
    pub fn identity<F: FieldOps<E = E>>(f: &F) -> Self {
        let id = |n: usize| -> Vec<Vec<BinaryForm<E>>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { BinaryForm::constant(f, f.one()) } else { BinaryForm::zero() })
                        .collect()
                })
                .collect()
        };
        GroupElement { g4: id(4), g5: id(5) }
    }

    /// Constant matrices; the caller is responsible for degree validity.
    pub fn constant<F: FieldOps<E = E>>(f: &F, g4: &Mat<E>, g5: &Mat<E>) -> Self {
        let lift = |m: &Mat<E>| -> Vec<Vec<BinaryForm<E>>> {
            m.iter().map(|row| row.iter().map(|c| BinaryForm::constant(f, c.clone())).collect()).collect()
        };
        GroupElement { g4: lift(g4), g5: lift(g5) }
    }

    /// Identity plus c at entry (k, l) of g4, k > l, realised as
    /// c * w^(e_k - e_l) with w a linear form equal to 1 at p.
    pub fn g4_shear<F: FieldOps<E = E>>(f: &F, bp: &BundlePair, p: &P1Point<E>, k: usize, l: usize, c: E) -> Self {
        let mut g = Self::identity(f);
        let w = BinaryForm::unit_at(f, p);
        g.g4[k - 1][l - 1] = w.pow(f, (bp.e[k - 1] - bp.e[l - 1]) as u32).scale(f, &c);
        g
    }

    /// Identity plus c at entry (i, j) of g5, i > j, lifted as in `g4_shear`.
    pub fn g5_shear<F: FieldOps<E = E>>(f: &F, bp: &BundlePair, p: &P1Point<E>, i: usize, j: usize, c: E) -> Self {
        let mut g = Self::identity(f);
        let w = BinaryForm::unit_at(f, p);
        g.g5[i - 1][j - 1] = w.pow(f, (bp.f[i - 1] - bp.f[j - 1]) as u32).scale(f, &c);
        g
    }

    /// The element acting as `other` followed by `self`.
    pub fn compose<F: FieldOps<E = E>>(&self, f: &F, other: &Self) -> Self {
        let r = FormRing(f);
        GroupElement { g4: ring::mat_mul(&r, &self.g4, &other.g4), g5: ring::mat_mul(&r, &self.g5, &other.g5) }
    }

    /// Value of both matrices at p.
    pub fn eval_at<F: FieldOps<E = E>>(&self, f: &F, p: &P1Point<E>) -> (Mat<E>, Mat<E>) {
        let ev = |m: &Vec<Vec<BinaryForm<E>>>| -> Mat<E> {
            m.iter().map(|row| row.iter().map(|x| x.eval(f, p)).collect()).collect()
        };
        (ev(&self.g4), ev(&self.g5))
    }

    /// Checks entry degrees against `bp`, constancy of both determinants
    /// and det(g4)^2 = det(g5). Returns det(g4).
    pub fn validate<F: FieldOps<E = E>>(&self, f: &F, bp: &BundlePair) -> Result<E> {
        let bad = |m: String| Err(Error::InvalidGroupElement(m));
        if self.g4.len() != 4 || self.g4.iter().any(|r| r.len() != 4) {
            return bad("g4 must be 4x4".into());
        }
        if self.g5.len() != 5 || self.g5.iter().any(|r| r.len() != 5) {
            return bad("g5 must be 5x5".into());
        }
        for k in 0..4 {
            for l in 0..4 {
                let x = &self.g4[k][l];
                if !x.is_zero() && x.deg() != bp.e[k] - bp.e[l] {
                    return bad(format!("g4[{}][{}] has degree {}, expected {}", k + 1, l + 1, x.deg(), bp.e[k] - bp.e[l]));
                }
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                let x = &self.g5[i][j];
                if !x.is_zero() && x.deg() != bp.f[i] - bp.f[j] {
                    return bad(format!("g5[{}][{}] has degree {}, expected {}", i + 1, j + 1, x.deg(), bp.f[i] - bp.f[j]));
                }
            }
        }
        let r = FormRing(f);
        let d4 = ring::det(&r, &self.g4);
        let d5 = ring::det(&r, &self.g5);
        let constant = |d: &BinaryForm<E>| -> Option<E> {
            (d.deg() == 0).then(|| d.coeffs()[0].clone())
        };
        let (Some(c4), Some(c5)) = (constant(&d4), constant(&d5)) else {
            return bad("determinants must be nonzero constants".into());
        };
        if f.mul(&c4, &c4) != c5 {
            return bad("det(g4)^2 differs from det(g5)".into());
        }
        Ok(c4)
    }
}

/// A_k -> (1/det g4) sum_l g4[k][l] g5 A_l g5^t.
pub fn act<F: FieldOps>(g: &GroupElement<F::E>, sec: &Section<F>) -> Result<Section<F>> {
    let f = sec.field();
    let bp = sec.base();
    let det4 = g.validate(f, bp)?;
    let inv = f.inv(&det4).expect("validated nonzero");
    let r = FormRing(f);
    let conj: Vec<Mat<BinaryForm<F::E>>> = (1..=4)
        .map(|l| {
            let a: Mat<BinaryForm<F::E>> =
                (1..=5).map(|i| (1..=5).map(|j| sec.a(l, i, j)).collect()).collect();
            let left = ring::mat_mul(&r, &g.g5, &a);
            let g5t: Mat<BinaryForm<F::E>> =
                (0..5).map(|i| (0..5).map(|j| g.g5[j][i].clone()).collect()).collect();
            ring::mat_mul(&r, &left, &g5t)
        })
        .collect();
    let mut entries = Vec::with_capacity(40);
    for k in 0..4 {
        for &(i, j) in &PAIRS {
            let mut acc = BinaryForm::zero();
            for (l, c) in conj.iter().enumerate() {
                let gk = &g.g4[k][l];
                if gk.is_zero() || c[i - 1][j - 1].is_zero() {
                    continue;
                }
                let term = gk.mul(f, &c[i - 1][j - 1]);
                acc = acc.add(f, &term).map_err(|e| Error::InvalidGroupElement(e.to_string()))?;
            }
            entries.push(acc.scale(f, &inv));
        }
    }
    let out = Section { base: bp.clone(), field: f.clone(), entries };
    out.validate()
        .map_err(|e| Error::InvalidGroupElement(format!("action broke the degree matrix: {e}")))?;
    Ok(out)
}

/// Every admissible coefficient drawn independently from `rng`.
pub fn sample_section_with<F: SampleScalar, R: Rng>(bp: &BundlePair, field: &F, rng: &mut R, bound: i64) -> Section<F> {
    let mut entries = Vec::with_capacity(40);
    for k in 1..=4 {
        for &(i, j) in &PAIRS {
            let d = bp.d(i, j, k);
            if d < 0 {
                entries.push(BinaryForm::zero());
                continue;
            }
            let coeffs = (0..=d).map(|_| field.sample(rng, bound)).collect();
            entries.push(BinaryForm::new(field, d, coeffs).expect("length matches"));
        }
    }
    Section { base: bp.clone(), field: field.clone(), entries }
}

/// Random pair of lower unitriangular matrices with entries of the
/// admissible degrees.
pub fn random_unipotent<F: SampleScalar, R: Rng>(bp: &BundlePair, field: &F, rng: &mut R, bound: i64) -> GroupElement<F::E> {
    let mut g = GroupElement::identity(field);
    let mut fill = |m: &mut Vec<Vec<BinaryForm<F::E>>>, degs: &[i64]| {
        for a in 0..degs.len() {
            for b in 0..a {
                let d = degs[a] - degs[b];
                let coeffs = (0..=d).map(|_| field.sample(rng, bound)).collect();
                m[a][b] = BinaryForm::new(field, d, coeffs).expect("length matches");
            }
        }
    };
    fill(&mut g.g4, &bp.e);
    fill(&mut g.g5, &bp.f);
    g
}

/// Reproducible random section from a 64-bit seed.
pub fn sample_section<F: SampleScalar>(bp: &BundlePair, field: &F, seed: u64) -> Section<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_section_with(bp, field, &mut rng, RATIONAL_SAMPLE_BOUND)
}

impl<F: ScalarCodec> Section<F> {
    pub fn to_json(&self) -> Value {
        let mut a = Map::new();
        for k in 1..=4 {
            for &(i, j) in &PAIRS {
                let form = self.entry(k, i, j);
                if !form.is_zero() {
                    a.insert(format!("{k},{i},{j}"), form_to_json(&self.field, form));
                }
            }
        }
        json!({ "base": self.base, "field": self.field.spec().to_json(), "a": a })
    }

    pub fn from_json_with(field: F, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("a section must be an object".into()))?;
        let base: BundlePair = serde_json::from_value(obj.get("base").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Parse(format!("base: {e}")))?;
        if let Some(fs) = obj.get("field") {
            if FieldSpec::from_json(fs)? != field.spec() {
                return Err(Error::FieldMismatch("section field differs from context".into()));
            }
        }
        let mut sec = Section::zero(field, base);
        if let Some(a) = obj.get("a") {
            let a = a.as_object().ok_or_else(|| Error::Parse("\"a\" must be an object".into()))?;
            for (key, val) in a {
                let idx: Vec<usize> = key
                    .split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse(format!("bad entry key {key:?}")))?;
                let [k, i, j] = idx[..] else {
                    return Err(Error::Parse(format!("bad entry key {key:?}")));
                };
                if !(1..=4).contains(&k) || !(1 <= i && i < j && j <= 5) {
                    return Err(Error::Parse(format!("entry key {key:?} out of range")));
                }
                sec.set_entry(k, i, j, form_from_json(&sec.field, val)?);
            }
        }
        sec.validate()?;
        Ok(sec)
    }
}

impl<E: Clone + PartialEq> GroupElement<E> {
    pub fn to_json<F: ScalarCodec<E = E>>(&self, f: &F) -> Value {
        let enc = |m: &Vec<Vec<BinaryForm<E>>>| -> Value {
            Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|x| form_to_json(f, x)).collect())).collect())
        };
        json!({ "g4": enc(&self.g4), "g5": enc(&self.g5) })
    }

    pub fn from_json<F: ScalarCodec<E = E>>(f: &F, v: &Value) -> Result<Self> {
        let dec = |key: &str, n: usize| -> Result<Vec<Vec<BinaryForm<E>>>> {
            let rows = v
                .get(key)
                .and_then(Value::as_array)
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::Parse(format!("{key} must be a {n}x{n} array")))?;
            rows.iter()
                .map(|row| {
                    let row = row
                        .as_array()
                        .filter(|r| r.len() == n)
                        .ok_or_else(|| Error::Parse(format!("{key} rows must have length {n}")))?;
                    row.iter().map(|x| form_from_json(f, x)).collect()
                })
                .collect()
        };
        Ok(GroupElement { g4: dec("g4", 4)?, g5: dec("g5", 5)? })
    }
}

/// A section over either serialized field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySection {
    Rational(Section<Rationals>),
    Prime(Section<PrimeField>),
}

impl AnySection {
    pub fn from_json(v: &Value) -> Result<Self> {
        let spec = FieldSpec::from_json(v.get("field").unwrap_or(&Value::Null))?;
        match spec {
            FieldSpec::Rational => Ok(AnySection::Rational(Section::from_json_with(Rationals, v)?)),
            FieldSpec::Prime(p) => Ok(AnySection::Prime(Section::from_json_with(PrimeField::new(p)?, v)?)),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnySection::Rational(s) => s.to_json(),
            AnySection::Prime(s) => s.to_json(),
        }
    }

    pub fn base(&self) -> &BundlePair {
        match self {
            AnySection::Rational(s) => s.base(),
            AnySection::Prime(s) => s.base(),
        }
    }
}
