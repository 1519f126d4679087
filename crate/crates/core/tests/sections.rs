mod common;

use common::{det, pfaffian_identity_holds, Poly};
use quintic::bundles::{admissible_pairs, BundlePair, PAIRS};
use quintic::exactalg::linalg::{self, Mat};
use quintic::exactalg::{BinaryForm, FieldOps, FiniteFieldOps, P1Point, PrimeField, Rationals};
use quintic::fiber::eval_quadric;
use quintic::sections::*;
use quintic::singularity::{quadrics_at, singular_scan};
use quintic::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fin() -> BundlePair {
    BundlePair::new(6, [1, 2, 3, 4], [2, 3, 4, 5, 6]).unwrap()
}

fn blocks() -> BundlePair {
    BundlePair::new(4, [2, 2, 2, 2], [3, 3, 3, 3, 4]).unwrap()
}

#[test]
fn sampling_is_reproducible_and_respects_degrees() {
    let fp = PrimeField::new(101).unwrap();
    for bp in [fin(), blocks()] {
        assert_eq!(sample_section(&bp, &fp, 5), sample_section(&bp, &fp, 5));
        assert_eq!(sample_section(&bp, &Rationals, 5), sample_section(&bp, &Rationals, 5));
        assert_ne!(sample_section(&bp, &fp, 5), sample_section(&bp, &fp, 6));
        for seed in 0..20 {
            let s = sample_section(&bp, &fp, seed);
            s.validate().unwrap();
            for k in 1..=4 {
                for &(i, j) in &PAIRS {
                    let a = s.entry(k, i, j);
                    let d = bp.d(i, j, k);
                    if d < 0 {
                        assert!(a.is_zero());
                    } else if !a.is_zero() {
                        assert_eq!(a.coeffs().len() as i64, d + 1);
                    }
                }
            }
        }
    }
    // over Q the coefficients stay inside the sampling box
    let s = sample_section(&fin(), &Rationals, 3);
    for k in 1..=4 {
        for &(i, j) in &PAIRS {
            for c in s.entry(k, i, j).coeffs() {
                assert!(c.is_integer() && c.numer().magnitude() <= &RATIONAL_SAMPLE_BOUND.unsigned_abs().into());
            }
        }
    }
}

#[test]
fn wrong_degrees_are_rejected() {
    let fp = PrimeField::new(101).unwrap();
    let r = Section::from_fn(fp, fin(), |k, i, j| {
        if (k, i, j) == (1, 1, 5) {
            BinaryForm::constant(&fp, 1)
        } else {
            BinaryForm::zero()
        }
    });
    assert!(matches!(r, Err(Error::InvalidSection(_))));
}

#[test]
fn zero_section_has_zero_quadrics_and_fibers() {
    let fp = PrimeField::new(101).unwrap();
    let z = Section::zero(fp, fin());
    assert!(z.pfaffians().is_zero());
    for t in [0, 7, 100] {
        for m in z.specialize_fiber(&P1Point::affine(&fp, t)) {
            assert!(m.iter().flatten().all(|&c| c == 0));
        }
    }
}

#[test]
fn pfaffian_identity_on_random_sections() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pairs: Vec<BundlePair> = (0..=4).flat_map(admissible_pairs).collect();
    let fp = PrimeField::new(10007).unwrap();
    for n in 0..50 {
        let bp = &pairs[rng.gen_range(0..pairs.len())];
        let seed = rng.gen();
        let ok = if n % 2 == 0 {
            pfaffian_identity_holds(&sample_section(bp, &fp, seed))
        } else {
            pfaffian_identity_holds(&sample_section(bp, &Rationals, seed))
        };
        assert!(ok, "{bp:?} seed {seed}");
    }
}

/// Q_l for a pencil of constant alternating matrices, as polynomials in x.
fn constant_quadrics(f: &PrimeField, a: &[Mat<u64>; 4]) -> Vec<Poly<u64>> {
    pfaffian_quadrics(f, |k, i, j| a[k][i][j])
        .into_iter()
        .map(|q| {
            let mut out = Poly::zero();
            for (n, &(x, y)) in QUAD_MONOMIALS.iter().enumerate() {
                let mut m = [0u32; 6];
                m[2 + x] += 1;
                m[2 + y] += 1;
                out = out.add(f, &Poly(std::iter::once((m, q[n])).filter(|(_, c)| *c != 0).collect()));
            }
            out
        })
        .collect()
}

fn pencil_entry(f: &PrimeField, a: &[Mat<u64>; 4], i: usize, j: usize) -> Poly<u64> {
    Poly(
        (0..4)
            .filter(|&k| a[k][i][j] != 0)
            .map(|k| {
                let mut m = [0u32; 6];
                m[2 + k] = 1;
                (m, a[k][i][j])
            })
            .collect(),
    )
    .add(f, &Poly::zero())
}

fn random_alternating<R: Rng>(f: &PrimeField, rng: &mut R) -> Mat<u64> {
    let mut m = vec![vec![0; 5]; 5];
    for &(i, j) in &PAIRS {
        let v = f.random(rng);
        m[i - 1][j - 1] = v;
        m[j - 1][i - 1] = f.neg(&v);
    }
    m
}

#[test]
fn pfaffian_identity_on_constant_matrices() {
    let f = PrimeField::new(107).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let a: [Mat<u64>; 4] = std::array::from_fn(|_| random_alternating(&f, &mut rng));
        let qs = constant_quadrics(&f, &a);
        for (l, q) in qs.iter().enumerate() {
            let idx: Vec<usize> = (0..5).filter(|&x| x != l).collect();
            let minor: Vec<Vec<Poly<u64>>> =
                idx.iter().map(|&i| idx.iter().map(|&j| pencil_entry(&f, &a, i, j)).collect()).collect();
            assert_eq!(q.mul(&f, q), det(&f, &minor));
        }
    }
}

fn wedge(f: &PrimeField, v: &[u64], w: &[u64]) -> Mat<u64> {
    (0..5).map(|i| (0..5).map(|j| f.sub(&f.mul(&v[i], &w[j]), &f.mul(&v[j], &w[i]))).collect()).collect()
}

#[test]
fn rank_two_pencils_have_vanishing_quadrics() {
    let f = PrimeField::new(107).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let vec5 = |rng: &mut ChaCha8Rng| -> Vec<u64> { (0..5).map(|_| f.random(rng)).collect() };
    for _ in 0..20 {
        // A(x) = v ^ (sum x_k w_k) has rank at most 2 for every x
        let v = vec5(&mut rng);
        let a: [Mat<u64>; 4] = std::array::from_fn(|_| wedge(&f, &v, &vec5(&mut rng)));
        assert!(constant_quadrics(&f, &a).iter().all(|q| q.0.is_empty()));
    }
    // with unrelated rank-2 matrices the pencil has full rank and Q does not vanish
    let a: [Mat<u64>; 4] = std::array::from_fn(|_| wedge(&f, &vec5(&mut rng), &vec5(&mut rng)));
    assert!(constant_quadrics(&f, &a).iter().any(|q| !q.0.is_empty()));
}

#[test]
fn identity_acts_trivially() {
    let fp = PrimeField::new(101).unwrap();
    for seed in 0..5 {
        let s = sample_section(&fin(), &fp, seed);
        assert_eq!(act(&GroupElement::identity(&fp), &s).unwrap(), s);
        let q = sample_section(&fin(), &Rationals, seed);
        assert_eq!(act(&GroupElement::identity(&Rationals), &q).unwrap(), q);
    }
}

/// A random constant element for `blocks()`: g5 is block diagonal with a
/// 4x4 block and a scalar chosen so that det(g4)^2 = det(g5).
fn random_constant<F: FieldOps, R: Rng>(f: &F, rng: &mut R, draw: impl Fn(&mut R) -> F::E) -> (Mat<F::E>, Mat<F::E>) {
    loop {
        let g4: Mat<F::E> = (0..4).map(|_| (0..4).map(|_| draw(rng)).collect()).collect();
        let b: Mat<F::E> = (0..4).map(|_| (0..4).map(|_| draw(rng)).collect()).collect();
        let (d4, db) = (linalg::det(f, &g4), linalg::det(f, &b));
        if f.is_zero(&d4) || f.is_zero(&db) {
            continue;
        }
        let c = f.mul(&f.mul(&d4, &d4), &f.inv(&db).unwrap());
        let mut g5 = linalg::zeros(f, 5, 5);
        for i in 0..4 {
            g5[i][..4].clone_from_slice(&b[i]);
        }
        g5[4][4] = c;
        return (g4, g5);
    }
}

#[test]
fn constant_element_then_its_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let fp = PrimeField::new(10007).unwrap();
    for seed in 0..10 {
        let s = sample_section(&blocks(), &fp, seed);
        let (g4, g5) = random_constant(&fp, &mut rng, |r| fp.random(r));
        let g = GroupElement::constant(&fp, &g4, &g5);
        let h = GroupElement::constant(&fp, &linalg::inverse(&fp, &g4).unwrap(), &linalg::inverse(&fp, &g5).unwrap());
        let moved = act(&g, &s).unwrap();
        assert_ne!(moved, s);
        assert_eq!(act(&h, &moved).unwrap(), s);
        // composition agrees with acting twice
        assert_eq!(act(&h.compose(&fp, &g), &s).unwrap(), s);
    }
    let q = Rationals;
    let s = sample_section(&blocks(), &q, 1);
    let (g4, g5) = random_constant(&q, &mut rng, |r| q.from_i64(r.gen_range(-3..=3)));
    let g = GroupElement::constant(&q, &g4, &g5);
    let h = GroupElement::constant(&q, &linalg::inverse(&q, &g4).unwrap(), &linalg::inverse(&q, &g5).unwrap());
    assert_eq!(act(&h, &act(&g, &s).unwrap()).unwrap(), s);
}

#[test]
fn malformed_elements_are_rejected() {
    let fp = PrimeField::new(101).unwrap();
    let s = sample_section(&blocks(), &fp, 0);
    let id4 = linalg::identity(&fp, 4);
    let mut g5 = linalg::identity(&fp, 5);
    g5[0][0] = 2;
    // det(g4)^2 = 1 but det(g5) = 2
    let g = GroupElement::constant(&fp, &id4, &g5);
    assert!(matches!(act(&g, &s), Err(Error::InvalidGroupElement(_))));
    // a constant where f_5 - f_1 = 1 demands a linear form
    let mut g5 = linalg::identity(&fp, 5);
    g5[4][0] = 3;
    let g = GroupElement::constant(&fp, &id4, &g5);
    assert!(matches!(act(&g, &s), Err(Error::InvalidGroupElement(_))));
}

#[test]
fn permutation_relabels_entries() {
    // g4 swaps A_1 and A_2 (det -1); g5 sends e_1 -> -e_2, e_2 -> e_1 (det 1)
    let fp = PrimeField::new(10007).unwrap();
    let mut g4 = linalg::zeros(&fp, 4, 4);
    g4[0][1] = 1;
    g4[1][0] = 1;
    g4[2][2] = 1;
    g4[3][3] = 1;
    let mut g5 = linalg::identity(&fp, 5);
    g5[0][0] = 0;
    g5[1][1] = 0;
    g5[0][1] = 1;
    g5[1][0] = fp.neg(&1);
    let g = GroupElement::constant(&fp, &g4, &g5);
    let s = sample_section(&blocks(), &fp, 4);
    let t = act(&g, &s).unwrap();
    // (g5 A g5^t)_13 = A_23 and (g5 A g5^t)_23 = -A_13; the 1/det(g4) flips the sign
    assert_eq!(t.entry(1, 1, 3), &s.entry(2, 2, 3).neg(&fp));
    assert_eq!(t.entry(2, 2, 3), s.entry(1, 1, 3));
    assert_eq!(t.entry(3, 1, 2), &s.entry(3, 1, 2).neg(&fp));
    assert_eq!(t.entry(4, 4, 5), &s.entry(4, 4, 5).neg(&fp));
}

fn naive_eval(f: &PrimeField, form: &BinaryForm<u64>, s: u64, t: u64) -> u64 {
    let d = form.deg();
    let mut acc = 0;
    for (m, c) in form.coeffs().iter().enumerate() {
        let mono = f.mul(&f.pow(&t, m as u128), &f.pow(&s, (d as usize - m) as u128));
        acc = f.add(&acc, &f.mul(c, &mono));
    }
    acc
}

#[test]
fn specialize_fiber_matches_naive_evaluation() {
    let fp = PrimeField::new(101).unwrap();
    let s = sample_section(&fin(), &fp, 8);
    for (ps, pt) in [(1, 0), (1, 17), (1, 100), (0, 1)] {
        let mats = s.specialize_fiber(&P1Point::new(&fp, ps, pt).unwrap());
        for k in 1..=4 {
            for i in 1..=5 {
                for j in 1..=5 {
                    let want = naive_eval(&fp, &s.a(k, i, j), ps, pt);
                    assert_eq!(mats[k - 1][i - 1][j - 1], want, "({k},{i},{j}) at [{ps}:{pt}]");
                }
            }
        }
    }
}

#[test]
fn planted_root_of_a25_specializes_to_zero() {
    let fp = PrimeField::new(101).unwrap();
    let bp = BundlePair::new(4, [2, 2, 2, 2], [3, 3, 3, 3, 4]).unwrap();
    assert_eq!(bp.d(2, 5, 1), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let p = P1Point::affine(&fp, rng.gen_range(0..101));
        let base = sample_section(&bp, &fp, rng.gen());
        let rest = BinaryForm::constant(&fp, rng.gen_range(1..101));
        let planted = BinaryForm::uniformizer(&fp, &p).mul(&fp, &rest);
        let s = Section::from_fn(fp, bp.clone(), |k, i, j| {
            if (k, i, j) == (1, 2, 5) {
                planted.clone()
            } else {
                base.entry(k, i, j).clone()
            }
        })
        .unwrap();
        assert!(s.entry(1, 2, 5).roots_in_field(&fp).unwrap().iter().any(|(r, _)| *r == p));
        assert_eq!(s.specialize_fiber(&p)[0][1][4], 0);
        assert_eq!(s.specialize_fiber(&p)[0][4][1], 0);
    }
}

#[test]
fn specialization_is_equivariant() {
    let fp = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for bp in [fin(), blocks()] {
        for _ in 0..5 {
            let s = sample_section(&bp, &fp, rng.gen());
            let g = random_unipotent(&bp, &fp, &mut rng, 0);
            let moved = act(&g, &s).unwrap();
            let p = P1Point::affine(&fp, rng.gen_range(0..101));
            let (g4, g5) = g.eval_at(&fp, &p);
            let inv = fp.inv(&linalg::det(&fp, &g4)).unwrap();
            let conj: Vec<Mat<u64>> = s
                .specialize_fiber(&p)
                .iter()
                .map(|m| linalg::mul(&fp, &linalg::mul(&fp, &g5, m), &linalg::transpose(&g5)))
                .collect();
            for (k, got) in moved.specialize_fiber(&p).iter().enumerate() {
                let mut want = linalg::zeros(&fp, 5, 5);
                for (l, c) in conj.iter().enumerate() {
                    for i in 0..5 {
                        for j in 0..5 {
                            let v = fp.mul(&fp.mul(&g4[k][l], &c[i][j]), &inv);
                            want[i][j] = fp.add(&want[i][j], &v);
                        }
                    }
                }
                assert_eq!(got, &want);
            }
        }
    }
}

#[test]
fn action_moves_curve_points_by_g4() {
    // A'(x) is g5 A(g4^t x) g5^t / det g4, so y on the curve of sec gives
    // x = (g4^t)^-1 y on the curve of the moved section
    let fp = PrimeField::new(101).unwrap();
    let bp = BundlePair::new(0, [1, 1, 1, 1], [1, 1, 2, 2, 2]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let s = sample_section(&bp, &fp, 2);
    let g = random_unipotent(&bp, &fp, &mut rng, 0);
    let (g4c, g5c) = random_constant_prime(&fp, &mut rng);
    let g = g.compose(&fp, &GroupElement::constant(&fp, &g4c, &g5c));
    let moved = act(&g, &s).unwrap();
    let report = singular_scan(&s, 1).unwrap();
    let mut checked = 0;
    for sp in &report.points {
        let Some(fpnt) = sp.as_prime_point(&fp) else { continue };
        let (g4, _) = g.eval_at(&fp, &fpnt.p);
        let tinv = linalg::inverse(&fp, &linalg::transpose(&g4)).unwrap();
        let x = linalg::mat_vec(&fp, &tinv, &fpnt.x);
        for q in quadrics_at(&fp, &moved.pfaffians(), &fpnt.p) {
            assert_eq!(eval_quadric(&fp, &q, &x), 0);
        }
        checked += 1;
    }
    assert!(checked > 50, "{checked}");
}

/// Constant element for e = (1,1,1,1), f = (1,1,2,2,2): blocks of sizes 4 and 2 + 3.
fn random_constant_prime<R: Rng>(f: &PrimeField, rng: &mut R) -> (Mat<u64>, Mat<u64>) {
    loop {
        let g4: Mat<u64> = (0..4).map(|_| (0..4).map(|_| f.random(rng)).collect()).collect();
        let mut g5 = linalg::zeros(f, 5, 5);
        for i in 0..5 {
            for j in 0..5 {
                if (i < 2) == (j < 2) {
                    g5[i][j] = f.random(rng);
                }
            }
        }
        let d4 = linalg::det(f, &g4);
        let d5 = linalg::det(f, &g5);
        if d4 == 0 || d5 == 0 {
            continue;
        }
        let c = f.mul(&f.mul(&d4, &d4), &f.inv(&d5).unwrap());
        for j in 0..5 {
            g5[0][j] = f.mul(&g5[0][j], &c);
        }
        return (g4, g5);
    }
}

#[test]
fn json_round_trips() {
    let fp = PrimeField::new(101).unwrap();
    let s = sample_section(&fin(), &fp, 1);
    let v = s.to_json();
    assert_eq!(Section::from_json_with(fp, &v).unwrap(), s);
    assert_eq!(AnySection::from_json(&v).unwrap(), AnySection::Prime(s.clone()));
    // omitted keys are zero
    let n = v["a"].as_object().unwrap().len();
    assert!(n < 40);
    let q = sample_section(&fin(), &Rationals, 1);
    assert_eq!(AnySection::from_json(&q.to_json()).unwrap(), AnySection::Rational(q));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = random_unipotent(&fin(), &fp, &mut rng, 0);
    assert_eq!(GroupElement::from_json(&fp, &g.to_json(&fp)).unwrap(), g);
    // a wrong-degree entry and a bad key are rejected
    let mut bad = v.clone();
    bad["a"]["1,1,5"] = serde_json::json!({ "deg": 0, "p": 101, "coeffs": [1] });
    assert!(AnySection::from_json(&bad).is_err());
    let mut bad = v;
    bad["a"]["1,3,2"] = serde_json::json!({ "deg": 0, "p": 101, "coeffs": [1] });
    assert!(matches!(AnySection::from_json(&bad), Err(Error::Parse(_))));
}
