mod common;

use common::expected_base;
use quintic::bundles::BundlePair;
use quintic::exactalg::{BinaryForm, FieldOps, FiniteFieldOps, P1Point, PrimeField, Rationals};
use quintic::fiber::{eval_quadric, fiber_algebra};
use quintic::minimize::{
    is_normal_form, minimize_at, partial_normalize, plant_normal_form, NormalFormCertificate, NormalFormKind,
};
use quintic::sections::{act, random_unipotent, sample_section, GroupElement, Section};
use quintic::singularity::{quadrics_at, singular_scan, ScanStatus};
use quintic::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fin_pair() -> BundlePair {
    BundlePair::new(6, [1, 2, 3, 4], [2, 3, 4, 5, 6]).unwrap()
}

fn pairs() -> Vec<BundlePair> {
    vec![
        fin_pair(),
        BundlePair::new(4, [2, 2, 2, 2], [3, 3, 3, 3, 4]).unwrap(),
        BundlePair::new(2, [1, 1, 2, 2], [2, 2, 2, 3, 3]).unwrap(),
        BundlePair::new(0, [1, 1, 1, 1], [1, 1, 2, 2, 2]).unwrap(),
    ]
}

fn random_kind<R: Rng>(rng: &mut R) -> NormalFormKind {
    let k = rng.gen_range(1..=4);
    if rng.gen_bool(0.25) {
        return NormalFormKind::TypeK(k);
    }
    let i = rng.gen_range(1..=4);
    let j = rng.gen_range(i + 1..=5);
    NormalFormKind::TypeIJK(i, j, k)
}

fn random_point<R: Rng>(fq: &PrimeField, rng: &mut R) -> P1Point<u64> {
    let t = rng.gen_range(0..=fq.characteristic());
    if t == fq.characteristic() {
        P1Point::infinity(fq)
    } else {
        P1Point::affine(fq, t)
    }
}

fn assert_unipotent(f: &PrimeField, g: &GroupElement<u64>, p: &P1Point<u64>) {
    let (g4, g5) = g.eval_at(f, p);
    for m in [&g4, &g5] {
        for (a, row) in m.iter().enumerate() {
            assert_eq!(row[a], 1);
            assert!(row[a + 1..].iter().all(|&c| c == 0));
        }
    }
}

/// Away from p the normalization rescales x_K by u; every rational fiber
/// point of the normal form must map to a zero of the new quadrics.
fn check_points_transport(
    fq: &PrimeField,
    b: &Section<PrimeField>,
    new: &Section<PrimeField>,
    cert: &NormalFormCertificate<u64>,
    rng: &mut ChaCha8Rng,
) -> usize {
    let u = BinaryForm::uniformizer(fq, &cert.p);
    let (pb, pn) = (b.pfaffians(), new.pfaffians());
    let kk = cert.kind.k();
    // the permutation new index -> old index that re-sorts e
    let old_e: Vec<i64> = (0..4).map(|n| b.base().e[n] - if n + 1 == kk { 1 } else { 0 }).collect();
    let mut eperm: Vec<usize> = (0..4).collect();
    eperm.sort_by_key(|&n| (old_e[n], n));
    let mut checked = 0;
    for _ in 0..6 {
        let q = random_point(fq, rng);
        if q == cert.p {
            continue;
        }
        let quads = quadrics_at(fq, &pb, &q);
        let mut sample = || rng.gen_range(0..fq.characteristic());
        let Ok(alg) = fiber_algebra(fq, &quads, &mut sample) else { continue };
        let Some(pts) = alg.points(fq, &mut sample) else { continue };
        let uq = u.eval(fq, &q);
        let new_quads = quadrics_at(fq, &pn, &q);
        for (x, _) in &pts.rational {
            let mut y = x.clone();
            y[kk - 1] = fq.mul(&y[kk - 1], &uq);
            let z: Vec<u64> = eperm.iter().map(|&o| y[o]).collect();
            for qd in &new_quads {
                assert_eq!(eval_quadric(fq, qd, &z), 0);
            }
            checked += 1;
        }
    }
    checked
}

#[test]
fn zero_section_is_in_every_normal_form() {
    let fq = PrimeField::new(101).unwrap();
    let sec = Section::zero(fq, fin_pair());
    let p = P1Point::affine(&fq, 3);
    for kind in [NormalFormKind::TypeK(2), NormalFormKind::TypeIJK(1, 2, 1), NormalFormKind::TypeIJK(4, 5, 4)] {
        assert!(is_normal_form(&sec, &p, kind));
    }
}

#[test]
fn multiplying_a_slice_by_u_gives_type_k() {
    let fq = PrimeField::new(101).unwrap();
    let bp = BundlePair::new(4, [2, 2, 2, 2], [3, 3, 3, 3, 4]).unwrap();
    let p = P1Point::affine(&fq, 17);
    let u = BinaryForm::uniformizer(&fq, &p);
    let base = sample_section(&bp, &fq, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let sec = Section::from_fn(fq, bp.clone(), |k, i, j| {
        if k != 2 {
            return base.entry(k, i, j).clone();
        }
        let d = bp.d(i, j, k) - 1;
        if d < 0 {
            return BinaryForm::zero();
        }
        let c = (0..=d).map(|_| rng.gen_range(0..101)).collect();
        BinaryForm::new(&fq, d, c).unwrap().mul(&fq, &u)
    })
    .unwrap();
    assert!(is_normal_form(&sec, &p, NormalFormKind::TypeK(2)));
    assert!(!is_normal_form(&base, &p, NormalFormKind::TypeK(2)));
}

#[test]
fn generic_section_is_not_in_normal_form() {
    let fq = PrimeField::new(101).unwrap();
    let mut hits = 0;
    for seed in 0..20 {
        let sec = sample_section(&pairs()[1], &fq, seed);
        let p = P1Point::affine(&fq, seed % 101);
        hits += is_normal_form(&sec, &p, NormalFormKind::TypeIJK(1, 2, 1)) as usize;
    }
    assert_eq!(hits, 0);
}

#[test]
fn planted_normal_forms_round_trip() {
    let fq = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xabc);
    let mut transported = 0;
    for bp in pairs() {
        for _ in 0..12 {
            let kind = random_kind(&mut rng);
            let p = random_point(&fq, &mut rng);
            let planted = plant_normal_form(&bp, &fq, &p, kind, &mut rng, 0).unwrap();
            assert!(is_normal_form(&planted, &p, kind));
            let g = random_unipotent(&bp, &fq, &mut rng, 0);
            let sec = act(&g, &planted).unwrap();
            let cert = minimize_at(&sec, &p).unwrap_or_else(|e| panic!("{bp:?} {kind:?} {p:?}: {e}"));
            assert_unipotent(&fq, &cert.witness, &p);
            let b = act(&cert.witness, &sec).unwrap();
            assert!(is_normal_form(&b, &p, cert.kind));
            if let NormalFormKind::TypeK(k) = kind {
                assert_eq!(cert.kind, NormalFormKind::TypeK(k));
            }
            let n = partial_normalize(&sec, &cert).unwrap();
            let (g_new, e_new, f_new) = expected_base(&bp, cert.kind);
            assert_eq!((n.base.g, n.base.e.to_vec(), n.base.f.to_vec()), (g_new, e_new, f_new));
            n.section.validate().unwrap();
            assert_eq!(n.base.e.iter().sum::<i64>(), n.base.g + 4);
            assert_eq!(n.base.f.iter().sum::<i64>(), 2 * (n.base.g + 4));
            assert_eq!(n.warning.is_some(), !n.base.is_standard());
            transported += check_points_transport(&fq, &b, &n.section, &cert, &mut rng);
        }
    }
    assert!(transported > 20, "only {transported} fiber points transported");
}

#[test]
fn normalization_tables_on_the_fin_pair() {
    let fq = PrimeField::new(101).unwrap();
    let p = P1Point::affine(&fq, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let id = GroupElement::identity(&fq);

    let kind = NormalFormKind::TypeIJK(4, 5, 4);
    let sec = plant_normal_form(&fin_pair(), &fq, &p, kind, &mut rng, 0).unwrap();
    let n = partial_normalize(&sec, &NormalFormCertificate { kind, p: p.clone(), witness: id.clone() }).unwrap();
    assert_eq!((n.base.g, n.base.e, n.base.f), (5, [1, 2, 3, 3], [2, 3, 4, 4, 5]));
    assert!(n.warning.is_none());

    let kind = NormalFormKind::TypeK(4);
    let sec = plant_normal_form(&fin_pair(), &fq, &p, kind, &mut rng, 0).unwrap();
    let n = partial_normalize(&sec, &NormalFormCertificate { kind, p, witness: id }).unwrap();
    assert_eq!((n.base.g, n.base.e, n.base.f), (1, [0, 1, 2, 2], [0, 1, 2, 3, 4]));
    assert!(n.warning.is_some());
}

#[test]
fn wrong_certificate_is_rejected() {
    let fq = PrimeField::new(101).unwrap();
    let p = P1Point::affine(&fq, 0);
    let sec = sample_section(&fin_pair(), &fq, 3);
    let cert = NormalFormCertificate { kind: NormalFormKind::TypeK(4), p, witness: GroupElement::identity(&fq) };
    assert!(matches!(partial_normalize(&sec, &cert), Err(Error::InvalidCertificate(_))));
}

#[test]
fn smooth_section_is_not_singular() {
    let fq = PrimeField::new(101).unwrap();
    let bp = BundlePair::new(4, [2, 2, 2, 2], [3, 3, 3, 3, 4]).unwrap();
    let seed = (0..50)
        .find(|&s| singular_scan(&sample_section(&bp, &fq, s), 1).unwrap().status == ScanStatus::SmoothScanned)
        .unwrap();
    let sec = sample_section(&bp, &fq, seed);
    for t in [0, 1, 50] {
        assert_eq!(minimize_at(&sec, &P1Point::affine(&fq, t)), Err(Error::NotSingular));
    }
}

#[test]
fn scanned_singularities_minimize() {
    let fq = PrimeField::new(101).unwrap();
    let bp = BundlePair::new(0, [1, 1, 1, 1], [1, 1, 2, 2, 2]).unwrap();
    let mut done = 0;
    for seed in 0..200 {
        let sec = sample_section(&bp, &fq, seed);
        for sp in singular_scan(&sec, 1).unwrap().singular_points() {
            let Some(fp) = sp.as_prime_point(&fq) else { continue };
            let cert = minimize_at(&sec, &fp.p).unwrap();
            let n = partial_normalize(&sec, &cert).unwrap();
            assert_eq!(n.base.g, -1);
            done += 1;
        }
    }
    assert!(done > 0);
}

#[test]
fn rational_planted_section() {
    let q = Rationals;
    let bp = BundlePair::new(2, [1, 1, 2, 2], [2, 2, 2, 3, 3]).unwrap();
    let p = P1Point::affine(&q, q.from_i64(2));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let kind = NormalFormKind::TypeIJK(2, 4, 3);
    let planted = plant_normal_form(&bp, &q, &p, kind, &mut rng, 5).unwrap();
    let g = random_unipotent(&bp, &q, &mut rng, 3);
    let sec = act(&g, &planted).unwrap();
    let cert = minimize_at(&sec, &p).unwrap();
    assert!(is_normal_form(&act(&cert.witness, &sec).unwrap(), &p, cert.kind));
    let n = partial_normalize(&sec, &cert).unwrap();
    assert_eq!(n.base.g, 1);
}

#[test]
fn certificate_json_round_trip() {
    let fq = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let bp = fin_pair();
    let p = P1Point::infinity(&fq);
    let planted = plant_normal_form(&bp, &fq, &p, NormalFormKind::TypeIJK(1, 3, 2), &mut rng, 0).unwrap();
    let sec = act(&random_unipotent(&bp, &fq, &mut rng, 0), &planted).unwrap();
    let cert = minimize_at(&sec, &p).unwrap();
    let v = cert.to_json(&fq);
    assert_eq!(NormalFormCertificate::from_json(&fq, &v).unwrap(), cert);
    let mut bad = v.clone();
    bad["kind"] = "X".into();
    assert!(NormalFormCertificate::<u64>::from_json(&fq, &bad).is_err());
}

#[test]
fn fibers_that_are_not_finite_still_minimize() {
    // these normal forms force a curve into the fiber above p; after a
    // unipotent change of frame the singular point is no longer a
    // coordinate point
    let fq = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let cases = [
        (BundlePair::new(4, [1, 2, 2, 3], [2, 3, 3, 4, 4]).unwrap(), NormalFormKind::TypeIJK(1, 4, 4)),
        (BundlePair::new(3, [1, 2, 2, 2], [2, 2, 3, 3, 4]).unwrap(), NormalFormKind::TypeIJK(3, 4, 2)),
        (BundlePair::new(6, [2, 2, 3, 3], [3, 4, 4, 4, 5]).unwrap(), NormalFormKind::TypeIJK(1, 5, 3)),
    ];
    for (bp, kind) in cases {
        for _ in 0..5 {
            let p = random_point(&fq, &mut rng);
            let planted = plant_normal_form(&bp, &fq, &p, kind, &mut rng, 0).unwrap();
            let quads = quadrics_at(&fq, &planted.pfaffians(), &p);
            let mut sample = || rng.gen_range(0..101);
            assert!(fiber_algebra(&fq, &quads, &mut sample).is_err(), "{bp:?} {kind:?}");
            let sec = act(&random_unipotent(&bp, &fq, &mut rng, 0), &planted).unwrap();
            let cert = minimize_at(&sec, &p).unwrap_or_else(|e| panic!("{bp:?} {kind:?}: {e}"));
            assert!(is_normal_form(&act(&cert.witness, &sec).unwrap(), &p, cert.kind));
            let n = partial_normalize(&sec, &cert).unwrap();
            n.section.validate().unwrap();
            let (g, e, f) = expected_base(&bp, cert.kind);
            assert_eq!((n.base.g, n.base.e.to_vec(), n.base.f.to_vec()), (g, e, f));
        }
    }
}
