use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quintic::bundles::{pairs_in_box, theorem15_check};
use quintic::error::Error;
use quintic::polytopes::*;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn over(v: &[i64], den: i64) -> Vec<BigRational> {
    v.iter().map(|&x| r(x, den)).collect()
}

fn ints(v: &[i64]) -> Vec<BigRational> {
    over(v, 1)
}

#[test]
fn membership_examples() {
    let q = q_region();
    let fin = over(&[1, 2, 3, 4, 2, 3, 4, 5, 6], 10);
    assert_eq!(q.contains(&fin).unwrap(), vec![Piece::Q4]);
    // d_15^(1) = d_24^(1) = 0 but d_12^(4) = -1/4
    let balanced = over(&[1, 1, 1, 1, 1, 1, 2, 2, 2], 4);
    assert_eq!(q.contains(&balanced).unwrap(), vec![Piece::Q1, Piece::Q2]);
    // f1 below e1 breaks a linear condition
    let low = over(&[2, 2, 3, 3, 1, 4, 5, 5, 5], 10);
    assert!(q.contains(&low).unwrap().is_empty());
    assert!(matches!(q.contains(&fin[..8]), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn scrollar_polytope_examples() {
    let p = scrollar_polytope();
    assert!(p.contains(&over(&[1, 2, 3, 4], 10)).unwrap());
    assert!(p.contains(&over(&[1, 1, 1, 1], 4)).unwrap());
    // e2 > 2 e1
    assert!(!p.contains(&over(&[1, 3, 3, 3], 10)).unwrap());
    // e4 > e1 + e3
    assert!(!p.contains(&over(&[1, 1, 1, 3], 6)).unwrap());
}

#[test]
fn lattice_points_at_small_levels() {
    assert_eq!(p_points(4), vec![[1, 1, 1, 1]]);
    assert_eq!(p_points(5), vec![[1, 1, 1, 2]]);
    assert_eq!(p_points(8), vec![[1, 2, 2, 3], [2, 2, 2, 2]]);
    let q4 = q_points(&q_region(), 4);
    assert_eq!(q4.len(), 1);
    assert_eq!(q4[0].0, [1, 1, 1, 1]);
    assert_eq!(q4[0].1, [1, 1, 2, 2, 2]);
    let fin: Vec<_> = q_points(&q_region(), 10).into_iter().filter(|x| x.2 == vec![Piece::Q4]).collect();
    assert!(fin.iter().any(|x| x.0 == [1, 2, 3, 4] && x.1 == [2, 3, 4, 5, 6]));
}

#[test]
fn projection_of_q_is_p() {
    assert!(verify_projection(8));
    let report = projection_report(&q_region(), 8);
    let counts: Vec<(usize, usize)> = report.iter().map(|c| (c.p_points, c.q_points)).collect();
    assert_eq!(counts, vec![(1, 1), (1, 1), (1, 1), (1, 2), (2, 3), (2, 2), (3, 5), (2, 5), (3, 7)]);
}

#[test]
fn projection_fails_without_the_fin() {
    let report = projection_report(&q_region().without(Piece::Q4), 6);
    assert!(report[..5].iter().all(LevelCheck::ok));
    assert_eq!(report[5].missing, vec![[1, 2, 3, 3]]);
    assert_eq!(report[6].missing, vec![[1, 2, 3, 4]]);
    assert!(report.iter().all(|c| c.extra.is_empty()));
}

#[test]
fn theorem_conditions_match_region_membership() {
    let q = q_region();
    for g in 0..=8 {
        for bp in pairs_in_box(g, 0, 2 * (g + 4)) {
            let x = scaled_point(&bp.e, &bp.f).unwrap();
            let inside = !q.contains(&x).unwrap().is_empty();
            assert_eq!(theorem15_check(&bp).is_satisfied(), inside, "{bp:?}");
        }
    }
}

#[test]
fn hilbert_basis() {
    let gens = irreducible_generators();
    let expected: Vec<[i64; 4]> = GENERATOR_LIFTS.iter().map(|x| x.0).collect();
    assert_eq!(gens, expected);
    assert_eq!(irreducible_in_box(6), expected);
    assert!(!gens.contains(&[2, 2, 2, 2]));
    assert_eq!(decompose(&[2, 2, 2, 2]).unwrap(), [2, 0, 0, 0, 0, 0, 0]);
    assert!(matches!(decompose(&[1, 3, 3, 3]), Err(Error::NotInMonoid(_))));
    assert!(matches!(decompose(&[0, 0, 0, 0]), Err(Error::NotInMonoid(_))));
}

#[test]
fn generator_lifts_lie_in_q_prime() {
    for (e, f) in GENERATOR_LIFTS {
        assert!(in_q_prime(&e, &f).unwrap(), "{e:?} {f:?}");
        assert_eq!(lift_scrollar(&e).unwrap(), f);
    }
    assert_eq!(lift_scrollar(&[2, 2, 2, 3]).unwrap(), [3, 3, 4, 4, 4]);
}

#[test]
fn lifts_of_every_scrollar_point() {
    for level in 4..=16 {
        for e in p_points(level) {
            let f = lift_scrollar(&e).unwrap();
            assert_eq!(f.iter().sum::<i64>(), 2 * level);
            assert!(in_q_prime(&e, &f).unwrap(), "{e:?} {f:?}");
            let mult = decompose(&e).unwrap();
            assert_eq!(mult.iter().sum::<i64>(), e[0]);
        }
    }
}

fn square() -> LinearRegion {
    let mut s = LinearRegion::new(2);
    for c in 0..2 {
        let mut a = vec![BigRational::zero(); 2];
        a[c] = BigRational::one();
        s.push(a.clone(), Relation::Le, BigRational::one()).unwrap();
        s.push(a.iter().map(|x| -x).collect(), Relation::Le, BigRational::zero()).unwrap();
    }
    s
}

#[test]
fn vertices_of_small_polytopes() {
    let v = vertices(&square()).unwrap();
    assert_eq!(v, vec![ints(&[0, 0]), ints(&[0, 1]), ints(&[1, 0]), ints(&[1, 1])]);

    let mut simplex = LinearRegion::new(3);
    for c in 0..3 {
        let mut a = vec![BigRational::zero(); 3];
        a[c] = -BigRational::one();
        simplex.push(a, Relation::Le, BigRational::zero()).unwrap();
    }
    simplex.push(ints(&[1, 1, 1]), Relation::Eq, BigRational::one()).unwrap();
    assert_eq!(vertices(&simplex).unwrap().len(), 3);

    let mut half_line = LinearRegion::new(1);
    half_line.push(ints(&[-1]), Relation::Le, BigRational::zero()).unwrap();
    assert!(!is_bounded(&half_line));
    assert_eq!(vertices(&half_line), Err(Error::Unbounded));
    assert!(matches!(square().push(ints(&[1]), Relation::Le, BigRational::one()), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn fiber_vertices_dominate_random_linear_objectives() {
    let e = over(&[1, 1, 1, 1], 4);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (_, piece) in q_region().pieces.iter().take(3) {
        let fiber = piece.closure().fiber(&e).unwrap();
        let vs = vertices(&fiber).unwrap();
        assert!(!vs.is_empty());
        for v in &vs {
            assert!(fiber.contains(v).unwrap());
        }
        // grid points of the fiber with denominator 20
        let grid: Vec<Vec<BigRational>> = (0..=10)
            .flat_map(|a| (a..=10).flat_map(move |b| (b..=10).map(move |c| [a, b, c])))
            .flat_map(|[a, b, c]| (c..=12).map(move |d| vec![a, b, c, d, 40 - a - b - c - d]))
            .map(|f| over(&f, 20))
            .filter(|f| fiber.contains(f).unwrap())
            .collect();
        assert!(!grid.is_empty());
        for _ in 0..20 {
            let w: Vec<BigRational> = (0..5).map(|_| r(rng.gen_range(-9..=9), 1)).collect();
            let dot = |x: &[BigRational]| x.iter().zip(&w).map(|(a, b)| a * b).sum::<BigRational>();
            let best = vs.iter().map(|v| dot(v)).max().unwrap();
            assert!(grid.iter().all(|f| dot(f) <= best));
        }
    }
}

#[test]
fn closure_of_the_fin_adds_only_points_of_q() {
    let q = q_region();
    let fin = &q.pieces[3].1;
    let mut boundary = 0;
    for level in 4..=14 {
        for e in p_points(level) {
            for f in quintic::bundles::sorted_tuples(5, 2 * level, e[0], 2 * e[2]) {
                let x = scaled_point(&e, &[f[0], f[1], f[2], f[3], f[4]]).unwrap();
                if fin.closure().contains(&x).unwrap() && !fin.contains(&x).unwrap() {
                    boundary += 1;
                    assert!(!q.contains(&x).unwrap().is_empty(), "{e:?} {f:?}");
                }
            }
        }
    }
    assert!(boundary > 10);
}

#[test]
fn rho_examples() {
    assert_eq!(rho_geo(&over(&[1, 1, 1, 1], 4)).unwrap(), BigRational::one());
    assert_eq!(rho_geo(&over(&[1, 2, 3, 4], 10)).unwrap(), r(7, 10));
    // outside the scrollar polytope
    assert_eq!(rho_geo(&over(&[1, 1, 1, 3], 6)).unwrap(), BigRational::zero());
    assert!(rho_geo(&over(&[4, 3, 2, 1], 10)).is_err());
    assert!(matches!(rho_geo(&over(&[1, 1, 1], 3)), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn objective_at_the_balanced_point() {
    let e = over(&[1, 1, 1, 1], 4);
    assert_eq!(objective(&e, &over(&[2, 2, 2, 2, 2], 5)), BigRational::one());
    assert!(objective(&e, &over(&[1, 1, 2, 2, 2], 4)) < BigRational::one());
}

#[test]
fn finite_density_examples() {
    let full = EBox { lo: [BigRational::zero(), BigRational::zero(), BigRational::zero(), BigRational::zero()], hi: [BigRational::one(), BigRational::one(), BigRational::one(), BigRational::one()] };
    for g in 0..=12 {
        assert_eq!(pi_geo_finite(&full, g), BigRational::one(), "g={g}");
    }
    let outside = EBox::point(&[r(1, 10), r(1, 10), r(1, 10), r(7, 10)]);
    assert_eq!(pi_geo_finite(&outside, 6), r(-1, 20));
}

#[test]
fn finite_density_approaches_the_limit() {
    let x = [r(1, 10), r(2, 10), r(3, 10), r(4, 10)];
    let rho = rho_geo(&x).unwrap();
    let mut last = None;
    for g in [16, 36, 56] {
        let gap = pi_geo_finite(&EBox::around(&x, &r(1, 100)), g) - &rho;
        assert!(gap >= BigRational::zero());
        if let Some(prev) = &last {
            assert!(&gap < prev, "g={g}");
        }
        last = Some(gap);
    }
}
