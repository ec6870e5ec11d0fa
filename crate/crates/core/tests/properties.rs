use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use quadcert_core::field::{Field, PrimeField, Rationals, CROSS_CHECK_PRIME, DEFAULT_PRIME};
use quadcert_core::geometry::{general_position_check, to_points, ProjPoint};
use quadcert_core::matrix::{kernel_basis, rank, rref, ExactMatrix};
use quadcert_core::poly::{binomial, monomials_of_degree, Monomial, MultiPoly, Relation};
use quadcert_core::quadspace::{a2_of_points, quadric_basis, SamplingPolicy};
use quadcert_core::scrollcalc::{h0_class, q_equals_scroll, scroll_types, ScrollDivisorClass};
use quadcert_core::seed;
use quadcert_core::varieties::{
    elliptic_normal_curve, point_config_on_rnc, random_weierstrass, rational_curve_with_4secant,
    rational_normal_curve, Representation, VarietyRep,
};
use quadcert_core::verifier::fundamental_bound;

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
}

fn to_matrix<F: Field>(f: &F, rows: &[Vec<i64>]) -> ExactMatrix<F> {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    ExactMatrix::from_i64(f, &refs).unwrap()
}

fn poly_strategy(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -20i64..=20), 0..6)
}

fn build<F: Field>(f: &F, nvars: usize, terms: &[(Vec<u32>, i64)]) -> MultiPoly<F> {
    terms.iter().fold(MultiPoly::zero(f, nvars), |acc, (e, c)| {
        acc.add(&MultiPoly::term(f, Monomial::new(e.clone()), f.from_i64(*c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(rows in small_matrix()) {
        let m = to_matrix(&Rationals, &rows);
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.rank, twice.rank);
    }

    // entries in [-5, 5] with at most 5 rows keep every minor below 5^5 * 5! < 2^30,
    // so no prime above 2^30 divides a nonzero minor
    #[test]
    fn rank_agrees_over_q_and_two_primes(rows in small_matrix()) {
        let q = rank(&to_matrix(&Rationals, &rows));
        for p in [DEFAULT_PRIME, CROSS_CHECK_PRIME] {
            let f = PrimeField::new(p).unwrap();
            prop_assert_eq!(rank(&to_matrix(&f, &rows)), q);
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in small_matrix()) {
        let m = to_matrix(&Rationals, &rows);
        let ker = kernel_basis(&m);
        prop_assert_eq!(ker.len(), m.cols() - rank(&m));
        let zero = BigRational::from_integer(BigInt::from(0));
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == zero));
        }
    }

    #[test]
    fn substitute_is_a_ring_homomorphism(
        p in poly_strategy(3),
        q in poly_strategy(3),
        images in prop::collection::vec(poly_strategy(2), 3),
    ) {
        let f = fp();
        let (p, q) = (build(&f, 3, &p), build(&f, 3, &q));
        let im: Vec<_> = images.iter().map(|t| build(&f, 2, t)).collect();
        let s = |x: &MultiPoly<PrimeField>| x.substitute(&im).unwrap();
        prop_assert_eq!(s(&p.mul(&q)), s(&p).mul(&s(&q)));
        prop_assert_eq!(s(&p.add(&q)), s(&p).add(&s(&q)));
    }

    #[test]
    fn reduction_agrees_on_the_curve(p in poly_strategy(2), seed in any::<u64>()) {
        let f = fp();
        let mut rng = seed::rng(seed, "curve");
        let (a, b) = random_weierstrass(&f, &mut rng);
        // y^2 = x^3 + a x + b in variables (x, y) = (x0, x1)
        let rhs = build(&f, 2, &[(vec![3, 0], 1)])
            .add(&MultiPoly::var(&f, 2, 0).scale(&a))
            .add(&MultiPoly::constant(&f, 2, b));
        let rel = Relation::new(1, 2, rhs.clone()).unwrap();
        let p = build(&f, 2, &p);
        let diff = p.reduce(&rel).sub(&p);
        let mut found = 0;
        for x in 0..200i64 {
            let xv = f.from_i64(x);
            let r = rhs.evaluate(&[xv, f.zero()]).unwrap();
            if let Some(y) = f.sqrt(&r) {
                prop_assert!(f.is_zero(&diff.evaluate(&[xv, y]).unwrap()));
                found += 1;
            }
        }
        prop_assert!(found > 0);
    }

    #[test]
    fn q_equals_scroll_matches_residual_h0(len in 1usize..=4, max in 1u32..=4, a in 0i64..=5, b in -10i64..=10) {
        for t in scroll_types(len, max) {
            let cls = ScrollDivisorClass::new(&t, a, b).unwrap();
            let q = q_equals_scroll(&cls).unwrap();
            prop_assert_eq!(q, h0_class(&cls.residual()) == 0);
        }
    }

    #[test]
    fn hyperplane_class_counts_coordinates(len in 1usize..=4, max in 1u32..=4) {
        for t in scroll_types(len, max) {
            let cls = ScrollDivisorClass::new(&t, 1, 0).unwrap();
            prop_assert_eq!(h0_class(&cls), cls.ambient_dim() as u64 + 1);
        }
    }
}

#[test]
fn monomial_counts_match_binomials() {
    for n in 1..=10usize {
        for d in 0..=4u32 {
            let ms = monomials_of_degree(n, d);
            assert_eq!(ms.len() as u64, binomial(n as u64 + d as u64 - 1, d as u64));
            assert!(ms.windows(2).all(|w| w[0] > w[1]), "strictly decreasing grlex");
        }
    }
}

#[test]
fn distinct_rnc_points_are_in_general_position() {
    let q = Rationals;
    let mut rng = seed::rng(0, "gp");
    for c in 2..=5usize {
        for m in (c + 1)..=12 {
            let pts: Vec<_> = (0..m as i64)
                .map(|t| ProjPoint::from_i64(&q, &(0..=c as u32).map(|j| (t - 5).pow(j)).collect::<Vec<_>>()).unwrap())
                .collect();
            // exhaustive: trials exceed the number of subsets
            assert!(general_position_check(&q, &pts, 1000, &mut rng).unwrap(), "c={c} m={m}");
        }
    }
}

#[test]
fn rnc_sections_have_degree_many_points() {
    let f = fp();
    let mut rng = seed::rng(4, "sections");
    for r in 2..=6 {
        let v = rational_normal_curve(&f, r).unwrap();
        for _ in 0..5 {
            let s = quadcert_core::geometry::random_linear_section(&v, 1, &mut rng).unwrap();
            assert_eq!(s.count, Some(r));
        }
    }
}

#[test]
fn projection_keeps_nondegeneracy() {
    let f = fp();
    let mut rng = seed::rng(5, "centers");
    for r in 4..=6 {
        let v = rational_normal_curve(&f, r).unwrap();
        let center = loop {
            let c: Vec<_> = (0..=r).map(|_| f.random(&mut rng)).collect();
            if !v.contains_point(&c).unwrap() {
                break ProjPoint::new(&f, c).unwrap();
            }
        };
        let w = v.project(&center).unwrap();
        let inv = w.check_invariants(&mut rng).unwrap();
        assert!(inv.nondegenerate && inv.degree_matches, "r={r} {inv:?}");
        assert_eq!(w.ambient_dim(), r - 1);
    }
}

fn test_constructions(f: &PrimeField, seed: u64) -> Vec<VarietyRep<PrimeField>> {
    let mut rng = seed::rng(seed, "weierstrass");
    let (a, b) = random_weierstrass(f, &mut rng);
    vec![
        rational_normal_curve(f, 3).unwrap(),
        rational_normal_curve(f, 5).unwrap(),
        elliptic_normal_curve(f, 3, &a, &b).unwrap(),
        elliptic_normal_curve(f, 4, &a, &b).unwrap(),
        rational_curve_with_4secant(f, 4, seed).unwrap(),
        point_config_on_rnc(f, 4, 8, seed).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn constructions_respect_the_fundamental_inequality(seed in any::<u64>()) {
        let f = fp();
        let mut rng = seed::rng(seed, "inv");
        for v in test_constructions(&f, seed) {
            let b = quadric_basis(&v, &SamplingPolicy::default(), seed).unwrap();
            prop_assert!(b.a2 as i64 <= fundamental_bound(v.codim(), v.degree()));
            let inv = v.check_invariants(&mut rng).unwrap();
            prop_assert!(inv.nondegenerate && inv.degree_matches, "{} {:?}", v.tag(), inv);
        }
    }

    // a hyperplane through r sampled points of a curve in P^r; when the whole
    // section is rational, a2 inside H is a2 of the points minus the r+1
    // quadrics H * linear
    #[test]
    fn a2_does_not_drop_on_hyperplane_sections(seed in any::<u64>()) {
        let f = fp();
        let mut rng = seed::rng(seed, "sections");
        for v in test_constructions(&f, seed).into_iter().filter(|v| v.dim() == 1) {
            let r = v.ambient_dim();
            let a2 = quadric_basis(&v, &SamplingPolicy::default(), seed).unwrap().a2;
            let pts = v.sample_points(r, &mut rng).unwrap();
            let m = ExactMatrix::from_rows(&f, r + 1, pts).unwrap();
            let ker = kernel_basis(&m);
            if ker.len() != 1 {
                continue;
            }
            let Ok(s) = v.section_by(&ker, &mut rng) else { continue };
            let Representation::Points(pl) = s.section.representation() else { continue };
            if !pl.complete || pl.points.len() != v.degree() as usize {
                continue;
            }
            let in_h = a2_of_points(&f, &pl.points).unwrap() - (r + 1);
            prop_assert!(a2 <= in_h, "{}: a2 {} > {}", v.tag(), a2, in_h);
        }
    }

    #[test]
    fn certified_bases_do_not_depend_on_the_seed(s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = fp();
        for v in test_constructions(&f, 3) {
            let b1 = quadric_basis(&v, &SamplingPolicy::default(), s1).unwrap();
            let b2 = quadric_basis(&v, &SamplingPolicy::default(), s2).unwrap();
            prop_assert_eq!(b1.a2, b2.a2);
            prop_assert_eq!(b1.row_space(&f), b2.row_space(&f));
        }
    }
}

#[test]
fn point_samples_convert_to_points() {
    let f = fp();
    let v = rational_normal_curve(&f, 4).unwrap();
    let mut rng = seed::rng(1, "pts");
    let pts = to_points(&f, &v.sample_points(10, &mut rng).unwrap());
    assert_eq!(pts.len(), 10);
}
