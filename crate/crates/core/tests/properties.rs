use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kstab_core::algebra::{
    int, is_positive_on, rat, refine_root, sturm_count, IsolatingInterval, PiecewiseLinear, Polynomial, Rational,
};
use kstab_core::io::Resolved;
use kstab_core::registry::Registry;
use kstab_core::root_system::{CartanType, Component, RootSystem, Weight};
use kstab_core::stability::{
    condition_polynomial, futaki_linear, j_functional, l_functional, random_convex_pl, DHData,
};
use kstab_core::variety::PolarizationFamily;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 1..=max_degree + 1).prop_map(Polynomial::new)
}

fn family(name: &str) -> PolarizationFamily {
    match Registry::builtin().lookup(name).unwrap().resolve().unwrap() {
        Resolved::Family(f) => f,
        Resolved::Data(_) => unreachable!(),
    }
}

/// `n` rationals in non-decreasing order.
fn ordered(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), n).prop_map(|mut v| {
        v.sort();
        v
    })
}

/// A parameter strictly inside (0, 1).
fn unit_parameter() -> impl Strategy<Value = Rational> {
    (1i64..64).prop_map(|n| rat(n, 64))
}

fn convex_function(lo: Rational, hi: Rational, non_decreasing: bool) -> impl Strategy<Value = PiecewiseLinear> {
    any::<u64>().prop_map(move |seed| random_convex_pl(&mut ChaCha8Rng::seed_from_u64(seed), &lo, &hi, non_decreasing))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integral_is_linear(f in polynomial(5), g in polynomial(5), c in small_rational(), (a, b) in ordered(2).prop_map(|v| (v[0].clone(), v[1].clone()))) {
        let combined = &f.scale(&c) + &g;
        let lhs = combined.definite_integral(&a, &b).unwrap();
        let rhs = c * f.definite_integral(&a, &b).unwrap() + g.definite_integral(&a, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integral_is_additive(f in polynomial(6), (a, b, c) in ordered(3).prop_map(|v| (v[0].clone(), v[1].clone(), v[2].clone()))) {
        let split = f.definite_integral(&a, &b).unwrap() + f.definite_integral(&b, &c).unwrap();
        prop_assert_eq!(split, f.definite_integral(&a, &c).unwrap());
    }

    #[test]
    fn antiderivative_inverts_derivative(f in polynomial(6)) {
        prop_assert_eq!(f.antiderivative().derivative(), f);
    }

    #[test]
    fn product_evaluates_pointwise(f in polynomial(4), g in polynomial(4), x in small_rational()) {
        prop_assert_eq!((&f * &g).evaluate(&x), f.evaluate(&x) * g.evaluate(&x));
    }

    #[test]
    fn sturm_counts_distinct_roots_of_products(
        roots in prop::collection::vec(-20i64..=20, 1..7),
        exps in prop::collection::vec(1u32..=3, 7),
        lo in -25i64..=25,
        width in 1i64..=30,
    ) {
        let p = roots.iter().zip(&exps).fold(Polynomial::one(), |acc, (r, e)| &acc * &Polynomial::from_ints(&[-r, 1]).pow(*e));
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let (a, b) = (lo, lo + width);
        let expected = distinct.iter().filter(|r| a < **r && **r <= b).count();
        prop_assert_eq!(sturm_count(&p, &int(a), &int(b)).unwrap(), expected);
    }

    #[test]
    fn refined_root_stays_in_its_bracket(num in -200i64..200, other in 30i64..60, k in 1u32..40) {
        // roots num/7 ∈ (-29, 29) and ±other are well separated
        let root = rat(num, 7);
        let p = &Polynomial::linear(-root.clone(), int(1)) * &Polynomial::from_ints(&[-other * other, 0, 1]);
        let bracket = IsolatingInterval::new(int(-29), int(29)).unwrap();
        let precision = rat(1, 1i64 << k);
        let approx = refine_root(&p, &bracket, &precision).unwrap();
        prop_assert!(int(-29) <= approx && approx <= int(29));
        prop_assert!((approx - root).abs() <= precision);
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        kind in prop::sample::select(vec![(CartanType::G2, 2usize, rat(1, 1)), (CartanType::F4, 4, rat(1, 2)), (CartanType::A, 3, rat(1, 2)), (CartanType::B, 3, rat(1, 1))]),
        coords in prop::collection::vec(small_rational(), 12),
        c in small_rational(),
    ) {
        let (t, n, scale) = kind;
        let rs = RootSystem::build(&[Component::new(t, n, scale)]).unwrap();
        let u = Weight(coords[0..n].to_vec());
        let v = Weight(coords[4..4 + n].to_vec());
        let w = Weight(coords[8..8 + n].to_vec());
        prop_assert_eq!(rs.pairing(&u, &v).unwrap(), rs.pairing(&v, &u).unwrap());
        let lhs = rs.pairing(&u.scale(&c).add(&w), &v).unwrap();
        let rhs = c * rs.pairing(&u, &v).unwrap() + rs.pairing(&w, &v).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(rs.pairing(&u, &u).unwrap() >= int(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn functionals_ignore_constant_shifts(
        name in prop::sample::select(vec!["g2-facet", "x1-tilde"]),
        s in unit_parameter(),
        seed in any::<u64>(),
        c in small_rational(),
    ) {
        let data = family(name).instantiate(&s).unwrap();
        let dh = DHData::from_data(&data).unwrap();
        let g = random_convex_pl(&mut ChaCha8Rng::seed_from_u64(seed), &dh.lower, &dh.upper, true);
        let shifted = g.add_constant(&c);
        prop_assert_eq!(l_functional(&shifted, &dh).unwrap(), l_functional(&g, &dh).unwrap());
        let j = j_functional(&g, &dh.p, &dh.lower, &dh.upper).unwrap();
        prop_assert_eq!(j_functional(&shifted, &dh.p, &dh.lower, &dh.upper).unwrap(), j.clone());
        prop_assert!(j >= int(0));
        let constant = PiecewiseLinear::constant(dh.lower.clone(), dh.upper.clone(), c).unwrap();
        prop_assert_eq!(l_functional(&constant, &dh).unwrap(), int(0));
    }

    #[test]
    fn condition_polynomial_tracks_futaki(name in prop::sample::select(vec!["g2-facet", "x1-tilde", "x2-tilde"]), s in unit_parameter()) {
        let f = family(name);
        let data = f.instantiate(&s).unwrap();
        let dh = DHData::from_data(&data).unwrap();
        let expected = futaki_linear(&data).unwrap() * dh.mass();
        prop_assert_eq!(condition_polynomial(&f).evaluate(&s), expected);
    }

    #[test]
    fn sampled_functions_are_convex(g in convex_function(int(0), rat(1, 2), true), h in convex_function(int(-1), int(2), false)) {
        prop_assert!(g.is_convex() && g.is_non_decreasing());
        prop_assert!(h.is_convex());
        prop_assert_eq!(g.domain(), (&int(0), &rat(1, 2)));
    }

    #[test]
    fn weight_is_positive_between_the_walls(name in prop::sample::select(vec!["g2-facet", "x1-tilde", "x2-tilde"]), s in unit_parameter()) {
        let data = family(name).instantiate(&s).unwrap();
        let dh = DHData::from_data(&data).unwrap();
        prop_assert!(is_positive_on(&dh.p, &dh.lower, &dh.upper).unwrap());
    }
}
