use etaq::arith::{divisors, factorize};
use etaq::characters::kronecker;
use etaq::forms::Weight;
use etaq::qseries::{c_series, qx_invert, qx_mul, EtaSpec};
use etaq::verify::{growth_g_squared, sturm_bound, vanishing_predicate, zero_pattern, GrowthId, PredicateId};
use etaq::{DirichletChar, Exec};
use proptest::prelude::*;

fn arb_spec() -> impl Strategy<Value = EtaSpec> {
    prop::collection::vec((1u64..13, -6i64..7), 1..4).prop_filter_map("nonempty spec", |fs| EtaSpec::new(fs).ok())
}

fn is_square(r: u64) -> bool {
    let y = (r as f64).sqrt() as u64;
    (y.saturating_sub(1)..=y + 1).any(|y| y * y == r)
}

// Representability by search, with no factorization.
fn is_sum_of_two_squares(m: u64) -> bool {
    (0..).take_while(|x| x * x <= m).any(|x| is_square(m - x * x))
}

fn is_sum_of_three_squares(m: u64) -> bool {
    (0..)
        .take_while(|x| x * x <= m)
        .any(|x| is_sum_of_two_squares(m - x * x))
}

/// `m = x^2 + 2 y^2` representability by search.
fn is_x2_plus_2y2(m: u64) -> bool {
    (0..).take_while(|y| 2 * y * y <= m).any(|y| is_square(m - 2 * y * y))
}

fn is_x2_plus_3y2(m: u64) -> bool {
    (0..).take_while(|y| 3 * y * y <= m).any(|y| is_square(m - 3 * y * y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_n_plus_two_is_not_two_squares(n in 0u64..200_000) {
        prop_assert_eq!(vanishing_predicate(PredicateId::ThreeNPlusTwo, n), !is_sum_of_two_squares(3 * n + 2));
    }

    #[test]
    fn eight_n_plus_three_is_not_x2_plus_2y2(n in 0u64..100_000) {
        prop_assert_eq!(vanishing_predicate(PredicateId::EightNPlusThree, n), !is_x2_plus_2y2(8 * n + 3));
    }

    #[test]
    fn three_n_plus_one_is_not_x2_plus_3y2(n in 0u64..100_000) {
        prop_assert_eq!(vanishing_predicate(PredicateId::ThreeNPlusOne, n), !is_x2_plus_3y2(3 * n + 1));
    }

    #[test]
    fn legendre_gauss_three_squares(n in 1u64..100_000) {
        prop_assert_eq!(vanishing_predicate(PredicateId::NotSumOfThreeSquares, n), !is_sum_of_three_squares(n));
    }

    #[test]
    fn factorization_reassembles(n in 1u64..10_000_000) {
        let fs = factorize(n);
        prop_assert_eq!(fs.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        prop_assert!(fs.windows(2).all(|w| w[0].0 < w[1].0));
        let d: u64 = fs.iter().map(|&(_, e)| e as u64 + 1).product();
        prop_assert_eq!(d, divisors(n).len() as u64);
    }

    /// For odd primes the Kronecker symbol is Euler's criterion.
    #[test]
    fn kronecker_is_euler_criterion(a in -300i64..300, pi in 1usize..60) {
        let p = etaq::arith::primes_up_to(300)[pi] as i64;
        let r = a.rem_euclid(p) as u128;
        let mut pw = 1u128;
        for _ in 0..(p - 1) / 2 {
            pw = pw * r % p as u128;
        }
        let euler = if r == 0 { 0 } else if pw == 1 { 1 } else { -1 };
        prop_assert_eq!(kronecker(a, p) as i64, euler);
    }

    #[test]
    fn spec_text_round_trip(s in arb_spec()) {
        prop_assert_eq!(s.to_string().parse::<EtaSpec>().unwrap(), s);
    }

    #[test]
    fn character_text_round_trip(d in prop::sample::select(vec![1i64, -3, -4, 5, -7, -8, 8, 12, -15, 24, -20])) {
        let c = DirichletChar::from_discriminant(d);
        prop_assert_eq!(c.to_string().parse::<DirichletChar>().unwrap(), c);
    }

    /// Sequential and parallel execution give the same zero pattern.
    #[test]
    fn exec_modes_agree(s in arb_spec()) {
        prop_assert_eq!(zero_pattern(&s, 300, Exec::Sequential), zero_pattern(&s, 300, Exec::Parallel));
    }

    /// The product for `r` and for `-r` are inverse series.
    #[test]
    fn negated_exponents_invert(s in arb_spec()) {
        let neg = EtaSpec::new(s.factors().iter().map(|&(d, r)| (d, -r)).collect()).unwrap();
        let f = c_series(&s, 200).unwrap();
        let g = c_series(&neg, 200).unwrap();
        prop_assert_eq!(qx_invert(&f).unwrap(), g.clone());
        let one = qx_mul(&f, &g).unwrap();
        let is_unit = one.terms().all(|(n, c)| if n == 0 { *c == etaq::QuadScalar::one() } else { c.is_zero() });
        prop_assert!(is_unit);
    }

    /// The growth factors at 2 are the only place `G1` and `G2` differ.
    #[test]
    fn growth_agrees_off_two(m in 0u64..50_000) {
        let n = 2 * m + 1;
        prop_assume!(n % 3 != 0);
        prop_assert_eq!(growth_g_squared(GrowthId::G1, n).unwrap(), growth_g_squared(GrowthId::G2, n).unwrap());
    }

    /// Raising the level never lowers the Sturm bound.
    #[test]
    fn sturm_bound_grows_with_level(twice in 1i64..12, n in 1u64..500, m in 1u64..20) {
        let w = Weight::from_twice(twice);
        prop_assert!(sturm_bound(w, n) <= sturm_bound(w, n * m));
    }
}
