mod common;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;
use roving_core::combinatorics::{
    binomial, factorial, power_u64, stirling2_inclusion_exclusion, stirling2_recurrence,
};
use roving_core::plan::{markov_bound, tail_probability};
use roving_core::{abide, coverage_distribution, eabide, Params, Rational, Scheme};

fn params_strategy(scheme: Scheme) -> impl Strategy<Value = Params> {
    (1u64..=12, 1u64..=5, 1u64..=5).prop_filter_map("invalid params", move |(n, m, k)| {
        Params::new(scheme, n, m, k).ok()
    })
}

#[test]
fn binomial_row_sums_to_power_of_two() {
    for n in 0..=64u64 {
        let sum: BigUint = (0..=n).map(|r| binomial(n, r)).sum();
        assert_eq!(sum, BigUint::one() << n as usize, "n={n}");
    }
}

#[test]
fn binomial_against_pascal() {
    for n in [0u64, 1, 7, 20, 33] {
        for r in 0..=n + 1 {
            assert_eq!(binomial(n, r), common::pascal(n, r));
        }
    }
}

#[test]
fn stirling_routes_agree() {
    for n in 0..=40u64 {
        for k in 0..=n {
            assert_eq!(
                stirling2_recurrence(n, k),
                stirling2_inclusion_exclusion(n, k),
                "S({n}, {k})"
            );
        }
    }
}

#[test]
fn surjection_identity() {
    // Σ_K C(t, K)·K!·S(N, K) = t^N: every map into t labels has some image size K.
    for n in 0..=15u64 {
        for t in 0..=15u64 {
            let sum: BigUint = (0..=t)
                .map(|k| binomial(t, k) * factorial(k) * stirling2_recurrence(n, k))
                .sum();
            assert_eq!(sum, power_u64(t, n), "N={n} t={t}");
        }
    }
}

#[test]
fn r_count_routes_agree() {
    for draws in 1..=30u64 {
        for t in 0..=draws {
            let stirling = factorial(t) * stirling2_recurrence(draws, t);
            assert_eq!(stirling, eabide::r_count_direct(draws, 1, t), "mk={draws} t={t}");
            assert_eq!(eabide::r_count(1, draws, t), stirling);
        }
    }
}

proptest! {
    #[test]
    fn binomial_symmetry(n in 0u64..200, r in 0u64..200) {
        prop_assume!(r <= n);
        prop_assert_eq!(binomial(n, r), binomial(n, n - r));
    }

    #[test]
    fn abide_normalized_with_exact_mean(p in params_strategy(Scheme::Abide)) {
        let dist = abide::coverage_distribution(&p);
        prop_assert_eq!(dist.total(), Rational::one());
        prop_assert_eq!(dist.mean(), abide::mean_coverage_closed_form(&p));
        for (_, mass) in dist.iter() {
            prop_assert!(mass.as_ratio() <= &Rational::one());
        }
    }

    #[test]
    fn eabide_normalized_with_exact_mean(p in params_strategy(Scheme::Eabide)) {
        let dist = eabide::coverage_distribution_star(&p);
        prop_assert_eq!(dist.total(), Rational::one());
        prop_assert_eq!(dist.mean(), eabide::mean_coverage_star_closed_form(&p));
        let reduced = abide::coverage_distribution(&eabide::reduce_to_abide(&p));
        prop_assert_eq!(dist.mean(), reduced.mean());
    }

    #[test]
    fn distinct_sampling_dominates(n in 1u64..=10, m in 1u64..=4, k in 1u64..=4) {
        prop_assume!(m <= n);
        let p = Params::abide(n, m, k).unwrap();
        let plain = abide::coverage_distribution(&p);
        let star = eabide::coverage_distribution_star(&p);
        for tau in 0..=n + 1 {
            prop_assert!(plain.tail(tau) >= star.tail(tau), "tau={}", tau);
        }
    }

    #[test]
    fn tail_grows_with_agents(n in 1u64..=10, m in 1u64..=4, t_min in 0u64..=11) {
        for scheme in Scheme::ALL {
            let Ok(first) = Params::new(scheme, n, m, 1) else { continue };
            let mut prev = tail_probability(&first, scheme, t_min);
            for k in 2..=6 {
                let next = tail_probability(&first.with_agents(k).unwrap(), scheme, t_min);
                prop_assert!(next >= prev, "{} k={}", scheme, k);
                prev = next;
            }
        }
    }

    #[test]
    fn markov_dominates_tail(p in params_strategy(Scheme::Abide), t_min in 1u64..=13) {
        for scheme in Scheme::ALL {
            prop_assert!(tail_probability(&p, scheme, t_min) <= markov_bound(&p, scheme, t_min));
        }
    }

    #[test]
    fn masses_vanish_exactly_off_support(p in params_strategy(Scheme::Eabide)) {
        for scheme in Scheme::ALL {
            if !p.fits(scheme) { continue; }
            let dist = coverage_distribution(&p, scheme);
            let support = dist.support();
            for t in 0..=p.n() + 1 {
                prop_assert_eq!(dist.mass(t).is_zero(), !support.contains(&t));
            }
        }
    }
}

#[test]
fn stirling_zero_conventions() {
    assert!(stirling2_recurrence(7, 0).is_zero());
    assert!(stirling2_recurrence(3, 4).is_zero());
    assert!(stirling2_recurrence(0, 0).is_one());
}
