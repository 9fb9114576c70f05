//! Exact coverage law when every agent fills `m` memory cells with
//! independent uniform draws, so one agent may revisit a node.
//!
//! Each memory cell behaves like its own single-cell agent, so the law for
//! `(n, m, k)` equals the distinct-sampling law for `(n, 1, m·k)`. Counting
//! ordered draw sequences that hit exactly `t` given nodes gives
//!
//! ```text
//! R(k, m, t) = Σ_{i=0}^{t-1} (-1)^i C(t, i) (t-i)^{mk} = t!·S(mk, t)
//! P*_k(n, m, t) = C(n, t)·t!·S(mk, t) / n^{mk}
//! ```

use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_traits::One;

use crate::combinatorics::{
    binomial, factorial, falling_factorial, power, power_u64, stirling2, stirling2_row,
    surjections, Natural,
};
use crate::distribution::{support, CoverageDistribution};
use crate::params::{Params, Scheme};
use crate::probability::{ExactProbability, Rational};

/// Number of `m·k`-long draw sequences over `t` labeled nodes that visit all
/// `t` of them, evaluated as `t!·S(mk, t)`.
pub fn r_count(k: u64, m: u64, t: u64) -> Natural {
    let draws = m * k;
    let value = factorial(t) * stirling2(draws, t);
    debug_assert_eq!(value, r_count_direct(k, m, t));
    value
}

/// `Σ_{i=0}^{t-1} (-1)^i C(t, i) (t-i)^{mk}`, the inclusion–exclusion form of
/// [`r_count`]. The `i = t` term is zero unless `t = mk = 0`.
pub fn r_count_direct(k: u64, m: u64, t: u64) -> Natural {
    surjections(m * k, t)
}

/// Total number of outcomes, `n^{mk}`.
pub fn outcome_count(p: &Params) -> Natural {
    power_u64(p.n(), p.draws())
}

pub(crate) fn outcome_counts(p: &Params, range: RangeInclusive<u64>) -> (u64, Vec<Natural>) {
    let full = support(p, Scheme::Eabide);
    let lo = (*range.start()).max(*full.start());
    let hi = (*range.end()).min(*full.end());
    if lo > hi {
        return (lo, Vec::new());
    }
    let stirling = stirling2_row(p.draws(), hi);
    #[cfg(debug_assertions)]
    check_stirling_row(p.draws(), &stirling, lo);
    let counts = (lo..=hi)
        .map(|t| falling_factorial(p.n(), t) * &stirling[t as usize])
        .collect();
    (lo, counts)
}

/// Debug cross-check of `t!·S(N, t)` against the direct alternating sums,
/// sharing the powers `j^N` across every `t` in the row.
#[cfg(debug_assertions)]
fn check_stirling_row(draws: u64, row: &[Natural], from: u64) {
    use crate::combinatorics::{binomial_row, AlternatingSum};

    let top = row.len() as u64 - 1;
    let powers: Vec<Natural> = (0..=top).map(|j| power_u64(j, draws)).collect();
    for t in from..=top {
        let mut sum = AlternatingSum::new();
        for (i, c) in binomial_row(t).into_iter().enumerate() {
            sum.push_signed(i as u64, c * &powers[(t - i as u64) as usize]);
        }
        assert_eq!(
            factorial(t) * &row[t as usize],
            sum.finish(),
            "R disagrees with t!·S({draws}, {t})"
        );
    }
}

/// `P*_k(n, m, t)`; exact zero outside `[1, min(mk, n)]`.
pub fn coverage_probability_star(p: &Params, t: u64) -> ExactProbability {
    let full = support(p, Scheme::Eabide);
    if !full.contains(&t) {
        return ExactProbability::zero();
    }
    let count = binomial(p.n(), t) * r_count(p.k(), p.m(), t);
    ExactProbability::from_ratio_unchecked(Rational::new(count, outcome_count(p)))
}

pub fn coverage_distribution_star(p: &Params) -> CoverageDistribution {
    let denominator = outcome_count(p);
    let (first, counts) = outcome_counts(p, support(p, Scheme::Eabide));
    debug_assert_eq!(counts.iter().sum::<Natural>(), denominator);
    CoverageDistribution::from_numerators(*p, Scheme::Eabide, first, counts, &denominator)
}

pub fn tail_probability_star(p: &Params, t_min: u64) -> ExactProbability {
    let (_, counts) = outcome_counts(p, t_min..=u64::MAX);
    let hits: Natural = counts.into_iter().sum();
    ExactProbability::from_ratio_unchecked(Rational::new(hits, outcome_count(p)))
}

/// The distinct-sampling parameters with the same coverage law:
/// `(n, m, k) ↦ (n, 1, m·k)`.
pub fn reduce_to_abide(p: &Params) -> Params {
    Params::abide(p.n(), 1, p.draws()).expect("m = 1 always fits and m·k was already checked")
}

pub fn mean_coverage_star(p: &Params) -> Rational {
    let mean = coverage_distribution_star(p).mean();
    debug_assert_eq!(mean, mean_coverage_star_closed_form(p));
    mean
}

/// `n (1 - (1 - 1/n)^{mk})`.
pub fn mean_coverage_star_closed_form(p: &Params) -> Rational {
    let n = Natural::from(p.n());
    let miss_all = Rational::new(power_u64(p.n() - 1, p.draws()), power(&n, p.draws()));
    Rational::from_integer(n) * (Rational::one() - miss_all)
}
