//! Exact coverage law when every agent collects data from exactly `m`
//! distinct nodes chosen uniformly at random.
//!
//! The `k` visited sets form a `k × n` binary matrix with `m` ones per row.
//! Exactly `t` nodes are covered iff `n - t` columns are empty, so the number
//! of outcomes with coverage `t` is `C(n, t)·Q(k, m, t)`, where `Q` counts
//! `k × t` matrices with `m` ones per row and no empty column:
//!
//! ```text
//! Q(k, m, t) = Σ_{i=0}^{t-m} (-1)^i C(t, i) C(t-i, m)^k
//! P_k(n, m, t) = C(n, t) Q(k, m, t) / C(n, m)^k
//! ```

use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_traits::{One, Zero};

use crate::combinatorics::{binomial, binomial_row, power, AlternatingSum, Natural};
use crate::distribution::{support, CoverageDistribution};
use crate::params::{Params, Scheme};
use crate::probability::{ExactProbability, Rational};

/// Number of `k × t` binary matrices with exactly `m` ones in every row and
/// at least one one in every column. Zero when `t < m`.
pub fn q_count(k: u64, m: u64, t: u64) -> Natural {
    if t < m {
        return Natural::zero();
    }
    RowPowers::new(k, m, t).q(t)
}

/// `C(j, m)^k` for `j = m ..= top`, shared by every `Q(k, m, t)` with `t ≤ top`.
struct RowPowers {
    m: u64,
    powers: Vec<Natural>,
}

impl RowPowers {
    fn new(k: u64, m: u64, top: u64) -> Self {
        let powers = (m..=top.max(m)).map(|j| power(&binomial(j, m), k)).collect();
        RowPowers { m, powers }
    }

    fn q(&self, t: u64) -> Natural {
        if t < self.m {
            return Natural::zero();
        }
        let mut sum = AlternatingSum::new();
        for (i, c) in binomial_row(t).into_iter().take((t - self.m + 1) as usize).enumerate() {
            let i = i as u64;
            sum.push_signed(i, c * &self.powers[(t - i - self.m) as usize]);
        }
        sum.finish()
    }
}

/// Total number of outcomes, `C(n, m)^k`.
pub fn outcome_count(p: &Params) -> Natural {
    assert!(p.fits(Scheme::Abide), "ABIDE needs m ≤ n, got {p}");
    power(&binomial(p.n(), p.m()), p.k())
}

/// `C(n, t)·Q(k, m, t)` for each `t` in `range ∩ support`, with the first `t`.
pub(crate) fn outcome_counts(p: &Params, range: RangeInclusive<u64>) -> (u64, Vec<Natural>) {
    let full = support(p, Scheme::Abide);
    let lo = (*range.start()).max(*full.start());
    let hi = (*range.end()).min(*full.end());
    if lo > hi {
        return (lo, Vec::new());
    }
    let rows = RowPowers::new(p.k(), p.m(), hi);
    let counts = (lo..=hi).map(|t| binomial(p.n(), t) * rows.q(t)).collect();
    (lo, counts)
}

/// `P_k(n, m, t)`; exact zero outside `[m, min(mk, n)]`.
pub fn coverage_probability(p: &Params, t: u64) -> ExactProbability {
    let (_, counts) = outcome_counts(p, t..=t);
    match counts.into_iter().next() {
        Some(count) => ExactProbability::from_ratio_unchecked(Rational::new(count, outcome_count(p))),
        None => ExactProbability::zero(),
    }
}

pub fn coverage_distribution(p: &Params) -> CoverageDistribution {
    let denominator = outcome_count(p);
    let (first, counts) = outcome_counts(p, support(p, Scheme::Abide));
    debug_assert_eq!(counts.iter().sum::<Natural>(), denominator);
    CoverageDistribution::from_numerators(*p, Scheme::Abide, first, counts, &denominator)
}

/// `Pr(T ≥ t_min)` without building the lower part of the distribution.
pub fn tail_probability(p: &Params, t_min: u64) -> ExactProbability {
    let (_, counts) = outcome_counts(p, t_min..=u64::MAX);
    let hits: Natural = counts.into_iter().sum();
    ExactProbability::from_ratio_unchecked(Rational::new(hits, outcome_count(p)))
}

/// `E[T] = Σ_t t·P_k(n, m, t)`.
pub fn mean_coverage(p: &Params) -> Rational {
    let mean = coverage_distribution(p).mean();
    debug_assert_eq!(mean, mean_coverage_closed_form(p));
    mean
}

/// `n (1 - ((n - m)/n)^k)`: a node is missed by one agent with probability
/// `C(n-1, m)/C(n, m) = (n - m)/n`, independently across agents.
pub fn mean_coverage_closed_form(p: &Params) -> Rational {
    let n = Natural::from(p.n());
    let miss = Rational::new(Natural::from(p.n() - p.m()), n.clone());
    let miss_all = Rational::new(power(miss.numer(), p.k()), power(miss.denom(), p.k()));
    Rational::from_integer(n) * (Rational::one() - miss_all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn ratio(n: u64, d: u64) -> Rational {
        Rational::new(nat(n), nat(d))
    }

    fn abide(n: u64, m: u64, k: u64) -> Params {
        Params::abide(n, m, k).unwrap()
    }

    #[test]
    fn q_count_examples() {
        assert_eq!(q_count(1, 2, 2), nat(1));
        assert_eq!(q_count(2, 2, 3), nat(6));
        assert_eq!(q_count(2, 1, 2), nat(2));
        assert_eq!(q_count(3, 2, 1), nat(0));
    }

    #[test]
    fn q_count_two_by_three_by_enumeration() {
        // Rows with two ones among three columns: 0b011, 0b101, 0b110.
        let rows = [0b011u8, 0b101, 0b110];
        let mut covering = 0;
        for a in rows {
            for b in rows {
                if a | b == 0b111 {
                    covering += 1;
                }
            }
        }
        assert_eq!(q_count(2, 2, 3), nat(covering));
    }

    #[test]
    fn probability_examples() {
        assert_eq!(coverage_probability(&abide(4, 2, 1), 2), ExactProbability::one());
        assert_eq!(coverage_probability(&abide(4, 2, 2), 3).as_ratio(), &ratio(2, 3));
        assert!(coverage_probability(&abide(4, 2, 2), 1).is_zero());
        assert!(coverage_probability(&abide(4, 2, 2), 5).is_zero());
    }

    #[test]
    fn distribution_examples() {
        let d = coverage_distribution(&abide(2, 1, 2));
        assert_eq!(d.mass(1).as_ratio(), &ratio(1, 2));
        assert_eq!(d.mass(2).as_ratio(), &ratio(1, 2));

        let d = coverage_distribution(&abide(3, 3, 5));
        assert_eq!(d.iter().count(), 1);
        assert_eq!(d.mass(3), ExactProbability::one());

        let d = coverage_distribution(&abide(4, 2, 2));
        assert_eq!(d.mass(2).as_ratio(), &ratio(1, 6));
        assert_eq!(d.mass(3).as_ratio(), &ratio(2, 3));
        assert_eq!(d.mass(4).as_ratio(), &ratio(1, 6));
        assert_eq!(d.total(), Rational::one());
        assert_eq!(d.mode(), 3);
        assert_eq!(d.tail(3).as_ratio(), &ratio(5, 6));
    }

    #[test]
    fn means() {
        assert_eq!(mean_coverage(&abide(5, 2, 1)), ratio(2, 1));
        assert_eq!(mean_coverage(&abide(4, 2, 2)), ratio(3, 1));
        assert_eq!(mean_coverage(&abide(2, 1, 2)), ratio(3, 2));
        assert_eq!(mean_coverage_closed_form(&abide(2, 1, 2)), ratio(3, 2));
    }

    #[test]
    fn tail_matches_distribution() {
        let p = abide(7, 3, 3);
        let d = coverage_distribution(&p);
        for t in 0..=9 {
            assert_eq!(tail_probability(&p, t), d.tail(t), "t={t}");
        }
    }

    #[test]
    fn full_memory_is_point_mass() {
        for n in 1..=6 {
            let d = coverage_distribution(&abide(n, n, 4));
            assert_eq!(d.mass(n), ExactProbability::one());
        }
    }
}
