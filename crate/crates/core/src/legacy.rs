//! The original nested-sum expression for `P_k(n, m, t)`, kept only as an
//! independent oracle for the closed form in [`crate::abide`].
//!
//! The sum tracks the overlaps `m_2, ..., m_{k-1}` between each successive
//! agent and the nodes already covered:
//!
//! ```text
//! P_k(n, m, t) = C(n, m)^{-(k-1)} Σ_{m_2..m_{k-1}=0}^{m}
//!     Π_{j=2}^{k-1} C(u_{j-1}, m_j) C(n - u_{j-1}, m - m_j)
//!     · C(u_{k-1}, km - t - σ) C(n - u_{k-1}, t - u_{k-1})
//! ```
//!
//! where `σ = m_2 + ... + m_{k-1}` and `u_j = j·m - m_2 - ... - m_j` is the
//! union size after `j` agents. A binomial with a negative argument or with
//! `b > a` is zero and prunes its branch. Stated for `k ≥ 4` only.

use core::fmt;
use core::sync::atomic::{AtomicBool, Ordering};

use num_traits::Zero;

use crate::abide;
use crate::combinatorics::{binomial, power, Natural};
use crate::params::{Params, Scheme};
use crate::probability::{ExactProbability, Rational};

pub const DEFAULT_TERM_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegacyError {
    UnsupportedAgentCount { k: u64 },
    BudgetExceeded { budget: u64 },
    Cancelled,
}

impl fmt::Display for LegacyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LegacyError::UnsupportedAgentCount { k } => {
                write!(f, "the nested-sum formula needs k ≥ 4 agents (got k={k})")
            }
            LegacyError::BudgetExceeded { budget } => {
                write!(f, "nested sum exceeded its budget of {budget} terms")
            }
            LegacyError::Cancelled => f.write_str("nested-sum evaluation was cancelled"),
        }
    }
}

impl core::error::Error for LegacyError {}

#[derive(Debug, Clone, Copy)]
pub struct LegacyOptions<'a> {
    /// Maximum number of index tuples visited, pruned branches included.
    pub term_budget: u64,
    /// Polled between branches; evaluation stops once it reads `true`.
    pub cancel: Option<&'a AtomicBool>,
}

impl Default for LegacyOptions<'_> {
    fn default() -> Self {
        LegacyOptions {
            term_budget: DEFAULT_TERM_BUDGET,
            cancel: None,
        }
    }
}

pub fn legacy_probability(p: &Params, t: u64) -> Result<ExactProbability, LegacyError> {
    legacy_probability_with(p, t, &LegacyOptions::default())
}

pub fn legacy_probability_with(
    p: &Params,
    t: u64,
    options: &LegacyOptions<'_>,
) -> Result<ExactProbability, LegacyError> {
    if p.k() < 4 {
        return Err(LegacyError::UnsupportedAgentCount { k: p.k() });
    }
    assert!(p.fits(Scheme::Abide), "nested-sum formula needs m ≤ n, got {p}");
    let mut walk = NestedSum {
        n: p.n() as i128,
        m: p.m() as i128,
        k: p.k() as i128,
        t: t as i128,
        visited: 0,
        options,
        total: Natural::zero(),
    };
    walk.descend(2, 0, Natural::from(1u32))?;
    let denominator = power(&binomial(p.n(), p.m()), p.k() - 1);
    Ok(ExactProbability::from_ratio_unchecked(Rational::new(walk.total, denominator)))
}

/// Full distribution via the nested sum, `t` over `0 ..= min(mk, n)`.
pub fn legacy_distribution(
    p: &Params,
    options: &LegacyOptions<'_>,
) -> Result<alloc::vec::Vec<(u64, ExactProbability)>, LegacyError> {
    (0..=p.max_coverage())
        .map(|t| legacy_probability_with(p, t, options).map(|prob| (t, prob)))
        .collect()
}

struct NestedSum<'a, 'b> {
    n: i128,
    m: i128,
    k: i128,
    t: i128,
    visited: u64,
    options: &'a LegacyOptions<'b>,
    total: Natural,
}

impl NestedSum<'_, '_> {
    /// Chooses `m_j` given `overlap = m_2 + ... + m_{j-1}` and the running
    /// product of the binomials to the left.
    fn descend(&mut self, j: i128, overlap: i128, product: Natural) -> Result<(), LegacyError> {
        self.tick()?;
        let covered = (j - 1) * self.m - overlap;
        if j == self.k {
            let last = signed_binomial(covered, self.k * self.m - self.t - overlap)
                * signed_binomial(self.n - covered, self.t - covered);
            self.total += product * last;
            return Ok(());
        }
        for mj in 0..=self.m {
            let factor = signed_binomial(covered, mj) * signed_binomial(self.n - covered, self.m - mj);
            if factor.is_zero() {
                self.tick()?;
                continue;
            }
            self.descend(j + 1, overlap + mj, &product * factor)?;
        }
        Ok(())
    }

    fn tick(&mut self) -> Result<(), LegacyError> {
        self.visited += 1;
        if self.visited > self.options.term_budget {
            return Err(LegacyError::BudgetExceeded {
                budget: self.options.term_budget,
            });
        }
        if let Some(flag) = self.options.cancel {
            if flag.load(Ordering::Relaxed) {
                return Err(LegacyError::Cancelled);
            }
        }
        Ok(())
    }
}

fn signed_binomial(a: i128, b: i128) -> Natural {
    if a < 0 || b < 0 || b > a {
        Natural::zero()
    } else {
        binomial(a as u64, b as u64)
    }
}

/// Compares the nested sum with the closed form for one `(p, t)`.
pub fn agrees_with_closed_form(p: &Params, t: u64, options: &LegacyOptions<'_>) -> Result<bool, LegacyError> {
    Ok(legacy_probability_with(p, t, options)? == abide::coverage_probability(p, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abide(n: u64, m: u64, k: u64) -> Params {
        Params::abide(n, m, k).unwrap()
    }

    #[test]
    fn matches_closed_form_examples() {
        let p = abide(8, 1, 4);
        assert_eq!(legacy_probability(&p, 4).unwrap(), abide::coverage_probability(&p, 4));
        let p = abide(6, 2, 4);
        assert_eq!(legacy_probability(&p, 2).unwrap(), abide::coverage_probability(&p, 2));
        assert!(legacy_probability(&p, 9).unwrap().is_zero());
    }

    #[test]
    fn rejects_fewer_than_four_agents() {
        assert_eq!(
            legacy_probability(&abide(6, 2, 3), 3),
            Err(LegacyError::UnsupportedAgentCount { k: 3 })
        );
    }

    #[test]
    fn budget_and_cancellation() {
        let p = abide(8, 2, 6);
        let tight = LegacyOptions {
            term_budget: 10,
            cancel: None,
        };
        assert_eq!(
            legacy_probability_with(&p, 6, &tight),
            Err(LegacyError::BudgetExceeded { budget: 10 })
        );

        let flag = AtomicBool::new(true);
        let cancelled = LegacyOptions {
            cancel: Some(&flag),
            ..LegacyOptions::default()
        };
        assert_eq!(legacy_probability_with(&p, 6, &cancelled), Err(LegacyError::Cancelled));
    }

    #[test]
    fn distribution_sums_to_one() {
        let p = abide(7, 2, 5);
        let dist = legacy_distribution(&p, &LegacyOptions::default()).unwrap();
        let total = dist
            .iter()
            .fold(Rational::zero(), |acc, (_, prob)| acc + prob.as_ratio());
        assert_eq!(total, Rational::from_integer(Natural::from(1u32)));
    }
}
