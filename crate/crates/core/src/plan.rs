//! Agent-count planning: the fewest agents that leave the collector holding
//! data from at least `t_min` distinct nodes with a required confidence.

use core::fmt;

use num_traits::One;

use crate::combinatorics::Natural;
use crate::params::{Params, ParamsError, Scheme};
use crate::probability::{ExactProbability, Rational};
use crate::{abide, eabide};

pub const DEFAULT_K_MAX: u64 = 1_000_000;

/// `Pr(T ≥ t_min)` under `scheme`.
pub fn tail_probability(p: &Params, scheme: Scheme, t_min: u64) -> ExactProbability {
    match scheme {
        Scheme::Abide => abide::tail_probability(p, t_min),
        Scheme::Eabide => eabide::tail_probability_star(p, t_min),
    }
}

/// Closed-form `E[T]` under `scheme`.
pub fn mean_coverage(p: &Params, scheme: Scheme) -> Rational {
    match scheme {
        Scheme::Abide => abide::mean_coverage_closed_form(p),
        Scheme::Eabide => eabide::mean_coverage_star_closed_form(p),
    }
}

/// Markov's inequality, `Pr(T ≥ t_min) ≤ min(1, E[T] / t_min)`.
pub fn markov_bound(p: &Params, scheme: Scheme, t_min: u64) -> ExactProbability {
    assert!(t_min >= 1, "Markov bound needs t_min ≥ 1");
    let bound = mean_coverage(p, scheme) / Rational::from_integer(Natural::from(t_min));
    ExactProbability::from_ratio_unchecked(bound.min(Rational::one()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanError {
    Params(ParamsError),
    ZeroTarget,
    ConfidenceOutOfRange,
    ZeroAgentCap,
}

impl fmt::Display for PlanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanError::Params(e) => e.fmt(f),
            PlanError::ZeroTarget => f.write_str("t must satisfy t ≥ 1"),
            PlanError::ConfidenceOutOfRange => f.write_str("confidence must satisfy 0 < confidence < 1"),
            PlanError::ZeroAgentCap => f.write_str("k-max must satisfy k-max ≥ 1"),
        }
    }
}

impl core::error::Error for PlanError {}

impl From<ParamsError> for PlanError {
    fn from(e: ParamsError) -> Self {
        PlanError::Params(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanQuery {
    n: u64,
    m: u64,
    t_min: u64,
    confidence: ExactProbability,
    scheme: Scheme,
    k_max: u64,
}

impl PlanQuery {
    /// `t_min > n` is accepted here; [`min_agents`] reports it as infeasible.
    pub fn new(
        scheme: Scheme,
        n: u64,
        m: u64,
        t_min: u64,
        confidence: ExactProbability,
        k_max: u64,
    ) -> Result<Self, PlanError> {
        Params::new(scheme, n, m, 1)?;
        if t_min == 0 {
            return Err(PlanError::ZeroTarget);
        }
        if confidence.is_zero() || confidence == ExactProbability::one() {
            return Err(PlanError::ConfidenceOutOfRange);
        }
        if k_max == 0 {
            return Err(PlanError::ZeroAgentCap);
        }
        Params::new(scheme, n, m, k_max)?;
        Ok(PlanQuery {
            n,
            m,
            t_min,
            confidence,
            scheme,
            k_max,
        })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn t_min(&self) -> u64 {
        self.t_min
    }

    pub fn confidence(&self) -> &ExactProbability {
        &self.confidence
    }

    pub fn k_max(&self) -> u64 {
        self.k_max
    }

    pub fn params(&self, k: u64) -> Params {
        Params::new(self.scheme, self.n, self.m, k).expect("validated against k_max")
    }

    pub fn tail(&self, k: u64) -> ExactProbability {
        tail_probability(&self.params(k), self.scheme, self.t_min)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// No number of agents can cover more than `n` nodes.
    TargetExceedsNetwork { t_min: u64, n: u64 },
    /// Even `k_max` agents fall short; `achieved` is the tail at `k_max`.
    AgentCapReached { k_max: u64, achieved: ExactProbability },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::TargetExceedsNetwork { t_min, n } => {
                write!(f, "t must satisfy t ≤ n (got t={t_min}, n={n})")
            }
            Infeasibility::AgentCapReached { k_max, achieved } => write!(
                f,
                "k-max={k_max} agents reach the target only with probability {}",
                achieved.to_decimal(6)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanOutcome {
    Feasible {
        agents: u64,
        tail: ExactProbability,
        /// Tail with one agent fewer; `None` when `agents == 1`.
        previous_tail: Option<ExactProbability>,
        evaluations: u32,
    },
    Infeasible(Infeasibility),
}

/// Smallest `k ≤ k_max` with `Pr(T ≥ t_min) ≥ confidence`.
///
/// The tail is nondecreasing in `k`, so the search doubles `k` until the
/// target is met and then bisects the last doubling interval.
pub fn min_agents(q: &PlanQuery) -> PlanOutcome {
    if q.t_min > q.n {
        return PlanOutcome::Infeasible(Infeasibility::TargetExceedsNetwork { t_min: q.t_min, n: q.n });
    }
    let mut evaluations = 0u32;
    let mut eval = |k: u64| {
        evaluations += 1;
        q.tail(k)
    };

    // Invariant: tail(lo) < confidence (or lo = 0), tail(hi) ≥ confidence.
    let mut lo = 0u64;
    let mut lo_tail: Option<ExactProbability> = None;
    let mut hi = 1u64;
    let mut hi_tail = eval(hi);
    while hi_tail < q.confidence {
        if hi == q.k_max {
            return PlanOutcome::Infeasible(Infeasibility::AgentCapReached {
                k_max: q.k_max,
                achieved: hi_tail,
            });
        }
        lo = hi;
        lo_tail = Some(hi_tail);
        hi = hi.saturating_mul(2).min(q.k_max);
        hi_tail = eval(hi);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let tail = eval(mid);
        if tail >= q.confidence {
            hi = mid;
            hi_tail = tail;
        } else {
            lo = mid;
            lo_tail = Some(tail);
        }
    }
    PlanOutcome::Feasible {
        agents: hi,
        tail: hi_tail,
        previous_tail: lo_tail,
        evaluations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prob(s: &str) -> ExactProbability {
        s.parse().unwrap()
    }

    fn ratio(n: u64, d: u64) -> Rational {
        Rational::new(Natural::from(n), Natural::from(d))
    }

    fn agents(outcome: PlanOutcome) -> u64 {
        match outcome {
            PlanOutcome::Feasible { agents, .. } => agents,
            other => panic!("expected a feasible plan, got {other:?}"),
        }
    }

    #[test]
    fn tail_examples() {
        let p = Params::abide(4, 2, 2).unwrap();
        assert_eq!(tail_probability(&p, Scheme::Abide, 3).as_ratio(), &ratio(5, 6));
        assert_eq!(tail_probability(&p, Scheme::Abide, 0), ExactProbability::one());
        assert_eq!(tail_probability(&p, Scheme::Abide, 1), ExactProbability::one());
        assert!(tail_probability(&p, Scheme::Abide, 5).is_zero());
    }

    #[test]
    fn planner_examples() {
        let q = PlanQuery::new(Scheme::Abide, 4, 2, 2, prob("99/100"), DEFAULT_K_MAX).unwrap();
        assert_eq!(agents(min_agents(&q)), 1);
        let q = PlanQuery::new(Scheme::Abide, 4, 2, 3, prob("4/5"), DEFAULT_K_MAX).unwrap();
        assert_eq!(agents(min_agents(&q)), 2);
        let q = PlanQuery::new(Scheme::Abide, 4, 2, 3, prob("9/10"), DEFAULT_K_MAX).unwrap();
        assert_eq!(agents(min_agents(&q)), 3);
        let q = PlanQuery::new(Scheme::Eabide, 1, 1, 1, prob("0.999"), DEFAULT_K_MAX).unwrap();
        assert_eq!(agents(min_agents(&q)), 1);
    }

    #[test]
    fn planner_infeasible() {
        let q = PlanQuery::new(Scheme::Abide, 4, 2, 5, prob("0.5"), DEFAULT_K_MAX).unwrap();
        assert_eq!(
            min_agents(&q),
            PlanOutcome::Infeasible(Infeasibility::TargetExceedsNetwork { t_min: 5, n: 4 })
        );
        let q = PlanQuery::new(Scheme::Eabide, 20, 1, 20, prob("0.99"), 5).unwrap();
        match min_agents(&q) {
            PlanOutcome::Infeasible(Infeasibility::AgentCapReached { k_max, achieved }) => {
                assert_eq!(k_max, 5);
                assert!(achieved.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn query_validation() {
        assert_eq!(
            PlanQuery::new(Scheme::Abide, 4, 2, 0, prob("0.5"), 10),
            Err(PlanError::ZeroTarget)
        );
        assert_eq!(
            PlanQuery::new(Scheme::Abide, 4, 2, 2, ExactProbability::one(), 10),
            Err(PlanError::ConfidenceOutOfRange)
        );
        assert_eq!(
            PlanQuery::new(Scheme::Abide, 4, 2, 2, ExactProbability::zero(), 10),
            Err(PlanError::ConfidenceOutOfRange)
        );
        assert_eq!(
            PlanQuery::new(Scheme::Abide, 4, 2, 2, prob("0.5"), 0),
            Err(PlanError::ZeroAgentCap)
        );
        assert!(matches!(
            PlanQuery::new(Scheme::Abide, 2, 3, 2, prob("0.5"), 10),
            Err(PlanError::Params(ParamsError::MemoryExceedsNodes { .. }))
        ));
    }

    #[test]
    fn markov_examples() {
        let p = Params::abide(4, 2, 2).unwrap();
        assert_eq!(markov_bound(&p, Scheme::Abide, 4).as_ratio(), &ratio(3, 4));
        assert_eq!(markov_bound(&p, Scheme::Abide, 3), ExactProbability::one());
        let p = Params::abide(2, 1, 2).unwrap();
        let bound = markov_bound(&p, Scheme::Abide, 2);
        assert_eq!(bound.as_ratio(), &ratio(3, 4));
        assert!(tail_probability(&p, Scheme::Abide, 2) <= bound);
        assert_eq!(tail_probability(&p, Scheme::Abide, 2).as_ratio(), &ratio(1, 2));
    }
}
