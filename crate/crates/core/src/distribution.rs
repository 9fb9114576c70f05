use alloc::collections::BTreeMap;
use core::ops::RangeInclusive;

use num_traits::Zero;

use crate::combinatorics::Natural;
use crate::params::{Params, Scheme};
use crate::probability::{ExactProbability, Rational};

/// Law of the coverage size `T = |S_1 ∪ ... ∪ S_k|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageDistribution {
    params: Params,
    scheme: Scheme,
    mass: BTreeMap<u64, ExactProbability>,
}

impl CoverageDistribution {
    /// Builds the distribution from unnormalized weights `numerators[i]`
    /// for `t = first + i`, all over the shared `denominator`.
    pub(crate) fn from_numerators(
        params: Params,
        scheme: Scheme,
        first: u64,
        numerators: impl IntoIterator<Item = Natural>,
        denominator: &Natural,
    ) -> Self {
        let mass = numerators
            .into_iter()
            .zip(first..)
            .map(|(num, t)| {
                let p = ExactProbability::from_ratio_unchecked(Rational::new(num, denominator.clone()));
                (t, p)
            })
            .collect();
        CoverageDistribution { params, scheme, mass }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// Coverage sizes that can occur under the scheme.
    pub fn support(&self) -> RangeInclusive<u64> {
        support(&self.params, self.scheme)
    }

    /// `Pr(T = t)`; zero outside the support.
    pub fn mass(&self, t: u64) -> ExactProbability {
        self.mass.get(&t).cloned().unwrap_or_else(ExactProbability::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &ExactProbability)> + '_ {
        self.mass.iter().map(|(t, p)| (*t, p))
    }

    pub fn total(&self) -> Rational {
        self.mass
            .values()
            .fold(Rational::zero(), |acc, p| acc + p.as_ratio())
    }

    pub fn mean(&self) -> Rational {
        self.mass.iter().fold(Rational::zero(), |acc, (t, p)| {
            acc + p.as_ratio() * Rational::from_integer(Natural::from(*t))
        })
    }

    /// Smallest most-likely coverage size.
    pub fn mode(&self) -> u64 {
        let mut best: Option<(u64, &ExactProbability)> = None;
        for (t, p) in &self.mass {
            if best.is_none_or(|(_, b)| p > b) {
                best = Some((*t, p));
            }
        }
        best.map(|(t, _)| t).unwrap_or(0)
    }

    /// `Pr(T ≥ t_min)`.
    pub fn tail(&self, t_min: u64) -> ExactProbability {
        let sum = self
            .mass
            .range(t_min..)
            .fold(Rational::zero(), |acc, (_, p)| acc + p.as_ratio());
        ExactProbability::from_ratio_unchecked(sum)
    }
}

/// `[m, min(mk, n)]` for ABIDE, `[1, min(mk, n)]` for EABIDE.
pub fn support(params: &Params, scheme: Scheme) -> RangeInclusive<u64> {
    let lo = match scheme {
        Scheme::Abide => params.m(),
        Scheme::Eabide => 1,
    };
    lo..=params.max_coverage()
}
