//! Exact and simulated coverage laws for randomly roving monitoring agents.
//!
//! `k` agents roam a network of `n` nodes and each returns data from up to
//! `m` nodes to a single collector. Two collection schemes are modeled:
//!
//! * [`Scheme::Abide`]: each agent visits exactly `m` distinct nodes, chosen
//!   uniformly among all `m`-subsets.
//! * [`Scheme::Eabide`]: each agent fills `m` memory cells with independent
//!   uniform node draws, so it may hold repeated data.
//!
//! The random variable of interest is `T`, the number of distinct nodes the
//! collector ends up with. Every law here is computed with exact integers and
//! reduced rationals; decimal output is produced only on request.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod abide;
pub mod combinatorics;
pub mod distribution;
pub mod eabide;
pub mod legacy;
pub mod params;
pub mod plan;
pub mod probability;
pub mod simulate;

pub use combinatorics::Natural;
pub use distribution::CoverageDistribution;
pub use params::{Params, ParamsError, Scheme};
pub use probability::{ExactProbability, Rational};
pub use simulate::{SimulationResult, VisitMatrix};

/// Exact coverage distribution of `p` under `scheme`.
pub fn coverage_distribution(p: &Params, scheme: Scheme) -> CoverageDistribution {
    match scheme {
        Scheme::Abide => abide::coverage_distribution(p),
        Scheme::Eabide => eabide::coverage_distribution_star(p),
    }
}

/// `Pr(T = t)` under `scheme`.
pub fn coverage_probability(p: &Params, scheme: Scheme, t: u64) -> ExactProbability {
    match scheme {
        Scheme::Abide => abide::coverage_probability(p, t),
        Scheme::Eabide => eabide::coverage_probability_star(p, t),
    }
}
