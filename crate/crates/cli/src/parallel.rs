//! Multi-threaded driver for the seeded trial sampler.

use std::num::NonZeroUsize;
use std::thread;

use roving_core::simulate::tally_trials;
use roving_core::{Params, Scheme, SimulationResult};

/// Runs `trials` seeded trials on up to `workers` threads.
///
/// Every trial draws from its own `(seed, trial)` stream and tallies merge by
/// addition, so the result does not depend on `workers`.
pub fn run_simulation(
    p: &Params,
    scheme: Scheme,
    trials: u64,
    seed: u64,
    workers: NonZeroUsize,
) -> SimulationResult {
    assert!(trials >= 1, "at least one trial is required");
    let workers = (workers.get() as u64).min(trials);
    let chunk = trials.div_ceil(workers);
    let tallies = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let range = w * chunk..((w + 1) * chunk).min(trials);
                scope.spawn(move || tally_trials(p, scheme, seed, range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation worker panicked"))
            .collect::<Vec<_>>()
    });
    SimulationResult::from_tallies(*p, scheme, trials, seed, tallies)
}

pub fn default_workers() -> NonZeroUsize {
    thread::available_parallelism().unwrap_or(NonZeroUsize::MIN)
}
