//! Monte Carlo sampling of agent visits.
//!
//! Trial `i` of a run seeded with `s` draws from ChaCha8 stream `i` under a
//! key derived from `s`, so any partition of the trial range across workers
//! reproduces the same per-trial outcomes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_traits::Zero;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::Natural;
use crate::distribution::{support, CoverageDistribution};
use crate::params::{Params, Scheme};
use crate::probability::Rational;

const WORD: usize = 64;

/// `k × n` occupancy matrix: bit `(i, j)` is set iff agent `i` collected
/// data from node `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl VisitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD);
        VisitMatrix {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    /// Builds a matrix from rows of `0`/`1` entries.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut matrix = VisitMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged visit matrix");
            for (j, &cell) in row.iter().enumerate() {
                if cell != 0 {
                    matrix.set(i, j);
                }
            }
        }
        matrix
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols);
        self.bits[row * self.stride + col / WORD] >> (col % WORD) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize) {
        assert!(row < self.rows && col < self.cols);
        self.bits[row * self.stride + col / WORD] |= 1 << (col % WORD);
    }

    pub fn clear(&mut self) {
        self.bits.fill(0);
    }

    fn row_words(&self, row: usize) -> &[u64] {
        &self.bits[row * self.stride..(row + 1) * self.stride]
    }

    pub fn row_weight(&self, row: usize) -> usize {
        self.row_words(row).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of columns containing at least one set bit.
    pub fn union_size(&self) -> usize {
        (0..self.stride)
            .map(|w| {
                (0..self.rows)
                    .fold(0u64, |acc, r| acc | self.bits[r * self.stride + w])
                    .count_ones() as usize
            })
            .sum()
    }
}

impl fmt::Display for VisitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
            if r + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

pub fn union_size(v: &VisitMatrix) -> u64 {
    v.union_size() as u64
}

/// Independent random stream for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn sample_trial<R: Rng + ?Sized>(p: &Params, scheme: Scheme, rng: &mut R) -> VisitMatrix {
    let mut matrix = VisitMatrix::zeros(p.k() as usize, p.n() as usize);
    sample_into(p, scheme, rng, &mut matrix);
    matrix
}

/// Refills `matrix` (shape `k × n`) with a fresh trial.
pub fn sample_into<R: Rng + ?Sized>(p: &Params, scheme: Scheme, rng: &mut R, matrix: &mut VisitMatrix) {
    assert!(p.fits(scheme), "{p} is not valid for {scheme}");
    assert_eq!((matrix.rows(), matrix.cols()), (p.k() as usize, p.n() as usize));
    matrix.clear();
    let n = p.n() as usize;
    let m = p.m() as usize;
    for row in 0..p.k() as usize {
        match scheme {
            Scheme::Abide => {
                for col in index::sample(rng, n, m) {
                    matrix.set(row, col);
                }
            }
            Scheme::Eabide => {
                for _ in 0..m {
                    matrix.set(row, rng.gen_range(0..n));
                }
            }
        }
    }
}

/// Coverage-size counts for the trials in `trials`.
pub fn tally_trials(p: &Params, scheme: Scheme, seed: u64, trials: Range<u64>) -> BTreeMap<u64, u64> {
    let mut counts = BTreeMap::new();
    let mut matrix = VisitMatrix::zeros(p.k() as usize, p.n() as usize);
    for trial in trials {
        let mut rng = trial_rng(seed, trial);
        sample_into(p, scheme, &mut rng, &mut matrix);
        *counts.entry(union_size(&matrix)).or_insert(0) += 1;
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationResult {
    params: Params,
    scheme: Scheme,
    trials: u64,
    seed: u64,
    counts: BTreeMap<u64, u64>,
}

impl SimulationResult {
    /// Assembles a result from per-worker tallies covering `0..trials`.
    pub fn from_tallies(
        params: Params,
        scheme: Scheme,
        trials: u64,
        seed: u64,
        tallies: impl IntoIterator<Item = BTreeMap<u64, u64>>,
    ) -> Self {
        let mut counts = BTreeMap::new();
        for tally in tallies {
            for (t, c) in tally {
                *counts.entry(t).or_insert(0) += c;
            }
        }
        debug_assert_eq!(counts.values().sum::<u64>(), trials);
        debug_assert!(counts.keys().all(|t| support(&params, scheme).contains(t)));
        SimulationResult {
            params,
            scheme,
            trials,
            seed,
            counts,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count(&self, t: u64) -> u64 {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    /// `counts(t) / trials`.
    pub fn empirical(&self, t: u64) -> Rational {
        Rational::new(Natural::from(self.count(t)), Natural::from(self.trials))
    }
}

/// Runs `trials` trials on the calling thread.
pub fn run_simulation(p: &Params, scheme: Scheme, trials: u64, seed: u64) -> SimulationResult {
    assert!(trials >= 1, "at least one trial is required");
    let tally = tally_trials(p, scheme, seed, 0..trials);
    SimulationResult::from_tallies(*p, scheme, trials, seed, [tally])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MismatchError {
    pub exact: (Params, Scheme),
    pub simulated: (Params, Scheme),
}

impl fmt::Display for MismatchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot compare {} {} against a simulation of {} {}",
            self.exact.1, self.exact.0, self.simulated.1, self.simulated.0
        )
    }
}

impl core::error::Error for MismatchError {}

/// `½ Σ_t |exact(t) − empirical(t)|`, exactly.
pub fn total_variation(
    dist: &CoverageDistribution,
    sim: &SimulationResult,
) -> Result<Rational, MismatchError> {
    if dist.params() != sim.params() || dist.scheme() != sim.scheme() {
        return Err(MismatchError {
            exact: (*dist.params(), dist.scheme()),
            simulated: (*sim.params(), sim.scheme()),
        });
    }
    let mut ts: Vec<u64> = dist.iter().map(|(t, _)| t).collect();
    ts.extend(sim.counts().keys().copied());
    ts.sort_unstable();
    ts.dedup();
    let sum = ts.into_iter().fold(Rational::zero(), |acc, t| {
        let exact = dist.mass(t).into_ratio();
        let empirical = sim.empirical(t);
        acc + abs_diff(&exact, &empirical)
    });
    Ok(sum / Rational::from_integer(Natural::from(2u32)))
}

/// Total variation between two `t ↦ probability` laws.
pub fn total_variation_between<'a>(
    a: impl IntoIterator<Item = (u64, &'a Rational)>,
    b: impl IntoIterator<Item = (u64, &'a Rational)>,
) -> Rational {
    let mut merged: BTreeMap<u64, (Rational, Rational)> = BTreeMap::new();
    for (t, p) in a {
        merged.entry(t).or_default().0 += p;
    }
    for (t, q) in b {
        merged.entry(t).or_default().1 += q;
    }
    let sum = merged
        .values()
        .fold(Rational::zero(), |acc, (p, q)| acc + abs_diff(p, q));
    sum / Rational::from_integer(Natural::from(2u32))
}

fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a - b
    } else {
        b - a
    }
}
