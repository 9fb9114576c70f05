//! Cross-checks between independent evaluation routes.

use std::fmt;
use std::num::NonZeroUsize;

use roving_core::combinatorics::{factorial, stirling2_inclusion_exclusion, stirling2_recurrence};
use roving_core::legacy::{legacy_probability_with, LegacyOptions};
use roving_core::plan::{markov_bound, tail_probability};
use roving_core::probability::to_decimal;
use roving_core::simulate::total_variation;
use roving_core::{abide, coverage_distribution, eabide, Params, Rational, Scheme};

use crate::parallel;

/// Simulation grid `(n, m, k)`, checked under both schemes.
pub const SIMULATION_GRID: [(u64, u64, u64); 3] = [(10, 2, 3), (50, 5, 10), (20, 4, 2)];
/// Largest allowed total-variation distance at the default trial count.
pub const TV_THRESHOLD: (u64, u64) = (2, 100);

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub exact: bool,
    pub legacy: bool,
    pub simulation: bool,
    pub legacy_agents: u64,
    pub legacy_n_max: u64,
    pub legacy_m_max: u64,
    pub term_budget: u64,
    pub trials: u64,
    pub seed: u64,
    pub workers: NonZeroUsize,
    /// Corrupts one side of the scheme-equivalence check; test-only.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            exact: true,
            legacy: true,
            simulation: true,
            legacy_agents: 4,
            legacy_n_max: 8,
            legacy_m_max: 2,
            term_budget: roving_core::legacy::DEFAULT_TERM_BUDGET,
            trials: 100_000,
            seed: crate::DEFAULT_SEED,
            workers: parallel::default_workers(),
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &'static str) -> Self {
        CheckReport {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn expect_eq<T: PartialEq + fmt::Display>(&mut self, what: impl fmt::Display, left: T, right: T) {
        self.cases += 1;
        if left != right {
            self.failures.push(format!("{what}: {left} != {right}"));
        }
    }

    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<14} {} cases", self.name, self.cases)?;
        for failure in &self.failures {
            write!(f, "\n     {failure}")?;
        }
        Ok(())
    }
}

pub fn run(config: &VerifyConfig) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    if config.exact {
        reports.push(stirling());
        reports.push(scheme_equivalence(config.inject_fault));
        reports.push(means());
        reports.push(normalization());
        reports.push(tails());
    }
    if config.legacy {
        reports.push(legacy(config));
    }
    if config.simulation {
        reports.push(simulation(config));
    }
    reports
}

/// `(n, m, k)` with `n ≤ 8`, `m ≤ 4`, `k ≤ 3`.
fn exact_grid() -> impl Iterator<Item = (u64, u64, u64)> {
    (1..=8).flat_map(|n| (1..=4).flat_map(move |m| (1..=3).map(move |k| (n, m, k))))
}

fn stirling() -> CheckReport {
    let mut report = CheckReport::new("stirling");
    for n in 0..=40 {
        for k in 0..=n {
            report.expect_eq(
                format_args!("S({n}, {k})"),
                stirling2_recurrence(n, k),
                stirling2_inclusion_exclusion(n, k),
            );
        }
    }
    for draws in 1..=30 {
        for t in 1..=draws {
            report.expect_eq(
                format_args!("R(mk={draws}, t={t})"),
                factorial(t) * stirling2_recurrence(draws, t),
                eabide::r_count_direct(draws, 1, t),
            );
        }
    }
    report
}

fn scheme_equivalence(inject_fault: bool) -> CheckReport {
    let mut report = CheckReport::new("equivalence");
    for (n, m, k) in exact_grid() {
        let p = Params::eabide(n, m, k).expect("grid values are valid");
        let mut reduced = eabide::reduce_to_abide(&p);
        if inject_fault {
            reduced = reduced.with_agents(reduced.k() + 1).expect("still valid");
        }
        for t in 0..=n + 1 {
            report.expect_eq(
                format_args!("P*({n},{m},{k}; t={t}) vs P({n},1,{}; t={t})", reduced.k()),
                eabide::coverage_probability_star(&p, t),
                abide::coverage_probability(&reduced, t),
            );
        }
    }
    report
}

fn means() -> CheckReport {
    let mut report = CheckReport::new("means");
    for (n, m, k) in exact_grid() {
        let star = Params::eabide(n, m, k).expect("grid values are valid");
        report.expect_eq(
            format_args!("eabide mean {star}"),
            coverage_distribution(&star, Scheme::Eabide).mean(),
            eabide::mean_coverage_star_closed_form(&star),
        );
        if let Ok(p) = Params::abide(n, m, k) {
            report.expect_eq(
                format_args!("abide mean {p}"),
                coverage_distribution(&p, Scheme::Abide).mean(),
                abide::mean_coverage_closed_form(&p),
            );
        }
    }
    report
}

fn normalization() -> CheckReport {
    let mut report = CheckReport::new("normalization");
    let one = Rational::from_integer(1u32.into());
    for (n, m, k) in exact_grid() {
        for scheme in Scheme::ALL {
            if let Ok(p) = Params::new(scheme, n, m, k) {
                report.expect_eq(
                    format_args!("{scheme} {p} total"),
                    coverage_distribution(&p, scheme).total(),
                    one.clone(),
                );
            }
        }
    }
    report
}

/// Markov dominance and monotonicity of the tail in `k`.
fn tails() -> CheckReport {
    let mut report = CheckReport::new("tails");
    for n in 1..=6 {
        for m in 1..=3 {
            for scheme in Scheme::ALL {
                let Ok(base) = Params::new(scheme, n, m, 1) else {
                    continue;
                };
                for t_min in 1..=n {
                    let mut prev = tail_probability(&base, scheme, t_min);
                    for k in 1..=4 {
                        let p = base.with_agents(k).expect("small grid");
                        let tail = tail_probability(&p, scheme, t_min);
                        let bound = markov_bound(&p, scheme, t_min);
                        report.expect(tail <= bound, || {
                            format!("{scheme} {p} t≥{t_min}: tail {tail} > Markov bound {bound}")
                        });
                        report.expect(tail >= prev, || {
                            format!("{scheme} {p} t≥{t_min}: tail {tail} < tail with k-1 {prev}")
                        });
                        prev = tail;
                    }
                }
            }
        }
    }
    report
}

fn legacy(config: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("legacy");
    let options = LegacyOptions {
        term_budget: config.term_budget,
        cancel: None,
    };
    for n in 1..=config.legacy_n_max {
        for m in 1..=config.legacy_m_max.min(n) {
            let p = match Params::abide(n, m, config.legacy_agents) {
                Ok(p) => p,
                Err(e) => {
                    report.expect(false, || format!("({n},{m},{}): {e}", config.legacy_agents));
                    continue;
                }
            };
            for t in 0..=n + 1 {
                match legacy_probability_with(&p, t, &options) {
                    Ok(value) => report.expect_eq(
                        format_args!("nested sum vs closed form {p} t={t}"),
                        value,
                        abide::coverage_probability(&p, t),
                    ),
                    Err(e) => report.expect(false, || format!("{p} t={t}: {e}")),
                }
            }
        }
    }
    report
}

fn simulation(config: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("simulation");
    let threshold = Rational::new(TV_THRESHOLD.0.into(), TV_THRESHOLD.1.into());
    for (n, m, k) in SIMULATION_GRID {
        for scheme in Scheme::ALL {
            let p = Params::new(scheme, n, m, k).expect("grid values are valid");
            let sim = parallel::run_simulation(&p, scheme, config.trials, config.seed, config.workers);
            let exact = coverage_distribution(&p, scheme);
            let tv = total_variation(&exact, &sim).expect("same params and scheme");
            report.expect(tv <= threshold, || {
                format!(
                    "{scheme} {p}: total variation {} exceeds {}",
                    to_decimal(&tv, 6),
                    to_decimal(&threshold, 6)
                )
            });
        }
    }
    report
}
