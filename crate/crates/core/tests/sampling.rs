use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use roving_core::simulate::{run_simulation, sample_trial, total_variation, trial_rng};
use roving_core::{coverage_distribution, Params, Scheme};

#[test]
fn distinct_rows_are_uniform() {
    let p = Params::abide(4, 2, 1).unwrap();
    let trials = 60_000u64;
    let mut freq: BTreeMap<String, u64> = BTreeMap::new();
    for trial in 0..trials {
        let row = sample_trial(&p, Scheme::Abide, &mut trial_rng(2024, trial)).to_string();
        *freq.entry(row).or_default() += 1;
    }
    assert_eq!(freq.len(), 6, "{freq:?}");
    let expected = trials as f64 / 6.0;
    let sigma = (trials as f64 * (1.0 / 6.0) * (5.0 / 6.0)).sqrt();
    for (row, count) in &freq {
        assert!((*count as f64 - expected).abs() <= 4.0 * sigma, "{row}: {count}");
    }
}

#[test]
fn empirical_masses_track_exact_law() {
    let p = Params::abide(4, 2, 2).unwrap();
    let trials = 100_000u64;
    let sim = run_simulation(&p, Scheme::Abide, trials, 11);
    let exact = coverage_distribution(&p, Scheme::Abide);
    for (t, mass) in exact.iter() {
        let q = mass.as_ratio().to_f64().unwrap();
        let got = sim.empirical(t).to_f64().unwrap();
        let tolerance = 4.0 * (q * (1.0 - q) / trials as f64).sqrt();
        assert!((got - q).abs() <= tolerance, "t={t}: {got} vs {q}");
    }
    let tv = total_variation(&exact, &sim).unwrap().to_f64().unwrap();
    assert!(tv <= 0.01, "tv={tv}");
}

#[test]
fn eabide_rows_hold_between_one_and_m_nodes() {
    let p = Params::eabide(3, 5, 4).unwrap();
    for trial in 0..500 {
        let v = sample_trial(&p, Scheme::Eabide, &mut trial_rng(8, trial));
        for r in 0..v.rows() {
            assert!((1..=3).contains(&v.row_weight(r)));
        }
    }
}
