//! Brute-force enumeration oracles. Nothing here calls into the closed forms.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::Ratio;

pub type Law = BTreeMap<u64, Ratio<BigUint>>;

/// All `m`-subsets of `{0, ..., n-1}` as bitmasks.
pub fn subsets(n: u32, m: u32) -> Vec<u64> {
    (0u64..1 << n).filter(|s| s.count_ones() == m).collect()
}

/// Tallies `|S_1 ∪ ... ∪ S_k|` over every ordered tuple of `m`-subsets.
pub fn enumerate_distinct(n: u32, m: u32, k: u32) -> Law {
    let rows = subsets(n, m);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut total = 0u64;
    let mut idx = vec![0usize; k as usize];
    loop {
        let union = idx.iter().fold(0u64, |acc, &i| acc | rows[i]);
        *counts.entry(union.count_ones() as u64).or_default() += 1;
        total += 1;
        // Odometer increment over k digits in base |rows|.
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return normalize(counts, total);
            }
            idx[pos] += 1;
            if idx[pos] < rows.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Tallies distinct nodes over every sequence of `m·k` draws from `n` nodes.
pub fn enumerate_draws(n: u32, m: u32, k: u32) -> Law {
    let len = (m * k) as usize;
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    let mut total = 0u64;
    let mut seq = vec![0u32; len];
    loop {
        let seen = seq.iter().fold(0u64, |acc, &v| acc | 1 << v);
        *counts.entry(seen.count_ones() as u64).or_default() += 1;
        total += 1;
        let mut pos = 0;
        loop {
            if pos == len {
                return normalize(counts, total);
            }
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

fn normalize(counts: BTreeMap<u64, u64>, total: u64) -> Law {
    counts
        .into_iter()
        .map(|(t, c)| (t, Ratio::new(BigUint::from(c), BigUint::from(total))))
        .collect()
}

/// `C(n, r)` by Pascal's rule.
pub fn pascal(n: u64, r: u64) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for i in 1..=n as usize {
        let mut next = vec![BigUint::from(1u32); i + 1];
        for j in 1..i {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row.get(r as usize).cloned().unwrap_or_default()
}
