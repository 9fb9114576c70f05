//! Exact counting primitives: binomials, factorials, integer powers and
//! Stirling numbers of the second kind.
//!
//! Everything here is integer arithmetic on [`Natural`]. Alternating
//! inclusion–exclusion sums are accumulated with [`AlternatingSum`], which
//! keeps the positive and negative parts apart and subtracts once at the end.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

/// Arbitrary-precision nonnegative integer.
pub type Natural = BigUint;

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> Natural {
    if r > n {
        return Natural::zero();
    }
    let r = r.min(n - r);
    let mut acc = Natural::one();
    // acc = C(n - r + i, i) after step i, so every division is exact.
    for i in 1..=r {
        acc *= n - r + i;
        acc /= i;
    }
    acc
}

/// The full row `C(n, 0), ..., C(n, n)`.
pub fn binomial_row(n: u64) -> Vec<Natural> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut cur = Natural::one();
    row.push(cur.clone());
    for i in 1..=n {
        cur *= n - i + 1;
        cur /= i;
        row.push(cur.clone());
    }
    row
}

pub fn factorial(t: u64) -> Natural {
    falling_factorial(t, t)
}

/// `n (n-1) ... (n-r+1)`; zero when `r > n`.
pub fn falling_factorial(n: u64, r: u64) -> Natural {
    if r > n {
        return Natural::zero();
    }
    let mut acc = Natural::one();
    for i in 0..r {
        acc *= n - i;
    }
    acc
}

pub fn power(base: &Natural, exp: u64) -> Natural {
    Pow::pow(base, exp)
}

pub fn power_u64(base: u64, exp: u64) -> Natural {
    power(&Natural::from(base), exp)
}

/// Signed sum of naturals whose final value is known to be nonnegative.
#[derive(Debug, Clone, Default)]
pub struct AlternatingSum {
    positive: Natural,
    negative: Natural,
}

impl AlternatingSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `term` with sign `(-1)^index`.
    pub fn push_signed(&mut self, index: u64, term: Natural) {
        if index.is_multiple_of(2) {
            self.positive += term;
        } else {
            self.negative += term;
        }
    }

    /// Panics if the negative part exceeds the positive part, which means the
    /// caller summed something that is not a count.
    pub fn finish(self) -> Natural {
        assert!(
            self.positive >= self.negative,
            "alternating sum evaluated to a negative number"
        );
        self.positive - self.negative
    }
}

/// `S(n, k)`, the number of partitions of an `n`-set into `k` nonempty blocks.
///
/// Evaluated by the triangular recurrence; debug builds also evaluate the
/// inclusion–exclusion formula and assert that both agree.
pub fn stirling2(n: u64, k: u64) -> Natural {
    let value = stirling2_recurrence(n, k);
    debug_assert_eq!(
        value,
        stirling2_inclusion_exclusion(n, k),
        "Stirling S({n}, {k}) disagrees between recurrence and inclusion-exclusion"
    );
    value
}

/// `S(n, k)` via `S(n, k) = k S(n-1, k) + S(n-1, k-1)`.
pub fn stirling2_recurrence(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let mut row = stirling2_row(n, k);
    row.swap_remove(k as usize)
}

/// `S(n, 0), ..., S(n, k_max)` via the triangular recurrence, `O(n k_max)` steps.
pub fn stirling2_row(n: u64, k_max: u64) -> Vec<Natural> {
    let width = k_max as usize + 1;
    let mut row = vec![Natural::zero(); width];
    row[0] = Natural::one();
    for step in 1..=n {
        // Only columns up to min(step, k_max) can be nonzero; walk them
        // right to left so row[j - 1] is still the previous row's value.
        let top = step.min(k_max) as usize;
        for j in (1..=top).rev() {
            let carried = core::mem::take(&mut row[j]) * j as u64;
            row[j] = carried + &row[j - 1];
        }
        row[0] = Natural::zero();
    }
    row
}

/// `S(n, k) = (1/k!) Σ_{j=0}^{k} (-1)^j C(k, j) (k-j)^n`.
pub fn stirling2_inclusion_exclusion(n: u64, k: u64) -> Natural {
    let surj = surjections(n, k);
    let fact = factorial(k);
    debug_assert!((&surj % &fact).is_zero());
    surj / fact
}

/// Number of maps from an `n`-set onto a `t`-set,
/// `Σ_{i=0}^{t} (-1)^i C(t, i) (t-i)^n`.
pub fn surjections(n: u64, t: u64) -> Natural {
    let row = binomial_row(t);
    let mut sum = AlternatingSum::new();
    for (i, c) in row.into_iter().enumerate() {
        let i = i as u64;
        sum.push_signed(i, c * power_u64(t - i, n));
    }
    sum.finish()
}
