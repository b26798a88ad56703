//! The `γ_{n,m}` recursion and the `Υ_n(x)` evaluator.
//!
//! ```text
//! γ_{n,n}(x) = σ_{n,n}(x)
//! γ_{n,m}(x) = σ_{n,m}(x) − Σ_{k=m+1..n} C(k,m)·γ_{n,k}(x)
//! Υ_n(x)     = ⌊x⌋ − σ_{n,1}(x) + Σ_{k=2..n} (k−1)·γ_{n,k}(x) + n − 1
//! ```
//!
//! `γ_{n,m}` vanishes for every `m` above the primorial cutoff of `⌊x⌋`:
//! the top of the recursion starts at `σ_{n,n} = 0` and each step down only
//! subtracts multiples of entries already known to be zero. [`gamma_vector`]
//! starts the recursion at the cutoff; [`gamma_vector_full`] runs it from
//! `m = n` with no shortcut and is what the tests hold the shortcut against.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::sigma::{sigma_vector, EvalPoint, SigmaVector};

/// `γ_{n,m}(x)` for `m = 2..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaVector {
    n: usize,
    x: EvalPoint,
    m_max: usize,
    /// `values[m - 2] = γ_{n,m}(x)`; entries past the end are zero.
    values: Vec<BigInt>,
}

impl GammaVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &EvalPoint {
        &self.x
    }

    /// Primorial cutoff (capped at `n`) of the underlying σ batch.
    pub fn m_max(&self) -> usize {
        self.m_max
    }

    /// `γ_{n,m}(x)`, or `None` unless `2 <= m <= n`.
    pub fn get(&self, m: usize) -> Option<BigInt> {
        if m < 2 || m > self.n {
            return None;
        }
        Some(self.values.get(m - 2).cloned().unwrap_or_default())
    }

    /// Explicitly stored entries, starting at `m = 2`.
    pub fn stored(&self) -> &[BigInt] {
        &self.values
    }
}

/// `C(k, m)` by the multiplicative formula; every partial product
/// `C(k−m+i, i)` is an integer so the division is exact.
fn binomial(k: usize, m: usize) -> BigUint {
    let m = m.min(k - m);
    (1..=m).fold(BigUint::from(1u32), |acc, i| acc * (k - m + i) / i)
}

/// Binomials `C(k, m)` for `k <= top`, built lazily and reused across one
/// recursion.
struct Binomials {
    rows: Vec<Vec<Option<BigInt>>>,
}

impl Binomials {
    fn new(top: usize) -> Self {
        Self {
            rows: vec![Vec::new(); top + 1],
        }
    }

    fn get(&mut self, k: usize, m: usize) -> &BigInt {
        let row = &mut self.rows[k];
        if row.len() <= m {
            row.resize(m + 1, None);
        }
        row[m].get_or_insert_with(|| BigInt::from(binomial(k, m)))
    }
}

/// Runs the recursion downward from `m = top`, taking `γ_{n,k} = 0` for
/// `k > top`. Returns `γ_{n,2..=top}`.
fn recurse(top: usize, sigma: impl Fn(usize) -> u128) -> Vec<BigInt> {
    if top < 2 {
        return Vec::new();
    }
    let mut binomials = Binomials::new(top);
    let mut values = vec![BigInt::zero(); top - 1];
    for m in (2..=top).rev() {
        let mut g = BigInt::from(sigma(m));
        for k in m + 1..=top {
            g -= binomials.get(k, m) * &values[k - 2];
        }
        values[m - 2] = g;
    }
    values
}

fn check_n(n: usize, table: &PrimeTable) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "γ and Υ need n >= 2, got {n}"
        )));
    }
    if table.len() < n {
        return Err(Error::OutOfRange(format!(
            "n = {n} needs {n} primes, table holds {}",
            table.len()
        )));
    }
    Ok(())
}

fn gamma_from_sigma(sigma: &SigmaVector) -> GammaVector {
    let values = recurse(sigma.m_max(), |m| sigma.get(m).unwrap_or(0));
    GammaVector {
        n: sigma.n(),
        x: sigma.x().clone(),
        m_max: sigma.m_max(),
        values,
    }
}

/// `γ_{n,m}(x)` for `m = 2..=n`, recursing only over `m <= m_max`.
pub fn gamma_vector(n: usize, x: &EvalPoint, table: &PrimeTable) -> Result<GammaVector> {
    check_n(n, table)?;
    Ok(gamma_from_sigma(&sigma_vector(n, x, table)?))
}

/// The literal recursion from `m = n` downward with no zero-tail shortcut.
/// Cost grows as `n²` big-integer products, so it is meant for small `n`.
pub fn gamma_vector_full(n: usize, x: &EvalPoint, table: &PrimeTable) -> Result<GammaVector> {
    check_n(n, table)?;
    let sigma = sigma_vector(n, x, table)?;
    let values = recurse(n, |m| sigma.get(m).unwrap_or(0));
    Ok(GammaVector {
        n,
        x: x.clone(),
        m_max: sigma.m_max(),
        values,
    })
}

/// The additive pieces of `Υ_n(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpsilonTerms {
    /// `⌊x⌋`
    pub floor: u64,
    /// `σ_{n,1}(x)`
    pub sigma_1: u128,
    /// `Σ_{k=2..n} (k−1)·γ_{n,k}(x)`
    pub weighted_gamma: BigInt,
    /// `n − 1`
    pub constant: u64,
}

impl UpsilonTerms {
    pub fn total(&self) -> BigInt {
        BigInt::from(self.floor) - BigInt::from(self.sigma_1)
            + &self.weighted_gamma
            + BigInt::from(self.constant)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpsilonResult {
    pub n: usize,
    pub x: EvalPoint,
    pub value: i64,
    pub terms: UpsilonTerms,
}

fn to_i64(v: &BigInt, what: &str) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::Inconsistent(format!("{what} = {v} does not fit in 64 bits")))
}

/// `Υ_n(x)` from its definition through the γ recursion.
pub fn upsilon(n: usize, x: &EvalPoint, table: &PrimeTable) -> Result<UpsilonResult> {
    check_n(n, table)?;
    let sigma = sigma_vector(n, x, table)?;
    let gamma = gamma_from_sigma(&sigma);
    let weighted_gamma = gamma
        .stored()
        .iter()
        .zip(1u64..)
        .fold(BigInt::zero(), |acc, (g, w)| acc + g * w);
    let terms = UpsilonTerms {
        floor: x.floor_value(),
        sigma_1: sigma.get(1).unwrap_or(0),
        weighted_gamma,
        constant: n as u64 - 1,
    };
    let value = to_i64(&terms.total(), "Υ")?;
    Ok(UpsilonResult {
        n,
        x: x.clone(),
        value,
        terms,
    })
}

/// `⌊x⌋ + Σ_{k=1..n} (−1)^k σ_{n,k}(x) + n − 1`, a second route to `Υ_n(x)`
/// that skips γ entirely.
pub fn upsilon_alternating(n: usize, x: &EvalPoint, table: &PrimeTable) -> Result<i64> {
    check_n(n, table)?;
    let sigma = sigma_vector(n, x, table)?;
    let mut total = BigInt::from(x.floor_value()) + BigInt::from(n - 1);
    for (k, &s) in (1..).zip(sigma.values()) {
        if k % 2 == 0 {
            total += BigInt::from(s);
        } else {
            total -= BigInt::from(s);
        }
    }
    to_i64(&total, "alternating Υ")
}
