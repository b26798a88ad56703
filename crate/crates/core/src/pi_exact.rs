//! Piecewise π(x) and verification sweeps against the sieve.
//!
//! Below 4 the value comes from fixed base cases. Above 3 the smallest `n`
//! whose interval `(p_n, p_{n+1}²)` contains `x` is chosen and `Υ_n(x)` is
//! returned.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma_upsilon::upsilon;
use crate::primes::PrimeTable;
use crate::sigma::EvalPoint;

/// Open interval `(p_n, p_{n+1}²)` on which `Υ_n` counts primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntervalSelection {
    pub n: usize,
    /// `p_n`
    pub lower: u64,
    /// `p_{n+1}²`
    pub upper: u64,
}

impl IntervalSelection {
    /// Interval for a given `n >= 2`.
    pub fn for_n(n: usize, table: &PrimeTable) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "intervals start at n = 2, got {n}"
            )));
        }
        let lower = table.nth_prime(n)?;
        let next = table.nth_prime(n + 1)?;
        Ok(Self {
            n,
            lower,
            upper: next * next,
        })
    }

    pub fn contains(&self, x: &EvalPoint) -> bool {
        x.exceeds(self.lower) && x.floor_value() < self.upper
    }

    /// Integers strictly inside the interval.
    pub fn integers(&self) -> std::ops::Range<u64> {
        self.lower + 1..self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseCase {
    /// `x < 2`
    BelowTwo,
    /// `2 <= x < 3`
    TwoToThree,
    /// `x = 3`
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PiMethod {
    BaseCase(BaseCase),
    Upsilon(IntervalSelection),
}

impl PiMethod {
    /// `n` used, if any.
    pub fn n(&self) -> Option<usize> {
        match self {
            PiMethod::BaseCase(_) => None,
            PiMethod::Upsilon(sel) => Some(sel.n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiValue {
    pub x: EvalPoint,
    pub value: u64,
    pub method: PiMethod,
}

/// Smallest admissible `n`: `max(2, #{p : p² <= ⌊x⌋})`.
///
/// With `n` primes squared below `x` and `p_{n+1}² > ⌊x⌋`, every composite
/// up to `x` has a prime factor among `p_1..p_n`, which is what makes `Υ_n`
/// exact there.
pub fn select_n(x: &EvalPoint, table: &PrimeTable) -> Result<IntervalSelection> {
    if !x.exceeds(3) {
        return Err(Error::InvalidArgument(format!(
            "interval selection needs x > 3, got {x}; smaller x are base cases"
        )));
    }
    let count = table.count_primes_with_square_leq(x.floor_value())? as usize;
    let selection = IntervalSelection::for_n(count.max(2), table)?;
    debug_assert!(selection.contains(x));
    Ok(selection)
}

/// π(x) for real `x >= 0`.
pub fn pi_exact(x: &EvalPoint, table: &PrimeTable) -> Result<PiValue> {
    let floor = x.floor_value();
    let base = match floor {
        0 | 1 => Some((0, BaseCase::BelowTwo)),
        2 => Some((1, BaseCase::TwoToThree)),
        3 if !x.has_fraction() => Some((2, BaseCase::Three)),
        _ => None,
    };
    if let Some((value, case)) = base {
        return Ok(PiValue {
            x: x.clone(),
            value,
            method: PiMethod::BaseCase(case),
        });
    }

    let selection = select_n(x, table)?;
    let result = upsilon(selection.n, x, table)?;
    let value = u64::try_from(result.value).map_err(|_| {
        Error::Inconsistent(format!(
            "Υ_{}({x}) = {} is negative",
            selection.n, result.value
        ))
    })?;
    Ok(PiValue {
        x: x.clone(),
        value,
        method: PiMethod::Upsilon(selection),
    })
}

/// [`pi_exact`] with a prime table sized for `x` built on the spot.
pub fn pi_exact_auto(x: &EvalPoint) -> Result<PiValue> {
    pi_exact(x, &PrimeTable::covering_sqrt(x.floor_value())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every integer in the interval.
    Exhaustive,
    /// `count` uniform draws from the interval's integers.
    Sampled { count: u64, seed: u64 },
}

/// One disagreement: `expected` is the reference route, `got` the one under
/// test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub x: u64,
    pub expected: i64,
    pub got: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalReport {
    pub interval: IntervalSelection,
    /// First and last integer checked, inclusive.
    pub first: u64,
    pub last: u64,
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl IntervalReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Per-`n` outcomes, sorted by `n`, with mismatches sorted by `x`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub intervals: Vec<IntervalReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.intervals.iter().all(IntervalReport::passed)
    }

    pub fn total_checked(&self) -> u64 {
        self.intervals.iter().map(|r| r.checked).sum()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Mismatch> {
        self.intervals.iter().flat_map(|r| r.mismatches.iter())
    }

    /// Appends another report and restores `(n, x)` order.
    pub fn merge(&mut self, other: VerificationReport) {
        self.intervals.extend(other.intervals);
        self.intervals.sort_by_key(|r| (r.interval.n, r.first));
        for r in &mut self.intervals {
            r.mismatches.sort_by_key(|m| (m.n, m.x));
        }
    }
}

fn points(first: u64, last: u64, mode: VerifyMode, salt: u64) -> Vec<u64> {
    if first > last {
        return Vec::new();
    }
    match mode {
        VerifyMode::Exhaustive => (first..=last).collect(),
        VerifyMode::Sampled { count, seed } => {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut xs: Vec<u64> = (0..count).map(|_| rng.gen_range(first..=last)).collect();
            xs.sort_unstable();
            xs
        }
    }
}

fn compare(
    interval: IntervalSelection,
    first: u64,
    last: u64,
    mode: VerifyMode,
    mut expected: impl FnMut(u64) -> Result<i64>,
    mut got: impl FnMut(u64) -> Result<i64>,
) -> Result<IntervalReport> {
    let xs = points(first, last, mode, interval.n as u64);
    let mut mismatches = Vec::new();
    for &x in &xs {
        let (e, g) = (expected(x)?, got(x)?);
        if e != g {
            mismatches.push(Mismatch {
                n: interval.n,
                x,
                expected: e,
                got: g,
            });
        }
    }
    Ok(IntervalReport {
        interval,
        first,
        last,
        checked: xs.len() as u64,
        mismatches,
    })
}

fn check_range(n_min: usize, n_max: usize) -> Result<()> {
    if n_min < 2 || n_min > n_max {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= n_min <= n_max, got n_min={n_min} n_max={n_max}"
        )));
    }
    Ok(())
}

/// Sieve limit needed to check intervals `n_min..=n_max` against the oracle.
pub fn oracle_limit(n_max: usize, table: &PrimeTable) -> Result<u64> {
    Ok(IntervalSelection::for_n(n_max, table)?.upper - 1)
}

/// Compares `Υ_n(x)` with the sieve count for integers strictly inside
/// `(p_n, p_{n+1}²)`, for each `n` in `n_min..=n_max`.
pub fn verify_theorem(
    n_min: usize,
    n_max: usize,
    table: &PrimeTable,
    mode: VerifyMode,
) -> Result<VerificationReport> {
    check_range(n_min, n_max)?;
    let limit = oracle_limit(n_max, table)?;
    if table.limit() < limit {
        return Err(Error::OutOfRange(format!(
            "checking n <= {n_max} needs a sieve to {limit}, table reaches {}",
            table.limit()
        )));
    }
    verify_theorem_with_oracle(n_min, n_max, table, mode, |x| table.pi_sieve(x))
}

/// [`verify_theorem`] against a caller-supplied oracle.
pub fn verify_theorem_with_oracle(
    n_min: usize,
    n_max: usize,
    table: &PrimeTable,
    mode: VerifyMode,
    mut oracle: impl FnMut(u64) -> Result<u64>,
) -> Result<VerificationReport> {
    check_range(n_min, n_max)?;
    let mut report = VerificationReport::default();
    for n in n_min..=n_max {
        let interval = IntervalSelection::for_n(n, table)?;
        let (first, last) = (interval.lower + 1, interval.upper - 1);
        report.intervals.push(compare(
            interval,
            first,
            last,
            mode,
            |x| Ok(oracle(x)? as i64),
            |x| Ok(upsilon(n, &x.into(), table)?.value),
        )?);
    }
    Ok(report)
}

/// Checks `Υ_n(x) = Υ_{n+1}(x)` on `(p_{n+1}, p_{n+1}²)`, where both
/// intervals overlap.
pub fn verify_overlap(n: usize, table: &PrimeTable) -> Result<VerificationReport> {
    verify_overlap_with_mode(n, table, VerifyMode::Exhaustive)
}

pub fn verify_overlap_with_mode(
    n: usize,
    table: &PrimeTable,
    mode: VerifyMode,
) -> Result<VerificationReport> {
    let interval = IntervalSelection::for_n(n, table)?;
    let next = table.nth_prime(n + 1)?;
    let (first, last) = (next + 1, next * next - 1);
    let report = compare(
        interval,
        first,
        last,
        mode,
        |x| Ok(upsilon(n, &x.into(), table)?.value),
        |x| Ok(upsilon(n + 1, &x.into(), table)?.value),
    )?;
    Ok(VerificationReport {
        intervals: vec![report],
    })
}
