//! Prime generation and the sieve-based π oracle.
//!
//! The sieve is a plain odd-only Sieve of Eratosthenes over a packed bit
//! array. It is deliberately unsophisticated: every verification in this
//! crate treats [`PrimeTable::pi_sieve`] as ground truth, so it has to stay
//! independent of the floor-sum machinery it checks.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default upper bound on the number of bits a single sieve may allocate.
pub const DEFAULT_SIEVE_BUDGET_BITS: u64 = 100_000_000;

/// Odd-only bit array; bit `i` stands for the odd number `2i + 1`.
struct OddBits {
    words: Vec<u64>,
}

impl OddBits {
    fn new(bits: usize) -> Self {
        Self {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }
}

/// Values up to which [`PrimeTable::prime_counts`] is tabulated.
const PRIME_COUNT_CAP: u64 = 1 << 22;

/// Number of bits the sieve allocates for `limit`.
pub fn sieve_bits(limit: u64) -> u64 {
    limit / 2 + 1
}

/// Immutable ordered sequence `p_1 = 2, p_2 = 3, ...` of every prime up to
/// `limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    /// `1/p` for each prime, built on first use by the floor-sum walk.
    reciprocals: OnceLock<Vec<f64>>,
    /// `counts[v] = #{p <= v}` for `v <= min(limit, PRIME_COUNT_CAP)`.
    counts: OnceLock<Vec<u32>>,
}

impl PartialEq for PrimeTable {
    fn eq(&self, other: &Self) -> bool {
        self.limit == other.limit && self.primes == other.primes
    }
}

impl Eq for PrimeTable {}

impl PrimeTable {
    /// Sieves every prime `<= limit`.
    pub fn generate(limit: u64) -> Result<Self> {
        Self::generate_within(limit, u64::MAX)
    }

    /// Like [`PrimeTable::generate`], refusing to allocate more than
    /// `budget_bits` bits of sieve.
    pub fn generate_within(limit: u64, budget_bits: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::InvalidArgument(format!(
                "sieve limit must be at least 2, got {limit}"
            )));
        }
        let requested = sieve_bits(limit);
        if requested > budget_bits || usize::try_from(requested).is_err() {
            return Err(Error::SieveBudget {
                requested,
                budget: budget_bits,
            });
        }
        let bits = requested as usize;
        let mut composite = OddBits::new(bits);
        composite.set(0); // 1 is not prime

        let mut i = 1usize;
        loop {
            let p = 2 * i + 1;
            let start = p * p;
            if start as u64 > limit {
                break;
            }
            if !composite.get(i) {
                // odd multiples of p starting at p², stepping 2p
                let mut j = start / 2;
                while j < bits {
                    composite.set(j);
                    j += p;
                }
            }
            i += 1;
        }

        let mut primes = vec![2];
        primes.extend(
            (1..bits)
                .filter(|&i| !composite.get(i))
                .map(|i| 2 * i as u64 + 1),
        );
        // bit `bits - 1` may stand for limit + 1 when limit is even
        if primes.last().is_some_and(|&p| p > limit) {
            primes.pop();
        }
        Ok(Self {
            limit,
            primes,
            reciprocals: OnceLock::new(),
            counts: OnceLock::new(),
        })
    }

    /// Smallest table holding at least `count` primes (and at least 2..=30).
    pub fn with_at_least(count: usize) -> Result<Self> {
        Self::with_at_least_within(count, u64::MAX)
    }

    pub fn with_at_least_within(count: usize, budget_bits: u64) -> Result<Self> {
        let mut limit = 30u64;
        loop {
            let table = Self::generate_within(limit, budget_bits)?;
            if table.len() >= count {
                return Ok(table);
            }
            limit = limit.checked_mul(2).ok_or_else(|| {
                Error::OutOfRange(format!("cannot build a table with {count} primes"))
            })?;
        }
    }

    /// Table holding every prime `<= ⌊√x⌋` plus at least one prime beyond it,
    /// which is what interval selection and `Υ_n` evaluation at `x` need.
    pub fn covering_sqrt(x: u64) -> Result<Self> {
        let root = x.isqrt();
        let mut limit = root.saturating_add(1024);
        loop {
            let table = Self::generate(limit)?;
            if table.primes.last().is_some_and(|&p| p > root) {
                return Ok(table);
            }
            limit = limit.saturating_mul(2);
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub(crate) fn reciprocals(&self) -> &[f64] {
        self.reciprocals
            .get_or_init(|| self.primes.iter().map(|&p| 1.0 / p as f64).collect())
    }

    /// Prime counts for every `v` up to `min(limit, 2^22)`.
    pub(crate) fn prime_counts(&self) -> &[u32] {
        self.counts.get_or_init(|| {
            let top = self.limit.min(PRIME_COUNT_CAP) as usize;
            let mut counts = vec![0u32; top + 1];
            let mut seen = 0;
            let mut next = self.primes.iter().copied().peekable();
            for (v, slot) in counts.iter_mut().enumerate() {
                if next.next_if_eq(&(v as u64)).is_some() {
                    seen += 1;
                }
                *slot = seen;
            }
            counts
        })
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `p_n`, 1-indexed: `nth_prime(1) == 2`.
    pub fn nth_prime(&self, n: usize) -> Result<u64> {
        if n == 0 || n > self.primes.len() {
            return Err(Error::OutOfRange(format!(
                "p_{n} requested but the table holds p_1..p_{} (limit {})",
                self.primes.len(),
                self.limit
            )));
        }
        Ok(self.primes[n - 1])
    }

    /// Number of primes `<= x`; the oracle for every verification.
    pub fn pi_sieve(&self, x: u64) -> Result<u64> {
        if x > self.limit {
            return Err(Error::OutOfRange(format!(
                "π({x}) requested from a table sieved to {}",
                self.limit
            )));
        }
        Ok(self.primes.partition_point(|&p| p <= x) as u64)
    }

    /// `#{p prime : p² <= x}`.
    pub fn count_primes_with_square_leq(&self, x: u64) -> Result<u64> {
        let root = x.isqrt();
        if root > self.limit {
            return Err(Error::OutOfRange(format!(
                "counting primes up to √{x} needs a table sieved to {root}, have {}",
                self.limit
            )));
        }
        Ok(self.primes.partition_point(|&p| p <= root) as u64)
    }

    pub fn is_prime(&self, x: u64) -> Result<bool> {
        if x > self.limit {
            return Err(Error::OutOfRange(format!(
                "primality of {x} requested from a table sieved to {}",
                self.limit
            )));
        }
        Ok(self.primes.binary_search(&x).is_ok())
    }
}

/// Free-function form of [`PrimeTable::generate`].
pub fn generate_primes(limit: u64) -> Result<PrimeTable> {
    PrimeTable::generate(limit)
}
