//! Symmetric floor-sums `σ_{n,m}(x)`.
//!
//! `σ_{n,m}(x)` is the sum of `⌊x / (p_{k_1}···p_{k_m})⌋` over every index set
//! `1 <= k_1 < ... < k_m <= n`. [`sigma_vector`] produces all `m` at once from
//! a single pruned depth-first walk; [`sigma_bruteforce`] is the literal
//! unpruned transcription with unbounded integers and serves as its oracle.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::primes::PrimeTable;

/// Largest floor value accepted from decimal input.
pub const MAX_FLOOR: u64 = i64::MAX as u64;

/// Largest `n` the brute-force oracle will enumerate.
pub const BRUTEFORCE_MAX_N: usize = 24;

/// A non-negative real evaluation point, carried as its exact decimal text.
///
/// Every floor-sum depends on `x` only through `⌊x⌋`, because
/// `⌊x/d⌋ = ⌊⌊x⌋/d⌋` for positive integers `d`. The fractional part is kept
/// only as a flag so that `x = 3` and `x = 3.5` can be told apart.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EvalPoint {
    raw: String,
    floor_value: u64,
    has_fraction: bool,
}

impl EvalPoint {
    /// Parses a non-negative decimal such as `"121"`, `"121.0000001"` or
    /// `".5"`. The floor is taken textually, never through binary floating
    /// point.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if s.starts_with('-') {
            return Err(Error::Domain(format!("x must be non-negative, got {s:?}")));
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if (int_part.is_empty() && frac_part.is_empty())
            || !all_digits(int_part)
            || !all_digits(frac_part)
        {
            return Err(Error::Domain(format!("not a non-negative decimal: {s:?}")));
        }
        let digits = int_part.trim_start_matches('0');
        let floor_value = if digits.is_empty() {
            0
        } else {
            digits
                .parse::<u64>()
                .ok()
                .filter(|&v| v <= MAX_FLOOR)
                .ok_or_else(|| {
                    Error::Domain(format!("x = {s} exceeds the supported maximum {MAX_FLOOR}"))
                })?
        };
        Ok(Self {
            raw: s.to_string(),
            floor_value,
            has_fraction: frac_part.bytes().any(|b| b != b'0'),
        })
    }

    pub fn from_integer(x: u64) -> Self {
        Self {
            raw: x.to_string(),
            floor_value: x,
            has_fraction: false,
        }
    }

    pub fn raw(&self) -> &str {
        &self.raw
    }

    /// `⌊x⌋`.
    pub fn floor_value(&self) -> u64 {
        self.floor_value
    }

    /// True when `x` is not an integer.
    pub fn has_fraction(&self) -> bool {
        self.has_fraction
    }

    /// `x > v` for an integer `v`.
    pub fn exceeds(&self, v: u64) -> bool {
        self.floor_value > v || (self.floor_value == v && self.has_fraction)
    }
}

impl From<u64> for EvalPoint {
    fn from(x: u64) -> Self {
        Self::from_integer(x)
    }
}

impl fmt::Display for EvalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

/// Largest `m` with `p_1···p_m <= ⌊x⌋`; 0 when `⌊x⌋ < 2`.
pub fn m_max(x: &EvalPoint, table: &PrimeTable) -> Result<usize> {
    let floor = x.floor_value();
    let mut product: u128 = 1;
    for (m, &p) in table.primes().iter().enumerate() {
        product *= p as u128;
        if product > floor as u128 {
            return Ok(m);
        }
    }
    Err(Error::OutOfRange(format!(
        "the product of all {} primes in the table does not exceed {floor}",
        table.len()
    )))
}

/// Like [`m_max`] but never looks past `p_n`, so it only needs `n` primes.
fn m_max_capped(floor: u64, primes: &[u64]) -> usize {
    let mut product: u128 = 1;
    for (m, &p) in primes.iter().enumerate() {
        product *= p as u128;
        if product > floor as u128 {
            return m;
        }
    }
    primes.len()
}

/// `σ_{n,m}(x)` for `m = 1..=n`, one evaluation batch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaVector {
    n: usize,
    x: EvalPoint,
    m_max: usize,
    /// `values[m - 1] = σ_{n,m}(x)` for `m = 1..=m_max`.
    values: Vec<u128>,
}

impl SigmaVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &EvalPoint {
        &self.x
    }

    /// Largest `m <= n` with `p_1···p_m <= ⌊x⌋`. Every `σ_{n,m}` with
    /// `m > m_max` is zero.
    pub fn m_max(&self) -> usize {
        self.m_max
    }

    /// `σ_{n,m}(x)`, or `None` unless `1 <= m <= n`.
    pub fn get(&self, m: usize) -> Option<u128> {
        if m == 0 || m > self.n {
            return None;
        }
        Some(self.values.get(m - 1).copied().unwrap_or(0))
    }

    /// The non-zero prefix `σ_{n,1}..σ_{n,m_max}`.
    pub fn values(&self) -> &[u128] {
        &self.values
    }
}

/// Computes `σ_{n,m}(x)` for every `m` in one depth-first traversal.
///
/// `σ_{n,m}(x)` equals `Σ_{k <= x} C(ω(k), m)` where `ω(k)` counts the primes
/// among `p_1..p_n` dividing `k`. Splitting those primes into a small set `S`
/// (the first few) and the rest `L`, Vandermonde's identity gives
///
/// `σ_{n,m}(x) = Σ_{u+t=m} Σ_d H_t(⌊x/d⌋)`
///
/// with `d` ranging over products of `u` distinct primes of `L` and
/// `H_t(y) = Σ_{j <= y} C(ω_S(j), t)`. `H_t` is periodic modulo the primorial
/// of `S` up to a linear term, so it is a table lookup, and only products of
/// primes from `L` are walked.
pub fn sigma_vector(n: usize, x: &EvalPoint, table: &PrimeTable) -> Result<SigmaVector> {
    if n == 0 {
        return Err(Error::InvalidArgument("σ_{n,m} needs n >= 1".into()));
    }
    if table.len() < n {
        return Err(Error::OutOfRange(format!(
            "σ_{{{n},m}} needs {n} primes, table holds {}",
            table.len()
        )));
    }
    let primes = &table.primes()[..n];
    let floor = x.floor_value();
    let depth = m_max_capped(floor, primes);
    let values = if depth == 0 {
        Vec::new()
    } else {
        let small = Residues::get(n.min(SMALL_PRIMES));
        let large = &primes[small.s..];
        let sums = if floor < FLOAT_QUOTIENT_LIMIT {
            let quotient = FloatQuotient {
                primes: large,
                reciprocals: &table.reciprocals()[small.s..n],
            };
            Walk::new(large, quotient, small, depth)
                .with_counts(table.prime_counts())
                .run(floor)
        } else {
            Walk::new(large, ExactQuotient { primes: large }, small, depth).run(floor)
        };
        (1..=depth)
            .map(|m| {
                (m.saturating_sub(small.s)..=m)
                    .map(|u| sums[u][m - u])
                    .sum()
            })
            .collect()
    };
    Ok(SigmaVector {
        n,
        x: x.clone(),
        m_max: depth,
        values,
    })
}

/// Size of the small prime set handled by periodic tables.
const SMALL_PRIMES: usize = 5;

const LANES: usize = SMALL_PRIMES + 1;

/// `H_t(y) = Σ_{1 <= j <= y} C(ω_S(j), t)` for `S = {p_1..p_s}`, stored over
/// one period `P = p_1···p_s`: `H_t(y) = ⌊y/P⌋·H_t(P) + H_t(y mod P)`.
struct Residues {
    s: usize,
    period: u64,
    inv_period: f64,
    /// `rows[r][t] = H_t(r)` for `0 <= r < P`
    rows: Vec<[u32; LANES]>,
    /// `H_t(P)`
    full: [u64; LANES],
}

impl Residues {
    fn get(s: usize) -> &'static Self {
        static TABLES: [OnceLock<Residues>; LANES] = [const { OnceLock::new() }; LANES];
        TABLES[s].get_or_init(|| Self::build(s))
    }

    fn build(s: usize) -> Self {
        let small = &[2u64, 3, 5, 7, 11, 13, 17][..s];
        let period: u64 = small.iter().product();
        let mut rows = Vec::with_capacity(period as usize);
        let mut h = [0u32; LANES];
        rows.push(h);
        for j in 1..=period {
            let w = small.iter().filter(|&&p| j % p == 0).count();
            for (t, slot) in h.iter_mut().enumerate().take(w + 1) {
                *slot += binomial_small(w, t);
            }
            if j < period {
                rows.push(h);
            }
        }
        Self {
            s,
            period,
            inv_period: 1.0 / period as f64,
            rows,
            full: h.map(u64::from),
        }
    }

    /// `(⌊y/P⌋, y mod P)`
    #[inline]
    fn split(&self, y: u64) -> (u64, usize) {
        if y < self.period {
            return (0, y as usize);
        }
        let whole = if y < FLOAT_QUOTIENT_LIMIT {
            correct(
                y,
                self.period,
                (y as i64 as f64 * self.inv_period) as i64 as u64,
            )
        } else {
            y / self.period
        };
        (whole, (y - whole * self.period) as usize)
    }
}

fn binomial_small(w: usize, t: usize) -> u32 {
    (0..t).fold(1, |c, i| c * (w - i) as u32 / (i + 1) as u32)
}

/// Running `Σ c·H_t(y)` over several `y`, kept as `Σ c·⌊y/P⌋` and
/// `Σ c·H_t(y mod P)`.
#[derive(Debug, Default, PartialEq, Eq)]
struct Batch {
    whole: u128,
    rows: [u64; LANES],
}

impl Batch {
    #[inline]
    fn add(&mut self, small: &Residues, y: u64) {
        let (whole, r) = small.split(y);
        self.add_split(small, whole, r, 1);
    }

    #[inline]
    fn add_split(&mut self, small: &Residues, whole: u64, r: usize, count: u64) {
        self.whole += whole as u128 * count as u128;
        for (acc, &h) in self.rows.iter_mut().zip(&small.rows[r]) {
            *acc += h as u64 * count;
        }
    }
}

/// Below this bound `⌊y/d⌋` is recovered exactly from a double-precision
/// quotient: `y` and `d` convert without loss, the quotient is within one
/// unit of the truth, and [`correct`] removes that unit.
const FLOAT_QUOTIENT_LIMIT: u64 = 1 << 52;

trait Quotient {
    /// `⌊y / p_i⌋`
    fn by_prime(&self, y: u64, i: usize) -> u64;
    /// `⌊y / d⌋`
    fn by(&self, y: u64, d: u64) -> u64;
}

struct ExactQuotient<'a> {
    primes: &'a [u64],
}

impl Quotient for ExactQuotient<'_> {
    #[inline]
    fn by_prime(&self, y: u64, i: usize) -> u64 {
        y / self.primes[i]
    }

    #[inline]
    fn by(&self, y: u64, d: u64) -> u64 {
        y / d
    }
}

struct FloatQuotient<'a> {
    primes: &'a [u64],
    reciprocals: &'a [f64],
}

#[inline]
fn correct(y: u64, d: u64, q: u64) -> u64 {
    let product = q * d;
    if product > y {
        q - 1
    } else if y - product >= d {
        q + 1
    } else {
        q
    }
}

impl Quotient for FloatQuotient<'_> {
    #[inline]
    fn by_prime(&self, y: u64, i: usize) -> u64 {
        // below 2^52 the signed conversions are exact and compile to single
        // instructions, unlike their unsigned counterparts
        correct(
            y,
            self.primes[i],
            (y as i64 as f64 * self.reciprocals[i]) as i64 as u64,
        )
    }

    #[inline]
    fn by(&self, y: u64, d: u64) -> u64 {
        correct(y, d, (y as i64 as f64 / d as i64 as f64) as i64 as u64)
    }
}

struct Walk<'a, Q> {
    /// The primes of `L`, ascending.
    primes: &'a [u64],
    quotient: Q,
    small: &'static Residues,
    /// Prime counts `#{p <= v}` over all primes, when they reach the last
    /// prime of `L`.
    counts: Option<&'a [u32]>,
    /// `sums[u][t]` accumulates `Σ H_t(⌊x/d⌋)` over products `d` of `u`
    /// primes from `L`.
    sums: Vec<[u128; LANES]>,
}

impl<'a, Q: Quotient> Walk<'a, Q> {
    fn new(primes: &'a [u64], quotient: Q, small: &'static Residues, depth: usize) -> Self {
        Self {
            primes,
            quotient,
            small,
            counts: None,
            sums: vec![[0; LANES]; depth + 1],
        }
    }

    fn with_counts(mut self, counts: &'a [u32]) -> Self {
        if self
            .primes
            .last()
            .is_some_and(|&last| (last as usize) < counts.len())
        {
            self.counts = Some(counts);
        }
        self
    }

    /// Index of the first prime of `L` above `v`, for `p_k <= v`; the result
    /// is clamped to `k..=end`.
    #[inline]
    fn index_after(&self, v: u64, k: usize, end: usize) -> usize {
        match self.counts {
            Some(counts) => {
                let below = counts[v.min(self.primes[end - 1]) as usize] as usize - self.small.s;
                below.max(k)
            }
            None => k + self.primes[k..end].partition_point(|&p| p <= v),
        }
    }

    fn run(mut self, floor: u64) -> Vec<[u128; LANES]> {
        let mut root = Batch::default();
        root.add(self.small, floor);
        self.flush(0, root);
        self.descend(0, floor, 1);
        self.sums
    }

    fn flush(&mut self, depth: usize, batch: Batch) {
        let full = self.small.full;
        for (t, acc) in self.sums[depth].iter_mut().enumerate() {
            *acc += batch.whole * full[t] as u128 + batch.rows[t] as u128;
        }
    }

    // Pruning: once p_i > y the product d·p_i exceeds x, so ⌊x/(d·p_i)⌋ = 0,
    // and every later prime and every extension of that product is larger
    // still, so the entire remaining subtree contributes zero. The same
    // argument bounds recursion depth by the primorial cutoff (at most 15
    // below 2^63). No product is ever formed: ⌊x/(d·p)⌋ = ⌊⌊x/d⌋/p⌋, so every
    // intermediate is at most ⌊x⌋.
    fn descend(&mut self, start: usize, y: u64, depth: usize) {
        let primes = self.primes;
        for i in start..primes.len() {
            if primes[i] > y {
                return;
            }
            let q = self.quotient.by_prime(y, i);
            if i + 1 < primes.len() && primes[i + 1] <= q {
                let mut node = Batch::default();
                node.add(self.small, q);
                self.flush(depth, node);
                self.descend(i + 1, q, depth + 1);
            } else {
                // p_{i+1} > ⌊y/p_i⌋ means this child has no children, and the
                // same holds for every later child j, since
                // ⌊y/p_j⌋ <= ⌊y/p_i⌋ < p_{i+1} <= p_{j+1}.
                let leaves = self.leaf_sum(i, y);
                self.flush(depth, leaves);
                return;
            }
        }
    }

    /// `Σ H(⌊y/p_j⌋)` over `j >= from` with `p_j <= y`.
    fn leaf_sum(&self, from: usize, y: u64) -> Batch {
        let primes = self.primes;
        let small = self.small;
        let end = if primes[primes.len() - 1] <= y {
            primes.len()
        } else {
            from + primes[from..].partition_point(|&p| p <= y)
        };
        let mut batch = Batch::default();
        let mut j = from;
        // p <= √y: quotients are large and mostly distinct, divide directly
        while j < end && primes[j] * primes[j] <= y {
            batch.add(small, self.quotient.by_prime(y, j));
            j += 1;
        }
        if j == end {
            return batch;
        }
        // p > √y: quotients are below √y; walk whichever is shorter, the
        // primes or the range of quotient values
        let q_first = self.quotient.by_prime(y, j);
        let q_last = self.quotient.by_prime(y, end - 1);
        if (end - j) as u64 <= q_first - q_last + 1 {
            for k in j..end {
                batch.add(small, self.quotient.by_prime(y, k));
            }
        } else {
            // primes with ⌊y/p⌋ = q are those in (⌊y/(q+1)⌋, ⌊y/q⌋]
            let (mut whole, mut r) = small.split(q_first);
            let mut k = j;
            for q in (q_last..=q_first).rev() {
                let next = self.index_after(self.quotient.by(y, q), k, end);
                if next > k {
                    batch.add_split(small, whole, r, (next - k) as u64);
                }
                k = next;
                if r == 0 {
                    r = small.period as usize;
                    whole = whole.wrapping_sub(1);
                }
                r -= 1;
            }
        }
        batch
    }
}

/// Literal `σ_{n,m}(x)`: every `m`-combination of `p_1..p_n`, unbounded
/// products, no pruning.
pub fn sigma_bruteforce(n: usize, m: usize, x: &EvalPoint, table: &PrimeTable) -> Result<u128> {
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!(
            "σ_{{n,m}} needs 1 <= m <= n, got n={n} m={m}"
        )));
    }
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "brute-force enumeration is limited to n <= {BRUTEFORCE_MAX_N}, got {n}"
        )));
    }
    if table.len() < n {
        return Err(Error::OutOfRange(format!(
            "need {n} primes, table holds {}",
            table.len()
        )));
    }
    let primes = &table.primes()[..n];
    let x = BigUint::from(x.floor_value());
    let mut total = BigUint::default();
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        let product = idx
            .iter()
            .fold(BigUint::from(1u32), |acc, &k| acc * primes[k]);
        total += &x / product;

        // next combination in lexicographic order
        let Some(pos) = (0..m).rev().find(|&i| idx[i] < n - m + i) else {
            break;
        };
        idx[pos] += 1;
        for i in pos + 1..m {
            idx[i] = idx[i - 1] + 1;
        }
    }
    total
        .to_u128()
        .ok_or_else(|| Error::Inconsistent("brute-force σ exceeds 128 bits".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        PrimeTable::generate(200).unwrap()
    }

    #[test]
    fn parse_decimal_text() {
        let x = EvalPoint::parse("121.0000001").unwrap();
        assert_eq!(x.floor_value(), 121);
        assert!(x.has_fraction());
        let x = EvalPoint::parse("3.000").unwrap();
        assert_eq!(x.floor_value(), 3);
        assert!(!x.has_fraction());
        assert_eq!(EvalPoint::parse(".5").unwrap().floor_value(), 0);
        assert_eq!(EvalPoint::parse("7.").unwrap().floor_value(), 7);
        assert_eq!(EvalPoint::parse("007").unwrap().floor_value(), 7);
        assert_eq!(EvalPoint::parse(" 12 ").unwrap().raw(), "12");
        assert_eq!(
            EvalPoint::parse("9223372036854775807")
                .unwrap()
                .floor_value(),
            MAX_FLOOR
        );
    }

    #[test]
    fn parse_rejects_bad_input() {
        for bad in [
            "",
            ".",
            "-1",
            "-0.5",
            "1e5",
            "abc",
            "1.2.3",
            "+4",
            "9223372036854775808",
            "1,5",
        ] {
            assert!(
                matches!(EvalPoint::parse(bad), Err(Error::Domain(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn m_max_values() {
        let t = table();
        assert_eq!(m_max(&100.into(), &t).unwrap(), 3);
        assert_eq!(m_max(&1.into(), &t).unwrap(), 0);
        assert_eq!(m_max(&0.into(), &t).unwrap(), 0);
        assert_eq!(m_max(&209.into(), &t).unwrap(), 3);
        assert_eq!(m_max(&210.into(), &t).unwrap(), 4);
        let tiny = PrimeTable::generate(3).unwrap();
        assert!(matches!(
            m_max(&100.into(), &tiny),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn sigma_vector_examples() {
        let t = table();
        let s = sigma_vector(2, &10.into(), &t).unwrap();
        assert_eq!(s.get(1), Some(8));

        let s = sigma_vector(4, &100.into(), &t).unwrap();
        assert_eq!(
            (1..=4).map(|m| s.get(m).unwrap()).collect::<Vec<_>>(),
            vec![117, 45, 6, 0]
        );
        assert_eq!(s.get(5), None);
        assert_eq!(s.get(0), None);

        let s = sigma_vector(5, &0.into(), &t).unwrap();
        assert!((1..=5).all(|m| s.get(m) == Some(0)));
        assert_eq!(s.m_max(), 0);
    }

    #[test]
    fn sigma_vector_errors() {
        let t = PrimeTable::generate(10).unwrap();
        assert!(matches!(
            sigma_vector(0, &5.into(), &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            sigma_vector(5, &5.into(), &t),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn bruteforce_examples() {
        let t = table();
        assert_eq!(sigma_bruteforce(3, 2, &30.into(), &t).unwrap(), 10);
        assert_eq!(sigma_bruteforce(4, 4, &100.into(), &t).unwrap(), 0);
        assert_eq!(sigma_bruteforce(4, 3, &100.into(), &t).unwrap(), 6);
        assert!(matches!(
            sigma_bruteforce(3, 4, &30.into(), &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            sigma_bruteforce(3, 0, &30.into(), &t),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            sigma_bruteforce(25, 1, &30.into(), &t),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn residues_count_small_prime_divisors() {
        let small = [2u64, 3, 5, 7, 11];
        for s in 1..=SMALL_PRIMES {
            let table = Residues::get(s);
            let mut direct = [0u64; LANES];
            for y in 0..6000u64 {
                if y > 0 {
                    let w = small[..s].iter().filter(|&&p| y % p == 0).count();
                    for (t, slot) in direct.iter_mut().enumerate().take(w + 1) {
                        *slot += binomial_small(w, t) as u64;
                    }
                }
                let mut batch = Batch::default();
                batch.add(table, y);
                let looked_up: Vec<u128> = (0..LANES)
                    .map(|t| batch.whole * table.full[t] as u128 + batch.rows[t] as u128)
                    .collect();
                let expected: Vec<u128> = direct.iter().map(|&v| v as u128).collect();
                assert_eq!(looked_up, expected, "s={s} y={y}");
            }
        }
    }

    #[test]
    fn leaf_sum_matches_direct_sum() {
        let t = PrimeTable::generate(3000).unwrap();
        let small = Residues::get(SMALL_PRIMES);
        let primes = &t.primes()[small.s..];
        let exact = Walk::new(primes, ExactQuotient { primes }, small, 1);
        let float = Walk::new(
            primes,
            FloatQuotient {
                primes,
                reciprocals: &t.reciprocals()[small.s..],
            },
            small,
            1,
        );
        let counted =
            Walk::new(primes, ExactQuotient { primes }, small, 1).with_counts(t.prime_counts());
        assert!(counted.counts.is_some());
        for y in [
            0u64,
            1,
            2,
            13,
            100,
            1234,
            99_991,
            1_000_000,
            123_456_789,
            (1 << 52) - 1,
        ] {
            for start in [0, 3, 50, 200, 424] {
                let mut direct = Batch::default();
                for &p in primes[start..].iter().filter(|&&p| p <= y) {
                    direct.add(small, y / p);
                }
                assert_eq!(exact.leaf_sum(start, y), direct, "y={y} start={start}");
                assert_eq!(counted.leaf_sum(start, y), direct, "y={y} start={start}");
                if y < FLOAT_QUOTIENT_LIMIT {
                    assert_eq!(float.leaf_sum(start, y), direct, "y={y} start={start}");
                }
            }
        }
    }

    #[test]
    fn float_quotient_is_exact() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let primes = [2u64, 3, 5, 7, 1_000_003, 4_294_967_291];
        let reciprocals: Vec<f64> = primes.iter().map(|&p| 1.0 / p as f64).collect();
        let f = FloatQuotient {
            primes: &primes,
            reciprocals: &reciprocals,
        };
        for _ in 0..200_000 {
            let y = rng.gen_range(0..FLOAT_QUOTIENT_LIMIT) >> rng.gen_range(0..52);
            let i = rng.gen_range(0..primes.len());
            assert_eq!(f.by_prime(y, i), y / primes[i]);
            let d = rng.gen_range(1..=y.max(1));
            assert_eq!(f.by(y, d), y / d);
        }
        for (i, &p) in primes.iter().enumerate() {
            for k in [1u64, 2, 1000, (FLOAT_QUOTIENT_LIMIT - 1) / p] {
                for y in [k * p - 1, k * p, k * p + 1] {
                    if y < FLOAT_QUOTIENT_LIMIT {
                        assert_eq!(f.by_prime(y, i), y / p);
                        assert_eq!(f.by(y, p), y / p);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_and_float_paths_agree() {
        let t = PrimeTable::generate(5000).unwrap();
        let n = t.len();
        let small = Residues::get(SMALL_PRIMES);
        for x in [10u64.pow(6), 987_654_321, 10u64.pow(10)] {
            let p = &t.primes()[small.s..n];
            let depth = m_max_capped(x, &t.primes()[..n]);
            let exact = Walk::new(p, ExactQuotient { primes: p }, small, depth).run(x);
            let float = Walk::new(
                p,
                FloatQuotient {
                    primes: p,
                    reciprocals: &t.reciprocals()[small.s..n],
                },
                small,
                depth,
            )
            .run(x);
            assert_eq!(exact, float, "x={x}");
        }
    }

    #[test]
    fn large_x_has_no_overflow() {
        let t = PrimeTable::generate(100).unwrap();
        let x = EvalPoint::from_integer(MAX_FLOOR);
        let s = sigma_vector(25, &x, &t).unwrap();
        assert_eq!(
            s.get(1).unwrap(),
            t.primes()[..25]
                .iter()
                .map(|&p| (MAX_FLOOR / p) as u128)
                .sum()
        );
        assert_eq!(s.m_max(), 15);
    }
}
