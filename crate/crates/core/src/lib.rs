//! Exact prime counting built from symmetric floor-sums over subsets of the
//! first `n` primes.
//!
//! The pipeline is:
//!
//! * [`primes`]: an Eratosthenes sieve producing an immutable [`PrimeTable`],
//!   which doubles as the ground-truth π oracle.
//! * [`sigma`]: `σ_{n,m}(x)`, the sum of `⌊x/d⌋` over all products `d` of `m`
//!   distinct primes taken from `p_1..p_n`.
//! * [`gamma_upsilon`]: the binomial `γ_{n,m}` recursion and the `Υ_n(x)`
//!   evaluator.
//! * [`pi_exact`]: piecewise π(x) with base cases below 4 and `Υ_n` on the
//!   interval `(p_n, p_{n+1}²)`, plus verification sweeps against the sieve.
//! * [`cli`]: the `primepi` command-line front end.

pub mod cli;
pub mod error;
pub mod gamma_upsilon;
pub mod pi_exact;
pub mod primes;
pub mod sigma;

pub use error::{Error, Result};
pub use gamma_upsilon::{gamma_vector, upsilon, upsilon_alternating, GammaVector, UpsilonResult};
pub use pi_exact::{pi_exact, select_n, IntervalSelection, PiMethod, PiValue};
pub use primes::PrimeTable;
pub use sigma::{sigma_bruteforce, sigma_vector, EvalPoint, SigmaVector};
