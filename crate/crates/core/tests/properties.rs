use std::sync::OnceLock;

use primepi::sigma::m_max;
use primepi::{
    gamma_vector, pi_exact, sigma_bruteforce, sigma_vector, upsilon, upsilon_alternating,
    EvalPoint, PrimeTable,
};
use proptest::prelude::*;

const ORACLE_LIMIT: u64 = 4_000_000;

fn oracle() -> &'static PrimeTable {
    static TABLE: OnceLock<PrimeTable> = OnceLock::new();
    TABLE.get_or_init(|| PrimeTable::generate(ORACLE_LIMIT).unwrap())
}

fn decimal() -> impl Strategy<Value = (u64, String)> {
    (0..ORACLE_LIMIT, "[0-9]{0,10}[1-9]")
        .prop_map(|(whole, frac)| (whole, format!("{whole}.{frac}")))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pi_exact_matches_sieve(x in 0..ORACLE_LIMIT) {
        prop_assert_eq!(pi_exact(&x.into(), oracle()).unwrap().value, oracle().pi_sieve(x).unwrap());
    }

    #[test]
    fn pi_exact_steps_by_primality(x in 0..ORACLE_LIMIT - 1) {
        let t = oracle();
        let step = pi_exact(&(x + 1).into(), t).unwrap().value - pi_exact(&x.into(), t).unwrap().value;
        prop_assert_eq!(step, t.is_prime(x + 1).unwrap() as u64);
    }

    #[test]
    fn fraction_does_not_change_anything((whole, text) in decimal(), n in 1usize..30) {
        let t = oracle();
        let real = EvalPoint::parse(&text).unwrap();
        prop_assert!(real.has_fraction());
        prop_assert_eq!(real.floor_value(), whole);
        let int = EvalPoint::from(whole);
        prop_assert_eq!(pi_exact(&real, t).unwrap().value, pi_exact(&int, t).unwrap().value);
        prop_assert_eq!(sigma_vector(n, &real, t).unwrap().values().to_vec(), sigma_vector(n, &int, t).unwrap().values().to_vec());
    }

    #[test]
    fn trailing_zeros_are_not_a_fraction(whole in 0..u32::MAX as u64, zeros in 0usize..6) {
        let x = EvalPoint::parse(&format!("{whole}.{}", "0".repeat(zeros))).unwrap();
        prop_assert!(!x.has_fraction());
        prop_assert_eq!(x.floor_value(), whole);
    }

    #[test]
    fn pruned_sigma_matches_brute_force(n in 1usize..=10, x in 0u64..200_000) {
        let t = oracle();
        let point = EvalPoint::from(x);
        let fast = sigma_vector(n, &point, t).unwrap();
        for m in 1..=n {
            prop_assert_eq!(fast.get(m).unwrap(), sigma_bruteforce(n, m, &point, t).unwrap(), "m={}", m);
        }
    }

    #[test]
    fn sigma_is_monotone(n in 1usize..60, x in 0u64..1 << 32) {
        let t = oracle();
        let here = sigma_vector(n, &x.into(), t).unwrap();
        let right = sigma_vector(n, &(x + 1).into(), t).unwrap();
        let wider = sigma_vector(n + 1, &x.into(), t).unwrap();
        for m in 1..=n {
            prop_assert!(here.get(m) <= right.get(m));
            prop_assert!(here.get(m) <= wider.get(m));
        }
    }

    #[test]
    fn sigma_vanishes_exactly_past_the_primorial(n in 1usize..20, x in 0u64..1 << 46) {
        let t = oracle();
        let s = sigma_vector(n, &x.into(), t).unwrap();
        let cutoff = m_max(&x.into(), t).unwrap();
        for m in 1..=n {
            prop_assert_eq!(s.get(m).unwrap() > 0, m <= cutoff, "m={}", m);
        }
    }

    #[test]
    fn upsilon_routes_agree(n in 2usize..200, x in 0u64..1 << 30) {
        let t = oracle();
        let point = EvalPoint::from(x);
        prop_assert_eq!(upsilon(n, &point, t).unwrap().value, upsilon_alternating(n, &point, t).unwrap());
    }

    #[test]
    fn upsilon_counts_primes_inside_its_interval(n in 2usize..=282, offset in any::<u64>()) {
        let t = oracle();
        let lower = t.nth_prime(n).unwrap();
        let upper = t.nth_prime(n + 1).unwrap().pow(2);
        let x = lower + 1 + offset % (upper - lower - 1);
        prop_assert_eq!(upsilon(n, &x.into(), t).unwrap().value, t.pi_sieve(x).unwrap() as i64);
    }

    #[test]
    fn gamma_counts_integers_by_small_prime_factors(n in 2usize..8, x in 0u64..5000) {
        let t = oracle();
        let primes = &t.primes()[..n];
        let g = gamma_vector(n, &x.into(), t).unwrap();
        for m in 2..=n {
            let count = (1..=x).filter(|j| primes.iter().filter(|&&p| j % p == 0).count() == m).count();
            prop_assert_eq!(g.get(m).unwrap(), count.into(), "m={}", m);
        }
    }

    #[test]
    fn nth_prime_inverts_pi_sieve(i in 1usize..280_000) {
        let t = oracle();
        let p = t.nth_prime(i).unwrap();
        prop_assert_eq!(t.pi_sieve(p).unwrap(), i as u64);
        prop_assert_eq!(t.pi_sieve(p - 1).unwrap(), i as u64 - 1);
    }

    #[test]
    fn evaluation_is_deterministic(x in 0..ORACLE_LIMIT) {
        let t = oracle();
        prop_assert_eq!(pi_exact(&x.into(), t).unwrap(), pi_exact(&x.into(), t).unwrap());
    }
}
