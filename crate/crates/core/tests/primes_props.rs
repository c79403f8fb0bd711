use std::sync::OnceLock;

use proptest::prelude::*;

use primecf::primes::{big_omega, AlmostPrimeEnumeration, OmegaMode, PrimeSieve};

const LIMIT: u64 = 10_000_000;

fn sieve() -> &'static PrimeSieve {
    static S: OnceLock<PrimeSieve> = OnceLock::new();
    S.get_or_init(|| PrimeSieve::new(LIMIT).unwrap())
}

fn trial(k: u64) -> bool {
    k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

proptest! {
    #[test]
    fn sampled_primality_matches_trial_division(k in 100_000u64..LIMIT) {
        prop_assert_eq!(sieve().is_prime(k).unwrap(), trial(k));
    }

    #[test]
    fn almost_primes_have_the_right_omega(
        ell in 1u32..4,
        at_most in any::<bool>(),
        start in 1u64..50_000,
        span in 1u64..5_000,
    ) {
        let mode = if at_most { OmegaMode::AtMost } else { OmegaMode::Exactly };
        let cfg = AlmostPrimeEnumeration { ell, mode, bound: start + span };
        let got: Vec<u64> = sieve().almost_primes(cfg, start).unwrap().collect();
        prop_assert!(got.windows(2).all(|w| w[0] < w[1]));
        let expected: Vec<u64> = (start.max(2)..=start + span).filter(|&k| mode.accepts(big_omega(k), ell)).collect();
        prop_assert_eq!(got, expected);
    }
}

#[test]
fn rosser_bracket_exhaustive() {
    let s = sieve();
    for x in 55..=100_000u64 {
        let xf = x as f64;
        let pi = s.prime_count(xf).unwrap() as f64;
        assert!(xf / (2.0 + xf.ln()) < pi && pi < xf / (xf.ln() - 4.0), "x = {x}, pi = {pi}");
    }
}

/// Largest x ≤ 10^7 with no prime in `[0.999x, x)`: the primes 48679 and 48731 are consecutive.
const LAST_SHORT_INTERVAL_FAILURE: u64 = 48_731;

/// Empirical stand-in for short-interval primes: `[0.999x, x)` holds a prime
/// for every integer x in `(LAST_SHORT_INTERVAL_FAILURE, limit]`, and not below.
#[test]
fn short_intervals_empirical() {
    let s = sieve();
    let primes = s.primes();
    let mut last_failure = 0;
    for w in primes.windows(2) {
        let (p, next) = (u64::from(w[0]), u64::from(w[1]));
        if next > LIMIT {
            break;
        }
        // x in (p, next] sees p as its largest prime below; x = next is the worst case
        if (p as f64) < 0.999 * next as f64 && next >= 10_000 {
            last_failure = next;
        }
    }
    assert_eq!(last_failure, LAST_SHORT_INTERVAL_FAILURE);
    assert!(s.primes_in(0.999 * 10_000.0, 9_999.0).unwrap().is_empty());
    for x in [48_732.0, 1e5, 1e6, 1e7] {
        assert!(!s.primes_in(0.999 * x, x - 1.0).unwrap().is_empty(), "x = {x}");
    }
}

#[test]
fn mertens_offset_is_stable() {
    let s = sieve();
    let offsets: Vec<f64> = [1e5, 1e6, 1e7].iter().map(|&x| s.mertens_sum(x).unwrap().to_f64() - x.ln().ln()).collect();
    for a in &offsets {
        for b in &offsets {
            assert!((a - b).abs() < 0.05, "{offsets:?}");
        }
    }
    assert!((offsets[2] - 0.2615).abs() < 0.01);
}
