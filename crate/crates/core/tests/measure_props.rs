use std::sync::OnceLock;

use proptest::prelude::*;
use rug::Rational;

use primecf::growth::Growth;
use primecf::measure::{level_set_measure, run_zero_one_experiment, MCExperiment};
use primecf::primes::PrimeSieve;

fn sieve() -> &'static PrimeSieve {
    static S: OnceLock<PrimeSieve> = OnceLock::new();
    S.get_or_init(|| PrimeSieve::new(200_000).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn brackets_nest_as_cutoff_grows(ell in 1u32..3, threshold in 3.0f64..500.0, k in 1_000u64..20_000, extra in 1u64..20_000) {
        let a = level_set_measure(ell, threshold, k, sieve()).unwrap();
        let b = level_set_measure(ell, threshold, k + extra, sieve()).unwrap();
        prop_assert!(a.exact_lower <= a.exact_upper);
        prop_assert!(b.exact_lower >= a.exact_lower);
        prop_assert!(b.exact_upper <= a.exact_upper);
        if ell == 1 {
            prop_assert!(a.width() <= 2.0 / k as f64);
        }
    }

    #[test]
    fn single_digit_sandwich(threshold in 2.0f64..200.0, cutoff in 300u64..3_000) {
        let m = level_set_measure(1, threshold, cutoff, sieve()).unwrap();
        let primes = sieve().primes().iter().map(|&p| u64::from(p)).filter(|&p| p as f64 >= threshold && p <= cutoff);
        let (mut lo, mut mid, mut hi) = (Rational::new(), Rational::new(), Rational::new());
        for p in primes {
            lo += Rational::from((1, p * (p + 2)));
            mid += Rational::from((1, p * (p + 1)));
            hi += Rational::from((1, p * p));
        }
        prop_assert!(lo <= mid && mid <= hi);
        prop_assert!(m.exact_lower <= mid.to_f64() * (1.0 + 1e-15));
        prop_assert!(m.exact_upper >= mid.to_f64());
    }
}

#[test]
fn convergent_hits_thin_out_with_later_windows() {
    let phi = Growth::NLogSquared;
    let run = |lo: u64| {
        run_zero_one_experiment(&MCExperiment::new(2_000, lo..=lo + 30, phi, 1, 21), sieve()).unwrap().fraction
    };
    let fractions: Vec<f64> = [10, 100, 1000].into_iter().map(run).collect();
    assert!(fractions.windows(2).all(|w| w[1] < w[0]), "{fractions:?}");
}

#[test]
fn identical_seeds_identical_reports() {
    let cfg = MCExperiment::new(300, 5..=25, Growth::Power(2.0), 2, 99);
    assert_eq!(run_zero_one_experiment(&cfg, sieve()).unwrap(), run_zero_one_experiment(&cfg, sieve()).unwrap());
}
