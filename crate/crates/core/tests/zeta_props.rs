use std::sync::OnceLock;

use proptest::prelude::*;
use rug::Float;

use primecf::precision::PREC;
use primecf::primes::{OmegaMode, PrimeSieve};
use primecf::zeta::{pzeta_tail, pzeta_via_mobius, s_ordered_direct, s_recursive};

fn sieve() -> &'static PrimeSieve {
    static S: OnceLock<PrimeSieve> = OnceLock::new();
    S.get_or_init(|| PrimeSieve::new(2_000_000).unwrap())
}

#[test]
fn mobius_oracle_agreement() {
    for s in [2.0, 3.0, 4.0] {
        let tail = pzeta_tail(1, OmegaMode::Exactly, s, 2, 2_000_000, sieve()).unwrap();
        let oracle = pzeta_via_mobius(s, 80).unwrap();
        let diff = Float::with_val(PREC, &oracle - &tail.value).abs();
        let slack = Float::with_val(PREC, &tail.remainder_bound + 1e-20);
        assert!(diff <= slack, "s = {s}: |diff| = {diff}, bound = {}", tail.remainder_bound);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ordering_bounds(ell in 2u32..4, m in 1u64..5_000, r in 2u64..10, cutoff in 200u64..3_000) {
        let full = s_recursive(ell, m, r, 2.0, cutoff, sieve()).unwrap().value;
        let ordered = s_ordered_direct(ell, m, r, 2.0, cutoff, sieve()).unwrap();
        let fact: u32 = (1..=ell).product();
        let slack = Float::with_val(PREC, &ordered * 1e-30);
        prop_assert!(Float::with_val(PREC, &ordered - &slack) <= full);
        prop_assert!(full <= Float::with_val(PREC, &ordered * fact) + slack);
    }

    #[test]
    fn tail_decreases_in_m_and_s(
        ell in 1u32..3,
        m in 2u64..20_000,
        dm in 1u64..5_000,
        s in 1.2f64..3.0,
        ds in 0.05f64..1.0,
    ) {
        let t = |m: u64, s: f64| pzeta_tail(ell, OmegaMode::Exactly, s, m, 100_000, sieve()).unwrap();
        let base = t(m, s);
        // strictly fewer terms once an almost prime is skipped; never more
        prop_assert!(t(m + dm, s).value <= base.value);
        prop_assert!(t(m, s + ds).value < base.value);
        prop_assert!(t(m, s + ds).upper() < base.upper());
    }

    #[test]
    fn remainder_bound_survives_larger_cutoffs(
        ell in 1u32..3,
        m in 2u64..1_000,
        s in 1.3f64..3.0,
        k in 1_000u64..20_000,
        extra in 1u64..200_000,
    ) {
        let small = pzeta_tail(ell, OmegaMode::Exactly, s, m, k, sieve()).unwrap();
        let large = pzeta_tail(ell, OmegaMode::Exactly, s, m, k + extra, sieve()).unwrap();
        prop_assert!(small.upper() >= large.value);
        prop_assert!(large.value >= small.value);
    }
}

#[test]
fn tail_strictly_decreases_across_a_prime() {
    let a = pzeta_tail(1, OmegaMode::Exactly, 2.0, 97, 10_000, sieve()).unwrap();
    let b = pzeta_tail(1, OmegaMode::Exactly, 2.0, 98, 10_000, sieve()).unwrap();
    assert!(b.value < a.value);
}
