use std::sync::OnceLock;

use proptest::prelude::*;
use rug::ops::Pow;
use rug::Rational;

use primecf::cantor::eb::{alpha_identities, eb_prefix_tree, make_eb_params, EbOptions};
use primecf::cantor::records::{export_tree, parse_records, NodeRecord};
use primecf::cantor::{
    additivity_check, box_dimension_estimate, diameter_check, falconer_limit, falconer_lower_bound, LuczakParams,
};
use primecf::contfrac::Word;
use primecf::primes::PrimeSieve;

fn sieve() -> &'static PrimeSieve {
    static S: OnceLock<PrimeSieve> = OnceLock::new();
    S.get_or_init(|| PrimeSieve::new(1_000_000).unwrap())
}

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::from((n, d)))
}

proptest! {
    #[test]
    fn records_round_trip(
        digits in prop::collection::vec(1u64..1_000_000, 0..12),
        mass in 0.0f64..1.0,
        diameter in 1e-300f64..1.0,
        lo in rational(),
        hi in rational(),
    ) {
        let rec = NodeRecord { depth: digits.len(), digits: Word::new(digits).unwrap(), mass, diameter, lo, hi };
        let back: NodeRecord = rec.to_string().parse().unwrap();
        prop_assert_eq!(back, rec);
    }

    #[test]
    fn falconer_ratio_approaches_limit(b in 1.5f64..4.0, c in 1.2f64..3.0) {
        let p = LuczakParams::new(b, c, 1).unwrap();
        let ratios = falconer_lower_bound(&p, 40).unwrap();
        prop_assert!((ratios.last().unwrap().1 - 1.0 / (b + 1.0)).abs() < 0.01);
        for k in 1..30 {
            prop_assert!(p.log_eps(k + 1) < p.log_eps(k));
        }
    }

    #[test]
    fn falconer_limit_is_exact(num in 2u64..10_000, den in 1u64..10_000) {
        prop_assume!(num > den);
        let b = Rational::from((num, den));
        let expected = Rational::from(Rational::from(&b + 1u32).recip_ref());
        prop_assert_eq!(falconer_limit(&b).unwrap(), expected);
    }

    #[test]
    fn alpha_identities_hold(b in 1.5f64..1000.0, s in 0.51f64..0.99, ell in 2u32..7) {
        for id in alpha_identities(b, ell, s) {
            prop_assert!(id.holds && id.rel_error <= 1e-12, "{}: {}", id.name, id.rel_error);
        }
    }

    #[test]
    fn self_similar_box_dimension(branches in 2usize..6, shrink in 3u64..20, levels in 2u32..6) {
        prop_assume!((branches as u64) < shrink);
        let covers: Vec<Vec<Rational>> = (1..=levels)
            .map(|k| vec![Rational::from((1, rug::Integer::from(shrink).pow(k))); branches.pow(k)])
            .collect();
        let est = box_dimension_estimate(&covers).unwrap();
        prop_assert!((est.slope - (branches as f64).ln() / (shrink as f64).ln()).abs() < 1e-9);
    }
}

#[test]
fn miniature_diameters_and_masses() {
    for (b, s, delta) in [(4.0, 0.55, 0.02), (3.0, 0.56, 0.02), (5.0, 0.54, 0.01), (4.0, 0.58, 0.03)] {
        let params = make_eb_params(b, 2, s, delta, sieve(), EbOptions::default()).unwrap();
        let depth = (params.round_start(1) + 1) as usize;
        let tree = eb_prefix_tree(&params, depth, sieve(), 1_000_000).unwrap();
        let add = additivity_check(&tree);
        assert!(add.max_error <= 1e-12 && add.root_mass_error <= 1e-12, "B={b} s={s}: {add:?}");
        let diam = diameter_check(&tree, (1.0 / 64.0, 64.0));
        assert!(diam.within_band(), "B={b} s={s}: {diam:?}");
        let recs = export_tree(&tree);
        let text: String = recs.iter().map(|r| format!("{r}\n")).collect();
        assert_eq!(parse_records(&text).unwrap(), recs);
    }
}
