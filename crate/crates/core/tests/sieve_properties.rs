use friable::oracle::{lpf_trial, psi_pairs_trial, psi_trial};
use friable::saddle::psi_pairs_thresholds;
use friable::sieve::{lpf_sieve, psi, psi_coprime, psi_progression, smooth_mask, PsiQuery};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_matches_trial(x in 1u64..3000, y in 1u64..200) {
        prop_assert_eq!(psi(x, y), psi_trial(x, y));
    }

    #[test]
    fn psi_monotone(x in 1u64..50_000, y in 2u64..500, dx in 0u64..1000, dy in 0u64..100) {
        let base = psi(x, y);
        prop_assert!(base <= x);
        prop_assert!(psi(x + dx, y) >= base);
        prop_assert!(psi(x, y + dy) >= base);
    }

    #[test]
    fn progressions_partition(x in 1u64..20_000, y in 2u64..100, q in 1u64..16) {
        let total: u64 = (0..q).map(|a| psi_progression(&PsiQuery::progression(x, y, a, q)).unwrap()).sum();
        prop_assert_eq!(total, psi(x, y));
    }

    #[test]
    fn coprime_count_by_residues(x in 1u64..5000, y in 2u64..60, q in 1u64..30) {
        let by_class: u64 = (0..q)
            .filter(|&a| friable::primes::gcd(a, q) == 1)
            .map(|a| psi_progression(&PsiQuery::progression(x, y, a, q)).unwrap())
            .sum();
        prop_assert_eq!(psi_coprime(x, y, q).unwrap(), by_class);
    }

    #[test]
    fn lpf_table_spot_checks(lo in 1u64..1_000_000, len in 1u64..2000) {
        let table = lpf_sieve(lo, lo + len - 1).unwrap();
        prop_assert_eq!(table.len() as u64, len);
        for n in [lo, lo + len / 2, lo + len - 1] {
            prop_assert_eq!(table.get(n), Some(lpf_trial(n)));
        }
        prop_assert_eq!(table.get(lo + len), None);
    }

    #[test]
    fn smooth_mask_agrees_with_lpf(lo in 1u64..100_000, len in 1u64..500, y in 1u64..300) {
        let mask = smooth_mask(lo, lo + len - 1, y).unwrap();
        for (i, &m) in mask.iter().enumerate() {
            prop_assert_eq!(m, lpf_trial(lo + i as u64) <= y);
        }
    }

    #[test]
    fn pairs_match_trial(x in 1u64..3000, a in -20i64..20, y1 in 2u64..60, y2 in 2u64..60) {
        prop_assume!(a != 0);
        prop_assert_eq!(psi_pairs_thresholds(x, a, y1, y2).unwrap(), psi_pairs_trial(x, a, y1, y2));
    }
}

#[test]
fn large_psi_values() {
    // Ψ(10^6, 10^3) and Ψ(10^7, 100), cross-checked against an independent segmented count
    assert_eq!(psi(1_000_000, 1000), smooth_mask(1, 1_000_000, 1000).unwrap().iter().filter(|&&b| b).count() as u64);
    assert_eq!(psi(10_000_000, 100), smooth_mask(1, 10_000_000, 100).unwrap().iter().filter(|&&b| b).count() as u64);
    assert_eq!(psi(100, 100), 100);
    assert_eq!(psi(100, 1), 1);
}

#[test]
fn invalid_ranges() {
    assert!(lpf_sieve(0, 10).is_err());
    assert!(lpf_sieve(10, 5).is_err());
    assert!(lpf_sieve(1, 1 << 27).is_err());
    assert!(psi_progression(&PsiQuery::progression(10, 10, 3, 3)).is_err());
    assert!(psi_progression(&PsiQuery { x: 10, y: 10, modulus: None, residue: None, coprime_only: false }).is_err());
}
