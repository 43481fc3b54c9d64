use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use strength::formulas::{forms_dim, join_dim_upper_bound, JoinProfile};
use strength::oracle::{
    regular_sequence_check, sample_form, terracini_join_dim, DEFAULT_PRIME,
};
use strength::series::ci_quotient_series;

#[test]
fn reports_are_deterministic() {
    let p = JoinProfile::new(6, 4, vec![1, 3]).unwrap();
    let a = terracini_join_dim(&p, DEFAULT_PRIME, 3, 99).unwrap();
    let b = terracini_join_dim(&p, DEFAULT_PRIME, 3, 99).unwrap();
    assert_eq!(a, b);
}

#[test]
fn more_trials_never_lower_the_value() {
    // A small field makes rank drops likely, so the prefix maxima are
    // actually exercised.
    let p = JoinProfile::new(5, 3, vec![1, 2]).unwrap();
    let full = terracini_join_dim(&p, 3, 12, 4).unwrap();
    let mut best = i128::MIN;
    for t in 1..=12u32 {
        let prefix = terracini_join_dim(&p, 3, t, 4).unwrap();
        assert_eq!(prefix.trial_values[..], full.trial_values[..t as usize]);
        assert!(prefix.oracle_value >= best);
        best = prefix.oracle_value;
    }
    assert_eq!(best, full.oracle_value);
}

#[test]
fn single_factor_matches_quotient_formula() {
    for (d, n) in [(4, 2), (5, 3), (6, 3), (6, 4), (7, 3)] {
        for a in 1..=d / 2 {
            let prof = JoinProfile::new(d, n, vec![a]).unwrap();
            let rep = terracini_join_dim(&prof, DEFAULT_PRIME, 3, 17).unwrap();
            let du = d as usize;
            let quotient = ci_quotient_series(n, &[a, d - a], du).unwrap().coeff(du);
            assert_eq!(rep.oracle_value + 1, forms_dim(d, n).unwrap() - quotient, "{prof}");
        }
    }
}

#[test]
fn oracle_stays_below_bound_and_hits_it_on_all_ones() {
    for (d, n) in [(3, 3), (4, 3), (5, 3), (6, 3), (5, 4), (7, 4)] {
        for r in 1..n as usize {
            for prof in strength::formulas::sorted_profiles(d, n, r).unwrap() {
                let rep = terracini_join_dim(&prof, DEFAULT_PRIME, 3, 5).unwrap();
                let bound = join_dim_upper_bound(&prof).unwrap();
                assert!(rep.oracle_value <= bound);
                if let Some(hl) = rep.hl_value {
                    assert_eq!(rep.oracle_value, bound, "{prof}");
                    assert_eq!(hl, bound, "{prof}");
                }
                assert_eq!(rep.within_main_hypothesis, d >= 5);
            }
        }
    }
}

#[test]
fn sampled_forms_are_regular_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 1..=4u32 {
        for len in 0..=n {
            let forms: Vec<_> = (0..len)
                .map(|i| sample_form(n, 1 + (i % 3), DEFAULT_PRIME, &mut rng).unwrap())
                .collect();
            assert!(regular_sequence_check(n, &forms, DEFAULT_PRIME, 6).unwrap(), "n={n} len={len}");
        }
    }
}
