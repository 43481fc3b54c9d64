use proptest::prelude::*;

use strength::series::{ci_quotient_series, geometric, inclusion_exclusion_coeff, p_k};
use strength::TruncatedSeries;

fn nondecreasing(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let lo = prefix.last().copied().unwrap_or(1);
                (lo..=max).map(move |a| {
                    let mut next = prefix.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out
}

#[test]
fn subset_expansion_matches_series_exhaustively() {
    let mut checked = 0;
    for n in 1..=6 {
        for len in 0..=4 {
            for degs in nondecreasing(len, 6) {
                let s = ci_quotient_series(n, &degs, 12).unwrap();
                for e in 0..=12u32 {
                    assert_eq!(
                        s.coeff(e as usize),
                        inclusion_exclusion_coeff(n, e, &degs).unwrap(),
                        "n={n} e={e} degs={degs:?}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn geometric_times_p_k_is_weakly_increasing() {
    for l in 0..=4u32 {
        for s in 0..=3 {
            for ks in nondecreasing(s, 7) {
                let mut series = geometric(l + 1, 12).unwrap();
                // entries 1..=7 encode k = 0..=6
                for &k in &ks {
                    series = series.mul(&p_k(k as usize - 1, 12)).unwrap();
                }
                assert!(series.is_weakly_increasing(), "l={l} ks={ks:?}: {:?}", series.coeffs());
            }
        }
    }
}

#[test]
fn complete_intersection_series_is_nonnegative() {
    for n in 1..=6u32 {
        for len in 0..=n.min(4) as usize {
            for degs in nondecreasing(len, 5) {
                let s = ci_quotient_series(n, &degs, 14).unwrap();
                assert!(s.coeffs().iter().all(|&c| c >= 0), "n={n} degs={degs:?}");
            }
        }
    }
}

fn series_strategy(trunc: usize, max: i128) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-max..=max, trunc + 1).prop_map(TruncatedSeries::from_coeffs)
}

fn nonneg_strategy(trunc: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(0i128..1000, trunc + 1).prop_map(TruncatedSeries::from_coeffs)
}

proptest! {
    #[test]
    fn mul_commutes(a in series_strategy(10, 1 << 20), b in series_strategy(10, 1 << 20)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn mul_associates(
        a in series_strategy(8, 1 << 12),
        b in series_strategy(8, 1 << 12),
        c in series_strategy(8, 1 << 12),
    ) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn dominated_factor_gives_dominated_product(
        f in nonneg_strategy(10),
        h in nonneg_strategy(10),
        bump in prop::collection::vec(0i128..50, 11),
    ) {
        let g = TruncatedSeries::from_coeffs(
            h.coeffs().iter().zip(&bump).map(|(x, y)| x + y).collect(),
        );
        let fg = f.mul(&g).unwrap();
        let fh = f.mul(&h).unwrap();
        for k in 0..=10 {
            prop_assert!(fg.coeff(k) >= fh.coeff(k));
        }
    }

    #[test]
    fn truncation_commutes_with_mul(a in series_strategy(9, 1 << 20), b in series_strategy(9, 1 << 20), t in 0usize..=9) {
        let full = a.mul(&b).unwrap().truncated(t).unwrap();
        let early = a.truncated(t).unwrap().mul(&b.truncated(t).unwrap()).unwrap();
        prop_assert_eq!(full, early);
    }

    #[test]
    fn subset_expansion_matches_series(
        n in 1u32..9,
        e in 0u32..20,
        degs in prop::collection::vec(1u32..9, 0..7),
    ) {
        let s = ci_quotient_series(n, &degs, e as usize).unwrap();
        prop_assert_eq!(s.coeff(e as usize), inclusion_exclusion_coeff(n, e, &degs).unwrap());
    }
}
