//! Randomized ground truth for join dimensions.
//!
//! By Terracini's lemma the affine tangent space of `J(X_{a_1}, ..., X_{a_r})`
//! at a general point is `(g_1, h_1, ..., g_r, h_r)_d` for general forms
//! `g_i` of degree `a_i` and `h_i` of degree `d - a_i`. We sample those forms
//! over `F_p` and take the rank of the degree-`d` Macaulay matrix. A rank over
//! `F_p` never exceeds the characteristic-zero rank, so together with the
//! closed-form upper bound this sandwiches the true dimension.
//!
//! Monomials are ordered lexicographically within each degree (see
//! [`forms::monomials`]) and randomness comes from ChaCha8 seeded with
//! `seed_from_u64`, so every report is reproducible from its seed.

pub mod field;
pub mod forms;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use field::{check_modulus, is_prime, PrimeFieldMatrix, DEFAULT_PRIME};
pub use forms::{ideal_degree_dim, macaulay_matrix, monomials, sample_form, DenseForm};

use crate::error::{Error, Int, Result};
use crate::formulas::{
    forms_dim, generic_slice_rank, hl_codim, join_dim_upper_bound, sorted_profiles, JoinProfile,
};
use crate::series::ci_quotient_series;

pub const DEFAULT_TRIALS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub profile: JoinProfile,
    pub formula_bound: Int,
    /// `dim sigma_r(X_1)` from the Hochster-Laksov codimension; only for
    /// all-ones profiles with `r` below the generic slice rank.
    pub hl_value: Option<Int>,
    /// Best dimension seen over all trials.
    pub oracle_value: Int,
    /// Dimension measured in each trial, in sampling order.
    pub trial_values: Vec<Int>,
    pub trials: u32,
    pub seed: u64,
    pub p: u64,
    pub equality: bool,
    pub within_main_hypothesis: bool,
}

/// `dim sigma_r(X_1)` for `1 <= r < slrk(d, n)`, via the Hochster-Laksov
/// codimension.
pub fn hl_dimension(d: u32, n: u32, r: u32) -> Result<Int> {
    Ok(forms_dim(d, n)? - 1 - hl_codim(d, n, r)?)
}

fn hl_value_for(profile: &JoinProfile) -> Result<Option<Int>> {
    if !profile.is_all_ones() || profile.d() < 3 {
        return Ok(None);
    }
    let r = profile.r() as u32;
    if r >= generic_slice_rank(profile.d(), profile.n())? {
        return Ok(None);
    }
    hl_dimension(profile.d(), profile.n(), r).map(Some)
}

/// Measures `dim J_{a_1..a_r}` as `dim (g_1, h_1, ..., g_r, h_r)_d - 1`,
/// maximized over `trials` independent samplings from one seeded stream.
///
/// A measured value above the closed-form bound is returned as
/// [`Error::BoundViolation`].
pub fn terracini_join_dim(profile: &JoinProfile, p: u64, trials: u32, seed: u64) -> Result<DimensionReport> {
    check_modulus(p)?;
    if trials < 1 {
        return Err(Error::Config("at least one trial is required".into()));
    }
    let formula_bound = join_dim_upper_bound(profile)?;
    let (d, n) = (profile.d(), profile.n());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trial_values = Vec::with_capacity(trials as usize);
    for _ in 0..trials {
        let mut generators = Vec::with_capacity(2 * profile.r());
        for &a in profile.degs() {
            generators.push(sample_form(n, a, p, &mut rng)?);
            generators.push(sample_form(n, d - a, p, &mut rng)?);
        }
        trial_values.push(ideal_degree_dim(n, d, &generators, p)? as Int - 1);
    }
    let oracle_value = *trial_values.iter().max().expect("trials >= 1");
    if oracle_value > formula_bound {
        return Err(Error::BoundViolation {
            profile: profile.to_string(),
            oracle: oracle_value,
            bound: formula_bound,
        });
    }
    Ok(DimensionReport {
        profile: profile.clone(),
        formula_bound,
        hl_value: hl_value_for(profile)?,
        oracle_value,
        trial_values,
        trials,
        seed,
        p,
        equality: oracle_value == formula_bound,
        within_main_hypothesis: profile.within_main_hypothesis(),
    })
}

/// Checks that the Hilbert function of `(forms)` matches that of a complete
/// intersection of the same degrees in every degree up to `up_to_degree`.
pub fn regular_sequence_check(n: u32, forms: &[DenseForm], p: u64, up_to_degree: u32) -> Result<bool> {
    if forms.len() > n as usize {
        return Err(Error::pre(format!(
            "at most n = {n} forms can form a regular sequence, got {}",
            forms.len()
        )));
    }
    let degs: Vec<u32> = forms.iter().map(DenseForm::deg).collect();
    let series = ci_quotient_series(n, &degs, up_to_degree as usize)?;
    for e in 0..=up_to_degree {
        let active: Vec<DenseForm> = forms.iter().filter(|f| f.deg() <= e).cloned().collect();
        let measured = ideal_degree_dim(n, e, &active, p)? as Int;
        let expected = forms_dim(e, n)? - series.coeff(e as usize);
        if measured != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// splitmix64 of `seed + index * golden_gamma`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub d: u32,
    pub n: u32,
    pub max_r: u32,
    pub p: u64,
    pub trials: u32,
    pub seed: u64,
    pub reports: Vec<DimensionReport>,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Runs [`terracini_join_dim`] on every sorted profile with `1 <= r <= max_r`,
/// each with its own seed `derive_seed(seed, index)`. All-ones profiles
/// below the generic slice rank must hit the bound and the Hochster-Laksov
/// value exactly.
pub fn cross_check(d: u32, n: u32, max_r: u32, p: u64, trials: u32, seed: u64) -> Result<CrossCheckReport> {
    check_modulus(p)?;
    if max_r < 1 || max_r >= n {
        return Err(Error::pre(format!("max_r = {max_r} must satisfy 1 <= max_r < n = {n}")));
    }
    let mut profiles = Vec::new();
    for r in 1..=max_r as usize {
        profiles.extend(sorted_profiles(d, n, r)?);
    }
    let outcomes: Vec<Result<DimensionReport>> = profiles
        .par_iter()
        .enumerate()
        .map(|(i, profile)| terracini_join_dim(profile, p, trials, derive_seed(seed, i as u64)))
        .collect();

    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for (profile, outcome) in profiles.iter().zip(outcomes) {
        match outcome {
            Ok(report) => {
                if let Some(hl) = report.hl_value {
                    if report.oracle_value != report.formula_bound || hl != report.formula_bound {
                        failures.push(format!(
                            "{profile}: oracle {} / bound {} / HL {hl} disagree",
                            report.oracle_value, report.formula_bound
                        ));
                    }
                }
                reports.push(report);
            }
            Err(e @ (Error::BoundViolation { .. } | Error::Overflow(_) | Error::Invariant(_))) => {
                failures.push(e.to_string())
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CrossCheckReport {
        d,
        n,
        max_r,
        p,
        trials,
        seed,
        passed: failures.is_empty(),
        reports,
        failures,
    })
}
