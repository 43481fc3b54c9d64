//! Exhaustive finite sweeps of the inequalities behind the minimality of `F`.
//!
//! Each check returns a [`VerificationReport`] with the exact number of
//! instances tested and the failing parameter tuples, if any. Reports over
//! disjoint ranges combine with [`VerificationReport::merge`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use crate::error::{Error, Int, Result};
use crate::formulas::{abcde, f_value, generic_slice_rank, sorted_profiles, JoinProfile};
use crate::series::{ci_quotient_series, geometric, inclusion_exclusion_coeff, p_k};

/// At most this many counterexamples are stored; the count stays exact.
pub const MAX_STORED_COUNTEREXAMPLES: usize = 100;

pub const DEFAULT_D_RANGE: RangeInclusive<u32> = 5..=12;
pub const DEFAULT_N_RANGE: RangeInclusive<u32> = 2..=12;
pub const DEFAULT_M_MAX: u32 = 9;

/// Box `(n_max, e_max, deg_max, len_max)` swept by the identity check.
pub const DEFAULT_IDENTITY_BOX: (u32, u32, u32, usize) = (4, 10, 5, 3);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: Value,
    pub lhs: Int,
    pub rhs: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub instances: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(check: &str, params: BTreeMap<String, Value>) -> Self {
        Self {
            check: check.to_string(),
            params,
            instances: 0,
            counterexample_count: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
            passed: true,
            elapsed: Duration::ZERO,
        }
    }

    /// Counts one instance; records a counterexample unless `holds`.
    pub fn record(&mut self, holds: bool, params: impl FnOnce() -> Value, lhs: Int, rhs: Int) {
        self.instances += 1;
        if holds {
            return;
        }
        self.counterexample_count += 1;
        self.passed = false;
        if self.counterexamples.len() < MAX_STORED_COUNTEREXAMPLES {
            self.counterexamples.push(Counterexample {
                params: params(),
                lhs,
                rhs,
            });
        }
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        let msg = msg.into();
        if !self.notes.contains(&msg) {
            self.notes.push(msg);
        }
    }

    /// Folds `other` into `self`, keeping `self`'s name and parameters.
    pub fn merge(&mut self, other: VerificationReport) {
        self.instances += other.instances;
        self.counterexample_count += other.counterexample_count;
        let room = MAX_STORED_COUNTEREXAMPLES.saturating_sub(self.counterexamples.len());
        self.counterexamples.extend(other.counterexamples.into_iter().take(room));
        for n in other.notes {
            self.note(n);
        }
        self.passed = self.counterexample_count == 0;
        self.elapsed += other.elapsed;
    }
}

fn dn_params(d: u32, n: u32) -> BTreeMap<String, Value> {
    BTreeMap::from([("d".to_string(), json!(d)), ("n".to_string(), json!(n))])
}

fn require_d_at_least_5(d: u32) -> Result<()> {
    if d < 5 {
        return Err(Error::pre(format!(
            "this check is stated for d >= 5, got d = {d}"
        )));
    }
    Ok(())
}

/// For every `r < slrk(d, n)`, every sorted profile other than `(1, ..., 1)`
/// must have `F` strictly above `F(1, ..., 1)`. Strictness also certifies
/// that the all-ones profile is the unique minimizer.
pub fn verify_minimality(d: u32, n: u32) -> Result<VerificationReport> {
    require_d_at_least_5(d)?;
    if n < 2 {
        return Err(Error::pre(format!("need n >= 2, got n = {n}")));
    }
    let start = Instant::now();
    let mut report = VerificationReport::new("minimality", dn_params(d, n));
    let slrk = generic_slice_rank(d, n)? as usize;
    for r in 1..slrk {
        let baseline = f_value(&JoinProfile::all_ones(d, n, r)?)?;
        for profile in sorted_profiles(d, n, r)? {
            if profile.is_all_ones() {
                continue;
            }
            let f = f_value(&profile)?;
            report.record(
                f > baseline,
                || json!({ "d": d, "n": n, "degs": profile.degs() }),
                f,
                baseline,
            );
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `coeff_4(P_inf^l_theta * P_1^ones)`.
fn theta_lhs(l_theta: u32, ones: u32) -> Result<Int> {
    let mut s = geometric(l_theta, 4)?;
    let p1 = p_k(1, 4);
    for _ in 0..ones {
        s = s.mul(&p1)?;
    }
    Ok(s.coeff(4))
}

/// For `2 <= m <= m_max`, `l_theta >= 1`, `l_prev >= 0` and
/// `m > l_prev + l_theta`:
/// `coeff_4(P_inf^l_theta P_1^(m - l_theta - 1)) > l_prev + (l_theta - 1)(2m - 1)`.
pub fn verify_theta_inequality(m_max: u32) -> Result<VerificationReport> {
    if m_max < 2 {
        return Err(Error::pre(format!("need m_max >= 2, got {m_max}")));
    }
    let start = Instant::now();
    let params = BTreeMap::from([
        ("m_min".to_string(), json!(2)),
        ("m_max".to_string(), json!(m_max)),
        ("l_theta".to_string(), json!("1..m-1")),
        ("l_prev".to_string(), json!("0..m-l_theta-1")),
    ]);
    let mut report = VerificationReport::new("theta", params);
    for m in 2..=m_max {
        for l_theta in 1..m {
            let lhs = theta_lhs(l_theta, m - l_theta - 1)?;
            for l_prev in 0..m - l_theta {
                let rhs = l_prev as Int + (l_theta as Int - 1) * (2 * m as Int - 1);
                report.record(
                    lhs > rhs,
                    || json!({ "m": m, "l_theta": l_theta, "l_prev": l_prev }),
                    lhs,
                    rhs,
                );
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Signs of the differences `B..E` over all `l_1 + l_2 < n`:
/// `B_{l1,0} > 0` for `1 <= l1 < slrk`, `C >= 0`, `D >= 0`, `E >= 2`.
pub fn verify_edcba(d: u32, n: u32) -> Result<VerificationReport> {
    require_d_at_least_5(d)?;
    let start = Instant::now();
    let mut report = VerificationReport::new("edcba", dn_params(d, n));
    let slrk = generic_slice_rank(d, n)?;
    for l1 in 0..n {
        for l2 in 0..n - l1 {
            let rec = abcde(d, n, l1, l2)?;
            let at = |part: &'static str| move || json!({ "d": d, "n": n, "l1": l1, "l2": l2, "part": part });
            if l2 == 0 && l1 >= 1 && l1 < slrk {
                let b = rec.b.expect("B is defined for l1 >= 1");
                report.record(b > 0, at("B>0"), b, 0);
            }
            if let Some(c) = rec.c {
                report.record(c >= 0, at("C>=0"), c, 0);
            }
            if let Some(dd) = rec.d {
                report.record(dd >= 0, at("D>=0"), dd, 0);
            }
            if let Some(e) = rec.e {
                report.record(e >= 2, at("E>=2"), e, 2);
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `A_{l1,l2} > A_{l1+l2,0}` whenever `l2 >= 1` and `l1 + l2 < slrk(d, n)`.
pub fn verify_chain(d: u32, n: u32) -> Result<VerificationReport> {
    require_d_at_least_5(d)?;
    let start = Instant::now();
    let mut report = VerificationReport::new("chain", dn_params(d, n));
    let slrk = generic_slice_rank(d, n)?;
    for total in 1..slrk {
        let target = abcde(d, n, total, 0)?.a;
        for l2 in 1..=total {
            let l1 = total - l2;
            let a = abcde(d, n, l1, l2)?.a;
            report.record(
                a > target,
                || json!({ "d": d, "n": n, "l1": l1, "l2": l2 }),
                a,
                target,
            );
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// For every sorted profile with `r < slrk(d, n)` and largest entry
/// `theta > 2`: `F(profile) > F(profile with one theta lowered to theta - 1)`.
pub fn verify_theta_reduction(d: u32, n: u32) -> Result<VerificationReport> {
    require_d_at_least_5(d)?;
    let start = Instant::now();
    let mut report = VerificationReport::new("theta-reduction", dn_params(d, n));
    if d / 2 <= 2 {
        report.note(format!("d = {d}: floor(d/2) <= 2, no profile has theta > 2"));
    }
    let slrk = generic_slice_rank(d, n)? as usize;
    for r in 1..slrk {
        for profile in sorted_profiles(d, n, r)? {
            if profile.max_degree() <= 2 {
                continue;
            }
            let lowered = profile.lower_max().expect("theta > 2 can be lowered");
            let (f, g) = (f_value(&profile)?, f_value(&lowered)?);
            report.record(
                f > g,
                || json!({ "d": d, "n": n, "degs": profile.degs(), "lowered": lowered.degs() }),
                f,
                g,
            );
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Nondecreasing sequences of length `len` with entries in `[1, max]`.
fn multisets(len: usize, max: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = vec![1u32; len];
    loop {
        out.push(cur.clone());
        let Some(i) = cur.iter().rposition(|&a| a < max) else {
            break;
        };
        let next = cur[i] + 1;
        cur[i..].iter_mut().for_each(|a| *a = next);
    }
    out
}

/// Series coefficient against the subset expansion, for every
/// `1 <= n <= n_max`, `0 <= e <= e_max` and every multiset of at most
/// `len_max` degrees in `[1, deg_max]`.
pub fn verify_identity_lemma(n_max: u32, e_max: u32, deg_max: u32, len_max: usize) -> Result<VerificationReport> {
    if n_max < 1 || e_max < 1 || deg_max < 1 || len_max < 1 {
        return Err(Error::pre("all identity bounds must be at least 1"));
    }
    let start = Instant::now();
    let params = BTreeMap::from([
        ("n_max".to_string(), json!(n_max)),
        ("e_max".to_string(), json!(e_max)),
        ("deg_max".to_string(), json!(deg_max)),
        ("len_max".to_string(), json!(len_max)),
    ]);
    let mut report = VerificationReport::new("identity", params);
    for n in 1..=n_max {
        for len in 0..=len_max {
            for degs in multisets(len, deg_max) {
                let series = ci_quotient_series(n, &degs, e_max as usize)?;
                for e in 0..=e_max {
                    let lhs = series.coeff(e as usize);
                    let rhs = inclusion_exclusion_coeff(n, e, &degs)?;
                    report.record(
                        lhs == rhs,
                        || json!({ "n": n, "e": e, "degs": degs }),
                        lhs,
                        rhs,
                    );
                }
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs a per-`(d, n)` check over a rectangle and merges the results in
/// `(d, n)` order. Pairs are evaluated in parallel.
pub fn sweep<F>(check: &str, ds: RangeInclusive<u32>, ns: RangeInclusive<u32>, f: F) -> Result<VerificationReport>
where
    F: Fn(u32, u32) -> Result<VerificationReport> + Sync,
{
    if ds.is_empty() || ns.is_empty() {
        return Err(Error::pre("empty parameter range"));
    }
    let start = Instant::now();
    let pairs: Vec<(u32, u32)> = ds
        .clone()
        .flat_map(|d| ns.clone().map(move |n| (d, n)))
        .collect();
    let parts: Vec<VerificationReport> = pairs
        .par_iter()
        .map(|&(d, n)| f(d, n))
        .collect::<Result<_>>()?;
    let params = BTreeMap::from([
        ("d_min".to_string(), json!(ds.start())),
        ("d_max".to_string(), json!(ds.end())),
        ("n_min".to_string(), json!(ns.start())),
        ("n_max".to_string(), json!(ns.end())),
    ]);
    let mut report = VerificationReport::new(check, params);
    for part in parts {
        report.merge(part);
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimality_small_cases() {
        let rep = verify_minimality(5, 3).unwrap();
        assert!(rep.passed);
        // r = 1: (2); r = 2: (1,2), (2,2)
        assert_eq!(rep.instances, 3);
        let rep = verify_minimality(6, 4).unwrap();
        assert!(rep.passed);
        assert!(verify_minimality(9, 8).unwrap().passed);
    }

    #[test]
    fn minimality_preconditions() {
        assert!(verify_minimality(4, 3).is_err());
        assert!(verify_minimality(5, 1).is_err());
    }

    #[test]
    fn theta_single_instance() {
        assert_eq!(theta_lhs(1, 0).unwrap(), 1);
        let rep = verify_theta_inequality(2).unwrap();
        assert_eq!(rep.instances, 1);
        assert!(rep.passed);
    }

    #[test]
    fn theta_inequality_is_tight_at_m3() {
        // coeff_4(P_inf^2) = 5 = 0 + 1 * (2*3 - 1): the strict inequality fails.
        let rep = verify_theta_inequality(9).unwrap();
        assert_eq!(rep.counterexample_count, 1);
        let ce = &rep.counterexamples[0];
        assert_eq!(ce.params, json!({ "m": 3, "l_theta": 2, "l_prev": 0 }));
        assert_eq!((ce.lhs, ce.rhs), (5, 5));
        // sum over m of m(m-1)/2
        assert_eq!(rep.instances, (2..=9u64).map(|m| m * (m - 1) / 2).sum::<u64>());
        assert!(verify_theta_inequality(1).is_err());
    }

    #[test]
    fn edcba_sweeps() {
        assert!(verify_edcba(5, 6).unwrap().passed);
        assert!(verify_edcba(12, 10).unwrap().passed);
        assert!(verify_edcba(4, 6).is_err());
    }

    #[test]
    fn chain_sweeps() {
        let rep = verify_chain(5, 3).unwrap();
        assert!(rep.passed);
        // (l1, l2) in {(0,1), (0,2), (1,1)}
        assert_eq!(rep.instances, 3);
        assert!(verify_chain(7, 5).unwrap().passed);
    }

    #[test]
    fn theta_reduction_vacuous_for_d5() {
        let rep = verify_theta_reduction(5, 6).unwrap();
        assert_eq!(rep.instances, 0);
        assert!(rep.passed);
        assert_eq!(rep.notes.len(), 1);
    }

    #[test]
    fn theta_reduction_ties_at_d6() {
        let rep = verify_theta_reduction(6, 4).unwrap();
        assert_eq!(rep.counterexample_count, 1);
        let ce = &rep.counterexamples[0];
        assert_eq!(ce.params["degs"], json!([1, 3, 3]));
        assert_eq!(ce.lhs, ce.rhs);

        let rep = verify_theta_reduction(6, 3).unwrap();
        assert_eq!(rep.counterexample_count, 1);
        assert_eq!(rep.counterexamples[0].params["degs"], json!([3, 3]));
        assert_eq!((rep.counterexamples[0].lhs, rep.counterexamples[0].rhs), (9, 9));

        assert!(verify_theta_reduction(8, 6).unwrap().passed);
    }

    #[test]
    fn identity_box() {
        let rep = verify_identity_lemma(4, 10, 5, 3).unwrap();
        assert!(rep.passed);
        assert!(rep.instances > 0);
        assert!(verify_identity_lemma(0, 1, 1, 1).is_err());
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(0, 5), vec![Vec::<u32>::new()]);
        assert_eq!(multisets(3, 5).len(), 35);
    }

    #[test]
    fn counterexample_storage_is_capped() {
        let mut rep = VerificationReport::new("cap", BTreeMap::new());
        for i in 0..250 {
            rep.record(false, || json!(i), 0, 1);
        }
        assert_eq!(rep.counterexample_count, 250);
        assert_eq!(rep.counterexamples.len(), MAX_STORED_COUNTEREXAMPLES);
        assert!(!rep.passed);
    }

    #[test]
    fn merge_is_order_insensitive_for_counts() {
        let a = verify_chain(6, 5).unwrap();
        let b = verify_edcba(6, 5).unwrap();
        let mut ab = a.clone();
        ab.merge(b.clone());
        let mut ba = b;
        ba.merge(a);
        assert_eq!(ab.instances, ba.instances);
        assert_eq!(ab.passed, ba.passed);
    }

    #[test]
    fn sweep_rejects_empty_ranges() {
        #[allow(clippy::reversed_empty_ranges)]
        let res = sweep("minimality", 6..=5, 2..=3, verify_minimality);
        assert!(res.is_err());
    }
}
