//! Closed-form quantities for joins of varieties of reducible forms.
//!
//! Forms of degree `d` live in `n + 1` variables. A join `J_{a_1..a_r}` is
//! identified by a [`JoinProfile`]; `X_j` is the variety of degree-`d` forms
//! with a degree-`j` factor.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{self, Error, Int, Result};
use crate::series::{binomial, ci_quotient_series, geometric, p_k};

/// Degree data `(d, n, a_1 <= ... <= a_r)` of a join `J(X_{a_1}, ..., X_{a_r})`.
///
/// Degrees are sorted on construction; every quantity below is symmetric in
/// the `a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JoinProfile {
    d: u32,
    n: u32,
    degs: Vec<u32>,
}

impl JoinProfile {
    pub fn new(d: u32, n: u32, mut degs: Vec<u32>) -> Result<Self> {
        if d < 2 {
            return Err(Error::pre(format!("degree d = {d} must be at least 2")));
        }
        if n < 1 {
            return Err(Error::pre("n must be at least 1"));
        }
        if degs.is_empty() {
            return Err(Error::pre("a join profile needs at least one factor degree"));
        }
        if let Some(&bad) = degs.iter().find(|&&a| a < 1 || a > d / 2) {
            return Err(Error::pre(format!(
                "factor degree {bad} outside [1, {}] for d = {d}",
                d / 2
            )));
        }
        degs.sort_unstable();
        Ok(Self { d, n, degs })
    }

    /// The profile `(1, ..., 1)` of length `r`, i.e. `sigma_r(X_1)`.
    pub fn all_ones(d: u32, n: u32, r: usize) -> Result<Self> {
        Self::new(d, n, vec![1; r])
    }

    /// `l_1` ones followed by `l_2` twos.
    pub fn ones_and_twos(d: u32, n: u32, l1: usize, l2: usize) -> Result<Self> {
        let mut degs = vec![1; l1];
        degs.extend(std::iter::repeat_n(2, l2));
        Self::new(d, n, degs)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degs(&self) -> &[u32] {
        &self.degs
    }

    pub fn r(&self) -> usize {
        self.degs.len()
    }

    /// `l_j`: how many factor degrees equal `j`.
    pub fn multiplicity(&self, j: u32) -> usize {
        self.degs.iter().filter(|&&a| a == j).count()
    }

    /// `l_{d/2}`, which is zero for odd `d`.
    pub fn half_degree_multiplicity(&self) -> usize {
        if self.d % 2 == 1 {
            0
        } else {
            self.multiplicity(self.d / 2)
        }
    }

    /// `m = n - l_1`.
    pub fn m(&self) -> i64 {
        self.n as i64 - self.multiplicity(1) as i64
    }

    pub fn max_degree(&self) -> u32 {
        *self.degs.last().expect("profiles are nonempty")
    }

    pub fn is_all_ones(&self) -> bool {
        self.degs.iter().all(|&a| a == 1)
    }

    /// The main minimality statement is only claimed for `d >= 5`.
    pub fn within_main_hypothesis(&self) -> bool {
        self.d >= 5
    }

    /// The same profile with one copy of its largest degree lowered by one.
    pub fn lower_max(&self) -> Option<Self> {
        let top = self.max_degree();
        if top <= 1 {
            return None;
        }
        let mut degs = self.degs.clone();
        *degs.last_mut().expect("profiles are nonempty") = top - 1;
        Self::new(self.d, self.n, degs).ok()
    }

    /// All factor degrees `a_i` together with their complements `d - a_i`.
    fn paired_degrees(&self) -> Vec<u32> {
        self.degs
            .iter()
            .flat_map(|&a| [a, self.d - a])
            .collect()
    }
}

impl fmt::Display for JoinProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs: Vec<String> = self.degs.iter().map(u32::to_string).collect();
        write!(f, "d={} n={} degs=({})", self.d, self.n, degs.join(","))
    }
}

/// Every sorted profile of length `r` with entries in `[1, floor(d/2)]`,
/// in lexicographic order.
pub fn sorted_profiles(d: u32, n: u32, r: usize) -> Result<Vec<JoinProfile>> {
    let top = d / 2;
    if r == 0 || top == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut degs = vec![1u32; r];
    loop {
        out.push(JoinProfile::new(d, n, degs.clone())?);
        // Odometer over nondecreasing sequences.
        let Some(i) = degs.iter().rposition(|&a| a < top) else {
            break;
        };
        let next = degs[i] + 1;
        degs[i..].iter_mut().for_each(|a| *a = next);
    }
    Ok(out)
}

/// `binom(n + d, d) = dim S_d`.
pub fn forms_dim(d: u32, n: u32) -> Result<Int> {
    binomial(n as i64 + d as i64, d as i64)
}

/// Slice rank of a general form of degree `d`: the least `r` with
/// `r (n + 1 - r) >= binom(n - r + d, d)`. Always at most `n`.
pub fn generic_slice_rank(d: u32, n: u32) -> Result<u32> {
    if d < 3 {
        return Err(Error::UnsupportedDegree(d));
    }
    if n < 1 {
        return Err(Error::pre("n must be at least 1"));
    }
    for r in 0..=n {
        let linear = r as Int * (n + 1 - r) as Int;
        if linear >= binomial((n - r + d) as i64, d as i64)? {
            return Ok(r);
        }
    }
    Err(Error::Invariant(format!(
        "no r <= n satisfies the slice-rank inequality for d={d}, n={n}"
    )))
}

/// Codimension of `sigma_r(X_1)` in `P S_d`: `binom(n - r + d, d) - r (n + 1 - r)`,
/// valid for `1 <= r < generic_slice_rank(d, n)`.
pub fn sigma_r_x1_codim(d: u32, n: u32, r: u32) -> Result<Int> {
    let slrk = generic_slice_rank(d, n)?;
    if r < 1 || r >= slrk {
        return Err(Error::pre(format!(
            "r = {r} must satisfy 1 <= r < {slrk} (generic slice rank for d={d}, n={n})"
        )));
    }
    let codim = error::sub(
        binomial((n - r + d) as i64, d as i64)?,
        r as Int * (n + 1 - r) as Int,
    )?;
    Ok(codim)
}

/// `coeff_d((1 - t^(d-1))^r / (1 - t)^(n + 1 - r))`: codimension of the
/// degree-`d` part of an ideal of `r` general forms of degree `d - 1` in
/// `n + 1 - r` variables.
pub fn hl_codim(d: u32, n: u32, r: u32) -> Result<Int> {
    if d < 3 {
        return Err(Error::UnsupportedDegree(d));
    }
    if r < 1 || r > n {
        return Err(Error::pre(format!("r = {r} must satisfy 1 <= r <= n = {n}")));
    }
    let mut s = geometric(n + 1 - r, d as usize)?;
    for _ in 0..r {
        s.mul_one_minus_t_pow((d - 1) as usize)?;
    }
    Ok(s.coeff(d as usize))
}

/// Dimension of the family of complete intersections of the given degrees
/// in `P^n`: `sum_j coeff_{a_j}(prod (1 - t^a_i) / (1 - t)^(n+1))`.
pub fn ci_dimension(n: u32, degs: &[u32]) -> Result<Int> {
    if degs.is_empty() || degs.len() > n as usize {
        return Err(Error::pre(format!(
            "a complete intersection in P^{n} needs between 1 and {n} equations, got {}",
            degs.len()
        )));
    }
    let top = *degs.iter().max().expect("nonempty") as usize;
    let series = ci_quotient_series(n, degs, top)?;
    series.coeff_sum(degs.iter().map(|&a| a as usize))
}

/// `coeff_d(prod (1 - t^a_i)(1 - t^(d - a_i)) / (1 - t)^(n+1))`.
pub fn paired_quotient_coeff(profile: &JoinProfile) -> Result<Int> {
    let d = profile.d() as usize;
    Ok(ci_quotient_series(profile.n(), &profile.paired_degrees(), d)?.coeff(d))
}

/// Upper bound on `dim J_{a_1..a_r}`:
/// `binom(n + d, d) - coeff_d(prod (1 - t^a_i)(1 - t^(d-a_i)) / (1 - t)^(n+1))
///  + binom(l_{d/2}, 2) - 1`. Requires `r < n`.
pub fn join_dim_upper_bound(profile: &JoinProfile) -> Result<Int> {
    require_r_below_n(profile)?;
    let ambient = forms_dim(profile.d(), profile.n())?;
    let correction = binomial(profile.half_degree_multiplicity() as i64, 2)?;
    let bound = error::sub(ambient, paired_quotient_coeff(profile)?)?;
    error::sub(error::add(bound, correction)?, 1)
}

/// The bound obtained from the complete-intersection parametrization:
/// `dim CI_n(a) + binom(n + d, d) - coeff_d(prod (1 - t^a_i) / (1 - t)^(n+1)) - 1`.
/// Agrees with [`join_dim_upper_bound`] whenever all `a_i <= d / 2`.
pub fn ci_parametrization_bound(profile: &JoinProfile) -> Result<Int> {
    require_r_below_n(profile)?;
    let d = profile.d() as usize;
    let quotient = ci_quotient_series(profile.n(), profile.degs(), d)?.coeff(d);
    let total = error::add(
        ci_dimension(profile.n(), profile.degs())?,
        forms_dim(profile.d(), profile.n())?,
    )?;
    error::sub(error::sub(total, quotient)?, 1)
}

/// The objective `F(a_1..a_r)`; `binom(n + d, d) - 1 - F` is the join bound.
pub fn f_value(profile: &JoinProfile) -> Result<Int> {
    let correction = binomial(profile.half_degree_multiplicity() as i64, 2)?;
    error::sub(paired_quotient_coeff(profile)?, correction)
}

fn require_r_below_n(profile: &JoinProfile) -> Result<()> {
    if profile.r() >= profile.n() as usize {
        return Err(Error::pre(format!(
            "the join bound needs r < n, got r = {} and n = {}",
            profile.r(),
            profile.n()
        )));
    }
    Ok(())
}

/// `A` and its successive differences along `(l_1, l_2) -> (l_1 - 1, l_2 + 1)`.
///
/// `B..E` are `None` outside their domains (`l_1 >= 1, 2, 3, 4`); absent is
/// not the same as zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbcdeRecord {
    #[serde(rename = "A")]
    pub a: Int,
    #[serde(rename = "B")]
    pub b: Option<Int>,
    #[serde(rename = "C")]
    pub c: Option<Int>,
    #[serde(rename = "D")]
    pub d: Option<Int>,
    #[serde(rename = "E")]
    pub e: Option<Int>,
}

impl AbcdeRecord {
    /// Difference of order `k` (0 = A, ..., 4 = E).
    pub fn order(&self, k: usize) -> Option<Int> {
        match k {
            0 => Some(self.a),
            1 => self.b,
            2 => self.c,
            3 => self.d,
            4 => self.e,
            _ => None,
        }
    }
}

/// `coeff_k(P_inf^(m + 1 - l_2) P_1^(l_2))`.
fn ones_twos_coeff(m: i64, l2: i64, k: i64) -> Result<Int> {
    if k < 0 {
        return Ok(0);
    }
    let k = k as usize;
    let order = (m + 1 - l2) as u32;
    let base = geometric(order, k)?;
    let mut acc = base.clone();
    for _ in 0..l2 {
        acc = acc.mul(&p_k(1, k))?;
    }
    Ok(acc.coeff(k))
}

/// Closed forms of `A..E` for fixed `(d, n)` with `m = n - l_1`.
/// `order` 0..=4 selects A..E.
fn closed_form(order: usize, d: u32, n: u32, l1: i64, l2: i64) -> Result<Int> {
    let m = n as i64 - l1;
    let d = d as i64;
    let head = ones_twos_coeff(m, l2, d - order as i64)?;
    let tail: Int = match order {
        // - l_2 binom(m+2, 2) - l_1 (m+1) + l_2^2
        0 => {
            let t = error::mul(l2 as Int, binomial(m + 2, 2)?)?;
            let t = error::add(t, error::mul(l1 as Int, (m + 1) as Int)?)?;
            error::sub(t, error::mul(l2 as Int, l2 as Int)?)?
        }
        // - binom(m+2, 2) - l_2 m - l_1 + 1
        1 => {
            let t = error::add(binomial(m + 2, 2)?, error::mul(l2 as Int, m as Int)?)?;
            error::sub(error::add(t, l1 as Int)?, 1)?
        }
        // - 2(m+1) - l_2
        2 => (2 * (m + 1) + l2) as Int,
        3 => 3,
        4 => 0,
        _ => unreachable!("only orders 0..=4 are defined"),
    };
    error::sub(head, tail)
}

/// Order-`order` difference of `A` computed from its definition:
/// `X_{l1,l2} = Y_{l1-1,l2+1} - Y_{l1,l2}` with `Y` the previous order.
fn finite_difference(order: usize, d: u32, n: u32, l1: i64, l2: i64) -> Result<Int> {
    if order == 0 {
        return closed_form(0, d, n, l1, l2);
    }
    error::sub(
        finite_difference(order - 1, d, n, l1 - 1, l2 + 1)?,
        finite_difference(order - 1, d, n, l1, l2)?,
    )
}

/// `A_{l1,l2} = F(1^l1, 2^l2)` and its differences `B..E`, each computed
/// both from its closed form and from the differences of `A`; a disagreement
/// is reported as [`Error::Invariant`].
pub fn abcde(d: u32, n: u32, l1: u32, l2: u32) -> Result<AbcdeRecord> {
    if d < 5 {
        return Err(Error::pre(format!("the A..E closed forms need d >= 5, got {d}")));
    }
    if l1 + l2 >= n {
        return Err(Error::pre(format!(
            "need l1 + l2 < n, got l1 = {l1}, l2 = {l2}, n = {n}"
        )));
    }
    let (l1, l2) = (l1 as i64, l2 as i64);
    let mut values = [None; 5];
    for (order, slot) in values.iter_mut().enumerate() {
        if l1 < order as i64 {
            continue;
        }
        let closed = closed_form(order, d, n, l1, l2)?;
        let diff = finite_difference(order, d, n, l1, l2)?;
        if closed != diff {
            return Err(Error::Invariant(format!(
                "order-{order} closed form {closed} differs from finite difference {diff} \
                 at d={d}, n={n}, l1={l1}, l2={l2}"
            )));
        }
        *slot = Some(closed);
    }
    Ok(AbcdeRecord {
        a: values[0].expect("A is always defined"),
        b: values[1],
        c: values[2],
        d: values[3],
        e: values[4],
    })
}
