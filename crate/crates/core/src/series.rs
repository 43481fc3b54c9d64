//! Exact truncated power series in one variable `t` over the integers.
//!
//! Everything downstream reduces to extracting a single coefficient of a
//! product of the form `prod (1 - t^a) / (1 - t)^k`. Series here are always
//! materialized up to a fixed highest exponent (`trunc`); division by a power
//! of `1 - t` is multiplication by [`geometric`].
//!
//! Notation: `P_k = 1 + t + ... + t^k` ([`p_k`]) and `P_inf = 1 / (1 - t)`
//! (`geometric(1, _)`).

use crate::error::{self, Error, Int, Result};

/// `binom(a, b)` with the vanishing convention: zero whenever `a < b` or
/// `b < 0`, so in particular for every negative `a`.
pub fn binomial(a: i64, b: i64) -> Result<Int> {
    if b < 0 || a < b {
        return Ok(0);
    }
    let k = b.min(a - b);
    let mut acc: Int = 1;
    for i in 0..k {
        // acc * (a - i) is divisible by (i + 1) at every step.
        acc = error::mul(acc, (a - i) as Int)? / (i + 1) as Int;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Int>,
}

impl TruncatedSeries {
    pub fn zero(trunc: usize) -> Self {
        Self {
            coeffs: vec![0; trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = 1;
        s
    }

    /// Builds a series from explicit coefficients `c_0, ..., c_trunc`.
    ///
    /// Panics on an empty vector: a series always retains at least `c_0`.
    pub fn from_coeffs(coeffs: Vec<Int>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    /// The polynomial `1 - t^a`, truncated. For `a = 0` this is the zero series.
    pub fn one_minus_t_pow(a: usize, trunc: usize) -> Self {
        let mut s = Self::one(trunc);
        if a <= trunc {
            s.coeffs[a] -= 1;
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Coefficient of `t^k`. `None` past the truncation, where the value is
    /// not known.
    pub fn get(&self, k: usize) -> Option<Int> {
        self.coeffs.get(k).copied()
    }

    /// Coefficient of `t^k`.
    ///
    /// Panics if `k > trunc`; callers size series to the degree they read.
    pub fn coeff(&self, k: usize) -> Int {
        match self.get(k) {
            Some(c) => c,
            None => panic!("coefficient {k} requested from a series truncated at {}", self.trunc()),
        }
    }

    /// Drops every coefficient above `trunc`. Raising the truncation is not
    /// possible without recomputing, so `trunc` above the current one is an
    /// error.
    pub fn truncated(&self, trunc: usize) -> Result<Self> {
        if trunc > self.trunc() {
            return Err(Error::TruncationMismatch {
                left: self.trunc(),
                right: trunc,
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=trunc].to_vec(),
        })
    }

    /// Cauchy product; both operands must share the same truncation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.trunc() != other.trunc() {
            return Err(Error::TruncationMismatch {
                left: self.trunc(),
                right: other.trunc(),
            });
        }
        let trunc = self.trunc();
        let mut out = vec![0 as Int; trunc + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..=trunc - i].iter().enumerate() {
                out[i + j] = error::add(out[i + j], error::mul(a, b)?)?;
            }
        }
        Ok(Self { coeffs: out })
    }

    /// In-place multiplication by `1 - t^a`; same result as
    /// `self.mul(&one_minus_t_pow(a, trunc))` in linear time.
    pub fn mul_one_minus_t_pow(&mut self, a: usize) -> Result<()> {
        if a == 0 {
            self.coeffs.iter_mut().for_each(|c| *c = 0);
            return Ok(());
        }
        for k in (a..self.coeffs.len()).rev() {
            self.coeffs[k] = error::sub(self.coeffs[k], self.coeffs[k - a])?;
        }
        Ok(())
    }

    /// Sum of the coefficients at the given exponents.
    pub fn coeff_sum(&self, exponents: impl IntoIterator<Item = usize>) -> Result<Int> {
        exponents
            .into_iter()
            .try_fold(0, |acc, k| error::add(acc, self.coeff(k)))
    }

    /// True if `c_0 <= c_1 <= ... <= c_trunc`.
    pub fn is_weakly_increasing(&self) -> bool {
        self.coeffs.windows(2).all(|w| w[0] <= w[1])
    }
}

/// `1 / (1 - t)^order`, i.e. `P_inf^order`; coefficient `k` is
/// `binom(order - 1 + k, k)`.
pub fn geometric(order: u32, trunc: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::pre("geometric series order must be at least 1"));
    }
    let order = order as Int;
    let mut coeffs = Vec::with_capacity(trunc + 1);
    let mut c: Int = 1;
    coeffs.push(c);
    for k in 1..=trunc as Int {
        c = error::mul(c, order - 1 + k)? / k;
        coeffs.push(c);
    }
    Ok(TruncatedSeries { coeffs })
}

/// `P_k = 1 + t + ... + t^k`.
pub fn p_k(k: usize, trunc: usize) -> TruncatedSeries {
    TruncatedSeries {
        coeffs: (0..=trunc).map(|i| Int::from(i <= k)).collect(),
    }
}

/// Hilbert series of a complete intersection of the given degrees in
/// `n + 1` variables: `prod (1 - t^a_i) / (1 - t)^(n+1)`, up to `trunc`.
pub fn ci_quotient_series(n: u32, degs: &[u32], trunc: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::pre("n must be at least 1"));
    }
    if degs.contains(&0) {
        return Err(Error::pre("generator degrees must be positive"));
    }
    let mut s = geometric(n + 1, trunc)?;
    for &a in degs {
        s.mul_one_minus_t_pow(a as usize)?;
    }
    Ok(s)
}

/// `sum over I of (-1)^|I| binom(n + e - sum_{i in I} b_i, n)`, the
/// subset-expansion of `coeff_e(prod (1 - t^b_i) / (1 - t)^(n+1))`.
pub fn inclusion_exclusion_coeff(n: u32, e: u32, degs: &[u32]) -> Result<Int> {
    if n == 0 {
        return Err(Error::pre("n must be at least 1"));
    }
    if degs.contains(&0) {
        return Err(Error::pre("generator degrees must be positive"));
    }
    if degs.len() > 24 {
        return Err(Error::pre("at most 24 degrees are supported by the subset expansion"));
    }
    let mut total: Int = 0;
    for mask in 0u32..(1 << degs.len()) {
        let shift: i64 = degs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &b)| b as i64)
            .sum();
        let term = binomial(n as i64 + e as i64 - shift, n as i64)?;
        total = if mask.count_ones() % 2 == 0 {
            error::add(total, term)?
        } else {
            error::sub(total, term)?
        };
    }
    Ok(total)
}
