//! Homogeneous forms over `F_p` stored densely in graded-lex monomial order,
//! and Macaulay matrices of the ideals they generate.

use rand::Rng;
use std::collections::HashMap;

use super::field::{check_modulus, PrimeFieldMatrix};
use crate::error::{Error, Result};

/// Exponent vectors of total degree `deg` in `n + 1` variables, in lex order
/// with `x_0` largest (`x_0^deg` first, `x_n^deg` last).
pub fn monomials(n: u32, deg: u32) -> Vec<Vec<u32>> {
    fn fill(prefix: &mut Vec<u32>, vars_left: usize, deg_left: u32, out: &mut Vec<Vec<u32>>) {
        if vars_left == 1 {
            prefix.push(deg_left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg_left).rev() {
            prefix.push(e);
            fill(prefix, vars_left - 1, deg_left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(n as usize + 1), n as usize + 1, deg, &mut out);
    out
}

struct MonomialIndex {
    position: HashMap<Vec<u32>, usize>,
}

impl MonomialIndex {
    fn new(basis: &[Vec<u32>]) -> Self {
        Self {
            position: basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect(),
        }
    }

    fn of(&self, exps: &[u32]) -> usize {
        self.position[exps]
    }
}

fn product_exponents(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A degree-`deg` form in `x_0..x_n` with coefficients in `F_p`, one
/// coefficient per monomial of [`monomials`]`(n, deg)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseForm {
    n: u32,
    deg: u32,
    p: u64,
    coeffs: Vec<u64>,
}

impl DenseForm {
    pub fn from_coeffs(n: u32, deg: u32, p: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_modulus(p)?;
        let expected = monomials(n, deg).len();
        if coeffs.len() != expected {
            return Err(Error::pre(format!(
                "a degree-{deg} form in {} variables has {expected} coefficients, got {}",
                n + 1,
                coeffs.len()
            )));
        }
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        Ok(Self { n, deg, p, coeffs })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Nonzero `(exponents, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, u64)> + '_ {
        monomials(self.n, self.deg)
            .into_iter()
            .zip(self.coeffs.iter().copied())
            .filter(|&(_, c)| c != 0)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.p != other.p {
            return Err(Error::pre("forms live in different rings"));
        }
        let deg = self.deg + other.deg;
        let basis = monomials(self.n, deg);
        let index = MonomialIndex::new(&basis);
        let mut coeffs = vec![0u64; basis.len()];
        let rhs: Vec<_> = other.terms().collect();
        for (ea, ca) in self.terms() {
            for (eb, cb) in &rhs {
                let k = index.of(&product_exponents(&ea, eb));
                coeffs[k] = (coeffs[k] + ca * cb % self.p) % self.p;
            }
        }
        Ok(Self {
            n: self.n,
            deg,
            p: self.p,
            coeffs,
        })
    }
}

/// A random degree-`deg` form with every coefficient uniform in `F_p`.
pub fn sample_form<R: Rng + ?Sized>(n: u32, deg: u32, p: u64, rng: &mut R) -> Result<DenseForm> {
    check_modulus(p)?;
    if deg < 1 {
        return Err(Error::pre("sampled forms must have positive degree"));
    }
    let count = monomials(n, deg).len();
    let coeffs = (0..count).map(|_| rng.gen_range(0..p)).collect();
    Ok(DenseForm { n, deg, p, coeffs })
}

/// The Macaulay matrix of `generators` in degree `d`: one row `m * g` per
/// generator `g` and monomial `m` of degree `d - deg(g)`, one column per
/// degree-`d` monomial.
pub fn macaulay_matrix(n: u32, d: u32, generators: &[DenseForm], p: u64) -> Result<PrimeFieldMatrix> {
    check_modulus(p)?;
    for g in generators {
        if g.n != n || g.p != p {
            return Err(Error::pre("generator lives in a different ring"));
        }
        if g.deg > d {
            return Err(Error::pre(format!(
                "generator degree {} exceeds target degree {d}",
                g.deg
            )));
        }
    }
    let columns = monomials(n, d);
    let index = MonomialIndex::new(&columns);
    let mut multipliers: HashMap<u32, Vec<Vec<u32>>> = HashMap::new();
    let row_count: usize = generators
        .iter()
        .map(|g| {
            multipliers
                .entry(d - g.deg)
                .or_insert_with(|| monomials(n, d - g.deg))
                .len()
        })
        .sum();
    let mut matrix = PrimeFieldMatrix::zeros(p, row_count, columns.len())?;
    let mut row = 0;
    for g in generators {
        let terms: Vec<_> = g.terms().collect();
        for shift in &multipliers[&(d - g.deg)] {
            for (exps, c) in &terms {
                matrix.add_to(row, index.of(&product_exponents(shift, exps)), *c);
            }
            row += 1;
        }
    }
    Ok(matrix)
}

/// `dim_{F_p} (generators)_d`, the rank of the degree-`d` Macaulay matrix.
pub fn ideal_degree_dim(n: u32, d: u32, generators: &[DenseForm], p: u64) -> Result<usize> {
    Ok(macaulay_matrix(n, d, generators, p)?.rank())
}
