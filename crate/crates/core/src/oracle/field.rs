//! Dense matrices over a prime field `F_p` and their rank.

use crate::error::{Error, Result};

/// Largest accepted modulus; products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// The default modulus, `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut f = 3;
    while f * f <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// Accepts odd primes below [`MAX_PRIME`].
pub fn check_modulus(p: u64) -> Result<()> {
    if p > MAX_PRIME {
        return Err(Error::Config(format!("modulus {p} exceeds 2^32 - 1")));
    }
    if p == 2 || !is_prime(p) {
        return Err(Error::Config(format!("modulus {p} is not an odd prime")));
    }
    Ok(())
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inverse(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Row-major dense matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PrimeFieldMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self> {
        check_modulus(p)?;
        Ok(Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    /// Entries are reduced mod `p`.
    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::pre(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v % self.p;
    }

    /// Adds `v` to entry `(i, j)` mod `p`.
    pub fn add_to(&mut self, i: usize, j: usize, v: u64) {
        assert!(i < self.rows && j < self.cols);
        let cell = &mut self.data[i * self.cols + j];
        *cell = (*cell + v % self.p) % self.p;
    }

    /// Rank by Gaussian elimination; works on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for j in col..cols {
                    m.swap(pivot * cols + j, rank * cols + j);
                }
            }
            let inv = inverse(m[rank * cols + col], p);
            for j in col..cols {
                m[rank * cols + j] = m[rank * cols + j] * inv % p;
            }
            for r in rank + 1..rows {
                let factor = m[r * cols + col];
                if factor == 0 {
                    continue;
                }
                for j in col..cols {
                    let sub = factor * m[rank * cols + j] % p;
                    m[r * cols + j] = (m[r * cols + j] + p - sub) % p;
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_295));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }

    #[test]
    fn modulus_checks() {
        assert!(check_modulus(7).is_ok());
        assert!(check_modulus(2).is_err());
        assert!(check_modulus(9).is_err());
        assert!(check_modulus(1 << 33).is_err());
        assert!(PrimeFieldMatrix::zeros(15, 2, 2).is_err());
    }

    #[test]
    fn inverses() {
        for a in 1..13 {
            assert_eq!(a * inverse(a, 13) % 13, 1);
        }
    }

    #[test]
    fn rank_small_cases() {
        let m = PrimeFieldMatrix::from_rows(7, 3, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]])
            .unwrap();
        assert_eq!(m.rank(), 2);
        // Full rank over Q but singular mod 5: det = 5.
        let m = PrimeFieldMatrix::from_rows(5, 2, &[vec![1, 2], vec![3, 11]]).unwrap();
        assert_eq!(m.rank(), 1);
        let m = PrimeFieldMatrix::from_rows(7, 2, &[vec![1, 2], vec![3, 11]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(PrimeFieldMatrix::zeros(7, 4, 3).unwrap().rank(), 0);
        assert_eq!(PrimeFieldMatrix::zeros(7, 0, 3).unwrap().rank(), 0);
    }

    #[test]
    fn rank_of_identity_with_pivot_swaps() {
        let rows: Vec<Vec<u64>> = (0..6)
            .map(|i| (0..6).map(|j| u64::from(j == 5 - i)).collect())
            .collect();
        let m = PrimeFieldMatrix::from_rows(DEFAULT_PRIME, 6, &rows).unwrap();
        assert_eq!(m.rank(), 6);
    }

    #[test]
    fn entries_are_reduced() {
        let mut m = PrimeFieldMatrix::zeros(7, 1, 1).unwrap();
        m.set(0, 0, 20);
        assert_eq!(m.get(0, 0), 6);
        m.add_to(0, 0, 3);
        assert_eq!(m.get(0, 0), 2);
    }
}
