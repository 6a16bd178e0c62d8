//! Invertible matrices over ℚ in a normal form suitable for hashing.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `entries / denom`, with `denom > 0` and `gcd(entries…, denom) = 1`.
///
/// Two matrices are equal as rational matrices iff their normal forms are
/// equal field by field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    dim: usize,
    entries: Vec<BigInt>,
    denom: BigInt,
}

impl Matrix {
    pub fn identity(dim: usize) -> Matrix {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        Matrix { dim, entries, denom: BigInt::one() }
    }

    pub fn from_integers(dim: usize, entries: Vec<i64>) -> Matrix {
        assert_eq!(entries.len(), dim * dim);
        Matrix { dim, entries: entries.into_iter().map(BigInt::from).collect(), denom: BigInt::one() }
    }

    pub fn from_rationals(dim: usize, entries: &[BigRational]) -> Matrix {
        assert_eq!(entries.len(), dim * dim);
        let denom = entries.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let entries = entries.iter().map(|q| q.numer() * (&denom / q.denom())).collect();
        Matrix::normalized(dim, entries, denom)
    }

    fn normalized(dim: usize, mut entries: Vec<BigInt>, mut denom: BigInt) -> Matrix {
        if denom.is_negative() {
            denom = -denom;
            for e in &mut entries {
                *e = -&*e;
            }
        }
        if !denom.is_one() {
            let g = entries.iter().fold(denom.clone(), |g, e| if g.is_one() { g } else { g.gcd(e) });
            if !g.is_one() {
                denom /= &g;
                for e in &mut entries {
                    *e /= &g;
                }
            }
        }
        Matrix { dim, entries, denom }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.entries[i * self.dim + j].clone(), self.denom.clone())
    }

    pub fn rationals(&self) -> Vec<BigRational> {
        (0..self.dim * self.dim)
            .map(|k| BigRational::new(self.entries[k].clone(), self.denom.clone()))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.dim)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out[i * n + j] += a * b;
                    }
                }
            }
        }
        Matrix::normalized(n, out, &self.denom * &other.denom)
    }

    /// Gauss–Jordan inverse over ℚ; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.dim;
        let mut a = self.rationals();
        let mut inv: Vec<BigRational> = Matrix::identity(n).rationals();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[col * n + col].clone();
            for j in 0..n {
                a[col * n + j] = &a[col * n + j] / &p;
                inv[col * n + j] = &inv[col * n + j] / &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let t = &factor * &a[col * n + j];
                    a[r * n + j] -= t;
                    let t = &factor * &inv[col * n + j];
                    inv[r * n + j] -= t;
                }
            }
        }
        Some(Matrix::from_rationals(n, &inv))
    }

    /// Injective byte encoding of the normal form.
    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 * (self.entries.len() + 1));
        out.extend_from_slice(&(self.dim as u32).to_le_bytes());
        for e in self.entries.iter().chain(std::iter::once(&self.denom)) {
            let bytes = e.to_signed_bytes_le();
            out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
            out.extend_from_slice(&bytes);
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                let row: Vec<String> = (0..self.dim).map(|j| self.entry(i, j).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
