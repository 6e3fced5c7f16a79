//! Seidel matrices and their characteristic polynomials.

use std::num::Wrapping;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::Ring;
use crate::IntPoly;

/// Symmetric matrix with zero diagonal and ±1 off the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeidelMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SeidelMatrix {
    /// Validates the zero-diagonal, ±1, symmetric shape.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = vec![0i8; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                let ok = if i == j { v == 0 } else { v == 1 || v == -1 };
                if !ok || rows[j][i] != v {
                    return Err(Error::Invalid(format!("not a Seidel matrix at ({}, {})", i, j)));
                }
                entries[i * n + j] = v as i8;
            }
        }
        Ok(SeidelMatrix { n, entries })
    }

    /// Builds the matrix whose upper triangle (row-major, above the
    /// diagonal) is read from the bits of `mask`, a set bit meaning `-1`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut entries = vec![0i8; n * n];
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                let v = if mask >> bit & 1 == 1 { -1 } else { 1 };
                entries[i * n + j] = v;
                entries[j * n + i] = v;
                bit += 1;
            }
        }
        SeidelMatrix { n, entries }
    }

    pub fn random_with<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = if rng.gen::<bool>() { 1 } else { -1 };
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        SeidelMatrix { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i) as i64).sum()
    }

    /// `tr S²`, the sum of squared entries.
    pub fn trace_of_square(&self) -> i64 {
        self.entries.iter().map(|&v| (v as i64) * (v as i64)).sum()
    }

    /// Principal submatrix with row and column `k` removed.
    pub fn delete(&self, k: usize) -> SeidelMatrix {
        let n = self.n - 1;
        let mut entries = Vec::with_capacity(n * n);
        for i in (0..self.n).filter(|&i| i != k) {
            for j in (0..self.n).filter(|&j| j != k) {
                entries.push(self.get(i, j));
            }
        }
        SeidelMatrix { n, entries }
    }

    /// Conjugate by the diagonal sign matrix `diag(signs)`.
    pub fn switch(&self, signs: &[i8]) -> SeidelMatrix {
        let n = self.n;
        let mut entries = self.entries.clone();
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] *= signs[i] * signs[j];
            }
        }
        SeidelMatrix { n, entries }
    }

    /// Entries lifted into an arbitrary ring.
    pub fn to_ring<T: Ring>(&self) -> Vec<T> {
        self.entries.iter().map(|&v| T::from_i64(v as i64)).collect()
    }

    /// Exact characteristic polynomial `det(xI - S)`.
    pub fn charpoly(&self) -> IntPoly {
        let desc = berkowitz::<BigInt>(self.n, &self.to_ring());
        IntPoly::new(desc.into_iter().rev().collect())
    }

    /// Characteristic polynomial with coefficients in ℤ/2^8, ascending.
    /// Berkowitz uses no division, so this is the exact polynomial reduced
    /// modulo 256.
    pub fn charpoly_mod_256(&self) -> Vec<u8> {
        berkowitz::<Wrapping<u8>>(self.n, &self.to_ring())
            .into_iter()
            .rev()
            .map(|w| w.0)
            .collect()
    }

    /// Characteristic polynomial modulo 2^32, ascending.
    pub fn charpoly_mod_2_32(&self) -> Vec<u32> {
        berkowitz::<Wrapping<u32>>(self.n, &self.to_ring())
            .into_iter()
            .rev()
            .map(|w| w.0)
            .collect()
    }

    pub fn submatrix_charpolys(&self) -> Vec<IntPoly> {
        (0..self.n).map(|k| self.delete(k).charpoly()).collect()
    }
}

/// Deterministic uniformly random Seidel matrix of order `n`.
pub fn random_seidel(n: usize, seed: u64) -> SeidelMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SeidelMatrix::random_with(n, &mut rng)
}

/// Every Seidel matrix of order `n ≤ 7`, each exactly once.
pub fn enumerate_all_seidel(n: usize) -> Result<impl Iterator<Item = SeidelMatrix>> {
    if n > 7 {
        return Err(Error::OrderTooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    Ok((0u64..1 << bits).map(move |mask| SeidelMatrix::from_mask(n, mask)))
}

/// Division-free characteristic polynomial (Berkowitz), descending
/// coefficients, for a row-major `n × n` matrix over any commutative ring.
pub fn berkowitz<T: Ring>(n: usize, a: &[T]) -> Vec<T> {
    if n == 0 {
        return vec![T::one()];
    }
    let mut chi = vec![T::one(), -a[0].clone()];
    let mut v = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    for r in 1..n {
        // Toeplitz column: 1, -a_rr, -R C, -R A C, …, -R A^{r-1} C.
        let mut t = Vec::with_capacity(r + 2);
        t.push(T::one());
        t.push(-a[r * n + r].clone());
        for i in 0..r {
            v[i] = a[i * n + r].clone();
        }
        for k in 0..r {
            if k > 0 {
                for i in 0..r {
                    let mut acc = T::zero();
                    let row = &a[i * n..i * n + r];
                    for (x, y) in row.iter().zip(&v[..r]) {
                        acc = acc + x.clone() * y.clone();
                    }
                    w[i] = acc;
                }
                std::mem::swap(&mut v, &mut w);
            }
            let mut acc = T::zero();
            for (x, y) in a[r * n..r * n + r].iter().zip(&v[..r]) {
                acc = acc + x.clone() * y.clone();
            }
            t.push(-acc);
        }
        let mut next = vec![T::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = T::zero();
            for (j, c) in chi.iter().enumerate().take(i + 1) {
                acc = acc + t[i - j].clone() * c.clone();
            }
            *slot = acc;
        }
        chi = next;
    }
    chi
}

/// Faddeev–LeVerrier over ℤ with exact divisions; independent of
/// [`berkowitz`] and only used as a cross-check.
pub fn charpoly_faddeev(s: &SeidelMatrix) -> IntPoly {
    let n = s.order();
    let a: Vec<BigInt> = s.to_ring();
    // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    let mut m = vec![BigInt::zero(); n * n];
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    for k in 1..=n {
        let mut next = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for l in 0..n {
                    acc += &a[i * n + l] * &m[l * n + j];
                }
                next[i * n + j] = acc;
            }
            next[i * n + i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i * n + l] * &m[l * n + i];
            }
        }
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    IntPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_charpolys() {
        let s1 = SeidelMatrix::from_mask(1, 0);
        assert_eq!(s1.charpoly(), IntPoly::from_desc_i64s(&[1, 0]));
        let s2 = SeidelMatrix::from_mask(2, 0);
        assert_eq!(s2.charpoly(), IntPoly::from_desc_i64s(&[1, 0, -1]));
        let s3 = SeidelMatrix::from_mask(3, 0);
        assert_eq!(s3.charpoly(), IntPoly::from_desc_i64s(&[1, 0, -3, -2]));
        for p in s3.submatrix_charpolys() {
            assert_eq!(p, IntPoly::from_desc_i64s(&[1, 0, -1]));
        }
        assert_eq!(
            s2.submatrix_charpolys(),
            vec![IntPoly::x(), IntPoly::x()]
        );
    }

    #[test]
    fn counts_of_all_matrices() {
        assert_eq!(enumerate_all_seidel(2).unwrap().count(), 2);
        assert_eq!(enumerate_all_seidel(3).unwrap().count(), 8);
        assert_eq!(enumerate_all_seidel(4).unwrap().count(), 64);
        assert!(enumerate_all_seidel(8).is_err());
    }

    #[test]
    fn random_is_deterministic_and_traced() {
        let a = random_seidel(9, 42);
        assert_eq!(a, random_seidel(9, 42));
        assert_eq!(a.trace(), 0);
        assert_eq!(a.trace_of_square(), 9 * 8);
        assert_eq!(random_seidel(1, 3).charpoly(), IntPoly::x());
    }

    #[test]
    fn modular_charpoly_is_reduction() {
        let s = random_seidel(23, 7);
        let exact = s.charpoly();
        let m = s.charpoly_mod_256();
        for (i, c) in exact.coeffs().iter().enumerate() {
            let r = ((c % 256) + 256) % 256;
            assert_eq!(r, BigInt::from(m[i]));
        }
    }

    #[test]
    fn berkowitz_matches_faddeev() {
        for seed in 0..20 {
            let s = random_seidel(1 + seed as usize % 9, seed);
            assert_eq!(s.charpoly(), charpoly_faddeev(&s));
        }
    }
}
