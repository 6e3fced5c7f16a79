//! 2-adic divisibility patterns of characteristic polynomials.
//!
//! A monic `p = Σ a_i x^{n-i}` is *type 2* when `2^i | a_i` for every `i`,
//! and *weakly type 2* when `2^{i-1} | a_i` for every `i ≥ 1`. The index `i`
//! counts down from the leading coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::IntPoly;

fn check_monic(p: &IntPoly) -> Result<()> {
    if p.is_monic() {
        Ok(())
    } else {
        Err(Error::NotMonic)
    }
}

/// Largest `k` with `2^k | v`; `None` for zero.
fn two_adic_valuation(v: &BigInt) -> Option<u64> {
    v.trailing_zeros()
}

fn divisible_by_pow2(v: &BigInt, k: u64) -> bool {
    two_adic_valuation(v).is_none_or(|t| t >= k)
}

pub fn is_type2(p: &IntPoly) -> Result<bool> {
    check_monic(p)?;
    Ok((1..=p.degree()).all(|i| divisible_by_pow2(&p.desc(i), i as u64)))
}

pub fn is_weakly_type2(p: &IntPoly) -> Result<bool> {
    check_monic(p)?;
    Ok((2..=p.degree()).all(|i| divisible_by_pow2(&p.desc(i), i as u64 - 1)))
}

/// Required power of two dividing descending coefficient `i`.
pub fn lattice_exponent(i: usize, weak: bool) -> u32 {
    if weak {
        i.saturating_sub(1) as u32
    } else {
        i as u32
    }
}

/// Coefficients of a degree-`n` polynomial reduced into `[0, 2^e)`, in
/// ascending powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResidueVector {
    pub n: usize,
    pub e: u32,
    pub residues: Vec<u32>,
}

impl ResidueVector {
    pub fn modulus(e: u32) -> BigInt {
        BigInt::one() << e as usize
    }

    /// Residues listed from the leading coefficient down.
    pub fn descending(&self) -> impl Iterator<Item = u32> + '_ {
        self.residues.iter().rev().copied()
    }
}

pub fn reduce_mod(p: &IntPoly, n: usize, e: u32) -> Result<ResidueVector> {
    if p.is_zero() || p.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: p.degree(),
        });
    }
    if e > 31 {
        return Err(Error::Invalid(format!("exponent {} too large", e)));
    }
    let m = ResidueVector::modulus(e);
    let residues = p
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&m).to_u32().expect("residue fits"))
        .collect();
    Ok(ResidueVector { n, e, residues })
}

/// Bound on the number of residue classes of Seidel characteristic
/// polynomials of odd order modulo `2^e`: `2^(C(e-2, 2) + 1)`.
pub fn class_bound(e: u32) -> Result<usize> {
    if e < 3 {
        return Err(Error::Invalid(format!(
            "the class-count bound needs e >= 3, got {}",
            e
        )));
    }
    let k = (e as usize - 2) * (e as usize - 3) / 2 + 1;
    Ok(1usize << k)
}

/// Whether a coefficient sits on the lattice `2^k ℤ`.
pub fn on_lattice(v: &BigInt, k: u32) -> bool {
    v.is_zero() || divisible_by_pow2(v, k as u64)
}
