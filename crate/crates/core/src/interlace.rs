//! Spectra of candidate characteristic polynomials and the families of
//! polynomials that may occur as characteristic polynomials of their
//! principal submatrices of order one less.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebraic::AlgebraicReal;
use crate::classes::CongruenceClassSet;
use crate::enumerate::{enumerate_totally_real, Constraints, Lattice, ResidueFilter};
use crate::error::{Error, Result};
use crate::poly::roots::factor_totally_real;
use crate::{FactoredPoly, IntPoly};

/// A distinct eigenvalue with its irreducible factor and multiplicity.
#[derive(Clone, Debug)]
pub struct Eigenvalue {
    pub value: AlgebraicReal,
    /// Index into [`SpectrumData::factors`].
    pub factor: usize,
    pub multiplicity: usize,
}

/// A characteristic polynomial `χ = μ · m` with `m` its radical.
#[derive(Clone, Debug)]
pub struct SpectrumData {
    pub n: usize,
    /// Monic irreducible factors of `χ` with multiplicities.
    pub factors: Vec<(IntPoly, usize)>,
    /// Radical `m` of `χ`.
    pub minimal: IntPoly,
    /// `χ / m`.
    pub mu: IntPoly,
    /// Distinct eigenvalues in increasing order.
    pub eigenvalues: Vec<Eigenvalue>,
}

/// Splits every factor of `χ` into irreducibles and records the spectrum.
pub fn spectrum_of(chi: &FactoredPoly) -> Result<SpectrumData> {
    let mut factors: Vec<(IntPoly, usize)> = Vec::new();
    for (p, k) in chi.factors() {
        for (q, j) in factor_totally_real(p)?.factors() {
            match factors.iter_mut().find(|(f, _)| f == q) {
                Some(entry) => entry.1 += j * k,
                None => factors.push((q.clone(), j * k)),
            }
        }
    }
    let mut eigenvalues = Vec::new();
    for (i, (q, k)) in factors.iter().enumerate() {
        for value in AlgebraicReal::roots_of(q)? {
            eigenvalues.push(Eigenvalue {
                value,
                factor: i,
                multiplicity: *k,
            });
        }
    }
    eigenvalues.sort_by(|a, b| a.value.cmp(&b.value));
    let minimal = factors.iter().fold(IntPoly::one(), |acc, (q, _)| &acc * q);
    let mu = factors
        .iter()
        .fold(IntPoly::one(), |acc, (q, k)| &acc * &q.pow(*k as u32 - 1));
    Ok(SpectrumData {
        n: chi.degree(),
        factors,
        minimal,
        mu,
        eigenvalues,
    })
}

impl SpectrumData {
    /// `χ` expanded.
    pub fn charpoly(&self) -> IntPoly {
        &self.mu * &self.minimal
    }

    /// `χ' / μ = Σ_i k_i p_i' Π_{j≠i} p_j`, the right-hand side of the
    /// derivative identity `Σ f = χ'/μ` over the family.
    pub fn derivative_quotient(&self) -> IntPoly {
        let mut g = IntPoly::zero();
        for (i, (p, k)) in self.factors.iter().enumerate() {
            let mut term = p.derivative().scale(&BigInt::from(*k));
            for (j, (q, _)) in self.factors.iter().enumerate() {
                if i != j {
                    term = &term * q;
                }
            }
            g = &g + &term;
        }
        g
    }

    /// Number of distinct eigenvalues.
    pub fn distinct(&self) -> usize {
        self.minimal.degree()
    }

    /// `χ_{S[i]} = μ · f` in factored form.
    pub fn submatrix_charpoly(&self, f: &IntPoly) -> Result<FactoredPoly> {
        let mut parts: Vec<(IntPoly, usize)> = self
            .factors
            .iter()
            .filter(|(_, k)| *k > 1)
            .map(|(q, k)| (q.clone(), k - 1))
            .collect();
        parts.extend(factor_totally_real(f)?.factors().iter().cloned());
        Ok(FactoredPoly::new(parts)?.sorted())
    }
}

/// Every `f` of degree `δ - 1` (`δ` the number of distinct eigenvalues)
/// such that `μ · f` passes the necessary conditions for the characteristic
/// polynomial of a principal submatrix of order `n - 1`:
///
/// * leading coefficients `(1, a1, a2 + n - 1)` where `m = x^δ + a1 x^{δ-1} + a2 …`;
/// * `f` interlaces `m`;
/// * `f(x - 1)` is type 2 when `n - 1` is even and weakly type 2 otherwise;
/// * for odd `n - 1`, `μ · f` reduces into `classes` (order `n - 1`).
pub fn interlacing_family(
    spectrum: &SpectrumData,
    classes: Option<&CongruenceClassSet>,
) -> Result<Vec<IntPoly>> {
    let n = spectrum.n;
    if n < 2 {
        return Err(Error::Invalid("order must be at least 2".into()));
    }
    let m = &spectrum.minimal;
    let degree = m.degree() - 1;
    let prefix: Vec<BigInt> = [m.desc(0), m.desc(1), m.desc(2) + BigInt::from(n - 1)]
        .into_iter()
        .take(degree + 1)
        .collect();
    let odd = (n - 1) % 2 == 1;
    let residue = if odd {
        let classes = classes.ok_or_else(|| {
            Error::Invalid(format!("order {} needs congruence classes for order {}", n, n - 1))
        })?;
        if classes.n != n - 1 {
            return Err(Error::Invalid(format!(
                "class set is for order {}, need {}",
                classes.n,
                n - 1
            )));
        }
        Some(ResidueFilter {
            cofactor: &spectrum.mu,
            classes,
        })
    } else {
        None
    };
    let first = &spectrum.eigenvalues[0].value;
    let last = &spectrum.eigenvalues[spectrum.eigenvalues.len() - 1].value;
    let cons = Constraints {
        lattice: if odd { Lattice::WeaklyType2 } else { Lattice::Type2 },
        shift: 1,
        lower: Some(integer_bounds(first).0),
        upper: Some(integer_bounds(last).1),
        interlace: Some(m.clone()),
        residue,
    };
    Ok(enumerate_totally_real(degree, &prefix, &cons)?.polys)
}

/// Integers strictly below and strictly above `x`.
fn integer_bounds(x: &AlgebraicReal) -> (BigInt, BigInt) {
    let mut y = x.clone();
    y.refine_to(&BigRational::one());
    let iv = y.interval();
    (iv.lo.floor().to_integer() - 1, iv.hi.ceil().to_integer() + 1)
}
