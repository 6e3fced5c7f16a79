use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::IntPoly;
use crate::error::{Error, Result};

/// A product `Π p_i^{k_i}` of monic integer polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredPoly {
    factors: Vec<(IntPoly, usize)>,
}

impl FactoredPoly {
    /// Factors must be monic and nonconstant; equal factors are merged.
    pub fn new(factors: Vec<(IntPoly, usize)>) -> Result<Self> {
        let mut merged: Vec<(IntPoly, usize)> = Vec::new();
        for (p, k) in factors {
            if p.degree() == 0 || k == 0 {
                if p.is_monic() || k == 0 {
                    continue;
                }
                return Err(Error::NotMonic);
            }
            if !p.is_monic() {
                return Err(Error::NotMonic);
            }
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some(entry) => entry.1 += k,
                None => merged.push((p, k)),
            }
        }
        Ok(FactoredPoly { factors: merged })
    }

    pub fn single(p: IntPoly) -> Result<Self> {
        FactoredPoly::new(vec![(p, 1)])
    }

    pub fn factors(&self) -> &[(IntPoly, usize)] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(p, k)| p.degree() * k).sum()
    }

    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::one(), |acc, (p, k)| &acc * &p.pow(*k as u32))
    }

    /// Append another factor (merging with an equal one).
    pub fn times(&self, p: &IntPoly, k: usize) -> Result<Self> {
        let mut f = self.factors.clone();
        f.push((p.clone(), k));
        FactoredPoly::new(f)
    }

    /// Canonical order: by degree, then by descending coefficients.
    /// Canonical order: by degree, linear factors by increasing root, ties
    /// broken by decreasing coefficient tuple.
    pub fn sorted(&self) -> Self {
        let mut f = self.factors.clone();
        f.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(b.0.cmp_desc(&a.0)));
        FactoredPoly { factors: f }
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (p, k) in &self.factors {
            let body = compact(p);
            if *p == IntPoly::x() {
                write!(f, "x")?;
            } else {
                write!(f, "({})", body)?;
            }
            if *k > 1 {
                write!(f, "^{}", k)?;
            }
        }
        Ok(())
    }
}

/// `x^2-29x+202` style rendering without spaces.
pub(crate) fn compact(p: &IntPoly) -> String {
    let s = p.to_string();
    s.replace(' ', "")
}

impl IntPoly {
    /// Whether `self` is `x - c` for an integer `c`.
    pub fn linear_root_value(&self) -> Option<num_bigint::BigInt> {
        if self.degree() == 1 && self.leading().is_one() {
            Some(-self.coeff(0))
        } else {
            None
        }
    }
}
