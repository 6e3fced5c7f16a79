//! Enumeration of totally real integer polynomials under divisibility,
//! root-location, interlacing and congruence constraints, and the
//! candidate characteristic polynomials built on top of it.

mod candidates;
mod engine;
pub(crate) mod handle;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};

use crate::classes::CongruenceClassSet;
use crate::error::{Error, Result};
use crate::modtype::{is_type2, is_weakly_type2, reduce_mod};
use crate::poly::roots::{interlaces, is_totally_real, isolate_dyadic, sturm_count, Sturm};
use crate::IntPoly;

pub use candidates::{
    candidate_charpolys, kappa_theta, top_coefficients, CandidateOptions, CandidateSpec,
    KappaTheta,
};

use engine::{ResidueState, Search};
use handle::Root;

/// 2-adic lattice imposed on the shifted polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lattice {
    None,
    WeaklyType2,
    Type2,
}

impl Lattice {
    fn exponent(self, j: usize) -> u32 {
        match self {
            Lattice::None => 0,
            Lattice::WeaklyType2 => j.saturating_sub(1) as u32,
            Lattice::Type2 => j as u32,
        }
    }

    fn holds(self, p: &IntPoly) -> bool {
        match self {
            Lattice::None => true,
            Lattice::WeaklyType2 => is_weakly_type2(p).unwrap_or(false),
            Lattice::Type2 => is_type2(p).unwrap_or(false),
        }
    }
}

/// Congruence requirement: `cofactor · p` reduces into one of `classes`.
#[derive(Clone, Copy, Debug)]
pub struct ResidueFilter<'a> {
    pub cofactor: &'a IntPoly,
    pub classes: &'a CongruenceClassSet,
}

/// Constraints on the enumerated polynomial `p`.
#[derive(Clone, Debug)]
pub struct Constraints<'a> {
    /// Lattice condition on `p(x - shift)`.
    pub lattice: Lattice,
    pub shift: i64,
    /// Every root of `p` lies strictly above this.
    pub lower: Option<BigInt>,
    /// Every root of `p` lies strictly below this.
    pub upper: Option<BigInt>,
    /// `p` must interlace this square-free polynomial of one higher degree.
    pub interlace: Option<IntPoly>,
    pub residue: Option<ResidueFilter<'a>>,
}

impl Default for Constraints<'_> {
    fn default() -> Self {
        Constraints {
            lattice: Lattice::None,
            shift: 0,
            lower: None,
            upper: None,
            interlace: None,
            residue: None,
        }
    }
}

/// Result of an enumeration, with per-level node counts.
#[derive(Clone, Debug, Default)]
pub struct Enumeration {
    pub polys: Vec<IntPoly>,
    pub nodes: Vec<u64>,
}

fn shift_prefix(prefix: &[BigInt], degree: usize, s: i64) -> Vec<BigInt> {
    // Descending coefficients of p(x - s) that depend only on the prefix.
    let s = BigInt::from(s);
    (0..prefix.len())
        .map(|t| {
            let mut acc = BigInt::zero();
            for (u, b) in prefix.iter().enumerate().take(t + 1) {
                let c = binomial(BigInt::from(degree - u), BigInt::from(t - u));
                let sign = if (t - u) % 2 == 1 { -BigInt::one() } else { BigInt::one() };
                acc += b * c * sign * num_traits::pow(s.clone(), t - u);
            }
            acc
        })
        .collect()
}

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128()
        .ok_or_else(|| Error::Unsupported(format!("coefficient {} exceeds 128 bits", v)))
}

struct Prepared<'a> {
    search: Search<'a>,
    shift: i64,
}

fn prepare<'a>(
    degree: usize,
    prefix: &[BigInt],
    cons: &Constraints<'_>,
    tree: Option<&'a crate::classes::PrefixTree>,
) -> Result<Prepared<'a>> {
    if prefix.is_empty() || !prefix[0].is_one() {
        return Err(Error::NotMonic);
    }
    if prefix.len() > degree + 1 {
        return Err(Error::LengthMismatch {
            expected: degree + 1,
            found: prefix.len(),
        });
    }
    let bounded = cons.lower.is_some() && cons.upper.is_some();
    if !bounded && cons.interlace.is_none() && prefix.len() < 3.min(degree + 1) {
        return Err(Error::Invalid(
            "without root bounds the first three coefficients must be fixed".into(),
        ));
    }
    let s = cons.shift;
    let psi_prefix: Vec<i128> = shift_prefix(prefix, degree, s)
        .iter()
        .map(to_i128)
        .collect::<Result<_>>()?;
    let lower = cons
        .lower
        .as_ref()
        .map(|b| to_i128(&(b + BigInt::from(s))))
        .transpose()?;
    let upper = cons
        .upper
        .as_ref()
        .map(|b| to_i128(&(b + BigInt::from(s))))
        .transpose()?;
    let lattice = (0..=degree).map(|j| cons.lattice.exponent(j)).collect();

    let mut targets = Vec::new();
    if let Some(m) = &cons.interlace {
        if m.degree() != degree + 1 {
            return Err(Error::DegreeMismatch {
                expected: degree + 1,
                found: m.degree(),
            });
        }
        if m.square_free_part().degree() != m.degree() || !is_totally_real(m)? {
            return Err(Error::NotTotallyReal(
                "interlacing target must be square-free and totally real".into(),
            ));
        }
        let shifted = m.shift(&BigInt::from(s));
        // targets[j] holds the roots of the (D-j)-th derivative, degree j+1.
        targets.push(Vec::new());
        for j in 1..=degree {
            let mut d = shifted.clone();
            for _ in 0..degree - j {
                d = d.derivative();
            }
            let d = Arc::new(d.primitive_part());
            let sturm = Sturm::new(&d)?;
            let roots = isolate_dyadic(&sturm)
                .into_iter()
                .map(|r| {
                    if r.lo == r.hi {
                        Root::exact(r.lo, d.clone())
                    } else {
                        Root::bracketed(r.lo, r.hi, d.clone())
                    }
                })
                .collect();
            targets.push(roots);
        }
    }

    let residue = match (cons.residue, tree) {
        (Some(filter), Some(tree)) => {
            let e = filter.classes.e;
            let cof = filter.cofactor;
            let n = cof.degree() + degree;
            if filter.classes.n != n {
                return Err(Error::Invalid(format!(
                    "class set is for order {}, product has degree {}",
                    filter.classes.n, n
                )));
            }
            let wrap = |v: &BigInt| -> u64 {
                let m = BigInt::one() << 64usize;
                num_integer::Integer::mod_floor(v, &m).to_u64().unwrap()
            };
            let cof_desc: Vec<u64> = cof.desc_coeffs().iter().map(wrap).collect();
            let sb = BigInt::from(s);
            let mut weights = vec![vec![0u64; degree + 1]; n + 1];
            for (j, row) in weights.iter_mut().enumerate() {
                for (t, w) in row.iter_mut().enumerate() {
                    let mut acc: u64 = 0;
                    for u in t..=degree.min(j) {
                        if j - u >= cof_desc.len() {
                            continue;
                        }
                        let b = binomial(BigInt::from(degree - t), BigInt::from(u - t))
                            * num_traits::pow(sb.clone(), u - t);
                        acc = acc.wrapping_add(wrap(&b).wrapping_mul(cof_desc[j - u]));
                    }
                    *w = acc;
                }
            }
            Some(ResidueState {
                tree,
                weights,
                mask: (1u64 << e) - 1,
            })
        }
        _ => None,
    };

    Ok(Prepared {
        search: Search::new(degree, psi_prefix, lower, upper, lattice, targets, residue),
        shift: s,
    })
}

/// Every monic totally real integer polynomial of the given degree whose
/// leading descending coefficients are `prefix` and which satisfies
/// `cons`, sorted by descending coefficient tuple.
pub fn enumerate_totally_real(
    degree: usize,
    prefix: &[BigInt],
    cons: &Constraints<'_>,
) -> Result<Enumeration> {
    let tree = cons.residue.map(|filter| filter.classes.prefix_tree());
    let mut prepared = prepare(degree, prefix, cons, tree.as_ref())?;
    prepared.search.run();
    let shift = BigInt::from(prepared.shift);
    let mut polys = Vec::with_capacity(prepared.search.out.len());
    for coeffs in &prepared.search.out {
        let psi = IntPoly::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect());
        let phi = psi.shift(&-shift.clone());
        verify(&phi, &psi, degree, prefix, cons)?;
        polys.push(phi);
    }
    polys.sort_by(|a, b| a.cmp_desc(b));
    Ok(Enumeration {
        polys,
        nodes: prepared.search.nodes,
    })
}

/// Exact re-check of an emitted polynomial against every constraint.
fn verify(
    phi: &IntPoly,
    psi: &IntPoly,
    degree: usize,
    prefix: &[BigInt],
    cons: &Constraints<'_>,
) -> Result<()> {
    let fail = |what: &str| Err(Error::Invalid(format!("enumerated {} violates {}", phi, what)));
    if phi.degree() != degree || !phi.is_monic() {
        return fail("degree");
    }
    if prefix.iter().enumerate().any(|(i, c)| phi.desc(i) != *c) {
        return fail("prefix");
    }
    if !is_totally_real(phi)? {
        return fail("total reality");
    }
    if !cons.lattice.holds(psi) {
        return fail("lattice");
    }
    let total = sturm_count(phi, None, None)?;
    let lo = cons.lower.as_ref().map(|b| num_rational::BigRational::from_integer(b.clone()));
    let hi = cons.upper.as_ref().map(|b| num_rational::BigRational::from_integer(b.clone()));
    if sturm_count(phi, lo.as_ref(), hi.as_ref())? != total {
        return fail("root bounds");
    }
    if let Some(m) = &cons.interlace {
        if !interlaces(phi, m)? {
            return fail("interlacing");
        }
    }
    if let Some(filter) = cons.residue {
        let prod = filter.cofactor * phi;
        let r = reduce_mod(&prod, prod.degree(), filter.classes.e)?;
        if !filter.classes.contains(&r) {
            return fail("congruence classes");
        }
    }
    Ok(())
}

/// Admissible range of the first coefficient after `prefix` from the
/// total-reality, root-bound and interlacing conditions alone (before the
/// lattice and congruence filters). `None` when the prefix itself fails.
pub fn coefficient_range(
    degree: usize,
    prefix: &[BigInt],
    cons: &Constraints<'_>,
) -> Result<Option<(BigInt, BigInt)>> {
    if prefix.len() > degree {
        return Err(Error::Invalid("prefix already determines the polynomial".into()));
    }
    let plain = Constraints {
        residue: None,
        lattice: Lattice::None,
        ..cons.clone()
    };
    let mut prepared = prepare(degree, prefix, &plain, None)?;
    let j = prefix.len();
    prepared.search.probe = Some(j);
    prepared.search.run();
    let s = BigInt::from(prepared.shift);
    match prepared.search.probed {
        Some((Some(lo), Some(hi))) if lo <= hi => {
            // Map the ψ-coefficient range back: c_j(φ) = c_j(ψ) + (terms of
            // the fixed prefix), an affine shift by a constant.
            let mut probe_prefix = prefix.to_vec();
            probe_prefix.push(BigInt::zero());
            let base = shift_prefix(&probe_prefix, degree, prepared.shift)[j].clone();
            let _ = s;
            Ok(Some((BigInt::from(lo) - &base, BigInt::from(hi) - &base)))
        }
        Some(_) => Ok(None),
        None => Ok(None),
    }
}
