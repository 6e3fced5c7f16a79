//! Candidate characteristic polynomials `(x - λ0)^{n-d} (x - κ)^{d+1-θ} φ(x)`
//! for Seidel matrices of `n` equiangular lines in dimension `d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{enumerate_totally_real, Constraints, Lattice, ResidueFilter};
use crate::classes::CongruenceClassSet;
use crate::error::{Error, Result};
use crate::poly::roots::factor_totally_real;
use crate::{FactoredPoly, IntPoly};

/// The odd integer `κ` near the bulk of the spectrum and the bound `θ` on
/// the number of eigenvalues that can differ from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaTheta {
    pub kappa: i64,
    pub theta: usize,
    /// `Σ (λ_i - κ)²` over the `d` eigenvalues other than `λ0`.
    pub t: BigInt,
}

fn gamma(n: usize) -> u32 {
    (n % 2) as u32
}

/// Sum of `(λ_i - κ)^2` over the eigenvalues other than `λ0`.
fn deviation(n: usize, d: usize, lambda0: i64, kappa: i64) -> BigInt {
    let n_ = BigInt::from(n);
    let m = BigInt::from(n - d);
    let l = BigInt::from(lambda0);
    let k = BigInt::from(kappa);
    &n_ * (&n_ - 1) - &l * &l * &m + BigInt::from(2) * &k * &l * &m + BigInt::from(d) * &k * &k
}

/// Least `η ≥ 1` with `η^η · 4^{η-γ} > T^η`.
fn least_eta(t: &BigInt, gamma: u32) -> usize {
    let four = BigInt::from(4);
    let mut eta = 1usize;
    loop {
        let e = BigInt::from(eta);
        let lhs = num_traits::pow(e, eta) * num_traits::pow(four.clone(), eta - gamma as usize);
        let rhs = num_traits::pow(t.clone(), eta);
        if lhs > rhs {
            return eta;
        }
        eta += 1;
    }
}

/// Odd integers closest to `num/den` (two on a tie).
fn closest_odd(num: &BigInt, den: &BigInt) -> Vec<i64> {
    // κ = 2m + 1 with m nearest (x - 1)/2 = (num - den) / (2 den).
    let den2 = den * 2;
    let (m, r) = (num - den).div_mod_floor(&den2);
    let k: i64 = i64::try_from(m * 2 + 1).expect("κ fits in i64");
    match r.cmp(den) {
        std::cmp::Ordering::Less => vec![k],
        std::cmp::Ordering::Equal => vec![k, k + 2],
        std::cmp::Ordering::Greater => vec![k + 2],
    }
}

/// `κ` and `θ` for `n` lines in dimension `d` with smallest eigenvalue `λ0`
/// of multiplicity `n - d`. Ties for the closest odd integer give two
/// branches.
pub fn kappa_theta(n: usize, d: usize, lambda0: i64) -> Result<Vec<KappaTheta>> {
    if d == 0 || n <= d {
        return Err(Error::Invalid(format!("need n > d >= 1, got n={} d={}", n, d)));
    }
    let num = BigInt::from(d as i64 - n as i64) * lambda0;
    let den = BigInt::from(d);
    let mut out = Vec::new();
    for kappa in closest_odd(&num, &den) {
        let t = deviation(n, d, lambda0, kappa);
        let theta = least_eta(&t, gamma(n));
        out.push(KappaTheta { kappa, theta, t });
    }
    Ok(out)
}

/// Everything fixed about `φ` before enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSpec {
    pub n: usize,
    pub d: usize,
    pub lambda0: i64,
    pub kappa: i64,
    pub theta: usize,
    pub gamma: u32,
    pub t: BigInt,
    pub b: [BigInt; 3],
}

impl CandidateSpec {
    /// Builds the spec from a `κ/θ` branch. With `degrade`, a branch whose
    /// `θ` exceeds `d` falls back to `θ = d + 1` (no forced `κ` eigenvalues);
    /// otherwise it is an error.
    pub fn new(n: usize, d: usize, lambda0: i64, kt: &KappaTheta, degrade: bool) -> Result<Self> {
        let theta = if kt.theta > d {
            if !degrade {
                return Err(Error::LemmaInapplicable { theta: kt.theta, d });
            }
            d + 1
        } else {
            kt.theta
        };
        let mut spec = CandidateSpec {
            n,
            d,
            lambda0,
            kappa: kt.kappa,
            theta,
            gamma: gamma(n),
            t: kt.t.clone(),
            b: [BigInt::one(), BigInt::zero(), BigInt::zero()],
        };
        spec.b = top_coefficients(&spec)?;
        Ok(spec)
    }

    /// Multiplicity of `κ` in the cofactor.
    pub fn kappa_mult(&self) -> usize {
        self.d + 1 - self.theta
    }

    /// Degree of `φ`.
    pub fn phi_degree(&self) -> usize {
        self.theta - 1
    }

    pub fn cofactor(&self) -> FactoredPoly {
        let lam = IntPoly::linear_root(BigInt::from(self.lambda0));
        let kap = IntPoly::linear_root(BigInt::from(self.kappa));
        FactoredPoly::new(vec![(lam, self.n - self.d), (kap, self.kappa_mult())])
            .expect("linear factors are monic")
    }
}

/// `(b0, b1, b2)`, the leading coefficients of `φ` forced by `tr S = 0` and
/// `tr S² = n(n-1)`.
pub fn top_coefficients(spec: &CandidateSpec) -> Result<[BigInt; 3]> {
    let m = BigInt::from(spec.n - spec.d);
    let k_mult = BigInt::from(spec.d + 1 - spec.theta);
    let l = BigInt::from(spec.lambda0);
    let k = BigInt::from(spec.kappa);
    let n = BigInt::from(spec.n);
    let b1 = &l * &m + &k * &k_mult;
    let numer: BigInt = &b1 * &b1 + &l * &l * &m + &k * &k * &k_mult - &n * (&n - 1);
    if numer.is_odd() {
        return Err(Error::Invalid(format!(
            "odd numerator {} for the second coefficient",
            numer
        )));
    }
    Ok([BigInt::one(), b1, numer / 2])
}

/// Options for [`candidate_charpolys`].
#[derive(Clone, Debug)]
pub struct CandidateOptions {
    /// Use the class set even if it has not reached its bound.
    pub allow_incomplete: bool,
    /// Fall back to the full cofactor when `θ > d`.
    pub degrade: bool,
}

impl Default for CandidateOptions {
    fn default() -> Self {
        CandidateOptions {
            allow_incomplete: false,
            degrade: true,
        }
    }
}

/// All candidate characteristic polynomials for `n` lines in dimension `d`
/// with smallest eigenvalue `λ0`, sorted by expanded coefficients.
pub fn candidate_charpolys(
    n: usize,
    d: usize,
    lambda0: i64,
    classes: &CongruenceClassSet,
    opts: &CandidateOptions,
) -> Result<Vec<FactoredPoly>> {
    if !opts.allow_incomplete {
        classes.require_complete()?;
    }
    let mut all: Vec<(IntPoly, FactoredPoly)> = Vec::new();
    for kt in kappa_theta(n, d, lambda0)? {
        let spec = CandidateSpec::new(n, d, lambda0, &kt, opts.degrade)?;
        for phi in candidate_phis(&spec, classes)? {
            let full = spec.cofactor();
            let mut factors = full.factors().to_vec();
            factors.extend(factor_totally_real(&phi)?.factors().iter().cloned());
            let fp = FactoredPoly::new(factors)?.sorted();
            let expanded = fp.expand();
            if !all.iter().any(|(e, _)| *e == expanded) {
                all.push((expanded, fp));
            }
        }
    }
    all.sort_by(|a, b| a.0.cmp_desc(&b.0));
    Ok(all.into_iter().map(|(_, f)| f).collect())
}

/// The polynomials `φ` for one spec, sorted.
pub fn candidate_phis(spec: &CandidateSpec, classes: &CongruenceClassSet) -> Result<Vec<IntPoly>> {
    let cofactor = spec.cofactor().expand();
    let degree = spec.phi_degree();
    let prefix: Vec<BigInt> = spec.b.iter().take(degree + 1).cloned().collect();
    let cons = Constraints {
        lattice: Lattice::WeaklyType2,
        shift: 1,
        lower: Some(BigInt::from(spec.lambda0)),
        upper: Some(BigInt::from(spec.n)),
        interlace: None,
        residue: Some(ResidueFilter {
            cofactor: &cofactor,
            classes,
        }),
    };
    Ok(enumerate_totally_real(degree, &prefix, &cons)?.polys)
}
