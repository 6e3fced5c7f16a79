//! The linear system `xᵀA = gᵀ, x ≥ 0` over an interlacing family, exact
//! Farkas certificates of its infeasibility, warranties, and the integer
//! solutions (configurations) that survive.
//!
//! Row `i` of `A` is the descending coefficient vector of the family member
//! `f_i`; `g = χ'/μ`. A vector `c` with `A c ≥ 0` and `gᵀc < 0` proves that
//! no nonnegative combination of the rows equals `g`. It warrants row `r`
//! when instead `(A c)_r < 0` and every other entry is nonnegative: then
//! any solution uses `f_r`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interlace::SpectrumData;
use crate::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilitySystem {
    /// One row per family member, descending coefficients.
    pub rows: Vec<Vec<BigInt>>,
    /// Descending coefficients of `χ'/μ`.
    pub rhs: Vec<BigInt>,
}

/// What a certificate claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    Infeasible,
    Warranty(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub vector: Vec<BigInt>,
}

/// Outcome of [`find_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Infeasible(Certificate),
    /// A nonnegative rational solution.
    Feasible(Vec<BigRational>),
}

/// Outcome of [`solve_rational`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalSolution {
    Unique(Vec<BigRational>),
    Underdetermined,
    Inconsistent,
}

fn coeff_vector(p: &IntPoly, len: usize) -> Result<Vec<BigInt>> {
    if p.degree() + 1 != len {
        return Err(Error::LengthMismatch {
            expected: len,
            found: p.degree() + 1,
        });
    }
    Ok(p.desc_coeffs())
}

pub fn build_system(spectrum: &SpectrumData, family: &[IntPoly]) -> Result<FeasibilitySystem> {
    let len = spectrum.distinct();
    let rhs = coeff_vector(&spectrum.derivative_quotient(), len)?;
    let rows = family
        .iter()
        .map(|f| coeff_vector(f, len))
        .collect::<Result<_>>()?;
    Ok(FeasibilitySystem { rows, rhs })
}

impl FeasibilitySystem {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn width(&self) -> usize {
        self.rhs.len()
    }

    /// The system restricted to the given rows, in that order.
    pub fn restrict(&self, rows: &[usize]) -> FeasibilitySystem {
        FeasibilitySystem {
            rows: rows.iter().map(|&i| self.rows[i].clone()).collect(),
            rhs: self.rhs.clone(),
        }
    }

    /// `A c`.
    pub fn apply(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.rows.iter().map(|r| dot(r, c)).collect()
    }

    /// Whether `xᵀA = g` for the given integer counts.
    pub fn is_solution(&self, x: &[BigInt]) -> bool {
        x.len() == self.len()
            && x.iter().all(|v| !v.is_negative())
            && (0..self.width()).all(|t| {
                self.rows
                    .iter()
                    .zip(x)
                    .fold(BigInt::zero(), |acc, (r, v)| acc + &r[t] * v)
                    == self.rhs[t]
            })
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Exact check of a certificate against a system.
pub fn verify_certificate(sys: &FeasibilitySystem, cert: &Certificate) -> bool {
    if cert.vector.len() != sys.width() {
        return false;
    }
    if !dot(&sys.rhs, &cert.vector).is_negative() {
        return false;
    }
    let ac = sys.apply(&cert.vector);
    match cert.kind {
        CertificateKind::Infeasible => ac.iter().all(|v| !v.is_negative()),
        CertificateKind::Warranty(r) => {
            r < ac.len()
                && ac
                    .iter()
                    .enumerate()
                    .all(|(i, v)| if i == r { v.is_negative() } else { !v.is_negative() })
        }
    }
}

fn q(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

enum Lp {
    Feasible(Vec<BigRational>),
    /// Dual ray `y` with `M^T y ≥ 0` columnwise and `bᵀy < 0`.
    Infeasible(Vec<BigRational>),
}

/// Phase one of the simplex method with Bland's rule for `M x = b, x ≥ 0`
/// (`M` given by rows).
fn phase_one(m: &[Vec<BigRational>], b: &[BigRational]) -> Lp {
    let rows = b.len();
    let cols = m.first().map_or(0, |r| r.len());
    let width = cols + rows;
    // Tableau rows: [x columns | artificial columns | rhs], rows sign-fixed.
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    let mut flip = vec![false; rows];
    for i in 0..rows {
        let neg = b[i].is_negative();
        flip[i] = neg;
        let mut row: Vec<BigRational> = Vec::with_capacity(width + 1);
        row.extend(m[i].iter().map(|v| if neg { -v.clone() } else { v.clone() }));
        for k in 0..rows {
            row.push(if k == i { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (cols..width).collect();
    let cost = |j: usize| -> BigRational {
        if j >= cols {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    loop {
        // Reduced costs r_j = c_j - Σ_i c_{B_i} t[i][j].
        let reduced = |j: usize, t: &Vec<Vec<BigRational>>, basis: &Vec<usize>| -> BigRational {
            let mut r = cost(j);
            for (i, &bi) in basis.iter().enumerate() {
                if bi >= cols {
                    r -= &t[i][j];
                }
            }
            r
        };
        let entering = (0..width).find(|&j| !basis.contains(&j) && reduced(j, &t, &basis).is_negative());
        let Some(e) = entering else {
            let z = basis
                .iter()
                .enumerate()
                .filter(|(_, &bi)| bi >= cols)
                .fold(BigRational::zero(), |acc, (i, _)| acc + &t[i][width]);
            if z.is_zero() {
                let mut x = vec![BigRational::zero(); cols];
                for (i, &bi) in basis.iter().enumerate() {
                    if bi < cols {
                        x[bi] = t[i][width].clone();
                    }
                }
                return Lp::Feasible(x);
            }
            let y = (0..rows)
                .map(|k| {
                    let pi = BigRational::one() - reduced(cols + k, &t, &basis);
                    if flip[k] {
                        pi
                    } else {
                        -pi
                    }
                })
                .collect();
            return Lp::Infeasible(y);
        };
        // Ratio test, ties to the smallest basic index.
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if t[i][e].is_positive() {
                let ratio = &t[i][width] / &t[i][e];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (l, _) = leave.expect("phase one is bounded below");
        let piv = t[l][e].clone();
        for v in t[l].iter_mut() {
            *v /= &piv;
        }
        let pivot_row = t[l].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != l && !row[e].is_zero() {
                let f = row[e].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        basis[l] = e;
    }
}

/// Scale a rational vector to a primitive integer vector.
fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// `M = Aᵀ` restricted to the given columns.
fn transpose(sys: &FeasibilitySystem, cols: &[usize]) -> Vec<Vec<BigRational>> {
    (0..sys.width())
        .map(|t| cols.iter().map(|&i| q(&sys.rows[i][t])).collect())
        .collect()
}

/// Decides the system exactly: a nonnegative rational solution or an
/// integer certificate of infeasibility.
pub fn find_certificate(sys: &FeasibilitySystem) -> Feasibility {
    let all: Vec<usize> = (0..sys.len()).collect();
    let b: Vec<BigRational> = sys.rhs.iter().map(q).collect();
    match phase_one(&transpose(sys, &all), &b) {
        Lp::Feasible(x) => Feasibility::Feasible(x),
        Lp::Infeasible(y) => {
            let cert = Certificate {
                kind: CertificateKind::Infeasible,
                vector: primitive(&y),
            };
            assert!(verify_certificate(sys, &cert), "simplex produced an invalid certificate");
            Feasibility::Infeasible(cert)
        }
    }
}

/// A certificate that every solution uses row `r`, if the system without
/// that row is infeasible.
pub fn find_warranty(sys: &FeasibilitySystem, r: usize) -> Option<Certificate> {
    let others: Vec<usize> = (0..sys.len()).filter(|&i| i != r).collect();
    let b: Vec<BigRational> = sys.rhs.iter().map(q).collect();
    match phase_one(&transpose(sys, &others), &b) {
        Lp::Feasible(_) => None,
        Lp::Infeasible(y) => {
            let cert = Certificate {
                kind: CertificateKind::Warranty(r),
                vector: primitive(&y),
            };
            verify_certificate(sys, &cert).then_some(cert)
        }
    }
}

/// Rows for which a warranty exists, with the certificates.
pub fn warranties(sys: &FeasibilitySystem) -> Vec<Certificate> {
    (0..sys.len()).filter_map(|r| find_warranty(sys, r)).collect()
}

/// Whether `xᵀA = g` has a nonnegative rational solution with `x_i = fixed_i`
/// wherever `fixed_i` is set and `x_i ≥ lower_i` elsewhere.
fn feasible_with(sys: &FeasibilitySystem, fixed: &[Option<BigInt>], lower: &[BigInt]) -> bool {
    let mut b: Vec<BigRational> = sys.rhs.iter().map(q).collect();
    let mut free = Vec::new();
    for i in 0..sys.len() {
        let base = match &fixed[i] {
            Some(v) => v.clone(),
            None => {
                free.push(i);
                lower[i].clone()
            }
        };
        if !base.is_zero() {
            for (t, bt) in b.iter_mut().enumerate() {
                *bt -= q(&(&sys.rows[i][t] * &base));
            }
        }
    }
    matches!(phase_one(&transpose(sys, &free), &b), Lp::Feasible(_))
}

/// Every nonnegative integer solution with `x_i = 0` on `forbidden` and
/// `x_i ≥ 1` on `required`, by depth-first search pruned with exact linear
/// programming. The first column of `A` must be all ones (monic rows), so
/// the entries sum to `g_0`.
pub fn enumerate_configurations(
    sys: &FeasibilitySystem,
    forbidden: &[usize],
    required: &[usize],
) -> Result<Vec<Vec<BigInt>>> {
    if sys.rows.iter().any(|r| !r[0].is_one()) {
        return Err(Error::NotMonic);
    }
    let k = sys.len();
    let mut fixed: Vec<Option<BigInt>> = vec![None; k];
    for &i in forbidden {
        fixed[i] = Some(BigInt::zero());
    }
    let lower: Vec<BigInt> = (0..k)
        .map(|i| if required.contains(&i) { BigInt::one() } else { BigInt::zero() })
        .collect();
    let mut out = Vec::new();
    if feasible_with(sys, &fixed, &lower) {
        search(sys, 0, &mut fixed, &lower, &mut out);
    }
    Ok(out)
}

fn search(
    sys: &FeasibilitySystem,
    i: usize,
    fixed: &mut Vec<Option<BigInt>>,
    lower: &[BigInt],
    out: &mut Vec<Vec<BigInt>>,
) {
    if i == sys.len() {
        let x: Vec<BigInt> = fixed.iter().map(|v| v.clone().expect("all fixed")).collect();
        if sys.is_solution(&x) {
            out.push(x);
        }
        return;
    }
    if fixed[i].is_some() {
        search(sys, i + 1, fixed, lower, out);
        return;
    }
    let used: BigInt = fixed.iter().flatten().sum();
    let mut v = lower[i].clone();
    while v <= &sys.rhs[0] - &used {
        fixed[i] = Some(v.clone());
        if feasible_with(sys, fixed, lower) {
            search(sys, i + 1, fixed, lower, out);
        }
        v += 1;
    }
    fixed[i] = None;
}

/// Solves `xᵀA = g` over ℚ without sign constraints.
pub fn solve_rational(sys: &FeasibilitySystem) -> RationalSolution {
    let all: Vec<usize> = (0..sys.len()).collect();
    let mut m = transpose(sys, &all);
    let k = sys.len();
    for (row, b) in m.iter_mut().zip(&sys.rhs) {
        row.push(q(b));
    }
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v /= &piv;
        }
        let prow = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if m[rank..].iter().any(|row| !row[k].is_zero()) {
        return RationalSolution::Inconsistent;
    }
    if rank < k {
        return RationalSolution::Underdetermined;
    }
    let mut x = vec![BigRational::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][k].clone();
    }
    RationalSolution::Unique(x)
}
