//! Exact real-root analysis: Sturm sequences, root isolation, total
//! reality and interlacing.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Dyadic, FactoredPoly, IntPoly};
use crate::error::{Error, Result};

/// An isolating interval. When `lo == hi` the root is exactly `lo`;
/// otherwise it lies in the open interval and neither endpoint is a root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "rational_str")]
    pub lo: BigRational,
    #[serde(with = "rational_str")]
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn point(x: BigRational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Whether the closed intervals intersect.
    pub fn overlaps(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn approx_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

pub(crate) mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point of the extended real line at which signs are evaluated.
#[derive(Clone, Debug)]
pub enum Point<'a> {
    NegInf,
    PosInf,
    Rational(&'a BigRational),
    Dyadic(&'a Dyadic),
}

impl IntPoly {
    pub fn sign_at(&self, x: &Point<'_>) -> Ordering {
        let lead = self.leading().cmp(&BigInt::zero());
        match x {
            Point::PosInf => lead,
            Point::NegInf => {
                if self.degree().is_multiple_of(2) {
                    lead
                } else {
                    lead.reverse()
                }
            }
            Point::Rational(r) => self.sign_at_rational(r),
            Point::Dyadic(d) => self.sign_at_dyadic(d),
        }
    }
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<IntPoly>,
}

impl Sturm {
    /// Builds the sequence for the square-free part of `p`.
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = p.square_free_part();
        let mut seq = vec![p0.clone()];
        if p0.degree() == 0 {
            return Ok(Sturm { seq });
        }
        seq.push(p0.derivative().primitive_part());
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            if b.degree() == 0 {
                break;
            }
            // prem(a, b) = lc(b)^(da-db+1) · rem(a, b); undo the sign of that
            // factor so the sequence carries -rem(a, b) up to positive scale.
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            let flips = b.leading().is_negative() && (a.degree() - b.degree() + 1) % 2 == 1;
            let content = r.content();
            let scaled = IntPoly::new(r.coeffs().iter().map(|c| c / &content).collect());
            let next = if flips { scaled } else { -scaled };
            seq.push(next);
        }
        Ok(Sturm { seq })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.seq[0]
    }

    pub fn variations(&self, x: &Point<'_>) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for q in &self.seq {
            let s = q.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &Point<'_>, hi: &Point<'_>) -> usize {
        let v = self.variations(lo) as isize - self.variations(hi) as isize;
        let at_hi = !matches!(hi, Point::PosInf | Point::NegInf)
            && self.seq[0].sign_at(hi) == Ordering::Equal;
        (v - at_hi as isize).max(0) as usize
    }
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`;
/// `None` stands for an infinite endpoint.
pub fn sturm_count(
    p: &IntPoly,
    lo: Option<&BigRational>,
    hi: Option<&BigRational>,
) -> Result<usize> {
    let s = Sturm::new(p)?;
    let lo = lo.map_or(Point::NegInf, Point::Rational);
    let hi = hi.map_or(Point::PosInf, Point::Rational);
    Ok(s.count(&lo, &hi))
}

pub fn is_totally_real(p: &IntPoly) -> Result<bool> {
    let s = Sturm::new(p)?;
    Ok(s.count(&Point::NegInf, &Point::PosInf) == s.poly().degree())
}

/// Power of two strictly exceeding the absolute value of every real root.
pub fn root_bound(p: &IntPoly) -> BigInt {
    let lc = p.leading().abs();
    let max = p
        .coeffs()
        .iter()
        .take(p.degree())
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // Cauchy: |r| < 1 + max|a_i| / |a_n|.
    let bound = BigInt::one() + (max + &lc - BigInt::one()) / lc;
    let mut b = BigInt::one();
    while b <= bound {
        b <<= 1;
    }
    b
}

/// A root of a square-free polynomial pinned to a dyadic interval.
#[derive(Clone, Debug)]
pub(crate) struct DyadicRoot {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

/// Isolate the distinct real roots of the square-free polynomial behind `s`.
pub(crate) fn isolate_dyadic(s: &Sturm) -> Vec<DyadicRoot> {
    let p = s.poly();
    let b = root_bound(p);
    let mut out = Vec::new();
    let lo = Dyadic::from_int(-b.clone());
    let hi = Dyadic::from_int(b);
    let total = s.count(&Point::Dyadic(&lo), &Point::Dyadic(&hi));
    let mut stack = vec![(lo, hi, total)];
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1
            && p.sign_at_dyadic(&lo) != Ordering::Equal
            && p.sign_at_dyadic(&hi) != Ordering::Equal
        {
            out.push(DyadicRoot { lo, hi });
            continue;
        }
        let mid = Dyadic::midpoint(&lo, &hi);
        let mp = Point::Dyadic(&mid);
        let left = s.count(&Point::Dyadic(&lo), &mp);
        let right = s.count(&mp, &Point::Dyadic(&hi));
        if p.sign_at_dyadic(&mid) == Ordering::Equal {
            out.push(DyadicRoot {
                lo: mid.clone(),
                hi: mid.clone(),
            });
        }
        stack.push((mid.clone(), hi, right));
        stack.push((lo, mid, left));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Distinct real roots of `p` in increasing order with their multiplicities.
pub fn isolate_roots(p: &IntPoly) -> Result<Vec<(RationalInterval, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let s = Sturm::new(p)?;
    let roots = isolate_dyadic(&s);
    let parts = p.square_free_decomposition();
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let mult = parts
            .iter()
            .find(|(q, _)| vanishes_in(q, &r))
            .map(|(_, k)| *k)
            .expect("every root belongs to one square-free factor");
        out.push((
            RationalInterval {
                lo: r.lo.to_rational(),
                hi: r.hi.to_rational(),
            },
            mult,
        ));
    }
    Ok(out)
}

/// Whether the square-free `q` has a root in the isolating interval of a
/// root of a multiple of `q`.
fn vanishes_in(q: &IntPoly, r: &DyadicRoot) -> bool {
    if r.lo == r.hi {
        return q.sign_at_dyadic(&r.lo) == Ordering::Equal;
    }
    let a = q.sign_at_dyadic(&r.lo);
    let b = q.sign_at_dyadic(&r.hi);
    a != b && a != Ordering::Equal && b != Ordering::Equal
}

/// Bisect an isolating interval of the square-free `p` until its width is
/// at most `width` (or it collapses to an exact root).
pub fn refine(p: &IntPoly, iv: &mut RationalInterval, width: &BigRational) {
    if iv.is_point() {
        return;
    }
    let slo = p.sign_at_rational(&iv.lo);
    while !iv.is_point() && iv.width() > *width {
        let mid = iv.midpoint();
        let sm = p.sign_at_rational(&mid);
        if sm == Ordering::Equal {
            *iv = RationalInterval::point(mid);
        } else if sm == slo {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
}

/// Whether `f` interlaces `g`: with roots `λ` of `f` and `μ` of `g` taken
/// with multiplicity, `μ_0 ≤ λ_1 ≤ μ_1 ≤ … ≤ λ_δ ≤ μ_δ`.
pub fn interlaces(f: &IntPoly, g: &IntPoly) -> Result<bool> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.degree() != f.degree() + 1 {
        return Err(Error::DegreeMismatch {
            expected: f.degree() + 1,
            found: g.degree(),
        });
    }
    if !is_totally_real(f)? || !is_totally_real(g)? {
        return Err(Error::NotTotallyReal("interlacing needs real roots".into()));
    }
    // Count roots up to and including each distinct root t of f·g; the
    // relation holds iff N_f(≤t) ≤ N_g(≤t) ≤ N_f(≤t) + 1 everywhere.
    let fg = f * g;
    let s = Sturm::new(&fg)?;
    let roots = isolate_dyadic(&s);
    let fparts = f.square_free_decomposition();
    let gparts = g.square_free_decomposition();
    let mult = |parts: &[(IntPoly, usize)], r: &DyadicRoot| -> usize {
        parts
            .iter()
            .find(|(q, _)| vanishes_in(q, r))
            .map_or(0, |(_, k)| *k)
    };
    let (mut nf, mut ng) = (0usize, 0usize);
    for r in &roots {
        nf += mult(&fparts, r);
        ng += mult(&gparts, r);
        if nf > ng || ng > nf + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Factorization over ℤ of a monic totally real polynomial into monic
/// irreducible factors, ordered by their smallest root.
///
/// Each square-free part is split by testing, smallest degree first, the
/// integer polynomials whose roots are a subset of its (approximated) roots.
pub fn factor_totally_real(p: &IntPoly) -> Result<FactoredPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_totally_real(p)? {
        return Err(Error::NotTotallyReal(p.to_string()));
    }
    let mut found: Vec<(IntPoly, usize, f64)> = Vec::new();
    for (part, k) in p.square_free_decomposition() {
        if part.degree() == 0 {
            continue;
        }
        for (q, least) in split_square_free(&part)? {
            found.push((q, k, least));
        }
    }
    found.sort_by(|a, b| a.2.total_cmp(&b.2));
    FactoredPoly::new(found.into_iter().map(|(q, k, _)| (q, k)).collect())
}

fn split_square_free(p: &IntPoly) -> Result<Vec<(IntPoly, f64)>> {
    let s = Sturm::new(p)?;
    let width = Dyadic::new(BigInt::one(), 48);
    let mut roots: Vec<f64> = isolate_dyadic(&s)
        .into_iter()
        .map(|mut r| {
            let slo = p.sign_at_dyadic(&r.lo);
            while r.lo != r.hi && r.hi.sub(&r.lo) > width {
                let mid = Dyadic::midpoint(&r.lo, &r.hi);
                match p.sign_at_dyadic(&mid) {
                    Ordering::Equal => {
                        r.lo = mid.clone();
                        r.hi = mid;
                    }
                    sm if sm == slo => r.lo = mid,
                    _ => r.hi = mid,
                }
            }
            approx(&Dyadic::midpoint(&r.lo, &r.hi))
        })
        .collect();
    let mut rest = p.clone();
    let mut out = Vec::new();
    let mut k = 1;
    while 2 * k <= roots.len() {
        match find_factor(&rest, &roots, k) {
            Some((q, used)) => {
                out.push((q.clone(), roots[used[0]]));
                rest = rest.exact_div(&q)?;
                roots = roots
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !used.contains(i))
                    .map(|(_, &r)| r)
                    .collect();
            }
            None => k += 1,
        }
    }
    if rest.degree() > 0 {
        out.push((rest, roots[0]));
    }
    Ok(out)
}

fn approx(x: &Dyadic) -> f64 {
    let r = x.to_rational();
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// A monic integer factor of `p` whose roots are `k` of `roots`.
fn find_factor(p: &IntPoly, roots: &[f64], k: usize) -> Option<(IntPoly, Vec<usize>)> {
    let n = roots.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let sum: f64 = idx.iter().map(|&i| roots[i]).sum();
        if (sum - sum.round()).abs() < 1e-6 {
            let mut q = vec![1.0f64];
            for &i in &idx {
                let mut next = vec![0.0; q.len() + 1];
                for (j, c) in q.iter().enumerate() {
                    next[j] += c;
                    next[j + 1] -= c * roots[i];
                }
                q = next;
            }
            let desc: Vec<BigInt> = q.iter().map(|c| BigInt::from(c.round() as i128)).collect();
            let cand = IntPoly::new(desc.into_iter().rev().collect());
            if p.exact_div(&cand).is_ok() {
                return Some((cand, idx));
            }
        }
        // Next k-subset in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_desc_i64s(desc)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(sturm_count(&p(&[1, 0, -2]), Some(&q(0)), Some(&q(2))).unwrap(), 1);
        assert_eq!(sturm_count(&p(&[1, -18, 93, -128]), None, None).unwrap(), 3);
        assert_eq!(sturm_count(&p(&[1, -10, 25]), Some(&q(4)), Some(&q(6))).unwrap(), 1);
        // Open interval excludes endpoints.
        assert_eq!(sturm_count(&p(&[1, -1]), Some(&q(1)), Some(&q(2))).unwrap(), 0);
        assert_eq!(sturm_count(&p(&[1, -1]), Some(&q(0)), Some(&q(1))).unwrap(), 0);
        assert!(sturm_count(&IntPoly::zero(), None, None).is_err());
    }

    #[test]
    fn total_reality() {
        assert!(is_totally_real(&p(&[1, 0, -2])).unwrap());
        assert!(!is_totally_real(&p(&[1, 0, 1])).unwrap());
        assert!(is_totally_real(&p(&[1, -18, 112, -288, 256])).unwrap());
    }

    #[test]
    fn isolation_with_multiplicities() {
        let f = &p(&[1, -5]).pow(2) * &p(&[1, 5]);
        let roots = isolate_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].1, 1);
        assert_eq!(roots[1].1, 2);
        assert!(roots[0].0.hi < roots[1].0.lo || roots[0].0.hi <= roots[1].0.lo);
        let r57 = isolate_roots(&p(&[1, 0, -57])).unwrap();
        assert_eq!(r57.len(), 2);
        assert!(r57[0].0.hi <= q(0) && r57[1].0.lo >= q(0));
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[1, -1]), &p(&[1, 0, -2])).unwrap());
        assert!(interlaces(&p(&[1, -5]), &p(&[1, -10, 25])).unwrap());
        assert!(!interlaces(&p(&[1, -3]), &p(&[1, -3, 2])).unwrap());
        assert!(interlaces(&p(&[1, 0, 0]), &p(&[1, 0, 0, 0])).unwrap());
        assert!(interlaces(&p(&[1, -1]), &p(&[1, -2, 1])).unwrap());
        assert!(interlaces(&p(&[1, -3, 2]), &p(&[1, -6, 11, -6])).unwrap());
        assert!(interlaces(&p(&[1, -4, 4]), &p(&[1, -6, 11, -6])).unwrap());
        assert!(!interlaces(&p(&[1, -2, 1]), &p(&[1, -6, 11, -6])).unwrap());
        assert!(interlaces(&p(&[1, 0]), &p(&[1, 0, -1])).is_ok());
        assert!(interlaces(&p(&[1, 0]), &p(&[1, 0, 0, -1])).is_err());
    }
}
