//! Real algebraic numbers and exact arithmetic in `ℚ[x]/(p)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::roots::{isolate_roots, sturm_count};
use crate::{IntPoly, RatPoly};

pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Power sums `s_0, …, s_k` of the roots of `p` (with multiplicity).
pub(crate) fn power_sums(p: &RatPoly, k: usize) -> Vec<BigRational> {
    let p = p.monic();
    let d = p.degree();
    let c: Vec<BigRational> = (0..=d).map(|i| p.desc(i)).collect();
    let mut s = vec![rat(d as i64)];
    for m in 1..=k {
        let mut acc = BigRational::zero();
        for i in 1..m.min(d + 1) {
            acc += &c[i] * &s[m - i];
        }
        if m <= d {
            acc += &c[m] * rat(m as i64);
        }
        s.push(-acc);
    }
    s
}

/// Monic polynomial of degree `d` whose roots have power sums `s[1..=d]`.
pub(crate) fn from_power_sums(s: &[BigRational], d: usize) -> RatPoly {
    let mut e = vec![BigRational::one()];
    for k in 1..=d {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &s[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / rat(k as i64));
    }
    // x^d - e1 x^{d-1} + e2 x^{d-2} - …
    RatPoly::new(
        (0..=d)
            .map(|i| {
                let k = d - i;
                if k % 2 == 1 {
                    -e[k].clone()
                } else {
                    e[k].clone()
                }
            })
            .collect(),
    )
}

/// `Σ r(λ)` over the roots `λ` of the polynomial with power sums `sums`.
pub(crate) fn trace(r: &RatPoly, sums: &[BigRational]) -> BigRational {
    r.coeffs()
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (i, c)| acc + c * &sums[i])
}

/// Inverse of `a` modulo the square-free `p`.
pub(crate) fn inverse_mod(a: &RatPoly, p: &RatPoly) -> Result<RatPoly> {
    // Extended Euclid tracking only the coefficient of `a`.
    let (mut r0, mut r1) = (p.clone(), a.div_rem(p).1);
    let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if r0.degree() != 0 {
        return Err(Error::Invalid(format!("{:?} is not invertible modulo {:?}", a, p)));
    }
    let inv = r0.leading();
    Ok(t0.scale(&(BigRational::one() / inv)).div_rem(p).1)
}

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Enclosure of `√x` over the nonnegative part of the interval, with
    /// endpoints on the grid `2^-bits`.
    pub fn sqrt(&self, bits: u32) -> Interval {
        let scale = BigInt::one() << (2 * bits as usize);
        let unit = BigRational::from_integer(BigInt::one() << bits as usize);
        let lo = if self.lo.is_positive() {
            (&self.lo * BigRational::from_integer(scale.clone())).floor().to_integer().sqrt()
        } else {
            BigInt::zero()
        };
        let hi = if self.hi.is_positive() {
            (&self.hi * BigRational::from_integer(scale)).ceil().to_integer().sqrt() + 1
        } else {
            BigInt::zero()
        };
        Interval {
            lo: BigRational::from_integer(lo) / &unit,
            hi: BigRational::from_integer(hi) / unit,
        }
    }

    /// Integers in the interval.
    pub fn integers(&self) -> Vec<BigInt> {
        let first = self.lo.ceil().to_integer();
        let last = self.hi.floor().to_integer();
        let mut out = Vec::new();
        let mut k = first;
        while k <= last {
            out.push(k.clone());
            k += 1;
        }
        out
    }
}

/// Enclosure of `r` over `[iv.lo, iv.hi]` from a Taylor expansion about the
/// midpoint.
pub(crate) fn enclose(r: &RatPoly, iv: &Interval) -> Interval {
    if iv.lo == iv.hi {
        return Interval::point(r.eval(&iv.lo));
    }
    let mid = (&iv.lo + &iv.hi) / rat(2);
    let rho = (&iv.hi - &iv.lo) / rat(2);
    let g = r.shift(&-mid);
    let mut err = BigRational::zero();
    let mut pw = BigRational::one();
    for c in g.coeffs().iter().skip(1) {
        pw *= &rho;
        err += c.abs() * &pw;
    }
    let c0 = g.coeff(0);
    Interval {
        lo: &c0 - &err,
        hi: c0 + err,
    }
}

/// A real algebraic number: a root of the primitive irreducible integer
/// polynomial `minpoly`, pinned to an interval. For rationals `lo == hi`
/// is the number itself; otherwise the open interval `(lo, hi)` contains
/// exactly one root and its endpoints are not roots.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    minpoly: IntPoly,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicReal {
    pub fn rational(q: BigRational) -> Self {
        let minpoly = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        AlgebraicReal {
            minpoly,
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn integer(v: i64) -> Self {
        AlgebraicReal::rational(rat(v))
    }

    /// The `index`-th smallest real root of the irreducible `p`.
    pub fn root_of(p: &IntPoly, index: usize) -> Result<Self> {
        let p = p.primitive_part();
        if p.degree() == 0 {
            return Err(Error::Invalid("constant polynomial has no roots".into()));
        }
        if p.degree() == 1 && index == 0 {
            return Ok(AlgebraicReal::rational(BigRational::new(-p.coeff(0), p.coeff(1))));
        }
        let roots = isolate_roots(&p)?;
        let (iv, _) = roots.get(index).ok_or_else(|| {
            Error::Invalid(format!("{} has only {} real roots", p, roots.len()))
        })?;
        if iv.is_point() {
            return Err(Error::Invalid(format!("{} is not irreducible", p)));
        }
        Ok(AlgebraicReal {
            minpoly: p,
            lo: iv.lo.clone(),
            hi: iv.hi.clone(),
        })
    }

    /// All real roots of the irreducible `p`, in increasing order.
    pub fn roots_of(p: &IntPoly) -> Result<Vec<Self>> {
        let n = isolate_roots(p)?.len();
        (0..n).map(|i| AlgebraicReal::root_of(p, i)).collect()
    }

    /// `r(λ)` for `λ` a root of the irreducible integer polynomial `p`.
    pub fn in_field(p: &IntPoly, lambda: &AlgebraicReal, r: &RatPoly) -> Result<Self> {
        let pr = p.to_rational();
        let r = r.div_rem(&pr).1;
        if let Some(q) = lambda.to_rational() {
            return Ok(AlgebraicReal::rational(r.eval(&q)));
        }
        let d = p.degree();
        let sums = power_sums(&pr, d);
        let mut power = RatPoly::one();
        let mut traces = vec![rat(d as i64)];
        for _ in 0..d {
            power = (&power * &r).div_rem(&pr).1;
            traces.push(trace(&power, &sums));
        }
        let charpoly = from_power_sums(&traces, d);
        let minpoly = IntPoly::from_rational_primitive(&charpoly).square_free_part();
        if minpoly.degree() == 1 {
            let q = BigRational::new(-minpoly.coeff(0), minpoly.coeff(1));
            return Ok(AlgebraicReal::rational(q));
        }
        let mut lam = lambda.clone();
        loop {
            let e = enclose(&r, &lam.interval());
            if sturm_count(&minpoly, Some(&e.lo), Some(&e.hi))? == 1 {
                return Ok(AlgebraicReal {
                    minpoly,
                    lo: e.lo,
                    hi: e.hi,
                });
            }
            lam.refine();
        }
    }

    /// `sign · √q` for a nonnegative rational `q`.
    pub fn signed_sqrt(sign: Ordering, q: &BigRational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Invalid(format!("square root of negative {}", q)));
        }
        let (a, b) = (q.numer() * q.denom(), q.denom().clone());
        // √q = √(a) / b
        let r = a.sqrt();
        let neg = sign == Ordering::Less;
        if &r * &r == a {
            let v = BigRational::new(r, b);
            return Ok(AlgebraicReal::rational(if neg { -v } else { v }));
        }
        // b²x² - a, roots ±√a/b.
        let minpoly = IntPoly::new(vec![-a, BigInt::zero(), &b * &b]).primitive_part();
        let lo = BigRational::new(r.clone(), b.clone());
        let hi = BigRational::new(r + 1, b);
        Ok(if neg {
            AlgebraicReal { minpoly, lo: -hi, hi: -lo }
        } else {
            AlgebraicReal { minpoly, lo, hi }
        })
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    /// Endpoints of the isolating interval (equal for rationals).
    pub fn bounds(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub(crate) fn interval(&self) -> Interval {
        Interval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        (self.lo == self.hi).then(|| self.lo.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_zero())
    }

    /// Halve the isolating interval.
    pub fn refine(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / rat(2);
        let slo = self.minpoly.sign_at_rational(&self.lo);
        if self.minpoly.sign_at_rational(&mid) == slo {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Refine until the interval is no wider than `width`.
    pub fn refine_to(&mut self, width: &BigRational) {
        while &self.hi - &self.lo > *width {
            self.refine();
        }
    }

    pub fn sign(&self) -> Ordering {
        let mut x = self.clone();
        loop {
            if x.lo.is_positive() {
                return Ordering::Greater;
            }
            if x.hi.is_negative() {
                return Ordering::Less;
            }
            if x.lo == x.hi {
                return Ordering::Equal;
            }
            // An irrational number is never zero, so this terminates.
            x.refine();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut x = self.clone();
        let w = BigRational::new(BigInt::one(), BigInt::one() << 60usize);
        x.refine_to(&(w * (x.lo.abs() + BigRational::one())));
        ((&x.lo + &x.hi) / rat(2)).to_f64().unwrap_or(f64::NAN)
    }

    /// Number of real roots of the minimal polynomial below this one.
    fn root_index(&self) -> usize {
        sturm_count(&self.minpoly, None, Some(&self.lo)).expect("nonzero minimal polynomial")
    }

    fn quadratic_form(&self) -> Option<String> {
        if self.degree() != 2 {
            return None;
        }
        let (a, b, c) = (self.minpoly.coeff(2), self.minpoly.coeff(1), self.minpoly.coeff(0));
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        let (mut s, mut core) = (BigInt::one(), disc);
        let mut p = BigInt::from(2);
        while &p * &p <= core && p < BigInt::from(100_000) {
            let p2 = &p * &p;
            while (&core % &p2).is_zero() {
                core /= &p2;
                s *= &p;
            }
            p += 1;
        }
        let centre = BigRational::new(-b.clone(), BigInt::from(2) * &a);
        let mut x = self.clone();
        while x.lo <= centre && x.hi >= centre {
            x.refine();
        }
        let plus = x.lo > centre;
        let (mut u, mut den) = (-b, BigInt::from(2) * a);
        let g = u.gcd(&s).gcd(&den);
        u /= &g;
        s /= &g;
        den /= &g;
        let sign = if plus { "+" } else { "-" };
        let coef = if s.is_one() { String::new() } else { s.to_string() };
        let body = if u.is_zero() {
            format!("{}{}√{}", if plus { "" } else { "-" }, coef, core)
        } else {
            format!("{}{}{}√{}", u, sign, coef, core)
        };
        Some(if den.is_one() {
            body
        } else if u.is_zero() {
            format!("{}/{}", body, den)
        } else {
            format!("({})/{}", body, den)
        })
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        if self.minpoly != other.minpoly {
            return false;
        }
        match (self.to_rational(), other.to_rational()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.root_index() == other.root_index(),
            _ => false,
        }
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            // Distinct numbers separate eventually.
            a.refine();
            b.refine();
        }
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{}", q);
        }
        if let Some(s) = self.quadratic_form() {
            return write!(f, "{}", s);
        }
        write!(f, "root of {} near {:.6e}", self.minpoly, self.to_f64())
    }
}
