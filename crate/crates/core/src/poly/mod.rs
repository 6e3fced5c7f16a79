//! Dense univariate polynomials, generic over the coefficient ring, plus the
//! integer-specific operations (content, exact division, gcd, square-free
//! decomposition) the rest of the crate leans on.

mod dyadic;
mod factored;
mod parse;
mod ring;
pub mod roots;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use dyadic::Dyadic;
pub use factored::FactoredPoly;
pub use ring::{Field, Ring};

/// Dense polynomial with coefficients in ascending powers of `x`.
///
/// The coefficient vector never carries trailing zeros; the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![T::zero(), T::one()] }
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `x - r`.
    pub fn linear_root(r: T) -> Self {
        Poly::new(vec![-r, T::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the last nonzero coefficient; 0 for constants and for zero.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient `a_i` in the descending convention `p = Σ a_i x^{deg-i}`.
    pub fn desc(&self, i: usize) -> T {
        if i > self.degree() {
            T::zero()
        } else {
            self.coeff(self.degree() - i)
        }
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_i64(i as i64))
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, s: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(x - t)`.
    pub fn shift(&self, t: &T) -> Self {
        let lin = Poly::linear_root(t.clone());
        self.compose(&lin)
    }

    /// `p(q(x))` by Horner's rule.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Product of `(x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a T>) -> Self
    where
        T: 'a,
    {
        roots
            .into_iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::linear_root(r.clone()))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Poly<T> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree();
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        if self.is_zero() || self.degree() < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c.clone() / lc.clone()).collect())
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<'a, T: Ring> Add<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &'a Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, T: Ring> Sub<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &'a Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, T: Ring> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Ring> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        &self + &rhs
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        &self - &rhs
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

/// Integer polynomials: the currency of the whole crate.
pub type IntPoly = Poly<BigInt>;
/// Rational polynomials, used for exact field-style division and root work.
pub type RatPoly = Poly<BigRational>;

impl IntPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Build from descending coefficients `a_0 x^n + a_1 x^{n-1} + …`.
    pub fn from_desc_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    /// Descending coefficient vector `(a_0, …, a_n)`.
    pub fn desc_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Poly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn to_rational(&self) -> RatPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Clear denominators of a rational polynomial and return the primitive
    /// integer polynomial with positive leading coefficient.
    pub fn from_rational_primitive(p: &RatPoly) -> Self {
        let den = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Poly::new(
            p.coeffs()
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// Exact quotient `self / q` over the integers, or an error when `q`
    /// does not divide `self` in ℤ[x].
    pub fn exact_div(&self, q: &Self) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InexactDivision("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        if self.degree() < q.degree() {
            return Err(Error::InexactDivision(format!("{} by {}", self, q)));
        }
        let dq = q.degree();
        let lc = q.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dq + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dq];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("{} by {}", self, q)));
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                rem[k + j] -= &c * qc;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("{} by {}", self, q)));
        }
        Ok(Poly::new(quot))
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) · a mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        if self.is_zero() || self.degree() < d.degree() {
            return self.clone();
        }
        let dd = d.degree();
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        let mut top = rem.len() - 1;
        let steps = self.degree() - dd + 1;
        for _ in 0..steps {
            let t = rem[top].clone();
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            if !t.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[top - dd + j] -= &t * dc;
                }
            }
            if top == 0 {
                break;
            }
            top -= 1;
        }
        rem.truncate(dd);
        Poly::new(rem)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Radical: the primitive square-free part with the same roots.
    pub fn square_free_part(&self) -> Self {
        if self.is_zero() || self.degree() == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .exact_div(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }

    /// Square-free decomposition: pairs `(s_i, i)` with every `s_i`
    /// primitive, square-free, pairwise coprime and nonconstant, such that
    /// `self` equals `Π s_i^i` up to a constant factor.
    pub fn square_free_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        let mut rest = self.primitive_part();
        let mut k = 1;
        while rest.degree() > 0 {
            // Factors of multiplicity >= k are exactly the radical of `rest`.
            let rad = rest.square_free_part();
            let next = rest.exact_div(&rad).expect("radical divides").primitive_part();
            let rad_next = next.square_free_part();
            let exact_k = rad.exact_div(&rad_next).expect("nested radicals").primitive_part();
            if exact_k.degree() > 0 {
                out.push((exact_k, k));
            }
            rest = next;
            k += 1;
        }
        out
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.eval(x)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(x)` for rational `x`, evaluated without building fractions.
    pub fn sign_at_rational(&self, x: &BigRational) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        // p(a/b) * b^d = Σ c_i a^i b^(d-i), b > 0.
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        sign_of(&acc)
    }

    /// Multiply every coefficient by `2^(k·i)`, i.e. `p(2^k x)`.
    pub fn scale_var_pow2(&self, k: u32) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c << (k as usize * i))
                .collect(),
        )
    }

    /// Lexicographic comparison on (degree, descending coefficients).
    pub fn cmp_desc(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.desc_coeffs().cmp(&other.desc_coeffs()))
    }

    /// Reduce every coefficient into `[0, m)`.
    pub fn residues(&self, m: &BigInt) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.mod_floor(m)).collect()
    }
}

pub(crate) fn sign_of(x: &BigInt) -> Ordering {
    match x.sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", i)?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coeffs: Vec<String>,
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_desc_i64s(desc)
    }

    #[test]
    fn derivative_matches_toy_example() {
        let f = p(&[1, -18, 112, 0, 0]);
        assert_eq!(f.derivative(), p(&[4, -54, 224, 0]));
        assert!(p(&[5]).derivative().is_zero());
        assert_eq!(IntPoly::x().derivative(), p(&[1]));
    }

    #[test]
    fn content_and_exact_division() {
        assert_eq!(p(&[4, -6, 8]).content(), BigInt::from(2));
        assert_eq!(p(&[1, 0, -1]).exact_div(&p(&[1, -1])).unwrap(), p(&[1, 1]));
        assert!(p(&[1, 0, 1]).exact_div(&p(&[1, -1])).is_err());
        assert!(p(&[1, 2]).exact_div(&p(&[2, 1])).is_err());
    }

    #[test]
    fn shift_is_substitution() {
        // (x-1)^2 shifted by 2 is (x-3)^2.
        let q = p(&[1, -2, 1]).shift(&BigInt::from(2));
        assert_eq!(q, p(&[1, -6, 9]));
    }

    #[test]
    fn square_free_decomposition_of_product() {
        let a = p(&[1, 5]);
        let b = p(&[1, -5]);
        let c = p(&[1, 0, -2]);
        let f = &(&a.pow(3) * &b.pow(2)) * &c;
        let mut dec = f.square_free_decomposition();
        dec.sort_by_key(|(_, k)| *k);
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (c, 1));
        assert_eq!(dec[1], (b, 2));
        assert_eq!(dec[2], (a, 3));
    }

    #[test]
    fn gcd_and_radical() {
        let f = &p(&[1, 5]).pow(2) * &p(&[1, -1]);
        assert_eq!(f.square_free_part(), &p(&[1, 5]) * &p(&[1, -1]));
        assert_eq!(f.gcd(&p(&[1, 5])), p(&[1, 5]));
    }

    #[test]
    fn sign_at_rational_matches_evaluation() {
        let f = p(&[2, -3, 0, 7]);
        for (n, d) in [(1, 2), (-7, 3), (5, 1), (0, 1), (13, 8)] {
            let x = BigRational::new(BigInt::from(n), BigInt::from(d));
            let v = f.eval_rational(&x);
            let expect = v.cmp(&BigRational::zero());
            assert_eq!(f.sign_at_rational(&x), expect, "at {}/{}", n, d);
        }
    }

    #[test]
    fn display_and_json() {
        let f = p(&[1, -18, 112, -288, 256]);
        assert_eq!(f.to_string(), "x^4 - 18x^3 + 112x^2 - 288x + 256");
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"{"coeffs":["256","-288","112","-18","1"]}"#);
        let back: IntPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }
}
