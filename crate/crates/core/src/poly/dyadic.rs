use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{sign_of, IntPoly};

/// A dyadic rational `num / 2^exp`.
///
/// Bisection only ever produces dyadic endpoints, so keeping them in this
/// form avoids gcd normalisation on every step.
#[derive(Clone, Debug)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Self {
        Dyadic { num, exp }.normalized()
    }

    pub fn from_int(v: BigInt) -> Self {
        Dyadic { num: v, exp: 0 }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.exp = 0;
            return self;
        }
        while self.exp > 0 && self.num.is_even() {
            self.num >>= 1u32;
            self.exp -= 1;
        }
        self
    }

    /// Numerator when written over `2^exp` for `exp >= self.exp`.
    pub fn scaled_num(&self, exp: u32) -> BigInt {
        debug_assert!(exp >= self.exp);
        &self.num << (exp - self.exp) as usize
    }

    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let e = a.exp.max(b.exp);
        Dyadic::new(a.scaled_num(e) + b.scaled_num(e), e + 1)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp as usize)
    }

    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&(BigInt::one() << self.exp as usize))
    }

    pub fn ceil(&self) -> BigInt {
        -((-&self.num).div_floor(&(BigInt::one() << self.exp as usize)))
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// `hi - lo` as a dyadic.
    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let e = self.exp.max(other.exp);
        Dyadic::new(self.scaled_num(e) - other.scaled_num(e), e)
    }

    /// Closest dyadic with exponent at most `exp` below (or equal to) `r`.
    pub fn floor_of_rational(r: &BigRational, exp: u32) -> Dyadic {
        let scaled = r * BigRational::from_integer(BigInt::one() << exp as usize);
        Dyadic::new(scaled.floor().to_integer(), exp)
    }

    pub fn ceil_of_rational(r: &BigRational, exp: u32) -> Dyadic {
        let scaled = r * BigRational::from_integer(BigInt::one() << exp as usize);
        Dyadic::new(scaled.ceil().to_integer(), exp)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled_num(e).cmp(&other.scaled_num(e))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl IntPoly {
    /// `2^(exp·deg) · p(num / 2^exp)`, an integer with the sign of `p(x)`.
    pub fn eval_dyadic_scaled(&self, x: &Dyadic) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, c) in self.coeffs().iter().rev().enumerate() {
            acc = acc * &x.num + (c << (x.exp as usize * i));
        }
        acc
    }

    pub fn sign_at_dyadic(&self, x: &Dyadic) -> Ordering {
        sign_of(&self.eval_dyadic_scaled(x))
    }

    /// Enclosure of `p` over the closed interval `[lo, hi]` as a pair of
    /// dyadics, using a Taylor expansion about the midpoint. The overestimate
    /// shrinks quadratically near critical points of `p`.
    pub fn enclose(&self, lo: &Dyadic, hi: &Dyadic) -> (Dyadic, Dyadic) {
        if self.is_zero() {
            return (Dyadic::from_int(BigInt::zero()), Dyadic::from_int(BigInt::zero()));
        }
        let d = self.degree();
        let k = lo.exp.max(hi.exp) + 1;
        let centre = lo.scaled_num(k - 1) + hi.scaled_num(k - 1);
        let radius = hi.scaled_num(k - 1) - lo.scaled_num(k - 1);
        // P(z) = 2^(k·d) p(z / 2^k), shifted so that G(y) = P(centre + y).
        let scaled: Vec<BigInt> = self
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c << (k as usize * (d - i)))
            .collect();
        let g = taylor_shift(&scaled, &centre);
        let mut err = BigInt::zero();
        let mut rpow = BigInt::one();
        for gi in g.iter().skip(1) {
            rpow *= &radius;
            err += num_traits::Signed::abs(gi) * &rpow;
        }
        let e = k * d as u32;
        (
            Dyadic::new(&g[0] - &err, e),
            Dyadic::new(&g[0] + &err, e),
        )
    }
}

/// Coefficients of `p(x + t)` from ascending coefficients of `p`.
pub(crate) fn taylor_shift(coeffs: &[BigInt], t: &BigInt) -> Vec<BigInt> {
    let mut a = coeffs.to_vec();
    let n = a.len();
    if t.is_zero() {
        return a;
    }
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let hi = a[j + 1].clone();
            a[j] += t * hi;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(n: i64, e: u32) -> Dyadic {
        Dyadic::new(BigInt::from(n), e)
    }

    #[test]
    fn ordering_and_rounding() {
        assert!(dy(3, 2) < dy(1, 0));
        assert_eq!(dy(4, 2), dy(1, 0));
        assert_eq!(dy(-3, 1).floor(), BigInt::from(-2));
        assert_eq!(dy(-3, 1).ceil(), BigInt::from(-1));
        assert_eq!(dy(5, 1).floor(), BigInt::from(2));
        assert_eq!(Dyadic::midpoint(&dy(1, 0), &dy(2, 0)), dy(3, 1));
    }

    #[test]
    fn taylor_shift_matches_substitution() {
        let p = IntPoly::from_i64s(&[1, 2, 3]);
        let shifted = taylor_shift(p.coeffs(), &BigInt::from(2));
        let q = IntPoly::new(shifted);
        assert_eq!(q, p.shift(&BigInt::from(-2)));
    }

    #[test]
    fn enclosure_contains_values() {
        let p = IntPoly::from_desc_i64s(&[1, -18, 93, -128]);
        let (lo, hi) = (dy(5, 1), dy(13, 2));
        let (elo, ehi) = p.enclose(&lo, &hi);
        for x in [dy(5, 1), dy(11, 2), dy(23, 3), dy(13, 2)] {
            let v = p.eval_rational(&x.to_rational());
            assert!(elo.to_rational() <= v && v <= ehi.to_rational());
        }
    }
}
