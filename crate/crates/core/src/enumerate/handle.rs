//! Lazily refined real roots used inside the enumeration tree.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::Dyadic;
use crate::IntPoly;

/// A real root pinned either exactly or to an open dyadic interval in which
/// `src` has exactly one root, a simple one.
#[derive(Clone, Debug)]
pub(crate) struct Root {
    pub lo: Dyadic,
    pub hi: Dyadic,
    pub exact: bool,
    pub src: Arc<IntPoly>,
    sign_lo: Ordering,
    steps: u32,
}

/// Position of a real number relative to the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum IntPart {
    /// The number is this integer.
    Exact(i128),
    /// The number lies strictly between `k` and `k + 1`.
    Between(i128),
}

impl IntPart {
    /// Smallest integer `>= v`.
    pub fn ceil(self) -> i128 {
        match self {
            IntPart::Exact(k) => k,
            IntPart::Between(k) => k + 1,
        }
    }

    /// Largest integer `<= v`.
    pub fn floor(self) -> i128 {
        match self {
            IntPart::Exact(k) | IntPart::Between(k) => k,
        }
    }

    /// Sign of `c - v` for an integer `c`.
    pub fn cmp_int(self, c: i128) -> Ordering {
        match self {
            IntPart::Exact(k) => c.cmp(&k),
            IntPart::Between(k) => {
                if c <= k {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }
}

pub(crate) fn to_i128(v: &BigInt) -> i128 {
    i128::try_from(v).expect("coefficient bound exceeds 128 bits")
}

impl Root {
    pub fn exact(x: Dyadic, src: Arc<IntPoly>) -> Self {
        Root {
            lo: x.clone(),
            hi: x,
            exact: true,
            src,
            sign_lo: Ordering::Equal,
            steps: 0,
        }
    }

    /// Root of `src` in the open interval `(lo, hi)`; the caller guarantees
    /// it is the only one, it is simple, and neither endpoint is a root.
    pub fn bracketed(lo: Dyadic, hi: Dyadic, src: Arc<IntPoly>) -> Self {
        let sign_lo = src.sign_at_dyadic(&lo);
        debug_assert_ne!(sign_lo, Ordering::Equal);
        debug_assert_eq!(src.sign_at_dyadic(&hi), sign_lo.reverse());
        Root {
            lo,
            hi,
            exact: false,
            src,
            sign_lo,
            steps: 0,
        }
    }

    /// Shrink the interval by at least a quarter, preferring split points
    /// with small denominators so that integer and half-integer roots are
    /// hit exactly.
    pub fn refine(&mut self) {
        if self.exact {
            return;
        }
        self.steps += 1;
        let mid = simple_split(&self.lo, &self.hi);
        match self.src.sign_at_dyadic(&mid) {
            Ordering::Equal => {
                self.lo = mid.clone();
                self.hi = mid;
                self.exact = true;
            }
            s if s == self.sign_lo => self.lo = mid,
            _ => self.hi = mid,
        }
    }

    /// Integer position of `g(root)` for an integer polynomial `g`.
    pub fn int_part_of(&mut self, g: &IntPoly) -> IntPart {
        let mut next_exact_test = self.steps + 4;
        loop {
            if self.exact {
                let scaled = g.eval_dyadic_scaled(&self.lo);
                let v = Dyadic::new(scaled, self.lo.exp() * g.degree() as u32);
                return if v.is_integer() {
                    IntPart::Exact(to_i128(&v.floor()))
                } else {
                    IntPart::Between(to_i128(&v.floor()))
                };
            }
            let (elo, ehi) = g.enclose(&self.lo, &self.hi);
            let fl = elo.floor();
            let fh = ehi.floor();
            if fl == fh && !elo.is_integer() {
                return IntPart::Between(to_i128(&fl));
            }
            if self.steps >= next_exact_test && &fh - &elo.ceil() <= BigInt::zero() {
                // A single integer candidate remains; settle it exactly.
                let k = fh.clone();
                let shifted = g - &IntPoly::constant(k.clone());
                if self.is_root_of(&shifted) {
                    return IntPart::Exact(to_i128(&k));
                }
                next_exact_test = self.steps * 2;
            }
            self.refine();
        }
    }

    /// Whether the root is a zero of `g`.
    pub fn is_root_of(&self, g: &IntPoly) -> bool {
        if g.is_zero() {
            return true;
        }
        if self.exact {
            return g.sign_at_dyadic(&self.lo) == Ordering::Equal;
        }
        let common = self.src.gcd(g);
        if common.degree() == 0 {
            return false;
        }
        let a = common.sign_at_dyadic(&self.lo);
        let b = common.sign_at_dyadic(&self.hi);
        a != b
    }

    /// Refine until `g` has sign `want` at both interval endpoints (or the
    /// root becomes exact). Requires `g(root)` to have sign `want` and the
    /// root to be the only critical point of `g` in the interval.
    pub fn separate(&mut self, g: &IntPoly, want: Ordering) {
        while !self.exact
            && (g.sign_at_dyadic(&self.lo) != want || g.sign_at_dyadic(&self.hi) != want)
        {
            self.refine();
        }
    }
}

/// A dyadic in the middle half of `(lo, hi)` with the smallest possible
/// denominator, nearest the centre.
pub(crate) fn simple_split(lo: &Dyadic, hi: &Dyadic) -> Dyadic {
    let e = lo.exp().max(hi.exp()) + 2;
    let a = lo.scaled_num(e);
    let b = hi.scaled_num(e);
    let w = &b - &a;
    // Middle half in units of 2^-e: [a + w/4, b - w/4]; w is a multiple of 4.
    let q = &w >> 2usize;
    let left = &a + &q;
    let right = &b - &q;
    let centre = &a + &b;
    for k in 0..=e {
        // Multiples of 2^(e-k) units.
        let unit = BigInt::one() << (e - k) as usize;
        let first = ceil_div(&left, &unit);
        let last = floor_div(&right, &unit);
        if first <= last {
            // Candidate m·unit closest to centre/2.
            let target = floor_div(&centre, &(&unit << 1usize));
            let m = if target < first {
                first
            } else if target > last {
                last
            } else {
                target
            };
            return Dyadic::new(m, k);
        }
    }
    Dyadic::midpoint(lo, hi)
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -num_integer::Integer::div_floor(&-a, b)
}
