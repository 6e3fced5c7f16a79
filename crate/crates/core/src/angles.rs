//! Eigenvalue angles of interlacing polynomials, the pairwise compatibility
//! test, and the rank-two eigenvector sign search.
//!
//! For `χ = μ m` and a family member `f`, the squared angle of `f` at a
//! distinct eigenvalue `λ` is `α²(λ) = f(λ) / m'(λ)`. For the simple
//! eigenvalues `λ_1 … λ_l` with `q = m / Π (x - λ_k) ∈ ℤ[x]`, two members
//! `f`, `g` can sit on different coordinates only if
//! `Σ_k ±q(λ_k) α_f(λ_k) α_g(λ_k)` is an integer for some choice of signs.
//!
//! With `W_k = q(λ_k)² α²_f(λ_k) α²_g(λ_k) = h(λ_k)` for one rational
//! polynomial `h`, the numbers `Σ ±√W_k` are the roots of
//! `Φ(X) = Π_ε (X - Σ ε_k √W_k)`, whose power sums follow exactly from the
//! traces `Σ_k W_k^r` through `Σ_ε (Σ ε_k y_k)^{2m} = 2^l (2m)! [t^m] Π_k cosh √(W_k t)`.
//! Integrality is then decided by evaluating `Φ` at the integers inside
//! interval enclosures of each signed sum.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::{enclose, from_power_sums, inverse_mod, power_sums, rat, trace, AlgebraicReal, Interval};
use crate::error::{Error, Result};
use crate::interlace::SpectrumData;
use crate::{IntPoly, RatPoly};

/// Squared angles of `f` at every distinct eigenvalue, in increasing
/// eigenvalue order.
pub fn angles_squared(spectrum: &SpectrumData, f: &IntPoly) -> Result<Vec<AlgebraicReal>> {
    if f.degree() + 1 != spectrum.distinct() {
        return Err(Error::DegreeMismatch {
            expected: spectrum.distinct() - 1,
            found: f.degree(),
        });
    }
    let dm = spectrum.minimal.derivative().to_rational();
    let fr = f.to_rational();
    spectrum
        .eigenvalues
        .iter()
        .map(|ev| {
            let p = &spectrum.factors[ev.factor].0;
            let pr = p.to_rational();
            let r = (&fr * &inverse_mod(&dm, &pr)?).div_rem(&pr).1;
            AlgebraicReal::in_field(p, &ev.value, &r)
        })
        .collect()
}

/// Squared angles of every family member.
#[derive(Clone, Debug)]
pub struct AngleTable {
    pub eigenvalues: Vec<AlgebraicReal>,
    pub rows: Vec<Vec<AlgebraicReal>>,
}

pub fn angle_table(spectrum: &SpectrumData, family: &[IntPoly]) -> Result<AngleTable> {
    Ok(AngleTable {
        eigenvalues: spectrum.eigenvalues.iter().map(|e| e.value.clone()).collect(),
        rows: family
            .iter()
            .map(|f| angles_squared(spectrum, f))
            .collect::<Result<_>>()?,
    })
}

/// The simple eigenvalues of a spectrum and the data shared by the tests
/// built on them.
struct SimplePart {
    /// Product of the irreducible factors of multiplicity one.
    p: RatPoly,
    /// `m / p`.
    q: RatPoly,
    /// `1 / m'` modulo `p`.
    inv_dm: RatPoly,
    /// The simple eigenvalues in increasing order, with the sign of `q` there.
    roots: Vec<(AlgebraicReal, Ordering)>,
}

impl SimplePart {
    fn new(spectrum: &SpectrumData) -> Result<Self> {
        let mut p = IntPoly::one();
        for (f, k) in &spectrum.factors {
            if *k == 1 {
                p = &p * f;
            }
        }
        if p.degree() == 0 {
            return Err(Error::Unsupported("no simple eigenvalue".into()));
        }
        let q = spectrum.minimal.exact_div(&p)?.to_rational();
        let p = p.to_rational();
        let inv_dm = inverse_mod(&spectrum.minimal.derivative().to_rational(), &p)?;
        let roots = spectrum
            .eigenvalues
            .iter()
            .filter(|e| e.multiplicity == 1)
            .map(|e| (e.value.clone(), sign_at(&q, &e.value)))
            .collect();
        Ok(SimplePart { p, q, inv_dm, roots })
    }

    /// `α²` of `f` as a polynomial in the eigenvalue, modulo `p`.
    fn angle_poly(&self, f: &IntPoly) -> RatPoly {
        (&f.to_rational() * &self.inv_dm).div_rem(&self.p).1
    }

    fn reduce(&self, r: &RatPoly) -> RatPoly {
        r.div_rem(&self.p).1
    }
}

/// Sign of `r` at the algebraic number `x`, which must not be a root.
fn sign_at(r: &RatPoly, x: &AlgebraicReal) -> Ordering {
    let mut x = x.clone();
    loop {
        let e = enclose(r, &x.interval());
        if e.lo.is_positive() {
            return Ordering::Greater;
        }
        if e.hi.is_negative() {
            return Ordering::Less;
        }
        if e.lo == e.hi {
            return Ordering::Equal;
        }
        x.refine();
    }
}

/// `Σ_k ε_k s_k √h(λ_k)` over sign patterns `ε`, with `s_k` fixed signs.
struct SignedRoots<'a> {
    h: RatPoly,
    roots: &'a [(AlgebraicReal, Ordering)],
    signs: Vec<Ordering>,
    phi: RatPoly,
}

impl<'a> SignedRoots<'a> {
    fn new(h: RatPoly, p: &RatPoly, roots: &'a [(AlgebraicReal, Ordering)], signs: Vec<Ordering>) -> Self {
        let phi = sign_sum_polynomial(&h, p, roots.len());
        SignedRoots { h, roots, signs, phi }
    }

    fn is_root(&self, m: &BigInt) -> bool {
        self.phi.eval(&BigRational::from_integer(m.clone())).is_zero()
    }

    /// Enclosures of every `√W_k` at precision `bits`.
    fn enclosures(&self, bits: u32) -> Vec<Interval> {
        let width = BigRational::new(BigInt::one(), BigInt::one() << (2 * bits as usize));
        self.roots
            .iter()
            .map(|(lam, _)| {
                let mut lam = lam.clone();
                lam.refine_to(&width);
                enclose(&self.h, &lam.interval()).sqrt(bits)
            })
            .collect()
    }

    /// Enclosure of the sum with pattern `eps` (true = flip).
    fn value(&self, roots: &[Interval], eps: &[bool]) -> Interval {
        let mut acc = Interval::point(BigRational::zero());
        for (k, iv) in roots.iter().enumerate() {
            let neg = (self.signs[k] == Ordering::Less) != eps[k];
            acc = acc.add(&if neg { iv.neg() } else { iv.clone() });
        }
        acc
    }

    fn patterns(&self) -> Vec<Vec<bool>> {
        let l = self.roots.len();
        (0..1u64 << l)
            .map(|mask| (0..l).map(|k| mask >> k & 1 == 1).collect())
            .collect()
    }

    /// Whether the sum with pattern `eps` is an integer, and which.
    fn integer_value(&self, eps: &[bool]) -> Option<BigInt> {
        let all = self.patterns();
        let half = BigRational::new(BigInt::one(), BigInt::from(4));
        let mut bits = 24;
        loop {
            let enc = self.enclosures(bits);
            let mine = self.value(&enc, eps);
            if mine.width() < half || bits > 1024 {
                let m = mine.integers().into_iter().find(|m| self.is_root(m))?;
                // Φ(m) = 0, so some pattern sums to m; check it is this one.
                let target = Interval::point(BigRational::from_integer(m.clone()));
                let mut b = bits;
                loop {
                    let enc = self.enclosures(b);
                    let contains = |iv: &Interval| iv.lo <= target.lo && target.hi <= iv.hi;
                    if !contains(&self.value(&enc, eps)) {
                        return None;
                    }
                    let others = all
                        .iter()
                        .filter(|p| p.as_slice() != eps)
                        .filter(|p| contains(&self.value(&enc, p)))
                        .count();
                    // Patterns still containing `m` at this precision are
                    // taken to be equal to it.
                    if others == 0 || b >= 512 {
                        return Some(m);
                    }
                    b *= 2;
                }
            }
            bits *= 2;
        }
    }
}

/// `Φ(X) = Π_ε (X - Σ_k ε_k √h(λ_k))` over the `l` roots of `p`.
fn sign_sum_polynomial(h: &RatPoly, p: &RatPoly, l: usize) -> RatPoly {
    let half = 1usize << (l - 1);
    let sums = power_sums(p, l.max(h.degree()) * half + 1);
    // Power sums P_r = Σ_k h(λ_k)^r.
    let mut big_p = vec![BigRational::zero()];
    let mut power = RatPoly::one();
    for _ in 1..=half {
        power = (&power * h).div_rem(p).1;
        big_p.push(trace(&power, &sums));
    }
    // log cosh √z = Σ c_r z^r.
    let mut fact = vec![BigRational::one()];
    for i in 1..=2 * half {
        let f = &fact[i - 1] * rat(i as i64);
        fact.push(f);
    }
    let cosh: Vec<BigRational> = (0..=half).map(|e| BigRational::one() / &fact[2 * e]).collect();
    let mut logc = vec![BigRational::zero(); half + 1];
    for nn in 1..=half {
        let mut acc = cosh[nn].clone();
        for k in 1..nn {
            acc -= rat(k as i64) * &logc[k] * &cosh[nn - k] / rat(nn as i64);
        }
        logc[nn] = acc;
    }
    let f: Vec<BigRational> = (0..=half).map(|r| &logc[r] * &big_p[r]).collect();
    let mut e = vec![BigRational::one()];
    for nn in 1..=half {
        let mut acc = BigRational::zero();
        for k in 1..=nn {
            acc += rat(k as i64) * &f[k] * &e[nn - k];
        }
        e.push(acc / rat(nn as i64));
    }
    let deg = 1usize << l;
    let scale = rat(deg as i64);
    let mut s = vec![rat(deg as i64)];
    for j in 1..=deg {
        if j % 2 == 1 {
            s.push(BigRational::zero());
        } else {
            s.push(&scale * &fact[j] * &e[j / 2]);
        }
    }
    from_power_sums(&s, deg)
}

/// Result of the pairwise compatibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compatibility {
    pub compatible: bool,
    /// The integer reached, when compatible.
    pub value: Option<BigInt>,
    /// Signs `ε_k` (over the simple eigenvalues in increasing order,
    /// relative to `q(λ_k) α_f α_g`) reaching it.
    pub signs: Option<Vec<i8>>,
}

/// Whether `f` and `g` may be the characteristic-polynomial quotients of two
/// different principal submatrices of one Seidel matrix with spectrum
/// `spectrum`.
pub fn compatible(spectrum: &SpectrumData, f: &IntPoly, g: &IntPoly) -> Result<Compatibility> {
    let simple = SimplePart::new(spectrum)?;
    let qq = &simple.q * &simple.q;
    let h = simple.reduce(&(&(&qq * &simple.angle_poly(f)) * &simple.angle_poly(g)));
    let signs = simple.roots.iter().map(|(_, s)| *s).collect();
    let sr = SignedRoots::new(h, &simple.p, &simple.roots, signs);
    let l = simple.roots.len();
    // The first sign is fixed; negating every sign preserves integrality.
    for mask in 0..1u64 << (l - 1) {
        let eps: Vec<bool> = (0..l).map(|k| k > 0 && mask >> (k - 1) & 1 == 1).collect();
        if let Some(v) = sr.integer_value(&eps) {
            return Ok(Compatibility {
                compatible: true,
                value: Some(v),
                signs: Some(eps.iter().map(|&e| if e { -1 } else { 1 }).collect()),
            });
        }
    }
    Ok(Compatibility {
        compatible: false,
        value: None,
        signs: None,
    })
}

/// Members of `family` compatible with member `base` (including `base`
/// itself when it is compatible with itself).
pub fn compatible_members(spectrum: &SpectrumData, family: &[IntPoly], base: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, g) in family.iter().enumerate() {
        if compatible(spectrum, &family[base], g)?.compatible {
            out.push(i);
        }
    }
    Ok(out)
}

/// Outcome of [`rank_two_check`].
#[derive(Clone, Debug)]
pub struct RankTwoReport {
    /// Sign distributions examined for the second eigenvector.
    pub assignments: u64,
    /// Those making every entry of `q(S)` an integer.
    pub integral: u64,
    /// Those making the two eigenvectors orthogonal.
    pub orthogonal: u64,
    /// Those doing both; the configuration survives iff this is nonzero.
    pub feasible: u64,
    /// Distinct values of `u·v` over the integral assignments, when every
    /// nonzero `√(α²_a α²_b)` lies in one square class.
    pub defects: Vec<AlgebraicReal>,
    /// Whether every diagonal entry of `q(S)` is an integer.
    pub diagonal_integral: bool,
}

impl RankTwoReport {
    pub fn is_feasible(&self) -> bool {
        self.feasible > 0
    }
}

/// For a spectrum with exactly two simple eigenvalues `λ_a < λ_b` and a
/// configuration (`counts[i]` coordinates with quotient `family[i]`), search
/// the sign patterns of the unit eigenvectors `u` (taken nonnegative) and
/// `v` for one with `u ⊥ v` and `q(S) = q(λ_a) uuᵀ + q(λ_b) vvᵀ` integral.
pub fn rank_two_check(spectrum: &SpectrumData, family: &[IntPoly], counts: &[BigInt]) -> Result<RankTwoReport> {
    let simple = SimplePart::new(spectrum)?;
    if simple.roots.len() != 2 {
        return Err(Error::Unsupported(format!(
            "rank-two check needs exactly two simple eigenvalues, found {}",
            simple.roots.len()
        )));
    }
    if counts.len() != family.len() {
        return Err(Error::LengthMismatch {
            expected: family.len(),
            found: counts.len(),
        });
    }
    let groups: Vec<usize> = (0..family.len()).filter(|&i| counts[i].is_positive()).collect();
    let sizes: Vec<u64> = groups
        .iter()
        .map(|&i| {
            u64::try_from(&counts[i]).map_err(|_| Error::Invalid("configuration count too large".into()))
        })
        .collect::<Result<_>>()?;
    let angle: Vec<RatPoly> = groups.iter().map(|&i| simple.angle_poly(&family[i])).collect();
    let sums = power_sums(&simple.p, 2 * simple.p.degree() + 2 * angle.iter().map(|a| a.degree()).max().unwrap_or(0) + 2);

    // Diagonal entries q(λ_a) α²_a + q(λ_b) α²_b = Σ q α² over both roots.
    let diagonal_integral = angle
        .iter()
        .all(|a| trace(&simple.reduce(&(&simple.q * a)), &sums).is_integer());

    // Orthogonality: u_i v_i = ±√z with z = α²_a α²_b rational.
    let z: Vec<BigRational> = angle
        .iter()
        .map(|a| {
            let t1 = trace(a, &sums);
            let t2 = trace(&simple.reduce(&(a * a)), &sums);
            (&t1 * &t1 - t2) / rat(2)
        })
        .collect();
    let mut class_of: Vec<Option<(usize, BigRational)>> = vec![None; z.len()];
    let mut reps: Vec<BigRational> = Vec::new();
    for (j, zj) in z.iter().enumerate() {
        if zj.is_zero() {
            continue;
        }
        let found = reps.iter().enumerate().find_map(|(c, r)| rational_sqrt(&(zj / r)).map(|s| (c, s)));
        class_of[j] = Some(match found {
            Some(hit) => hit,
            None => {
                reps.push(zj.clone());
                (reps.len() - 1, BigRational::one())
            }
        });
    }

    // Allowed relative signs of v between coordinates of groups j and j'.
    let qq = &simple.q * &simple.q;
    let signs = simple.roots.iter().map(|(_, s)| *s).collect::<Vec<_>>();
    let mut allowed: HashMap<(usize, usize, bool), bool> = HashMap::new();
    let mut allow = |j: usize, jj: usize, flip: bool| -> bool {
        let key = (j.min(jj), j.max(jj), flip);
        *allowed.entry(key).or_insert_with(|| {
            let h = simple.reduce(&(&(&qq * &angle[j]) * &angle[jj]));
            let sr = SignedRoots::new(h, &simple.p, &simple.roots, signs.clone());
            sr.integer_value(&[false, flip]).is_some()
        })
    };

    let mut report = RankTwoReport {
        assignments: 0,
        integral: 0,
        orthogonal: 0,
        feasible: 0,
        defects: Vec::new(),
        diagonal_integral,
    };
    let mut plus = vec![0u64; groups.len()];
    loop {
        report.assignments += 1;
        let minus: Vec<u64> = plus.iter().zip(&sizes).map(|(p, n)| n - p).collect();
        let mut integral = diagonal_integral;
        'pairs: for j in 0..groups.len() {
            for jj in j..groups.len() {
                let (same, diff) = if j == jj {
                    (plus[j] >= 2 || minus[j] >= 2, plus[j] >= 1 && minus[j] >= 1)
                } else {
                    (
                        (plus[j] > 0 && plus[jj] > 0) || (minus[j] > 0 && minus[jj] > 0),
                        (plus[j] > 0 && minus[jj] > 0) || (minus[j] > 0 && plus[jj] > 0),
                    )
                };
                if (same && !allow(j, jj, false)) || (diff && !allow(j, jj, true)) {
                    integral = false;
                    break 'pairs;
                }
            }
        }
        let mut coeff = vec![BigRational::zero(); reps.len()];
        for j in 0..groups.len() {
            if let Some((c, r)) = &class_of[j] {
                coeff[*c] += rat(plus[j] as i64 - minus[j] as i64) * r;
            }
        }
        let orthogonal = coeff.iter().all(|c| c.is_zero());
        report.integral += integral as u64;
        report.orthogonal += orthogonal as u64;
        report.feasible += (integral && orthogonal) as u64;
        if integral && !orthogonal && reps.len() == 1 {
            let c = &coeff[0];
            let d = AlgebraicReal::signed_sqrt(if c.is_negative() { Ordering::Less } else { Ordering::Greater }, &(c * c * &reps[0]))?;
            if !report.defects.contains(&d) {
                report.defects.push(d);
            }
        }
        // Next sign distribution.
        let mut k = 0;
        while k < plus.len() && plus[k] == sizes[k] {
            plus[k] = 0;
            k += 1;
        }
        if k == plus.len() {
            break;
        }
        plus[k] += 1;
    }
    report.defects.sort();
    Ok(report)
}

/// `√x` when `x` is the square of a rational.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (a, b) = (x.numer(), x.denom());
    let (ra, rb) = (a.sqrt(), b.sqrt());
    (&ra * &ra == *a && &rb * &rb == *b).then(|| BigRational::new(ra, rb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interlace::spectrum_of;

    #[test]
    fn sign_sum_polynomial_small() {
        // Roots λ = 1, 4 of p; h = x gives √1 and √4: Φ has roots ±1 ± 2.
        let p = IntPoly::from_desc_i64s(&[1, -5, 4]).to_rational();
        let h = IntPoly::from_desc_i64s(&[1, 0]).to_rational();
        let phi = sign_sum_polynomial(&h, &p, 2);
        let expect = IntPoly::from_desc_i64s(&[1, 0, -10, 0, 9]).to_rational();
        assert_eq!(phi, expect);
    }

    #[test]
    fn angles_sum_to_one() {
        let s = spectrum_of(&"(x+5)^15(x-5)^10(x-7)^2(x^2-11x+16)".parse().unwrap()).unwrap();
        let f: IntPoly = "x^4-18x^3+96x^2-142x+31".parse().unwrap();
        let a = angles_squared(&s, &f).unwrap();
        assert_eq!(a.len(), 5);
        let total: f64 = a.iter().map(|x| x.to_f64()).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
