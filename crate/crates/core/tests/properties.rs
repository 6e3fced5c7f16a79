//! Invariants checked on random inputs and on every small Seidel matrix.

use std::collections::BTreeMap;

use equiangular::angles::{angles_squared, compatible, rank_two_check};
use equiangular::classes::CongruenceClassSet;
use equiangular::feasibility::{find_certificate, verify_certificate, Feasibility, FeasibilitySystem};
use equiangular::interlace::{interlacing_family, spectrum_of, SpectrumData};
use equiangular::modtype::{is_type2, is_weakly_type2};
use equiangular::poly::roots::{factor_totally_real, isolate_roots, sturm_count};
use equiangular::seidel::{enumerate_all_seidel, random_seidel, SeidelMatrix};
use equiangular::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..=20, 1..=max_degree + 1).prop_map(|c| IntPoly::from_i64s(&c))
}

/// Monic polynomial whose `i`-th descending coefficient is a multiple of
/// `2^{i-1}` or `2^i`, so that type-2 and weakly-type-2 inputs are common.
fn lattice_poly() -> impl Strategy<Value = IntPoly> {
    (1usize..=6)
        .prop_flat_map(|deg| prop::collection::vec((-4i64..=4, 0u32..=2), deg))
        .prop_map(|cs| {
            let mut desc = vec![1i64];
            for (i, (k, mode)) in cs.into_iter().enumerate() {
                let i = i as u32 + 1;
                let e = match mode {
                    0 => 0,
                    1 => i - 1,
                    _ => i,
                };
                desc.push(k << e);
            }
            IntPoly::from_desc_i64s(&desc)
        })
}

fn spectrum(m: &SeidelMatrix) -> SpectrumData {
    spectrum_of(&factor_totally_real(&m.charpoly()).unwrap()).unwrap()
}

/// One representative per switching class with the first row all ones.
fn switching_representatives(n: usize) -> impl Iterator<Item = SeidelMatrix> {
    let free = (n - 1) * (n - 2) / 2;
    (0u64..1 << free).map(move |k| SeidelMatrix::from_mask(n, k << (n - 1)))
}

fn quotients(m: &SeidelMatrix, spec: &SpectrumData) -> Vec<IntPoly> {
    m.submatrix_charpolys()
        .into_iter()
        .map(|p| p.exact_div(&spec.mu).unwrap())
        .collect()
}

fn classes_for(n: usize) -> Option<CongruenceClassSet> {
    ((n - 1) % 2 == 1).then(|| CongruenceClassSet::exhaustive(n - 1, 7).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_laws(a in poly_strategy(6), b in poly_strategy(6), c in poly_strategy(4)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn division_with_remainder(a in poly_strategy(8), b in poly_strategy(4)) {
        prop_assume!(!b.is_zero());
        let (ra, rb) = (a.to_rational(), b.to_rational());
        let (q, r) = ra.div_rem(&rb);
        prop_assert_eq!(&(&q * &rb) + &r, ra);
        prop_assert!(r.is_zero() || r.degree() < rb.degree());
    }

    #[test]
    fn shift_composes(a in poly_strategy(6), s in -5i64..=5, t in -5i64..=5) {
        let (s, t) = (BigInt::from(s), BigInt::from(t));
        prop_assert_eq!(a.shift(&s).shift(&t), a.shift(&(&s + &t)));
        prop_assert_eq!(a.shift(&s).eval_int(&(&s + BigInt::from(3))), a.eval_int(&BigInt::from(3)));
    }

    #[test]
    fn sturm_counts_distinct_roots(roots in prop::collection::vec(-9i64..=9, 1..8)) {
        let rs: Vec<BigInt> = roots.iter().map(|&r| BigInt::from(r)).collect();
        let p = IntPoly::from_roots(rs.iter());
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assert_eq!(sturm_count(&p, None, None).unwrap(), distinct.len());
        let isolated = isolate_roots(&p).unwrap();
        prop_assert_eq!(isolated.len(), distinct.len());
        for ((iv, mult), r) in isolated.iter().zip(&distinct) {
            let r = BigRational::from_integer(BigInt::from(*r));
            prop_assert!(iv.lo <= r && r <= iv.hi);
            prop_assert_eq!(*mult, roots.iter().filter(|&&x| BigInt::from(x) == *r.numer()).count());
        }
    }

    #[test]
    fn farkas_dichotomy(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=6),
        rhs in prop::collection::vec(-6i64..=6, 3),
    ) {
        let sys = FeasibilitySystem {
            rows: rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            rhs: rhs.iter().map(|&v| BigInt::from(v)).collect(),
        };
        match find_certificate(&sys) {
            Feasibility::Infeasible(c) => prop_assert!(verify_certificate(&sys, &c)),
            Feasibility::Feasible(x) => {
                prop_assert!(x.iter().all(|v| !v.is_negative()));
                for j in 0..sys.width() {
                    let s: BigRational = x
                        .iter()
                        .zip(&sys.rows)
                        .map(|(xi, r)| xi * BigRational::from_integer(r[j].clone()))
                        .sum();
                    prop_assert_eq!(s, BigRational::from_integer(sys.rhs[j].clone()));
                }
            }
        }
    }

    #[test]
    fn farkas_feasible_when_built_from_solution(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=6),
        weights in prop::collection::vec(0i64..=3, 6),
    ) {
        let rhs: Vec<BigInt> = (0..3)
            .map(|j| rows.iter().zip(&weights).map(|(r, w)| BigInt::from(r[j] * w)).sum())
            .collect();
        let sys = FeasibilitySystem {
            rows: rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
            rhs,
        };
        prop_assert!(matches!(find_certificate(&sys), Feasibility::Feasible(_)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn type2_product_law(q in lattice_poly(), r in lattice_poly()) {
        let qr = &q * &r;
        let (tq, tr) = (is_type2(&q).unwrap(), is_type2(&r).unwrap());
        let (wq, wr) = (is_weakly_type2(&q).unwrap(), is_weakly_type2(&r).unwrap());
        prop_assert_eq!(is_type2(&qr).unwrap(), tq && tr);
        if wq && wr && (tq || tr) {
            prop_assert!(is_weakly_type2(&qr).unwrap());
        }
        if tq {
            prop_assert_eq!(is_weakly_type2(&qr).unwrap(), wr);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn shifted_charpoly_pattern(n in 2usize..=41, seed in any::<u64>()) {
        let m = random_seidel(n, seed);
        let p = m.charpoly().shift(&BigInt::from(1));
        prop_assert_eq!(p.desc(0), BigInt::from(1));
        prop_assert_eq!(p.desc(1), BigInt::from(-(n as i64)));
        prop_assert_eq!(p.desc(2), BigInt::zero());
        if n % 2 == 0 {
            prop_assert!(is_type2(&p).unwrap());
        } else {
            prop_assert!(is_weakly_type2(&p).unwrap());
        }
    }
}

fn check_derivative_and_quotients(m: &SeidelMatrix) {
    let n = m.order();
    let chi = m.charpoly();
    let subs = m.submatrix_charpolys();
    let sum = subs.iter().fold(IntPoly::zero(), |acc, p| &acc + p);
    assert_eq!(sum, chi.derivative());
    let spec = spectrum(m);
    let a = |i| spec.minimal.desc(i);
    for s in &subs {
        let f = s.exact_div(&spec.mu).expect("μ divides every submatrix polynomial");
        let expect = [a(0), a(1), a(2) + BigInt::from(n - 1)];
        for (i, e) in expect.iter().enumerate().take(f.degree() + 1) {
            assert_eq!(&f.desc(i), e, "coefficient {} of {}", i, f);
        }
    }
}

#[test]
fn derivative_identity_and_quotients_exhaustive() {
    for n in 2..=5 {
        for m in enumerate_all_seidel(n).unwrap() {
            check_derivative_and_quotients(&m);
        }
    }
}

#[test]
fn derivative_identity_and_quotients_sampled_order_six() {
    for seed in 0..300 {
        check_derivative_and_quotients(&random_seidel(6, seed));
    }
}

#[test]
fn actual_configurations_solve_the_system() {
    for n in 3..=6 {
        let classes = classes_for(n);
        for m in switching_representatives(n).step_by(7) {
            let spec = spectrum(&m);
            let family = interlacing_family(&spec, classes.as_ref()).unwrap();
            let mut counts = vec![BigInt::zero(); family.len()];
            for f in quotients(&m, &spec) {
                let i = family.iter().position(|g| *g == f).expect("actual quotient in family");
                counts[i] += 1;
            }
            let sys = equiangular::feasibility::build_system(&spec, &family).unwrap();
            assert!(sys.is_solution(&counts), "configuration of {:?}", m);
        }
    }
}

/// Every pair of actual submatrix polynomials is compatible, and the
/// relation is symmetric.
#[test]
fn real_pairs_are_compatible() {
    let mut seen = std::collections::HashSet::new();
    for n in 2..=6 {
        for m in switching_representatives(n) {
            let spec = spectrum(&m);
            if !spec.eigenvalues.iter().any(|e| e.multiplicity == 1) {
                continue;
            }
            let mut qs = quotients(&m, &spec);
            qs.sort_by(|a, b| a.cmp_desc(b));
            if !seen.insert((spec.charpoly().to_string(), qs.iter().map(|q| q.to_string()).collect::<Vec<_>>())) {
                continue;
            }
            qs.dedup();
            for (i, f) in qs.iter().enumerate() {
                for g in &qs[i..] {
                    let fg = compatible(&spec, f, g).unwrap();
                    assert!(fg.compatible, "{} and {} in {}", f, g, spec.charpoly());
                    assert_eq!(compatible(&spec, g, f).unwrap().compatible, fg.compatible);
                }
            }
        }
    }
}

#[test]
fn angle_rows_and_columns() {
    for n in 2..=6 {
        for m in switching_representatives(n).step_by(3) {
            let spec = spectrum(&m);
            let mut columns = vec![0f64; spec.distinct()];
            for f in quotients(&m, &spec) {
                let row = angles_squared(&spec, &f).unwrap();
                let mut total = 0f64;
                for (k, a) in row.iter().enumerate() {
                    assert!(a.sign() != std::cmp::Ordering::Less);
                    let mut a = a.clone();
                    a.refine_to(&BigRational::new(1.into(), BigInt::from(1u64 << 40)));
                    total += a.to_f64();
                    columns[k] += a.to_f64();
                }
                assert!((total - 1.0).abs() < 1e-9, "row sum {} for {}", total, f);
            }
            for (col, e) in columns.iter().zip(&spec.eigenvalues) {
                assert!((col - e.multiplicity as f64).abs() < 1e-9, "column sum {} vs {}", col, e.multiplicity);
            }
        }
    }
}

#[test]
fn rank_two_accepts_real_matrices() {
    let mut checked = 0;
    for n in 4..=6 {
        let classes = classes_for(n);
        for m in switching_representatives(n) {
            let spec = spectrum(&m);
            if spec.eigenvalues.iter().filter(|e| e.multiplicity == 1).count() != 2 {
                continue;
            }
            let family = interlacing_family(&spec, classes.as_ref()).unwrap();
            let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
            for f in quotients(&m, &spec) {
                *counts.entry(family.iter().position(|g| *g == f).unwrap()).or_default() += 1;
            }
            let counts: Vec<BigInt> = (0..family.len())
                .map(|i| BigInt::from(counts.get(&i).copied().unwrap_or(0)))
                .collect();
            let report = rank_two_check(&spec, &family, &counts).unwrap();
            assert!(report.is_feasible(), "rank-two rejects {:?} ({})", m, spec.charpoly());
            assert!(report.diagonal_integral);
            checked += 1;
            if checked >= 40 {
                return;
            }
        }
    }
    assert!(checked > 0, "no matrix with two simple eigenvalues found");
}
