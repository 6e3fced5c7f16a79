//! Depth-first enumeration of totally real integer polynomials.
//!
//! For a monic `p = Σ c_t x^{D-t}` the scaled derivatives
//! `Q_j = p^{(D-j)} / (D-j)! = Σ_{t≤j} c_t C(D-t, D-j) x^{j-t}` are integer
//! polynomials with constant term `c_j` and `Q_j' = (D-j+1) Q_{j-1}`. When
//! `p` is totally real so is every `Q_j`, and `Q_j` is totally real exactly
//! when it alternates in sign across the roots of `Q_{j-1}`. Fixing
//! `c_0, …, c_{j-1}` therefore confines `c_j` to an interval whose ends are
//! the values of `-Q_j + c_j` at those roots.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;

use super::handle::{to_i128, IntPart, Root};
use crate::classes::PrefixTree;
use crate::poly::Dyadic;
use crate::IntPoly;

/// Residue-class pruning state: the class tree plus, for every descending
/// coefficient `j` of `cofactor · φ`, its weights on the enumerated
/// coefficients modulo `2^e`.
pub(crate) struct ResidueState<'a> {
    pub tree: &'a PrefixTree,
    pub weights: Vec<Vec<u64>>,
    pub mask: u64,
}

pub(crate) struct Search<'a> {
    pub degree: usize,
    pub prefix: Vec<i128>,
    pub lower: Option<i128>,
    pub upper: Option<i128>,
    /// Required power of two for each coefficient.
    pub lattice: Vec<u32>,
    /// `targets[j]`: roots of the derivative of the interlacing target that
    /// `Q_j` must interlace (empty when there is no target).
    pub targets: Vec<Vec<Root>>,
    pub residue: Option<ResidueState<'a>>,
    /// When set, stop at this level and record its coefficient range.
    pub probe: Option<usize>,
    pub probed: Option<(Option<i128>, Option<i128>)>,
    pub out: Vec<Vec<i128>>,
    pub nodes: Vec<u64>,
    binom: Vec<Vec<i128>>,
    levels: Vec<Vec<(Root, usize)>>,
    coeffs: Vec<i128>,
    tree_nodes: Vec<usize>,
}

impl<'a> Search<'a> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        degree: usize,
        prefix: Vec<i128>,
        lower: Option<i128>,
        upper: Option<i128>,
        lattice: Vec<u32>,
        targets: Vec<Vec<Root>>,
        residue: Option<ResidueState<'a>>,
    ) -> Self {
        let mut binom = vec![vec![0i128; degree + 1]; degree + 1];
        for (n, row) in binom.iter_mut().enumerate() {
            row[0] = 1;
            for k in 1..=n {
                row[k] = row[k - 1] * (n - k + 1) as i128 / k as i128;
            }
        }
        Search {
            degree,
            prefix,
            lower,
            upper,
            lattice,
            targets,
            residue,
            probe: None,
            probed: None,
            out: Vec::new(),
            nodes: vec![0; degree + 1],
            binom,
            levels: Vec::new(),
            coeffs: Vec::new(),
            tree_nodes: Vec::new(),
        }
    }

    fn c(&self, n: usize, k: usize) -> i128 {
        self.binom[n][k]
    }

    /// `Q_j` with its constant term removed.
    fn head(&self, j: usize) -> IntPoly {
        let d = self.degree;
        let mut asc = vec![BigInt::from(0); j + 1];
        for t in 0..j {
            asc[j - t] = BigInt::from(self.coeffs[t] * self.c(d - t, d - j));
        }
        IntPoly::new(asc)
    }

    pub fn run(&mut self) {
        // Level 0: Q_0 is the constant 1.
        if self.prefix.first() != Some(&1) {
            return;
        }
        self.coeffs.push(1);
        if let Some(rs) = &self.residue {
            match rs.tree.step(PrefixTree::ROOT, 1) {
                Some(node) => self.tree_nodes.push(node),
                None => return,
            }
        }
        self.levels.push(Vec::new());
        self.nodes[0] += 1;
        if self.degree == 0 {
            self.out.push(self.coeffs.clone());
            return;
        }
        self.level(1);
    }

    fn level(&mut self, j: usize) {
        self.nodes[j] += 1;
        let head = self.head(j);
        let neg_head = -head.clone();
        let mut lo: Option<i128> = None;
        let mut hi: Option<i128> = None;
        let raise = |b: &mut Option<i128>, v: i128| *b = Some(b.map_or(v, |x| x.max(v)));
        let lower = |b: &mut Option<i128>, v: i128| *b = Some(b.map_or(v, |x| x.min(v)));

        // Alternation at the critical points (roots of Q_{j-1}).
        let mut parts = Vec::with_capacity(self.levels[j - 1].len());
        let mut idx = 0;
        for (root, mult) in self.levels[j - 1].iter_mut() {
            let v = root.int_part_of(&neg_head);
            if *mult >= 2 {
                match v {
                    IntPart::Exact(k) => {
                        raise(&mut lo, k);
                        lower(&mut hi, k);
                    }
                    IntPart::Between(k) => {
                        // Needs Q_j(r) = 0, impossible for integer c_j.
                        raise(&mut lo, k + 1);
                        lower(&mut hi, k);
                    }
                }
            } else if (j - 1 - idx).is_multiple_of(2) {
                raise(&mut lo, v.ceil());
            } else {
                lower(&mut hi, v.floor());
            }
            parts.push(v);
            idx += *mult;
        }

        // Strict root bounds.
        if let Some(b) = self.upper {
            let v = -to_i128(&head.eval(&BigInt::from(b)));
            raise(&mut lo, v + 1);
        }
        if let Some(a) = self.lower {
            let v = -to_i128(&head.eval(&BigInt::from(a)));
            if j.is_multiple_of(2) {
                raise(&mut lo, v + 1);
            } else {
                lower(&mut hi, v - 1);
            }
        }

        // Interlacing with the matching derivative of the target.
        if j < self.targets.len() {
            for (i, nu) in self.targets[j].iter_mut().enumerate() {
                let v = nu.int_part_of(&neg_head);
                if (j - i).is_multiple_of(2) {
                    raise(&mut lo, v.ceil());
                } else {
                    lower(&mut hi, v.floor());
                }
            }
        }

        if self.probe == Some(j) {
            self.probed = Some((lo, hi));
            return;
        }

        let candidates: Vec<i128> = if j < self.prefix.len() {
            let c = self.prefix[j];
            if lo.is_some_and(|l| c < l) || hi.is_some_and(|h| c > h) {
                return;
            }
            vec![c]
        } else {
            let (Some(l), Some(h)) = (lo, hi) else {
                panic!("unbounded coefficient range at level {}", j);
            };
            if l > h {
                return;
            }
            let step = 1i128 << self.lattice[j];
            let first = l + (-l).rem_euclid(step);
            (0..)
                .map(|k| first + k * step)
                .take_while(|&c| c <= h)
                .collect()
        };

        for c in candidates {
            if c & ((1i128 << self.lattice[j]) - 1) != 0 {
                continue;
            }
            let tree_node = match &self.residue {
                Some(rs) => {
                    let mut acc: u64 = 0;
                    for (t, &ct) in self.coeffs[..j].iter().enumerate() {
                        acc = acc.wrapping_add(rs.weights[j][t].wrapping_mul(ct as u64));
                    }
                    acc = acc.wrapping_add(c as u64) & rs.mask;
                    match rs.tree.step(self.tree_nodes[j - 1], acc as u32) {
                        Some(node) => Some(node),
                        None => continue,
                    }
                }
                None => None,
            };

            self.coeffs.truncate(j);
            self.coeffs.push(c);
            if let Some(node) = tree_node {
                self.tree_nodes.truncate(j);
                self.tree_nodes.push(node);
            }
            if j == self.degree {
                if self.leaf_residue_ok() {
                    self.out.push(self.coeffs.clone());
                }
                continue;
            }
            let q = Arc::new(&head + &IntPoly::constant(BigInt::from(c)));
            let roots = self.roots_of(j, &q, c, &parts);
            self.levels.truncate(j);
            self.levels.push(roots);
            self.level(j + 1);
        }
    }

    /// Roots of `Q_j = q` given the roots of `Q_{j-1}` and the integer
    /// positions of `-head` at them.
    fn roots_of(&mut self, j: usize, q: &Arc<IntPoly>, c: i128, parts: &[IntPart]) -> Vec<(Root, usize)> {
        let bound = crate::poly::roots::root_bound(q);
        let crit = &mut self.levels[j - 1];
        // Without explicit bounds, anchor outside both the roots of q and the
        // isolating intervals of the critical points.
        let left_anchor = match self.lower {
            Some(a) => Dyadic::from_int(BigInt::from(a)),
            None => {
                let b = Dyadic::from_int(-bound.clone());
                match crit.first() {
                    Some((r, _)) if r.lo < b => r.lo.clone(),
                    _ => b,
                }
            }
        };
        let right_anchor = match self.upper {
            Some(b) => Dyadic::from_int(BigInt::from(b)),
            None => {
                let b = Dyadic::from_int(bound);
                match crit.last() {
                    Some((r, _)) if r.hi > b => r.hi.clone(),
                    _ => b,
                }
            }
        };
        let left_sign = if j.is_multiple_of(2) {
            Ordering::Greater
        } else {
            Ordering::Less
        };

        let signs: Vec<Ordering> = parts.iter().map(|p| p.cmp_int(c)).collect();
        for ((root, _), s) in crit.iter_mut().zip(&signs) {
            if *s != Ordering::Equal {
                root.separate(q, *s);
            }
        }

        let mut out: Vec<(Root, usize)> = Vec::with_capacity(j);
        let mut prev_end = left_anchor;
        let mut prev_sign = left_sign;
        for ((root, mult), s) in crit.iter().zip(&signs) {
            if *s == Ordering::Equal {
                out.push((root.clone(), mult + 1));
                prev_sign = Ordering::Equal;
                prev_end = root.hi.clone();
                continue;
            }
            if prev_sign != Ordering::Equal && prev_sign != *s {
                out.push((Root::bracketed(prev_end.clone(), root.lo.clone(), q.clone()), 1));
            }
            prev_sign = *s;
            prev_end = root.hi.clone();
        }
        if prev_sign != Ordering::Equal && prev_sign != Ordering::Greater {
            out.push((Root::bracketed(prev_end, right_anchor, q.clone()), 1));
        }
        debug_assert_eq!(out.iter().map(|(_, m)| m).sum::<usize>(), j);
        out
    }

    fn leaf_residue_ok(&self) -> bool {
        let Some(rs) = &self.residue else {
            return true;
        };
        let mut node = self.tree_nodes[self.degree];
        for j in self.degree + 1..rs.weights.len() {
            let mut acc: u64 = 0;
            for (t, &ct) in self.coeffs.iter().enumerate() {
                acc = acc.wrapping_add(rs.weights[j][t].wrapping_mul(ct as u64));
            }
            match rs.tree.step(node, (acc & rs.mask) as u32) {
                Some(next) => node = next,
                None => return false,
            }
        }
        rs.tree.is_leaf(node)
    }
}
