//! Shared helpers for the integration suites: brute-force oracles and
//! seeded random generators for links, matrices, forms, and CNFs.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;
use tau4::enhanced::EnhancedSpace;
use tau4::gf2::{BitMatrix, BitVec};
use tau4::pd::PDLink;
use tau4::reduction::{CubicForm, CNF3};
use tau4::SymIntMatrix;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn braid(strands: usize, word: &[i64]) -> PDLink {
    PDLink::from_braid(strands, word).unwrap()
}

/// n-component crossingless unlink carrying the given framings.
pub fn unlink_with_framings(framings: &[i64]) -> PDLink {
    let mut link = PDLink::empty();
    for _ in 0..framings.len() {
        link = link.disjoint_union(&braid(1, &[]));
    }
    link.with_framings(framings.to_vec()).unwrap()
}

pub fn random_symmetric(r: &mut StdRng, n: usize, lo: i64, hi: i64) -> SymIntMatrix {
    let mut m = SymIntMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            m.set(i, j, r.gen_range(lo..=hi).into());
        }
    }
    m
}

/// Uniform symmetric form on GF(2)^m with a parity-consistent enhancement.
pub fn random_enhanced(r: &mut StdRng, m: usize) -> EnhancedSpace {
    let mut form = BitMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let bit = r.gen_bool(0.5);
            form.set(i, j, bit);
            form.set(j, i, bit);
        }
    }
    let values: Vec<u8> = (0..m)
        .map(|i| {
            let parity = form.get(i, i) as u8;
            parity + 2 * r.gen_range(0..2u8)
        })
        .collect();
    EnhancedSpace::new(form, values).unwrap()
}

pub fn random_cnf(r: &mut StdRng, max_vars: usize, max_clauses: usize) -> CNF3 {
    let nvars = r.gen_range(1..=max_vars);
    let nclauses = r.gen_range(1..=max_clauses);
    let clauses: Vec<[i64; 3]> = (0..nclauses)
        .map(|_| {
            let mut lit = || {
                let v = r.gen_range(1..=nvars) as i64;
                if r.gen_bool(0.5) {
                    v
                } else {
                    -v
                }
            };
            [lit(), lit(), lit()]
        })
        .collect();
    CNF3::new(nvars, clauses).unwrap()
}

pub fn random_cubic(r: &mut StdRng, max_n: usize) -> CubicForm {
    let n = r.gen_range(1..=max_n);
    let mut linear = BTreeSet::new();
    let mut quadratic = BTreeSet::new();
    let mut cubic = BTreeSet::new();
    for i in 0..n {
        if r.gen_bool(0.4) {
            linear.insert(i);
        }
        for j in i + 1..n {
            if r.gen_bool(0.25) {
                quadratic.insert((i, j));
            }
            for k in j + 1..n {
                if r.gen_bool(0.15) {
                    cubic.insert((i, j, k));
                }
            }
        }
    }
    CubicForm::new(n, linear, quadratic, cubic).unwrap()
}

fn in_span(echelon: &[u64], v: u64) -> bool {
    let mut v = v;
    for &e in echelon {
        let lead = 1u64 << (63 - e.leading_zeros());
        if v & lead != 0 {
            v ^= e;
        }
    }
    v == 0
}

fn form_dot(space: &EnhancedSpace, x: &BitVec, y: &BitVec) -> bool {
    let mut acc = false;
    for i in x.support() {
        for j in y.support() {
            acc ^= space.form().get(i, j);
        }
    }
    acc
}

/// Brute-force search for a linear bijection carrying one enhancement to
/// the other.  Basis images are chosen one at a time; matching the values
/// on a basis and the form on basis pairs pins the whole enhancement down
/// through e(x+y) = e(x) + e(y) + 2 x.y, so no further checking is needed.
pub fn isomorphic(a: &EnhancedSpace, b: &EnhancedSpace) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let m = a.dim();
    if m == 0 {
        return true;
    }
    let a_basis: Vec<BitVec> = (0..m).map(|i| BitVec::from_indices(m, &[i])).collect();
    let mut images: Vec<BitVec> = Vec::with_capacity(m);
    let mut echelon: Vec<u64> = Vec::with_capacity(m);
    fn extend(
        a: &EnhancedSpace,
        b: &EnhancedSpace,
        a_basis: &[BitVec],
        images: &mut Vec<BitVec>,
        echelon: &mut Vec<u64>,
    ) -> bool {
        let m = a.dim();
        let i = images.len();
        if i == m {
            return true;
        }
        'cand: for mask in 1..(1u64 << m) {
            if in_span(echelon, mask) {
                continue;
            }
            let v = BitVec::from_mask(m, mask);
            if b.evaluate(&v) != a.values()[i] {
                continue;
            }
            for (j, w) in images.iter().enumerate() {
                if form_dot(b, &v, w) != form_dot(a, &a_basis[i], &a_basis[j]) {
                    continue 'cand;
                }
            }
            images.push(v);
            let mut reduced = mask;
            for &e in echelon.iter() {
                let lead = 1u64 << (63 - e.leading_zeros());
                if reduced & lead != 0 {
                    reduced ^= e;
                }
            }
            echelon.push(reduced);
            if extend(a, b, a_basis, images, echelon) {
                return true;
            }
            images.pop();
            echelon.pop();
        }
        false
    }
    extend(a, b, &a_basis, &mut images, &mut echelon)
}

/// Every symmetric GF(2) form of the given dimension, by upper triangle.
pub fn all_symmetric_forms(m: usize) -> Vec<BitMatrix> {
    let cells: Vec<(usize, usize)> =
        (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let mut out = Vec::with_capacity(1 << cells.len());
    for pick in 0u64..(1u64 << cells.len()) {
        let mut form = BitMatrix::zeros(m, m);
        for (b, &(i, j)) in cells.iter().enumerate() {
            if pick >> b & 1 == 1 {
                form.set(i, j, true);
                form.set(j, i, true);
            }
        }
        out.push(form);
    }
    out
}
