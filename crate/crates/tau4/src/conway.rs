//! Exact Conway polynomials by the skein relation.
//!
//! The engine orders components by minimum arc id, walks each component
//! from its minimum arc, and locates the first crossing whose first visit
//! is on the under-strand.  Switching that crossing strictly lengthens the
//! descending prefix and smoothing removes a crossing, so the recursion
//! terminates; a diagram with no such crossing is descending, hence an
//! unlink.  Base cases: unknot -> 1, any split or multi-component unlink
//! diagram -> 0.

use crate::error::{Error, Result};
use crate::pd::PDLink;
use std::collections::BTreeMap;
use std::fmt;

pub const DEFAULT_CROSSING_BOUND: usize = 40;

/// Integer polynomial in z, constant coefficient first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConwayPoly {
    coeffs: Vec<i64>,
}

impl ConwayPoly {
    pub fn zero() -> Self {
        ConwayPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ConwayPoly { coeffs: vec![1] }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        let mut c = ConwayPoly { coeffs };
        c.trim();
        c
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, degree: usize) -> i64 {
        self.coeffs.get(degree).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &ConwayPoly) -> ConwayPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                self.coeff(i)
                    .checked_add(other.coeff(i))
                    .expect("conway coefficient overflow")
            })
            .collect();
        ConwayPoly::from_coeffs(coeffs)
    }

    /// Multiply by z.
    pub fn shifted(&self) -> ConwayPoly {
        if self.is_zero() {
            return ConwayPoly::zero();
        }
        let mut coeffs = vec![0];
        coeffs.extend_from_slice(&self.coeffs);
        ConwayPoly { coeffs }
    }

    pub fn scaled(&self, k: i64) -> ConwayPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(k).expect("conway coefficient overflow"))
            .collect();
        ConwayPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            let a = c.unsigned_abs();
            match d {
                0 => write!(f, "{}", a)?,
                _ => {
                    if a != 1 {
                        write!(f, "{}", a)?;
                    }
                    if d == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{}", d)?;
                    }
                }
            }
        }
        Ok(())
    }
}

type MemoKey = Vec<(usize, usize, usize, usize, i8)>;

/// Memo key: crossings with arcs densely relabelled by sorted id, sorted.
fn canonical_key(link: &PDLink) -> MemoKey {
    let mut ids: Vec<usize> = link.crossings().iter().flat_map(|c| c.arcs).collect();
    ids.sort_unstable();
    ids.dedup();
    let dense: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut key: MemoKey = link
        .crossings()
        .iter()
        .map(|c| {
            (
                dense[&c.arcs[0]],
                dense[&c.arcs[1]],
                dense[&c.arcs[2]],
                dense[&c.arcs[3]],
                c.sign,
            )
        })
        .collect();
    key.sort_unstable();
    key
}

/// Number of crossing-connected pieces of the diagram (free loops count
/// as their own piece).
fn pieces(link: &PDLink) -> usize {
    let n = link.ncomponents();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for cr in link.crossings() {
        let a = find(&mut parent, link.under_component(cr));
        let b = find(&mut parent, link.over_component(cr));
        parent[a.max(b)] = a.min(b);
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Index of the first crossing, in traversal order, whose first visit is
/// on the under-strand; None when the diagram is descending.
fn first_bad_crossing(link: &PDLink) -> Option<usize> {
    let mut in_info: BTreeMap<usize, (usize, bool)> = BTreeMap::new();
    for (ci, cr) in link.crossings().iter().enumerate() {
        in_info.insert(cr.under_in(), (ci, true));
        in_info.insert(cr.over_in(), (ci, false));
    }
    let mut visited = vec![false; link.ncrossings()];
    for comp in 0..link.ncomponents() {
        for &arc in link.component_arcs(comp) {
            let Some(&(ci, under)) = in_info.get(&arc) else {
                continue; // free loop
            };
            if !visited[ci] {
                visited[ci] = true;
                if under {
                    return Some(ci);
                }
            }
        }
    }
    None
}

fn eval(link: &PDLink, memo: &mut BTreeMap<MemoKey, ConwayPoly>) -> ConwayPoly {
    let n = link.ncomponents();
    if n == 0 {
        return ConwayPoly::one();
    }
    if pieces(link) > 1 {
        return ConwayPoly::zero();
    }
    if link.ncrossings() == 0 {
        return ConwayPoly::one(); // single crossingless unknot
    }
    match first_bad_crossing(link) {
        None => {
            // Descending and crossing-connected: an unlink.
            if n == 1 {
                ConwayPoly::one()
            } else {
                ConwayPoly::zero()
            }
        }
        Some(ci) => {
            let key = canonical_key(link);
            if let Some(v) = memo.get(&key) {
                return v.clone();
            }
            let sign = link.crossings()[ci].sign as i64;
            let switched = eval(&link.switch_crossing(ci), memo);
            let smoothed = eval(&link.smooth_crossing(ci), memo);
            let result = switched.add(&smoothed.shifted().scaled(sign));
            memo.insert(key, result.clone());
            result
        }
    }
}

pub fn conway(link: &PDLink) -> Result<ConwayPoly> {
    conway_bounded(link, DEFAULT_CROSSING_BOUND)
}

pub fn conway_bounded(link: &PDLink, bound: usize) -> Result<ConwayPoly> {
    if link.ncrossings() > bound {
        return Err(Error::BoundExceeded {
            what: "crossing count",
            value: link.ncrossings(),
            bound,
        });
    }
    let mut memo = BTreeMap::new();
    Ok(eval(link, &mut memo))
}

/// Coefficient of z^(s+1) where s is the component count.
pub fn c1(link: &PDLink) -> Result<i64> {
    c1_bounded(link, DEFAULT_CROSSING_BOUND)
}

pub fn c1_bounded(link: &PDLink, bound: usize) -> Result<i64> {
    let nabla = conway_bounded(link, bound)?;
    Ok(nabla.coeff(link.ncomponents() + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid(strands: usize, word: &[i64]) -> PDLink {
        PDLink::from_braid(strands, word).unwrap()
    }

    #[test]
    fn unknot_normalization() {
        assert_eq!(conway(&braid(1, &[])).unwrap(), ConwayPoly::one());
        assert_eq!(conway(&braid(2, &[1])).unwrap(), ConwayPoly::one());
        assert_eq!(conway(&braid(2, &[-1])).unwrap(), ConwayPoly::one());
        assert_eq!(conway(&PDLink::empty()).unwrap(), ConwayPoly::one());
    }

    #[test]
    fn unlinks_vanish() {
        assert_eq!(conway(&braid(2, &[])).unwrap(), ConwayPoly::zero());
        assert_eq!(conway(&braid(3, &[1])).unwrap(), ConwayPoly::zero());
    }

    #[test]
    fn positive_hopf_is_z() {
        let h = braid(2, &[1, 1]);
        assert_eq!(conway(&h).unwrap(), ConwayPoly::from_coeffs(vec![0, 1]));
        let neg = braid(2, &[-1, -1]);
        assert_eq!(conway(&neg).unwrap(), ConwayPoly::from_coeffs(vec![0, -1]));
    }

    #[test]
    fn trefoil_polynomial() {
        let t = braid(2, &[1, 1, 1]);
        assert_eq!(conway(&t).unwrap(), ConwayPoly::from_coeffs(vec![1, 0, 1]));
        // Both chiralities share the Conway polynomial.
        let m = braid(2, &[-1, -1, -1]);
        assert_eq!(conway(&m).unwrap(), ConwayPoly::from_coeffs(vec![1, 0, 1]));
    }

    #[test]
    fn figure_eight_polynomial() {
        let f = braid(3, &[1, -2, 1, -2]);
        assert_eq!(f.ncomponents(), 1);
        assert_eq!(conway(&f).unwrap(), ConwayPoly::from_coeffs(vec![1, 0, -1]));
    }

    #[test]
    fn torus_24_polynomial() {
        let t = braid(2, &[1, 1, 1, 1]);
        assert_eq!(conway(&t).unwrap(), ConwayPoly::from_coeffs(vec![0, 2, 0, 1]));
    }

    #[test]
    fn whitehead_polynomial_shape() {
        let w = braid(3, &[1, -2, 1, -2, 1]);
        let nabla = conway(&w).unwrap();
        assert_eq!(nabla.degree(), Some(3));
        assert_eq!(nabla.coeff(1), 0);
        assert_eq!(nabla.coeff(3).abs(), 1);
        assert_eq!(c1(&w).unwrap().rem_euclid(2), 1);
    }

    #[test]
    fn borromean_polynomial_shape() {
        let b = braid(3, &[1, -2, 1, -2, 1, -2]);
        let nabla = conway(&b).unwrap();
        assert_eq!(nabla.degree(), Some(4));
        assert_eq!(nabla.coeff(2), 0);
        assert_eq!(nabla.coeff(4).abs(), 1);
        assert_eq!(c1(&b).unwrap().rem_euclid(2), 1);
    }

    #[test]
    fn split_links_vanish() {
        let split = braid(2, &[1, 1, 1]).disjoint_union(&braid(2, &[1, 1]));
        assert_eq!(conway(&split).unwrap(), ConwayPoly::zero());
        let with_loop = braid(2, &[1, 1]).disjoint_union(&braid(1, &[]));
        assert_eq!(conway(&with_loop).unwrap(), ConwayPoly::zero());
    }

    #[test]
    fn coefficient_parity() {
        for (s, w) in [
            (2usize, vec![1i64, 1, 1]),
            (2, vec![1, 1]),
            (3, vec![1, -2, 1, -2, 1]),
            (3, vec![1, -2, 1, -2, 1, -2]),
            (2, vec![1, 1, 1, 1]),
            (4, vec![1, 1, 2, 2, 3, 3]),
        ] {
            let l = braid(s, &w);
            let nabla = conway(&l).unwrap();
            let n = l.ncomponents();
            for d in 0..=nabla.degree().unwrap_or(0) {
                if nabla.coeff(d) != 0 {
                    assert_eq!(d % 2, (n + 1) % 2, "degree {} in {}-component link", d, n);
                }
            }
        }
    }

    #[test]
    fn reidemeister_moves_fix_value() {
        let w = braid(3, &[1, -2, 1, -2, 1]);
        let base = conway(&w).unwrap();
        let arc = w.component_arcs(0)[0];
        let k = w.insert_kink(arc, -1).unwrap();
        assert_eq!(conway(&k).unwrap(), base);
        let a = w.component_arcs(0)[1];
        let b = w.component_arcs(1)[2];
        let r2 = w.insert_clasp_pair(a, b).unwrap();
        assert_eq!(conway(&r2).unwrap(), base);
    }

    #[test]
    fn full_reversal_fixes_value() {
        let t24 = braid(2, &[1, 1, 1, 1]);
        let rev = t24.reverse_component(0).unwrap().reverse_component(1).unwrap();
        assert_eq!(conway(&rev).unwrap(), conway(&t24).unwrap());
    }

    #[test]
    fn c1_of_four_component_links_vanishes() {
        let pure = braid(4, &[1, 1, 2, 2, 3, 3]);
        assert_eq!(pure.ncomponents(), 4);
        assert_eq!(c1(&pure).unwrap(), 0);
    }

    #[test]
    fn crossing_bound_enforced() {
        let t = braid(2, &[1, 1, 1]);
        let err = conway_bounded(&t, 2).unwrap_err();
        assert!(err.is_size_bound());
    }

    #[test]
    fn display_formatting() {
        assert_eq!(ConwayPoly::from_coeffs(vec![1, 0, 1]).to_string(), "1 + z^2");
        assert_eq!(ConwayPoly::from_coeffs(vec![0, -2, 0, 1]).to_string(), "-2z + z^3");
        assert_eq!(ConwayPoly::zero().to_string(), "0");
    }
}
