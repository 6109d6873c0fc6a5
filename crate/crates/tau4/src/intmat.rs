//! Exact integer symmetric matrices: signatures and stable congruence
//! diagonalization over Z.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Symmetric matrix with exact integer entries of unbounded magnitude.
#[derive(Clone, PartialEq, Eq)]
pub struct SymIntMatrix {
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl SymIntMatrix {
    pub fn zeros(n: usize) -> Self {
        SymIntMatrix {
            n,
            rows: vec![vec![BigInt::zero(); n]; n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        let m = SymIntMatrix { n, rows };
        for i in 0..n {
            for j in 0..i {
                if m.rows[i][j] != m.rows[j][i] {
                    return Err(Error::Invalid(format!(
                        "matrix is not symmetric at ({}, {})",
                        i, j
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        SymIntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diag(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = SymIntMatrix::zeros(n);
        for (i, &d) in entries.iter().enumerate() {
            m.rows[i][i] = BigInt::from(d);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.rows[i][j] = v.clone();
        self.rows[j][i] = v;
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.rows[i][j].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.n).map(|i| self.rows[i][i].clone()).collect()
    }

    /// Reduction mod 2 as a GF(2) matrix.
    pub fn mod2(&self) -> BitMatrix {
        let mut b = BitMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                b.set(i, j, self.rows[i][j].is_odd());
            }
        }
        b
    }

    /// x^T M x for a 0/1 vector given by `mask`.
    pub fn evaluate_mask(&self, mask: &BitVec) -> BigInt {
        debug_assert_eq!(mask.len(), self.n);
        let supp = mask.support();
        let mut acc = BigInt::zero();
        for &i in &supp {
            for &j in &supp {
                acc += &self.rows[i][j];
            }
        }
        acc
    }

    /// Principal submatrix on the set rows/columns in `keep` (ascending).
    pub fn principal_submatrix(&self, keep: &[usize]) -> SymIntMatrix {
        let rows = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.rows[i][j].clone()).collect())
            .collect();
        SymIntMatrix {
            n: keep.len(),
            rows,
        }
    }

    pub fn direct_sum(&self, other: &SymIntMatrix) -> SymIntMatrix {
        let n = self.n + other.n;
        let mut m = SymIntMatrix::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.rows[i][j] = self.rows[i][j].clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.rows[self.n + i][self.n + j] = other.rows[i][j].clone();
            }
        }
        m
    }

    /// Connected components of the coupling graph (edges at nonzero
    /// off-diagonal entries), each sorted ascending; the matrix is the
    /// orthogonal direct sum of its principal submatrices on these sets.
    pub fn orthogonal_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(i) = queue.pop() {
                for j in 0..self.n {
                    if !seen[j] && j != i && !self.rows[i][j].is_zero() {
                        seen[j] = true;
                        comp.push(j);
                        queue.push(j);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

impl fmt::Debug for SymIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{:?}", r.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

/// Signature (number of positive minus number of negative eigenvalues),
/// computed exactly by symmetric pivoting over Q with 1x1 and 2x2 pivot
/// blocks.  No eigenvalues are ever approximated.
pub fn signature(m: &SymIntMatrix) -> i64 {
    let n = m.n;
    let mut q: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from(m.rows[i][j].clone()))
                .collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = 0i64;

    while !active.is_empty() {
        // 1x1 pivot on a nonzero diagonal entry if possible.
        if let Some(pos) = active.iter().position(|&i| !q[i][i].is_zero()) {
            let i = active[pos];
            sig += if q[i][i].is_positive() { 1 } else { -1 };
            active.remove(pos);
            let d = q[i][i].clone();
            for &k in &active {
                for &l in &active {
                    let t = &q[k][i] * &q[i][l] / &d;
                    q[k][l] -= t;
                }
            }
            continue;
        }
        // All active diagonal entries are zero: look for a hyperbolic pair.
        let mut pair = None;
        'outer: for (pi, &i) in active.iter().enumerate() {
            for (pj, &j) in active.iter().enumerate().skip(pi + 1) {
                if !q[i][j].is_zero() {
                    pair = Some((pi, pj, i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj, i, j)) = pair else {
            break; // active block is zero
        };
        // Block [[0, b], [b, 0]] has eigenvalues +-b: net contribution 0.
        let b = q[i][j].clone();
        active.remove(pj);
        active.remove(pi);
        for &k in &active {
            for &l in &active {
                let t = (&q[k][i] * &q[j][l] + &q[k][j] * &q[i][l]) / &b;
                q[k][l] -= t;
            }
        }
    }
    sig
}

/// Bareiss fraction-free determinant of a square BigInt matrix.
pub fn det_bareiss(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut prev = BigInt::one();
    let mut sign = 1i64;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (quot, rem) = t.div_rem(&prev);
                debug_assert!(rem.is_zero());
                m[i][j] = quot;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Certificate for a stable congruence reduction:
/// `P^T (M (+) diag(stab)) P = D` with `P` unimodular and `D` an orthogonal
/// sum of 1x1 blocks and small indecomposable blocks.
///
/// A fully diagonal D does not exist in general.  Even forms like the
/// hyperbolic [[0,1],[1,0]] take only even values, so no unimodular change
/// of basis diagonalizes them; and framed stabilizer summands do not close
/// the gap: +-1 framings cannot fix the 5-adic Jordan class of [[2,3],[3,2]]
/// (determinant -5 with class a nonresidue), while summands of arbitrary
/// framing f multiply the trailing determinant by |f/pivot| >= 1 at every
/// blocked step, so chasing full diagonality can grow entries without bound.
/// Orthogonal blocks cost nothing downstream, since every consumer factors
/// over them.  The `stab` field supports certificates with framed summands
/// (the reduction itself emits none); framings are arbitrary nonzero.
#[derive(Clone, Debug)]
pub struct CongruenceCertificate {
    /// Unimodular change of basis, size (n + stab.len()) squared.
    pub p: Vec<Vec<BigInt>>,
    /// Framings of the adjoined stabilization blocks, each nonzero.
    pub stab: Vec<BigInt>,
    /// The orthogonal block form.
    pub d: SymIntMatrix,
}

impl CongruenceCertificate {
    /// Exact verification of the certificate against the original matrix:
    /// P is unimodular, the congruence identity holds, and the signature
    /// bookkeeping sig(D) = sig(M) + sum(sign(stab)) checks out.  (For +-1
    /// blocks the sign sum is the plain sum.)
    pub fn verify(&self, m: &SymIntMatrix) -> bool {
        let n = m.n + self.stab.len();
        if self.p.len() != n || self.p.iter().any(|r| r.len() != n) || self.d.n != n {
            return false;
        }
        if self.stab.iter().any(|s| s.is_zero()) {
            return false;
        }
        let det = det_bareiss(&self.p);
        if det != BigInt::one() && det != BigInt::from(-1) {
            return false;
        }
        let mut block = SymIntMatrix::zeros(self.stab.len());
        for (i, s) in self.stab.iter().enumerate() {
            block.set(i, i, s.clone());
        }
        let stabbed = m.direct_sum(&block);
        // P^T * stabbed * P, exactly.
        let mut tmp = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    acc += stabbed.get(i, k) * &self.p[k][j];
                }
                tmp[i][j] = acc;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    acc += &self.p[k][i] * &tmp[k][j];
                }
                if acc != *self.d.get(i, j) {
                    return false;
                }
            }
        }
        let stab_sum: i64 = self
            .stab
            .iter()
            .map(|s| if s.is_positive() { 1 } else { -1 })
            .sum();
        signature(&self.d) == signature(m) + stab_sum
    }
}

/// Symmetric remainder: returns (q, r) with x = q*d + r and |r| <= |d|/2.
fn sym_div(x: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(!d.is_zero());
    // div_mod_floor leaves r with the sign of d and |r| < |d|; shifting r
    // by -sign(r)*|d| always corresponds to q += 1.
    let (mut q, mut r) = x.div_mod_floor(d);
    let da = d.abs();
    let twice: BigInt = &r * 2;
    if twice > da {
        r -= &da;
        q += 1;
    } else if -twice > da {
        r += &da;
        q += 1;
    }
    debug_assert_eq!(&q * d + &r, *x);
    debug_assert!(&r.abs() * 2 <= da);
    (q, r)
}

struct Reducer {
    m: Vec<Vec<BigInt>>,
    p: Vec<Vec<BigInt>>,
}

impl Reducer {
    fn n(&self) -> usize {
        self.m.len()
    }

    /// Congruence op: row/col `to` += q * row/col `from`; P tracks the
    /// column operation so that P^T (M+stab) P stays equal to `m`.
    fn add_sym(&mut self, from: usize, to: usize, q: &BigInt) {
        debug_assert_ne!(from, to);
        let n = self.n();
        for k in 0..n {
            let t = q * &self.m[from][k];
            self.m[to][k] += t;
        }
        for k in 0..n {
            let t = q * &self.m[k][from];
            self.m[k][to] += t;
        }
        for k in 0..self.p.len() {
            let t = q * &self.p[k][from];
            self.p[k][to] += t;
        }
    }

    fn swap_sym(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.m.swap(a, b);
        let n = self.n();
        for row in self.m.iter_mut() {
            row.swap(a, b);
        }
        for k in 0..n {
            self.p[k].swap(a, b);
        }
    }

    /// Try to clear all off-diagonal entries of row t using the pivot
    /// m[t][t]; returns true when the row is fully cleared.
    fn clear_row(&mut self, t: usize) -> bool {
        let n = self.n();
        let d = self.m[t][t].clone();
        debug_assert!(!d.is_zero());
        for j in t + 1..n {
            if self.m[t][j].is_zero() {
                continue;
            }
            let (q, _r) = sym_div(&self.m[t][j].clone(), &d);
            if !q.is_zero() {
                self.add_sym(t, j, &(-q));
            }
        }
        (t + 1..n).all(|j| self.m[t][j].is_zero())
    }

}

/// Stable congruence reduction over Z to an orthogonal block form.
///
/// Each pass over the trailing block does the first applicable step: move a
/// row with no remaining couplings into the reduced prefix (whatever its
/// diagonal entry, even zero); split off a diagonal entry that divides its
/// whole row (an exact clear; the Schur fill-in is m[k][l] - c_k c_l / d,
/// so among qualifying pivots the largest grows the block least); otherwise
/// apply the single congruence move row/col k += q row/col s that most
/// decreases the sum of squared entries (chasing small remainders alone
/// lets quotient-squared terms double the digit count every pass; the
/// strict weight decrease keeps the block compressed).  When nothing splits
/// and no move strictly helps, the remainder is a reduced orthogonal sum of
/// indecomposable blocks (hyperbolic pairs and their relatives) and is
/// returned as-is.
///
/// Termination is structural: the weight is a nonnegative integer that
/// strictly drops on every sweep move, and at most n rows ever split, so
/// the loop cannot run forever.  Chasing a fully diagonal result instead is
/// a tar pit; see the certificate type for why.  The result carries a full
/// certificate; callers should trust `CongruenceCertificate::verify`, not
/// the implementation.
pub fn stable_diagonalize(m: &SymIntMatrix) -> CongruenceCertificate {
    let n = m.n;
    let identity = |k: usize| -> Vec<Vec<BigInt>> {
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    };

    let mut red = Reducer {
        m: m.rows.clone(),
        p: identity(n),
    };

    let mut t = 0;
    while t < n {
        // Rows already clear inside the trailing block (zero rows, diagonal
        // input, just-split pivots) move into the reduced prefix as-is.
        let mut done: Option<usize> = None;
        for i in t..n {
            if (t..n).all(|j| j == i || red.m[i][j].is_zero()) {
                done = Some(i);
                break;
            }
        }
        if let Some(i) = done {
            red.swap_sym(t, i);
            t += 1;
            continue;
        }

        // Split: any diagonal entry dividing its whole trailing row clears
        // that row exactly.  This runs before the size sweep so a pivot the
        // sweep just produced cannot be smeared again.
        let mut divisible: Option<(usize, BigInt)> = None;
        for i in t..n {
            let d = red.m[i][i].abs();
            if d.is_zero() {
                continue;
            }
            if (t..n).all(|j| j == i || (&red.m[i][j] % &d).is_zero())
                && divisible.as_ref().map_or(true, |(_, b)| d > *b)
            {
                divisible = Some((i, d));
            }
        }
        if let Some((i, _)) = divisible {
            red.swap_sym(t, i);
            let cleared = red.clear_row(t);
            debug_assert!(cleared);
            t += 1;
            continue;
        }

        // Size sweep: among the congruence moves row/col k += q row/col s,
        // apply the one that most decreases the sum of squared entries.
        let mut sweep: Option<(BigInt, usize, usize, BigInt)> = None;
        for s in t..n {
            for k in t..n {
                if s == k {
                    continue;
                }
                let mut cands = vec![BigInt::one(), -BigInt::one()];
                if !red.m[s][s].is_zero() {
                    let (q, _r) = sym_div(&red.m[s][k], &red.m[s][s]);
                    if !q.is_zero() {
                        cands.push(-q);
                    }
                }
                for q in cands {
                    let mut delta = BigInt::zero();
                    for l in t..n {
                        if l == k {
                            continue;
                        }
                        let old = &red.m[k][l];
                        let new = old + &q * &red.m[s][l];
                        delta += &new * &new - old * old;
                    }
                    let old = &red.m[k][k];
                    let new = old + 2 * &q * &red.m[s][k] + &q * &q * &red.m[s][s];
                    delta += &new * &new - old * old;
                    if delta.is_negative()
                        && sweep.as_ref().map_or(true, |(b, _, _, _)| delta < *b)
                    {
                        sweep = Some((delta, s, k, q));
                    }
                }
            }
        }
        if let Some((_, s, k, q)) = sweep {
            red.add_sym(s, k, &q);
            continue;
        }

        // Reduced orthogonal sum of indecomposable blocks; emit unchanged.
        break;
    }

    let d = SymIntMatrix { n, rows: red.m };
    CongruenceCertificate {
        p: red.p,
        stab: Vec::new(),
        d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: &[Vec<i64>]) -> SymIntMatrix {
        SymIntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn signature_of_definite_2x2() {
        // [[2,1],[1,1]] is positive definite.
        assert_eq!(signature(&sym(&[vec![2, 1], vec![1, 1]])), 2);
    }

    #[test]
    fn signature_of_hyperbolic() {
        assert_eq!(signature(&sym(&[vec![0, 1], vec![1, 0]])), 0);
        assert_eq!(signature(&sym(&[vec![0, 3], vec![3, 0]])), 0);
    }

    #[test]
    fn signature_diag_and_zero() {
        assert_eq!(signature(&SymIntMatrix::diag(&[1, -2, 0, 5])), 1);
        assert_eq!(signature(&SymIntMatrix::zeros(3)), 0);
        assert_eq!(signature(&SymIntMatrix::zeros(0)), 0);
    }

    #[test]
    fn diagonal_input_is_untouched() {
        let m = SymIntMatrix::diag(&[1, -2]);
        let cert = stable_diagonalize(&m);
        assert!(cert.stab.is_empty());
        assert_eq!(cert.d, m);
        let id: Vec<Vec<BigInt>> = (0..2)
            .map(|i| (0..2).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        assert_eq!(cert.p, id);
        assert!(cert.verify(&m));
    }

    #[test]
    fn hyperbolic_stays_a_block() {
        // An even form takes only even values, so it admits no diagonal
        // congruence form; the reduction must hand it back as one block.
        let m = sym(&[vec![0, 1], vec![1, 0]]);
        let cert = stable_diagonalize(&m);
        assert!(cert.stab.is_empty());
        assert_eq!(cert.d, m);
        assert!(cert.verify(&m));
    }

    #[test]
    fn hand_built_stabilizer_certificate() {
        // Framed-summand certificates verify too: hyperbolic (+) <1> is
        // congruent to <1,-1,1> via x+u, y-x-u, u-y.
        let m = sym(&[vec![0, 1], vec![1, 0]]);
        let cert = CongruenceCertificate {
            p: vec![
                vec![BigInt::from(1), BigInt::from(-1), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(1), BigInt::from(-1)],
                vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)],
            ],
            stab: vec![BigInt::one()],
            d: SymIntMatrix::diag(&[1, -1, 1]),
        };
        assert!(cert.verify(&m));
        // A zero framing is degenerate and must be rejected.
        let bad = CongruenceCertificate {
            stab: vec![BigInt::zero()],
            ..cert.clone()
        };
        assert!(!bad.verify(&m));
        // Signature bookkeeping is part of the contract.
        let skewed = CongruenceCertificate {
            d: SymIntMatrix::diag(&[1, 1, -1]),
            ..cert
        };
        assert!(!skewed.verify(&m));
    }

    #[test]
    fn offdiag_with_odd_entries() {
        // Even form of determinant -5.  No unimodular change of basis
        // diagonalizes it, and +-1-framed stabilization cannot either (its
        // 5-adic class is a nonresidue; any unit-stabilized diagonal form
        // of determinant +-5 carries a residue class there).
        let m = sym(&[vec![2, 3], vec![3, 2]]);
        let cert = stable_diagonalize(&m);
        assert!(cert.verify(&m));
        assert_eq!(cert.d.orthogonal_components(), vec![vec![0, 1]]);
    }

    #[test]
    fn even_definite_block() {
        // 2*(x^2+xy+y^2): even definite, comes back as one reduced block.
        let m = sym(&[vec![4, 1], vec![1, 4]]);
        let cert = stable_diagonalize(&m);
        assert!(cert.verify(&m));
        assert_eq!(cert.d.orthogonal_components().len(), 1);
    }

    #[test]
    fn hyperbolic_with_content() {
        let m = sym(&[vec![0, 2], vec![2, 0]]);
        let cert = stable_diagonalize(&m);
        assert!(cert.verify(&m));
        assert_eq!(cert.d, m);
    }

    #[test]
    fn hyperbolic_at_scale_eight() {
        let m = sym(&[vec![0, 8], vec![8, 0]]);
        let cert = stable_diagonalize(&m);
        assert!(cert.verify(&m));
    }

    #[test]
    fn negative_pivot_with_unit_corner() {
        // The sweep walks the -8 corner up to 0 and leaves a hyperbolic.
        let m = sym(&[vec![-8, -1], vec![-1, 0]]);
        let cert = stable_diagonalize(&m);
        assert!(cert.verify(&m));
    }

    #[test]
    fn orthogonal_components_split() {
        let mut m = SymIntMatrix::zeros(4);
        m.set(0, 2, BigInt::from(3));
        m.set(1, 1, BigInt::from(5));
        assert_eq!(
            m.orthogonal_components(),
            vec![vec![0, 2], vec![1], vec![3]]
        );
    }

    #[test]
    fn bareiss_determinant() {
        let id = vec![
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1)],
        ];
        assert_eq!(det_bareiss(&id), BigInt::one());
        let m = vec![
            vec![BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(1), BigInt::from(4)],
        ];
        assert_eq!(det_bareiss(&m), BigInt::from(5));
        let sing = vec![
            vec![BigInt::from(1), BigInt::from(2)],
            vec![BigInt::from(2), BigInt::from(4)],
        ];
        assert_eq!(det_bareiss(&sing), BigInt::zero());
    }

    #[test]
    fn evaluate_mask_quadratic_form() {
        let m = sym(&[vec![3, 1], vec![1, -2]]);
        let x = BitVec::from_bools(&[true, true]);
        assert_eq!(m.evaluate_mask(&x), BigInt::from(3 + 1 + 1 - 2));
        let e1 = BitVec::from_bools(&[true, false]);
        assert_eq!(m.evaluate_mask(&e1), BigInt::from(3));
    }

    #[test]
    fn dense_five_by_five() {
        let m = sym(&[
            vec![8, 9, 6, 0, 8],
            vec![9, 3, 7, 6, 2],
            vec![6, 7, 2, 7, 7],
            vec![0, 6, 7, 5, 7],
            vec![8, 2, 7, 7, 5],
        ]);
        let cert = stable_diagonalize(&m);
        assert!(cert.verify(&m));
    }

    #[test]
    fn random_certificates_verify() {
        // Deterministic LCG so failures are reproducible.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        for _ in 0..60 {
            let n = (next().unsigned_abs() % 6) as usize + 1;
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let v = next() % 10;
                    rows[i][j] = v;
                    rows[j][i] = v;
                }
            }
            let m = sym(&rows);
            let cert = stable_diagonalize(&m);
            assert!(cert.verify(&m), "certificate failed for {:?}", m);
        }
    }
}
