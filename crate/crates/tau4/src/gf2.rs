//! Linear algebra over GF(2) on packed bit vectors.

use crate::error::{Error, Result};
use std::fmt;

/// Fixed-length vector over GF(2), packed into 64-bit blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    blocks: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            blocks: vec![0; (len + 63) / 64],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector with ones exactly at `indices` (must be < len).
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.blocks[i / 64] |= mask;
        } else {
            self.blocks[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    /// Standard inner product: parity of the AND.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Indices of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Low bits as a machine mask; only valid for len <= 64.
    pub fn as_mask(&self) -> u64 {
        debug_assert!(self.len <= 64);
        self.blocks.first().copied().unwrap_or(0)
    }

    pub fn from_mask(len: usize, mask: u64) -> Self {
        debug_assert!(len <= 64);
        let mut v = BitVec::zeros(len);
        if !v.blocks.is_empty() {
            v.blocks[0] = mask & if len == 64 { !0 } else { (1u64 << len) - 1 };
        }
        v
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// Dense matrix over GF(2), stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    ncols: usize,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        BitMatrix {
            rows: vec![BitVec::zeros(ncols); nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(BitMatrix { rows, ncols })
    }

    pub fn from_bits(bits: &[Vec<u8>]) -> Result<Self> {
        let rows = bits
            .iter()
            .map(|r| BitVec::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>()))
            .collect();
        BitMatrix::from_rows(rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit);
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn is_symmetric(&self) -> bool {
        if self.nrows() != self.ncols {
            return false;
        }
        for i in 0..self.nrows() {
            for j in 0..i {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.ncols {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, vector has length {}",
                self.nrows(),
                self.ncols,
                x.len()
            )));
        }
        let mut out = BitVec::zeros(self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            out.set(i, row.dot(x));
        }
        Ok(out)
    }

    pub fn diagonal(&self) -> BitVec {
        let n = self.nrows().min(self.ncols);
        let mut d = BitVec::zeros(self.nrows());
        for i in 0..n {
            d.set(i, self.get(i, i));
        }
        d
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{:?}", r)?;
        }
        Ok(())
    }
}

/// Solution of `A x = b` over GF(2): a particular solution (None when the
/// system is inconsistent) together with a basis of the kernel of `A`.
/// The full solution set is `particular + span(kernel)`.
pub struct AffineSolution {
    pub particular: Option<BitVec>,
    pub kernel: Vec<BitVec>,
}

/// Gaussian elimination on the augmented system.  Deterministic: pivots are
/// chosen first-come in column order.
pub fn solve_affine(a: &BitMatrix, b: &BitVec) -> Result<AffineSolution> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows, rhs has length {}",
            a.nrows(),
            b.len()
        )));
    }
    let nrows = a.nrows();
    let ncols = a.ncols();
    let mut rows: Vec<BitVec> = a.rows.clone();
    let mut rhs: Vec<bool> = (0..nrows).map(|i| b.get(i)).collect();

    // Reduced row echelon form, remembering (row, col) of each pivot.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..nrows).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, pr);
        rhs.swap(r, pr);
        let pivot_row = rows[r].clone();
        let pivot_rhs = rhs[r];
        for i in 0..nrows {
            if i != r && rows[i].get(c) {
                rows[i].xor_assign(&pivot_row);
                rhs[i] ^= pivot_rhs;
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == nrows {
            break;
        }
    }

    // Rows below the rank are zero; a nonzero rhs there means inconsistent.
    let consistent = (r..nrows).all(|i| {
        debug_assert!(rows[i].is_zero());
        !rhs[i]
    });

    let particular = if consistent {
        let mut x = BitVec::zeros(ncols);
        for &(ri, c) in &pivots {
            x.set(c, rhs[ri]);
        }
        Some(x)
    } else {
        None
    };

    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut kernel = Vec::new();
    for f in 0..ncols {
        if pivot_cols.binary_search(&f).is_ok() {
            continue;
        }
        let mut v = BitVec::zeros(ncols);
        v.set(f, true);
        for &(ri, c) in &pivots {
            if rows[ri].get(f) {
                v.set(c, true);
            }
        }
        kernel.push(v);
    }

    Ok(AffineSolution { particular, kernel })
}

/// Kernel basis of `A` (homogeneous solve).
pub fn kernel_basis(a: &BitMatrix) -> Vec<BitVec> {
    solve_affine(a, &BitVec::zeros(a.nrows()))
        .expect("homogeneous system is always well-formed")
        .kernel
}
