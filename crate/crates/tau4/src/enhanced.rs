//! Z4-enhanced inner product spaces over GF(2).
//!
//! An enhancement of a symmetric bilinear form `.` on V = GF(2)^m is a map
//! e: V -> Z4 with e(x+y) = e(x) + e(y) + 2(x.y).  Such a map is determined
//! by its values on a basis, subject only to the parity constraint
//! e(x) = x.x (mod 2); there are exactly 2^m of them for a fixed form.

use crate::cyclo::CycloInt;
use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, BitMatrix, BitVec};
use std::fmt;

/// Default cap on the dimension for the 2^m enumerations (Gauss sums,
/// Brown invariants).  Overridable through the `_bounded` variants.
pub const DEFAULT_ENUM_BOUND: usize = 24;

/// Brown invariant: an element of Z8, or infinity for improper spaces.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BrownValue {
    Finite(u8),
    Infinite,
}

impl fmt::Display for BrownValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BrownValue::Finite(b) => write!(f, "{}", b),
            BrownValue::Infinite => write!(f, "infinity"),
        }
    }
}

/// Complete isomorphism invariant: dimension, radical dimension, evenness
/// of the form, properness of the enhancement, and the Brown invariant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClassTuple {
    pub dim: usize,
    pub radical_dim: usize,
    pub even: bool,
    pub proper: bool,
    pub brown: BrownValue,
}

/// Multiplicities of the indecomposable summands in the canonical form.
///
/// P(v) is the one-dimensional space with x.x = 1 and e = v in {1,3};
/// T(v,v) the hyperbolic plane with both basis values v in {0,2};
/// A(v) the one-dimensional totally isotropic space with e = v in {0,2}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub p1: usize,
    pub pm1: usize,
    pub t0: usize,
    pub t4: usize,
    pub a0: usize,
    pub ainf: usize,
}

impl NormalForm {
    /// Rebuild an actual enhanced space realizing these multiplicities.
    pub fn to_space(&self) -> EnhancedSpace {
        let mut acc = EnhancedSpace::empty();
        for _ in 0..self.p1 {
            acc = acc.direct_sum(&EnhancedSpace::generator_p(1));
        }
        for _ in 0..self.pm1 {
            acc = acc.direct_sum(&EnhancedSpace::generator_p(3));
        }
        for _ in 0..self.t0 {
            acc = acc.direct_sum(&EnhancedSpace::generator_t(0, 0));
        }
        for _ in 0..self.t4 {
            acc = acc.direct_sum(&EnhancedSpace::generator_t(2, 2));
        }
        for _ in 0..self.a0 {
            acc = acc.direct_sum(&EnhancedSpace::generator_a(0));
        }
        for _ in 0..self.ainf {
            acc = acc.direct_sum(&EnhancedSpace::generator_a(2));
        }
        acc
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(usize, &str)> = vec![
            (self.p1, "P1"),
            (self.pm1, "P-1"),
            (self.t0, "T0"),
            (self.t4, "T4"),
            (self.a0, "A0"),
            (self.ainf, "Ainf"),
        ];
        let mut first = true;
        for (count, name) in parts {
            if count == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if count == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}*{}", count, name)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct EnhancedSpace {
    form: BitMatrix,
    values: Vec<u8>,
}

impl EnhancedSpace {
    /// Validates the parity law values[i] = form[i][i] (mod 2) and the
    /// symmetry of the form.
    pub fn new(form: BitMatrix, values: Vec<u8>) -> Result<Self> {
        if form.nrows() != form.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "form is {}x{}",
                form.nrows(),
                form.ncols()
            )));
        }
        if !form.is_symmetric() {
            return Err(Error::Invalid("enhancement form must be symmetric".into()));
        }
        if values.len() != form.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "form has dimension {}, got {} enhancement values",
                form.nrows(),
                values.len()
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if v > 3 {
                return Err(Error::Invalid(format!(
                    "enhancement value {} at basis vector {} is not in Z4",
                    v, i
                )));
            }
            if (v % 2 == 1) != form.get(i, i) {
                return Err(Error::Invalid(format!(
                    "enhancement value {} at basis vector {} violates e(x) = x.x (mod 2)",
                    v, i
                )));
            }
        }
        Ok(EnhancedSpace { form, values })
    }

    pub fn empty() -> Self {
        EnhancedSpace {
            form: BitMatrix::zeros(0, 0),
            values: Vec::new(),
        }
    }

    /// P(v): x.x = 1, e(x) = v, v odd.
    pub fn generator_p(v: u8) -> Self {
        assert!(v == 1 || v == 3);
        EnhancedSpace::new(BitMatrix::identity(1), vec![v]).unwrap()
    }

    /// T(v0, v1): hyperbolic plane, both values even.
    pub fn generator_t(v0: u8, v1: u8) -> Self {
        assert!(v0 % 2 == 0 && v1 % 2 == 0);
        let form = BitMatrix::from_bits(&[vec![0, 1], vec![1, 0]]).unwrap();
        EnhancedSpace::new(form, vec![v0 % 4, v1 % 4]).unwrap()
    }

    /// A(v): totally isotropic line, v even.
    pub fn generator_a(v: u8) -> Self {
        assert!(v % 2 == 0);
        EnhancedSpace::new(BitMatrix::zeros(1, 1), vec![v % 4]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn form(&self) -> &BitMatrix {
        &self.form
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// e(x) in Z4 for an arbitrary vector.
    pub fn evaluate(&self, x: &BitVec) -> u8 {
        debug_assert_eq!(x.len(), self.dim());
        let supp = x.support();
        let mut e = 0u32;
        for (a, &i) in supp.iter().enumerate() {
            e += self.values[i] as u32;
            for &j in &supp[a + 1..] {
                if self.form.get(i, j) {
                    e += 2;
                }
            }
        }
        (e % 4) as u8
    }

    /// Basis of the radical V-perp = { x : x.y = 0 for all y }.
    pub fn radical(&self) -> Vec<BitVec> {
        kernel_basis(&self.form)
    }

    /// The enhancement restricted to the radical is linear with values in
    /// {0,2}, so vanishing on a radical basis means vanishing on all of it.
    pub fn is_proper(&self) -> bool {
        self.radical().iter().all(|v| self.evaluate(v) == 0)
    }

    pub fn direct_sum(&self, other: &EnhancedSpace) -> EnhancedSpace {
        let m = self.dim();
        let n = other.dim();
        let mut form = BitMatrix::zeros(m + n, m + n);
        for i in 0..m {
            for j in 0..m {
                form.set(i, j, self.form.get(i, j));
            }
        }
        for i in 0..n {
            for j in 0..n {
                form.set(m + i, m + j, other.form.get(i, j));
            }
        }
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        EnhancedSpace { form, values }
    }

    /// Histogram of e over all 2^m vectors, by Gray-code traversal.
    fn value_counts(&self, bound: usize) -> Result<[u64; 4]> {
        let m = self.dim();
        if m > bound || m > 63 {
            return Err(Error::BoundExceeded {
                what: "enhanced space dimension",
                value: m,
                bound: bound.min(63),
            });
        }
        let rows: Vec<u64> = (0..m)
            .map(|i| {
                let mut mask = 0u64;
                for j in 0..m {
                    if self.form.get(i, j) {
                        mask |= 1 << j;
                    }
                }
                mask
            })
            .collect();
        let mut counts = [0u64; 4];
        counts[0] += 1; // x = 0
        let mut x = 0u64;
        let mut e = 0u32;
        for g in 1..(1u64 << m) {
            let b = g.trailing_zeros() as usize;
            let bit = 1u64 << b;
            // y = x with bit b cleared is the common part before/after.
            let y = x & !bit;
            let delta = self.values[b] as u32 + 2 * ((rows[b] & y).count_ones() & 1);
            if x & bit == 0 {
                e = (e + delta) % 4;
            } else {
                e = (e + 4 - delta % 4) % 4;
            }
            x ^= bit;
            counts[e as usize] += 1;
        }
        Ok(counts)
    }

    /// Gauss sum over the space: sum over x of i^e(x), as an exact
    /// cyclotomic integer (i = w^4).
    pub fn gauss_sum(&self) -> Result<CycloInt> {
        self.gauss_sum_bounded(DEFAULT_ENUM_BOUND)
    }

    pub fn gauss_sum_bounded(&self, bound: usize) -> Result<CycloInt> {
        let c = self.value_counts(bound)?;
        let re = c[0] as i128 - c[2] as i128;
        let im = c[1] as i128 - c[3] as i128;
        Ok(CycloInt::from_int(re) + CycloInt::i_unit() * im)
    }

    /// Brown invariant from the signs of (e0 - e2, e1 - e3) where ek
    /// counts vectors with e(x) = k.  The two zero-sign anchors are
    /// beta = infinity at (0,0); the eight nonzero patterns read off the
    /// octant of the Gauss sum.
    pub fn brown(&self) -> Result<BrownValue> {
        self.brown_bounded(DEFAULT_ENUM_BOUND)
    }

    pub fn brown_bounded(&self, bound: usize) -> Result<BrownValue> {
        let c = self.value_counts(bound)?;
        let d02 = (c[0] as i128 - c[2] as i128).signum();
        let d13 = (c[1] as i128 - c[3] as i128).signum();
        Ok(match (d02, d13) {
            (1, 0) => BrownValue::Finite(0),
            (1, 1) => BrownValue::Finite(1),
            (0, 1) => BrownValue::Finite(2),
            (-1, 1) => BrownValue::Finite(3),
            (-1, 0) => BrownValue::Finite(4),
            (-1, -1) => BrownValue::Finite(5),
            (0, -1) => BrownValue::Finite(6),
            (1, -1) => BrownValue::Finite(7),
            (0, 0) => BrownValue::Infinite,
            _ => unreachable!(),
        })
    }

    pub fn class_tuple(&self) -> Result<ClassTuple> {
        self.class_tuple_bounded(DEFAULT_ENUM_BOUND)
    }

    pub fn class_tuple_bounded(&self, bound: usize) -> Result<ClassTuple> {
        let radical_dim = self.radical().len();
        let even = (0..self.dim()).all(|i| !self.form.get(i, i));
        Ok(ClassTuple {
            dim: self.dim(),
            radical_dim,
            even,
            proper: self.is_proper(),
            brown: self.brown_bounded(bound)?,
        })
    }

    /// Canonical direct-sum decomposition with the conventional bounds:
    /// at most three P(-1) summands in the odd case, at most one T(2,2)
    /// in the even case, and improper spaces rendered with exactly one
    /// A(2) summand and a plain nonsingular part.
    pub fn normal_form(&self) -> Result<NormalForm> {
        self.normal_form_bounded(DEFAULT_ENUM_BOUND)
    }

    pub fn normal_form_bounded(&self, bound: usize) -> Result<NormalForm> {
        let t = self.class_tuple_bounded(bound)?;
        let m = t.dim;
        let n = t.radical_dim;
        let ns = m - n; // dimension of the nonsingular part
        let mut nf = NormalForm {
            p1: 0,
            pm1: 0,
            t0: 0,
            t4: 0,
            a0: 0,
            ainf: 0,
        };
        if !t.proper {
            nf.ainf = 1;
            nf.a0 = n - 1;
            if t.even {
                debug_assert!(ns % 2 == 0);
                nf.t0 = ns / 2;
            } else {
                nf.p1 = ns;
            }
            return Ok(nf);
        }
        nf.a0 = n;
        if t.even {
            let BrownValue::Finite(b) = t.brown else {
                unreachable!("proper spaces have finite Brown invariant")
            };
            debug_assert!(b == 0 || b == 4, "even proper Brown is 0 or 4 mod 8");
            nf.t4 = (b == 4) as usize;
            debug_assert!(ns % 2 == 0 && ns / 2 >= nf.t4);
            nf.t0 = ns / 2 - nf.t4;
        } else {
            let BrownValue::Finite(b) = t.brown else {
                unreachable!("proper spaces have finite Brown invariant")
            };
            // beta = p1 - pm1 (mod 8) with p1 + pm1 = ns; pm1 in 0..=3.
            let r = (ns as i64 - b as i64).rem_euclid(8);
            debug_assert!(r % 2 == 0);
            nf.pm1 = ((r / 2) % 4) as usize;
            debug_assert!(ns >= nf.pm1);
            nf.p1 = ns - nf.pm1;
        }
        Ok(nf)
    }
}

impl fmt::Debug for EnhancedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EnhancedSpace(dim {}, values {:?})", self.dim(), self.values)
    }
}

/// All 2^m admissible enhancements of a symmetric form.
pub fn enumerate_enhancements(form: &BitMatrix) -> Result<Vec<EnhancedSpace>> {
    let m = form.nrows();
    if m > 20 {
        return Err(Error::BoundExceeded {
            what: "form dimension",
            value: m,
            bound: 20,
        });
    }
    let mut out = Vec::with_capacity(1 << m);
    for pick in 0..(1u32 << m) {
        let values: Vec<u8> = (0..m)
            .map(|i| {
                let base = form.get(i, i) as u8;
                base + 2 * ((pick >> i) & 1) as u8
            })
            .collect();
        out.push(EnhancedSpace::new(form.clone(), values)?);
    }
    Ok(out)
}
