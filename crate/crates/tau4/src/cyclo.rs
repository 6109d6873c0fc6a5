//! Exact arithmetic in Z[w]/(w^8 + 1), the ring of integers extended by a
//! primitive 16th root of unity.
//!
//! Elements are stored on the power basis 1, w, ..., w^7 with the single
//! reduction rule w^8 = -1.  All coefficient arithmetic is checked; an
//! overflow aborts rather than wrapping.
//!
//! Useful embedded constants: i = w^4 and sqrt(2) = w^2 - w^6 (the latter
//! squares to exactly 2 after reduction).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycloInt {
    c: [i128; 8],
}

const OVERFLOW: &str = "cyclotomic coefficient overflow";

impl CycloInt {
    pub const ZERO: CycloInt = CycloInt { c: [0; 8] };
    pub const ONE: CycloInt = CycloInt {
        c: [1, 0, 0, 0, 0, 0, 0, 0],
    };

    pub fn from_int(k: i128) -> Self {
        let mut c = [0; 8];
        c[0] = k;
        CycloInt { c }
    }

    pub fn from_coeffs(c: [i128; 8]) -> Self {
        CycloInt { c }
    }

    pub fn coeffs(&self) -> [i128; 8] {
        self.c
    }

    /// w itself.
    pub fn omega() -> Self {
        Self::omega_pow(1)
    }

    /// w^k for any integer k, reduced by w^16 = 1 and w^8 = -1.
    /// In particular `omega_pow(-1)` is `-w^7`.
    pub fn omega_pow(k: i64) -> Self {
        let r = k.rem_euclid(16) as usize;
        let mut c = [0; 8];
        if r < 8 {
            c[r] = 1;
        } else {
            c[r - 8] = -1;
        }
        CycloInt { c }
    }

    /// The imaginary unit, w^4.
    pub fn i_unit() -> Self {
        Self::omega_pow(4)
    }

    /// The square root of 2: w^2 - w^6.  `sqrt2() * sqrt2() == 2`.
    pub fn sqrt2() -> Self {
        let mut c = [0; 8];
        c[2] = 1;
        c[6] = -1;
        CycloInt { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Some(k) when the element is the rational integer k.
    pub fn as_integer(&self) -> Option<i128> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    /// Nonnegative power by squaring; negative powers require the element
    /// to be a unit of the ring and fail with `NotAUnit` otherwise.
    pub fn pow(&self, k: i64) -> Result<CycloInt> {
        if k < 0 {
            let inv = self.inverse()?;
            return inv.pow(-k);
        }
        let mut base = *self;
        let mut exp = k as u64;
        let mut acc = CycloInt::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base * base;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse in Z[w]/(w^8+1), when it exists.
    ///
    /// Multiplication by `self` is an 8x8 integer matrix on the power basis;
    /// the inverse exists in the ring iff solving `M x = e_0` over Q yields
    /// an integral vector.
    fn inverse(&self) -> Result<CycloInt> {
        if self.is_zero() {
            return Err(Error::NotAUnit);
        }
        // Column j of M = coefficients of self * w^j.
        let mut cols: Vec<[i128; 8]> = Vec::with_capacity(8);
        for j in 0..8 {
            cols.push((*self * CycloInt::omega_pow(j as i64)).c);
        }
        let mut a: Vec<Vec<BigRational>> = (0..8)
            .map(|r| {
                (0..8)
                    .map(|cidx| BigRational::from(BigInt::from(cols[cidx][r])))
                    .collect()
            })
            .collect();
        let mut rhs: Vec<BigRational> = (0..8)
            .map(|r| {
                if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();

        // Gaussian elimination with exact rationals.
        for col in 0..8 {
            let Some(p) = (col..8).find(|&r| !a[r][col].is_zero()) else {
                return Err(Error::NotAUnit);
            };
            a.swap(col, p);
            rhs.swap(col, p);
            let inv = a[col][col].clone();
            for r in 0..8 {
                if r != col && !a[r][col].is_zero() {
                    let f = &a[r][col] / &inv;
                    for k in col..8 {
                        let t = &f * &a[col][k];
                        a[r][k] -= t;
                    }
                    let t = &f * &rhs[col];
                    rhs[r] -= t;
                }
            }
        }
        let mut out = [0i128; 8];
        for r in 0..8 {
            let x = &rhs[r] / &a[r][r];
            if !x.is_integer() {
                return Err(Error::NotAUnit);
            }
            let big = x.to_integer();
            if big.abs() > BigInt::from(i128::MAX) {
                panic!("{OVERFLOW}");
            }
            out[r] = i128::try_from(big).expect(OVERFLOW);
        }
        let inv = CycloInt { c: out };
        debug_assert_eq!(inv * *self, CycloInt::ONE);
        Ok(inv)
    }
}

impl Add for CycloInt {
    type Output = CycloInt;
    fn add(self, rhs: CycloInt) -> CycloInt {
        let mut c = [0; 8];
        for k in 0..8 {
            c[k] = self.c[k].checked_add(rhs.c[k]).expect(OVERFLOW);
        }
        CycloInt { c }
    }
}

impl AddAssign for CycloInt {
    fn add_assign(&mut self, rhs: CycloInt) {
        *self = *self + rhs;
    }
}

impl Sub for CycloInt {
    type Output = CycloInt;
    fn sub(self, rhs: CycloInt) -> CycloInt {
        self + (-rhs)
    }
}

impl Neg for CycloInt {
    type Output = CycloInt;
    fn neg(self) -> CycloInt {
        let mut c = [0; 8];
        for k in 0..8 {
            c[k] = self.c[k].checked_neg().expect(OVERFLOW);
        }
        CycloInt { c }
    }
}

impl Mul for CycloInt {
    type Output = CycloInt;
    fn mul(self, rhs: CycloInt) -> CycloInt {
        // Convolution folded by w^8 = -1.
        let mut c = [0i128; 8];
        for i in 0..8 {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..8 {
                if rhs.c[j] == 0 {
                    continue;
                }
                let prod = self.c[i].checked_mul(rhs.c[j]).expect(OVERFLOW);
                let k = i + j;
                if k < 8 {
                    c[k] = c[k].checked_add(prod).expect(OVERFLOW);
                } else {
                    c[k - 8] = c[k - 8].checked_sub(prod).expect(OVERFLOW);
                }
            }
        }
        CycloInt { c }
    }
}

impl Mul<i128> for CycloInt {
    type Output = CycloInt;
    fn mul(self, rhs: i128) -> CycloInt {
        self * CycloInt::from_int(rhs)
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &coef) in self.c.iter().enumerate() {
            if coef == 0 {
                continue;
            }
            let mag = coef.unsigned_abs();
            if first {
                if coef < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if coef < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", mag)?;
            } else if mag == 1 {
                write!(f, "w^{}", k)?;
            } else {
                write!(f, "{}w^{}", mag, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloInt({})", self)
    }
}
