//! Arf and Brown invariants of links, and mu-invariants of spin structures
//! on surgery presentations.
//!
//! Two independent routes to the Arf invariant are provided: the local
//! formula summing Conway coefficients c1 over sublinks with at most three
//! components (Hoste, Murakami), and the same sum evaluated on separately
//! supplied per-component / per-pair / per-triple data.  Both require a
//! totally proper link: every pairwise linking number even.

use crate::conway::{c1_bounded, DEFAULT_CROSSING_BOUND};
use crate::enhanced::BrownValue;
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::intmat::{signature, SymIntMatrix};
use crate::pd::PDLink;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Arf, Sato-Levine and triple-linking data of a link, with its linking
/// matrix (framings on the diagonal).  All indices are 0-based and map
/// keys are strictly increasing tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkInvariantModel {
    n: usize,
    arf: Vec<u8>,
    quarter_sl: BTreeMap<(usize, usize), u8>,
    sato_levine: BTreeMap<(usize, usize), i64>,
    triple: BTreeMap<(usize, usize, usize), u8>,
    lk_matrix: SymIntMatrix,
}

fn check_bit(v: u8, what: &str) -> Result<()> {
    if v > 1 {
        return Err(Error::Invalid(format!("{} must be 0 or 1, got {}", what, v)));
    }
    Ok(())
}

impl LinkInvariantModel {
    pub fn new(
        n: usize,
        arf: Vec<u8>,
        quarter_sl: BTreeMap<(usize, usize), u8>,
        sato_levine: BTreeMap<(usize, usize), i64>,
        triple: BTreeMap<(usize, usize, usize), u8>,
        lk_matrix: SymIntMatrix,
    ) -> Result<Self> {
        if arf.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} arf values for {} components",
                arf.len(),
                n
            )));
        }
        if lk_matrix.n() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} linking matrix for {} components",
                lk_matrix.n(),
                lk_matrix.n(),
                n
            )));
        }
        for &a in &arf {
            check_bit(a, "arf value")?;
        }
        for (&(i, j), &q) in &quarter_sl {
            if i >= j || j >= n {
                return Err(Error::Invalid(format!("bad pair key ({}, {})", i, j)));
            }
            check_bit(q, "quarter_sl value")?;
        }
        for (&(i, j, k), &t) in &triple {
            if i >= j || j >= k || k >= n {
                return Err(Error::Invalid(format!("bad triple key ({}, {}, {})", i, j, k)));
            }
            check_bit(t, "triple value")?;
        }
        for (&(i, j), &lam) in &sato_levine {
            if i >= j || j >= n {
                return Err(Error::Invalid(format!("bad pair key ({}, {})", i, j)));
            }
            if lam.rem_euclid(2) != 0 {
                return Err(Error::Invalid(format!(
                    "sato_levine({}, {}) = {} must be even",
                    i + 1,
                    j + 1,
                    lam
                )));
            }
            let lk = lk_matrix.get(i, j);
            if ((BigInt::from(lam) + lk) % 4u8) != BigInt::zero() {
                return Err(Error::Inconsistent(format!(
                    "sato_levine({}, {}) = {} is not congruent to -lk = {} mod 4",
                    i + 1,
                    j + 1,
                    lam,
                    -lk
                )));
            }
            if let Some(&q) = quarter_sl.get(&(i, j)) {
                let quarter = ((BigInt::from(lam) + lk) / 4u8) % 2u8;
                if quarter != BigInt::from(q) {
                    return Err(Error::Inconsistent(format!(
                        "quarter_sl({}, {}) = {} disagrees with (sato_levine + lk)/4",
                        i + 1,
                        j + 1,
                        q
                    )));
                }
            }
        }
        Ok(LinkInvariantModel { n, arf, quarter_sl, sato_levine, triple, lk_matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arf_values(&self) -> &[u8] {
        &self.arf
    }

    pub fn lk_matrix(&self) -> &SymIntMatrix {
        &self.lk_matrix
    }

    pub fn sato_levine_entries(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.sato_levine
    }

    pub fn quarter_sl_entries(&self) -> &BTreeMap<(usize, usize), u8> {
        &self.quarter_sl
    }

    pub fn triple_entries(&self) -> &BTreeMap<(usize, usize, usize), u8> {
        &self.triple
    }

    /// (sato_levine + lk)/4 mod 2, falling back from explicit data to the
    /// Sato-Levine value and finally to 0 (unlink-like pair).
    pub fn quarter_sl_bit(&self, i: usize, j: usize) -> u8 {
        let key = (i.min(j), i.max(j));
        if let Some(&q) = self.quarter_sl.get(&key) {
            return q;
        }
        if let Some(&lam) = self.sato_levine.get(&key) {
            let lk = self.lk_matrix.get(key.0, key.1);
            let quarter = ((BigInt::from(lam) + lk) / 4u8) % 2u8;
            return if quarter.is_zero() { 0 } else { 1 };
        }
        0
    }

    pub fn triple_bit(&self, i: usize, j: usize, k: usize) -> u8 {
        let mut key = [i, j, k];
        key.sort_unstable();
        self.triple.get(&(key[0], key[1], key[2])).copied().unwrap_or(0)
    }

    /// The Sato-Levine value mod 8.  Resolved from explicit data, else from
    /// the quarter bit via lambda = 4q - lk mod 8; a pair with no data and
    /// nonzero linking number is reported missing rather than defaulted.
    pub fn sato_levine_mod8(&self, i: usize, j: usize) -> Result<u8> {
        let key = (i.min(j), i.max(j));
        if let Some(&lam) = self.sato_levine.get(&key) {
            return Ok(lam.rem_euclid(8) as u8);
        }
        let lk = self.lk_matrix.get(key.0, key.1);
        if let Some(&q) = self.quarter_sl.get(&key) {
            let lam = (BigInt::from(4 * q) - lk) % 8u8;
            let lam = ((lam % 8u8) + 8u8) % 8u8;
            return Ok(lam.to_u8().expect("reduced mod 8"));
        }
        if lk.is_zero() {
            return Ok(0);
        }
        Err(Error::MissingData(format!(
            "sato_levine or quarter_sl for pair ({}, {}) with lk = {}",
            key.0 + 1,
            key.1 + 1,
            lk
        )))
    }

    pub fn check_totally_proper(&self) -> Result<()> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                let lk = self.lk_matrix.get(i, j);
                if (lk % 2u8) != BigInt::zero() {
                    return Err(Error::NotTotallyProper {
                        i: i + 1,
                        j: j + 1,
                        lk: lk.to_i64().unwrap_or(1),
                    });
                }
            }
        }
        Ok(())
    }

    /// Sub-model on the masked components, reindexed from 0.
    pub fn restrict(&self, keep: &BitVec) -> Result<LinkInvariantModel> {
        if keep.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "mask of length {} for {} components",
                keep.len(),
                self.n
            )));
        }
        let old: Vec<usize> = keep.support();
        let new_of: BTreeMap<usize, usize> =
            old.iter().enumerate().map(|(new, &o)| (o, new)).collect();
        let arf = old.iter().map(|&o| self.arf[o]).collect();
        let quarter_sl = self
            .quarter_sl
            .iter()
            .filter(|((i, j), _)| keep.get(*i) && keep.get(*j))
            .map(|(&(i, j), &v)| ((new_of[&i], new_of[&j]), v))
            .collect();
        let sato_levine = self
            .sato_levine
            .iter()
            .filter(|((i, j), _)| keep.get(*i) && keep.get(*j))
            .map(|(&(i, j), &v)| ((new_of[&i], new_of[&j]), v))
            .collect();
        let triple = self
            .triple
            .iter()
            .filter(|((i, j, k), _)| keep.get(*i) && keep.get(*j) && keep.get(*k))
            .map(|(&(i, j, k), &v)| ((new_of[&i], new_of[&j], new_of[&k]), v))
            .collect();
        let lk_matrix = self.lk_matrix.principal_submatrix(&old);
        LinkInvariantModel::new(old.len(), arf, quarter_sl, sato_levine, triple, lk_matrix)
    }

    /// Sum of the off-diagonal upper entries of the linking matrix.
    pub fn total_linking(&self) -> BigInt {
        let mut total = BigInt::zero();
        for i in 0..self.n {
            for j in i + 1..self.n {
                total += self.lk_matrix.get(i, j);
            }
        }
        total
    }
}

pub fn check_totally_proper(link: &PDLink) -> Result<()> {
    let n = link.ncomponents();
    for i in 0..n {
        for j in i + 1..n {
            let lk = link.linking_number(i, j)?;
            if lk.rem_euclid(2) != 0 {
                return Err(Error::NotTotallyProper { i: i + 1, j: j + 1, lk });
            }
        }
    }
    Ok(())
}

/// Arf invariant as the mod-2 sum of Conway coefficients c1(S) over all
/// nonempty sublinks S with at most three components.
pub fn arf_hoste_murakami(link: &PDLink) -> Result<u8> {
    arf_hoste_murakami_bounded(link, DEFAULT_CROSSING_BOUND)
}

pub fn arf_hoste_murakami_bounded(link: &PDLink, crossing_bound: usize) -> Result<u8> {
    check_totally_proper(link)?;
    let n = link.ncomponents();
    let mut alpha = 0i64;
    let c1_of = |idx: &[usize]| -> Result<i64> {
        let sub = link.restrict(&BitVec::from_indices(n, idx))?;
        c1_bounded(&sub, crossing_bound)
    };
    for i in 0..n {
        alpha += c1_of(&[i])?;
        for j in i + 1..n {
            alpha += c1_of(&[i, j])?;
            for k in j + 1..n {
                alpha += c1_of(&[i, j, k])?;
            }
        }
    }
    Ok(alpha.rem_euclid(2) as u8)
}

/// The same sublink sum evaluated on supplied invariant data:
/// sum of arf_i, plus quarter Sato-Levine bits, plus triple bits, mod 2.
pub fn arf_from_invariant_data(model: &LinkInvariantModel) -> Result<u8> {
    model.check_totally_proper()?;
    let n = model.n();
    let mut alpha: u8 = 0;
    for i in 0..n {
        alpha ^= model.arf_values()[i];
        for j in i + 1..n {
            alpha ^= model.quarter_sl_bit(i, j);
            for k in j + 1..n {
                alpha ^= model.triple_bit(i, j, k);
            }
        }
    }
    Ok(alpha)
}

/// Brown invariant of a totally proper link: 4*arf + total linking, mod 8.
/// Each term depends on orientations; the sum does not.
pub fn brown_of_proper_link(link: &PDLink) -> Result<u8> {
    brown_of_proper_link_bounded(link, DEFAULT_CROSSING_BOUND)
}

pub fn brown_of_proper_link_bounded(link: &PDLink, crossing_bound: usize) -> Result<u8> {
    let alpha = arf_hoste_murakami_bounded(link, crossing_bound)?;
    let lk = link.total_linking()?;
    Ok((4 * alpha as i64 + lk).rem_euclid(8) as u8)
}

/// Brown invariant from invariant data: 4*arf_i summed over components,
/// minus the Sato-Levine values, plus 4 times the triple bits, mod 8.
pub fn brown_totally_proper_model(model: &LinkInvariantModel) -> Result<u8> {
    model.check_totally_proper()?;
    let n = model.n();
    let mut beta: i64 = 0;
    for i in 0..n {
        beta += 4 * model.arf_values()[i] as i64;
        for j in i + 1..n {
            beta -= model.sato_levine_mod8(i, j)? as i64;
            for k in j + 1..n {
                beta += 4 * model.triple_bit(i, j, k) as i64;
            }
        }
    }
    Ok(beta.rem_euclid(8) as u8)
}

/// Data of an immersed surface system bounded by a link: the Brown value
/// of its enhanced intersection form, half the sum of induced framings,
/// the quarter-twist total over double curves, the number of triple
/// points, and the link's total linking number.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ImmersionData {
    pub beta_f: BrownValue,
    pub phi_f: i64,
    pub delta_f: u8,
    pub tau_f: u64,
    pub lk_total: i64,
}

/// Brown invariant and Arf invariant of the bounded link:
/// beta = beta_f - phi_f + 3 delta_f + 4 tau_f mod 8, and arf as a quarter
/// of the exact integer beta_f - phi_f - lk + 3 delta_f + 4 tau_f, which
/// must be divisible by 4.
pub fn combine_immersion_data(data: &ImmersionData) -> Result<(u8, u8)> {
    let BrownValue::Finite(b) = data.beta_f else {
        return Err(Error::Invalid(
            "infinite Brown value: the bounded link is not proper".into(),
        ));
    };
    let tau = i64::try_from(data.tau_f)
        .map_err(|_| Error::Invalid("triple point count overflows".into()))?;
    let common = b as i64 - data.phi_f + 3 * (data.delta_f % 8) as i64 + 4 * tau;
    let beta = common.rem_euclid(8) as u8;
    let nu = common - data.lk_total;
    if nu.rem_euclid(4) != 0 {
        return Err(Error::Inconsistent(format!(
            "beta_f - phi_f - lk + 3 delta_f + 4 tau_f = {} is not divisible by 4",
            nu
        )));
    }
    let arf = (nu / 4).rem_euclid(2) as u8;
    Ok((beta, arf))
}

/// mu-invariant of the spin structure selected by a characteristic sublink:
/// signature - C.C + 8 arf(C), mod 16.  The framed linking matrix supplies
/// both the quadratic term and the characteristic condition.
pub fn mu_invariant(link: &PDLink, sublink: &BitVec) -> Result<u8> {
    mu_invariant_bounded(link, sublink, DEFAULT_CROSSING_BOUND)
}

pub fn mu_invariant_bounded(link: &PDLink, sublink: &BitVec, crossing_bound: usize) -> Result<u8> {
    let n = link.ncomponents();
    if sublink.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "sublink mask of length {} for {} components",
            sublink.len(),
            n
        )));
    }
    let lam = link.linking_matrix()?;
    let m2 = lam.mod2();
    if m2.mul_vec(sublink)? != m2.diagonal() {
        return Err(Error::NotCharacteristic);
    }
    let sig = signature(&lam);
    let cc = lam.evaluate_mask(sublink);
    let sub = link.restrict(sublink)?;
    let arf = arf_hoste_murakami_bounded(&sub, crossing_bound)?;
    let mu = (BigInt::from(sig) - cc + 8 * arf) % 16u8;
    let mu = ((mu % 16u8) + 16u8) % 16u8;
    Ok(mu.to_u8().expect("reduced mod 16"))
}

/// Extract the full invariant model of a totally proper diagram: per-
/// component Arf values, quarter Sato-Levine bits and triple bits all come
/// from Conway coefficients of sublinks; the linking matrix keeps the
/// diagram's framings on its diagonal.
pub fn model_from_diagram(link: &PDLink) -> Result<LinkInvariantModel> {
    model_from_diagram_bounded(link, DEFAULT_CROSSING_BOUND)
}

pub fn model_from_diagram_bounded(
    link: &PDLink,
    crossing_bound: usize,
) -> Result<LinkInvariantModel> {
    check_totally_proper(link)?;
    let n = link.ncomponents();
    let c1_bit = |idx: &[usize]| -> Result<u8> {
        let sub = link.restrict(&BitVec::from_indices(n, idx))?;
        Ok(c1_bounded(&sub, crossing_bound)?.rem_euclid(2) as u8)
    };
    let mut arf = Vec::with_capacity(n);
    let mut quarter_sl = BTreeMap::new();
    let mut triple = BTreeMap::new();
    for i in 0..n {
        arf.push(c1_bit(&[i])?);
    }
    for i in 0..n {
        for j in i + 1..n {
            quarter_sl.insert((i, j), c1_bit(&[i, j])?);
            for k in j + 1..n {
                triple.insert((i, j, k), c1_bit(&[i, j, k])?);
            }
        }
    }
    let lk_matrix = link.linking_matrix()?;
    LinkInvariantModel::new(n, arf, quarter_sl, BTreeMap::new(), triple, lk_matrix)
}
