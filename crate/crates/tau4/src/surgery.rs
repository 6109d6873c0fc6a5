//! The tau4 engines: characteristic sublink enumeration, the exponential
//! characteristic-sublink sum, the spin-structure mu-sum, the diagonal
//! product formula, and the model-driven variant.
//!
//! tau4(M) = omega^sigma(L) * sum over characteristic sublinks C of
//! (-1)^arf(C) * omega^(-C.C), with omega a primitive 16th root of unity.

use crate::cyclo::CycloInt;
use crate::error::{Error, Result};
use crate::gf2::{solve_affine, BitVec};
use crate::intmat::{signature, stable_diagonalize, SymIntMatrix};
use crate::invariants::{
    arf_from_invariant_data, arf_hoste_murakami_bounded, mu_invariant_bounded, LinkInvariantModel,
};
use crate::conway::DEFAULT_CROSSING_BOUND;
use crate::pd::PDLink;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::fmt;

pub const DEFAULT_COMPONENT_BOUND: usize = 24;

/// A sublink, encoded as a component mask over the diagram's ordering.
pub type Sublink = BitVec;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Tau4Method {
    Exponential,
    SpinSum,
    Product,
    Model,
    Counting,
}

impl fmt::Display for Tau4Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Tau4Method::Exponential => "exponential",
            Tau4Method::SpinSum => "spin-sum",
            Tau4Method::Product => "product",
            Tau4Method::Model => "model",
            Tau4Method::Counting => "counting",
        };
        write!(f, "{}", name)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Tau4Result {
    pub value: CycloInt,
    pub method: Tau4Method,
    pub terms: usize,
}

fn omega_pow_big(e: &BigInt) -> CycloInt {
    let r = ((e % 16u8) + 16u8) % 16u8;
    CycloInt::omega_pow(r.to_i64().expect("residue mod 16"))
}

/// All solutions of (lk mod 2) x = diag mod 2.  The solution set of a
/// symmetric matrix is never empty: any kernel vector x has
/// diag . x = x^T A x = 0, so the diagonal lies in the image.
pub fn characteristic_sublinks(lam: &SymIntMatrix) -> Result<Vec<Sublink>> {
    characteristic_sublinks_bounded(lam, DEFAULT_COMPONENT_BOUND)
}

pub fn characteristic_sublinks_bounded(
    lam: &SymIntMatrix,
    component_bound: usize,
) -> Result<Vec<Sublink>> {
    let n = lam.n();
    if n > component_bound {
        return Err(Error::BoundExceeded {
            what: "component count",
            value: n,
            bound: component_bound,
        });
    }
    let m2 = lam.mod2();
    let sol = solve_affine(&m2, &m2.diagonal())?;
    let particular = sol
        .particular
        .expect("diagonal of a symmetric matrix lies in its image mod 2");
    let k = sol.kernel.len();
    let mut out = Vec::with_capacity(1usize << k);
    for pick in 0u64..(1u64 << k) {
        let mut x = particular.clone();
        for (b, v) in sol.kernel.iter().enumerate() {
            if pick >> b & 1 == 1 {
                x.xor_assign(v);
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// 2^(mod-2 nullity), computed without enumerating anything.
pub fn count_characteristic_sublinks(lam: &SymIntMatrix) -> BigInt {
    let k = crate::gf2::kernel_basis(&lam.mod2()).len();
    BigInt::from(1) << k
}

pub fn tau4_exponential(link: &PDLink) -> Result<Tau4Result> {
    tau4_exponential_bounded(link, DEFAULT_COMPONENT_BOUND, DEFAULT_CROSSING_BOUND)
}

/// omega^sigma * sum over characteristic sublinks of (-1)^arf * omega^(-C.C).
pub fn tau4_exponential_bounded(
    link: &PDLink,
    component_bound: usize,
    crossing_bound: usize,
) -> Result<Tau4Result> {
    let lam = link.linking_matrix()?;
    let chars = characteristic_sublinks_bounded(&lam, component_bound)?;
    let sig = signature(&lam);
    let mut sum = CycloInt::ZERO;
    for x in &chars {
        let sub = link.restrict(x)?;
        let arf = arf_hoste_murakami_bounded(&sub, crossing_bound)?;
        let mut term = omega_pow_big(&-lam.evaluate_mask(x));
        if arf == 1 {
            term = -term;
        }
        sum = sum + term;
    }
    Ok(Tau4Result {
        value: CycloInt::omega_pow(sig) * sum,
        method: Tau4Method::Exponential,
        terms: chars.len(),
    })
}

pub fn tau4_spin_sum(link: &PDLink) -> Result<Tau4Result> {
    tau4_spin_sum_bounded(link, DEFAULT_COMPONENT_BOUND, DEFAULT_CROSSING_BOUND)
}

/// Sum of omega^mu over all spin structures, each mu evaluated afresh.
/// Agrees with tau4_exponential exactly because omega^8 = -1 turns the
/// 8*arf term into the sign (-1)^arf.
pub fn tau4_spin_sum_bounded(
    link: &PDLink,
    component_bound: usize,
    crossing_bound: usize,
) -> Result<Tau4Result> {
    let lam = link.linking_matrix()?;
    let chars = characteristic_sublinks_bounded(&lam, component_bound)?;
    let mut sum = CycloInt::ZERO;
    for x in &chars {
        let mu = mu_invariant_bounded(link, x, crossing_bound)?;
        sum = sum + CycloInt::omega_pow(mu as i64);
    }
    Ok(Tau4Result { value: sum, method: Tau4Method::SpinSum, terms: chars.len() })
}

/// The closed form for a diagonal linking matrix with trivial sublink Arf
/// contributions: omega^sigma_correction * omega^(-s) * prod over residues
/// 2i of (1 + omega^(-2i))^(b_i), where s is the sum of the odd framings
/// and b_i counts even framings congruent to 2i mod 16.
pub fn tau4_product(framings: &[i64], sigma_correction: i64) -> Tau4Result {
    let mut s: i64 = 0;
    let mut b = [0usize; 8];
    for &f in framings {
        let r = f.rem_euclid(16);
        if r % 2 == 1 {
            s = (s + r) % 16;
        } else {
            b[(r / 2) as usize] += 1;
        }
    }
    let mut value = CycloInt::omega_pow(sigma_correction) * CycloInt::omega_pow(-s);
    for (i, &count) in b.iter().enumerate() {
        if count > 0 {
            let factor = CycloInt::ONE + CycloInt::omega_pow(-2 * i as i64);
            value = value * factor.pow(count as i64).expect("nonnegative power");
        }
    }
    Tau4Result { value, method: Tau4Method::Product, terms: framings.len() + 1 }
}

/// Reduce the matrix by certified congruence, then evaluate the
/// characteristic sum blockwise on the reduced form.
///
/// Both the characteristic condition and the quadratic form split over
/// orthogonal blocks, so the sum factors.  An odd 1x1 block <d> is forced
/// into every characteristic sublink and contributes omega^(-d); an even
/// one is free and contributes 1 + omega^(-d); a k x k indecomposable
/// block (a hyperbolic pair and the like) is summed over its 2^k masks.
/// Already-diagonal input passes through the reduction untouched, so the
/// result then agrees with tau4_product term for term, n+1 evaluations
/// instead of the 2^n-scale enumeration of the sublink engines.
///
/// The Arf caveat, sharpened: a handle slide moves sign contributions
/// between the Arf term and the self-linking term of the full invariant,
/// so the Arf-free sum is an invariant of the presentation, not of the
/// congruence class.  The value computed here is the Arf-free sum of the
/// reduced presentation, and the caller asserts that presentation's Arf
/// contributions vanish, the same precondition tau4_product carries.
/// Inputs that are already orthogonal sums of 1x1 and sweep-stable blocks
/// are left as they stand, so for them (every diagonal matrix, the
/// 0-framed Hopf matrix, and their direct sums) the value equals direct
/// enumeration on the input itself; the oracle tests check exactly that.
pub fn tau4_diagonalize_and_product(lam: &SymIntMatrix) -> Tau4Result {
    let cert = stable_diagonalize(lam);
    debug_assert!(cert.verify(lam));
    let mut value = CycloInt::omega_pow(signature(lam));
    let mut terms = 1usize;
    for comp in cert.d.orthogonal_components() {
        if let [i] = comp[..] {
            let d = cert.d.get(i, i);
            let f = omega_pow_big(&-d);
            value = value * if d.is_odd() { f } else { CycloInt::ONE + f };
            terms += 1;
        } else {
            let block = cert.d.principal_submatrix(&comp);
            let m2 = block.mod2();
            let target = m2.diagonal();
            let k = comp.len();
            let mut sum = CycloInt::ZERO;
            for mask in 0u64..(1u64 << k) {
                let x = BitVec::from_mask(k, mask);
                if m2.mul_vec(&x).expect("square block") == target {
                    sum = sum + omega_pow_big(&-block.evaluate_mask(&x));
                }
            }
            value = value * sum;
            terms += 1usize << k;
        }
    }
    Tau4Result { value, method: Tau4Method::Product, terms }
}

pub fn tau4_of_model(model: &LinkInvariantModel) -> Result<Tau4Result> {
    tau4_of_model_bounded(model, DEFAULT_COMPONENT_BOUND)
}

/// The exponential sum with Arf values taken from supplied invariant data
/// instead of a diagram.
pub fn tau4_of_model_bounded(
    model: &LinkInvariantModel,
    component_bound: usize,
) -> Result<Tau4Result> {
    model.check_totally_proper()?;
    let lam = model.lk_matrix();
    let chars = characteristic_sublinks_bounded(lam, component_bound)?;
    let sig = signature(lam);
    let mut sum = CycloInt::ZERO;
    for x in &chars {
        let arf = arf_from_invariant_data(&model.restrict(x)?)?;
        let mut term = omega_pow_big(&-lam.evaluate_mask(x));
        if arf == 1 {
            term = -term;
        }
        sum = sum + term;
    }
    Ok(Tau4Result {
        value: CycloInt::omega_pow(sig) * sum,
        method: Tau4Method::Model,
        terms: chars.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::model_from_diagram;
    use std::collections::BTreeMap;

    fn braid(strands: usize, word: &[i64]) -> PDLink {
        PDLink::from_braid(strands, word).unwrap()
    }

    fn masks(subs: &[Sublink]) -> Vec<u64> {
        let mut m: Vec<u64> = subs.iter().map(|s| s.as_mask()).collect();
        m.sort_unstable();
        m
    }

    #[test]
    fn characteristic_sublinks_of_small_matrices() {
        let zero3 = SymIntMatrix::zeros(3);
        assert_eq!(characteristic_sublinks(&zero3).unwrap().len(), 8);

        let odd = SymIntMatrix::diag(&[1]);
        assert_eq!(masks(&characteristic_sublinks(&odd).unwrap()), vec![1]);

        let even = SymIntMatrix::diag(&[2]);
        assert_eq!(masks(&characteristic_sublinks(&even).unwrap()), vec![0, 1]);

        let mixed = SymIntMatrix::diag(&[3, 4]);
        assert_eq!(masks(&characteristic_sublinks(&mixed).unwrap()), vec![1, 3]);
    }

    #[test]
    fn characteristic_solution_can_differ_from_diagonal() {
        // For [[0,1],[1,1]] the diagonal (0,1) is not itself a solution;
        // the unique characteristic sublink is (1,0).
        let lam = SymIntMatrix::from_i64(&[vec![0, 1], vec![1, 1]]).unwrap();
        let subs = characteristic_sublinks(&lam).unwrap();
        assert_eq!(masks(&subs), vec![1]);
        let m2 = lam.mod2();
        let diag = m2.diagonal();
        assert_ne!(m2.mul_vec(&diag).unwrap(), diag);
    }

    #[test]
    fn characteristic_count_is_power_of_two_without_enumeration() {
        let lam = SymIntMatrix::zeros(20);
        assert_eq!(count_characteristic_sublinks(&lam), BigInt::from(1) << 20);
        for n in 1..6 {
            let lam = SymIntMatrix::diag(&vec![2; n]);
            let count = count_characteristic_sublinks(&lam);
            assert_eq!(count, BigInt::from(characteristic_sublinks(&lam).unwrap().len()));
        }
    }

    #[test]
    fn warm_up_manifolds() {
        let trefoil = braid(2, &[1, 1, 1]);
        assert_eq!(tau4_exponential(&trefoil).unwrap().value.as_integer(), Some(0));

        let whitehead = braid(3, &[1, -2, 1, -2, 1]);
        assert_eq!(tau4_exponential(&whitehead).unwrap().value.as_integer(), Some(2));

        let borromean = braid(3, &[1, -2, 1, -2, 1, -2]);
        let r = tau4_exponential(&borromean).unwrap();
        assert_eq!(r.value.as_integer(), Some(6));
        assert_eq!(r.terms, 8);
    }

    #[test]
    fn spin_sum_examples() {
        let zero_unknot = braid(1, &[]);
        assert_eq!(tau4_spin_sum(&zero_unknot).unwrap().value.as_integer(), Some(2));

        let plus_one = braid(1, &[]).with_framings(vec![1]).unwrap();
        let r = tau4_spin_sum(&plus_one).unwrap();
        assert_eq!(r.value.as_integer(), Some(1));
        assert_eq!(r.terms, 1);

        let borromean = braid(3, &[1, -2, 1, -2, 1, -2]);
        assert_eq!(tau4_spin_sum(&borromean).unwrap().value.as_integer(), Some(6));
    }

    #[test]
    fn exponential_equals_spin_sum() {
        let corpus: Vec<PDLink> = vec![
            braid(2, &[1, 1, 1]),
            braid(3, &[1, -2, 1, -2, 1]),
            braid(3, &[1, -2, 1, -2, 1, -2]),
            braid(2, &[1, 1, 1, 1]),
            braid(2, &[1, 1]),
            braid(2, &[1, 1]).with_framings(vec![2, -2]).unwrap(),
            braid(2, &[1, 1, 1]).with_framings(vec![3]).unwrap(),
        ];
        for link in &corpus {
            let a = tau4_exponential(link).unwrap();
            let b = tau4_spin_sum(link).unwrap();
            assert_eq!(a.value, b.value);
            assert_eq!(a.terms, b.terms);
        }
    }

    #[test]
    fn product_formula_examples() {
        assert_eq!(tau4_product(&[0], 0).value.as_integer(), Some(2));
        assert_eq!(tau4_product(&[1], 1).value.as_integer(), Some(1));
        for n in 1..8 {
            let r = tau4_product(&vec![0; n], 0);
            assert_eq!(r.value.as_integer(), Some(1 << n));
            assert_eq!(r.terms, n + 1);
        }
    }

    #[test]
    fn product_matches_enumeration_on_unlinks() {
        // n-component 0-framed unlink as an actual diagram.
        for n in 1..5 {
            let mut link = PDLink::empty();
            for _ in 0..n {
                link = link.disjoint_union(&braid(1, &[]));
            }
            let by_product = tau4_product(&vec![0; n], 0).value;
            let by_sum = tau4_exponential(&link).unwrap().value;
            assert_eq!(by_product, by_sum);
        }
    }

    #[test]
    fn diagonalize_and_product_on_hopf_matrix() {
        let hopf_matrix = SymIntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
        let closed = tau4_diagonalize_and_product(&hopf_matrix);
        let diagram = tau4_exponential(&braid(2, &[1, 1])).unwrap();
        assert_eq!(closed.value, diagram.value);
        assert_eq!(closed.value.as_integer(), Some(1));
    }

    #[test]
    fn diagonalize_and_product_on_diagonals() {
        let d22 = SymIntMatrix::diag(&[2, 2]);
        let got = tau4_diagonalize_and_product(&d22);
        let expected = (CycloInt::ONE + CycloInt::omega_pow(-2)).pow(2).unwrap()
            * CycloInt::omega_pow(2);
        assert_eq!(got.value, expected);
        assert_eq!(got.value.as_integer(), None);

        for n in 1..6 {
            let zero = SymIntMatrix::zeros(n);
            assert_eq!(tau4_diagonalize_and_product(&zero).value.as_integer(), Some(1 << n));
        }
    }

    #[test]
    fn diagonalize_and_product_matches_enumeration_on_framed_unlinks() {
        // Mixed-sign even framings exercise the done-row path: diagonal
        // input must reach the product formula untouched.
        let framing_sets: Vec<Vec<i64>> =
            vec![vec![2], vec![-4], vec![6, -4], vec![0, 2, -2], vec![8, -16, 10, -6]];
        for fr in &framing_sets {
            let mut link = PDLink::empty();
            for _ in 0..fr.len() {
                link = link.disjoint_union(&braid(1, &[]));
            }
            let link = link.with_framings(fr.clone()).unwrap();
            let closed = tau4_diagonalize_and_product(&link.linking_matrix().unwrap());
            let by_sum = tau4_exponential(&link).unwrap();
            assert_eq!(closed.value, by_sum.value);
            assert_eq!(closed.terms, fr.len() + 1);
            assert!(by_sum.terms >= 1 << (fr.iter().filter(|f| *f % 2 == 0).count()));
        }
    }

    #[test]
    fn diagonalize_and_product_on_block_sums() {
        // Arf-free characteristic sum, enumerated directly on the input.
        let alpha_free = |lam: &SymIntMatrix| -> CycloInt {
            let mut sum = CycloInt::ZERO;
            for x in characteristic_sublinks(lam).unwrap() {
                sum = sum + omega_pow_big(&-lam.evaluate_mask(&x));
            }
            CycloInt::omega_pow(signature(lam)) * sum
        };
        let hopf = SymIntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]).unwrap();
        let scaled = SymIntMatrix::from_i64(&[vec![0, 8], vec![8, 0]]).unwrap();
        let cases = vec![
            hopf.direct_sum(&SymIntMatrix::diag(&[3])),
            hopf.direct_sum(&hopf),
            scaled.clone(),
            scaled.direct_sum(&SymIntMatrix::diag(&[2, -5])),
        ];
        for lam in &cases {
            let got = tau4_diagonalize_and_product(lam);
            assert_eq!(got.value, alpha_free(lam), "block sum vs enumeration");
        }
        // The scale-8 hyperbolic block: all four masks characteristic,
        // every exponent a multiple of 16, so the factor is just 4.
        assert_eq!(tau4_diagonalize_and_product(&scaled).value.as_integer(), Some(4));
    }

    #[test]
    fn product_path_term_counts_stay_linear_on_diagonals() {
        let lam = SymIntMatrix::diag(&vec![2; 20]);
        let r = tau4_diagonalize_and_product(&lam);
        assert_eq!(r.terms, 21);
        assert_eq!(count_characteristic_sublinks(&lam), BigInt::from(1) << 20);
    }

    #[test]
    fn model_engine_examples() {
        let trefoil = LinkInvariantModel::new(
            1,
            vec![1],
            BTreeMap::new(),
            BTreeMap::new(),
            BTreeMap::new(),
            SymIntMatrix::zeros(1),
        )
        .unwrap();
        assert_eq!(tau4_of_model(&trefoil).unwrap().value.as_integer(), Some(0));

        let borromean = LinkInvariantModel::new(
            3,
            vec![0, 0, 0],
            BTreeMap::new(),
            BTreeMap::new(),
            BTreeMap::from([((0, 1, 2), 1)]),
            SymIntMatrix::zeros(3),
        )
        .unwrap();
        let r = tau4_of_model(&borromean).unwrap();
        assert_eq!(r.value.as_integer(), Some(6));
        assert_eq!(r.method, Tau4Method::Model);

        for n in 1..6 {
            let trivial = LinkInvariantModel::new(
                n,
                vec![0; n],
                BTreeMap::new(),
                BTreeMap::new(),
                BTreeMap::new(),
                SymIntMatrix::zeros(n),
            )
            .unwrap();
            assert_eq!(tau4_of_model(&trivial).unwrap().value.as_integer(), Some(1 << n));
        }
    }

    #[test]
    fn model_engine_matches_diagram_engine() {
        let corpus: Vec<PDLink> = vec![
            braid(2, &[1, 1, 1]),
            braid(3, &[1, -2, 1, -2, 1]),
            braid(3, &[1, -2, 1, -2, 1, -2]),
            braid(2, &[1, 1, 1]).disjoint_union(&braid(3, &[1, -2, 1, -2, 1, -2])),
        ];
        for link in &corpus {
            let model = model_from_diagram(link).unwrap();
            let by_model = tau4_of_model(&model).unwrap();
            let by_diagram = tau4_exponential(link).unwrap();
            assert_eq!(by_model.value, by_diagram.value);
            assert_eq!(by_model.terms, by_diagram.terms);
        }
    }

    #[test]
    fn stabilization_leaves_value_fixed() {
        // Adjoining a +-1-framed split unknot does not move the sum: the
        // new component is forced into every characteristic sublink and
        // its signature and self-linking contributions cancel.
        for (s, w) in [(2usize, vec![1i64, 1, 1]), (3, vec![1, -2, 1, -2, 1])] {
            let link = braid(s, &w);
            let base = tau4_spin_sum(&link).unwrap();
            for f in [1i64, -1] {
                let stab = link.disjoint_union(&braid(1, &[]).with_framings(vec![f]).unwrap());
                let stabbed = tau4_spin_sum(&stab).unwrap();
                assert_eq!(stabbed.value, base.value);
                assert_eq!(stabbed.terms, base.terms);
            }
        }
    }

    #[test]
    fn component_bound_enforced() {
        let lam = SymIntMatrix::zeros(30);
        let err = characteristic_sublinks(&lam).unwrap_err();
        assert!(err.is_size_bound());
    }

    #[test]
    fn method_labels() {
        assert_eq!(Tau4Method::Exponential.to_string(), "exponential");
        assert_eq!(Tau4Method::SpinSum.to_string(), "spin-sum");
        assert_eq!(Tau4Method::Product.to_string(), "product");
        assert_eq!(Tau4Method::Model.to_string(), "model");
        assert_eq!(Tau4Method::Counting.to_string(), "counting");
    }
}
