//! Exact-arithmetic toolkit for surgery presentations of 3-manifolds.
//!
//! Everything here is computed over exact rings: GF(2), Z, Q, and the
//! cyclotomic ring Z[w]/(w^8 + 1) where w is a primitive 16th root of
//! unity.  No floating point is used anywhere.
//!
//! The main pipelines:
//!
//! * [`enhanced`]: Z4-valued enhancements of inner product spaces over
//!   GF(2), their Brown invariant, Gauss sums, and classification.
//! * [`pd`] / [`conway`]: planar diagram codes for framed links, Conway
//!   polynomials via the skein relation, and the low-degree coefficients
//!   that feed the Arf invariant.
//! * [`invariants`]: Arf and Brown invariants of proper links, both from
//!   diagrams and from tables of local data (Sato-Levine numbers, Milnor
//!   triple linking numbers).
//! * [`surgery`]: the quantum invariant tau4 of the 3-manifold obtained
//!   by surgery on a framed link, by several independent engines.
//! * [`reduction`]: #3-SAT -> cubic form counting reduction and the
//!   surgery links realizing a cubic form.

pub mod cyclo;
pub mod enhanced;
pub mod error;
pub mod gf2;
pub mod intmat;
pub mod pd;
pub mod conway;
pub mod invariants;
pub mod surgery;
pub mod reduction;

pub use cyclo::CycloInt;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use intmat::{signature, stable_diagonalize, CongruenceCertificate, SymIntMatrix};
