//! The #3-SAT counting pipeline: DIMACS ingestion, clause polynomials over
//! GF(2), quadraticization with shared product variables, the z-variable
//! single-cubic construction, exact counting, and the bridge from cubic
//! forms to surgery data (invariant models and explicit link diagrams).

use crate::error::{Error, Result};
use crate::intmat::SymIntMatrix;
use crate::invariants::LinkInvariantModel;
use crate::pd::PDLink;
use crate::surgery::{Tau4Method, Tau4Result};
use crate::conway::DEFAULT_CROSSING_BOUND;
use crate::cyclo::CycloInt;
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_COUNT_BOUND: usize = 26;

/// A CNF formula with width-3 clauses.  Literals are 1-based and signed;
/// duplicates inside a clause are allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CNF3 {
    nvars: usize,
    clauses: Vec<[i64; 3]>,
}

impl CNF3 {
    pub fn new(nvars: usize, clauses: Vec<[i64; 3]>) -> Result<Self> {
        for (ci, clause) in clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > nvars {
                    return Err(Error::Invalid(format!(
                        "literal {} out of range in clause {}",
                        lit,
                        ci + 1
                    )));
                }
            }
        }
        Ok(CNF3 { nvars, clauses })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn clauses(&self) -> &[[i64; 3]] {
        &self.clauses
    }
}

/// DIMACS CNF parser; every clause must have width exactly 3.
pub fn parse_dimacs(text: &str) -> Result<CNF3> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[i64; 3]> = Vec::new();
    let mut pending: Vec<i64> = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::Dimacs { line, msg: "duplicate header".into() });
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(Error::Dimacs { line, msg: "expected 'p cnf <vars> <clauses>'".into() });
            }
            let nv = fields[2]
                .parse::<usize>()
                .map_err(|_| Error::Dimacs { line, msg: "bad variable count".into() })?;
            let nc = fields[3]
                .parse::<usize>()
                .map_err(|_| Error::Dimacs { line, msg: "bad clause count".into() })?;
            header = Some((nv, nc));
            continue;
        }
        let (nv, _) = header.ok_or(Error::Dimacs { line, msg: "clause before header".into() })?;
        for tok in trimmed.split_whitespace() {
            let lit = tok
                .parse::<i64>()
                .map_err(|_| Error::Dimacs { line, msg: format!("bad literal '{}'", tok) })?;
            if lit == 0 {
                if pending.len() != 3 {
                    return Err(Error::Dimacs {
                        line,
                        msg: format!("clause of width {} (must be 3)", pending.len()),
                    });
                }
                clauses.push([pending[0], pending[1], pending[2]]);
                pending.clear();
            } else {
                if lit.unsigned_abs() as usize > nv {
                    return Err(Error::Dimacs {
                        line,
                        msg: format!("literal {} exceeds {} variables", lit, nv),
                    });
                }
                pending.push(lit);
            }
        }
    }
    if !pending.is_empty() {
        return Err(Error::Dimacs { line: 0, msg: "unterminated clause at end of input".into() });
    }
    let (nv, nc) = header.ok_or(Error::Dimacs { line: 0, msg: "missing header".into() })?;
    if clauses.len() != nc {
        return Err(Error::Dimacs {
            line: 0,
            msg: format!("header promises {} clauses, found {}", nc, clauses.len()),
        });
    }
    CNF3::new(nv, clauses)
}

/// Multilinear polynomial over GF(2).  A monomial is a strictly increasing
/// list of 0-based variable indices; the empty monomial is the constant 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GF2Poly {
    nvars: usize,
    monomials: BTreeSet<Vec<usize>>,
}

impl GF2Poly {
    pub fn zero(nvars: usize) -> Self {
        GF2Poly { nvars, monomials: BTreeSet::new() }
    }

    pub fn one(nvars: usize) -> Self {
        GF2Poly { nvars, monomials: BTreeSet::from([vec![]]) }
    }

    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::Invalid(format!("variable {} of {}", i, nvars)));
        }
        Ok(GF2Poly { nvars, monomials: BTreeSet::from([vec![i]]) })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn monomials(&self) -> &BTreeSet<Vec<usize>> {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    fn toggle(&mut self, mono: Vec<usize>) {
        if !self.monomials.insert(mono.clone()) {
            self.monomials.remove(&mono);
        }
    }

    pub fn add(&self, other: &GF2Poly) -> Result<GF2Poly> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "adding polynomials over {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        let mut out = self.clone();
        for m in &other.monomials {
            out.toggle(m.clone());
        }
        Ok(out)
    }

    /// Multilinear product: x_i^2 = x_i.
    pub fn mul(&self, other: &GF2Poly) -> Result<GF2Poly> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "multiplying polynomials over {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        let mut out = GF2Poly::zero(self.nvars);
        for a in &self.monomials {
            for b in &other.monomials {
                let mut m: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                m.sort_unstable();
                m.dedup();
                out.toggle(m);
            }
        }
        Ok(out)
    }

    /// Same polynomial viewed over a larger variable set.
    pub fn extended(&self, nvars: usize) -> Result<GF2Poly> {
        if nvars < self.nvars {
            return Err(Error::Invalid("cannot shrink a polynomial's variable set".into()));
        }
        Ok(GF2Poly { nvars, monomials: self.monomials.clone() })
    }

    pub fn eval(&self, assignment: u64) -> u8 {
        let mut acc = 0u8;
        for m in &self.monomials {
            if m.iter().all(|&i| assignment >> i & 1 == 1) {
                acc ^= 1;
            }
        }
        acc
    }
}

/// One polynomial per clause under T = 0, F = 1: a positive literal on x
/// becomes the factor x, a negated one becomes 1 + x, and the clause holds
/// exactly when the product vanishes.
pub fn cnf_to_cubic_system(cnf: &CNF3) -> Vec<GF2Poly> {
    let n = cnf.nvars();
    cnf.clauses()
        .iter()
        .map(|clause| {
            let mut poly = GF2Poly::one(n);
            for &lit in clause {
                let v = lit.unsigned_abs() as usize - 1;
                let x = GF2Poly::var(n, v).expect("validated literal");
                let factor =
                    if lit > 0 { x } else { GF2Poly::one(n).add(&x).expect("same nvars") };
                poly = poly.mul(&factor).expect("same nvars");
            }
            poly
        })
        .collect()
}

/// A system of degree-at-most-2 polynomials over m variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadSystem {
    m: usize,
    polys: Vec<GF2Poly>,
}

impl QuadSystem {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn polys(&self) -> &[GF2Poly] {
        &self.polys
    }
}

/// Replace each cubic equation by two quadratics: a defining equation
/// w + x_a x_b for a product variable over the lexicographically smallest
/// pair of the (unique) cubic monomial, and the substituted equation.
/// Product variables are shared across equations, with the defining
/// equation repeated on reuse so that exactly 2r polynomials come out.
/// Degree-at-most-2 inputs get a trivial 0 = 0 companion instead.
pub fn to_quad_system(nvars: usize, cubics: &[GF2Poly]) -> Result<QuadSystem> {
    let mut m = nvars;
    let mut pair_var: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    // (defining pair and companion monomial set) per input equation.
    let mut staged: Vec<(Option<(usize, usize, usize)>, BTreeSet<Vec<usize>>)> = Vec::new();
    for p in cubics {
        if p.nvars() != nvars {
            return Err(Error::DimensionMismatch(format!(
                "polynomial over {} variables in a {}-variable system",
                p.nvars(),
                nvars
            )));
        }
        if p.degree() > 3 {
            return Err(Error::Invalid("polynomial of degree > 3".into()));
        }
        let cubic_monos: Vec<&Vec<usize>> =
            p.monomials().iter().filter(|m| m.len() == 3).collect();
        match cubic_monos.len() {
            0 => staged.push((None, p.monomials().clone())),
            1 => {
                let t = cubic_monos[0].clone();
                let (a, b, c) = (t[0], t[1], t[2]);
                let w = *pair_var.entry((a, b)).or_insert_with(|| {
                    let fresh = m;
                    m += 1;
                    fresh
                });
                let mut monos = p.monomials().clone();
                monos.remove(&t);
                let substituted = vec![c, w];
                if !monos.insert(substituted.clone()) {
                    monos.remove(&substituted);
                }
                staged.push((Some((a, b, w)), monos));
            }
            _ => {
                return Err(Error::Invalid(
                    "clause polynomials carry at most one cubic monomial".into(),
                ))
            }
        }
    }
    let mut polys = Vec::with_capacity(2 * cubics.len());
    for (def, monos) in staged {
        let defining = match def {
            Some((a, b, w)) => {
                GF2Poly { nvars: m, monomials: BTreeSet::from([vec![w], vec![a, b]]) }
            }
            None => GF2Poly::zero(m),
        };
        polys.push(defining);
        polys.push(GF2Poly { nvars: m, monomials: monos });
    }
    Ok(QuadSystem { m, polys })
}

/// A cubic form with no constant term: index sets of the monomials with
/// coefficient 1, each strictly increasing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicForm {
    n: usize,
    linear: BTreeSet<usize>,
    quadratic: BTreeSet<(usize, usize)>,
    cubic: BTreeSet<(usize, usize, usize)>,
}

impl CubicForm {
    pub fn new(
        n: usize,
        linear: BTreeSet<usize>,
        quadratic: BTreeSet<(usize, usize)>,
        cubic: BTreeSet<(usize, usize, usize)>,
    ) -> Result<Self> {
        for &i in &linear {
            if i >= n {
                return Err(Error::Invalid(format!("linear index {} of {}", i, n)));
            }
        }
        for &(i, j) in &quadratic {
            if i >= j || j >= n {
                return Err(Error::Invalid(format!("bad quadratic monomial ({}, {})", i, j)));
            }
        }
        for &(i, j, k) in &cubic {
            if i >= j || j >= k || k >= n {
                return Err(Error::Invalid(format!("bad cubic monomial ({}, {}, {})", i, j, k)));
            }
        }
        Ok(CubicForm { n, linear, quadratic, cubic })
    }

    pub fn zero(n: usize) -> Self {
        CubicForm { n, linear: BTreeSet::new(), quadratic: BTreeSet::new(), cubic: BTreeSet::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn linear(&self) -> &BTreeSet<usize> {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeSet<(usize, usize)> {
        &self.quadratic
    }

    pub fn cubic(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.cubic
    }

    fn monomial_masks(&self) -> Vec<u64> {
        let mut masks = Vec::new();
        masks.extend(self.linear.iter().map(|&i| 1u64 << i));
        masks.extend(self.quadratic.iter().map(|&(i, j)| 1u64 << i | 1u64 << j));
        masks.extend(self.cubic.iter().map(|&(i, j, k)| 1u64 << i | 1u64 << j | 1u64 << k));
        masks
    }

    pub fn eval(&self, assignment: u64) -> u8 {
        let mut acc = 0u8;
        for m in self.monomial_masks() {
            if assignment & m == m {
                acc ^= 1;
            }
        }
        acc
    }
}

/// c = sum of z_i q_i over the m + k variables (z_i is variable m + i).
/// Constant terms inside q_i become z_i linear terms, so the result never
/// has a constant term; no cancellation can occur since each monomial
/// carries its own z_i.
pub fn to_single_cubic(q: &QuadSystem) -> Result<CubicForm> {
    let m = q.m();
    let k = q.polys().len();
    let n = m + k;
    if n > 64 {
        return Err(Error::BoundExceeded { what: "variable count", value: n, bound: 64 });
    }
    let mut linear = BTreeSet::new();
    let mut quadratic = BTreeSet::new();
    let mut cubic = BTreeSet::new();
    for (i, p) in q.polys().iter().enumerate() {
        let z = m + i;
        for mono in p.monomials() {
            let fresh = match mono.as_slice() {
                [] => linear.insert(z),
                [a] => quadratic.insert((*a, z)),
                [a, b] => cubic.insert((*a, *b, z)),
                _ => return Err(Error::Invalid("quadratic system has degree > 2".into())),
            };
            debug_assert!(fresh, "each monomial owns its z variable");
        }
    }
    CubicForm::new(n, linear, quadratic, cubic)
}

pub fn count_zeros(c: &CubicForm) -> Result<u64> {
    count_zeros_bounded(c, DEFAULT_COUNT_BOUND)
}

pub fn count_zeros_bounded(c: &CubicForm, bound: usize) -> Result<u64> {
    if c.n() > bound {
        return Err(Error::BoundExceeded { what: "variable count", value: c.n(), bound });
    }
    let masks = c.monomial_masks();
    let mut zeros = 0u64;
    for x in 0..1u64 << c.n() {
        let ones = masks.iter().filter(|&&m| x & m == m).count();
        if ones % 2 == 0 {
            zeros += 1;
        }
    }
    Ok(zeros)
}

/// Exact number of common zeros of a polynomial system.
pub fn count_common_zeros(nvars: usize, polys: &[GF2Poly], bound: usize) -> Result<u64> {
    if nvars > bound {
        return Err(Error::BoundExceeded { what: "variable count", value: nvars, bound });
    }
    for p in polys {
        if p.nvars() != nvars {
            return Err(Error::DimensionMismatch(format!(
                "polynomial over {} variables in a {}-variable system",
                p.nvars(),
                nvars
            )));
        }
    }
    let mut zeros = 0u64;
    for x in 0..1u64 << nvars {
        if polys.iter().all(|p| p.eval(x) == 0) {
            zeros += 1;
        }
    }
    Ok(zeros)
}

pub fn count_models(cnf: &CNF3) -> Result<u64> {
    count_models_bounded(cnf, DEFAULT_COUNT_BOUND)
}

/// Satisfying assignments, counted directly on the clauses (independent of
/// the T = 0 polynomial encoding; bit 1 means true here).
pub fn count_models_bounded(cnf: &CNF3, bound: usize) -> Result<u64> {
    let n = cnf.nvars();
    if n > bound {
        return Err(Error::BoundExceeded { what: "variable count", value: n, bound });
    }
    let mut models = 0u64;
    for x in 0..1u64 << n {
        let ok = cnf.clauses().iter().all(|clause| {
            clause.iter().any(|&lit| {
                let bit = x >> (lit.unsigned_abs() as usize - 1) & 1;
                if lit > 0 {
                    bit == 1
                } else {
                    bit == 0
                }
            })
        });
        if ok {
            models += 1;
        }
    }
    Ok(models)
}

/// tau4 of the surgered manifold of a cubic form: the character sum
/// 2 #c - 2^n, evaluated by counting.
pub fn tau4_of_cubic(c: &CubicForm) -> Result<Tau4Result> {
    tau4_of_cubic_bounded(c, DEFAULT_COUNT_BOUND)
}

pub fn tau4_of_cubic_bounded(c: &CubicForm, bound: usize) -> Result<Tau4Result> {
    let zeros = count_zeros_bounded(c, bound)?;
    let value = 2 * zeros as i128 - (1i128 << c.n());
    Ok(Tau4Result {
        value: CycloInt::from_int(value),
        method: Tau4Method::Counting,
        terms: 1usize << c.n(),
    })
}

/// The invariant model of the surgery link of a cubic form: a 0-framed,
/// pairwise-unlinked family where component i carries a trefoil when
/// c_i = 1, pairs carry a Whitehead clasp when c_ij = 1, and triples carry
/// Borromean data when c_ijk = 1.
pub fn cubic_to_model(c: &CubicForm) -> LinkInvariantModel {
    let n = c.n();
    let mut arf = vec![0u8; n];
    for &i in c.linear() {
        arf[i] = 1;
    }
    let quarter_sl = c.quadratic().iter().map(|&p| (p, 1u8)).collect();
    let triple = c.cubic().iter().map(|&t| (t, 1u8)).collect();
    LinkInvariantModel::new(n, arf, quarter_sl, BTreeMap::new(), triple, SymIntMatrix::zeros(n))
        .expect("models from cubic forms are always consistent")
}

/// Append `count` letters moving a bundle strand under everything from its
/// home to a gadget seat and back.
fn transit_out(word: &mut Vec<i64>, from: usize, to: usize) {
    for q in from..=to {
        word.push(q as i64);
    }
}

fn transit_back(word: &mut Vec<i64>, from: usize, to: usize) {
    for q in (to..=from).rev() {
        word.push(-(q as i64));
    }
}

/// An explicit surgery diagram for a cubic form, built as the closure of
/// one braid on 2n strands.  Component i lives on the strand pair at
/// 1-based positions (2i+1, 2i+2); for each quadratic or cubic monomial a
/// visiting strand travels under everything to the target bundle, runs a
/// Whitehead-clasp or Borromean pattern there, and returns the same way,
/// so all pairwise linking numbers stay 0.  Afterwards each bundle's
/// internal twist is adjusted to an exponent that is +-1 mod 8 (component
/// Arf 0) or +-3 mod 8 (component Arf 1); the twist region meets only its
/// own component, so it changes nothing but that component's Arf.
pub fn cubic_to_pdlink(c: &CubicForm) -> Result<PDLink> {
    cubic_to_pdlink_bounded(c, DEFAULT_CROSSING_BOUND)
}

pub fn cubic_to_pdlink_bounded(c: &CubicForm, crossing_bound: usize) -> Result<PDLink> {
    let n = c.n();
    if n == 0 {
        return Ok(PDLink::empty());
    }
    let mut word: Vec<i64> = Vec::new();
    // Signed internal crossing exponent accumulated per bundle.
    let mut internal = vec![0i64; n];
    for &(i, j) in c.quadratic() {
        // Bundle i's right strand visits bundle j.
        let seat = 2 * j;
        transit_out(&mut word, 2 * i + 2, seat - 1);
        let p = seat as i64;
        word.extend([p, -(p + 1), p, -(p + 1), p]);
        internal[j] += 1;
        transit_back(&mut word, seat - 1, 2 * i + 2);
    }
    for &(i, j, k) in c.cubic() {
        // Bundle j's right strand takes the middle seat, bundle i's the
        // left one; the pattern also catches bundle k's left strand.
        transit_out(&mut word, 2 * j + 2, 2 * k - 1);
        transit_out(&mut word, 2 * i + 2, 2 * k - 2);
        let p = (2 * k - 1) as i64;
        word.extend([p, -(p + 1), p, -(p + 1), p, -(p + 1)]);
        transit_back(&mut word, 2 * k - 2, 2 * i + 2);
        transit_back(&mut word, 2 * k - 1, 2 * j + 2);
    }
    // Twist each bundle to the nearest exponent with the right Arf class;
    // an odd exponent also closes the bundle into a single circle.
    for comp in 0..n {
        let want_odd_arf = c.linear().contains(&comp);
        let target = |e: i64| {
            let r = e.rem_euclid(8);
            let arf_one = r == 3 || r == 5;
            r % 2 == 1 && arf_one == want_odd_arf
        };
        let delta = (0..)
            .flat_map(|d| [d, -d])
            .find(|d| target(internal[comp] + d))
            .expect("an admissible exponent is within distance 3");
        let letter = (2 * comp + 1) as i64 * delta.signum();
        for _ in 0..delta.abs() {
            word.push(letter);
        }
        internal[comp] += delta;
    }
    if word.len() > crossing_bound {
        return Err(Error::BoundExceeded {
            what: "crossing count",
            value: word.len(),
            bound: crossing_bound,
        });
    }
    PDLink::from_braid(2 * n, &word)
}

/// The behavioral contract of cubic_to_pdlink: over the 0-framed diagram
/// every component mask is characteristic, and the Arf invariant of each
/// masked sublink must equal the form evaluated at that mask.
pub fn pdlink_matches_cubic(c: &CubicForm, link: &PDLink, crossing_bound: usize) -> Result<bool> {
    use crate::gf2::BitVec;
    use crate::invariants::arf_hoste_murakami_bounded;
    let n = c.n();
    if link.ncomponents() != n {
        return Ok(false);
    }
    for x in 0..1u64 << n {
        let sub = link.restrict(&BitVec::from_mask(n, x))?;
        if arf_hoste_murakami_bounded(&sub, crossing_bound)? != c.eval(x) {
            return Ok(false);
        }
    }
    Ok(true)
}
