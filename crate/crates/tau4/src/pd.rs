//! Oriented link diagrams as planar-diagram (PD) crossing lists.
//!
//! A crossing stores its four incident arcs counterclockwise starting from
//! the incoming under-strand arc (slot 0).  The under-strand always runs
//! slot 0 -> slot 2.  For a positive crossing the over-strand enters at
//! slot 1 and leaves at slot 3; for a negative crossing it enters at slot 3
//! and leaves at slot 1.  Every arc id occurs exactly once as an incoming
//! slot and once as an outgoing slot; closed curves that meet no crossing
//! are kept separately as free loops identified by a single arc id.

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::intmat::SymIntMatrix;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub arcs: [usize; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn new(arcs: [usize; 4], sign: i8) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Invalid(format!("crossing sign must be +1 or -1, got {}", sign)));
        }
        Ok(Crossing { arcs, sign })
    }

    pub fn under_in(&self) -> usize {
        self.arcs[0]
    }

    pub fn under_out(&self) -> usize {
        self.arcs[2]
    }

    pub fn over_in(&self) -> usize {
        if self.sign > 0 {
            self.arcs[1]
        } else {
            self.arcs[3]
        }
    }

    pub fn over_out(&self) -> usize {
        if self.sign > 0 {
            self.arcs[3]
        } else {
            self.arcs[1]
        }
    }

    /// The same four arc ends with the opposite strand on top.  Strand
    /// connectivity (who flows to whom) is unchanged.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        if self.sign > 0 {
            Crossing { arcs: [b, c, d, a], sign: -1 }
        } else {
            Crossing { arcs: [d, a, b, c], sign: 1 }
        }
    }

    /// Arc identifications performed by the oriented smoothing: incoming
    /// under joins outgoing over, incoming over joins outgoing under.
    fn smoothing_pairs(&self) -> [(usize, usize); 2] {
        let [a, b, c, d] = self.arcs;
        if self.sign > 0 {
            [(a, d), (b, c)]
        } else {
            [(a, b), (c, d)]
        }
    }
}

/// Union-find over arc ids with minimum-id representatives.
struct ArcClasses {
    parent: BTreeMap<usize, usize>,
}

impl ArcClasses {
    fn new() -> Self {
        ArcClasses { parent: BTreeMap::new() }
    }

    fn find(&self, mut a: usize) -> usize {
        while let Some(&p) = self.parent.get(&a) {
            a = p;
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent.insert(hi, lo);
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PDLink {
    crossings: Vec<Crossing>,
    free_loops: Vec<usize>,
    framings: Vec<i64>,
    components: Vec<Vec<usize>>,
    comp_of: BTreeMap<usize, usize>,
}

impl PDLink {
    pub fn empty() -> Self {
        PDLink {
            crossings: Vec::new(),
            free_loops: Vec::new(),
            framings: Vec::new(),
            components: Vec::new(),
            comp_of: BTreeMap::new(),
        }
    }

    pub fn new(crossings: Vec<Crossing>) -> Result<Self> {
        Self::from_parts(crossings, Vec::new())
    }

    /// Validates the arc-pairing invariant, computes the oriented component
    /// cycles, and orders components by minimum arc id.  Framings start at 0.
    pub fn from_parts(crossings: Vec<Crossing>, free_loops: Vec<usize>) -> Result<Self> {
        let mut in_at: BTreeMap<usize, usize> = BTreeMap::new(); // arc -> crossing idx
        let mut outgoing: BTreeSet<usize> = BTreeSet::new();
        for (ci, cr) in crossings.iter().enumerate() {
            if cr.sign != 1 && cr.sign != -1 {
                return Err(Error::Invalid("crossing sign must be +1 or -1".into()));
            }
            for a in [cr.under_in(), cr.over_in()] {
                if in_at.insert(a, ci).is_some() {
                    return Err(Error::Invalid(format!(
                        "arc {} enters more than one crossing slot",
                        a
                    )));
                }
            }
            for a in [cr.under_out(), cr.over_out()] {
                if !outgoing.insert(a) {
                    return Err(Error::Invalid(format!(
                        "arc {} leaves more than one crossing slot",
                        a
                    )));
                }
            }
        }
        let ins: BTreeSet<usize> = in_at.keys().copied().collect();
        if ins != outgoing {
            let diff = ins.symmetric_difference(&outgoing).next().copied().unwrap_or(0);
            return Err(Error::Invalid(format!(
                "arc {} does not occur exactly once incoming and once outgoing",
                diff
            )));
        }
        let loop_set: BTreeSet<usize> = free_loops.iter().copied().collect();
        if loop_set.len() != free_loops.len() {
            return Err(Error::Invalid("duplicate free loop id".into()));
        }
        if let Some(a) = loop_set.iter().find(|a| ins.contains(a)) {
            return Err(Error::Invalid(format!(
                "free loop id {} also appears in a crossing",
                a
            )));
        }

        // Successor map: arc a ends at crossing in_at[a] and continues as the
        // out-arc of the same strand there.
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for (&a, &ci) in &in_at {
            let cr = &crossings[ci];
            let succ = if a == cr.under_in() { cr.under_out() } else { cr.over_out() };
            next.insert(a, succ);
        }
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for &start in ins.iter() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut a = start;
            loop {
                cycle.push(a);
                seen.insert(a);
                a = next[&a];
                if a == start {
                    break;
                }
            }
            components.push(cycle);
        }
        for &l in &loop_set {
            components.push(vec![l]);
        }
        components.sort_by_key(|c| c[0].min(*c.iter().min().unwrap()));
        let mut comp_of = BTreeMap::new();
        for (i, cycle) in components.iter().enumerate() {
            for &a in cycle {
                comp_of.insert(a, i);
            }
        }
        let n = components.len();
        Ok(PDLink {
            crossings,
            free_loops: loop_set.into_iter().collect(),
            framings: vec![0; n],
            components,
            comp_of,
        })
    }

    pub fn with_framings(mut self, framings: Vec<i64>) -> Result<Self> {
        if framings.len() != self.ncomponents() {
            return Err(Error::DimensionMismatch(format!(
                "{} framings for {} components",
                framings.len(),
                self.ncomponents()
            )));
        }
        self.framings = framings;
        Ok(self)
    }

    /// Closure of a braid word.  Letter +i crosses strand positions i and
    /// i+1 (1-based) with the left strand passing under; letter -i crosses
    /// them with the right strand passing under.  Framings start at 0.
    pub fn from_braid(strands: usize, word: &[i64]) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Invalid("braid needs at least one strand".into()));
        }
        for &l in word {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(Error::Invalid(format!(
                    "braid letter {} out of range for {} strands",
                    l, strands
                )));
            }
        }
        let mut at: Vec<usize> = (1..=strands).collect();
        let mut next_arc = strands + 1;
        let mut crossings = Vec::with_capacity(word.len());
        for &l in word {
            let i = l.unsigned_abs() as usize;
            let (u, v) = (at[i - 1], at[i]);
            let (up, vp) = (next_arc, next_arc + 1);
            next_arc += 2;
            if l > 0 {
                crossings.push(Crossing::new([u, v, up, vp], 1)?);
            } else {
                crossings.push(Crossing::new([v, up, vp, u], -1)?);
            }
            at[i - 1] = vp;
            at[i] = up;
        }
        // Close up: the open arc at position j is the initial arc j+1.
        let mut free = Vec::new();
        for (j, &a) in at.iter().enumerate() {
            let initial = j + 1;
            if a == initial {
                free.push(initial);
            } else {
                for cr in crossings.iter_mut() {
                    for s in cr.arcs.iter_mut() {
                        if *s == a {
                            *s = initial;
                        }
                    }
                }
            }
        }
        Self::from_parts(crossings, free)
    }

    pub fn ncomponents(&self) -> usize {
        self.components.len()
    }

    pub fn ncrossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> &[usize] {
        &self.free_loops
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn component_arcs(&self, i: usize) -> &[usize] {
        &self.components[i]
    }

    pub fn component_of_arc(&self, arc: usize) -> Option<usize> {
        self.comp_of.get(&arc).copied()
    }

    fn max_arc_id(&self) -> usize {
        let a = self.crossings.iter().flat_map(|c| c.arcs).max().unwrap_or(0);
        let b = self.free_loops.iter().copied().max().unwrap_or(0);
        a.max(b)
    }

    pub fn under_component(&self, cr: &Crossing) -> usize {
        self.comp_of[&cr.under_in()]
    }

    pub fn over_component(&self, cr: &Crossing) -> usize {
        self.comp_of[&cr.over_in()]
    }

    /// Signed count of self-crossings of component i.
    pub fn writhe_of(&self, i: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| self.under_component(c) == i && self.over_component(c) == i)
            .map(|c| c.sign as i64)
            .sum()
    }

    /// Pairwise linking numbers off the diagonal (half the signed count of
    /// crossings between two components), stored framings on the diagonal.
    pub fn linking_matrix(&self) -> Result<SymIntMatrix> {
        let n = self.ncomponents();
        let mut counts = vec![vec![0i64; n]; n];
        for cr in &self.crossings {
            let (u, o) = (self.under_component(cr), self.over_component(cr));
            if u != o {
                counts[u][o] += cr.sign as i64;
                counts[o][u] += cr.sign as i64;
            }
        }
        let mut m = SymIntMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, self.framings[i].into());
            for j in (i + 1)..n {
                if counts[i][j] % 2 != 0 {
                    return Err(Error::Invalid(format!(
                        "odd signed crossing count between components {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
                let lk = counts[i][j] / 2;
                m.set(i, j, lk.into());
                m.set(j, i, lk.into());
            }
        }
        Ok(m)
    }

    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        let m = self.linking_matrix()?;
        Ok(m.get(i, j).try_into().expect("linking number fits i64"))
    }

    /// Sum of pairwise linking numbers over unordered component pairs.
    pub fn total_linking(&self) -> Result<i64> {
        let m = self.linking_matrix()?;
        let n = self.ncomponents();
        let mut t = 0i64;
        for i in 0..n {
            for j in (i + 1)..n {
                let v: i64 = m.get(i, j).try_into().expect("linking number fits i64");
                t += v;
            }
        }
        Ok(t)
    }

    pub(crate) fn switch_crossing(&self, idx: usize) -> PDLink {
        let mut crossings = self.crossings.clone();
        crossings[idx] = crossings[idx].switched();
        let out = PDLink::from_parts(crossings, self.free_loops.clone())
            .expect("switching preserves the arc pairing");
        debug_assert_eq!(out.ncomponents(), self.ncomponents());
        out.with_framings(self.framings.clone()).expect("component count unchanged")
    }

    /// Oriented smoothing: the crossing is removed and its strands rejoined
    /// without crossing.  Framings are reset (component count may change).
    pub(crate) fn smooth_crossing(&self, idx: usize) -> PDLink {
        let cr = self.crossings[idx];
        let mut rest: Vec<Crossing> = self.crossings.clone();
        rest.remove(idx);
        let mut free = self.free_loops.clone();
        let mut pending: Vec<(usize, usize)> = cr.smoothing_pairs().to_vec();
        while let Some((x, y)) = pending.pop() {
            if x == y {
                // Both ends of this strand met: a closed loop with no
                // remaining crossings (its two arc occurrences were here).
                debug_assert!(rest.iter().all(|c| !c.arcs.contains(&x)));
                free.push(x);
            } else {
                let (keep, drop) = (x.min(y), x.max(y));
                for c in rest.iter_mut() {
                    for s in c.arcs.iter_mut() {
                        if *s == drop {
                            *s = keep;
                        }
                    }
                }
                for p in pending.iter_mut() {
                    if p.0 == drop {
                        p.0 = keep;
                    }
                    if p.1 == drop {
                        p.1 = keep;
                    }
                }
            }
        }
        PDLink::from_parts(rest, free).expect("smoothing preserves the arc pairing")
    }

    /// Delete the listed components, splicing surviving strands through any
    /// removed crossings.  Kept components retain their relative order and
    /// framings.
    pub fn delete_components(&self, delete: &[usize]) -> Result<PDLink> {
        let n = self.ncomponents();
        let del: BTreeSet<usize> = delete.iter().copied().collect();
        if let Some(&bad) = del.iter().find(|&&i| i >= n) {
            return Err(Error::Invalid(format!(
                "component index {} out of range (link has {})",
                bad + 1,
                n
            )));
        }
        let mut classes = ArcClasses::new();
        let mut kept: Vec<Crossing> = Vec::new();
        for cr in &self.crossings {
            let ud = del.contains(&self.under_component(cr));
            let od = del.contains(&self.over_component(cr));
            match (ud, od) {
                (true, true) => {}
                (false, false) => kept.push(*cr),
                (true, false) => classes.union(cr.over_in(), cr.over_out()),
                (false, true) => classes.union(cr.under_in(), cr.under_out()),
            }
        }
        for cr in kept.iter_mut() {
            for s in cr.arcs.iter_mut() {
                *s = classes.find(*s);
            }
        }
        let arcs_in_new: BTreeSet<usize> = kept.iter().flat_map(|c| c.arcs).collect();
        let mut free = Vec::new();
        let mut framings = Vec::new();
        for (ci, cycle) in self.components.iter().enumerate() {
            if del.contains(&ci) {
                continue;
            }
            framings.push(self.framings[ci]);
            let reps: BTreeSet<usize> = cycle.iter().map(|&a| classes.find(a)).collect();
            if reps.iter().all(|r| !arcs_in_new.contains(r)) {
                free.push(*reps.iter().next().unwrap());
            }
        }
        let out = PDLink::from_parts(kept, free)?;
        debug_assert_eq!(out.ncomponents(), framings.len());
        out.with_framings(framings)
    }

    /// Keep exactly the components whose bit is set.
    pub fn restrict(&self, keep: &BitVec) -> Result<PDLink> {
        if keep.len() != self.ncomponents() {
            return Err(Error::DimensionMismatch(format!(
                "mask length {} for {} components",
                keep.len(),
                self.ncomponents()
            )));
        }
        let delete: Vec<usize> = (0..self.ncomponents()).filter(|&i| !keep.get(i)).collect();
        self.delete_components(&delete)
    }

    /// Place another diagram next to this one (arc ids shifted to avoid
    /// collision); its components follow this link's in the ordering.
    pub fn disjoint_union(&self, other: &PDLink) -> PDLink {
        let offset = self.max_arc_id() + 1;
        let mut crossings = self.crossings.clone();
        for cr in &other.crossings {
            let arcs = [
                cr.arcs[0] + offset,
                cr.arcs[1] + offset,
                cr.arcs[2] + offset,
                cr.arcs[3] + offset,
            ];
            crossings.push(Crossing { arcs, sign: cr.sign });
        }
        let mut free = self.free_loops.clone();
        free.extend(other.free_loops.iter().map(|a| a + offset));
        let mut framings = self.framings.clone();
        framings.extend_from_slice(&other.framings);
        PDLink::from_parts(crossings, free)
            .expect("disjoint union preserves the arc pairing")
            .with_framings(framings)
            .expect("component counts add")
    }

    /// Reverse the orientation of one component.  Arc ids are kept; each
    /// crossing met by the component once flips its sign, self-crossings
    /// keep theirs.
    pub fn reverse_component(&self, k: usize) -> Result<PDLink> {
        if k >= self.ncomponents() {
            return Err(Error::Invalid(format!("component index {} out of range", k + 1)));
        }
        let mut crossings = Vec::with_capacity(self.crossings.len());
        for cr in &self.crossings {
            let [a, b, c, d] = cr.arcs;
            let onu = self.under_component(cr) == k;
            let ono = self.over_component(cr) == k;
            let new = match (onu, ono) {
                (false, false) => *cr,
                (true, true) => Crossing { arcs: [c, d, a, b], sign: cr.sign },
                (true, false) => Crossing { arcs: [c, d, a, b], sign: -cr.sign },
                (false, true) => Crossing { arcs: [a, b, c, d], sign: -cr.sign },
            };
            crossings.push(new);
        }
        let out = PDLink::from_parts(crossings, self.free_loops.clone())?;
        debug_assert_eq!(out.ncomponents(), self.ncomponents());
        out.with_framings(self.framings.clone())
    }

    /// In-slot location of an arc, if it meets a crossing.
    fn in_slot(&self, arc: usize) -> Option<(usize, usize)> {
        for (ci, cr) in self.crossings.iter().enumerate() {
            if cr.under_in() == arc {
                return Some((ci, 0));
            }
            if cr.over_in() == arc {
                return Some((ci, if cr.sign > 0 { 1 } else { 3 }));
            }
        }
        None
    }

    /// Add a kink (one self-crossing of the given sign) in the middle of an
    /// arc.  The first Reidemeister move; the component's writhe changes by
    /// the sign.
    pub fn insert_kink(&self, arc: usize, sign: i8) -> Result<PDLink> {
        if sign != 1 && sign != -1 {
            return Err(Error::Invalid("kink sign must be +1 or -1".into()));
        }
        if !self.comp_of.contains_key(&arc) {
            return Err(Error::Invalid(format!("no arc {} in the diagram", arc)));
        }
        let base = self.max_arc_id() + 1;
        let (q, a2) = (base, base + 1);
        let mut crossings = self.crossings.clone();
        let mut free = self.free_loops.clone();
        let tail = if let Some(pos) = free.iter().position(|&f| f == arc) {
            free.remove(pos);
            arc // the loop closes back onto itself
        } else {
            let (ci, slot) = self.in_slot(arc).expect("non-loop arc enters a crossing");
            crossings[ci].arcs[slot] = a2;
            a2
        };
        let kink = if sign > 0 {
            Crossing::new([arc, q, q, tail], 1)?
        } else {
            Crossing::new([arc, tail, q, q], -1)?
        };
        crossings.push(kink);
        let out = PDLink::from_parts(crossings, free)?;
        debug_assert_eq!(out.ncomponents(), self.ncomponents());
        out.with_framings(self.framings.clone())
    }

    /// Push the strand of `over_arc` across the strand of `under_arc` and
    /// back: the second Reidemeister move, adding a cancelling pair of
    /// crossings.  All linking numbers are unchanged.
    pub fn insert_clasp_pair(&self, over_arc: usize, under_arc: usize) -> Result<PDLink> {
        if over_arc == under_arc {
            return Err(Error::Invalid("the two arcs must be distinct".into()));
        }
        for a in [over_arc, under_arc] {
            if !self.comp_of.contains_key(&a) {
                return Err(Error::Invalid(format!("no arc {} in the diagram", a)));
            }
        }
        let base = self.max_arc_id() + 1;
        let (a1, a2, b1, b2) = (base, base + 1, base + 2, base + 3);
        let mut crossings = self.crossings.clone();
        let mut free = self.free_loops.clone();
        let reroute = |arc: usize, replacement: usize,
                           crossings: &mut Vec<Crossing>,
                           free: &mut Vec<usize>|
         -> usize {
            if let Some(pos) = free.iter().position(|&f| f == arc) {
                free.remove(pos);
                arc
            } else {
                let (ci, slot) = self.in_slot(arc).expect("non-loop arc enters a crossing");
                crossings[ci].arcs[slot] = replacement;
                replacement
            }
        };
        let a_end = reroute(over_arc, a2, &mut crossings, &mut free);
        let b_end = reroute(under_arc, b2, &mut crossings, &mut free);
        crossings.push(Crossing::new([under_arc, over_arc, b1, a1], 1)?);
        crossings.push(Crossing::new([b1, a_end, b_end, a1], -1)?);
        let out = PDLink::from_parts(crossings, free)?;
        debug_assert_eq!(out.ncomponents(), self.ncomponents());
        out.with_framings(self.framings.clone())
    }
}

/// An embedded band around a curve: its self-linking data.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Band {
    pub half_twists: i64,
    pub writhe: i64,
}

/// Half-twist count of a band: the exact integer and its class mod 4
/// (the regular-homotopy invariant; a band pass shifts the count by 4).
pub fn half_twist(band: &Band) -> (i64, u8) {
    let exact = band.half_twists + 2 * band.writhe;
    (exact, exact.rem_euclid(4) as u8)
}

/// Quarter-twist count of a connected doubleband in Z8; odd exactly when
/// the double curve is orientation-reversing on the surface.
pub fn quarter_twist(quarter_twists: i64, writhe: i64) -> u8 {
    (quarter_twists + 4 * writhe).rem_euclid(8) as u8
}

/// Twisting data of an immersed surface's double-point set: one
/// quarter-twist total per double curve, plus the triple-point count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoubleBandData {
    pub quarter_twists: Vec<i64>,
    pub triple_points: usize,
}

impl DoubleBandData {
    /// Total quarter-twisting in Z8.
    pub fn delta(&self) -> u8 {
        let s: i64 = self.quarter_twists.iter().map(|q| q.rem_euclid(8)).sum();
        s.rem_euclid(8) as u8
    }

    /// True when some double curve is orientation-reversing.
    pub fn has_reversing_curve(&self) -> bool {
        self.quarter_twists.iter().any(|q| q.rem_euclid(2) == 1)
    }
}
