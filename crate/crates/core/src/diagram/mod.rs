//! Planar diagrams of knots and links in PD notation.
//!
//! A crossing `X[a,b,c,d]` lists its four edge labels counterclockwise,
//! starting from the incoming under-strand; the under-strand therefore runs
//! from `a` to `c`. Crossingless unknotted components cannot be written in PD
//! notation and are carried as a separate count (`O[k]`).
//!
//! Internally each crossing has four *slots* `4 * crossing + position`. A
//! slot doubles as a dart: the half-edge leaving the crossing at that
//! position. Rotation around a crossing is `position + 1` (counterclockwise)
//! and the strand goes straight through from `position` to `position + 2`.

mod bracket;
mod faces;
mod moves;
mod pd;
mod poly;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bracket::{bracket_determinant, jones_polynomial, kauffman_bracket, DEFAULT_CROSSING_LIMIT};
pub(crate) use faces::canonical_cycle;
pub use faces::{checkerboard, faces, Color, Coloring, FaceMap};
pub use moves::{applicable_moves, apply_reidemeister, connected_sum, KinkSide, MoveSpec};
pub use poly::LaurentPoly;

pub(crate) fn opposite(slot: usize) -> usize {
    (slot & !3) | ((slot + 2) & 3)
}

pub(crate) fn cw(slot: usize) -> usize {
    (slot & !3) | ((slot + 3) & 3)
}

/// A validated link diagram.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    unknots: usize,
    /// Slot at the other end of the edge leaving each slot.
    partner: Vec<usize>,
    /// Whether the strand leaves the crossing through this slot.
    outgoing: Vec<bool>,
    /// Component index of the edge at each slot.
    slot_component: Vec<usize>,
    component_of: BTreeMap<u32, usize>,
    crossing_components: usize,
}

/// JSON interchange form of a PD code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdJson {
    pub crossings: Vec<[u32; 4]>,
    #[serde(default)]
    pub unknots: usize,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.unknots == other.unknots && self.outgoing == other.outgoing
    }
}

impl Eq for LinkDiagram {}

impl LinkDiagram {
    /// Validates PD data. Orientations come from the under-strands (`a` to
    /// `c`); a component that never passes under falls back to increasing
    /// label order, and is rejected if that is ambiguous.
    pub fn from_pd(crossings: Vec<[u32; 4]>, unknots: usize) -> Result<Self> {
        Self::build(crossings, unknots, None)
    }

    /// Builds a diagram with a known orientation (`outgoing[slot]`), skipping
    /// the inference step. Used by diagram rewriting, where orientation is
    /// tracked explicitly.
    pub(crate) fn with_orientation(crossings: Vec<[u32; 4]>, unknots: usize, outgoing: Vec<bool>) -> Result<Self> {
        Self::build(crossings, unknots, Some(outgoing))
    }

    fn build(crossings: Vec<[u32; 4]>, unknots: usize, hint: Option<Vec<bool>>) -> Result<Self> {
        let n_slots = crossings.len() * 4;
        let mut seen: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (p, &label) in x.iter().enumerate() {
                if label == 0 {
                    return Err(Error::Parse("edge labels must be positive".into()));
                }
                seen.entry(label).or_default().push(4 * c + p);
            }
        }
        let mut partner = vec![usize::MAX; n_slots];
        for (&label, slots) in &seen {
            if slots.len() != 2 {
                return Err(Error::EdgeMultiplicity { label, count: slots.len() });
            }
            partner[slots[0]] = slots[1];
            partner[slots[1]] = slots[0];
        }
        let label_at = |s: usize| crossings[s / 4][s % 4];

        // Walk each strand; `outgoing` is decided per component.
        let mut slot_component = vec![usize::MAX; n_slots];
        let mut outgoing = vec![false; n_slots];
        let mut component_of = BTreeMap::new();
        let mut n_comp = 0;
        for start in 0..n_slots {
            if slot_component[start] != usize::MAX {
                continue;
            }
            // Leave through `start`, then alternate partner / opposite.
            let mut leaving = Vec::new();
            let mut s = start;
            loop {
                leaving.push(s);
                let arrive = partner[s];
                s = opposite(arrive);
                if s == start {
                    break;
                }
                if leaving.len() > n_slots {
                    return Err(Error::NonPlanar("strand traversal does not close".into()));
                }
            }
            let forward = match &hint {
                Some(h) => h[start],
                None => infer_direction(&leaving, &partner, &label_at)?,
            };
            for &s in &leaving {
                let arrive = partner[s];
                slot_component[s] = n_comp;
                slot_component[arrive] = n_comp;
                outgoing[s] = forward;
                outgoing[arrive] = !forward;
                component_of.insert(label_at(s), n_comp);
            }
            n_comp += 1;
        }
        if let Some(h) = &hint {
            if h != &outgoing {
                return Err(Error::AmbiguousOrientation("orientation is not consistent along strands".into()));
            }
        }
        // Under-strand must run from position 0 to position 2.
        for c in 0..crossings.len() {
            if !outgoing[4 * c + 2] || outgoing[4 * c] {
                return Err(Error::AmbiguousOrientation(format!(
                    "crossing {c}: under-strand does not run from its first to its third label"
                )));
            }
        }

        // Renumber components by smallest label so indices do not depend on
        // crossing order.
        let mut order: Vec<(u32, usize)> =
            (0..n_comp).map(|k| (*component_of.iter().find(|(_, &v)| v == k).unwrap().0, k)).collect();
        order.sort();
        let mut remap = vec![0; n_comp];
        for (new, &(_, old)) in order.iter().enumerate() {
            remap[old] = new;
        }
        for c in slot_component.iter_mut() {
            *c = remap[*c];
        }
        for c in component_of.values_mut() {
            *c = remap[*c];
        }

        let d = LinkDiagram {
            crossings,
            unknots,
            partner,
            outgoing,
            slot_component,
            component_of,
            crossing_components: n_comp,
        };
        d.check_planar()?;
        Ok(d)
    }

    fn check_planar(&self) -> Result<()> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for s in 0..4 * n {
            let (a, b) = (find(&mut parent, s / 4), find(&mut parent, self.partner[s] / 4));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        if (0..n).any(|c| find(&mut parent, c) != root) {
            return Err(Error::Disconnected);
        }
        let f = self.face_cycles().len();
        // V - E + F = 2 with E = 2V.
        if f != n + 2 {
            return Err(Error::NonPlanar(format!("{n} crossings give {f} faces, expected {}", n + 2)));
        }
        Ok(())
    }

    /// Face boundary walks as cycles of darts, each face on the left of its
    /// darts.
    pub(crate) fn face_cycles(&self) -> Vec<Vec<usize>> {
        let n_slots = self.partner.len();
        let mut visited = vec![false; n_slots];
        let mut out = Vec::new();
        for start in 0..n_slots {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !visited[d] {
                visited[d] = true;
                cycle.push(d);
                d = cw(self.partner[d]);
            }
            out.push(cycle);
        }
        out
    }

    pub fn parse_pd(text: &str) -> Result<Self> {
        let (crossings, unknots) = pd::parse_terms(text)?;
        Self::from_pd(crossings, unknots)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PdJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_pd(raw.crossings, raw.unknots)
    }

    /// Accepts either the PD text format or its JSON form.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_pd(text)
        }
    }

    pub fn to_json(&self) -> PdJson {
        PdJson { crossings: self.crossings.clone(), unknots: self.unknots }
    }

    pub fn to_pd_string(&self) -> String {
        pd::render(&self.crossings, self.unknots)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn unknots(&self) -> usize {
        self.unknots
    }

    /// Components passing through crossings come first, numbered by their
    /// smallest edge label; crossingless unknots follow.
    pub fn component_count(&self) -> usize {
        self.crossing_components + self.unknots
    }

    pub fn component_of(&self, label: u32) -> Option<usize> {
        self.component_of.get(&label).copied()
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub(crate) fn partner(&self, slot: usize) -> usize {
        self.partner[slot]
    }

    pub(crate) fn is_outgoing(&self, slot: usize) -> bool {
        self.outgoing[slot]
    }

    pub(crate) fn outgoing(&self) -> &[bool] {
        &self.outgoing
    }

    pub(crate) fn label_at(&self, slot: usize) -> u32 {
        self.crossings[slot / 4][slot % 4]
    }

    /// Edge side seen from a dart: `+label` when the dart runs along the
    /// orientation (its left is the left of the edge), `-label` otherwise.
    pub(crate) fn edge_side(&self, slot: usize) -> i64 {
        let l = i64::from(self.label_at(slot));
        if self.outgoing[slot] {
            l
        } else {
            -l
        }
    }

    /// The dart whose left face is the given edge side.
    pub(crate) fn dart_of_side(&self, side: i64) -> Option<usize> {
        (0..self.partner.len()).find(|&s| self.edge_side(s) == side)
    }

    /// Crossing sign by the right-hand rule: +1 when the over-strand runs
    /// from position 3 to position 1.
    pub fn crossing_sign(&self, c: usize) -> i32 {
        if self.outgoing[4 * c + 1] {
            1
        } else {
            -1
        }
    }

    pub fn total_writhe(&self) -> i64 {
        (0..self.crossings.len()).map(|c| i64::from(self.crossing_sign(c))).sum()
    }

    fn check_component(&self, i: usize) -> Result<()> {
        if i >= self.component_count() {
            return Err(Error::UnknownComponent(i));
        }
        Ok(())
    }

    /// Linking number of two distinct components: half the signed count of
    /// crossings between them.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        self.check_component(i)?;
        self.check_component(j)?;
        if i == j {
            return Err(Error::UnknownComponent(j));
        }
        let twice: i64 = (0..self.crossings.len())
            .filter(|&c| {
                let (a, b) = (self.slot_component[4 * c], self.slot_component[4 * c + 1]);
                (a, b) == (i, j) || (a, b) == (j, i)
            })
            .map(|c| i64::from(self.crossing_sign(c)))
            .sum();
        Ok(twice / 2)
    }

    /// Signed count of the self-crossings of component `i`.
    pub fn writhe(&self, i: usize) -> Result<i64> {
        self.check_component(i)?;
        Ok((0..self.crossings.len())
            .filter(|&c| self.slot_component[4 * c] == i && self.slot_component[4 * c + 1] == i)
            .map(|c| i64::from(self.crossing_sign(c)))
            .sum())
    }
}

fn infer_direction(leaving: &[usize], partner: &[usize], label_at: &dyn Fn(usize) -> u32) -> Result<bool> {
    // Traversal leaves through each slot in `leaving`; positions 0/2 are the
    // under-strand's incoming/outgoing ends.
    let mut fwd = 0;
    let mut back = 0;
    for &s in leaving {
        let arrive = partner[s];
        match s % 4 {
            2 => fwd += 1,
            0 => back += 1,
            _ => {}
        }
        match arrive % 4 {
            0 => fwd += 1,
            2 => back += 1,
            _ => {}
        }
    }
    match (fwd > 0, back > 0) {
        (true, false) => return Ok(true),
        (false, true) => return Ok(false),
        (true, true) => {
            return Err(Error::AmbiguousOrientation(
                "under-strands on one component point in opposite directions".into(),
            ))
        }
        (false, false) => {}
    }
    let labels: Vec<u32> = leaving.iter().map(|&s| label_at(s)).collect();
    let n = labels.len();
    if n < 3 {
        return Err(Error::AmbiguousOrientation(format!(
            "component with edges {labels:?} never passes under and is too short to orient by labels"
        )));
    }
    let steps_up = (0..n).filter(|&k| labels[(k + 1) % n] == labels[k] + 1).count();
    let steps_down = (0..n).filter(|&k| labels[k] == labels[(k + 1) % n] + 1).count();
    if steps_up == n - 1 {
        Ok(true)
    } else if steps_down == n - 1 {
        Ok(false)
    } else {
        Err(Error::AmbiguousOrientation(format!(
            "component with edges {labels:?} never passes under and its labels are not consecutive"
        )))
    }
}

/// Standard small knots and links used as fixtures and in tests.
pub mod corpus {
    use super::LinkDiagram;

    /// Named PD codes: unknot through eight crossings, plus a few composite
    /// and non-minimal diagrams.
    pub const KNOTS: &[(&str, &str)] = &[
        ("0_1", "O[1]"),
        ("0_1_kinked", "X[1,1,2,2]"),
        ("3_1", "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"),
        ("3_1_mirror", "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"),
        ("4_1", "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"),
        ("5_1", "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]"),
        ("5_2", "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]"),
        ("6_1", "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]"),
        ("6_2", "X[1,4,2,5] X[5,10,6,11] X[3,9,4,8] X[9,3,10,2] X[7,12,8,1] X[11,6,12,7]"),
        ("6_3", "X[4,2,5,1] X[8,4,9,3] X[12,9,1,10] X[10,5,11,6] X[6,11,7,12] X[2,8,3,7]"),
        ("7_1", "X[1,8,2,9] X[3,10,4,11] X[5,12,6,13] X[7,14,8,1] X[9,2,10,3] X[11,4,12,5] X[13,6,14,7]"),
        ("7_2", "X[1,4,2,5] X[3,10,4,11] X[5,14,6,1] X[7,12,8,13] X[11,8,12,9] X[13,6,14,7] X[9,2,10,3]"),
        (
            "8_19",
            "X[4,2,5,1] X[8,4,9,3] X[9,15,10,14] X[5,13,6,12] X[13,7,14,6] X[11,1,12,16] X[15,11,16,10] X[2,8,3,7]",
        ),
    ];

    pub fn knot(name: &str) -> LinkDiagram {
        let (_, pd) = KNOTS.iter().find(|(n, _)| *n == name).expect("known corpus name");
        LinkDiagram::parse_pd(pd).expect("corpus PD codes are valid")
    }

    pub fn all() -> Vec<(&'static str, LinkDiagram)> {
        KNOTS.iter().map(|(n, pd)| (*n, LinkDiagram::parse_pd(pd).expect("valid corpus PD"))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_link_parses() {
        let d = LinkDiagram::parse_pd("X[1,4,2,3] X[3,2,4,1]").unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.component_count(), 2);
        // Both crossings are negative with these labels.
        assert_eq!(d.linking_number(0, 1).unwrap(), -1);
        assert_eq!(d.linking_number(1, 0).unwrap(), -1);
        let mirror = LinkDiagram::parse_pd("X[4,2,3,1] X[2,4,1,3]").unwrap();
        assert_eq!(mirror.linking_number(0, 1).unwrap(), 1);
    }

    #[test]
    fn crossingless_unknot() {
        let d = LinkDiagram::parse_pd("O[1]").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert!(d.is_knot());
        assert_eq!(d.writhe(0).unwrap(), 0);
    }

    #[test]
    fn trefoil_is_a_knot_with_writhe_three() {
        let d = corpus::knot("3_1");
        assert!(d.is_knot());
        assert_eq!(d.writhe(0).unwrap().abs(), 3);
        let m = corpus::knot("3_1_mirror");
        assert_eq!(m.writhe(0).unwrap(), -d.writhe(0).unwrap());
    }

    #[test]
    fn multiplicity_errors() {
        assert!(matches!(LinkDiagram::parse_pd("X[1,2,3,4]"), Err(Error::EdgeMultiplicity { .. })));
        assert!(matches!(
            LinkDiagram::parse_pd("X[1,1,1,2] X[2,3,3,4]"),
            Err(Error::EdgeMultiplicity { label: 1, count: 3 })
        ));
    }

    #[test]
    fn nonplanar_gluing_is_rejected() {
        // Every label appears twice, but the face walks fail Euler's formula.
        for pd in ["X[1,3,2,4] X[2,4,3,1]", "X[1,4,2,5] X[3,6,4,1] X[5,3,6,2]"] {
            let r = LinkDiagram::parse_pd(pd);
            assert!(matches!(r, Err(Error::NonPlanar(_))), "{pd}: {r:?}");
        }
    }

    #[test]
    fn disconnected_projection_is_rejected() {
        let r = LinkDiagram::parse_pd("X[1,1,2,2] X[3,3,4,4]");
        assert_eq!(r.unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn linking_number_errors() {
        let d = LinkDiagram::parse_pd("X[1,4,2,3] X[3,2,4,1]").unwrap();
        assert_eq!(d.linking_number(0, 2), Err(Error::UnknownComponent(2)));
        assert!(d.linking_number(1, 1).is_err());
        let split = LinkDiagram::parse_pd("O[2]").unwrap();
        assert_eq!(split.linking_number(0, 1).unwrap(), 0);
    }

    #[test]
    fn torus_link_2_4() {
        let d = LinkDiagram::parse_pd("X[5,1,6,4] X[1,7,2,6] X[7,3,8,2] X[3,5,4,8]").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.linking_number(0, 1).unwrap().abs(), 2);
    }

    #[test]
    fn positive_kink_writhe() {
        // Strand enters at 1, exits at 2, loops into position 3, leaves at position 1.
        let d = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(d.writhe(0).unwrap().abs(), 1);
    }

    #[test]
    fn json_and_text_agree() {
        let d = corpus::knot("4_1");
        let j = serde_json::to_string(&d.to_json()).unwrap();
        assert_eq!(LinkDiagram::from_json(&j).unwrap(), d);
        assert_eq!(LinkDiagram::parse_pd(&d.to_pd_string()).unwrap(), d);
        assert!(LinkDiagram::from_json("{\"crossings\": [[1,2,3]]}").is_err());
    }
}
