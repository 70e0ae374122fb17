//! Genus-1 tangles: an arc in a solid torus, drawn in the annulus that the
//! torus projects to.
//!
//! The arc is given as an open PD code. Its two end edges appear once each
//! and run out to the boundary circle of the annulus. Faces are named by
//! their edge sides (`+l` left of edge `l`, `-l` right), rotated so the
//! smallest comes first.
//!
//! The face holding both ends is split by the boundary circle into the
//! region outside the solid torus and two sides inside it: side A lies on
//! the left of the arc, from the `+e1` side through to `+e2`, and side B on
//! the right. The hole of the solid torus sits inside one face of the
//! annulus, which may be side A or B but not the outer face itself.
//!
//! A closure arc leaves the first endpoint, makes passages between the
//! outside and the hole, and returns to the second endpoint. A passage runs
//! entirely above (`over`) or below (`under`) the solid torus, so it crosses
//! every tangle edge on its way with the same side. Passages alternate
//! inward (from side A or B to the hole face) and outward.

mod dcel;
mod scan;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::branched::divides;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::intlinalg::{torsion_order, AbelianGroup};
use dcel::{Arc, Dcel, Half, Target, Vertex};

pub use scan::{
    enumerate_specs, odd_determinants_divisible, scan_closures, ClosureRecord, CoverTorsion, ScanConfig, ScanReport,
    ScanSummary,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Over,
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceKind {
    Interior,
    SideA,
    SideB,
}

/// A face of the annulus the closure arc may pass through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnulusFace {
    pub key: Vec<i64>,
    pub kind: FaceKind,
}

/// An edge of the arc with its label and the (vertex, position) of both
/// ends; the tips are vertices `n` and `n + 1`.
type ArcEdge = (u32, (usize, usize), (usize, usize));

/// JSON form of a tangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangleJson {
    pub crossings: Vec<[u32; 4]>,
    pub endpoints: [u32; 2],
    pub hole_face: Vec<i64>,
    pub outer_face: Vec<i64>,
}

/// A validated genus-1 tangle.
#[derive(Clone, Debug)]
pub struct AnnulusTangle {
    json: TangleJson,
    faces: Vec<AnnulusFace>,
    hole: usize,
    ends: Vec<ArcEdge>,
}

impl PartialEq for AnnulusTangle {
    fn eq(&self, other: &Self) -> bool {
        self.json == other.json
    }
}

/// Loads a tangle from its JSON description.
pub fn load_tangle(text: &str) -> Result<AnnulusTangle> {
    let json: TangleJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    AnnulusTangle::new(json)
}

impl AnnulusTangle {
    pub fn new(json: TangleJson) -> Result<Self> {
        let mut t = Self::trace(json)?;
        let (outer_key, faces) = t.plain_faces()?;
        if outer_key != t.json.outer_face {
            return Err(Error::Tangle(format!(
                "outer_face {:?} does not match the face holding the endpoints, {outer_key:?}",
                t.json.outer_face
            )));
        }
        if t.json.hole_face == outer_key {
            return Err(Error::Tangle("the hole cannot be in the outer face".into()));
        }
        t.hole = faces
            .iter()
            .position(|f| f.key == t.json.hole_face)
            .ok_or_else(|| Error::Tangle(format!("hole_face {:?} is not a face of the diagram", t.json.hole_face)))?;
        t.faces = faces;
        Ok(t)
    }

    /// The outer face key and the annulus faces of an open arc, before a hole
    /// is chosen.
    pub fn arc_faces(crossings: Vec<[u32; 4]>, endpoints: [u32; 2]) -> Result<(Vec<i64>, Vec<AnnulusFace>)> {
        Self::trace(TangleJson { crossings, endpoints, hole_face: Vec::new(), outer_face: Vec::new() })?.plain_faces()
    }

    /// Follows the arc from its first endpoint and records each edge.
    fn trace(json: TangleJson) -> Result<Self> {
        let n = json.crossings.len();
        let [e1, e2] = json.endpoints;
        let mut count = std::collections::BTreeMap::<u32, usize>::new();
        for x in &json.crossings {
            for &l in x {
                if l == 0 {
                    return Err(Error::Parse("edge labels must be positive".into()));
                }
                *count.entry(l).or_default() += 1;
            }
        }
        if n == 0 {
            if e1 != e2 || e1 == 0 {
                return Err(Error::Tangle("a crossingless arc is one edge: both endpoints name it".into()));
            }
        } else {
            if e1 == e2 {
                return Err(Error::Tangle("endpoint edges must differ".into()));
            }
            for (&l, &c) in &count {
                let expect = if l == e1 || l == e2 { 1 } else { 2 };
                if c != expect {
                    return Err(Error::EdgeMultiplicity { label: l, count: c });
                }
            }
            for e in [e1, e2] {
                if !count.contains_key(&e) {
                    return Err(Error::Tangle(format!("endpoint edge {e} is not in the diagram")));
                }
            }
        }

        // Follow the arc from the first tip.
        let slot_of = |label: u32, not: Option<usize>| {
            (0..4 * n).find(|&s| json.crossings[s / 4][s % 4] == label && Some(s) != not)
        };
        let t1 = (n, 0);
        let t2 = (n + 1, 0);
        let mut ends = Vec::new();
        let mut visited = vec![false; 4 * n];
        if n == 0 {
            ends.push((e1, t1, t2));
        } else {
            let mut from = t1;
            let mut label = e1;
            let mut prev_slot = None;
            loop {
                if label == e2 {
                    ends.push((label, from, t2));
                    break;
                }
                let s = slot_of(label, prev_slot).ok_or_else(|| Error::Tangle(format!("edge {label} dangles")))?;
                if visited[s] {
                    return Err(Error::Tangle("arc revisits a crossing slot".into()));
                }
                ends.push((label, from, (s / 4, s % 4)));
                let o = s ^ 2;
                visited[s] = true;
                visited[o] = true;
                // The under-strand must run from position 0 to position 2.
                if s % 4 == 2 {
                    return Err(Error::AmbiguousOrientation(format!(
                        "arc enters crossing {} along the under-strand at position 2",
                        s / 4
                    )));
                }
                label = json.crossings[o / 4][o % 4];
                from = (o / 4, o % 4);
                prev_slot = Some(o);
                if label == e1 {
                    return Err(Error::Tangle("arc runs back into its first endpoint".into()));
                }
            }
            if visited.iter().any(|v| !v) {
                return Err(Error::Tangle("diagram has a closed component".into()));
            }
        }

        Ok(AnnulusTangle { json, faces: Vec::new(), hole: 0, ends })
    }

    /// The tangle alone, with the tips as degree-one vertices.
    fn plain_map(&self) -> (Dcel, usize) {
        let n = self.json.crossings.len();
        let mut edges = Vec::new();
        let mut rot = vec![vec![usize::MAX; 4]; n];
        rot.push(Vec::new());
        rot.push(Vec::new());
        let mut start = 0;
        for (i, &(label, (va, pa), (vb, pb))) in self.ends.iter().enumerate() {
            edges.push((va, vb, Half::Tangle { label, forward: true }, Half::Tangle { label, forward: false }));
            place(&mut rot, va, pa, 2 * i, n);
            place(&mut rot, vb, pb, 2 * i + 1, n);
            if va == n {
                start = 2 * i;
            }
        }
        let mut vertex: Vec<Vertex> =
            (0..n).map(|c| Vertex::Crossing { pair: [rot[c][0], rot[c][2]], pair_is_under: true }).collect();
        vertex.push(Vertex::Plain);
        vertex.push(Vertex::Plain);
        (Dcel::from_rotations(&edges, &rot, vertex), start)
    }

    fn plain_faces(&self) -> Result<(Vec<i64>, Vec<AnnulusFace>)> {
        let n = self.json.crossings.len();
        let (map, start) = self.plain_map();
        let (face_of, cycles) = map.faces();
        if cycles.len() != n + 1 {
            return Err(Error::NonPlanar(format!("{n}-crossing arc has {} faces, expected {}", cycles.len(), n + 1)));
        }
        let outer = face_of[start];
        let cyc = &cycles[outer];
        let at = cyc.iter().position(|&h| h == start).expect("start on its face");
        let walk: Vec<usize> = (0..cyc.len()).map(|k| cyc[(at + k) % cyc.len()]).collect();
        let split = walk
            .iter()
            .position(|&h| map.dest(h) == n + 1)
            .ok_or_else(|| Error::Tangle("the two endpoints lie in different faces".into()))?;
        let sides = |hs: &[usize]| -> Vec<i64> { hs.iter().filter_map(|&h| map.kind[h].side()).collect() };
        let outer_key = crate::diagram::canonical_cycle(sides(&walk));
        let mut faces = vec![
            AnnulusFace { key: crate::diagram::canonical_cycle(sides(&walk[..=split])), kind: FaceKind::SideA },
            AnnulusFace { key: crate::diagram::canonical_cycle(sides(&walk[split + 1..])), kind: FaceKind::SideB },
        ];
        for (f, c) in cycles.iter().enumerate() {
            if f != outer {
                faces.push(AnnulusFace { key: crate::diagram::canonical_cycle(sides(c)), kind: FaceKind::Interior });
            }
        }
        Ok((outer_key, faces))
    }

    pub fn to_json(&self) -> &TangleJson {
        &self.json
    }

    pub fn crossing_count(&self) -> usize {
        self.json.crossings.len()
    }

    /// Faces the closure arc can pass through: sides A and B, then the
    /// bounded faces.
    pub fn faces(&self) -> &[AnnulusFace] {
        &self.faces
    }

    pub fn hole_face(&self) -> &AnnulusFace {
        &self.faces[self.hole]
    }

    fn face_index(&self, key: &[i64]) -> Option<usize> {
        self.faces.iter().position(|f| f.key == key)
    }

    /// Whether two faces share an edge.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.faces[a].key.iter().any(|s| self.faces[b].key.contains(&-s))
    }

    fn is_side(&self, f: usize) -> bool {
        self.faces[f].kind != FaceKind::Interior
    }

    /// Checks a closure spec against this tangle and returns its passages
    /// as face indices.
    fn resolve(&self, spec: &ClosureSpec) -> Result<Vec<(Vec<usize>, Side)>> {
        if !spec.passages.len().is_multiple_of(2) {
            return Err(Error::Closure(format!(
                "{} passages: the arc must return from the hole as often as it enters",
                spec.passages.len()
            )));
        }
        let mut out = Vec::new();
        for (i, p) in spec.passages.iter().enumerate() {
            if p.path.is_empty() {
                return Err(Error::Closure(format!("passage {i} has an empty path")));
            }
            let path = p
                .path
                .iter()
                .map(|k| self.face_index(k).ok_or_else(|| Error::Closure(format!("passage {i}: no face {k:?}"))))
                .collect::<Result<Vec<_>>>()?;
            for w in path.windows(2) {
                if !self.adjacent(w[0], w[1]) {
                    return Err(Error::Closure(format!(
                        "passage {i}: faces {:?} and {:?} share no edge",
                        self.faces[w[0]].key, self.faces[w[1]].key
                    )));
                }
            }
            let (first, last) = (path[0], path[path.len() - 1]);
            let inward = i % 2 == 0;
            let (boundary_end, hole_end) = if inward { (first, last) } else { (last, first) };
            if !self.is_side(boundary_end) {
                return Err(Error::Closure(format!("passage {i} must meet the boundary circle in side A or B")));
            }
            if hole_end != self.hole {
                return Err(Error::Closure(format!(
                    "passage {i} must {} the hole face",
                    if inward { "end in" } else { "start in" }
                )));
            }
            out.push((path, p.side));
        }
        Ok(out)
    }

    /// Draws the tangle, the boundary circle, the hole and the closure arc
    /// into one map, and returns it with the half leaving the first tip.
    fn draw(&self, passages: &[(Vec<usize>, Side)]) -> Result<(Dcel, usize)> {
        let n = self.crossing_count();
        let (t1, t2) = (n, n + 1);
        let (h1, h2) = (n + 2, n + 3);
        let mut edges = Vec::new();
        let mut rot = vec![vec![usize::MAX; 4]; n];
        rot.extend([Vec::new(), Vec::new(), Vec::new(), Vec::new()]);
        let (mut e1_out, mut e2_back) = (0, 0);
        for (i, &(label, (va, pa), (vb, pb))) in self.ends.iter().enumerate() {
            edges.push((va, vb, Half::Tangle { label, forward: true }, Half::Tangle { label, forward: false }));
            if va == t1 {
                e1_out = 2 * i;
            } else {
                rot[va][pa] = 2 * i;
            }
            if vb == t2 {
                e2_back = 2 * i + 1;
            } else {
                rot[vb][pb] = 2 * i + 1;
            }
        }
        // Boundary circle: arc A runs from the second tip to the first with
        // side A on its left, arc B from the first tip to the second.
        let alpha = 2 * edges.len();
        edges.push((t2, t1, Half::Outer(Arc::A), Half::Outer(Arc::A)));
        let beta = 2 * edges.len();
        edges.push((t1, t2, Half::Outer(Arc::B), Half::Outer(Arc::B)));
        rot[t1] = vec![e1_out, alpha + 1, beta];
        rot[t2] = vec![e2_back, beta + 1, alpha];
        // Hole circle with its inside on the left of both halves `a` and `b`.
        let a = 2 * edges.len();
        edges.push((h1, h2, Half::Hole, Half::Hole));
        let b = 2 * edges.len();
        edges.push((h2, h1, Half::Hole, Half::Hole));
        rot[h1] = vec![a, b + 1];
        rot[h2] = vec![b, a + 1];
        let mut vertex: Vec<Vertex> =
            (0..n).map(|c| Vertex::Crossing { pair: [rot[c][0], rot[c][2]], pair_is_under: true }).collect();
        vertex.extend([Vertex::Plain; 4]);
        let mut map = Dcel::from_rotations(&edges, &rot, vertex);

        // Seam from the hole to the first edge side of its face.
        let hole_key = &self.faces[self.hole].key;
        let anchor =
            (0..alpha).find(|&h| map.kind[h].side() == Some(hole_key[0])).expect("hole face has a tangle side");
        map.connect(anchor, a + 1, Half::Seam);

        let fail = || Error::Closure("closure arc could not be routed".into());
        let arc_of = |f: usize| if self.faces[f].kind == FaceKind::SideA { Arc::A } else { Arc::B };
        // Start in the outside region at the first tip.
        let mut cur = beta + 1;
        for (i, (path, side)) in passages.iter().enumerate() {
            let s = Some(*side);
            if i % 2 == 0 {
                cur = map.route(cur, Target::Outer(arc_of(path[0])), None).ok_or_else(fail)?;
                for w in path.windows(2) {
                    cur = map.route(cur, Target::Tangle(&self.faces[w[1]].key), s).ok_or_else(fail)?;
                }
                cur = map.route(cur, Target::Hole, s).ok_or_else(fail)?;
            } else {
                cur = map.route(cur, Target::Hole, None).ok_or_else(fail)?;
                for w in path.windows(2) {
                    cur = map.route(cur, Target::Tangle(&self.faces[w[1]].key), s).ok_or_else(fail)?;
                }
                cur = map.route(cur, Target::Outer(arc_of(path[path.len() - 1])), s).ok_or_else(fail)?;
            }
        }
        map.route(cur, Target::Vertex(t2), None).ok_or_else(fail)?;
        Ok((map, e1_out))
    }
}

fn place(rot: &mut [Vec<usize>], v: usize, pos: usize, h: usize, n: usize) {
    if v >= n {
        rot[v].push(h);
    } else {
        rot[v][pos] = h;
    }
}

/// One traverse of the annulus between the outside and the hole.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Passage {
    pub path: Vec<Vec<i64>>,
    pub side: Side,
}

/// The closure arc as a sequence of passages.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureSpec {
    pub passages: Vec<Passage>,
}

impl ClosureSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The same arc traversed from the second endpoint to the first.
    pub fn reversed(&self) -> Self {
        let passages = self
            .passages
            .iter()
            .rev()
            .map(|p| Passage { path: p.path.iter().rev().cloned().collect(), side: p.side })
            .collect();
        ClosureSpec { passages }
    }
}

/// The knot formed by the tangle and the closure arc.
pub fn close_tangle(t: &AnnulusTangle, spec: &ClosureSpec) -> Result<LinkDiagram> {
    let passages = t.resolve(spec)?;
    let (map, start) = t.draw(&passages)?;
    let pd = map.pd_code(start);
    if pd.is_empty() {
        return LinkDiagram::from_pd(Vec::new(), 1);
    }
    LinkDiagram::from_pd(pd, 0)
}

/// Signed count of hole visits: a visit that arrives over the solid torus
/// and leaves under it counts +1, the reverse -1.
pub fn closure_linking(t: &AnnulusTangle, spec: &ClosureSpec) -> Result<i64> {
    t.resolve(spec)?;
    Ok(spec
        .passages
        .chunks(2)
        .map(|pair| match (pair[0].side, pair[1].side) {
            (Side::Over, Side::Under) => 1,
            (Side::Under, Side::Over) => -1,
            _ => 0,
        })
        .sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(lk: i64) -> Self {
        if lk.rem_euclid(2) == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    ExcludedByTorsion,
    Inconclusive,
}

/// Whether a group's torsion rules out a closure of this determinant: the
/// torsion subgroup of the cover of the solid torus injects into the cover of
/// the sphere, whose order is the determinant. A determinant of 0 (infinite
/// homology) obstructs nothing.
pub fn obstruction_verdict(torsion: &AbelianGroup, det: &BigInt) -> Obstruction {
    if divides(&torsion_order(torsion), det) {
        Obstruction::Inconclusive
    } else {
        Obstruction::ExcludedByTorsion
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureVerdict {
    pub parity: Parity,
    pub lk_with_longitude: i64,
    #[serde(with = "crate::intlinalg::json_int")]
    pub determinant: BigInt,
    pub obstruction: Obstruction,
}

/// Built-in tangles as JSON.
///
/// `krebes_A` is an arc with one clasp, which a single crossing change
/// unties, and whose hole sits in the bigon between the clasp crossings.
pub const FIXTURES: &[(&str, &str)] = &[
    ("trivial", r#"{"crossings": [], "endpoints": [1, 1], "hole_face": [1], "outer_face": [-1, 1]}"#),
    (
        "krebes_A",
        r#"{"crossings": [[1, 4, 2, 5], [7, 3, 8, 2], [3, 7, 4, 6], [5, 8, 6, 9]], "endpoints": [1, 9], "hole_face": [-7, -3], "outer_face": [-9, 6, 4, -1, 1, 5, 9]}"#,
    ),
];

pub fn fixture(name: &str) -> Option<AnnulusTangle> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, j)| load_tangle(j).expect("fixtures are valid"))
}

pub fn krebes_a() -> AnnulusTangle {
    fixture("krebes_A").expect("built in")
}

pub fn trivial_tangle() -> AnnulusTangle {
    fixture("trivial").expect("built in")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branched::{knot_determinant, krebes_odd_cover, surgery_h1};
    use crate::diagram::bracket_determinant;
    use proptest::prelude::*;

    fn passage(path: &[&[i64]], side: Side) -> Passage {
        Passage { path: path.iter().map(|k| k.to_vec()).collect(), side }
    }

    fn visit(t: &AnnulusTangle, inward: Side, outward: Side) -> ClosureSpec {
        let hole = t.hole_face().key.clone();
        let a = t.faces()[0].key.clone();
        let path: Vec<&[i64]> = if a == hole { vec![&a] } else { vec![&a, &hole] };
        let back: Vec<&[i64]> = path.iter().rev().copied().collect();
        ClosureSpec { passages: vec![passage(&path, inward), passage(&back, outward)] }
    }

    #[test]
    fn trivial_tangle_has_two_faces() {
        let t = trivial_tangle();
        assert_eq!(t.faces().len(), 2);
        assert_eq!(t.hole_face().kind, FaceKind::SideA);
    }

    #[test]
    fn closed_component_rejected() {
        let text =
            r#"{"crossings": [[1, 5, 2, 4], [2, 4, 3, 5]], "endpoints": [1, 3], "hole_face": [1], "outer_face": [1]}"#;
        assert!(matches!(load_tangle(text), Err(Error::Tangle(m)) if m.contains("closed component")));
    }

    #[test]
    fn bad_face_keys_rejected() {
        let ok = TangleJson { crossings: vec![], endpoints: [1, 1], hole_face: vec![1], outer_face: vec![-1, 1] };
        let wrong_outer = TangleJson { outer_face: vec![1], ..ok.clone() };
        let hole_outside = TangleJson { hole_face: vec![-1, 1], ..ok.clone() };
        let no_hole = TangleJson { hole_face: vec![7], ..ok.clone() };
        assert!(AnnulusTangle::new(ok).is_ok());
        for j in [wrong_outer, hole_outside, no_hole] {
            assert!(matches!(AnnulusTangle::new(j), Err(Error::Tangle(_))));
        }
        assert!(matches!(load_tangle("{\"crossings\": []}"), Err(Error::Parse(_))));
    }

    #[test]
    fn endpoint_multiplicity_checked() {
        let text = r#"{"crossings": [[1, 4, 2, 5], [7, 3, 8, 2], [3, 7, 4, 6], [5, 8, 6, 9]], "endpoints": [1, 8], "hole_face": [-7, -3], "outer_face": []}"#;
        assert!(matches!(load_tangle(text), Err(Error::EdgeMultiplicity { .. })));
    }

    #[test]
    fn trivial_closure_is_unknot() {
        let d = close_tangle(&trivial_tangle(), &ClosureSpec::default()).unwrap();
        assert!(d.is_knot());
        assert_eq!(knot_determinant(&d).unwrap(), BigInt::from(1));
    }

    #[test]
    fn linking_examples() {
        let t = trivial_tangle();
        assert_eq!(closure_linking(&t, &ClosureSpec::default()).unwrap(), 0);
        assert_eq!(closure_linking(&t, &visit(&t, Side::Over, Side::Under)).unwrap(), 1);
        assert_eq!(closure_linking(&t, &visit(&t, Side::Under, Side::Over)).unwrap(), -1);
        assert_eq!(closure_linking(&t, &visit(&t, Side::Over, Side::Over)).unwrap(), 0);
        let mut two = visit(&t, Side::Over, Side::Under);
        two.passages.extend(visit(&t, Side::Under, Side::Over).passages);
        assert_eq!(closure_linking(&t, &two).unwrap(), 0);
    }

    #[test]
    fn invalid_specs_rejected() {
        let t = krebes_a();
        let mut odd = visit(&t, Side::Over, Side::Under);
        odd.passages.pop();
        assert!(matches!(close_tangle(&t, &odd), Err(Error::Closure(_))));
        // Side A and the hole bigon share no edge.
        let jump = ClosureSpec {
            passages: vec![
                passage(&[&[1, 5, 9], &[-7, -3]], Side::Over),
                passage(&[&[-7, -3], &[1, 5, 9]], Side::Under),
            ],
        };
        assert!(matches!(close_tangle(&t, &jump), Err(Error::Closure(m)) if m.contains("share no edge")));
        let unknown = ClosureSpec { passages: vec![passage(&[&[42]], Side::Over), passage(&[&[42]], Side::Over)] };
        assert!(close_tangle(&t, &unknown).is_err());
        assert!(matches!(ClosureSpec::from_json("{\"passages\": 3}"), Err(Error::Parse(_))));
    }

    #[test]
    fn krebes_plain_closure_regression() {
        let d = close_tangle(&krebes_a(), &ClosureSpec::default()).unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(knot_determinant(&d).unwrap(), BigInt::from(5));
    }

    #[test]
    fn krebes_single_visit_is_odd_with_det_divisible_by_three() {
        let t = krebes_a();
        let a = t.faces()[0].key.clone();
        let spec = ClosureSpec {
            passages: vec![
                passage(&[&a, &[-9, 6, 4, -1], &[-4, 7, -2], &[-7, -3]], Side::Over),
                passage(&[&[-7, -3], &[-4, 7, -2], &[-9, 6, 4, -1], &a], Side::Under),
            ],
        };
        assert_eq!(Parity::of(closure_linking(&t, &spec).unwrap()), Parity::Odd);
        let d = close_tangle(&t, &spec).unwrap();
        let det = knot_determinant(&d).unwrap();
        assert_eq!(det.clone() % 3, BigInt::from(0));
        assert_eq!(bracket_determinant(&d, 24).unwrap(), det);
    }

    #[test]
    fn verdict_examples() {
        let z3 = AbelianGroup::from_cyclic_orders(0, &[BigInt::from(3)]);
        let none = AbelianGroup::trivial();
        assert_eq!(obstruction_verdict(&z3, &BigInt::from(4)), Obstruction::ExcludedByTorsion);
        assert_eq!(obstruction_verdict(&z3, &BigInt::from(1)), Obstruction::ExcludedByTorsion);
        assert_eq!(obstruction_verdict(&z3, &BigInt::from(6)), Obstruction::Inconclusive);
        assert_eq!(obstruction_verdict(&z3, &BigInt::from(0)), Obstruction::Inconclusive);
        assert_eq!(obstruction_verdict(&none, &BigInt::from(1)), Obstruction::Inconclusive);
    }

    #[test]
    fn verdict_serializes_snake_case() {
        let v = ClosureVerdict {
            parity: Parity::Odd,
            lk_with_longitude: 1,
            determinant: BigInt::from(3),
            obstruction: Obstruction::ExcludedByTorsion,
        };
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.contains("\"excluded_by_torsion\"") && text.contains("\"odd\""));
        assert_eq!(serde_json::from_str::<ClosureVerdict>(&text).unwrap(), v);
    }

    #[test]
    fn fixture_self_check() {
        let t = krebes_a();
        let odd = surgery_h1(&krebes_odd_cover()).unwrap();
        let cfg = ScanConfig {
            max_passages: 2,
            max_path: 4,
            torsion: CoverTorsion { odd: Some(odd), even: None },
            ..Default::default()
        };
        let r = scan_closures(&t, &cfg);
        assert!(r.summary.odd > 0 && !r.summary.truncated);
        assert!(odd_determinants_divisible(&r, &BigInt::from(3)));
        assert!(!r.summary.contradiction);
        assert_eq!(r.summary.odd_det_one, 0);
        assert_eq!(r.summary.oracle_disagreements, 0);
    }

    #[test]
    fn trivial_zero_passage_scan() {
        let cfg = ScanConfig { max_passages: 0, ..Default::default() };
        let r = scan_closures(&trivial_tangle(), &cfg);
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.summary.even_det_one, 1);
    }

    #[test]
    fn scan_order_is_deterministic() {
        let cfg = ScanConfig { max_passages: 2, max_path: 3, ..Default::default() };
        let a = scan_closures(&krebes_a(), &cfg);
        let b = scan_closures(&krebes_a(), &cfg);
        assert_eq!(a, b);
        assert!(a.records.iter().enumerate().all(|(i, r)| r.index == i));
    }

    #[test]
    fn json_lines_end_with_summary() {
        let cfg = ScanConfig { max_passages: 2, max_path: 2, ..Default::default() };
        let r = scan_closures(&krebes_a(), &cfg);
        let text = r.to_json_lines();
        let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), r.records.len() + 1);
        assert_eq!(lines.last().unwrap()["record"], "summary");
        let first: ClosureRecord = serde_json::from_value(lines[0].clone()).unwrap();
        assert_eq!(first, r.records[0]);
    }

    fn krebes_specs() -> Vec<ClosureSpec> {
        enumerate_specs(&krebes_a(), 2, 4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reversal_flips_linking(i in 0usize..10_000) {
            let t = krebes_a();
            let specs = krebes_specs();
            let s = &specs[i % specs.len()];
            let lk = closure_linking(&t, s).unwrap();
            let back = closure_linking(&t, &s.reversed()).unwrap();
            prop_assert_eq!(back, -lk);
            prop_assert_eq!(Parity::of(back), Parity::of(lk));
        }

        #[test]
        fn closures_are_valid_knots(i in 0usize..10_000) {
            let t = krebes_a();
            let specs = krebes_specs();
            let s = &specs[i % specs.len()];
            let passages = t.resolve(s).unwrap();
            let (map, _) = t.draw(&passages).unwrap();
            map.check();
            let d = close_tangle(&t, s).unwrap();
            prop_assert!(d.is_knot());
            // Reparsing the emitted code runs the full validation again.
            let again = crate::diagram::LinkDiagram::parse_pd(&d.to_pd_string()).unwrap();
            prop_assert_eq!(again.crossing_count(), d.crossing_count());
        }

        #[test]
        fn exclusion_needs_torsion(orders in proptest::collection::vec(1u32..8, 0..3), det in 0u32..200) {
            let g = AbelianGroup::from_cyclic_orders(1, &orders.iter().map(|&o| BigInt::from(o)).collect::<Vec<_>>());
            if obstruction_verdict(&g, &BigInt::from(det)) == Obstruction::ExcludedByTorsion {
                prop_assert!(torsion_order(&g) > BigInt::from(1));
            }
        }
    }
}
