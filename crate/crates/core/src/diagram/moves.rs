//! Reidemeister moves as local rewrites of the slot graph.

use super::faces::faces;
use super::{opposite, LinkDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KinkSide {
    Left,
    Right,
}

/// A Reidemeister move and its site. Edge sides are signed labels: `+l` is
/// the left of edge `l` along its orientation, `-l` the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveSpec {
    /// Add a kink on edge `edge`, or on a crossingless unknot when `None`.
    R1Insert { edge: Option<u32>, side: KinkSide, over_first: bool },
    /// Remove the kink at a crossing with a monogon face.
    R1Delete { crossing: usize },
    /// Push edge `over` across edge `under` through the face both sides bound.
    R2Insert { over: i64, under: i64 },
    /// Remove the bigon whose face contains edge side `side`.
    R2Delete { side: i64 },
    /// Slide across the triangle whose face contains edge side `side`.
    R3 { side: i64 },
}

/// Mutable crossing structure used while rewriting.
#[derive(Clone, Debug)]
pub(crate) struct SlotGraph {
    link: Vec<usize>,
    tail: Vec<bool>,
    /// Per crossing: the under-strand uses positions 1 and 3.
    under_odd: Vec<bool>,
    unknots: usize,
}

impl SlotGraph {
    pub(crate) fn from_diagram(d: &LinkDiagram) -> Self {
        let n = d.crossing_count();
        SlotGraph {
            link: (0..4 * n).map(|s| d.partner(s)).collect(),
            tail: d.outgoing().to_vec(),
            under_odd: vec![false; n],
            unknots: d.unknots(),
        }
    }

    fn crossings(&self) -> usize {
        self.under_odd.len()
    }

    fn add_crossing(&mut self, under_odd: bool) -> usize {
        let c = self.crossings();
        self.under_odd.push(under_odd);
        self.link.extend([usize::MAX; 4]);
        self.tail.extend([false; 4]);
        4 * c
    }

    fn set_edge(&mut self, from: usize, to: usize) {
        self.link[from] = to;
        self.link[to] = from;
        self.tail[from] = true;
        self.tail[to] = false;
    }

    fn is_over(&self, s: usize) -> bool {
        (s % 2 == 1) != self.under_odd[s / 4]
    }

    /// Deletes crossings and splices the strands through them. Strands that
    /// close up inside the deleted set become crossingless unknots.
    fn remove_crossings(&mut self, dead: &[usize]) {
        let is_dead = |s: usize| dead.contains(&(s / 4));
        let n_slots = self.link.len();
        let mut visited = vec![false; n_slots];
        let mut spliced = Vec::new();
        for t in 0..n_slots {
            if !self.tail[t] || is_dead(t) {
                continue;
            }
            let mut h = self.link[t];
            while is_dead(h) {
                visited[h] = true;
                let o = opposite(h);
                visited[o] = true;
                h = self.link[o];
            }
            spliced.push((t, h));
        }
        for s in 0..n_slots {
            if is_dead(s) && self.tail[s] && !visited[s] {
                let mut cur = s;
                loop {
                    visited[cur] = true;
                    let h = self.link[cur];
                    visited[h] = true;
                    cur = opposite(h);
                    if cur == s {
                        break;
                    }
                }
                self.unknots += 1;
            }
        }
        for (t, h) in spliced {
            self.set_edge(t, h);
        }
        let keep: Vec<usize> = (0..self.crossings()).filter(|c| !dead.contains(c)).collect();
        let mut new_index = vec![usize::MAX; self.crossings()];
        for (i, &c) in keep.iter().enumerate() {
            new_index[c] = i;
        }
        let remap = |s: usize| 4 * new_index[s / 4] + s % 4;
        let mut link = Vec::with_capacity(4 * keep.len());
        let mut tail = Vec::with_capacity(4 * keep.len());
        for &c in &keep {
            for p in 0..4 {
                link.push(remap(self.link[4 * c + p]));
                tail.push(self.tail[4 * c + p]);
            }
        }
        self.under_odd = keep.iter().map(|&c| self.under_odd[c]).collect();
        self.link = link;
        self.tail = tail;
    }

    /// Relabels edges 1, 2, ... along each component and validates.
    pub(crate) fn to_diagram(&self) -> Result<LinkDiagram> {
        let n_slots = self.link.len();
        let mut label = vec![0u32; n_slots];
        let mut next = 1u32;
        for start in 0..n_slots {
            if !self.tail[start] || label[start] != 0 {
                continue;
            }
            let mut s = start;
            loop {
                let h = self.link[s];
                label[s] = next;
                label[h] = next;
                next += 1;
                s = opposite(h);
                if s == start {
                    break;
                }
            }
        }
        let mut crossings = Vec::with_capacity(self.crossings());
        let mut outgoing = Vec::with_capacity(n_slots);
        for c in 0..self.crossings() {
            let u = 4 * c + usize::from(self.under_odd[c]);
            let first = if self.tail[u] { opposite(u) } else { u };
            let order: Vec<usize> = (0..4).map(|k| 4 * c + (first % 4 + k) % 4).collect();
            crossings.push([label[order[0]], label[order[1]], label[order[2]], label[order[3]]]);
            outgoing.extend(order.iter().map(|&s| self.tail[s]));
        }
        LinkDiagram::with_orientation(crossings, self.unknots, outgoing)
    }
}

/// Applies one move, returning a freshly labeled diagram.
pub fn apply_reidemeister(d: &LinkDiagram, mv: &MoveSpec) -> Result<LinkDiagram> {
    let mut g = SlotGraph::from_diagram(d);
    match *mv {
        MoveSpec::R1Insert { edge: None, side, over_first } => {
            if d.crossing_count() != 0 || d.unknots() == 0 {
                return Err(Error::InapplicableMove("no isolated crossingless unknot".into()));
            }
            let k = g.add_crossing(over_first);
            match side {
                KinkSide::Left => {
                    g.set_edge(k + 2, k + 3);
                    g.set_edge(k + 1, k);
                }
                KinkSide::Right => {
                    g.set_edge(k + 2, k + 1);
                    g.set_edge(k + 3, k);
                }
            }
            g.unknots -= 1;
        }
        MoveSpec::R1Insert { edge: Some(label), side, over_first } => {
            let t =
                d.dart_of_side(i64::from(label)).ok_or_else(|| Error::InapplicableMove(format!("no edge {label}")))?;
            let h = d.partner(t);
            let k = g.add_crossing(over_first);
            g.set_edge(t, k);
            match side {
                KinkSide::Left => {
                    g.set_edge(k + 2, k + 3);
                    g.set_edge(k + 1, h);
                }
                KinkSide::Right => {
                    g.set_edge(k + 2, k + 1);
                    g.set_edge(k + 3, h);
                }
            }
        }
        MoveSpec::R1Delete { crossing } => {
            if crossing >= d.crossing_count() {
                return Err(Error::InapplicableMove(format!("no crossing {crossing}")));
            }
            let kinked = (0..4).any(|p| {
                let s = 4 * crossing + p;
                let o = d.partner(s);
                o / 4 == crossing && (o % 4 == (p + 1) % 4 || (o % 4 + 1) % 4 == p)
            });
            if !kinked {
                return Err(Error::InapplicableMove(format!("crossing {crossing} has no monogon")));
            }
            g.remove_crossings(&[crossing]);
        }
        MoveSpec::R2Insert { over, under } => {
            let fm = faces(d)?;
            let de = d.dart_of_side(over).ok_or_else(|| Error::InapplicableMove(format!("no edge side {over}")))?;
            let df = d.dart_of_side(under).ok_or_else(|| Error::InapplicableMove(format!("no edge side {under}")))?;
            if over.abs() == under.abs() {
                return Err(Error::InapplicableMove("R2 needs two distinct edges".into()));
            }
            if fm.face_of_dart[de] != fm.face_of_dart[df] {
                return Err(Error::InapplicableMove(format!("edge sides {over} and {under} share no face")));
            }
            let (su, sv) = (de, d.partner(de));
            let (sw, sz) = (df, d.partner(df));
            let e_forward = d.is_outgoing(su);
            let f_forward = d.is_outgoing(sw);
            // c: first crossing met by the finger, e2: second.
            let c = g.add_crossing(true);
            let e = g.add_crossing(false);
            let mut edge = |a: usize, b: usize, forward: bool| {
                if forward {
                    g.set_edge(a, b)
                } else {
                    g.set_edge(b, a)
                }
            };
            edge(su, c, e_forward);
            edge(c + 2, e + 1, e_forward);
            edge(e + 3, sv, e_forward);
            edge(sw, e, f_forward);
            edge(e + 2, c + 1, f_forward);
            edge(c + 3, sz, f_forward);
        }
        MoveSpec::R2Delete { side } => {
            let fm = faces(d)?;
            let dart = d.dart_of_side(side).ok_or_else(|| Error::InapplicableMove(format!("no edge side {side}")))?;
            let face = &fm.darts[fm.face_of_dart[dart]];
            if face.len() != 2 {
                return Err(Error::InapplicableMove(format!("face of {side} is not a bigon")));
            }
            let (d1, d2) = (face[0], face[1]);
            let (c1, c2) = (d1 / 4, d2 / 4);
            if c1 == c2 || g.is_over(d1) != g.is_over(d.partner(d1)) {
                return Err(Error::InapplicableMove("bigon strands alternate".into()));
            }
            g.remove_crossings(&[c1, c2]);
        }
        MoveSpec::R3 { side } => {
            let fm = faces(d)?;
            let dart = d.dart_of_side(side).ok_or_else(|| Error::InapplicableMove(format!("no edge side {side}")))?;
            let face = fm.darts[fm.face_of_dart[dart]].clone();
            if face.len() != 3 {
                return Err(Error::InapplicableMove(format!("face of {side} is not a triangle")));
            }
            let xs: Vec<usize> = face.iter().map(|s| s / 4).collect();
            if xs[0] == xs[1] || xs[1] == xs[2] || xs[0] == xs[2] {
                return Err(Error::InapplicableMove("triangle repeats a crossing".into()));
            }
            if !face.iter().any(|&s| g.is_over(s) == g.is_over(d.partner(s))) {
                return Err(Error::InapplicableMove("no strand lies above or below both others".into()));
            }
            let mut swap: Vec<usize> = (0..g.link.len()).collect();
            let mut inner = vec![false; g.link.len()];
            for &s in &face {
                let (a, b) = (opposite(s), opposite(d.partner(s)));
                swap[a] = b;
                swap[b] = a;
                inner[s] = true;
                inner[d.partner(s)] = true;
            }
            let old = g.clone();
            for t in (0..old.link.len()).filter(|&t| old.tail[t]) {
                let h = old.link[t];
                if inner[t] {
                    g.set_edge(h, t);
                } else {
                    g.set_edge(swap[t], swap[h]);
                }
            }
        }
    }
    g.to_diagram()
}

/// Every move applicable to `d`, in a deterministic order.
pub fn applicable_moves(d: &LinkDiagram) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    let n = d.crossing_count();
    let sides = [KinkSide::Left, KinkSide::Right];
    if n == 0 {
        if d.unknots() > 0 {
            for side in sides {
                for over_first in [false, true] {
                    out.push(MoveSpec::R1Insert { edge: None, side, over_first });
                }
            }
        }
        return out;
    }
    let mut labels: Vec<u32> = d.crossings().iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    for &edge in &labels {
        for side in sides {
            for over_first in [false, true] {
                out.push(MoveSpec::R1Insert { edge: Some(edge), side, over_first });
            }
        }
    }
    for c in 0..n {
        if apply_reidemeister(d, &MoveSpec::R1Delete { crossing: c }).is_ok() {
            out.push(MoveSpec::R1Delete { crossing: c });
        }
    }
    let Ok(fm) = faces(d) else { return out };
    let g = SlotGraph::from_diagram(d);
    for face in &fm.darts {
        for &a in face {
            for &b in face {
                if d.label_at(a) != d.label_at(b) {
                    out.push(MoveSpec::R2Insert { over: d.edge_side(a), under: d.edge_side(b) });
                }
            }
        }
        let side = face.iter().map(|&s| d.edge_side(s)).min().unwrap_or(0);
        if face.len() == 2 && face[0] / 4 != face[1] / 4 && g.is_over(face[0]) == g.is_over(d.partner(face[0])) {
            out.push(MoveSpec::R2Delete { side });
        }
        if face.len() == 3 {
            let xs: Vec<usize> = face.iter().map(|s| s / 4).collect();
            let distinct = xs[0] != xs[1] && xs[1] != xs[2] && xs[0] != xs[2];
            if distinct && face.iter().any(|&s| g.is_over(s) == g.is_over(d.partner(s))) {
                out.push(MoveSpec::R3 { side });
            }
        }
    }
    out
}

/// Connected sum, joining the lowest-labeled edges of the two knots.
pub fn connected_sum(a: &LinkDiagram, b: &LinkDiagram) -> Result<LinkDiagram> {
    for k in [a, b] {
        if !k.is_knot() {
            return Err(Error::NotAKnot(k.component_count()));
        }
    }
    if a.crossing_count() == 0 {
        return Ok(b.clone());
    }
    if b.crossing_count() == 0 {
        return Ok(a.clone());
    }
    let mut g = SlotGraph::from_diagram(a);
    let gb = SlotGraph::from_diagram(b);
    let offset = g.link.len();
    g.link.extend(gb.link.iter().map(|&s| s + offset));
    g.tail.extend(&gb.tail);
    g.under_odd.extend(&gb.under_odd);
    let ta = (0..offset).find(|&s| g.tail[s]).expect("knot with crossings has an edge");
    let tb = (offset..g.link.len()).find(|&s| g.tail[s]).expect("knot with crossings has an edge");
    let (ha, hb) = (g.link[ta], g.link[tb]);
    g.set_edge(ta, hb);
    g.set_edge(tb, ha);
    g.to_diagram()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{bracket_determinant, corpus, DEFAULT_CROSSING_LIMIT};

    fn det(d: &LinkDiagram) -> num_bigint::BigInt {
        bracket_determinant(d, DEFAULT_CROSSING_LIMIT).unwrap()
    }

    #[test]
    fn r1_on_crossingless_unknot() {
        let u = LinkDiagram::parse_pd("O[1]").unwrap();
        for side in [KinkSide::Left, KinkSide::Right] {
            for over_first in [false, true] {
                let k = apply_reidemeister(&u, &MoveSpec::R1Insert { edge: None, side, over_first }).unwrap();
                assert_eq!(k.crossing_count(), 1);
                assert!(k.is_knot());
                assert_eq!(k.writhe(0).unwrap().abs(), 1);
                let back = apply_reidemeister(&k, &MoveSpec::R1Delete { crossing: 0 }).unwrap();
                assert_eq!(back, u);
            }
        }
    }

    #[test]
    fn r1_changes_writhe_by_one() {
        let t = corpus::knot("3_1");
        let w = t.writhe(0).unwrap();
        for mv in applicable_moves(&t).into_iter().filter(|m| matches!(m, MoveSpec::R1Insert { .. })) {
            let k = apply_reidemeister(&t, &mv).unwrap();
            assert_eq!((k.writhe(0).unwrap() - w).abs(), 1, "{mv:?}");
            assert_eq!(det(&k), det(&t));
        }
    }

    #[test]
    fn r2_insert_then_delete_restores_diagram() {
        let t = corpus::knot("4_1");
        let inserts: Vec<MoveSpec> =
            applicable_moves(&t).into_iter().filter(|m| matches!(m, MoveSpec::R2Insert { .. })).collect();
        assert!(!inserts.is_empty());
        for mv in inserts {
            let bigger = apply_reidemeister(&t, &mv).unwrap();
            assert_eq!(bigger.crossing_count(), 6);
            assert_eq!(det(&bigger), det(&t), "{mv:?}");
            let deletes: Vec<MoveSpec> =
                applicable_moves(&bigger).into_iter().filter(|m| matches!(m, MoveSpec::R2Delete { .. })).collect();
            let restored = deletes
                .iter()
                .map(|m| apply_reidemeister(&bigger, m).unwrap())
                .any(|r| r.crossing_count() == 4 && r.total_writhe() == t.total_writhe());
            assert!(restored, "{mv:?}");
        }
    }

    #[test]
    fn r3_preserves_invariants() {
        // Push one strand over a crossing so that a triangle exists.
        let t = corpus::knot("3_1");
        let mut saw_r3 = false;
        for mv in applicable_moves(&t).into_iter().filter(|m| matches!(m, MoveSpec::R2Insert { .. })) {
            let bigger = apply_reidemeister(&t, &mv).unwrap();
            for r3 in applicable_moves(&bigger).into_iter().filter(|m| matches!(m, MoveSpec::R3 { .. })) {
                let moved = apply_reidemeister(&bigger, &r3).unwrap();
                saw_r3 = true;
                assert_eq!(moved.crossing_count(), bigger.crossing_count());
                assert_eq!(moved.total_writhe(), bigger.total_writhe());
                assert_eq!(det(&moved), BigInt::from(3));
            }
        }
        assert!(saw_r3);
    }

    use num_bigint::BigInt;

    #[test]
    fn inapplicable_moves() {
        let t = corpus::knot("3_1");
        assert!(apply_reidemeister(&t, &MoveSpec::R1Delete { crossing: 0 }).is_err());
        assert!(apply_reidemeister(&t, &MoveSpec::R1Delete { crossing: 9 }).is_err());
        assert!(apply_reidemeister(&t, &MoveSpec::R2Insert { over: 1, under: 1 }).is_err());
        assert!(apply_reidemeister(&t, &MoveSpec::R1Insert { edge: Some(99), side: KinkSide::Left, over_first: true })
            .is_err());
        assert!(
            apply_reidemeister(&t, &MoveSpec::R1Insert { edge: None, side: KinkSide::Left, over_first: true }).is_err()
        );
        // Alternating trefoil has no R2-removable bigon and no R3 triangle.
        let moves = applicable_moves(&t);
        assert!(!moves.iter().any(|m| matches!(m, MoveSpec::R2Delete { .. } | MoveSpec::R3 { .. })));
    }

    #[test]
    fn connected_sum_of_trefoils() {
        let t = corpus::knot("3_1");
        let s = connected_sum(&t, &t).unwrap();
        assert_eq!(s.crossing_count(), 6);
        assert!(s.is_knot());
        assert_eq!(det(&s), BigInt::from(9));
    }
}
