use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::LinkDiagram;
use crate::error::{Error, Result};

/// Faces of a diagram on the sphere, one of them designated unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceMap {
    /// Boundary walk of each face as darts (slots), face on the left.
    pub darts: Vec<Vec<usize>>,
    /// Canonical key per face: the edge sides of the walk, rotated so the
    /// smallest comes first. Faces of crossingless circles have empty keys.
    pub keys: Vec<Vec<i64>>,
    /// Face on the left of each dart.
    pub face_of_dart: Vec<usize>,
    /// Faces at the four corners of each crossing; corner `k` lies between
    /// positions `k` and `k + 1`.
    pub corners: Vec<[usize; 4]>,
    pub unbounded: usize,
}

impl FaceMap {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Faces on either side of the edge leaving `dart`.
    pub fn across(&self, d: &LinkDiagram, dart: usize) -> (usize, usize) {
        (self.face_of_dart[dart], self.face_of_dart[d.partner(dart)])
    }
}

pub(crate) fn canonical_cycle(mut sides: Vec<i64>) -> Vec<i64> {
    if let Some(pos) = sides.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i) {
        sides.rotate_left(pos);
    }
    sides
}

/// Extracts the faces of a validated diagram. The unbounded face is the one
/// with the longest boundary, ties broken by the smallest key.
pub fn faces(d: &LinkDiagram) -> Result<FaceMap> {
    let n = d.crossing_count();
    let cycles = d.face_cycles();
    if n > 0 && cycles.len() != n + 2 {
        return Err(Error::NonPlanar(format!("face walk found {} faces for {n} crossings", cycles.len())));
    }
    let mut face_of_dart = vec![usize::MAX; 4 * n];
    let mut keys = Vec::with_capacity(cycles.len() + d.unknots());
    for (f, cyc) in cycles.iter().enumerate() {
        for &s in cyc {
            face_of_dart[s] = f;
        }
        keys.push(canonical_cycle(cyc.iter().map(|&s| d.edge_side(s)).collect()));
    }
    let mut darts = cycles;
    // Crossingless circles each add one face (drawn side by side).
    let extra = if n == 0 { d.unknots() + 1 } else { d.unknots() };
    for _ in 0..extra {
        darts.push(Vec::new());
        keys.push(Vec::new());
    }
    let corners = (0..n).map(|c| [0, 1, 2, 3].map(|k| face_of_dart[4 * c + k])).collect();
    let unbounded = (0..keys.len())
        .max_by(|&a, &b| darts[a].len().cmp(&darts[b].len()).then_with(|| keys[b].cmp(&keys[a])))
        .unwrap_or(0);
    Ok(FaceMap { darts, keys, face_of_dart, corners, unbounded })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    fn flip(self) -> Self {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub color: Vec<Color>,
}

impl Coloring {
    pub fn count(&self, c: Color) -> usize {
        self.color.iter().filter(|&&x| x == c).count()
    }

    pub fn white_faces(&self) -> Vec<usize> {
        (0..self.color.len()).filter(|&f| self.color[f] == Color::White).collect()
    }
}

/// Two-colors the faces so that faces sharing an edge differ, with the
/// unbounded face white.
pub fn checkerboard(d: &LinkDiagram, f: &FaceMap) -> Result<Coloring> {
    let n_faces = f.len();
    let mut color: Vec<Option<Color>> = vec![None; n_faces];
    if d.crossing_count() == 0 {
        // Outer face white, every circle's disk black.
        let color = (0..n_faces).map(|i| if i == f.unbounded { Color::White } else { Color::Black }).collect();
        return Ok(Coloring { color });
    }
    color[f.unbounded] = Some(Color::White);
    let mut queue = VecDeque::from([f.unbounded]);
    while let Some(face) = queue.pop_front() {
        let c = color[face].expect("queued faces are colored");
        for &dart in &f.darts[face] {
            let other = f.face_of_dart[d.partner(dart)];
            match color[other] {
                None => {
                    color[other] = Some(c.flip());
                    queue.push_back(other);
                }
                Some(oc) if oc == c => {
                    return Err(Error::NonPlanar("faces do not admit a checkerboard coloring".into()))
                }
                Some(_) => {}
            }
        }
    }
    let color = color.into_iter().map(|c| c.ok_or(Error::Disconnected)).collect::<Result<Vec<_>>>()?;
    Ok(Coloring { color })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::corpus;

    #[test]
    fn euler_counts() {
        let trefoil = corpus::knot("3_1");
        assert_eq!(faces(&trefoil).unwrap().len(), 5);
        let hopf = LinkDiagram::parse_pd("X[1,4,2,3] X[3,2,4,1]").unwrap();
        assert_eq!(faces(&hopf).unwrap().len(), 4);
        let unknot = LinkDiagram::parse_pd("O[1]").unwrap();
        assert_eq!(faces(&unknot).unwrap().len(), 2);
    }

    #[test]
    fn each_edge_side_is_in_one_face() {
        let d = corpus::knot("4_1");
        let f = faces(&d).unwrap();
        let mut all: Vec<i64> = f.keys.iter().flatten().copied().collect();
        all.sort();
        let mut expect: Vec<i64> = (1..=8).flat_map(|l| [-l, l]).collect();
        expect.sort();
        assert_eq!(all, expect);
    }

    #[test]
    fn colorings() {
        let trefoil = corpus::knot("3_1");
        let f = faces(&trefoil).unwrap();
        let c = checkerboard(&trefoil, &f).unwrap();
        assert_eq!(c.color[f.unbounded], Color::White);
        let (w, b) = (c.count(Color::White), c.count(Color::Black));
        assert!((w, b) == (2, 3) || (w, b) == (3, 2));

        let hopf = LinkDiagram::parse_pd("X[1,4,2,3] X[3,2,4,1]").unwrap();
        let f = faces(&hopf).unwrap();
        let c = checkerboard(&hopf, &f).unwrap();
        assert_eq!((c.count(Color::White), c.count(Color::Black)), (2, 2));

        let unknot = LinkDiagram::parse_pd("O[1]").unwrap();
        let f = faces(&unknot).unwrap();
        let c = checkerboard(&unknot, &f).unwrap();
        assert_eq!((c.count(Color::White), c.count(Color::Black)), (1, 1));
    }

    #[test]
    fn coloring_is_proper_on_corpus() {
        for (name, d) in corpus::all() {
            let f = faces(&d).unwrap();
            let c = checkerboard(&d, &f).unwrap();
            for s in 0..4 * d.crossing_count() {
                let (l, r) = f.across(&d, s);
                assert_ne!(c.color[l], c.color[r], "{name}");
            }
            // Corners alternate around each crossing.
            for k in &f.corners {
                assert_eq!(c.color[k[0]], c.color[k[2]], "{name}");
                assert_ne!(c.color[k[0]], c.color[k[1]], "{name}");
            }
        }
    }
}
