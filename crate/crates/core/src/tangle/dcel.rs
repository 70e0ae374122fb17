//! Half-edge map used to draw closure arcs into a tangle diagram.
//!
//! Every face lies on the left of its half-edges; `next` walks a face and
//! `ccw` turns counterclockwise around a vertex.

use std::collections::VecDeque;

use super::Side;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Arc {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Half {
    Tangle {
        label: u32,
        forward: bool,
    },
    /// A piece of the closure arc; `side` is set inside the annulus.
    Closure {
        side: Option<Side>,
    },
    /// Boundary circle of the solid torus, split by the tips into two arcs.
    Outer(Arc),
    /// Boundary of the hole.
    Hole,
    /// Cut from the hole to the boundary of its face.
    Seam,
}

impl Half {
    pub(crate) fn on_knot(self) -> bool {
        matches!(self, Half::Tangle { .. } | Half::Closure { .. })
    }

    pub(crate) fn side(self) -> Option<i64> {
        match self {
            Half::Tangle { label, forward } => Some(if forward { i64::from(label) } else { -i64::from(label) }),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Vertex {
    /// `pair` holds the two outgoing halves of one strand.
    Crossing {
        pair: [usize; 2],
        pair_is_under: bool,
    },
    Plain,
}

#[derive(Clone, Debug)]
pub(crate) struct Dcel {
    origin: Vec<usize>,
    twin: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    pub(crate) kind: Vec<Half>,
    pub(crate) vertex: Vec<Vertex>,
}

/// What a routed segment must reach.
#[derive(Clone, Debug)]
pub(crate) enum Target<'a> {
    /// Cross a tangle edge into the face with these edge sides.
    Tangle(&'a [i64]),
    Outer(Arc),
    Hole,
    /// End at this vertex.
    Vertex(usize),
}

impl Dcel {
    /// Builds the map from edges `(from, to, kind of from->to, kind of
    /// to->from)`, whose halves get ids `2i` and `2i + 1`, and the
    /// counterclockwise order of outgoing halves at every vertex.
    pub(crate) fn from_rotations(
        edges: &[(usize, usize, Half, Half)],
        rotations: &[Vec<usize>],
        vertex: Vec<Vertex>,
    ) -> Self {
        let n = 2 * edges.len();
        let mut d = Dcel {
            origin: vec![0; n],
            twin: (0..n).map(|h| h ^ 1).collect(),
            next: vec![usize::MAX; n],
            prev: vec![usize::MAX; n],
            kind: Vec::with_capacity(n),
            vertex,
        };
        for (i, &(a, b, kf, kb)) in edges.iter().enumerate() {
            d.origin[2 * i] = a;
            d.origin[2 * i + 1] = b;
            d.kind.push(kf);
            d.kind.push(kb);
        }
        let mut pos = vec![(0usize, 0usize); n];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                debug_assert_eq!(d.origin[h], v);
                pos[h] = (v, i);
            }
        }
        for h in 0..n {
            let t = d.twin[h];
            let (v, i) = pos[t];
            let rot = &rotations[v];
            let nx = rot[(i + rot.len() - 1) % rot.len()];
            d.next[h] = nx;
            d.prev[nx] = h;
        }
        d
    }

    pub(crate) fn dest(&self, h: usize) -> usize {
        self.origin[self.twin[h]]
    }

    pub(crate) fn ccw(&self, h: usize) -> usize {
        self.twin[self.prev[h]]
    }

    fn push_half(&mut self, origin: usize, kind: Half) -> usize {
        self.origin.push(origin);
        self.twin.push(usize::MAX);
        self.next.push(usize::MAX);
        self.prev.push(usize::MAX);
        self.kind.push(kind);
        self.origin.len() - 1
    }

    fn link(&mut self, a: usize, b: usize) {
        self.next[a] = b;
        self.prev[b] = a;
    }

    /// Subdivides the edge of `h` with a new vertex. Existing half-edge ids
    /// keep their origins: afterwards `h` and its old twin both end at the
    /// new vertex.
    pub(crate) fn split(&mut self, h: usize, v: Vertex) -> usize {
        let t = self.twin[h];
        let x = self.vertex.len();
        self.vertex.push(v);
        let n1 = self.push_half(x, self.kind[h]);
        let n2 = self.push_half(x, self.kind[t]);
        self.twin[h] = n2;
        self.twin[n2] = h;
        self.twin[t] = n1;
        self.twin[n1] = t;
        let hn = self.next[h];
        self.link(h, n1);
        self.link(n1, hn);
        let tn = self.next[t];
        self.link(t, n2);
        self.link(n2, tn);
        x
    }

    /// After `split(h)`, the half that ends where `cur` ended before.
    fn past_split(&self, cur: usize, h: usize) -> usize {
        if cur == h {
            self.next[h]
        } else {
            cur
        }
    }

    /// Adds an edge from the end of `ha` to the end of `hb`, drawn through
    /// the face on their left. Returns the new half leaving `dest(ha)`.
    pub(crate) fn connect(&mut self, ha: usize, hb: usize, kind: Half) -> usize {
        let g = self.push_half(self.dest(ha), kind);
        let gt = self.push_half(self.dest(hb), kind);
        self.twin[g] = gt;
        self.twin[gt] = g;
        let (na, nb) = (self.next[ha], self.next[hb]);
        self.link(ha, g);
        self.link(g, nb);
        self.link(hb, gt);
        self.link(gt, na);
        g
    }

    /// Panics unless `next`, `prev` and `twin` describe a consistent map.
    #[cfg(test)]
    pub(crate) fn check(&self) {
        let n = self.origin.len();
        let mut seen = vec![false; n];
        for h in 0..n {
            assert!(!seen[self.next[h]], "two halves precede {}", self.next[h]);
            seen[self.next[h]] = true;
            assert_eq!(self.prev[self.next[h]], h);
            assert_eq!(self.twin[self.twin[h]], h);
            assert_eq!(self.origin[self.next[h]], self.dest(h));
        }
    }

    /// Face cycles and the face on the left of each half.
    pub(crate) fn faces(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.origin.len();
        let mut face_of = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let f = cycles.len();
            let mut cyc = Vec::new();
            let mut h = start;
            loop {
                face_of[h] = f;
                cyc.push(h);
                h = self.next[h];
                if h == start {
                    break;
                }
            }
            cycles.push(cyc);
        }
        (face_of, cycles)
    }

    /// Outgoing halves at the end of `h`, counterclockwise from `twin(h)`.
    pub(crate) fn around(&self, h: usize) -> Vec<usize> {
        let start = self.twin[h];
        let mut out = vec![start];
        let mut g = self.ccw(start);
        while g != start {
            out.push(g);
            g = self.ccw(g);
        }
        out
    }

    fn qualifies(&self, h: usize, target: &Target<'_>) -> bool {
        match *target {
            Target::Tangle(sides) => match self.kind[h].side() {
                Some(s) => sides.contains(&-s),
                None => false,
            },
            Target::Outer(arc) => self.kind[h] == Half::Outer(arc),
            Target::Hole => self.kind[h] == Half::Hole,
            Target::Vertex(v) => self.dest(h) == v,
        }
    }

    /// Draws the closure arc onward from the end of `cur` (whose left face is
    /// the current region) to `target`, crossing as few earlier closure
    /// pieces as possible. `side` labels the new pieces. Returns the half
    /// that arrives at the new endpoint with the far region on its left, or
    /// `None` when the target cannot be reached.
    pub(crate) fn route(&mut self, cur: usize, target: Target<'_>, side: Option<Side>) -> Option<usize> {
        let (face_of, cycles) = self.faces();
        let start = face_of[cur];
        // Per face: the closure half crossed to enter it.
        let mut entry: Vec<Option<usize>> = vec![None; cycles.len()];
        let mut seen = vec![false; cycles.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([(start, cur)]);
        let mut found = None;
        'bfs: while let Some((f, from)) = queue.pop_front() {
            // Walk the face starting just after the half we came in by.
            let cyc = &cycles[f];
            let at = cyc.iter().position(|&h| h == from).expect("entry lies on its face");
            let order: Vec<usize> = (1..=cyc.len()).map(|k| cyc[(at + k) % cyc.len()]).collect();
            for &h in &order {
                if self.qualifies(h, &target) {
                    found = Some((f, h));
                    break 'bfs;
                }
            }
            for &h in &order {
                if let Half::Closure { .. } = self.kind[h] {
                    let g = face_of[self.twin[h]];
                    if !seen[g] {
                        seen[g] = true;
                        entry[g] = Some(h);
                        queue.push_back((g, self.twin[h]));
                    }
                }
            }
        }
        let (mut f, hit) = found?;
        let mut crossings = Vec::new();
        while let Some(h) = entry[f] {
            crossings.push(h);
            f = face_of[h];
        }
        crossings.reverse();

        let kind = Half::Closure { side };
        let mut cur = cur;
        for h in crossings {
            let old_side = match self.kind[h] {
                Half::Closure { side } => side,
                _ => unreachable!("only closure pieces are crossed on the way"),
            };
            let t = self.twin[h];
            let x = self.split(h, Vertex::Plain);
            cur = self.past_split(cur, h);
            // Above and below the solid torus are forced; otherwise the
            // newer piece passes over.
            let old_over = old_side == Some(Side::Over) && side == Some(Side::Under);
            let pair = [self.twin[h], self.twin[t]];
            self.vertex[x] = Vertex::Crossing { pair, pair_is_under: !old_over };
            self.connect(cur, h, kind);
            cur = t;
        }
        match target {
            Target::Vertex(_) => {
                self.connect(cur, hit, kind);
                Some(hit)
            }
            Target::Tangle(_) => {
                let t = self.twin[hit];
                let x = self.split(hit, Vertex::Plain);
                cur = self.past_split(cur, hit);
                let pair = [self.twin[hit], self.twin[t]];
                self.vertex[x] = Vertex::Crossing { pair, pair_is_under: side == Some(Side::Over) };
                self.connect(cur, hit, kind);
                Some(t)
            }
            Target::Outer(_) | Target::Hole => {
                let t = self.twin[hit];
                self.split(hit, Vertex::Plain);
                cur = self.past_split(cur, hit);
                self.connect(cur, hit, kind);
                Some(t)
            }
        }
    }

    /// Walks the knot from the half `start` and returns its PD code.
    pub(crate) fn pd_code(&self, start: usize) -> Vec<[u32; 4]> {
        let n = self.origin.len();
        let mut label = vec![0u32; n];
        let mut incoming = vec![false; n];
        let mut current = 1u32;
        let mut visited = vec![false; self.vertex.len()];
        let mut order = Vec::new();
        let mut h = start;
        loop {
            let knot: Vec<usize> = self.around(h).into_iter().filter(|&g| self.kind[g].on_knot()).collect();
            let v = self.dest(h);
            let out = match self.vertex[v] {
                Vertex::Crossing { .. } => {
                    label[knot[0]] = current;
                    incoming[knot[0]] = true;
                    current += 1;
                    label[knot[2]] = current;
                    let out = knot[2];
                    if !visited[v] {
                        visited[v] = true;
                        order.push((v, knot));
                    }
                    out
                }
                Vertex::Plain => knot[1],
            };
            h = out;
            if h == start {
                break;
            }
        }
        // The edge through the start point got two labels: the last and 1.
        let wrap = |l: u32| if l == current { 1 } else { l };
        order
            .into_iter()
            .map(|(v, ring)| {
                let (pair, pair_is_under) = match self.vertex[v] {
                    Vertex::Crossing { pair, pair_is_under } => (pair, pair_is_under),
                    Vertex::Plain => unreachable!(),
                };
                let is_under = |g: usize| pair.contains(&g) == pair_is_under;
                let first = (0..4).find(|&i| is_under(ring[i]) && incoming[ring[i]]).expect("under strand enters");
                let mut x = [0u32; 4];
                for (k, slot) in x.iter_mut().enumerate() {
                    *slot = wrap(label[ring[(first + k) % 4]]);
                }
                x
            })
            .collect()
    }
}
