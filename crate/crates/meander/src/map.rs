//! Rotation-system representation of a diagram on the sphere.
//!
//! Crossing `p` owns darts `4p + d` with `d` in counterclockwise order east, north, west, south.
//! Anchors and the ends of the horizontal strand are extra vertices of valence one; a shared
//! anchor is a single vertex of valence two carrying one horizontal and one transversal dart.
//! A closed horizontal strand is closed up by one edge through the point at infinity, which is
//! not a vertex.

use crate::diagram::{HorizontalEnd, Kind, Link, MeanderDiagram, Side};
use crate::error::{Error, Result};

pub const EAST: usize = 0;
pub const NORTH: usize = 1;
pub const WEST: usize = 2;
pub const SOUTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strand {
    Horizontal,
    Transversal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vertex {
    Crossing(usize),
    /// An end of the horizontal strand (for a ray, `Left` is its free end).
    HorizontalEnd(HorizontalEnd),
    /// A transversal anchor, by index into the diagram's anchor list.
    Anchor(usize),
    /// A transversal anchor that coincides with a horizontal end.
    Shared { end: HorizontalEnd, anchor: usize },
}

impl Vertex {
    pub fn valence(self) -> usize {
        match self {
            Vertex::Crossing(_) => 4,
            Vertex::HorizontalEnd(_) | Vertex::Anchor(_) => 1,
            Vertex::Shared { .. } => 2,
        }
    }

    /// Valence-one and valence-two vertices are simple poles of the quadratic differential.
    pub fn is_pole(self) -> bool {
        !matches!(self, Vertex::Crossing(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialMap {
    pub kind: Kind,
    pub n: usize,
    pub sigma: Vec<usize>,
    pub alpha: Vec<usize>,
    pub vertex_of: Vec<usize>,
    pub vertices: Vec<Vertex>,
    /// First dart of each vertex; a shared vertex lists its horizontal dart first.
    pub vertex_darts: Vec<Vec<usize>>,
    pub strand: Vec<Strand>,
    /// The dart whose edge closes the horizontal strand through infinity.
    pub infinity_edge: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Darts of the face in boundary order: each is followed by `sigma(alpha(dart))`.
    pub darts: Vec<usize>,
    /// Sides after the merging rule: boundary darts at valence-one vertices are not counted.
    pub side_count: usize,
    /// Valence-one and valence-two vertices met along the boundary.
    pub anchor_incidences: usize,
}

impl Face {
    /// Order `k` of the zero at the face's centre: a `(2k + 4)`-gon.
    pub fn order(&self) -> i32 {
        (self.side_count as i32 - 4) / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTable {
    pub faces: Vec<Face>,
    pub face_of: Vec<usize>,
}

impl CombinatorialMap {
    pub fn build(d: &MeanderDiagram) -> Result<CombinatorialMap> {
        d.validate()?;
        Self::build_unchecked(d)
    }

    /// Builds without re-validating the diagram, but still rejects non-planar gluings.
    pub(crate) fn build_unchecked(d: &MeanderDiagram) -> Result<CombinatorialMap> {
        let n = d.n;
        let links = d.links()?;
        let mut m = CombinatorialMap {
            kind: d.kind,
            n,
            sigma: Vec::with_capacity(4 * n + 4),
            alpha: vec![usize::MAX; 4 * n],
            vertex_of: Vec::with_capacity(4 * n + 4),
            vertices: Vec::with_capacity(n + 4),
            vertex_darts: Vec::with_capacity(n + 4),
            strand: Vec::with_capacity(4 * n + 4),
            infinity_edge: None,
        };
        for p in 0..n {
            for dir in 0..4 {
                m.sigma.push(4 * p + (dir + 1) % 4);
                m.vertex_of.push(p);
                m.strand.push(if dir % 2 == 0 { Strand::Horizontal } else { Strand::Transversal });
            }
            m.vertices.push(Vertex::Crossing(p));
            m.vertex_darts.push((0..4).map(|dir| 4 * p + dir).collect());
        }
        for p in 0..n.saturating_sub(1) {
            m.pair(4 * p + EAST, 4 * (p + 1) + WEST);
        }
        let shared_with = |end: HorizontalEnd| {
            d.anchors.transversal.iter().position(|a| a.shared == Some(end))
        };
        let mut shared_dart = vec![None; d.anchors.transversal.len()];
        if d.kind.horizontal_closed() {
            m.pair(4 * (n - 1) + EAST, WEST);
            m.infinity_edge = Some(4 * (n - 1) + EAST);
        } else {
            for (end, dart) in [(HorizontalEnd::Left, WEST), (HorizontalEnd::Right, 4 * (n - 1) + EAST)] {
                match shared_with(end) {
                    Some(anchor) => {
                        let ds = m.add_vertex(
                            Vertex::Shared { end, anchor },
                            &[Strand::Horizontal, Strand::Transversal],
                        );
                        m.pair(dart, ds[0]);
                        shared_dart[anchor] = Some(ds[1]);
                    }
                    None => {
                        let ds = m.add_vertex(Vertex::HorizontalEnd(end), &[Strand::Horizontal]);
                        m.pair(dart, ds[0]);
                    }
                }
            }
        }
        let dart_of_port = |port: usize| 4 * (port / 2) + if port.is_multiple_of(2) { NORTH } else { SOUTH };
        for (p, l) in links.iter().enumerate() {
            match *l {
                Link::Port(q) => {
                    if p < q {
                        m.pair(dart_of_port(p), dart_of_port(q));
                    }
                }
                Link::Anchor(i) => match shared_dart[i] {
                    Some(t) => m.pair(dart_of_port(p), t),
                    None => {
                        let ds = m.add_vertex(Vertex::Anchor(i), &[Strand::Transversal]);
                        m.pair(dart_of_port(p), ds[0]);
                    }
                },
            }
        }
        debug_assert!(m.alpha.iter().all(|&a| a != usize::MAX));
        let faces = m.face_table()?;
        let euler = m.vertices.len() as i64 - (m.darts() / 2) as i64 + faces.faces.len() as i64;
        if euler != 2 {
            return Err(Error::NonPlanar(format!("Euler characteristic {euler}")));
        }
        Ok(m)
    }

    fn add_vertex(&mut self, v: Vertex, strands: &[Strand]) -> Vec<usize> {
        let first = self.sigma.len();
        let k = strands.len();
        let idx = self.vertices.len();
        let darts: Vec<usize> = (first..first + k).collect();
        for (j, s) in strands.iter().enumerate() {
            self.sigma.push(first + (j + 1) % k);
            self.vertex_of.push(idx);
            self.strand.push(*s);
            self.alpha.push(usize::MAX);
        }
        self.vertices.push(v);
        self.vertex_darts.push(darts.clone());
        darts
    }

    fn pair(&mut self, a: usize, b: usize) {
        self.alpha[a] = b;
        self.alpha[b] = a;
    }

    pub fn darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn edges(&self) -> usize {
        self.darts() / 2
    }

    pub fn vertex(&self, dart: usize) -> Vertex {
        self.vertices[self.vertex_of[dart]]
    }

    /// Strand of the edge through `dart`, read from whichever end is a crossing.
    pub fn edge_strand(&self, dart: usize) -> Strand {
        self.strand[dart]
    }

    /// Orbits of `sigma ∘ alpha`, numbered by their smallest dart.
    pub fn face_table(&self) -> Result<FaceTable> {
        let nd = self.darts();
        let mut face_of = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut x = start;
            let (mut sides, mut anchors) = (0, 0);
            loop {
                face_of[x] = id;
                darts.push(x);
                let v = self.vertex(x);
                if v.valence() != 1 {
                    sides += 1;
                }
                if v.is_pole() {
                    anchors += 1;
                }
                x = self.sigma[self.alpha[x]];
                if x == start {
                    break;
                }
            }
            if sides % 2 == 1 {
                return Err(Error::OddSideCount(sides));
            }
            faces.push(Face { darts, side_count: sides, anchor_incidences: anchors });
        }
        Ok(FaceTable { faces, face_of })
    }

    pub fn faces(&self) -> Result<Vec<Face>> {
        Ok(self.face_table()?.faces)
    }

    pub fn euler_characteristic(&self) -> Result<i64> {
        let f = self.face_table()?.faces.len() as i64;
        Ok(self.vertices.len() as i64 - self.edges() as i64 + f)
    }

    /// Poles carried by vertices: anchors, free ends and shared anchors.
    pub fn pole_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].is_pole()).collect()
    }

    /// Whether the given strand is a closed curve on the sphere.
    pub fn strand_closed(&self, s: Strand) -> bool {
        match s {
            Strand::Horizontal => self.kind.horizontal_closed(),
            Strand::Transversal => self.kind.transversal_closed(),
        }
    }

    /// Port side of a transversal dart at a crossing.
    pub fn dart_side(dart: usize) -> Option<Side> {
        match dart % 4 {
            NORTH => Some(Side::Upper),
            SOUTH => Some(Side::Lower),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::AnchorEnd;

    #[test]
    fn closed_two_crossings() {
        let d = MeanderDiagram::new(Kind::Closed, 2, vec![[0, 1]], vec![[0, 1]], vec![], vec![]).unwrap();
        let m = CombinatorialMap::build(&d).unwrap();
        let faces = m.faces().unwrap();
        assert_eq!((m.vertices.len(), m.edges(), faces.len()), (2, 4, 4));
        assert!(faces.iter().all(|f| f.side_count == 2));
    }

    #[test]
    fn plus_sign() {
        let anchors = vec![AnchorEnd::new(Side::Upper, 0), AnchorEnd::new(Side::Lower, 0)];
        let d = MeanderDiagram::new(Kind::DoublyAnchoredOpen, 1, vec![], vec![], vec![], anchors).unwrap();
        let m = CombinatorialMap::build(&d).unwrap();
        let faces = m.faces().unwrap();
        assert_eq!((m.vertices.len(), m.edges(), faces.len()), (5, 4, 1));
        assert_eq!(faces[0].side_count, 4);
        assert_eq!(faces[0].anchor_incidences, 4);
    }

    #[test]
    fn shared_anchor_in_the_wrong_face_is_non_planar() {
        // The upper anchor sits above the horizontal arc; sharing it with the right end forces
        // the transversal end through the horizontal strand only if the faces differ.
        let anchors = vec![
            AnchorEnd { side: Side::Upper, pos: 0, shared: Some(HorizontalEnd::Right) },
            AnchorEnd::new(Side::Lower, 1),
        ];
        let d = MeanderDiagram::new(Kind::DoublyAnchoredOpen, 2, vec![], vec![], vec![], anchors);
        // Position 1 has no upper incidence: arity error comes first.
        assert!(d.is_err());
    }
}
