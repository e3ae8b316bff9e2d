//! Branch points of a double cover of the sphere and the mod-2 cocycle describing it.
//!
//! Branch points are punctures of the diagram: faces (the cone points at their centres) and
//! the valence-one and valence-two vertices. A cocycle assigns a sheet swap `0` or `1` to every
//! edge of the map; going once around a puncture must swap sheets exactly when the puncture is
//! branched.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::diagram::MeanderDiagram;
use crate::error::{Error, Result};
use crate::map::{CombinatorialMap, FaceTable, Strand, Vertex};
use crate::surface::quadrangulate::dart_sides;

/// Branched faces (indexed like the face table) and branched vertices (indexed like
/// `CombinatorialMap::vertices`; only poles may be set).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchSet {
    pub faces: Vec<bool>,
    pub vertices: Vec<bool>,
}

impl BranchSet {
    pub fn empty(m: &CombinatorialMap, ft: &FaceTable) -> Self {
        BranchSet { faces: vec![false; ft.faces.len()], vertices: vec![false; m.vertices.len()] }
    }

    /// Every simple pole: bigon faces, anchors, strand ends and shared anchors.
    pub fn all_poles(m: &CombinatorialMap, ft: &FaceTable) -> Self {
        BranchSet {
            faces: ft.faces.iter().map(|f| f.order() == -1).collect(),
            vertices: m.vertices.iter().map(|v| v.is_pole()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.faces.iter().chain(&self.vertices).filter(|&&b| b).count()
    }

    fn check(&self, m: &CombinatorialMap, ft: &FaceTable) -> Result<()> {
        if self.faces.len() != ft.faces.len() || self.vertices.len() != m.vertices.len() {
            return Err(Error::BadArity("branch set does not match the map".into()));
        }
        for (v, &b) in m.vertices.iter().zip(&self.vertices) {
            if b && !v.is_pole() {
                return Err(Error::BadArity("crossings cannot be branch points".into()));
            }
            if !b && matches!(v, Vertex::Shared { .. }) {
                return Err(Error::SharedAnchorUnbranched);
            }
        }
        let size = self.size();
        if size % 2 == 1 {
            return Err(Error::OddBranchSetSize(size));
        }
        Ok(())
    }
}

/// Side of `strand` for every face: 0 or 1, with face 0 on side 0.
pub fn strand_sides(m: &CombinatorialMap, ft: &FaceTable, strand: Strand) -> Result<Vec<u8>> {
    if !m.strand_closed(strand) {
        return Err(Error::StrandNotClosed);
    }
    let nf = ft.faces.len();
    let mut colour = vec![u8::MAX; nf];
    colour[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        for &x in &ft.faces[f].darts {
            let g = ft.face_of[m.alpha[x]];
            let c = colour[f] ^ u8::from(m.strand[x] == strand);
            if colour[g] == u8::MAX {
                colour[g] = c;
                queue.push_back(g);
            } else if colour[g] != c {
                return Err(Error::NonPlanar("strand does not separate the sphere".into()));
            }
        }
    }
    Ok(colour)
}

/// Parity of the number of branch points on one side of a closed strand. Odd parity means the
/// strand lifts to a single separating curve.
pub fn enclosed_parity_in(m: &CombinatorialMap, ft: &FaceTable, strand: Strand, b: &BranchSet) -> Result<bool> {
    let side = strand_sides(m, ft, strand)?;
    let size = b.size();
    if size % 2 == 1 {
        return Err(Error::OddBranchSetSize(size));
    }
    let mut count = 0;
    for (f, &br) in b.faces.iter().enumerate() {
        count += usize::from(br && side[f] == 1);
    }
    for (v, &br) in b.vertices.iter().enumerate() {
        let dart = m.vertex_darts[v][0];
        count += usize::from(br && side[ft.face_of[dart]] == 1);
    }
    Ok(count % 2 == 1)
}

pub fn enclosed_puncture_parity(d: &MeanderDiagram, strand: Strand, b: &BranchSet) -> Result<bool> {
    let m = CombinatorialMap::build(d)?;
    let ft = m.face_table()?;
    enclosed_parity_in(&m, &ft, strand, b)
}

/// A branch set with a cocycle realising it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchData {
    pub branch: BranchSet,
    /// Sheet swap across the edge of each dart (equal on both darts of an edge).
    pub edge_weight: Vec<u8>,
    /// The same weights indexed by the side of the dual sphere surface that carries the edge.
    pub side_weight: Vec<u8>,
}

/// Solves for edge weights whose sum around each face and each pole matches the branch set.
///
/// An edge ending at a valence-one vertex is crossed once by a loop around that vertex, so its
/// weight is the vertex's branch bit. The remaining equations live on the dual graph: a loop
/// around a face crosses each of its other edges once, plus a fixed half-turn where it passes
/// the sector of a shared anchor between its transversal and horizontal edges. They form a
/// T-join problem, solved on a breadth-first spanning tree of the dual graph.
pub fn solve_branch_cocycle(m: &CombinatorialMap, ft: &FaceTable, b: &BranchSet) -> Result<BranchData> {
    b.check(m, ft)?;
    let nd = m.darts();
    let mut w = vec![0u8; nd];
    let mut need: Vec<u8> = b.faces.iter().map(|&x| u8::from(x)).collect();
    let mut fixed = vec![false; nd];
    for (v, vertex) in m.vertices.iter().enumerate() {
        match vertex {
            Vertex::HorizontalEnd(_) | Vertex::Anchor(_) => {
                let y = m.vertex_darts[v][0];
                let x = m.alpha[y];
                let bit = u8::from(b.vertices[v]);
                w[x] = bit;
                w[y] = bit;
                fixed[x] = true;
                fixed[y] = true;
                need[ft.face_of[x]] ^= bit;
            }
            Vertex::Shared { .. } => {
                let h = m.vertex_darts[v][0];
                need[ft.face_of[h]] ^= 1;
            }
            Vertex::Crossing(_) => {}
        }
    }
    // Spanning tree of the dual graph through the free edges.
    let nf = ft.faces.len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nf];
    let mut seen = vec![false; nf];
    let mut order = Vec::with_capacity(nf);
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for &x in &ft.faces[f].darts {
            if fixed[x] {
                continue;
            }
            let g = ft.face_of[m.alpha[x]];
            if !seen[g] {
                seen[g] = true;
                parent[g] = Some((f, x));
                queue.push_back(g);
            }
        }
    }
    for &f in order.iter().rev() {
        if need[f] == 1 {
            let (p, x) = parent[f].ok_or(Error::OddBranchSetSize(b.size()))?;
            w[x] ^= 1;
            w[m.alpha[x]] ^= 1;
            need[f] = 0;
            need[p] ^= 1;
        }
    }
    let sides = dart_sides(m);
    let nsides = sides.iter().flatten().max().map_or(0, |&s| 4 * (s / 4 + 1));
    let mut side_weight = vec![0u8; nsides];
    for (x, s) in sides.iter().enumerate() {
        if let Some(s) = *s {
            side_weight[s] = w[x];
        }
    }
    Ok(BranchData { branch: b.clone(), edge_weight: w, side_weight })
}

/// Checks every face and pole equation of a cocycle.
pub fn cocycle_holds(m: &CombinatorialMap, ft: &FaceTable, data: &BranchData) -> bool {
    let w = &data.edge_weight;
    let faces_ok = ft.faces.iter().enumerate().all(|(f, face)| {
        let mut s = 0u8;
        for &x in &face.darts {
            match m.vertex(x) {
                v if v.valence() == 1 => {}
                Vertex::Shared { .. } if m.vertex_darts[m.vertex_of[x]][0] == x => s ^= 1 ^ w[x],
                _ => s ^= w[x],
            }
        }
        s == u8::from(data.branch.faces[f])
    });
    let poles_ok = m.vertices.iter().enumerate().all(|(v, vertex)| match vertex {
        Vertex::HorizontalEnd(_) | Vertex::Anchor(_) => w[m.vertex_darts[v][0]] == u8::from(data.branch.vertices[v]),
        _ => true,
    });
    faces_ok && poles_ok
}
