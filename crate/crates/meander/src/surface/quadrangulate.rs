//! The square tiling of the sphere dual to a meander.
//!
//! Crossing `p` becomes square `p`; its side in direction `d` is the edge leaving the crossing
//! through dart `4p + d`. A crossing at a shared anchor becomes a half square whose east side
//! carries the horizontal edge and whose north side carries the transversal edge. Edges ending
//! at anchors or at strand ends fold the side they leave.

use crate::diagram::MeanderDiagram;
use crate::error::Result;
use crate::map::{CombinatorialMap, Vertex};
use crate::surface::cover::PillowcaseCover;

/// Sphere side carrying each dart, `None` for darts at valence-one vertices.
pub fn dart_sides(m: &CombinatorialMap) -> Vec<Option<usize>> {
    let mut sides = vec![None; m.darts()];
    let mut half = m.n;
    for (v, vertex) in m.vertices.iter().enumerate() {
        match vertex {
            Vertex::Crossing(_) => {
                for &x in &m.vertex_darts[v] {
                    sides[x] = Some(x);
                }
            }
            Vertex::Shared { .. } => {
                let ds = &m.vertex_darts[v];
                sides[ds[0]] = Some(4 * half);
                sides[ds[1]] = Some(4 * half + 1);
                half += 1;
            }
            _ => {}
        }
    }
    sides
}

pub fn quadrangulate_map(m: &CombinatorialMap) -> Result<PillowcaseCover> {
    let sides = dart_sides(m);
    let shared = m.vertices.iter().filter(|v| matches!(v, Vertex::Shared { .. })).count();
    let mut pairs = Vec::new();
    for x in 0..m.darts() {
        let y = m.alpha[x];
        match (sides[x], sides[y]) {
            (Some(a), Some(b)) if x < y => pairs.push((a, b)),
            (Some(a), None) => pairs.push((a, a)),
            _ => {}
        }
    }
    let mut half = vec![false; m.n + shared];
    half[m.n..].iter_mut().for_each(|h| *h = true);
    PillowcaseCover::new(m.n + shared, &pairs, half)
}

/// One square per crossing, glued along the meander's edges.
pub fn quadrangulate(d: &MeanderDiagram) -> Result<PillowcaseCover> {
    quadrangulate_map(&CombinatorialMap::build(d)?)
}
