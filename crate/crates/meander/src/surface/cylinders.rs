//! Cylinder decompositions of square-tiled surfaces and the cut-and-count separating test.
//!
//! A horizontal row is an orbit of "walk east through a square": from square `s` travelling
//! east we leave through side E, travelling west through side W, and the side we arrive on
//! fixes the new direction. Rows bounded by a leaf of regular corners continue into the row on
//! the other side of that leaf; maximal unions of rows are the cylinders. Vertical rows work
//! the same way with N and S.

use serde::{Deserialize, Serialize};

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::surface::cover::{side_corners, PillowcaseCover, NE, NW, SE, SW};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Horizontal,
    Vertical,
}

impl Direction {
    /// Exit side when moving forward (`o = 0`) or backward (`o = 1`).
    fn exit(self, o: usize) -> usize {
        match self {
            Direction::Horizontal => 2 * o,
            Direction::Vertical => 1 + 2 * o,
        }
    }

    /// Side on the left of the direction of travel.
    fn top(self, o: usize) -> usize {
        match self {
            Direction::Horizontal => 1 + 2 * o,
            Direction::Vertical => (2 + 2 * o) % 4,
        }
    }
}

/// The midline of one row, listed as the squares it passes and the sides it leaves through.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreCurve {
    pub direction: Direction,
    pub squares: Vec<usize>,
    pub exits: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cylinder {
    /// Squares of the cylinder in ascending order.
    pub squares: Vec<usize>,
    /// Length of the core curve in squares.
    pub circumference: usize,
    /// Number of rows stacked across the cylinder.
    pub height: usize,
    pub core: CoreCurve,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderDecomposition {
    pub direction: Direction,
    pub cylinders: Vec<Cylinder>,
}

impl CylinderDecomposition {
    pub fn count(&self) -> usize {
        self.cylinders.len()
    }
}

/// Successor of state `(square, o)` in a row.
fn step(c: &PillowcaseCover, dir: Direction, s: usize, o: usize) -> (usize, usize) {
    let p = c.partner(4 * s + dir.exit(o));
    let o2 = usize::from(p % 4 == dir.exit(0));
    (p / 4, o2)
}

pub fn cylinders(c: &PillowcaseCover, dir: Direction) -> Result<CylinderDecomposition> {
    if c.has_half_squares() {
        return Err(Error::HalfSquare);
    }
    let n = c.squares();
    // Orbits of the row map on states 2s + o.
    let mut orbit = vec![usize::MAX; 2 * n];
    let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
    for start in 0..2 * n {
        if orbit[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut states = Vec::new();
        let (mut s, mut o) = (start / 2, start % 2);
        while orbit[2 * s + o] == usize::MAX {
            orbit[2 * s + o] = id;
            states.push((s, o));
            (s, o) = step(c, dir, s, o);
        }
        orbits.push(states);
    }
    let classes = c.vertex_classes();
    let regular = |corner: usize| classes.quarter_turns[classes.class_of[corner]] == 4;
    let mut dsu = Dsu::new(orbits.len());
    for s in 0..n {
        dsu.union(orbit[2 * s], orbit[2 * s + 1]);
    }
    for (id, states) in orbits.iter().enumerate() {
        let tops: Vec<usize> = states.iter().map(|&(s, o)| 4 * s + dir.top(o)).collect();
        let leaf_regular = tops.iter().all(|&t| {
            let (a, b) = side_corners(t % 4);
            c.partner(t) != t && regular(4 * (t / 4) + a) && regular(4 * (t / 4) + b)
        });
        if leaf_regular {
            for &t in &tops {
                dsu.union(id, orbit[2 * (c.partner(t) / 4)]);
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for id in 0..orbits.len() {
        let root = dsu.find(id);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.push(id),
            None => groups.push((root, vec![id])),
        }
    }
    let mut out = Vec::new();
    for (_, ids) in groups {
        let mut squares: Vec<usize> = ids.iter().flat_map(|&i| orbits[i].iter().map(|&(s, _)| s)).collect();
        squares.sort_unstable();
        squares.dedup();
        // Rows come in reversed pairs; the representative row starts forward at the smallest square.
        let rep = orbit[2 * squares[0]];
        let states = &orbits[rep];
        let core = CoreCurve {
            direction: dir,
            squares: states.iter().map(|&(s, _)| s).collect(),
            exits: states.iter().map(|&(s, o)| 4 * s + dir.exit(o)).collect(),
        };
        let circumference = states.len();
        out.push(Cylinder { height: squares.len() / circumference.max(1), squares, circumference, core });
    }
    out.sort_by_key(|cyl| cyl.squares[0]);
    Ok(CylinderDecomposition { direction: dir, cylinders: out })
}

/// Horizontal and vertical cylinder counts.
pub fn cylinder_counts(c: &PillowcaseCover) -> Result<(usize, usize)> {
    Ok((cylinders(c, Direction::Horizontal)?.count(), cylinders(c, Direction::Vertical)?.count()))
}

/// First and second half of each side, as quadrants, in counterclockwise order.
fn side_quadrants(dir: usize) -> (usize, usize) {
    side_corners(dir)
}

/// Cuts the surface along `core` and counts the pieces: two pieces means the curve separates.
pub fn is_separating(c: &PillowcaseCover, core: &CoreCurve) -> Result<bool> {
    if c.has_half_squares() {
        return Err(Error::HalfSquare);
    }
    let n = c.squares();
    let mut on_core = vec![false; n];
    for &s in &core.squares {
        if std::mem::replace(&mut on_core[s], true) {
            return Err(Error::CurveNotEmbedded(format!("core passes square {s} twice")));
        }
    }
    let mut dsu = Dsu::new(4 * n);
    for (s, &cut) in on_core.iter().enumerate() {
        let q = 4 * s;
        let horizontal_cut = cut && core.direction == Direction::Horizontal;
        let vertical_cut = cut && core.direction == Direction::Vertical;
        if !vertical_cut {
            dsu.union(q + SW, q + SE);
            dsu.union(q + NE, q + NW);
        }
        if !horizontal_cut {
            dsu.union(q + SE, q + NE);
            dsu.union(q + NW, q + SW);
        }
    }
    for (a, b) in c.gluings() {
        let (fa, sa) = side_quadrants(a % 4);
        let (fb, sb) = side_quadrants(b % 4);
        let (qa, qb) = (4 * (a / 4), 4 * (b / 4));
        dsu.union(qa + fa, qb + sb);
        dsu.union(qa + sa, qb + fb);
    }
    Ok(dsu.components() == 2)
}
