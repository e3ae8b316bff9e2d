//! Surfaces glued from unit squares.
//!
//! Side `4 * square + dir` runs counterclockwise around its square, with `dir` east, north,
//! west, south. Gluing side `a` to side `b` identifies the start of `a` with the end of `b`, so
//! opposite sides glue by a translation and equal sides by a half-turn. Two extras describe
//! genus-zero surfaces: a side glued to itself is folded in half about its midpoint (a cone
//! point of angle pi), and a half square is a square quotiented by the half-turn about its
//! centre, whose east and north sides are its only independent sides.

use serde::{Deserialize, Serialize};

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::stratum::StratumSignature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    E,
    N,
    W,
    S,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::E, Dir::N, Dir::W, Dir::S];

    pub fn from_index(i: usize) -> Dir {
        Dir::ALL[i % 4]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_vertical_side(self) -> bool {
        matches!(self, Dir::E | Dir::W)
    }
}

/// Corners of a square, numbered counterclockwise from the bottom left.
pub const SW: usize = 0;
pub const SE: usize = 1;
pub const NE: usize = 2;
pub const NW: usize = 3;

/// Start and end corner of each side in counterclockwise order.
pub fn side_corners(dir: usize) -> (usize, usize) {
    match dir {
        0 => (SE, NE),
        1 => (NE, NW),
        2 => (NW, SW),
        _ => (SW, SE),
    }
}

pub const UNGLUED: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PillowcaseCover {
    squares: usize,
    partner: Vec<usize>,
    half: Vec<bool>,
}

/// Where a cone point sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeSite {
    /// A class of identified square corners.
    Corner(usize),
    /// The midpoint of a folded side.
    Fold(usize),
    /// The centre of a half square.
    HalfCentre(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConePoint {
    pub site: ConeSite,
    /// Order `k` of a cone angle `(k + 2) pi`.
    pub order: i32,
}

/// Identification classes of square corners with their cone angles in quarter turns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClasses {
    pub class_of: Vec<usize>,
    pub quarter_turns: Vec<usize>,
}

impl PillowcaseCover {
    /// Builds a cover from side pairs. A pair `(a, a)` folds side `a`.
    pub fn new(squares: usize, gluings: &[(usize, usize)], half: Vec<bool>) -> Result<Self> {
        if half.len() != squares {
            return Err(Error::BadArity(format!("{} half-square flags for {squares} squares", half.len())));
        }
        let mut partner = vec![UNGLUED; 4 * squares];
        for &(a, b) in gluings {
            if a >= 4 * squares || b >= 4 * squares {
                return Err(Error::BadArity(format!("side {a} or {b} out of range")));
            }
            if partner[a] != UNGLUED || partner[b] != UNGLUED {
                return Err(Error::BadArity(format!("side {a} or {b} glued twice")));
            }
            if Dir::from_index(a).is_vertical_side() != Dir::from_index(b).is_vertical_side() {
                return Err(Error::BadArity(format!("sides {a} and {b} have different directions")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        for (side, &p) in partner.iter().enumerate() {
            let sq = side / 4;
            let unused = half[sq] && side % 4 >= 2;
            if unused != (p == UNGLUED) {
                return Err(Error::BadArity(format!("side {side} of square {sq} is unglued")));
            }
        }
        Ok(PillowcaseCover { squares, partner, half })
    }

    pub fn squares(&self) -> usize {
        self.squares
    }

    pub fn partner(&self, side: usize) -> usize {
        self.partner[side]
    }

    pub fn is_half(&self, square: usize) -> bool {
        self.half[square]
    }

    pub fn has_half_squares(&self) -> bool {
        self.half.iter().any(|&h| h)
    }

    pub fn half_squares(&self) -> usize {
        self.half.iter().filter(|&&h| h).count()
    }

    /// Each glued pair once, `a <= b`, with folds as `(a, a)`.
    pub fn gluings(&self) -> Vec<(usize, usize)> {
        (0..4 * self.squares)
            .filter(|&a| self.partner[a] != UNGLUED && a <= self.partner[a])
            .map(|a| (a, self.partner[a]))
            .collect()
    }

    pub fn folds(&self) -> Vec<usize> {
        (0..4 * self.squares).filter(|&a| self.partner[a] == a).collect()
    }

    /// 1 for a half-turn gluing (equal directions), 0 for a translation.
    pub fn flip(&self, side: usize) -> u8 {
        u8::from(side % 4 == self.partner[side] % 4)
    }

    pub fn vertex_classes(&self) -> VertexClasses {
        let mut dsu = Dsu::new(4 * self.squares);
        for (a, b) in self.gluings() {
            let (sa, ea) = side_corners(a % 4);
            let (sb, eb) = side_corners(b % 4);
            let (qa, qb) = (4 * (a / 4), 4 * (b / 4));
            dsu.union(qa + sa, qb + eb);
            dsu.union(qa + ea, qb + sb);
        }
        for s in (0..self.squares).filter(|&s| self.half[s]) {
            dsu.union(4 * s + NE, 4 * s + SW);
            dsu.union(4 * s + NW, 4 * s + SE);
        }
        let class_of = dsu.labels();
        let mut quarter_turns = vec![0; dsu.components()];
        for (c, &cls) in class_of.iter().enumerate() {
            let counted = !self.half[c / 4] || matches!(c % 4, NE | NW);
            quarter_turns[cls] += usize::from(counted);
        }
        VertexClasses { class_of, quarter_turns }
    }

    /// Every cone point, including regular ones (order 0).
    pub fn cone_points(&self) -> Result<Vec<ConePoint>> {
        let v = self.vertex_classes();
        let mut out = Vec::new();
        for (c, &q) in v.quarter_turns.iter().enumerate() {
            if q % 2 == 1 {
                return Err(Error::BadArity(format!("corner class {c} has an odd angle of {q} quarter turns")));
            }
            out.push(ConePoint { site: ConeSite::Corner(c), order: q as i32 / 2 - 2 });
        }
        out.extend(self.folds().into_iter().map(|s| ConePoint { site: ConeSite::Fold(s), order: -1 }));
        out.extend(
            (0..self.squares).filter(|&s| self.half[s]).map(|s| ConePoint { site: ConeSite::HalfCentre(s), order: -1 }),
        );
        Ok(out)
    }

    pub fn stratum(&self) -> Result<StratumSignature> {
        Ok(StratumSignature::new(self.cone_points()?.into_iter().map(|p| p.order))?.unmarked())
    }

    /// `V - E + F` for the cell structure: corner classes and fold midpoints are vertices,
    /// glued pairs and folds are edges, squares and half squares are faces.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertex_classes().quarter_turns.len() + self.folds().len();
        let e = self.gluings().len();
        v as i64 - e as i64 + self.squares as i64
    }

    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    /// Whether the squares can be rotated so that every gluing is a translation, which makes
    /// the surface a translation surface (the quadratic differential is a square).
    pub fn is_translation_surface(&self) -> bool {
        if self.has_half_squares() || !self.folds().is_empty() {
            return false;
        }
        let mut colour = vec![u8::MAX; self.squares];
        for start in 0..self.squares {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            let mut stack = vec![start];
            while let Some(s) = stack.pop() {
                for d in 0..4 {
                    let side = 4 * s + d;
                    let t = self.partner[side] / 4;
                    let want = colour[s] ^ self.flip(side);
                    if colour[t] == u8::MAX {
                        colour[t] = want;
                        stack.push(t);
                    } else if colour[t] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the squares form one connected surface.
    pub fn is_connected(&self) -> bool {
        let mut dsu = Dsu::new(self.squares.max(1));
        for (a, b) in self.gluings() {
            dsu.union(a / 4, b / 4);
        }
        dsu.components() == 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CoverJson::from(self)).expect("cover serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: CoverJson = serde_json::from_str(s).map_err(|e| Error::BadArity(format!("cover JSON: {e}")))?;
        j.try_into()
    }
}

/// One glued pair of sides and its flip bit, as written on the wire.
pub type GluingJson = ((usize, Dir), (usize, Dir), u8);

/// Wire format: `{"squares": N, "gluing": [[[sq, "E"], [sq, "W"], flip], ...], "half_squares": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub squares: usize,
    pub gluing: Vec<GluingJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub half_squares: Vec<usize>,
}

impl From<&PillowcaseCover> for CoverJson {
    fn from(c: &PillowcaseCover) -> Self {
        let side = |s: usize| (s / 4, Dir::from_index(s));
        CoverJson {
            squares: c.squares,
            gluing: c.gluings().into_iter().map(|(a, b)| (side(a), side(b), c.flip(a))).collect(),
            half_squares: (0..c.squares).filter(|&s| c.half[s]).collect(),
        }
    }
}

impl TryFrom<CoverJson> for PillowcaseCover {
    type Error = Error;

    fn try_from(j: CoverJson) -> Result<Self> {
        let mut half = vec![false; j.squares];
        for &s in &j.half_squares {
            *half.get_mut(s).ok_or_else(|| Error::BadArity(format!("half square {s} out of range")))? = true;
        }
        let mut pairs = Vec::with_capacity(j.gluing.len());
        for ((sa, da), (sb, db), flip) in j.gluing {
            let (a, b) = (4 * sa + da.index(), 4 * sb + db.index());
            if flip != u8::from(da == db) {
                return Err(Error::BadArity(format!("flip bit {flip} disagrees with sides {a} and {b}")));
            }
            pairs.push((a, b));
        }
        PillowcaseCover::new(j.squares, &pairs, half)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> PillowcaseCover {
        PillowcaseCover::new(1, &[(0, 2), (1, 3)], vec![false]).unwrap()
    }

    #[test]
    fn one_square_torus() {
        let t = torus();
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(t.genus(), 1);
        assert!(t.is_translation_surface());
        assert!(t.stratum().unwrap().orders.is_empty());
    }

    #[test]
    fn pillowcase_from_two_squares() {
        // A row of two squares whose tops and bottoms are folded over by half-turns: the
        // sphere with four corners of angle pi.
        let p = PillowcaseCover::new(2, &[(0, 6), (2, 4), (1, 5), (3, 7)], vec![false; 2]).unwrap();
        assert_eq!(p.euler_characteristic(), 2);
        assert_eq!(p.stratum().unwrap().to_string(), "Q(-1^4)");
        assert!(!p.is_translation_surface());
    }

    #[test]
    fn rejects_bad_gluings() {
        assert!(PillowcaseCover::new(1, &[(0, 1)], vec![false]).is_err());
        assert!(PillowcaseCover::new(1, &[(0, 2)], vec![false]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = torus();
        let s = t.to_json();
        assert_eq!(s, r#"{"squares":1,"gluing":[[[0,"E"],[0,"W"],0],[[0,"N"],[0,"S"],0]]}"#);
        assert_eq!(PillowcaseCover::from_json(&s).unwrap(), t);
    }
}
