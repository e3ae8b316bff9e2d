//! The branched double cover of a square-tiled sphere.

use crate::diagram::MeanderDiagram;
use crate::error::{Error, Result};
use crate::map::CombinatorialMap;
use crate::surface::branch::{solve_branch_cocycle, BranchData, BranchSet};
use crate::surface::cover::PillowcaseCover;
use crate::surface::quadrangulate::quadrangulate_map;

/// A double cover with its deck involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub cover: PillowcaseCover,
    /// Square permutation of the deck involution.
    pub deck: Vec<usize>,
    /// Squares that the deck involution maps to themselves by a half-turn.
    pub deck_rotates: Vec<bool>,
}

impl Lift {
    /// Image of a square corner under the deck involution.
    pub fn deck_corner(&self, corner: usize) -> usize {
        let s = corner / 4;
        let c = if self.deck_rotates[s] { (corner + 2) % 4 } else { corner % 4 };
        4 * self.deck[s] + c
    }

    /// Image of a side under the deck involution.
    pub fn deck_side(&self, side: usize) -> usize {
        self.deck_corner(side)
    }

    /// Squares fixed by the deck involution (one per crossing at a shared anchor).
    pub fn fixed_squares(&self) -> usize {
        self.deck.iter().enumerate().filter(|&(s, &t)| s == t).count()
    }
}

/// Two sheets over every square, one square over every half square. Sheet `i` of square `a`
/// is square `2a + i`; the half squares follow. Across a side of weight `w`, sheet `i` meets
/// sheet `i ^ w`. A folded side of weight 1 glues the two sheets to each other; of weight 0 it
/// stays folded on each sheet. A side glued to a half square meets its east (north) side on the
/// sheet where `i ^ w = 0` and its west (south) side on the other.
pub fn double_cover(sphere: &PillowcaseCover, b: &BranchData) -> Result<Lift> {
    let n = sphere.squares();
    if b.side_weight.len() != 4 * n {
        return Err(Error::BadArity("cocycle does not match the surface".into()));
    }
    let full: Vec<usize> = (0..n).filter(|&s| !sphere.is_half(s)).collect();
    let mut up = vec![usize::MAX; n];
    for (r, &s) in full.iter().enumerate() {
        up[s] = 2 * r;
    }
    let mut next = 2 * full.len();
    for s in (0..n).filter(|&s| sphere.is_half(s)) {
        up[s] = next;
        next += 1;
    }
    let total = next;
    let mut pairs = Vec::with_capacity(4 * total);
    for (a, b2) in sphere.gluings() {
        let (sa, da) = (a / 4, a % 4);
        let (sb, db) = (b2 / 4, b2 % 4);
        let w = usize::from(b.side_weight[a]);
        match (sphere.is_half(sa), sphere.is_half(sb)) {
            (false, false) if a == b2 => {
                if w == 1 {
                    pairs.push((4 * up[sa] + da, 4 * (up[sa] + 1) + da));
                } else {
                    pairs.push((4 * up[sa] + da, 4 * up[sa] + da));
                    pairs.push((4 * (up[sa] + 1) + da, 4 * (up[sa] + 1) + da));
                }
            }
            (false, false) => {
                for i in 0..2 {
                    pairs.push((4 * (up[sa] + i) + da, 4 * (up[sb] + (i ^ w)) + db));
                }
            }
            (false, true) | (true, false) => {
                let (f, df, h, dh) = if sphere.is_half(sb) { (sa, da, sb, db) } else { (sb, db, sa, da) };
                for i in 0..2 {
                    let target = if i ^ w == 0 { dh } else { dh + 2 };
                    pairs.push((4 * (up[f] + i) + df, 4 * up[h] + target));
                }
            }
            (true, true) => return Err(Error::HalfSquare),
        }
    }
    let cover = PillowcaseCover::new(total, &pairs, vec![false; total])?;
    let mut deck = vec![0; total];
    let mut deck_rotates = vec![false; total];
    for s in 0..n {
        if sphere.is_half(s) {
            deck[up[s]] = up[s];
            deck_rotates[up[s]] = true;
        } else {
            deck[up[s]] = up[s] + 1;
            deck[up[s] + 1] = up[s];
        }
    }
    Ok(Lift { cover, deck, deck_rotates })
}

/// Lifts a diagram through the double cover branched over `b`.
pub fn lift_with(m: &CombinatorialMap, b: &BranchSet) -> Result<(Lift, BranchData)> {
    let ft = m.face_table()?;
    let data = solve_branch_cocycle(m, &ft, b)?;
    let sphere = quadrangulate_map(m)?;
    Ok((double_cover(&sphere, &data)?, data))
}

/// Lifts a diagram with every simple pole branched.
pub fn lift_all_poles(d: &MeanderDiagram) -> Result<Lift> {
    let m = CombinatorialMap::build(d)?;
    let ft = m.face_table()?;
    Ok(lift_with(&m, &BranchSet::all_poles(&m, &ft))?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{anchor_sharing_semi, closed_two_zeros};

    #[test]
    fn eight_square_genus_two_lift() {
        let m = CombinatorialMap::build(&closed_two_zeros(0, 0).unwrap()).unwrap();
        let ft = m.face_table().unwrap();
        let mut b = BranchSet::all_poles(&m, &ft);
        b.faces.iter_mut().for_each(|f| *f = true);
        let (l, _) = lift_with(&m, &b).unwrap();
        assert_eq!(l.cover.squares(), 8);
        assert_eq!(l.cover.genus(), 2);
        assert_eq!(l.cover.stratum().unwrap().to_string(), "Q(2^2)");
    }

    #[test]
    fn shared_anchor_lifts_to_three_squares() {
        // Branch the order-0 face and every pole vertex, leaving the bigon unbranched.
        let m = CombinatorialMap::build(&anchor_sharing_semi()).unwrap();
        let ft = m.face_table().unwrap();
        let mut b = BranchSet::all_poles(&m, &ft);
        for (f, face) in ft.faces.iter().enumerate() {
            b.faces[f] = face.order() == 0;
        }
        let (l, _) = lift_with(&m, &b).unwrap();
        assert_eq!(l.cover.squares(), 3);
        assert_eq!(l.fixed_squares(), 1);
        assert_eq!(l.cover.stratum().unwrap().to_string(), "Q(2,-1^2)");
        assert_eq!(l.cover.genus(), 1);
    }
}
