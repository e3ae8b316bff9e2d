//! Explicit minimal families, one constructor per meander kind.
//!
//! Each constructor fixes a concrete arc schedule. The contract is checked in tests: the output
//! validates, lies in the advertised stratum, uses the advertised number of crossings, and the
//! oracle finds nothing smaller.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{AnchorEnd, HorizontalEnd, Kind, MeanderDiagram, Side};
use crate::error::{Error, Result};
use crate::stratum::StratumSignature;

/// Upper arcs made of consecutive blocks of nested arcs; a block of depth `d` spans `2d` points.
fn nested_blocks(depths: &[usize]) -> (Vec<[usize; 2]>, usize) {
    let mut arcs = Vec::new();
    let mut p = 0;
    for &d in depths {
        for i in 0..d {
            arcs.push([p + i, p + 2 * d - 1 - i]);
        }
        p += 2 * d;
    }
    (arcs, p)
}

/// Nested arcs filling `lo..=hi` from the outside in.
fn rainbow(lo: usize, hi: usize) -> Vec<[usize; 2]> {
    let (mut a, mut b) = (lo, hi);
    let mut out = Vec::new();
    while a < b {
        out.push([a, b]);
        a += 1;
        b -= 1;
    }
    out
}

/// Adjacent pairs `(x, x+1)` scanning `from..n`, stepping over position `skip`.
fn adjacent_pairs(from: usize, n: usize, skip: Option<usize>) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    let mut x = from;
    while x + 1 < n {
        if Some(x) == skip {
            x += 1;
            continue;
        }
        out.push([x, x + 1]);
        x += 2;
    }
    out
}

/// Block depths producing a single zero of order `d` above a rainbow: `d + 2` blocks of depth
/// two, except depth one at the ends of the two bigons that stay empty (the first block and the
/// middle one).
fn single_zero_blocks(d: usize) -> Vec<usize> {
    let m = d + 2;
    (0..m).map(|i| if i == 0 || i == m / 2 { 1 } else { 2 }).collect()
}

fn ordered(k1: i64, k2: i64, min2: i64) -> Result<()> {
    if k1 < k2 || k2 < min2 {
        return Err(Error::InvalidOrder(format!("need k1 >= k2 >= {min2}, got ({k1}, {k2})")));
    }
    Ok(())
}

fn closed(n: usize, upper: Vec<[usize; 2]>, lower: Vec<[usize; 2]>) -> MeanderDiagram {
    MeanderDiagram::new(Kind::Closed, n, upper, lower, vec![], vec![]).expect("closed schedule is valid")
}

/// Closed meander in `Q(k, -1^{k+4})` with `4k + 4` crossings: a bottom rainbow under blocks of
/// nested arcs that leave the first and the central bigon empty.
pub fn closed_single_zero(k: usize) -> MeanderDiagram {
    let (upper, n) = nested_blocks(&single_zero_blocks(k));
    closed(n, upper, rainbow(0, n - 1))
}

/// Closed meander in `Q(k1, k2, -1^{k1+k2+4})` with `4k1 - 2k2 + 4` crossings.
///
/// The bottom is an outer arc enclosing `k2` small arcs and a rainbow; above, `k2` depth-one
/// blocks sit over the small arcs and the single-zero pattern for `k1 - k2` over the rainbow.
/// When `k1 = k2` this is the alternating pattern with `2k + 4` crossings. For `k2 = -1` the
/// diagram is a rainbow under one depth-one block and `k1 + 1` depth-two blocks.
pub fn closed_two_zeros(k1: i64, k2: i64) -> Result<MeanderDiagram> {
    ordered(k1, k2, -1)?;
    if k2 == -1 {
        let mut depths = vec![1];
        depths.extend(std::iter::repeat_n(2, (k1 + 1) as usize));
        let (upper, n) = nested_blocks(&depths);
        return Ok(closed(n, upper, rainbow(0, n - 1)));
    }
    let (k1, k2) = (k1 as usize, k2 as usize);
    let mut depths = vec![1; k2];
    depths.extend(single_zero_blocks(k1 - k2));
    let (upper, n) = nested_blocks(&depths);
    let mut lower = vec![[0, n - 1]];
    lower.extend((0..k2).map(|i| [1 + 2 * i, 2 + 2 * i]));
    lower.extend(rainbow(2 * k2 + 1, n - 2));
    Ok(closed(n, upper, lower))
}

/// Singly-anchored meander in `Q(k1, k2, -1^{k1+k2+4})` with `max(2k1 + 2, 2k2 + 3)` crossings.
///
/// Equal orders use a staircase: upper and lower small arcs offset by one, anchored at both
/// ends. Otherwise `2k1 + 2` crossings carry a top rainbow after `max(k2, 0)` small arcs, and a
/// bottom row of small arcs with one defect, anchored at the first point and at the defect.
pub fn singly_anchored(k1: i64, k2: i64) -> Result<MeanderDiagram> {
    ordered(k1, k2, -1)?;
    let (upper, lower, n, anchors) = if k1 == k2 {
        let k = (k1 + 1) as usize;
        let n = 2 * k + 1;
        let upper = (0..k).map(|i| [2 * i + 1, 2 * i + 2]).collect();
        let lower = (0..k).map(|i| [2 * i, 2 * i + 1]).collect();
        (upper, lower, n, vec![AnchorEnd::new(Side::Upper, 0), AnchorEnd::new(Side::Lower, n - 1)])
    } else {
        let k1 = k1 as usize;
        let kk = k2.max(0) as usize;
        let n = 2 * k1 + 2;
        let mut upper = vec![[0, 1]];
        upper.extend((0..kk).map(|i| [2 + 2 * i, 3 + 2 * i]));
        upper.extend(rainbow(2 + 2 * kk, n - 1));
        let s = (k1 + kk + 1) | 1;
        let lower = adjacent_pairs(1, n, Some(s));
        (upper, lower, n, vec![AnchorEnd::new(Side::Lower, 0), AnchorEnd::new(Side::Lower, s)])
    };
    Ok(MeanderDiagram::new(Kind::SinglyAnchored, n, upper, lower, vec![], anchors).expect("schedule is valid"))
}

/// Doubly-anchored open meander in `Q(k, -1^{k+4})` with `k + 1` crossings: a zigzag.
pub fn doubly_anchored_open(k: usize) -> MeanderDiagram {
    let n = k + 1;
    let upper = (0..n / 2).map(|i| [2 * i, 2 * i + 1]).collect();
    let lower = adjacent_pairs(1, n, None);
    let last = if n % 2 == 1 { Side::Upper } else { Side::Lower };
    let anchors = vec![AnchorEnd::new(Side::Lower, 0), AnchorEnd::new(last, n - 1)];
    MeanderDiagram::new(Kind::DoublyAnchoredOpen, n, upper, lower, vec![], anchors).expect("schedule is valid")
}

/// Collects a semi-meander from `(upper?, pos)` pairs: two upper ends make an upper arc, two
/// lower ends a lower arc, and mixed ends a wrap around the free end of the ray.
fn semi(n: usize, pairs: Vec<((Side, usize), (Side, usize))>, anchors: Vec<AnchorEnd>) -> MeanderDiagram {
    let (mut upper, mut lower, mut wrap) = (Vec::new(), Vec::new(), Vec::new());
    for (a, b) in pairs {
        match (a, b) {
            ((Side::Upper, p), (Side::Upper, q)) => upper.push([p, q]),
            ((Side::Lower, p), (Side::Lower, q)) => lower.push([p, q]),
            ((Side::Upper, p), (Side::Lower, q)) | ((Side::Lower, q), (Side::Upper, p)) => wrap.push([p, q]),
        }
    }
    MeanderDiagram::new(Kind::DoublyAnchoredSemi, n, upper, lower, wrap, anchors).expect("semi schedule is valid")
}

/// Doubly-anchored semi-meander in `Q(k1, k2, -1^{k1+k2+4})` with `k1 + k2 + 2` crossings
/// (`k1 + 1` when `k2 = -1`). One wrap around the free end sets up the two zeros; the remaining
/// crossings are small arcs, each adding a bigon to one of them.
pub fn doubly_anchored_semi(k1: i64, k2: i64) -> Result<MeanderDiagram> {
    ordered(k1, k2, -1)?;
    let up = |i: usize| (Side::Upper, i);
    let lo = |i: usize| (Side::Lower, i);
    let anchor = |(s, p): (Side, usize)| AnchorEnd::new(s, p);
    let mut pairs = Vec::new();
    if k2 == -1 {
        let n = (k1 + 1) as usize;
        pairs.extend((0..n / 2).map(|i| (up(2 * i + 1), up(2 * i))));
        pairs.extend((0..(n - 1) / 2).map(|i| (lo(2 * i + 1), lo(2 * i + 2))));
        let other = if n % 2 == 1 { up(n - 1) } else { lo(n - 1) };
        return Ok(semi(n, pairs, vec![anchor(lo(0)), anchor(other)]));
    }
    let d = (k1 - k2) as usize;
    let (k1, k2) = (k1 as usize, k2 as usize);
    if d == 0 {
        let n = 2 * k1 + 2;
        pairs.extend((1..=k1).map(|i| (up(2 * i), up(2 * i - 1))));
        pairs.push((up(0), lo(n - 1)));
        pairs.extend((0..k1).map(|i| (lo(2 * i), lo(2 * i + 1))));
        return Ok(semi(n, pairs, vec![anchor(up(n - 1)), anchor(lo(n - 2))]));
    }
    if d % 2 == 1 {
        let (a, b) = (k2, (d - 1) / 2);
        let n = 2 * a + 2 * b + 3;
        pairs.extend((0..a).map(|i| (up(2 * i + 1), up(2 * i))));
        pairs.push((up(2 * a + 1), lo(0)));
        pairs.extend((0..b).map(|i| (up(2 * a + 3 + 2 * i), up(2 * a + 2 + 2 * i))));
        pairs.extend((0..(n - 1) / 2).map(|i| (lo(2 * i + 1), lo(2 * i + 2))));
        return Ok(semi(n, pairs, vec![anchor(up(2 * a)), anchor(up(n - 1))]));
    }
    let (a, b) = (k2 + 1, (d - 2) / 2);
    let n = 2 * a + 2 * b + 2;
    pairs.extend((0..a).map(|i| (up(2 * i + 1), up(2 * i))));
    pairs.push((up(2 * a), lo(0)));
    pairs.extend((0..b).map(|i| (up(2 * a + 2 + 2 * i), up(2 * a + 1 + 2 * i))));
    let s = 2 * k2 + 1;
    pairs.extend(adjacent_pairs(1, n, Some(s)).into_iter().map(|[x, y]| (lo(x), lo(y))));
    Ok(semi(n, pairs, vec![anchor(up(n - 1)), anchor(lo(s))]))
}

/// Semi-meander in `Q(0, -1^4)` with two crossings, one of them at the anchor where the
/// transversal arc meets the anchored end of the ray.
pub fn anchor_sharing_semi() -> MeanderDiagram {
    let anchors = vec![
        AnchorEnd::new(Side::Upper, 0),
        AnchorEnd { side: Side::Lower, pos: 0, shared: Some(HorizontalEnd::Right) },
    ];
    MeanderDiagram::new(Kind::DoublyAnchoredSemi, 1, vec![], vec![], vec![], anchors).expect("schedule is valid")
}

/// The constructor families, addressable by name from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    ClosedSingleZero,
    ClosedTwoZeros,
    SinglyAnchored,
    DoublyAnchoredOpen,
    DoublyAnchoredSemi,
    AnchorSharingSemi,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::ClosedSingleZero,
        Family::ClosedTwoZeros,
        Family::SinglyAnchored,
        Family::DoublyAnchoredOpen,
        Family::DoublyAnchoredSemi,
        Family::AnchorSharingSemi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ClosedSingleZero => "closed_single_zero",
            Family::ClosedTwoZeros => "closed_two_zeros",
            Family::SinglyAnchored => "singly_anchored",
            Family::DoublyAnchoredOpen => "doubly_anchored_open",
            Family::DoublyAnchoredSemi => "doubly_anchored_semi",
            Family::AnchorSharingSemi => "anchor_sharing_semi",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::ClosedSingleZero | Family::DoublyAnchoredOpen => 1,
            Family::AnchorSharingSemi => 0,
            _ => 2,
        }
    }

    fn check_arity(self, params: &[i64]) -> Result<()> {
        if params.len() != self.arity() {
            return Err(Error::BadArity(format!("{} takes {} parameters, got {}", self, self.arity(), params.len())));
        }
        Ok(())
    }

    fn nonneg(k: i64) -> Result<usize> {
        usize::try_from(k).map_err(|_| Error::InvalidOrder(format!("order {k} must be nonnegative")))
    }

    pub fn build(self, params: &[i64]) -> Result<MeanderDiagram> {
        self.check_arity(params)?;
        match self {
            Family::ClosedSingleZero => Ok(closed_single_zero(Self::nonneg(params[0])?)),
            Family::ClosedTwoZeros => closed_two_zeros(params[0], params[1]),
            Family::SinglyAnchored => singly_anchored(params[0], params[1]),
            Family::DoublyAnchoredOpen => Ok(doubly_anchored_open(Self::nonneg(params[0])?)),
            Family::DoublyAnchoredSemi => doubly_anchored_semi(params[0], params[1]),
            Family::AnchorSharingSemi => Ok(anchor_sharing_semi()),
        }
    }

    /// The crossing count each family promises, counting crossings at shared anchors.
    pub fn expected_crossings(self, params: &[i64]) -> Result<usize> {
        self.check_arity(params)?;
        let v = match (self, params) {
            (Family::ClosedSingleZero, [k]) => 4 * k + 4,
            (Family::ClosedTwoZeros, [k1, k2]) => 4 * k1 - 2 * k2 + 4,
            (Family::SinglyAnchored, [k1, k2]) => (2 * k1 + 2).max(2 * k2 + 3),
            (Family::DoublyAnchoredOpen, [k]) => k + 1,
            (Family::DoublyAnchoredSemi, [k1, -1]) => k1 + 1,
            (Family::DoublyAnchoredSemi, [k1, k2]) => k1 + k2 + 2,
            (Family::AnchorSharingSemi, []) => 2,
            _ => unreachable!("arity checked"),
        };
        Ok(v as usize)
    }

    /// The stratum each family promises; order-0 zeros are marked.
    pub fn expected_stratum(self, params: &[i64]) -> Result<StratumSignature> {
        self.check_arity(params)?;
        let zeros: Vec<i32> = if self == Family::AnchorSharingSemi { vec![0] } else { params.iter().map(|&k| k as i32).collect() };
        StratumSignature::genus_zero(&zeros)
    }

    /// The kind of diagram each family builds.
    pub fn kind(self) -> Kind {
        match self {
            Family::ClosedSingleZero | Family::ClosedTwoZeros => Kind::Closed,
            Family::SinglyAnchored => Kind::SinglyAnchored,
            Family::DoublyAnchoredOpen => Kind::DoublyAnchoredOpen,
            Family::DoublyAnchoredSemi | Family::AnchorSharingSemi => Kind::DoublyAnchoredSemi,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let key = s.replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::BadArity(format!("unknown family {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stratum::order_profile;

    fn check(f: Family, params: &[i64]) {
        let d = f.build(params).unwrap();
        let p = order_profile(&d).unwrap();
        let want = f.expected_stratum(params).unwrap();
        assert!(want.admits(&p.signature, p.zero_faces), "{f} {params:?}: got {} want {want}", p.signature);
        assert_eq!(d.crossings(), f.expected_crossings(params).unwrap(), "{f} {params:?}");
    }

    #[test]
    fn every_family_meets_its_contract() {
        for k in 0..8 {
            check(Family::ClosedSingleZero, &[k]);
            check(Family::DoublyAnchoredOpen, &[k]);
        }
        for k1 in -1..8 {
            for k2 in -1..=k1 {
                check(Family::ClosedTwoZeros, &[k1, k2]);
                check(Family::SinglyAnchored, &[k1, k2]);
                if k1 >= 0 {
                    check(Family::DoublyAnchoredSemi, &[k1, k2]);
                }
            }
        }
        check(Family::AnchorSharingSemi, &[]);
    }

    #[test]
    fn invalid_orders_are_rejected() {
        assert!(matches!(closed_two_zeros(0, 1), Err(Error::InvalidOrder(_))));
        assert!(matches!(singly_anchored(1, -2), Err(Error::InvalidOrder(_))));
        assert!(matches!(Family::ClosedTwoZeros.build(&[1]), Err(Error::BadArity(_))));
    }
}
