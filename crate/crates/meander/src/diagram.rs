//! Meander diagrams: a horizontal strand crossed by a transversal strand at `n` ordered positions.
//!
//! Positions run `0..n` from left to right. For a ray the free end is on the left, next to
//! position 0, and the anchored end is on the right. Each position has one upper and one lower
//! incidence, each either an arc end, a wrap end (semi-meanders only) or a transversal anchor.

use serde::{Deserialize, Serialize};

use crate::dsu::Dsu;
use crate::error::{Error, Result};

/// The four meander variants, named by how their two strands end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// Closed horizontal curve, closed transversal curve.
    Closed,
    /// Closed horizontal curve, transversal arc between two anchors.
    SinglyAnchored,
    /// Horizontal arc and transversal arc, each between two anchors.
    DoublyAnchoredOpen,
    /// Horizontal ray from a free end to an anchor, transversal arc between two anchors.
    DoublyAnchoredSemi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HorizontalStrand {
    Closed,
    AnchoredArc,
    Ray,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransversalStrand {
    Closed,
    AnchoredArc,
}

impl Kind {
    pub const ALL: [Kind; 4] =
        [Kind::Closed, Kind::SinglyAnchored, Kind::DoublyAnchoredOpen, Kind::DoublyAnchoredSemi];

    pub fn strands(self) -> (HorizontalStrand, TransversalStrand) {
        match self {
            Kind::Closed => (HorizontalStrand::Closed, TransversalStrand::Closed),
            Kind::SinglyAnchored => (HorizontalStrand::Closed, TransversalStrand::AnchoredArc),
            Kind::DoublyAnchoredOpen => (HorizontalStrand::AnchoredArc, TransversalStrand::AnchoredArc),
            Kind::DoublyAnchoredSemi => (HorizontalStrand::Ray, TransversalStrand::AnchoredArc),
        }
    }

    /// Only four of the six strand combinations are meanders.
    pub fn from_strands(h: HorizontalStrand, t: TransversalStrand) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.strands() == (h, t))
            .ok_or_else(|| Error::BadArity(format!("no meander kind with strands {h:?}/{t:?}")))
    }

    pub fn horizontal_closed(self) -> bool {
        self.strands().0 == HorizontalStrand::Closed
    }

    pub fn transversal_closed(self) -> bool {
        self.strands().1 == TransversalStrand::Closed
    }

    /// Number of transversal ends that must be anchored.
    pub fn transversal_anchors(self) -> usize {
        if self.transversal_closed() {
            0
        } else {
            2
        }
    }

    /// Number of closed strands, which is also the number of separating core curves in a lift.
    pub fn closed_strands(self) -> usize {
        self.horizontal_closed() as usize + self.transversal_closed() as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Closed => "closed",
            Kind::SinglyAnchored => "singly_anchored",
            Kind::DoublyAnchoredOpen => "doubly_anchored_open",
            Kind::DoublyAnchoredSemi => "doubly_anchored_semi",
        }
    }

    pub fn parse(s: &str) -> Result<Kind> {
        match s {
            "closed" => Ok(Kind::Closed),
            "singly_anchored" | "singly-anchored" | "single" => Ok(Kind::SinglyAnchored),
            "doubly_anchored_open" | "doubly-anchored-open" | "open" => Ok(Kind::DoublyAnchoredOpen),
            "doubly_anchored_semi" | "doubly-anchored-semi" | "semi" => Ok(Kind::DoublyAnchoredSemi),
            _ => Err(Error::BadArity(format!("unknown meander kind {s:?}"))),
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }
}

/// An end of the horizontal strand. For a ray, `Left` is the free end and cannot be shared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HorizontalEnd {
    Left,
    Right,
}

impl HorizontalEnd {
    pub fn flip(self) -> HorizontalEnd {
        match self {
            HorizontalEnd::Left => HorizontalEnd::Right,
            HorizontalEnd::Right => HorizontalEnd::Left,
        }
    }
}

/// A transversal end anchored at a puncture. `shared` names the horizontal end anchor it
/// coincides with, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AnchorEnd {
    pub side: Side,
    pub pos: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shared: Option<HorizontalEnd>,
}

impl AnchorEnd {
    pub fn new(side: Side, pos: usize) -> Self {
        AnchorEnd { side, pos, shared: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Anchors {
    pub transversal: Vec<AnchorEnd>,
}

/// What a port (one side of one position) is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Link {
    /// The other end of an arc or wrap, as a port index.
    Port(usize),
    /// A transversal anchor, by index into `anchors.transversal`.
    Anchor(usize),
}

/// Port index of a side of a position: `2 * pos` for upper, `2 * pos + 1` for lower.
pub fn port(side: Side, pos: usize) -> usize {
    2 * pos + (side == Side::Lower) as usize
}

pub fn port_side(p: usize) -> Side {
    if p.is_multiple_of(2) {
        Side::Upper
    } else {
        Side::Lower
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MeanderDiagram {
    pub kind: Kind,
    pub n: usize,
    pub upper: Vec<[usize; 2]>,
    pub lower: Vec<[usize; 2]>,
    /// Semi-meanders only: `[upper position, lower position]`, outermost first.
    #[serde(default)]
    pub wrap: Vec<[usize; 2]>,
    #[serde(default)]
    pub anchors: Anchors,
}

fn crosses(a: [usize; 2], b: [usize; 2]) -> bool {
    let (a0, a1) = (a[0].min(a[1]), a[0].max(a[1]));
    let (b0, b1) = (b[0].min(b[1]), b[0].max(b[1]));
    (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
}

impl MeanderDiagram {
    /// Normalizes arc order and validates every structural invariant.
    pub fn new(
        kind: Kind,
        n: usize,
        upper: Vec<[usize; 2]>,
        lower: Vec<[usize; 2]>,
        wrap: Vec<[usize; 2]>,
        anchors: Vec<AnchorEnd>,
    ) -> Result<Self> {
        let d = Self::from_parts(kind, n, upper, lower, wrap, anchors);
        d.validate()?;
        Ok(d)
    }

    /// Normalizes without validating. Used by searches that produce valid parts by construction.
    pub(crate) fn from_parts(
        kind: Kind,
        n: usize,
        upper: Vec<[usize; 2]>,
        lower: Vec<[usize; 2]>,
        wrap: Vec<[usize; 2]>,
        anchors: Vec<AnchorEnd>,
    ) -> Self {
        let mut d = MeanderDiagram { kind, n, upper, lower, wrap, anchors: Anchors { transversal: anchors } };
        d.normalize();
        d
    }

    pub fn normalize(&mut self) {
        for a in self.upper.iter_mut().chain(self.lower.iter_mut()) {
            if a[0] > a[1] {
                a.swap(0, 1);
            }
        }
        self.upper.sort_unstable();
        self.lower.sort_unstable();
        self.wrap.sort_unstable_by(|a, b| b.cmp(a));
        self.anchors.transversal.sort_unstable_by_key(|a| (port(a.side, a.pos), a.shared));
    }

    /// Ordinary crossings plus crossings located at shared anchors.
    pub fn crossings(&self) -> usize {
        self.n + self.shared_anchors()
    }

    pub fn shared_anchors(&self) -> usize {
        self.anchors.transversal.iter().filter(|a| a.shared.is_some()).count()
    }

    /// Partner of each port.
    pub fn links(&self) -> Result<Vec<Link>> {
        let n = self.n;
        let mut link: Vec<Option<Link>> = vec![None; 2 * n];
        let mut set = |p: usize, l: Link| -> Result<()> {
            if p >= 2 * n {
                return Err(Error::BadArity(format!("position {} out of range 0..{n}", p / 2)));
            }
            if link[p].is_some() {
                return Err(Error::BadArity(format!(
                    "{:?} side of position {} has two incidences",
                    port_side(p),
                    p / 2
                )));
            }
            link[p] = Some(l);
            Ok(())
        };
        let mut pairs = Vec::new();
        for a in &self.upper {
            pairs.push((port(Side::Upper, a[0]), port(Side::Upper, a[1])));
        }
        for a in &self.lower {
            pairs.push((port(Side::Lower, a[0]), port(Side::Lower, a[1])));
        }
        for w in &self.wrap {
            pairs.push((port(Side::Upper, w[0]), port(Side::Lower, w[1])));
        }
        for (p, q) in pairs {
            if p == q {
                return Err(Error::BadArity(format!("arc from position {} to itself", p / 2)));
            }
            set(p, Link::Port(q))?;
            set(q, Link::Port(p))?;
        }
        for (i, a) in self.anchors.transversal.iter().enumerate() {
            set(port(a.side, a.pos), Link::Anchor(i))?;
        }
        link.into_iter()
            .enumerate()
            .map(|(p, l)| {
                l.ok_or_else(|| {
                    Error::BadArity(format!("{:?} side of position {} is unattached", port_side(p), p / 2))
                })
            })
            .collect()
    }

    /// Checks arity, planarity of the arc system and connectivity of the transversal strand.
    pub fn validate(&self) -> Result<()> {
        let links = self.links()?;
        self.check_anchors()?;
        self.check_noncrossing()?;
        self.check_connected(&links)
    }

    fn check_anchors(&self) -> Result<()> {
        let kind = self.kind;
        let want = kind.transversal_anchors();
        let got = self.anchors.transversal.len();
        if got != want {
            return Err(Error::BadArity(format!("{kind} needs {want} transversal anchors, found {got}")));
        }
        if kind == Kind::Closed && self.n == 0 {
            return Err(Error::BadArity("closed meanders need at least two crossings".into()));
        }
        if self.n == 0 {
            return Err(Error::BadArity("a meander needs at least one crossing".into()));
        }
        if kind != Kind::DoublyAnchoredSemi && !self.wrap.is_empty() {
            return Err(Error::BadArity("wrap arcs only exist in semi-meanders".into()));
        }
        let mut used = Vec::new();
        for a in &self.anchors.transversal {
            if let Some(end) = a.shared {
                let ok = match kind {
                    Kind::DoublyAnchoredOpen => true,
                    Kind::DoublyAnchoredSemi => end == HorizontalEnd::Right,
                    _ => false,
                };
                if !ok {
                    return Err(Error::BadArity(format!("{kind} cannot share the {end:?} horizontal end")));
                }
                if used.contains(&end) {
                    return Err(Error::BadArity(format!("{end:?} horizontal end shared twice")));
                }
                used.push(end);
            }
        }
        Ok(())
    }

    /// Chords in the slot order used for planarity: for semi-meanders upper ports read right to
    /// left followed by lower ports left to right; otherwise each half-plane separately.
    pub(crate) fn check_noncrossing(&self) -> Result<()> {
        let check = |chords: &[[usize; 2]], what: &str| -> Result<()> {
            for (i, a) in chords.iter().enumerate() {
                for b in &chords[i + 1..] {
                    if crosses(*a, *b) {
                        return Err(Error::NonPlanar(format!("{what} arcs {a:?} and {b:?} cross")));
                    }
                }
            }
            Ok(())
        };
        if self.kind == Kind::DoublyAnchoredSemi {
            let n = self.n;
            let up = |p: usize| n - 1 - p;
            let lo = |p: usize| n + p;
            let mut chords: Vec<[usize; 2]> = Vec::new();
            chords.extend(self.upper.iter().map(|a| [up(a[0]), up(a[1])]));
            chords.extend(self.lower.iter().map(|a| [lo(a[0]), lo(a[1])]));
            chords.extend(self.wrap.iter().map(|w| [up(w[0]), lo(w[1])]));
            check(&chords, "semi-meander")
        } else {
            check(&self.upper, "upper")?;
            check(&self.lower, "lower")
        }
    }

    fn check_connected(&self, links: &[Link]) -> Result<()> {
        let n = self.n;
        let mut dsu = Dsu::new(n);
        let mut cycles = 0;
        for (p, l) in links.iter().enumerate() {
            if let Link::Port(q) = *l {
                if p < q && !dsu.union(p / 2, q / 2) {
                    cycles += 1;
                }
            }
        }
        let ok = if self.kind.transversal_closed() {
            cycles == 1 && dsu.components() == 1
        } else {
            cycles == 0 && dsu.components() == 1
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Disconnected(format!(
                "transversal strand has {} components and {cycles} cycles",
                dsu.components()
            )))
        }
    }

    /// Mirror image under `pos -> n - 1 - pos`. Not meaningful for semi-meanders.
    pub fn reflect_left_right(&self) -> MeanderDiagram {
        let n = self.n;
        let r = |p: usize| n - 1 - p;
        let arcs = |v: &[[usize; 2]]| v.iter().map(|a| [r(a[0]), r(a[1])]).collect();
        let anchors = self
            .anchors
            .transversal
            .iter()
            .map(|a| AnchorEnd { side: a.side, pos: r(a.pos), shared: a.shared.map(HorizontalEnd::flip) })
            .collect();
        Self::from_parts(self.kind, n, arcs(&self.upper), arcs(&self.lower), Vec::new(), anchors)
    }

    /// Reflection across the horizontal strand.
    pub fn reflect_up_down(&self) -> MeanderDiagram {
        let wrap = self.wrap.iter().map(|w| [w[1], w[0]]).collect();
        let anchors = self
            .anchors
            .transversal
            .iter()
            .map(|a| AnchorEnd { side: a.side.flip(), pos: a.pos, shared: a.shared })
            .collect();
        Self::from_parts(self.kind, self.n, self.lower.clone(), self.upper.clone(), wrap, anchors)
    }

    /// Cyclic shift of positions along a closed horizontal strand.
    pub fn rotate(&self, by: usize) -> MeanderDiagram {
        let n = self.n;
        let r = |p: usize| (p + by) % n;
        let arcs = |v: &[[usize; 2]]| v.iter().map(|a| [r(a[0]), r(a[1])]).collect();
        let anchors =
            self.anchors.transversal.iter().map(|a| AnchorEnd { side: a.side, pos: r(a.pos), shared: a.shared }).collect();
        Self::from_parts(self.kind, n, arcs(&self.upper), arcs(&self.lower), Vec::new(), anchors)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed2() -> MeanderDiagram {
        MeanderDiagram::new(Kind::Closed, 2, vec![[0, 1]], vec![[0, 1]], vec![], vec![]).unwrap()
    }

    #[test]
    fn kinds_round_trip_through_strands() {
        for k in Kind::ALL {
            let (h, t) = k.strands();
            assert_eq!(Kind::from_strands(h, t).unwrap(), k);
        }
        assert!(Kind::from_strands(HorizontalStrand::Ray, TransversalStrand::Closed).is_err());
    }

    #[test]
    fn smallest_closed_meander_is_valid() {
        assert_eq!(closed2().crossings(), 2);
    }

    #[test]
    fn crossing_arcs_are_rejected() {
        let e = MeanderDiagram::new(Kind::Closed, 4, vec![[0, 2], [1, 3]], vec![[0, 1], [2, 3]], vec![], vec![]);
        assert!(matches!(e, Err(Error::NonPlanar(_))));
    }

    #[test]
    fn two_circles_are_disconnected() {
        let e = MeanderDiagram::new(Kind::Closed, 4, vec![[0, 1], [2, 3]], vec![[0, 1], [2, 3]], vec![], vec![]);
        assert!(matches!(e, Err(Error::Disconnected(_))));
    }

    #[test]
    fn missing_incidence_is_bad_arity() {
        let e = MeanderDiagram::new(Kind::Closed, 2, vec![[0, 1]], vec![], vec![], vec![]);
        assert!(matches!(e, Err(Error::BadArity(_))));
        let anchors = vec![AnchorEnd::new(Side::Upper, 0)];
        let e = MeanderDiagram::new(Kind::DoublyAnchoredOpen, 1, vec![], vec![], vec![], anchors);
        assert!(matches!(e, Err(Error::BadArity(_))));
    }

    #[test]
    fn plus_sign_is_a_doubly_anchored_open_meander() {
        let anchors = vec![AnchorEnd::new(Side::Upper, 0), AnchorEnd::new(Side::Lower, 0)];
        assert!(MeanderDiagram::new(Kind::DoublyAnchoredOpen, 1, vec![], vec![], vec![], anchors).is_ok());
    }

    #[test]
    fn semi_wraps_must_nest() {
        let anchors = vec![AnchorEnd::new(Side::Upper, 1), AnchorEnd::new(Side::Lower, 0)];
        let d = MeanderDiagram::new(Kind::DoublyAnchoredSemi, 2, vec![], vec![], vec![[0, 1]], anchors);
        assert!(d.is_ok());
        // Upper 0 wraps to lower 0 while the arc (u1, l1) would have to cross it.
        let e = MeanderDiagram::new(Kind::DoublyAnchoredSemi, 3, vec![], vec![], vec![[0, 1], [1, 0]], vec![
            AnchorEnd::new(Side::Upper, 2),
            AnchorEnd::new(Side::Lower, 2),
        ]);
        assert!(matches!(e, Err(Error::NonPlanar(_))));
    }

    #[test]
    fn json_round_trip() {
        let d = closed2();
        let back = MeanderDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn symmetries_preserve_validity() {
        let d = MeanderDiagram::new(
            Kind::Closed,
            6,
            vec![[0, 5], [1, 2], [3, 4]],
            vec![[0, 1], [2, 3], [4, 5]],
            vec![],
            vec![],
        )
        .unwrap();
        for e in [d.reflect_left_right(), d.reflect_up_down(), d.rotate(1), d.rotate(5)] {
            e.validate().unwrap();
        }
        assert_eq!(d.rotate(6), d);
    }
}
