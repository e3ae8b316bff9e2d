//! Canonical byte encodings of diagrams up to their symmetry group.
//!
//! The group is generated by the left-right and up-down reflections, plus cyclic rotation for
//! closed meanders. Anchored diagrams are not rotated, and semi-meanders only admit the up-down
//! reflection because a left-right mirror would move the free end of the ray.

use crate::diagram::{HorizontalEnd, Kind, Link, MeanderDiagram};

/// Every image of `d` under its symmetry group, with repetitions.
pub fn symmetry_images(d: &MeanderDiagram) -> Vec<MeanderDiagram> {
    let base: Vec<MeanderDiagram> = match d.kind {
        Kind::Closed => (0..d.n).map(|r| d.rotate(r)).collect(),
        _ => vec![d.clone()],
    };
    let mut out = Vec::with_capacity(base.len() * 4);
    for b in base {
        let ud = b.reflect_up_down();
        if d.kind != Kind::DoublyAnchoredSemi {
            out.push(b.reflect_left_right());
            out.push(ud.reflect_left_right());
        }
        out.push(b);
        out.push(ud);
    }
    out
}

/// Encoding of one diagram: kind, `n`, then a tag byte and a 16-bit partner per port.
pub fn encode(d: &MeanderDiagram) -> Vec<u8> {
    let links = d.links().expect("encode needs a diagram with valid arity");
    let mut out = Vec::with_capacity(3 + 6 * d.n);
    out.push(d.kind as u8);
    out.extend_from_slice(&(d.n as u16).to_be_bytes());
    for (p, l) in links.iter().enumerate() {
        let (tag, val) = match *l {
            Link::Port(q) if q % 2 == p % 2 => (0u8, q / 2),
            Link::Port(q) => (1, q / 2),
            Link::Anchor(i) => match d.anchors.transversal[i].shared {
                None => (2, 0),
                Some(HorizontalEnd::Left) => (3, 0),
                Some(HorizontalEnd::Right) => (4, 0),
            },
        };
        out.push(tag);
        out.extend_from_slice(&(val as u16).to_be_bytes());
    }
    out
}

/// Smallest encoding over the symmetry orbit of `d`.
pub fn canonical_form(d: &MeanderDiagram) -> Vec<u8> {
    symmetry_images(d).iter().map(encode).min().expect("orbit is nonempty")
}

/// Number of distinct diagrams in the orbit of `d`.
pub fn orbit_size(d: &MeanderDiagram) -> usize {
    let mut codes: Vec<Vec<u8>> = symmetry_images(d).iter().map(encode).collect();
    codes.sort_unstable();
    codes.dedup();
    codes.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_and_reflection_invariance() {
        let d = MeanderDiagram::new(Kind::Closed, 2, vec![[0, 1]], vec![[0, 1]], vec![], vec![]).unwrap();
        assert_eq!(canonical_form(&d), canonical_form(&d.rotate(1)));
        let e = MeanderDiagram::new(
            Kind::Closed,
            6,
            vec![[0, 5], [1, 2], [3, 4]],
            vec![[0, 1], [2, 3], [4, 5]],
            vec![],
            vec![],
        )
        .unwrap();
        assert_eq!(canonical_form(&e), canonical_form(&e.reflect_left_right()));
        assert_eq!(canonical_form(&e), canonical_form(&e.reflect_up_down().rotate(2)));
    }
}
