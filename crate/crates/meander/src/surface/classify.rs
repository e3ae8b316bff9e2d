//! Hyperelliptic components reachable by lifting meanders, and classification of lifts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stratum::StratumSignature;
use crate::surface::cover::ConeSite;
use crate::surface::lift::Lift;

/// A hyperelliptic component. Abelian components are named by genus; quadratic ones by the
/// parameters `j`, `k` of their zero orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Component {
    /// `H^hyp(2g-2)`, one zero of order `4g-4` as a quadratic differential.
    AbelianOneZero { g: u32 },
    /// `H^hyp(g-1,g-1)`, two zeros swapped by the involution.
    AbelianTwoZeros { g: u32 },
    /// `Q^hyp(4j+2,4k+2)` with `k >= j >= 0`.
    TwoFixedZeros { j: u32, k: u32 },
    /// `Q^hyp(4j+2,2k-1,2k-1)` with `(j,k) != (0,0)`.
    FixedZeroAndPair { j: u32, k: u32 },
    /// `Q^hyp(2j-1,2j-1,2k-1,2k-1)` with `k >= j >= 0`, `k >= 1`.
    TwoPairs { j: u32, k: u32 },
    /// `Q^hyp(2,-1,-1)`.
    FixedZeroAndPolePair,
}

/// Whether a downstairs singularity is a branch point of the double cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branching {
    Branched,
    Unbranched,
}

impl Component {
    /// Checks parameter ranges.
    pub fn new(self) -> Result<Self> {
        let ok = match self {
            Component::AbelianOneZero { g } | Component::AbelianTwoZeros { g } => g >= 2,
            Component::TwoFixedZeros { j, k } => k >= j,
            Component::FixedZeroAndPair { j, k } => (j, k) != (0, 0),
            Component::TwoPairs { j, k } => k >= j && k >= 1,
            Component::FixedZeroAndPolePair => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidOrder(format!("parameters out of range for {self:?}")))
        }
    }

    pub fn genus(self) -> u32 {
        match self {
            Component::AbelianOneZero { g } | Component::AbelianTwoZeros { g } => g,
            Component::TwoFixedZeros { j, k } => j + k + 2,
            Component::FixedZeroAndPair { j, k } => j + k + 1,
            Component::TwoPairs { j, k } => j + k,
            Component::FixedZeroAndPolePair => 1,
        }
    }

    pub fn is_abelian(self) -> bool {
        matches!(self, Component::AbelianOneZero { .. } | Component::AbelianTwoZeros { .. })
    }

    /// Zero orders upstairs as a quadratic differential, largest first.
    pub fn orders(self) -> Vec<i32> {
        let (j, k) = match self {
            Component::TwoFixedZeros { j, k } | Component::FixedZeroAndPair { j, k } | Component::TwoPairs { j, k } => {
                (j as i32, k as i32)
            }
            _ => (0, 0),
        };
        let mut v = match self {
            Component::AbelianOneZero { g } => vec![4 * g as i32 - 4],
            Component::AbelianTwoZeros { g } => vec![2 * g as i32 - 2; 2],
            Component::TwoFixedZeros { .. } => vec![4 * j + 2, 4 * k + 2],
            Component::FixedZeroAndPair { .. } => vec![4 * j + 2, 2 * k - 1, 2 * k - 1],
            Component::TwoPairs { .. } => vec![2 * j - 1, 2 * j - 1, 2 * k - 1, 2 * k - 1],
            Component::FixedZeroAndPolePair => vec![2, -1, -1],
        };
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn stratum(self) -> StratumSignature {
        StratumSignature::new(self.orders()).expect("component orders are valid").unmarked()
    }

    /// Singularities of the quotient sphere other than the branched simple poles, as
    /// `(order, branching)`. A zero upstairs fixed by the involution comes from a branched point
    /// of half its order minus one; a swapped pair comes from one unbranched point.
    pub fn profile(self) -> Vec<(i32, Branching)> {
        use Branching::*;
        let mut v = match self {
            Component::AbelianOneZero { g } => vec![(2 * g as i32 - 3, Branched)],
            Component::AbelianTwoZeros { g } => vec![(2 * g as i32 - 2, Unbranched)],
            Component::TwoFixedZeros { j, k } => vec![(2 * j as i32, Branched), (2 * k as i32, Branched)],
            Component::FixedZeroAndPair { j, k } => vec![(2 * j as i32, Branched), (2 * k as i32 - 1, Unbranched)],
            Component::TwoPairs { j, k } => vec![(2 * j as i32 - 1, Unbranched), (2 * k as i32 - 1, Unbranched)],
            Component::FixedZeroAndPolePair => vec![(0, Branched), (-1, Unbranched)],
        };
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Number of branched simple poles on the quotient sphere.
    pub fn branched_poles(self) -> u32 {
        match self {
            Component::AbelianOneZero { g } => 2 * g + 1,
            Component::AbelianTwoZeros { g } => 2 * g + 2,
            Component::TwoFixedZeros { j, k } => 2 * j + 2 * k + 4,
            Component::FixedZeroAndPair { j, k } => 2 * j + 2 * k + 3,
            Component::TwoPairs { j, k } => 2 * j + 2 * k + 2,
            Component::FixedZeroAndPolePair => 3,
        }
    }

    /// Stratum of the quotient sphere.
    pub fn quotient_stratum(self) -> StratumSignature {
        let mut orders: Vec<i32> = self.profile().into_iter().map(|(k, _)| k).collect();
        orders.extend(std::iter::repeat_n(-1, self.branched_poles() as usize));
        StratumSignature::new(orders).expect("quotient orders are valid").unmarked()
    }

    /// Every component of genus `g` with quadratic zeros (the Abelian ones excluded).
    pub fn quadratic_of_genus(g: u32) -> Vec<Component> {
        let mut out = Vec::new();
        for j in 0..=g {
            for k in j..=g {
                let cands = [
                    Component::TwoFixedZeros { j, k },
                    Component::FixedZeroAndPair { j, k },
                    Component::FixedZeroAndPair { j: k, k: j },
                    Component::TwoPairs { j, k },
                ];
                for c in cands {
                    if c.new().is_ok() && c.genus() == g && !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        if g == 1 {
            out.push(Component::FixedZeroAndPolePair);
        }
        out
    }

    /// The component whose upstairs orders (fixed and swapped) are given.
    fn from_zeros(fixed: &[i32], swapped: &[i32], abelian: bool, genus: u32) -> Result<Self> {
        let c = match (abelian, fixed, swapped) {
            (true, &[z], &[]) if z == 4 * genus as i32 - 4 && genus >= 1 => Component::AbelianOneZero { g: genus },
            (true, &[], &[z]) if z == 2 * genus as i32 - 2 && genus >= 1 => Component::AbelianTwoZeros { g: genus },
            (false, &[a, b], &[]) if a % 4 == 2 && b % 4 == 2 => {
                let (j, k) = ((a.min(b) - 2) / 4, (a.max(b) - 2) / 4);
                Component::TwoFixedZeros { j: j as u32, k: k as u32 }
            }
            (false, &[2], &[-1]) => Component::FixedZeroAndPolePair,
            (false, &[a], &[p]) if a % 4 == 2 && p % 2 != 0 => {
                Component::FixedZeroAndPair { j: ((a - 2) / 4) as u32, k: ((p + 1) / 2) as u32 }
            }
            (false, &[], &[p, q]) if p % 2 != 0 && q % 2 != 0 => {
                let (j, k) = ((p.min(q) + 1) / 2, (p.max(q) + 1) / 2);
                Component::TwoPairs { j: j as u32, k: k as u32 }
            }
            _ => {
                return Err(Error::NotInTable(format!(
                    "fixed zeros {fixed:?}, swapped pairs {swapped:?}, genus {genus}"
                )))
            }
        };
        let c = c.new()?;
        if c.genus() != genus {
            return Err(Error::NotInTable(format!("{c} does not have genus {genus}")));
        }
        Ok(c)
    }
}

/// Names the hyperelliptic component of a lift from its zeros, their behaviour under the deck
/// involution, and whether the surface is a translation surface.
pub fn classify_component(lift: &Lift) -> Result<Component> {
    let cover = &lift.cover;
    let classes = cover.vertex_classes();
    let mut fixed = Vec::new();
    let mut swapped = Vec::new();
    for p in cover.cone_points()? {
        let ConeSite::Corner(c) = p.site else {
            return Err(Error::NotInTable("lift has folds or half squares".into()));
        };
        if p.order == 0 {
            continue;
        }
        let rep = classes.class_of.iter().position(|&x| x == c).expect("class has a corner");
        let image = classes.class_of[lift.deck_corner(rep)];
        if image == c {
            fixed.push(p.order);
        } else if c < image {
            swapped.push(p.order);
        }
    }
    fixed.sort_unstable();
    swapped.sort_unstable();
    Component::from_zeros(&fixed, &swapped, cover.is_translation_surface(), cover.genus() as u32)
}

fn join(orders: &[i32]) -> String {
    orders.iter().map(i32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::AbelianOneZero { g } => write!(f, "H^hyp({})", 2 * g - 2),
            Component::AbelianTwoZeros { g } => write!(f, "H^hyp({},{})", g - 1, g - 1),
            _ => write!(f, "Q^hyp({})", join(&self.orders())),
        }
    }
}

impl FromStr for Component {
    type Err = Error;

    /// Accepts `H(2)`, `H^hyp(1,1)`, `Q(6,1,1)`, `Q^hyp(3,3,-1,-1)` and the like, with the
    /// orders in any order.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('\u{2212}', "-");
        let bad = || Error::StratumSyntax(format!("not a component name: {s}"));
        let (abelian, rest) = match t.chars().next() {
            Some('H') => (true, &t[1..]),
            Some('Q') => (false, &t[1..]),
            _ => return Err(bad()),
        };
        let rest = rest.strip_prefix("^hyp").unwrap_or(rest);
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let mut orders: Vec<i32> = inner.split(',').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        orders.sort_unstable();
        if abelian {
            return match *orders.as_slice() {
                [a] if a >= 0 && a % 2 == 0 => Component::AbelianOneZero { g: (a as u32 + 2) / 2 }.new(),
                [a, b] if a == b && a >= 0 => Component::AbelianTwoZeros { g: a as u32 + 1 }.new(),
                _ => Err(Error::NotInTable(format!("{s} is not a hyperelliptic Abelian component"))),
            };
        }
        let sum: i32 = orders.iter().sum();
        if (sum + 4) % 4 != 0 || sum < -4 {
            return Err(Error::NotInTable(format!("{s} has order sum {sum}")));
        }
        let genus = ((sum + 4) / 4) as u32;
        // Odd orders come in swapped pairs, even ones are fixed.
        let (odd, even): (Vec<i32>, Vec<i32>) = orders.iter().partition(|&&x| x % 2 != 0);
        if odd.len() % 2 == 1 || odd.chunks(2).any(|p| p[0] != p[1]) {
            return Err(Error::NotInTable(format!("{s} has unpaired odd orders")));
        }
        let pairs: Vec<i32> = odd.iter().step_by(2).copied().collect();
        Component::from_zeros(&even, &pairs, false, genus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{anchor_sharing_semi, closed_two_zeros, doubly_anchored_open};
    use crate::map::CombinatorialMap;
    use crate::surface::branch::BranchSet;
    use crate::surface::lift::{lift_all_poles, lift_with};

    #[test]
    fn names_round_trip() {
        for s in ["H^hyp(2)", "H^hyp(1,1)", "Q^hyp(2,2)", "Q^hyp(6,2)", "Q^hyp(6,1,1)", "Q^hyp(3,3,-1,-1)", "Q^hyp(2,-1,-1)"] {
            assert_eq!(s.parse::<Component>().unwrap().to_string(), s);
        }
        assert_eq!("Q(2,6)".parse::<Component>().unwrap(), Component::TwoFixedZeros { j: 0, k: 1 });
        assert_eq!("Q(1,1,1,1)".parse::<Component>().unwrap(), Component::TwoPairs { j: 1, k: 1 });
        assert_eq!("H(4)".parse::<Component>().unwrap(), Component::AbelianOneZero { g: 3 });
        assert!("Q(2,1,1,-1)".parse::<Component>().is_err());
        assert!("Q(-1,-1,-1,-1)".parse::<Component>().is_err());
    }

    #[test]
    fn genus_matches_order_sum() {
        for g in 1..6 {
            for c in Component::quadratic_of_genus(g) {
                let sum: i32 = c.orders().iter().sum();
                assert_eq!(sum, 4 * g as i32 - 4, "{c}");
                assert_eq!(c.quotient_stratum().sum(), -4, "{c}");
            }
        }
    }

    #[test]
    fn classifies_known_lifts() {
        let m = CombinatorialMap::build(&closed_two_zeros(0, 0).unwrap()).unwrap();
        let ft = m.face_table().unwrap();
        let mut b = BranchSet::all_poles(&m, &ft);
        b.faces.iter_mut().for_each(|f| *f = true);
        let (l, _) = lift_with(&m, &b).unwrap();
        assert_eq!(classify_component(&l).unwrap(), Component::TwoFixedZeros { j: 0, k: 0 });

        let m = CombinatorialMap::build(&doubly_anchored_open(1)).unwrap();
        let ft = m.face_table().unwrap();
        let mut b = BranchSet::all_poles(&m, &ft);
        b.faces.iter_mut().for_each(|f| *f = true);
        let (l, _) = lift_with(&m, &b).unwrap();
        assert_eq!(classify_component(&l).unwrap(), Component::AbelianOneZero { g: 2 });

        let m = CombinatorialMap::build(&anchor_sharing_semi()).unwrap();
        let ft = m.face_table().unwrap();
        let mut b = BranchSet::all_poles(&m, &ft);
        for (f, face) in ft.faces.iter().enumerate() {
            b.faces[f] = face.order() == 0;
        }
        let (l, _) = lift_with(&m, &b).unwrap();
        assert_eq!(classify_component(&l).unwrap(), Component::FixedZeroAndPolePair);
    }

    #[test]
    fn torus_is_not_in_the_table() {
        let d = crate::MeanderDiagram::new(crate::Kind::Closed, 2, vec![[0, 1]], vec![[0, 1]], vec![], vec![]).unwrap();
        assert!(matches!(classify_component(&lift_all_poles(&d).unwrap()), Err(Error::NotInTable(_))));
    }
}
