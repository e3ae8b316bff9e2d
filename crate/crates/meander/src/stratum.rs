//! Strata of quadratic differentials, written as multisets of zero orders.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::MeanderDiagram;
use crate::error::{Error, Result};
use crate::map::CombinatorialMap;

/// Zero orders (each at least -1) sorted in decreasing order, with order-0 entries dropped.
///
/// `marked_zeros` counts order-0 entries that were written explicitly, such as the two zeros of
/// `Q(0,0,-1^4)`. A diagram realises such a signature when its nonzero orders agree and it has at
/// least that many faces of order zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StratumSignature {
    pub orders: Vec<i32>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub marked_zeros: usize,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

impl StratumSignature {
    /// Builds a signature from orders in any order. Zeros become marked zeros.
    pub fn new(orders: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut v = Vec::new();
        let mut zeros = 0;
        for k in orders {
            match k {
                0 => zeros += 1,
                k if k < -1 => return Err(Error::InvalidOrder(format!("order {k} is below -1"))),
                k => v.push(k),
            }
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        Ok(StratumSignature { orders: v, marked_zeros: zeros })
    }

    /// The genus-zero stratum with the given zeros and as many simple poles as the sum needs.
    pub fn genus_zero(zeros: &[i32]) -> Result<Self> {
        let s: i32 = zeros.iter().sum();
        let poles = s + 4;
        if poles < 0 {
            return Err(Error::InvalidOrder(format!("zeros {zeros:?} sum past -4")));
        }
        Self::new(zeros.iter().copied().chain(std::iter::repeat_n(-1, poles as usize)))
    }

    pub fn pole_count(&self) -> usize {
        self.orders.iter().filter(|&&k| k == -1).count()
    }

    pub fn sum(&self) -> i32 {
        self.orders.iter().sum()
    }

    /// Genus from `sum = 4g - 4`, when the sum allows one.
    pub fn genus(&self) -> Option<usize> {
        let s = self.sum() + 4;
        (s >= 0 && s % 4 == 0).then_some((s / 4) as usize)
    }

    /// The same signature without marked zeros.
    pub fn unmarked(&self) -> Self {
        StratumSignature { orders: self.orders.clone(), marked_zeros: 0 }
    }

    /// Whether a diagram with nonzero orders `found` and `zero_faces` order-0 faces realises `self`.
    pub fn admits(&self, found: &StratumSignature, zero_faces: usize) -> bool {
        self.orders == found.orders && zero_faces >= self.marked_zeros
    }
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: Vec<(i32, usize)> = Vec::new();
        let zeros = (self.marked_zeros > 0).then_some((0, self.marked_zeros));
        let mut push = |k: i32, m: usize| match groups.last_mut() {
            Some((g, c)) if *g == k => *c += m,
            _ => groups.push((k, m)),
        };
        let mut zeros_done = false;
        for &k in &self.orders {
            if !zeros_done && k < 0 {
                if let Some((z, m)) = zeros {
                    push(z, m);
                }
                zeros_done = true;
            }
            push(k, 1);
        }
        if !zeros_done {
            if let Some((z, m)) = zeros {
                push(z, m);
            }
        }
        let parts: Vec<String> = groups
            .iter()
            .map(|&(k, m)| if m == 1 { k.to_string() } else { format!("{k}^{m}") })
            .collect();
        write!(f, "Q({})", parts.join(","))
    }
}

impl FromStr for StratumSignature {
    type Err = Error;

    /// Accepts `2,1,-1^7`, optionally wrapped as `Q(...)`. `Q()` is the empty signature of a flat torus.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::StratumSyntax(s.to_string());
        let mut t = s.trim().replace('\u{2212}', "-");
        if let Some(inner) = t.strip_prefix("Q(").or_else(|| t.strip_prefix("q(")) {
            t = inner.strip_suffix(')').ok_or_else(bad)?.to_string();
            if t.trim().is_empty() {
                return Ok(StratumSignature::default());
            }
        }
        let mut orders = Vec::new();
        for tok in t.split(',').map(str::trim) {
            if tok.is_empty() {
                return Err(bad());
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let k: i32 = base.parse().map_err(|_| bad())?;
            orders.extend(std::iter::repeat_n(k, exp));
        }
        StratumSignature::new(orders)
    }
}

/// Stratum of a diagram together with its number of order-0 faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderProfile {
    pub signature: StratumSignature,
    pub zero_faces: usize,
}

/// Face orders plus one simple pole per anchor, free end or shared anchor.
pub fn order_profile_of_map(m: &CombinatorialMap) -> Result<OrderProfile> {
    let faces = m.faces()?;
    let mut orders: Vec<i32> = faces.iter().map(|f| f.order()).collect();
    let zero_faces = orders.iter().filter(|&&k| k == 0).count();
    orders.extend(std::iter::repeat_n(-1, m.pole_vertices().len()));
    Ok(OrderProfile { signature: StratumSignature::new(orders)?.unmarked(), zero_faces })
}

pub fn order_profile(d: &MeanderDiagram) -> Result<OrderProfile> {
    order_profile_of_map(&CombinatorialMap::build(d)?)
}

/// The stratum of a diagram, order-0 faces dropped.
pub fn stratum(d: &MeanderDiagram) -> Result<StratumSignature> {
    Ok(order_profile(d)?.signature)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: StratumSignature = "2,1,-1^7".parse().unwrap();
        assert_eq!(s.orders, vec![2, 1, -1, -1, -1, -1, -1, -1, -1]);
        assert_eq!(s.to_string(), "Q(2,1,-1^7)");
        assert_eq!(s.sum(), -4);
        let z: StratumSignature = "Q(0,0,-1^4)".parse().unwrap();
        assert_eq!(z.marked_zeros, 2);
        assert_eq!(z.to_string(), "Q(0^2,-1^4)");
        assert_eq!(z.to_string().parse::<StratumSignature>().unwrap(), z);
        assert!("2,,1".parse::<StratumSignature>().is_err());
        assert!("-2".parse::<StratumSignature>().is_err());
    }

    #[test]
    fn genus_zero_fills_poles() {
        assert_eq!(StratumSignature::genus_zero(&[1]).unwrap().to_string(), "Q(1,-1^5)");
        assert_eq!(StratumSignature::genus_zero(&[2, 2]).unwrap().genus(), Some(0));
        assert_eq!("2,2".parse::<StratumSignature>().unwrap().genus(), Some(2));
    }
}
