//! Exhaustive enumeration over pairs of noncrossing matchings, and the minimal-crossing oracle.
//!
//! Closed meanders pair two noncrossing perfect matchings of the `n` positions. Anchored kinds
//! use partial matchings whose unmatched points ("defects") are the transversal anchors; a defect
//! may sit under an arc, which places the anchor in an inner region. Semi-meanders use a single
//! matching of the `2n` ports read around the free end of the ray. A union-find pass keeps the
//! candidates whose transversal strand is one curve or one arc.
//!
//! The search space is partitioned by what happens at the first point (a defect, or the partner
//! it is matched with). Partitions are independent, and concatenating their outputs in order
//! reproduces the sequential enumeration exactly.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::canonical::canonical_form;
use crate::diagram::{AnchorEnd, HorizontalEnd, Kind, MeanderDiagram, Side};
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::map::CombinatorialMap;
use crate::stratum::{order_profile_of_map, StratumSignature};

/// A noncrossing partial matching: `partner[i]` is `Some(j)` or `None` for a defect.
pub type Matching = Vec<Option<usize>>;

/// All noncrossing matchings of `len` points with exactly `defects` unmatched points, grouped by
/// the fate of point 0 (defect first, then partners in increasing order).
pub fn noncrossing_matchings(len: usize, defects: usize) -> Vec<Matching> {
    let mut memo = HashMap::new();
    matchings_memo(len, defects, &mut memo)
}

fn matchings_memo(len: usize, d: usize, memo: &mut HashMap<(usize, usize), Vec<Matching>>) -> Vec<Matching> {
    if let Some(v) = memo.get(&(len, d)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if d > len || (len - d) % 2 == 1 {
    } else if len == 0 {
        out.push(Vec::new());
    } else {
        if d > 0 {
            for rest in matchings_memo(len - 1, d - 1, memo) {
                let mut m = Vec::with_capacity(len);
                m.push(None);
                m.extend(rest.iter().map(|p| p.map(|x| x + 1)));
                out.push(m);
            }
        }
        for k in 1..len {
            for di in 0..=d {
                let inner = matchings_memo(k - 1, di, memo);
                if inner.is_empty() {
                    continue;
                }
                let outer = matchings_memo(len - k - 1, d - di, memo);
                for a in &inner {
                    for b in &outer {
                        let mut m = Vec::with_capacity(len);
                        m.push(Some(k));
                        m.extend(a.iter().map(|p| p.map(|x| x + 1)));
                        m.push(Some(0));
                        m.extend(b.iter().map(|p| p.map(|x| x + k + 1)));
                        out.push(m);
                    }
                }
            }
        }
    }
    memo.insert((len, d), out.clone());
    out
}

fn arcs_of(m: &Matching) -> Vec<[usize; 2]> {
    m.iter().enumerate().filter_map(|(i, p)| p.filter(|&j| i < j).map(|j| [i, j])).collect()
}

fn defects_of(m: &Matching) -> Vec<usize> {
    m.iter().enumerate().filter(|(_, p)| p.is_none()).map(|(i, _)| i).collect()
}

/// Sequential or rayon-parallel evaluation of independent partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

/// Maps `f` over `items`, keeping input order in the output.
pub fn map_ordered<T: Sync, U: Send>(mode: ExecMode, items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub kind: Kind,
    pub n: usize,
    pub stratum_filter: Option<StratumSignature>,
    /// Keep one diagram per symmetry class (the first met in enumeration order).
    pub dedup: bool,
    /// Also yield the variants in which transversal anchors coincide with horizontal end anchors.
    pub shared_anchors: bool,
}

impl EnumerationQuery {
    pub fn new(kind: Kind, n: usize) -> Self {
        EnumerationQuery { kind, n, stratum_filter: None, dedup: false, shared_anchors: false }
    }

    pub fn with_stratum(mut self, s: StratumSignature) -> Self {
        self.stratum_filter = Some(s);
        self
    }

    pub fn dedup(mut self, on: bool) -> Self {
        self.dedup = on;
        self
    }

    pub fn shared_anchors(mut self, on: bool) -> Self {
        self.shared_anchors = on;
        self
    }
}

/// One independent slice of the search space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Defects of the upper and lower matchings (semi-meanders: `(2, 0)` on the port circle).
    pub defects: (usize, usize),
    /// Matchings of the first family whose point 0 behaves the same way.
    pub first: Vec<Matching>,
}

/// Splits the search space for `kind` at `n` positions by the partner of point 0.
pub fn partitions(kind: Kind, n: usize) -> Vec<Partition> {
    let splits: Vec<(usize, usize, usize)> = match kind {
        Kind::Closed => vec![(n, 0, 0)],
        Kind::DoublyAnchoredSemi => vec![(2 * n, 2, 0)],
        _ => (0..=2).map(|du| (n, du, 2 - du)).collect(),
    };
    let mut out = Vec::new();
    for (len, du, dl) in splits {
        if n == 0 || (kind == Kind::Closed && n % 2 == 1) {
            continue;
        }
        let all = noncrossing_matchings(len, du);
        let mut groups: Vec<Partition> = Vec::new();
        for m in all {
            match groups.last_mut() {
                Some(g) if g.first[0][0] == m[0] => g.first.push(m),
                _ => groups.push(Partition { defects: (du, dl), first: vec![m] }),
            }
        }
        out.extend(groups);
    }
    out
}

/// Whether the transversal strand built from these arcs (as position pairs) is one curve
/// (`closed`) or one arc.
fn single_strand(n: usize, arcs: impl Iterator<Item = [usize; 2]>, closed: bool) -> bool {
    let mut dsu = Dsu::new(n);
    let mut cycles = 0;
    for [a, b] in arcs {
        if !dsu.union(a, b) {
            cycles += 1;
        }
    }
    dsu.components() == 1 && cycles == usize::from(closed)
}

fn semi_diagram(n: usize, m: &Matching) -> MeanderDiagram {
    // Port circle: slot s < n is the upper side of position n-1-s, slot n+p the lower side of p.
    let side_pos = |s: usize| if s < n { (Side::Upper, n - 1 - s) } else { (Side::Lower, s - n) };
    let (mut upper, mut lower, mut wrap) = (Vec::new(), Vec::new(), Vec::new());
    for [a, b] in arcs_of(m) {
        match (side_pos(a), side_pos(b)) {
            ((Side::Upper, p), (Side::Upper, q)) => upper.push([p, q]),
            ((Side::Lower, p), (Side::Lower, q)) => lower.push([p, q]),
            ((Side::Upper, p), (Side::Lower, q)) => wrap.push([p, q]),
            _ => unreachable!("slots are ordered upper before lower"),
        }
    }
    let anchors = defects_of(m)
        .into_iter()
        .map(|s| {
            let (side, pos) = side_pos(s);
            AnchorEnd::new(side, pos)
        })
        .collect();
    MeanderDiagram::from_parts(Kind::DoublyAnchoredSemi, n, upper, lower, wrap, anchors)
}

/// Plain diagrams (no shared anchors) of one partition, in enumeration order.
pub fn partition_diagrams(kind: Kind, n: usize, part: &Partition) -> Vec<MeanderDiagram> {
    let mut out = Vec::new();
    if kind == Kind::DoublyAnchoredSemi {
        for m in &part.first {
            let d = semi_diagram(n, m);
            let arcs = d.upper.iter().chain(&d.lower).chain(&d.wrap).copied();
            if single_strand(n, arcs, false) {
                out.push(d);
            }
        }
        return out;
    }
    let lowers = noncrossing_matchings(n, part.defects.1);
    for u in &part.first {
        let ua = arcs_of(u);
        for l in &lowers {
            let la = arcs_of(l);
            if !single_strand(n, ua.iter().chain(&la).copied(), kind == Kind::Closed) {
                continue;
            }
            let anchors = defects_of(u)
                .into_iter()
                .map(|p| AnchorEnd::new(Side::Upper, p))
                .chain(defects_of(l).into_iter().map(|p| AnchorEnd::new(Side::Lower, p)))
                .collect();
            out.push(MeanderDiagram::from_parts(kind, n, ua.clone(), la, Vec::new(), anchors));
        }
    }
    out
}

/// Variants of `d` in which transversal anchors are shared with horizontal end anchors, keeping
/// only those that embed in the sphere.
pub fn shared_variants(d: &MeanderDiagram) -> Vec<MeanderDiagram> {
    let ends: &[HorizontalEnd] = match d.kind {
        Kind::DoublyAnchoredOpen => &[HorizontalEnd::Left, HorizontalEnd::Right],
        Kind::DoublyAnchoredSemi => &[HorizontalEnd::Right],
        _ => return Vec::new(),
    };
    let a = &d.anchors.transversal;
    let mut choices: Vec<Vec<Option<HorizontalEnd>>> = Vec::new();
    let opts: Vec<Option<HorizontalEnd>> = std::iter::once(None).chain(ends.iter().copied().map(Some)).collect();
    for x in &opts {
        for y in &opts {
            if x.is_some() && x == y {
                continue;
            }
            if x.is_none() && y.is_none() {
                continue;
            }
            choices.push(vec![*x, *y]);
        }
    }
    let mut out = Vec::new();
    for c in choices {
        let mut e = d.clone();
        for (i, s) in c.iter().enumerate() {
            e.anchors.transversal[i].shared = *s;
        }
        debug_assert_eq!(a.len(), 2);
        e.normalize();
        if CombinatorialMap::build_unchecked(&e).is_ok() {
            out.push(e);
        }
    }
    out
}

fn matches_filter(d: &MeanderDiagram, filter: &Option<StratumSignature>) -> bool {
    let Some(s) = filter else { return true };
    let Ok(m) = CombinatorialMap::build_unchecked(d) else { return false };
    match order_profile_of_map(&m) {
        Ok(p) => s.admits(&p.signature, p.zero_faces),
        Err(_) => false,
    }
}

fn query_partition(q: &EnumerationQuery, part: &Partition) -> Vec<MeanderDiagram> {
    let mut out = Vec::new();
    for d in partition_diagrams(q.kind, q.n, part) {
        let extra = if q.shared_anchors { shared_variants(&d) } else { Vec::new() };
        for e in std::iter::once(d).chain(extra) {
            if matches_filter(&e, &q.stratum_filter) {
                out.push(e);
            }
        }
    }
    out
}

fn dedup_in_order(v: Vec<MeanderDiagram>) -> Vec<MeanderDiagram> {
    let mut seen = HashSet::new();
    v.into_iter().filter(|d| seen.insert(canonical_form(d))).collect()
}

/// Every diagram answering `q`, in deterministic order, evaluated with `mode`.
pub fn enumerate_with(q: &EnumerationQuery, mode: ExecMode) -> Vec<MeanderDiagram> {
    let parts = partitions(q.kind, q.n);
    let chunks = map_ordered(mode, &parts, |p| query_partition(q, p));
    let all: Vec<MeanderDiagram> = chunks.into_iter().flatten().collect();
    if q.dedup {
        dedup_in_order(all)
    } else {
        all
    }
}

pub fn enumerate(q: &EnumerationQuery) -> Vec<MeanderDiagram> {
    enumerate_with(q, ExecMode::default())
}

/// Number of plain labelled diagrams of `kind` with `n` positions.
pub fn count(kind: Kind, n: usize, mode: ExecMode) -> usize {
    let parts = partitions(kind, n);
    map_ordered(mode, &parts, |p| partition_diagrams(kind, n, p).len()).into_iter().sum()
}

/// Stratum counts over all plain diagrams of `kind` with `n` positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub kind: Kind,
    pub n: usize,
    pub strata: Vec<CensusEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub orders: Vec<i32>,
    pub count: usize,
}

impl Census {
    pub fn total(&self) -> usize {
        self.strata.iter().map(|e| e.count).sum()
    }

    pub fn get(&self, s: &StratumSignature) -> usize {
        self.strata.iter().find(|e| e.orders == s.orders).map_or(0, |e| e.count)
    }
}

pub fn census_with(kind: Kind, n: usize, mode: ExecMode) -> Census {
    let parts = partitions(kind, n);
    let maps = map_ordered(mode, &parts, |p| {
        let mut m: BTreeMap<Vec<i32>, usize> = BTreeMap::new();
        for d in partition_diagrams(kind, n, p) {
            let s = crate::stratum::stratum(&d).expect("enumerated diagrams are valid");
            *m.entry(s.orders).or_default() += 1;
        }
        m
    });
    let mut total: BTreeMap<Vec<i32>, usize> = BTreeMap::new();
    for m in maps {
        for (k, v) in m {
            *total.entry(k).or_default() += v;
        }
    }
    let strata = total.into_iter().rev().map(|(orders, count)| CensusEntry { orders, count }).collect();
    Census { kind, n, strata }
}

pub fn census(kind: Kind, n: usize) -> Census {
    census_with(kind, n, ExecMode::default())
}

/// The smallest crossing count realising a stratum, with every diagram that attains it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityWitness {
    pub stratum: StratumSignature,
    pub kind: Kind,
    pub min_crossings: usize,
    pub witnesses: Vec<MeanderDiagram>,
    /// Largest crossing count exhausted; equals `min_crossings`.
    pub search_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum MinSearch {
    Found(MinimalityWitness),
    /// No diagram with at most `bound` crossings realises the stratum.
    Exhausted { bound: usize },
}

impl MinSearch {
    pub fn min(&self) -> Option<usize> {
        match self {
            MinSearch::Found(w) => Some(w.min_crossings),
            MinSearch::Exhausted { .. } => None,
        }
    }
}

/// Poles that plain diagrams of `kind` always carry at their anchors and strand ends.
pub fn anchor_poles(kind: Kind) -> usize {
    match kind {
        Kind::Closed => 0,
        Kind::SinglyAnchored => 2,
        Kind::DoublyAnchoredOpen | Kind::DoublyAnchoredSemi => 4,
    }
}

/// Rejects strata that no plain diagram of `kind` can realise for structural reasons.
pub fn check_feasible(kind: Kind, s: &StratumSignature) -> Result<()> {
    if s.sum() != -4 {
        return Err(Error::InfeasibleStratum(format!("{s} has order sum {} instead of -4", s.sum())));
    }
    if s.pole_count() < anchor_poles(kind) {
        return Err(Error::InfeasibleStratum(format!(
            "{kind} meanders carry {} anchor poles but {s} has {}",
            anchor_poles(kind),
            s.pole_count()
        )));
    }
    Ok(())
}

/// Searches `n = 1..=budget` (even `n` only for closed meanders) for the first crossing count
/// realising `s`, over plain diagrams.
pub fn min_crossings(kind: Kind, s: &StratumSignature, budget: usize) -> Result<MinSearch> {
    min_crossings_with(kind, s, budget, ExecMode::default())
}

pub fn min_crossings_with(kind: Kind, s: &StratumSignature, budget: usize, mode: ExecMode) -> Result<MinSearch> {
    check_feasible(kind, s)?;
    for n in 1..=budget {
        if kind == Kind::Closed && n % 2 == 1 {
            continue;
        }
        let q = EnumerationQuery::new(kind, n).with_stratum(s.clone());
        let witnesses = enumerate_with(&q, mode);
        if !witnesses.is_empty() {
            return Ok(MinSearch::Found(MinimalityWitness {
                stratum: s.clone(),
                kind,
                min_crossings: n,
                witnesses,
                search_bound: n,
            }));
        }
    }
    Ok(MinSearch::Exhausted { bound: budget })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matchings_are_counted_by_catalan() {
        let cat = [1, 1, 2, 5, 14, 42, 132];
        for (k, &c) in cat.iter().enumerate() {
            assert_eq!(noncrossing_matchings(2 * k, 0).len(), c);
        }
        // Three points with one defect anywhere: defect at 0, 1 or 2.
        assert_eq!(noncrossing_matchings(3, 1).len(), 3);
    }

    #[test]
    fn closed_counts() {
        let got: Vec<usize> = (1..=5).map(|h| count(Kind::Closed, 2 * h, ExecMode::Sequential)).collect();
        assert_eq!(got, vec![1, 2, 8, 42, 262]);
        assert_eq!(count(Kind::Closed, 3, ExecMode::Sequential), 0);
    }

    #[test]
    fn anchored_counts() {
        let single: Vec<usize> = (1..=6).map(|n| count(Kind::SinglyAnchored, n, ExecMode::Sequential)).collect();
        assert_eq!(single, vec![1, 2, 6, 16, 50, 144]);
        let open: Vec<usize> = (1..=6).map(|n| count(Kind::DoublyAnchoredOpen, n, ExecMode::Sequential)).collect();
        assert_eq!(open, single);
        let semi: Vec<usize> = (1..=6).map(|n| count(Kind::DoublyAnchoredSemi, n, ExecMode::Sequential)).collect();
        assert_eq!(semi, vec![1, 4, 16, 62, 234, 874]);
    }

    #[test]
    fn partitions_concatenate_to_the_whole() {
        for kind in Kind::ALL {
            let q = EnumerationQuery::new(kind, 6);
            assert_eq!(enumerate_with(&q, ExecMode::Sequential), enumerate_with(&q, ExecMode::Parallel));
        }
    }

    #[test]
    fn small_minima() {
        let s: StratumSignature = "1,-1^5".parse().unwrap();
        assert_eq!(min_crossings(Kind::Closed, &s, 10).unwrap().min(), Some(8));
        let s: StratumSignature = "0,-1^4".parse().unwrap();
        assert_eq!(min_crossings(Kind::DoublyAnchoredOpen, &s, 6).unwrap().min(), Some(1));
        let s: StratumSignature = "-1^2".parse().unwrap();
        assert!(matches!(min_crossings(Kind::Closed, &s, 4), Err(Error::InfeasibleStratum(_))));
        let s: StratumSignature = "-1^4".parse().unwrap();
        assert!(min_crossings(Kind::DoublyAnchoredOpen, &"1,-1^3".parse().unwrap(), 4).is_err());
        assert_eq!(min_crossings(Kind::Closed, &s, 4).unwrap().min(), Some(2));
    }
}
