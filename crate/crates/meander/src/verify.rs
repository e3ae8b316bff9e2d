//! Minimal square counts of hyperelliptic [1,1]-pillowcase covers, checked three ways: the
//! closed-form table, an explicit construction lifted from a meander, and an exhaustive search
//! over lifts of all small meanders.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constructions::Family;
use crate::diagram::{Kind, MeanderDiagram};
use crate::enumerate::{enumerate_with, map_ordered, EnumerationQuery, ExecMode};
use crate::error::{Error, Result};
use crate::map::{CombinatorialMap, FaceTable};
use crate::stratum::order_profile_of_map;
use crate::surface::branch::BranchSet;
use crate::surface::classify::{classify_component, Branching, Component};
use crate::surface::cylinders::{cylinders, is_separating, Direction};
use crate::surface::lift::{lift_with, Lift};

/// How many of the two core curves separate the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    BothNonsep,
    OneSep,
    BothSep,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::BothNonsep, Case::OneSep, Case::BothSep];

    pub fn separating(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Case::BothNonsep => "both_nonsep",
            Case::OneSep => "one_sep",
            Case::BothSep => "both_sep",
        }
    }

    /// The case realised by lifts of diagrams of `kind`.
    pub fn for_kind(kind: Kind) -> Case {
        Case::ALL[kind.closed_strands()]
    }

    /// Diagram kinds whose lifts have this many separating cores: a core separates exactly when
    /// its strand is closed.
    pub fn kinds(self) -> &'static [Kind] {
        match self {
            Case::BothNonsep => &[Kind::DoublyAnchoredOpen, Kind::DoublyAnchoredSemi],
            Case::OneSep => &[Kind::SinglyAnchored],
            Case::BothSep => &[Kind::Closed],
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Case> {
        let key = s.replace('-', "_");
        Case::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| Error::BadArity(format!("unknown case {s:?}; expected both_nonsep, one_sep or both_sep")))
    }
}

/// One row of the table of minimal square counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableRow {
    AbelianOneZero,
    AbelianTwoZeros,
    TwoFixedZeros,
    /// Fixed zero and a swapped pair with `j >= k`.
    FixedZeroAndPairJ,
    /// Fixed zero and a swapped pair with `k > j`.
    FixedZeroAndPairK,
    TwoPairs,
    FixedZeroAndPolePair,
}

impl TableRow {
    pub const ALL: [TableRow; 7] = [
        TableRow::AbelianOneZero,
        TableRow::AbelianTwoZeros,
        TableRow::TwoFixedZeros,
        TableRow::FixedZeroAndPairJ,
        TableRow::FixedZeroAndPairK,
        TableRow::TwoPairs,
        TableRow::FixedZeroAndPolePair,
    ];

    pub fn of(c: Component) -> TableRow {
        match c {
            Component::AbelianOneZero { .. } => TableRow::AbelianOneZero,
            Component::AbelianTwoZeros { .. } => TableRow::AbelianTwoZeros,
            Component::TwoFixedZeros { .. } => TableRow::TwoFixedZeros,
            Component::FixedZeroAndPair { j, k } if j >= k => TableRow::FixedZeroAndPairJ,
            Component::FixedZeroAndPair { .. } => TableRow::FixedZeroAndPairK,
            Component::TwoPairs { .. } => TableRow::TwoPairs,
            Component::FixedZeroAndPolePair => TableRow::FixedZeroAndPolePair,
        }
    }

    /// Component pattern and parameter range.
    pub fn label(self) -> &'static str {
        match self {
            TableRow::AbelianOneZero => "H^hyp(2g-2)",
            TableRow::AbelianTwoZeros => "H^hyp(g-1,g-1)",
            TableRow::TwoFixedZeros => "Q^hyp(4j+2,4k+2), k>=j>=0",
            TableRow::FixedZeroAndPairJ => "Q^hyp(4j+2,2k-1,2k-1), j>=k, j>=1",
            TableRow::FixedZeroAndPairK => "Q^hyp(4j+2,2k-1,2k-1), k>j>=0",
            TableRow::TwoPairs => "Q^hyp(2j-1,2j-1,2k-1,2k-1), k>=j>=0, k>=1",
            TableRow::FixedZeroAndPolePair => "Q^hyp(2,-1,-1)",
        }
    }

    /// The formulas in the order both_nonsep, one_sep, both_sep.
    pub fn formulas(self) -> [&'static str; 3] {
        match self {
            TableRow::AbelianOneZero => ["4g-4", "n/a", "n/a"],
            TableRow::AbelianTwoZeros => ["4g-2", "n/a", "n/a"],
            TableRow::TwoFixedZeros => ["4j+4k+4", "max{8j+6,8k+4}", "16k-8j+8"],
            TableRow::FixedZeroAndPairJ => ["4j+4k+2", "8j+4", "16j-8k+12"],
            TableRow::FixedZeroAndPairK => ["4j+4k+2", "8k", "16k-8j"],
            TableRow::TwoPairs => ["4j+4k", "max{8j+2,8k}", "16k-8j+4"],
            TableRow::FixedZeroAndPolePair => ["3", "4", "12"],
        }
    }

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            TableRow::AbelianOneZero => "h-one-zero",
            TableRow::AbelianTwoZeros => "h-two-zeros",
            TableRow::TwoFixedZeros => "q-two-fixed",
            TableRow::FixedZeroAndPairJ | TableRow::FixedZeroAndPairK => "q-fixed-pair",
            TableRow::TwoPairs => "q-two-pairs",
            TableRow::FixedZeroAndPolePair => "q-fixed-poles",
        }
    }

    /// The component named by a row name and its parameters (`g`, or `j` and `k`).
    pub fn component(name: &str, params: &HashMap<String, u32>) -> Result<Component> {
        let get = |key: &str| {
            params.get(key).copied().ok_or_else(|| Error::BadArity(format!("row {name} needs parameter {key}")))
        };
        let c = match name.replace('_', "-").as_str() {
            "h-one-zero" => Component::AbelianOneZero { g: get("g")? },
            "h-two-zeros" => Component::AbelianTwoZeros { g: get("g")? },
            "q-two-fixed" => Component::TwoFixedZeros { j: get("j")?, k: get("k")? },
            "q-fixed-pair" => Component::FixedZeroAndPair { j: get("j")?, k: get("k")? },
            "q-two-pairs" => Component::TwoPairs { j: get("j")?, k: get("k")? },
            "q-fixed-poles" => Component::FixedZeroAndPolePair,
            _ => return name.parse(),
        };
        c.new()
    }
}

/// The tabulated minimal number of squares.
pub fn table_formula(c: Component, case: Case) -> Result<usize> {
    let c = c.new()?;
    let v: i64 = match (c, case) {
        (Component::AbelianOneZero { g }, Case::BothNonsep) => 4 * g as i64 - 4,
        (Component::AbelianTwoZeros { g }, Case::BothNonsep) => 4 * g as i64 - 2,
        (Component::AbelianOneZero { .. } | Component::AbelianTwoZeros { .. }, _) => {
            return Err(Error::NotApplicable(format!("both core curves of a cover in {c} are non-separating")))
        }
        (Component::TwoFixedZeros { j, k }, case) => {
            let (j, k) = (j as i64, k as i64);
            match case {
                Case::BothNonsep => 4 * j + 4 * k + 4,
                Case::OneSep => (8 * j + 6).max(8 * k + 4),
                Case::BothSep => 16 * k - 8 * j + 8,
            }
        }
        (Component::FixedZeroAndPair { j, k }, case) => {
            let (j, k) = (j as i64, k as i64);
            match (case, j >= k) {
                (Case::BothNonsep, _) => 4 * j + 4 * k + 2,
                (Case::OneSep, true) => 8 * j + 4,
                (Case::BothSep, true) => 16 * j - 8 * k + 12,
                (Case::OneSep, false) => 8 * k,
                (Case::BothSep, false) => 16 * k - 8 * j,
            }
        }
        (Component::TwoPairs { j, k }, case) => {
            let (j, k) = (j as i64, k as i64);
            match case {
                Case::BothNonsep => 4 * j + 4 * k,
                Case::OneSep => (8 * j + 2).max(8 * k),
                Case::BothSep => 16 * k - 8 * j + 4,
            }
        }
        (Component::FixedZeroAndPolePair, case) => [3, 4, 12][case as usize],
    };
    Ok(v as usize)
}

/// The meander family and parameters whose lift realises the tabulated count.
pub fn construction(c: Component, case: Case) -> Result<(Family, Vec<i64>)> {
    table_formula(c, case)?;
    let nonsep = case == Case::BothNonsep;
    let family = match case {
        Case::BothNonsep => Family::DoublyAnchoredSemi,
        Case::OneSep => Family::SinglyAnchored,
        Case::BothSep => Family::ClosedTwoZeros,
    };
    let out = match c {
        Component::AbelianOneZero { g } => (Family::DoublyAnchoredOpen, vec![2 * g as i64 - 3]),
        Component::AbelianTwoZeros { g } => (Family::DoublyAnchoredOpen, vec![2 * g as i64 - 2]),
        Component::TwoFixedZeros { j, k } => (family, vec![2 * k as i64, 2 * j as i64]),
        Component::FixedZeroAndPair { j, k: 0 } if nonsep => (Family::DoublyAnchoredOpen, vec![2 * j as i64]),
        Component::FixedZeroAndPair { j, k } if j >= k => (family, vec![2 * j as i64, 2 * k as i64 - 1]),
        Component::FixedZeroAndPair { j, k } => (family, vec![2 * k as i64 - 1, 2 * j as i64]),
        Component::TwoPairs { j: 0, k } if nonsep => (Family::DoublyAnchoredOpen, vec![2 * k as i64 - 1]),
        Component::TwoPairs { j, k } => (family, vec![2 * k as i64 - 1, 2 * j as i64 - 1]),
        Component::FixedZeroAndPolePair if nonsep => (Family::AnchorSharingSemi, vec![]),
        Component::FixedZeroAndPolePair => (family, vec![0, -1]),
    };
    Ok(out)
}

/// Every branch set on `m` whose double cover has the singularities of `c`: each face is
/// branched or not so that, with every pole vertex branched, the faces reproduce the quotient
/// profile of `c`.
pub fn profile_branch_sets(m: &CombinatorialMap, ft: &FaceTable, c: Component) -> Vec<BranchSet> {
    let Ok(p) = order_profile_of_map(m) else { return Vec::new() };
    if p.signature.orders != c.quotient_stratum().orders {
        return Vec::new();
    }
    let profile = c.profile();
    let unbranched_poles = profile.iter().filter(|&&e| e == (-1, Branching::Unbranched)).count();
    let mut want: Vec<(i32, Branching)> = profile.into_iter().filter(|e| e.0 >= 0).collect();
    want.sort_unstable();
    let free: Vec<usize> = (0..ft.faces.len()).filter(|&f| ft.faces[f].order() >= 0).collect();
    let bigons: Vec<usize> = (0..ft.faces.len()).filter(|&f| ft.faces[f].order() == -1).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << free.len()) {
        let mut got: Vec<(i32, Branching)> = Vec::new();
        for (i, &f) in free.iter().enumerate() {
            let k = ft.faces[f].order();
            let b = if mask >> i & 1 == 1 { Branching::Branched } else { Branching::Unbranched };
            if !(k == 0 && b == Branching::Unbranched) {
                got.push((k, b));
            }
        }
        got.sort_unstable();
        if got != want {
            continue;
        }
        let mut base = BranchSet::all_poles(m, ft);
        for (i, &f) in free.iter().enumerate() {
            base.faces[f] = mask >> i & 1 == 1;
        }
        match unbranched_poles {
            0 => out.push(base),
            _ => {
                for &f in &bigons {
                    let mut b = base.clone();
                    b.faces[f] = false;
                    out.push(b);
                }
            }
        }
    }
    out
}

/// Everything measured on one lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftSummary {
    pub squares: usize,
    pub stratum: String,
    pub component: Option<String>,
    /// Horizontal and vertical cylinder counts.
    pub cylinders: (usize, usize),
    /// Separating core curves, when both directions have a single cylinder.
    pub separating: Option<usize>,
}

impl LiftSummary {
    pub fn measure(lift: &Lift) -> Result<LiftSummary> {
        let h = cylinders(&lift.cover, Direction::Horizontal)?;
        let v = cylinders(&lift.cover, Direction::Vertical)?;
        let separating = if h.count() == 1 && v.count() == 1 {
            let a = is_separating(&lift.cover, &h.cylinders[0].core)?;
            let b = is_separating(&lift.cover, &v.cylinders[0].core)?;
            Some(usize::from(a) + usize::from(b))
        } else {
            None
        };
        Ok(LiftSummary {
            squares: lift.cover.squares(),
            stratum: lift.cover.stratum()?.to_string(),
            component: classify_component(lift).ok().map(|c| c.to_string()),
            cylinders: (h.count(), v.count()),
            separating,
        })
    }

    /// Whether this is a [1,1]-cover in `c` with `case.separating()` separating cores.
    pub fn realises(&self, c: Component, case: Case) -> bool {
        self.component.as_deref() == Some(c.to_string().as_str())
            && self.cylinders == (1, 1)
            && self.separating == Some(case.separating())
    }
}

/// The first lift of `d` realising `(c, case)`, with its branch set.
pub fn realising_lift(d: &MeanderDiagram, c: Component, case: Case) -> Result<Option<(Lift, BranchSet, LiftSummary)>> {
    let m = CombinatorialMap::build(d)?;
    let ft = m.face_table()?;
    for b in profile_branch_sets(&m, &ft, c) {
        let (lift, _) = lift_with(&m, &b)?;
        let summary = LiftSummary::measure(&lift)?;
        if summary.realises(c, case) {
            return Ok(Some((lift, b, summary)));
        }
    }
    Ok(None)
}

/// Squares of the lift of `d`: two per crossing, one per crossing at a shared anchor.
pub fn lift_squares(d: &MeanderDiagram) -> usize {
    2 * d.n + d.shared_anchors()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Fewest squares over all realising lifts found.
    pub min_squares: Option<usize>,
    /// Largest number of crossing positions enumerated.
    pub searched_to: usize,
    pub budget: usize,
    /// Whether every diagram that could give fewer squares was searched.
    pub certified: bool,
    pub witness: Option<MeanderDiagram>,
}

/// Exhaustive search over lifts of every diagram of the kinds matching `case`, with up to
/// `budget` crossing positions, for the fewest squares realising `(c, case)`.
pub fn lift_oracle(c: Component, case: Case, budget: usize, mode: ExecMode) -> OracleResult {
    let mut best: Option<(usize, MeanderDiagram)> = None;
    let mut searched_to = 0;
    for n in 1..=budget {
        if best.as_ref().is_some_and(|(s, _)| 2 * n >= *s) {
            break;
        }
        searched_to = n;
        for &kind in case.kinds() {
            let q = EnumerationQuery::new(kind, n).shared_anchors(true);
            let diagrams = enumerate_with(&q, mode);
            let hits = map_ordered(mode, &diagrams, |d| matches!(realising_lift(d, c, case), Ok(Some(_))));
            for (d, hit) in diagrams.into_iter().zip(hits) {
                let s = lift_squares(&d);
                if hit && best.as_ref().is_none_or(|(b, _)| s < *b) {
                    best = Some((s, d));
                }
            }
        }
    }
    let certified = best.as_ref().is_some_and(|(s, _)| (s - 1) / 2 <= searched_to);
    OracleResult {
        min_squares: best.as_ref().map(|(s, _)| *s),
        searched_to,
        budget,
        certified,
        witness: best.map(|(_, d)| d),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Agree,
    ConstructionMismatch,
    OracleMismatch,
    BudgetExhausted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Verdict::Agree => "AGREE",
            Verdict::ConstructionMismatch => "CONSTRUCTION_MISMATCH",
            Verdict::OracleMismatch => "ORACLE_MISMATCH",
            Verdict::BudgetExhausted => "BUDGET_EXHAUSTED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub family: Family,
    pub params: Vec<i64>,
    pub crossings: usize,
    /// Measurements of the realising lift, absent when no branch set realises the target.
    pub lift: Option<LiftSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub row: TableRow,
    pub component: String,
    pub parameters: Component,
    pub case: Case,
    pub formula: usize,
    pub construction: ConstructionResult,
    pub oracle: OracleResult,
    pub verdict: Verdict,
}

/// Compares formula, construction and oracle for one component and case.
pub fn verify_row(c: Component, case: Case, budget: usize) -> Result<VerificationReport> {
    verify_row_with(c, case, budget, ExecMode::default())
}

pub fn verify_row_with(c: Component, case: Case, budget: usize, mode: ExecMode) -> Result<VerificationReport> {
    let formula = table_formula(c, case)?;
    let (family, params) = construction(c, case)?;
    let d = family.build(&params)?;
    let lift = realising_lift(&d, c, case)?.map(|(_, _, s)| s);
    let built = ConstructionResult { family, params, crossings: d.crossings(), lift };
    let oracle = lift_oracle(c, case, budget, mode);
    let construction_ok = built.lift.as_ref().is_some_and(|s| s.squares == formula);
    let verdict = if !construction_ok {
        Verdict::ConstructionMismatch
    } else if oracle.min_squares.is_some_and(|m| m < formula) {
        Verdict::OracleMismatch
    } else if !oracle.certified {
        Verdict::BudgetExhausted
    } else if oracle.min_squares != Some(formula) {
        Verdict::OracleMismatch
    } else {
        Verdict::Agree
    };
    Ok(VerificationReport {
        row: TableRow::of(c),
        component: c.to_string(),
        parameters: c,
        case,
        formula,
        construction: built,
        oracle,
        verdict,
    })
}

/// Verifies many rows, in parallel when `mode` allows, returning reports in input order.
pub fn verify_grid(items: &[(Component, Case)], budget: usize, mode: ExecMode) -> Vec<Result<VerificationReport>> {
    map_ordered(mode, items, |&(c, case)| verify_row_with(c, case, budget, ExecMode::Sequential))
}

/// The largest both-separating count among quadratic components of genus `g`, with a component
/// attaining it.
pub fn max_separating_squares(g: u32) -> (usize, Component) {
    Component::quadratic_of_genus(g)
        .into_iter()
        .map(|c| (table_formula(c, Case::BothSep).expect("quadratic rows have a both_sep entry"), c))
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
        .expect("every genus has a quadratic component")
}

/// A plain-text table of reports in the layout of the square-count table.
pub fn render_table(reports: &[VerificationReport]) -> String {
    let mut out = format!(
        "{:<24} {:<12} {:>7} {:>12} {:>8} {:<22}\n",
        "component", "case", "formula", "construction", "oracle", "verdict"
    );
    for r in reports {
        let built = r.construction.lift.as_ref().map_or("-".to_string(), |s| s.squares.to_string());
        let oracle = match (r.oracle.min_squares, r.oracle.certified) {
            (Some(m), true) => m.to_string(),
            (Some(m), false) => format!("<={m}?"),
            (None, _) => format!(">{}", 2 * r.oracle.searched_to),
        };
        out.push_str(&format!(
            "{:<24} {:<12} {:>7} {:>12} {:>8} {:<22}\n",
            r.component, r.case, r.formula, built, oracle, r.verdict
        ));
    }
    out
}
