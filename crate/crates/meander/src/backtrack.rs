//! A second, structurally different enumerator: left-to-right backtracking over crossing states.
//!
//! Positions are scanned in order. At each one, every side either opens an arc, closes the most
//! recently opened arc on that side, or ends at an anchor. Open arcs form one stack per side,
//! so arcs never cross. A union-find with rollback tracks the transversal strand and rejects a
//! cycle unless it is the final arc of a closed meander. Semi-meanders run the same search on
//! the single circle of ports around the free end of the ray.

use crate::diagram::{AnchorEnd, Kind, MeanderDiagram, Side};
use crate::dsu::Dsu;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Open,
    Close,
    Anchor,
}

const STEPS: [Step; 3] = [Step::Open, Step::Close, Step::Anchor];

struct Search<'a, F: FnMut(MeanderDiagram)> {
    kind: Kind,
    n: usize,
    dsu: Dsu,
    stacks: [Vec<usize>; 2],
    arcs: [Vec<[usize; 2]>; 2],
    wrap: Vec<[usize; 2]>,
    anchors: Vec<AnchorEnd>,
    cycles: usize,
    emit: &'a mut F,
}

impl<F: FnMut(MeanderDiagram)> Search<'_, F> {
    fn anchors_allowed(&self) -> usize {
        self.kind.transversal_anchors()
    }

    fn finish(&mut self) {
        let want_cycles = usize::from(self.kind.transversal_closed());
        if self.stacks.iter().all(Vec::is_empty)
            && self.anchors.len() == self.anchors_allowed()
            && self.cycles == want_cycles
            && self.dsu.components() == 1
        {
            let d = MeanderDiagram::from_parts(
                self.kind,
                self.n,
                self.arcs[0].clone(),
                self.arcs[1].clone(),
                self.wrap.clone(),
                self.anchors.clone(),
            );
            (self.emit)(d);
        }
    }

    /// Side `s` (0 upper, 1 lower) of position `pos`; `last` marks the final port of the scan.
    fn side(&mut self, pos: usize, s: usize, last: bool, next: &mut dyn FnMut(&mut Self)) {
        let remaining = self.n - 1 - pos;
        for step in STEPS {
            match step {
                Step::Open => {
                    if self.stacks[s].len() + 1 > remaining {
                        continue;
                    }
                    self.stacks[s].push(pos);
                    next(self);
                    self.stacks[s].pop();
                }
                Step::Close => {
                    let Some(j) = self.stacks[s].pop() else { continue };
                    let merged = self.dsu.union(j, pos);
                    let allowed = merged || (self.kind.transversal_closed() && last && self.cycles == 0);
                    if allowed {
                        self.cycles += usize::from(!merged);
                        self.arcs[s].push([j, pos]);
                        next(self);
                        self.arcs[s].pop();
                        self.cycles -= usize::from(!merged);
                    }
                    self.dsu.undo();
                    self.stacks[s].push(j);
                }
                Step::Anchor => {
                    if self.anchors.len() >= self.anchors_allowed() {
                        continue;
                    }
                    let side = if s == 0 { Side::Upper } else { Side::Lower };
                    self.anchors.push(AnchorEnd::new(side, pos));
                    next(self);
                    self.anchors.pop();
                }
            }
        }
    }

    fn position(&mut self, pos: usize) {
        if pos == self.n {
            self.finish();
            return;
        }
        let last = pos + 1 == self.n;
        self.side(pos, 0, false, &mut |me: &mut Self| {
            me.side(pos, 1, last, &mut |me2: &mut Self| me2.position(pos + 1));
        });
    }

    /// Semi-meanders: slot `s < n` is the upper side of position `n-1-s`, slot `n+p` the lower
    /// side of `p`. One stack serves the whole circle.
    fn slot(&mut self, s: usize) {
        let n = self.n;
        if s == 2 * n {
            self.finish();
            return;
        }
        let (side, pos) = if s < n { (Side::Upper, n - 1 - s) } else { (Side::Lower, s - n) };
        let remaining = 2 * n - 1 - s;
        if self.stacks[0].len() < remaining {
            self.stacks[0].push(s);
            self.slot(s + 1);
            self.stacks[0].pop();
        }
        if let Some(t) = self.stacks[0].pop() {
            let other = if t < n { n - 1 - t } else { t - n };
            if self.dsu.union(other, pos) {
                if t < n && s < n {
                    self.arcs[0].push([other, pos]);
                } else if t >= n {
                    self.arcs[1].push([other, pos]);
                } else {
                    self.wrap.push([other, pos]);
                }
                self.slot(s + 1);
                if t < n && s < n {
                    self.arcs[0].pop();
                } else if t >= n {
                    self.arcs[1].pop();
                } else {
                    self.wrap.pop();
                }
            }
            self.dsu.undo();
            self.stacks[0].push(t);
        }
        if self.anchors.len() < 2 {
            self.anchors.push(AnchorEnd::new(side, pos));
            self.slot(s + 1);
            self.anchors.pop();
        }
    }
}

/// Calls `emit` on every plain diagram of `kind` with `n` positions.
pub fn for_each_backtracking(kind: Kind, n: usize, mut emit: impl FnMut(MeanderDiagram)) {
    if n == 0 || (kind == Kind::Closed && n % 2 == 1) {
        return;
    }
    let mut s = Search {
        kind,
        n,
        dsu: Dsu::new(n),
        stacks: [Vec::new(), Vec::new()],
        arcs: [Vec::new(), Vec::new()],
        wrap: Vec::new(),
        anchors: Vec::new(),
        cycles: 0,
        emit: &mut emit,
    };
    if kind == Kind::DoublyAnchoredSemi {
        s.slot(0);
    } else {
        s.position(0);
    }
}

pub fn enumerate_backtracking(kind: Kind, n: usize) -> Vec<MeanderDiagram> {
    let mut out = Vec::new();
    for_each_backtracking(kind, n, |d| out.push(d));
    out
}

pub fn count_backtracking(kind: Kind, n: usize) -> usize {
    let mut c = 0;
    for_each_backtracking(kind, n, |_| c += 1);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{count, enumerate_with, EnumerationQuery, ExecMode};

    #[test]
    fn agrees_with_matching_pairs() {
        for kind in Kind::ALL {
            for n in 1..=6 {
                let mut a = enumerate_with(&EnumerationQuery::new(kind, n), ExecMode::Sequential);
                let mut b = enumerate_backtracking(kind, n);
                a.sort();
                b.sort();
                assert_eq!(a, b, "{kind} n={n}");
            }
        }
    }

    #[test]
    fn closed_counts() {
        for n in [2, 4, 6, 8] {
            assert_eq!(count_backtracking(Kind::Closed, n), count(Kind::Closed, n, ExecMode::Sequential));
        }
    }
}
