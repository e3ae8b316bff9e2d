//! SVG 1.1 drawings: meanders as arc diagrams and square-tiled surfaces as a labelled row of
//! squares. All coordinates are integers.

use std::fmt::Write;

use crate::diagram::{HorizontalEnd, Kind, MeanderDiagram, Side};
use crate::surface::cover::{Dir, PillowcaseCover};
use crate::surface::cylinders::{cylinders, Direction};

const STEP: i64 = 40;
const MARGIN: i64 = 40;
const SQUARE: i64 = 60;

fn header(out: &mut String, width: i64, height: i64) {
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
}

fn dot(out: &mut String, x: i64, y: i64) {
    let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="4" fill="black"/>"#);
}

/// Arc diagram of a meander: the horizontal strand as a line, arcs as semicircles above and
/// below it, wrap arcs around the free end of a ray, anchors as dots.
pub fn render_diagram(d: &MeanderDiagram) -> String {
    let n = d.n as i64;
    let wraps = d.wrap.len() as i64;
    let left = MARGIN + STEP * (wraps + 1);
    let x = |p: usize| left + STEP * p as i64;
    let depth = |a: usize, b: usize| STEP * (a.abs_diff(b) as i64) / 2;
    let reach = d
        .upper
        .iter()
        .chain(&d.lower)
        .map(|&[a, b]| depth(a, b))
        .chain(d.wrap.iter().map(|&[u, l]| (x(u.max(l)) - MARGIN) / 2))
        .max()
        .unwrap_or(0)
        .max(STEP);
    let mid = MARGIN + reach;
    let width = x(d.n.saturating_sub(1)) + STEP + MARGIN;
    let height = 2 * mid;
    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(out, r#"<g fill="none" stroke-width="2">"#);
    let (x0, x1) = match d.kind {
        Kind::Closed | Kind::SinglyAnchored => (MARGIN / 2, width - MARGIN / 2),
        Kind::DoublyAnchoredOpen => (x(0) - STEP, x(d.n - 1) + STEP),
        Kind::DoublyAnchoredSemi => (x(0) - STEP / 2, width - MARGIN / 2),
    };
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{mid}" x2="{x1}" y2="{mid}" stroke="black"/>"#);
    for (arcs, sweep) in [(&d.upper, 1), (&d.lower, 0)] {
        for &[a, b] in arcs {
            let r = depth(a, b);
            let _ = writeln!(
                out,
                r#"<path d="M {} {mid} A {r} {r} 0 0 {sweep} {} {mid}" stroke="crimson"/>"#,
                x(a.min(b)),
                x(a.max(b))
            );
        }
    }
    // Wrap arcs pass around the free end on the left, the outermost one furthest out.
    for (i, &[u, l]) in d.wrap.iter().enumerate() {
        let turn = x0 - STEP * (wraps - i as i64) / 2;
        let (ru, rl) = ((x(u) - turn) / 2, (x(l) - turn) / 2);
        let _ = writeln!(
            out,
            r#"<path d="M {} {mid} A {ru} {ru} 0 0 0 {turn} {mid} A {rl} {rl} 0 0 0 {} {mid}" stroke="crimson"/>"#,
            x(u),
            x(l)
        );
    }
    for a in &d.anchors.transversal {
        let dir = if a.side == Side::Upper { -1 } else { 1 };
        match a.shared {
            None => {
                let y = mid + dir * STEP / 2;
                let _ = writeln!(out, r#"<line x1="{0}" y1="{mid}" x2="{0}" y2="{y}" stroke="crimson"/>"#, x(a.pos));
                dot(&mut out, x(a.pos), y);
            }
            Some(end) => {
                let target = if end == HorizontalEnd::Left { x0 } else { x1 };
                let r = (x(a.pos) - target).abs() / 2;
                let sweep = if (a.side == Side::Upper) == (target > x(a.pos)) { 1 } else { 0 };
                let _ = writeln!(
                    out,
                    r#"<path d="M {} {mid} A {r} {r} 0 0 {sweep} {target} {mid}" stroke="crimson"/>"#,
                    x(a.pos)
                );
            }
        }
    }
    let _ = writeln!(out, "</g>");
    match d.kind {
        Kind::DoublyAnchoredOpen => {
            dot(&mut out, x0, mid);
            dot(&mut out, x1, mid);
        }
        Kind::DoublyAnchoredSemi => dot(&mut out, x0, mid),
        _ => {}
    }
    for p in 0..d.n {
        let _ = writeln!(out, r#"<circle cx="{}" cy="{mid}" r="3" fill="black"/>"#, x(p));
    }
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="12">{} n={n}</text>"#,
        height - 8,
        d.kind
    );
    out.push_str("</svg>\n");
    out
}

/// Square order along the row: the horizontal core when it visits every square once, otherwise
/// index order.
fn row_order(c: &PillowcaseCover) -> Vec<usize> {
    if let Ok(h) = cylinders(c, Direction::Horizontal) {
        if h.count() == 1 && h.cylinders[0].core.squares.len() == c.squares() {
            return h.cylinders[0].core.squares.clone();
        }
    }
    (0..c.squares()).collect()
}

/// A square-tiled surface as a row of squares. Sides glued to each other carry the same
/// label; a label ending in `~` marks a half-turn gluing. East-west gluings between neighbours
/// in the row are drawn as shared edges.
pub fn render_cover(c: &PillowcaseCover) -> String {
    let order = row_order(c);
    let slot: Vec<usize> = {
        let mut s = vec![0; c.squares()];
        for (i, &q) in order.iter().enumerate() {
            s[q] = i;
        }
        s
    };
    let width = 2 * MARGIN + SQUARE * order.len() as i64;
    let height = 2 * MARGIN + SQUARE;
    let mut out = String::new();
    header(&mut out, width, height);
    let top = MARGIN;
    let mut label = vec![String::new(); 4 * c.squares()];
    let mut next = 0;
    for (a, b) in c.gluings() {
        let neighbours = a != b
            && a % 4 == Dir::E.index()
            && b % 4 == Dir::W.index()
            && slot[b / 4] == slot[a / 4] + 1;
        let neighbours = neighbours
            || (a != b && a % 4 == Dir::W.index() && b % 4 == Dir::E.index() && slot[a / 4] == slot[b / 4] + 1);
        if neighbours {
            continue;
        }
        let text = if a == b {
            "fold".to_string()
        } else {
            let flip = if c.flip(a) == 1 { "~" } else { "" };
            format!("{next}{flip}")
        };
        next += usize::from(a != b);
        label[a] = text.clone();
        label[b] = text;
    }
    for (i, &q) in order.iter().enumerate() {
        let x = MARGIN + SQUARE * i as i64;
        let _ = writeln!(
            out,
            r#"<rect x="{x}" y="{top}" width="{SQUARE}" height="{SQUARE}" fill="lavender" stroke="black" stroke-width="2"/>"#
        );
        if c.is_half(q) {
            let _ = writeln!(
                out,
                r#"<line x1="{x}" y1="{}" x2="{}" y2="{top}" stroke="gray" stroke-dasharray="4 3"/>"#,
                top + SQUARE,
                x + SQUARE
            );
        }
        let (cx, cy) = (x + SQUARE / 2, top + SQUARE / 2);
        let _ = writeln!(
            out,
            r#"<text x="{cx}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="14">{q}</text>"#,
            cy + 5
        );
        let spots = [
            (x + SQUARE - 4, cy + 4, "end"),
            (cx, top - 6, "middle"),
            (x + 4, cy + 4, "start"),
            (cx, top + SQUARE + 16, "middle"),
        ];
        for (d, &(lx, ly, anchor)) in spots.iter().enumerate() {
            let text = &label[4 * q + d];
            if !text.is_empty() {
                let _ = writeln!(
                    out,
                    r#"<text x="{lx}" y="{ly}" text-anchor="{anchor}" font-family="sans-serif" font-size="11" fill="navy">{text}</text>"#
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
