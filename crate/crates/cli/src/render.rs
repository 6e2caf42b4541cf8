//! Plain-text table and SVG renderings.

use std::fmt::Write as _;

use paradoxlab_core::geometry::Primitive;
use paradoxlab_core::Point;

use crate::run::{GeometryOutput, RunOutput};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Shortest round-trip decimal with negative zero folded to zero.
fn num(x: f64) -> String {
    format!("{}", x + 0.0)
}

pub fn table(out: &RunOutput) -> String {
    let header = ["n", "closed form", "float", "oracle", "|Δ|", "sup-distance"];
    let rows: Vec<[String; 6]> = out
        .reports
        .iter()
        .map(|r| {
            let closed = if r.quantity == "length" {
                r.closed_form.to_string()
            } else {
                format!("{}: {}", r.quantity, r.closed_form)
            };
            [
                r.n.to_string(),
                closed,
                num(r.float_value),
                num(r.oracle_value),
                format!("{:.3e}", r.discrepancy()),
                r.sup_distance.map(num).unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut s = String::new();
    let line = |s: &mut String, cells: &[&str]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        s.push_str(padded.join("  ").trim_end());
        s.push('\n');
    };
    line(&mut s, &header);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    line(&mut s, &rule.iter().map(String::as_str).collect::<Vec<_>>());
    for row in &rows {
        line(&mut s, &row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    let mut verdicts: Vec<&str> = out.reports.iter().map(|r| r.verdict.as_str()).collect();
    verdicts.dedup();
    for v in verdicts {
        let _ = writeln!(s, "verdict: {v}");
    }
    let _ = writeln!(s, "oracle: {}", if out.ok { "ok" } else { "FAILED" });
    s
}

/// Coordinates within `eps` of zero are written as 0.
fn flip(p: Point, eps: f64) -> String {
    let snap = |v: f64| if v.abs() < eps { 0.0 } else { v };
    format!("{} {}", num(snap(p.x)), num(snap(-p.y)))
}

fn arc_command(d: &mut String, center: Point, radius: f64, from: f64, sweep: f64, eps: f64) {
    // y is flipped, so counterclockwise in the plane is the negative-angle SVG direction
    let sweep_flag = if sweep > 0.0 { 0 } else { 1 };
    let end = Point::new(center.x + radius * (from + sweep).cos(), center.y + radius * (from + sweep).sin());
    let r = num(radius);
    let _ = write!(d, " A {r} {r} 0 0 {sweep_flag} {}", flip(end, eps));
}

fn path_data(prims: &[Primitive<f64>], eps: f64) -> String {
    let mut d = String::new();
    let mut at: Option<Point> = None;
    for prim in prims {
        let start = prim.start();
        if at.is_none_or(|p| p.distance(&start) > eps) {
            let _ = write!(d, "{}M {}", if d.is_empty() { "" } else { " " }, flip(start, eps));
        }
        match *prim {
            Primitive::Segment { b, .. } => {
                let _ = write!(d, " L {}", flip(b, eps));
            }
            Primitive::Arc {
                center,
                radius,
                start_angle,
                ..
            } => {
                // split so each piece spans at most a half turn
                let sweep = prim.sweep();
                let pieces = if sweep.abs() > std::f64::consts::PI { 2 } else { 1 };
                let step = sweep / pieces as f64;
                for i in 0..pieces {
                    arc_command(&mut d, center, radius, start_angle + step * i as f64, step, eps);
                }
            }
        }
        at = Some(prim.end());
    }
    d
}

/// The curves with y pointing up and a 5% margin around their bounds.
pub fn svg(geom: &GeometryOutput) -> String {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for c in &geom.curves {
        let (a, b) = c.curve.bounds();
        lo = Point::new(lo.x.min(a.x), lo.y.min(a.y));
        hi = Point::new(hi.x.max(b.x), hi.y.max(b.y));
    }
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let extent = w.max(h).max(f64::MIN_POSITIVE);
    let margin = 0.05 * extent;
    let eps = 1e-12 * extent;
    let view = [lo.x - margin, -hi.y - margin, w + 2.0 * margin, h + 2.0 * margin];
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" data-paradox=\"{}\">",
        num(view[0]),
        num(view[1]),
        num(view[2]),
        num(view[3]),
        geom.paradox
    );
    for (i, c) in geom.curves.iter().enumerate() {
        let _ = writeln!(
            s,
            "  <path data-label=\"{}\" d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>",
            c.label,
            path_data(c.curve.primitives(), eps),
            PALETTE[i % PALETTE.len()]
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Paradox, Params};
    use crate::run::{geometry, run, Settings};
    use paradoxlab_core::Orientation;

    fn params(p: Paradox, kv: &[(&str, &str)]) -> Params {
        Params::parse(p, kv.iter().copied()).unwrap()
    }

    #[test]
    fn semicircle_table_row() {
        let out = run(&params(Paradox::Staircase, &[("n", "4")]), &Settings::default()).unwrap();
        let t = table(&out);
        let lines: Vec<&str> = t.lines().collect();
        assert!(lines[0].starts_with("n  closed form"));
        assert!(lines[5].starts_with("4  π·1"), "{t}");
        assert!(lines[5].contains("3.14159"));
        assert!(t.contains("oracle: ok"));
    }

    #[test]
    fn semicircle_svg_uses_upper_arcs() {
        let g = geometry(&params(Paradox::Staircase, &[("n", "1"), ("R", "1")])).unwrap();
        let svg = svg(&g);
        // clockwise from (0,0) over the top to (2,0): in flipped coordinates the arc bulges to negative y
        assert!(svg.contains("M 0 0 A 1 1 0 0 1 2 0"), "{svg}");
        assert!(svg.contains("viewBox=\"-0.1 -1.1 2.2 1.2\""), "{svg}");
    }

    #[test]
    fn full_turns_are_split() {
        let circle = Primitive::arc(Point::new(0.0, 0.0), 1.0, 0.0, 2.0 * std::f64::consts::PI, Orientation::Ccw);
        let d = path_data(&[circle], 1e-12);
        assert_eq!(d.matches(" A ").count(), 2);
    }
}
