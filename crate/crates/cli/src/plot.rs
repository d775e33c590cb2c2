//! SVG scatter of β1 bidegrees over the region boundary of {n_d ≥ 1}.

use std::fmt::Write;

use bigres::combinat::nd;
use bigres::BiDegree;

pub struct PlotSpec {
    pub d: BiDegree,
    pub bounds: BiDegree,
    /// (a1, a2, β)
    pub points: Vec<(i64, i64, usize)>,
}

const MARGIN: f64 = 48.0;
const SIZE: f64 = 520.0;

/// Unit segments of the boundary of {a : inside(a)} through cell-edge
/// midpoints, in grid coordinates.
pub fn level_segments(bounds: BiDegree, inside: impl Fn(i64, i64) -> bool) -> Vec<[(f64, f64); 2]> {
    let mut segs = Vec::new();
    for x in 0..bounds.a1 {
        for y in 0..bounds.a2 {
            let (fx, fy) = (x as f64, y as f64);
            let bl = inside(x, y);
            let br = inside(x + 1, y);
            let tr = inside(x + 1, y + 1);
            let tl = inside(x, y + 1);
            let bottom = (fx + 0.5, fy);
            let right = (fx + 1.0, fy + 0.5);
            let top = (fx + 0.5, fy + 1.0);
            let left = (fx, fy + 0.5);
            let mut edges = Vec::new();
            if bl != br {
                edges.push(bottom);
            }
            if br != tr {
                edges.push(right);
            }
            if tr != tl {
                edges.push(top);
            }
            if tl != bl {
                edges.push(left);
            }
            match edges.len() {
                2 => segs.push([edges[0], edges[1]]),
                // saddle: keep the inside corners separated
                4 if bl => {
                    segs.push([left, bottom]);
                    segs.push([right, top]);
                }
                4 => {
                    segs.push([bottom, right]);
                    segs.push([top, left]);
                }
                _ => {}
            }
        }
    }
    segs
}

pub fn emit_svg(spec: &PlotSpec) -> Result<String, String> {
    let b = spec.bounds;
    if b.a1 < 1 || b.a2 < 1 {
        return Err(format!("plot bounds {b} are degenerate"));
    }
    if let Some(p) = spec.points.iter().find(|p| p.0 < 0 || p.1 < 0 || p.0 > b.a1 || p.1 > b.a2) {
        return Err(format!("point ({},{}) lies outside {b}", p.0, p.1));
    }
    let sx = SIZE / b.a1 as f64;
    let sy = SIZE / b.a2 as f64;
    let px = |x: f64| MARGIN + x * sx;
    let py = |y: f64| MARGIN + SIZE - y * sy;
    let w = SIZE + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{w:.0}" viewBox="0 0 {w:.0} {w:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M {:.2} {:.2} L {:.2} {:.2} L {:.2} {:.2}" fill="none" stroke="black"/>"#,
        px(0.0),
        py(b.a2 as f64),
        px(0.0),
        py(0.0),
        px(b.a1 as f64),
        py(0.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">a1</text>"#,
        px(b.a1 as f64 / 2.0),
        py(0.0) + 32.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">a2</text>"#,
        px(0.0) - 30.0,
        py(b.a2 as f64 / 2.0)
    );
    for (x, y, label) in [
        (0.0, 0.0, "0".to_string()),
        (b.a1 as f64, 0.0, b.a1.to_string()),
    ] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{label}</text>"#,
            px(x),
            py(y) + 16.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{}</text>"#,
        px(0.0) - 6.0,
        py(b.a2 as f64) + 4.0,
        b.a2
    );
    let segs = level_segments(b, |x, y| nd(spec.d, bigres::bd(x, y)) >= 1);
    if !segs.is_empty() {
        let mut d = String::new();
        for [p, q] in &segs {
            let _ = write!(d, "M {:.2} {:.2} L {:.2} {:.2} ", px(p.0), py(p.1), px(q.0), py(q.1));
        }
        let _ = writeln!(s, r#"<path d="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#, d.trim_end());
    }
    for &(x, y, beta) in &spec.points {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="black"><title>({x},{y}): {beta}</title></circle>"#,
            px(x as f64),
            py(y as f64)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
