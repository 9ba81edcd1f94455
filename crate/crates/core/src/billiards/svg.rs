//! SVG drawing of a billiard path in its triangle.

use std::fmt::Write;

use super::{BilliardSequence, TrianglePlacement};
use crate::plane::Scalar;

const SIZE: f64 = 400.0;
const PAD: f64 = 20.0;

/// Triangle outline, edge labels and the path as a polyline. Coordinates
/// are printed with fixed precision, so the output is deterministic.
pub fn to_svg<F: Scalar>(t: &TrianglePlacement, seq: &BilliardSequence<F>) -> String {
    let map = |x: f64, y: f64| (PAD + x * SIZE, PAD + (1.0 - y) * SIZE);
    let mut out = String::new();
    let w = SIZE + 2.0 * PAD;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{w:.0}" viewBox="0 0 {w:.0} {w:.0}">"#
    )
    .unwrap();
    let tri: Vec<String> = t
        .vertices
        .iter()
        .map(|v| {
            let (x, y) = map(v.x.to_f64(), v.y.to_f64());
            format!("{x:.3},{y:.3}")
        })
        .collect();
    writeln!(
        out,
        r#"  <polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        tri.join(" ")
    )
    .unwrap();
    for e in &t.edges {
        let (a, b) = (&t.vertices[e.from], &t.vertices[e.to]);
        let (x, y) = map((a.x.to_f64() + b.x.to_f64()) / 2.0, (a.y.to_f64() + b.y.to_f64()) / 2.0);
        writeln!(
            out,
            r#"  <text x="{x:.3}" y="{y:.3}" font-size="14">{{{}}}</text>"#,
            e.label
        )
        .unwrap();
    }
    let path: Vec<String> = seq
        .points
        .iter()
        .map(|p| {
            let (x, y) = map(p.x.to_f64(), p.y.to_f64());
            format!("{x:.3},{y:.3}")
        })
        .collect();
    writeln!(
        out,
        r#"  <polyline points="{}" fill="none" stroke="crimson" stroke-width="1.5"/>"#,
        path.join(" ")
    )
    .unwrap();
    if let Some(p) = seq.points.first() {
        let (x, y) = map(p.x.to_f64(), p.y.to_f64());
        writeln!(out, r#"  <circle cx="{x:.3}" cy="{y:.3}" r="4" fill="crimson"/>"#).unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}
