use std::fmt::Write;

use num_traits::ToPrimitive;

use super::{Drawing, Point};
use crate::complex::Triangulation;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 24.0;

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[Point]) -> Frame {
        let xy: Vec<(f64, f64)> = points.iter().map(to_f64).collect();
        let min_x = xy.iter().map(|p| p.0).fold(0.0, f64::min);
        let max_x = xy.iter().map(|p| p.0).fold(1.0, f64::max);
        let min_y = xy.iter().map(|p| p.1).fold(0.0, f64::min);
        let max_y = xy.iter().map(|p| p.1).fold(1.0, f64::max);
        let span = (max_x - min_x).max(max_y - min_y);
        Frame { min_x, max_y, scale: (SIZE - 2.0 * MARGIN) / span }
    }

    // SVG's y axis points down.
    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (MARGIN + (x - self.min_x) * self.scale, MARGIN + (self.max_y - y) * self.scale)
    }

    fn at(&self, p: &Point) -> (f64, f64) {
        self.map(to_f64(p))
    }
}

fn to_f64(p: &Point) -> (f64, f64) {
    (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0))
}

/// Deterministic SVG 1.1: shaded `Triangles(C)`, all edges, the unit-square
/// boundary, the condition line dashed, and vertex labels.
pub fn render_svg(t: &Triangulation, drawing: &Drawing) -> String {
    let cx = t.complex();
    let frame = Frame::fit(&drawing.placement);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let _ = writeln!(out, r##"<g fill="#b0b0b0" stroke="none">"##);
    for i in t.triangles_of_condition() {
        let pts: Vec<String> = cx
            .triangle(i)
            .vertices()
            .iter()
            .map(|&v| {
                let (x, y) = frame.at(drawing.point(v));
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g stroke="#333333" stroke-width="1">"##);
    for e in cx.edges() {
        let (x1, y1) = frame.at(drawing.point(e.lo));
        let (x2, y2) = frame.at(drawing.point(e.hi));
        let _ = writeln!(out, r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
    }
    let _ = writeln!(out, "</g>");

    let corners: Vec<String> = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
        .iter()
        .map(|&p| {
            let (x, y) = frame.map(p);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(out, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2.5"/>"#, corners.join(" "));

    if let Some((a, b)) = &drawing.line {
        let (ax, ay) = to_f64(a);
        let (bx, by) = to_f64(b);
        let len = ((bx - ax).powi(2) + (by - ay).powi(2)).sqrt();
        if len > 0.0 {
            // Long enough to leave the viewport on both sides.
            let reach = 2.0 * SIZE / frame.scale / len;
            let (x1, y1) = frame.map((ax - reach * (bx - ax), ay - reach * (by - ay)));
            let (x2, y2) = frame.map((ax + reach * (bx - ax), ay + reach * (by - ay)));
            let _ = writeln!(
                out,
                r##"<line class="condition" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#c03030" stroke-width="1.5" stroke-dasharray="6,4"/>"##
            );
        }
    }

    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="11">"#);
    for v in 0..cx.vertex_count() {
        let (x, y) = frame.at(&drawing.placement[v]);
        let fill = if t.in_condition(v as u32) { "#c03030" } else { "black" };
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="{fill}"/>"#);
        let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}">{v}</text>"#, x + 4.0, y - 4.0);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}
