use std::fmt::Write;

use super::geometry::{layout_geometry, EdgeShape, PlacedEdge, Scene};
use super::geometry::{ARC_OPACITY, VERTEX_RADIUS};
use super::{DrawingDocument, Palette};
use crate::annotate::EdgeDisplay;

const MARGIN: f64 = 80.0;
const ARROW_LEN: f64 = 10.0;

const DISPLAYS: [(EdgeDisplay, &str); 5] = [
    (EdgeDisplay::Red, "red"),
    (EdgeDisplay::Orange, "orange"),
    (EdgeDisplay::OddCycle, "odd-cycle"),
    (EdgeDisplay::LongFlag, "long-flag"),
    (EdgeDisplay::Plain, "plain"),
];

fn slug(d: EdgeDisplay) -> &'static str {
    DISPLAYS
        .iter()
        .find(|(x, _)| *x == d)
        .map(|(_, s)| *s)
        .unwrap_or("plain")
}

/// Shortest decimal form with at most two fractional digits.
fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn path_data(shape: &EdgeShape) -> String {
    match shape {
        EdgeShape::Segment { from, to } => {
            format!(
                "M{},{} L{},{}",
                num(from.0),
                num(from.1),
                num(to.0),
                num(to.1)
            )
        }
        EdgeShape::Arc { from, to, radius } => {
            // clockwise when going down, counter-clockwise going up: both bulge right
            let sweep = u8::from(to.1 > from.1);
            format!(
                "M{},{} A{r},{r} 0 0,{sweep} {},{}",
                num(from.0),
                num(from.1),
                num(to.0),
                num(to.1),
                r = num(*radius)
            )
        }
        EdgeShape::Loop { at, radius } => format!(
            "M{},{} A{r},{r} 0 1,1 {},{}",
            num(at.0 + VERTEX_RADIUS * 0.6),
            num(at.1 - VERTEX_RADIUS * 0.8),
            num(at.0 + VERTEX_RADIUS * 0.6),
            num(at.1 + VERTEX_RADIUS * 0.8),
            r = num(*radius)
        ),
        EdgeShape::Polyline { points } => {
            let mut d = String::new();
            for (k, p) in points.iter().enumerate() {
                let _ = write!(
                    d,
                    "{}{},{}",
                    if k == 0 { "M" } else { " L" },
                    num(p.0),
                    num(p.1)
                );
            }
            d
        }
    }
}

fn edge_element(out: &mut String, e: &PlacedEdge, palette: &Palette) {
    let width = if e.display == EdgeDisplay::Red {
        2.5
    } else {
        1.5
    };
    let dash = if e.dashed {
        " stroke-dasharray=\"6,4\""
    } else {
        ""
    };
    let _ = writeln!(
        out,
        "    <path class=\"edge {}\" d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"{} marker-end=\"url(#arrow-{})\"/>",
        slug(e.display),
        path_data(&e.shape),
        escape(palette.edge(e.display)),
        num(width),
        dash,
        slug(e.display),
    );
}

fn render_scene(scene: &Scene, palette: &Palette) -> String {
    let (x0, y0, x1, y1) = scene.bounds;
    let (vx, vy) = (x0 - MARGIN, y0 - MARGIN);
    let (w, h) = (x1 - x0 + 2.0 * MARGIN, y1 - y0 + 2.0 * MARGIN);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(w),
        num(h),
        num(vx),
        num(vy),
        num(w),
        num(h)
    );
    out.push_str("  <defs>\n");
    for (d, name) in DISPLAYS {
        let _ = writeln!(
            out,
            "    <marker id=\"arrow-{name}\" markerWidth=\"{len}\" markerHeight=\"8\" refX=\"{}\" refY=\"4\" orient=\"auto\" markerUnits=\"userSpaceOnUse\" overflow=\"visible\"><polygon points=\"0,0 {len},4 0,8\" fill=\"{}\"/></marker>",
            num(ARROW_LEN + VERTEX_RADIUS),
            escape(palette.edge(d)),
            len = num(ARROW_LEN),
        );
    }
    out.push_str("  </defs>\n");

    let is_arc =
        |e: &&PlacedEdge| matches!(e.shape, EdgeShape::Arc { .. } | EdgeShape::Loop { .. });
    let _ = writeln!(out, "  <g class=\"arcs\" opacity=\"{}\">", num(ARC_OPACITY));
    for e in scene.edges.iter().filter(is_arc) {
        edge_element(&mut out, e, palette);
    }
    out.push_str("  </g>\n  <g class=\"edges\">\n");
    // red edges last so they stay on top of the orange ones
    let proper: Vec<&PlacedEdge> = scene.edges.iter().filter(|e| !is_arc(e)).collect();
    for e in proper.iter().filter(|e| e.display != EdgeDisplay::Red) {
        edge_element(&mut out, e, palette);
    }
    for e in proper.iter().filter(|e| e.display == EdgeDisplay::Red) {
        edge_element(&mut out, e, palette);
    }
    out.push_str("  </g>\n  <g class=\"vertices\" stroke=\"#222222\" stroke-width=\"1\">\n");
    for v in &scene.vertices {
        let _ = writeln!(
            out,
            "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            num(v.x),
            num(v.y),
            num(VERTEX_RADIUS),
            escape(palette.argument(v.display))
        );
    }
    out.push_str(
        "  </g>\n  <g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">\n",
    );
    for v in &scene.vertices {
        let _ = writeln!(
            out,
            "    <text x=\"{}\" y=\"{}\">{}</text>",
            num(v.x - VERTEX_RADIUS - 4.0),
            num(v.y + 4.0),
            escape(&v.id)
        );
    }
    out.push_str("  </g>\n</svg>\n");
    out
}

/// SVG 1.1 rendering of a document with its own palette. Arcs go first at
/// reduced opacity, then straight and routed edges, vertices and labels.
pub fn to_svg(doc: &DrawingDocument) -> String {
    render_scene(&layout_geometry(doc), &doc.palette)
}
