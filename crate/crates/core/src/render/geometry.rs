use std::collections::HashMap;

use serde::Serialize;

use super::DrawingDocument;
use crate::af::Label;
use crate::annotate::{ArgumentDisplay, EdgeDisplay};
use crate::layout::EdgeClass;

/// Horizontal distance between consecutive layers.
pub const LAYER_GAP: f64 = 300.0;
/// Vertical distance between consecutive arguments of a layer.
pub const VERTEX_GAP: f64 = 60.0;
pub const VERTEX_RADIUS: f64 = 10.0;
/// Opacity of intra-layer arcs, which are drawn behind everything else.
pub const ARC_OPACITY: f64 = 0.55;

const LOOP_RADIUS: f64 = 12.0;
const LONG_MARGIN: f64 = 40.0;
const LONG_STEP: f64 = 12.0;

pub type Point = (f64, f64);

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EdgeShape {
    Segment {
        from: Point,
        to: Point,
    },
    /// Half circle right of the layer line through both endpoints.
    Arc {
        from: Point,
        to: Point,
        radius: f64,
    },
    /// Self-attack drawn as a small loop right of the vertex.
    Loop {
        at: Point,
        radius: f64,
    },
    Polyline {
        points: Vec<Point>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlacedVertex {
    pub id: String,
    pub layer: Label,
    pub x: f64,
    pub y: f64,
    pub display: ArgumentDisplay,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlacedEdge {
    pub source: String,
    pub target: String,
    pub class: EdgeClass,
    pub display: EdgeDisplay,
    pub dashed: bool,
    pub shape: EdgeShape,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Scene {
    pub vertices: Vec<PlacedVertex>,
    pub edges: Vec<PlacedEdge>,
    /// `(min_x, min_y, max_x, max_y)` of vertex centers and edge extents.
    pub bounds: (f64, f64, f64, f64),
}

fn layer_x(label: Label) -> f64 {
    match label {
        Label::In => 0.0,
        Label::Out => LAYER_GAP,
        Label::Undec => 2.0 * LAYER_GAP,
    }
}

/// Places layers at x = 0, 300, 600 and the k-th argument of a layer at
/// y = 60k. Edges between layers are straight, edges within a layer are
/// half circles bulging right, and IN-UNDEC edges are dashed polylines
/// routed right of everything else.
pub fn layout_geometry(doc: &DrawingDocument) -> Scene {
    let mut vertices = Vec::new();
    let mut at: HashMap<&str, (Point, Label)> = HashMap::new();
    for (label, layer) in [
        (Label::In, &doc.layers.in_layer),
        (Label::Out, &doc.layers.out_layer),
        (Label::Undec, &doc.layers.undec_layer),
    ] {
        for (k, id) in layer.iter().enumerate() {
            let p = (layer_x(label), VERTEX_GAP * k as f64);
            at.insert(id.as_str(), (p, label));
            vertices.push(PlacedVertex {
                id: id.clone(),
                layer: label,
                x: p.0,
                y: p.1,
                display: doc
                    .argument_display
                    .get(id)
                    .copied()
                    .unwrap_or(ArgumentDisplay::Plain),
            });
        }
    }
    let mut max_x: f64 = 2.0 * LAYER_GAP;
    let mut max_y: f64 = 0.0;
    for v in &vertices {
        max_y = max_y.max(v.y);
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    let mut long = Vec::new();
    for e in &doc.edges {
        let (Some(&(from, ls)), Some(&(to, lt))) =
            (at.get(e.source.as_str()), at.get(e.target.as_str()))
        else {
            continue;
        };
        let shape = if e.source == e.target {
            max_x = max_x.max(from.0 + 2.0 * LOOP_RADIUS);
            EdgeShape::Loop {
                at: from,
                radius: LOOP_RADIUS,
            }
        } else if ls == lt {
            let radius = (from.1 - to.1).abs() / 2.0;
            max_x = max_x.max(from.0 + radius);
            EdgeShape::Arc { from, to, radius }
        } else if e.class == EdgeClass::Long {
            long.push(edges.len());
            EdgeShape::Polyline {
                points: vec![from, to],
            }
        } else {
            EdgeShape::Segment { from, to }
        };
        edges.push(PlacedEdge {
            source: e.source.clone(),
            target: e.target.clone(),
            class: e.class,
            display: e.display,
            dashed: matches!(e.class, EdgeClass::Long | EdgeClass::InIn),
            shape,
        });
    }
    let route = max_x + LONG_MARGIN;
    for (k, &i) in long.iter().enumerate() {
        let x = route + LONG_STEP * k as f64;
        if let EdgeShape::Polyline { points } = &mut edges[i].shape {
            let (from, to) = (points[0], points[1]);
            *points = vec![from, (x, from.1), (x, to.1), to];
        }
        max_x = max_x.max(x);
    }
    Scene {
        vertices,
        edges,
        bounds: (0.0, 0.0, max_x, max_y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::tests::sample_document;
    use crate::render::DocumentLayers;

    #[test]
    fn one_argument_per_layer() {
        let mut doc = sample_document();
        doc.edges.clear();
        doc.layers = DocumentLayers {
            in_layer: vec!["a".into()],
            out_layer: vec!["b".into()],
            undec_layer: vec!["c".into()],
        };
        let scene = layout_geometry(&doc);
        let xy: Vec<Point> = scene.vertices.iter().map(|v| (v.x, v.y)).collect();
        assert_eq!(xy, [(0.0, 0.0), (300.0, 0.0), (600.0, 0.0)]);
    }

    #[test]
    fn arc_radius_is_half_the_span() {
        let doc = sample_document();
        let scene = layout_geometry(&doc);
        assert_eq!(scene.vertices.len(), 7);
        assert_eq!(scene.edges.len(), doc.edges.len());
        for e in &scene.edges {
            match &e.shape {
                EdgeShape::Arc { from, to, radius } => {
                    assert_eq!(from.0, to.0);
                    assert_eq!(*radius, (from.1 - to.1).abs() / 2.0);
                    assert!(matches!(
                        e.class,
                        EdgeClass::E2 | EdgeClass::E4 | EdgeClass::InIn
                    ));
                }
                EdgeShape::Segment { from, to } => assert_ne!(from.0, to.0),
                _ => {}
            }
        }
        // c-d within OUT plus the three-cycle on UNDEC, whose outer arc spans two slots
        let radii: Vec<f64> = scene
            .edges
            .iter()
            .filter_map(|e| match e.shape {
                EdgeShape::Arc { radius, .. } => Some(radius),
                _ => None,
            })
            .collect();
        assert_eq!(radii.len(), 4);
        assert!(radii.contains(&60.0));
    }

    #[test]
    fn long_edges_route_right() {
        use crate::af::{compute_labeling, ArgumentationFramework, Extension};
        use crate::annotate::build_annotations;
        use crate::layout::{partition_edges, LayeredDrawing};
        let af = ArgumentationFramework::from_named_attacks(
            &["a", "b", "c"],
            &[("b", "c"), ("c", "b"), ("c", "a")],
        )
        .unwrap();
        let ext = Extension::from_names(&af, ["a"]).unwrap();
        let partition = partition_edges(&af, &compute_labeling(&af, &ext));
        let drawing = LayeredDrawing {
            in_order: vec![0],
            out_order: vec![],
            undec_order: vec![1, 2],
            red: Default::default(),
        };
        let ann = build_annotations(&partition, &Default::default(), &[]);
        let doc = DrawingDocument::new("long", &af, &partition, &drawing, &ann).unwrap();
        let scene = layout_geometry(&doc);
        let long: Vec<_> = scene
            .edges
            .iter()
            .filter(|e| e.class == EdgeClass::Long)
            .collect();
        assert_eq!(long.len(), 1);
        assert!(long[0].dashed);
        match &long[0].shape {
            EdgeShape::Polyline { points } => {
                assert_eq!(points.len(), 4);
                assert!(points[1].0 > 600.0 + 30.0);
            }
            other => panic!("{other:?}"),
        }
    }
}
