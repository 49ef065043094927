//! Export of drawings: the versioned JSON document, its geometry and SVG.
//!
//! The document schema is described in `docs/drawing-document.md` at the
//! repository root.

mod geometry;
mod svg;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

pub use geometry::{layout_geometry, EdgeShape, PlacedEdge, PlacedVertex, Scene};
pub use geometry::{ARC_OPACITY, LAYER_GAP, VERTEX_GAP, VERTEX_RADIUS};
pub use svg::to_svg;

use crate::af::{ArgumentationFramework, Label, LayerAssignment};
use crate::annotate::{AnnotationSet, ArgumentDisplay, EdgeDisplay, RedStrategy};
use crate::error::DocumentError;
use crate::exact::SolveStatus;
use crate::layout::{
    count_crossings, partition_edges, CrossingReport, EdgeClass, EdgePartition, LayeredDrawing,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Colors per display class, as `#RRGGBB`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE", default, deny_unknown_fields)]
pub struct Palette {
    pub orange: String,
    pub red: String,
    pub odd_cycle: String,
    pub non_attacking_in: String,
    pub unattacked_undec: String,
    pub plain: String,
    pub long_flag: String,
}

impl Default for Palette {
    fn default() -> Self {
        Self {
            orange: "#E69F00".into(),
            red: "#D62728".into(),
            odd_cycle: "#8FD694".into(),
            non_attacking_in: "#86CEEB".into(),
            unattacked_undec: "#9467BD".into(),
            plain: "#444444".into(),
            long_flag: "#7F7F7F".into(),
        }
    }
}

impl Palette {
    pub fn edge(&self, d: EdgeDisplay) -> &str {
        match d {
            EdgeDisplay::Red => &self.red,
            EdgeDisplay::Orange => &self.orange,
            EdgeDisplay::OddCycle => &self.odd_cycle,
            EdgeDisplay::LongFlag => &self.long_flag,
            EdgeDisplay::Plain => &self.plain,
        }
    }

    pub fn argument(&self, d: ArgumentDisplay) -> &str {
        match d {
            ArgumentDisplay::OrangeAttacker => &self.orange,
            ArgumentDisplay::OddCycleMember => &self.odd_cycle,
            ArgumentDisplay::NonAttackingIn => &self.non_attacking_in,
            ArgumentDisplay::UnattackedUndec => &self.unattacked_undec,
            ArgumentDisplay::Plain => &self.plain,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub name: String,
    pub arguments: usize,
    pub attacks: usize,
}

/// Argument names per layer, top to bottom.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentLayers {
    #[serde(rename = "in")]
    pub in_layer: Vec<String>,
    #[serde(rename = "out")]
    pub out_layer: Vec<String>,
    #[serde(rename = "undec")]
    pub undec_layer: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentEdge {
    pub source: String,
    pub target: String,
    pub class: EdgeClass,
    pub display: EdgeDisplay,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMode {
    Heuristic,
    Exact,
    Both,
}

impl std::str::FromStr for SolveMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "heuristic" => Ok(SolveMode::Heuristic),
            "exact" => Ok(SolveMode::Exact),
            "both" => Ok(SolveMode::Both),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// How the drawing was obtained. Everything here is deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverInfo {
    pub mode: SolveMode,
    pub rec: bool,
    pub red_strategy: RedStrategy,
    pub seed: u64,
    /// Which run produced the embedded drawing.
    pub drawing_from: SolveMode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub heuristic_objective: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_objective: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_status: Option<SolveStatus>,
    /// Heuristic over exact objective, when both ran and the exact one is
    /// positive.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ratio: Option<f64>,
}

/// Wall-clock data, kept apart so comparisons can drop it.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub heuristic_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrawingDocument {
    pub schema_version: u32,
    pub instance: InstanceMeta,
    pub layers: DocumentLayers,
    pub edges: Vec<DocumentEdge>,
    pub argument_display: BTreeMap<String, ArgumentDisplay>,
    pub report: CrossingReport,
    pub palette: Palette,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub solver: Option<SolverInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

impl DrawingDocument {
    /// Assembles a document; the report is recounted from the drawing and
    /// the annotations are checked against the partition.
    pub fn new(
        name: impl Into<String>,
        af: &ArgumentationFramework,
        partition: &EdgePartition,
        drawing: &LayeredDrawing,
        annotations: &AnnotationSet,
    ) -> Result<Self, DocumentError> {
        drawing.validate(partition)?;
        annotations
            .validate(partition)
            .map_err(DocumentError::Annotations)?;
        let names = |order: &[usize]| order.iter().map(|&a| af.name(a).to_string()).collect();
        let edges = partition
            .classified()
            .map(|((s, t), class)| DocumentEdge {
                source: af.name(s).to_string(),
                target: af.name(t).to_string(),
                class,
                display: annotations
                    .edges
                    .get(&(s, t))
                    .copied()
                    .unwrap_or(EdgeDisplay::Plain),
            })
            .collect();
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            instance: InstanceMeta {
                name: name.into(),
                arguments: af.len(),
                attacks: af.num_attacks(),
            },
            layers: DocumentLayers {
                in_layer: names(&drawing.in_order),
                out_layer: names(&drawing.out_order),
                undec_layer: names(&drawing.undec_order),
            },
            edges,
            argument_display: annotations
                .arguments
                .iter()
                .enumerate()
                .map(|(a, &d)| (af.name(a).to_string(), d))
                .collect(),
            report: count_crossings(drawing, partition),
            palette: Palette::default(),
            solver: None,
            timing: None,
        })
    }

    /// Pretty-printed JSON with a trailing newline. Field order is fixed by
    /// the type and maps are sorted, so equal documents give equal bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    /// Parses and fully validates a document, including a recount of the
    /// embedded report.
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    /// Copy without the timing object.
    pub fn without_timing(&self) -> Self {
        Self {
            timing: None,
            ..self.clone()
        }
    }

    fn ids(&self) -> impl Iterator<Item = (&String, Label)> {
        self.layers
            .in_layer
            .iter()
            .map(|n| (n, Label::In))
            .chain(self.layers.out_layer.iter().map(|n| (n, Label::Out)))
            .chain(self.layers.undec_layer.iter().map(|n| (n, Label::Undec)))
    }

    /// Rebuilds framework, partition, drawing and annotations from the
    /// document. Argument indices follow layer order.
    pub fn reconstruct(
        &self,
    ) -> Result<
        (
            ArgumentationFramework,
            EdgePartition,
            LayeredDrawing,
            AnnotationSet,
        ),
        DocumentError,
    > {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::UnsupportedVersion(self.schema_version));
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut labels = Vec::new();
        for (name, label) in self.ids() {
            if index.insert(name.as_str(), labels.len()).is_some() {
                return Err(DocumentError::DuplicateId(name.clone()));
            }
            labels.push(label);
        }
        let mut attacks = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            match (index.get(e.source.as_str()), index.get(e.target.as_str())) {
                (Some(&s), Some(&t)) => attacks.push((s, t)),
                _ => {
                    return Err(DocumentError::UnknownId {
                        source_id: e.source.clone(),
                        target: e.target.clone(),
                    })
                }
            }
        }
        let names: Vec<String> = self.ids().map(|(n, _)| n.clone()).collect();
        let af = ArgumentationFramework::from_parts(names, attacks.iter().copied())
            .map_err(|e| DocumentError::Annotations(e.to_string()))?;
        let partition = partition_edges(&af, &LayerAssignment::from_labels(labels));

        let mut edge_displays = BTreeMap::new();
        let mut red = BTreeMap::new();
        for (e, &(s, t)) in self.edges.iter().zip(&attacks) {
            let expected = EdgeClass::of(partition.label(s), partition.label(t));
            if e.class != expected {
                return Err(DocumentError::ClassMismatch {
                    source_id: e.source.clone(),
                    target: e.target.clone(),
                    class: format!("{:?}", e.class),
                    expected: format!("{expected:?}"),
                });
            }
            edge_displays.insert((s, t), e.display);
            if e.display == EdgeDisplay::Red {
                red.insert(t, s);
            }
        }
        let arguments = (0..af.len())
            .map(|a| {
                self.argument_display
                    .get(af.name(a))
                    .copied()
                    .ok_or_else(|| {
                        DocumentError::Annotations(format!("no class for `{}`", af.name(a)))
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let known: BTreeSet<&str> = af.names().iter().map(String::as_str).collect();
        if let Some(extra) = self
            .argument_display
            .keys()
            .find(|k| !known.contains(k.as_str()))
        {
            return Err(DocumentError::Annotations(format!(
                "class given for unknown `{extra}`"
            )));
        }
        let annotations = AnnotationSet {
            edges: edge_displays,
            arguments,
        };
        annotations
            .validate(&partition)
            .map_err(DocumentError::Annotations)?;
        let n_in = self.layers.in_layer.len();
        let n_out = self.layers.out_layer.len();
        let drawing = LayeredDrawing {
            in_order: (0..n_in).collect(),
            out_order: (n_in..n_in + n_out).collect(),
            undec_order: (n_in + n_out..af.len()).collect(),
            red,
        };
        drawing.validate(&partition)?;
        Ok((af, partition, drawing, annotations))
    }

    pub fn validate(&self) -> Result<(), DocumentError> {
        let (_, partition, drawing, _) = self.reconstruct()?;
        if count_crossings(&drawing, &partition) != self.report {
            return Err(DocumentError::ReportMismatch);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::{compute_labeling, Extension};
    use crate::heuristic::{run_pipeline, PipelineConfig};

    pub(crate) fn sample_document() -> DrawingDocument {
        let af = ArgumentationFramework::from_named_attacks(
            &["a", "b", "c", "d", "e", "f", "g"],
            &[
                ("a", "c"),
                ("b", "d"),
                ("a", "d"),
                ("c", "d"),
                ("d", "e"),
                ("e", "f"),
                ("f", "g"),
                ("g", "e"),
                ("b", "c"),
            ],
        )
        .unwrap();
        let ext = Extension::from_names(&af, ["a", "b"]).unwrap();
        let out = run_pipeline(&af, &ext, &PipelineConfig::default()).unwrap();
        DrawingDocument::new(
            "sample",
            &af,
            &out.partition,
            &out.drawing,
            &out.annotations,
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let doc = sample_document();
        let text = doc.to_json();
        let back = DrawingDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
        assert_eq!(doc.argument_display["e"], ArgumentDisplay::OddCycleMember);
    }

    #[test]
    fn empty_framework() {
        let af = ArgumentationFramework::new();
        let ext = Extension::empty();
        let partition = partition_edges(&af, &compute_labeling(&af, &ext));
        let doc = DrawingDocument::new(
            "empty",
            &af,
            &partition,
            &LayeredDrawing::default(),
            &AnnotationSet::default(),
        )
        .unwrap();
        assert_eq!(doc.layers, DocumentLayers::default());
        assert!(DrawingDocument::from_json(&doc.to_json()).is_ok());
    }

    #[test]
    fn tampered_documents_rejected() {
        let doc = sample_document();
        let mut bad = doc.clone();
        bad.report.c4 += 1;
        assert!(matches!(bad.validate(), Err(DocumentError::ReportMismatch)));

        let mut bad = doc.clone();
        bad.layers.out_layer.push("a".into());
        assert!(matches!(bad.validate(), Err(DocumentError::DuplicateId(_))));

        let mut bad = doc.clone();
        bad.edges[0].class = EdgeClass::E4;
        assert!(matches!(
            bad.validate(),
            Err(DocumentError::ClassMismatch { .. })
        ));

        let mut bad = doc.clone();
        for e in &mut bad.edges {
            if e.display == EdgeDisplay::Red {
                e.display = EdgeDisplay::Orange;
            }
        }
        assert!(matches!(bad.validate(), Err(DocumentError::Annotations(_))));

        let mut bad = doc;
        bad.schema_version = 99;
        assert!(matches!(
            bad.validate(),
            Err(DocumentError::UnsupportedVersion(99))
        ));
        assert!(DrawingDocument::from_json("{").is_err());
    }

    #[test]
    fn swapped_layer_order_changes_report_check() {
        let mut doc = sample_document();
        doc.layers.out_layer.reverse();
        let (_, partition, drawing, _) = doc.reconstruct().unwrap();
        doc.report = count_crossings(&drawing, &partition);
        assert!(doc.validate().is_ok());
    }
}
