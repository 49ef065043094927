//! Three-layer drawings of abstract argumentation frameworks.
//!
//! Arguments are placed on an IN, an OUT and an UNDEC layer according to an
//! extension. Layer orders are chosen to minimize edge crossings, with
//! IN-OUT crossings taking strict priority, optionally under the constraint
//! that highlighted witness edges never cross.

pub mod af;
pub mod annotate;
pub mod error;
pub mod evaluation;
pub mod exact;
pub mod generate;
pub mod heuristic;
pub mod layout;
pub mod render;

pub use af::{
    compute_labeling, grounded_extension, parse_af, parse_extension, serialize_af,
    ArgumentationFramework, Extension, Format, Label, LayerAssignment,
};
pub use annotate::{AnnotationSet, ArgumentDisplay, EdgeDisplay, RedStrategy};
pub use error::{AfError, DocumentError, EvalError, ExactError, LayoutError, LpError, ParseError};
pub use heuristic::{run_pipeline, run_pipeline_on, PipelineConfig, PipelineOutput};
pub use layout::{
    assign_layers, count_crossings, partition_edges, satisfies_rec, CrossingReport, EdgeClass,
    EdgePartition, LayeredDrawing, Layers,
};
pub use render::{layout_geometry, to_svg, DrawingDocument, Palette};
