//! Solve and verify requests shared by the command line and the service.

use std::fmt;
use std::time::Instant;

use aflayer::af::{is_admissible, is_complete, is_conflict_free, is_stable};
use aflayer::annotate::{build_annotations, detect_odd_cycles};
use aflayer::exact::{solve_exact_from, SolveStatus};
use aflayer::render::{SolveMode, SolverInfo, Timing};
use aflayer::{
    assign_layers, compute_labeling, grounded_extension, parse_af, partition_edges,
    ArgumentationFramework, DrawingDocument, Extension, Format, LayoutError, Palette,
    PipelineConfig, RedStrategy,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Grounded,
}

fn default_mode() -> SolveMode {
    SolveMode::Heuristic
}

fn default_rec() -> bool {
    true
}

fn default_timeout() -> u64 {
    10_000
}

/// Body of `POST /api/layout`; `aflayer solve` builds the same value from
/// its flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveRequest {
    /// Framework text in `format`.
    pub af: String,
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Extension as argument ids. Exclusive with `semantics`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semantics: Option<Semantics>,
    #[serde(default = "default_mode")]
    pub mode: SolveMode,
    #[serde(default = "default_rec")]
    pub rec: bool,
    #[serde(default = "default_timeout")]
    pub timeout_ms: u64,
    #[serde(default)]
    pub red_strategy: RedStrategy,
    #[serde(default)]
    pub seed: u64,
}

impl SolveRequest {
    pub fn new(af: impl Into<String>, format: Format) -> Self {
        Self {
            af: af.into(),
            format,
            name: None,
            extension: None,
            semantics: Some(Semantics::Grounded),
            mode: default_mode(),
            rec: true,
            timeout_ms: default_timeout(),
            red_strategy: RedStrategy::A,
            seed: 0,
        }
    }
}

/// Failure classes with stable machine-readable codes and exit statuses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    InvalidRequest(String),
    Parse(String),
    NotConflictFree(String),
    Infeasible(String),
    ExactTooLarge { size: usize, limit: usize },
    NotFound(String),
    Internal(String),
}

impl SolveError {
    pub fn code(&self) -> &'static str {
        match self {
            SolveError::InvalidRequest(_) => "INVALID_REQUEST",
            SolveError::Parse(_) => "PARSE_ERROR",
            SolveError::NotConflictFree(_) => "NOT_CONFLICT_FREE",
            SolveError::Infeasible(_) => "EXACT_INFEASIBLE",
            SolveError::ExactTooLarge { .. } => "EXACT_TOO_LARGE",
            SolveError::NotFound(_) => "NOT_FOUND",
            SolveError::Internal(_) => "INTERNAL",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            SolveError::InvalidRequest(_) | SolveError::Parse(_) => 2,
            SolveError::NotConflictFree(_) => 3,
            SolveError::Infeasible(_) => 4,
            SolveError::ExactTooLarge { .. }
            | SolveError::NotFound(_)
            | SolveError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::InvalidRequest(m) => write!(f, "invalid request: {m}"),
            SolveError::Parse(m) => write!(f, "parse error: {m}"),
            SolveError::NotConflictFree(m) => write!(f, "extension is not conflict-free: {m}"),
            SolveError::Infeasible(m) => {
                write!(f, "no drawing satisfies the red-edge constraint: {m}")
            }
            SolveError::ExactTooLarge { size, limit } => write!(
                f,
                "instance size {size} exceeds the exact-mode limit {limit}"
            ),
            SolveError::NotFound(m) => write!(f, "not found: {m}"),
            SolveError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for SolveError {}

impl From<LayoutError> for SolveError {
    fn from(e: LayoutError) -> Self {
        match e {
            LayoutError::NotConflictFree { .. } => SolveError::NotConflictFree(e.to_string()),
            LayoutError::UncoveredOut(_) => SolveError::Infeasible(e.to_string()),
            other => SolveError::Internal(other.to_string()),
        }
    }
}

pub fn parse_framework(text: &str, format: Format) -> Result<ArgumentationFramework, SolveError> {
    parse_af(text, format).map_err(|e| SolveError::Parse(e.to_string()))
}

/// Resolves the extension of a request; exactly one of the explicit list
/// and the semantics selector must be present.
pub fn resolve_extension(
    af: &ArgumentationFramework,
    extension: Option<&[String]>,
    semantics: Option<Semantics>,
) -> Result<Extension, SolveError> {
    match (extension, semantics) {
        (Some(ids), None) => {
            Extension::from_names(af, ids).map_err(|e| SolveError::Parse(e.to_string()))
        }
        (None, Some(Semantics::Grounded)) => Ok(grounded_extension(af)),
        (Some(_), Some(_)) => Err(SolveError::InvalidRequest(
            "give either an extension or a semantics, not both".into(),
        )),
        (None, None) => Err(SolveError::InvalidRequest(
            "an extension or a semantics is required".into(),
        )),
    }
}

fn ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Runs the requested solver(s) and assembles the document. The exact run
/// starts from the heuristic drawing; the document shows the exact drawing
/// whenever one ran.
pub fn solve(request: &SolveRequest, palette: &Palette) -> Result<DrawingDocument, SolveError> {
    if request.timeout_ms == 0 {
        return Err(SolveError::InvalidRequest(
            "timeout_ms must be positive".into(),
        ));
    }
    let af = parse_framework(&request.af, request.format)?;
    let extension = resolve_extension(&af, request.extension.as_deref(), request.semantics)?;
    solve_framework(&af, &extension, request, palette)
}

pub fn solve_framework(
    af: &ArgumentationFramework,
    extension: &Extension,
    request: &SolveRequest,
    palette: &Palette,
) -> Result<DrawingDocument, SolveError> {
    if let Some(&(a, b)) = af
        .attacks()
        .iter()
        .find(|&&(a, b)| extension.contains(a) && extension.contains(b))
    {
        return Err(SolveError::NotConflictFree(format!(
            "{} attacks {}",
            af.name(a),
            af.name(b)
        )));
    }
    let labeling = compute_labeling(af, extension);
    let partition = partition_edges(af, &labeling);
    let layers = assign_layers(&labeling);
    let config = PipelineConfig {
        red_strategy: request.red_strategy,
        seed: request.seed,
        ..PipelineConfig::default()
    };
    let mut timing = Timing::default();
    let start = Instant::now();
    let heuristic = aflayer::run_pipeline_on(&partition, &layers, &config)?;
    timing.heuristic_ms = Some(ms(start));
    let mut info = SolverInfo {
        mode: request.mode,
        rec: request.rec,
        red_strategy: request.red_strategy,
        seed: request.seed,
        drawing_from: SolveMode::Heuristic,
        heuristic_objective: None,
        exact_objective: None,
        exact_status: None,
        ratio: None,
    };
    if request.mode != SolveMode::Exact {
        info.heuristic_objective = Some(heuristic.report.weighted_objective);
    }
    let (drawing, annotations) = if request.mode == SolveMode::Heuristic {
        (heuristic.drawing, heuristic.annotations)
    } else {
        let start = Instant::now();
        let exact = solve_exact_from(
            &partition,
            &layers,
            request.rec,
            request.timeout_ms,
            heuristic.drawing.clone(),
        );
        timing.exact_ms = Some(ms(start));
        if exact.status == SolveStatus::Infeasible {
            return Err(SolveError::Infeasible(
                "some OUT argument has no attacker in the extension".into(),
            ));
        }
        let objective = exact.report.weighted_objective;
        info.exact_objective = Some(objective);
        info.exact_status = Some(exact.status);
        info.drawing_from = SolveMode::Exact;
        if request.mode == SolveMode::Both && objective > 0 {
            info.ratio = Some(heuristic.report.weighted_objective as f64 / objective as f64);
        }
        let cycles = detect_odd_cycles(&exact.drawing.undec_order, &partition.e4);
        let annotations = build_annotations(&partition, &exact.drawing.red, &cycles);
        (exact.drawing, annotations)
    };
    let name = request.name.clone().unwrap_or_else(|| "instance".into());
    let mut doc = DrawingDocument::new(name, af, &partition, &drawing, &annotations)
        .map_err(|e| SolveError::Internal(e.to_string()))?;
    doc.palette = palette.clone();
    doc.solver = Some(info);
    doc.timing = Some(timing);
    Ok(doc)
}

/// Semantic properties of an extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub conflict_free: bool,
    pub admissible: bool,
    pub complete: bool,
    pub stable: bool,
    /// Whether the set equals the grounded extension.
    pub grounded: bool,
    /// Whether the grounded extension is contained in the set.
    pub contains_grounded: bool,
    pub grounded_extension: Vec<String>,
}

pub fn verify(af: &ArgumentationFramework, extension: &Extension) -> VerifyReport {
    let g = grounded_extension(af);
    VerifyReport {
        conflict_free: is_conflict_free(af, extension),
        admissible: is_admissible(af, extension),
        complete: is_complete(af, extension),
        stable: is_stable(af, extension),
        grounded: &g == extension,
        contains_grounded: g.is_subset(extension),
        grounded_extension: g.names(af).into_iter().map(String::from).collect(),
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "conflict-free: {}", self.conflict_free)?;
        writeln!(f, "admissible: {}", self.admissible)?;
        writeln!(f, "complete: {}", self.complete)?;
        writeln!(f, "stable: {}", self.stable)?;
        writeln!(f, "grounded: {}", self.grounded)?;
        writeln!(f, "contains grounded: {}", self.contains_grounded)?;
        writeln!(
            f,
            "grounded extension: [{}]",
            self.grounded_extension.join(", ")
        )
    }
}
