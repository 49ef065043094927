//! Benchmark harness: shrinking instances, timed heuristic and exact runs,
//! per-instance CSV records and a bucketed summary.

use std::io::{Read, Write};
use std::path::Path;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::af::{
    compute_labeling, grounded_extension, parse_af, parse_extension, ArgumentationFramework,
    Extension, Format,
};
use crate::error::{AfError, EvalError};
use crate::exact::{solve_exact, SolveStatus};
use crate::heuristic::{run_pipeline_on, PipelineConfig};
use crate::layout::{assign_layers, partition_edges};

/// Removes uniformly random arguments (with their attacks) down to
/// `target_arguments`, then uniformly random attacks down to
/// `target_attacks`. Deterministic for a given seed.
pub fn adapt_instance(
    af: &ArgumentationFramework,
    target_arguments: usize,
    target_attacks: usize,
    seed: u64,
) -> Result<ArgumentationFramework, AfError> {
    if target_arguments > af.len() {
        return Err(AfError::AdaptTarget {
            what: "arguments",
            target: target_arguments,
            current: af.len(),
        });
    }
    if target_attacks > af.num_attacks() {
        return Err(AfError::AdaptTarget {
            what: "attacks",
            target: target_attacks,
            current: af.num_attacks(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<usize> = (0..af.len()).collect();
    ids.shuffle(&mut rng);
    let mut keep = vec![true; af.len()];
    for &a in &ids[..af.len() - target_arguments] {
        keep[a] = false;
    }
    let reduced = af.induced(&keep);
    let mut attack_ids: Vec<usize> = (0..reduced.num_attacks()).collect();
    attack_ids.shuffle(&mut rng);
    let mut keep_attack = vec![true; reduced.num_attacks()];
    let excess = reduced.num_attacks().saturating_sub(target_attacks);
    for &k in &attack_ids[..excess] {
        keep_attack[k] = false;
    }
    Ok(reduced.with_attacks(&keep_attack))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionSource {
    Provided,
    GroundedFallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchInstance {
    pub id: String,
    pub af: ArgumentationFramework,
    pub extension: Extension,
    pub extension_source: ExtensionSource,
}

impl BenchInstance {
    pub fn with_extension(
        id: impl Into<String>,
        af: ArgumentationFramework,
        extension: Extension,
    ) -> Self {
        Self {
            id: id.into(),
            af,
            extension,
            extension_source: ExtensionSource::Provided,
        }
    }

    pub fn grounded(id: impl Into<String>, af: ArgumentationFramework) -> Self {
        let extension = grounded_extension(&af);
        Self {
            id: id.into(),
            af,
            extension,
            extension_source: ExtensionSource::GroundedFallback,
        }
    }

    /// Shrinks the framework and keeps the extension members that survive.
    pub fn adapt(
        &self,
        target_arguments: usize,
        target_attacks: usize,
        seed: u64,
    ) -> Result<Self, AfError> {
        let af = adapt_instance(&self.af, target_arguments, target_attacks, seed)?;
        let members: Vec<&str> = self
            .extension
            .names(&self.af)
            .into_iter()
            .filter(|n| af.id(n).is_some())
            .collect();
        let extension = Extension::from_names(&af, members)?;
        Ok(Self {
            id: format!("{}@{target_arguments}x{target_attacks}s{seed}", self.id),
            af,
            extension,
            extension_source: self.extension_source,
        })
    }
}

fn read_file(path: &Path) -> Result<String, EvalError> {
    std::fs::read_to_string(path).map_err(|source| EvalError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Loads every instance file (`.apx`, `.tgf`, `.af`, `.i23`) of `dir` in
/// name order. `<stem>.ext` next to an instance supplies its extension;
/// without one the grounded extension is used and flagged.
pub fn load_instance_dir(dir: &Path) -> Result<Vec<BenchInstance>, EvalError> {
    let io = |source| EvalError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let Some(format) = path
            .extension()
            .and_then(|e| e.to_str())
            .and_then(Format::from_extension)
        else {
            continue;
        };
        let id = path
            .file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        let parse_err = |source| EvalError::Parse {
            path: path.display().to_string(),
            source,
        };
        let af = parse_af(&read_file(&path)?, format).map_err(parse_err)?;
        let ext_path = path.with_extension("ext");
        if ext_path.exists() {
            let ext = parse_extension(&af, &read_file(&ext_path)?).map_err(|source| {
                EvalError::Parse {
                    path: ext_path.display().to_string(),
                    source,
                }
            })?;
            out.push(BenchInstance::with_extension(id, af, ext));
        } else {
            out.push(BenchInstance::grounded(id, af));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchConfig {
    pub exact_timeout_ms: u64,
    /// Exact runs are skipped above this `|A| + |R|`.
    pub exact_size_limit: usize,
    pub rec: bool,
    pub pipeline: PipelineConfig,
    /// Upper bounds of the size buckets; one more bucket collects the rest.
    pub buckets: Vec<usize>,
    pub parallel: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            exact_timeout_ms: 60_000,
            exact_size_limit: usize::MAX,
            rec: true,
            pipeline: PipelineConfig::default(),
            buckets: vec![100, 300],
            parallel: true,
        }
    }
}

/// One CSV row. Timing columns are the only nondeterministic ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: String,
    pub size: usize,
    pub arguments: usize,
    pub attacks: usize,
    pub in_size: usize,
    pub out_size: usize,
    pub undec_size: usize,
    pub layers: String,
    pub extension_source: ExtensionSource,
    pub heuristic_ms: f64,
    pub heuristic_objective: Option<u64>,
    pub heuristic_crossings: Option<u64>,
    pub exact_ms: Option<f64>,
    pub exact_objective: Option<u64>,
    pub exact_status: Option<SolveStatus>,
    /// Heuristic over exact objective; absent when the exact objective is 0.
    pub ratio: Option<f64>,
    /// Heuristic crossing count, recorded instead of a ratio when the exact
    /// objective is 0.
    pub absolute_crossings: Option<u64>,
    pub error: Option<String>,
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

pub fn run_instance(inst: &BenchInstance, config: &BenchConfig) -> BenchRecord {
    let labeling = compute_labeling(&inst.af, &inst.extension);
    let partition = partition_edges(&inst.af, &labeling);
    let layers = assign_layers(&labeling);
    let mut rec = BenchRecord {
        instance: inst.id.clone(),
        size: inst.af.size(),
        arguments: inst.af.len(),
        attacks: inst.af.num_attacks(),
        in_size: layers.in_layer.len(),
        out_size: layers.out_layer.len(),
        undec_size: layers.undec_layer.len(),
        layers: if layers.undec_layer.is_empty() {
            "2-layer"
        } else {
            "3-layer"
        }
        .into(),
        extension_source: inst.extension_source,
        heuristic_ms: 0.0,
        heuristic_objective: None,
        heuristic_crossings: None,
        exact_ms: None,
        exact_objective: None,
        exact_status: None,
        ratio: None,
        absolute_crossings: None,
        error: None,
    };
    if !partition.in_in_edges.is_empty() {
        rec.error = Some("extension is not conflict-free".into());
        return rec;
    }
    let start = Instant::now();
    let heuristic = run_pipeline_on(&partition, &layers, &config.pipeline);
    rec.heuristic_ms = ms(start);
    let heuristic = match heuristic {
        Ok(h) => h,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.heuristic_objective = Some(heuristic.report.weighted_objective);
    rec.heuristic_crossings = Some(heuristic.report.total());
    if rec.size > config.exact_size_limit {
        return rec;
    }
    let start = Instant::now();
    let exact = solve_exact(&partition, &layers, config.rec, config.exact_timeout_ms);
    rec.exact_ms = Some(ms(start));
    rec.exact_status = Some(exact.status);
    if exact.status == SolveStatus::Infeasible {
        return rec;
    }
    let e = exact.report.weighted_objective;
    rec.exact_objective = Some(e);
    if e == 0 {
        rec.absolute_crossings = Some(heuristic.report.total());
    } else {
        rec.ratio = Some(heuristic.report.weighted_objective as f64 / e as f64);
    }
    rec
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BucketSummary {
    pub label: String,
    pub instances: usize,
    pub mean_heuristic_ms: Option<f64>,
    pub exact_runs: usize,
    pub mean_exact_ms: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RatioSummary {
    pub with_ratio: usize,
    pub below_one: usize,
    pub at_most_two: usize,
    pub above_two: usize,
    pub median: Option<f64>,
    pub zero_optimum: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub buckets: Vec<BucketSummary>,
    pub ratios: RatioSummary,
}

fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

fn bucket_labels(bounds: &[usize]) -> Vec<String> {
    let mut labels = Vec::new();
    let mut lo = 0;
    for &hi in bounds {
        labels.push(format!("{lo}-{hi}"));
        lo = hi + 1;
    }
    labels.push(format!(">{}", bounds.last().copied().unwrap_or(0)));
    labels
}

/// Summary statistics computed from the records alone.
pub fn summarize(records: &[BenchRecord], bounds: &[usize]) -> BenchSummary {
    let labels = bucket_labels(bounds);
    let bucket_of = |size: usize| {
        bounds
            .iter()
            .position(|&b| size <= b)
            .unwrap_or(bounds.len())
    };
    let buckets = labels
        .into_iter()
        .enumerate()
        .map(|(k, label)| {
            let rs: Vec<&BenchRecord> = records
                .iter()
                .filter(|r| bucket_of(r.size) == k && r.heuristic_objective.is_some())
                .collect();
            let h: Vec<f64> = rs.iter().map(|r| r.heuristic_ms).collect();
            let e: Vec<f64> = rs.iter().filter_map(|r| r.exact_ms).collect();
            BucketSummary {
                label,
                instances: rs.len(),
                mean_heuristic_ms: mean(&h),
                exact_runs: e.len(),
                mean_exact_ms: mean(&e),
            }
        })
        .collect();
    let mut ratios: Vec<f64> = records.iter().filter_map(|r| r.ratio).collect();
    ratios.sort_by(f64::total_cmp);
    let median = match ratios.len() {
        0 => None,
        n if n % 2 == 1 => Some(ratios[n / 2]),
        n => Some((ratios[n / 2 - 1] + ratios[n / 2]) / 2.0),
    };
    BenchSummary {
        buckets,
        ratios: RatioSummary {
            with_ratio: ratios.len(),
            below_one: ratios.iter().filter(|&&r| r < 1.0).count(),
            at_most_two: ratios.iter().filter(|&&r| r <= 2.0).count(),
            above_two: ratios.iter().filter(|&&r| r > 2.0).count(),
            median,
            zero_optimum: records
                .iter()
                .filter(|r| r.absolute_crossings.is_some())
                .count(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub summary: BenchSummary,
}

/// Runs every instance; records come back sorted by instance id.
pub fn run_benchmark(instances: &[BenchInstance], config: &BenchConfig) -> BenchReport {
    let mut records: Vec<BenchRecord> = if config.parallel {
        instances
            .par_iter()
            .map(|i| run_instance(i, config))
            .collect()
    } else {
        instances.iter().map(|i| run_instance(i, config)).collect()
    };
    records.sort_by(|a, b| a.instance.cmp(&b.instance));
    let summary = summarize(&records, &config.buckets);
    BenchReport { records, summary }
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), EvalError> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(|source| EvalError::Io {
        path: "<csv>".into(),
        source,
    })?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>, EvalError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".into(), |x| format!("{x:.digits$}"))
}

/// Plain-text table of the summary.
pub fn format_summary(summary: &BenchSummary) -> String {
    let mut s = format!(
        "{:<10} {:>9} {:>14} {:>10} {:>14}\n",
        "size", "instances", "heuristic ms", "exact runs", "exact ms"
    );
    for b in &summary.buckets {
        s.push_str(&format!(
            "{:<10} {:>9} {:>14} {:>10} {:>14}\n",
            b.label,
            b.instances,
            opt(b.mean_heuristic_ms, 2),
            b.exact_runs,
            opt(b.mean_exact_ms, 1)
        ));
    }
    let r = &summary.ratios;
    s.push_str(&format!(
        "ratios: {} (below 1: {}, at most 2: {}, above 2: {}, median {}); zero optimum: {}\n",
        r.with_ratio,
        r.below_one,
        r.at_most_two,
        r.above_two,
        opt(r.median, 3),
        r.zero_optimum
    ));
    s
}
