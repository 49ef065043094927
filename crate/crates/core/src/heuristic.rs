//! Fast pipeline for crossing minimization under the red-edge constraint:
//! red selection, barycenter variants, red-swap local search, UNDEC sweeps.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::af::{compute_labeling, ArgumentationFramework, Extension, Label};
use crate::annotate::{
    build_annotations, detect_odd_cycles, select_red_strategy_a, select_red_strategy_b,
    AnnotationSet, RedStrategy,
};
use crate::error::LayoutError;
use crate::layout::{
    assign_layers, count_with_positions, partition_edges, CrossingReport, EdgePartition,
    LayeredDrawing, Layers,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub red_strategy: RedStrategy,
    /// Cap on outer barycenter rounds.
    pub max_rounds: usize,
    /// Cap on alternating UNDEC sweeps.
    pub undec_sweeps: usize,
    pub seed: u64,
    /// Shuffle the initial layer orders with `seed`; off by default.
    pub shuffle: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            red_strategy: RedStrategy::A,
            max_rounds: 20,
            undec_sweeps: 10,
            seed: 0,
            shuffle: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub drawing: LayeredDrawing,
    pub report: CrossingReport,
    pub annotations: AnnotationSet,
    pub odd_cycles: Vec<Vec<usize>>,
    pub partition: EdgePartition,
}

/// Adjacency views used by every barycenter variant.
struct Graph<'a> {
    partition: &'a EdgePartition,
    /// E1 neighbors (the endpoint in the other layer), with multiplicity.
    e1_nbrs: Vec<Vec<usize>>,
    /// E3 neighbors of UNDEC arguments (OUT endpoints).
    e3_nbrs: Vec<Vec<usize>>,
    /// E4 neighbors of UNDEC arguments, self-loops dropped.
    e4_nbrs: Vec<Vec<usize>>,
    attackers: BTreeMap<usize, Vec<usize>>,
}

impl<'a> Graph<'a> {
    fn new(partition: &'a EdgePartition) -> Self {
        let n = partition.num_arguments();
        let mut e1_nbrs = vec![Vec::new(); n];
        for &(a, b) in &partition.e1 {
            e1_nbrs[a].push(b);
            e1_nbrs[b].push(a);
        }
        let mut e3_nbrs = vec![Vec::new(); n];
        for &(a, b) in &partition.e3 {
            if partition.label(a) == Label::Undec {
                e3_nbrs[a].push(b);
            } else {
                e3_nbrs[b].push(a);
            }
        }
        let mut e4_nbrs = vec![Vec::new(); n];
        for &(a, b) in &partition.e4 {
            if a != b {
                e4_nbrs[a].push(b);
                e4_nbrs[b].push(a);
            }
        }
        Self {
            partition,
            e1_nbrs,
            e3_nbrs,
            e4_nbrs,
            attackers: partition.in_attackers(),
        }
    }

    fn count(&self, d: &LayeredDrawing) -> CrossingReport {
        count_with_positions(d, self.partition, &d.positions())
    }
}

/// Stable sort of `movable` by the mean position of each vertex's
/// neighbors; vertices without neighbors keep their current index as key.
fn barycenter_sort<F>(movable: &[usize], nbrs: F, pos: &[usize]) -> Vec<usize>
where
    F: Fn(usize) -> Vec<usize>,
{
    let mut keyed: Vec<(f64, usize)> = movable
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let ns = nbrs(v);
            let key = if ns.is_empty() {
                i as f64
            } else {
                ns.iter().map(|&u| pos[u] as f64).sum::<f64>() / ns.len() as f64
            };
            (key, v)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, v)| v).collect()
}

fn order_positions(order: &[usize], n: usize) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (i, &a) in order.iter().enumerate() {
        pos[a] = i;
    }
    pos
}

/// Reorders `movable_order` by barycenters of its neighbors in
/// `fixed_order`. `edges` may point either way and may mention other layers.
pub fn barycenter_reorder(
    movable_order: &[usize],
    fixed_order: &[usize],
    edges: &[(usize, usize)],
) -> Vec<usize> {
    let n = movable_order
        .iter()
        .chain(fixed_order)
        .chain(edges.iter().flat_map(|(a, b)| [a, b]))
        .map(|&a| a + 1)
        .max()
        .unwrap_or(0);
    let fixed_pos = order_positions(fixed_order, n);
    let movable: Vec<bool> = {
        let mut m = vec![false; n];
        movable_order.iter().for_each(|&a| m[a] = true);
        m
    };
    let mut nbrs = vec![Vec::new(); n];
    for &(a, b) in edges {
        if movable[a] && fixed_pos[b] != usize::MAX {
            nbrs[a].push(b);
        }
        if movable[b] && fixed_pos[a] != usize::MAX {
            nbrs[b].push(a);
        }
    }
    barycenter_sort(movable_order, |v| nbrs[v].clone(), &fixed_pos)
}

/// Makes OUT arguments with the same red source consecutive. Groups are
/// ordered by the mean current position of their members; order inside a
/// group is preserved.
pub fn group_out_by_red(drawing: &LayeredDrawing) -> Vec<usize> {
    // (red source, members as (position, argument))
    type Group = (Option<usize>, Vec<(usize, usize)>);
    let mut groups: Vec<Group> = Vec::new();
    let mut index: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &o) in drawing.out_order.iter().enumerate() {
        match drawing.red.get(&o) {
            Some(&s) => {
                let g = *index.entry(s).or_insert_with(|| {
                    groups.push((Some(s), Vec::new()));
                    groups.len() - 1
                });
                groups[g].1.push((i, o));
            }
            None => groups.push((None, vec![(i, o)])),
        }
    }
    let mut keyed: Vec<(f64, usize, Vec<usize>)> = groups
        .into_iter()
        .map(|(_, members)| {
            let mean = members.iter().map(|&(i, _)| i as f64).sum::<f64>() / members.len() as f64;
            (
                mean,
                members[0].0,
                members.into_iter().map(|(_, o)| o).collect(),
            )
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().flat_map(|(_, _, m)| m).collect()
}

/// Maximal runs of OUT arguments sharing a red source, as index ranges.
fn red_runs(drawing: &LayeredDrawing) -> Vec<std::ops::Range<usize>> {
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..=drawing.out_order.len() {
        let same = i < drawing.out_order.len() && {
            let prev = drawing.red.get(&drawing.out_order[i - 1]);
            prev.is_some() && prev == drawing.red.get(&drawing.out_order[i])
        };
        if !same {
            runs.push(start..i);
            start = i;
        }
    }
    runs
}

fn within_groups(g: &Graph, drawing: &LayeredDrawing) -> Vec<usize> {
    let in_pos = order_positions(&drawing.in_order, g.partition.num_arguments());
    let mut out = drawing.out_order.clone();
    for run in red_runs(drawing) {
        if run.len() > 1 {
            let sorted = barycenter_sort(&out[run.clone()], |v| g.e1_nbrs[v].clone(), &in_pos);
            out[run].copy_from_slice(&sorted);
        }
    }
    out
}

/// Barycenter reorder inside every red group against all E1 neighbors in IN;
/// group boundaries stay put.
pub fn reorder_within_groups(drawing: &LayeredDrawing, partition: &EdgePartition) -> Vec<usize> {
    within_groups(&Graph::new(partition), drawing)
}

/// Red sources in the order their groups appear in OUT.
fn required_source_order(drawing: &LayeredDrawing) -> Result<Vec<usize>, LayoutError> {
    let mut order: Vec<usize> = Vec::new();
    for &o in &drawing.out_order {
        if let Some(&s) = drawing.red.get(&o) {
            match order.last() {
                Some(&last) if last == s => {}
                _ if order.contains(&s) => return Err(LayoutError::GroupsNotConsecutive(s)),
                _ => order.push(s),
            }
        }
    }
    Ok(order)
}

/// Writes `sources` (in the given order) into the slots that red sources
/// occupy in `in_order`.
fn place_sources(in_order: &[usize], sources: &[usize], is_source: &[bool]) -> Vec<usize> {
    let mut next = sources.iter();
    in_order
        .iter()
        .map(|&a| {
            if is_source[a] {
                *next.next().expect("one slot per source")
            } else {
                a
            }
        })
        .collect()
}

fn source_mask(drawing: &LayeredDrawing, n: usize) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &s in drawing.red.values() {
        mask[s] = true;
    }
    mask
}

fn arg_bound(drawing: &LayeredDrawing) -> usize {
    drawing
        .in_order
        .iter()
        .chain(&drawing.out_order)
        .chain(drawing.red.keys())
        .map(|&a| a + 1)
        .max()
        .unwrap_or(0)
}

/// Permutes the red-source IN arguments among their own slots so that
/// their order matches their groups in OUT. Removes all red crossings.
pub fn reorder_in_red_sources(drawing: &LayeredDrawing) -> Result<Vec<usize>, LayoutError> {
    let required = required_source_order(drawing)?;
    let mask = source_mask(drawing, arg_bound(drawing));
    Ok(place_sources(&drawing.in_order, &required, &mask))
}

fn in_all(g: &Graph, drawing: &LayeredDrawing) -> Result<Vec<usize>, LayoutError> {
    let n = g.partition.num_arguments();
    let out_pos = order_positions(&drawing.out_order, n);
    let sorted = barycenter_sort(&drawing.in_order, |v| g.e1_nbrs[v].clone(), &out_pos);
    let required = required_source_order(drawing)?;
    Ok(place_sources(&sorted, &required, &source_mask(drawing, n)))
}

/// Barycenter reorder of all of IN, then red sources are reinserted into
/// their slots in the order REC demands.
pub fn reorder_in_all(
    drawing: &LayeredDrawing,
    partition: &EdgePartition,
) -> Result<Vec<usize>, LayoutError> {
    in_all(&Graph::new(partition), drawing)
}

/// One pass: OUT barycenter, then the four red-aware variants.
fn barycenter_sequence(g: &Graph, d: &mut LayeredDrawing) -> Result<(), LayoutError> {
    let n = g.partition.num_arguments();
    let in_pos = order_positions(&d.in_order, n);
    d.out_order = barycenter_sort(&d.out_order, |v| g.e1_nbrs[v].clone(), &in_pos);
    d.out_order = group_out_by_red(d);
    d.out_order = within_groups(g, d);
    d.in_order = reorder_in_red_sources(d)?;
    d.in_order = in_all(g, d)?;
    debug_assert!(d.validate(g.partition).is_ok());
    Ok(())
}

/// Repeats the sequence until the objective stops strictly decreasing.
/// The first pass is always kept because it establishes the REC.
fn refine(
    g: &Graph,
    mut d: LayeredDrawing,
    max_rounds: usize,
) -> Result<(LayeredDrawing, CrossingReport), LayoutError> {
    barycenter_sequence(g, &mut d)?;
    let mut report = g.count(&d);
    for _ in 1..max_rounds {
        let mut cand = d.clone();
        barycenter_sequence(g, &mut cand)?;
        let r = g.count(&cand);
        if r.weighted_objective < report.weighted_objective {
            d = cand;
            report = r;
        } else {
            break;
        }
    }
    Ok((d, report))
}

/// Tries every alternative IN attacker as the red edge of each OUT
/// argument; a swap is kept only if the weighted objective strictly drops.
pub fn local_search_red_swap(
    drawing: &LayeredDrawing,
    partition: &EdgePartition,
    config: &PipelineConfig,
) -> Result<LayeredDrawing, LayoutError> {
    let g = Graph::new(partition);
    let report = g.count(drawing);
    Ok(local_search(&g, drawing.clone(), report, config)?.0)
}

fn local_search(
    g: &Graph,
    mut current: LayeredDrawing,
    mut report: CrossingReport,
    config: &PipelineConfig,
) -> Result<(LayeredDrawing, CrossingReport), LayoutError> {
    let snapshot = current.out_order.clone();
    for o in snapshot {
        let Some(attackers) = g.attackers.get(&o) else {
            continue;
        };
        if attackers.len() < 2 {
            continue;
        }
        let in_pos = order_positions(&current.in_order, g.partition.num_arguments());
        let mut alternatives = attackers.clone();
        alternatives.sort_by_key(|&s| in_pos[s]);
        for s in alternatives {
            if current.red.get(&o) == Some(&s) {
                continue;
            }
            let mut cand = current.clone();
            cand.red.insert(o, s);
            let (cand, r) = refine(g, cand, config.max_rounds)?;
            if r.weighted_objective < report.weighted_objective && r.rec_violations == 0 {
                current = cand;
                report = r;
            }
        }
    }
    Ok((current, report))
}

/// Alternating UNDEC sweeps: barycenter against OUT over E3, then against
/// in-layer arc neighbors over E4. Each half-step is kept only if it helps.
fn order_undec(
    g: &Graph,
    mut d: LayeredDrawing,
    mut report: CrossingReport,
    sweeps: usize,
) -> (LayeredDrawing, CrossingReport) {
    let n = g.partition.num_arguments();
    for _ in 0..sweeps {
        let mut improved = false;
        for step in 0..2 {
            let mut cand = d.clone();
            cand.undec_order = if step == 0 {
                let out_pos = order_positions(&d.out_order, n);
                barycenter_sort(&d.undec_order, |v| g.e3_nbrs[v].clone(), &out_pos)
            } else {
                let undec_pos = order_positions(&d.undec_order, n);
                barycenter_sort(&d.undec_order, |v| g.e4_nbrs[v].clone(), &undec_pos)
            };
            let r = g.count(&cand);
            if r.weighted_objective < report.weighted_objective {
                d = cand;
                report = r;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    (d, report)
}

fn initial_drawing(layers: &Layers, config: &PipelineConfig) -> LayeredDrawing {
    let mut d = LayeredDrawing::from_layers(layers);
    if config.shuffle {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        d.in_order.shuffle(&mut rng);
        d.out_order.shuffle(&mut rng);
        d.undec_order.shuffle(&mut rng);
    }
    d
}

/// Runs the pipeline on an already partitioned instance.
pub fn run_pipeline_on(
    partition: &EdgePartition,
    layers: &Layers,
    config: &PipelineConfig,
) -> Result<PipelineOutput, LayoutError> {
    let g = Graph::new(partition);
    let mut d = initial_drawing(layers, config);
    d.red = match config.red_strategy {
        RedStrategy::A => select_red_strategy_a(partition, &d.in_order)?,
        RedStrategy::B => select_red_strategy_b(partition, &d.in_order)?,
    };
    debug_assert!(d.validate(partition).is_ok());
    let (d, report) = refine(&g, d, config.max_rounds.max(1))?;
    let (d, report) = local_search(&g, d, report, config)?;
    let (d, report) = if d.undec_order.is_empty() {
        (d, report)
    } else {
        order_undec(&g, d, report, config.undec_sweeps)
    };
    debug_assert!(d.validate(partition).is_ok());
    let odd_cycles = detect_odd_cycles(&d.undec_order, &partition.e4);
    let annotations = build_annotations(partition, &d.red, &odd_cycles);
    Ok(PipelineOutput {
        drawing: d,
        report,
        annotations,
        odd_cycles,
        partition: partition.clone(),
    })
}

/// Full pipeline from a framework and a conflict-free extension.
pub fn run_pipeline(
    af: &ArgumentationFramework,
    extension: &Extension,
    config: &PipelineConfig,
) -> Result<PipelineOutput, LayoutError> {
    if let Some(&(a, b)) = af
        .attacks()
        .iter()
        .find(|&&(a, b)| extension.contains(a) && extension.contains(b))
    {
        return Err(LayoutError::NotConflictFree {
            attacker: af.name(a).to_string(),
            target: af.name(b).to_string(),
        });
    }
    let labeling = compute_labeling(af, extension);
    let partition = partition_edges(af, &labeling);
    let layers = assign_layers(&labeling);
    run_pipeline_on(&partition, &layers, config)
}
