//! Exhaustive reference solver for small instances.
//!
//! The objective splits as `W*c1(IN, OUT) + c2(OUT) + c3(OUT, UNDEC) +
//! c4(UNDEC)` and the red-edge constraint only involves IN and OUT, so for
//! every OUT permutation the IN and UNDEC permutations are minimized
//! separately. Red selections are enumerated literally.

use std::time::Instant;

use super::search::{SolveResult, SolveStatus};
use crate::af::Label;
use crate::error::ExactError;
use crate::layout::{count_crossings, EdgePartition, LayeredDrawing, Layers};

pub const ORACLE_LAYER_LIMIT: usize = 7;
pub const ORACLE_RED_LIMIT: u64 = 10_000;

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

fn place(order: &[usize], pos: &mut [usize]) {
    for (i, &a) in order.iter().enumerate() {
        pos[a] = i;
    }
}

/// Straight edges between two layers; each edge given as (left, right).
fn proper_crossings(edges: &[(usize, usize)], pos: &[usize]) -> u64 {
    let mut n = 0;
    for (k, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[k + 1..] {
            if a == c || b == d {
                continue;
            }
            if (pos[a] < pos[c]) != (pos[b] < pos[d]) {
                n += 1;
            }
        }
    }
    n
}

fn arc_crossings(edges: &[(usize, usize)], pos: &[usize]) -> u64 {
    let mut n = 0;
    for (k, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[k + 1..] {
            if a == c || a == d || b == c || b == d || a == b || c == d {
                continue;
            }
            let inside = |x: usize| {
                let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
                lo < pos[x] && pos[x] < hi
            };
            if inside(c) != inside(d) {
                n += 1;
            }
        }
    }
    n
}

fn oriented(
    edges: &[(usize, usize)],
    partition: &EdgePartition,
    left: Label,
) -> Vec<(usize, usize)> {
    edges
        .iter()
        .map(|&(a, b)| {
            if partition.label(a) == left {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

fn pairs_choose2(n: usize) -> u64 {
    (n * n.saturating_sub(1) / 2) as u64
}

/// Some red selection (one IN attacker per OUT argument) without two
/// crossing red edges, found by enumerating all selections.
fn find_red_selection(
    out_order: &[usize],
    choices: &[Vec<usize>],
    pos: &[usize],
) -> Option<Vec<usize>> {
    let mut pick = vec![0usize; choices.len()];
    loop {
        let sel: Vec<(usize, usize)> = out_order
            .iter()
            .zip(&pick)
            .zip(choices)
            .map(|((&o, &k), c)| (c[k], o))
            .collect();
        let crossing = sel.iter().enumerate().any(|(k, &(s1, o1))| {
            sel[k + 1..]
                .iter()
                .any(|&(s2, o2)| s1 != s2 && (pos[s1] < pos[s2]) != (pos[o1] < pos[o2]))
        });
        if !crossing {
            return Some(sel.iter().map(|&(s, _)| s).collect());
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return None;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

/// Minimum of the weighted objective over every permutation of every
/// layer, and with `rec` over every red selection.
pub fn brute_force_oracle(
    partition: &EdgePartition,
    layers: &Layers,
    rec: bool,
) -> Result<SolveResult, ExactError> {
    let start = Instant::now();
    for (name, l) in [
        ("IN", &layers.in_layer),
        ("OUT", &layers.out_layer),
        ("UNDEC", &layers.undec_layer),
    ] {
        if l.len() > ORACLE_LAYER_LIMIT {
            return Err(ExactError::TooLarge(format!(
                "{name} layer has {} arguments (limit {ORACLE_LAYER_LIMIT})",
                l.len()
            )));
        }
    }
    let e1: Vec<(usize, usize)> = oriented(&partition.e1, partition, Label::In);
    let e3: Vec<(usize, usize)> = oriented(&partition.e3, partition, Label::Out);
    let choices: Vec<Vec<usize>> = layers
        .out_layer
        .iter()
        .map(|&o| {
            let mut c: Vec<usize> = partition
                .e1
                .iter()
                .filter(|&&(s, t)| t == o && partition.label(s) == Label::In)
                .map(|&(s, _)| s)
                .collect();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    let combos = choices
        .iter()
        .map(|c| c.len() as u64)
        .try_fold(1u64, |acc, k| acc.checked_mul(k.max(1)))
        .unwrap_or(u64::MAX);
    if rec && combos > ORACLE_RED_LIMIT {
        return Err(ExactError::TooLarge(format!(
            "{combos} red selections (limit {ORACLE_RED_LIMIT})"
        )));
    }
    let weight = pairs_choose2(partition.e2.len())
        + pairs_choose2(partition.e3.len())
        + pairs_choose2(partition.e4.len())
        + 1;
    let infeasible = rec && choices.iter().any(|c| c.is_empty());

    let in_perms = permutations(&layers.in_layer);
    let undec_perms = permutations(&layers.undec_layer);
    let mut pos = vec![0usize; partition.num_arguments()];
    let mut best: Option<(u64, LayeredDrawing)> = None;
    let mut evaluated = 0u64;
    if !infeasible {
        for out_perm in permutations(&layers.out_layer) {
            place(&out_perm, &mut pos);
            let c2 = arc_crossings(&partition.e2, &pos);
            let perm_choices: Vec<Vec<usize>> = out_perm
                .iter()
                .map(|o| choices[layers.out_layer.iter().position(|x| x == o).unwrap()].clone())
                .collect();
            let mut best_in: Option<(u64, &Vec<usize>, Vec<usize>)> = None;
            for in_perm in &in_perms {
                evaluated += 1;
                place(in_perm, &mut pos);
                let v = weight * proper_crossings(&e1, &pos);
                if best_in.as_ref().is_some_and(|b| v >= b.0) {
                    continue;
                }
                let reds = if rec {
                    match find_red_selection(&out_perm, &perm_choices, &pos) {
                        Some(r) => r,
                        None => continue,
                    }
                } else {
                    perm_choices
                        .iter()
                        .map(|c| c.first().copied().unwrap_or(usize::MAX))
                        .collect()
                };
                best_in = Some((v, in_perm, reds));
            }
            let Some((v_in, in_perm, reds)) = best_in else {
                continue;
            };
            let mut best_undec: Option<(u64, &Vec<usize>)> = None;
            for undec_perm in &undec_perms {
                evaluated += 1;
                place(undec_perm, &mut pos);
                let v = proper_crossings(&e3, &pos) + arc_crossings(&partition.e4, &pos);
                if best_undec.is_none_or(|b| v < b.0) {
                    best_undec = Some((v, undec_perm));
                }
            }
            let (v_undec, undec_perm) = best_undec.expect("at least the empty permutation");
            let total = v_in + c2 + v_undec;
            if best.as_ref().is_none_or(|b| total < b.0) {
                let red = out_perm
                    .iter()
                    .zip(&reds)
                    .filter(|(_, &s)| s != usize::MAX)
                    .map(|(&o, &s)| (o, s))
                    .collect();
                best = Some((
                    total,
                    LayeredDrawing {
                        in_order: in_perm.clone(),
                        out_order: out_perm.clone(),
                        undec_order: undec_perm.clone(),
                        red,
                    },
                ));
            }
        }
    }
    let (status, drawing) = match best {
        Some((_, d)) => (SolveStatus::Optimal, d),
        None => (SolveStatus::Infeasible, LayeredDrawing::from_layers(layers)),
    };
    Ok(SolveResult {
        report: count_crossings(&drawing, partition),
        drawing,
        status,
        elapsed_ms: start.elapsed().as_millis() as u64,
        nodes_explored: evaluated,
    })
}
