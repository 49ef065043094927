//! Semantic highlighting: red witness edges, odd cycles in UNDEC and the
//! per-argument / per-edge display classes.

pub mod cycles;
pub mod matching;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::af::Label;
use crate::error::LayoutError;
use crate::layout::{EdgeClass, EdgePartition};

/// OUT argument -> chosen IN attacker.
pub type RedMapping = BTreeMap<usize, usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EdgeDisplay {
    Red,
    Orange,
    OddCycle,
    LongFlag,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ArgumentDisplay {
    OrangeAttacker,
    OddCycleMember,
    NonAttackingIn,
    UnattackedUndec,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RedStrategy {
    /// Few sources: greedy maximum coverage per IN argument.
    #[default]
    A,
    /// Dispersed sources: repeated maximum matchings.
    B,
}

impl std::str::FromStr for RedStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(RedStrategy::A),
            "B" | "b" => Ok(RedStrategy::B),
            other => Err(format!("unknown red strategy `{other}` (expected A or B)")),
        }
    }
}

fn out_arguments(partition: &EdgePartition) -> Vec<usize> {
    (0..partition.num_arguments())
        .filter(|&a| partition.label(a) == Label::Out)
        .collect()
}

fn check_coverage(
    partition: &EdgePartition,
    attackers: &BTreeMap<usize, Vec<usize>>,
) -> Result<(), LayoutError> {
    match out_arguments(partition)
        .into_iter()
        .find(|o| !attackers.contains_key(o))
    {
        Some(o) => Err(LayoutError::UncoveredOut(o)),
        None => Ok(()),
    }
}

/// Greedy set cover by IN sources: repeatedly take the IN argument that
/// covers most uncovered OUT arguments; ties go to the topmost in `in_order`.
pub fn select_red_strategy_a(
    partition: &EdgePartition,
    in_order: &[usize],
) -> Result<RedMapping, LayoutError> {
    let attackers = partition.in_attackers();
    check_coverage(partition, &attackers)?;
    let mut targets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&o, srcs) in &attackers {
        for &s in srcs {
            targets.entry(s).or_default().push(o);
        }
    }
    let mut uncovered: BTreeSet<usize> = attackers.keys().copied().collect();
    let mut red = RedMapping::new();
    while !uncovered.is_empty() {
        let mut best: Option<(usize, usize)> = None;
        for &s in in_order {
            let gain = targets
                .get(&s)
                .map_or(0, |ts| ts.iter().filter(|o| uncovered.contains(o)).count());
            if gain > best.map_or(0, |b| b.1) {
                best = Some((s, gain));
            }
        }
        let (s, _) = best.expect("every uncovered OUT argument has an IN attacker");
        for &o in &targets[&s] {
            if uncovered.remove(&o) {
                red.insert(o, s);
            }
        }
    }
    Ok(red)
}

/// Rounds of maximum matchings between IN and the still-uncovered OUT
/// arguments; matched edges become red.
pub fn select_red_strategy_b(
    partition: &EdgePartition,
    in_order: &[usize],
) -> Result<RedMapping, LayoutError> {
    Ok(red_strategy_b_rounds(partition, in_order)?
        .into_iter()
        .flatten()
        .collect())
}

/// Strategy B with the matching of every round kept separately.
pub fn red_strategy_b_rounds(
    partition: &EdgePartition,
    in_order: &[usize],
) -> Result<Vec<Vec<(usize, usize)>>, LayoutError> {
    let attackers = partition.in_attackers();
    check_coverage(partition, &attackers)?;
    let mut uncovered: BTreeSet<usize> = attackers.keys().copied().collect();
    let mut rounds = Vec::new();
    while !uncovered.is_empty() {
        let right: Vec<usize> = uncovered.iter().copied().collect();
        let right_idx: BTreeMap<usize, usize> =
            right.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let adj: Vec<Vec<usize>> = in_order
            .iter()
            .map(|s| {
                right
                    .iter()
                    .filter(|o| attackers[o].contains(s))
                    .map(|o| right_idx[o])
                    .collect()
            })
            .collect();
        let matching = matching::hopcroft_karp(right.len(), &adj);
        let round: Vec<(usize, usize)> = matching
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (right[v], in_order[u])))
            .collect();
        debug_assert!(!round.is_empty());
        for &(o, _) in &round {
            uncovered.remove(&o);
        }
        rounds.push(round);
    }
    Ok(rounds)
}

/// Odd cycles of the UNDEC subgraph, one shortest per odd-period strongly
/// connected component. Walks are argument ids; each closes back to its start.
pub fn detect_odd_cycles(undec: &[usize], edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let local: BTreeMap<usize, usize> = undec.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut adj = vec![Vec::new(); undec.len()];
    for &(a, b) in edges {
        if let (Some(&la), Some(&lb)) = (local.get(&a), local.get(&b)) {
            if !adj[la].contains(&lb) {
                adj[la].push(lb);
            }
        }
    }
    cycles::odd_cycles(&adj)
        .into_iter()
        .map(|w| w.into_iter().map(|v| undec[v]).collect())
        .collect()
}

/// Edges of a closed walk, including the closing edge.
pub fn walk_edges(walk: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..walk.len()).map(move |i| (walk[i], walk[(i + 1) % walk.len()]))
}

/// Display classes for every edge and argument.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnnotationSet {
    pub edges: BTreeMap<(usize, usize), EdgeDisplay>,
    pub arguments: Vec<ArgumentDisplay>,
}

pub fn build_annotations(
    partition: &EdgePartition,
    reds: &RedMapping,
    odd_walks: &[Vec<usize>],
) -> AnnotationSet {
    let n = partition.num_arguments();
    let mut edges = BTreeMap::new();
    for (e, class) in partition.classified() {
        let display = match class {
            EdgeClass::E1 if partition.label(e.0) == Label::In => {
                if reds.get(&e.1) == Some(&e.0) {
                    EdgeDisplay::Red
                } else {
                    EdgeDisplay::Orange
                }
            }
            EdgeClass::Long | EdgeClass::InIn => EdgeDisplay::LongFlag,
            _ => EdgeDisplay::Plain,
        };
        edges.insert(e, display);
    }
    let mut on_walk = vec![false; n];
    for walk in odd_walks {
        for e in walk_edges(walk) {
            if let Some(d) = edges.get_mut(&e) {
                *d = EdgeDisplay::OddCycle;
            }
        }
        for &v in walk {
            on_walk[v] = true;
        }
    }
    let mut attacks_out = vec![false; n];
    let mut undec_attacked = vec![false; n];
    for &(a, _) in &partition.e1 {
        if partition.label(a) == Label::In {
            attacks_out[a] = true;
        }
    }
    for &(a, b) in &partition.e4 {
        if a != b {
            undec_attacked[b] = true;
        }
    }
    let arguments = (0..n)
        .map(|a| match partition.label(a) {
            Label::In if attacks_out[a] => ArgumentDisplay::OrangeAttacker,
            Label::In => ArgumentDisplay::NonAttackingIn,
            Label::Undec if on_walk[a] => ArgumentDisplay::OddCycleMember,
            Label::Undec if !undec_attacked[a] => ArgumentDisplay::UnattackedUndec,
            _ => ArgumentDisplay::Plain,
        })
        .collect();
    AnnotationSet { edges, arguments }
}

impl AnnotationSet {
    /// Checks the display-class invariants against the partition.
    pub fn validate(&self, partition: &EdgePartition) -> Result<(), String> {
        let mut red_targets: BTreeMap<usize, usize> = BTreeMap::new();
        for (&(a, b), &d) in &self.edges {
            match d {
                EdgeDisplay::Red | EdgeDisplay::Orange => {
                    if partition.label(a) != Label::In || partition.label(b) != Label::Out {
                        return Err(format!("{d:?} edge ({a},{b}) is not IN->OUT"));
                    }
                    if d == EdgeDisplay::Red {
                        *red_targets.entry(b).or_default() += 1;
                    }
                }
                EdgeDisplay::OddCycle => {
                    if partition.label(a) != Label::Undec || partition.label(b) != Label::Undec {
                        return Err(format!("odd-cycle edge ({a},{b}) leaves UNDEC"));
                    }
                }
                EdgeDisplay::LongFlag | EdgeDisplay::Plain => {}
            }
        }
        for o in partition.in_attackers().keys() {
            if red_targets.get(o) != Some(&1) {
                return Err(format!("OUT argument {o} needs exactly one red edge"));
            }
        }
        if red_targets.len() != partition.in_attackers().len() {
            return Err("red edge on an argument without IN attacker".into());
        }
        for (a, &d) in self.arguments.iter().enumerate() {
            let expected_label = match d {
                ArgumentDisplay::OrangeAttacker | ArgumentDisplay::NonAttackingIn => Label::In,
                ArgumentDisplay::OddCycleMember | ArgumentDisplay::UnattackedUndec => Label::Undec,
                ArgumentDisplay::Plain => continue,
            };
            if partition.label(a) != expected_label {
                return Err(format!("argument {a} has class {d:?} outside its layer"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::{compute_labeling, ArgumentationFramework, Extension};
    use crate::layout::partition_edges;

    fn part(args: &[&str], attacks: &[(&str, &str)], ext: &[&str]) -> EdgePartition {
        let af = ArgumentationFramework::from_named_attacks(args, attacks).unwrap();
        let e = Extension::from_names(&af, ext).unwrap();
        partition_edges(&af, &compute_labeling(&af, &e))
    }

    // u=0, v=1, x=2, y=3, z=4
    fn cover_instance() -> EdgePartition {
        part(
            &["u", "v", "x", "y", "z"],
            &[("u", "x"), ("v", "x"), ("u", "y"), ("v", "z")],
            &["u", "v"],
        )
    }

    #[test]
    fn strategy_a_greedy_cover() {
        let p = cover_instance();
        let red = select_red_strategy_a(&p, &[0, 1]).unwrap();
        // u and v both cover two; u is topmost
        assert_eq!(red, RedMapping::from([(2, 0), (3, 0), (4, 1)]));
    }

    #[test]
    fn strategy_a_unique_choice() {
        let p = part(
            &["u", "v", "x", "y"],
            &[("u", "x"), ("v", "y")],
            &["u", "v"],
        );
        let red = select_red_strategy_a(&p, &[0, 1]).unwrap();
        assert_eq!(red, RedMapping::from([(2, 0), (3, 1)]));
    }

    #[test]
    fn strategy_b_rounds() {
        let p = cover_instance();
        let rounds = red_strategy_b_rounds(&p, &[0, 1]).unwrap();
        assert_eq!(rounds[0].len(), 2);
        let red = select_red_strategy_b(&p, &[0, 1]).unwrap();
        assert_eq!(red.len(), 3);
        for (o, s) in &red {
            assert!(p.in_attackers()[o].contains(s));
        }
    }

    #[test]
    fn strategy_b_single_source_matches_a() {
        let p = part(
            &["u", "x", "y", "z"],
            &[("u", "x"), ("u", "y"), ("u", "z")],
            &["u"],
        );
        assert_eq!(
            select_red_strategy_b(&p, &[0]).unwrap(),
            select_red_strategy_a(&p, &[0]).unwrap()
        );
        let empty = part(&["u"], &[], &["u"]);
        assert!(select_red_strategy_b(&empty, &[0]).unwrap().is_empty());
    }

    #[test]
    fn uncovered_out_is_reported() {
        let mut p = cover_instance();
        p.e1.retain(|&(_, b)| b != 4);
        assert_eq!(
            select_red_strategy_a(&p, &[0, 1]),
            Err(LayoutError::UncoveredOut(4))
        );
        assert_eq!(
            select_red_strategy_b(&p, &[0, 1]),
            Err(LayoutError::UncoveredOut(4))
        );
    }

    #[test]
    fn odd_cycle_ids() {
        let walks = detect_odd_cycles(&[5, 7, 9], &[(5, 7), (7, 9), (9, 5)]);
        assert_eq!(walks.len(), 1);
        let mut w = walks[0].clone();
        w.sort();
        assert_eq!(w, [5, 7, 9]);
        assert!(detect_odd_cycles(&[1, 2, 3, 4], &[(1, 2), (2, 3), (3, 4), (4, 1)]).is_empty());
    }

    #[test]
    fn display_classes() {
        // a:IN -> b:OUT ; c:IN isolated ; b -> d (UNDEC? no: d attacked only by OUT)
        let p = part(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "d")],
            &["a", "c"],
        );
        let red = RedMapping::from([(1, 0)]);
        let ann = build_annotations(&p, &red, &[]);
        assert_eq!(ann.edges[&(0, 1)], EdgeDisplay::Red);
        assert_eq!(ann.arguments[0], ArgumentDisplay::OrangeAttacker);
        assert_eq!(ann.arguments[2], ArgumentDisplay::NonAttackingIn);
        assert_eq!(ann.arguments[3], ArgumentDisplay::UnattackedUndec);
        assert_eq!(ann.arguments[1], ArgumentDisplay::Plain);
        ann.validate(&p).unwrap();
    }

    #[test]
    fn odd_cycle_priority_over_unattacked() {
        // self-attacking UNDEC argument: length-1 odd cycle, not "unattacked"
        let p = part(&["a", "b", "s"], &[("a", "b"), ("s", "s")], &["a"]);
        let walks = detect_odd_cycles(&[2], &p.e4);
        assert_eq!(walks, vec![vec![2]]);
        let ann = build_annotations(&p, &RedMapping::from([(1, 0)]), &walks);
        assert_eq!(ann.arguments[2], ArgumentDisplay::OddCycleMember);
        assert_eq!(ann.edges[&(2, 2)], EdgeDisplay::OddCycle);
    }

    #[test]
    fn orange_vs_red() {
        let p = cover_instance();
        let red = select_red_strategy_a(&p, &[0, 1]).unwrap();
        let ann = build_annotations(&p, &red, &[]);
        assert_eq!(ann.edges[&(1, 2)], EdgeDisplay::Orange);
        assert_eq!(
            ann.edges
                .values()
                .filter(|&&d| d == EdgeDisplay::Red)
                .count(),
            3
        );
        ann.validate(&p).unwrap();
    }
}
