//! 0-1 linear model of the layered crossing minimization problem.
//!
//! Arguments get 1-based consecutive indices: IN first, then OUT, then
//! UNDEC, each in the order of the given layers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::af::Label;
use crate::annotate::RedMapping;
use crate::error::LpError;
use crate::layout::{weighted_objective_weight, EdgePartition, LayeredDrawing, Layers};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarKind {
    /// `x_i_j`: i above j in IN.
    OrderIn,
    /// `y_i_j`: i above j in OUT.
    OrderOut,
    /// `z_i_j`: i above j in UNDEC.
    OrderUndec,
    /// `c_n_i_j_k_l`: edges (i,j) and (k,l) of class n cross.
    Crossing(u8),
    /// `r_i_j`: IN->OUT attack (i,j) is the red edge of j.
    Red,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }

    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Sense::Le => lhs <= rhs,
            Sense::Ge => lhs >= rhs,
            Sense::Eq => lhs == rhs,
        }
    }
}

/// Constraint families; the LP name prefix encodes the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Proper-edge crossing detection for E1 (n = 1) and E3 (n = 3).
    Proper(u8),
    /// Arc interleaving detection for E2 and E4.
    Arc(u8),
    RedTotality,
    Rec,
    Transitivity,
    Antisymmetry,
}

impl Family {
    pub fn prefix(self) -> String {
        match self {
            Family::Proper(n) => format!("pc{n}"),
            Family::Arc(n) => format!("ac{n}"),
            Family::RedTotality => "red".into(),
            Family::Rec => "rec".into(),
            Family::Transitivity => "tr".into(),
            Family::Antisymmetry => "as".into(),
        }
    }

    pub(crate) fn from_prefix(p: &str) -> Option<Self> {
        Some(match p {
            "pc1" => Family::Proper(1),
            "pc3" => Family::Proper(3),
            "ac2" => Family::Arc(2),
            "ac4" => Family::Arc(4),
            "red" => Family::RedTotality,
            "rec" => Family::Rec,
            "tr" => Family::Transitivity,
            "as" => Family::Antisymmetry,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub family: Family,
    /// `(variable index, coefficient)`, no repeated variables.
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IlpModel {
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    /// `(variable index, coefficient)` of the minimized objective.
    pub objective: Vec<(usize, i64)>,
    /// `arguments[k]` is the argument with model index `k + 1`.
    pub arguments: Vec<usize>,
    pub num_in: usize,
    pub num_out: usize,
    pub num_undec: usize,
    #[serde(skip)]
    lookup: HashMap<String, usize>,
}

impl IlpModel {
    pub(crate) fn empty_with(arguments: Vec<usize>, sizes: [usize; 3]) -> Self {
        Self {
            arguments,
            num_in: sizes[0],
            num_out: sizes[1],
            num_undec: sizes[2],
            ..Default::default()
        }
    }

    pub fn variable(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub(crate) fn add_variable(&mut self, name: String, kind: VarKind) -> usize {
        if let Some(&v) = self.lookup.get(&name) {
            return v;
        }
        self.lookup.insert(name.clone(), self.variables.len());
        self.variables.push(Variable { name, kind });
        self.variables.len() - 1
    }

    fn var(&self, name: &str) -> usize {
        self.lookup[name]
    }

    pub(crate) fn push(
        &mut self,
        name: String,
        family: Family,
        terms: Vec<(usize, i64)>,
        sense: Sense,
        rhs: i64,
    ) {
        self.constraints.push(Constraint {
            name,
            family,
            terms,
            sense,
            rhs,
        });
    }

    pub fn count_kind(&self, pred: impl Fn(VarKind) -> bool) -> usize {
        self.variables.iter().filter(|v| pred(v.kind)).count()
    }

    pub fn count_family(&self, family: Family) -> usize {
        self.constraints
            .iter()
            .filter(|c| c.family == family)
            .count()
    }

    /// Layer of a model index.
    pub fn label_of_index(&self, idx: usize) -> Label {
        if idx <= self.num_in {
            Label::In
        } else if idx <= self.num_in + self.num_out {
            Label::Out
        } else {
            Label::Undec
        }
    }

    /// Objective value and constraint satisfaction of a full assignment.
    pub fn evaluate(&self, values: &[bool]) -> (i64, bool) {
        let obj = self
            .objective
            .iter()
            .map(|&(v, c)| c * values[v] as i64)
            .sum();
        let ok = self.constraints.iter().all(|c| {
            let lhs: i64 = c.terms.iter().map(|&(v, k)| k * values[v] as i64).sum();
            c.sense.holds(lhs, c.rhs)
        });
        (obj, ok)
    }

    /// Assignment induced by a drawing: order and red variables follow the
    /// drawing, each crossing variable takes the least value its
    /// constraints allow.
    pub fn assignment_for(&self, drawing: &LayeredDrawing) -> Vec<bool> {
        let pos = drawing.positions();
        let mut values = vec![false; self.variables.len()];
        for (v, var) in self.variables.iter().enumerate() {
            let idx = parse_indices(&var.name);
            values[v] = match var.kind {
                VarKind::OrderIn | VarKind::OrderOut | VarKind::OrderUndec => {
                    pos[self.arguments[idx[0] - 1]] < pos[self.arguments[idx[1] - 1]]
                }
                VarKind::Red => {
                    drawing.red.get(&self.arguments[idx[1] - 1])
                        == Some(&self.arguments[idx[0] - 1])
                }
                VarKind::Crossing(_) => false,
            };
        }
        // Only detection families force crossing variables up; each has a
        // single crossing variable with coefficient -1.
        for c in &self.constraints {
            if !matches!(c.family, Family::Proper(_) | Family::Arc(_)) {
                continue;
            }
            let rest: i64 = c
                .terms
                .iter()
                .filter(|&&(v, _)| !matches!(self.variables[v].kind, VarKind::Crossing(_)))
                .map(|&(v, k)| k * values[v] as i64)
                .sum();
            if rest > c.rhs {
                for &(v, _) in &c.terms {
                    if matches!(self.variables[v].kind, VarKind::Crossing(_)) {
                        values[v] = true;
                    }
                }
            }
        }
        values
    }

    /// Objective of the least completion of `drawing`'s order variables.
    pub fn objective_for_drawing(&self, drawing: &LayeredDrawing) -> i64 {
        self.evaluate(&self.assignment_for(drawing)).0
    }

    /// Rebuilds a drawing from a 0-1 solution given as `name -> value`.
    /// Positions are predecessor counts; red edges come from `r` variables.
    pub fn decode(&self, solution: &BTreeMap<String, bool>) -> Result<LayeredDrawing, LpError> {
        for name in solution.keys() {
            if self.variable(name).is_none() {
                return Err(LpError::UnknownVariable(name.clone()));
            }
        }
        let value = |name: &str| solution.get(name).copied().unwrap_or(false);
        let ranges = [
            ('x', 1, self.num_in),
            ('y', self.num_in + 1, self.num_in + self.num_out),
            ('z', self.num_in + self.num_out + 1, self.arguments.len()),
        ];
        let mut orders = Vec::new();
        for (p, lo, hi) in ranges {
            let len = hi + 1 - lo;
            let mut slots = vec![None; len];
            for i in lo..=hi {
                let before = (lo..=hi)
                    .filter(|&j| j != i && value(&format!("{p}_{j}_{i}")))
                    .count();
                if before >= len || slots[before].is_some() {
                    return Err(LpError::InvalidSolution(format!(
                        "order variables `{p}` do not form a total order"
                    )));
                }
                slots[before] = Some(self.arguments[i - 1]);
            }
            orders.push(slots.into_iter().flatten().collect::<Vec<_>>());
        }
        let mut red = RedMapping::new();
        for var in &self.variables {
            if var.kind == VarKind::Red && value(&var.name) {
                let idx = parse_indices(&var.name);
                let (src, dst) = (self.arguments[idx[0] - 1], self.arguments[idx[1] - 1]);
                if red.insert(dst, src).is_some() {
                    return Err(LpError::InvalidSolution(format!(
                        "two red edges selected for index {}",
                        idx[1]
                    )));
                }
            }
        }
        let undec = orders.pop().unwrap_or_default();
        let out = orders.pop().unwrap_or_default();
        let inn = orders.pop().unwrap_or_default();
        Ok(LayeredDrawing {
            in_order: inn,
            out_order: out,
            undec_order: undec,
            red,
        })
    }

    pub(crate) fn rebuild_lookup(&mut self) {
        self.lookup = self
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.clone(), i))
            .collect();
    }
}

impl fmt::Display for VarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarKind::OrderIn => f.write_str("x"),
            VarKind::OrderOut => f.write_str("y"),
            VarKind::OrderUndec => f.write_str("z"),
            VarKind::Crossing(n) => write!(f, "c_{n}"),
            VarKind::Red => f.write_str("r"),
        }
    }
}

/// Numeric suffix of a variable name (`c_1_2_5_3_6` -> `[2, 5, 3, 6]`).
pub(crate) fn parse_indices(name: &str) -> Vec<usize> {
    let mut parts = name.split('_').skip(1);
    if name.starts_with("c_") {
        parts.next();
    }
    parts.filter_map(|p| p.parse().ok()).collect()
}

pub(crate) fn kind_of_name(name: &str) -> Option<VarKind> {
    let parts: Vec<&str> = name.split('_').collect();
    if parts.iter().skip(1).any(|p| p.parse::<usize>().is_err()) {
        return None;
    }
    match (parts[0], parts.len()) {
        ("x", 3) => Some(VarKind::OrderIn),
        ("y", 3) => Some(VarKind::OrderOut),
        ("z", 3) => Some(VarKind::OrderUndec),
        ("r", 3) => Some(VarKind::Red),
        ("c", 6) => match parts[1] {
            "1" => Some(VarKind::Crossing(1)),
            "2" => Some(VarKind::Crossing(2)),
            "3" => Some(VarKind::Crossing(3)),
            "4" => Some(VarKind::Crossing(4)),
            _ => None,
        },
        _ => None,
    }
}

/// Deduplicated edges as index pairs with multiplicities. Proper edges are
/// oriented left layer to right layer, arcs as (smaller, larger); self-loops
/// are dropped.
fn indexed_edges(
    edges: &[(usize, usize)],
    index: &[usize],
    labels: &[Label],
    left: Option<Label>,
) -> Vec<((usize, usize), i64)> {
    let mut counts: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &(a, b) in edges {
        if a == b {
            continue;
        }
        let key = match left {
            Some(l) if labels[a] == l => (index[a], index[b]),
            Some(_) => (index[b], index[a]),
            None => (index[a].min(index[b]), index[a].max(index[b])),
        };
        *counts.entry(key).or_default() += 1;
    }
    counts.into_iter().collect()
}

fn distinct(e: (usize, usize), f: (usize, usize)) -> bool {
    e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1
}

/// Builds the model for a partitioned instance. With `rec`, red-edge
/// variables, one totality equality per OUT argument with IN attackers and
/// one non-crossing constraint per pair of IN->OUT attacks are added.
pub fn build_ilp(partition: &EdgePartition, layers: &Layers, rec: bool) -> IlpModel {
    let labels = partition.labels();
    let arguments: Vec<usize> = layers
        .in_layer
        .iter()
        .chain(&layers.out_layer)
        .chain(&layers.undec_layer)
        .copied()
        .collect();
    let mut index = vec![0usize; partition.num_arguments()];
    for (k, &a) in arguments.iter().enumerate() {
        index[a] = k + 1;
    }
    let (ni, no, nu) = (
        layers.in_layer.len(),
        layers.out_layer.len(),
        layers.undec_layer.len(),
    );
    let mut m = IlpModel::empty_with(arguments, [ni, no, nu]);

    let layer_ranges = [
        ('x', VarKind::OrderIn, 1, ni),
        ('y', VarKind::OrderOut, ni + 1, ni + no),
        ('z', VarKind::OrderUndec, ni + no + 1, ni + no + nu),
    ];
    for &(p, kind, lo, hi) in &layer_ranges {
        for i in lo..=hi {
            for j in lo..=hi {
                if i != j {
                    m.add_variable(format!("{p}_{i}_{j}"), kind);
                }
            }
        }
    }

    let w1 = weighted_objective_weight(partition) as i64;
    let proper = [
        (1u8, &partition.e1, Label::In, 'x', 'y', w1),
        (3u8, &partition.e3, Label::Out, 'y', 'z', 1),
    ];
    for (n, edges, left, lp, rp, w) in proper {
        let es = indexed_edges(edges, &index, labels, Some(left));
        for (a, &((i, j), me)) in es.iter().enumerate() {
            for &((k, l), mf) in &es[a + 1..] {
                if !distinct((i, j), (k, l)) {
                    continue;
                }
                let c = m.add_variable(format!("c_{n}_{i}_{j}_{k}_{l}"), VarKind::Crossing(n));
                m.objective.push((c, w * me * mf));
                let t1 = vec![
                    (m.var(&format!("{lp}_{i}_{k}")), 1),
                    (m.var(&format!("{rp}_{l}_{j}")), 1),
                    (c, -1),
                ];
                let t2 = vec![
                    (m.var(&format!("{lp}_{k}_{i}")), 1),
                    (m.var(&format!("{rp}_{j}_{l}")), 1),
                    (c, -1),
                ];
                m.push(
                    format!("pc{n}_{i}_{j}_{k}_{l}_a"),
                    Family::Proper(n),
                    t1,
                    Sense::Le,
                    1,
                );
                m.push(
                    format!("pc{n}_{i}_{j}_{k}_{l}_b"),
                    Family::Proper(n),
                    t2,
                    Sense::Le,
                    1,
                );
            }
        }
    }

    for (n, edges, p) in [(2u8, &partition.e2, 'y'), (4u8, &partition.e4, 'z')] {
        let es = indexed_edges(edges, &index, labels, None);
        for (a, &((i, j), me)) in es.iter().enumerate() {
            for &((k, l), mf) in &es[a + 1..] {
                if !distinct((i, j), (k, l)) {
                    continue;
                }
                let c = m.add_variable(format!("c_{n}_{i}_{j}_{k}_{l}"), VarKind::Crossing(n));
                m.objective.push((c, me * mf));
                // the eight interleaved orders of the four endpoints
                let patterns = [
                    [i, k, j, l],
                    [i, l, j, k],
                    [j, k, i, l],
                    [j, l, i, k],
                    [k, i, l, j],
                    [k, j, l, i],
                    [l, j, k, i],
                    [l, i, k, j],
                ];
                for (t, s) in patterns.iter().enumerate() {
                    let terms = vec![
                        (m.var(&format!("{p}_{}_{}", s[0], s[1])), 1),
                        (m.var(&format!("{p}_{}_{}", s[1], s[2])), 1),
                        (m.var(&format!("{p}_{}_{}", s[2], s[3])), 1),
                        (c, -1),
                    ];
                    m.push(
                        format!("ac{n}_{i}_{j}_{k}_{l}_{t}"),
                        Family::Arc(n),
                        terms,
                        Sense::Le,
                        2,
                    );
                }
            }
        }
    }

    if rec {
        let mut by_target: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut red_edges = Vec::new();
        for (src, dst) in partition.in_to_out() {
            let (i, j) = (index[src], index[dst]);
            let r = m.add_variable(format!("r_{i}_{j}"), VarKind::Red);
            by_target.entry(j).or_default().push(r);
            red_edges.push((i, j, r));
        }
        for (j, rs) in by_target {
            let terms = rs.into_iter().map(|r| (r, 1)).collect();
            m.push(format!("red_{j}"), Family::RedTotality, terms, Sense::Eq, 1);
        }
        red_edges.sort_unstable();
        for (a, &(i, j, r1)) in red_edges.iter().enumerate() {
            for &(k, l, r2) in &red_edges[a + 1..] {
                if !distinct((i, j), (k, l)) {
                    continue;
                }
                let c = m.var(&format!("c_1_{i}_{j}_{k}_{l}"));
                m.push(
                    format!("rec_{i}_{j}_{k}_{l}"),
                    Family::Rec,
                    vec![(r1, 1), (r2, 1), (c, 1)],
                    Sense::Le,
                    2,
                );
            }
        }
    }

    for &(p, _, lo, hi) in &layer_ranges {
        for i in lo..=hi {
            for j in i + 1..=hi {
                for k in j + 1..=hi {
                    let terms = vec![
                        (m.var(&format!("{p}_{i}_{j}")), 1),
                        (m.var(&format!("{p}_{j}_{k}")), 1),
                        (m.var(&format!("{p}_{i}_{k}")), -1),
                    ];
                    m.push(
                        format!("tr_{p}_{i}_{j}_{k}_lo"),
                        Family::Transitivity,
                        terms.clone(),
                        Sense::Ge,
                        0,
                    );
                    m.push(
                        format!("tr_{p}_{i}_{j}_{k}_hi"),
                        Family::Transitivity,
                        terms,
                        Sense::Le,
                        1,
                    );
                }
            }
        }
    }
    for &(p, _, lo, hi) in &layer_ranges {
        for i in lo..=hi {
            for j in i + 1..=hi {
                let terms = vec![
                    (m.var(&format!("{p}_{i}_{j}")), 1),
                    (m.var(&format!("{p}_{j}_{i}")), 1),
                ];
                m.push(
                    format!("as_{p}_{i}_{j}"),
                    Family::Antisymmetry,
                    terms,
                    Sense::Eq,
                    1,
                );
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::{compute_labeling, ArgumentationFramework, Extension};
    use crate::layout::{assign_layers, count_crossings, partition_edges};

    fn setup(args: &[&str], attacks: &[(&str, &str)], ext: &[&str]) -> (EdgePartition, Layers) {
        let af = ArgumentationFramework::from_named_attacks(args, attacks).unwrap();
        let e = Extension::from_names(&af, ext).unwrap();
        let lab = compute_labeling(&af, &e);
        (partition_edges(&af, &lab), assign_layers(&lab))
    }

    #[test]
    fn two_by_two_counts() {
        let (p, l) = setup(
            &["u", "v", "x", "y"],
            &[("u", "x"), ("v", "y")],
            &["u", "v"],
        );
        let m = build_ilp(&p, &l, false);
        assert_eq!(m.count_kind(|k| k == VarKind::OrderIn), 2);
        assert_eq!(m.count_kind(|k| k == VarKind::OrderOut), 2);
        assert_eq!(m.count_kind(|k| matches!(k, VarKind::Crossing(_))), 1);
        assert_eq!(m.count_family(Family::Antisymmetry), 2);
        assert_eq!(m.count_family(Family::Proper(1)), 2);
        assert_eq!(m.count_family(Family::Transitivity), 0);
        assert_eq!(m.variables.len(), 5);
    }

    #[test]
    fn no_undec_no_z() {
        let (p, l) = setup(
            &["u", "x", "y"],
            &[("u", "x"), ("u", "y"), ("x", "y")],
            &["u"],
        );
        let m = build_ilp(&p, &l, true);
        assert_eq!(m.count_kind(|k| k == VarKind::OrderUndec), 0);
        assert_eq!(m.count_family(Family::Proper(3)), 0);
        assert_eq!(m.count_family(Family::Arc(4)), 0);
    }

    #[test]
    fn rec_families() {
        let (p, l) = setup(
            &["u", "v", "x", "y", "z"],
            &[("u", "x"), ("v", "y"), ("u", "z"), ("v", "z")],
            &["u", "v"],
        );
        let plain = build_ilp(&p, &l, false);
        let rec = build_ilp(&p, &l, true);
        // IN->OUT pairs with four distinct endpoints: ux-vy, ux-vz, vy-uz
        assert_eq!(rec.count_family(Family::Rec), 3);
        assert_eq!(rec.count_family(Family::RedTotality), 3);
        assert_eq!(rec.count_kind(|k| k == VarKind::Red), 4);
        assert_eq!(rec.constraints.len(), plain.constraints.len() + 6);
    }

    #[test]
    fn arc_pair_has_eight_constraints() {
        let (p, l) = setup(
            &["u", "a", "b", "c", "d"],
            &[
                ("u", "a"),
                ("u", "b"),
                ("u", "c"),
                ("u", "d"),
                ("a", "c"),
                ("b", "d"),
            ],
            &["u"],
        );
        let m = build_ilp(&p, &l, false);
        assert_eq!(m.count_family(Family::Arc(2)), 8);
        // 4 OUT arguments: C(4,3) triples, two constraints each
        assert_eq!(m.count_family(Family::Transitivity), 8);
    }

    #[test]
    fn least_completion_matches_counter() {
        let (p, l) = setup(
            &["u", "v", "a", "b", "c", "d", "q", "s"],
            &[
                ("u", "a"),
                ("v", "b"),
                ("u", "c"),
                ("v", "d"),
                ("a", "c"),
                ("b", "d"),
                ("a", "q"),
                ("b", "s"),
                ("q", "s"),
                ("s", "q"),
            ],
            &["u", "v"],
        );
        let m = build_ilp(&p, &l, true);
        let mut d = LayeredDrawing::from_layers(&l);
        d.red = crate::annotate::select_red_strategy_a(&p, &d.in_order).unwrap();
        d.out_order.reverse();
        d.undec_order.reverse();
        let r = count_crossings(&d, &p);
        assert_eq!(m.objective_for_drawing(&d), r.weighted_objective as i64);
        let (_, feasible) = m.evaluate(&m.assignment_for(&d));
        assert_eq!(feasible, r.rec_violations == 0);
    }

    #[test]
    fn decode_round_trip() {
        let (p, l) = setup(
            &["u", "v", "x", "y"],
            &[("u", "x"), ("v", "y"), ("u", "y")],
            &["u", "v"],
        );
        let m = build_ilp(&p, &l, true);
        let d = LayeredDrawing {
            in_order: vec![1, 0],
            out_order: vec![3, 2],
            undec_order: vec![],
            red: [(2, 0), (3, 1)].into_iter().collect(),
        };
        let values = m.assignment_for(&d);
        let sol = m
            .variables
            .iter()
            .zip(values)
            .map(|(v, b)| (v.name.clone(), b))
            .collect();
        assert_eq!(m.decode(&sol).unwrap(), d);
    }

    #[test]
    fn decode_rejects_cycles() {
        let (p, l) = setup(&["u", "v", "x"], &[("u", "x")], &["u", "v"]);
        let m = build_ilp(&p, &l, false);
        let sol = [("x_1_2".to_string(), true), ("x_2_1".to_string(), true)]
            .into_iter()
            .collect();
        assert!(matches!(m.decode(&sol), Err(LpError::InvalidSolution(_))));
        let bad = [("q_1".to_string(), true)].into_iter().collect();
        assert!(matches!(m.decode(&bad), Err(LpError::UnknownVariable(_))));
    }

    #[test]
    fn names_parse() {
        assert_eq!(parse_indices("c_1_2_5_3_6"), [2, 5, 3, 6]);
        assert_eq!(parse_indices("x_10_2"), [10, 2]);
        assert_eq!(kind_of_name("c_3_1_2_3_4"), Some(VarKind::Crossing(3)));
        assert_eq!(kind_of_name("y_1_2"), Some(VarKind::OrderOut));
        assert_eq!(kind_of_name("w_1_2"), None);
    }
}
