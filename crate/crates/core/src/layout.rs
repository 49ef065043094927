//! Three-layer drawings: layer assignment, edge classes, crossing counts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::af::{ArgumentationFramework, Label, LayerAssignment};
use crate::error::LayoutError;

/// Arguments split by label, each list in a top-to-bottom order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Layers {
    pub in_layer: Vec<usize>,
    pub out_layer: Vec<usize>,
    pub undec_layer: Vec<usize>,
}

impl Layers {
    pub fn get(&self, label: Label) -> &[usize] {
        match label {
            Label::In => &self.in_layer,
            Label::Out => &self.out_layer,
            Label::Undec => &self.undec_layer,
        }
    }

    pub fn len(&self) -> usize {
        self.in_layer.len() + self.out_layer.len() + self.undec_layer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Partitions arguments by label, keeping declaration order.
pub fn assign_layers(labeling: &LayerAssignment) -> Layers {
    let mut layers = Layers::default();
    for (a, label) in labeling.labels().iter().enumerate() {
        match label {
            Label::In => layers.in_layer.push(a),
            Label::Out => layers.out_layer.push(a),
            Label::Undec => layers.undec_layer.push(a),
        }
    }
    layers
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeClass {
    /// IN <-> OUT
    E1,
    /// within OUT
    E2,
    /// OUT <-> UNDEC
    E3,
    /// within UNDEC
    E4,
    /// IN <-> UNDEC, only for non-admissible extensions
    #[serde(rename = "LONG")]
    Long,
    /// within IN, only for sets that are not conflict-free
    #[serde(rename = "ININ")]
    InIn,
}

impl EdgeClass {
    pub fn of(a: Label, b: Label) -> Self {
        use Label::*;
        match (a, b) {
            (In, Out) | (Out, In) => EdgeClass::E1,
            (Out, Out) => EdgeClass::E2,
            (Out, Undec) | (Undec, Out) => EdgeClass::E3,
            (Undec, Undec) => EdgeClass::E4,
            (In, Undec) | (Undec, In) => EdgeClass::Long,
            (In, In) => EdgeClass::InIn,
        }
    }
}

/// Attacks grouped by the layers of their endpoints. Edges keep their
/// original `(attacker, target)` direction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgePartition {
    pub e1: Vec<(usize, usize)>,
    pub e2: Vec<(usize, usize)>,
    pub e3: Vec<(usize, usize)>,
    pub e4: Vec<(usize, usize)>,
    pub long_edges: Vec<(usize, usize)>,
    pub in_in_edges: Vec<(usize, usize)>,
    labels: Vec<Label>,
}

impl EdgePartition {
    pub fn label(&self, a: usize) -> Label {
        self.labels[a]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn num_arguments(&self) -> usize {
        self.labels.len()
    }

    pub fn class(&self, class: EdgeClass) -> &[(usize, usize)] {
        match class {
            EdgeClass::E1 => &self.e1,
            EdgeClass::E2 => &self.e2,
            EdgeClass::E3 => &self.e3,
            EdgeClass::E4 => &self.e4,
            EdgeClass::Long => &self.long_edges,
            EdgeClass::InIn => &self.in_in_edges,
        }
    }

    /// All edges with their class, grouped by class.
    pub fn classified(&self) -> impl Iterator<Item = ((usize, usize), EdgeClass)> + '_ {
        [
            EdgeClass::E1,
            EdgeClass::E2,
            EdgeClass::E3,
            EdgeClass::E4,
            EdgeClass::Long,
            EdgeClass::InIn,
        ]
        .into_iter()
        .flat_map(move |c| self.class(c).iter().map(move |&e| (e, c)))
    }

    /// E1 edges directed from IN to OUT, i.e. the red-edge candidates.
    pub fn in_to_out(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.e1
            .iter()
            .copied()
            .filter(|&(a, _)| self.labels[a] == Label::In)
    }

    /// Distinct IN attackers of every OUT argument, in edge order.
    pub fn in_attackers(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (a, b) in self.in_to_out() {
            let list = map.entry(b).or_default();
            if !list.contains(&a) {
                list.push(a);
            }
        }
        map
    }
}

pub fn partition_edges(af: &ArgumentationFramework, labeling: &LayerAssignment) -> EdgePartition {
    partition_attacks(af.attacks(), labeling.labels().to_vec())
}

pub(crate) fn partition_attacks(attacks: &[(usize, usize)], labels: Vec<Label>) -> EdgePartition {
    let mut p = EdgePartition {
        labels,
        ..Default::default()
    };
    for &(a, b) in attacks {
        let bucket = match EdgeClass::of(p.labels[a], p.labels[b]) {
            EdgeClass::E1 => &mut p.e1,
            EdgeClass::E2 => &mut p.e2,
            EdgeClass::E3 => &mut p.e3,
            EdgeClass::E4 => &mut p.e4,
            EdgeClass::Long => &mut p.long_edges,
            EdgeClass::InIn => &mut p.in_in_edges,
        };
        bucket.push((a, b));
    }
    p
}

/// Per-layer orders plus the selected red edge (IN source) per OUT argument.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LayeredDrawing {
    pub in_order: Vec<usize>,
    pub out_order: Vec<usize>,
    pub undec_order: Vec<usize>,
    /// OUT argument -> IN argument whose attack on it is highlighted.
    pub red: BTreeMap<usize, usize>,
}

impl LayeredDrawing {
    pub fn from_layers(layers: &Layers) -> Self {
        Self {
            in_order: layers.in_layer.clone(),
            out_order: layers.out_layer.clone(),
            undec_order: layers.undec_layer.clone(),
            red: BTreeMap::new(),
        }
    }

    pub fn layers(&self) -> Layers {
        Layers {
            in_layer: self.in_order.clone(),
            out_layer: self.out_order.clone(),
            undec_layer: self.undec_order.clone(),
        }
    }

    /// Position of every argument within its own layer.
    pub fn positions(&self) -> Vec<usize> {
        let n = self
            .in_order
            .iter()
            .chain(&self.out_order)
            .chain(&self.undec_order)
            .map(|&a| a + 1)
            .max()
            .unwrap_or(0);
        let mut pos = vec![usize::MAX; n];
        for order in [&self.in_order, &self.out_order, &self.undec_order] {
            for (i, &a) in order.iter().enumerate() {
                pos[a] = i;
            }
        }
        pos
    }

    /// Red edges as `(in, out)` pairs.
    pub fn red_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.red.iter().map(|(&o, &i)| (i, o))
    }

    /// Checks that every order is a permutation of its layer and that the
    /// red mapping is total on OUT arguments with an IN attacker.
    pub fn validate(&self, partition: &EdgePartition) -> Result<(), LayoutError> {
        let n = partition.num_arguments();
        let mut seen = vec![false; n];
        for (label, order, name) in [
            (Label::In, &self.in_order, "IN"),
            (Label::Out, &self.out_order, "OUT"),
            (Label::Undec, &self.undec_order, "UNDEC"),
        ] {
            for &a in order {
                if a >= n || seen[a] || partition.label(a) != label {
                    return Err(LayoutError::InvalidDrawing {
                        layer: name,
                        message: format!("argument index {a} misplaced or repeated"),
                    });
                }
                seen[a] = true;
            }
            let expected = partition.labels().iter().filter(|&&l| l == label).count();
            if order.len() != expected {
                return Err(LayoutError::InvalidDrawing {
                    layer: name,
                    message: format!("expected {expected} arguments, found {}", order.len()),
                });
            }
        }
        let attackers = partition.in_attackers();
        for (&o, srcs) in &attackers {
            match self.red.get(&o) {
                Some(s) if srcs.contains(s) => {}
                _ => {
                    return Err(LayoutError::InvalidDrawing {
                        layer: "OUT",
                        message: format!("argument index {o} lacks a valid red edge"),
                    })
                }
            }
        }
        if self.red.keys().any(|o| !attackers.contains_key(o)) {
            return Err(LayoutError::InvalidDrawing {
                layer: "OUT",
                message: "red edge on an argument without IN attacker".into(),
            });
        }
        Ok(())
    }
}

/// Crossing counts per edge class and the weighted objective.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingReport {
    pub c1: u64,
    pub c2: u64,
    pub c3: u64,
    pub c4: u64,
    pub weight: u64,
    pub weighted_objective: u64,
    pub rec_violations: u64,
}

impl CrossingReport {
    pub fn total(&self) -> u64 {
        self.c1 + self.c2 + self.c3 + self.c4
    }

    pub fn secondary(&self) -> u64 {
        self.c2 + self.c3 + self.c4
    }
}

fn choose2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Weight of an E1 crossing: one more than the number of possible
/// crossings among E2, E3 and E4, so E1 strictly dominates.
pub fn weighted_objective_weight(partition: &EdgePartition) -> u64 {
    choose2(partition.e2.len()) + choose2(partition.e3.len()) + choose2(partition.e4.len()) + 1
}

fn position(order: &[usize], a: usize) -> Option<usize> {
    order.iter().position(|&x| x == a)
}

/// Whether two edges between the same pair of adjacent layers cross.
/// Endpoint direction is irrelevant; edges sharing an endpoint never cross.
pub fn proper_edges_cross(
    e: (usize, usize),
    f: (usize, usize),
    left_order: &[usize],
    right_order: &[usize],
) -> bool {
    let split = |(a, b): (usize, usize)| match (position(left_order, a), position(right_order, b)) {
        (Some(l), Some(r)) => Some((l, r)),
        _ => match (position(left_order, b), position(right_order, a)) {
            (Some(l), Some(r)) => Some((l, r)),
            _ => None,
        },
    };
    match (split(e), split(f)) {
        (Some((l1, r1)), Some((l2, r2))) => (l1 < l2 && r1 > r2) || (l1 > l2 && r1 < r2),
        _ => false,
    }
}

/// Whether two intra-layer arcs (drawn on the same side) cross: their
/// endpoints must strictly interleave.
pub fn arc_edges_cross(e: (usize, usize), f: (usize, usize), layer_order: &[usize]) -> bool {
    let span = |(a, b): (usize, usize)| {
        let (p, q) = (position(layer_order, a)?, position(layer_order, b)?);
        Some((p.min(q), p.max(q)))
    };
    match (span(e), span(f)) {
        (Some((a, b)), Some((c, d))) => (a < c && c < b && b < d) || (c < a && a < d && d < b),
        _ => false,
    }
}

struct Fenwick(Vec<u64>);

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick(vec![0; n + 1])
    }

    fn add(&mut self, i: usize) {
        let mut i = i + 1;
        while i < self.0.len() {
            self.0[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of inserted values `< i`.
    fn prefix(&self, i: usize) -> u64 {
        let mut i = i.min(self.0.len() - 1);
        let mut s = 0;
        while i > 0 {
            s += self.0[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

/// Number of pairs `(l1, r1), (l2, r2)` with `l1 < l2` and `r1 > r2`.
pub(crate) fn count_inversions(pairs: &mut [(usize, usize)]) -> u64 {
    if pairs.len() < 2 {
        return 0;
    }
    pairs.sort_unstable();
    let max_r = pairs.iter().map(|p| p.1).max().unwrap_or(0);
    let mut tree = Fenwick::new(max_r + 1);
    let mut inserted = 0u64;
    let mut total = 0;
    let mut i = 0;
    while i < pairs.len() {
        let mut j = i;
        while j < pairs.len() && pairs[j].0 == pairs[i].0 {
            total += inserted - tree.prefix(pairs[j].1 + 1);
            j += 1;
        }
        for p in &pairs[i..j] {
            tree.add(p.1);
            inserted += 1;
        }
        i = j;
    }
    total
}

/// Number of strictly interleaving pairs among `(lo, hi)` spans.
pub(crate) fn count_interleavings(spans: &mut Vec<(usize, usize)>) -> u64 {
    spans.retain(|&(a, b)| a < b);
    if spans.len() < 2 {
        return 0;
    }
    spans.sort_unstable();
    let max_r = spans.iter().map(|s| s.1).max().unwrap_or(0);
    let mut tree = Fenwick::new(max_r + 1);
    let mut total = 0;
    let mut i = 0;
    while i < spans.len() {
        let mut j = i;
        while j < spans.len() && spans[j].0 == spans[i].0 {
            let (l, r) = spans[j];
            // earlier arcs (smaller left end) whose right end lies strictly inside (l, r)
            total += tree.prefix(r) - tree.prefix(l + 1);
            j += 1;
        }
        for s in &spans[i..j] {
            tree.add(s.1);
        }
        i = j;
    }
    total
}

fn spans(edges: &[(usize, usize)], pos: &[usize]) -> Vec<(usize, usize)> {
    edges
        .iter()
        .map(|&(a, b)| (pos[a].min(pos[b]), pos[a].max(pos[b])))
        .collect()
}

fn segments(
    edges: &[(usize, usize)],
    pos: &[usize],
    labels: &[Label],
    left: Label,
) -> Vec<(usize, usize)> {
    edges
        .iter()
        .map(|&(a, b)| {
            if labels[a] == left {
                (pos[a], pos[b])
            } else {
                (pos[b], pos[a])
            }
        })
        .collect()
}

/// Counts crossings within each edge class. Long and IN-IN edges never count.
pub fn count_crossings(drawing: &LayeredDrawing, partition: &EdgePartition) -> CrossingReport {
    let pos = drawing.positions();
    count_with_positions(drawing, partition, &pos)
}

pub(crate) fn count_with_positions(
    drawing: &LayeredDrawing,
    partition: &EdgePartition,
    pos: &[usize],
) -> CrossingReport {
    let labels = partition.labels();
    let c1 = count_inversions(&mut segments(&partition.e1, pos, labels, Label::In));
    let c3 = count_inversions(&mut segments(&partition.e3, pos, labels, Label::Out));
    let c2 = count_interleavings(&mut spans(&partition.e2, pos));
    let c4 = count_interleavings(&mut spans(&partition.e4, pos));
    let mut reds: Vec<(usize, usize)> =
        drawing.red_edges().map(|(i, o)| (pos[i], pos[o])).collect();
    let rec_violations = count_inversions(&mut reds);
    let weight = weighted_objective_weight(partition);
    CrossingReport {
        c1,
        c2,
        c3,
        c4,
        weight,
        weighted_objective: weight * c1 + c2 + c3 + c4,
        rec_violations,
    }
}

/// Red-edge crossings only.
pub fn rec_violations(drawing: &LayeredDrawing) -> u64 {
    let pos = drawing.positions();
    let mut reds: Vec<(usize, usize)> =
        drawing.red_edges().map(|(i, o)| (pos[i], pos[o])).collect();
    count_inversions(&mut reds)
}

/// True iff no two red edges cross.
pub fn satisfies_rec(drawing: &LayeredDrawing) -> bool {
    rec_violations(drawing) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::{compute_labeling, Extension};

    fn setup(
        args: &[&str],
        attacks: &[(&str, &str)],
        ext: &[&str],
    ) -> (ArgumentationFramework, EdgePartition, Layers) {
        let af = ArgumentationFramework::from_named_attacks(args, attacks).unwrap();
        let e = Extension::from_names(&af, ext).unwrap();
        let lab = compute_labeling(&af, &e);
        let p = partition_edges(&af, &lab);
        let layers = assign_layers(&lab);
        (af, p, layers)
    }

    #[test]
    fn layer_assignment() {
        let (_, _, layers) = setup(&["a", "b"], &[("a", "b")], &["a"]);
        assert_eq!(layers.in_layer, [0]);
        assert_eq!(layers.out_layer, [1]);
        assert!(layers.undec_layer.is_empty());
        let (_, _, layers) = setup(&["a", "b"], &[("a", "b"), ("b", "a")], &[]);
        assert_eq!(layers.undec_layer, [0, 1]);
        assert!(layers.in_layer.is_empty() && layers.out_layer.is_empty());
    }

    #[test]
    fn partition_by_endpoint_layers() {
        let (_, p, _) = setup(
            &["a", "b", "u"],
            &[("a", "b"), ("b", "a"), ("u", "u"), ("b", "u")],
            &["a"],
        );
        assert_eq!(p.e1, [(0, 1), (1, 0)]);
        assert_eq!(p.e4, [(2, 2)]);
        assert_eq!(p.e3, [(1, 2)]);
        assert!(p.long_edges.is_empty() && p.in_in_edges.is_empty());
    }

    #[test]
    fn proper_crossing_primitive() {
        // left: u, v ; right: x, y
        let (u, v, x, y) = (0, 1, 2, 3);
        let left = [u, v];
        let right = [x, y];
        assert!(proper_edges_cross((u, y), (v, x), &left, &right));
        assert!(proper_edges_cross((y, u), (v, x), &left, &right));
        assert!(!proper_edges_cross((u, x), (u, y), &left, &right));
        assert!(!proper_edges_cross((u, x), (v, y), &left, &right));
    }

    #[test]
    fn arc_crossing_primitive() {
        let order = [0, 1, 2, 3];
        assert!(arc_edges_cross((0, 2), (1, 3), &order));
        assert!(arc_edges_cross((2, 0), (3, 1), &order));
        assert!(!arc_edges_cross((0, 3), (1, 2), &order));
        assert!(!arc_edges_cross((0, 1), (2, 3), &order));
        assert!(!arc_edges_cross((0, 2), (2, 3), &order));
    }

    #[test]
    fn weight_examples() {
        let (_, p, _) = setup(&["a", "b"], &[("a", "b")], &["a"]);
        assert_eq!(weighted_objective_weight(&p), 1);
        let mut q = p.clone();
        q.e3 = vec![(0, 0); 4];
        assert_eq!(weighted_objective_weight(&q), 7);
    }

    #[test]
    fn single_edge_has_no_crossings() {
        let (_, p, layers) = setup(&["a", "b"], &[("a", "b")], &["a"]);
        let mut d = LayeredDrawing::from_layers(&layers);
        d.red.insert(1, 0);
        let r = count_crossings(&d, &p);
        assert_eq!(r.total(), 0);
        assert_eq!(r.weighted_objective, 0);
        assert!(satisfies_rec(&d));
    }

    #[test]
    fn red_edges_rec() {
        let (_, p, layers) = setup(
            &["u", "v", "x", "y"],
            &[("u", "x"), ("u", "y"), ("v", "x"), ("v", "y")],
            &["u", "v"],
        );
        let mut d = LayeredDrawing::from_layers(&layers);
        d.red.insert(2, 0);
        d.red.insert(3, 0);
        assert!(satisfies_rec(&d));
        d.red.insert(2, 1);
        d.red.insert(3, 0);
        assert!(!satisfies_rec(&d));
        assert_eq!(count_crossings(&d, &p).rec_violations, 1);
        assert_eq!(count_crossings(&d, &p).c1, 1);
    }

    #[test]
    fn interleaving_counter() {
        let mut s = vec![(0, 2), (1, 3), (0, 3), (1, 2), (2, 2)];
        // (0,2)x(1,3) only; (0,3) nests (1,2); self-loop ignored
        assert_eq!(count_interleavings(&mut s), 1);
    }

    #[test]
    fn validate_rejects_bad_permutation() {
        let (_, p, layers) = setup(&["a", "b"], &[("a", "b")], &["a"]);
        let mut d = LayeredDrawing::from_layers(&layers);
        assert!(d.validate(&p).is_err());
        d.red.insert(1, 0);
        assert!(d.validate(&p).is_ok());
        d.out_order.push(0);
        assert!(d.validate(&p).is_err());
    }
}
