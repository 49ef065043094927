//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use aflayer::af::{
    enumerate_semantics_bruteforce, is_admissible, is_complete, is_conflict_free, is_stable,
    Semantics,
};
use aflayer::evaluation::BenchInstance;
use aflayer::exact::{brute_force_oracle, solve_exact, SolveStatus};
use aflayer::generate::{
    random_af, random_layered, theorem1_instance, theorem2_family, theorem2_instance, Instance,
    LayeredParams,
};
use aflayer::{
    assign_layers, compute_labeling, count_crossings, grounded_extension, partition_edges,
    run_pipeline_on, satisfies_rec, serialize_af, DrawingDocument, EdgePartition, Extension,
    Format, Label, LayeredDrawing, Layers, PipelineConfig,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

/// Every drawing that must keep the red-edge constraint, collected while
/// the other criteria run.
#[derive(Default)]
struct RecLedger {
    checked: usize,
    violations: Vec<String>,
}

impl RecLedger {
    fn check(&mut self, what: &str, d: &LayeredDrawing) {
        self.checked += 1;
        if !satisfies_rec(d) {
            self.violations.push(what.to_string());
        }
    }
}

fn prepare(inst: &Instance) -> (EdgePartition, Layers) {
    let lab = compute_labeling(&inst.af, &inst.extension);
    (partition_edges(&inst.af, &lab), assign_layers(&lab))
}

fn theorem1(rec: &mut RecLedger) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 2..=6 {
        for _ in 0..5 {
            let (pu, pv) = (rng.gen_range(0..=10), rng.gen_range(0..=10));
            let inst = theorem1_instance(&mut rng, k, pu, pv);
            let (p, l) = prepare(&inst);
            let with = solve_exact(&p, &l, true, 60_000);
            let without = solve_exact(&p, &l, false, 60_000);
            rec.check(&inst.name, &with.drawing);
            let expected = (k * (k - 1) / 2) as u64;
            let ok = with.status == SolveStatus::Optimal
                && without.status == SolveStatus::Optimal
                && with.report.weighted_objective == expected
                && without.report.weighted_objective == expected
                && with.report.secondary() == 0;
            if !ok {
                failures.push(format!(
                    "{}: rec {} / {:?}, no rec {} / {:?}, expected {expected}",
                    inst.name,
                    with.report.weighted_objective,
                    with.status,
                    without.report.weighted_objective,
                    without.status
                ));
            }
            count += 1;
        }
    }
    Outcome {
        name: "theorem1-equal-optima",
        pass: failures.is_empty() && count >= 20,
        detail: format!("{count} instances, k in 2..=6; mismatches: {failures:?}"),
    }
}

fn theorem2(rec: &mut RecLedger) -> Outcome {
    let mut failures = Vec::new();
    let mut min_gap = u64::MAX;
    let family = theorem2_family();
    for params in &family {
        let inst = theorem2_instance(*params);
        let (p, l) = prepare(&inst);
        let with = solve_exact(&p, &l, true, 60_000);
        let without = solve_exact(&p, &l, false, 60_000);
        rec.check(&inst.name, &with.drawing);
        let (a, b) = (
            with.report.weighted_objective,
            without.report.weighted_objective,
        );
        let ok =
            with.status == SolveStatus::Optimal && without.status == SolveStatus::Optimal && a > b;
        min_gap = min_gap.min(a.saturating_sub(b));
        if !ok {
            failures.push(format!("{}: rec {a}, no rec {b}", inst.name));
        }
    }
    Outcome {
        name: "theorem2-rec-costs-crossings",
        pass: failures.is_empty() && !family.is_empty(),
        detail: format!(
            "{} instances, smallest gap {min_gap}; failures: {failures:?}",
            family.len()
        ),
    }
}

fn oracle_equivalence(rec: &mut RecLedger) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut mismatches = Vec::new();
    let mut solved = 0;
    for i in 0..200 {
        let inst = random_layered(&mut rng, LayeredParams::small(), format!("o{i}"));
        let (p, l) = prepare(&inst);
        assert!(inst.af.num_attacks() <= 18);
        for r in [true, false] {
            let exact = solve_exact(&p, &l, r, 60_000);
            let oracle = brute_force_oracle(&p, &l, r).expect("within oracle limits");
            if r {
                rec.check(&inst.name, &exact.drawing);
            }
            solved += 1;
            if exact.status != SolveStatus::Optimal
                || exact.report.weighted_objective != oracle.report.weighted_objective
            {
                mismatches.push(format!(
                    "{} rec={r}: exact {} {:?}, oracle {}",
                    inst.name,
                    exact.report.weighted_objective,
                    exact.status,
                    oracle.report.weighted_objective
                ));
            }
        }
    }
    Outcome {
        name: "exact-matches-oracle",
        pass: mismatches.is_empty(),
        detail: format!("{solved} solves over 200 instances; mismatches: {mismatches:?}"),
    }
}

/// Random layered instances plus shrunken copies of larger ones, kept when
/// `20 <= |A| + |R| <= 120`.
fn quality_corpus(rng: &mut ChaCha8Rng, want: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < want {
        i += 1;
        let inst = if i % 3 == 0 {
            let params = LayeredParams {
                max_in: 12,
                max_out: 16,
                max_undec: 12,
                max_attacks: 110,
            };
            let big = random_layered(rng, params, format!("big{i}"));
            let b = BenchInstance::with_extension(big.name, big.af, big.extension);
            let (n, m) = (b.af.len(), b.af.num_attacks());
            let a = b
                .adapt((n * 3 / 5).max(1), m / 2, rng.gen())
                .expect("targets below size");
            Instance {
                name: a.id,
                af: a.af,
                extension: a.extension,
            }
        } else {
            let params = LayeredParams {
                max_in: 8,
                max_out: 12,
                max_undec: 8,
                max_attacks: 60,
            };
            random_layered(rng, params, format!("q{i}"))
        };
        if (20..=120).contains(&inst.af.size()) {
            out.push(inst);
        }
    }
    out
}

fn heuristic_quality(rec: &mut RecLedger) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let corpus = quality_corpus(&mut rng, 140);
    let (mut optimal, mut within, mut timeouts) = (0, 0, 0);
    for inst in &corpus {
        let (p, l) = prepare(inst);
        let h = run_pipeline_on(&p, &l, &PipelineConfig::default()).expect("conflict-free");
        rec.check(&inst.name, &h.drawing);
        let e = solve_exact(&p, &l, true, 10_000);
        rec.check(&inst.name, &e.drawing);
        if e.status != SolveStatus::Optimal {
            timeouts += 1;
            continue;
        }
        optimal += 1;
        let (hv, ev) = (h.report.weighted_objective, e.report.weighted_objective);
        if (ev <= 2 && hv <= ev + 2) || hv <= 2 * ev {
            within += 1;
        }
    }
    let share = within as f64 / optimal.max(1) as f64;
    Outcome {
        name: "heuristic-quality",
        pass: optimal >= 100 && share >= 0.75,
        detail: format!(
            "{within}/{optimal} optimal instances within tolerance ({:.1}%), {timeouts} exact timeouts skipped",
            100.0 * share
        ),
    }
}

fn heuristic_speed(rec: &mut RecLedger) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let params = LayeredParams {
        max_in: 120,
        max_out: 250,
        max_undec: 150,
        max_attacks: 700,
    };
    let mut times = Vec::new();
    let mut sizes = Vec::new();
    while times.len() < 25 {
        let inst = random_layered(&mut rng, params, format!("s{}", times.len()));
        if inst.af.size() > 1000 {
            continue;
        }
        let (p, l) = prepare(&inst);
        let start = Instant::now();
        let out = run_pipeline_on(&p, &l, &PipelineConfig::default()).expect("conflict-free");
        times.push(start.elapsed().as_secs_f64() * 1000.0);
        sizes.push(inst.af.size());
        rec.check(&inst.name, &out.drawing);
    }
    times.sort_by(f64::total_cmp);
    let median = times[times.len() / 2];
    Outcome {
        name: "heuristic-speed",
        pass: median <= 100.0,
        detail: format!(
            "median {median:.1} ms, max {:.1} ms over {} instances of size {}..={}",
            times[times.len() - 1],
            times.len(),
            sizes.iter().min().unwrap(),
            sizes.iter().max().unwrap()
        ),
    }
}

fn semantics_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut failures = Vec::new();
    for i in 0..500 {
        let n = rng.gen_range(0..=10);
        let p = rng.gen_range(0.05..0.4);
        let af = random_af(&mut rng, n, p);
        let sets = |s| enumerate_semantics_bruteforce(&af, s).expect("n <= 10");
        let (cf, adm, co, st, gr) = (
            sets(Semantics::ConflictFree),
            sets(Semantics::Admissible),
            sets(Semantics::Complete),
            sets(Semantics::Stable),
            sets(Semantics::Grounded),
        );
        for mask in 0u32..(1 << n) {
            let e = Extension::from_indices(&af, (0..n).filter(|&a| mask >> a & 1 == 1)).unwrap();
            let got = [
                is_conflict_free(&af, &e),
                is_admissible(&af, &e),
                is_complete(&af, &e),
                is_stable(&af, &e),
            ];
            let want = [
                cf.contains(&e),
                adm.contains(&e),
                co.contains(&e),
                st.contains(&e),
            ];
            if got != want {
                failures.push(format!("af {i} set {mask:b}: {got:?} vs {want:?}"));
            }
        }
        if gr != BTreeSet::from([grounded_extension(&af)]) {
            failures.push(format!("af {i}: grounded differs"));
        }
    }
    Outcome {
        name: "semantics-oracle",
        pass: failures.is_empty(),
        detail: format!(
            "500 frameworks with n <= 10; failures: {:?}",
            &failures[..failures.len().min(5)]
        ),
    }
}

/// Quadratic reference count straight from the drawing geometry: layer
/// lines at x = 0, 1, 2, arcs as half circles right of their layer.
fn pairwise_counts(d: &LayeredDrawing, p: &EdgePartition) -> [u64; 5] {
    let mut pos = vec![0usize; p.num_arguments()];
    for order in [&d.in_order, &d.out_order, &d.undec_order] {
        for (k, &a) in order.iter().enumerate() {
            pos[a] = k;
        }
    }
    let straight = |edges: &[(usize, usize)], left: Label| {
        let seg: Vec<(i64, i64, usize, usize)> = edges
            .iter()
            .map(|&(a, b)| if p.label(a) == left { (a, b) } else { (b, a) })
            .map(|(l, r)| (pos[l] as i64, pos[r] as i64, l, r))
            .collect();
        let mut n = 0;
        for i in 0..seg.len() {
            for j in i + 1..seg.len() {
                let (l1, r1, a1, b1) = seg[i];
                let (l2, r2, a2, b2) = seg[j];
                if a1 != a2 && b1 != b2 && (l1 - l2) * (r1 - r2) < 0 {
                    n += 1;
                }
            }
        }
        n
    };
    let arcs = |edges: &[(usize, usize)]| {
        let mut n = 0;
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, e) = edges[j];
                if [a, b].iter().any(|x| *x == c || *x == e) {
                    continue;
                }
                let inside = |x: usize| pos[a].min(pos[b]) < pos[x] && pos[x] < pos[a].max(pos[b]);
                if inside(c) != inside(e) {
                    n += 1;
                }
            }
        }
        n
    };
    let reds: Vec<(usize, usize)> = d.red.iter().map(|(&o, &i)| (i, o)).collect();
    [
        straight(&p.e1, Label::In),
        arcs(&p.e2),
        straight(&p.e3, Label::Out),
        arcs(&p.e4),
        straight(&reds, Label::In),
    ]
}

fn counter_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let params = LayeredParams {
        max_in: 10,
        max_out: 12,
        max_undec: 10,
        max_attacks: 80,
    };
    let mut failures = Vec::new();
    for i in 0..500 {
        let inst = random_layered(&mut rng, params, format!("c{i}"));
        let (p, l) = prepare(&inst);
        let mut d = LayeredDrawing::from_layers(&l);
        d.in_order.shuffle(&mut rng);
        d.out_order.shuffle(&mut rng);
        d.undec_order.shuffle(&mut rng);
        for (o, srcs) in p.in_attackers() {
            d.red.insert(o, *srcs.choose(&mut rng).unwrap());
        }
        let r = count_crossings(&d, &p);
        let [c1, c2, c3, c4, red] = pairwise_counts(&d, &p);
        let choose2 = |n: usize| (n * n.saturating_sub(1) / 2) as u64;
        let w = choose2(p.e2.len()) + choose2(p.e3.len()) + choose2(p.e4.len()) + 1;
        let want = (c1, c2, c3, c4, red, w, w * c1 + c2 + c3 + c4);
        let got = (
            r.c1,
            r.c2,
            r.c3,
            r.c4,
            r.rec_violations,
            r.weight,
            r.weighted_objective,
        );
        if got != want {
            failures.push(format!("{}: {got:?} vs {want:?}", inst.name));
        }
    }
    Outcome {
        name: "crossing-counter-oracle",
        pass: failures.is_empty(),
        detail: format!(
            "500 random drawings; failures: {:?}",
            &failures[..failures.len().min(5)]
        ),
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let params = LayeredParams {
        max_in: 40,
        max_out: 60,
        max_undec: 40,
        max_attacks: 300,
    };
    let large = random_layered(&mut rng, params, "large".into());
    let small = random_layered(&mut rng, LayeredParams::small(), "small".into());
    let mut cases: Vec<Vec<String>> = Vec::new();
    for (inst, modes) in [
        (&large, &["heuristic"][..]),
        (&small, &["heuristic", "exact", "both"][..]),
    ] {
        let path = dir.path().join(format!("{}.apx", inst.name));
        std::fs::write(&path, serialize_af(&inst.af, Format::Apx)).unwrap();
        let ext = inst.extension.names(&inst.af).join(",");
        for mode in modes {
            for strategy in ["A", "B"] {
                let mut args: Vec<String> = ["solve", path.to_str().unwrap(), "--mode", mode]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                args.extend([
                    "--strategy".into(),
                    strategy.into(),
                    "--seed".into(),
                    "42".into(),
                ]);
                if !ext.is_empty() {
                    args.extend(["--extension".into(), ext.clone()]);
                }
                cases.push(args);
            }
        }
    }
    let mut failures = Vec::new();
    for args in &cases {
        let outputs: Vec<Option<String>> = (0..3).map(|_| solve_stdout(args)).collect();
        if outputs[0].is_none() || outputs.iter().any(|o| o != &outputs[0]) {
            failures.push(args.join(" "));
        }
    }
    Outcome {
        name: "determinism",
        pass: failures.is_empty(),
        detail: format!(
            "{} invocations x 3 runs; differing: {failures:?}",
            cases.len()
        ),
    }
}

/// Stdout of one `aflayer solve` run with the timing object dropped.
fn solve_stdout(args: &[String]) -> Option<String> {
    let out = Command::new(env!("CARGO_BIN_EXE_aflayer"))
        .args(args)
        .output()
        .ok()?;
    if !out.status.success() {
        return None;
    }
    let doc = DrawingDocument::from_json(std::str::from_utf8(&out.stdout).ok()?).ok()?;
    doc.timing.as_ref()?;
    Some(doc.without_timing().to_json())
}

fn main() {
    let start = Instant::now();
    let mut rec = RecLedger::default();
    let mut outcomes = vec![
        theorem1(&mut rec),
        theorem2(&mut rec),
        oracle_equivalence(&mut rec),
        heuristic_quality(&mut rec),
        heuristic_speed(&mut rec),
    ];
    outcomes.push(Outcome {
        name: "rec-invariant",
        pass: rec.violations.is_empty() && rec.checked > 0,
        detail: format!(
            "{} drawings checked; violations: {:?}",
            rec.checked, rec.violations
        ),
    });
    outcomes.push(semantics_oracle());
    outcomes.push(counter_oracle());
    outcomes.push(determinism());

    let mut failed = 0;
    for o in &outcomes {
        println!(
            "{} {}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1} s",
        outcomes.len() - failed,
        outcomes.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
