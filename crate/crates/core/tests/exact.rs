use aflayer::exact::{
    brute_force_oracle, build_ilp, emit_lp, parse_lp, solve_exact, solve_exact_from, SolveStatus,
};
use aflayer::generate::{
    random_layered, theorem2_family, theorem2_instance, Instance, LayeredParams,
};
use aflayer::{
    assign_layers, compute_labeling, count_crossings, partition_edges, run_pipeline_on,
    satisfies_rec, ArgumentationFramework, EdgePartition, Extension, Layers, PipelineConfig,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prepare(inst: &Instance) -> (EdgePartition, Layers) {
    let lab = compute_labeling(&inst.af, &inst.extension);
    (partition_edges(&inst.af, &lab), assign_layers(&lab))
}

fn tiny() -> LayeredParams {
    LayeredParams {
        max_in: 4,
        max_out: 5,
        max_undec: 4,
        max_attacks: 12,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_matches_oracle(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_layered(&mut rng, tiny(), "t".into());
        let (p, l) = prepare(&inst);
        for rec in [true, false] {
            let exact = solve_exact(&p, &l, rec, 60_000);
            let oracle = brute_force_oracle(&p, &l, rec).unwrap();
            prop_assert_eq!(exact.status, SolveStatus::Optimal);
            prop_assert_eq!(exact.report.weighted_objective, oracle.report.weighted_objective);
            prop_assert_eq!(&exact.report, &count_crossings(&exact.drawing, &p));
            if rec {
                prop_assert!(satisfies_rec(&exact.drawing));
            }
        }
    }

    #[test]
    fn rec_never_lowers_the_optimum(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_layered(&mut rng, tiny(), "m".into());
        let (p, l) = prepare(&inst);
        let with = solve_exact(&p, &l, true, 60_000);
        let without = solve_exact(&p, &l, false, 60_000);
        prop_assert!(with.report.weighted_objective >= without.report.weighted_objective);
    }

    #[test]
    fn model_reproduces_counter(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_layered(&mut rng, tiny(), "lp".into());
        let (p, l) = prepare(&inst);
        for rec in [true, false] {
            let model = build_ilp(&p, &l, rec);
            let best = solve_exact(&p, &l, rec, 60_000);
            let values = model.assignment_for(&best.drawing);
            let (objective, feasible) = model.evaluate(&values);
            prop_assert!(feasible);
            prop_assert_eq!(objective as u64, best.report.weighted_objective);
            let parsed = parse_lp(&emit_lp(&model)).unwrap();
            prop_assert_eq!(parsed.objective_for_drawing(&best.drawing), objective);
        }
    }

    #[test]
    fn incumbent_never_changes_the_optimum(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_layered(&mut rng, tiny(), "inc".into());
        let (p, l) = prepare(&inst);
        let heuristic = run_pipeline_on(&p, &l, &PipelineConfig::default()).unwrap();
        let seeded = solve_exact_from(&p, &l, true, 60_000, heuristic.drawing.clone());
        let plain = solve_exact(&p, &l, true, 60_000);
        prop_assert_eq!(seeded.report.weighted_objective, plain.report.weighted_objective);
        prop_assert!(seeded.report.weighted_objective <= heuristic.report.weighted_objective);
    }
}

#[test]
fn rec_costs_a_crossing_on_the_family() {
    for params in theorem2_family() {
        let inst = theorem2_instance(params);
        let (p, l) = prepare(&inst);
        let with = solve_exact(&p, &l, true, 60_000);
        let without = solve_exact(&p, &l, false, 60_000);
        assert_eq!(with.status, SolveStatus::Optimal, "{}", inst.name);
        assert!(
            with.report.weighted_objective > without.report.weighted_objective,
            "{}",
            inst.name
        );
    }
}

#[test]
fn zero_objective_model_round_trips() {
    // a single IN-OUT edge: variables exist, no crossing can happen
    let af = ArgumentationFramework::from_named_attacks(&["a", "b", "c"], &[("a", "b")]).unwrap();
    let e = Extension::from_names(&af, ["a", "c"]).unwrap();
    let lab = compute_labeling(&af, &e);
    let model = build_ilp(&partition_edges(&af, &lab), &assign_layers(&lab), true);
    let text = emit_lp(&model);
    let parsed = parse_lp(&text).unwrap();
    assert_eq!(parsed.variables, model.variables);
    assert_eq!(parsed.constraints, model.constraints);
    assert!(parsed.objective.is_empty());
    assert_eq!(emit_lp(&parsed), text);
}

#[test]
fn timeout_keeps_a_valid_drawing() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let big = LayeredParams {
        max_in: 15,
        max_out: 25,
        max_undec: 15,
        max_attacks: 150,
    };
    let inst = random_layered(&mut rng, big, "big".into());
    let (p, l) = prepare(&inst);
    let r = solve_exact(&p, &l, true, 1);
    assert!(matches!(
        r.status,
        SolveStatus::Optimal | SolveStatus::TimeoutBestKnown
    ));
    assert!(r.drawing.validate(&p).is_ok());
    assert!(satisfies_rec(&r.drawing));
    assert_eq!(r.report, count_crossings(&r.drawing, &p));
}
