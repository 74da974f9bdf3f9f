//! Geometric instances solved through the graph problems agree with direct
//! geometric search.

use faircover::cec::solve_cec;
use faircover::geometry::{
    lift_cec_solution, lift_cvc_solution, lines_hit, lines_points_to_cec, points_covered,
    points_lines_to_cvc, GeometryInstance, GeometryKind,
};
use faircover::verify::{
    brute_force_cover_points, brute_force_cvc, brute_force_hit_lines, gen_random_geometry,
    GeneratorConfig, RequirementPolicy,
};
use faircover::Rational;

fn instance(seed: u64, kind: GeometryKind) -> GeometryInstance<Rational> {
    let cfg = GeneratorConfig::new(seed, 2..=9, 0.4, 2, RequirementPolicy::RandomFeasible)
        .with_extra_density(0.2)
        .with_max_edges(18);
    gen_random_geometry(&cfg, kind)
}

#[test]
fn covering_points_by_lines() {
    for seed in 0..40 {
        let inst = instance(seed, GeometryKind::CoverPoints);
        let (cvc, map) =
            points_lines_to_cvc(&inst.lines, &inst.points, &inst.requirements).unwrap();
        let expected = brute_force_cover_points(&inst)
            .unwrap()
            .expect("feasible by construction");
        let cover = brute_force_cvc(&cvc).unwrap().unwrap();
        let lines = lift_cvc_solution(&cover, &map).unwrap();
        assert_eq!(lines.len(), expected.len(), "seed {seed}");
        let colors = inst.requirements.len();
        assert!(inst
            .requirements
            .met_by(&points_covered(&lines, &inst.points, colors)));
    }
}

#[test]
fn hitting_lines_by_points() {
    for seed in 0..40 {
        let inst = instance(seed, GeometryKind::HitLines);
        let (g, req, map) =
            lines_points_to_cec(&inst.lines, &inst.points, &inst.requirements).unwrap();
        let expected = brute_force_hit_lines(&inst)
            .unwrap()
            .expect("feasible by construction");
        let edges = solve_cec(&g, &req).unwrap().unwrap();
        let points = lift_cec_solution(&edges, &map).unwrap();
        assert_eq!(points.len(), expected.len(), "seed {seed}");
        let colors = inst.requirements.len();
        assert!(inst
            .requirements
            .met_by(&lines_hit(&inst.lines, &points, colors)));
    }
}
