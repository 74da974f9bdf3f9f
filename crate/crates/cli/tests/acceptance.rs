//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Optima come from the exhaustive oracles; LP optima are recomputed with the
//! tableau method, independently of the solve that produced the trace.

use std::time::{Duration, Instant};

use faircover::cec::{embed_bm_into_tm, lift_tm_to_bm, reduce_bm_to_tm, solve_cec};
use faircover::cvc::{solve_additive, solve_additive_traced, solve_eps_traced};
use faircover::geometry::{
    lift_cec_solution, lift_cvc_solution, lines_hit, lines_points_to_cec, points_covered,
    points_lines_to_cvc, GeometryKind,
};
use faircover::graph::{coverage_by_edges, coverage_by_vertices, is_feasible_cec, is_feasible_cvc};
use faircover::lp::{solve_with, SolveMethod};
use faircover::matching::{constrained_max_matching, max_cardinality_matching, solve_tropical};
use faircover::verify::{
    brute_force_bm, brute_force_cec, brute_force_constrained_matching, brute_force_cover_points,
    brute_force_cvc, brute_force_hit_lines, brute_force_max_matching, brute_force_tm,
    for_each_matching, gen_random_bm, gen_random_cec, gen_random_cvc, gen_random_geometry,
    gen_random_tm, GeneratorConfig, RequirementPolicy,
};
use faircover::{
    Color, CvcInstance, Matching, Rational, Scalar, VertexColoredGraph, VertexId, VertexSet,
};
use faircover_cli::{
    generate, parse_instance, run, serialize, Algorithm, InstanceKind, SolveOptions,
};

const CVC_CORPUS: u64 = 200;
const CVC_SUITE_LIMIT: Duration = Duration::from_secs(300);
const CEC_CORPUS: u64 = 200;
const BM_CORPUS: u64 = 100;
const MATCHING_CORPUS: u64 = 500;
const COLORED_CORPUS: u64 = 300;
const GEOMETRY_CORPUS: u64 = 50;
const CEC_PERF_LIMIT: Duration = Duration::from_secs(60);
const CVC_PERF_LIMIT: Duration = Duration::from_secs(120);

type Verdict = Result<String, String>;

fn int(n: usize) -> Rational {
    Rational::from_i64(n as i64)
}

fn ratio(p: i64, q: i64) -> Rational {
    Rational::from_i64(p) / Rational::from_i64(q)
}

/// n ≤ 12, m ≤ 20, ω ≤ 3, random-feasible requirements.
fn cvc_corpus() -> Vec<CvcInstance> {
    (0..CVC_CORPUS)
        .map(|seed| {
            let cfg = GeneratorConfig::new(
                seed,
                2..=12,
                0.3,
                1 + (seed % 3) as usize,
                RequirementPolicy::RandomFeasible,
            )
            .with_extra_density(0.15)
            .with_max_edges(20);
            gen_random_cvc(&cfg)
        })
        .collect()
}

fn check(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn additive_guarantee(corpus: &[CvcInstance], opts: &[usize]) -> Verdict {
    let start = Instant::now();
    for (k, inst) in corpus.iter().enumerate() {
        let cover = solve_additive(inst)
            .map_err(|e| format!("instance {k}: {e}"))?
            .ok_or_else(|| format!("instance {k}: reported infeasible"))?;
        check(is_feasible_cvc(inst, &cover).unwrap(), || {
            format!("instance {k}: infeasible cover")
        })?;
        let bound = 2 * opts[k] + inst.num_colors();
        check(cover.len() <= bound, || {
            format!(
                "instance {k}: size {} > 2*{}+{}",
                cover.len(),
                opts[k],
                inst.num_colors()
            )
        })?;
    }
    let elapsed = start.elapsed();
    check(elapsed < CVC_SUITE_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} instances, {:.1}s",
        corpus.len(),
        elapsed.as_secs_f64()
    ))
}

fn eps_guarantee(corpus: &[CvcInstance], opts: &[usize]) -> Verdict {
    let mut exact_checks = 0;
    for eps in [ratio(1, 4), ratio(1, 2), ratio(1, 1)] {
        for (k, inst) in corpus.iter().enumerate() {
            let (cover, _) = solve_eps_traced(inst, &eps)
                .map_err(|e| format!("instance {k}: {e}"))?
                .ok_or_else(|| format!("instance {k}: reported infeasible"))?;
            check(is_feasible_cvc(inst, &cover).unwrap(), || {
                format!("instance {k}: infeasible cover")
            })?;
            let bound = (int(2) + eps.clone()) * int(opts[k]);
            check(int(cover.len()) <= bound, || {
                format!(
                    "instance {k}, eps {eps}: size {} vs OPT {}",
                    cover.len(),
                    opts[k]
                )
            })?;
            // ⌈ω/ε⌉
            let threshold = (int(inst.num_colors()) / eps.clone()).ceil();
            if int(opts[k]) <= threshold {
                exact_checks += 1;
                check(cover.len() == opts[k], || {
                    format!(
                        "instance {k}, eps {eps}: size {} but OPT {} is small",
                        cover.len(),
                        opts[k]
                    )
                })?;
            }
        }
    }
    Ok(format!(
        "{} runs, {exact_checks} with OPT <= ceil(w/eps) solved exactly",
        3 * corpus.len()
    ))
}

fn sparsity(corpus: &[CvcInstance]) -> Verdict {
    let mut worst = 0;
    for (k, inst) in corpus.iter().enumerate() {
        let trace = solve_additive_traced::<Rational>(inst).unwrap().unwrap();
        let fractional = trace
            .sparse
            .values
            .iter()
            .filter(|z| !z.is_integral())
            .count();
        check(fractional <= inst.num_colors(), || {
            format!(
                "instance {k}: {fractional} fractional > {}",
                inst.num_colors()
            )
        })?;
        worst = worst.max(fractional);
    }
    Ok(format!("max fractional coordinates {worst}"))
}

fn separation(corpus: &[CvcInstance]) -> Verdict {
    for (k, inst) in corpus.iter().enumerate() {
        let trace = solve_additive_traced::<Rational>(inst).unwrap().unwrap();
        let point = trace.separated.to_lp_point(&trace.mapping);
        check(trace.cvc_lp.is_feasible(&point), || {
            format!("instance {k}: separated point violates a row")
        })?;
        let lp_opt = solve_with(&trace.cvc_lp, SolveMethod::Tableau)
            .unwrap()
            .objective;
        check(trace.separated.cost() <= int(2) * lp_opt.clone(), || {
            format!("instance {k}: cost {} > 2*{lp_opt}", trace.separated.cost())
        })?;
    }
    Ok(format!("{} instances", corpus.len()))
}

fn cec_exactness() -> Verdict {
    let mut infeasible = 0;
    for seed in 0..CEC_CORPUS {
        let policy = if seed % 2 == 0 {
            RequirementPolicy::RandomFeasible
        } else {
            RequirementPolicy::RandomAny
        };
        let cfg = GeneratorConfig::new(seed, 3..=8, 0.45, 1 + (seed % 3) as usize, policy)
            .with_max_edges(14);
        let (g, req) = gen_random_cec(&cfg);
        let expected = brute_force_cec(&g, &req).unwrap().map(|s| s.len());
        let got = solve_cec(&g, &req).map_err(|e| format!("seed {seed}: {e}"))?;
        if let Some(s) = &got {
            check(is_feasible_cec(&g, &req, s).unwrap(), || {
                format!("seed {seed}: infeasible edge set")
            })?;
        }
        let got = got.map(|s| s.len());
        check(got == expected, || {
            format!("seed {seed}: {got:?} vs oracle {expected:?}")
        })?;
        infeasible += expected.is_none() as usize;
    }
    Ok(format!("{CEC_CORPUS} instances, {infeasible} infeasible"))
}

fn reduction_identities() -> Verdict {
    let (mut embedded, mut lifted, mut reduced) = (0, 0, 0);
    for seed in 0..BM_CORPUS {
        let cfg = GeneratorConfig::new(
            seed,
            3..=7,
            0.5,
            1 + (seed % 3) as usize,
            RequirementPolicy::RandomFeasible,
        );
        let bm = gen_random_bm(&cfg);
        let n = bm.graph().num_vertices();
        let Some((tm, map)) = reduce_bm_to_tm(&bm).map_err(|e| format!("seed {seed}: {e}"))? else {
            continue;
        };
        reduced += 1;
        let mut feasible = Vec::new();
        for_each_matching(bm.graph(), |edges| {
            let m = Matching::new(bm.graph(), edges.iter().copied().collect()).unwrap();
            if bm.is_feasible(&m).unwrap() {
                feasible.push(m);
            }
        })
        .unwrap();
        for m in &feasible {
            let mt = embed_bm_into_tm(m, &bm, &map).map_err(|e| format!("seed {seed}: {e}"))?;
            check(tm.is_color_feasible(&mt), || {
                format!("seed {seed}: embedding misses a color")
            })?;
            check(mt.len() == n - m.len() + 1, || {
                format!("seed {seed}: |embed| = {} for |M| = {}", mt.len(), m.len())
            })?;
            embedded += 1;
        }

        let bm_opt = brute_force_bm(&bm).unwrap().map(|m| m.len());
        let Some(s) = brute_force_tm(&tm).unwrap().map(|m| m.len()) else {
            check(bm_opt.is_none(), || {
                format!("seed {seed}: tropical infeasible but budgeted feasible")
            })?;
            continue;
        };
        let mut optimal = Vec::new();
        for_each_matching(tm.graph(), |edges| {
            if edges.len() == s {
                let m = Matching::new(tm.graph(), edges.iter().copied().collect()).unwrap();
                if tm.is_color_feasible(&m) {
                    optimal.push(m);
                }
            }
        })
        .unwrap();
        for mt in &optimal {
            let m = lift_tm_to_bm(mt, &tm, &map).map_err(|e| format!("seed {seed}: {e}"))?;
            check(bm.is_feasible(&m).unwrap(), || {
                format!("seed {seed}: lifted matching infeasible")
            })?;
            check(m.len() + s == n + 1 && Some(m.len()) == bm_opt, || {
                format!(
                    "seed {seed}: lifted {} with s = {s}, n = {n}, oracle {bm_opt:?}",
                    m.len()
                )
            })?;
            lifted += 1;
        }
    }
    Ok(format!(
        "{reduced} reductions, {embedded} embeddings, {lifted} optimal tropical matchings lifted"
    ))
}

fn petersen() -> VertexColoredGraph {
    let v = |i: usize| VertexId(i + 1);
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((v(i), v((i + 1) % 5)));
        edges.push((v(i), v(i + 5)));
        edges.push((v(5 + i), v(5 + (i + 2) % 5)));
    }
    VertexColoredGraph::new(1, vec![Color(1); 10], edges).unwrap()
}

fn matching_engine() -> Verdict {
    for seed in 0..MATCHING_CORPUS {
        let density = [0.15, 0.3, 0.5, 0.8][seed as usize % 4];
        let (g, _) = gen_random_cec(&GeneratorConfig::new(
            seed,
            1..=10,
            density,
            1,
            RequirementPolicy::Tight,
        ));
        let got = max_cardinality_matching(&g).len();
        let expected = brute_force_max_matching(&g).unwrap().len();
        check(got == expected, || {
            format!("max matching seed {seed}: {got} vs {expected}")
        })?;
    }
    let p = max_cardinality_matching(&petersen()).len();
    check(p == 5, || format!("Petersen gave {p}"))?;
    for seed in 0..COLORED_CORPUS {
        let cfg = GeneratorConfig::new(
            seed,
            2..=9,
            0.4,
            1 + (seed % 4) as usize,
            RequirementPolicy::Tight,
        );
        let (g, _) = gen_random_cec(&cfg);
        let required: VertexSet = g.color_class(Color(1)).into_iter().collect();
        let got = constrained_max_matching(&g, &required)
            .unwrap()
            .map(|m| m.len());
        let expected = brute_force_constrained_matching(&g, &required)
            .unwrap()
            .map(|m| m.len());
        check(got == expected, || {
            format!("constrained seed {seed}: {got:?} vs {expected:?}")
        })?;

        let tm = gen_random_tm(&cfg);
        let got = solve_tropical(&tm);
        if let Some(m) = &got {
            check(tm.is_color_feasible(m), || {
                format!("tropical seed {seed}: misses a color")
            })?;
        }
        let got = got.map(|m| m.len());
        let expected = brute_force_tm(&tm).unwrap().map(|m| m.len());
        check(got == expected, || {
            format!("tropical seed {seed}: {got:?} vs {expected:?}")
        })?;
    }
    Ok(format!(
        "{MATCHING_CORPUS} graphs, Petersen 5, {COLORED_CORPUS} colored graphs"
    ))
}

fn geometry_round_trip() -> Verdict {
    let cfg = |seed| {
        GeneratorConfig::new(
            seed,
            2..=10,
            0.4,
            1 + (seed % 3) as usize,
            RequirementPolicy::RandomFeasible,
        )
        .with_extra_density(0.2)
        .with_max_edges(20)
    };
    let mut dropped = 0;
    for seed in 0..GEOMETRY_CORPUS {
        let inst = gen_random_geometry::<Rational>(&cfg(seed), GeometryKind::CoverPoints);
        let colors = inst.requirements.len();
        let (cvc, map) =
            points_lines_to_cvc(&inst.lines, &inst.points, &inst.requirements).unwrap();
        dropped += map.dropped_points().len();
        let approx = solve_additive(&cvc)
            .unwrap()
            .ok_or_else(|| format!("cover seed {seed}: infeasible"))?;
        let exact = brute_force_cvc(&cvc).unwrap().unwrap();
        for cover in [&approx, &exact] {
            let lines = lift_cvc_solution(cover, &map).unwrap();
            let graph_cov = coverage_by_vertices(&cvc, cover).unwrap();
            let geo_cov = points_covered(&lines, &inst.points, colors);
            check(graph_cov == geo_cov, || {
                format!("cover seed {seed}: {graph_cov:?} vs {geo_cov:?}")
            })?;
        }
        let opt = brute_force_cover_points(&inst).unwrap().unwrap().len();
        check(exact.len() == opt, || {
            format!("cover seed {seed}: {} vs geometric {opt}", exact.len())
        })?;

        let inst = gen_random_geometry::<Rational>(&cfg(seed), GeometryKind::HitLines);
        let (g, req, map) =
            lines_points_to_cec(&inst.lines, &inst.points, &inst.requirements).unwrap();
        let edges = solve_cec(&g, &req)
            .unwrap()
            .ok_or_else(|| format!("hit seed {seed}: infeasible"))?;
        let points = lift_cec_solution(&edges, &map).unwrap();
        let mut graph_cov = coverage_by_edges(&g, &edges).unwrap();
        graph_cov.pop();
        let geo_cov = lines_hit(&inst.lines, &points, colors);
        check(graph_cov == geo_cov, || {
            format!("hit seed {seed}: {graph_cov:?} vs {geo_cov:?}")
        })?;
        let opt = brute_force_hit_lines(&inst).unwrap().unwrap().len();
        check(points.len() == opt, || {
            format!("hit seed {seed}: {} vs geometric {opt}", points.len())
        })?;
    }
    Ok(format!(
        "{GEOMETRY_CORPUS} instances per variant, {dropped} uncoverable points dropped"
    ))
}

fn performance() -> Verdict {
    let cfg = GeneratorConfig::new(9, 60..=60, 0.25, 4, RequirementPolicy::RandomFeasible)
        .with_max_edges(400);
    let (g, req) = gen_random_cec(&cfg);
    let start = Instant::now();
    let edges = solve_cec(&g, &req)
        .map_err(|e| e.to_string())?
        .ok_or("edge cover infeasible")?;
    let cec_time = start.elapsed();
    check(is_feasible_cec(&g, &req, &edges).unwrap(), || {
        "edge cover infeasible".into()
    })?;
    check(cec_time < CEC_PERF_LIMIT, || {
        format!("edge cover took {cec_time:?}")
    })?;

    let cfg = GeneratorConfig::new(9, 200..=200, 0.06, 5, RequirementPolicy::RandomFeasible)
        .with_max_edges(1000);
    let inst = gen_random_cvc(&cfg);
    let start = Instant::now();
    let cover = solve_additive(&inst)
        .map_err(|e| e.to_string())?
        .ok_or("vertex cover infeasible")?;
    let cvc_time = start.elapsed();
    check(is_feasible_cvc(&inst, &cover).unwrap(), || {
        "vertex cover infeasible".into()
    })?;
    check(cvc_time < CVC_PERF_LIMIT, || {
        format!("vertex cover took {cvc_time:?}")
    })?;
    Ok(format!(
        "edge cover m={} in {:.2}s, vertex cover m={} in {:.2}s",
        g.num_edges(),
        cec_time.as_secs_f64(),
        inst.num_edges(),
        cvc_time.as_secs_f64()
    ))
}

fn determinism() -> Verdict {
    let algorithms: &[(InstanceKind, &[Algorithm])] = &[
        (
            InstanceKind::Cvc,
            &[Algorithm::CvcAdditive, Algorithm::CvcEps, Algorithm::Oracle],
        ),
        (
            InstanceKind::Cec,
            &[
                Algorithm::CecExact,
                Algorithm::BmExact,
                Algorithm::TmExact,
                Algorithm::Oracle,
            ],
        ),
        (
            InstanceKind::CoverPoints,
            &[Algorithm::CvcAdditive, Algorithm::CvcEps, Algorithm::Oracle],
        ),
        (
            InstanceKind::HitLines,
            &[Algorithm::CecExact, Algorithm::Oracle],
        ),
    ];
    let mut runs = 0;
    for &(kind, algos) in algorithms {
        for seed in 0..10 {
            let cfg = GeneratorConfig::new(seed, 4..=9, 0.35, 3, RequirementPolicy::RandomFeasible)
                .with_extra_density(0.2)
                .with_max_edges(18);
            let text = serialize(&generate(kind, &cfg));
            check(text == serialize(&generate(kind, &cfg)), || {
                format!("{kind:?} seed {seed}: generator differs")
            })?;
            let inst = parse_instance(&text).unwrap();
            for &algorithm in algos {
                let opts = SolveOptions {
                    algorithm,
                    epsilon: Some(ratio(1, 2)),
                    verify: true,
                };
                let report = |_| {
                    run(&inst, &opts)
                        .map(|mut r| {
                            r.wall_clock_ms = 0;
                            r.to_json()
                        })
                        .map_err(|e| e.to_string())
                };
                let (a, b) = (report(0), report(1));
                check(a == b, || {
                    format!("{kind:?} seed {seed} {}: reports differ", algorithm.name())
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!(
        "{runs} solver runs repeated, wall-clock field excluded"
    ))
}

#[test]
fn acceptance() {
    let corpus = cvc_corpus();
    let opts: Vec<usize> = corpus
        .iter()
        .map(|inst| {
            brute_force_cvc(inst)
                .unwrap()
                .expect("feasible by construction")
                .len()
        })
        .collect();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (
            "additive guarantee",
            Box::new(|| additive_guarantee(&corpus, &opts)),
        ),
        ("eps guarantee", Box::new(|| eps_guarantee(&corpus, &opts))),
        ("sparsity", Box::new(|| sparsity(&corpus))),
        ("separation", Box::new(|| separation(&corpus))),
        ("edge cover exactness", Box::new(cec_exactness)),
        ("reduction identities", Box::new(reduction_identities)),
        ("matching engine", Box::new(matching_engine)),
        ("geometry round trip", Box::new(geometry_round_trip)),
        ("performance", Box::new(performance)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = Vec::new();
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        match criterion() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
