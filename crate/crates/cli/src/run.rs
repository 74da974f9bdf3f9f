use std::time::Instant;

use faircover::cec::{solve_bm, solve_cec, BmInstance};
use faircover::cvc::{solve_additive, solve_eps_traced, EpsRoute};
use faircover::geometry::{
    lift_cec_solution, lift_cvc_solution, lines_hit, lines_points_to_cec, points_covered,
    points_lines_to_cvc, GeometryInstance, GeometryKind,
};
use faircover::graph::{coverage_by_edges, coverage_by_vertices};
use faircover::matching::{solve_tropical_traced, TmInstance, TropicalRoute};
use faircover::verify::{
    brute_force_bm, brute_force_cec, brute_force_cover_points, brute_force_cvc,
    brute_force_hit_lines, brute_force_tm,
};
use faircover::{
    CoverageRequirements, CvcInstance, EdgeSet, Rational, Scalar, VertexColoredGraph, VertexSet,
};
use thiserror::Error;

use crate::format::{Instance, ParseError};
use crate::report::{Algorithm, RunReport, Selection, Verification};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Invariant(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Parse(_) | RunError::Input(_) => EXIT_INPUT,
            RunError::Invariant(_) => EXIT_INVARIANT,
        }
    }
}

impl From<faircover::Error> for RunError {
    fn from(e: faircover::Error) -> Self {
        use faircover::Error as E;
        match e {
            E::InvariantViolation(_) | E::ContractViolation(_) | E::MalformedLp(_) => {
                RunError::Invariant(e.to_string())
            }
            _ => RunError::Input(e.to_string()),
        }
    }
}

/// Exit status for a finished run.
pub fn exit_code(report: &RunReport) -> i32 {
    if report
        .verification
        .as_ref()
        .is_some_and(|v| !v.guarantee_met)
    {
        EXIT_INVARIANT
    } else if report.feasible {
        EXIT_OK
    } else {
        EXIT_INFEASIBLE
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub epsilon: Option<Rational>,
    pub verify: bool,
}

impl SolveOptions {
    pub fn new(algorithm: Algorithm) -> Self {
        SolveOptions {
            algorithm,
            epsilon: None,
            verify: false,
        }
    }
}

/// Parses `--epsilon`; must be a positive rational.
pub fn parse_epsilon(text: &str) -> Result<Rational, RunError> {
    let bad = || {
        RunError::Input(format!(
            "epsilon must be a positive rational, found `{text}`"
        ))
    };
    if text
        .split_once('/')
        .is_some_and(|(_, q)| q.trim_start_matches('-').chars().all(|c| c == '0'))
    {
        return Err(bad());
    }
    let eps: Rational = text.parse().map_err(|_| bad())?;
    if eps <= Rational::from_i64(0) {
        return Err(bad());
    }
    Ok(eps)
}

enum Guarantee {
    Additive(usize),
    Ratio(Rational),
    Exact,
}

impl Guarantee {
    fn describe(&self) -> String {
        match self {
            Guarantee::Additive(w) => format!("size <= 2*OPT + {w}"),
            Guarantee::Ratio(eps) => format!("size <= (2 + {eps})*OPT"),
            Guarantee::Exact => "size = OPT".into(),
        }
    }

    fn holds(&self, size: Option<usize>, opt: Option<usize>) -> bool {
        match (size, opt) {
            (None, None) => true,
            (Some(s), Some(o)) => match self {
                Guarantee::Additive(w) => s <= 2 * o + w,
                Guarantee::Ratio(eps) => {
                    Rational::from_i64(s as i64)
                        <= (Rational::from_i64(2) + eps.clone()) * Rational::from_i64(o as i64)
                }
                Guarantee::Exact => s == o,
            },
            _ => false,
        }
    }
}

type OracleCall = Box<dyn FnOnce() -> faircover::Result<Option<usize>>>;

/// Vertex set found, guarantee to verify against, route notes.
type CoverRun = (Option<VertexSet>, Guarantee, Vec<String>);

/// Everything a solver path hands back to [`run`].
struct Outcome {
    selected: Option<Selection>,
    coverage: Option<Vec<u64>>,
    requirements: Vec<u64>,
    notes: Vec<String>,
    guarantee: Guarantee,
    /// Deferred oracle call.
    oracle: OracleCall,
}

fn mismatch(algorithm: Algorithm, inst: &Instance) -> RunError {
    RunError::Input(format!(
        "algorithm {} does not apply to {} instances",
        algorithm.name(),
        inst.kind_name()
    ))
}

/// Solves `inst` with the requested algorithm.
pub fn run(inst: &Instance, opts: &SolveOptions) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let outcome = match inst {
        Instance::Cvc(cvc) => run_cvc(cvc, opts)?,
        Instance::Cec {
            graph,
            requirements,
        } => run_cec(graph, requirements, opts)?,
        Instance::Geometry(geo) => match geo.kind {
            GeometryKind::CoverPoints => run_cover_points(geo, opts)?,
            GeometryKind::HitLines => run_hit_lines(geo, opts)?,
        }
        .ok_or_else(|| mismatch(opts.algorithm, inst))?,
    };
    let wall_clock_ms = start.elapsed().as_millis() as u64;

    let size = outcome.selected.as_ref().map(Selection::len);
    let mut notes = outcome.notes;
    let verification = if opts.verify {
        match (outcome.oracle)() {
            Ok(opt) => Some(Verification {
                oracle_optimum: opt,
                guarantee: outcome.guarantee.describe(),
                guarantee_met: outcome.guarantee.holds(size, opt),
            }),
            Err(faircover::Error::CapExceeded { what, actual, cap }) => {
                notes.push(format!("oracle skipped: {what} = {actual} exceeds {cap}"));
                None
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    if let (Some(coverage), Some(_)) = (&outcome.coverage, size) {
        if !CoverageRequirements::new(outcome.requirements.clone()).met_by(coverage) {
            return Err(RunError::Invariant(format!(
                "solution covers {coverage:?} but {:?} is required",
                outcome.requirements
            )));
        }
    }
    Ok(RunReport {
        problem: inst.kind_name().into(),
        algorithm: opts.algorithm,
        feasible: size.is_some(),
        size,
        selected: outcome.selected,
        coverage: outcome.coverage,
        requirements: outcome.requirements,
        verification,
        notes,
        wall_clock_ms,
    })
}

fn epsilon(opts: &SolveOptions) -> Result<Rational, RunError> {
    opts.epsilon
        .clone()
        .ok_or_else(|| RunError::Input("cvc-eps needs --epsilon".into()))
}

fn eps_note(route: EpsRoute) -> String {
    match route {
        EpsRoute::Enumerated(k) => format!("exact enumeration found size {k}"),
        EpsRoute::Additive => "fell back to the additive algorithm".into(),
    }
}

/// Runs one of the vertex-cover algorithms, with the route note if any.
fn cover_vertices(cvc: &CvcInstance, opts: &SolveOptions) -> Result<Option<CoverRun>, RunError> {
    Ok(Some(match opts.algorithm {
        Algorithm::CvcAdditive => (
            solve_additive(cvc)?,
            Guarantee::Additive(cvc.num_colors()),
            vec![],
        ),
        Algorithm::CvcEps => {
            let eps = epsilon(opts)?;
            match solve_eps_traced(cvc, &eps)? {
                Some((cover, route)) => (Some(cover), Guarantee::Ratio(eps), vec![eps_note(route)]),
                None => (None, Guarantee::Ratio(eps), vec![]),
            }
        }
        _ => return Ok(None),
    }))
}

fn run_cvc(cvc: &CvcInstance, opts: &SolveOptions) -> Result<Outcome, RunError> {
    let (cover, guarantee, notes) = match opts.algorithm {
        Algorithm::Oracle => (brute_force_cvc(cvc)?, Guarantee::Exact, vec![]),
        _ => cover_vertices(cvc, opts)?
            .ok_or_else(|| mismatch(opts.algorithm, &Instance::Cvc(cvc.clone())))?,
    };
    let coverage = cover
        .as_ref()
        .map(|c| coverage_by_vertices(cvc, c))
        .transpose()?;
    let owned = cvc.clone();
    Ok(Outcome {
        selected: cover.map(|c| Selection::Vertices(c.iter().map(|v| v.0).collect())),
        coverage,
        requirements: cvc.requirements().as_slice().to_vec(),
        notes,
        guarantee,
        oracle: Box::new(move || Ok(brute_force_cvc(&owned)?.map(|c| c.len()))),
    })
}

fn edge_selection(edges: &EdgeSet) -> Selection {
    Selection::Edges(edges.iter().map(|e| e.0).collect())
}

fn run_cec(
    graph: &VertexColoredGraph,
    req: &CoverageRequirements,
    opts: &SolveOptions,
) -> Result<Outcome, RunError> {
    let mut requirements = req.as_slice().to_vec();
    let mut notes = Vec::new();
    let (edges, oracle): (Option<EdgeSet>, OracleCall) = match opts.algorithm {
        Algorithm::CecExact | Algorithm::Oracle => {
            let edges = if opts.algorithm == Algorithm::Oracle {
                brute_force_cec(graph, req)?
            } else {
                solve_cec(graph, req)?
            };
            let (g, r) = (graph.clone(), req.clone());
            (
                edges,
                Box::new(move || Ok(brute_force_cec(&g, &r)?.map(|s| s.len()))),
            )
        }
        Algorithm::BmExact => {
            let bm = BmInstance::new(graph.clone(), req.clone())?;
            let edges = solve_bm(&bm)?.map(|m| m.into_edges());
            (
                edges,
                Box::new(move || Ok(brute_force_bm(&bm)?.map(|m| m.len()))),
            )
        }
        Algorithm::TmExact => {
            let tm = TmInstance::new(graph.clone())?;
            let (m, route) = solve_tropical_traced(&tm);
            requirements = vec![1; graph.num_colors()];
            notes.push("requirements ignored: every color must be touched".into());
            notes.push(
                match route {
                    TropicalRoute::Constrained => "solved by one constrained matching",
                    TropicalRoute::SingletonsUncoverable => {
                        "singleton colors cannot all be matched"
                    }
                    TropicalRoute::BranchAndBound => "solved by branch and bound",
                }
                .into(),
            );
            (
                m.map(|m| m.into_edges()),
                Box::new(move || Ok(brute_force_tm(&tm)?.map(|m| m.len()))),
            )
        }
        _ => {
            return Err(mismatch(
                opts.algorithm,
                &Instance::Cec {
                    graph: graph.clone(),
                    requirements: req.clone(),
                },
            ))
        }
    };
    Ok(Outcome {
        coverage: edges
            .as_ref()
            .map(|e| coverage_by_edges(graph, e))
            .transpose()?,
        selected: edges.as_ref().map(edge_selection),
        requirements,
        notes,
        guarantee: Guarantee::Exact,
        oracle,
    })
}

fn geometry_notes(dropped: &[usize], duplicates: &[usize]) -> Vec<String> {
    let mut notes = Vec::new();
    let ids = |v: &[usize]| {
        v.iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    if !dropped.is_empty() {
        notes.push(format!("points on no line dropped: {}", ids(dropped)));
    }
    if !duplicates.is_empty() {
        notes.push(format!("repeated points merged: {}", ids(duplicates)));
    }
    notes
}

fn run_cover_points(
    geo: &GeometryInstance<Rational>,
    opts: &SolveOptions,
) -> Result<Option<Outcome>, RunError> {
    let colors = geo.requirements.len();
    let (lines, guarantee, notes) = if opts.algorithm == Algorithm::Oracle {
        let lines = brute_force_cover_points(geo)?.map(|idx| {
            idx.into_iter()
                .map(|i| geo.lines[i].clone())
                .collect::<Vec<_>>()
        });
        (lines, Guarantee::Exact, vec![])
    } else {
        let (cvc, map) = points_lines_to_cvc(&geo.lines, &geo.points, &geo.requirements)?;
        let Some((cover, guarantee, mut notes)) = cover_vertices(&cvc, opts)? else {
            return Ok(None);
        };
        notes.extend(geometry_notes(map.dropped_points(), &[]));
        let lines = cover.map(|c| lift_cvc_solution(&c, &map)).transpose()?;
        (lines, guarantee, notes)
    };
    let owned = geo.clone();
    Ok(Some(Outcome {
        coverage: lines
            .as_ref()
            .map(|l| points_covered(l, &geo.points, colors)),
        selected: lines.map(|l| Selection::Lines(l.iter().map(|x| x.to_string()).collect())),
        requirements: geo.requirements.as_slice().to_vec(),
        notes,
        guarantee,
        oracle: Box::new(move || Ok(brute_force_cover_points(&owned)?.map(|s| s.len()))),
    }))
}

fn run_hit_lines(
    geo: &GeometryInstance<Rational>,
    opts: &SolveOptions,
) -> Result<Option<Outcome>, RunError> {
    let colors = geo.requirements.len();
    let (points, notes) = match opts.algorithm {
        Algorithm::Oracle => {
            let points = brute_force_hit_lines(geo)?.map(|idx| {
                idx.into_iter()
                    .map(|i| geo.points[i].clone())
                    .collect::<Vec<_>>()
            });
            (points, vec![])
        }
        Algorithm::CecExact => {
            let (g, req, map) = lines_points_to_cec(&geo.lines, &geo.points, &geo.requirements)?;
            let points = solve_cec(&g, &req)?
                .map(|e| lift_cec_solution(&e, &map))
                .transpose()?;
            (
                points,
                geometry_notes(map.dropped_points(), map.duplicate_points()),
            )
        }
        _ => return Ok(None),
    };
    let owned = geo.clone();
    Ok(Some(Outcome {
        coverage: points.as_ref().map(|p| lines_hit(&geo.lines, p, colors)),
        selected: points.map(|p| Selection::Points(p.iter().map(|x| x.to_string()).collect())),
        requirements: geo.requirements.as_slice().to_vec(),
        notes,
        guarantee: Guarantee::Exact,
        oracle: Box::new(move || Ok(brute_force_hit_lines(&owned)?.map(|s| s.len()))),
    }))
}
