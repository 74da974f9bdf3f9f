//! Exhaustive oracles and seeded random instance generators.
//!
//! Every oracle enumerates candidate solutions in order of size and, among
//! the optimal ones, returns the lexicographically smallest id list. Inputs
//! beyond the enumeration caps are refused with [`Error::CapExceeded`].

use std::ops::RangeInclusive;

use itertools::Itertools;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cec::BmInstance;
use crate::error::{Error, Result};
use crate::geometry::{
    lines_hit, points_covered, AxisLine, ColoredPoint, GeometryInstance, GeometryKind, Orientation,
};
use crate::graph::{
    coverage_by_vertices, Color, CoverageRequirements, CvcEdge, CvcInstance, EdgeEnds, EdgeId,
    EdgeSet, Matching, VertexColoredGraph, VertexId, VertexSet,
};
use crate::matching::TmInstance;
use crate::scalar::Scalar;

pub const CVC_VERTEX_CAP: usize = 16;
pub const CEC_EDGE_CAP: usize = 20;
/// Matching oracles walk all matchings, whose number depends on the vertex count.
pub const MATCHING_VERTEX_CAP: usize = 20;
pub const GEOMETRY_LINE_CAP: usize = 16;
pub const GEOMETRY_POINT_CAP: usize = 20;

fn cap(what: &'static str, actual: usize, cap: usize) -> Result<()> {
    if actual > cap {
        return Err(Error::CapExceeded { what, actual, cap });
    }
    Ok(())
}

/// Smallest vertex cover meeting the requirements.
pub fn brute_force_cvc(inst: &CvcInstance) -> Result<Option<VertexSet>> {
    cap("vertices", inst.num_vertices(), CVC_VERTEX_CAP)?;
    for k in 0..=inst.num_vertices() {
        for combo in inst.vertex_ids().combinations(k) {
            let chosen: VertexSet = combo.into_iter().collect();
            if inst
                .requirements()
                .met_by(&coverage_by_vertices(inst, &chosen)?)
            {
                return Ok(Some(chosen));
            }
        }
    }
    Ok(None)
}

/// Smallest edge set touching `r_x` vertices of every color `x`.
pub fn brute_force_cec(
    g: &VertexColoredGraph,
    req: &CoverageRequirements,
) -> Result<Option<EdgeSet>> {
    g.check_requirements(req)?;
    cap("edges", g.num_edges(), CEC_EDGE_CAP)?;
    let colors = g.num_colors();
    for k in 0..=g.num_edges() {
        for combo in g.edge_ids().combinations(k) {
            let mut touched = vec![false; g.num_vertices()];
            let mut counts = vec![0; colors];
            for &e in &combo {
                let (u, v) = g.endpoints(e);
                for w in [u, v] {
                    if !std::mem::replace(&mut touched[w.index()], true) {
                        counts[g.color_of(w).index()] += 1;
                    }
                }
            }
            if req.met_by(&counts) {
                return Ok(Some(combo.into_iter().collect()));
            }
        }
    }
    Ok(None)
}

/// Calls `visit` once for every matching of `g`, the empty one included.
///
/// The slice holds the matching's edges in discovery order, not sorted.
pub fn for_each_matching(g: &VertexColoredGraph, mut visit: impl FnMut(&[EdgeId])) -> Result<()> {
    cap("vertices", g.num_vertices(), MATCHING_VERTEX_CAP)?;
    let mut used = vec![false; g.num_vertices()];
    let mut stack = Vec::new();
    walk_matchings(g, 0, &mut used, &mut stack, &mut visit);
    Ok(())
}

fn walk_matchings(
    g: &VertexColoredGraph,
    from: usize,
    used: &mut [bool],
    stack: &mut Vec<EdgeId>,
    visit: &mut impl FnMut(&[EdgeId]),
) {
    let Some(v) = (from..used.len()).find(|&v| !used[v]) else {
        visit(stack);
        return;
    };
    used[v] = true;
    walk_matchings(g, v + 1, used, stack, visit);
    for &(u, e) in g.incident(VertexId::from_index(v)) {
        if u.index() > v && !used[u.index()] {
            used[u.index()] = true;
            stack.push(e);
            walk_matchings(g, v + 1, used, stack, visit);
            stack.pop();
            used[u.index()] = false;
        }
    }
    used[v] = false;
}

/// Best matching among those accepted by `keep`, by `better` on sizes and
/// then by smallest sorted id list.
fn best_matching(
    g: &VertexColoredGraph,
    mut keep: impl FnMut(&[EdgeId]) -> bool,
    better: impl Fn(usize, usize) -> bool,
) -> Result<Option<Matching>> {
    let mut best: Option<Vec<EdgeId>> = None;
    for_each_matching(g, |edges| {
        if let Some(b) = &best {
            if edges.len() != b.len() && !better(edges.len(), b.len()) {
                return;
            }
        }
        if !keep(edges) {
            return;
        }
        let mut sorted = edges.to_vec();
        sorted.sort();
        let replace = match &best {
            None => true,
            Some(b) => better(sorted.len(), b.len()) || (sorted.len() == b.len() && sorted < *b),
        };
        if replace {
            best = Some(sorted);
        }
    })?;
    Ok(best.map(|edges| Matching::from_edges_unchecked(edges.into_iter().collect())))
}

fn touched_counts(g: &VertexColoredGraph, edges: &[EdgeId]) -> Vec<u64> {
    let mut counts = vec![0; g.num_colors()];
    for &e in edges {
        let (u, v) = g.endpoints(e);
        counts[g.color_of(u).index()] += 1;
        counts[g.color_of(v).index()] += 1;
    }
    counts
}

/// Smallest matching meeting the budgeted-matching requirements.
pub fn brute_force_bm(bm: &BmInstance) -> Result<Option<Matching>> {
    let g = bm.graph();
    best_matching(
        g,
        |edges| bm.requirements().met_by(&touched_counts(g, edges)),
        |a, b| a < b,
    )
}

/// Largest matching touching every color.
pub fn brute_force_tm(tm: &TmInstance) -> Result<Option<Matching>> {
    let g = tm.graph();
    best_matching(
        g,
        |edges| touched_counts(g, edges).iter().all(|&c| c > 0),
        |a, b| a > b,
    )
}

pub fn brute_force_max_matching(g: &VertexColoredGraph) -> Result<Matching> {
    Ok(best_matching(g, |_| true, |a, b| a > b)?.unwrap_or_else(Matching::empty))
}

/// Largest matching covering every vertex of `required`.
pub fn brute_force_constrained_matching(
    g: &VertexColoredGraph,
    required: &VertexSet,
) -> Result<Option<Matching>> {
    for v in required {
        g.check_vertex(v)?;
    }
    best_matching(
        g,
        |edges| {
            let mut covered = VertexSet::new();
            for &e in edges {
                let (u, v) = g.endpoints(e);
                covered.insert(u);
                covered.insert(v);
            }
            required.iter().all(|v| covered.contains(v))
        },
        |a, b| a > b,
    )
}

/// Fewest lines (as indices into `inst.lines`) covering the required points.
pub fn brute_force_cover_points<T: Scalar>(
    inst: &GeometryInstance<T>,
) -> Result<Option<Vec<usize>>> {
    cap("lines", inst.lines.len(), GEOMETRY_LINE_CAP)?;
    let colors = inst.requirements.len();
    for k in 0..=inst.lines.len() {
        for combo in (0..inst.lines.len()).combinations(k) {
            let chosen: Vec<AxisLine<T>> = combo.iter().map(|&i| inst.lines[i].clone()).collect();
            if inst
                .requirements
                .met_by(&points_covered(&chosen, &inst.points, colors))
            {
                return Ok(Some(combo));
            }
        }
    }
    Ok(None)
}

/// Fewest points (as indices into `inst.points`) hitting the required lines.
///
/// Only the first point at each location is a candidate.
pub fn brute_force_hit_lines<T: Scalar>(inst: &GeometryInstance<T>) -> Result<Option<Vec<usize>>> {
    let candidates: Vec<usize> = (0..inst.points.len())
        .filter(|&i| {
            let p = &inst.points[i];
            !inst.points[..i].iter().any(|q| q.x == p.x && q.y == p.y)
        })
        .collect();
    cap("distinct points", candidates.len(), GEOMETRY_POINT_CAP)?;
    let colors = inst.requirements.len();
    for k in 0..=candidates.len() {
        for combo in candidates.iter().copied().combinations(k) {
            let chosen: Vec<ColoredPoint<T>> =
                combo.iter().map(|&i| inst.points[i].clone()).collect();
            if inst
                .requirements
                .met_by(&lines_hit(&inst.lines, &chosen, colors))
            {
                return Ok(Some(combo));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RequirementPolicy {
    /// Uniform in `0..=max` where `max` is the coverage of the whole instance.
    RandomFeasible,
    /// Uniform in `0..=size + 1` where `size` is the color class size; may be infeasible.
    RandomAny,
    /// Exactly the coverage of the whole instance.
    Tight,
}

/// Parameters of the random generators.
///
/// The vertex count is drawn from `vertices`. Each vertex pair becomes an edge
/// with probability `density`; `extra_density` is the per-vertex probability
/// of a pendant edge (vertex cover) or of a single-line point (geometry).
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub vertices: RangeInclusive<usize>,
    pub density: f64,
    pub colors: usize,
    pub policy: RequirementPolicy,
    pub max_edges: Option<usize>,
    pub extra_density: f64,
}

impl GeneratorConfig {
    pub fn new(
        seed: u64,
        vertices: RangeInclusive<usize>,
        density: f64,
        colors: usize,
        policy: RequirementPolicy,
    ) -> Self {
        GeneratorConfig {
            seed,
            vertices,
            density,
            colors,
            policy,
            max_edges: None,
            extra_density: 0.0,
        }
    }

    pub fn with_max_edges(self, max_edges: usize) -> Self {
        GeneratorConfig {
            max_edges: Some(max_edges),
            ..self
        }
    }

    pub fn with_extra_density(self, extra_density: f64) -> Self {
        GeneratorConfig {
            extra_density,
            ..self
        }
    }

    /// Same parameters, another seed.
    pub fn reseeded(&self, seed: u64) -> Self {
        GeneratorConfig {
            seed,
            ..self.clone()
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// `count` colors, each present when `count >= colors`, in random order.
fn random_colors(rng: &mut ChaCha8Rng, count: usize, colors: usize) -> Vec<Color> {
    if colors == 0 {
        return Vec::new();
    }
    let mut out: Vec<Color> = (0..count)
        .map(|i| {
            Color::from_index(if i < colors {
                i
            } else {
                rng.gen_range(0..colors)
            })
        })
        .collect();
    out.shuffle(rng);
    out
}

fn random_pairs(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

fn truncate<E>(rng: &mut ChaCha8Rng, items: Vec<E>, max: Option<usize>) -> Vec<E> {
    match max {
        Some(max) if items.len() > max => {
            let mut keep = index::sample(rng, items.len(), max).into_vec();
            keep.sort_unstable();
            let mut slots: Vec<Option<E>> = items.into_iter().map(Some).collect();
            keep.into_iter()
                .map(|i| slots[i].take().expect("sampled once"))
                .collect()
        }
        _ => items,
    }
}

fn draw_requirements(
    rng: &mut ChaCha8Rng,
    policy: RequirementPolicy,
    reachable: &[u64],
    sizes: &[u64],
) -> CoverageRequirements {
    let targets = reachable
        .iter()
        .zip(sizes)
        .map(|(&max, &size)| match policy {
            RequirementPolicy::RandomFeasible => rng.gen_range(0..=max),
            RequirementPolicy::RandomAny => rng.gen_range(0..=size + 1),
            RequirementPolicy::Tight => max,
        })
        .collect();
    CoverageRequirements::new(targets)
}

pub fn gen_random_cvc(cfg: &GeneratorConfig) -> CvcInstance {
    let mut rng = cfg.rng();
    let n = rng.gen_range(cfg.vertices.clone());
    let v = VertexId::from_index;
    let mut ends: Vec<EdgeEnds> = random_pairs(&mut rng, n, cfg.density)
        .into_iter()
        .map(|(a, b)| EdgeEnds::Pair(v(a), v(b)))
        .collect();
    for a in 0..n {
        if rng.gen_bool(cfg.extra_density) {
            ends.push(EdgeEnds::Pendant(v(a)));
        }
    }
    let ends = truncate(&mut rng, ends, cfg.max_edges);
    let colors = random_colors(&mut rng, ends.len(), cfg.colors);
    let edges: Vec<CvcEdge> = ends
        .into_iter()
        .zip(colors)
        .map(|(ends, color)| CvcEdge { ends, color })
        .collect();
    let mut sizes = vec![0; cfg.colors];
    for e in &edges {
        sizes[e.color.index()] += 1;
    }
    let req = draw_requirements(&mut rng, cfg.policy, &sizes, &sizes);
    CvcInstance::new(n, cfg.colors, edges, req).expect("generated instance is well formed")
}

fn gen_colored_graph(
    rng: &mut ChaCha8Rng,
    cfg: &GeneratorConfig,
    colors: usize,
) -> VertexColoredGraph {
    let n = rng.gen_range(cfg.vertices.clone());
    let pairs = random_pairs(rng, n, cfg.density);
    let pairs = truncate(rng, pairs, cfg.max_edges);
    let vertex_colors = random_colors(rng, n, colors);
    let edges = pairs
        .into_iter()
        .map(|(a, b)| (VertexId::from_index(a), VertexId::from_index(b)))
        .collect();
    VertexColoredGraph::new(colors, vertex_colors, edges).expect("generated graph is well formed")
}

/// A vertex-colored graph with requirements on the vertex colors.
pub fn gen_random_cec(cfg: &GeneratorConfig) -> (VertexColoredGraph, CoverageRequirements) {
    let mut rng = cfg.rng();
    let g = gen_colored_graph(&mut rng, cfg, cfg.colors);
    let mut reachable = vec![0; cfg.colors];
    for v in g.vertex_ids().filter(|&v| g.degree(v) > 0) {
        reachable[g.color_of(v).index()] += 1;
    }
    let req = draw_requirements(&mut rng, cfg.policy, &reachable, &g.color_class_sizes());
    (g, req)
}

pub fn gen_random_bm(cfg: &GeneratorConfig) -> BmInstance {
    let (g, req) = gen_random_cec(cfg);
    BmInstance::new(g, req).expect("requirements match the colors")
}

/// A colored graph in which every color occurs; colors missing from the draw
/// are dropped and the rest renumbered.
pub fn gen_random_tm(cfg: &GeneratorConfig) -> TmInstance {
    let mut rng = cfg.rng();
    let g = gen_colored_graph(&mut rng, cfg, cfg.colors);
    let mut used: Vec<Color> = g.vertex_colors().to_vec();
    used.sort();
    used.dedup();
    let g = if used.len() == g.num_colors() {
        g
    } else {
        let compact = g
            .vertex_colors()
            .iter()
            .map(|c| Color::from_index(used.binary_search(c).expect("color is used")))
            .collect();
        VertexColoredGraph::new(used.len(), compact, g.edges().to_vec())
            .expect("recoloring keeps the edges valid")
    };
    TmInstance::new(g).expect("every color occurs")
}

/// Axis-parallel lines with integer coordinates and points on their
/// crossings; `cfg.vertices` is the number of lines.
///
/// Each crossing carries a point with probability `density`. With probability
/// `extra_density` a line also gets a point at a half-integer position (on that
/// line only) and an existing point is repeated. Sometimes a point on no line
/// is added.
pub fn gen_random_geometry<T: Scalar>(
    cfg: &GeneratorConfig,
    kind: GeometryKind,
) -> GeometryInstance<T> {
    let mut rng = cfg.rng();
    let count = rng.gen_range(cfg.vertices.clone());
    let mut next = [0i64; 2];
    let lines: Vec<AxisLine<T>> = (0..count)
        .map(|_| {
            let vertical = rng.gen_bool(0.5);
            let slot = &mut next[vertical as usize];
            *slot += 1;
            let c = T::from_i64(*slot);
            if vertical {
                AxisLine::vertical(c)
            } else {
                AxisLine::horizontal(c)
            }
        })
        .collect();
    let half = T::one() / T::from_i64(2);
    let mut points = Vec::new();
    for h in lines
        .iter()
        .filter(|l| l.orientation == Orientation::Horizontal)
    {
        for v in lines
            .iter()
            .filter(|l| l.orientation == Orientation::Vertical)
        {
            if rng.gen_bool(cfg.density) {
                points.push(ColoredPoint::new(
                    v.coordinate.clone(),
                    h.coordinate.clone(),
                ));
            }
        }
    }
    for line in &lines {
        if rng.gen_bool(cfg.extra_density) {
            let off = T::from_i64(rng.gen_range(0..count as i64 + 1)) + half.clone();
            let p = match line.orientation {
                Orientation::Horizontal => ColoredPoint::new(off, line.coordinate.clone()),
                Orientation::Vertical => ColoredPoint::new(line.coordinate.clone(), off),
            };
            points.push(p);
        }
        if !points.is_empty() && rng.gen_bool(cfg.extra_density) {
            let k = rng.gen_range(0..points.len());
            points.push(points[k].clone());
        }
    }
    if rng.gen_bool(0.25) {
        points.push(ColoredPoint::new(half.clone(), half.clone()));
    }
    let points = truncate(&mut rng, points, cfg.max_edges);
    let colors = cfg.colors;
    let (lines, points, reachable, sizes) = match kind {
        GeometryKind::CoverPoints => {
            let point_colors = random_colors(&mut rng, points.len(), colors);
            let points: Vec<_> = points
                .into_iter()
                .zip(point_colors)
                .map(|(p, c)| p.with_color(c))
                .collect();
            let reachable = points_covered(&lines, &points, colors);
            let sizes = class_sizes(points.iter().map(|p| p.color), colors);
            (lines, points, reachable, sizes)
        }
        GeometryKind::HitLines => {
            let line_colors = random_colors(&mut rng, lines.len(), colors);
            let lines: Vec<_> = lines
                .into_iter()
                .zip(line_colors)
                .map(|(l, c)| l.with_color(c))
                .collect();
            let reachable = lines_hit(&lines, &points, colors);
            let sizes = class_sizes(lines.iter().map(|l| l.color), colors);
            (lines, points, reachable, sizes)
        }
    };
    let requirements = draw_requirements(&mut rng, cfg.policy, &reachable, &sizes);
    GeometryInstance {
        kind,
        lines,
        points,
        requirements,
    }
}

fn class_sizes(colors: impl Iterator<Item = Option<Color>>, count: usize) -> Vec<u64> {
    let mut sizes = vec![0; count];
    for c in colors.flatten() {
        sizes[c.index()] += 1;
    }
    sizes
}
