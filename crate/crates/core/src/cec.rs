//! Exact colorful edge cover.
//!
//! Colorful edge cover reduces to budgeted matching by hanging a pendant
//! auxiliary vertex off every vertex, and budgeted matching reduces to
//! tropical matching by complementing: instead of matching many vertices of
//! color `x`, every vertex must be matched and up to `n_x - r_x` of them may
//! use a private gadget block. Each reduction comes with a map that lifts
//! solutions back.

use crate::error::{Error, Result};
use crate::graph::{
    coverage_by_edges, Color, CoverageRequirements, EdgeId, EdgeSet, Matching, VertexColoredGraph,
    VertexId, VertexSet,
};
use crate::matching::{solve_tropical, TmInstance};

/// A budgeted-matching instance: find a smallest matching covering at least
/// `r_x` vertices of every color `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BmInstance {
    graph: VertexColoredGraph,
    requirements: CoverageRequirements,
}

impl BmInstance {
    pub fn new(graph: VertexColoredGraph, requirements: CoverageRequirements) -> Result<Self> {
        graph.check_requirements(&requirements)?;
        Ok(BmInstance {
            graph,
            requirements,
        })
    }

    pub fn graph(&self) -> &VertexColoredGraph {
        &self.graph
    }

    pub fn requirements(&self) -> &CoverageRequirements {
        &self.requirements
    }

    pub fn is_feasible(&self, m: &Matching) -> Result<bool> {
        Ok(self
            .requirements
            .met_by(&coverage_by_edges(&self.graph, m.edges())?))
    }
}

/// Bookkeeping of [`reduce_cec_to_bm`].
///
/// Kept vertices are numbered `1..=n'` in original order and their
/// auxiliaries `n'+1..=2n'` in the same order. Original edge `j` keeps id `j`;
/// auxiliary edge `(v, a(v))` follows after all original edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CecBmMap {
    kept: Vec<VertexId>,
    bm_of: Vec<Option<VertexId>>,
    removed: VertexSet,
    original_edges: usize,
    extra_color: Color,
    requirements: CoverageRequirements,
}

impl CecBmMap {
    /// Id of an original vertex in the budgeted-matching graph.
    pub fn bm_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.bm_of.get(v.index()).copied().flatten()
    }

    /// Id of `a(v)`.
    pub fn aux_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.bm_vertex(v)
            .map(|b| VertexId::from_index(self.kept.len() + b.index()))
    }

    /// Original id of a non-auxiliary budgeted-matching vertex.
    pub fn original_vertex(&self, b: VertexId) -> Option<VertexId> {
        self.kept.get(b.index()).copied()
    }

    /// The original vertex whose auxiliary edge `e` is, if it is one.
    pub fn aux_edge_owner(&self, e: EdgeId) -> Option<VertexId> {
        e.index()
            .checked_sub(self.original_edges)
            .and_then(|k| self.kept.get(k).copied())
    }

    /// Isolated vertices dropped before the reduction.
    pub fn removed(&self) -> &VertexSet {
        &self.removed
    }

    /// The color `C` of the auxiliary vertices.
    pub fn extra_color(&self) -> Color {
        self.extra_color
    }
}

/// Reduces colorful edge cover on `g` to budgeted matching.
///
/// Isolated vertices can never be covered, so they are removed first; the
/// instance is infeasible (`None`) if some requirement then exceeds the number
/// of remaining vertices of its color.
pub fn reduce_cec_to_bm(
    g: &VertexColoredGraph,
    req: &CoverageRequirements,
) -> Result<Option<(BmInstance, CecBmMap)>> {
    g.check_requirements(req)?;
    let mut kept = Vec::new();
    let mut bm_of = vec![None; g.num_vertices()];
    let mut removed = VertexSet::new();
    let mut surviving = vec![0u64; g.num_colors()];
    for v in g.vertex_ids() {
        if g.degree(v) == 0 {
            removed.insert(v);
        } else {
            kept.push(v);
            bm_of[v.index()] = Some(VertexId::from_index(kept.len() - 1));
            surviving[g.color_of(v).index()] += 1;
        }
    }
    if !req.met_by(&surviving) {
        return Ok(None);
    }

    let extra_color = Color::from_index(g.num_colors());
    let n = kept.len();
    let mut colors: Vec<Color> = kept.iter().map(|&v| g.color_of(v)).collect();
    colors.extend(std::iter::repeat_n(extra_color, n));
    let bm = |v: VertexId| bm_of[v.index()].expect("edge endpoints are not isolated");
    let mut edges: Vec<(VertexId, VertexId)> =
        g.edges().iter().map(|&(u, v)| (bm(u), bm(v))).collect();
    edges.extend((0..n).map(|k| (VertexId::from_index(k), VertexId::from_index(n + k))));

    let mut targets = req.as_slice().to_vec();
    targets.push(0);
    let instance = BmInstance::new(
        VertexColoredGraph::new(g.num_colors() + 1, colors, edges)?,
        CoverageRequirements::new(targets),
    )?;
    let map = CecBmMap {
        kept,
        bm_of,
        removed,
        original_edges: g.num_edges(),
        extra_color,
        requirements: req.clone(),
    };
    Ok(Some((instance, map)))
}

/// Maps a feasible budgeted matching back to an edge cover of `g`.
///
/// Original edges are kept; an auxiliary edge `(u, a(u))` is replaced by the
/// lowest-id original edge at `u`.
pub fn lift_bm_to_cec(m: &Matching, map: &CecBmMap, g: &VertexColoredGraph) -> Result<EdgeSet> {
    let mut covered = vec![false; g.num_vertices()];
    let mut lifted = EdgeSet::new();
    for e in m.iter() {
        if let Some(u) = map.aux_edge_owner(e) {
            covered[u.index()] = true;
            let replacement = g
                .lowest_incident_edge(u)
                .expect("kept vertices have an incident edge");
            lifted.insert(replacement);
        } else {
            g.check_edge(e)?;
            let (u, v) = g.endpoints(e);
            covered[u.index()] = true;
            covered[v.index()] = true;
            lifted.insert(e);
        }
    }
    let mut counts = vec![0u64; g.num_colors()];
    for v in g.vertex_ids().filter(|v| covered[v.index()]) {
        counts[g.color_of(v).index()] += 1;
    }
    if !map.requirements.met_by(&counts) {
        return Err(Error::ContractViolation(
            "matching does not meet the budgeted-matching requirements".into(),
        ));
    }
    Ok(lifted)
}

/// Bookkeeping of [`reduce_bm_to_tm`].
///
/// The tropical graph lists the `n` original vertices first (vertex `i` gets
/// color `i`), then the blocks `V^1, V^2, …`, then `c_t` and `d_t`. Original
/// edges keep their ids, the block edges `V^x × 𝒞_x` follow, and `(c_t, d_t)`
/// is last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BmTmMap {
    original_vertices: usize,
    original_edges: usize,
    blocks: Vec<Vec<VertexId>>,
    classes: Vec<Vec<VertexId>>,
    block_edge_offsets: Vec<usize>,
    c_t: VertexId,
    d_t: VertexId,
    color_c: Color,
    color_d: Color,
}

impl BmTmMap {
    /// `V^x`.
    pub fn block(&self, x: Color) -> &[VertexId] {
        &self.blocks[x.index()]
    }

    pub fn c_t(&self) -> VertexId {
        self.c_t
    }

    pub fn d_t(&self) -> VertexId {
        self.d_t
    }

    /// Color shared by all block vertices and `c_t`.
    pub fn color_c(&self) -> Color {
        self.color_c
    }

    /// Color of `d_t` alone.
    pub fn color_d(&self) -> Color {
        self.color_d
    }

    /// The unique color of an original vertex.
    pub fn unique_color(&self, v: VertexId) -> Color {
        Color::from_index(v.index())
    }

    /// Id of the edge `(c_t, d_t)`.
    pub fn gadget_edge(&self) -> EdgeId {
        let blocks: usize = self
            .blocks
            .iter()
            .zip(&self.classes)
            .map(|(b, c)| b.len() * c.len())
            .sum();
        EdgeId::from_index(self.original_edges + blocks)
    }

    fn block_edge(&self, x: usize, block_pos: usize, class_pos: usize) -> EdgeId {
        EdgeId::from_index(
            self.original_edges
                + self.block_edge_offsets[x]
                + block_pos * self.classes[x].len()
                + class_pos,
        )
    }

    pub fn is_original_edge(&self, e: EdgeId) -> bool {
        e.index() < self.original_edges
    }
}

/// Reduces budgeted matching to tropical matching; `None` when some
/// requirement exceeds the size of its color class.
pub fn reduce_bm_to_tm(bm: &BmInstance) -> Result<Option<(TmInstance, BmTmMap)>> {
    let g = bm.graph();
    let sizes = g.color_class_sizes();
    if !bm.requirements().met_by(&sizes) {
        return Ok(None);
    }
    let n = g.num_vertices();
    let color_c = Color::from_index(n);
    let color_d = Color::from_index(n + 1);
    let mut colors: Vec<Color> = (0..n).map(Color::from_index).collect();
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().to_vec();
    let mut blocks = Vec::with_capacity(g.num_colors());
    let mut classes = Vec::with_capacity(g.num_colors());
    let mut block_edge_offsets = Vec::with_capacity(g.num_colors());
    let mut block_edges = 0;
    for x in 0..g.num_colors() {
        let color = Color::from_index(x);
        let class = g.color_class(color);
        let size = (sizes[x] - bm.requirements().get(color)) as usize;
        let block: Vec<VertexId> = (0..size)
            .map(|_| {
                colors.push(color_c);
                VertexId::from_index(colors.len() - 1)
            })
            .collect();
        block_edge_offsets.push(block_edges);
        for &w in &block {
            for &v in &class {
                edges.push((w, v));
            }
        }
        block_edges += block.len() * class.len();
        blocks.push(block);
        classes.push(class);
    }
    colors.push(color_c);
    let c_t = VertexId::from_index(colors.len() - 1);
    colors.push(color_d);
    let d_t = VertexId::from_index(colors.len() - 1);
    edges.push((c_t, d_t));

    let tm = TmInstance::new(VertexColoredGraph::new(n + 2, colors, edges)?)?;
    let map = BmTmMap {
        original_vertices: n,
        original_edges: g.num_edges(),
        blocks,
        classes,
        block_edge_offsets,
        c_t,
        d_t,
        color_c,
        color_d,
    };
    Ok(Some((tm, map)))
}

/// Keeps the original edges of a color-feasible tropical matching.
///
/// The result meets every requirement and has `n - |M_t| + 1` edges.
pub fn lift_tm_to_bm(mt: &Matching, tm: &TmInstance, map: &BmTmMap) -> Result<Matching> {
    if !tm.is_color_feasible(mt) {
        return Err(Error::ContractViolation(
            "tropical matching misses a color".into(),
        ));
    }
    let edges: EdgeSet = mt.iter().filter(|&e| map.is_original_edge(e)).collect();
    let lifted = Matching::from_edges_unchecked(edges);
    if lifted.len() + mt.len() != map.original_vertices + 1 {
        return Err(Error::InvariantViolation(format!(
            "lifted {} edges from a tropical matching of size {} on {} vertices",
            lifted.len(),
            mt.len(),
            map.original_vertices
        )));
    }
    Ok(lifted)
}

/// Extends a feasible budgeted matching to a tropical matching of size
/// `n - |M| + 1`: adds `(c_t, d_t)` and matches the uncovered vertices of each
/// color into their block in ascending id order.
pub fn embed_bm_into_tm(m: &Matching, bm: &BmInstance, map: &BmTmMap) -> Result<Matching> {
    if !bm.is_feasible(m)? {
        return Err(Error::ContractViolation(
            "matching does not meet the budgeted-matching requirements".into(),
        ));
    }
    let covered = bm.graph().covered_vertices(m.edges())?;
    let mut edges = m.edges().clone();
    edges.insert(map.gadget_edge());
    for x in 0..map.classes.len() {
        let unmatched = map.classes[x]
            .iter()
            .enumerate()
            .filter(|(_, v)| !covered.contains(**v));
        for (block_pos, (class_pos, _)) in unmatched.enumerate() {
            if block_pos >= map.blocks[x].len() {
                return Err(Error::InvariantViolation(
                    "more unmatched vertices than block slots".into(),
                ));
            }
            edges.insert(map.block_edge(x, block_pos, class_pos));
        }
    }
    Ok(Matching::from_edges_unchecked(edges))
}

/// A minimum-size matching meeting every requirement, or `None`.
pub fn solve_bm(bm: &BmInstance) -> Result<Option<Matching>> {
    let Some((tm, map)) = reduce_bm_to_tm(bm)? else {
        return Ok(None);
    };
    match solve_tropical(&tm) {
        None => Ok(None),
        Some(mt) => lift_tm_to_bm(&mt, &tm, &map).map(Some),
    }
}

/// A minimum-size edge set covering at least `r_x` vertices of every color
/// `x`, or `None` when no edge set does.
pub fn solve_cec(g: &VertexColoredGraph, req: &CoverageRequirements) -> Result<Option<EdgeSet>> {
    let Some((bm, map)) = reduce_cec_to_bm(g, req)? else {
        return Ok(None);
    };
    match solve_bm(&bm)? {
        None => Ok(None),
        Some(m) => lift_bm_to_cec(&m, &map, g).map(Some),
    }
}
