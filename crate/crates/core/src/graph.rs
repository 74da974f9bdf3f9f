//! Instance types, coverage accounting and solution carriers shared by every solver.
//!
//! Vertex, edge and color ids are 1-based. Ties are always broken towards the
//! lowest id.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

macro_rules! one_based_id {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(
            Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(pub usize);

        impl $name {
            /// Builds the id of the `index`-th element (0-based).
            pub fn from_index(index: usize) -> Self {
                Self(index + 1)
            }

            /// 0-based position of the element.
            pub fn index(self) -> usize {
                self.0 - 1
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

one_based_id!(VertexId, "1-based vertex id.");
one_based_id!(EdgeId, "1-based edge id.");

/// 1-based color id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Color(pub u32);

impl Color {
    pub fn from_index(index: usize) -> Self {
        Color(index as u32 + 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_vertex(v: VertexId, n: usize) -> Result<()> {
    if v.0 == 0 || v.0 > n {
        return Err(Error::VertexOutOfRange { id: v.0, count: n });
    }
    Ok(())
}

fn check_edge(e: EdgeId, m: usize) -> Result<()> {
    if e.0 == 0 || e.0 > m {
        return Err(Error::EdgeOutOfRange { id: e.0, count: m });
    }
    Ok(())
}

fn check_color(c: Color, colors: usize) -> Result<()> {
    if c.0 == 0 || c.0 as usize > colors {
        return Err(Error::ColorOutOfRange {
            color: c.0,
            count: colors,
        });
    }
    Ok(())
}

/// Per-color coverage targets `r_1..r_ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoverageRequirements(Vec<u64>);

impl CoverageRequirements {
    pub fn new(targets: Vec<u64>) -> Self {
        CoverageRequirements(targets)
    }

    pub fn zeros(colors: usize) -> Self {
        CoverageRequirements(vec![0; colors])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, color: Color) -> u64 {
        self.0[color.index()]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn all_zero(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }

    /// True when every count meets its target.
    pub fn met_by(&self, counts: &[u64]) -> bool {
        self.0.len() == counts.len() && self.0.iter().zip(counts).all(|(r, c)| c >= r)
    }
}

macro_rules! id_set {
    ($name:ident, $id:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(BTreeSet<$id>);

        impl $name {
            pub fn new() -> Self {
                Self(BTreeSet::new())
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn contains(&self, id: $id) -> bool {
                self.0.contains(&id)
            }

            pub fn insert(&mut self, id: $id) -> bool {
                self.0.insert(id)
            }

            pub fn remove(&mut self, id: $id) -> bool {
                self.0.remove(&id)
            }

            /// Ids in ascending order.
            pub fn iter(&self) -> impl Iterator<Item = $id> + '_ {
                self.0.iter().copied()
            }

            pub fn to_vec(&self) -> Vec<$id> {
                self.iter().collect()
            }
        }

        impl FromIterator<$id> for $name {
            fn from_iter<I: IntoIterator<Item = $id>>(iter: I) -> Self {
                Self(iter.into_iter().collect())
            }
        }

        impl<'a> IntoIterator for &'a $name {
            type Item = $id;
            type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, $id>>;

            fn into_iter(self) -> Self::IntoIter {
                self.0.iter().copied()
            }
        }
    };
}

id_set!(VertexSet, VertexId, "Duplicate-free set of vertex ids.");
id_set!(EdgeSet, EdgeId, "Duplicate-free set of edge ids.");

/// Endpoints of a colorful-vertex-cover edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeEnds {
    /// An edge with a single endpoint, covered iff that vertex is chosen.
    Pendant(VertexId),
    Pair(VertexId, VertexId),
}

impl EdgeEnds {
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        let (a, b) = match *self {
            EdgeEnds::Pendant(v) => (v, None),
            EdgeEnds::Pair(u, v) => (u, Some(v)),
        };
        std::iter::once(a).chain(b)
    }

    pub fn touches(&self, v: VertexId) -> bool {
        match *self {
            EdgeEnds::Pendant(u) => u == v,
            EdgeEnds::Pair(a, b) => a == v || b == v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CvcEdge {
    pub ends: EdgeEnds,
    pub color: Color,
}

/// Edge-colored multigraph with per-color coverage requirements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CvcInstance {
    vertices: usize,
    colors: usize,
    edges: Vec<CvcEdge>,
    requirements: CoverageRequirements,
}

impl CvcInstance {
    pub fn new(
        vertices: usize,
        colors: usize,
        edges: Vec<CvcEdge>,
        requirements: CoverageRequirements,
    ) -> Result<Self> {
        if requirements.len() != colors {
            return Err(Error::InvalidInstance(format!(
                "{} requirements given for {} colors",
                requirements.len(),
                colors
            )));
        }
        for edge in &edges {
            check_color(edge.color, colors)?;
            for v in edge.ends.vertices() {
                check_vertex(v, vertices)?;
            }
            if let EdgeEnds::Pair(u, v) = edge.ends {
                if u == v {
                    return Err(Error::InvalidInstance(format!(
                        "self-loop at vertex {u}; use a pendant edge instead"
                    )));
                }
            }
        }
        Ok(CvcInstance {
            vertices,
            colors,
            edges,
            requirements,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_colors(&self) -> usize {
        self.colors
    }

    pub fn edges(&self) -> &[CvcEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &CvcEdge {
        &self.edges[e.index()]
    }

    pub fn requirements(&self) -> &CoverageRequirements {
        &self.requirements
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices).map(VertexId::from_index)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId::from_index)
    }

    /// `|𝒞_t|` for every color.
    pub fn color_class_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0; self.colors];
        for e in &self.edges {
            sizes[e.color.index()] += 1;
        }
        sizes
    }

    /// Edges of one color, ascending.
    pub fn color_class(&self, color: Color) -> Vec<EdgeId> {
        self.edge_ids()
            .filter(|&e| self.edge(e).color == color)
            .collect()
    }

    /// True when some requirement exceeds the size of its color class.
    pub fn requirements_exceed_classes(&self) -> bool {
        !self.requirements.met_by(&self.color_class_sizes())
    }
}

/// Simple graph with per-vertex colors.
#[derive(Debug, Clone)]
pub struct VertexColoredGraph {
    colors: usize,
    vertex_colors: Vec<Color>,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    lookup: HashMap<(VertexId, VertexId), EdgeId>,
}

impl PartialEq for VertexColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.colors == other.colors
            && self.vertex_colors == other.vertex_colors
            && self.edges == other.edges
    }
}

impl Eq for VertexColoredGraph {}

impl VertexColoredGraph {
    /// Builds the graph; each edge is stored with its smaller endpoint first.
    pub fn new(
        colors: usize,
        vertex_colors: Vec<Color>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self> {
        let n = vertex_colors.len();
        for &c in &vertex_colors {
            check_color(c, colors)?;
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut lookup = HashMap::with_capacity(edges.len());
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {u}")));
            }
            let key = (u.min(v), u.max(v));
            let id = EdgeId::from_index(i);
            if lookup.insert(key, id).is_some() {
                return Err(Error::InvalidInstance(format!(
                    "duplicate edge ({}, {})",
                    key.0, key.1
                )));
            }
            adjacency[u.index()].push((v, id));
            adjacency[v.index()].push((u, id));
            normalized.push(key);
        }
        Ok(VertexColoredGraph {
            colors,
            vertex_colors,
            edges: normalized,
            adjacency,
            lookup,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_colors.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_colors(&self) -> usize {
        self.colors
    }

    pub fn color_of(&self, v: VertexId) -> Color {
        self.vertex_colors[v.index()]
    }

    pub fn vertex_colors(&self) -> &[Color] {
        &self.vertex_colors
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.index()]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_vertices()).map(VertexId::from_index)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.num_edges()).map(EdgeId::from_index)
    }

    /// `(neighbor, edge)` pairs in insertion order.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.lookup.get(&(u.min(v), u.max(v))).copied()
    }

    /// Lowest-id edge incident to `v`.
    pub fn lowest_incident_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.adjacency[v.index()].iter().map(|&(_, e)| e).min()
    }

    /// Vertices of one color, ascending.
    pub fn color_class(&self, color: Color) -> Vec<VertexId> {
        self.vertex_ids()
            .filter(|&v| self.color_of(v) == color)
            .collect()
    }

    /// `n_x` for every color.
    pub fn color_class_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0; self.colors];
        for c in &self.vertex_colors {
            sizes[c.index()] += 1;
        }
        sizes
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        check_vertex(v, self.num_vertices())
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        check_edge(e, self.num_edges())
    }

    pub fn check_requirements(&self, req: &CoverageRequirements) -> Result<()> {
        if req.len() != self.colors {
            return Err(Error::InvalidInstance(format!(
                "{} requirements given for {} colors",
                req.len(),
                self.colors
            )));
        }
        Ok(())
    }

    /// Vertices touched by `edges`.
    pub fn covered_vertices(&self, edges: &EdgeSet) -> Result<VertexSet> {
        let mut covered = VertexSet::new();
        for e in edges {
            self.check_edge(e)?;
            let (u, v) = self.endpoints(e);
            covered.insert(u);
            covered.insert(v);
        }
        Ok(covered)
    }
}

/// A set of pairwise endpoint-disjoint edges of some graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching(EdgeSet);

impl Matching {
    /// Checks ids and endpoint-disjointness against `g`.
    pub fn new(g: &VertexColoredGraph, edges: EdgeSet) -> Result<Self> {
        let mut used = vec![false; g.num_vertices()];
        for e in &edges {
            g.check_edge(e)?;
            let (u, v) = g.endpoints(e);
            for w in [u, v] {
                if std::mem::replace(&mut used[w.index()], true) {
                    return Err(Error::ContractViolation(format!(
                        "edges share vertex {w}; not a matching"
                    )));
                }
            }
        }
        Ok(Matching(edges))
    }

    pub fn empty() -> Self {
        Matching(EdgeSet::new())
    }

    pub(crate) fn from_edges_unchecked(edges: EdgeSet) -> Self {
        Matching(edges)
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.0
    }

    pub fn into_edges(self) -> EdgeSet {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter()
    }
}

/// Number of color-`t` edges with an endpoint in `chosen`, per color.
pub fn coverage_by_vertices(inst: &CvcInstance, chosen: &VertexSet) -> Result<Vec<u64>> {
    let mut selected = vec![false; inst.num_vertices()];
    for v in chosen {
        check_vertex(v, inst.num_vertices())?;
        selected[v.index()] = true;
    }
    let mut counts = vec![0; inst.num_colors()];
    for edge in inst.edges() {
        if edge.ends.vertices().any(|v| selected[v.index()]) {
            counts[edge.color.index()] += 1;
        }
    }
    Ok(counts)
}

/// Number of distinct color-`x` vertices touched by `chosen`, per color.
pub fn coverage_by_edges(g: &VertexColoredGraph, chosen: &EdgeSet) -> Result<Vec<u64>> {
    let covered = g.covered_vertices(chosen)?;
    let mut counts = vec![0; g.num_colors()];
    for v in &covered {
        counts[g.color_of(v).index()] += 1;
    }
    Ok(counts)
}

pub fn is_feasible_cvc(inst: &CvcInstance, chosen: &VertexSet) -> Result<bool> {
    Ok(inst
        .requirements()
        .met_by(&coverage_by_vertices(inst, chosen)?))
}

pub fn is_feasible_cec(
    g: &VertexColoredGraph,
    req: &CoverageRequirements,
    chosen: &EdgeSet,
) -> Result<bool> {
    g.check_requirements(req)?;
    Ok(req.met_by(&coverage_by_edges(g, chosen)?))
}

/// Drops "middle" edges until the chosen edges form a star forest.
///
/// An edge whose endpoints both have degree at least two inside the current
/// set is redundant for coverage. Edges are scanned by ascending id and the
/// scan restarts after every removal.
pub fn normalize_to_stars(g: &VertexColoredGraph, chosen: &EdgeSet) -> Result<EdgeSet> {
    let mut degree = vec![0usize; g.num_vertices()];
    for e in chosen {
        g.check_edge(e)?;
        let (u, v) = g.endpoints(e);
        degree[u.index()] += 1;
        degree[v.index()] += 1;
    }
    let mut kept = chosen.clone();
    loop {
        let middle = kept.iter().find(|&e| {
            let (u, v) = g.endpoints(e);
            degree[u.index()] >= 2 && degree[v.index()] >= 2
        });
        let Some(e) = middle else {
            return Ok(kept);
        };
        let (u, v) = g.endpoints(e);
        kept.remove(e);
        degree[u.index()] -= 1;
        degree[v.index()] -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    fn e(i: usize) -> EdgeId {
        EdgeId(i)
    }

    fn pair(a: usize, b: usize, c: u32) -> CvcEdge {
        CvcEdge {
            ends: EdgeEnds::Pair(v(a), v(b)),
            color: Color(c),
        }
    }

    fn star3(r: u64) -> CvcInstance {
        CvcInstance::new(
            4,
            1,
            vec![pair(1, 2, 1), pair(1, 3, 1), pair(1, 4, 1)],
            CoverageRequirements::new(vec![r]),
        )
        .unwrap()
    }

    fn colored_path(colors: &[u32], num_colors: usize) -> VertexColoredGraph {
        let vc = colors.iter().map(|&c| Color(c)).collect();
        let edges = (1..colors.len()).map(|i| (v(i), v(i + 1))).collect();
        VertexColoredGraph::new(num_colors, vc, edges).unwrap()
    }

    #[test]
    fn star_center_covers_all() {
        let inst = star3(2);
        let s: VertexSet = [v(1)].into_iter().collect();
        assert_eq!(coverage_by_vertices(&inst, &s).unwrap(), vec![3]);
        assert!(is_feasible_cvc(&inst, &s).unwrap());
    }

    #[test]
    fn empty_vertex_set_covers_nothing() {
        let inst = star3(1);
        assert_eq!(
            coverage_by_vertices(&inst, &VertexSet::new()).unwrap(),
            vec![0]
        );
        assert!(!is_feasible_cvc(&inst, &VertexSet::new()).unwrap());
        assert!(is_feasible_cvc(&star3(0), &VertexSet::new()).unwrap());
    }

    #[test]
    fn triangle_incidence() {
        let inst = CvcInstance::new(
            3,
            2,
            vec![pair(1, 2, 1), pair(2, 3, 2), pair(1, 3, 1)],
            CoverageRequirements::zeros(2),
        )
        .unwrap();
        let s: VertexSet = [v(2)].into_iter().collect();
        assert_eq!(coverage_by_vertices(&inst, &s).unwrap(), vec![1, 1]);
    }

    #[test]
    fn pendant_edges_count_only_their_endpoint() {
        let inst = CvcInstance::new(
            2,
            1,
            vec![CvcEdge {
                ends: EdgeEnds::Pendant(v(1)),
                color: Color(1),
            }],
            CoverageRequirements::new(vec![1]),
        )
        .unwrap();
        let s1: VertexSet = [v(1)].into_iter().collect();
        let s2: VertexSet = [v(2)].into_iter().collect();
        assert_eq!(coverage_by_vertices(&inst, &s1).unwrap(), vec![1]);
        assert_eq!(coverage_by_vertices(&inst, &s2).unwrap(), vec![0]);
    }

    #[test]
    fn invalid_vertex_is_an_input_error() {
        let s: VertexSet = [v(9)].into_iter().collect();
        assert!(matches!(
            coverage_by_vertices(&star3(1), &s),
            Err(Error::VertexOutOfRange { id: 9, count: 4 })
        ));
        let g = colored_path(&[1, 1, 1], 1);
        let es: EdgeSet = [e(5)].into_iter().collect();
        assert!(matches!(
            coverage_by_edges(&g, &es),
            Err(Error::EdgeOutOfRange { id: 5, count: 2 })
        ));
    }

    #[test]
    fn instance_validation() {
        assert!(
            CvcInstance::new(2, 1, vec![pair(1, 3, 1)], CoverageRequirements::zeros(1)).is_err()
        );
        assert!(
            CvcInstance::new(2, 1, vec![pair(1, 2, 2)], CoverageRequirements::zeros(1)).is_err()
        );
        assert!(
            CvcInstance::new(2, 1, vec![pair(1, 1, 1)], CoverageRequirements::zeros(1)).is_err()
        );
        assert!(CvcInstance::new(2, 2, vec![], CoverageRequirements::zeros(1)).is_err());
        // parallel edges are allowed
        assert!(CvcInstance::new(
            2,
            1,
            vec![pair(1, 2, 1), pair(2, 1, 1)],
            CoverageRequirements::zeros(1)
        )
        .is_ok());

        let dup = VertexColoredGraph::new(1, vec![Color(1); 2], vec![(v(1), v(2)), (v(2), v(1))]);
        assert!(matches!(dup, Err(Error::InvalidInstance(_))));
        let bad_color = VertexColoredGraph::new(1, vec![Color(2)], vec![]);
        assert!(matches!(bad_color, Err(Error::ColorOutOfRange { .. })));
    }

    #[test]
    fn edge_coverage_counts_distinct_vertices() {
        let g = colored_path(&[1, 1, 1], 1);
        let es: EdgeSet = [e(1)].into_iter().collect();
        assert_eq!(coverage_by_edges(&g, &es).unwrap(), vec![2]);
        assert_eq!(coverage_by_edges(&g, &EdgeSet::new()).unwrap(), vec![0]);

        let g = colored_path(&[1, 2, 1], 2);
        let es: EdgeSet = [e(1), e(2)].into_iter().collect();
        assert_eq!(coverage_by_edges(&g, &es).unwrap(), vec![2, 1]);
        let req = CoverageRequirements::new(vec![2, 1]);
        assert!(is_feasible_cec(&g, &req, &es).unwrap());
        let req = CoverageRequirements::new(vec![2, 2]);
        assert!(!is_feasible_cec(&g, &req, &es).unwrap());
    }

    #[test]
    fn path_loses_its_middle_edge() {
        let g = colored_path(&[1, 1, 1, 1], 1);
        let all: EdgeSet = g.edge_ids().collect();
        let stars = normalize_to_stars(&g, &all).unwrap();
        assert_eq!(stars.to_vec(), vec![e(1), e(3)]);
    }

    #[test]
    fn star_is_unchanged() {
        let g = VertexColoredGraph::new(1, vec![Color(1); 3], vec![(v(1), v(2)), (v(1), v(3))])
            .unwrap();
        let all: EdgeSet = g.edge_ids().collect();
        assert_eq!(normalize_to_stars(&g, &all).unwrap(), all);
    }

    #[test]
    fn triangle_keeps_two_edges() {
        let g = VertexColoredGraph::new(
            1,
            vec![Color(1); 3],
            vec![(v(1), v(2)), (v(2), v(3)), (v(1), v(3))],
        )
        .unwrap();
        let all: EdgeSet = g.edge_ids().collect();
        let stars = normalize_to_stars(&g, &all).unwrap();
        assert_eq!(stars.len(), 2);
        assert_eq!(g.covered_vertices(&stars).unwrap().len(), 3);
        // first removable edge in id order is dropped
        assert_eq!(stars.to_vec(), vec![e(2), e(3)]);
    }

    #[test]
    fn matching_rejects_shared_endpoints() {
        let g = colored_path(&[1, 1, 1], 1);
        let both: EdgeSet = g.edge_ids().collect();
        assert!(matches!(
            Matching::new(&g, both),
            Err(Error::ContractViolation(_))
        ));
        let one: EdgeSet = [e(2)].into_iter().collect();
        assert_eq!(Matching::new(&g, one).unwrap().len(), 1);
    }
}
