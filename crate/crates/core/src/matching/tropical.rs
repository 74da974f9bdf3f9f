//! Tropical matching: a maximum matching that touches every color.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Matching, VertexColoredGraph, VertexId, VertexSet};

use super::{adjacency_lists, constrained_max_matching, maximum_matching_size};

/// A vertex-colored graph in which every color id occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmInstance {
    graph: VertexColoredGraph,
}

impl TmInstance {
    pub fn new(graph: VertexColoredGraph) -> Result<Self> {
        let sizes = graph.color_class_sizes();
        if let Some(x) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidInstance(format!(
                "color {} has no vertex",
                x + 1
            )));
        }
        Ok(TmInstance { graph })
    }

    pub fn graph(&self) -> &VertexColoredGraph {
        &self.graph
    }

    /// True when `m` touches a vertex of every color.
    pub fn is_color_feasible(&self, m: &Matching) -> bool {
        let mut seen = vec![false; self.graph.num_colors()];
        for e in m.iter() {
            let (u, v) = self.graph.endpoints(e);
            seen[self.graph.color_of(u).index()] = true;
            seen[self.graph.color_of(v).index()] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// How [`solve_tropical_traced`] reached its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TropicalRoute {
    /// A single constrained matching on the singleton-colored vertices sufficed.
    Constrained,
    /// The singleton-colored vertices cannot all be matched.
    SingletonsUncoverable,
    BranchAndBound,
}

/// Largest matching that covers at least one vertex of every color.
pub fn solve_tropical(inst: &TmInstance) -> Option<Matching> {
    solve_tropical_traced(inst).0
}

/// [`solve_tropical`] plus the route taken.
///
/// A vertex whose color occurs nowhere else must be matched by every feasible
/// answer, so the largest matching covering all such vertices bounds the
/// optimum from above. When that matching also touches the remaining colors
/// it is optimal; this is always the case for instances produced by the
/// budgeted-matching reduction. Otherwise an exact branch and bound runs.
pub fn solve_tropical_traced(inst: &TmInstance) -> (Option<Matching>, TropicalRoute) {
    let g = &inst.graph;
    let sizes = g.color_class_sizes();
    let singletons: VertexSet = g
        .vertex_ids()
        .filter(|&v| sizes[g.color_of(v).index()] == 1)
        .collect();
    let candidate =
        constrained_max_matching(g, &singletons).expect("singleton ids come from the graph");
    match candidate {
        None => (None, TropicalRoute::SingletonsUncoverable),
        Some(m) if inst.is_color_feasible(&m) => (Some(m), TropicalRoute::Constrained),
        Some(_) => (BranchAndBound::run(g), TropicalRoute::BranchAndBound),
    }
}

struct BranchAndBound<'a> {
    g: &'a VertexColoredGraph,
    used: Vec<bool>,
    chosen: Vec<EdgeId>,
    best: Option<(usize, EdgeSet)>,
}

impl<'a> BranchAndBound<'a> {
    fn run(g: &'a VertexColoredGraph) -> Option<Matching> {
        let mut search = BranchAndBound {
            g,
            used: vec![false; g.num_vertices()],
            chosen: Vec::new(),
            best: None,
        };
        search.explore();
        search
            .best
            .map(|(_, edges)| Matching::from_edges_unchecked(edges))
    }

    fn uncovered_colors(&self) -> Vec<bool> {
        let mut uncovered = vec![true; self.g.num_colors()];
        for v in self.g.vertex_ids() {
            if self.used[v.index()] {
                uncovered[self.g.color_of(v).index()] = false;
            }
        }
        uncovered
    }

    fn explore(&mut self) {
        let adj = adjacency_lists(self.g, &self.used);
        let residual = maximum_matching_size(&adj);
        let bound = self.chosen.len() + residual;
        if self.best.as_ref().is_some_and(|(size, _)| bound <= *size) {
            return;
        }

        let uncovered = self.uncovered_colors();
        // every color covered: completing with a maximum residual matching is optimal
        if uncovered.iter().all(|u| !u) {
            let mate = super::cardinality::maximum_matching(&adj);
            let mut edges: EdgeSet = self.chosen.iter().copied().collect();
            for (v, m) in mate.iter().enumerate() {
                if let Some(u) = *m {
                    if v < u {
                        let e = self
                            .g
                            .edge_between(VertexId::from_index(v), VertexId::from_index(u))
                            .expect("mate pairs are edges");
                        edges.insert(e);
                    }
                }
            }
            self.best = Some((bound, edges));
            return;
        }

        // branch on the uncovered color with the fewest free vertices
        let mut candidates: Vec<Vec<(EdgeId, VertexId, VertexId)>> =
            vec![Vec::new(); self.g.num_colors()];
        for v in self.g.vertex_ids() {
            let c = self.g.color_of(v).index();
            if !uncovered[c] {
                continue;
            }
            for &(u, e) in self.g.incident(v) {
                if !self.used[u.index()] {
                    candidates[c].push((e, v, u));
                }
            }
        }
        let mut pick: Option<usize> = None;
        for (c, list) in candidates.iter().enumerate() {
            if !uncovered[c] {
                continue;
            }
            if list.is_empty() {
                return;
            }
            if pick.is_none_or(|p| list.len() < candidates[p].len()) {
                pick = Some(c);
            }
        }
        let Some(color) = pick else { return };
        let mut branches = std::mem::take(&mut candidates[color]);
        branches.sort();
        branches.dedup_by_key(|b| b.0);
        for (e, v, u) in branches {
            self.used[v.index()] = true;
            self.used[u.index()] = true;
            self.chosen.push(e);
            self.explore();
            self.chosen.pop();
            self.used[v.index()] = false;
            self.used[u.index()] = false;
        }
    }
}
