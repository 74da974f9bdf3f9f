//! Matching algorithms on [`VertexColoredGraph`]s.
//!
//! * [`max_cardinality_matching`]: Edmonds' blossom algorithm.
//! * [`constrained_max_matching`]: largest matching covering a required
//!   vertex set, via maximum-weight matching with weights `W·|e∩T| + 1`,
//!   `W = n + 1`. Since `W` exceeds any matching size, an optimum first
//!   maximizes how many required vertices are covered and then cardinality.
//! * [`solve_tropical`]: largest matching touching every color.

mod cardinality;
mod tropical;
mod weighted;

use crate::error::Result;
use crate::graph::{EdgeSet, Matching, VertexColoredGraph, VertexId, VertexSet};

pub use tropical::{solve_tropical, solve_tropical_traced, TmInstance, TropicalRoute};

pub(crate) use cardinality::maximum_matching_size;

pub(crate) fn adjacency_lists(g: &VertexColoredGraph, skip: &[bool]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.num_vertices()];
    for &(u, v) in g.edges() {
        if skip[u.index()] || skip[v.index()] {
            continue;
        }
        adj[u.index()].push(v.index());
        adj[v.index()].push(u.index());
    }
    adj
}

fn matching_from_mates(g: &VertexColoredGraph, mate: &[Option<usize>]) -> Matching {
    let edges: EdgeSet = mate
        .iter()
        .enumerate()
        .filter_map(|(v, m)| m.filter(|&u| v < u).map(|u| (v, u)))
        .map(|(v, u)| {
            g.edge_between(VertexId::from_index(v), VertexId::from_index(u))
                .expect("mate pairs are edges")
        })
        .collect();
    Matching::from_edges_unchecked(edges)
}

/// A maximum-cardinality matching of `g`.
pub fn max_cardinality_matching(g: &VertexColoredGraph) -> Matching {
    let adj = adjacency_lists(g, &vec![false; g.num_vertices()]);
    matching_from_mates(g, &cardinality::maximum_matching(&adj))
}

/// Among matchings covering every vertex of `required`, one of maximum
/// cardinality; `None` when no matching covers all of `required`.
pub fn constrained_max_matching(
    g: &VertexColoredGraph,
    required: &VertexSet,
) -> Result<Option<Matching>> {
    let mut is_required = vec![false; g.num_vertices()];
    for v in required {
        g.check_vertex(v)?;
        is_required[v.index()] = true;
    }
    let big = g.num_vertices() as i64 + 1;
    let weighted: Vec<(usize, usize, i64)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let hits = is_required[u.index()] as i64 + is_required[v.index()] as i64;
            (u.index(), v.index(), big * hits + 1)
        })
        .collect();
    let mate = weighted::maximum_weight_matching(g.num_vertices(), &weighted);
    let covers_all = required.iter().all(|v| mate[v.index()].is_some());
    Ok(covers_all.then(|| matching_from_mates(g, &mate)))
}
