//! Approximation algorithms for colorful vertex cover.
//!
//! The additive pipeline is
//!
//! 1. solve the CVC-LP relaxation ([`build_cvc_lp`]),
//! 2. double the vertex values and assign every edge to its heavier endpoint
//!    ([`separate`]),
//! 3. re-optimize over vertex variables alone with color 1 as objective and a
//!    budget row ([`build_sparse_lp`]),
//! 4. round the at most `ω` fractional coordinates of an extreme optimum up
//!    ([`round_sparse`]).
//!
//! The result has at most `2·OPT + ω` vertices. [`solve_eps`] adds exhaustive
//! search over small sets, which turns the additive `ω` into `ε·OPT`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, CvcInstance, EdgeEnds, VertexId, VertexSet};
use crate::lp::{solve_to_optimal_basic, LinearProgram, LpSolution, LpStatus, Relation, Sense};
use crate::scalar::Scalar;
use crate::Rational;

/// Variable and row indices of the CVC-LP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CvcLpMapping {
    /// `x_j` per edge.
    pub x: Vec<usize>,
    /// `y_i` per vertex.
    pub y: Vec<usize>,
    /// One coverage row per color.
    pub coverage_rows: Vec<usize>,
    /// One `y_i + y_i' ≥ x_j` row per edge.
    pub sanity_rows: Vec<usize>,
}

/// The CVC-LP: minimize `Σ y_i` subject to `Σ_{e_j ∈ C_t} x_j ≥ r_t` per color,
/// `y_i + y_i' ≥ x_j` per edge `e_j = (v_i, v_i')` (`y_i ≥ x_j` for pendant
/// edges) and all variables in `[0, 1]`.
pub fn build_cvc_lp<T: Scalar>(inst: &CvcInstance) -> (LinearProgram<T>, CvcLpMapping) {
    let m = inst.num_edges();
    let n = inst.num_vertices();
    let objective = (0..m)
        .map(|_| T::zero())
        .chain((0..n).map(|_| T::one()))
        .collect();
    let mut lp = LinearProgram::unit_box(Sense::Minimize, objective);
    let x: Vec<usize> = (0..m).collect();
    let y: Vec<usize> = (m..m + n).collect();

    let mut coverage_rows = Vec::with_capacity(inst.num_colors());
    for t in 0..inst.num_colors() {
        let color = Color::from_index(t);
        let terms = inst
            .color_class(color)
            .into_iter()
            .map(|e| (x[e.index()], T::one()));
        let r = T::from_i64(inst.requirements().get(color) as i64);
        coverage_rows.push(lp.add_sparse_constraint(terms, Relation::Ge, r));
    }
    let mut sanity_rows = Vec::with_capacity(m);
    for e in inst.edge_ids() {
        let ends = inst.edge(e).ends;
        let terms = ends
            .vertices()
            .map(|v| (y[v.index()], T::one()))
            .chain(std::iter::once((x[e.index()], -T::one())));
        sanity_rows.push(lp.add_sparse_constraint(terms, Relation::Ge, T::zero()));
    }
    (
        lp,
        CvcLpMapping {
            x,
            y,
            coverage_rows,
            sanity_rows,
        },
    )
}

/// A CVC-LP solution in which every edge takes the value of one endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatedSolution<T> {
    /// `x̃_j` per edge.
    pub x: Vec<T>,
    /// `ỹ_i` per vertex.
    pub y: Vec<T>,
    /// `φ(e_j)`: the endpoint whose value edge `j` inherits.
    pub phi: Vec<VertexId>,
}

impl<T: Scalar> SeparatedSolution<T> {
    pub fn cost(&self) -> T {
        self.y.iter().fold(T::zero(), |acc, v| acc + v.clone())
    }

    /// The solution as a point of the CVC-LP built by [`build_cvc_lp`].
    pub fn to_lp_point(&self, mapping: &CvcLpMapping) -> Vec<T> {
        let mut point = vec![T::zero(); mapping.x.len() + mapping.y.len()];
        for (j, &var) in mapping.x.iter().enumerate() {
            point[var] = self.x[j].clone();
        }
        for (i, &var) in mapping.y.iter().enumerate() {
            point[var] = self.y[i].clone();
        }
        point
    }
}

/// Separates a feasible CVC-LP solution.
///
/// `φ(e)` is the endpoint with the larger `ȳ` (lower id on ties),
/// `ỹ_i = min(1, 2ȳ_i)` and `x̃_j = ỹ_{φ(e_j)}`. The result is feasible and
/// costs at most twice the input.
pub fn separate<T: Scalar>(
    sol: &LpSolution<T>,
    mapping: &CvcLpMapping,
    inst: &CvcInstance,
) -> Result<SeparatedSolution<T>> {
    let (lp, _) = build_cvc_lp::<T>(inst);
    if !sol.is_optimal() || !lp.is_feasible(&sol.values) {
        return Err(Error::ContractViolation(
            "separation needs a feasible CVC-LP solution".into(),
        ));
    }
    let y_bar: Vec<&T> = mapping.y.iter().map(|&var| &sol.values[var]).collect();
    let two = T::from_i64(2);
    let y: Vec<T> = y_bar
        .iter()
        .map(|&v| (two.clone() * v.clone()).min(T::one()))
        .collect();
    let phi: Vec<VertexId> = inst
        .edges()
        .iter()
        .map(|edge| match edge.ends {
            EdgeEnds::Pendant(v) => v,
            EdgeEnds::Pair(u, v) => {
                let (lo, hi) = if u < v { (u, v) } else { (v, u) };
                if y_bar[hi.index()] > y_bar[lo.index()] {
                    hi
                } else {
                    lo
                }
            }
        })
        .collect();
    let x = phi.iter().map(|v| y[v.index()].clone()).collect();
    let separated = SeparatedSolution { x, y, phi };
    if !lp.is_feasible(&separated.to_lp_point(mapping)) {
        return Err(Error::InvariantViolation(
            "separated solution violates the CVC-LP".into(),
        ));
    }
    Ok(separated)
}

/// Coefficients of the Sparse-LP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseLpData<T> {
    /// `counts[t][i] = m_{t+1,i}`: edges of color `t+1` assigned to vertex `i`.
    pub counts: Vec<Vec<u64>>,
    /// `k = Σ ỹ_i`.
    pub budget: T,
    pub requirements: Vec<u64>,
}

impl<T> SparseLpData<T> {
    pub fn num_colors(&self) -> usize {
        self.counts.len()
    }

    /// Per-color coverage `Σ_i m_{t,i} z_i` of a 0/1 vector.
    pub fn coverage(&self, z: &[bool]) -> Vec<u64> {
        self.counts
            .iter()
            .map(|row| {
                row.iter()
                    .zip(z)
                    .filter(|(_, &on)| on)
                    .map(|(c, _)| c)
                    .sum()
            })
            .collect()
    }
}

/// The Sparse-LP: maximize `Σ m_{1,i} z_i` subject to `Σ m_{t,i} z_i ≥ r_t`
/// for colors `t ≥ 2`, `Σ z_i ≤ k` and `z ∈ [0, 1]`.
pub fn build_sparse_lp<T: Scalar>(
    sep: &SeparatedSolution<T>,
    inst: &CvcInstance,
) -> (LinearProgram<T>, SparseLpData<T>) {
    let n = inst.num_vertices();
    let mut counts = vec![vec![0u64; n]; inst.num_colors()];
    for (edge, v) in inst.edges().iter().zip(&sep.phi) {
        counts[edge.color.index()][v.index()] += 1;
    }
    let data = SparseLpData {
        counts,
        budget: sep.cost(),
        requirements: inst.requirements().as_slice().to_vec(),
    };
    let as_scalar = |c: u64| T::from_i64(c as i64);
    let objective = match data.counts.first() {
        Some(row) => row.iter().map(|&c| as_scalar(c)).collect(),
        None => vec![T::zero(); n],
    };
    let mut lp = LinearProgram::unit_box(Sense::Maximize, objective);
    for (row, &r) in data.counts.iter().zip(&data.requirements).skip(1) {
        let terms = row
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, as_scalar(c)));
        lp.add_sparse_constraint(terms, Relation::Ge, as_scalar(r));
    }
    lp.add_sparse_constraint(
        (0..n).map(|i| (i, T::one())),
        Relation::Le,
        data.budget.clone(),
    );
    (lp, data)
}

/// A rounded Sparse-LP solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rounded {
    /// `z*`.
    pub z: Vec<bool>,
    /// `Γ = {v_i : z*_i = 1}`.
    pub cover: VertexSet,
}

/// Rounds every positive coordinate of an extreme Sparse-LP optimum up to 1.
pub fn round_sparse<T: Scalar>(z_hat: &LpSolution<T>, data: &SparseLpData<T>) -> Result<Rounded> {
    if !z_hat.is_optimal() {
        return Err(Error::ContractViolation(
            "rounding needs an optimal Sparse-LP solution".into(),
        ));
    }
    let fractional = z_hat.fractional_count();
    if fractional > data.num_colors() {
        return Err(Error::InvariantViolation(format!(
            "{fractional} fractional coordinates exceed the {} colors",
            data.num_colors()
        )));
    }
    let z: Vec<bool> = z_hat.values.iter().map(|v| v.is_positive()).collect();
    let cover = z
        .iter()
        .enumerate()
        .filter(|(_, &on)| on)
        .map(|(i, _)| VertexId::from_index(i))
        .collect();
    Ok(Rounded { z, cover })
}

/// Every intermediate of one additive run.
#[derive(Debug, Clone)]
pub struct AdditiveTrace<T> {
    pub cvc_lp: LinearProgram<T>,
    pub mapping: CvcLpMapping,
    /// Optimal CVC-LP solution; its objective is `OPT^LP`.
    pub relaxed: LpSolution<T>,
    pub separated: SeparatedSolution<T>,
    pub sparse_lp: LinearProgram<T>,
    pub sparse_data: SparseLpData<T>,
    /// Extreme optimum `ẑ` of the Sparse-LP.
    pub sparse: LpSolution<T>,
    pub rounded: Rounded,
}

impl<T> AdditiveTrace<T> {
    pub fn cover(&self) -> &VertexSet {
        &self.rounded.cover
    }
}

/// [`solve_additive`] in scalar type `T`, keeping every intermediate.
///
/// `Ok(None)` when some requirement exceeds the size of its color class, the
/// only way an instance can be infeasible.
pub fn solve_additive_traced<T: Scalar>(inst: &CvcInstance) -> Result<Option<AdditiveTrace<T>>> {
    if inst.requirements_exceed_classes() {
        return Ok(None);
    }
    let (cvc_lp, mapping) = build_cvc_lp::<T>(inst);
    let relaxed = solve_to_optimal_basic(&cvc_lp)?;
    if relaxed.status != LpStatus::Optimal {
        return Err(Error::InvariantViolation(format!(
            "CVC-LP of a feasible instance reported {:?}",
            relaxed.status
        )));
    }
    let separated = separate(&relaxed, &mapping, inst)?;
    let (sparse_lp, sparse_data) = build_sparse_lp(&separated, inst);
    let sparse = solve_to_optimal_basic(&sparse_lp)?;
    if sparse.status != LpStatus::Optimal {
        return Err(Error::InvariantViolation(format!(
            "Sparse-LP reported {:?} although the separated solution is feasible",
            sparse.status
        )));
    }
    let rounded = round_sparse(&sparse, &sparse_data)?;
    if !inst
        .requirements()
        .met_by(&sparse_data.coverage(&rounded.z))
    {
        return Err(Error::InvariantViolation(
            "rounded Sparse-LP solution misses a requirement".into(),
        ));
    }
    Ok(Some(AdditiveTrace {
        cvc_lp,
        mapping,
        relaxed,
        separated,
        sparse_lp,
        sparse_data,
        sparse,
        rounded,
    }))
}

/// [`solve_additive`] with arithmetic in `T`.
pub fn solve_additive_in<T: Scalar>(inst: &CvcInstance) -> Result<Option<VertexSet>> {
    Ok(solve_additive_traced::<T>(inst)?.map(|trace| trace.rounded.cover))
}

/// A feasible cover with at most `2·OPT + ω` vertices, or `None` when the
/// instance is infeasible.
pub fn solve_additive(inst: &CvcInstance) -> Result<Option<VertexSet>> {
    solve_additive_in::<Rational>(inst)
}

/// How [`solve_eps_traced`] found its cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "route", content = "size")]
pub enum EpsRoute {
    /// The first feasible set among those of the given size; optimal.
    Enumerated(usize),
    /// No set of size up to the enumeration bound is feasible.
    Additive,
}

/// `⌈ω/ε⌉`, the largest set size [`solve_eps`] enumerates.
pub fn enumeration_bound<T: Scalar>(colors: usize, eps: &T) -> Result<u64> {
    if !eps.is_positive() {
        return Err(Error::ContractViolation(format!(
            "epsilon must be positive, got {eps}"
        )));
    }
    Ok((T::from_i64(colors as i64) / eps.clone()).ceil_u64())
}

/// A feasible cover of size at most `(2 + ε)·OPT`, or `None` when infeasible.
pub fn solve_eps<T: Scalar>(inst: &CvcInstance, eps: &T) -> Result<Option<VertexSet>> {
    Ok(solve_eps_traced(inst, eps)?.map(|(cover, _)| cover))
}

/// [`solve_eps`] plus the route taken.
///
/// Vertex sets of size `0, 1, …, ⌈ω/ε⌉` are tried in lexicographic order and
/// the first feasible one is returned. If there is none then
/// `OPT > ω/ε`, so the additive guarantee `2·OPT + ω` is below `(2 + ε)·OPT`.
pub fn solve_eps_traced<T: Scalar>(
    inst: &CvcInstance,
    eps: &T,
) -> Result<Option<(VertexSet, EpsRoute)>> {
    let bound = enumeration_bound(inst.num_colors(), eps)?;
    if inst.requirements_exceed_classes() {
        return Ok(None);
    }
    let n = inst.num_vertices();
    let max_size = usize::try_from(bound).unwrap_or(usize::MAX).min(n);
    let mut chosen = vec![false; n];
    for size in 0..=max_size {
        for subset in (0..n).combinations(size) {
            for &i in &subset {
                chosen[i] = true;
            }
            let feasible = covers(inst, &chosen);
            for &i in &subset {
                chosen[i] = false;
            }
            if feasible {
                let cover = subset.into_iter().map(VertexId::from_index).collect();
                return Ok(Some((cover, EpsRoute::Enumerated(size))));
            }
        }
    }
    let cover = solve_additive_in::<T>(inst)?.ok_or_else(|| {
        Error::InvariantViolation("additive pipeline rejected a feasible instance".into())
    })?;
    Ok(Some((cover, EpsRoute::Additive)))
}

fn covers(inst: &CvcInstance, chosen: &[bool]) -> bool {
    let mut counts = vec![0u64; inst.num_colors()];
    for edge in inst.edges() {
        if edge.ends.vertices().any(|v| chosen[v.index()]) {
            counts[edge.color.index()] += 1;
        }
    }
    inst.requirements().met_by(&counts)
}
