//! Exact linear programming with extreme-point optima.
//!
//! [`solve_to_optimal_basic`] runs a bounded-variable primal simplex over any
//! exact [`Scalar`]. Optimal answers are basic feasible solutions, so the
//! constraints tight at the returned point always have full rank; the
//! [`verify_extreme_point`] check recomputes that rank independently of the
//! solver's basis.
//!
//! Two exact methods are available (see [`SolveMethod`]). Small programs use
//! a sparse exact tableau. Larger ones first let a floating-point simplex
//! propose a basis, then verify and if necessary repair it with exact revised
//! simplex steps; the floating-point run never decides the answer.

mod float;
mod guided;
mod simplex;
mod sparse_solve;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint<T> {
    pub coefficients: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn activity(&self, values: &[T]) -> T {
        self.coefficients
            .iter()
            .zip(values)
            .filter(|(a, _)| !a.is_zero())
            .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
    }

    pub fn is_satisfied_by(&self, values: &[T]) -> bool {
        let lhs = self.activity(values);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// `optimize c·x` subject to row constraints and per-variable bounds.
///
/// Lower bounds are finite; an upper bound of `None` means unbounded above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram<T> {
    sense: Sense,
    objective: Vec<T>,
    lower: Vec<T>,
    upper: Vec<Option<T>>,
    constraints: Vec<Constraint<T>>,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(sense: Sense, objective: Vec<T>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            lower: vec![T::zero(); n],
            upper: vec![None; n],
            constraints: Vec::new(),
        }
    }

    /// `n` variables, each in `[0, 1]`.
    pub fn unit_box(sense: Sense, objective: Vec<T>) -> Self {
        let n = objective.len();
        LinearProgram {
            upper: vec![Some(T::one()); n],
            ..Self::new(sense, objective)
        }
    }

    pub fn set_bounds(&mut self, var: usize, lower: T, upper: Option<T>) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    /// Appends a row and returns its index.
    pub fn add_constraint(&mut self, coefficients: Vec<T>, relation: Relation, rhs: T) -> usize {
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
        self.constraints.len() - 1
    }

    /// Convenience for rows given as `(variable, coefficient)` pairs.
    pub fn add_sparse_constraint(
        &mut self,
        terms: impl IntoIterator<Item = (usize, T)>,
        relation: Relation,
        rhs: T,
    ) -> usize {
        let mut row = vec![T::zero(); self.num_variables()];
        for (j, a) in terms {
            row[j] = row[j].clone() + a;
        }
        self.add_constraint(row, relation, rhs)
    }

    pub fn num_variables(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[T] {
        &self.objective
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[Option<T>] {
        &self.upper
    }

    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_variables();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::MalformedLp(format!(
                "{} objective entries but {} lower and {} upper bounds",
                n,
                self.lower.len(),
                self.upper.len()
            )));
        }
        for (j, (l, u)) in self.lower.iter().zip(&self.upper).enumerate() {
            if let Some(u) = u {
                if l > u {
                    return Err(Error::MalformedLp(format!(
                        "variable {j} has lower bound {l} above upper bound {u}"
                    )));
                }
            }
        }
        for (i, row) in self.constraints.iter().enumerate() {
            if row.coefficients.len() != n {
                return Err(Error::MalformedLp(format!(
                    "row {i} has {} coefficients, expected {n}",
                    row.coefficients.len()
                )));
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, values: &[T]) -> T {
        self.objective
            .iter()
            .zip(values)
            .fold(T::zero(), |acc, (c, x)| acc + c.clone() * x.clone())
    }

    /// Exact feasibility of `values` against every row and bound.
    pub fn is_feasible(&self, values: &[T]) -> bool {
        values.len() == self.num_variables()
            && values
                .iter()
                .enumerate()
                .all(|(j, x)| *x >= self.lower[j] && self.upper[j].as_ref().is_none_or(|u| x <= u))
            && self.constraints.iter().all(|c| c.is_satisfied_by(values))
    }

    /// Rows at equality plus active variable bounds.
    pub fn tight_set(&self, values: &[T]) -> Vec<Tight> {
        let mut tight: Vec<Tight> = self
            .constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| c.activity(values) == c.rhs)
            .map(|(i, _)| Tight::Row(i))
            .collect();
        for (j, x) in values.iter().enumerate() {
            if *x == self.lower[j] {
                tight.push(Tight::Lower(j));
            }
            if self.upper[j].as_ref() == Some(x) {
                tight.push(Tight::Upper(j));
            }
        }
        tight
    }

    /// Plain-text tableau dump, one constraint per line, every number as `p/q`.
    pub fn to_tableau_text(&self) -> String {
        let f = |x: &T| x.to_fraction_string();
        let join = |xs: &[T]| xs.iter().map(f).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let sense = match self.sense {
            Sense::Minimize => "minimize",
            Sense::Maximize => "maximize",
        };
        let _ = writeln!(
            out,
            "lp {} variables {} constraints",
            self.num_variables(),
            self.num_constraints()
        );
        let _ = writeln!(out, "{sense} {}", join(&self.objective));
        for (j, (l, u)) in self.lower.iter().zip(&self.upper).enumerate() {
            let u = u.as_ref().map_or_else(|| "inf".to_string(), f);
            let _ = writeln!(out, "bound {j} {} {u}", f(l));
        }
        for c in &self.constraints {
            let _ = writeln!(
                out,
                "row {} {} {}",
                join(&c.coefficients),
                c.relation.symbol(),
                f(&c.rhs)
            );
        }
        out
    }
}

/// A constraint holding with equality at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tight {
    Row(usize),
    Lower(usize),
    Upper(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    /// One value per variable; empty unless optimal.
    pub values: Vec<T>,
    /// Objective in the program's own sense; zero unless optimal.
    pub objective: T,
    pub tight: Vec<Tight>,
    pub pivots: usize,
}

impl<T: Scalar> LpSolution<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub(crate) fn without_point(status: LpStatus, pivots: usize) -> Self {
        LpSolution {
            status,
            values: Vec::new(),
            objective: T::zero(),
            tight: Vec::new(),
            pivots,
        }
    }

    /// Number of coordinates that are not integers.
    pub fn fractional_count(&self) -> usize {
        self.values.iter().filter(|x| !x.is_integral()).count()
    }
}

/// Exact algorithm behind [`solve_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    /// Cold-start exact tableau simplex.
    Tableau,
    /// Floating-point basis, exact verification and repair; falls back to
    /// [`SolveMethod::Tableau`] when the floating-point run is inconclusive.
    Guided,
}

/// Programs with at least this many matrix entries use [`SolveMethod::Guided`].
const GUIDED_THRESHOLD: usize = 4096;

/// Solves `lp` exactly and returns an optimal basic feasible solution.
///
/// Infeasible and unbounded programs are reported through
/// [`LpSolution::status`]; only malformed input is an error.
pub fn solve_to_optimal_basic<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>> {
    let method = if lp.num_variables() * lp.num_constraints() >= GUIDED_THRESHOLD {
        SolveMethod::Guided
    } else {
        SolveMethod::Tableau
    };
    solve_with(lp, method)
}

/// [`solve_to_optimal_basic`] with an explicit method.
pub fn solve_with<T: Scalar>(lp: &LinearProgram<T>, method: SolveMethod) -> Result<LpSolution<T>> {
    lp.validate()?;
    if method == SolveMethod::Guided {
        if let Some(sol) = guided::solve_guided(lp) {
            return Ok(sol);
        }
    }
    simplex::solve_tableau(lp)
}

/// Rank of a dense matrix by exact Gaussian elimination.
pub fn rank<T: Scalar>(mut rows: Vec<Vec<T>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let head = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() / head.clone();
            for c in col..width {
                if !rows[rank][c].is_zero() {
                    let delta = factor.clone() * rows[rank][c].clone();
                    rows[r][c] = rows[r][c].clone() - delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// True iff the constraints tight at `sol` have rank equal to the variable count.
///
/// Tightness is recomputed from `sol.values`; the solver's own report is not
/// trusted.
pub fn verify_extreme_point<T: Scalar>(lp: &LinearProgram<T>, sol: &LpSolution<T>) -> Result<bool> {
    lp.validate()?;
    if !lp.is_feasible(&sol.values) {
        return Err(Error::ContractViolation(
            "point is not feasible for the linear program".into(),
        ));
    }
    let n = lp.num_variables();
    let unit = |j: usize| {
        let mut row = vec![T::zero(); n];
        row[j] = T::one();
        row
    };
    let system: Vec<Vec<T>> = lp
        .tight_set(&sol.values)
        .into_iter()
        .map(|t| match t {
            Tight::Row(i) => lp.constraints[i].coefficients.clone(),
            Tight::Lower(j) | Tight::Upper(j) => unit(j),
        })
        .collect();
    Ok(rank(system) == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank::<Rational>(vec![]), 0);
        assert_eq!(rank(vec![vec![int(1), int(2)], vec![int(2), int(4)]]), 1);
        assert_eq!(rank(vec![vec![int(0), int(1)], vec![int(1), int(0)]]), 2);
        assert_eq!(
            rank(vec![
                vec![int(1), int(1), int(0)],
                vec![int(0), int(1), int(1)],
                vec![int(1), int(2), int(1)],
            ]),
            2
        );
    }

    #[test]
    fn validation_catches_shape_errors() {
        let mut lp = LinearProgram::unit_box(Sense::Minimize, vec![int(1), int(1)]);
        lp.add_constraint(vec![int(1)], Relation::Le, int(1));
        assert!(matches!(lp.validate(), Err(Error::MalformedLp(_))));

        let mut lp = LinearProgram::unit_box(Sense::Minimize, vec![int(1)]);
        lp.set_bounds(0, int(2), Some(int(1)));
        assert!(matches!(lp.validate(), Err(Error::MalformedLp(_))));
    }

    #[test]
    fn single_variable_at_bound_is_extreme() {
        let lp = LinearProgram::unit_box(Sense::Maximize, vec![int(1)]);
        let sol = solve_to_optimal_basic(&lp).unwrap();
        assert_eq!(sol.values, vec![int(1)]);
        assert_eq!(sol.tight, vec![Tight::Upper(0)]);
        assert!(verify_extreme_point(&lp, &sol).unwrap());
    }

    #[test]
    fn interior_point_is_not_extreme() {
        let lp = LinearProgram::unit_box(Sense::Maximize, vec![int(0)]);
        let mid = LpSolution {
            status: LpStatus::Optimal,
            values: vec![q(1, 2)],
            objective: int(0),
            tight: vec![],
            pivots: 0,
        };
        assert!(!verify_extreme_point(&lp, &mid).unwrap());
    }

    #[test]
    fn infeasible_point_is_rejected() {
        let lp = LinearProgram::unit_box(Sense::Maximize, vec![int(1)]);
        let bad = LpSolution {
            status: LpStatus::Optimal,
            values: vec![int(2)],
            objective: int(2),
            tight: vec![],
            pivots: 0,
        };
        assert!(matches!(
            verify_extreme_point(&lp, &bad),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn tableau_dump_uses_fractions() {
        let mut lp = LinearProgram::unit_box(Sense::Maximize, vec![int(3), int(2)]);
        lp.set_bounds(1, int(0), None);
        lp.add_constraint(vec![int(1), q(1, 2)], Relation::Le, int(4));
        let text = lp.to_tableau_text();
        assert_eq!(
            text,
            "lp 2 variables 1 constraints\n\
             maximize 3/1 2/1\n\
             bound 0 0/1 1/1\n\
             bound 1 0/1 inf\n\
             row 1/1 1/2 <= 4/1\n"
        );
    }
}
