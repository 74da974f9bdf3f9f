//! Exact revised simplex warm-started from a floating-point basis.
//!
//! The floating-point run proposes a basis. The basic solution and the duals
//! of that basis are recomputed exactly; if they are primal and dual feasible
//! the basis is optimal as is. Otherwise exact revised-simplex pivots continue
//! from it, with every solve done by sparse exact elimination.

use crate::scalar::Scalar;

use super::float::{find_basis, FloatProblem};
use super::sparse_solve::{solve_columns, solve_transposed, SparseVec};
use super::{LinearProgram, LpSolution, LpStatus, Relation, Sense};

const DEGENERATE_STREAK_LIMIT: usize = 8;

struct Standard<T> {
    n: usize,
    m: usize,
    /// Columns of `[A | -I | I]`.
    columns: Vec<SparseVec<T>>,
    lower: Vec<Option<T>>,
    upper: Vec<Option<T>>,
    cost: Vec<T>,
}

impl<T: Scalar> Standard<T> {
    fn new(lp: &LinearProgram<T>) -> Self {
        let n = lp.num_variables();
        let m = lp.num_constraints();
        let mut columns: Vec<SparseVec<T>> = vec![Vec::new(); n + 2 * m];
        for (i, c) in lp.constraints().iter().enumerate() {
            for (j, a) in c.coefficients.iter().enumerate() {
                if !a.is_zero() {
                    columns[j].push((i, a.clone()));
                }
            }
            columns[n + i].push((i, -T::one()));
            columns[n + m + i].push((i, T::one()));
        }
        let mut lower: Vec<Option<T>> = lp.lower().iter().cloned().map(Some).collect();
        let mut upper: Vec<Option<T>> = lp.upper().to_vec();
        for c in lp.constraints() {
            let (l, u) = match c.relation {
                Relation::Le => (None, Some(c.rhs.clone())),
                Relation::Ge => (Some(c.rhs.clone()), None),
                Relation::Eq => (Some(c.rhs.clone()), Some(c.rhs.clone())),
            };
            lower.push(l);
            upper.push(u);
        }
        lower.extend((0..m).map(|_| Some(T::zero())));
        upper.extend((0..m).map(|_| Some(T::zero())));
        let mut cost = vec![T::zero(); n + 2 * m];
        for (j, c) in lp.objective().iter().enumerate() {
            cost[j] = match lp.sense() {
                Sense::Minimize => c.clone(),
                Sense::Maximize => -c.clone(),
            };
        }
        Standard {
            n,
            m,
            columns,
            lower,
            upper,
            cost,
        }
    }

    fn is_fixed(&self, j: usize) -> bool {
        matches!((&self.lower[j], &self.upper[j]), (Some(l), Some(u)) if l == u)
    }

    fn float_problem(&self) -> FloatProblem {
        let f = |x: &Option<T>, inf: f64| x.as_ref().map_or(inf, |v| v.to_f64());
        let n = self.n;
        let lower: Vec<f64> = self.lower[..n + self.m]
            .iter()
            .map(|x| f(x, f64::NEG_INFINITY))
            .collect();
        let upper: Vec<f64> = self.upper[..n + self.m]
            .iter()
            .map(|x| f(x, f64::INFINITY))
            .collect();
        let columns: Vec<Vec<(usize, f64)>> = self.columns[..n]
            .iter()
            .map(|col| col.iter().map(|(i, a)| (*i, a.to_f64())).collect())
            .collect();
        let violations = |at_upper: bool| -> Option<usize> {
            let mut activity = vec![0.0; self.m];
            for (j, col) in columns.iter().enumerate() {
                let x = if at_upper { upper[j] } else { lower[j] };
                if !x.is_finite() {
                    return None;
                }
                for (i, a) in col {
                    activity[*i] += a * x;
                }
            }
            Some(
                (0..self.m)
                    .filter(|&i| activity[i] < lower[n + i] || activity[i] > upper[n + i])
                    .count(),
            )
        };
        let from_lower = violations(false).unwrap_or(usize::MAX);
        let start_at_upper = violations(true).is_some_and(|v| v < from_lower);
        FloatProblem {
            n,
            m: self.m,
            columns,
            lower,
            upper,
            cost: self.cost[..n].iter().map(|c| c.to_f64()).collect(),
            start_at_upper,
        }
    }
}

/// Optimal basic solution via a floating-point basis and exact repair.
///
/// `None` when the floating-point run fails or proposes a basis that is
/// singular or primal infeasible in exact arithmetic; the caller then falls
/// back to a cold exact solve.
pub(crate) fn solve_guided<T: Scalar>(lp: &LinearProgram<T>) -> Option<LpSolution<T>> {
    let sf = Standard::new(lp);
    let guess = find_basis(&sf.float_problem())?;
    let (n, m) = (sf.n, sf.m);
    let width = n + 2 * m;

    let mut is_basic = vec![false; width];
    for &b in &guess.basic {
        is_basic[b] = true;
    }
    let mut at_upper = guess.at_upper;
    let mut value: Vec<T> = vec![T::zero(); width];
    for j in 0..width {
        if is_basic[j] {
            continue;
        }
        let bound = if at_upper[j] {
            &sf.upper[j]
        } else {
            &sf.lower[j]
        };
        let bound = bound
            .as_ref()
            .or(sf.lower[j].as_ref())
            .or(sf.upper[j].as_ref())?;
        at_upper[j] = sf.upper[j].as_ref() == Some(bound) && sf.lower[j].as_ref() != Some(bound);
        value[j] = bound.clone();
    }
    let mut basic = guess.basic;

    let mut rhs = vec![T::zero(); m];
    for j in (0..width).filter(|&j| !is_basic[j] && !value[j].is_zero()) {
        for (i, a) in &sf.columns[j] {
            rhs[*i] = rhs[*i].clone() - a.clone() * value[j].clone();
        }
    }
    let basic_values = solve_columns(&basis_columns(&sf, &basic), rhs)?;
    for (r, &b) in basic.iter().enumerate() {
        value[b] = basic_values[r].clone();
        let below = sf.lower[b].as_ref().is_some_and(|l| value[b] < *l);
        let above = sf.upper[b].as_ref().is_some_and(|u| value[b] > *u);
        if below || above {
            return None;
        }
    }

    let mut pivots = guess.pivots;
    let mut streak = 0;
    loop {
        let cols = basis_columns(&sf, &basic);
        let c_b: Vec<T> = basic.iter().map(|&b| sf.cost[b].clone()).collect();
        let pi = solve_transposed(&cols, c_b)?;

        let bland = streak >= DEGENERATE_STREAK_LIMIT;
        let mut entering: Option<(usize, bool, T)> = None;
        for j in 0..width {
            if is_basic[j] || sf.is_fixed(j) {
                continue;
            }
            let d = sf.columns[j]
                .iter()
                .fold(sf.cost[j].clone(), |acc, (i, a)| {
                    acc - pi[*i].clone() * a.clone()
                });
            let increase = if !at_upper[j] && d.is_negative() {
                true
            } else if at_upper[j] && d.is_positive() {
                false
            } else {
                continue;
            };
            if bland {
                entering = Some((j, increase, d));
                break;
            }
            if entering.as_ref().is_none_or(|(_, _, b)| d.abs() > b.abs()) {
                entering = Some((j, increase, d));
            }
        }
        let Some((q, increase, _)) = entering else {
            break;
        };

        let mut column = vec![T::zero(); m];
        for (i, a) in &sf.columns[q] {
            column[*i] = a.clone();
        }
        let alpha = solve_columns(&cols, column)?;
        // basic r moves by -alpha[r] per unit of signed step
        let mut best: Option<(usize, T, bool)> = None;
        for (r, a) in alpha.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let b = basic[r];
            let rate = if increase { -a.clone() } else { a.clone() };
            let limit = if rate.is_negative() {
                sf.lower[b]
                    .as_ref()
                    .map(|l| ((value[b].clone() - l.clone()) / -rate, false))
            } else {
                sf.upper[b]
                    .as_ref()
                    .map(|u| ((u.clone() - value[b].clone()) / rate, true))
            };
            let Some((theta, to_upper)) = limit else {
                continue;
            };
            let better = match &best {
                None => true,
                Some((rb, tb, _)) => theta < *tb || (theta == *tb && b < basic[*rb]),
            };
            if better {
                best = Some((r, theta, to_upper));
            }
        }
        let span = match (&sf.lower[q], &sf.upper[q]) {
            (Some(l), Some(u)) => Some(u.clone() - l.clone()),
            _ => None,
        };
        let (step, leave) = match (best, span) {
            (Some((_, theta, _)), Some(span)) if span <= theta => (span, None),
            (None, Some(span)) => (span, None),
            (Some((row, theta, to_upper)), _) => (theta, Some((row, to_upper))),
            (None, None) => {
                return Some(LpSolution::without_point(LpStatus::Unbounded, pivots));
            }
        };
        if step.is_zero() {
            streak += 1;
        } else {
            streak = 0;
        }
        let delta = if increase { step } else { -step };
        if !delta.is_zero() {
            value[q] = value[q].clone() + delta.clone();
            for (r, a) in alpha.iter().enumerate() {
                if !a.is_zero() {
                    let b = basic[r];
                    value[b] = value[b].clone() - a.clone() * delta.clone();
                }
            }
        }
        match leave {
            None => at_upper[q] = increase,
            Some((row, to_upper)) => {
                let leaving = basic[row];
                value[leaving] = if to_upper {
                    sf.upper[leaving].clone()
                } else {
                    sf.lower[leaving].clone()
                }
                .expect("blocking bound is finite");
                at_upper[leaving] = to_upper;
                is_basic[leaving] = false;
                basic[row] = q;
                is_basic[q] = true;
            }
        }
        pivots += 1;
    }

    let values: Vec<T> = value[..n].to_vec();
    if !lp.is_feasible(&values) {
        return None;
    }
    Some(LpSolution {
        status: LpStatus::Optimal,
        objective: lp.objective_value(&values),
        tight: lp.tight_set(&values),
        values,
        pivots,
    })
}

fn basis_columns<'a, T>(sf: &'a Standard<T>, basic: &[usize]) -> Vec<&'a [(usize, T)]> {
    basic.iter().map(|&b| sf.columns[b].as_slice()).collect()
}
