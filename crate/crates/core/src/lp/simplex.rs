//! Bounded-variable primal simplex on a sparse exact tableau.
//!
//! Each row `i` of the program becomes `a_i·x - s_i = 0` with a logical
//! variable `s_i` carrying the row's bounds. Nonbasic variables always sit at
//! a finite bound. Pricing is Dantzig's rule; after a run of degenerate pivots
//! the solver switches to Bland's smallest-index rule until the objective
//! moves again, which rules out cycling.

use crate::error::Result;
use crate::scalar::Scalar;

use super::sparse_solve::sub_scaled;
use super::{LinearProgram, LpSolution, LpStatus, Relation, Sense};

/// Consecutive degenerate pivots tolerated before Bland's rule takes over.
const DEGENERATE_STREAK_LIMIT: usize = 8;

type SparseRow<T> = Vec<(usize, T)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Position {
    Basic,
    AtLower,
    AtUpper,
    /// Artificial column dropped after phase one.
    Removed,
}

enum Step<T> {
    Flip(T),
    Pivot {
        row: usize,
        theta: T,
        to_upper: bool,
    },
    Unbounded,
}

enum Outcome {
    Optimal,
    Unbounded,
}

struct Tableau<T> {
    lower: Vec<Option<T>>,
    upper: Vec<Option<T>>,
    position: Vec<Position>,
    value: Vec<T>,
    /// Row `r` reads `x_basis[r] + Σ rows[r][j]·x_j = 0` over nonbasic `j`.
    rows: Vec<SparseRow<T>>,
    basis: Vec<usize>,
    first_artificial: usize,
    reduced: SparseRow<T>,
    pivots: usize,
}

fn lookup<T>(row: &[(usize, T)], col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |&(j, _)| j)
        .ok()
        .map(|k| &row[k].1)
}

impl<T: Scalar> Tableau<T> {
    fn is_fixed(&self, j: usize) -> bool {
        matches!((&self.lower[j], &self.upper[j]), (Some(l), Some(u)) if l == u)
    }

    fn reduced_costs(&self, cost: &[T]) -> SparseRow<T> {
        let mut dense: Vec<T> = cost.to_vec();
        for (r, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for (j, t) in row {
                dense[*j] = dense[*j].clone() - cb.clone() * t.clone();
            }
        }
        dense
            .into_iter()
            .enumerate()
            .filter(|(j, d)| {
                !d.is_zero() && matches!(self.position[*j], Position::AtLower | Position::AtUpper)
            })
            .collect()
    }

    fn choose_entering(&self, bland: bool) -> Option<(usize, bool)> {
        let mut best: Option<(usize, bool, &T)> = None;
        for (j, d) in &self.reduced {
            if self.is_fixed(*j) {
                continue;
            }
            let increase = match self.position[*j] {
                Position::AtLower if d.is_negative() => true,
                Position::AtUpper if d.is_positive() => false,
                _ => continue,
            };
            if bland {
                return Some((*j, increase));
            }
            if best.is_none_or(|(_, _, b)| d.abs() > b.abs()) {
                best = Some((*j, increase, d));
            }
        }
        best.map(|(j, inc, _)| (j, inc))
    }

    fn ratio_test(&self, q: usize, increase: bool) -> Step<T> {
        let mut best: Option<(usize, T, bool)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            let Some(t) = lookup(row, q) else { continue };
            let b = self.basis[r];
            // rate of change of x_b per unit step of the entering variable
            let rate = if increase { -t.clone() } else { t.clone() };
            let limit = if rate.is_negative() {
                self.lower[b]
                    .as_ref()
                    .map(|l| ((self.value[b].clone() - l.clone()) / -rate, false))
            } else {
                self.upper[b]
                    .as_ref()
                    .map(|u| ((u.clone() - self.value[b].clone()) / rate, true))
            };
            let Some((theta, to_upper)) = limit else {
                continue;
            };
            let better = match &best {
                None => true,
                Some((rb, tb, _)) => theta < *tb || (theta == *tb && b < self.basis[*rb]),
            };
            if better {
                best = Some((r, theta, to_upper));
            }
        }
        let flip = match (&self.lower[q], &self.upper[q]) {
            (Some(l), Some(u)) => Some(u.clone() - l.clone()),
            _ => None,
        };
        match (best, flip) {
            (Some((_, theta, _)), Some(span)) if span <= theta => Step::Flip(span),
            (None, Some(span)) => Step::Flip(span),
            (Some((row, theta, to_upper)), _) => Step::Pivot {
                row,
                theta,
                to_upper,
            },
            (None, None) => Step::Unbounded,
        }
    }

    fn move_entering(&mut self, q: usize, increase: bool, theta: &T) {
        if theta.is_zero() {
            return;
        }
        let delta = if increase {
            theta.clone()
        } else {
            -theta.clone()
        };
        self.value[q] = self.value[q].clone() + delta.clone();
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(t) = lookup(row, q) {
                let b = self.basis[r];
                self.value[b] = self.value[b].clone() - t.clone() * delta.clone();
            }
        }
    }

    /// Exchanges the basic variable of `row` for the nonbasic `q`.
    fn pivot(&mut self, row: usize, q: usize, leaving_to_upper: bool) {
        let leaving = self.basis[row];
        let head = lookup(&self.rows[row], q)
            .cloned()
            .expect("pivot on a zero entry");
        let mut pivot_row: SparseRow<T> = self.rows[row]
            .iter()
            .filter(|(j, _)| *j != q)
            .map(|(j, t)| (*j, t.clone() / head.clone()))
            .collect();
        let at = pivot_row.partition_point(|(j, _)| *j < leaving);
        pivot_row.insert(at, (leaving, T::one() / head));

        for r in 0..self.rows.len() {
            if r == row {
                continue;
            }
            if let Some(t) = lookup(&self.rows[r], q).cloned() {
                self.rows[r] = sub_scaled(&self.rows[r], &t, &pivot_row, q);
            }
        }
        if let Some(d) = lookup(&self.reduced, q).cloned() {
            self.reduced = sub_scaled(&self.reduced, &d, &pivot_row, q);
        }
        self.rows[row] = pivot_row;
        self.basis[row] = q;
        self.position[q] = Position::Basic;
        let (bound, position) = if leaving_to_upper {
            (self.upper[leaving].clone(), Position::AtUpper)
        } else {
            (self.lower[leaving].clone(), Position::AtLower)
        };
        self.value[leaving] = bound.expect("leaving variable has a finite bound");
        self.position[leaving] = position;
        self.pivots += 1;
    }

    /// Minimizes `cost` from the current basic feasible point.
    fn optimize(&mut self, cost: &[T]) -> Outcome {
        self.reduced = self.reduced_costs(cost);
        let mut degenerate_streak = 0;
        loop {
            let bland = degenerate_streak >= DEGENERATE_STREAK_LIMIT;
            let Some((q, increase)) = self.choose_entering(bland) else {
                return Outcome::Optimal;
            };
            match self.ratio_test(q, increase) {
                Step::Unbounded => return Outcome::Unbounded,
                Step::Flip(span) => {
                    self.move_entering(q, increase, &span);
                    self.position[q] = if increase {
                        Position::AtUpper
                    } else {
                        Position::AtLower
                    };
                    degenerate_streak = 0;
                }
                Step::Pivot {
                    row,
                    theta,
                    to_upper,
                } => {
                    if theta.is_zero() {
                        degenerate_streak += 1;
                    } else {
                        degenerate_streak = 0;
                    }
                    self.move_entering(q, increase, &theta);
                    self.pivot(row, q, to_upper);
                }
            }
        }
    }

    /// Drives zero-valued artificials out of the basis, deleting rows that
    /// turn out to be linear combinations of the others.
    fn drop_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < self.first_artificial {
                r += 1;
                continue;
            }
            let replacement = self.rows[r]
                .iter()
                .map(|(j, _)| *j)
                .find(|&j| j < self.first_artificial);
            match replacement {
                Some(q) => {
                    // degenerate exchange: the artificial is zero
                    self.pivot(r, q, false);
                    r += 1;
                }
                None => {
                    let art = self.basis[r];
                    self.position[art] = Position::Removed;
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
        for j in self.first_artificial..self.position.len() {
            self.position[j] = Position::Removed;
        }
        let first = self.first_artificial;
        for row in &mut self.rows {
            row.retain(|(j, _)| *j < first);
        }
    }
}

fn violation<T: Scalar>(value: &T, lower: &Option<T>, upper: &Option<T>) -> Option<T> {
    if let Some(l) = lower {
        if value < l {
            return Some(l.clone());
        }
    }
    if let Some(u) = upper {
        if value > u {
            return Some(u.clone());
        }
    }
    None
}

/// Cold-start exact tableau solve.
pub(crate) fn solve_tableau<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>> {
    lp.validate()?;
    let n = lp.num_variables();
    let m = lp.num_constraints();

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

    // Start every structural at one bound; prefer whichever side leaves fewer
    // rows violated.
    let activities = |at_upper: bool| -> Option<(Vec<T>, Vec<T>, usize)> {
        let x: Vec<T> = (0..n)
            .map(|j| {
                if at_upper {
                    upper[j].clone()
                } else {
                    lower[j].clone()
                }
            })
            .collect::<Option<_>>()?;
        let s: Vec<T> = lp.constraints().iter().map(|c| c.activity(&x)).collect();
        let bad = (0..m)
            .filter(|&i| violation(&s[i], &lower[n + i], &upper[n + i]).is_some())
            .count();
        Some((x, s, bad))
    };
    let from_lower = activities(false).expect("lower bounds are finite");
    let (x0, s0, at_upper) = match activities(true) {
        Some(up) if up.2 < from_lower.2 => (up.0, up.1, true),
        _ => (from_lower.0, from_lower.1, false),
    };

    let mut position = vec![
        if at_upper {
            Position::AtUpper
        } else {
            Position::AtLower
        };
        n
    ];
    let mut value = x0;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut artificial_rows = Vec::new();
    let first_artificial = n + m;

    for (i, c) in lp.constraints().iter().enumerate() {
        let logical = n + i;
        let structural = |sign: &T| -> SparseRow<T> {
            c.coefficients
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(j, a)| (j, sign.clone() * a.clone()))
                .collect()
        };
        match violation(&s0[i], &lower[logical], &upper[logical]) {
            None => {
                rows.push(structural(&-T::one()));
                basis.push(logical);
                position.push(Position::Basic);
                value.push(s0[i].clone());
            }
            Some(bound) => {
                // art = σ(s - a·x) with σ chosen so the artificial starts positive
                let sigma = if bound > s0[i] { T::one() } else { -T::one() };
                let art_value = sigma.clone() * (bound.clone() - s0[i].clone());
                let mut row = structural(&sigma);
                row.push((logical, -sigma));
                rows.push(row);
                position.push(if lower[logical].as_ref() == Some(&bound) {
                    Position::AtLower
                } else {
                    Position::AtUpper
                });
                value.push(bound);
                basis.push(first_artificial + artificial_rows.len());
                artificial_rows.push(art_value);
            }
        }
    }
    for art_value in &artificial_rows {
        lower.push(Some(T::zero()));
        upper.push(None);
        position.push(Position::Basic);
        value.push(art_value.clone());
    }

    let mut tableau = Tableau {
        lower,
        upper,
        position,
        value,
        rows,
        basis,
        first_artificial,
        reduced: Vec::new(),
        pivots: 0,
    };

    if !artificial_rows.is_empty() {
        let total = first_artificial + artificial_rows.len();
        let mut phase_one_cost = vec![T::zero(); total];
        for c in phase_one_cost.iter_mut().skip(first_artificial) {
            *c = T::one();
        }
        // phase one is bounded below by zero
        let _ = tableau.optimize(&phase_one_cost);
        let residual = tableau.value[first_artificial..]
            .iter()
            .fold(T::zero(), |acc, v| acc + v.clone());
        if residual.is_positive() {
            return Ok(LpSolution::without_point(
                LpStatus::Infeasible,
                tableau.pivots,
            ));
        }
        tableau.drop_artificials();
    }

    let total = tableau.position.len();
    let mut cost = vec![T::zero(); total];
    for (j, c) in lp.objective().iter().enumerate() {
        cost[j] = match lp.sense() {
            Sense::Minimize => c.clone(),
            Sense::Maximize => -c.clone(),
        };
    }
    if let Outcome::Unbounded = tableau.optimize(&cost) {
        return Ok(LpSolution::without_point(
            LpStatus::Unbounded,
            tableau.pivots,
        ));
    }

    let values: Vec<T> = tableau.value[..n].to_vec();
    debug_assert!(lp.is_feasible(&values));
    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective: lp.objective_value(&values),
        tight: lp.tight_set(&values),
        values,
        pivots: tableau.pivots,
    })
}
