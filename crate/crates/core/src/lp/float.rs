//! Dense floating-point bounded-variable simplex.
//!
//! Only used to find a promising basis quickly; its answer is re-derived in
//! exact arithmetic before anything is reported.

/// Column layout shared with the exact side: `n` structurals, then one
/// logical per row (`a_i·x - s_i = 0`), then one artificial per row.
pub(crate) struct FloatProblem {
    pub n: usize,
    pub m: usize,
    /// Sparse structural columns, `(row, coefficient)`.
    pub columns: Vec<Vec<(usize, f64)>>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// Minimization cost per structural.
    pub cost: Vec<f64>,
    /// Start structurals at their upper bounds instead of their lower ones.
    pub start_at_upper: bool,
}

pub(crate) struct FloatBasis {
    /// Basic column per row.
    pub basic: Vec<usize>,
    /// For every column, whether it rests at its upper bound when nonbasic.
    pub at_upper: Vec<bool>,
    pub pivots: usize,
}

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const FEAS_TOL: f64 = 1e-7;
const REFRESH_EVERY: usize = 64;
const DEGENERATE_STREAK_LIMIT: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Position {
    Basic,
    AtLower,
    AtUpper,
}

struct Dense {
    m: usize,
    width: usize,
    /// Row-major `m × width`; row `r` reads `Σ_j t[r][j]·x_j = 0`, with a unit
    /// entry at the basic column of `r`.
    t: Vec<f64>,
    basis: Vec<usize>,
    position: Vec<Position>,
    value: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    reduced: Vec<f64>,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
    Stalled,
}

impl Dense {
    fn row(&self, r: usize) -> &[f64] {
        &self.t[r * self.width..(r + 1) * self.width]
    }

    fn is_fixed(&self, j: usize) -> bool {
        self.upper[j] - self.lower[j] <= 0.0
    }

    fn refresh(&mut self, cost: &[f64]) {
        let mut d = cost.to_vec();
        for r in 0..self.m {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for (dj, tj) in d.iter_mut().zip(self.row(r)) {
                    *dj -= cb * tj;
                }
            }
        }
        self.reduced = d;
        for r in 0..self.m {
            let b = self.basis[r];
            let mut v = 0.0;
            for (j, tj) in self.row(r).iter().enumerate() {
                if j != b && *tj != 0.0 && self.position[j] != Position::Basic {
                    v -= tj * self.value[j];
                }
            }
            self.value[b] = v;
        }
    }

    fn choose_entering(&self, bland: bool) -> Option<(usize, bool)> {
        let mut best: Option<(usize, bool, f64)> = None;
        for j in 0..self.width {
            let d = self.reduced[j];
            let increase = match self.position[j] {
                Position::AtLower if d < -COST_TOL => true,
                Position::AtUpper if d > COST_TOL => false,
                _ => continue,
            };
            if self.is_fixed(j) {
                continue;
            }
            if bland {
                return Some((j, increase));
            }
            if best.is_none_or(|(_, _, b)| d.abs() > b) {
                best = Some((j, increase, d.abs()));
            }
        }
        best.map(|(j, inc, _)| (j, inc))
    }

    /// Returns `(row, step, leaving goes to upper)` or `None` when unblocked.
    fn ratio_test(&self, q: usize, increase: bool, bland: bool) -> Option<(usize, f64, bool)> {
        let mut best: Option<(usize, f64, bool, f64)> = None;
        for r in 0..self.m {
            let t = self.t[r * self.width + q];
            if t.abs() <= PIVOT_TOL {
                continue;
            }
            let b = self.basis[r];
            let rate = if increase { -t } else { t };
            let (limit, to_upper) = if rate < 0.0 {
                if self.lower[b] == f64::NEG_INFINITY {
                    continue;
                }
                ((self.value[b] - self.lower[b]) / -rate, false)
            } else {
                if self.upper[b] == f64::INFINITY {
                    continue;
                }
                ((self.upper[b] - self.value[b]) / rate, true)
            };
            let limit = limit.max(0.0);
            let better = match best {
                None => true,
                Some((rb, lb, _, tb)) => {
                    if limit < lb - 1e-12 {
                        true
                    } else if limit <= lb + 1e-12 {
                        if bland {
                            b < self.basis[rb]
                        } else {
                            t.abs() > tb
                        }
                    } else {
                        false
                    }
                }
            };
            if better {
                best = Some((r, limit, to_upper, t.abs()));
            }
        }
        best.map(|(r, l, u, _)| (r, l, u))
    }

    fn shift(&mut self, q: usize, delta: f64) {
        if delta == 0.0 {
            return;
        }
        self.value[q] += delta;
        for r in 0..self.m {
            let t = self.t[r * self.width + q];
            if t != 0.0 {
                let b = self.basis[r];
                self.value[b] -= t * delta;
            }
        }
    }

    fn pivot(&mut self, row: usize, q: usize, leaving_to_upper: bool) {
        let w = self.width;
        let head = self.t[row * w + q];
        for x in &mut self.t[row * w..(row + 1) * w] {
            *x /= head;
        }
        let pivot_row: Vec<f64> = self.t[row * w..(row + 1) * w].to_vec();
        let nonzero: Vec<usize> = (0..w).filter(|&j| pivot_row[j] != 0.0).collect();
        for r in 0..self.m {
            if r == row {
                continue;
            }
            let f = self.t[r * w + q];
            if f == 0.0 {
                continue;
            }
            let dst = &mut self.t[r * w..(r + 1) * w];
            for &j in &nonzero {
                dst[j] -= f * pivot_row[j];
                if dst[j].abs() < 1e-13 {
                    dst[j] = 0.0;
                }
            }
            dst[q] = 0.0;
        }
        let dq = self.reduced[q];
        if dq != 0.0 {
            for &j in &nonzero {
                self.reduced[j] -= dq * pivot_row[j];
            }
            self.reduced[q] = 0.0;
        }
        let leaving = self.basis[row];
        self.basis[row] = q;
        self.position[q] = Position::Basic;
        if leaving_to_upper {
            self.position[leaving] = Position::AtUpper;
            self.value[leaving] = self.upper[leaving];
        } else {
            self.position[leaving] = Position::AtLower;
            self.value[leaving] = self.lower[leaving];
        }
        self.pivots += 1;
    }

    fn optimize(&mut self, cost: &[f64], limit: usize) -> Outcome {
        self.refresh(cost);
        let mut streak = 0;
        let mut since_refresh = 0;
        loop {
            if self.pivots >= limit {
                return Outcome::Stalled;
            }
            if since_refresh >= REFRESH_EVERY {
                self.refresh(cost);
                since_refresh = 0;
            }
            let bland = streak >= DEGENERATE_STREAK_LIMIT;
            let Some((q, increase)) = self.choose_entering(bland) else {
                return Outcome::Optimal;
            };
            let span = self.upper[q] - self.lower[q];
            let blocking = self.ratio_test(q, increase, bland);
            let sign = if increase { 1.0 } else { -1.0 };
            match blocking {
                Some((_, theta, _)) if span <= theta => {
                    self.shift(q, sign * span);
                    self.position[q] = if increase {
                        Position::AtUpper
                    } else {
                        Position::AtLower
                    };
                    self.pivots += 1;
                    streak = 0;
                }
                None if span.is_finite() => {
                    self.shift(q, sign * span);
                    self.position[q] = if increase {
                        Position::AtUpper
                    } else {
                        Position::AtLower
                    };
                    self.pivots += 1;
                    streak = 0;
                }
                None => return Outcome::Unbounded,
                Some((row, theta, to_upper)) => {
                    if theta <= 1e-12 {
                        streak += 1;
                    } else {
                        streak = 0;
                    }
                    self.shift(q, sign * theta);
                    self.pivot(row, q, to_upper);
                    since_refresh += 1;
                }
            }
        }
    }
}

/// Runs both simplex phases; `None` when the floating-point run does not end
/// at an optimum.
pub(crate) fn find_basis(p: &FloatProblem) -> Option<FloatBasis> {
    let (n, m) = (p.n, p.m);
    let width = n + 2 * m;
    let mut t = vec![0.0; m * width];
    for (j, col) in p.columns.iter().enumerate() {
        for &(i, a) in col {
            t[i * width + j] = a;
        }
    }
    let mut value: Vec<f64> = (0..n)
        .map(|j| {
            if p.start_at_upper {
                p.upper[j]
            } else {
                p.lower[j]
            }
        })
        .collect();
    if value.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let mut activity = vec![0.0; m];
    for (j, col) in p.columns.iter().enumerate() {
        for &(i, a) in col {
            activity[i] += a * value[j];
        }
    }
    let structural_position = if p.start_at_upper {
        Position::AtUpper
    } else {
        Position::AtLower
    };
    let mut position = vec![structural_position; n];
    let mut lower = p.lower[..n].to_vec();
    let mut upper = p.upper[..n].to_vec();
    lower.extend_from_slice(&p.lower[n..n + m]);
    upper.extend_from_slice(&p.upper[n..n + m]);
    let mut basis = Vec::with_capacity(m);
    let mut art_values = vec![0.0; m];
    let mut art_upper = vec![0.0; m];
    let mut logical_values = vec![0.0; m];
    let mut logical_positions = vec![Position::Basic; m];
    for i in 0..m {
        let s = activity[i];
        let (lo, hi) = (p.lower[n + i], p.upper[n + i]);
        let row = &mut t[i * width..(i + 1) * width];
        row[n + i] = -1.0;
        if s < lo - FEAS_TOL || s > hi + FEAS_TOL {
            let bound = if s < lo { lo } else { hi };
            let sigma = if bound > s { 1.0 } else { -1.0 };
            row[n + m + i] = sigma;
            // normalize so the artificial has a unit coefficient
            for x in row.iter_mut() {
                *x *= sigma;
            }
            basis.push(n + m + i);
            art_values[i] = sigma * (bound - s);
            art_upper[i] = f64::INFINITY;
            logical_values[i] = bound;
            logical_positions[i] = if bound == lo {
                Position::AtLower
            } else {
                Position::AtUpper
            };
        } else {
            for x in row.iter_mut() {
                *x = -*x;
            }
            basis.push(n + i);
            logical_values[i] = s;
        }
    }
    value.extend(logical_values);
    value.extend(art_values.iter().copied());
    position.extend(logical_positions);
    position.extend(basis.iter().enumerate().map(|(i, &b)| {
        if b == n + m + i {
            Position::Basic
        } else {
            Position::AtLower
        }
    }));
    lower.extend(std::iter::repeat_n(0.0, m));
    upper.extend(art_upper);

    let mut dense = Dense {
        m,
        width,
        t,
        basis,
        position,
        value,
        lower,
        upper,
        reduced: Vec::new(),
        pivots: 0,
    };
    let limit = 50 * (n + m) + 10_000;

    if art_values.iter().any(|&a| a > 0.0) {
        let mut phase_one = vec![0.0; width];
        for c in &mut phase_one[n + m..] {
            *c = 1.0;
        }
        match dense.optimize(&phase_one, limit) {
            Outcome::Optimal => {}
            _ => return None,
        }
        let residual: f64 = dense.value[n + m..].iter().sum();
        if residual > FEAS_TOL {
            return None;
        }
        for j in n + m..width {
            dense.upper[j] = 0.0;
            if dense.position[j] != Position::Basic {
                dense.position[j] = Position::AtLower;
                dense.value[j] = 0.0;
            }
        }
    }
    let mut cost = vec![0.0; width];
    cost[..n].copy_from_slice(&p.cost);
    match dense.optimize(&cost, limit) {
        Outcome::Optimal => {}
        Outcome::Unbounded | Outcome::Stalled => return None,
    }
    Some(FloatBasis {
        basic: dense.basis,
        at_upper: dense
            .position
            .iter()
            .map(|&pos| pos == Position::AtUpper)
            .collect(),
        pivots: dense.pivots,
    })
}
