//! The simplex optimum agrees with exhaustive vertex enumeration.

use faircover::lp::{
    solve_to_optimal_basic, solve_with, verify_extreme_point, LpSolution, LpStatus, Relation,
    Sense, SolveMethod,
};
use faircover::{LinearProgram, Rational, Scalar};
use itertools::Itertools;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn int(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Solves a square system; `None` when singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = Rational::one() / a[col][col].clone();
        for c in 0..n {
            a[col][c] = a[col][c].clone() * inv.clone();
        }
        b[col] = b[col].clone() * inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
                }
                b[r] = b[r].clone() - f * b[col].clone();
            }
        }
    }
    Some(b)
}

/// Best objective over all basic feasible points, or `None` if there is none.
fn enumerate_vertices(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.num_variables();
    let mut planes: Vec<(Vec<Rational>, Rational)> = lp
        .constraints()
        .iter()
        .map(|c| (c.coefficients.clone(), c.rhs.clone()))
        .collect();
    for j in 0..n {
        let mut e = vec![int(0); n];
        e[j] = int(1);
        planes.push((e.clone(), lp.lower()[j].clone()));
        planes.push((e, lp.upper()[j].clone().expect("finite bounds")));
    }
    let mut best: Option<Rational> = None;
    for subset in (0..planes.len()).combinations(n) {
        let a = subset.iter().map(|&k| planes[k].0.clone()).collect();
        let b = subset.iter().map(|&k| planes[k].1.clone()).collect();
        let Some(x) = solve_square(a, b) else {
            continue;
        };
        if !lp.is_feasible(&x) {
            continue;
        }
        let value = lp.objective_value(&x);
        let better = match (&best, lp.sense()) {
            (None, _) => true,
            (Some(v), Sense::Maximize) => value > *v,
            (Some(v), Sense::Minimize) => value < *v,
        };
        if better {
            best = Some(value);
        }
    }
    best
}

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![Just(Relation::Le), Just(Relation::Ge), Just(Relation::Eq)]
}

fn small_lp() -> impl Strategy<Value = LinearProgram> {
    (1usize..=6, 0usize..=8, any::<bool>()).prop_flat_map(|(n, m, maximize)| {
        let objective = prop::collection::vec(-3i64..=3, n);
        let bounds = prop::collection::vec((-2i64..=1, 0i64..=3), n);
        let rows = prop::collection::vec(
            (prop::collection::vec(-2i64..=2, n), relation(), -3i64..=5),
            m,
        );
        (objective, bounds, rows).prop_map(move |(c, bounds, rows)| {
            let sense = if maximize {
                Sense::Maximize
            } else {
                Sense::Minimize
            };
            let mut lp = LinearProgram::new(sense, c.into_iter().map(int).collect());
            for (j, (l, span)) in bounds.into_iter().enumerate() {
                lp.set_bounds(j, int(l), Some(int(l + span)));
            }
            for (a, rel, b) in rows {
                lp.add_constraint(a.into_iter().map(int).collect(), rel, int(b));
            }
            lp
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn simplex_matches_vertex_enumeration(lp in small_lp()) {
        let expected = enumerate_vertices(&lp);
        for method in [SolveMethod::Tableau, SolveMethod::Guided] {
            let sol = solve_with(&lp, method).unwrap();
            match &expected {
                None => prop_assert_eq!(sol.status, LpStatus::Infeasible),
                Some(best) => {
                    prop_assert_eq!(sol.status, LpStatus::Optimal);
                    prop_assert_eq!(&sol.objective, best);
                    prop_assert!(verify_extreme_point(&lp, &sol).unwrap());
                }
            }
        }
    }
}

#[test]
fn midpoint_of_optimal_edge_is_not_extreme() {
    // every point of the segment (1,0)-(0,1) is optimal
    let mut lp = LinearProgram::unit_box(Sense::Maximize, vec![int(1), int(1)]);
    lp.add_constraint(vec![int(1), int(1)], Relation::Le, int(1));
    let sol = solve_to_optimal_basic(&lp).unwrap();
    assert!(verify_extreme_point(&lp, &sol).unwrap());
    let other = if sol.values == vec![int(1), int(0)] {
        vec![int(0), int(1)]
    } else {
        vec![int(1), int(0)]
    };
    let half = Rational::new(1.into(), 2.into());
    let mid: Vec<Rational> = sol
        .values
        .iter()
        .zip(&other)
        .map(|(a, b)| (a.clone() + b.clone()) * half.clone())
        .collect();
    assert_eq!(mid, vec![half.clone(), half]);
    let midpoint = LpSolution {
        objective: lp.objective_value(&mid),
        values: mid,
        ..sol
    };
    assert!(!verify_extreme_point(&lp, &midpoint).unwrap());
}

#[test]
fn degenerate_cycling_example_terminates() {
    // Beale's classic cycling example for the largest-coefficient rule
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let mut lp = LinearProgram::new(Sense::Minimize, vec![q(-3, 4), int(150), q(-1, 50), int(6)]);
    lp.add_constraint(
        vec![q(1, 4), int(-60), q(-1, 25), int(9)],
        Relation::Le,
        int(0),
    );
    lp.add_constraint(
        vec![q(1, 2), int(-90), q(-1, 50), int(3)],
        Relation::Le,
        int(0),
    );
    lp.add_constraint(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1));
    let sol = solve_to_optimal_basic(&lp).unwrap();
    assert_eq!(sol.status, LpStatus::Optimal);
    assert_eq!(sol.objective, q(-1, 20));
    assert!(verify_extreme_point(&lp, &sol).unwrap());
}
