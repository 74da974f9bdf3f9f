//! Exact sparse linear solves by Gaussian elimination with Markowitz-style
//! pivot selection (shortest column first, then shortest row).

use std::collections::BTreeSet;

use crate::scalar::Scalar;

pub(crate) type SparseVec<T> = Vec<(usize, T)>;

/// `row - factor·other` over sorted sparse rows, dropping column `skip` and zeros.
pub(crate) fn sub_scaled<T: Scalar>(
    row: &[(usize, T)],
    factor: &T,
    other: &[(usize, T)],
    skip: usize,
) -> SparseVec<T> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < other.len() {
        let ja = row.get(a).map_or(usize::MAX, |e| e.0);
        let jb = other.get(b).map_or(usize::MAX, |e| e.0);
        let (j, v) = if ja < jb {
            a += 1;
            (ja, row[a - 1].1.clone())
        } else if jb < ja {
            b += 1;
            (jb, -(factor.clone() * other[b - 1].1.clone()))
        } else {
            a += 1;
            b += 1;
            (
                ja,
                row[a - 1].1.clone() - factor.clone() * other[b - 1].1.clone(),
            )
        };
        if j != skip && !v.is_zero() {
            out.push((j, v));
        }
    }
    out
}

/// Solves the square system whose `i`-th equation is `Σ rows[i][k]·z_k = rhs[i]`.
///
/// Row entries must be sorted by column. `None` when the matrix is singular.
pub(crate) fn solve_rows<T: Scalar>(
    mut rows: Vec<SparseVec<T>>,
    mut rhs: Vec<T>,
) -> Option<Vec<T>> {
    let dim = rows.len();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); dim];
    for (i, row) in rows.iter().enumerate() {
        for (k, _) in row {
            col_rows[*k].insert(i);
        }
    }
    let mut col_done = vec![false; dim];
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(dim);

    for _ in 0..dim {
        let c = (0..dim)
            .filter(|&k| !col_done[k])
            .min_by_key(|&k| col_rows[k].len())?;
        let r = *col_rows[c].iter().min_by_key(|&&i| rows[i].len())?;
        let pivot_row = std::mem::take(&mut rows[r]);
        let head = pivot_row[pivot_row.binary_search_by_key(&c, |e| e.0).ok()?]
            .1
            .clone();
        for (k, _) in &pivot_row {
            col_rows[*k].remove(&r);
        }
        let others: Vec<usize> = col_rows[c].iter().copied().collect();
        for i in others {
            let at = rows[i].binary_search_by_key(&c, |e| e.0).ok()?;
            let factor = rows[i][at].1.clone() / head.clone();
            let updated = sub_scaled(&rows[i], &factor, &pivot_row, c);
            for (k, _) in &rows[i] {
                if updated.binary_search_by_key(k, |e| e.0).is_err() {
                    col_rows[*k].remove(&i);
                }
            }
            for (k, _) in &updated {
                col_rows[*k].insert(i);
            }
            rows[i] = updated;
            rhs[i] = rhs[i].clone() - factor * rhs[r].clone();
        }
        rows[r] = pivot_row;
        col_done[c] = true;
        order.push((r, c));
    }

    let mut z = vec![T::zero(); dim];
    for &(r, c) in order.iter().rev() {
        let mut acc = rhs[r].clone();
        let mut head = T::one();
        for (k, a) in &rows[r] {
            if *k == c {
                head = a.clone();
            } else {
                acc = acc - a.clone() * z[*k].clone();
            }
        }
        z[c] = acc / head;
    }
    Some(z)
}

/// Solves `B x = b` for `B` given by its sparse columns.
pub(crate) fn solve_columns<T: Scalar>(columns: &[&[(usize, T)]], rhs: Vec<T>) -> Option<Vec<T>> {
    let mut rows: Vec<SparseVec<T>> = vec![Vec::new(); rhs.len()];
    for (k, col) in columns.iter().enumerate() {
        for (i, a) in col.iter() {
            rows[*i].push((k, a.clone()));
        }
    }
    solve_rows(rows, rhs)
}

/// Solves `Bᵀ π = c` for `B` given by its sparse columns.
pub(crate) fn solve_transposed<T: Scalar>(
    columns: &[&[(usize, T)]],
    rhs: Vec<T>,
) -> Option<Vec<T>> {
    let rows = columns
        .iter()
        .map(|col| {
            let mut row = col.to_vec();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect();
    solve_rows(rows, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn int(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn small_system() {
        // x + y = 3, x - y = 1
        let c0 = vec![(0, int(1)), (1, int(1))];
        let c1 = vec![(0, int(1)), (1, int(-1))];
        let x = solve_columns(&[&c0, &c1], vec![int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        // transposed: x + y = 3, x - y = 1 again since the matrix is symmetric
        let p = solve_transposed(&[&c0, &c1], vec![int(3), int(1)]).unwrap();
        assert_eq!(p, vec![int(2), int(1)]);
    }

    #[test]
    fn transposed_differs_for_asymmetric_matrices() {
        // B = [[1, 2], [0, 1]]
        let c0 = vec![(0, int(1))];
        let c1 = vec![(0, int(2)), (1, int(1))];
        assert_eq!(
            solve_columns(&[&c0, &c1], vec![int(5), int(2)]).unwrap(),
            vec![int(1), int(2)]
        );
        // Bᵀ π = (1, 4): π0 = 1, 2π0 + π1 = 4
        assert_eq!(
            solve_transposed(&[&c0, &c1], vec![int(1), int(4)]).unwrap(),
            vec![int(1), int(2)]
        );
    }

    #[test]
    fn singular_is_none() {
        let c0 = vec![(0, int(1)), (1, int(2))];
        let c1 = vec![(0, int(2)), (1, int(4))];
        assert_eq!(solve_columns(&[&c0, &c1], vec![int(1), int(2)]), None);
        let empty: Vec<(usize, Rational)> = vec![];
        assert_eq!(solve_columns(&[&c0, &empty], vec![int(1), int(2)]), None);
    }

    #[test]
    fn fill_in_and_cancellation() {
        // dense 3×3 with a zero produced by elimination
        let cols = [
            vec![(0, int(1)), (1, int(1)), (2, int(2))],
            vec![(0, int(1)), (1, int(1)), (2, int(1))],
            vec![(0, int(1)), (1, int(2)), (2, int(1))],
        ];
        let refs: Vec<&[(usize, Rational)]> = cols.iter().map(|c| c.as_slice()).collect();
        let x = solve_columns(&refs, vec![int(6), int(7), int(8)]).unwrap();
        // verify B x = b
        let mut b = vec![int(0); 3];
        for (k, col) in cols.iter().enumerate() {
            for (i, a) in col {
                b[*i] = b[*i].clone() + a.clone() * x[k].clone();
            }
        }
        assert_eq!(b, vec![int(6), int(7), int(8)]);
    }
}
