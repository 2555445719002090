//! Dense row reduction over a field, for the handful of tiny systems the
//! structural predicates need.

use crate::field::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut rows = rows.to_vec();
    rref(&mut rows).len()
}

/// Some solution of `A x = b` given the augmented rows `[A | b]`, or `None`
/// when the system is inconsistent.
pub(crate) fn solve_augmented(mut rows: Vec<Vec<Scalar>>) -> Option<Vec<Scalar>> {
    let width = rows.first()?.len();
    let unknowns = width - 1;
    let pivots = rref(&mut rows);
    if pivots.contains(&unknowns) {
        return None;
    }
    let field = rows[0][0].field();
    let mut x = vec![field.zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][unknowns].clone();
    }
    Some(x)
}
