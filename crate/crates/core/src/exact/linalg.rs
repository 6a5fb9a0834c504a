//! Exact Gaussian elimination.

use super::Vector;
use crate::scalar::Field;

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref<F: Field>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row[c..ncols].iter_mut().zip(&pivot_row[c..ncols]) {
                    *x -= factor.clone() * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work).len()
}

/// A basis of `{x : rows * x = 0}`.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[r][f].clone();
            }
            v
        })
        .collect()
}

/// Dimension of the affine hull of a nonempty point list.
pub fn affine_rank<F: Field>(points: &[Vector<F>]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<F>> = points[1..].iter().map(|p| (p - base).into_coords()).collect();
    rank(&diffs)
}

/// A nonzero affine dependence `sum mu_i p_i = 0`, `sum mu_i = 0`, if one exists.
pub fn affine_dependence<F: Field>(points: &[&Vector<F>]) -> Option<Vec<F>> {
    let k = points.len();
    let dim = points.first()?.dim();
    let mut rows: Vec<Vec<F>> = (0..dim).map(|i| points.iter().map(|p| p[i].clone()).collect()).collect();
    rows.push(vec![F::one(); k]);
    nullspace(&rows, k).into_iter().next()
}
