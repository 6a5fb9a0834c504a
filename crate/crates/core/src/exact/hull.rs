//! Common points of convex hulls.

use super::lp::{StandardForm, StandardOutcome};
use super::Vector;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A point `z` together with convex coefficients, one list per input set,
/// each reproducing `z` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct HullIntersection<F> {
    pub point: Vector<F>,
    pub coeffs: Vec<Vec<F>>,
}

fn check_sets<F: Field>(sets: &[Vec<Vector<F>>], dim: usize) -> Result<()> {
    if sets.is_empty() {
        return Err(Error::EmptyInput("no point sets"));
    }
    for set in sets {
        if set.is_empty() {
            return Err(Error::EmptyInput("empty point set"));
        }
        for p in set {
            p.check_dim(dim)?;
        }
    }
    Ok(())
}

/// Finds a point of `conv(S_1) ∩ ... ∩ conv(S_r)`, or `None` when empty.
pub fn conv_intersection_point<F: Field>(sets: &[Vec<Vector<F>>], dim: usize) -> Result<Option<HullIntersection<F>>> {
    check_sets(sets, dim)?;
    Ok(solve_hulls(sets, dim, false))
}

/// Like [`conv_intersection_point`], but every coefficient must be strictly
/// positive, so the point lies in the relative interior of every hull.
pub fn relint_intersection_point<F: Field>(sets: &[Vec<Vector<F>>], dim: usize) -> Result<Option<HullIntersection<F>>> {
    check_sets(sets, dim)?;
    Ok(solve_hulls(sets, dim, true))
}

/// Variables are one weight per point. In the strict variant the weights are
/// written `1 + nu` with `nu >= 0`, and all sets share a common total weight
/// instead of the total being pinned to 1.
pub(crate) fn solve_hulls<F: Field>(sets: &[Vec<Vector<F>>], dim: usize, strict: bool) -> Option<HullIntersection<F>> {
    let offsets: Vec<usize> = sets
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.len();
            Some(o)
        })
        .collect();
    let num_vars: usize = sets.iter().map(Vec::len).sum();
    let mut sf = StandardForm::new(num_vars);

    let (first, rest) = sets.split_first().expect("checked nonempty");
    for (j, set) in rest.iter().enumerate() {
        let j = j + 1;
        for k in 0..dim {
            let mut row = vec![F::zero(); num_vars];
            let mut shift = F::zero();
            for (i, p) in first.iter().enumerate() {
                row[i] = p[k].clone();
                shift += p[k].clone();
            }
            for (i, p) in set.iter().enumerate() {
                row[offsets[j] + i] = -p[k].clone();
                shift -= p[k].clone();
            }
            sf.push_row(row, if strict { -shift } else { F::zero() });
        }
        if strict {
            let mut row = vec![F::zero(); num_vars];
            row[..first.len()].fill(F::one());
            for i in 0..set.len() {
                row[offsets[j] + i] = -F::one();
            }
            let diff = F::from_i64(first.len() as i64) - F::from_i64(set.len() as i64);
            sf.push_row(row, -diff);
        }
    }
    if !strict {
        for (j, set) in sets.iter().enumerate() {
            let mut row = vec![F::zero(); num_vars];
            for i in 0..set.len() {
                row[offsets[j] + i] = F::one();
            }
            sf.push_row(row, F::one());
        }
    }

    let x = match sf.solve() {
        StandardOutcome::Feasible(x) => x,
        StandardOutcome::Infeasible(_) => return None,
    };
    let coeffs: Vec<Vec<F>> = sets
        .iter()
        .enumerate()
        .map(|(j, set)| {
            let weights: Vec<F> = x[offsets[j]..offsets[j] + set.len()]
                .iter()
                .map(|v| if strict { v.clone() + F::one() } else { v.clone() })
                .collect();
            if strict {
                let total = weights.iter().fold(F::zero(), |a, w| a + w.clone());
                weights.into_iter().map(|w| w / total.clone()).collect()
            } else {
                weights
            }
        })
        .collect();
    let refs: Vec<&Vector<F>> = first.iter().collect();
    let point = Vector::combination(&refs, &coeffs[0], dim);
    Some(HullIntersection { point, coeffs })
}

/// True when `coeffs` are convex and reproduce `point` from every set.
pub fn check_intersection<F: Field>(sets: &[Vec<Vector<F>>], hit: &HullIntersection<F>) -> bool {
    let dim = hit.point.dim();
    sets.len() == hit.coeffs.len()
        && sets.iter().zip(&hit.coeffs).all(|(set, c)| {
            let refs: Vec<&Vector<F>> = set.iter().collect();
            c.len() == set.len()
                && c.iter().all(|x| !x.is_negative())
                && c.iter().fold(F::zero(), |a, x| a + x.clone()) == F::one()
                && Vector::combination(&refs, c, dim) == hit.point
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn pts(list: &[&[i64]]) -> Vec<Vector<Rational>> {
        list.iter().map(|c| Vector::from_i64s(c)).collect()
    }

    #[test]
    fn crossing_segments() {
        let sets = vec![pts(&[&[0, 0], &[2, 0]]), pts(&[&[1, -1], &[1, 1]])];
        let hit = conv_intersection_point(&sets, 2).unwrap().unwrap();
        assert_eq!(hit.point, Vector::from_i64s(&[1, 0]));
        assert!(check_intersection(&sets, &hit));
    }

    #[test]
    fn distinct_points_do_not_meet() {
        let sets = vec![pts(&[&[0, 0]]), pts(&[&[1, 0]])];
        assert!(conv_intersection_point(&sets, 2).unwrap().is_none());
    }

    #[test]
    fn square_diagonals_meet_at_center() {
        let sets = vec![pts(&[&[0, 0], &[1, 1]]), pts(&[&[1, 0], &[0, 1]])];
        let hit = conv_intersection_point(&sets, 2).unwrap().unwrap();
        let half = Rational::from_ratio(1, 2);
        assert_eq!(hit.point, Vector::new(vec![half.clone(), half]));
    }

    #[test]
    fn strict_rejects_boundary_contact() {
        // Segments touching only at an endpoint.
        let sets = vec![pts(&[&[0, 0], &[1, 0]]), pts(&[&[1, 0], &[1, 1]])];
        assert!(conv_intersection_point(&sets, 2).unwrap().is_some());
        assert!(relint_intersection_point(&sets, 2).unwrap().is_none());
    }

    #[test]
    fn strict_coefficients_are_positive() {
        let sets = vec![pts(&[&[0, 0], &[2, 0], &[0, 2]]), pts(&[&[1, -1], &[0, 3]])];
        let hit = relint_intersection_point(&sets, 2).unwrap().unwrap();
        assert!(check_intersection(&sets, &hit));
        assert!(hit.coeffs.iter().flatten().all(|c| c > &Rational::from_i64(0)));
    }

    #[test]
    fn empty_inputs_error() {
        assert!(conv_intersection_point::<Rational>(&[], 2).is_err());
        assert!(conv_intersection_point::<Rational>(&[vec![]], 2).is_err());
    }
}
