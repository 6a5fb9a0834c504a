//! Carathéodory support reduction.

use crate::error::{Error, Result};
use crate::exact::linalg::affine_dependence;
use crate::exact::Vector;
use crate::scalar::Field;

/// Convex coefficients over a subset of the input points.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduced<F> {
    pub indices: Vec<usize>,
    pub coeffs: Vec<F>,
}

/// Rewrites `z = sum coeffs_i points_i` using at most `dim + 1` points with
/// positive coefficients, by repeatedly cancelling an affine dependence.
pub fn caratheodory_reduce<F: Field>(points: &[Vector<F>], z: &Vector<F>, coeffs: &[F]) -> Result<Reduced<F>> {
    let dim = z.dim();
    if points.len() != coeffs.len() {
        return Err(Error::DimensionMismatch { expected: points.len(), found: coeffs.len() });
    }
    for p in points {
        p.check_dim(dim)?;
    }
    let sum = coeffs.iter().fold(F::zero(), |a, c| a + c.clone());
    if coeffs.iter().any(|c| c.is_negative()) || !sum.is_one() {
        return Err(Error::InvalidArgument("coefficients are not convex".into()));
    }
    let refs: Vec<&Vector<F>> = points.iter().collect();
    if Vector::combination(&refs, coeffs, dim) != *z {
        return Err(Error::InvalidArgument("coefficients do not reproduce z".into()));
    }

    let (mut indices, mut weights): (Vec<usize>, Vec<F>) =
        coeffs.iter().enumerate().filter(|(_, c)| c.is_positive()).map(|(i, c)| (i, c.clone())).unzip();
    while indices.len() > dim + 1 {
        let support: Vec<&Vector<F>> = indices.iter().map(|&i| &points[i]).collect();
        let mut mu = affine_dependence(&support).expect("more than dim + 1 points are affinely dependent");
        if !mu.iter().any(|m| m.is_positive()) {
            mu.iter_mut().for_each(|m| *m = -m.clone());
        }
        let step = weights
            .iter()
            .zip(&mu)
            .filter(|(_, m)| m.is_positive())
            .map(|(w, m)| w.clone() / m.clone())
            .reduce(|a, b| if b < a { b } else { a })
            .expect("a dependence summing to zero has a positive entry");
        for (w, m) in weights.iter_mut().zip(&mu) {
            *w = w.clone() - step.clone() * m.clone();
        }
        let kept: Vec<(usize, F)> = indices.into_iter().zip(weights).filter(|(_, w)| w.is_positive()).collect();
        (indices, weights) = kept.into_iter().unzip();
    }
    Ok(Reduced { indices, coeffs: weights })
}
