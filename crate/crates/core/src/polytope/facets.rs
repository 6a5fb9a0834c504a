use std::cmp::Ordering;
use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exact::{affine_rank, nullspace, Vector};
use crate::scalar::Field;

/// `{x : <normal, x> = offset}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane<F> {
    pub normal: Vector<F>,
    pub offset: F,
}

impl<F: Field> Hyperplane<F> {
    /// The unique hyperplane through the selected points, if they span one.
    pub fn through(points: &[Vector<F>], indices: &[usize]) -> Option<Self> {
        let dim = points.first()?.dim();
        let rows: Vec<Vec<F>> = indices
            .iter()
            .map(|&i| {
                let mut row = points[i].coords().to_vec();
                row.push(-F::one());
                row
            })
            .collect();
        let basis = nullspace(&rows, dim + 1);
        if basis.len() != 1 {
            return None;
        }
        let mut coeffs = basis.into_iter().next().unwrap();
        let offset = coeffs.pop().unwrap();
        let normal = Vector::new(coeffs);
        if normal.is_zero() {
            return None;
        }
        Some(Hyperplane { normal, offset })
    }

    pub fn side(&self, point: &Vector<F>) -> Ordering {
        self.normal.dot(point).partial_cmp(&self.offset).expect("exact scalars are totally ordered")
    }

    /// Splits point indices into (on, below, above).
    pub fn classify(&self, points: &[Vector<F>]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let (mut on, mut below, mut above) = (Vec::new(), Vec::new(), Vec::new());
        for (i, p) in points.iter().enumerate() {
            match self.side(p) {
                Ordering::Equal => on.push(i),
                Ordering::Less => below.push(i),
                Ordering::Greater => above.push(i),
            }
        }
        (on, below, above)
    }
}

/// Facets of `conv(vertices)` by enumerating hyperplanes spanned by
/// `dim`-subsets and keeping those with no vertex strictly on both sides.
///
/// Exponential in the number of vertices; meant for small inputs and as an
/// oracle for the structured constructions.
pub fn facets_bruteforce<F: Field>(vertices: &[Vector<F>]) -> Result<Vec<Vec<usize>>> {
    let first = vertices.first().ok_or(Error::EmptyInput("no vertices"))?;
    let dim = first.dim();
    for v in vertices {
        v.check_dim(dim)?;
    }
    let rank = affine_rank(vertices);
    if rank != dim {
        return Err(Error::NotFullDimensional { rank, dim });
    }
    let mut found = BTreeSet::new();
    for subset in (0..vertices.len()).combinations(dim) {
        let Some(plane) = Hyperplane::through(vertices, &subset) else {
            continue;
        };
        let (on, below, above) = plane.classify(vertices);
        if below.is_empty() || above.is_empty() {
            found.insert(on);
        }
    }
    Ok(found.into_iter().collect())
}
