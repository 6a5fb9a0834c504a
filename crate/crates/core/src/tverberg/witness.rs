use serde::{Deserialize, Serialize};

use super::LinearMap;
use crate::error::{Error, Result};
use crate::exact::{scalar_lists, Vector};
use crate::polytope::Polytope;
use crate::scalar::Field;

/// `r` vertex-disjoint index sets, a common image point `z`, and per-set
/// convex coefficients certifying `z` lies in the image of every set.
///
/// JSON: `{faces: [[idx, ...], ...], z: ["p/q", ...], coeffs: [["p/q", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct TverbergWitness<F> {
    pub faces: Vec<Vec<usize>>,
    pub z: Vector<F>,
    #[serde(with = "scalar_lists")]
    pub coeffs: Vec<Vec<F>>,
}

impl<F: Field> TverbergWitness<F> {
    /// Indices with a strictly positive coefficient, per face.
    pub fn supports(&self) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .zip(&self.coeffs)
            .map(|(face, c)| face.iter().zip(c).filter(|(_, x)| x.is_positive()).map(|(&i, _)| i).collect())
            .collect()
    }

    /// Drops zero coefficients, shrinking each set to its support.
    pub fn restrict_to_support(&self) -> Self {
        let (faces, coeffs) = self
            .faces
            .iter()
            .zip(&self.coeffs)
            .map(|(face, c)| {
                face.iter()
                    .zip(c)
                    .filter(|(_, x)| x.is_positive())
                    .map(|(&i, x)| (i, x.clone()))
                    .unzip::<usize, F, Vec<_>, Vec<_>>()
            })
            .unzip();
        TverbergWitness { faces, z: self.z.clone(), coeffs }
    }

    /// The unordered face set, sorted; used to compare witnesses.
    pub fn face_key(&self) -> Vec<Vec<usize>> {
        let mut key: Vec<Vec<usize>> = self
            .faces
            .iter()
            .map(|f| {
                let mut f = f.clone();
                f.sort_unstable();
                f
            })
            .collect();
        key.sort();
        key
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidWitness(msg.into())
}

/// Checks a witness against a point configuration: disjoint nonempty index
/// sets, convex coefficients, and exact reproduction of `z`.
pub fn validate_partition<F: Field>(points: &[Vector<F>], w: &TverbergWitness<F>) -> Result<()> {
    if w.faces.is_empty() || w.faces.len() != w.coeffs.len() {
        return Err(invalid("face and coefficient lists differ in length"));
    }
    let mut used = vec![false; points.len()];
    for (face, coeffs) in w.faces.iter().zip(&w.coeffs) {
        if face.is_empty() || face.len() != coeffs.len() {
            return Err(invalid(format!("face {face:?} has mismatched coefficients")));
        }
        for &i in face {
            if i >= points.len() {
                return Err(invalid(format!("index {i} out of range")));
            }
            if std::mem::replace(&mut used[i], true) {
                return Err(invalid(format!("index {i} used twice")));
            }
        }
        if coeffs.iter().any(|c| c.is_negative()) {
            return Err(invalid("negative coefficient"));
        }
        if coeffs.iter().fold(F::zero(), |a, c| a + c.clone()) != F::one() {
            return Err(invalid("coefficients do not sum to one"));
        }
        let refs: Vec<&Vector<F>> = face.iter().map(|&i| &points[i]).collect();
        if Vector::combination(&refs, coeffs, w.z.dim()) != w.z {
            return Err(invalid(format!("face {face:?} does not reproduce z")));
        }
    }
    Ok(())
}

/// Checks a witness for `polytope` under `map`: the point-configuration
/// checks on the vertex images, plus each set is a proper face avoiding
/// `forbidden` and is the minimal face of its positive support.
pub fn validate_witness<F: Field>(
    polytope: &Polytope<F>,
    map: &LinearMap<F>,
    w: &TverbergWitness<F>,
    forbidden: Option<usize>,
) -> Result<()> {
    let images = map.apply_all(polytope.vertices())?;
    validate_partition(&images, w)?;
    for (face, support) in w.faces.iter().zip(w.supports()) {
        let mut sorted = face.clone();
        sorted.sort_unstable();
        if sorted.len() == polytope.num_vertices() || !polytope.is_face(&sorted) {
            return Err(invalid(format!("{face:?} is not a proper face")));
        }
        if forbidden.is_some_and(|v| face.contains(&v)) {
            return Err(invalid(format!("{face:?} contains the forbidden vertex")));
        }
        if polytope.minimal_face(&support) != sorted {
            return Err(invalid(format!("{face:?} is not the minimal face of its point")));
        }
    }
    Ok(())
}
