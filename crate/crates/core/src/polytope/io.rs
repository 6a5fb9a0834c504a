use serde::{Deserialize, Serialize};

use super::{BoundaryComplex, Polytope};
use crate::error::Result;
use crate::exact::Vector;
use crate::scalar::Field;

/// On-disk polytope: `{dim, vertices: [["p/q", ...], ...], facets: [[idx, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct PolytopeJson<F> {
    pub dim: usize,
    pub vertices: Vec<Vector<F>>,
    pub facets: Vec<Vec<usize>>,
}

impl<F: Field> From<&Polytope<F>> for PolytopeJson<F> {
    fn from(p: &Polytope<F>) -> Self {
        PolytopeJson { dim: p.dim(), vertices: p.vertices().to_vec(), facets: p.facets().to_vec() }
    }
}

impl<F: Field> PolytopeJson<F> {
    pub fn into_polytope(self) -> Result<Polytope<F>> {
        let p = Polytope::new(self.vertices, self.facets)?;
        if p.dim() != self.dim {
            return Err(crate::Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        Ok(p)
    }
}

/// A polytope together with a spherical complex of its boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct ComplexJson<F> {
    pub dim: usize,
    pub vertices: Vec<Vector<F>>,
    pub facets: Vec<Vec<usize>>,
    pub sphere_vertices: Vec<Vec<f64>>,
    pub simplices: Vec<Vec<usize>>,
}

impl<F: Field> ComplexJson<F> {
    pub fn new(p: &Polytope<F>, c: &BoundaryComplex<f64>) -> Self {
        ComplexJson {
            dim: p.dim(),
            vertices: p.vertices().to_vec(),
            facets: p.facets().to_vec(),
            sphere_vertices: c.vertices.clone(),
            simplices: c.simplices.clone(),
        }
    }
}
