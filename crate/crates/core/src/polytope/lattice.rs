use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use log::warn;
use serde::{Deserialize, Serialize};

use super::{indices_of, mask_of, Mask, Polytope};
use crate::exact::{affine_rank, Vector};
use crate::scalar::Field;

/// A nonempty face, identified by its vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

impl Face {
    pub(crate) fn mask(&self) -> Mask {
        mask_of(&self.vertices)
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.mask() & other.mask() == 0
    }
}

impl<F: Field> Polytope<F> {
    /// Smallest face containing the given vertices: the intersection of all
    /// facets containing them, or every vertex when no facet does.
    pub(crate) fn closure_mask(&self, set: Mask) -> Mask {
        self.facet_masks().iter().filter(|&&f| f & set == set).fold(self.all_mask(), |acc, &f| acc & f)
    }

    /// Vertex set of the minimal face containing `vertices`.
    pub fn minimal_face(&self, vertices: &[usize]) -> Vec<usize> {
        indices_of(self.closure_mask(mask_of(vertices)))
    }

    /// Whether `vertices` is exactly the vertex set of a face.
    pub fn is_face(&self, vertices: &[usize]) -> bool {
        let m = mask_of(vertices);
        m != 0 && self.closure_mask(m) == m
    }

    pub(crate) fn face_from_mask(&self, mask: Mask) -> Face {
        let vertices = indices_of(mask);
        let pts: Vec<Vector<F>> = vertices.iter().map(|&i| self.vertices()[i].clone()).collect();
        Face { dim: affine_rank(&pts), vertices }
    }

    /// Every nonempty face other than the polytope itself, sorted by vertex
    /// list. Computed as the closure of the facets under intersection.
    pub fn all_proper_faces(&self) -> Vec<Face> {
        let mut seen: HashSet<Mask> = HashSet::new();
        let mut frontier: Vec<Mask> = Vec::new();
        for &f in self.facet_masks() {
            if seen.insert(f) {
                frontier.push(f);
            }
        }
        while let Some(face) = frontier.pop() {
            for &f in self.facet_masks() {
                let meet = face & f;
                if meet != 0 && seen.insert(meet) {
                    frontier.push(meet);
                }
            }
        }
        seen.remove(&self.all_mask());
        let ordered: BTreeSet<Vec<usize>> = seen.into_iter().map(indices_of).collect();
        ordered.into_iter().map(|v| self.face_from_mask(mask_of(&v))).collect()
    }

    pub fn faces_of_dim(&self, k: usize) -> Vec<Face> {
        self.all_proper_faces().into_iter().filter(|f| f.dim == k).collect()
    }

    /// True iff every `k`-subset of vertices is the vertex set of a face.
    pub fn is_k_neighborly(&self, k: usize) -> bool {
        if k > self.dim() / 2 {
            warn!("checking {k}-neighborliness of a {}-polytope; only k <= dim/2 is meaningful", self.dim());
        }
        (0..self.num_vertices()).combinations(k).all(|s| k == 0 || self.is_face(&s))
    }
}
