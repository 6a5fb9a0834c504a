//! Exact V-polytopes with facet–vertex incidences, the families used by the
//! searches, face lattices, 1-skeleta, spherical boundary complexes and
//! packing polytopes.

mod complex;
mod cyclic;
mod facets;
mod io;
mod lattice;
mod packing;
mod skeleton;

pub use complex::{
    barycentric_subdivide, boundary_complex, face_diameter, subdivide_k, subdivision_decay_report, BoundaryComplex,
    DecayReport, DecayRow,
};
pub use cyclic::{gale_evenness_facets, make_cyclic, make_cyclic_default};
pub use facets::{facets_bruteforce, Hyperplane};
pub use io::{ComplexJson, PolytopeJson};
pub use lattice::Face;
pub use packing::{
    greedy_lambda_packing, packing_polytope, spacing_estimate, voronoi_diameter_check, PackingPolytope, PackingSpec,
    VoronoiCheck,
};
pub use skeleton::SkeletonGraph;

pub(crate) use complex::arc;

use crate::error::{Error, Result};
use crate::exact::{affine_rank, Vector};
use crate::scalar::Field;

/// Vertex sets are stored as bit masks; this caps polytopes at 128 vertices.
pub(crate) type Mask = u128;

pub const MAX_VERTICES: usize = Mask::BITS as usize;

pub(crate) fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub(crate) fn indices_of(mask: Mask) -> Vec<usize> {
    (0..MAX_VERTICES).filter(|&i| mask >> i & 1 == 1).collect()
}

/// A full-dimensional polytope given by its vertices and the vertex sets of
/// its facets.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope<F> {
    vertices: Vec<Vector<F>>,
    facets: Vec<Vec<usize>>,
    facet_masks: Vec<Mask>,
    dim: usize,
}

impl<F: Field> Polytope<F> {
    /// Builds a polytope from vertices and facet incidences.
    ///
    /// Only cheap structural checks run here; [`Polytope::validate`] checks
    /// the geometric invariants.
    pub fn new(vertices: Vec<Vector<F>>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let first = vertices.first().ok_or(Error::EmptyInput("polytope without vertices"))?;
        let dim = first.dim();
        if dim == 0 {
            return Err(Error::InvalidArgument("polytope dimension must be positive".into()));
        }
        if vertices.len() > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "{} vertices exceeds the supported maximum of {MAX_VERTICES}",
                vertices.len()
            )));
        }
        for v in &vertices {
            v.check_dim(dim)?;
        }
        let rank = affine_rank(&vertices);
        if rank != dim {
            return Err(Error::NotFullDimensional { rank, dim });
        }
        let mut facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        for f in &facets {
            if f.is_empty() || f.iter().any(|&i| i >= vertices.len()) {
                return Err(Error::InvalidArgument(format!("bad facet {f:?}")));
            }
        }
        facets.sort();
        facets.dedup();
        let facet_masks = facets.iter().map(|f| mask_of(f)).collect();
        Ok(Polytope { vertices, facets, facet_masks, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector<F>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub(crate) fn facet_masks(&self) -> &[Mask] {
        &self.facet_masks
    }

    pub(crate) fn all_mask(&self) -> Mask {
        if self.vertices.len() == MAX_VERTICES {
            Mask::MAX
        } else {
            (1 << self.vertices.len()) - 1
        }
    }

    /// Checks that every listed facet spans a supporting hyperplane with all
    /// other vertices strictly on one side, and that every vertex is extreme.
    pub fn validate(&self) -> Result<()> {
        for facet in &self.facets {
            let plane = Hyperplane::through(&self.vertices, facet)
                .ok_or_else(|| Error::InvalidArgument(format!("facet {facet:?} does not span a hyperplane")))?;
            let (on, below, above) = plane.classify(&self.vertices);
            if on != *facet || (!below.is_empty() && !above.is_empty()) {
                return Err(Error::InvalidArgument(format!("facet {facet:?} is not a supporting hyperplane section")));
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            let others: Vec<Vector<F>> =
                self.vertices.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, w)| w.clone()).collect();
            if others.is_empty() {
                continue;
            }
            let hit = crate::exact::conv_intersection_point(&[vec![v.clone()], others], self.dim)?;
            if hit.is_some() {
                return Err(Error::InvalidArgument(format!("vertex {i} is not extreme")));
            }
        }
        Ok(())
    }
}

/// The simplex with vertices `0, e_1, ..., e_m`.
pub fn make_simplex<F: Field>(m: usize) -> Result<Polytope<F>> {
    check_positive(m)?;
    let mut vertices = vec![Vector::zeros(m)];
    vertices.extend((0..m).map(|i| Vector::unit(m, i)));
    let facets = (0..=m).map(|skip| (0..=m).filter(|&i| i != skip).collect()).collect();
    Polytope::new(vertices, facets)
}

/// The cross-polytope `conv{±e_i}`. Vertex `2k` is `+e_k` and `2k + 1` is
/// `-e_k`, so antipodal pairs have adjacent indices.
pub fn make_cross<F: Field>(m: usize) -> Result<Polytope<F>> {
    check_positive(m)?;
    if m > MAX_VERTICES / 2 {
        return Err(Error::InvalidArgument(format!("cross-polytope of dimension {m} is too large")));
    }
    let vertices = (0..m)
        .flat_map(|k| {
            let plus = Vector::unit(m, k);
            let minus = plus.scale(&-F::one());
            [plus, minus]
        })
        .collect();
    let facets = (0u64..1 << m).map(|signs| (0..m).map(|k| 2 * k + (signs >> k & 1) as usize).collect()).collect();
    Polytope::new(vertices, facets)
}

/// Index of the vertex antipodal to `v` in [`make_cross`].
pub fn antipode(v: usize) -> usize {
    v ^ 1
}

/// The cube `{0,1}^m`; bit `k` of a vertex index is its `k`-th coordinate.
pub fn make_cube<F: Field>(m: usize) -> Result<Polytope<F>> {
    check_positive(m)?;
    if m > 7 {
        return Err(Error::InvalidArgument(format!("cube of dimension {m} is too large")));
    }
    let n = 1usize << m;
    let vertices = (0..n).map(|i| Vector::new((0..m).map(|k| F::from_i64((i >> k & 1) as i64)).collect())).collect();
    let facets = (0..m).flat_map(|k| (0..2).map(move |b| (0..n).filter(|i| i >> k & 1 == b).collect())).collect();
    Polytope::new(vertices, facets)
}

fn check_positive(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::InvalidArgument("dimension must be at least 1".into()))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn octahedron_combinatorics() {
        let p = make_cross::<Rational>(3).unwrap();
        assert_eq!(p.num_vertices(), 6);
        assert_eq!(p.facets().len(), 8);
        for f in p.facets() {
            for k in 0..3 {
                assert_eq!(f.iter().filter(|&&v| v / 2 == k).count(), 1);
            }
        }
        p.validate().unwrap();
    }

    #[test]
    fn cube_and_simplex_counts() {
        let c = make_cube::<Rational>(3).unwrap();
        assert_eq!((c.num_vertices(), c.facets().len()), (8, 6));
        c.validate().unwrap();
        let s = make_simplex::<Rational>(2).unwrap();
        assert_eq!((s.num_vertices(), s.facets().len()), (3, 3));
        s.validate().unwrap();
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert!(make_simplex::<Rational>(0).is_err());
        assert!(make_cross::<Rational>(0).is_err());
        assert!(make_cube::<Rational>(0).is_err());
    }

    #[test]
    fn validate_catches_bad_facets() {
        let square = make_cube::<Rational>(2).unwrap();
        let broken = Polytope::new(square.vertices().to_vec(), vec![vec![0, 3], vec![1, 2]]).unwrap();
        assert!(broken.validate().is_err());
    }

    #[test]
    fn validate_catches_interior_vertex() {
        let mut verts = make_cube::<Rational>(2).unwrap().vertices().to_vec();
        verts.push(Vector::new(vec![Rational::from_ratio(1, 2), Rational::from_ratio(1, 2)]));
        let p = Polytope::new(verts, vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]]).unwrap();
        assert!(p.validate().is_err());
    }

    #[test]
    fn lower_dimensional_input_is_rejected() {
        let verts = vec![Vector::<Rational>::from_i64s(&[0, 0]), Vector::from_i64s(&[1, 1])];
        assert_eq!(
            Polytope::new(verts, vec![vec![0], vec![1]]).unwrap_err(),
            Error::NotFullDimensional { rank: 1, dim: 2 }
        );
    }
}
