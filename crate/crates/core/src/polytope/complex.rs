//! Boundary complexes projected to the unit sphere, barycentric subdivision
//! and face diameters.
//!
//! The boundary of a polytope is mapped to the sphere by central projection
//! from the vertex centroid, after an affine change of coordinates that gives
//! the vertices identity covariance. Long, thin polytopes such as cyclic
//! ones would otherwise project to nearly antipodal facets. Non-simplicial faces are triangulated first by
//! coning from their barycenters, recursively through lower faces, so the
//! triangulations of shared faces agree.

use std::collections::HashMap;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{Face, Hyperplane, Mask, Polytope};
use crate::error::{Error, Result};
use crate::exact::Vector;
use crate::scalar::{Field, Real};

/// A pure simplicial complex with vertices on `S^{dim-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryComplex<T> {
    pub dim: usize,
    pub vertices: Vec<Vec<T>>,
    /// Sorted vertex ids, `dim` per simplex.
    pub simplices: Vec<Vec<usize>>,
}

fn normalize<T: Real>(v: &mut [T]) {
    let norm = v.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
    for x in v.iter_mut() {
        *x = *x / norm;
    }
}

/// Geodesic distance between unit vectors.
pub(crate) fn arc<T: Real>(u: &[T], v: &[T]) -> T {
    // Accurate near 0 and near pi, unlike acos or asin of the chord.
    let (diff, sum) =
        u.iter().zip(v).fold((T::zero(), T::zero()), |(d, s), (&x, &y)| (d + (x - y) * (x - y), s + (x + y) * (x + y)));
    T::lit(2.0) * diff.sqrt().atan2(sum.sqrt())
}

impl<T: Real> BoundaryComplex<T> {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Every codimension-one face lies in exactly two top simplices.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for s in &self.simplices {
            if s.len() != self.dim {
                return false;
            }
            for skip in 0..s.len() {
                let ridge: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                *counts.entry(ridge).or_default() += 1;
            }
        }
        counts.values().all(|&c| c == 2)
    }

    /// Alternating count of faces of all dimensions.
    pub fn euler_characteristic(&self) -> i64 {
        let mut faces: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        for s in &self.simplices {
            for k in 1..=s.len() {
                for sub in s.iter().copied().combinations(k) {
                    faces.insert(sub);
                }
            }
        }
        faces.iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    pub fn max_norm_error(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| {
                let n = v.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
                (n - T::one()).abs().to_f64().unwrap_or(f64::INFINITY)
            })
            .fold(0.0, f64::max)
    }
}

/// Triangulated boundary of `polytope` centrally projected to the sphere.
pub fn boundary_complex<F: Field, T: Real>(polytope: &Polytope<F>) -> Result<BoundaryComplex<T>> {
    let dim = polytope.dim();
    let centroid = Vector::centroid(polytope.vertices());
    for facet in polytope.facets() {
        let plane = Hyperplane::through(polytope.vertices(), facet)
            .ok_or_else(|| Error::InvalidArgument(format!("facet {facet:?} does not span a hyperplane")))?;
        if plane.side(&centroid) == std::cmp::Ordering::Equal {
            return Err(Error::CentroidNotInterior);
        }
    }

    let faces = polytope.all_proper_faces();
    let mut builder =
        FanBuilder { polytope, faces: &faces, points: polytope.vertices().to_vec(), memo: HashMap::new() };
    let mut simplices = Vec::new();
    for facet in polytope.facets() {
        let face = faces
            .iter()
            .find(|f| &f.vertices == facet)
            .ok_or_else(|| Error::InvalidArgument(format!("facet {facet:?} missing from face lattice")))?;
        simplices.extend(builder.triangulate(face));
    }

    let whiten = whitening(polytope.vertices(), &centroid)?;
    let vertices = builder
        .points
        .iter()
        .map(|p| {
            let y = whiten(DVector::from_vec((p - &centroid).to_f64()));
            let mut v: Vec<T> = y.iter().map(|&x| T::lit(x)).collect();
            normalize(&mut v);
            v
        })
        .collect();
    Ok(BoundaryComplex { dim, vertices, simplices })
}

/// `y -> L^{-1} y` for the Cholesky factor `L` of the vertex covariance.
fn whitening<F: Field>(vertices: &[Vector<F>], centroid: &Vector<F>) -> Result<impl Fn(DVector<f64>) -> DVector<f64>> {
    let dim = centroid.dim();
    let mut cov = DMatrix::<f64>::zeros(dim, dim);
    for v in vertices {
        let d = DVector::from_vec((v - centroid).to_f64());
        cov += &d * d.transpose();
    }
    cov /= vertices.len() as f64;
    let chol = cov.cholesky().ok_or(Error::NotFullDimensional { rank: crate::exact::affine_rank(vertices), dim })?;
    let l = chol.l();
    Ok(move |y: DVector<f64>| l.solve_lower_triangular(&y).expect("Cholesky factor is invertible"))
}

struct FanBuilder<'a, F> {
    polytope: &'a Polytope<F>,
    faces: &'a [Face],
    /// Original vertices followed by barycenters of non-simplex faces.
    points: Vec<Vector<F>>,
    memo: HashMap<Mask, Vec<Vec<usize>>>,
}

impl<F: Field> FanBuilder<'_, F> {
    fn triangulate(&mut self, face: &Face) -> Vec<Vec<usize>> {
        let mask = face.mask();
        if let Some(done) = self.memo.get(&mask) {
            return done.clone();
        }
        let out = if face.vertices.len() == face.dim + 1 {
            vec![face.vertices.clone()]
        } else {
            let pts: Vec<Vector<F>> = face.vertices.iter().map(|&i| self.polytope.vertices()[i].clone()).collect();
            let apex = self.points.len();
            self.points.push(Vector::centroid(&pts));
            let boundary: Vec<Face> =
                self.faces.iter().filter(|g| g.dim + 1 == face.dim && g.mask() & !mask == 0).cloned().collect();
            boundary
                .iter()
                .flat_map(|g| self.triangulate(g))
                .map(|mut s| {
                    s.push(apex);
                    s.sort_unstable();
                    s
                })
                .collect()
        };
        self.memo.insert(mask, out.clone());
        out
    }
}

/// One barycentric subdivision: a new vertex for every face of every
/// simplex, and one simplex per complete flag.
pub fn barycentric_subdivide<T: Real>(complex: &BoundaryComplex<T>) -> BoundaryComplex<T> {
    let mut vertices = complex.vertices.clone();
    let mut ids: HashMap<Vec<usize>, usize> = (0..vertices.len()).map(|i| (vec![i], i)).collect();
    let mut id_of = |subset: Vec<usize>, vertices: &mut Vec<Vec<T>>| -> usize {
        if let Some(&id) = ids.get(&subset) {
            return id;
        }
        let dim = vertices[subset[0]].len();
        let mut p = vec![T::zero(); dim];
        for &v in &subset {
            for (a, &b) in p.iter_mut().zip(&vertices[v]) {
                *a = *a + b;
            }
        }
        normalize(&mut p);
        vertices.push(p);
        let id = vertices.len() - 1;
        ids.insert(subset, id);
        id
    };

    let mut simplices = Vec::with_capacity(complex.simplices.len() * (1..=complex.dim).product::<usize>());
    for s in &complex.simplices {
        for flag in s.iter().copied().permutations(s.len()) {
            let mut chain: Vec<usize> = (1..=flag.len())
                .map(|k| {
                    let mut prefix = flag[..k].to_vec();
                    prefix.sort_unstable();
                    id_of(prefix, &mut vertices)
                })
                .collect();
            chain.sort_unstable();
            simplices.push(chain);
        }
    }
    BoundaryComplex { dim: complex.dim, vertices, simplices }
}

/// The boundary complex of `polytope` after `k` barycentric subdivisions.
pub fn subdivide_k<F: Field, T: Real>(polytope: &Polytope<F>, k: usize) -> Result<BoundaryComplex<T>> {
    let mut c = boundary_complex(polytope)?;
    for _ in 0..k {
        c = barycentric_subdivide(&c);
    }
    Ok(c)
}

/// Largest geodesic distance between two vertices of a common simplex.
pub fn face_diameter<T: Real>(complex: &BoundaryComplex<T>) -> T {
    debug_assert!(complex.max_norm_error() <= T::UNIT_TOL);
    let mut best = T::zero();
    for s in &complex.simplices {
        for (a, b) in s.iter().tuple_combinations() {
            best = best.max(arc(&complex.vertices[*a], &complex.vertices[*b]));
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub k: usize,
    pub diameter: f64,
    /// `diameter_k / diameter_{k-1}`; absent for `k = 0`.
    pub ratio: Option<f64>,
    pub decreasing: Option<bool>,
    /// Whether the ratio is at most `(m-1)/m`. Recorded, not enforced.
    pub within_factor: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub dim: usize,
    pub factor: f64,
    pub rows: Vec<DecayRow>,
}

impl DecayReport {
    /// Rows whose ratio is not below 1.
    pub fn flagged(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.decreasing == Some(false)).map(|r| r.k).collect()
    }

    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        let optb = |x: Option<bool>| x.map(|v| v.to_string()).unwrap_or_default();
        let mut out = String::from("k,diameter,ratio,decreasing,within_factor\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.k,
                r.diameter,
                opt(r.ratio),
                optb(r.decreasing),
                optb(r.within_factor)
            ));
        }
        out
    }
}

/// Face diameters of `P^(k)` for `k = 0..=k_max` with consecutive ratios.
pub fn subdivision_decay_report<F: Field>(polytope: &Polytope<F>, k_max: usize) -> Result<DecayReport> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let m = polytope.dim();
    let factor = (m as f64 - 1.0) / m as f64;
    let mut c: BoundaryComplex<f64> = boundary_complex(polytope)?;
    let mut rows: Vec<DecayRow> = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            c = barycentric_subdivide(&c);
        }
        let diameter = face_diameter(&c);
        let ratio = rows.last().map(|prev| diameter / prev.diameter);
        rows.push(DecayRow {
            k,
            diameter,
            ratio,
            decreasing: ratio.map(|r| r < 1.0),
            within_factor: ratio.map(|r| r <= factor),
        });
    }
    Ok(DecayReport { dim: m, factor, rows })
}
