//! Greedy spherical packings, their tangent polytopes and Voronoi cell
//! diameters. Floating point throughout.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::complex::arc;
use crate::error::{Error, Result};
use crate::seed::SeedSplitter;

/// Points of `S^{dim-1}` with pairwise geodesic distance above `lambda`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingSpec {
    pub dim: usize,
    pub lambda: f64,
    pub seed: u64,
    pub pool_size: usize,
    pub points: Vec<Vec<f64>>,
}

pub(crate) fn random_unit_vectors(dim: usize, count: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| loop {
            let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-9 {
                break v.into_iter().map(|x| x / n).collect();
            }
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Accepts seeded uniform pool points greedily while they stay farther than
/// `lambda` from everything accepted. The result is maximal for the pool.
pub fn greedy_lambda_packing(dim: usize, lambda: f64, seed: u64, pool_size: usize) -> Result<PackingSpec> {
    if dim < 2 {
        return Err(Error::InvalidArgument("packing needs ambient dimension >= 2".into()));
    }
    if !(lambda > 0.0 && lambda < PI) {
        return Err(Error::InvalidArgument(format!("lambda must lie in (0, pi), got {lambda}")));
    }
    let mut rng = SeedSplitter::new(seed).rng("packing-pool", 0);
    let pool = random_unit_vectors(dim, pool_size, &mut rng);
    let mut points: Vec<Vec<f64>> = Vec::new();
    for p in pool {
        if points.iter().all(|q| arc(q, &p) > lambda) {
            points.push(p);
        }
    }
    Ok(PackingSpec { dim, lambda, seed, pool_size, points })
}

impl PackingSpec {
    /// Wraps explicit points, normalizing them.
    pub fn from_points(dim: usize, lambda: f64, points: Vec<Vec<f64>>) -> Result<Self> {
        let points = points
            .into_iter()
            .map(|p| {
                if p.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
                }
                let n = dot(&p, &p).sqrt();
                Ok(p.into_iter().map(|x| x / n).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PackingSpec { dim, lambda, seed: 0, pool_size: 0, points })
    }

    pub fn min_pairwise_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                best = best.min(arc(p, q));
            }
        }
        best
    }

    /// Regenerates the pool and returns the largest distance from a pool
    /// point to its nearest packing point.
    pub fn pool_covering_radius(&self) -> f64 {
        let mut rng = SeedSplitter::new(self.seed).rng("packing-pool", 0);
        random_unit_vectors(self.dim, self.pool_size, &mut rng)
            .iter()
            .map(|p| self.points.iter().map(|q| arc(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    }
}

/// `P_X = {y : <y, x> <= 1 for all x in X}`.
///
/// Vertices and facets are computed for `dim == 3` only; in higher dimension
/// only the halfspaces are kept.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingPolytope {
    pub dim: usize,
    pub normals: Vec<Vec<f64>>,
    pub vertices: Option<Vec<Vec<f64>>>,
    /// For each normal, the polytope vertices on its tangent plane.
    pub facets: Option<Vec<Vec<usize>>>,
}

const PLANE_TOL: f64 = 1e-10;

pub fn packing_polytope(packing: &PackingSpec) -> Result<PackingPolytope> {
    let dim = packing.dim;
    let x = &packing.points;
    if x.len() < dim + 1 {
        return Err(Error::InvalidArgument(format!(
            "{} packing points cannot bound a polytope in dimension {dim}",
            x.len()
        )));
    }
    if dim != 3 {
        return Ok(PackingPolytope { dim, normals: x.clone(), vertices: None, facets: None });
    }

    // Facets of conv(X) are exactly the vertices of P_X (polarity).
    let n = x.len();
    let mut hull_faces: Vec<(Vec<usize>, [f64; 3], f64)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let u = sub(&x[j], &x[i]);
                let v = sub(&x[k], &x[i]);
                let mut normal = cross(&u, &v);
                let len = dot(&normal, &normal).sqrt();
                if len < 1e-14 {
                    continue;
                }
                normal.iter_mut().for_each(|c| *c /= len);
                let mut offset = dot(&normal, &x[i]);
                if offset < 0.0 {
                    normal.iter_mut().for_each(|c| *c = -*c);
                    offset = -offset;
                }
                let mut on = Vec::new();
                let supporting = x.iter().enumerate().all(|(l, p)| {
                    let s = dot(&normal, p) - offset;
                    if s.abs() <= PLANE_TOL {
                        on.push(l);
                    }
                    s <= PLANE_TOL
                });
                if supporting && !hull_faces.iter().any(|(f, _, _)| *f == on) {
                    if offset <= PLANE_TOL {
                        return Err(Error::InvalidArgument("origin is not interior: P_X is unbounded".into()));
                    }
                    hull_faces.push((on, normal, offset));
                }
            }
        }
    }
    let vertices: Vec<Vec<f64>> =
        hull_faces.iter().map(|(_, nrm, off)| nrm.iter().map(|c| c / off).collect()).collect();
    let facets = (0..n)
        .map(|l| hull_faces.iter().enumerate().filter(|(_, (f, _, _))| f.contains(&l)).map(|(v, _)| v).collect())
        .collect();
    Ok(PackingPolytope { dim, normals: x.clone(), vertices: Some(vertices), facets: Some(facets) })
}

impl PackingPolytope {
    /// Largest spherical diameter of a projected facet (a Voronoi cell),
    /// from the exact cell vertices. Available when vertices are known.
    pub fn max_cell_diameter(&self) -> Option<f64> {
        let vertices = self.vertices.as_ref()?;
        let facets = self.facets.as_ref()?;
        let unit: Vec<Vec<f64>> = vertices
            .iter()
            .map(|v| {
                let n = dot(v, v).sqrt();
                v.iter().map(|c| c / n).collect()
            })
            .collect();
        let mut best: f64 = 0.0;
        for f in facets {
            for (a, &i) in f.iter().enumerate() {
                for &j in &f[a + 1..] {
                    best = best.max(arc(&unit[i], &unit[j]));
                }
            }
        }
        Some(best)
    }
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn cross(u: &[f64], v: &[f64]) -> [f64; 3] {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

/// Outcome of the sampled Voronoi diameter check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VoronoiCheck {
    pub samples: usize,
    pub max_cell_diameter: f64,
    pub slack: f64,
    pub threshold: f64,
    pub pass: bool,
}

fn sphere_area(dim: usize) -> f64 {
    // 2 pi^{n/2} / Gamma(n/2) for S^{n-1}, Gamma at (half-)integers.
    let half = dim as f64 / 2.0;
    let mut gamma = if dim.is_multiple_of(2) { 1.0 } else { PI.sqrt() };
    let mut x = if dim.is_multiple_of(2) { 1.0 } else { 0.5 };
    while x < half {
        gamma *= x;
        x += 1.0;
    }
    2.0 * PI.powf(half) / gamma
}

/// Typical spacing of `count` uniform points on `S^{dim-1}`.
pub fn spacing_estimate(dim: usize, count: usize) -> f64 {
    (sphere_area(dim) / count as f64).powf(1.0 / (dim as f64 - 1.0))
}

/// Assigns `samples` seeded sphere points to their nearest packing point and
/// measures the largest in-cell pairwise distance (cell centers included).
/// Passes when it stays within `2 lambda` plus twice the sample spacing.
pub fn voronoi_diameter_check(packing: &PackingSpec, samples: usize, seed: u64) -> Result<VoronoiCheck> {
    if packing.points.is_empty() {
        return Err(Error::EmptyInput("empty packing"));
    }
    let mut rng = SeedSplitter::new(seed).rng("voronoi-samples", 0);
    let pts = random_unit_vectors(packing.dim, samples, &mut rng);
    let mut cells: Vec<Vec<&[f64]>> = packing.points.iter().map(|c| vec![c.as_slice()]).collect();
    for p in &pts {
        let nearest = packing
            .points
            .iter()
            .enumerate()
            .map(|(i, c)| (i, dot(c, p)))
            .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
            .0;
        cells[nearest].push(p);
    }
    let mut diameter: f64 = 0.0;
    for cell in &cells {
        for (a, p) in cell.iter().enumerate() {
            for q in &cell[a + 1..] {
                diameter = diameter.max(arc(p, q));
            }
        }
    }
    let slack = 2.0 * spacing_estimate(packing.dim, samples.max(1));
    let threshold = 2.0 * packing.lambda + slack;
    Ok(VoronoiCheck { samples, max_cell_diameter: diameter, slack, threshold, pass: diameter <= threshold })
}
