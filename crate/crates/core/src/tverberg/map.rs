use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{affine_rank, Vector};
use crate::scalar::Field;
use crate::seed::SeedSplitter;

/// Affine map `x -> A x + b` with exact entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Field", try_from = "RawLinearMap<F>")]
pub struct LinearMap<F> {
    matrix: Vec<Vector<F>>,
    offset: Vector<F>,
    #[serde(skip)]
    in_dim: usize,
}

#[derive(Deserialize)]
#[serde(bound = "F: Field")]
struct RawLinearMap<F> {
    matrix: Vec<Vector<F>>,
    offset: Option<Vector<F>>,
}

impl<F: Field> TryFrom<RawLinearMap<F>> for LinearMap<F> {
    type Error = Error;

    fn try_from(raw: RawLinearMap<F>) -> Result<Self> {
        let in_dim = raw.matrix.first().map_or(0, Vector::dim);
        let offset = raw.offset.unwrap_or_else(|| Vector::zeros(raw.matrix.len()));
        LinearMap::new(raw.matrix, offset, in_dim)
    }
}

impl<F: Field> LinearMap<F> {
    pub fn new(matrix: Vec<Vector<F>>, offset: Vector<F>, in_dim: usize) -> Result<Self> {
        if matrix.is_empty() {
            return Err(Error::EmptyInput("linear map without rows"));
        }
        for row in &matrix {
            row.check_dim(in_dim)?;
        }
        offset.check_dim(matrix.len())?;
        Ok(LinearMap { matrix, offset, in_dim })
    }

    /// Linear map (zero offset) from rows of integers.
    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let matrix: Vec<Vector<F>> = rows.iter().map(|r| Vector::from_i64s(r)).collect();
        let in_dim = matrix.first().map_or(0, Vector::dim);
        let d = matrix.len();
        Self::new(matrix, Vector::zeros(d), in_dim)
    }

    /// Projection onto the listed coordinates.
    pub fn projection(in_dim: usize, coords: &[usize]) -> Result<Self> {
        let matrix = coords.iter().map(|&c| Vector::unit(in_dim, c)).collect();
        Self::new(matrix, Vector::zeros(coords.len()), in_dim)
    }

    /// The affine map sending `0, e_1, ..., e_m` to `images[0], ..., images[m]`.
    pub fn from_simplex_images(images: &[Vector<F>]) -> Result<Self> {
        let (base, rest) = images.split_first().ok_or(Error::EmptyInput("no images"))?;
        let d = base.dim();
        let matrix =
            (0..d).map(|row| Vector::new(rest.iter().map(|q| q[row].clone() - base[row].clone()).collect())).collect();
        Self::new(matrix, base.clone(), rest.len())
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vector<F>] {
        &self.matrix
    }

    pub fn offset(&self) -> &Vector<F> {
        &self.offset
    }

    pub fn apply(&self, x: &Vector<F>) -> Result<Vector<F>> {
        x.check_dim(self.in_dim)?;
        Ok(Vector::new(self.matrix.iter().zip(self.offset.coords()).map(|(row, b)| row.dot(x) + b.clone()).collect()))
    }

    pub fn apply_all(&self, points: &[Vector<F>]) -> Result<Vec<Vector<F>>> {
        points.iter().map(|p| self.apply(p)).collect()
    }
}

/// A random rational in `[-bound, bound]` with denominator at most `bound`.
pub fn random_rational<F: Field>(rng: &mut impl Rng, bound: i64) -> F {
    let numer = rng.random_range(-bound..=bound);
    let denom = rng.random_range(1..=bound);
    F::from_ratio(numer, denom)
}

/// A seeded map together with the number of rejected draws.
#[derive(Clone, Debug, PartialEq)]
pub struct SeededMap<F> {
    pub map: LinearMap<F>,
    pub reseeds: u64,
}

/// Deterministic rational affine map `R^ambient -> R^d`. Draws that make the
/// images of `vertices` affinely degenerate (rank below `min(d, n-1)`) are
/// rejected and redrawn from the next stream.
pub fn seeded_rational_map<F: Field>(
    d: usize,
    ambient: usize,
    seed: u64,
    denom_bound: i64,
    vertices: &[Vector<F>],
) -> Result<SeededMap<F>> {
    if denom_bound < 1 || d == 0 || ambient == 0 {
        return Err(Error::InvalidArgument("need d, ambient and denom_bound >= 1".into()));
    }
    let target = d.min(vertices.len().saturating_sub(1));
    let splitter = SeedSplitter::new(seed);
    for attempt in 0..1000u64 {
        let mut rng = splitter.rng("linear-map", attempt);
        let matrix = (0..d)
            .map(|_| Vector::new((0..ambient).map(|_| random_rational(&mut rng, denom_bound)).collect()))
            .collect();
        let offset = Vector::new((0..d).map(|_| random_rational(&mut rng, denom_bound)).collect());
        let map = LinearMap::new(matrix, offset, ambient)?;
        if vertices.is_empty() || affine_rank(&map.apply_all(vertices)?) >= target {
            return Ok(SeededMap { map, reseeds: attempt });
        }
    }
    Err(Error::InvalidArgument("could not draw a nondegenerate map".into()))
}

/// `n` seeded rational points in `R^d` with full affine rank.
pub fn seeded_rational_points<F: Field>(n: usize, d: usize, seed: u64, denom_bound: i64) -> Vec<Vector<F>> {
    let splitter = SeedSplitter::new(seed);
    let target = d.min(n.saturating_sub(1));
    (0u64..)
        .map(|attempt| {
            let mut rng = splitter.rng("points", attempt);
            (0..n)
                .map(|_| Vector::new((0..d).map(|_| random_rational(&mut rng, denom_bound)).collect()))
                .collect::<Vec<_>>()
        })
        .find(|pts| affine_rank(pts) >= target)
        .expect("some draw is nondegenerate")
}

/// `n` seeded rational scalars.
pub fn seeded_rational_values<F: Field>(n: usize, seed: u64, denom_bound: i64) -> Vec<F> {
    let mut rng = SeedSplitter::new(seed).rng("values", 0);
    (0..n).map(|_| random_rational(&mut rng, denom_bound)).collect()
}
