//! Orthonormal 2-frames and their rotation orbits.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (&u, &v)| s + u * v)
}

pub(crate) fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// `a * u + b * v`, coordinatewise.
pub(crate) fn mix<T: Real>(a: T, u: &[T], b: T, v: &[T]) -> Vec<T> {
    u.iter().zip(v).map(|(&p, &q)| a * p + b * q).collect()
}

/// An orthonormal pair `(x, y)` in `R^n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Real + Deserialize<'de>", serialize = "T: Real + Serialize"))]
pub struct StiefelFrame<T> {
    pub x: Vec<T>,
    pub y: Vec<T>,
}

impl<T: Real> StiefelFrame<T> {
    /// Accepts `(x, y)` when both are unit and orthogonal to `T::UNIT_TOL`.
    pub fn new(x: Vec<T>, y: Vec<T>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
        }
        if x.len() < 2 {
            return Err(Error::InvalidArgument("a 2-frame needs dimension at least 2".into()));
        }
        let frame = StiefelFrame { x, y };
        if frame.defect() > T::lit(T::UNIT_TOL) {
            return Err(Error::InvalidArgument(format!("not orthonormal (defect {})", frame.defect())));
        }
        Ok(frame)
    }

    /// Gram-Schmidt on an arbitrary independent pair.
    pub fn orthonormalize(x: &[T], y: &[T]) -> Result<Self> {
        let nx = norm(x);
        if nx.is_zero() || !nx.is_finite() {
            return Err(Error::InvalidArgument("degenerate first vector".into()));
        }
        let x: Vec<T> = x.iter().map(|&v| v / nx).collect();
        let mut y = mix(T::one(), y, -dot(&x, y), &x);
        // A second pass keeps orthogonality at working precision.
        y = mix(T::one(), &y, -dot(&x, &y), &x);
        let ny = norm(&y);
        if ny.is_zero() || !ny.is_finite() {
            return Err(Error::InvalidArgument("dependent pair".into()));
        }
        y.iter_mut().for_each(|v| *v = *v / ny);
        Ok(StiefelFrame { x, y })
    }

    /// A Gaussian pair, orthonormalized: uniform on the Stiefel manifold.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let mut draw = || -> Vec<T> { (0..n).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect() };
            let (x, y) = (draw(), draw());
            if let Ok(frame) = Self::orthonormalize(&x, &y) {
                return frame;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// Largest deviation from orthonormality.
    pub fn defect(&self) -> T {
        let one = T::one();
        (norm(&self.x) - one).abs().max((norm(&self.y) - one).abs()).max(dot(&self.x, &self.y).abs())
    }
}

/// Rotates the pair by `angle` inside its own span.
pub fn rotate_frame<T: Real>(frame: &StiefelFrame<T>, angle: T) -> StiefelFrame<T> {
    let (s, c) = angle.sin_cos();
    StiefelFrame { x: mix(c, &frame.x, s, &frame.y), y: mix(-s, &frame.x, c, &frame.y) }
}

/// First vectors of the `p` rotations by multiples of `2 pi / p`. Angles are
/// computed directly rather than by repeated rotation.
pub fn orbit_points<T: Real>(frame: &StiefelFrame<T>, p: usize) -> Vec<Vec<T>> {
    let step = T::TAU() / T::from_usize(p).expect("small integer");
    (0..p)
        .map(|k| {
            let (s, c) = (step * T::from_usize(k).expect("small integer")).sin_cos();
            mix(c, &frame.x, s, &frame.y)
        })
        .collect()
}

/// Great-circle distance between unit vectors.
pub fn geodesic<T: Real>(u: &[T], v: &[T]) -> T {
    crate::polytope::arc(u, v)
}
