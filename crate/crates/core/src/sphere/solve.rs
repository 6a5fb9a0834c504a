//! Multi-start search for frames whose rotation orbit has equal images.

use log::warn;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::frame::{dot, geodesic, mix, orbit_points, StiefelFrame};
use super::SmoothMap;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::seed::SeedSplitter;
use crate::tverberg::is_prime;

/// Subtracts the mean block from every block.
pub fn center_blocks<T: Real>(blocks: &[Vec<T>]) -> Vec<Vec<T>> {
    let Some(first) = blocks.first() else {
        return Vec::new();
    };
    let count = T::from_usize(blocks.len()).expect("small integer");
    let mean: Vec<T> = (0..first.len()).map(|i| blocks.iter().fold(T::zero(), |s, b| s + b[i]) / count).collect();
    blocks.iter().map(|b| b.iter().zip(&mean).map(|(&v, &m)| v - m).collect()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residual<T> {
    pub value: T,
    /// The centered blocks, concatenated.
    pub vector: Vec<T>,
}

fn check_map<T: Real>(f: &SmoothMap, frame: &StiefelFrame<T>, p: usize) -> Result<()> {
    if f.input_dim() != frame.dim() {
        return Err(Error::DimensionMismatch { expected: frame.dim(), found: f.input_dim() });
    }
    if p < 2 {
        return Err(Error::InvalidArgument("p must be at least 2".into()));
    }
    Ok(())
}

/// Norm of the mean-centered stacked values `f(x_1), ..., f(x_p)`.
pub fn residual<T: Real>(f: &SmoothMap, frame: &StiefelFrame<T>, p: usize) -> Result<Residual<T>> {
    check_map(f, frame, p)?;
    let values = orbit_points(frame, p).iter().map(|x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    let vector: Vec<T> = center_blocks(&values).into_iter().flatten().collect();
    Ok(Residual { value: dot(&vector, &vector).sqrt(), vector })
}

/// The squared residual and its Euclidean gradient with respect to `(x, y)`.
/// The objective is defined off the manifold as well, through
/// `x_k = cos(t_k) x + sin(t_k) y`.
fn objective<T: Real>(f: &SmoothMap, x: &[T], y: &[T], p: usize) -> Result<(T, Vec<T>, Vec<T>)> {
    let step = T::TAU() / T::from_usize(p).expect("small integer");
    let angles: Vec<(T, T)> = (0..p).map(|k| (step * T::from_usize(k).expect("small integer")).sin_cos()).collect();
    let mut values = Vec::with_capacity(p);
    let mut jacobians = Vec::with_capacity(p);
    for &(s, c) in &angles {
        let (v, j) = f.eval_jacobian(&mix(c, x, s, y))?;
        values.push(v);
        jacobians.push(j);
    }
    let centered = center_blocks(&values);
    let n = x.len();
    let two = T::lit(2.0);
    let mut gx = vec![T::zero(); n];
    let mut gy = vec![T::zero(); n];
    let mut phi = T::zero();
    for ((r, jac), &(s, c)) in centered.iter().zip(&jacobians).zip(&angles) {
        for (rk, row) in r.iter().zip(jac) {
            phi = phi + *rk * *rk;
            for i in 0..n {
                let g = two * *rk * row[i];
                gx[i] = gx[i] + c * g;
                gy[i] = gy[i] + s * g;
            }
        }
    }
    Ok((phi, gx, gy))
}

/// Projects `(gx, gy)` onto the tangent space at the frame:
/// `G - X sym(X^T G)`.
fn tangent<T: Real>(frame: &StiefelFrame<T>, gx: &[T], gy: &[T]) -> (Vec<T>, Vec<T>) {
    let (x, y) = (&frame.x, &frame.y);
    let half = T::lit(0.5);
    let a = dot(x, gx);
    let b = half * (dot(x, gy) + dot(y, gx));
    let c = dot(y, gy);
    let tx = gx.iter().zip(x).zip(y).map(|((&g, &xi), &yi)| g - xi * a - yi * b).collect();
    let ty = gy.iter().zip(x).zip(y).map(|((&g, &xi), &yi)| g - xi * b - yi * c).collect();
    (tx, ty)
}

/// Step along `-(dx, dy)` and re-orthonormalize (the QR retraction).
fn retract<T: Real>(frame: &StiefelFrame<T>, t: T, dx: &[T], dy: &[T]) -> Option<StiefelFrame<T>> {
    let x = mix(T::one(), &frame.x, -t, dx);
    let y = mix(T::one(), &frame.y, -t, dy);
    StiefelFrame::orthonormalize(&x, &y).ok()
}

/// Points, values and residual at a frame.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitResult {
    pub frame: StiefelFrame<f64>,
    pub points: Vec<Vec<f64>>,
    pub values: Vec<Vec<f64>>,
    pub residual: f64,
}

impl OrbitResult {
    pub fn at(f: &SmoothMap, frame: &StiefelFrame<f64>, p: usize) -> Result<Self> {
        let points = orbit_points(frame, p);
        let values = points.iter().map(|x| f.eval(x)).collect::<Result<Vec<_>>>()?;
        let residual = residual(f, frame, p)?.value;
        Ok(OrbitResult { frame: frame.clone(), points, values, residual })
    }

    /// Largest component of any orbit point orthogonal to `span{x, y}`.
    pub fn off_circle(&self) -> f64 {
        let (x, y) = (&self.frame.x, &self.frame.y);
        self.points
            .iter()
            .map(|q| {
                let rest = mix(1.0, &mix(1.0, q, -dot(q, x), x), -dot(q, y), y);
                rest.iter().fold(0.0f64, |m, v| m.max(v.abs()))
            })
            .fold(0.0, f64::max)
    }

    /// Smallest pairwise geodesic distance between orbit points.
    pub fn min_spacing(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                best = best.min(geodesic(a, b));
            }
        }
        best
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveParams {
    pub p: usize,
    pub tol: f64,
    pub max_restarts: usize,
    pub max_iters: usize,
    pub seed: u64,
}

impl SolveParams {
    pub fn new(p: usize, seed: u64) -> Self {
        SolveParams { p, tol: 1e-8, max_restarts: 50, max_iters: 5000, seed }
    }
}

/// Outcome of [`solve_bu`]: the best orbit seen and whether it meets `tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuSolution {
    pub success: bool,
    /// Index of the restart that produced `best`.
    pub restart: usize,
    pub restarts_tried: usize,
    pub iterations: usize,
    pub best: OrbitResult,
    pub warnings: Vec<String>,
}

/// Armijo-backtracking gradient descent on the Stiefel manifold from one
/// start. Returns the final frame, its squared residual and the iteration
/// count.
fn descend(f: &SmoothMap, start: StiefelFrame<f64>, params: &SolveParams) -> Result<(StiefelFrame<f64>, f64, usize)> {
    let target = params.tol * params.tol;
    let mut frame = start;
    let (mut phi, mut gx, mut gy) = objective(f, &frame.x, &frame.y, params.p)?;
    let mut t: f64 = 1.0;
    for iter in 0..params.max_iters {
        if phi < target {
            return Ok((frame, phi, iter));
        }
        let (dx, dy) = tangent(&frame, &gx, &gy);
        let slope = dot(&dx, &dx) + dot(&dy, &dy);
        if slope < 1e-40 {
            return Ok((frame, phi, iter));
        }
        t = (t * 4.0).min(1e3);
        let next = loop {
            if t < 1e-18 {
                break None;
            }
            if let Some(cand) = retract(&frame, t, &dx, &dy) {
                let (cphi, cgx, cgy) = objective(f, &cand.x, &cand.y, params.p)?;
                if cphi <= phi - 1e-4 * t * slope {
                    break Some((cand, cphi, cgx, cgy));
                }
            }
            t *= 0.5;
        };
        match next {
            Some((cand, cphi, cgx, cgy)) => {
                (frame, phi, gx, gy) = (cand, cphi, cgx, cgy);
            }
            None => return Ok((frame, phi, iter)),
        }
    }
    Ok((frame, phi, params.max_iters))
}

/// Searches `V_{m+1,2}` for a frame whose `p` orbit points have equal
/// images under `f: R^{m+1} -> R^d`. Restarts run in order from seeded
/// uniform frames; the first one reaching `tol` wins, otherwise the lowest
/// residual is returned with `success = false`.
pub fn solve_bu(f: &SmoothMap, m: usize, params: &SolveParams) -> Result<BuSolution> {
    let d = f.output_dim();
    let p = params.p;
    if f.input_dim() != m + 1 {
        return Err(Error::DimensionMismatch { expected: m + 1, found: f.input_dim() });
    }
    if p < 2 || params.max_restarts == 0 {
        return Err(Error::InvalidArgument("need p >= 2 and at least one restart".into()));
    }
    let mut warnings = Vec::new();
    if !is_prime(p as u64) {
        warnings.push(format!("p = {p} is not prime"));
    }
    if m < d * (p - 1) + 1 {
        warnings.push(format!("m = {m} is below d(p-1)+1 = {}", d * (p - 1) + 1));
    }
    for w in &warnings {
        warn!("{w}");
    }

    let splitter = SeedSplitter::new(params.seed);
    let mut best: Option<(f64, usize, StiefelFrame<f64>)> = None;
    let mut iterations = 0;
    let mut tried = 0;
    for restart in 0..params.max_restarts {
        tried += 1;
        let start = StiefelFrame::random(m + 1, &mut splitter.rng("bu-frame", restart as u64));
        let (frame, phi, iters) = descend(f, start, params)?;
        iterations += iters;
        if best.as_ref().is_none_or(|(b, _, _)| phi < *b) {
            best = Some((phi, restart, frame));
        }
        if phi < params.tol * params.tol {
            break;
        }
    }
    let (_, restart, frame) = best.expect("at least one restart");
    let best = OrbitResult::at(f, &frame, p)?;
    let spacing = std::f64::consts::TAU / p as f64;
    assert!(best.min_spacing() >= spacing - 1e-9, "orbit spacing {} below 2pi/p", best.min_spacing());
    assert!(best.off_circle() <= 1e-9, "orbit leaves its great circle");
    Ok(BuSolution { success: best.residual < params.tol, restart, restarts_tried: tried, iterations, best, warnings })
}

/// Agreement between the analytic directional derivative of the squared
/// residual and central differences.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradientCheck {
    pub max_relative_error: f64,
    pub max_absolute_error: f64,
}

/// Compares the gradient used by the optimizer with central differences of
/// step `h` along 10 seeded tangent directions at `frame`.
pub fn gradient_check(f: &SmoothMap, frame: &StiefelFrame<f64>, p: usize, h: f64) -> Result<GradientCheck> {
    check_map(f, frame, p)?;
    if !(1e-8..=1e-4).contains(&h) {
        return Err(Error::InvalidArgument(format!("step {h} outside [1e-8, 1e-4]")));
    }
    let n = frame.dim();
    let (_, gx, gy) = objective(f, &frame.x, &frame.y, p)?;
    let mut rng = SeedSplitter::new(0).rng("gradient-check", 0);
    let mut worst = GradientCheck { max_relative_error: 0.0, max_absolute_error: 0.0 };
    for _ in 0..10 {
        let mut draw = || -> Vec<f64> { (0..n).map(|_| rng.sample(StandardNormal)).collect() };
        let (ex, ey) = (draw(), draw());
        let (tx, ty) = tangent(frame, &ex, &ey);
        let analytic = dot(&gx, &tx) + dot(&gy, &ty);
        let plus = objective(f, &mix(1.0, &frame.x, h, &tx), &mix(1.0, &frame.y, h, &ty), p)?.0;
        let minus = objective(f, &mix(1.0, &frame.x, -h, &tx), &mix(1.0, &frame.y, -h, &ty), p)?.0;
        let numeric = (plus - minus) / (2.0 * h);
        let abs = (analytic - numeric).abs();
        let scale = analytic.abs().max(numeric.abs());
        let rel = if scale > 1e-8 { abs / scale } else { abs };
        worst.max_absolute_error = worst.max_absolute_error.max(abs);
        worst.max_relative_error = worst.max_relative_error.max(rel);
    }
    Ok(worst)
}
