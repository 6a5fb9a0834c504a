//! Exhaustive Tverberg partitions of small point sets.

use std::ops::ControlFlow;

use log::warn;
use serde::{Deserialize, Serialize};

use super::primes::is_prime;
use super::TverbergWitness;
use crate::error::{Error, Result};
use crate::exact::{conv_intersection_point, Vector};
use crate::scalar::Field;

/// Visits every partition of `0..n` into exactly `parts` nonempty blocks as a
/// restricted growth string, in lexicographic order. `admissible(i, block,
/// labels)` may veto putting element `i` into `block`.
pub fn for_each_partition<B>(
    n: usize,
    parts: usize,
    mut admissible: impl FnMut(usize, usize, &[usize]) -> bool,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    fn rec<B>(
        i: usize,
        used: usize,
        n: usize,
        parts: usize,
        labels: &mut Vec<usize>,
        admissible: &mut impl FnMut(usize, usize, &[usize]) -> bool,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if i == n {
            return if used == parts { visit(labels) } else { ControlFlow::Continue(()) };
        }
        // Not enough elements left to open the remaining blocks.
        if used + (n - i) < parts {
            return ControlFlow::Continue(());
        }
        let top = if used < parts { used + 1 } else { used };
        for block in 0..top {
            if !admissible(i, block, labels) {
                continue;
            }
            labels.push(block);
            let next = used.max(block + 1);
            let flow = rec(i + 1, next, n, parts, labels, admissible, visit);
            labels.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
    if parts == 0 || parts > n {
        return None;
    }
    let mut labels = Vec::with_capacity(n);
    match rec(0, 0, n, parts, &mut labels, &mut admissible, &mut visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

fn blocks(labels: &[usize], parts: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); parts];
    for (i, &b) in labels.iter().enumerate() {
        out[b].push(i);
    }
    out
}

fn check_points<F: Field>(points: &[Vector<F>], r: usize) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput("no points"))?;
    let d = first.dim();
    for p in points {
        p.check_dim(d)?;
    }
    if r == 0 || r > points.len() {
        return Err(Error::InvalidArgument(format!("cannot split {} points into {r} parts", points.len())));
    }
    Ok(d)
}

fn search<F: Field>(
    points: &[Vector<F>],
    r: usize,
    d: usize,
    admissible: impl FnMut(usize, usize, &[usize]) -> bool,
) -> Option<TverbergWitness<F>> {
    for_each_partition(points.len(), r, admissible, |labels| {
        let faces = blocks(labels, r);
        let sets: Vec<Vec<Vector<F>>> = faces.iter().map(|f| f.iter().map(|&i| points[i].clone()).collect()).collect();
        match conv_intersection_point(&sets, d).expect("inputs checked") {
            Some(hit) => ControlFlow::Break(TverbergWitness { faces, z: hit.point, coeffs: hit.coeffs }),
            None => ControlFlow::Continue(()),
        }
    })
}

/// First partition (lexicographic restricted growth order) of `points` into
/// `r` parts whose convex hulls share a point.
pub fn tverberg_partition<F: Field>(points: &[Vector<F>], r: usize) -> Result<Option<TverbergWitness<F>>> {
    let d = check_points(points, r)?;
    Ok(search(points, r, d, |_, _, _| true))
}

/// Points with a color per point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Field")]
pub struct ColoredConfig<F> {
    pub points: Vec<Vector<F>>,
    pub colors: Vec<usize>,
}

impl<F: Field> ColoredConfig<F> {
    pub fn new(points: Vec<Vector<F>>, colors: Vec<usize>) -> Result<Self> {
        if points.len() != colors.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), found: colors.len() });
        }
        Ok(ColoredConfig { points, colors })
    }

    pub fn class_sizes(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut sizes = std::collections::BTreeMap::new();
        for &c in &self.colors {
            *sizes.entry(c).or_insert(0) += 1;
        }
        sizes
    }
}

/// Like [`tverberg_partition`] with `p` parts, but each part may hold at most
/// one point of every color. A non-prime `p` only logs a warning.
pub fn colorful_tverberg<F: Field>(cfg: &ColoredConfig<F>, p: usize) -> Result<Option<TverbergWitness<F>>> {
    let d = check_points(&cfg.points, p)?;
    if !is_prime(p as u64) {
        warn!("colorful search with non-prime p = {p}: no existence guarantee");
    }
    let colors = &cfg.colors;
    Ok(search(&cfg.points, p, d, |i, block, labels| {
        !labels.iter().enumerate().any(|(j, &b)| b == block && colors[j] == colors[i])
    }))
}
