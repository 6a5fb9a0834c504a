//! Exhaustive search for intersecting images of vertex-disjoint faces.

use std::sync::OnceLock;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::primes::is_prime;
use super::{LinearMap, TverbergWitness};
use crate::error::{Error, Result};
use crate::exact::{solve_hulls, Vector};
use crate::polytope::{make_cross, Face, Polytope};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub r: usize,
    pub d: usize,
    #[serde(default)]
    pub forbidden: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Stop at the lexicographically first witness.
    First,
    /// Every witness, in lexicographic order.
    All,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult<F> {
    pub witnesses: Vec<TverbergWitness<F>>,
    pub diagnostic: Option<String>,
}

/// Proper faces avoiding the forbidden vertex, with their vertex images.
struct FaceTable<F> {
    faces: Vec<Face>,
    masks: Vec<u128>,
    images: Vec<Vec<Vector<F>>>,
    d: usize,
    pairs: Vec<OnceLock<bool>>,
}

impl<F: Field> FaceTable<F> {
    fn new(polytope: &Polytope<F>, map: &LinearMap<F>, forbidden: Option<usize>) -> Result<Self> {
        let all_images = map.apply_all(polytope.vertices())?;
        let faces: Vec<Face> = polytope
            .all_proper_faces()
            .into_iter()
            .filter(|f| forbidden.is_none_or(|v| !f.vertices.contains(&v)))
            .collect();
        let masks = faces.iter().map(Face::mask).collect();
        let images = faces.iter().map(|f| f.vertices.iter().map(|&i| all_images[i].clone()).collect()).collect();
        let pairs = (0..faces.len() * faces.len()).map(|_| OnceLock::new()).collect();
        Ok(FaceTable { faces, masks, images, d: map.out_dim(), pairs })
    }

    fn relint_meet(&self, tuple: &[usize]) -> Option<TverbergWitness<F>> {
        let sets: Vec<Vec<Vector<F>>> = tuple.iter().map(|&i| self.images[i].clone()).collect();
        solve_hulls(&sets, self.d, true).map(|hit| TverbergWitness {
            faces: tuple.iter().map(|&i| self.faces[i].vertices.clone()).collect(),
            z: hit.point,
            coeffs: hit.coeffs,
        })
    }

    /// Whether the relative interiors of faces `a < b` have meeting images.
    fn pair_ok(&self, a: usize, b: usize) -> bool {
        *self.pairs[a * self.faces.len() + b].get_or_init(|| self.relint_meet(&[a, b]).is_some())
    }

    /// Depth-first over increasing face indices extending `tuple`. Returns
    /// false once `First` mode has found its witness.
    fn extend(
        &self,
        tuple: &mut Vec<usize>,
        used: u128,
        r: usize,
        mode: SearchMode,
        out: &mut Vec<TverbergWitness<F>>,
    ) -> bool {
        if tuple.len() == r {
            if let Some(w) = self.relint_meet(tuple) {
                out.push(w);
                return mode == SearchMode::All;
            }
            return true;
        }
        let start = tuple.last().map_or(0, |&i| i + 1);
        for next in start..self.faces.len() {
            if self.masks[next] & used != 0 {
                continue;
            }
            if r > 2 && !tuple.iter().all(|&i| self.pair_ok(i, next)) {
                continue;
            }
            tuple.push(next);
            let go_on = self.extend(tuple, used | self.masks[next], r, mode, out);
            tuple.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Unordered `r`-tuples of pairwise vertex-disjoint proper faces of
/// `polytope` whose images under `map` share a point lying in the image of
/// each face's relative interior. Each tuple is therefore reported once, by
/// its minimal faces, with strictly positive coefficients.
pub fn polytope_tverberg_search<F: Field>(
    polytope: &Polytope<F>,
    map: &LinearMap<F>,
    params: &SearchParams,
    mode: SearchMode,
) -> Result<SearchResult<F>> {
    if map.in_dim() != polytope.dim() {
        return Err(Error::DimensionMismatch { expected: polytope.dim(), found: map.in_dim() });
    }
    if map.out_dim() != params.d {
        return Err(Error::DimensionMismatch { expected: params.d, found: map.out_dim() });
    }
    if params.r < 2 {
        return Err(Error::InvalidArgument("r must be at least 2".into()));
    }
    if let Some(v) = params.forbidden.filter(|&v| v >= polytope.num_vertices()) {
        return Err(Error::InvalidArgument(format!("forbidden vertex {v} out of range")));
    }
    let available = polytope.num_vertices() - usize::from(params.forbidden.is_some());
    if params.r > available {
        return Ok(SearchResult {
            witnesses: Vec::new(),
            diagnostic: Some(format!("at most {available} pairwise disjoint faces, asked for {}", params.r)),
        });
    }

    let table = FaceTable::new(polytope, map, params.forbidden)?;
    let witnesses = match mode {
        SearchMode::First => {
            let mut out = Vec::new();
            table.extend(&mut Vec::with_capacity(params.r), 0, params.r, mode, &mut out);
            out
        }
        SearchMode::All => (0..table.faces.len())
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                table.extend(&mut vec![first], table.masks[first], params.r, mode, &mut out);
                out
            })
            .flatten()
            .collect(),
    };
    Ok(SearchResult { witnesses, diagnostic: None })
}

/// `(1/r!) * ((r-1)/2)^(m-1)`.
pub fn cross_bound<F: Field>(m: usize, r: usize) -> F {
    let factorial = (1..=r as i64).fold(F::one(), |a, k| a * F::from_i64(k));
    let base = F::from_ratio(r as i64 - 1, 2);
    let power = (1..m).fold(F::one(), |a, _| a * base.clone());
    power / factorial
}

/// Result of counting witnesses on a cross-polytope.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "F: Field")]
pub struct CrossCount<F> {
    pub forbidden: usize,
    pub count: usize,
    #[serde(with = "crate::exact::scalar")]
    pub bound: F,
    pub threshold: usize,
    pub pass: bool,
    pub warnings: Vec<String>,
}

fn hypothesis_warnings(m: usize, d: usize, r: usize) -> Vec<String> {
    let mut warnings = Vec::new();
    if !is_prime(r as u64) {
        warnings.push(format!("r = {r} is not prime"));
    }
    if 2 * (m - 1) < (r - 1) * (d + 1) {
        warnings.push(format!("m = {m} is below 1 + (r-1)(d+1)/2"));
    }
    for w in &warnings {
        warn!("{w}");
    }
    warnings
}

fn threshold<F: Field>(bound: &F) -> usize {
    bound.ceil().to_usize().expect("bound is a small nonnegative number")
}

fn cross_setup<F: Field>(m: usize, d: usize, r: usize, map: &LinearMap<F>) -> Result<Polytope<F>> {
    if m == 0 || r < 2 {
        return Err(Error::InvalidArgument("need m >= 1 and r >= 2".into()));
    }
    let cross = make_cross(m)?;
    if map.in_dim() != m || map.out_dim() != d {
        return Err(Error::DimensionMismatch { expected: m, found: map.in_dim() });
    }
    Ok(cross)
}

/// Counts unordered witness sets on the `m`-dimensional cross-polytope that
/// avoid `forbidden`, and compares with [`cross_bound`].
pub fn count_cross_witnesses<F: Field>(
    m: usize,
    d: usize,
    r: usize,
    map: &LinearMap<F>,
    forbidden: usize,
) -> Result<CrossCount<F>> {
    let cross = cross_setup(m, d, r, map)?;
    let warnings = hypothesis_warnings(m, d, r);
    let params = SearchParams { r, d, forbidden: Some(forbidden) };
    let found = polytope_tverberg_search(&cross, map, &params, SearchMode::All)?;
    let bound: F = cross_bound(m, r);
    let threshold = threshold(&bound);
    let count = found.witnesses.len();
    Ok(CrossCount { forbidden, count, bound, threshold, pass: count >= threshold, warnings })
}

/// [`count_cross_witnesses`] for every choice of forbidden vertex. Runs one
/// unrestricted search and filters, which counts the same sets.
pub fn count_cross_witnesses_all<F: Field>(
    m: usize,
    d: usize,
    r: usize,
    map: &LinearMap<F>,
) -> Result<Vec<CrossCount<F>>> {
    let cross = cross_setup(m, d, r, map)?;
    let warnings = hypothesis_warnings(m, d, r);
    let params = SearchParams { r, d, forbidden: None };
    let found = polytope_tverberg_search(&cross, map, &params, SearchMode::All)?;
    let bound: F = cross_bound(m, r);
    let threshold = threshold(&bound);
    Ok((0..cross.num_vertices())
        .map(|v| {
            let count = found.witnesses.iter().filter(|w| !w.faces.iter().any(|f| f.contains(&v))).count();
            CrossCount {
                forbidden: v,
                count,
                bound: bound.clone(),
                threshold,
                pass: count >= threshold,
                warnings: warnings.clone(),
            }
        })
        .collect())
}
