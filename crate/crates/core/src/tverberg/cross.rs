//! Witnesses on cross-polytopes through colorful Tverberg.

use serde::Serialize;

use super::partition::{colorful_tverberg, ColoredConfig};
use super::primes::primes_in;
use super::search::{polytope_tverberg_search, SearchMode, SearchParams};
use super::{LinearMap, TverbergWitness};
use crate::error::{Error, Result};
use crate::polytope::{antipode, make_cross};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "F: Field")]
pub struct ColorfulReduction<F> {
    /// The prime used, or `None` when the direct search fallback ran.
    pub prime: Option<usize>,
    pub vertices_used: usize,
    pub witness: TverbergWitness<F>,
}

/// Finds `r` vertex-disjoint faces of the `m`-dimensional cross-polytope with
/// intersecting images, `m = (r-1)(d+1)`. A prime `p` in `[r, 2r-3]` is
/// chosen, the first `(p-1)(d+1)+1` vertices are colored by antipodal pair,
/// and the first `r` rainbow parts of a colorful partition of their images
/// become the faces. For `r < 3` the window is empty and a direct face
/// search runs instead.
pub fn cross_via_colorful<F: Field>(m: usize, d: usize, r: usize, map: &LinearMap<F>) -> Result<ColorfulReduction<F>> {
    if r < 2 || d == 0 || m != (r - 1) * (d + 1) {
        return Err(Error::InvalidArgument(format!("need m = (r-1)(d+1), got m = {m}, r = {r}, d = {d}")));
    }
    let cross = make_cross(m)?;
    if map.in_dim() != m || map.out_dim() != d {
        return Err(Error::DimensionMismatch { expected: m, found: map.in_dim() });
    }

    let Some(&p) = primes_in(r as u64, (2 * r).saturating_sub(3) as u64).first() else {
        let params = SearchParams { r, d, forbidden: None };
        let found = polytope_tverberg_search(&cross, map, &params, SearchMode::First)?;
        let witness = found
            .witnesses
            .into_iter()
            .next()
            .ok_or_else(|| Error::InvalidWitness("direct search found no witness".into()))?;
        return Ok(ColorfulReduction { prime: None, vertices_used: cross.num_vertices(), witness });
    };
    let p = p as usize;
    let n = (p - 1) * (d + 1) + 1;
    let images = map.apply_all(&cross.vertices()[..n])?;
    let cfg = ColoredConfig::new(images, (0..n).map(|v| v / 2).collect())?;
    let parts = colorful_tverberg(&cfg, p)?
        .ok_or_else(|| Error::InvalidWitness(format!("no rainbow partition into {p} parts")))?;

    let mut chosen = parts.restrict_to_support();
    chosen.faces.truncate(r);
    chosen.coeffs.truncate(r);
    for face in &chosen.faces {
        assert!(!face.iter().any(|&v| face.contains(&antipode(v))), "rainbow part {face:?} contains an antipodal pair");
    }
    Ok(ColorfulReduction { prime: Some(p), vertices_used: n, witness: chosen })
}
