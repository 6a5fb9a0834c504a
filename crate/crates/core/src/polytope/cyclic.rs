use itertools::Itertools;

use super::Polytope;
use crate::error::{Error, Result};
use crate::exact::Vector;
use crate::scalar::Field;

/// Facets of the cyclic polytope with `n` vertices in dimension `m`, as
/// 0-based index sets satisfying the evenness condition: between any two
/// indices outside the set lies an even number of indices inside it.
pub fn gale_evenness_facets(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..n)
        .combinations(m)
        .filter(|set| {
            let mut inside = vec![false; n];
            for &i in set {
                inside[i] = true;
            }
            // Checking consecutive outsiders covers every pair.
            let mut between = None::<usize>;
            for &is_in in &inside {
                match (is_in, between) {
                    (true, Some(c)) => between = Some(c + 1),
                    (true, None) => {}
                    (false, Some(c)) if c % 2 == 1 => return false,
                    (false, _) => between = Some(0),
                }
            }
            true
        })
        .collect()
}

/// Convex hull of the moment-curve points `(t, t^2, ..., t^m)`.
pub fn make_cyclic<F: Field>(m: usize, params: &[F]) -> Result<Polytope<F>> {
    let n = params.len();
    if m < 2 || n <= m {
        return Err(Error::InvalidArgument(format!("cyclic polytope needs n > m >= 2, got m={m}, n={n}")));
    }
    if params.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("moment curve parameters must be strictly increasing".into()));
    }
    let vertices = params
        .iter()
        .map(|t| {
            let mut coords = Vec::with_capacity(m);
            let mut power = t.clone();
            for _ in 0..m {
                coords.push(power.clone());
                power *= t.clone();
            }
            Vector::new(coords)
        })
        .collect();
    Polytope::new(vertices, gale_evenness_facets(n, m))
}

/// Cyclic polytope with parameters `t_i = i` for `i = 1..=n`.
pub fn make_cyclic_default<F: Field>(m: usize, n: usize) -> Result<Polytope<F>> {
    let params: Vec<F> = (1..=n as i64).map(F::from_i64).collect();
    make_cyclic(m, &params)
}
