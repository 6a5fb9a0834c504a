//! Tverberg witnesses on neighborly polytopes.

use super::caratheodory::caratheodory_reduce;
use super::partition::tverberg_partition;
use super::{LinearMap, TverbergWitness};
use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::scalar::Field;

/// Partitions the images of the first `(r-1)(d+1)+1` vertices, shrinks each
/// part to at most `d+1` vertices, and reads the parts as faces, which
/// `(d+1)`-neighborliness guarantees.
pub fn neighborly_construct<F: Field>(
    polytope: &Polytope<F>,
    map: &LinearMap<F>,
    r: usize,
) -> Result<TverbergWitness<F>> {
    let d = map.out_dim();
    if map.in_dim() != polytope.dim() {
        return Err(Error::DimensionMismatch { expected: polytope.dim(), found: map.in_dim() });
    }
    if r < 1 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let n = (r - 1) * (d + 1) + 1;
    if polytope.num_vertices() < n {
        return Err(Error::InvalidArgument(format!("need {n} vertices, have {}", polytope.num_vertices())));
    }
    if !polytope.is_k_neighborly(d + 1) {
        return Err(Error::NotNeighborly { k: d + 1 });
    }

    let images = map.apply_all(&polytope.vertices()[..n])?;
    let part = tverberg_partition(&images, r)?
        .ok_or_else(|| Error::InvalidWitness("no Tverberg partition of the vertex images".into()))?;
    let mut faces = Vec::with_capacity(r);
    let mut coeffs = Vec::with_capacity(r);
    for (indices, c) in part.faces.iter().zip(&part.coeffs) {
        let pts: Vec<_> = indices.iter().map(|&i| images[i].clone()).collect();
        let reduced = caratheodory_reduce(&pts, &part.z, c)?;
        faces.push(reduced.indices.iter().map(|&k| indices[k]).collect());
        coeffs.push(reduced.coeffs);
    }
    Ok(TverbergWitness { faces, z: part.z, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{make_cube, make_cyclic_default};
    use crate::tverberg::{polytope_tverberg_search, validate_witness, SearchMode, SearchParams};
    use crate::Rational;

    #[test]
    fn cyclic_first_coordinate() {
        let c47 = make_cyclic_default::<Rational>(4, 7).unwrap();
        let f = LinearMap::projection(4, &[0]).unwrap();
        let w = neighborly_construct(&c47, &f, 3).unwrap();
        validate_witness(&c47, &f, &w, None).unwrap();
        assert!(w.faces.iter().all(|face| face.len() <= 2));
        let all =
            polytope_tverberg_search(&c47, &f, &SearchParams { r: 3, d: 1, forbidden: None }, SearchMode::All).unwrap();
        assert!(all.witnesses.iter().any(|x| x.face_key() == w.face_key()));
    }

    #[test]
    fn requires_neighborliness() {
        let cube = make_cube::<Rational>(4).unwrap();
        let f = LinearMap::projection(4, &[0]).unwrap();
        assert!(matches!(neighborly_construct(&cube, &f, 3), Err(Error::NotNeighborly { k: 2 })));
    }
}
