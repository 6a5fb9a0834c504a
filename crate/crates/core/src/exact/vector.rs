use std::ops::{Add, Index, IndexMut, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// A point or row vector with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<F>(Vec<F>);

impl<F: Field> Vector<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![F::zero(); dim])
    }

    /// The `index`-th standard basis vector.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = F::one();
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[F] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<F> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> F {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, factor: &F) -> Self {
        Vector(self.0.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &F, other: &Self) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a.clone() + factor.clone() * b.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found: self.dim() })
        }
    }

    /// Exact affine combination `sum_i coeffs[i] * points[i]`.
    pub fn combination(points: &[&Self], coeffs: &[F], dim: usize) -> Self {
        let mut out = Self::zeros(dim);
        for (p, c) in points.iter().zip(coeffs) {
            out.add_scaled(c, p);
        }
        out
    }

    /// Arithmetic mean of a nonempty list of points.
    pub fn centroid(points: &[Self]) -> Self {
        let dim = points[0].dim();
        let mut out = Self::zeros(dim);
        for p in points {
            out = &out + p;
        }
        out.scale(&(F::one() / F::from_i64(points.len() as i64)))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(Field::to_canonical_string).collect()
    }

    pub fn parse_strings<S: AsRef<str>>(texts: &[S]) -> Result<Self> {
        texts
            .iter()
            .map(|t| {
                F::parse_canonical(t.as_ref()).ok_or_else(|| Error::Parse(format!("not a rational: {:?}", t.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Vector)
    }
}

impl<F> Index<usize> for Vector<F> {
    type Output = F;

    fn index(&self, index: usize) -> &F {
        &self.0[index]
    }
}

impl<F> IndexMut<usize> for Vector<F> {
    fn index_mut(&mut self, index: usize) -> &mut F {
        &mut self.0[index]
    }
}

impl<F: Field> Add for &Vector<F> {
    type Output = Vector<F>;

    fn add(self, rhs: Self) -> Vector<F> {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
}

impl<F: Field> Sub for &Vector<F> {
    type Output = Vector<F>;

    fn sub(self, rhs: Self) -> Vector<F> {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }
}

impl<F: Field> From<Vec<F>> for Vector<F> {
    fn from(coords: Vec<F>) -> Self {
        Vector(coords)
    }
}

impl<F: Field> Serialize for Vector<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(Field::to_canonical_string))
    }
}

impl<'de, F: Field> Deserialize<'de> for Vector<F> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let texts = Vec::<String>::deserialize(deserializer)?;
        Vector::parse_strings(&texts).map_err(D::Error::custom)
    }
}

/// Serde helper for lists of exact scalars written as `"p/q"` strings.
pub mod scalar_list {
    use super::*;

    pub fn serialize<F: Field, S: Serializer>(values: &[F], serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(values.iter().map(Field::to_canonical_string))
    }

    pub fn deserialize<'de, F: Field, D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Vec<F>, D::Error> {
        let texts = Vec::<String>::deserialize(deserializer)?;
        texts
            .iter()
            .map(|t| F::parse_canonical(t).ok_or_else(|| D::Error::custom(format!("not a rational: {t:?}"))))
            .collect()
    }
}

/// Serde helper for a single scalar written as a `"p/q"` string.
pub mod scalar {
    use super::*;

    pub fn serialize<F: Field, S: Serializer>(value: &F, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_canonical_string())
    }

    pub fn deserialize<'de, F: Field, D: Deserializer<'de>>(deserializer: D) -> std::result::Result<F, D::Error> {
        let text = String::deserialize(deserializer)?;
        F::parse_canonical(&text).ok_or_else(|| D::Error::custom(format!("not a rational: {text:?}")))
    }
}

/// Serde helper for nested lists (one list per face/part).
pub mod scalar_lists {
    use super::*;

    pub fn serialize<F: Field, S: Serializer>(
        values: &[Vec<F>],
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(values.iter().map(|row| row.iter().map(Field::to_canonical_string).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, F: Field, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Vec<Vec<F>>, D::Error> {
        let texts = Vec::<Vec<String>>::deserialize(deserializer)?;
        texts
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| F::parse_canonical(t).ok_or_else(|| D::Error::custom(format!("not a rational: {t:?}"))))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn canonical_strings() {
        let v: Vector<Rational> =
            Vector::new(vec![Rational::from_ratio(1, 2), Rational::from_i64(3), Rational::from_ratio(-4, 6)]);
        assert_eq!(v.to_strings(), vec!["1/2", "3", "-2/3"]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["1/2","3","-2/3"]"#);
        let back: Vector<Rational> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn rejects_garbage() {
        assert!(serde_json::from_str::<Vector<Rational>>(r#"["1/0x"]"#).is_err());
    }
}
