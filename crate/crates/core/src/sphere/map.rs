//! A small expression language for smooth maps `R^n -> R^d`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::seed::SeedSplitter;

/// One scalar expression in the input coordinates.
///
/// JSON is tagged by `type`, e.g. `{"type": "sin", "arg": {"type": "proj", "index": 0}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Expr {
    Proj {
        index: usize,
    },
    Const {
        value: f64,
    },
    Add {
        args: Vec<Expr>,
    },
    Mul {
        args: Vec<Expr>,
    },
    Sin {
        arg: Box<Expr>,
    },
    Cos {
        arg: Box<Expr>,
    },
    /// `weights . x + bias` over the raw input.
    Affine {
        weights: Vec<f64>,
        bias: f64,
    },
}

impl Expr {
    fn check(&self, n: usize) -> Result<()> {
        match self {
            Expr::Proj { index } if *index >= n => {
                Err(Error::InvalidArgument(format!("projection index {index} with input dimension {n}")))
            }
            Expr::Affine { weights, .. } if weights.len() != n => {
                Err(Error::DimensionMismatch { expected: n, found: weights.len() })
            }
            Expr::Add { args } | Expr::Mul { args } => args.iter().try_for_each(|a| a.check(n)),
            Expr::Sin { arg } | Expr::Cos { arg } => arg.check(n),
            _ => Ok(()),
        }
    }

    fn eval<T: Real>(&self, x: &[T]) -> T {
        match self {
            Expr::Proj { index } => x[*index],
            Expr::Const { value } => T::lit(*value),
            Expr::Add { args } => args.iter().fold(T::zero(), |s, a| s + a.eval(x)),
            Expr::Mul { args } => args.iter().fold(T::one(), |s, a| s * a.eval(x)),
            Expr::Sin { arg } => arg.eval(x).sin(),
            Expr::Cos { arg } => arg.eval(x).cos(),
            Expr::Affine { weights, bias } => {
                weights.iter().zip(x).fold(T::lit(*bias), |s, (&w, &v)| s + T::lit(w) * v)
            }
        }
    }

    /// Value and gradient, forward mode.
    fn eval_grad<T: Real>(&self, x: &[T]) -> (T, Vec<T>) {
        let n = x.len();
        match self {
            Expr::Proj { index } => {
                let mut g = vec![T::zero(); n];
                g[*index] = T::one();
                (x[*index], g)
            }
            Expr::Const { value } => (T::lit(*value), vec![T::zero(); n]),
            Expr::Add { args } => args.iter().fold((T::zero(), vec![T::zero(); n]), |(v, mut g), a| {
                let (av, ag) = a.eval_grad(x);
                g.iter_mut().zip(ag).for_each(|(s, t)| *s = *s + t);
                (v + av, g)
            }),
            Expr::Mul { args } => args.iter().fold((T::one(), vec![T::zero(); n]), |(v, g), a| {
                let (av, ag) = a.eval_grad(x);
                let g = g.iter().zip(ag).map(|(&s, t)| s * av + v * t).collect();
                (v * av, g)
            }),
            Expr::Sin { arg } => {
                let (v, g) = arg.eval_grad(x);
                let (s, c) = v.sin_cos();
                (s, g.into_iter().map(|t| c * t).collect())
            }
            Expr::Cos { arg } => {
                let (v, g) = arg.eval_grad(x);
                let (s, c) = v.sin_cos();
                (c, g.into_iter().map(|t| -s * t).collect())
            }
            Expr::Affine { weights, .. } => (self.eval(x), weights.iter().map(|&w| T::lit(w)).collect()),
        }
    }
}

/// A map `R^n -> R^d`, one expression per output coordinate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSmoothMap")]
pub struct SmoothMap {
    input_dim: usize,
    outputs: Vec<Expr>,
}

#[derive(Deserialize)]
struct RawSmoothMap {
    input_dim: usize,
    outputs: Vec<Expr>,
}

impl TryFrom<RawSmoothMap> for SmoothMap {
    type Error = Error;

    fn try_from(raw: RawSmoothMap) -> Result<Self> {
        SmoothMap::new(raw.input_dim, raw.outputs)
    }
}

impl SmoothMap {
    pub fn new(input_dim: usize, outputs: Vec<Expr>) -> Result<Self> {
        if outputs.is_empty() {
            return Err(Error::EmptyInput("smooth map without outputs"));
        }
        outputs.iter().try_for_each(|e| e.check(input_dim))?;
        Ok(SmoothMap { input_dim, outputs })
    }

    /// The coordinate projections `x -> (x_i)_{i in coords}`.
    pub fn projections(input_dim: usize, coords: &[usize]) -> Result<Self> {
        Self::new(input_dim, coords.iter().map(|&index| Expr::Proj { index }).collect())
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.outputs.len()
    }

    pub fn outputs(&self) -> &[Expr] {
        &self.outputs
    }

    /// Evaluates at `x`, failing on non-finite output.
    pub fn eval<T: Real>(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch { expected: self.input_dim, found: x.len() });
        }
        let values: Vec<T> = self.outputs.iter().map(|e| e.eval(x)).collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { point: x.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect() });
        }
        Ok(values)
    }

    /// Values and the Jacobian rows.
    pub fn eval_jacobian<T: Real>(&self, x: &[T]) -> Result<(Vec<T>, Vec<Vec<T>>)> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch { expected: self.input_dim, found: x.len() });
        }
        let (values, rows): (Vec<T>, Vec<Vec<T>>) = self.outputs.iter().map(|e| e.eval_grad(x)).unzip();
        if values.iter().chain(rows.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { point: x.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect() });
        }
        Ok((values, rows))
    }
}

fn random_affine(n: usize, rng: &mut impl Rng) -> Expr {
    Expr::Affine { weights: (0..n).map(|_| rng.random_range(-1.0..1.0)).collect(), bias: rng.random_range(-1.0..1.0) }
}

/// A seeded sum of products of `degree` trigonometric factors of random
/// affine forms, plus a random affine term, per output coordinate.
pub fn random_smooth_map(input_dim: usize, output_dim: usize, degree: usize, seed: u64) -> SmoothMap {
    let mut rng = SeedSplitter::new(seed).rng("smooth-map", 0);
    let outputs = (0..output_dim)
        .map(|_| {
            let mut terms: Vec<Expr> = (0..3)
                .map(|_| {
                    let mut factors = vec![Expr::Const { value: rng.random_range(-1.0..1.0) }];
                    for _ in 0..degree {
                        let arg = Box::new(random_affine(input_dim, &mut rng));
                        factors.push(if rng.random_bool(0.5) { Expr::Sin { arg } } else { Expr::Cos { arg } });
                    }
                    Expr::Mul { args: factors }
                })
                .collect();
            terms.push(random_affine(input_dim, &mut rng));
            Expr::Add { args: terms }
        })
        .collect();
    SmoothMap::new(input_dim, outputs).expect("generated expressions are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"input_dim":3,"outputs":[{"type":"add","args":[
            {"type":"mul","args":[{"type":"proj","index":0},{"type":"proj","index":1}]},
            {"type":"cos","arg":{"type":"affine","weights":[1.0,0.0,-2.0],"bias":0.5}},
            {"type":"const","value":3.0}]}]}"#;
        let f: SmoothMap = serde_json::from_str(text).unwrap();
        let again: SmoothMap = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(f, again);
        let v = f.eval(&[2.0, 3.0, 0.25]).unwrap();
        assert!((v[0] - (6.0 + 2.0f64.cos() + 3.0)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(serde_json::from_str::<SmoothMap>(r#"{"input_dim":2,"outputs":[{"type":"proj","index":2}]}"#).is_err());
        assert!(serde_json::from_str::<SmoothMap>(r#"{"input_dim":2,"outputs":[]}"#).is_err());
        let f = SmoothMap::projections(2, &[0]).unwrap();
        assert!(f.eval(&[1.0]).is_err());
        assert!(matches!(f.eval(&[f64::NAN, 0.0]), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn jacobian_matches_differences() {
        let f = random_smooth_map(4, 2, 2, 11);
        let x = [0.3, -0.2, 0.5, 0.1];
        let (v, jac) = f.eval_jacobian(&x).unwrap();
        assert_eq!(v, f.eval(&x).unwrap());
        let h = 1e-6;
        for i in 0..4 {
            let mut up = x;
            let mut down = x;
            up[i] += h;
            down[i] -= h;
            let (fu, fd) = (f.eval(&up).unwrap(), f.eval(&down).unwrap());
            for k in 0..2 {
                let fd_est: f64 = (fu[k] - fd[k]) / (2.0 * h);
                assert!((fd_est - jac[k][i]).abs() < 1e-8, "output {k}, input {i}");
            }
        }
    }

    #[test]
    fn generator_is_deterministic() {
        assert_eq!(random_smooth_map(3, 1, 2, 5), random_smooth_map(3, 1, 2, 5));
        assert_ne!(random_smooth_map(3, 1, 2, 5), random_smooth_map(3, 1, 2, 6));
    }
}
