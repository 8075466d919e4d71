use std::fmt;

use serde::Serialize;

use super::{FieldError, Scalar};
use crate::linalg::{self, LinalgError, Matrix};

/// Laurent polynomial `Σ c_k z^(low + k)`.
#[derive(Clone, PartialEq, Serialize)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentPoly {
    pub fn new(low: i64, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentPoly::zero();
        }
        coeffs.drain(..lead);
        LaurentPoly {
            low: low + lead as i64,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn top_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// `top - low`; zero for the zero polynomial.
    pub fn degree_width(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.top_degree() - self.low
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        usize::try_from(k - self.low)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn trailing(&self) -> Scalar {
        self.coeffs.first().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn evaluate(&self, z: &Scalar) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Ok(Scalar::zero());
        }
        // Horner in z, then shift by z^low
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(z)?.try_add(c)?;
        }
        acc.try_mul(&z.pow(self.low as i32)?)
    }

    pub fn derivative(&self) -> LaurentPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&super::rat::int(self.low + k as i64)))
            .collect();
        LaurentPoly::new(self.low - 1, coeffs)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})·z^{}", self.low + k as i64))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Interpolation on a fixed set of points and a fixed support, reusable for many value vectors.
pub struct LaurentFit {
    points: Vec<Scalar>,
    low: i64,
    width: usize,
    inverse: Matrix,
}

fn power(z: &Scalar, k: i64) -> Result<Scalar, FieldError> {
    z.pow(k as i32)
}

impl LaurentFit {
    pub fn new(points: &[Scalar], low: i64, width: usize) -> Result<Self, FieldError> {
        let needed = width + 1;
        if points.len() < needed {
            return Err(FieldError::TooFewSamples {
                needed,
                got: points.len(),
            });
        }
        if points.iter().any(Scalar::is_zero) {
            return Err(FieldError::SingularSystem);
        }
        let mut vander = Matrix::zeros(needed, needed);
        for (r, z) in points.iter().take(needed).enumerate() {
            for c in 0..needed {
                vander.set(r, c, power(z, low + c as i64)?);
            }
        }
        let mut inverse = Matrix::zeros(needed, needed);
        for col in 0..needed {
            let mut e = vec![Scalar::zero(); needed];
            e[col] = Scalar::one();
            let x = linalg::solve(&vander, &e).map_err(|err| match err {
                LinalgError::Field(f) => f,
                _ => FieldError::SingularSystem,
            })?;
            for (r, v) in x.into_iter().enumerate() {
                inverse.set(r, col, v);
            }
        }
        Ok(LaurentFit {
            points: points.to_vec(),
            low,
            width,
            inverse,
        })
    }

    pub fn points(&self) -> &[Scalar] {
        &self.points
    }

    /// Fits `values[k]` taken at `points[k]`; surplus values are checked against the fit.
    pub fn fit(&self, values: &[Scalar]) -> Result<LaurentPoly, FieldError> {
        if values.len() != self.points.len() {
            return Err(FieldError::TooFewSamples {
                needed: self.points.len(),
                got: values.len(),
            });
        }
        let needed = self.width + 1;
        let coeffs = self
            .inverse
            .mul_vec(&values[..needed])
            .map_err(|_| FieldError::SingularSystem)?;
        let poly = LaurentPoly::new(self.low, coeffs);
        for (z, v) in self.points.iter().zip(values).skip(needed) {
            if &poly.evaluate(z)? != v {
                return Err(FieldError::InconsistentSamples);
            }
        }
        Ok(poly)
    }
}

/// The unique Laurent polynomial supported on `[low, low + width]` through all samples.
pub fn laurent_interpolate(
    samples: &[(Scalar, Scalar)],
    low: i64,
    width: usize,
) -> Result<LaurentPoly, FieldError> {
    let points: Vec<Scalar> = samples.iter().map(|(z, _)| z.clone()).collect();
    let values: Vec<Scalar> = samples.iter().map(|(_, v)| v.clone()).collect();
    LaurentFit::new(&points, low, width)?.fit(&values)
}
