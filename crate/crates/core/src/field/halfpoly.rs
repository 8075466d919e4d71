use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::rat::is_integer;
use super::{FieldError, Rat};

/// Polynomial in `y` over Q, where `y² = x`.
///
/// Coefficients are indexed by the power of `y`; trailing zeros are always stripped, so
/// the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HalfPowerPoly {
    coeffs: Vec<Rat>,
}

impl HalfPowerPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HalfPowerPoly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        HalfPowerPoly::new(vec![c])
    }

    /// `c · y^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        HalfPowerPoly::new(coeffs)
    }

    pub fn y() -> Self {
        HalfPowerPoly::monomial(Rat::one(), 1)
    }

    /// Builds from coefficients of a polynomial in `x`.
    pub fn from_x_coeffs(xs: &[Rat]) -> Self {
        let mut coeffs = vec![Rat::zero(); 2 * xs.len()];
        for (k, c) in xs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        HalfPowerPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `y`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Only even powers of `y` occur, i.e. the element lies in Q[x].
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.is_zero())
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    /// Coefficients in `x`, for an even element.
    pub fn to_x_coeffs(&self) -> Result<Vec<Rat>, FieldError> {
        if !self.is_even() {
            return Err(FieldError::OddSupport);
        }
        Ok(self.coeffs.iter().step_by(2).cloned().collect())
    }

    /// Exact division by `y^k`.
    pub fn div_y_pow(&self, k: usize) -> Result<Self, FieldError> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(FieldError::NotDivisible);
        }
        Ok(HalfPowerPoly::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Value at a rational `x`; requires even support.
    pub fn eval_x(&self, x: &Rat) -> Result<Rat, FieldError> {
        let xs = self.to_x_coeffs()?;
        Ok(xs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        HalfPowerPoly::new(self.coeffs.iter().map(|c| c * r).collect())
    }
}

/// Convolution product.
pub fn halfpoly_mul(p: &HalfPowerPoly, q: &HalfPowerPoly) -> HalfPowerPoly {
    if p.is_zero() || q.is_zero() {
        return HalfPowerPoly::default();
    }
    let mut out = vec![Rat::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    HalfPowerPoly::new(out)
}

fn zip_with(p: &HalfPowerPoly, q: &HalfPowerPoly, f: impl Fn(&Rat, &Rat) -> Rat) -> HalfPowerPoly {
    let len = p.coeffs.len().max(q.coeffs.len());
    let zero = Rat::zero();
    HalfPowerPoly::new(
        (0..len)
            .map(|k| f(p.coeffs.get(k).unwrap_or(&zero), q.coeffs.get(k).unwrap_or(&zero)))
            .collect(),
    )
}

impl super::Ring for HalfPowerPoly {
    fn zero() -> Self {
        HalfPowerPoly::default()
    }
    fn one() -> Self {
        HalfPowerPoly::constant(<Rat as One>::one())
    }
    fn is_zero(&self) -> bool {
        HalfPowerPoly::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        zip_with(self, rhs, |a, b| a + b)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        zip_with(self, rhs, |a, b| a - b)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        halfpoly_mul(self, rhs)
    }
    fn neg_ref(&self) -> Self {
        HalfPowerPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn from_rat(r: &Rat) -> Self {
        HalfPowerPoly::constant(r.clone())
    }
}

impl fmt::Display for HalfPowerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (var, step) = if self.is_even() { ("x", 2) } else { ("y", 1) };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().step_by(step) {
            if c.is_zero() {
                continue;
            }
            let pow = k / step;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match pow {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "{var}")?,
                1 => write!(f, "{c}{var}")?,
                _ if c.is_one() => write!(f, "{var}^{pow}")?,
                _ => write!(f, "{c}{var}^{pow}")?,
            }
        }
        Ok(())
    }
}

/// JSON form `{"var":"x","coeffs":["6","0","1"]}` for even elements, `"var":"y"` otherwise.
#[derive(Serialize)]
struct PolyRepr {
    var: &'static str,
    coeffs: Vec<String>,
}

impl Serialize for HalfPowerPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self.to_x_coeffs() {
            Ok(xs) => PolyRepr {
                var: "x",
                coeffs: xs.iter().map(|c| c.to_string()).collect(),
            },
            Err(_) => PolyRepr {
                var: "y",
                coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
            },
        };
        repr.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat::int;

    fn p(cs: &[i64]) -> HalfPowerPoly {
        HalfPowerPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn y_times_y_is_x() {
        let x = halfpoly_mul(&HalfPowerPoly::y(), &HalfPowerPoly::y());
        assert_eq!(x, p(&[0, 0, 1]));
        assert_eq!(x.to_x_coeffs().unwrap(), vec![int(0), int(1)]);
    }

    #[test]
    fn identity_product() {
        let q = p(&[3, -1, 0, 2]);
        assert_eq!(halfpoly_mul(&HalfPowerPoly::constant(int(1)), &q), q);
    }

    #[test]
    fn difference_of_squares() {
        let lhs = halfpoly_mul(&p(&[1, 1]), &p(&[-1, 1]));
        assert_eq!(lhs, p(&[-1, 0, 1]));
    }

    #[test]
    fn trailing_zeros_stripped() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn json_form() {
        let q = HalfPowerPoly::from_x_coeffs(&[int(6), int(0), int(1)]);
        assert_eq!(
            serde_json::to_string(&q).unwrap(),
            r#"{"var":"x","coeffs":["6","0","1"]}"#
        );
        assert_eq!(q.to_string(), "6 + x^2");
    }

    #[test]
    fn division_by_y() {
        assert_eq!(p(&[0, 0, 3, 1]).div_y_pow(2).unwrap(), p(&[3, 1]));
        assert!(matches!(p(&[1, 1]).div_y_pow(1), Err(FieldError::NotDivisible)));
    }
}
