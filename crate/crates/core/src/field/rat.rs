use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldError;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders `num/den`, including `/1` for integers.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rat(text: &str) -> Result<Rat, FieldError> {
    let text = text.trim();
    let bad = || FieldError::Parse(text.to_string());
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

pub fn rat_pow(r: &Rat, k: i32) -> Rat {
    if k >= 0 {
        let mut acc = Rat::one();
        for _ in 0..k {
            acc *= r;
        }
        acc
    } else {
        rat_pow(&r.recip(), -k)
    }
}

/// Exact rational square root, if one exists.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(rat_to_string(&int(5)), "5/1");
        assert_eq!(rat_to_string(&rat(-6, 4)), "-3/2");
        assert!(matches!(parse_rat("1/0"), Err(FieldError::DivisionByZero)));
        assert!(matches!(parse_rat("x/2"), Err(FieldError::Parse(_))));
    }

    #[test]
    fn square_roots() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(45, 8)), None);
        assert_eq!(rat_sqrt(&int(-4)), None);
    }
}
