use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{parse_rat, rat_to_string};
use super::{FieldError, Rat};

/// Element `a + b·s + c·i + e·s·i` of Q(s, i) with `s² = d` and `i² = -1`.
///
/// `d` is the session constant. Values without an `s` part may leave it unset and then combine
/// with any session; two values carrying different constants never combine.
#[derive(Clone)]
pub struct Scalar {
    a: Rat,
    b: Rat,
    c: Rat,
    e: Rat,
    d: Option<Arc<Rat>>,
}

fn merge_session(
    x: &Option<Arc<Rat>>,
    y: &Option<Arc<Rat>>,
) -> Result<Option<Arc<Rat>>, FieldError> {
    match (x, y) {
        (Some(p), Some(q)) => {
            if Arc::ptr_eq(p, q) || p == q {
                Ok(Some(p.clone()))
            } else {
                Err(FieldError::SessionMismatch)
            }
        }
        (Some(p), None) | (None, Some(p)) => Ok(Some(p.clone())),
        (None, None) => Ok(None),
    }
}

/// Product in Q(s): (p1 + r1 s)(p2 + r2 s).
fn qs_mul(p1: &Rat, r1: &Rat, p2: &Rat, r2: &Rat, d: Option<&Rat>) -> (Rat, Rat) {
    let mut p = if p1.is_zero() || p2.is_zero() {
        Rat::zero()
    } else {
        p1 * p2
    };
    let mut r = Rat::zero();
    if !r1.is_zero() && !r2.is_zero() {
        let d = d.expect("s part without a session constant");
        p += r1 * r2 * d;
    }
    if !p1.is_zero() && !r2.is_zero() {
        r += p1 * r2;
    }
    if !r1.is_zero() && !p2.is_zero() {
        r += r1 * p2;
    }
    (p, r)
}

impl Scalar {
    pub fn new(a: Rat, b: Rat, c: Rat, e: Rat, d: Option<Arc<Rat>>) -> Self {
        assert!(
            d.is_some() || (b.is_zero() && e.is_zero()),
            "an s part requires a session constant"
        );
        Scalar { a, b, c, e, d }
    }

    pub fn rational(r: Rat) -> Self {
        Scalar {
            a: r,
            b: Rat::zero(),
            c: Rat::zero(),
            e: Rat::zero(),
            d: None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::rational(super::rat::int(n))
    }

    pub fn zero() -> Self {
        Scalar::rational(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::rational(Rat::one())
    }

    pub fn i() -> Self {
        Scalar {
            a: Rat::zero(),
            b: Rat::zero(),
            c: Rat::one(),
            e: Rat::zero(),
            d: None,
        }
    }

    /// The adjoined square root `s` of `d`.
    pub fn sqrt_symbol(d: Arc<Rat>) -> Self {
        Scalar {
            a: Rat::zero(),
            b: Rat::one(),
            c: Rat::zero(),
            e: Rat::zero(),
            d: Some(d),
        }
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }
    pub fn b(&self) -> &Rat {
        &self.b
    }
    pub fn c(&self) -> &Rat {
        &self.c
    }
    pub fn e(&self) -> &Rat {
        &self.e
    }
    pub fn session(&self) -> Option<&Rat> {
        self.d.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.e.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.e.is_zero()
    }

    /// True when `b = c = e = 0`.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.e.is_zero()
    }

    /// True when the `i` parts vanish.
    pub fn is_real(&self) -> bool {
        self.c.is_zero() && self.e.is_zero()
    }

    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        let d = merge_session(&self.d, &rhs.d)?;
        Ok(Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            c: &self.c + &rhs.c,
            e: &self.e + &rhs.e,
            d,
        })
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        let d = merge_session(&self.d, &rhs.d)?;
        Ok(Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            c: &self.c - &rhs.c,
            e: &self.e - &rhs.e,
            d,
        })
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        let d = merge_session(&self.d, &rhs.d)?;
        let dd = d.as_deref();
        // (u1 + v1 i)(u2 + v2 i) with u = a + b s, v = c + e s
        if self.is_real() && rhs.is_real() {
            let (a, b) = qs_mul(&self.a, &self.b, &rhs.a, &rhs.b, dd);
            return Ok(Scalar {
                a,
                b,
                c: Rat::zero(),
                e: Rat::zero(),
                d,
            });
        }
        let (uu_p, uu_r) = qs_mul(&self.a, &self.b, &rhs.a, &rhs.b, dd);
        let (vv_p, vv_r) = qs_mul(&self.c, &self.e, &rhs.c, &rhs.e, dd);
        let (uv_p, uv_r) = qs_mul(&self.a, &self.b, &rhs.c, &rhs.e, dd);
        let (vu_p, vu_r) = qs_mul(&self.c, &self.e, &rhs.a, &rhs.b, dd);
        Ok(Scalar {
            a: uu_p - vv_p,
            b: uu_r - vv_r,
            c: uv_p + vu_p,
            e: uv_r + vu_r,
            d,
        })
    }

    /// Multiplicative inverse. Fails on zero and on zero divisors, which exist only when
    /// Q(s, i) degenerates (d a rational square, or -d a rational square).
    pub fn inverse(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let dd = self.d.as_deref();
        // norm to Q(s): (u + v i)(u - v i) = u² + v²
        let (p1, r1) = qs_mul(&self.a, &self.b, &self.a, &self.b, dd);
        let (p2, r2) = qs_mul(&self.c, &self.e, &self.c, &self.e, dd);
        let (p, r) = (p1 + p2, r1 + r2);
        // (p + r s)^{-1} = (p - r s) / (p² - r² d)
        let mut den = &p * &p;
        if !r.is_zero() {
            den -= &r * &r * dd.expect("s part without a session constant");
        }
        if den.is_zero() {
            return Err(FieldError::NotInvertible(self.to_string()));
        }
        let np = &p / &den;
        let nr = -(&r / &den);
        // (u - v i) * (np + nr s)
        let conj = Scalar {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -&self.c,
            e: -&self.e,
            d: self.d.clone(),
        };
        let norm_inv = Scalar {
            a: np,
            b: nr,
            c: Rat::zero(),
            e: Rat::zero(),
            d: if r.is_zero() { None } else { self.d.clone() },
        };
        conj.try_mul(&norm_inv)
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        merge_session(&self.d, &rhs.d)?;
        self.try_mul(&rhs.inverse()?)
    }

    pub fn pow(&self, k: i32) -> Result<Scalar, FieldError> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            base = base.try_mul(&base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rat) -> Scalar {
        Scalar {
            a: &self.a * r,
            b: &self.b * r,
            c: &self.c * r,
            e: &self.e * r,
            d: self.d.clone(),
        }
    }
}

/// Checked arithmetic entry point mirroring the four field operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(lhs: &Scalar, rhs: &Scalar, op: ArithOp) -> Result<Scalar, FieldError> {
    match op {
        ArithOp::Add => lhs.try_add(rhs),
        ArithOp::Sub => lhs.try_sub(rhs),
        ArithOp::Mul => lhs.try_mul(rhs),
        ArithOp::Div => lhs.try_div(rhs),
    }
}

/// `[z] = z - z⁻¹`.
pub fn bracket(z: &Scalar) -> Result<Scalar, FieldError> {
    if z.is_zero() {
        return Err(FieldError::ZeroInverse);
    }
    z.try_sub(&z.inverse()?)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.a != other.a || self.b != other.b || self.c != other.c || self.e != other.e {
            return false;
        }
        if self.b.is_zero() && self.e.is_zero() {
            return true;
        }
        merge_session(&self.d, &other.d).is_ok()
    }
}

impl Eq for Scalar {}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect(concat!("Scalar::", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            e: -&self.e,
            d: self.d.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl super::Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rat(r: &Rat) -> Self {
        Scalar::rational(r.clone())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            (&self.a, ""),
            (&self.b, "s"),
            (&self.c, "i"),
            (&self.e, "s·i"),
        ];
        let mut wrote = false;
        for (coef, sym) in parts {
            if coef.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if sym.is_empty() {
                write!(f, "{coef}")?;
            } else if coef.is_one() {
                write!(f, "{sym}")?;
            } else {
                write!(f, "({coef})·{sym}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    a: String,
    b: String,
    c: String,
    e: String,
    d: String,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let d = self.d.as_deref().cloned().unwrap_or_else(Rat::zero);
        ScalarRepr {
            a: rat_to_string(&self.a),
            b: rat_to_string(&self.b),
            c: rat_to_string(&self.c),
            e: rat_to_string(&self.e),
            d: rat_to_string(&d),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let p = |t: &str| parse_rat(t).map_err(D::Error::custom);
        let (a, b, c, e, d) = (p(&repr.a)?, p(&repr.b)?, p(&repr.c)?, p(&repr.e)?, p(&repr.d)?);
        let d = if d.is_zero() { None } else { Some(Arc::new(d)) };
        if d.is_none() && !(b.is_zero() && e.is_zero()) {
            return Err(D::Error::custom("s part requires a nonzero session constant d"));
        }
        Ok(Scalar { a, b, c, e, d })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat::{int, rat};

    fn s(d: Rat) -> Scalar {
        Scalar::sqrt_symbol(Arc::new(d))
    }

    #[test]
    fn s_squared_is_session_constant() {
        let sv = s(rat(45, 8));
        assert_eq!(&sv * &sv, Scalar::rational(rat(45, 8)));
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn one_plus_s_times_one_minus_s() {
        let sv = s(rat(45, 8));
        let lhs = (Scalar::one() + &sv) * (Scalar::one() - &sv);
        assert_eq!(lhs, Scalar::rational(rat(-37, 8)));
    }

    #[test]
    fn bracket_examples() {
        assert!(bracket(&Scalar::one()).unwrap().is_zero());
        assert_eq!(bracket(&Scalar::from_int(2)).unwrap(), Scalar::rational(rat(3, 2)));
        assert!(bracket(&Scalar::from_int(-1)).unwrap().is_zero());
        assert!(matches!(bracket(&Scalar::zero()), Err(FieldError::ZeroInverse)));
    }

    #[test]
    fn session_mismatch_is_reported() {
        let x = s(int(2));
        let y = s(int(3));
        assert!(matches!(x.try_add(&y), Err(FieldError::SessionMismatch)));
        assert!(matches!(
            scalar_arith(&x, &y, ArithOp::Mul),
            Err(FieldError::SessionMismatch)
        ));
        // rational values combine with either session
        assert!(x.try_add(&Scalar::one()).is_ok());
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(
            scalar_arith(&Scalar::one(), &Scalar::zero(), ArithOp::Div),
            Err(FieldError::DivisionByZero)
        ));
    }

    #[test]
    fn zero_divisor_detected_when_d_is_square() {
        // d = 4: (s - 2)(s + 2) = 0
        let sv = s(int(4));
        let z = &sv - &Scalar::from_int(2);
        assert!(!z.is_zero());
        assert!(matches!(z.inverse(), Err(FieldError::NotInvertible(_))));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let sv = s(rat(45, 8));
        let x = Scalar::from_int(3) + &sv * Scalar::i() + sv.scale(&rat(-1, 2)) + Scalar::i();
        assert_eq!(&x * &x.inverse().unwrap(), Scalar::one());
    }

    #[test]
    fn json_round_trip() {
        let sv = s(rat(45, 8));
        let x = Scalar::from_int(3) + &sv * Scalar::i();
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(
            text,
            r#"{"a":"3/1","b":"0/1","c":"0/1","e":"1/1","d":"45/8"}"#
        );
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }

    mod axioms {
        use super::*;
        use proptest::prelude::*;

        fn arb_scalar() -> impl Strategy<Value = Scalar> {
            proptest::collection::vec((-30i64..30, 1i64..12), 4).prop_map(|v| {
                let d = Arc::new(rat(45, 8));
                let r: Vec<Rat> = v.iter().map(|&(n, m)| rat(n, m)).collect();
                Scalar::new(r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone(), Some(d))
            })
        }

        proptest! {
            #[test]
            fn associative(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
                prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
                prop_assert_eq!((&x + &y) + &z, &x + (&y + &z));
            }

            #[test]
            fn distributive(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
                prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
            }

            #[test]
            fn inverses(x in arb_scalar()) {
                prop_assume!(!x.is_zero());
                prop_assert_eq!(&x * &x.inverse().unwrap(), Scalar::one());
                prop_assert!((&x - &x).is_zero());
            }
        }
    }
}
