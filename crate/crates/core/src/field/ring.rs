use std::fmt::Debug;

use super::Rat;

/// Commutative ring operations shared by every coefficient type a state vector can carry.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
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
        r.clone()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
}
