//! Algebraic Bethe ansatz on the inhomogeneous spin-1 chain.

mod monodromy;
mod qkz;
mod sector;
mod spin;
mod state;
mod sweep;

use thiserror::Error;

use crate::field::FieldError;
use crate::linalg::LinalgError;
use crate::params::ParamError;

pub use monodromy::{
    apply_b_string, apply_c_string, bethe_equations_residual, bethe_state, bethe_vector,
    fused_ops, monodromy_apply, monodromy_ops, omega2, theta2, transfer1_apply, transfer2_apply,
    transfer2_many, vacuum_a, vacuum_d, MonodromyEntry,
};
pub use qkz::{
    asymptotic_check, cyclic_check, degree_width_check, exchange_check, laurent_in_site,
    recurrence_check, renormalised_vector, rcheck_apply, scattering_check, shift_apply,
    shift_inverse_apply, spin_reversal_check, Direction,
};
pub use sector::{conjecture1_nullity, left_covector, left_covector_check, transfer1_sector_matrix};
pub use spin::{Spin, SpinState};
pub use state::{Component, StateVector};
pub use sweep::{aux_element, sweep, LocalOp};

#[derive(Debug, Error, PartialEq)]
pub enum AbaError {
    #[error("vector has {got} sites, parameters have {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires twist pi")]
    WrongTwist,
    #[error("pole encountered: {0} vanishes")]
    PoleEncountered(String),
    #[error("[q w_{0}/w_{1}] vanishes")]
    RedundantFactorZero(usize, usize),
    #[error("site index {0} out of range")]
    SiteOutOfRange(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
