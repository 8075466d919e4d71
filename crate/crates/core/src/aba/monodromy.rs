use serde::Serialize;

use super::state::StateVector;
use super::sweep::{aux_element, LocalOp};
use super::AbaError;
use crate::exec::Exec;
use crate::field::{FieldError, Scalar};
use crate::params::{ModelParams, Twist};
use crate::rmatrix::{r12, r22};

/// Entry of the 2×2 monodromy matrix over the auxiliary spin-1/2 space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MonodromyEntry {
    A,
    B,
    C,
    D,
}

impl MonodromyEntry {
    /// `(aux_out, aux_in)`.
    fn labels(self) -> (usize, usize) {
        match self {
            MonodromyEntry::A => (0, 0),
            MonodromyEntry::B => (0, 1),
            MonodromyEntry::C => (1, 0),
            MonodromyEntry::D => (1, 1),
        }
    }

    /// Change of magnetisation.
    pub fn shift(self) -> i32 {
        match self {
            MonodromyEntry::B => -1,
            MonodromyEntry::C => 1,
            _ => 0,
        }
    }
}

fn check_dim(params: &ModelParams, v: &StateVector) -> Result<(), AbaError> {
    if v.n() != params.n() {
        return Err(AbaError::DimensionMismatch {
            expected: params.n(),
            got: v.n(),
        });
    }
    Ok(())
}

/// Local operators `R^{(1,2)}_{a,j}(q⁻¹z/w_j)` for `j = 1..N`.
pub fn monodromy_ops(z: &Scalar, params: &ModelParams) -> Result<Vec<LocalOp<Scalar>>, FieldError> {
    let def = params.def();
    let shifted = def.q_pow(-1).try_mul(z)?;
    params
        .w()
        .iter()
        .map(|w| Ok(LocalOp::from_rmat(&r12(def, &shifted.try_div(w)?)?)))
        .collect()
}

/// Local operators `R^{(2,2)}_{a,j}(z/w_j)`.
pub fn fused_ops(z: &Scalar, params: &ModelParams) -> Result<Vec<LocalOp<Scalar>>, FieldError> {
    let def = params.def();
    params
        .w()
        .iter()
        .map(|w| Ok(LocalOp::from_rmat(&r22(def, &z.try_div(w)?)?)))
        .collect()
}

pub fn monodromy_apply(
    which: MonodromyEntry,
    z: &Scalar,
    params: &ModelParams,
    v: &StateVector,
) -> Result<StateVector, AbaError> {
    check_dim(params, v)?;
    if z.is_zero() {
        return Err(FieldError::ZeroInverse.into());
    }
    let ops = monodromy_ops(z, params)?;
    let (out, inp) = which.labels();
    Ok(aux_element(&ops, out, inp, v, which.shift()))
}

/// `∏_j B(z_j) v`.
pub fn apply_b_string(
    roots: &[Scalar],
    params: &ModelParams,
    v: &StateVector,
) -> Result<StateVector, AbaError> {
    roots.iter().try_fold(v.clone(), |acc, z| {
        monodromy_apply(MonodromyEntry::B, z, params, &acc)
    })
}

/// `∏_j C(z_j) v`.
pub fn apply_c_string(
    roots: &[Scalar],
    params: &ModelParams,
    v: &StateVector,
) -> Result<StateVector, AbaError> {
    roots.iter().try_fold(v.clone(), |acc, z| {
        monodromy_apply(MonodromyEntry::C, z, params, &acc)
    })
}

/// Off-shell Bethe state `∏ B(z_j)|∧⟩`.
pub fn bethe_state(roots: &[Scalar], params: &ModelParams) -> Result<StateVector, AbaError> {
    apply_b_string(roots, params, &StateVector::reference(params.n()))
}

/// The Bethe vector `∏_{j=1}^N B(w_j)|∧⟩` with roots at the inhomogeneities.
pub fn bethe_vector(params: &ModelParams) -> Result<StateVector, AbaError> {
    if params.twist() != Twist::Pi {
        return Err(AbaError::WrongTwist);
    }
    bethe_state(params.w(), params)
}

/// `T^{(1)}(z) v`: `i(A − D)` at twist π, `A + D` at twist 0.
pub fn transfer1_apply(
    z: &Scalar,
    params: &ModelParams,
    v: &StateVector,
) -> Result<StateVector, AbaError> {
    check_dim(params, v)?;
    let ops = monodromy_ops(z, params)?;
    let a = aux_element(&ops, 0, 0, v, 0);
    let d = aux_element(&ops, 1, 1, v, 0);
    Ok(match params.twist() {
        Twist::Zero => a.add(&d),
        Twist::Pi => a.sub(&d).scale(&Scalar::i()),
    })
}

/// Diagonal of the spin-1 twist `Ω = diag(e^{iφ}, 1, e^{−iφ})`.
pub fn omega2(twist: Twist) -> [Scalar; 3] {
    match twist {
        Twist::Zero => [Scalar::one(), Scalar::one(), Scalar::one()],
        Twist::Pi => [Scalar::from_int(-1), Scalar::one(), Scalar::from_int(-1)],
    }
}

/// `T^{(2)}(z) v`, the twisted trace over a spin-1 auxiliary space.
pub fn transfer2_apply(
    z: &Scalar,
    params: &ModelParams,
    v: &StateVector,
) -> Result<StateVector, AbaError> {
    check_dim(params, v)?;
    if z.is_zero() {
        return Err(FieldError::ZeroInverse.into());
    }
    let ops = fused_ops(z, params)?;
    let omega = omega2(params.twist());
    let mut out = StateVector::zero(params.n());
    for (alpha, w) in omega.iter().enumerate() {
        out = out.add(&aux_element(&ops, alpha, alpha, v, 0).scale(w));
    }
    Ok(out)
}

/// `θ^{(2)}(z) = (−1)^{N+1} ∏_j [q w_j/z][q² z/w_j]`.
pub fn theta2(z: &Scalar, params: &ModelParams) -> Result<Scalar, FieldError> {
    let def = params.def();
    let mut acc = Scalar::one();
    for w in params.w() {
        acc = acc
            .try_mul(&def.br(1, &w.try_div(z)?)?)?
            .try_mul(&def.br(2, &z.try_div(w)?)?)?;
    }
    Ok(if params.n() % 2 == 0 { -acc } else { acc })
}

/// `a(z) = ∏[q z/w_j]`.
pub fn vacuum_a(z: &Scalar, params: &ModelParams) -> Result<Scalar, FieldError> {
    params.w().iter().try_fold(Scalar::one(), |acc, w| {
        acc.try_mul(&params.def().br(1, &z.try_div(w)?)?)
    })
}

/// `d(z) = ∏[q⁻¹ z/w_j]`.
pub fn vacuum_d(z: &Scalar, params: &ModelParams) -> Result<Scalar, FieldError> {
    params.w().iter().try_fold(Scalar::one(), |acc, w| {
        acc.try_mul(&params.def().br(-1, &z.try_div(w)?)?)
    })
}

fn ratio_bracket(params: &ModelParams, k: i32, num: &Scalar, den: &Scalar) -> Result<Scalar, AbaError> {
    Ok(params.def().br(k, &num.try_div(den)?)?)
}

fn nonzero_div(num: &Scalar, den: &Scalar, what: &str) -> Result<Scalar, AbaError> {
    if den.is_zero() {
        return Err(AbaError::PoleEncountered(what.to_string()));
    }
    Ok(num.try_div(den)?)
}

/// Left minus right side of the Bethe equations at twist π, one entry per root.
pub fn bethe_equations_residual(
    roots: &[Scalar],
    params: &ModelParams,
) -> Result<Vec<Scalar>, AbaError> {
    let phase = match params.twist() {
        Twist::Pi => Scalar::from_int(-1),
        Twist::Zero => Scalar::one(),
    };
    let mut out = Vec::with_capacity(roots.len());
    for (k, zk) in roots.iter().enumerate() {
        if zk.is_zero() {
            return Err(AbaError::PoleEncountered(format!("root {} is zero", k + 1)));
        }
        let mut lhs = Scalar::one();
        for w in params.w() {
            let num = ratio_bracket(params, 1, zk, w)?;
            let den = ratio_bracket(params, -1, zk, w)?;
            lhs = lhs.try_mul(&nonzero_div(&num, &den, "[q⁻¹ z_k/w_j]")?)?;
        }
        let mut rhs = phase.clone();
        for (j, zj) in roots.iter().enumerate() {
            if j != k {
                let num = ratio_bracket(params, 1, zk, zj)?;
                let den = ratio_bracket(params, -1, zk, zj)?;
                rhs = rhs.try_mul(&nonzero_div(&num, &den, "[q⁻¹ z_k/z_j]")?)?;
            }
        }
        out.push(lhs.try_sub(&rhs)?);
    }
    Ok(out)
}

/// `T^{(2)}(z)` applied at several spectral parameters.
pub fn transfer2_many(
    zs: &[Scalar],
    params: &ModelParams,
    v: &StateVector,
    exec: Exec,
) -> Result<Vec<StateVector>, AbaError> {
    exec.map(zs.to_vec(), |z| transfer2_apply(&z, params, v))
        .into_iter()
        .collect()
}
