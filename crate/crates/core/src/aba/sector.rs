use super::monodromy::{apply_c_string, transfer1_apply};
use super::spin::{Spin, SpinState};
use super::state::StateVector;
use super::AbaError;
use crate::exec::Exec;
use crate::field::Scalar;
use crate::linalg::{rank, Matrix};
use crate::params::ModelParams;

/// `T^{(1)}(z)` restricted to the magnetisation-`m` sector, in base-3 index order.
pub fn transfer1_sector_matrix(
    z: &Scalar,
    params: &ModelParams,
    m: i32,
    exec: Exec,
) -> Result<Matrix, AbaError> {
    let basis = SpinState::sector(params.n(), m);
    let cols: Vec<Vec<Scalar>> = exec
        .map(basis.clone(), |s| {
            transfer1_apply(z, params, &StateVector::basis(s)).map(|v| v.coords(&basis))
        })
        .into_iter()
        .collect::<Result<_, _>>()?;
    let dim = basis.len();
    Ok(Matrix::from_fn(dim, dim, |r, c| cols[c][r].clone()))
}

/// Dimension of the common kernel of `T^{(1)}(z_k)` on the magnetisation-0 sector.
pub fn conjecture1_nullity(
    zs: &[Scalar],
    params: &ModelParams,
    exec: Exec,
) -> Result<usize, AbaError> {
    let blocks: Vec<Matrix> = zs
        .iter()
        .map(|z| transfer1_sector_matrix(z, params, 0, exec))
        .collect::<Result<_, _>>()?;
    let stacked = Matrix::stack(&blocks)?;
    Ok(stacked.cols() - rank(&stacked)?)
}

/// Components `⟨∧|∏_j C(w_j)|σ⟩` over the magnetisation-0 sector.
pub fn left_covector(params: &ModelParams, exec: Exec) -> Result<StateVector, AbaError> {
    let n = params.n();
    let top = SpinState::uniform(n, Spin::Up);
    let pairs: Vec<(SpinState, Scalar)> = exec
        .map(SpinState::sector(n, 0), |s| {
            apply_c_string(params.w(), params, &StateVector::basis(s)).map(|v| (s, v.get(&top)))
        })
        .into_iter()
        .collect::<Result<_, _>>()?;
    Ok(StateVector::from_pairs(n, pairs))
}

/// The dual Bethe covector is nonzero and annihilated by `T^{(1)}(z)` from the right.
pub fn left_covector_check(z: &Scalar, params: &ModelParams) -> Result<bool, AbaError> {
    let u = left_covector(params, Exec::default())?;
    if u.is_zero() {
        return Ok(false);
    }
    for s in SpinState::sector(params.n(), 0) {
        let col = transfer1_apply(z, params, &StateVector::basis(s))?;
        if !u.dot(&col).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
