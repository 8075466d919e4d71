use std::collections::BTreeMap;

use serde::Serialize;

use super::monodromy::{bethe_vector, omega2, theta2, transfer2_apply};
use super::spin::{Spin, SpinState};
use super::state::StateVector;
use super::AbaError;
use crate::exec::Exec;
use crate::field::rat::int;
use crate::field::{LaurentFit, LaurentPoly, Scalar};
use crate::params::{generic_ratio, ModelParams, Twist};
use crate::rmatrix::{r22, singlet_pair};

/// `|Ψ⟩ / (s^N ∏_{j<k}[q w_j/w_k])`.
pub fn renormalised_vector(params: &ModelParams) -> Result<StateVector, AbaError> {
    let def = params.def();
    let w = params.w();
    let mut divisor = def.s().pow(params.n() as i32)?;
    for j in 0..w.len() {
        for k in j + 1..w.len() {
            let f = def.br(1, &w[j].try_div(&w[k])?)?;
            if f.is_zero() {
                return Err(AbaError::RedundantFactorZero(j + 1, k + 1));
            }
            divisor = divisor.try_mul(&f)?;
        }
    }
    let inv = divisor.inverse()?;
    Ok(bethe_vector(params)?.scale(&inv))
}

fn check_site(params: &ModelParams, j: usize, upper: usize) -> Result<(), AbaError> {
    if j == 0 || j > upper || upper > params.n() {
        return Err(AbaError::SiteOutOfRange(j));
    }
    Ok(())
}

/// `Ř_{j,j+1}(z) = P·R^{(2,2)}(z)` on 1-based sites `j, j+1`.
pub fn rcheck_apply(
    params: &ModelParams,
    j: usize,
    z: &Scalar,
    v: &StateVector,
) -> Result<StateVector, AbaError> {
    check_site(params, j, params.n() - 1)?;
    let op = r22(params.def(), z)?.check().nonzeros();
    Ok(v.apply_pair(j - 1, j, &op))
}

fn swapped(params: &ModelParams, j: usize) -> Result<ModelParams, AbaError> {
    let mut w = params.w().to_vec();
    w.swap(j - 1, j);
    Ok(params.with_w(w)?)
}

pub fn exchange_check(j: usize, params: &ModelParams) -> Result<bool, AbaError> {
    check_site(params, j, params.n().saturating_sub(1))?;
    let def = params.def();
    let (wj, wk) = (&params.w()[j - 1], &params.w()[j]);
    let lhs = rcheck_apply(params, j, &wj.try_div(wk)?, &renormalised_vector(params)?)?;
    let factor = def
        .br(1, &wk.try_div(wj)?)?
        .try_mul(&def.br(2, &wj.try_div(wk)?)?)?;
    let rhs = renormalised_vector(&swapped(params, j)?)?.scale(&factor);
    Ok(lhs == rhs)
}

fn omega_site(twist: Twist, s: Spin) -> Scalar {
    omega2(twist)[s.index()].clone()
}

/// `S′ = shift ∘ Ω_N`: site `N` picks up its twist phase and moves to site 1.
pub fn shift_apply(twist: Twist, v: &StateVector) -> StateVector {
    let n = v.n();
    v.relabel(|s| {
        let spins = s.spins();
        let last = spins[n - 1];
        let mut out = Vec::with_capacity(n);
        out.push(last);
        out.extend_from_slice(&spins[..n - 1]);
        (SpinState::from_spins(&out), omega_site(twist, last))
    })
}

/// Inverse of [`shift_apply`].
pub fn shift_inverse_apply(twist: Twist, v: &StateVector) -> StateVector {
    v.relabel(|s| {
        let spins = s.spins();
        let first = spins[0];
        let mut out = spins[1..].to_vec();
        out.push(first);
        let phase = omega_site(twist, first)
            .inverse()
            .expect("twist phases are units");
        (SpinState::from_spins(&out), phase)
    })
}

fn sign(k: usize) -> Scalar {
    if k % 2 == 0 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

pub fn cyclic_check(params: &ModelParams) -> Result<bool, AbaError> {
    let n = params.n();
    let lhs = shift_apply(params.twist(), &renormalised_vector(params)?);
    let mut w = params.w().to_vec();
    w.rotate_right(1);
    let rhs = renormalised_vector(&params.with_w(w)?)?.scale(&sign(n + 1));
    Ok(lhs == rhs)
}

fn singlet_state() -> StateVector {
    let s = singlet_pair();
    StateVector::from_pairs(
        2,
        SpinState::all(2).map(|st| (st, s[st.index() as usize].clone())),
    )
}

/// Specialises `w_2 = q⁻¹w_1` and compares with the `N − 2` site vector.
pub fn recurrence_check(params: &ModelParams) -> Result<bool, AbaError> {
    let n = params.n();
    if n < 3 {
        return Err(AbaError::DimensionMismatch {
            expected: 3,
            got: n,
        });
    }
    let def = params.def();
    let w = params.w();
    let w1 = &w[0];
    let mut special = w.to_vec();
    special[1] = def.q_pow(-1).try_mul(w1)?;
    let lhs = renormalised_vector(&params.with_w(special)?)?;
    let mut factor = def.bq().clone().try_mul(&sign(n))?;
    for wj in &w[2..] {
        factor = factor
            .try_mul(&def.br(1, &w1.try_div(wj)?)?)?
            .try_mul(&def.br(2, &wj.try_div(w1)?)?)?;
    }
    let tail = renormalised_vector(&params.with_w(w[2..].to_vec())?)?;
    let rhs = singlet_state().tensor(&tail).scale(&factor);
    Ok(lhs == rhs)
}

/// Limit taken in one inhomogeneity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Infinity,
    Zero,
}

fn sample_points(params: &ModelParams, j: usize, count: usize) -> Vec<Scalar> {
    let def = params.def();
    let others: Vec<&Scalar> = params
        .w()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != j - 1)
        .map(|(_, w)| w)
        .collect();
    let mut out = Vec::with_capacity(count);
    let mut cand = 2i64;
    while out.len() < count {
        let z = Scalar::rational(int(cand));
        let ok = others.iter().all(|w| match (z.clone() / *w).to_rat() {
            Some(r) => generic_ratio(def, &r),
            None => true,
        });
        if ok {
            out.push(z);
        }
        cand += 1;
    }
    out
}

/// Every component of `|Ψ̃⟩` as a Laurent polynomial in `w_j`, the other inhomogeneities fixed.
///
/// The support is assumed to be `[−(N−1), N−1]`; two surplus samples confirm it.
pub fn laurent_in_site(
    params: &ModelParams,
    j: usize,
    exec: Exec,
) -> Result<BTreeMap<SpinState, LaurentPoly>, AbaError> {
    check_site(params, j, params.n())?;
    let n = params.n();
    let width = 2 * (n - 1);
    let points = sample_points(params, j, width + 3);
    let fit = LaurentFit::new(&points, -(n as i64 - 1), width)?;
    let vectors: Vec<StateVector> = exec
        .map(points.clone(), |z| {
            let mut w = params.w().to_vec();
            w[j - 1] = z;
            renormalised_vector(&params.with_w(w)?)
        })
        .into_iter()
        .collect::<Result<_, _>>()?;
    let keys: std::collections::BTreeSet<SpinState> =
        vectors.iter().flat_map(|v| v.keys()).collect();
    let mut out = BTreeMap::new();
    for key in keys {
        let values: Vec<Scalar> = vectors.iter().map(|v| v.get(&key)).collect();
        out.insert(key, fit.fit(&values)?);
    }
    Ok(out)
}

/// Compares the extreme Laurent coefficient in `w_j` with the `N − 1` site vector.
pub fn asymptotic_check(
    j: usize,
    direction: Direction,
    params: &ModelParams,
) -> Result<bool, AbaError> {
    let n = params.n();
    if n < 2 {
        return Err(AbaError::DimensionMismatch {
            expected: 2,
            got: n,
        });
    }
    check_site(params, j, n)?;
    let polys = laurent_in_site(params, j, Exec::default())?;
    let top = n as i64 - 1;
    let mut rest = params.w().to_vec();
    rest.remove(j - 1);
    let smaller = renormalised_vector(&params.with_w(rest.clone())?)?;
    let mut prefactor = match direction {
        Direction::Infinity => sign(n - j),
        Direction::Zero => sign(j - 1),
    };
    for wk in &rest {
        let f = match direction {
            Direction::Infinity => wk.inverse()?,
            Direction::Zero => wk.clone(),
        };
        prefactor = prefactor.try_mul(&f)?;
    }
    let expected = smaller.scale(&prefactor);
    for state in SpinState::all(n) {
        let got = match polys.get(&state) {
            None => Scalar::zero(),
            Some(p) => match direction {
                Direction::Infinity => p.coeff(top),
                Direction::Zero => p.coeff(-top),
            },
        };
        let want = if state.site(j - 1) == Spin::Zero {
            expected.get(&state.without_site(j - 1))
        } else {
            Scalar::zero()
        };
        if got != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Width of every component in every `w_j` is at most `2(N−1)`, attained by some component.
pub fn degree_width_check(params: &ModelParams, exec: Exec) -> Result<bool, AbaError> {
    let n = params.n();
    let bound = 2 * (n as i64 - 1);
    for j in 1..=n {
        let polys = laurent_in_site(params, j, exec)?;
        let widths: Vec<i64> = polys.values().map(LaurentPoly::degree_width).collect();
        if widths.iter().any(|&d| d > bound) || !widths.contains(&bound) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T^{(2)}(w_j)|Ψ⟩` against the factorised product of `Ř` matrices and `S′`.
pub fn scattering_check(j: usize, params: &ModelParams) -> Result<bool, AbaError> {
    let n = params.n();
    check_site(params, j, n)?;
    let def = params.def();
    let w = params.w();
    let wj = &w[j - 1];
    let psi = bethe_vector(params)?;
    let direct = transfer2_apply(wj, params, &psi)?;

    let mut v = psi.clone();
    for k in j..n {
        v = rcheck_apply(params, k, &wj.try_div(&w[k])?, &v)?;
    }
    v = shift_apply(params.twist(), &v);
    for k in 1..j {
        v = rcheck_apply(params, k, &wj.try_div(&w[k - 1])?, &v)?;
    }
    let product = v.scale(&def.bq().try_mul(def.bq2())?);
    let eigen = psi.scale(&theta2(wj, params)?);
    Ok(direct == product && direct == eigen)
}

/// `ℛ|Ψ̃⟩ = |Ψ̃⟩` with `ℛ` exchanging `⇑` and `⇓`.
pub fn spin_reversal_check(params: &ModelParams) -> Result<bool, AbaError> {
    let v = renormalised_vector(params)?;
    Ok(v.reversed() == v)
}
