//! Determinant formulas: scalar products, the Izergin-Korepin determinant and closed-form components.

use thiserror::Error;

use crate::aba::{
    apply_b_string, apply_c_string, bethe_state, renormalised_vector, vacuum_a, vacuum_d, AbaError,
    Spin, SpinState, StateVector,
};
use crate::field::{FieldError, Scalar};
use crate::linalg::{determinant, LinalgError, Matrix};
use crate::params::{Deformation, ModelParams, ParamError, Twist};

#[derive(Debug, Error, PartialEq)]
pub enum DetformError {
    #[error("pole encountered: {0} vanishes")]
    PoleEncountered(String),
    #[error("repeated parameters make the determinant prefactor singular")]
    CoincidentParameters,
    #[error("argument lists have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("site count {0} has the wrong parity")]
    WrongParity(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Aba(#[from] AbaError),
    #[error(transparent)]
    Param(#[from] ParamError),
}

type Result<T> = std::result::Result<T, DetformError>;

/// Vacuum eigenvalues of `A` and `D` on `|∧⟩`.
#[derive(Clone, Debug)]
pub struct VacuumFns<'a> {
    params: &'a ModelParams,
}

impl<'a> VacuumFns<'a> {
    pub fn new(params: &'a ModelParams) -> Self {
        VacuumFns { params }
    }

    /// `a(z) = ∏[q z/w_j]`.
    pub fn a(&self, z: &Scalar) -> Result<Scalar> {
        Ok(vacuum_a(z, self.params)?)
    }

    /// `d(z) = ∏[q⁻¹ z/w_j]`.
    pub fn d(&self, z: &Scalar) -> Result<Scalar> {
        Ok(vacuum_d(z, self.params)?)
    }
}

/// Six-vertex weights `𝔞(z) = [qz]`, `𝔟(z) = [q/z]`, `𝔠(z) = [q²]`.
#[derive(Clone, Debug)]
pub struct SixVertexWeights {
    def: Deformation,
}

impl SixVertexWeights {
    pub fn new(def: &Deformation) -> Self {
        SixVertexWeights { def: def.clone() }
    }

    pub fn a(&self, z: &Scalar) -> Result<Scalar> {
        Ok(self.def.br(1, z)?)
    }

    pub fn b(&self, z: &Scalar) -> Result<Scalar> {
        Ok(self.def.br(1, &z.inverse()?)?)
    }

    pub fn c(&self, _z: &Scalar) -> Scalar {
        self.def.bq2().clone()
    }
}

fn ratio_bracket(def: &Deformation, k: i32, num: &Scalar, den: &Scalar) -> Result<Scalar> {
    Ok(def.br(k, &num.try_div(den)?)?)
}

fn divide(num: &Scalar, den: &Scalar, what: &str) -> Result<Scalar> {
    if den.is_zero() {
        return Err(DetformError::PoleEncountered(what.to_string()));
    }
    Ok(num.try_div(den)?)
}

/// `f(z, w) = [q w/z]/[w/z]`.
pub fn f_fn(def: &Deformation, z: &Scalar, w: &Scalar) -> Result<Scalar> {
    divide(
        &ratio_bracket(def, 1, w, z)?,
        &ratio_bracket(def, 0, w, z)?,
        "[w/z]",
    )
}

/// `g(z, w) = [q]/[w/z]`.
pub fn g_fn(def: &Deformation, z: &Scalar, w: &Scalar) -> Result<Scalar> {
    divide(def.bq(), &ratio_bracket(def, 0, w, z)?, "[w/z]")
}

/// Slavnov's determinant for `⟨∧|∏C(z_j) ∏B(ζ_j)|∧⟩`, with `z` on shell at twist π.
pub fn slavnov(roots: &[Scalar], zeta: &[Scalar], params: &ModelParams) -> Result<Scalar> {
    if roots.len() != zeta.len() {
        return Err(DetformError::LengthMismatch(roots.len(), zeta.len()));
    }
    let def = params.def();
    let vac = VacuumFns::new(params);
    let n = roots.len();
    let f = |a: &Scalar, b: &Scalar| f_fn(def, a, b);
    let g = |a: &Scalar, b: &Scalar| g_fn(def, a, b);

    let mut pre = Scalar::one();
    for j in 0..n {
        pre = pre.try_mul(&vac.d(&roots[j])?)?.try_mul(&vac.d(&zeta[j])?)?;
        for k in 0..j {
            pre = pre
                .try_mul(&g(&roots[j], &roots[k])?)?
                .try_mul(&g(&zeta[k], &zeta[j])?)?;
        }
        for k in 0..n {
            pre = pre.try_mul(&divide(
                &f(&roots[j], &zeta[k])?,
                &g(&roots[j], &zeta[k])?,
                "g(z_j, ζ_k)",
            )?)?;
        }
    }
    if pre.is_zero() {
        return Ok(pre);
    }

    let phase = match params.twist() {
        Twist::Pi => Scalar::from_int(-1),
        Twist::Zero => Scalar::one(),
    };
    let mut m = Matrix::zeros(n, n);
    for k in 0..n {
        let zk = &zeta[k];
        let mut ratio = divide(&vac.a(zk)?, &vac.d(zk)?, "d(ζ_k)")?;
        for zm in roots {
            ratio = ratio.try_mul(&divide(&f(zk, zm)?, &f(zm, zk)?, "f(z_m, ζ_k)")?)?;
        }
        for j in 0..n {
            let zj = &roots[j];
            let g1 = g(zj, zk)?;
            let first = divide(&g1.try_mul(&g1)?, &f(zj, zk)?, "f(z_j, ζ_k)")?.try_mul(&phase)?;
            let g2 = g(zk, zj)?;
            let second =
                divide(&g2.try_mul(&g2)?, &f(zk, zj)?, "f(ζ_k, z_j)")?.try_mul(&ratio)?;
            m.set(j, k, first.try_sub(&second)?);
        }
    }
    Ok(pre.try_mul(&determinant(&m)?)?)
}

/// `⟨∧|∏C(z_j) ∏B(ζ_j)|∧⟩` by direct operator application.
pub fn scalar_product_direct(
    roots: &[Scalar],
    zeta: &[Scalar],
    params: &ModelParams,
) -> Result<Scalar> {
    let right = bethe_state(zeta, params)?;
    let out = apply_c_string(roots, params, &right)?;
    Ok(out.get(&SpinState::uniform(params.n(), Spin::Up)))
}

/// The Izergin-Korepin determinant `Z_IK(ζ; w)`.
pub fn ik_determinant(zeta: &[Scalar], w: &[Scalar], def: &Deformation) -> Result<Scalar> {
    let n = zeta.len();
    if w.len() != n {
        return Err(DetformError::LengthMismatch(n, w.len()));
    }
    let wt = SixVertexWeights::new(def);
    let mut numer = Scalar::one();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let z = zeta[j].try_div(&w[k])?;
            let ab = wt.a(&z)?.try_mul(&wt.b(&z)?)?;
            numer = numer.try_mul(&ab)?;
            m.set(j, k, divide(&wt.c(&z), &ab, "a(ζ_j/w_k) b(ζ_j/w_k)")?);
        }
    }
    let mut denom = Scalar::one();
    for j in 0..n {
        for k in j + 1..n {
            denom = denom
                .try_mul(&ratio_bracket(def, 0, &zeta[j], &zeta[k])?)?
                .try_mul(&ratio_bracket(def, 0, &w[k], &w[j])?)?;
        }
    }
    if denom.is_zero() {
        return Err(DetformError::CoincidentParameters);
    }
    Ok(numer.try_div(&denom)?.try_mul(&determinant(&m)?)?)
}

fn inverted(params: &ModelParams) -> Result<ModelParams> {
    let w: Vec<Scalar> = params
        .w()
        .iter()
        .map(Scalar::inverse)
        .collect::<std::result::Result<_, _>>()?;
    Ok(params.with_w(w)?)
}

/// `Z = Σ_σ Ψ̃_σ(w⁻¹) Ψ̃_σ(w)` by summing components.
pub fn partition_z(params: &ModelParams) -> Result<Scalar> {
    let left = renormalised_vector(&inverted(params)?)?;
    let right = renormalised_vector(params)?;
    Ok(left.dot(&right))
}

/// `[q²]^{−N} Z_IK(w; w)`.
pub fn partition_z_ik(params: &ModelParams) -> Result<Scalar> {
    let def = params.def();
    let z = ik_determinant(params.w(), params.w(), def)?;
    Ok(z.try_mul(&def.bq2().pow(-(params.n() as i32))?)?)
}

fn ordered_brackets(def: &Deformation, w: &[Scalar]) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for j in 0..w.len() {
        for k in j + 1..w.len() {
            acc = acc.try_mul(&ratio_bracket(def, 1, &w[k], &w[j])?)?;
        }
    }
    Ok(acc)
}

/// Closed form of `Ψ̃_{⇑ⁿ⇓ⁿ}` for `N = 2n`.
pub fn simple_component_even(params: &ModelParams) -> Result<Scalar> {
    let n2 = params.n();
    if n2 % 2 != 0 {
        return Err(DetformError::WrongParity(n2));
    }
    let def = params.def();
    let n = n2 / 2;
    let (left, right) = params.w().split_at(n);
    let ratio = def.bq().try_div(def.bq2())?.pow(n as i32)?;
    Ok(ratio
        .try_mul(&ordered_brackets(def, left)?)?
        .try_mul(&ordered_brackets(def, right)?)?
        .try_mul(&ik_determinant(left, right, def)?)?)
}

/// Closed form of `Ψ̃_{⇑ⁿ0⇓ⁿ}` for `N = 2n + 1`.
pub fn simple_component_odd(params: &ModelParams) -> Result<Scalar> {
    let len = params.n();
    if len % 2 != 1 {
        return Err(DetformError::WrongParity(len));
    }
    let def = params.def();
    let n = len / 2;
    let w = params.w();
    let mid = &w[n];
    let mut factor = Scalar::one();
    for wj in &w[..n] {
        factor = factor.try_mul(&ratio_bracket(def, 1, mid, wj)?)?;
    }
    for wj in &w[n + 1..] {
        factor = factor.try_mul(&ratio_bracket(def, 1, wj, mid)?)?;
    }
    if n == 0 {
        return Ok(factor);
    }
    let mut rest = w.to_vec();
    rest.remove(n);
    Ok(factor.try_mul(&simple_component_even(&params.with_w(rest)?)?)?)
}

/// `Ψ̃_{⇑ⁿ⇓ⁿ}` through the length-`n` matrix element `⟨∨|∏_{j=1}^{2n} B(w_j)|∧⟩`
/// on the chain with inhomogeneities `w_{n+1}, …, w_{2n}`.
pub fn component_from_b(params: &ModelParams) -> Result<Scalar> {
    let n2 = params.n();
    if n2 % 2 != 0 {
        return Err(DetformError::WrongParity(n2));
    }
    let def = params.def();
    let n = n2 / 2;
    let w = params.w();
    let short = params.with_w(w[n..].to_vec())?;
    let v = apply_b_string(w, &short, &StateVector::reference(n))?;
    let element = v.get(&SpinState::uniform(n, Spin::Down));
    let mut numer = Scalar::one();
    for wj in w {
        for wk in &w[..n] {
            numer = numer.try_mul(&ratio_bracket(def, -1, wj, wk)?)?;
        }
    }
    let mut denom = def.bq().try_mul(def.bq2())?.pow(n as i32)?;
    for j in 0..n2 {
        for k in j + 1..n2 {
            denom = denom.try_mul(&ratio_bracket(def, 1, &w[j], &w[k])?)?;
        }
    }
    Ok(numer.try_mul(&divide(&element, &denom, "[q w_j/w_k]")?)?)
}
