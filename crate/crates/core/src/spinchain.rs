//! The homogeneous spin-1 chain: spin operators, the twisted Hamiltonian and the zero-energy state.

use serde::Serialize;
use thiserror::Error;

use crate::aba::{
    aux_element, renormalised_vector, shift_apply, shift_inverse_apply, transfer2_apply, AbaError,
    LocalOp, Spin, SpinState, StateVector,
};
use crate::asm::{gen_poly, AsmError};
use crate::exec::Exec;
use crate::field::rat::{int, rat};
use crate::field::{halfpoly_mul, FieldError, HalfPowerPoly, LaurentFit, Rat, Scalar};
use crate::linalg::{LinalgError, Matrix};
use crate::params::{Deformation, ModelParams, ParamError, Twist};

#[derive(Debug, Error, PartialEq)]
pub enum SpinchainError {
    #[error("Hamiltonian output has a nonzero imaginary part")]
    ImaginaryResidue,
    #[error("the chain needs at least two sites")]
    TooShort,
    #[error("singlet component {0} has non-integer coefficients")]
    NonIntegerCoefficient(String),
    #[error("singlet component {0} has odd powers of x^(1/2)")]
    OddSupportResidue(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Aba(#[from] AbaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Asm(#[from] AsmError),
}

type Result<T> = std::result::Result<T, SpinchainError>;

/// Spin-1 operators in the basis `⇑, 0, ⇓`. The first two are stored doubled, `t^a = √2 s^a`,
/// so that every entry lies in Q(i).
#[derive(Clone, Debug, PartialEq)]
pub struct SpinOps {
    pub t1: Matrix,
    pub t2: Matrix,
    pub s3: Matrix,
}

impl Default for SpinOps {
    fn default() -> Self {
        SpinOps::new()
    }
}

impl SpinOps {
    pub fn new() -> Self {
        let i = Scalar::i();
        let one = Scalar::one();
        let mut t1 = Matrix::zeros(3, 3);
        let mut t2 = Matrix::zeros(3, 3);
        for k in 0..2 {
            t1.set(k, k + 1, one.clone());
            t1.set(k + 1, k, one.clone());
            t2.set(k, k + 1, -i.clone());
            t2.set(k + 1, k, i.clone());
        }
        let mut s3 = Matrix::zeros(3, 3);
        s3.set(0, 0, Scalar::one());
        s3.set(2, 2, Scalar::from_int(-1));
        SpinOps { t1, t2, s3 }
    }

    /// `(matrix, doubled)` for `a = 1, 2, 3`.
    fn op(&self, a: usize) -> (&Matrix, bool) {
        match a {
            1 => (&self.t1, true),
            2 => (&self.t2, true),
            _ => (&self.s3, false),
        }
    }
}

fn half_pow(k: usize) -> Rat {
    rat(1, 1 << k)
}

/// Two-site operator of the bulk bond, as a 9×9 matrix on `site_j ⊗ site_{j+1}`.
pub fn bond_matrix(x: &Rat) -> Matrix {
    let ops = SpinOps::new();
    let id = Matrix::identity(3);
    let j = [int(1), int(1), (x * x - int(2)) / int(2)];
    let a_off = |a: usize, b: usize| -> Rat {
        if a == b {
            j[a - 1].clone()
        } else if a + b == 3 {
            int(1)
        } else {
            x - int(1)
        }
    };
    let mut h = Matrix::zeros(9, 9);
    let add = |h: &mut Matrix, m: Matrix, c: &Rat| {
        *h = h.add(&m.scale(&Scalar::rational(c.clone()))).expect("same shape");
    };
    for a in 1..=3 {
        let (sa, da) = ops.op(a);
        let doubled = usize::from(da);
        add(&mut h, sa.kron(sa), &(&j[a - 1] * half_pow(doubled)));
        let sq = sa.mul(sa).expect("3x3");
        add(&mut h, sq.kron(&id), &(&j[a - 1] * int(2) * half_pow(doubled)));
        for b in 1..=3 {
            let (sb, db) = ops.op(b);
            let ab = sa.mul(sb).expect("3x3");
            let c = usize::from(da) + usize::from(db);
            add(&mut h, ab.kron(&ab), &(-a_off(a, b) * half_pow(c)));
        }
    }
    h
}

fn omega_matrix() -> Matrix {
    let mut m = Matrix::identity(3);
    m.set(0, 0, Scalar::from_int(-1));
    m.set(2, 2, Scalar::from_int(-1));
    m
}

/// The bond across the boundary, `(1 ⊗ Ω) h (1 ⊗ Ω)`.
pub fn boundary_bond_matrix(x: &Rat) -> Matrix {
    let conj = Matrix::identity(3).kron(&omega_matrix());
    conj.mul(&bond_matrix(x))
        .and_then(|m| m.mul(&conj))
        .expect("9x9")
}

fn pair_entries(m: &Matrix) -> Vec<(usize, usize, usize, usize, Scalar)> {
    let mut out = Vec::new();
    for r in 0..9 {
        for c in 0..9 {
            let v = m.get(r, c);
            if !v.is_zero() {
                out.push((r / 3, r % 3, c / 3, c % 3, v.clone()));
            }
        }
    }
    out
}

/// Applies the twisted spin-1 Hamiltonian at anisotropy `x = q + q⁻¹`, twist π.
pub fn hamiltonian_apply(v: &StateVector, def: &Deformation) -> Result<StateVector> {
    let n = v.n();
    if n < 2 {
        return Err(SpinchainError::TooShort);
    }
    let x = def.x();
    let bulk = pair_entries(&bond_matrix(&x));
    let edge = pair_entries(&boundary_bond_matrix(&x));
    let mut out = StateVector::zero(n);
    for j in 0..n - 1 {
        out = out.add(&v.apply_pair(j, j + 1, &bulk));
    }
    out = out.add(&v.apply_pair(n - 1, 0, &edge));
    if out.iter().any(|(_, c)| !c.is_real()) {
        return Err(SpinchainError::ImaginaryResidue);
    }
    Ok(out)
}

/// Dense Hamiltonian on all `3^N` basis states.
pub fn hamiltonian_matrix(n: usize, def: &Deformation) -> Result<Matrix> {
    let basis: Vec<SpinState> = SpinState::all(n).collect();
    let dim = basis.len();
    let mut m = Matrix::zeros(dim, dim);
    for (c, s) in basis.iter().enumerate() {
        let col = hamiltonian_apply(&StateVector::basis(*s), def)?;
        for (t, v) in col.iter() {
            m.set(t.index() as usize, c, v.clone());
        }
    }
    Ok(m)
}

/// `S′ = S Ω_N` at twist π.
pub fn twisted_translation_apply(v: &StateVector) -> StateVector {
    shift_apply(Twist::Pi, v)
}

/// Total magnetisation `Σ_j s³_j`.
pub fn magnetisation_apply(v: &StateVector) -> StateVector {
    v.relabel(|s| (s, Scalar::from_int(s.magnetisation() as i64)))
}

/// `N + ([q²]/2) T^{(2)}(1)⁻¹ T^{(2)′}(1)` at the homogeneous point, with the derivative
/// read off an exact Laurent fit of `z ↦ T^{(2)}(z) v` on the support `[−2N, 2N]`.
pub fn log_derivative_hamiltonian(v: &StateVector, def: &Deformation, exec: Exec) -> Result<StateVector> {
    let n = v.n();
    let params = ModelParams::homogeneous(def.clone(), n)?;
    let width = 4 * n;
    let points: Vec<Scalar> = (2..(width as i64 + 5)).map(Scalar::from_int).collect();
    let fit = LaurentFit::new(&points, -2 * n as i64, width)?;
    let images: Vec<StateVector> = exec
        .map(points.clone(), |z| transfer2_apply(&z, &params, v))
        .into_iter()
        .collect::<std::result::Result<_, _>>()?;
    let mut deriv = StateVector::zero(n);
    for s in SpinState::all(n) {
        let values: Vec<Scalar> = images.iter().map(|im| im.get(&s)).collect();
        let poly = fit.fit(&values)?;
        let d = poly.derivative().evaluate(&Scalar::one())?;
        deriv = deriv.add(&StateVector::basis(s).scale(&d));
    }
    let norm = def.bq().try_mul(def.bq2())?.pow(-(n as i32))?;
    let t_inv_deriv = shift_inverse_apply(Twist::Pi, &deriv).scale(&norm);
    let half = def.bq2().scale(&rat(1, 2));
    Ok(v
        .scale(&Scalar::from_int(n as i64))
        .add(&t_inv_deriv.scale(&half)))
}

/// `ρ(x)` on `auxiliary ⊗ site`, entries in `y = x^{1/2}`.
pub fn rho() -> LocalOp<HalfPowerPoly> {
    let y = HalfPowerPoly::y;
    let c = |v: i64| HalfPowerPoly::constant(int(v));
    // (aux_out, site_out, aux_in, site_in); aux ↑ = 0, ↓ = 1
    LocalOp::from_entries(
        2,
        [
            (0, 0, 0, 0, c(1)),
            (0, 1, 1, 0, y()),
            (0, 2, 0, 2, c(-1)),
            (0, 2, 1, 1, y()),
            (1, 0, 0, 1, y()),
            (1, 0, 1, 0, c(-1)),
            (1, 1, 0, 2, y()),
            (1, 2, 1, 2, c(1)),
        ],
    )
}

/// `β(x) = ⟨↑|ρ_N ⋯ ρ_1|↓⟩` applied to a symbolic vector.
pub fn beta_apply(v: &StateVector<HalfPowerPoly>) -> StateVector<HalfPowerPoly> {
    let ops = vec![rho(); v.n()];
    aux_element(&ops, 0, 1, v, -1)
}

/// The zero-energy state `x^{−N/2} β(x)^N |∧⟩` with entries in Z[x].
pub fn singlet(n: usize) -> Result<StateVector<HalfPowerPoly>> {
    let mut v: StateVector<HalfPowerPoly> = StateVector::reference(n);
    for _ in 0..n {
        v = beta_apply(&v);
    }
    let out = v.try_map(|p| p.div_y_pow(n))?;
    for (s, p) in out.iter() {
        if !p.is_even() {
            return Err(SpinchainError::OddSupportResidue(s.to_string()));
        }
        if !p.has_integer_coefficients() {
            return Err(SpinchainError::NonIntegerCoefficient(s.to_string()));
        }
    }
    Ok(out)
}

/// Evaluates a symbolic state at a rational `x`.
pub fn evaluate_singlet(state: &StateVector<HalfPowerPoly>, x: &Rat) -> Result<StateVector> {
    Ok(state.try_map(|p| p.eval_x(x).map(Scalar::rational))?)
}

/// `Σ_σ Φ_σ(x)²`.
pub fn singlet_norm(state: &StateVector<HalfPowerPoly>) -> HalfPowerPoly {
    state.iter().fold(HalfPowerPoly::default(), |acc, (_, p)| {
        let sq = halfpoly_mul(p, p);
        HalfPowerPoly::new(
            (0..acc.coeffs().len().max(sq.coeffs().len()))
                .map(|k| acc.coeff(k) + sq.coeff(k))
                .collect(),
        )
    })
}

/// `⇑ⁿ⇓ⁿ` for even `N = 2n`, `⇑ⁿ0⇓ⁿ` for odd `N = 2n + 1`.
pub fn distinguished_state(n_sites: usize) -> SpinState {
    let half = n_sites / 2;
    let mut spins = vec![Spin::Up; half];
    if n_sites % 2 == 1 {
        spins.push(Spin::Zero);
    }
    spins.extend(vec![Spin::Down; half]);
    SpinState::from_spins(&spins)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalisationAudit {
    pub sites: usize,
    pub component: SpinState,
    pub constant_term: String,
    pub expected_constant: u64,
    pub degree_in_t: usize,
    pub expected_degree: usize,
    pub equals_gen_poly: bool,
    pub pass: bool,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Checks the distinguished component against `A_n(x²)`, its constant term `n!` and its degree.
pub fn singlet_normalisation_audit(state: &StateVector<HalfPowerPoly>) -> Result<NormalisationAudit> {
    let sites = state.n();
    let n = sites / 2;
    let component = distinguished_state(sites);
    let value = state.get(&component);
    let xs = value.to_x_coeffs()?;
    let constant = xs.first().cloned().unwrap_or_else(|| int(0));
    let degree_in_t = value.degree().map_or(0, |d| d / 4);
    let expected_degree = n.saturating_sub(1).pow(2) / 4;
    let equals_gen_poly = n >= 1 && value == gen_poly(n)?.at_x_squared();
    let expected_constant = factorial(n);
    let pass = equals_gen_poly
        && constant == int(expected_constant as i64)
        && degree_in_t == expected_degree;
    Ok(NormalisationAudit {
        sites,
        component,
        constant_term: crate::field::rat::rat_to_string(&constant),
        expected_constant,
        degree_in_t,
        expected_degree,
        equals_gen_poly,
        pass,
    })
}

/// `Ψ̃(1, …, 1) = [q]^{N(N−1)/2} Φ(q + q⁻¹)`.
pub fn homogeneous_limit_check(n: usize, def: &Deformation) -> Result<bool> {
    let params = ModelParams::homogeneous(def.clone(), n)?;
    let psi = renormalised_vector(&params)?;
    let phi = evaluate_singlet(&singlet(n)?, &def.x())?;
    let factor = def.bq().pow((n * (n - 1) / 2) as i32)?;
    Ok(psi == phi.scale(&factor))
}
