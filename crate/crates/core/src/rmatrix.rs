//! R-matrices of the six-vertex, mixed spin-1/2 / spin-1 and nineteen-vertex models.
//!
//! Bases: spin-1/2 `{↑, ↓}` and spin-1 `{⇑, 0, ⇓}`, both in that order; a pair of sites is
//! indexed as `dim_right * left + right`. Entries are `⟨out|R|in⟩` with `out` the row.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::field::{FieldError, Scalar};
use crate::linalg::Matrix;
use crate::params::Deformation;

/// Operator on a pair of sites.
#[derive(Clone, Debug, PartialEq)]
pub struct RMat {
    dim_left: usize,
    dim_right: usize,
    mat: Matrix,
}

impl RMat {
    pub fn new(dim_left: usize, dim_right: usize, mat: Matrix) -> Self {
        let dim = dim_left * dim_right;
        assert_eq!((mat.rows(), mat.cols()), (dim, dim), "RMat shape");
        RMat {
            dim_left,
            dim_right,
            mat,
        }
    }

    pub fn dim_left(&self) -> usize {
        self.dim_left
    }

    pub fn dim_right(&self) -> usize {
        self.dim_right
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    /// `⟨out_l out_r|R|in_l in_r⟩`.
    pub fn entry(&self, out_l: usize, out_r: usize, in_l: usize, in_r: usize) -> &Scalar {
        self.mat
            .get(out_l * self.dim_right + out_r, in_l * self.dim_right + in_r)
    }

    /// Nonzero entries as `(out_l, out_r, in_l, in_r, value)`.
    pub fn nonzeros(&self) -> Vec<(usize, usize, usize, usize, Scalar)> {
        let dim = self.dim_left * self.dim_right;
        let mut out = Vec::new();
        for r in 0..dim {
            for c in 0..dim {
                let v = self.mat.get(r, c);
                if !v.is_zero() {
                    out.push((
                        r / self.dim_right,
                        r % self.dim_right,
                        c / self.dim_right,
                        c % self.dim_right,
                        v.clone(),
                    ));
                }
            }
        }
        out
    }

    /// Conjugation by the swap of the two factors: `⟨j i|R'|l k⟩ = ⟨i j|R|k l⟩`.
    pub fn swap_spaces(&self) -> RMat {
        let (a, b) = (self.dim_left, self.dim_right);
        let mut m = Matrix::zeros(a * b, a * b);
        for (ol, or, il, ir, v) in self.nonzeros() {
            m.set(or * a + ol, ir * a + il, v);
        }
        RMat::new(b, a, m)
    }

    /// Transpose in the right factor only.
    pub fn partial_transpose_right(&self) -> RMat {
        let b = self.dim_right;
        let mut m = Matrix::zeros(self.mat.rows(), self.mat.cols());
        for (ol, or, il, ir, v) in self.nonzeros() {
            m.set(ol * b + ir, il * b + or, v);
        }
        RMat::new(self.dim_left, b, m)
    }

    /// `Ř = P R`, defined for equal dimensions.
    pub fn check(&self) -> RMat {
        assert_eq!(self.dim_left, self.dim_right, "Ř needs equal dimensions");
        let p = permutation(self.dim_left, self.dim_right);
        RMat::new(
            self.dim_left,
            self.dim_right,
            p.mul(&self.mat).expect("square shapes agree"),
        )
    }
}

impl Serialize for RMat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let dim = self.mat.rows();
        let mut seq = serializer.serialize_seq(Some(dim))?;
        for r in 0..dim {
            let row: Vec<&Scalar> = (0..dim).map(|c| self.mat.get(r, c)).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// `P|i⟩⊗|j⟩ = |j⟩⊗|i⟩` from `C^a ⊗ C^b` to `C^b ⊗ C^a`.
pub fn permutation(a: usize, b: usize) -> Matrix {
    let mut m = Matrix::zeros(a * b, a * b);
    for i in 0..a {
        for j in 0..b {
            m.set(j * a + i, i * b + j, Scalar::one());
        }
    }
    m
}

/// Six-vertex R-matrix on `C² ⊗ C²`.
pub fn r11(def: &Deformation, z: &Scalar) -> Result<RMat, FieldError> {
    let mut m = Matrix::zeros(4, 4);
    let qz = def.br(1, z)?;
    let bz = def.br(0, z)?;
    m.set(0, 0, qz.clone());
    m.set(3, 3, qz);
    m.set(1, 1, bz.clone());
    m.set(2, 2, bz);
    m.set(1, 2, def.bq().clone());
    m.set(2, 1, def.bq().clone());
    Ok(RMat::new(2, 2, m))
}

/// Mixed R-matrix on `C² ⊗ C³`.
pub fn r12(def: &Deformation, z: &Scalar) -> Result<RMat, FieldError> {
    let mut m = Matrix::zeros(6, 6);
    let diag = [2, 1, 0, 0, 1, 2];
    for (k, &p) in diag.iter().enumerate() {
        m.set(k, k, def.br(p, z)?);
    }
    for (r, c) in [(1, 3), (3, 1), (2, 4), (4, 2)] {
        m.set(r, c, def.s().clone());
    }
    Ok(RMat::new(2, 3, m))
}

/// Mixed R-matrix on `C³ ⊗ C²`, the swapped `R^{(1,2)}` at the shifted argument `q⁻¹z`.
pub fn r21(def: &Deformation, z: &Scalar) -> Result<RMat, FieldError> {
    let shifted = def.q_pow(-1).try_mul(z)?;
    Ok(r12(def, &shifted)?.swap_spaces())
}

const UP: usize = 0;
const ZERO: usize = 1;
const DOWN: usize = 2;

fn pair(a: usize, b: usize) -> usize {
    3 * a + b
}

/// Nineteen-vertex R-matrix on `C³ ⊗ C³`.
pub fn r22(def: &Deformation, z: &Scalar) -> Result<RMat, FieldError> {
    let b = |k: i32| def.br(k, z);
    let (bm1, b0, b1, b2) = (b(-1)?, b(0)?, b(1)?, b(2)?);
    let (bq, bq2) = (def.bq(), def.bq2());
    let mut m = Matrix::zeros(9, 9);
    let mut put = |out: usize, inp: usize, v: Scalar| m.set(out, inp, v);

    let top = &b1 * &b2;
    put(pair(UP, UP), pair(UP, UP), top.clone());
    put(pair(DOWN, DOWN), pair(DOWN, DOWN), top);

    let opposite = &bm1 * &b0;
    put(pair(UP, DOWN), pair(UP, DOWN), opposite.clone());
    put(pair(DOWN, UP), pair(DOWN, UP), opposite);
    put(pair(UP, DOWN), pair(DOWN, UP), bq * bq2);
    put(pair(DOWN, UP), pair(UP, DOWN), bq * bq2);

    for (x, y) in [(UP, ZERO), (ZERO, UP), (ZERO, DOWN), (DOWN, ZERO)] {
        put(pair(x, y), pair(x, y), &b0 * &b1);
        put(pair(y, x), pair(x, y), bq2 * &b1);
    }

    let flip = bq2 * &b0;
    for ud in [pair(UP, DOWN), pair(DOWN, UP)] {
        put(pair(ZERO, ZERO), ud, flip.clone());
        put(ud, pair(ZERO, ZERO), flip.clone());
    }
    put(pair(ZERO, ZERO), pair(ZERO, ZERO), &b0 * &b1 + bq * bq2);
    Ok(RMat::new(3, 3, m))
}

/// `R^{(m,n)}(z)` with `m, n ∈ {1, 2}` (1 for spin-1/2, 2 for spin-1).
pub fn rmat(def: &Deformation, m: u8, n: u8, z: &Scalar) -> Result<RMat, FieldError> {
    match (m, n) {
        (1, 1) => r11(def, z),
        (1, 2) => r12(def, z),
        (2, 1) => r21(def, z),
        (2, 2) => r22(def, z),
        _ => panic!("rmat labels must be 1 or 2, got ({m}, {n})"),
    }
}

fn dim_of(m: u8) -> usize {
    if m == 1 {
        2
    } else {
        3
    }
}

/// Embeds an operator acting on factors `i < j` of a triple product with dimensions `dims`.
pub fn embed3(r: &RMat, i: usize, j: usize, dims: [usize; 3]) -> Matrix {
    assert!(i < j && j < 3);
    assert_eq!((r.dim_left, r.dim_right), (dims[i], dims[j]));
    let total = dims[0] * dims[1] * dims[2];
    let index = |t: [usize; 3]| (t[0] * dims[1] + t[1]) * dims[2] + t[2];
    let spectator = 3 - i - j;
    let mut m = Matrix::zeros(total, total);
    let nz = r.nonzeros();
    for k in 0..dims[spectator] {
        for (ol, or, il, ir, v) in &nz {
            let mut out = [0; 3];
            let mut inp = [0; 3];
            out[spectator] = k;
            inp[spectator] = k;
            out[i] = *ol;
            out[j] = *or;
            inp[i] = *il;
            inp[j] = *ir;
            m.set(index(out), index(inp), v.clone());
        }
    }
    m
}

/// `R₁₂(z/w) R₁₃(z) R₂₃(w) = R₂₃(w) R₁₃(z) R₁₂(z/w)` on the triple product.
pub fn check_ybe(def: &Deformation, m: u8, n: u8, p: u8, z: &Scalar, w: &Scalar) -> bool {
    let run = || -> Result<bool, FieldError> {
        let zw = z.try_div(w)?;
        let dims = [dim_of(m), dim_of(n), dim_of(p)];
        let r12 = embed3(&rmat(def, m, n, &zw)?, 0, 1, dims);
        let r13 = embed3(&rmat(def, m, p, z)?, 0, 2, dims);
        let r23 = embed3(&rmat(def, n, p, w)?, 1, 2, dims);
        let prod = |a: &Matrix, b: &Matrix, c: &Matrix| {
            a.mul(b).and_then(|ab| ab.mul(c)).expect("shapes agree")
        };
        Ok(prod(&r12, &r13, &r23) == prod(&r23, &r13, &r12))
    };
    run().unwrap_or(false)
}

/// `[q⁻¹z][q²z]`, the eigenvalue on the antisymmetric part of the fused product.
pub fn fusion_antisymmetric_value(def: &Deformation, z: &Scalar) -> Result<Scalar, FieldError> {
    def.br(-1, z)?.try_mul(&def.br(2, z)?)
}

/// The product `X = R^{(1,2)}_{23}(z) R^{(1,2)}_{13}(q⁻¹z)` on `C² ⊗ C² ⊗ C³`.
pub fn fused_product(def: &Deformation, z: &Scalar) -> Result<Matrix, FieldError> {
    let dims = [2, 2, 3];
    let shifted = def.q_pow(-1).try_mul(z)?;
    let a = embed3(&r12(def, z)?, 1, 2, dims);
    let b = embed3(&r12(def, &shifted)?, 0, 2, dims);
    Ok(a.mul(&b).expect("shapes agree"))
}

/// Projection `C² ⊗ C² → C³` and embedding `C³ → C² ⊗ C²` onto the symmetric part, with
/// gauge factors chosen inside Q(s) so that `F G = 1`.
pub fn fusion_maps(def: &Deformation) -> Result<(Matrix, Matrix), FieldError> {
    let s = def.s();
    let f0 = s.try_div(def.bq2())?;
    let g0 = s.try_div(&def.bq().scale(&crate::field::rat::int(2)))?;
    let mut f = Matrix::zeros(3, 4);
    f.set(0, 0, Scalar::one());
    f.set(1, 1, f0.clone());
    f.set(1, 2, f0);
    f.set(2, 3, Scalar::one());
    let mut g = Matrix::zeros(4, 3);
    g.set(0, 0, Scalar::one());
    g.set(1, 1, g0.clone());
    g.set(2, 1, g0);
    g.set(3, 2, Scalar::one());
    Ok((f, g))
}

/// Fusion of two mixed R-matrices into `R^{(2,2)}`.
///
/// Checks `(F ⊗ 1) X (G ⊗ 1) = R^{(2,2)}(z)` and that `X` maps `(|↑↓⟩ − |↓↑⟩) ⊗ v` to
/// `[q⁻¹z][q²z]` times itself, which together are the block-triangular decomposition.
pub fn check_fusion_r22(def: &Deformation, z: &Scalar) -> bool {
    let run = || -> Result<bool, FieldError> {
        let x = fused_product(def, z)?;
        let (f, g) = fusion_maps(def)?;
        let id3 = Matrix::identity(3);
        let upper = f
            .kron(&id3)
            .mul(&x)
            .and_then(|m| m.mul(&g.kron(&id3)))
            .expect("shapes agree");
        if &upper != r22(def, z)?.matrix() {
            return Ok(false);
        }
        let mut anti = Matrix::zeros(4, 1);
        anti.set(1, 0, Scalar::one());
        anti.set(2, 0, Scalar::from_int(-1));
        let anti = anti.kron(&id3);
        let image = x.mul(&anti).expect("shapes agree");
        Ok(image == anti.scale(&fusion_antisymmetric_value(def, z)?))
    };
    run().unwrap_or(false)
}

fn sigma2() -> Matrix {
    let mut m = Matrix::zeros(2, 2);
    m.set(0, 1, -Scalar::i());
    m.set(1, 0, Scalar::i());
    m
}

/// Crossing: `R^{(1,2)}(z)^{t₂} = −(σ² ⊗ 1) R^{(1,2)}(q⁻²z⁻¹) (σ² ⊗ 1)`.
pub fn crossing_transpose_check(def: &Deformation, z: &Scalar) -> bool {
    let run = || -> Result<bool, FieldError> {
        let lhs = r12(def, z)?.partial_transpose_right();
        let arg = def.q_pow(-2).try_div(z)?;
        let sig = sigma2().kron(&Matrix::identity(3));
        let rhs = sig
            .mul(r12(def, &arg)?.matrix())
            .and_then(|m| m.mul(&sig))
            .expect("shapes agree")
            .scale(&Scalar::from_int(-1));
        Ok(lhs.matrix() == &rhs)
    };
    run().unwrap_or(false)
}

/// `R(1) = [q][q²] P`.
pub fn check_r22_permutation_point(def: &Deformation) -> bool {
    let Ok(r) = r22(def, &Scalar::one()) else {
        return false;
    };
    r.matrix() == &permutation(3, 3).scale(&(def.bq() * def.bq2()))
}

/// `|s⟩ = |⇑⇓⟩ + |⇓⇑⟩ − |00⟩`.
pub fn singlet_pair() -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); 9];
    v[pair(UP, DOWN)] = Scalar::one();
    v[pair(DOWN, UP)] = Scalar::one();
    v[pair(ZERO, ZERO)] = Scalar::from_int(-1);
    v
}

/// `R(q⁻¹) = [q][q²] |s⟩⟨s|`, and the matrix has rank one.
pub fn check_r22_rank_one_point(def: &Deformation) -> bool {
    let Ok(r) = r22(def, &def.q_pow(-1)) else {
        return false;
    };
    let s = singlet_pair();
    let c = def.bq() * def.bq2();
    let outer = Matrix::from_fn(9, 9, |i, j| &c * &s[i] * &s[j]);
    r.matrix() == &outer && r.matrix().rank_at_most_one()
}

/// `R(z) R(z⁻¹) = r(z) r(z⁻¹)` with `r(z) = [q/z][q²z]`.
pub fn check_r22_inversion(def: &Deformation, z: &Scalar) -> bool {
    let run = || -> Result<bool, FieldError> {
        let zi = z.inverse()?;
        let r = |u: &Scalar| -> Result<Scalar, FieldError> {
            def.br(1, &u.inverse()?)?.try_mul(&def.br(2, u)?)
        };
        let lhs = r22(def, z)?.matrix().mul(r22(def, &zi)?.matrix()).expect("9x9");
        let c = r(z)?.try_mul(&r(&zi)?)?;
        Ok(lhs == Matrix::identity(9).scale(&c))
    };
    run().unwrap_or(false)
}

/// Magnetisation (in units where `⇑ = 1, 0 = 0, ⇓ = −1`) of a spin-1 index.
pub fn spin1_weight(k: usize) -> i32 {
    1 - k as i32
}

/// All entries between states of different total magnetisation vanish.
pub fn conserves_magnetisation(r: &RMat) -> bool {
    let weight = |dim: usize, k: usize| -> i32 {
        if dim == 2 {
            1 - 2 * k as i32
        } else {
            2 * spin1_weight(k)
        }
    };
    r.nonzeros().iter().all(|(ol, or, il, ir, _)| {
        weight(r.dim_left, *ol) + weight(r.dim_right, *or)
            == weight(r.dim_left, *il) + weight(r.dim_right, *ir)
    })
}

pub fn is_symmetric(r: &RMat) -> bool {
    r.matrix() == &r.matrix().transpose()
}
