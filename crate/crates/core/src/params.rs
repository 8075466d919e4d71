//! Deformation parameter, model parameters and reproducible random draws.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::rat::{int, rat, rat_pow, rat_sqrt, rat_to_string};
use crate::field::{bracket, FieldError, Rat, Scalar};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("q = {0} is excluded: need q != 0 and q^4 != 1")]
    DegenerateQ(String),
    #[error("q = {0} makes Q(s, i) degenerate: +-(q + 1/q) is a rational square")]
    DegenerateExtension(String),
    #[error("expected {expected} inhomogeneities, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("inhomogeneity w_{0} is zero")]
    ZeroInhomogeneity(usize),
    #[error("site count must be positive")]
    EmptyChain,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Twist angle of the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Twist {
    Zero,
    Pi,
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Twist::Zero => write!(f, "0"),
            Twist::Pi => write!(f, "pi"),
        }
    }
}

/// The deformation parameter `q` together with the session constant `d = [q][q²]` and `s = √d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Deformation {
    q: Rat,
    qs: Scalar,
    d: Arc<Rat>,
    s: Scalar,
    bq: Scalar,
    bq2: Scalar,
}

fn rat_bracket(z: &Rat) -> Rat {
    z - z.recip()
}

impl Deformation {
    pub fn new(q: Rat) -> Result<Self, ParamError> {
        if q.is_zero() || rat_pow(&q, 4).is_one() {
            return Err(ParamError::DegenerateQ(rat_to_string(&q)));
        }
        let x = &q + q.recip();
        if rat_sqrt(&x).is_some() || rat_sqrt(&-&x).is_some() {
            return Err(ParamError::DegenerateExtension(rat_to_string(&q)));
        }
        let bq = rat_bracket(&q);
        let bq2 = rat_bracket(&(&q * &q));
        let d = Arc::new(&bq * &bq2);
        Ok(Deformation {
            qs: Scalar::rational(q.clone()),
            s: Scalar::sqrt_symbol(d.clone()),
            q,
            d,
            bq: Scalar::rational(bq),
            bq2: Scalar::rational(bq2),
        })
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn q_scalar(&self) -> &Scalar {
        &self.qs
    }

    pub fn q_pow(&self, k: i32) -> Scalar {
        Scalar::rational(rat_pow(&self.q, k))
    }

    /// `d = [q][q²]`.
    pub fn d(&self) -> &Rat {
        &self.d
    }

    pub fn d_arc(&self) -> &Arc<Rat> {
        &self.d
    }

    /// The symbol `s` with `s² = [q][q²]`.
    pub fn s(&self) -> &Scalar {
        &self.s
    }

    /// `[q]`.
    pub fn bq(&self) -> &Scalar {
        &self.bq
    }

    /// `[q²]`.
    pub fn bq2(&self) -> &Scalar {
        &self.bq2
    }

    /// `x = q + q⁻¹`.
    pub fn x(&self) -> Rat {
        &self.q + self.q.recip()
    }

    /// `[q^k z]`.
    pub fn br(&self, k: i32, z: &Scalar) -> Result<Scalar, FieldError> {
        bracket(&self.q_pow(k).try_mul(z)?)
    }
}

/// Site count, deformation, inhomogeneities and twist.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    n: usize,
    def: Deformation,
    w: Vec<Scalar>,
    twist: Twist,
}

impl ModelParams {
    pub fn new(def: Deformation, w: Vec<Rat>, twist: Twist) -> Result<Self, ParamError> {
        if w.is_empty() {
            return Err(ParamError::EmptyChain);
        }
        if let Some(j) = w.iter().position(Zero::is_zero) {
            return Err(ParamError::ZeroInhomogeneity(j + 1));
        }
        Ok(ModelParams {
            n: w.len(),
            def,
            w: w.into_iter().map(Scalar::rational).collect(),
            twist,
        })
    }

    /// Same deformation and twist, different inhomogeneities (which may be any scalars).
    pub fn with_w(&self, w: Vec<Scalar>) -> Result<Self, ParamError> {
        if w.is_empty() {
            return Err(ParamError::EmptyChain);
        }
        if let Some(j) = w.iter().position(Scalar::is_zero) {
            return Err(ParamError::ZeroInhomogeneity(j + 1));
        }
        Ok(ModelParams {
            n: w.len(),
            def: self.def.clone(),
            w,
            twist: self.twist,
        })
    }

    pub fn homogeneous(def: Deformation, n: usize) -> Result<Self, ParamError> {
        ModelParams::new(def, vec![Rat::one(); n], Twist::Pi)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn def(&self) -> &Deformation {
        &self.def
    }

    pub fn w(&self) -> &[Scalar] {
        &self.w
    }

    pub fn twist(&self) -> Twist {
        self.twist
    }

    pub fn describe(&self) -> String {
        let w: Vec<String> = self.w.iter().map(|x| x.to_string()).collect();
        format!(
            "n={} q={} w=[{}] twist={}",
            self.n,
            self.def.q(),
            w.join(","),
            self.twist
        )
    }
}

/// Seeded source of small generic rationals.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `p/r` with `p, r` uniform in `[1, 97]`.
    pub fn rational(&mut self) -> Rat {
        let p = self.rng.gen_range(1..=97);
        let r = self.rng.gen_range(1..=97);
        rat(p, r)
    }

    pub fn deformation(&mut self) -> Deformation {
        loop {
            if let Ok(def) = Deformation::new(self.rational()) {
                return def;
            }
        }
    }

    /// `n` values whose pairwise ratios avoid `±q^k` for `|k| ≤ 2`, and that avoid the same
    /// set relative to every entry of `avoid`.
    pub fn generic(&mut self, def: &Deformation, n: usize, avoid: &[Rat]) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::with_capacity(n);
        while out.len() < n {
            let cand = self.rational();
            if out.iter().chain(avoid).all(|w| generic_ratio(def, &(&cand / w))) {
                out.push(cand);
            }
        }
        out
    }

    pub fn model(&mut self, n: usize, twist: Twist) -> ModelParams {
        let def = self.deformation();
        let w = self.generic(&def, n, &[]);
        ModelParams::new(def, w, twist).expect("draws are nonzero")
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn small_int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }
}

/// True when `r ∉ {±q^k : |k| ≤ 2}`.
pub fn generic_ratio(def: &Deformation, r: &Rat) -> bool {
    (-2..=2).all(|k| {
        let qk = rat_pow(def.q(), k);
        r.abs() != qk.abs()
    })
}

/// Parses `p/r` or an integer into a rational.
pub fn parse_q(text: &str) -> Result<Deformation, ParamError> {
    let q = crate::field::rat::parse_rat(text)?;
    Deformation::new(q)
}

impl Default for Deformation {
    fn default() -> Self {
        Deformation::new(int(2)).expect("q = 2 is generic")
    }
}
