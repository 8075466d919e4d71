//! Named invariant checks grouped into suites, with machine-readable records.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::aba::{
    asymptotic_check, bethe_equations_residual, bethe_vector, conjecture1_nullity, cyclic_check,
    degree_width_check, exchange_check, left_covector_check, recurrence_check, scattering_check,
    spin_reversal_check, theta2, transfer1_apply, transfer2_apply, Direction, SpinState,
    StateVector,
};
use crate::asm::{
    asm_to_dwbc, dwbc_partition_brute, dwbc_to_asm, gen_poly, generate_asms,
    monotone_triangle_asms, vertex_count_audit,
};
use crate::detform::{
    component_from_b, ik_determinant, partition_z, partition_z_ik, scalar_product_direct,
    simple_component_even, simple_component_odd, slavnov, VacuumFns,
};
use crate::exec::Exec;
use crate::field::rat::rat_to_string;
use crate::field::{Rat, Scalar};
use crate::params::{Deformation, ModelParams, ParamError, Sampler, Twist};
use crate::rmatrix::{
    check_fusion_r22, check_r22_inversion, check_r22_permutation_point,
    check_r22_rank_one_point, check_ybe, crossing_transpose_check,
};
use crate::spinchain::{
    evaluate_singlet, hamiltonian_apply, homogeneous_limit_check, log_derivative_hamiltonian,
    singlet, singlet_normalisation_audit, singlet_norm, twisted_translation_apply,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Rmatrix,
    Aba,
    Detform,
    Asm,
    Spinchain,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["rmatrix", "aba", "detform", "asm", "spinchain", "all"];
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "rmatrix" => Suite::Rmatrix,
            "aba" => Suite::Aba,
            "detform" => Suite::Detform,
            "asm" => Suite::Asm,
            "spinchain" => Suite::Spinchain,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        write!(f, "{}", Suite::NAMES[i])
    }
}

/// Parameters shared by every check of a run.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub def: Deformation,
    pub w: Vec<Rat>,
    pub seed: u64,
}

impl VerifyConfig {
    /// Missing `q` or `w` are drawn from `seed`.
    pub fn new(n: usize, q: Option<Deformation>, w: Option<Vec<Rat>>, seed: u64) -> Result<Self, ParamError> {
        if n == 0 {
            return Err(ParamError::EmptyChain);
        }
        let mut sampler = Sampler::new(seed);
        let def = match q {
            Some(d) => d,
            None => sampler.deformation(),
        };
        let w = match w {
            Some(w) => w,
            None => sampler.generic(&def, n, &[]),
        };
        if w.len() != n {
            return Err(ParamError::WrongLength { expected: n, got: w.len() });
        }
        ModelParams::new(def.clone(), w.clone(), Twist::Pi)?;
        Ok(VerifyConfig { n, def, w, seed })
    }

    pub fn params(&self) -> ModelParams {
        ModelParams::new(self.def.clone(), self.w.clone(), Twist::Pi).expect("validated in new")
    }

    fn sampler(&self, salt: u64) -> Sampler {
        Sampler::new(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt))
    }

    fn base_params(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("n".into(), json!(self.n));
        m.insert("q".into(), json!(rat_to_string(self.def.q())));
        let w: Vec<String> = self.w.iter().map(rat_to_string).collect();
        m.insert("w".into(), json!(w));
        m
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed_ms: f64,
}

struct Verdict {
    pass: bool,
    extra: Vec<(&'static str, Value)>,
}

impl From<bool> for Verdict {
    fn from(pass: bool) -> Self {
        Verdict { pass, extra: Vec::new() }
    }
}

type CheckFn = Box<dyn Fn(&VerifyConfig) -> Result<Verdict, String> + Send + Sync>;

struct Check {
    name: String,
    run: CheckFn,
}

fn check<F>(name: impl Into<String>, f: F) -> Check
where
    F: Fn(&VerifyConfig) -> Result<Verdict, String> + Send + Sync + 'static,
{
    Check { name: name.into(), run: Box::new(f) }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn scalar_draws(sampler: &mut Sampler, k: usize) -> Vec<Scalar> {
    (0..k).map(|_| Scalar::rational(sampler.rational())).collect()
}

fn sparse_vector(sampler: &mut Sampler, n: usize) -> StateVector {
    let dim = 3usize.pow(n as u32);
    StateVector::from_pairs(
        n,
        (0..3).map(|_| {
            let s = SpinState::from_index(n, sampler.below(dim) as u32);
            (s, Scalar::from_int(sampler.small_int(1, 9)))
        }),
    )
}

fn rmatrix_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for m in 1..=2u8 {
        for n in 1..=2u8 {
            for p in 1..=2u8 {
                out.push(check(format!("rmatrix.ybe_{m}{n}{p}"), move |c| {
                    let mut s = c.sampler(u64::from(m * 9 + n * 3 + p));
                    let zw = scalar_draws(&mut s, 2);
                    Ok(check_ybe(&c.def, m, n, p, &zw[0], &zw[1]).into())
                }));
            }
        }
    }
    out.push(check("rmatrix.permutation_point", |c| {
        Ok(check_r22_permutation_point(&c.def).into())
    }));
    out.push(check("rmatrix.rank_one_point", |c| Ok(check_r22_rank_one_point(&c.def).into())));
    out.push(check("rmatrix.inversion", |c| {
        let z = scalar_draws(&mut c.sampler(40), 1).remove(0);
        Ok(check_r22_inversion(&c.def, &z).into())
    }));
    out.push(check("rmatrix.crossing", |c| {
        let z = scalar_draws(&mut c.sampler(41), 1).remove(0);
        Ok(crossing_transpose_check(&c.def, &z).into())
    }));
    out.push(check("rmatrix.fusion", |c| {
        let z = scalar_draws(&mut c.sampler(42), 1).remove(0);
        Ok(check_fusion_r22(&c.def, &z).into())
    }));
    out
}

fn aba_checks(n: usize) -> Vec<Check> {
    let mut out = vec![
        check("aba.bethe_vector", |c| {
            let psi = bethe_vector(&c.params()).map_err(err)?;
            let pass = !psi.is_zero() && psi.keys().all(|s| s.magnetisation() == 0);
            let mut extra = Vec::new();
            if c.n <= 3 {
                let comps: Vec<Value> = psi
                    .iter()
                    .map(|(s, v)| json!({"state": s.to_string(), "value": v.to_string()}))
                    .collect();
                extra.push(("vector", Value::Array(comps)));
            }
            Ok(Verdict { pass, extra })
        }),
        check("aba.transfer1_annihilates", |c| {
            let p = c.params();
            let psi = bethe_vector(&p).map_err(err)?;
            for z in scalar_draws(&mut c.sampler(50), 3) {
                if !transfer1_apply(&z, &p, &psi).map_err(err)?.is_zero() {
                    return Ok(false.into());
                }
            }
            Ok(true.into())
        }),
        check("aba.transfer2_eigenvalue", |c| {
            let p = c.params();
            let psi = bethe_vector(&p).map_err(err)?;
            for z in scalar_draws(&mut c.sampler(51), 3) {
                let lhs = transfer2_apply(&z, &p, &psi).map_err(err)?;
                if lhs != psi.scale(&theta2(&z, &p).map_err(err)?) {
                    return Ok(false.into());
                }
            }
            Ok(true.into())
        }),
        check("aba.bethe_residual", |c| {
            let p = c.params();
            let res = bethe_equations_residual(p.w(), &p).map_err(err)?;
            Ok(res.iter().all(Scalar::is_zero).into())
        }),
        check("aba.fusion_identity", |c| {
            let p = c.params();
            let mut s = c.sampler(52);
            for _ in 0..3 {
                let v = sparse_vector(&mut s, c.n);
                let z = scalar_draws(&mut s, 1).remove(0);
                let qz = p.def().q_scalar() * &z;
                let inner = transfer1_apply(&qz, &p, &v).map_err(err)?;
                let lhs = transfer1_apply(&z, &p, &inner)
                    .map_err(err)?
                    .add(&v.scale(&theta2(&z, &p).map_err(err)?));
                if lhs != transfer2_apply(&z, &p, &v).map_err(err)? {
                    return Ok(false.into());
                }
            }
            Ok(true.into())
        }),
        check("aba.cyclic", |c| Ok(cyclic_check(&c.params()).map_err(err)?.into())),
        check("aba.spin_reversal", |c| Ok(spin_reversal_check(&c.params()).map_err(err)?.into())),
        check("aba.left_covector", |c| {
            let z = scalar_draws(&mut c.sampler(53), 1).remove(0);
            Ok(left_covector_check(&z, &c.params()).map_err(err)?.into())
        }),
    ];
    for j in 1..=n {
        out.push(check(format!("aba.scattering_{j}"), move |c| {
            Ok(scattering_check(j, &c.params()).map_err(err)?.into())
        }));
    }
    for j in 1..n {
        out.push(check(format!("aba.exchange_{j}"), move |c| {
            Ok(exchange_check(j, &c.params()).map_err(err)?.into())
        }));
    }
    if n >= 2 {
        for j in 1..=n {
            for (dir, tag) in [(Direction::Infinity, "inf"), (Direction::Zero, "zero")] {
                out.push(check(format!("aba.asymptotic_{j}_{tag}"), move |c| {
                    Ok(asymptotic_check(j, dir, &c.params()).map_err(err)?.into())
                }));
            }
        }
        out.push(check("aba.degree_width", |c| {
            Ok(degree_width_check(&c.params(), Exec::default()).map_err(err)?.into())
        }));
    }
    if n >= 3 {
        out.push(check("aba.recurrence", |c| Ok(recurrence_check(&c.params()).map_err(err)?.into())));
    }
    if n <= 3 {
        out.push(check("aba.kernel_dimension", |c| {
            let zs = scalar_draws(&mut c.sampler(54), 3);
            let k = conjecture1_nullity(&zs, &c.params(), Exec::default()).map_err(err)?;
            Ok(Verdict { pass: k == 1, extra: vec![("nullity", json!(k))] })
        }));
    }
    out
}

fn zeta_draws(c: &VerifyConfig, salt: u64) -> Vec<Scalar> {
    c.sampler(salt)
        .generic(&c.def, c.n, &c.w)
        .into_iter()
        .map(Scalar::rational)
        .collect()
}

fn detform_checks() -> Vec<Check> {
    vec![
        check("detform.slavnov_direct", |c| {
            let p = c.params();
            let zeta = zeta_draws(c, 60);
            let s = slavnov(p.w(), &zeta, &p).map_err(err)?;
            Ok((s == scalar_product_direct(p.w(), &zeta, &p).map_err(err)?).into())
        }),
        check("detform.slavnov_reduction", |c| {
            let p = c.params();
            let zeta = zeta_draws(c, 61);
            let s = slavnov(p.w(), &zeta, &p).map_err(err)?;
            let vac = VacuumFns::new(&p);
            let mut d = if c.n % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            for w in p.w() {
                d = d * vac.d(w).map_err(err)?;
            }
            let ik = ik_determinant(&zeta, p.w(), p.def()).map_err(err)?;
            Ok((s == d * ik).into())
        }),
        check("detform.ik_brute_force", |c| {
            let p = c.params();
            let zeta = zeta_draws(c, 62);
            let ik = ik_determinant(&zeta, p.w(), p.def()).map_err(err)?;
            let brute = dwbc_partition_brute(&zeta, p.w(), p.def(), Exec::default()).map_err(err)?;
            Ok((ik == brute).into())
        }),
        check("detform.partition_sum_rule", |c| {
            let p = c.params();
            Ok((partition_z(&p).map_err(err)? == partition_z_ik(&p).map_err(err)?).into())
        }),
        check("detform.simple_component", |c| {
            let p = c.params();
            let direct = crate::aba::renormalised_vector(&p)
                .map_err(err)?
                .get(&crate::spinchain::distinguished_state(c.n));
            let pass = if c.n % 2 == 0 {
                simple_component_even(&p).map_err(err)? == direct
                    && component_from_b(&p).map_err(err)? == direct
            } else {
                simple_component_odd(&p).map_err(err)? == direct
            };
            Ok(pass.into())
        }),
    ]
}

fn asm_checks() -> Vec<Check> {
    vec![
        check("asm.gen_poly", |c| {
            let g = gen_poly(c.n).map_err(err)?;
            let triangles = monotone_triangle_asms(c.n).map_err(err)?;
            let pass = g.total() == triangles.len() as u64;
            Ok(Verdict {
                pass,
                extra: vec![("gen_poly", json!(g.to_string())), ("count", json!(g.total()))],
            })
        }),
        check("asm.degree_bound", |c| {
            let g = gen_poly(c.n).map_err(err)?;
            let bound = (c.n - 1).pow(2) / 4;
            Ok((g.degree() <= bound).into())
        }),
        check("asm.vertex_counts", |c| {
            let n = c.n;
            let pass = generate_asms(n).map_err(err)?.all(|a| {
                let (k, fives, others) = vertex_count_audit(&a);
                fives == n + k && others == n * n - n - 2 * k
            });
            Ok(pass.into())
        }),
        check("asm.bijection", |c| {
            let pass = generate_asms(c.n)
                .map_err(err)?
                .all(|a| dwbc_to_asm(&asm_to_dwbc(&a)).as_ref() == Ok(&a));
            Ok(pass.into())
        }),
    ]
}

fn spinchain_checks(n: usize) -> Vec<Check> {
    let mut out = vec![
        check("spinchain.singlet_norm", |c| {
            let phi = singlet(c.n).map_err(err)?;
            let norm = singlet_norm(&phi);
            let want = gen_poly(c.n).map_err(err)?.at_x_squared();
            Ok(Verdict { pass: norm == want, extra: vec![("norm", json!(norm.to_string()))] })
        }),
        check("spinchain.translation_eigenvalue", |c| {
            let phi = evaluate_singlet(&singlet(c.n).map_err(err)?, &c.def.x()).map_err(err)?;
            let sign = if c.n % 2 == 1 { Scalar::one() } else { Scalar::from_int(-1) };
            Ok((twisted_translation_apply(&phi) == phi.scale(&sign)).into())
        }),
        check("spinchain.homogeneous_limit", |c| {
            Ok(homogeneous_limit_check(c.n, &c.def).map_err(err)?.into())
        }),
    ];
    if n >= 2 {
        out.push(check("spinchain.normalisation", |c| {
            let audit = singlet_normalisation_audit(&singlet(c.n).map_err(err)?).map_err(err)?;
            Ok(Verdict {
                pass: audit.pass,
                extra: vec![("component", json!(audit.component.to_string()))],
            })
        }));
        out.push(check("spinchain.zero_energy", |c| {
            let phi = evaluate_singlet(&singlet(c.n).map_err(err)?, &c.def.x()).map_err(err)?;
            Ok(hamiltonian_apply(&phi, &c.def).map_err(err)?.is_zero().into())
        }));
    }
    if (2..=3).contains(&n) {
        out.push(check("spinchain.log_derivative", |c| {
            let mut s = c.sampler(70);
            let v = StateVector::from_pairs(
                c.n,
                SpinState::all(c.n).map(|st| (st, Scalar::from_int(s.small_int(-3, 3)))),
            );
            let direct = hamiltonian_apply(&v, &c.def).map_err(err)?;
            let via_t = log_derivative_hamiltonian(&v, &c.def, Exec::default()).map_err(err)?;
            Ok((direct == via_t).into())
        }));
    }
    out
}

fn checks_for(suite: Suite, n: usize) -> Vec<Check> {
    match suite {
        Suite::Rmatrix => rmatrix_checks(),
        Suite::Aba => aba_checks(n),
        Suite::Detform => detform_checks(),
        Suite::Asm => asm_checks(),
        Suite::Spinchain => spinchain_checks(n),
        Suite::All => {
            let mut all = rmatrix_checks();
            all.extend(aba_checks(n));
            all.extend(detform_checks());
            all.extend(asm_checks());
            all.extend(spinchain_checks(n));
            all
        }
    }
}

/// Runs a suite and returns its records sorted by check name.
pub fn run_suite(suite: Suite, config: &VerifyConfig, exec: Exec) -> Vec<CheckRecord> {
    let checks = checks_for(suite, config.n);
    let mut records = exec.map(checks, |c| {
        let start = Instant::now();
        let outcome = (c.run)(config);
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let mut params = config.base_params();
        let (pass, error) = match outcome {
            Ok(v) => {
                for (k, val) in v.extra {
                    params.insert(k.to_string(), val);
                }
                (v.pass, None)
            }
            Err(e) => (false, Some(e)),
        };
        CheckRecord { check: c.name, params: Value::Object(params), pass, error, elapsed_ms }
    });
    records.sort_by(|a, b| a.check.cmp(&b.check));
    records
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.pass)
}
