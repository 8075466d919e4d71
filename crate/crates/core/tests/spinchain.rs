use bethe_lab::aba::{Spin, SpinState, StateVector};
use bethe_lab::asm::gen_poly;
use bethe_lab::exec::Exec;
use bethe_lab::field::rat::{int, rat};
use bethe_lab::field::{HalfPowerPoly, Scalar};
use bethe_lab::params::{Deformation, Sampler};
use bethe_lab::spinchain::*;
use proptest::prelude::*;

fn st(s: &str) -> SpinState {
    SpinState::parse(s).unwrap()
}

fn xpoly(xs: &[i64]) -> HalfPowerPoly {
    HalfPowerPoly::from_x_coeffs(&xs.iter().map(|&c| int(c)).collect::<Vec<_>>())
}

fn random_vector(sampler: &mut Sampler, n: usize) -> StateVector {
    StateVector::from_pairs(
        n,
        SpinState::all(n).map(|s| (s, Scalar::from_int(sampler.small_int(-3, 3)))),
    )
}

#[test]
fn spin_commutators() {
    let ops = SpinOps::new();
    let comm = |a: &bethe_lab::linalg::Matrix, b: &bethe_lab::linalg::Matrix| {
        a.mul(b).unwrap().sub(&b.mul(a).unwrap()).unwrap()
    };
    let i = Scalar::i();
    assert_eq!(comm(&ops.t1, &ops.t2), ops.s3.scale(&(Scalar::from_int(2) * &i)));
    assert_eq!(comm(&ops.t2, &ops.s3), ops.t1.scale(&i));
    assert_eq!(comm(&ops.s3, &ops.t1), ops.t2.scale(&i));
}

#[test]
fn rho_example() {
    use std::collections::BTreeMap;
    let start: BTreeMap<u32, HalfPowerPoly> = [(2u32, xpoly(&[1]))].into_iter().collect();
    let out = bethe_lab::aba::sweep(1, vec![start, BTreeMap::new()], &[rho()]);
    assert_eq!(out[0].get(&2), Some(&xpoly(&[-1])));
    assert_eq!(out[0].len(), 1);
    assert_eq!(out[1].get(&1), Some(&HalfPowerPoly::y()));
    assert_eq!(out[1].len(), 1);
}

#[test]
fn beta_single_site() {
    let out = beta_apply(&StateVector::basis(st("U")));
    assert_eq!(out, StateVector::from_pairs(1, [(st("0"), HalfPowerPoly::y())]));
    let v: StateVector<HalfPowerPoly> = StateVector::basis(st("D"));
    assert!(beta_apply(&v).is_zero());
}

#[test]
fn beta_output_is_odd() {
    for n in 1..=4 {
        for s in SpinState::all(n) {
            let out = beta_apply(&StateVector::basis(s));
            for (t, p) in out.iter() {
                assert!(p.is_odd(), "{s} -> {t}");
                assert!(p.has_integer_coefficients());
            }
        }
    }
}

#[test]
fn singlet_three_sites() {
    let phi = singlet(3).unwrap();
    let one = xpoly(&[1]);
    let minus = xpoly(&[-1]);
    for s in ["U0D", "D0U"] {
        assert_eq!(phi.get(&st(s)), one);
    }
    for s in ["DU0", "0DU", "UD0", "0UD"] {
        assert_eq!(phi.get(&st(s)), minus);
    }
    assert_eq!(phi.get(&st("000")), xpoly(&[0, 1]));
    assert_eq!(phi.len(), 7);
    assert_eq!(singlet_norm(&phi), xpoly(&[6, 0, 1]));
}

#[test]
fn singlet_small() {
    assert_eq!(
        singlet(1).unwrap(),
        StateVector::from_pairs(1, [(st("0"), xpoly(&[1]))])
    );
    let phi2 = singlet(2).unwrap();
    assert_eq!(singlet_norm(&phi2), xpoly(&[2]));
    assert!(phi2.keys().all(|s| s.magnetisation() == 0));
}

#[test]
fn singlet_norm_is_gen_poly() {
    for n in 1..=6 {
        let phi = singlet(n).unwrap();
        assert!(phi.keys().all(|s| s.magnetisation() == 0));
        assert_eq!(singlet_norm(&phi), gen_poly(n).unwrap().at_x_squared(), "n={n}");
    }
}

#[test]
fn normalisation_audit() {
    for (sites, want) in [(3usize, vec![1i64]), (4, vec![2]), (6, vec![6, 0, 1])] {
        let phi = singlet(sites).unwrap();
        let audit = singlet_normalisation_audit(&phi).unwrap();
        assert!(audit.pass, "{audit:?}");
        assert_eq!(phi.get(&distinguished_state(sites)), xpoly(&want));
    }
    for sites in 2..=7 {
        assert!(singlet_normalisation_audit(&singlet(sites).unwrap()).unwrap().pass);
    }
}

#[test]
fn singlet_has_zero_energy() {
    let def = Deformation::default();
    for n in 2..=5 {
        let phi = evaluate_singlet(&singlet(n).unwrap(), &def.x()).unwrap();
        assert!(hamiltonian_apply(&phi, &def).unwrap().is_zero(), "n={n}");
    }
}

#[test]
fn singlet_is_twisted_translation_eigenvector() {
    let def = Deformation::default();
    for n in 1..=5 {
        let phi = evaluate_singlet(&singlet(n).unwrap(), &def.x()).unwrap();
        let sign = if n % 2 == 1 { Scalar::one() } else { Scalar::from_int(-1) };
        assert_eq!(twisted_translation_apply(&phi), phi.scale(&sign));
    }
}

#[test]
fn twisted_translation_power_on_sector() {
    let mut sampler = Sampler::new(3);
    let v = StateVector::from_pairs(
        2,
        SpinState::sector(2, 0)
            .into_iter()
            .map(|s| (s, Scalar::from_int(sampler.small_int(1, 9)))),
    );
    assert_eq!(twisted_translation_apply(&twisted_translation_apply(&v)), v);
}

#[test]
fn twisted_translation_basis_action() {
    let out = twisted_translation_apply(&StateVector::basis(st("00U")));
    assert_eq!(out, StateVector::from_pairs(3, [(st("U00"), Scalar::from_int(-1))]));
    let out = twisted_translation_apply(&StateVector::basis(st("U00")));
    assert_eq!(out, StateVector::basis(st("0U0")));
}

#[test]
fn hamiltonian_conserves_magnetisation() {
    let def = Deformation::default();
    let mut sampler = Sampler::new(8);
    for n in 2..=3 {
        let v = random_vector(&mut sampler, n);
        let hs = hamiltonian_apply(&magnetisation_apply(&v), &def).unwrap();
        let sh = magnetisation_apply(&hamiltonian_apply(&v, &def).unwrap());
        assert_eq!(hs, sh);
    }
}

#[test]
fn hamiltonian_is_symmetric() {
    let def = Deformation::new(rat(3, 5)).unwrap();
    for n in 2..=3 {
        let h = hamiltonian_matrix(n, &def).unwrap();
        assert_eq!(h.transpose(), h, "n={n}");
    }
}

#[test]
fn hamiltonian_from_transfer_matrix() {
    let mut sampler = Sampler::new(12);
    for n in 2..=3 {
        let def = sampler.deformation();
        let v = random_vector(&mut sampler, n);
        let direct = hamiltonian_apply(&v, &def).unwrap();
        let via_t = log_derivative_hamiltonian(&v, &def, Exec::default()).unwrap();
        assert_eq!(direct, via_t, "n={n}");
    }
}

#[test]
fn homogeneous_limit() {
    let mut sampler = Sampler::new(4);
    for n in 1..=5 {
        let def = sampler.deformation();
        assert!(homogeneous_limit_check(n, &def).unwrap(), "n={n}");
    }
}

#[test]
fn short_chain_rejected() {
    let def = Deformation::default();
    assert_eq!(
        hamiltonian_apply(&StateVector::basis(st("0")), &def),
        Err(SpinchainError::TooShort)
    );
}

#[test]
fn distinguished_states() {
    assert_eq!(distinguished_state(4), st("UUDD"));
    assert_eq!(distinguished_state(5), st("UU0DD"));
    assert_eq!(distinguished_state(1).site(0), Spin::Zero);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn zero_energy_for_any_q(seed in 0u64..100_000, n in 2usize..=4) {
        let def = Sampler::new(seed).deformation();
        let phi = evaluate_singlet(&singlet(n).unwrap(), &def.x()).unwrap();
        prop_assert!(hamiltonian_apply(&phi, &def).unwrap().is_zero());
    }
}
