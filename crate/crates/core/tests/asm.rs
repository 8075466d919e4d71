use bethe_lab::asm::*;
use bethe_lab::exec::Exec;
use bethe_lab::field::rat::int;
use bethe_lab::field::Scalar;
use bethe_lab::params::Deformation;

fn fig4() -> Asm {
    Asm::new(vec![
        vec![0, 1, 0, 0],
        vec![1, -1, 0, 1],
        vec![0, 1, 0, 0],
        vec![0, 0, 1, 0],
    ])
    .unwrap()
}

#[test]
fn counts_agree_with_monotone_triangles() {
    let mut prev = 0;
    for n in 1..=6 {
        let stream: Vec<Asm> = generate_asms(n).unwrap().collect();
        let mut triangles = monotone_triangle_asms(n).unwrap();
        let mut sorted = stream.clone();
        sorted.sort();
        triangles.sort();
        assert_eq!(sorted, triangles, "n={n}");
        let total = stream.len() as u64;
        assert!(total > prev);
        prev = total;
    }
}

#[test]
fn counts_from_triangles() {
    let counts: Vec<usize> = (1..=6)
        .map(|n| monotone_triangle_asms(n).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 2, 7, 42, 429, 7436]);
}

#[test]
fn stream_has_no_duplicates() {
    let mut v: Vec<Asm> = generate_asms(5).unwrap().collect();
    let len = v.len();
    v.sort();
    v.dedup();
    assert_eq!(v.len(), len);
}

#[test]
fn three_by_three() {
    let all: Vec<Asm> = generate_asms(3).unwrap().collect();
    assert_eq!(all.len(), 7);
    assert_eq!(all.iter().filter(|a| a.minus_ones() == 1).count(), 1);
    assert_eq!(gen_poly(3).unwrap().coeffs, vec![6, 1]);
    assert_eq!(gen_poly(1).unwrap().coeffs, vec![1]);
}

#[test]
fn gen_poly_degree_bound() {
    for n in 1..=6 {
        let g = gen_poly(n).unwrap();
        assert_eq!(g.total(), asm_count(n).unwrap());
        assert!(g.degree() <= (n - 1) * (n - 1) / 4, "n={n}");
    }
    let g4 = gen_poly(4).unwrap();
    assert_eq!(g4.degree(), 2);
    assert_eq!(g4.total(), 42);
    assert_eq!(g4.evaluate(&int(1)), int(42));
}

#[test]
fn size_guard() {
    assert_eq!(gen_poly(8).unwrap_err(), AsmError::SizeLimitExceeded(8));
    assert!(generate_asms(0).is_err());
}

#[test]
fn bijection_round_trip() {
    for n in 1..=4 {
        for a in generate_asms(n).unwrap() {
            let c = asm_to_dwbc(&a);
            assert_eq!(dwbc_to_asm(&c).unwrap(), a);
            let types = c.types();
            for j in 0..n {
                for k in 0..n {
                    match a.get(j, k) {
                        1 => assert_eq!(types[j][k], 5),
                        -1 => assert_eq!(types[j][k], 6),
                        _ => assert!(types[j][k] <= 4),
                    }
                }
            }
        }
    }
}

#[test]
fn identity_configuration() {
    let c = asm_to_dwbc(&Asm::identity(4));
    for j in 0..4 {
        assert_eq!(c.get(j, j).kind(), 5);
    }
}

#[test]
fn fig4_example() {
    let a = fig4();
    assert_eq!(vertex_count_audit(&a), (1, 5, 10));
    let c = asm_to_dwbc(&a);
    assert_eq!(c.types()[1][1], 6);
    assert_eq!(dwbc_to_asm(&c).unwrap(), a);
}

#[test]
fn vertex_counts() {
    let minus = generate_asms(3)
        .unwrap()
        .find(|a| a.minus_ones() == 1)
        .unwrap();
    assert_eq!(vertex_count_audit(&minus), (1, 4, 4));
    for n in 1..=5 {
        for a in generate_asms(n).unwrap() {
            let (k, fives, others) = vertex_count_audit(&a);
            assert_eq!(fives, n + k);
            assert_eq!(others, n * n - n - 2 * k);
        }
    }
}

#[test]
fn invalid_configs_rejected() {
    let bad = vec![vec![Vertex::new(1).unwrap()]];
    assert!(matches!(DwbcConfig::new(bad), Err(AsmError::InvalidConfig(_))));
    let mut types = asm_to_dwbc(&Asm::identity(2)).types();
    types[0][1] = 1;
    let vs = types
        .iter()
        .map(|r| r.iter().map(|&t| Vertex::new(t).unwrap()).collect())
        .collect();
    assert!(DwbcConfig::new(vs).is_err());
}

#[test]
fn partition_single_site() {
    let def = Deformation::default();
    let z = dwbc_partition_brute(&[Scalar::from_int(3)], &[Scalar::from_int(7)], &def, Exec::Sequential).unwrap();
    assert_eq!(z, def.bq2().clone());
}

#[test]
fn homogeneous_weights() {
    let def = Deformation::default();
    let bq = def.bq().clone();
    let bq2 = def.bq2().clone();
    for n in 1..=5 {
        let ones = vec![Scalar::one(); n];
        let z = dwbc_partition_brute(&ones, &ones, &def, Exec::default()).unwrap();
        let a = Scalar::rational(gen_poly(n).unwrap().evaluate(&(def.x() * def.x())));
        let want = bq.pow((n * (n - 1)) as i32).unwrap() * bq2.pow(n as i32).unwrap() * a;
        assert_eq!(z, want, "n={n}");
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let def = Deformation::default();
    let zeta: Vec<Scalar> = (2..7).map(Scalar::from_int).collect();
    let w: Vec<Scalar> = (11..16).map(Scalar::from_int).collect();
    assert_eq!(
        dwbc_partition_brute(&zeta, &w, &def, Exec::Sequential).unwrap(),
        dwbc_partition_brute(&zeta, &w, &def, Exec::Parallel).unwrap()
    );
}

#[test]
fn serializes_as_nested_arrays() {
    assert_eq!(serde_json::to_string(&fig4()).unwrap(), "[[0,1,0,0],[1,-1,0,1],[0,1,0,0],[0,0,1,0]]");
    let g = gen_poly(3).unwrap();
    assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"n":3,"coeffs":[6,1]}"#);
}

#[test]
fn gen_poly_display() {
    assert_eq!(gen_poly(3).unwrap().to_string(), "6+t");
    assert_eq!(gen_poly(1).unwrap().to_string(), "1");
    assert_eq!(gen_poly(4).unwrap().to_string(), "24+16t+2t^2");
}
