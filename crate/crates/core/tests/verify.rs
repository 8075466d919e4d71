use bethe_lab::exec::Exec;
use bethe_lab::field::rat::int;
use bethe_lab::params::{Deformation, ParamError};
use bethe_lab::verify::*;
use serde_json::json;

fn find<'a>(records: &'a [CheckRecord], name: &str) -> &'a CheckRecord {
    records.iter().find(|r| r.check == name).unwrap()
}

#[test]
fn single_site_bethe_vector() {
    let cfg = VerifyConfig::new(1, Some(Deformation::default()), Some(vec![int(1)]), 0).unwrap();
    let records = run_suite(Suite::Aba, &cfg, Exec::default());
    let r = find(&records, "aba.bethe_vector");
    assert!(r.pass);
    assert_eq!(r.params["vector"], json!([{"state": "0", "value": "s"}]));
    assert!(all_pass(&records));
}

#[test]
fn asm_suite_reports_gen_poly() {
    let cfg = VerifyConfig::new(3, None, None, 5).unwrap();
    let records = run_suite(Suite::Asm, &cfg, Exec::default());
    let r = find(&records, "asm.gen_poly");
    assert_eq!(r.params["gen_poly"], json!("6+t"));
    assert_eq!(r.params["count"], json!(7));
    assert!(all_pass(&records));
}

#[test]
fn every_suite_passes_at_three_sites() {
    let cfg = VerifyConfig::new(3, None, None, 11).unwrap();
    let records = run_suite(Suite::All, &cfg, Exec::default());
    let failed: Vec<_> = records.iter().filter(|r| !r.pass).collect();
    assert!(failed.is_empty(), "{failed:?}");
    let names: Vec<&str> = records.iter().map(|r| r.check.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn records_are_reproducible() {
    let cfg = VerifyConfig::new(2, None, None, 3).unwrap();
    let a = serde_json::to_string(&run_suite(Suite::All, &cfg, Exec::Parallel)).unwrap();
    let cfg = VerifyConfig::new(2, None, None, 3).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::All, &cfg, Exec::Sequential)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn config_errors() {
    assert_eq!(VerifyConfig::new(0, None, None, 0).unwrap_err(), ParamError::EmptyChain);
    assert_eq!(
        VerifyConfig::new(2, None, Some(vec![int(1)]), 0).unwrap_err(),
        ParamError::WrongLength { expected: 2, got: 1 }
    );
    assert!("bogus".parse::<Suite>().is_err());
    assert_eq!("detform".parse::<Suite>(), Ok(Suite::Detform));
    assert_eq!(Suite::Spinchain.to_string(), "spinchain");
}
