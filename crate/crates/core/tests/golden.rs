//! Snapshot tests. Set `FOLIA_BLESS=1` to rewrite the files after a
//! deliberate change.

use std::path::PathBuf;

use folia::exact::Rational;
use folia::forms::counterexample;
use folia::partitions::{jordan_triple, Partition};
use folia::projgeo::pencil_family_certificate;
use folia::rootsys::eligibility_report;
use serde::Serialize;

fn check<T: Serialize>(name: &str, value: &T) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let text = serde_json::to_string_pretty(value).unwrap() + "\n";
    if std::env::var_os("FOLIA_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, want, "{name} drifted from its golden file");
}

#[test]
fn counterexample_report() {
    check("counterexample.json", &counterexample().unwrap());
}

#[test]
fn eligibility_rank_8() {
    check("eligibility.json", &eligibility_report(8).unwrap());
}

#[test]
fn pencil_certificate_5_1_1() {
    let lambda: Partition = "5,1,1".parse().unwrap();
    let samples = [(1, 1), (2, -3), (-1, 7)].map(|(a, b)| (Rational::from(a), Rational::from(b)));
    check("pencil_5_1_1.json", &pencil_family_certificate(&lambda, &samples).unwrap());
}

#[test]
fn lowering_operator_k5() {
    let t = jordan_triple(&"5".parse().unwrap()).unwrap();
    let rows: Vec<Vec<String>> = (0..5).map(|i| (0..5).map(|j| t.k[(i, j)].to_string()).collect()).collect();
    check("k_5.json", &rows);
}
