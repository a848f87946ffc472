mod common;

use common::corpus_dir;
use toric_koszul::io::parse_polytope;
use toric_koszul::pipeline::{analyze, corpus_run, summarize, verify_report, FieldChoice, Options, Verification};

const SQUARE: &str = r#"{"name": "square", "rank": 2, "vertices": [[0,0],[1,0],[0,1],[1,1]]}"#;

fn with_differentials() -> Options {
    Options { emit_differentials: true, ..Options::default() }
}

#[test]
fn reports_are_deterministic() {
    let input = parse_polytope(SQUARE).unwrap();
    let a = serde_json::to_string(&analyze(&input, &with_differentials()).unwrap()).unwrap();
    let b = serde_json::to_string(&analyze(&input, &with_differentials()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn stored_report_verifies_and_perturbation_fails() {
    let input = parse_polytope(SQUARE).unwrap();
    let report = analyze(&input, &with_differentials()).unwrap();
    assert!(report.consistent, "{:?}", report.inconsistencies);
    assert!(matches!(verify_report(&report), Verification::Verified { differentials_checked: true }));

    let mut bad = report.clone();
    let e = bad.koszul.table.entries.iter_mut().find(|e| e.i == 2).unwrap();
    e.beta += 1;
    assert!(matches!(verify_report(&bad), Verification::Failed { .. }));

    let mut bad = report.clone();
    let g = bad.koszul.differentials.as_mut().unwrap()[2].iter_mut().find(|g| !g.image.is_empty()).unwrap();
    g.image[0].2 = "5".into();
    assert!(matches!(verify_report(&bad), Verification::Failed { .. }));

    let mut missing = report;
    missing.koszul.differentials = None;
    assert!(matches!(verify_report(&missing), Verification::Unverifiable { .. }));
}

#[test]
fn report_round_trips_through_json() {
    let input = parse_polytope(SQUARE).unwrap();
    let opts = Options { field: FieldChoice::Q, ..with_differentials() };
    let report = analyze(&input, &opts).unwrap();
    let back = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, back);
    assert!(verify_report(&back).ok());
}

#[test]
fn corpus_is_consistent() {
    let items = corpus_run(&corpus_dir(), &Options::default()).unwrap();
    assert_eq!(items.len(), 10);
    let s = summarize(&items);
    assert_eq!((s.inconsistent, s.errors), (0, 0));
}

#[test]
fn empty_directory_gives_empty_summary() {
    let dir = std::env::temp_dir().join(format!("toric-koszul-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let items = corpus_run(&dir, &Options::default()).unwrap();
    std::fs::remove_dir(&dir).unwrap();
    assert!(items.is_empty());
    assert!(summarize(&items).items.is_empty());
}
