use std::collections::HashSet;
use std::fs;
use std::io::Write;

use schubreg::reg::{max_reg_scan, read_cache, Check, Method, Restrict, ScanOptions};
use schubreg::Permutation;

#[test]
fn scan_values_for_small_n() {
    let s4 = max_reg_scan(&ScanOptions::new(4)).unwrap();
    assert_eq!(s4.max_reg, Some(1));
    let s5 = max_reg_scan(&ScanOptions::new(5)).unwrap();
    assert_eq!(s5.max_reg, Some(2));
    assert!(!s5.partial);
    assert!(!s5.has_failures(), "{s5}");
    assert_eq!(s5.checks["coefficientwise"][1], 0);
}

#[test]
fn covexillary_scan_uses_only_the_formula() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cov5.jsonl");
    let opts = ScanOptions {
        restrict: Restrict::CovexillaryOnly,
        checks: vec![Check::DegreeBound, Check::Semicontinuity],
        cache: Some(cache.clone()),
        ..ScanOptions::new(5)
    };
    let summary = max_reg_scan(&opts).unwrap();
    assert_eq!(summary.max_reg, Some(2));
    let (records, skipped) = read_cache(&cache).unwrap();
    assert_eq!(skipped, 0);
    assert_eq!(records.len(), summary.pairs_total);
    for r in &records {
        assert!(r.covexillary);
        assert_eq!(r.method, Method::Formula);
        assert!(r.h_coeffs.is_none());
    }
}

#[test]
fn resumed_scan_is_identical_and_has_no_duplicates() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("s4.jsonl");
    let opts = ScanOptions {
        cache: Some(cache.clone()),
        ..ScanOptions::new(4)
    };
    let first = max_reg_scan(&opts).unwrap();
    assert_eq!(first.from_cache, 0);
    let second = max_reg_scan(&opts).unwrap();
    assert_eq!(second.from_cache, second.pairs_total);
    assert_eq!(first.to_string(), second.to_string());

    let (records, _) = read_cache(&cache).unwrap();
    let keys: HashSet<(Permutation, Permutation)> = records.iter().map(|r| (r.v.clone(), r.w.clone())).collect();
    assert_eq!(keys.len(), records.len());
    assert_eq!(records.len(), first.pairs_total);
}

#[test]
fn corrupt_cache_lines_are_skipped_and_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("s4.jsonl");
    let opts = ScanOptions {
        cache: Some(cache.clone()),
        ..ScanOptions::new(4)
    };
    let clean = max_reg_scan(&opts).unwrap();
    let text = fs::read_to_string(&cache).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let dropped = lines.remove(3);
    let mut f = fs::File::create(&cache).unwrap();
    for l in &lines {
        writeln!(f, "{l}").unwrap();
    }
    writeln!(f, "{}", &dropped[..dropped.len() / 2]).unwrap();
    writeln!(f, "not json at all").unwrap();
    drop(f);

    let (_, skipped) = read_cache(&cache).unwrap();
    assert_eq!(skipped, 2);
    let resumed = max_reg_scan(&opts).unwrap();
    assert_eq!(resumed.from_cache, clean.pairs_total - 1);
    assert_eq!(resumed.to_string(), clean.to_string());
    let (records, skipped) = read_cache(&cache).unwrap();
    assert_eq!(skipped, 0);
    assert_eq!(records.len(), clean.pairs_total);
}

#[test]
fn exhausted_budget_reports_a_lower_bound() {
    let opts = ScanOptions {
        total_ms: Some(0),
        ..ScanOptions::new(4)
    };
    let summary = max_reg_scan(&opts).unwrap();
    assert!(summary.partial);
    assert!(summary.to_string().contains("no pair computed") || summary.to_string().contains("lower bound"));
}
