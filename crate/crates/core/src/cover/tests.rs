use super::*;
use crate::grp::construct_grp;

fn instance(r: u64, p: u64) -> CoveringInstance {
    build_instance(&construct_grp(r, p).unwrap(), None).unwrap()
}

fn default_opts() -> ScanOptions {
    ScanOptions::default()
}

/// Reference implementation: try every vector, no packing, no early chunk
/// pruning. Returns the least uncovered value.
fn brute_force_least_witness(inst: &CoveringInstance) -> Option<u64> {
    let size = inst.enumeration_size() as u64;
    (0..size).find(|&k| verify_witness(inst, &inst.decode(k)))
}

#[test]
fn normals_of_smallest_instance() {
    // r=2, p=3, d=2: the three normals are all three nonzero functionals
    let inst = instance(2, 3);
    let mut rows: Vec<Vec<u64>> = inst.normals().to_vec();
    rows.sort();
    assert_eq!(rows, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
}

#[test]
fn instance_counts_and_rank() {
    let inst = instance(3, 5);
    assert_eq!(inst.normals().len(), 5);
    assert_eq!(inst.d, 4);
    assert_eq!(rank_of_rows(3, inst.normals().to_vec()), 4);
}

#[test]
fn bad_functionals_rejected() {
    let spec = construct_grp(3, 5).unwrap();
    assert!(matches!(
        build_instance(&spec, Some(&[0, 0, 0, 0])),
        Err(Error::BadFunctional { .. })
    ));
    assert!(matches!(
        build_instance(&spec, Some(&[1, 0])),
        Err(Error::BadFunctional { .. })
    ));
}

#[test]
fn verify_witness_edges() {
    let inst = instance(3, 5);
    assert!(!verify_witness(&inst, &[0, 0, 0, 0]));
    assert!(!verify_witness(&inst, &[1, 0]));
    // any vector in the first hyperplane fails: normal_0 = e_0
    assert!(!verify_witness(&inst, &[0, 1, 1, 1]));
}

#[test]
fn scan_known_small_cases() {
    // covered: (2,7); not covered: (3,5) with a verified witness
    let v = scan(&instance(2, 7), &default_opts()).unwrap();
    assert!(v.covered);
    assert!(v.witness.is_none());

    let v = scan(&instance(3, 5), &default_opts()).unwrap();
    assert!(!v.covered);
    let w = v.witness.unwrap();
    assert!(verify_witness(&instance(3, 5), &w));
}

#[test]
fn scan_matches_brute_force_on_small_pairs() {
    for (r, p) in [(2u64, 3u64), (2, 5), (2, 7), (3, 2), (3, 5), (3, 13), (5, 2), (5, 3), (5, 13), (7, 19), (13, 7)] {
        let inst = instance(r, p);
        let expect = brute_force_least_witness(&inst);
        for strategy in [Strategy::Exhaustive, Strategy::ScalarNormalized] {
            let opts = ScanOptions { strategy, ..default_opts() };
            let v = scan(&inst, &opts).unwrap();
            assert_eq!(v.covered, expect.is_none(), "({r},{p}) {strategy:?}");
            let got = v.witness.map(|w| inst.encode(&w));
            assert_eq!(got, expect, "({r},{p}) {strategy:?} least witness");
        }
    }
}

#[test]
fn deterministic_scan_same_for_any_worker_count() {
    for (r, p) in [(3u64, 5u64), (3, 13), (5, 13), (2, 11)] {
        let inst = instance(r, p);
        let mut verdicts = Vec::new();
        for workers in [1usize, 4, 8] {
            let opts = ScanOptions {
                workers,
                chunk_size: 64, // force many chunks even on tiny spaces
                ..default_opts()
            };
            let mut v = scan(&inst, &opts).unwrap();
            v.elapsed_ms = 0;
            verdicts.push(v);
        }
        assert_eq!(verdicts[0], verdicts[1], "({r},{p})");
        assert_eq!(verdicts[1], verdicts[2], "({r},{p})");
    }
}

#[test]
fn fast_mode_returns_some_valid_witness() {
    let inst = instance(3, 5);
    let opts = ScanOptions { deterministic: false, workers: 4, chunk_size: 8, ..default_opts() };
    let v = scan(&inst, &opts).unwrap();
    assert!(!v.covered);
    assert!(verify_witness(&inst, &v.witness.unwrap()));
}

#[test]
fn scan_range_respects_bounds() {
    let inst = instance(3, 5); // 81 vectors
    let out = scan_range(&inst, 0, 10, &default_opts()).unwrap();
    assert!(out.complete);
    assert!(scan_range(&inst, 5, 81, &default_opts()).is_ok());
    assert!(scan_range(&inst, 5, 3, &default_opts()).is_err());
    assert!(scan_range(&inst, 0, 100_000, &default_opts()).is_err());
}

#[test]
fn budget_guard() {
    let inst = instance(3, 11);
    let opts = ScanOptions { budget: Some(100), ..default_opts() };
    assert!(matches!(scan(&inst, &opts), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn verdict_shortcut_cases() {
    let o = VerdictOptions::default();
    let v = unisingularity_verdict(2, 31, &o).unwrap();
    assert!(v.covered);
    assert_eq!(v.method, "S1");

    // d = 1: 3 = 1 mod 2
    let v = unisingularity_verdict(3, 2, &o).unwrap();
    assert!(!v.covered);
    assert_eq!(v.method, "S2");
    assert_eq!(v.witness, Some(vec![1]));

    let v = unisingularity_verdict(11, 3, &o).unwrap();
    assert!(!v.covered);
    assert_eq!(v.method, "S3");

    let v = unisingularity_verdict(3, 5, &o).unwrap();
    assert!(!v.covered);
    assert_eq!(v.method, "S4");
}

#[test]
fn verdict_scan_cases() {
    let o = VerdictOptions::default();
    let v = unisingularity_verdict(3, 11, &o).unwrap();
    assert!(v.covered);
    assert_eq!(v.method, "scalar_normalized");

    // (3,13): d = 3, its 13 normals are all the hyperplanes of F_3^3
    let v = unisingularity_verdict(3, 13, &o).unwrap();
    assert!(v.covered);
}

#[test]
fn verdict_force_scan_agrees() {
    for (r, p) in [(2u64, 5u64), (3, 2), (11, 3), (3, 5), (5, 3)] {
        let o = VerdictOptions { force_scan: true, ..Default::default() };
        let v = unisingularity_verdict(r, p, &o).unwrap();
        assert!(v.method.contains('+'), "({r},{p}) method {}", v.method);
    }
}

#[test]
fn verdict_optional_shortcuts_are_scan_verified() {
    // (13,17): d = 4, none of S1-S4 applies, p < 3(r+1)/2 = 21
    let o = VerdictOptions { shortcut_p_bound: true, ..Default::default() };
    let v = unisingularity_verdict(13, 17, &o).unwrap();
    assert_eq!(v.method, "p_bound+scalar_normalized");
    assert!(!v.covered);

    // (3,13): p = (3^3-1)/2 = 13, the hyperplane-count rule
    let o = VerdictOptions { shortcut_hyperplane_count: true, ..Default::default() };
    let v = unisingularity_verdict(3, 13, &o).unwrap();
    assert_eq!(v.method, "hyperplane_count+scalar_normalized");
    assert!(v.covered);
}

#[test]
fn verdict_rejects_bad_input() {
    let o = VerdictOptions::default();
    assert!(matches!(unisingularity_verdict(4, 5, &o), Err(Error::NotPrime(4))));
    assert!(matches!(unisingularity_verdict(5, 5, &o), Err(Error::EqualPrimes(5))));
}

#[test]
fn count_normalized_le_matches_enumeration() {
    for (r, d) in [(2u64, 5usize), (3, 4), (5, 3)] {
        let size = checked_pow_u128(r, d) as u64;
        let mut running = 0u64;
        for v in 0..size {
            let digits: Vec<u64> = {
                let mut out = vec![0u64; d];
                let mut x = v;
                for s in out.iter_mut() {
                    *s = x % r;
                    x /= r;
                }
                out
            };
            if digits.iter().find(|&&c| c != 0) == Some(&1) {
                running += 1;
            }
            assert_eq!(count_normalized_le(r, d, v), running, "r={r} d={d} v={v}");
        }
    }
}

#[test]
fn checkpoint_resume_equals_uninterrupted() {
    let dir = tempfile::tempdir().unwrap();
    let inst = instance(3, 11); // 243 vectors, covered
    let opts = ScanOptions { chunk_size: 16, ..default_opts() };

    let direct = scan_range(&inst, 0, 243, &opts).unwrap();
    assert!(direct.complete);

    let path = dir.path().join("resume.ckpt");
    let partial = ScanOptions { checkpoint: Some(path.clone()), max_chunks: Some(4), ..opts.clone() };
    let first = scan_range(&inst, 0, 243, &partial).unwrap();
    assert!(!first.complete);
    assert_eq!(first.chunks_resolved, 4);

    let resumed_opts = ScanOptions { checkpoint: Some(path.clone()), ..opts.clone() };
    let resumed = scan_range(&inst, 0, 243, &resumed_opts).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.witness_value, direct.witness_value);

    // a third run over the finished checkpoint does no new work
    let again = scan_range(&inst, 0, 243, &resumed_opts).unwrap();
    assert!(again.complete);
    assert_eq!(again.vectors_tested, 0);
}

#[test]
fn checkpoint_rejects_mismatched_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.ckpt");
    let inst = instance(3, 11);
    let opts = ScanOptions { checkpoint: Some(path.clone()), chunk_size: 64, ..default_opts() };
    scan_range(&inst, 0, 243, &opts).unwrap();

    let other = ScanOptions { chunk_size: 32, ..opts.clone() };
    assert!(matches!(scan_range(&inst, 0, 243, &other), Err(Error::Checkpoint(_))));

    let other_inst = instance(3, 5);
    let opts5 = ScanOptions { checkpoint: Some(path), chunk_size: 64, ..default_opts() };
    assert!(matches!(scan_range(&other_inst, 0, 81, &opts5), Err(Error::Checkpoint(_))));
}

#[test]
fn checkpoint_keeps_witness_across_resume() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wit.ckpt");
    let inst = instance(3, 5); // not covered
    let opts = ScanOptions { checkpoint: Some(path), chunk_size: 8, max_chunks: Some(3), ..default_opts() };
    let first = scan_range(&inst, 0, 81, &opts).unwrap();
    let resumed = scan_range(&inst, 0, 81, &ScanOptions { max_chunks: None, ..opts }).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.witness_value, brute_force_least_witness(&inst));
    // progress was not lost
    assert!(first.chunks_resolved <= resumed.chunks_resolved);
}

#[test]
fn uncovered_count_bound_when_p_below_r() {
    // p hyperplane translates cover at most p * r^(d-1) vectors, so at least
    // r^d - p * r^(d-1) > 0 stay uncovered whenever p < r
    for (r, p) in [(5u64, 3u64), (7, 5), (11, 3), (13, 5)] {
        let inst = instance(r, p);
        let size = inst.enumeration_size() as u64;
        let uncovered =
            (0..size).filter(|&k| verify_witness(&inst, &inst.decode(k))).count() as u64;
        let bound = size - p * size / r;
        assert!(bound > 0);
        assert!(uncovered >= bound, "({r},{p}): {uncovered} uncovered < bound {bound}");
    }
}

#[test]
fn functional_choice_does_not_change_verdict() {
    let spec = construct_grp(3, 11).unwrap();
    let mut rng = crate::rng::SplitMix64::new(2024);
    for _ in 0..3 {
        let f: Vec<u64> = loop {
            let cand: Vec<u64> = (0..spec.d).map(|_| rng.below(3)).collect();
            if cand.iter().any(|&c| c != 0) {
                break cand;
            }
        };
        let inst = build_instance(&spec, Some(&f)).unwrap();
        let v = scan(&inst, &default_opts()).unwrap();
        assert!(v.covered, "functional {f:?}");
    }
}
