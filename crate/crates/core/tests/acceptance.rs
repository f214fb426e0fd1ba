//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured runtime. Run with `cargo test --test acceptance -- --nocapture`.

use std::time::Instant;
use unising::arith::{checked_pow_u128, is_prime, pow_le};
use unising::cli::{rep_scan, triangulate};
use unising::cover::{
    build_instance, scan, scan_range, unisingularity_verdict, verify_witness, CoveringInstance,
    ScanOptions, Strategy, VerdictOptions,
};
use unising::ff::multiplicative_order;
use unising::grp::{
    construct_grp, has_fixed_point_free_r_element, least_root_field_prime,
    monomial_representation, GrpSpec,
};
use unising::matfq::MatrixModP;
use unising::poly::PolynomialModP;
use unising::report::OrderReport;
use unising::rng::SplitMix64;
use unising::weights::{
    gl2_unisingular_criterion, in_root_lattice, saturated_weight_set, Family, LieType, WeightVec,
};

fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&x| is_prime(x)).collect()
}

/// The triangulation corpus: r in {2,3,5,7,11,13}, p < 50 prime, r != p,
/// with r^d <= 3^11.
fn corpus() -> Vec<(u64, u64, usize)> {
    let cap = checked_pow_u128(3, 11);
    let mut out = Vec::new();
    for r in [2u64, 3, 5, 7, 11, 13] {
        for p in primes_below(50) {
            if p == r {
                continue;
            }
            let d = multiplicative_order(r, p).unwrap() as usize;
            if pow_le(r, d, cap) {
                out.push((r, p, d));
            }
        }
    }
    out
}

fn default_scan() -> ScanOptions {
    ScanOptions::default()
}

#[test]
fn criterion_1_known_verdicts() {
    let t0 = Instant::now();
    let opts = VerdictOptions::default();

    assert!(!unisingularity_verdict(3, 5, &opts).unwrap().covered, "(3,5) must not be unisingular");
    assert!(unisingularity_verdict(3, 11, &opts).unwrap().covered, "(3,11) must be unisingular");
    let v23 = unisingularity_verdict(3, 23, &opts).unwrap();
    assert!(v23.covered, "(3,23) must be unisingular");
    assert!(v23.vectors_scanned <= 177_147, "(3,23) scans at most 3^11 vectors");
    assert!(!unisingularity_verdict(11, 3, &opts).unwrap().covered, "(11,3) must not be unisingular");
    for p in primes_below(32) {
        if p == 2 {
            continue;
        }
        assert!(unisingularity_verdict(2, p, &opts).unwrap().covered, "(2,{p}) must be unisingular");
    }

    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "criterion 1 exceeded 5 s: {elapsed:?}");
    println!("acceptance 1 (known verdicts reproduce published results): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_triangulation() {
    let t0 = Instant::now();
    let pairs = corpus();
    assert!(pairs.len() >= 30, "corpus unexpectedly small: {}", pairs.len());
    let budget = 1u64 << 22;
    for &(r, p, d) in &pairs {
        let report = triangulate(r, p, budget, None).unwrap();
        assert!(
            report.agree,
            "triangulation disagreement for ({r},{p}) d={d}: covering={} fpf={} rep={}",
            report.covering_covered, report.fixed_point_free_found, report.rep_all_eigenvalue_one
        );
    }
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "criterion 2 exceeded 2 min: {elapsed:?}");
    println!(
        "acceptance 2 (three-way triangulation on {} pairs): PASS in {elapsed:?}",
        pairs.len()
    );
}

#[test]
fn criterion_3_shortcut_soundness() {
    let t0 = Instant::now();
    let cap = checked_pow_u128(3, 10);
    let mut checked_rules = 0u32;

    // S2-S4 against brute-force scans on every applicable pair below the cap
    for r in primes_below(50) {
        for p in primes_below(50) {
            if r == p {
                continue;
            }
            let d = multiplicative_order(r, p).unwrap() as usize;
            if !pow_le(r, d, cap) {
                continue;
            }
            let s2 = d == 1;
            let s3 = r > 2 && p < r;
            let s4 = r > 2 && d as u64 == p - 1;
            if !(s2 || s3 || s4) {
                continue;
            }
            let spec = construct_grp(r, p).unwrap();
            let inst = build_instance(&spec, None).unwrap();
            let verdict = scan(&inst, &default_scan()).unwrap();
            // every applicable rule claims "not covered"
            assert!(!verdict.covered, "shortcut claim fails for ({r},{p}) d={d}");
            checked_rules += 1;

            // and the dispatcher that applies them agrees with its own scan
            let v = unisingularity_verdict(r, p, &VerdictOptions {
                force_scan: true,
                ..Default::default()
            })
            .unwrap();
            assert!(!v.covered);
            assert!(v.method.contains('+'), "({r},{p}) expected shortcut+scan, got {}", v.method);
        }
    }
    assert!(checked_rules >= 20, "too few applicable shortcut pairs: {checked_rules}");

    // S1: r = 2, p <= 31, scan confirms covered
    for p in primes_below(32) {
        if p == 2 {
            continue;
        }
        let spec = construct_grp(2, p).unwrap();
        let inst = build_instance(&spec, None).unwrap();
        let opts = ScanOptions { workers: 4, budget: Some(1 << 29), ..default_scan() };
        let verdict = scan(&inst, &opts).unwrap();
        assert!(verdict.covered, "S1 scan check fails for (2,{p})");
    }

    let elapsed = t0.elapsed();
    println!(
        "acceptance 3 (shortcut soundness, {checked_rules} pairs + S1 row): PASS in {elapsed:?}"
    );
}

/// Closure of the group generated by the given matrices.
fn group_closure(gens: &[MatrixModP]) -> Vec<MatrixModP> {
    let mut elements = vec![MatrixModP::identity(gens[0].modulus(), gens[0].size())];
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for gen in gens {
                let h = g.mul(gen);
                if !elements.contains(&h) && !next.contains(&h) {
                    next.push(h);
                }
            }
        }
        elements.extend(next.iter().cloned());
        frontier = next;
    }
    elements
}

/// Coordinates of a trace-zero 3x3 matrix over F_2 in the fixed 8-element
/// basis {E01,E02,E10,E12,E20,E21, diag(1,1,0), diag(0,1,1)}.
fn trace_zero_coords(y: &MatrixModP) -> Vec<u64> {
    assert_eq!((y.get(0, 0) + y.get(1, 1) + y.get(2, 2)) % 2, 0, "trace must vanish");
    vec![
        y.get(0, 1),
        y.get(0, 2),
        y.get(1, 0),
        y.get(1, 2),
        y.get(2, 0),
        y.get(2, 1),
        y.get(0, 0),
        y.get(2, 2),
    ]
}

fn trace_zero_basis() -> Vec<MatrixModP> {
    let e = |i: usize, j: usize| {
        let mut m = vec![vec![0u64; 3]; 3];
        m[i][j] = 1;
        MatrixModP::from_rows(2, &m).unwrap()
    };
    let d = |a: u64, b: u64, c: u64| MatrixModP::diagonal(2, &[a, b, c]).unwrap();
    vec![e(0, 1), e(0, 2), e(1, 0), e(1, 2), e(2, 0), e(2, 1), d(1, 1, 0), d(0, 1, 1)]
}

#[test]
fn criterion_4_gl3_2_oracle() {
    let t0 = Instant::now();

    // GL_3(2) by closure from a Singer element and a transvection
    let singer = MatrixModP::companion(&PolynomialModP::new(2, vec![1, 1, 0, 1]));
    let transvection =
        MatrixModP::from_rows(2, &[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let group = group_closure(&[singer.clone(), transvection]);
    assert_eq!(group.len(), 168, "GL_3(2) has 168 elements");

    // (a) natural module: criterion false, and the Singer element is a
    // fixed-point-free witness
    assert!(!gl2_unisingular_criterion(3, &[1, 0]).unwrap());
    assert!(!gl2_unisingular_criterion(3, &[0, 1]).unwrap());
    assert!(singer.has_order(7));
    assert!(!singer.has_eigenvalue_one());
    assert!(group.iter().any(|g| !g.has_eigenvalue_one()));
    // dual module (inverse transpose) also has fixed-point-free elements
    let dual_has_fpf = group.iter().any(|g| {
        let ginv = g.pow(167); // g^|G| = 1
        let gt = MatrixModP::from_rows(
            2,
            &(0..3).map(|i| (0..3).map(|j| ginv.get(j, i)).collect()).collect::<Vec<_>>(),
        )
        .unwrap();
        !gt.has_eigenvalue_one()
    });
    assert!(dual_has_fpf);

    // (b) the 8-dimensional module of trace-zero matrices under conjugation:
    // criterion true and every element has eigenvalue 1
    assert!(gl2_unisingular_criterion(3, &[1, 1]).unwrap());
    let basis = trace_zero_basis();
    for g in &group {
        let ginv = g.pow(167);
        let cols: Vec<Vec<u64>> =
            basis.iter().map(|x| trace_zero_coords(&g.mul(x).mul(&ginv))).collect();
        let rows: Vec<Vec<u64>> =
            (0..8).map(|i| (0..8).map(|j| cols[j][i]).collect()).collect();
        let rep = MatrixModP::from_rows(2, &rows).unwrap();
        assert!(rep.has_eigenvalue_one(), "conjugation image lacks eigenvalue 1");
    }

    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "criterion 4 exceeded 1 s: {elapsed:?}");
    println!("acceptance 4 (GL_3(2) criterion against module scans): PASS in {elapsed:?}");
}

/// g permuting k blocks cyclically, with the wrap-around step through B.
#[allow(clippy::needless_range_loop)]
fn block_cycle(k: usize, b: &MatrixModP) -> MatrixModP {
    let m = b.size();
    let n = k * m;
    let q = b.modulus();
    let mut rows = vec![vec![0u64; n]; n];
    for blk in 1..k {
        for i in 0..m {
            rows[blk * m + i][(blk - 1) * m + i] = 1;
        }
    }
    for i in 0..m {
        for j in 0..m {
            rows[i][(k - 1) * m + j] = b.get(i, j);
        }
    }
    MatrixModP::from_rows(q, &rows).unwrap()
}

fn order_by_powering(m: &MatrixModP, bound: u64) -> u64 {
    let mut acc = m.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return k;
        }
        acc = acc.mul(m);
    }
    panic!("order exceeds bound {bound}");
}

#[test]
fn criterion_5_minimal_polynomial_laws() {
    let t0 = Instant::now();

    // (a) block-transitivity degree law on >= 100 prime-power instances
    let mut law_checked = 0u32;
    for ell in [2usize, 3, 5] {
        let shapes: Vec<(usize, usize)> = match ell {
            2 => vec![(2, 1), (2, 2), (2, 4), (2, 8), (4, 1), (4, 2), (4, 4), (4, 8), (8, 1), (8, 2), (8, 4)],
            3 => vec![(3, 1), (3, 3), (3, 9), (9, 1), (9, 3)],
            _ => vec![(5, 1), (5, 5)],
        };
        for (k, m) in shapes {
            for q in [2u64, 3, 5, 7, 11, 13] {
                let b = MatrixModP::cycle(q, m);
                let g = block_cycle(k, &b);
                let order = (k * m) as u64;
                assert!(g.has_order(order), "block cycle k={k} m={m} q={q}");
                assert_eq!(
                    g.min_poly_degree(),
                    k * g.pow(k as u128).min_poly_degree(),
                    "degree law fails for k={k} m={m} q={q}"
                );
                law_checked += 1;
            }
        }
    }
    assert!(law_checked >= 100, "only {law_checked} degree-law instances");

    // (b) eigenvalue-1 equivalence with the semisimple part on >= 100
    // finite-order matrices
    let mut jordan_checked = 0u32;
    for q in [2u64, 3, 5, 7] {
        let mut blocks: Vec<MatrixModP> = Vec::new();
        for c in [2usize, 3, 4, 5] {
            blocks.push(MatrixModP::cycle(q, c));
        }
        for s in [2usize, 3] {
            let mut rows = vec![vec![0u64; s]; s];
            for i in 0..s {
                rows[i][i] = 1;
                if i + 1 < s {
                    rows[i][i + 1] = 1;
                }
            }
            blocks.push(MatrixModP::from_rows(q, &rows).unwrap());
        }
        if q == 2 {
            blocks.push(MatrixModP::companion(&PolynomialModP::new(2, vec![1, 1, 1])));
            blocks.push(MatrixModP::companion(&PolynomialModP::new(2, vec![1, 1, 0, 1])));
        }
        if q == 3 {
            // companion of x^2 + 1: a fixed-point-free element of order 4
            blocks.push(MatrixModP::companion(&PolynomialModP::new(3, vec![1, 0, 1])));
        }
        for i in 0..blocks.len() {
            for j in i..blocks.len() {
                let m = MatrixModP::block_diagonal(&[blocks[i].clone(), blocks[j].clone()]);
                let order = order_by_powering(&m, 5000);
                let (s, u) = m.multiplicative_jordan_parts(order).unwrap();
                assert_eq!(
                    m.has_eigenvalue_one(),
                    s.has_eigenvalue_one(),
                    "semisimple-part equivalence fails (q={q}, blocks {i},{j})"
                );
                assert_eq!(s.mul(&u), u.mul(&s));
                jordan_checked += 1;
            }
        }
    }
    assert!(jordan_checked >= 100, "only {jordan_checked} decompositions checked");

    // (c) the image of h in the degree-p monomial representation has minimal
    // polynomial degree exactly p whenever ell does not divide p
    for (r, p, _) in corpus() {
        let ell = least_root_field_prime(r);
        if p % ell == 0 {
            continue;
        }
        let spec = construct_grp(r, p).unwrap();
        let rep = monomial_representation(&spec, ell).unwrap();
        assert_eq!(rep.h_image.min_poly_degree(), p as usize, "h image for ({r},{p})");
    }

    let elapsed = t0.elapsed();
    println!(
        "acceptance 5 (degree law x{law_checked}, semisimple part x{jordan_checked}, full-order images): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_6_functional_and_strategy_invariance() {
    let t0 = Instant::now();
    let mut rng = SplitMix64::new(0x5eed);
    for (r, p, d) in corpus() {
        let spec = construct_grp(r, p).unwrap();
        let reference = scan(&build_instance(&spec, None).unwrap(), &default_scan()).unwrap();

        // three random functionals and both strategies give one verdict
        for _ in 0..3 {
            let functional: Vec<u64> = loop {
                let cand: Vec<u64> = (0..d).map(|_| rng.below(r)).collect();
                if cand.iter().any(|&c| c != 0) {
                    break cand;
                }
            };
            let inst = build_instance(&spec, Some(&functional)).unwrap();
            for strategy in [Strategy::Exhaustive, Strategy::ScalarNormalized] {
                let opts = ScanOptions { strategy, ..default_scan() };
                let v = scan(&inst, &opts).unwrap();
                assert_eq!(
                    v.covered, reference.covered,
                    "({r},{p}) functional {functional:?} strategy {strategy:?}"
                );
            }
        }

        // deterministic least witnesses agree across worker counts and
        // strategies
        let inst = build_instance(&spec, None).unwrap();
        let mut witnesses = Vec::new();
        for workers in [1usize, 4, 8] {
            for strategy in [Strategy::Exhaustive, Strategy::ScalarNormalized] {
                let opts = ScanOptions {
                    workers,
                    strategy,
                    chunk_size: 512,
                    deterministic: true,
                    ..default_scan()
                };
                witnesses.push(scan(&inst, &opts).unwrap().witness);
            }
        }
        for w in &witnesses[1..] {
            assert_eq!(w, &witnesses[0], "witness differs for ({r},{p})");
        }
    }
    let elapsed = t0.elapsed();
    println!("acceptance 6 (functional & strategy invariance): PASS in {elapsed:?}");
}

#[test]
fn criterion_7_multiplicative_order_table() {
    let t0 = Instant::now();
    // documented pairs
    assert_eq!(multiplicative_order(3, 5).unwrap(), 4);
    assert_eq!(multiplicative_order(3, 11).unwrap(), 5);
    assert_eq!(multiplicative_order(3, 23).unwrap(), 11);

    // independent repeated-multiplication oracle
    let oracle = |base: u64, modulus: u64| {
        let mut acc = base % modulus;
        let mut d = 1u64;
        while acc != 1 {
            acc = acc * base % modulus;
            d += 1;
        }
        d
    };
    assert_eq!(oracle(3, 5), 4);
    assert_eq!(oracle(3, 11), 5);
    assert_eq!(oracle(3, 23), 11);

    // the report flags the value 12 sometimes quoted for (3, 23)
    let report = OrderReport::new(3, 23, multiplicative_order(3, 23).unwrap());
    let note = report.note.expect("(3,23) order report carries a note");
    assert!(note.contains("12") && note.contains("11"));

    let elapsed = t0.elapsed();
    println!("acceptance 7 (order table with documented discrepancy): PASS in {elapsed:?}");
}

fn g347_instance() -> (GrpSpec, CoveringInstance) {
    let spec = construct_grp(3, 47).unwrap();
    assert_eq!(spec.d, 23);
    let inst = build_instance(&spec, None).unwrap();
    (spec, inst)
}

#[test]
fn criterion_8_g3_47_subrange_properties() {
    let t0 = Instant::now();
    let (spec, inst) = g347_instance();
    assert_eq!(inst.enumeration_size(), checked_pow_u128(3, 23));

    // (i) checkpoint/resume reproduces an uninterrupted run on a truncated
    // sub-range
    let dir = tempfile::tempdir().unwrap();
    let range_end = 1u64 << 21;
    let opts = ScanOptions { chunk_size: 1 << 18, workers: 2, ..default_scan() };
    let direct = scan_range(&inst, 0, range_end, &opts).unwrap();
    assert!(direct.complete);

    let ckpt = dir.path().join("g347.ckpt");
    let interrupted = ScanOptions {
        checkpoint: Some(ckpt.clone()),
        max_chunks: Some(3),
        workers: 1,
        ..opts.clone()
    };
    let partial = scan_range(&inst, 0, range_end, &interrupted).unwrap();
    assert!(!partial.complete);
    let resumed =
        scan_range(&inst, 0, range_end, &ScanOptions { checkpoint: Some(ckpt), ..opts.clone() })
            .unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.witness_value, direct.witness_value, "resume changed the outcome");

    // (ii) any witness found passes the independent certificate
    for out in [&direct, &resumed] {
        if let Some(w) = &out.witness {
            assert!(verify_witness(&inst, w));
        }
    }

    // (iii) two independently chosen functionals agree on sampled sub-ranges
    let mut rng = SplitMix64::new(47);
    let other_functional: Vec<u64> = loop {
        let cand: Vec<u64> = (0..spec.d).map(|_| rng.below(3)).collect();
        if cand.iter().filter(|&&c| c != 0).count() >= 2 {
            break cand;
        }
    };
    let other = build_instance(&spec, Some(&other_functional)).unwrap();
    let samples =
        [(0u64, 1u64 << 20), (1 << 33, (1 << 33) + (1 << 20)), (9 << 33, (9 << 33) + (1 << 20))];
    for (start, end) in samples {
        let a = scan_range(&inst, start, end, &default_scan()).unwrap();
        let b = scan_range(&other, start, end, &default_scan()).unwrap();
        assert!(a.complete && b.complete);
        assert_eq!(
            a.witness.is_some(),
            b.witness.is_some(),
            "functional-dependent sub-range verdict at {start}..{end}"
        );
        if let Some(w) = &a.witness {
            assert!(verify_witness(&inst, w));
        }
        if let Some(w) = &b.witness {
            assert!(verify_witness(&other, w));
        }
    }

    let elapsed = t0.elapsed();
    println!("acceptance 8 (d=23 stretch instance, sub-range properties): PASS in {elapsed:?}");
}

/// The full 3^23-vector scan. Ignored by default: `cargo test --release
/// --test acceptance -- --ignored --nocapture` (hours of CPU; use
/// UNISING_WORKERS to parallelize).
#[test]
#[ignore]
fn criterion_8_g3_47_full_scan() {
    let (_, inst) = g347_instance();
    let workers = std::env::var("UNISING_WORKERS").ok().and_then(|v| v.parse().ok()).unwrap_or(8);
    let opts = ScanOptions {
        workers,
        deterministic: true,
        budget: Some(1 << 48),
        checkpoint: Some(std::env::temp_dir().join("unising-g347-full.ckpt")),
        progress: true,
        ..default_scan()
    };
    let verdict = scan(&inst, &opts).unwrap();
    if let Some(w) = &verdict.witness {
        assert!(verify_witness(&inst, w));
    }
    println!(
        "G(3,47): covered = {} after {} vectors in {} ms",
        verdict.covered, verdict.vectors_scanned, verdict.elapsed_ms
    );
}

#[test]
fn criterion_9_weight_lab_consistency() {
    let t0 = Instant::now();
    let types = [
        LieType::new(Family::A, 1).unwrap(),
        LieType::new(Family::A, 2).unwrap(),
        LieType::new(Family::A, 3).unwrap(),
        LieType::new(Family::B, 2).unwrap(),
        LieType::new(Family::C, 2).unwrap(),
        LieType::new(Family::C, 3).unwrap(),
        LieType::new(Family::D, 4).unwrap(),
        LieType::new(Family::G, 2).unwrap(),
    ];
    let mut lattice_checked = 0u32;
    for lie in types {
        for lambda in bounded_dominant(lie.rank, 4) {
            let w = WeightVec::new(lie, lambda).unwrap();
            let sat = saturated_weight_set(&w, 1_000_000).unwrap();
            assert_eq!(
                sat.contains(&vec![0i64; lie.rank]),
                in_root_lattice(&w),
                "zero-weight/root-lattice duality fails for {:?} {:?}",
                lie,
                w.coeffs
            );
            lattice_checked += 1;
        }
    }

    let mut reversal_checked = 0u32;
    for n in 2..=12usize {
        for mask in 1u32..(1 << (n - 1)) {
            let bits: Vec<u8> = (0..n - 1).map(|i| (mask >> i & 1) as u8).collect();
            let rev: Vec<u8> = bits.iter().rev().copied().collect();
            assert_eq!(
                gl2_unisingular_criterion(n, &bits).unwrap(),
                gl2_unisingular_criterion(n, &rev).unwrap(),
                "bit-reversal symmetry fails at n={n}, bits={bits:?}"
            );
            reversal_checked += 1;
        }
    }

    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "criterion 9 exceeded 30 s: {elapsed:?}");
    println!(
        "acceptance 9 (weight-lattice duality x{lattice_checked}, bit reversal x{reversal_checked}): PASS in {elapsed:?}"
    );
}

/// All coefficient vectors of the given length with non-negative entries
/// and coordinate sum at most `max_sum`.
fn bounded_dominant(rank: usize, max_sum: i64) -> Vec<Vec<i64>> {
    fn rec(rank: usize, left: i64) -> Vec<Vec<i64>> {
        if rank == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for head in 0..=left {
            for mut tail in rec(rank - 1, left - head) {
                tail.insert(0, head);
                out.push(tail);
            }
        }
        out
    }
    rec(rank, max_sum)
}

#[test]
fn grp_rep_route_matches_cover_on_examples() {
    // small spot-check tying the representation route to the scan verdicts
    let covered = rep_scan(3, 11, None, 1 << 20).unwrap();
    assert!(covered.all_eigenvalue_one);
    let uncovered = rep_scan(3, 5, None, 1 << 20).unwrap();
    assert!(!uncovered.all_eigenvalue_one);
    assert!(uncovered.counterexample.is_some());
    let fpf = has_fixed_point_free_r_element(&construct_grp(3, 5).unwrap(), 1 << 20).unwrap();
    assert_eq!(fpf.witness, uncovered.counterexample);
}
