//! Chunked scan machinery behind the covering verdicts.
//!
//! The canonical enumeration [start, end) is split into fixed-size chunks.
//! Workers claim chunks from an atomic dispenser and scan them with an
//! early-exit dot-product kernel; r = 2 and r = 3 get bit-packed kernels
//! (one, respectively two, bit planes per coordinate with popcount
//! reductions), everything else takes the generic digit path.
//!
//! The only shared state is the monotonically decreasing "best witness"
//! cell. In deterministic mode a chunk is skipped exactly when every value
//! in it exceeds the current best, which cannot discard the least witness,
//! so the result is independent of worker count and scheduling.

use super::checkpoint::Checkpoint;
use super::{CoveringInstance, ScanOptions, Strategy};
use crate::error::Result;
use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

const NO_WITNESS: u64 = u64::MAX;
const BEST_CHECK_MASK: u64 = 0x1fff;

pub(super) struct RangeOutcome {
    pub complete: bool,
    pub best: Option<u64>,
    pub tested: u64,
    pub chunks_resolved: u64,
    pub chunks_total: u64,
}

struct ChunkOutcome {
    witness: Option<u64>,
    tested: u64,
}

pub(super) fn run_range(
    inst: &CoveringInstance,
    start: u64,
    end: u64,
    opts: &ScanOptions,
) -> Result<RangeOutcome> {
    if start >= end {
        return Ok(RangeOutcome { complete: true, best: None, tested: 0, chunks_resolved: 0, chunks_total: 0 });
    }
    let chunk_size = opts.chunk_size.max(1);
    let nchunks = (end - start).div_ceil(chunk_size);

    let (ckpt, done, seed) = match &opts.checkpoint {
        Some(path) => {
            let header = checkpoint_header(inst, start, end, opts);
            let (ckpt, state) = Checkpoint::open(path, &header)?;
            (Some(Mutex::new(ckpt)), state.done, state.candidate)
        }
        None => (None, HashSet::new(), None),
    };

    let kernel = Kernel::new(inst);
    let best = AtomicU64::new(seed.unwrap_or(NO_WITNESS));
    let dispenser = AtomicU64::new(0);
    let resolved = AtomicU64::new(done.len() as u64);
    let newly = AtomicU64::new(0);
    let tested = AtomicU64::new(0);
    let normalized = opts.strategy == Strategy::ScalarNormalized;

    let worker = || -> Result<()> {
        loop {
            if let Some(max) = opts.max_chunks {
                if newly.load(Ordering::Relaxed) >= max {
                    return Ok(());
                }
            }
            let i = dispenser.fetch_add(1, Ordering::Relaxed);
            if i >= nchunks {
                return Ok(());
            }
            if done.contains(&i) {
                continue;
            }
            let c_start = start + i * chunk_size;
            let c_end = c_start.saturating_add(chunk_size).min(end);
            let b = best.load(Ordering::Relaxed);
            let skip = if opts.deterministic { c_start > b } else { b != NO_WITNESS };
            let out = if skip {
                ChunkOutcome { witness: None, tested: 0 }
            } else {
                kernel.scan_chunk(c_start, c_end, normalized, &best, opts.deterministic)
            };
            tested.fetch_add(out.tested, Ordering::Relaxed);
            if let Some(w) = out.witness {
                atomic_min(&best, w);
            }
            if let Some(ckpt) = &ckpt {
                let wit = out.witness.map(|v| inst.decode(v));
                ckpt.lock().unwrap().record_done(i, wit.as_deref())?;
            }
            newly.fetch_add(1, Ordering::Relaxed);
            let res = resolved.fetch_add(1, Ordering::Relaxed) + 1;
            if opts.progress && (res.is_multiple_of(64) || res == nchunks) {
                eprintln!("scan progress: {res}/{nchunks} chunks");
            }
        }
    };

    let workers = opts.workers.max(1).min(nchunks as usize);
    if workers <= 1 {
        worker()?;
    } else {
        std::thread::scope(|scope| -> Result<()> {
            let handles: Vec<_> = (0..workers).map(|_| scope.spawn(worker)).collect();
            for h in handles {
                h.join().expect("scan worker panicked")?;
            }
            Ok(())
        })?;
    }

    let best_val = best.load(Ordering::Relaxed);
    let best_opt = (best_val != NO_WITNESS).then_some(best_val);
    let res = resolved.load(Ordering::Relaxed);
    let complete = res >= nchunks || (!opts.deterministic && best_opt.is_some());
    Ok(RangeOutcome {
        complete,
        best: best_opt,
        tested: tested.load(Ordering::Relaxed),
        chunks_resolved: res,
        chunks_total: nchunks,
    })
}

fn checkpoint_header(inst: &CoveringInstance, start: u64, end: u64, opts: &ScanOptions) -> String {
    let functional: Vec<String> = inst.normals()[0].iter().map(|c| c.to_string()).collect();
    format!(
        "r={} p={} d={} strategy={} mode={} range={}..{} chunk={} functional={}",
        inst.r,
        inst.p,
        inst.d,
        opts.strategy.name(),
        if opts.deterministic { "least" } else { "first" },
        start,
        end,
        opts.chunk_size.max(1),
        functional.join(",")
    )
}

fn atomic_min(cell: &AtomicU64, value: u64) {
    let mut cur = cell.load(Ordering::Relaxed);
    while value < cur {
        match cell.compare_exchange_weak(cur, value, Ordering::Relaxed, Ordering::Relaxed) {
            Ok(_) => return,
            Err(seen) => cur = seen,
        }
    }
}

enum Kernel<'a> {
    /// r = 2: a vector is its own bitmask, dot products are parities.
    Bits { masks: Vec<u64> },
    /// r = 3: planes (lo, hi) with lo bit i set iff digit i = 1 and hi bit i
    /// set iff digit i = 2; a dot product is two popcounts.
    Trits { planes: Vec<(u64, u64)>, d: usize },
    Generic { inst: &'a CoveringInstance },
}

impl<'a> Kernel<'a> {
    fn new(inst: &'a CoveringInstance) -> Self {
        match inst.r {
            2 => Kernel::Bits {
                masks: inst
                    .normals()
                    .iter()
                    .map(|n| n.iter().enumerate().fold(0u64, |m, (i, &c)| m | (c & 1) << i))
                    .collect(),
            },
            3 => Kernel::Trits {
                planes: inst
                    .normals()
                    .iter()
                    .map(|n| {
                        let mut lo = 0u64;
                        let mut hi = 0u64;
                        for (i, &c) in n.iter().enumerate() {
                            match c {
                                1 => lo |= 1 << i,
                                2 => hi |= 1 << i,
                                _ => {}
                            }
                        }
                        (lo, hi)
                    })
                    .collect(),
                d: inst.d,
            },
            _ => Kernel::Generic { inst },
        }
    }

    fn scan_chunk(
        &self,
        start: u64,
        end: u64,
        normalized: bool,
        best: &AtomicU64,
        deterministic: bool,
    ) -> ChunkOutcome {
        match self {
            Kernel::Bits { masks } => scan_bits(masks, start, end, normalized, best, deterministic),
            Kernel::Trits { planes, d } => {
                scan_trits(planes, *d, start, end, normalized, best, deterministic)
            }
            Kernel::Generic { inst } => {
                scan_generic(inst, start, end, normalized, best, deterministic)
            }
        }
    }
}

#[inline]
fn should_abort(best: &AtomicU64, value: u64, deterministic: bool) -> bool {
    let b = best.load(Ordering::Relaxed);
    if deterministic {
        value > b
    } else {
        b != NO_WITNESS
    }
}

fn scan_bits(
    masks: &[u64],
    start: u64,
    end: u64,
    normalized: bool,
    best: &AtomicU64,
    deterministic: bool,
) -> ChunkOutcome {
    let mut tested = 0u64;
    for k in start..end {
        if k & BEST_CHECK_MASK == 0 && should_abort(best, k, deterministic) {
            return ChunkOutcome { witness: None, tested };
        }
        // over F_2 every nonzero vector already has first nonzero digit 1
        if normalized && k == 0 {
            continue;
        }
        tested += 1;
        let mut covered = false;
        for &m in masks {
            if (m & k).count_ones() & 1 == 0 {
                covered = true;
                break;
            }
        }
        if !covered {
            return ChunkOutcome { witness: Some(k), tested };
        }
    }
    ChunkOutcome { witness: None, tested }
}

fn scan_trits(
    planes: &[(u64, u64)],
    d: usize,
    start: u64,
    end: u64,
    normalized: bool,
    best: &AtomicU64,
    deterministic: bool,
) -> ChunkOutcome {
    let (mut lo, mut hi) = (0u64, 0u64);
    let mut v = start;
    for i in 0..d {
        match v % 3 {
            1 => lo |= 1 << i,
            2 => hi |= 1 << i,
            _ => {}
        }
        v /= 3;
    }
    let mut tested = 0u64;
    let mut k = start;
    while k < end {
        if k & BEST_CHECK_MASK == 0 && should_abort(best, k, deterministic) {
            return ChunkOutcome { witness: None, tested };
        }
        let m = lo | hi;
        let skip = normalized && (m == 0 || hi >> m.trailing_zeros() & 1 == 1);
        if !skip {
            tested += 1;
            let mut covered = false;
            for &(nlo, nhi) in planes {
                let ones = ((nlo & lo) | (nhi & hi)).count_ones();
                let twos = ((nlo & hi) | (nhi & lo)).count_ones();
                if (ones + 2 * twos) % 3 == 0 {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return ChunkOutcome { witness: Some(k), tested };
            }
        }
        // add one to the trit counter: a run of low 2-digits wraps to 0
        let run = (!hi).trailing_zeros();
        hi &= !((1u64 << run) - 1);
        let bit = 1u64 << run;
        if lo & bit != 0 {
            lo ^= bit;
            hi |= bit;
        } else {
            lo |= bit;
        }
        k += 1;
    }
    ChunkOutcome { witness: None, tested }
}

fn scan_generic(
    inst: &CoveringInstance,
    start: u64,
    end: u64,
    normalized: bool,
    best: &AtomicU64,
    deterministic: bool,
) -> ChunkOutcome {
    let r = inst.r;
    let mut digits = inst.decode(start);
    let mut tested = 0u64;
    let mut k = start;
    while k < end {
        if k & BEST_CHECK_MASK == 0 && should_abort(best, k, deterministic) {
            return ChunkOutcome { witness: None, tested };
        }
        let skip = normalized && digits.iter().find(|&&c| c != 0) != Some(&1);
        if !skip {
            tested += 1;
            let mut covered = false;
            for n in inst.normals() {
                let mut acc: u128 = 0;
                for (a, b) in n.iter().zip(&digits) {
                    acc += *a as u128 * *b as u128;
                }
                if acc.is_multiple_of(r as u128) {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return ChunkOutcome { witness: Some(k), tested };
            }
        }
        for slot in digits.iter_mut() {
            *slot += 1;
            if *slot == r {
                *slot = 0;
            } else {
                break;
            }
        }
        k += 1;
    }
    ChunkOutcome { witness: None, tested }
}
