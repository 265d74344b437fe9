//! Chunk-parallel scans. Workers pull chunk indices from a shared counter and
//! keep private accumulators; the merge is commutative, so the result does
//! not depend on the worker count or on scheduling.

use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use distspec_core::enumeration::{
    chunk_count, lemma_bounds, lemma_scan_chunk, scan_chunk, EnumError, LemmaConclusionReport, ScanAccumulator,
    ScanReport,
};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "DISTSPEC_WORKERS";

/// `DISTSPEC_WORKERS` if set to a positive integer, else the available parallelism.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, NonZeroUsize::get))
}

fn run_chunks<T, F, M>(n: usize, workers: usize, init: impl Fn() -> T + Sync, work: F, merge: M) -> Result<T, EnumError>
where
    T: Send,
    F: Fn(u64) -> Result<T, EnumError> + Sync,
    M: Fn(&mut T, T) + Sync,
{
    let chunks = chunk_count(n)?;
    let next = AtomicU64::new(1);
    let failure: Mutex<Option<EnumError>> = Mutex::new(None);
    let partials: Vec<T> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers.max(1))
            .map(|_| {
                s.spawn(|| {
                    let mut acc = init();
                    loop {
                        let c = next.fetch_add(1, Ordering::Relaxed);
                        if c >= chunks || failure.lock().expect("poisoned").is_some() {
                            break;
                        }
                        match work(c) {
                            Ok(part) => merge(&mut acc, part),
                            Err(e) => {
                                failure.lock().expect("poisoned").get_or_insert(e);
                                break;
                            }
                        }
                    }
                    acc
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    if let Some(e) = failure.into_inner().expect("poisoned") {
        return Err(e);
    }
    let mut total = init();
    for p in partials {
        merge(&mut total, p);
    }
    Ok(total)
}

/// Extremal scan of order `n` over `workers` threads.
pub fn parallel_scan(n: usize, top_k: usize, tie_tol: f64, workers: usize) -> Result<ScanReport, EnumError> {
    let start = Instant::now();
    let acc = run_chunks(
        n,
        workers,
        || ScanAccumulator::new(n, top_k, tie_tol),
        |c| scan_chunk(n, c, top_k, tie_tol),
        |a, b| a.merge(b),
    )?;
    acc.finish(start.elapsed().as_secs_f64())
}

/// Reduction-lemma conclusion scan of order `n` over `workers` threads.
pub fn parallel_lemma_scan(n: usize, workers: usize) -> Result<LemmaConclusionReport, EnumError> {
    let bounds = lemma_bounds(n)?;
    run_chunks(
        n,
        workers,
        || LemmaConclusionReport::new(n),
        |c| lemma_scan_chunk(n, c, &bounds),
        |a, b| a.merge(b),
    )
}
