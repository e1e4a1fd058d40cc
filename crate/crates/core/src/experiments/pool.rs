//! Deterministic chunked map-reduce over matrix indices.
//!
//! Work is split into fixed-size chunks of consecutive matrix indices.
//! Workers grab chunks from a shared counter, but results are folded in
//! chunk order, and each chunk is a pure function of `(seed, dim, index
//! range)` — so the output is byte-identical for any worker count.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::Result;

/// Chunk size in matrix indices. Fixed so the merge tree never depends on
/// the worker count.
pub(crate) const CHUNK: u64 = 256;

/// Runs `work` over `0..n` split into [`CHUNK`]-sized ranges on `workers`
/// threads, returning chunk results in index order. The first error in
/// chunk order wins.
pub(crate) fn run_chunks<R, F>(n: u64, workers: usize, work: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(Range<u64>) -> Result<R> + Sync,
{
    let n_chunks = n.div_ceil(CHUNK) as usize;
    let slots: Mutex<Vec<Option<Result<R>>>> = Mutex::new((0..n_chunks).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let threads = workers.clamp(1, n_chunks.max(1));

    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let c = next.fetch_add(1, Ordering::Relaxed);
                if c >= n_chunks {
                    break;
                }
                let lo = c as u64 * CHUNK;
                let hi = (lo + CHUNK).min(n);
                let r = work(lo..hi);
                slots.lock().expect("pool poisoned")[c] = Some(r);
            });
        }
    });

    slots
        .into_inner()
        .expect("pool poisoned")
        .into_iter()
        .map(|slot| slot.expect("chunk not computed"))
        .collect()
}
