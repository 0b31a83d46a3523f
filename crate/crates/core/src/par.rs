//! Deterministic chunked scans over an index range using scoped threads.

use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};

fn chunks(len: usize, threads: usize) -> Vec<Range<usize>> {
    let threads = threads.clamp(1, len.max(1));
    let size = len.div_ceil(threads);
    (0..threads).map(|t| (t * size).min(len)..((t + 1) * size).min(len)).collect()
}

/// The least index `i < len` for which `probe(i)` is `Some`, with its payload.
///
/// Workers own contiguous chunks and stop early once a lower index has hit, so
/// the answer does not depend on `threads`.
pub(crate) fn first_hit<T, F>(len: usize, threads: usize, probe: F) -> Option<(usize, T)>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync,
{
    if threads <= 1 || len < 2 {
        return (0..len).find_map(|i| probe(i).map(|t| (i, t)));
    }
    let best = AtomicUsize::new(usize::MAX);
    let probe = &probe;
    let best = &best;
    let hits: Vec<Option<(usize, T)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks(len, threads)
            .into_iter()
            .map(|range| {
                scope.spawn(move || {
                    for i in range {
                        if best.load(Ordering::Relaxed) < i {
                            return None;
                        }
                        if let Some(t) = probe(i) {
                            best.fetch_min(i, Ordering::Relaxed);
                            return Some((i, t));
                        }
                    }
                    None
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    hits.into_iter().flatten().min_by_key(|(i, _)| *i)
}

/// Maps every chunk of `0..len` through `work` and returns the results in
/// chunk order.
pub(crate) fn map_chunks<T, F>(len: usize, threads: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync,
{
    if threads <= 1 {
        return vec![work(0..len)];
    }
    let work = &work;
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks(len, threads).into_iter().map(|r| scope.spawn(move || work(r))).collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    })
}
