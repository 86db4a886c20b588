//! Deterministic fan-out over index ranges using scoped threads.
//!
//! Results never depend on the worker count: searches report the smallest
//! matching index and maps preserve input order.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

const CHUNK: u64 = 1024;

fn workers(jobs: usize) -> usize {
    jobs.max(1)
}

/// Smallest index in `0..total` with `pred(index)`, scanning in parallel.
pub fn find_first<F>(total: u128, jobs: usize, pred: F) -> Option<u128>
where
    F: Fn(u128) -> bool + Sync,
{
    let total = u64::try_from(total).expect("index range exceeds u64");
    if workers(jobs) == 1 || total <= CHUNK {
        return (0..total).find(|&i| pred(i as u128)).map(|i| i as u128);
    }
    let best = AtomicU64::new(u64::MAX);
    let next = AtomicU64::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers(jobs) {
            s.spawn(|| loop {
                let start = next.fetch_add(CHUNK, Ordering::Relaxed);
                if start >= total || start >= best.load(Ordering::Relaxed) {
                    break;
                }
                let end = (start + CHUNK).min(total);
                if let Some(i) = (start..end).find(|&i| pred(i as u128)) {
                    best.fetch_min(i, Ordering::Relaxed);
                    break;
                }
            });
        }
    });
    let b = best.into_inner();
    (b != u64::MAX).then_some(b as u128)
}

/// `f` applied to every index in `0..total`, results in index order.
pub fn map_range<T, F>(total: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if workers(jobs) == 1 || total <= 1 {
        return (0..total).map(f).collect();
    }
    let slots: Vec<Mutex<Option<T>>> = (0..total).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers(jobs).min(total) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= total {
                    break;
                }
                let v = f(i);
                *slots[i].lock().unwrap() = Some(v);
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect()
}

/// Number of indices in `0..total` satisfying `pred`.
pub fn count<F>(total: u128, jobs: usize, pred: F) -> u128
where
    F: Fn(u128) -> bool + Sync,
{
    let total = u64::try_from(total).expect("index range exceeds u64");
    let chunks = total.div_ceil(CHUNK) as usize;
    map_range(chunks, jobs, |c| {
        let start = c as u64 * CHUNK;
        let end = (start + CHUNK).min(total);
        (start..end).filter(|&i| pred(i as u128)).count() as u128
    })
    .into_iter()
    .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_independent_of_jobs() {
        let pred = |i: u128| i % 7919 == 7918 || i == 123_456;
        for jobs in [1, 2, 4, 8] {
            assert_eq!(find_first(200_000, jobs, pred), Some(7918));
            assert_eq!(find_first(5_000, jobs, |_| false), None);
        }
    }

    #[test]
    fn map_and_count_preserve_order() {
        for jobs in [1, 3] {
            assert_eq!(map_range(10, jobs, |i| i * i), (0..10).map(|i| i * i).collect::<Vec<_>>());
            assert_eq!(count(10_000, jobs, |i| i % 3 == 0), 3334);
        }
    }
}
