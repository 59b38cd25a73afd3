//! Deterministic range-partitioned parallelism.
//!
//! Enumeration spaces are split into contiguous index ranges, one per worker;
//! each worker returns its results in range order and the chunks are
//! concatenated in order, so the merged output is independent of the worker
//! count.

use std::env;
use std::ops::Range;

/// Default worker count: `FQRG_WORKERS`, else the available parallelism.
pub fn default_workers() -> usize {
    if let Ok(value) = env::var("FQRG_WORKERS") {
        if let Ok(parsed) = value.parse::<usize>() {
            if parsed >= 1 {
                return parsed;
            }
        }
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Run `f` over `0..total` split into `workers` contiguous ranges and
/// concatenate the per-range outputs in range order.
pub fn run_partitioned<T, F>(total: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> Vec<T> + Sync,
{
    let workers = workers.max(1).min(total.max(1) as usize);
    if workers == 1 {
        return f(0..total);
    }
    let chunk = total.div_ceil(workers as u64);
    let ranges: Vec<Range<u64>> = (0..workers as u64)
        .map(|w| (w * chunk).min(total)..((w + 1) * chunk).min(total))
        .collect();
    let mut out = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| scope.spawn(|| f(range)))
            .collect();
        for handle in handles {
            out.extend(handle.join().expect("worker panicked"));
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitioned_run_is_order_preserving() {
        let single = run_partitioned(1000, 1, |r| r.collect::<Vec<_>>());
        for workers in [2, 3, 7, 16] {
            let multi = run_partitioned(1000, workers, |r| r.collect::<Vec<_>>());
            assert_eq!(single, multi);
        }
    }
}
