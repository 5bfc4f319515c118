use std::ops::Range;
use std::thread;

/// Splits `0..total` into at most `jobs` contiguous ranges, runs `work` on
/// each in its own scoped thread, and concatenates the results in range order.
/// The output is identical for every `jobs >= 1`.
pub fn map_ranges<T, W>(jobs: usize, total: usize, work: W) -> Vec<T>
where
    T: Send,
    W: Fn(Range<usize>) -> Vec<T> + Sync,
{
    let jobs = jobs.clamp(1, total.max(1));
    if jobs == 1 {
        return work(0..total);
    }
    let chunk = total.div_ceil(jobs);
    let ranges: Vec<Range<usize>> = (0..jobs)
        .map(|k| (k * chunk).min(total)..((k + 1) * chunk).min(total))
        .collect();
    thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                let work = &work;
                s.spawn(move || work(r))
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
