//! Minimal fixed-width task runner for per-λ decomposition runs.
//!
//! Tasks are independent and write into disjoint output slots, so the result
//! does not depend on the number of worker threads.

use std::sync::atomic::{AtomicUsize, Ordering};

/// Runs `task(i)` for every `i < count` on up to `threads` workers and
/// collects results in index order.
pub fn run_indexed<T, F>(count: usize, threads: usize, task: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    assert!(threads >= 1, "threads must be >= 1");
    let mut slots: Vec<Option<T>> = (0..count).map(|_| None).collect();
    if threads == 1 || count <= 1 {
        for (i, slot) in slots.iter_mut().enumerate() {
            *slot = Some(task(i));
        }
    } else {
        let next = AtomicUsize::new(0);
        let slot_ptr = SlotPtr(slots.as_mut_ptr());
        let workers = threads.min(count);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                let next = &next;
                let task = &task;
                let slot_ptr = &slot_ptr;
                scope.spawn(move || loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= count {
                        break;
                    }
                    let value = task(i);
                    // Each index is claimed exactly once, so the write is
                    // exclusive to this worker.
                    unsafe {
                        *slot_ptr.0.add(i) = Some(value);
                    }
                });
            }
        });
    }
    slots.into_iter().map(|s| s.unwrap()).collect()
}

struct SlotPtr<T>(*mut Option<T>);
unsafe impl<T: Send> Sync for SlotPtr<T> {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_result_any_thread_count() {
        let square = |i: usize| i * i;
        let one = run_indexed(17, 1, square);
        let four = run_indexed(17, 4, square);
        assert_eq!(one, four);
        assert_eq!(one[5], 25);
    }
}
