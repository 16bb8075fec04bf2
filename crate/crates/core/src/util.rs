//! Small shared utilities.

/// Applies `f` to every item on up to `threads` scoped worker threads,
/// returning results in input order. Falls back to a plain loop for one
/// thread or tiny inputs. Output is independent of the thread count.
pub fn parallel_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 || items.len() < 2 {
        return items.iter().map(&f).collect();
    }

    let mut slots: Vec<Option<R>> = Vec::with_capacity(items.len());
    slots.resize_with(items.len(), || None);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots_ptr = std::sync::Mutex::new(&mut slots);

    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for _ in 0..threads {
            let f = &f;
            let next = &next;
            handles.push(scope.spawn(move || {
                let mut local: Vec<(usize, R)> = Vec::new();
                loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if i >= items.len() {
                        break;
                    }
                    local.push((i, f(&items[i])));
                }
                local
            }));
        }
        for h in handles {
            let produced = h.join().expect("worker thread panicked");
            let mut guard = slots_ptr.lock().unwrap();
            for (i, r) in produced {
                guard[i] = Some(r);
            }
        }
    });

    slots.into_iter().map(|s| s.expect("slot filled")).collect()
}

/// Number of logical cores, used as the default worker cap.
pub fn default_threads() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
