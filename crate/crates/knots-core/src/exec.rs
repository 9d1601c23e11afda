//! Execution helpers: data-parallel by default, sequential when the
//! `parallel` feature is disabled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map a batch of independent work items, preserving input order.
#[cfg(feature = "parallel")]
pub fn map_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

/// Map a batch of independent work items, preserving input order.
#[cfg(not(feature = "parallel"))]
pub fn map_vec<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Run `f` on a pool of `workers` threads (0 picks the library default).
/// Without the `parallel` feature the closure runs on the calling thread.
#[cfg(feature = "parallel")]
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    if workers == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Run `f` on a pool of `workers` threads (0 picks the library default).
/// Without the `parallel` feature the closure runs on the calling thread.
#[cfg(not(feature = "parallel"))]
pub fn with_workers<R>(workers: usize, f: impl FnOnce() -> R) -> R {
    let _ = workers;
    f()
}

/// Compile-time execution mode name, used by benches and run headers.
pub fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}
