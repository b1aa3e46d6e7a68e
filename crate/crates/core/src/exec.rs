//! Chunked execution shared by every stochastic engine.

/// How independent work items are scheduled.
///
/// The result of every engine in this crate is independent of this choice;
/// only wall-clock time changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Runs on the current rayon pool. Without the `parallel` feature this
    /// falls back to sequential execution.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Number of rounds simulated per random stream.
pub const ROUNDS_PER_CHUNK: usize = 4096;

impl Execution {
    /// Maps `f` over `0..n`, returning results in index order.
    pub fn map_indices<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..n).map(f).collect(),
            Execution::Parallel => par_map(n, f),
        }
    }

    /// Splits `rounds` into chunks of [`ROUNDS_PER_CHUNK`] and maps
    /// `f(chunk_index, start, len)` over them, in chunk order.
    pub fn map_chunks<R, F>(self, rounds: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize, usize, usize) -> R + Sync + Send,
    {
        let chunks = rounds.div_ceil(ROUNDS_PER_CHUNK);
        self.map_indices(chunks, |i| {
            let start = i * ROUNDS_PER_CHUNK;
            let len = ROUNDS_PER_CHUNK.min(rounds - start);
            f(i, start, len)
        })
    }
}

#[cfg(feature = "parallel")]
fn par_map<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Sizes the global rayon pool. Returns `false` if the pool was already
/// initialised (or the `parallel` feature is off).
pub fn configure_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}
