//! Worker-pool handle passed to the shardable operations.
//!
//! Every operation that accepts an [`Exec`] must return identical results for
//! any worker count; sharded results are combined with associative,
//! order-respecting rules (minimum counterexample, first shard on ties).
//! Without the `parallel` feature all work runs on the calling thread.

#[cfg(feature = "parallel")]
use std::sync::Arc;

#[derive(Clone)]
pub struct Exec {
    workers: usize,
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl Exec {
    /// Single-threaded execution.
    pub fn sequential() -> Self {
        Exec {
            workers: 1,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// A pool with `n` workers. `n <= 1` (or a build without the `parallel`
    /// feature) falls back to sequential execution.
    pub fn with_workers(n: usize) -> Self {
        #[cfg(feature = "parallel")]
        {
            if n > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .expect("failed to build worker pool");
                return Exec {
                    workers: n,
                    pool: Some(Arc::new(pool)),
                };
            }
        }
        let _ = n;
        Exec::sequential()
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn is_parallel(&self) -> bool {
        self.workers > 1
    }

    /// Runs `f` inside the pool when parallel, directly otherwise.
    pub fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(f);
        }
        f()
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::sequential()
    }
}

impl std::fmt::Debug for Exec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Exec").field("workers", &self.workers).finish()
    }
}
