//! Index-ordered map over independent work items.
//!
//! With the `parallel` feature the map runs on a rayon pool; without it, or
//! with one job, it is a plain loop. Results always come back in index order,
//! so callers see identical output for any job count.

#[cfg(feature = "parallel")]
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Exec {
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
    parallel: bool,
}

impl Default for Exec {
    fn default() -> Self {
        Exec::new(None)
    }
}

impl Exec {
    pub fn sequential() -> Self {
        Exec {
            #[cfg(feature = "parallel")]
            pool: None,
            parallel: false,
        }
    }

    /// `None` uses every core, `Some(1)` runs sequentially.
    #[cfg(feature = "parallel")]
    pub fn new(jobs: Option<usize>) -> Self {
        match jobs {
            Some(1) => Exec::sequential(),
            Some(0) | None => Exec { pool: None, parallel: true },
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .expect("thread pool");
                Exec { pool: Some(Arc::new(pool)), parallel: true }
            }
        }
    }

    #[cfg(not(feature = "parallel"))]
    pub fn new(_jobs: Option<usize>) -> Self {
        Exec::sequential()
    }

    pub fn is_parallel(&self) -> bool {
        self.parallel
    }

    pub fn map<R, F>(&self, count: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel {
            use rayon::prelude::*;
            let run = || (0..count).into_par_iter().map(&f).collect();
            return match &self.pool {
                Some(pool) => pool.install(run),
                None => run(),
            };
        }
        (0..count).map(f).collect()
    }
}
