//! Sequential and data-parallel execution of independent work items.
//!
//! Monte Carlo loops and random-case sweeps are split into fixed-size chunks.
//! Each chunk draws from its own random substream, keyed by
//! `(seed, chunk index)`, and chunk results are combined in index order. The
//! result is therefore bit-identical whichever strategy runs the chunks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random generator used for every stochastic computation in the crate.
pub type Rng = ChaCha8Rng;

/// Samples per chunk in Monte Carlo loops.
pub const CHUNK: usize = 8192;

/// How independent items are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled, otherwise
    /// falls back to sequential execution.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Map `f` over `0..n`, returning results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Split `n` items into chunks of [`CHUNK`], give each chunk its own
    /// substream and fold with `f(rng, start, len)`. Chunk results come back
    /// in chunk order.
    pub fn map_chunks<T, F>(self, n: usize, seed: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut Rng, usize, usize) -> T + Sync + Send,
    {
        let chunks = n.div_ceil(CHUNK);
        self.map(chunks, |c| {
            let start = c * CHUNK;
            let len = CHUNK.min(n - start);
            let mut rng = substream(seed, c as u64);
            f(&mut rng, start, len)
        })
    }
}

/// Deterministic independent generator for `(seed, stream)`.
pub fn substream(seed: u64, stream: u64) -> Rng {
    let mut rng = Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
