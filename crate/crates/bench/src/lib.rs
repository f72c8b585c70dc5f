//! Seeded inputs shared by the benchmarks.

use openpath_core::random::{random_matrix, vertex_set, RandomScalar};
use openpath_core::solver::{functional_chain, ChainShape};
use openpath_core::{Decomposition, SquareMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Closure sizes exercised by the `closure` benchmark.
pub const CLOSURE_SIZES: [usize; 4] = [16, 32, 64, 128];

pub fn square<Q: RandomScalar>(q: &Q, n: usize, density: f64, seed: u64) -> SquareMatrix<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix(q, &vertex_set("v", n), density, &mut rng)
}

/// A chain of `blocks` functional blocks of `block_size` vertices.
pub fn chain<Q: RandomScalar>(q: &Q, blocks: usize, block_size: usize, seed: u64) -> Decomposition<Q> {
    functional_chain(
        q,
        ChainShape {
            blocks,
            block_size,
            seed,
            ..ChainShape::default()
        },
    )
    .expect("generated blocks share boundaries")
}
