//! Compositional solving of chains of open matrices.
//!
//! A [`Decomposition`] is a sequence of open matrices where each block's
//! outputs are the next block's inputs. When every block is functional with
//! injective legs, the boundary solution of the glued chain is the product
//! of the boundary solutions of the blocks, so each block is closed on its
//! own (`Σ nₖ³` work instead of `(Σ nₖ)³`). Otherwise the chain is glued and
//! solved in one piece.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::blackbox::is_functional;
use crate::closure::star_kleene_with_stats;
use crate::error::{Error, Result};
use crate::matrix::RectMatrix;
use crate::open_net::OpenMatrix;
use crate::quantale::Quantale;
use crate::random::{random_functional, vertex_set, RandomScalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<Q: Quantale> {
    blocks: Vec<OpenMatrix<Q>>,
}

impl<Q: Quantale> Decomposition<Q> {
    pub fn new(blocks: Vec<OpenMatrix<Q>>) -> Result<Self> {
        let first = blocks.first().ok_or(Error::EmptyDecomposition)?;
        for (k, pair) in blocks.windows(2).enumerate() {
            if pair[0].quantale() != first.quantale() || pair[1].quantale() != first.quantale() {
                return Err(Error::QuantaleMismatch {
                    left: first.quantale().id(),
                    right: pair[1].quantale().id(),
                });
            }
            if pair[0].outputs() != pair[1].inputs() {
                return Err(Error::BoundaryMismatch(format!(
                    "outputs of block {k} are not the inputs of block {}",
                    k + 1
                )));
            }
        }
        Ok(Decomposition { blocks })
    }

    pub fn blocks(&self) -> &[OpenMatrix<Q>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<OpenMatrix<Q>> {
        self.blocks
    }

    pub fn total_vertices(&self) -> usize {
        self.blocks.iter().map(|b| b.apex().len()).sum()
    }

    /// Whether solving block by block is exact: every block functional with
    /// injective legs.
    pub fn is_compositional(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| is_functional(b) && b.has_injective_legs())
    }

    /// Glues all blocks left to right.
    pub fn glue(&self) -> Result<OpenMatrix<Q>> {
        let mut blocks = self.blocks.iter();
        let first = blocks.next().expect("decompositions are nonempty").clone();
        blocks.try_fold(first, |acc, b| acc.compose(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Compositional,
    Monolithic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<Q: Quantale> {
    pub result: RectMatrix<Q>,
    pub strategy: Strategy,
    /// Wall-clock time per block (one entry for the glued whole when
    /// monolithic).
    pub block_timings: Vec<Duration>,
    pub total_vertices: usize,
    /// Relaxations performed by the closure kernel(s).
    pub elimination_ops: u64,
    /// Scalar multiplications spent combining block solutions.
    pub product_ops: u64,
}

/// Solves block by block when that is exact, otherwise falls back to
/// [`solve_monolithic`].
pub fn solve_chain<Q: Quantale>(d: &Decomposition<Q>) -> Result<SolveReport<Q>> {
    if !d.is_compositional() {
        return solve_monolithic(d);
    }
    let solved = d
        .blocks
        .par_iter()
        .map(|block| {
            let start = Instant::now();
            let (closed, stats) = star_kleene_with_stats(block.apex())?;
            let bb = closed.restrict(block.left(), block.right())?;
            Ok((bb, start.elapsed(), stats.relaxations))
        })
        .collect::<Result<Vec<_>>>()?;

    let elimination_ops = solved.iter().map(|(_, _, ops)| ops).sum();
    let block_timings = solved.iter().map(|(_, t, _)| *t).collect();
    let pieces: Vec<_> = solved.into_iter().map(|(bb, _, _)| bb).collect();
    let (result, product_ops) = reduce_balanced(&pieces)?;
    Ok(SolveReport {
        result,
        strategy: Strategy::Compositional,
        block_timings,
        total_vertices: d.total_vertices(),
        elimination_ops,
        product_ops,
    })
}

/// Product of a nonempty slice of rectangles as a balanced tree.
pub fn reduce_balanced<Q: Quantale>(pieces: &[RectMatrix<Q>]) -> Result<(RectMatrix<Q>, u64)> {
    match pieces {
        [] => Err(Error::EmptyDecomposition),
        [only] => Ok((only.clone(), 0)),
        _ => {
            let (lo, hi) = pieces.split_at(pieces.len() / 2);
            let (left, right) = rayon::join(|| reduce_balanced(lo), || reduce_balanced(hi));
            let ((left, l_ops), (right, r_ops)) = (left?, right?);
            let (product, ops) = left.product_counted(&right)?;
            Ok((product, l_ops + r_ops + ops))
        }
    }
}

/// Product of a nonempty slice of rectangles, folded from the left.
pub fn reduce_left<Q: Quantale>(pieces: &[RectMatrix<Q>]) -> Result<RectMatrix<Q>> {
    let (first, rest) = pieces.split_first().ok_or(Error::EmptyDecomposition)?;
    rest.iter().try_fold(first.clone(), |acc, p| acc.product(p))
}

/// Glues the whole chain and solves it in one closure.
pub fn solve_monolithic<Q: Quantale>(d: &Decomposition<Q>) -> Result<SolveReport<Q>> {
    let start = Instant::now();
    let glued = d.glue()?;
    let (closed, stats) = star_kleene_with_stats(glued.apex())?;
    let result = closed.restrict(glued.left(), glued.right())?;
    Ok(SolveReport {
        result,
        strategy: Strategy::Monolithic,
        block_timings: vec![start.elapsed()],
        total_vertices: d.total_vertices(),
        elimination_ops: stats.relaxations,
        product_ops: 0,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchTable {
    pub strategy: Strategy,
    pub repeats: usize,
    pub chain_median: Duration,
    pub monolithic_median: Duration,
    pub chain_elimination_ops: u64,
    pub monolithic_elimination_ops: u64,
    pub results_equal: bool,
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    samples[samples.len() / 2]
}

/// Times [`solve_chain`] against [`solve_monolithic`]. Disagreeing results
/// are a [`Error::VerificationMismatch`].
pub fn bench<Q: Quantale>(d: &Decomposition<Q>, repeats: usize) -> Result<BenchTable> {
    let repeats = repeats.max(1);
    let mut chain_times = Vec::with_capacity(repeats);
    let mut mono_times = Vec::with_capacity(repeats);
    let mut last = None;
    for _ in 0..repeats {
        let start = Instant::now();
        let chain = solve_chain(d)?;
        chain_times.push(start.elapsed());
        let start = Instant::now();
        let mono = solve_monolithic(d)?;
        mono_times.push(start.elapsed());
        last = Some((chain, mono));
    }
    let (chain, mono) = last.expect("at least one repeat");
    let results_equal = chain.result.approx_eq(&mono.result);
    if !results_equal {
        return Err(Error::VerificationMismatch(
            "compositional and monolithic solutions differ".into(),
        ));
    }
    Ok(BenchTable {
        strategy: chain.strategy,
        repeats,
        chain_median: median(chain_times),
        monolithic_median: median(mono_times),
        chain_elimination_ops: chain.elimination_ops,
        monolithic_elimination_ops: mono.elimination_ops,
        results_equal,
    })
}

/// Shape of a synthetic chain for benchmarks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainShape {
    pub blocks: usize,
    pub block_size: usize,
    pub boundary: usize,
    pub density: f64,
    pub seed: u64,
}

impl Default for ChainShape {
    fn default() -> Self {
        ChainShape {
            blocks: 8,
            block_size: 32,
            boundary: 4,
            density: 0.15,
            seed: 0,
        }
    }
}

/// A random chain of functional blocks with injective legs.
pub fn functional_chain<Q: RandomScalar>(q: &Q, shape: ChainShape) -> Result<Decomposition<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(shape.seed);
    let junctions: Vec<_> = (0..=shape.blocks)
        .map(|k| vertex_set(&format!("j{k}_"), shape.boundary))
        .collect();
    let blocks = junctions
        .windows(2)
        .map(|pair| {
            random_functional(q, shape.block_size, &pair[0], &pair[1], shape.density, &mut rng)
        })
        .collect();
    Decomposition::new(blocks)
}
