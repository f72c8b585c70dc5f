//! Seeded random instances: scalars, matrices, functions and open matrices.
//!
//! Used by the packaged law suite, the benchmark harness and the tests.
//! Float weights for `minplus` and `maxmin` are multiples of 1/4 so sums
//! are exact and results can be compared bit for bit.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::matrix::SquareMatrix;
use crate::open_net::OpenMatrix;
use crate::quantale::{Boolean, Language, MaxMin, MinPlus, Quantale, Viterbi, WordSet};
use crate::vertex::{SetFunction, VertexSet};

pub trait RandomScalar: Quantale {
    /// An arbitrary element of the domain, possibly bottom or unit.
    fn random_scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Scalar;
}

fn quarter<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    f64::from(rng.random_range(0u32..=40)) / 4.0
}

impl RandomScalar for MinPlus {
    fn random_scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match rng.random_range(0..10) {
            0 => f64::INFINITY,
            1 => 0.0,
            _ => quarter(rng),
        }
    }
}

impl RandomScalar for MaxMin {
    fn random_scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match rng.random_range(0..10) {
            0 => f64::INFINITY,
            1 => 0.0,
            _ => quarter(rng),
        }
    }
}

impl RandomScalar for Viterbi {
    fn random_scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match rng.random_range(0..10) {
            0 => 1.0,
            1 => 0.0,
            _ => rng.random::<f64>(),
        }
    }
}

impl RandomScalar for Boolean {
    fn random_scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        rng.random_bool(0.5)
    }
}

impl RandomScalar for Language {
    fn random_scalar<R: Rng + ?Sized>(&self, rng: &mut R) -> WordSet {
        let longest = self.max_len().min(2);
        let count = rng.random_range(0..=3);
        (0..count)
            .map(|_| {
                let len = rng.random_range(0..=longest);
                (0..len)
                    .map(|_| *self.alphabet().choose(rng).expect("alphabet is nonempty"))
                    .collect::<String>()
            })
            .collect()
    }
}

/// Draws a non-bottom scalar, retrying a bounded number of times.
pub fn random_nonbottom<Q: RandomScalar, R: Rng + ?Sized>(q: &Q, rng: &mut R) -> Q::Scalar {
    for _ in 0..64 {
        let s = q.random_scalar(rng);
        if !q.is_bottom(&s) {
            return s;
        }
    }
    q.unit()
}

pub fn vertex_set(prefix: &str, n: usize) -> VertexSet {
    VertexSet::new((0..n).map(|i| format!("{prefix}{i}"))).expect("generated names are distinct")
}

/// Each entry is non-bottom with probability `density`.
pub fn random_matrix<Q: RandomScalar, R: Rng + ?Sized>(
    q: &Q,
    vertices: &VertexSet,
    density: f64,
    rng: &mut R,
) -> SquareMatrix<Q> {
    let n = vertices.len();
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.random_bool(density) {
                        random_nonbottom(q, rng)
                    } else {
                        q.bottom()
                    }
                })
                .collect()
        })
        .collect();
    SquareMatrix::from_dense(q.clone(), vertices.clone(), rows).expect("generated scalars are valid")
}

/// A function into a nonempty codomain (or out of an empty domain).
pub fn random_function<R: Rng + ?Sized>(
    domain: &VertexSet,
    codomain: &VertexSet,
    rng: &mut R,
) -> SetFunction {
    assert!(domain.is_empty() || !codomain.is_empty());
    let table = (0..domain.len())
        .map(|_| rng.random_range(0..codomain.len()))
        .collect();
    SetFunction::from_indices(domain.clone(), codomain.clone(), table).expect("indices in range")
}

/// An injection; the codomain must be at least as large as the domain.
pub fn random_injection<R: Rng + ?Sized>(
    domain: &VertexSet,
    codomain: &VertexSet,
    rng: &mut R,
) -> SetFunction {
    assert!(domain.len() <= codomain.len());
    let mut targets: Vec<usize> = (0..codomain.len()).collect();
    targets.shuffle(rng);
    targets.truncate(domain.len());
    SetFunction::from_indices(domain.clone(), codomain.clone(), targets).expect("indices in range")
}

/// A random open matrix on `apex_size` vertices (`apex_size ≥ 1` whenever a
/// boundary is nonempty).
pub fn random_open<Q: RandomScalar, R: Rng + ?Sized>(
    q: &Q,
    apex_size: usize,
    inputs: &VertexSet,
    outputs: &VertexSet,
    density: f64,
    rng: &mut R,
) -> OpenMatrix<Q> {
    let apex_set = vertex_set("v", apex_size);
    let apex = random_matrix(q, &apex_set, density, rng);
    let left = random_function(inputs, &apex_set, rng);
    let right = random_function(outputs, &apex_set, rng);
    OpenMatrix::new(apex, left, right).expect("legs land in the apex")
}

/// A random functional open matrix with injective legs. Requires
/// `apex_size ≥ max(|inputs|, |outputs|)`.
pub fn random_functional<Q: RandomScalar, R: Rng + ?Sized>(
    q: &Q,
    apex_size: usize,
    inputs: &VertexSet,
    outputs: &VertexSet,
    density: f64,
    rng: &mut R,
) -> OpenMatrix<Q> {
    let apex_set = vertex_set("v", apex_size);
    let left = random_injection(inputs, &apex_set, rng);
    let right = random_injection(outputs, &apex_set, rng);
    let mut rows = random_matrix(q, &apex_set, density, rng).to_rows();
    for &src in left.table() {
        for row in rows.iter_mut() {
            row[src] = q.bottom();
        }
    }
    for &snk in right.table() {
        rows[snk].fill(q.bottom());
    }
    let apex = SquareMatrix::from_dense(q.clone(), apex_set, rows).expect("valid scalars");
    OpenMatrix::new(apex, left, right).expect("legs land in the apex")
}
