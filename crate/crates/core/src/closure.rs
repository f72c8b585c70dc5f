//! The algebraic path problem `F(M) = Σ_{n≥0} Mⁿ`.
//!
//! [`star_kleene`] is the production kernel (cubic elimination).
//! [`star_fixpoint`] iterates `S ← 1 + M·S` and exists to cross-check it.

use crate::error::{Error, Result};
use crate::matrix::{matrix_pushout, SquareMatrix};
use crate::quantale::Quantale;
use crate::vertex::SetFunction;

/// Work done by the elimination kernel.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClosureStats {
    /// Inner-loop entry updates `M(i,j) += M(i,k)·M(k,k)*·M(k,j)`.
    pub relaxations: u64,
}

/// Floyd–Warshall–Kleene elimination on a row-major dense `n × n` buffer,
/// in place. Pivots run in index order. Returns the number of relaxations.
pub(crate) fn kleene_in_place<Q: Quantale>(q: &Q, data: &mut [Q::Scalar], n: usize) -> Result<u64> {
    let mut relaxations = 0u64;
    for k in 0..n {
        let loop_star = q.star(&data[k * n + k])?;
        // row k scaled by the pivot's loop closure, snapshot before updating
        let row: Vec<Option<Q::Scalar>> = (0..n)
            .map(|j| {
                let v = &data[k * n + j];
                (!q.is_bottom(v)).then(|| q.mul(&loop_star, v))
            })
            .collect();
        let col: Vec<Q::Scalar> = (0..n).map(|i| data[i * n + k].clone()).collect();
        for (i, left) in col.iter().enumerate() {
            if q.is_bottom(left) {
                continue;
            }
            for (j, right) in row.iter().enumerate() {
                relaxations += 1;
                if let Some(right) = right {
                    let through = q.mul(left, right);
                    q.join_assign(&mut data[i * n + j], &through);
                }
            }
        }
    }
    let unit = q.unit();
    for i in 0..n {
        q.join_assign(&mut data[i * n + i], &unit);
    }
    Ok(relaxations)
}

/// Least R-category above `m`, by elimination.
pub fn star_kleene<Q: Quantale>(m: &SquareMatrix<Q>) -> Result<SquareMatrix<Q>> {
    star_kleene_with_stats(m).map(|(closed, _)| closed)
}

pub fn star_kleene_with_stats<Q: Quantale>(
    m: &SquareMatrix<Q>,
) -> Result<(SquareMatrix<Q>, ClosureStats)> {
    let n = m.len();
    let mut data = m.to_dense();
    let relaxations = kleene_in_place(m.quantale(), &mut data, n)?;
    let closed = SquareMatrix::from_dense_unchecked(m.quantale().clone(), m.vertices().clone(), &data);
    Ok((closed, ClosureStats { relaxations }))
}

/// Iteration cap for [`star_fixpoint`].
pub fn fixpoint_cap(n: usize) -> usize {
    4 * n + 4
}

/// Least fixpoint of `S = 1 + M·S`, iterated from the identity.
pub fn star_fixpoint<Q: Quantale>(m: &SquareMatrix<Q>) -> Result<SquareMatrix<Q>> {
    let identity = SquareMatrix::identity(m.quantale().clone(), m.vertices().clone());
    let mut s = identity.clone();
    let cap = fixpoint_cap(m.len());
    for _ in 0..cap {
        let next = identity.join(&m.product(&s)?)?;
        if next.approx_eq(&s) {
            return Ok(next);
        }
        s = next;
    }
    Err(Error::NonStabilizing(cap))
}

/// Identity law `1 ≤ M` and composition law `M·M ≤ M`, the latter up to
/// the quantale's tolerance.
pub fn is_rcategory<Q: Quantale>(m: &SquareMatrix<Q>) -> bool {
    let identity = SquareMatrix::identity(m.quantale().clone(), m.vertices().clone());
    let square = m.product(m).expect("square of a matrix is well-shaped");
    identity.leq(m).unwrap_or(false) && square.approx_leq(m)
}

/// A matrix known to satisfy both R-category laws.
#[derive(Debug, Clone, PartialEq)]
pub struct RCategory<Q: Quantale>(SquareMatrix<Q>);

impl<Q: Quantale> RCategory<Q> {
    /// Checks the laws.
    pub fn new(m: SquareMatrix<Q>) -> Result<Self> {
        if is_rcategory(&m) {
            Ok(RCategory(m))
        } else {
            Err(Error::NotAnRCategory(format!(
                "{} vertices fail the identity or composition law",
                m.len()
            )))
        }
    }

    /// The free R-category on `m`.
    pub fn free(m: &SquareMatrix<Q>) -> Result<Self> {
        star_kleene(m).map(RCategory)
    }

    pub(crate) fn new_unchecked(m: SquareMatrix<Q>) -> Self {
        RCategory(m)
    }

    pub fn matrix(&self) -> &SquareMatrix<Q> {
        &self.0
    }

    pub fn into_matrix(self) -> SquareMatrix<Q> {
        self.0
    }
}

/// Pushout of R-categories: the closure of the pushout of their
/// underlying matrices.
pub fn rcat_pushout<Q: Quantale>(
    m: &SquareMatrix<Q>,
    n: &SquareMatrix<Q>,
    k: &SquareMatrix<Q>,
    f: &SetFunction,
    g: &SetFunction,
) -> Result<RCategory<Q>> {
    for (which, mat) in [("left", m), ("right", n)] {
        if !is_rcategory(mat) {
            return Err(Error::NotAnRCategory(format!("{which} side of the pushout")));
        }
    }
    let glued = matrix_pushout(m, n, k, f, g)?;
    RCategory::free(&glued.matrix)
}
