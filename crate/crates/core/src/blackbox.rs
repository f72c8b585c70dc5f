//! Boundary-to-boundary views of solved open matrices.
//!
//! The blackbox of an open R-category `X → M ← Y` is the rectangle
//! `(x, y) ↦ M(l(x), r(y))`. Blackboxing is laxly compatible with
//! composition: `■(M)·■(N) ≤ ■(M ∘ N)`. When both open matrices are
//! functional (inputs land on sources, outputs on sinks) and their legs are
//! injective, solving commutes with composition exactly and the solution of
//! a glued problem is a product of the solutions of its pieces.

use crate::error::{Error, Result};
use crate::matrix::{RectMatrix, SquareMatrix};
use crate::open_net::{open_rcat_compose, star_open, OpenMatrix, OpenRCategory};
use crate::quantale::Quantale;
use crate::vertex::SetFunction;

pub fn blackbox<Q: Quantale>(c: &OpenRCategory<Q>) -> RectMatrix<Q> {
    let open = c.as_open();
    open.apex()
        .restrict(open.left(), open.right())
        .expect("legs of an open matrix land in its apex")
}

/// Horizontal composition in `Mat_R`.
pub fn rect_compose<Q: Quantale>(a: &RectMatrix<Q>, b: &RectMatrix<Q>) -> Result<RectMatrix<Q>> {
    a.product(b)
}

/// A square in `Mat_R` with `f` on rows and `g` on columns.
#[derive(Debug, Clone, PartialEq)]
pub struct MatRCell<Q: Quantale> {
    pub f: SetFunction,
    pub g: SetFunction,
    pub source: RectMatrix<Q>,
    pub target: RectMatrix<Q>,
}

/// `Σ_{f(x)=x', g(y)=y'} source(x, y) ≤ target(x', y')` for all `x', y'`.
pub fn check_matr_cell<Q: Quantale>(c: &MatRCell<Q>) -> Result<bool> {
    if c.f.domain() != c.source.rows()
        || c.g.domain() != c.source.cols()
        || c.f.codomain() != c.target.rows()
        || c.g.codomain() != c.target.cols()
    {
        return Err(Error::DomainMismatch("cell functions do not fit the rectangles".into()));
    }
    let pushed = c.source.pushforward(&c.f, &c.g)?;
    pushed.leq(&c.target)
}

/// Every input lands on a source and every output on a sink, where
/// source/sink means every incoming/outgoing entry is bottom (self-loops
/// included).
pub fn is_functional<Q: Quantale>(m: &OpenMatrix<Q>) -> bool {
    let n = m.apex().len();
    let mut has_in = vec![false; n];
    let mut has_out = vec![false; n];
    for (i, j, _) in m.apex().entries() {
        has_out[i] = true;
        has_in[j] = true;
    }
    m.left().table().iter().all(|&v| !has_in[v]) && m.right().table().iter().all(|&v| !has_out[v])
}

/// `■(★(M))`.
pub fn solve_blackbox<Q: Quantale>(m: &OpenMatrix<Q>) -> Result<RectMatrix<Q>> {
    Ok(blackbox(&star_open(m)?))
}

/// `■(M)·■(N) ≤ ■(M ∘ N)`.
pub fn check_lax<Q: Quantale>(m: &OpenRCategory<Q>, n: &OpenRCategory<Q>) -> Result<bool> {
    let product = rect_compose(&blackbox(m), &blackbox(n))?;
    Ok(product.approx_leq(&blackbox(&open_rcat_compose(m, n)?)))
}

fn powered_blackbox<Q: Quantale>(m: &OpenMatrix<Q>, power: &SquareMatrix<Q>) -> RectMatrix<Q> {
    power
        .restrict(m.left(), m.right())
        .expect("legs of an open matrix land in its apex")
}

/// Both sides of `■((M ∘ N)ⁿ) = Σ_{i+j=n} ■(Mⁱ)·■(Nʲ)`, where each power
/// is a power of the apex blackboxed through the corresponding legs.
pub fn binomial_sides<Q: Quantale>(
    m: &OpenMatrix<Q>,
    n: &OpenMatrix<Q>,
    exponent: usize,
) -> Result<(RectMatrix<Q>, RectMatrix<Q>)> {
    for (which, open) in [("left", m), ("right", n)] {
        if !is_functional(open) {
            return Err(Error::NotFunctional(format!("{which} factor")));
        }
    }
    let glued = m.compose(n)?;
    let lhs = powered_blackbox(&glued, &glued.apex().power(exponent));

    let m_powers: Vec<_> = (0..=exponent).map(|i| m.apex().power(i)).collect();
    let n_powers: Vec<_> = (0..=exponent).map(|j| n.apex().power(j)).collect();
    let mut rhs = RectMatrix::zero(m.quantale().clone(), m.inputs().clone(), n.outputs().clone());
    for i in 0..=exponent {
        let term = rect_compose(
            &powered_blackbox(m, &m_powers[i]),
            &powered_blackbox(n, &n_powers[exponent - i]),
        )?;
        rhs = rhs.join(&term)?;
    }
    Ok((lhs, rhs))
}

/// Whether the binomial expansion holds for the given exponent.
pub fn binomial_check<Q: Quantale>(
    m: &OpenMatrix<Q>,
    n: &OpenMatrix<Q>,
    exponent: usize,
) -> Result<bool> {
    let (lhs, rhs) = binomial_sides(m, n, exponent)?;
    Ok(lhs.approx_eq(&rhs))
}
