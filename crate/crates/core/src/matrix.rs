//! Square and rectangular matrices valued in a quantale.
//!
//! Storage is sparse: only non-bottom entries are kept, so structural
//! equality coincides with entrywise equality. Closure kernels densify.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quantale::Quantale;
use crate::vertex::{pushout_sets, SetFunction, SetPushout, VertexSet};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Entries<S> {
    rows: Vec<BTreeMap<usize, S>>,
}

impl<S: Clone + PartialEq + std::fmt::Debug> Entries<S> {
    fn new(n_rows: usize) -> Self {
        Entries {
            rows: vec![BTreeMap::new(); n_rows],
        }
    }

    fn get(&self, i: usize, j: usize) -> Option<&S> {
        self.rows[i].get(&j)
    }

    fn row(&self, i: usize) -> &BTreeMap<usize, S> {
        &self.rows[i]
    }

    /// Joins `value` into entry `(i, j)`.
    fn join_in<Q: Quantale<Scalar = S>>(&mut self, q: &Q, i: usize, j: usize, value: &S) {
        if q.is_bottom(value) {
            return;
        }
        match self.rows[i].get_mut(&j) {
            Some(old) => q.join_assign(old, value),
            None => {
                self.rows[i].insert(j, value.clone());
            }
        }
    }

    fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(&j, v)| (i, j, v)))
    }

    fn join<Q: Quantale<Scalar = S>>(&self, q: &Q, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, v) in other.iter() {
            out.join_in(q, i, j, v);
        }
        out
    }

    fn leq<Q: Quantale<Scalar = S>>(&self, q: &Q, other: &Self) -> bool {
        self.iter().all(|(i, j, v)| match other.get(i, j) {
            Some(w) => q.leq(v, w),
            None => q.leq(v, &q.bottom()),
        })
    }

    fn approx_leq<Q: Quantale<Scalar = S>>(&self, q: &Q, other: &Self) -> bool {
        let bottom = q.bottom();
        self.iter()
            .all(|(i, j, v)| q.approx_leq(v, other.get(i, j).unwrap_or(&bottom)))
    }

    fn approx_eq<Q: Quantale<Scalar = S>>(&self, q: &Q, other: &Self) -> bool {
        let bottom = q.bottom();
        let covered = |a: &Self, b: &Self| {
            a.iter()
                .all(|(i, j, v)| q.approx_eq(v, b.get(i, j).unwrap_or(&bottom)))
        };
        covered(self, other) && covered(other, self)
    }

    /// Sparse product; returns the result and the number of scalar
    /// multiplications performed.
    fn product<Q: Quantale<Scalar = S>>(&self, q: &Q, other: &Self) -> (Self, u64) {
        let mut out = Entries::new(self.rows.len());
        let mut ops = 0u64;
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, a) in row {
                for (&k, b) in other.row(j) {
                    ops += 1;
                    let prod = q.mul(a, b);
                    out.join_in(q, i, k, &prod);
                }
            }
        }
        (out, ops)
    }

    fn validate<Q: Quantale<Scalar = S>>(&self, q: &Q) -> Result<()> {
        match self.iter().find(|(_, _, v)| !q.contains(v)) {
            Some((_, _, v)) => Err(Error::InvalidScalar(format!("{v:?}"))),
            None => Ok(()),
        }
    }
}

fn check_quantales<Q: Quantale>(a: &Q, b: &Q) -> Result<()> {
    if a != b {
        return Err(Error::QuantaleMismatch {
            left: a.id(),
            right: b.id(),
        });
    }
    Ok(())
}

fn lookup(set: &VertexSet, name: &str, what: &str) -> Result<usize> {
    set.index_of(name)
        .ok_or_else(|| Error::DomainMismatch(format!("{what} `{name}` is not a declared vertex")))
}

/// An `X × X` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<Q: Quantale> {
    quantale: Q,
    vertices: VertexSet,
    entries: Entries<Q::Scalar>,
}

impl<Q: Quantale> SquareMatrix<Q> {
    /// The matrix with every entry bottom.
    pub fn zero(q: Q, vertices: VertexSet) -> Self {
        let entries = Entries::new(vertices.len());
        SquareMatrix {
            quantale: q,
            vertices,
            entries,
        }
    }

    /// Unit on the diagonal, bottom elsewhere.
    pub fn identity(q: Q, vertices: VertexSet) -> Self {
        let mut m = Self::zero(q, vertices);
        let unit = m.quantale.unit();
        for i in 0..m.len() {
            m.entries.join_in(&m.quantale, i, i, &unit);
        }
        m
    }

    /// Builds a matrix from `(source, target, weight)` triples. Repeated
    /// pairs are joined; absent pairs are bottom.
    pub fn from_entries<'a, I>(q: Q, vertices: VertexSet, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, Q::Scalar)>,
    {
        let mut m = Self::zero(q, vertices);
        for (src, dst, w) in triples {
            let i = lookup(&m.vertices, src, "source")?;
            let j = lookup(&m.vertices, dst, "target")?;
            if !m.quantale.contains(&w) {
                return Err(Error::InvalidScalar(format!("{w:?}")));
            }
            m.entries.join_in(&m.quantale, i, j, &w);
        }
        Ok(m)
    }

    /// Builds a matrix from row-major dense data.
    pub fn from_dense(q: Q, vertices: VertexSet, rows: Vec<Vec<Q::Scalar>>) -> Result<Self> {
        let n = vertices.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!(
                "dense data is not {n}×{n}"
            )));
        }
        let mut m = Self::zero(q, vertices);
        for (i, row) in rows.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                m.entries.join_in(&m.quantale, i, j, w);
            }
        }
        m.entries.validate(&m.quantale)?;
        Ok(m)
    }

    pub(crate) fn from_dense_unchecked(q: Q, vertices: VertexSet, data: &[Q::Scalar]) -> Self {
        let n = vertices.len();
        let mut m = Self::zero(q, vertices);
        for (idx, w) in data.iter().enumerate() {
            m.entries.join_in(&m.quantale, idx / n, idx % n, w);
        }
        m
    }

    pub fn quantale(&self) -> &Q {
        &self.quantale
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Q::Scalar {
        self.entries
            .get(i, j)
            .cloned()
            .unwrap_or_else(|| self.quantale.bottom())
    }

    pub fn entry(&self, src: &str, dst: &str) -> Option<Q::Scalar> {
        let i = self.vertices.index_of(src)?;
        let j = self.vertices.index_of(dst)?;
        Some(self.get(i, j))
    }

    /// Non-bottom entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q::Scalar)> + '_ {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.rows.iter().map(BTreeMap::len).sum()
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Q::Scalar> {
        let n = self.len();
        let mut data = vec![self.quantale.bottom(); n * n];
        for (i, j, v) in self.entries.iter() {
            data[i * n + j] = v.clone();
        }
        data
    }

    pub fn to_rows(&self) -> Vec<Vec<Q::Scalar>> {
        let n = self.len();
        self.to_dense().chunks(n.max(1)).take(n).map(<[_]>::to_vec).collect()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        check_quantales(&self.quantale, &other.quantale)?;
        if self.vertices != other.vertices {
            return Err(Error::ShapeMismatch(
                "matrices are over different vertex sets".into(),
            ));
        }
        Ok(())
    }

    /// Pointwise join `M + N`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(SquareMatrix {
            quantale: self.quantale.clone(),
            vertices: self.vertices.clone(),
            entries: self.entries.join(&self.quantale, &other.entries),
        })
    }

    /// Matrix product `MN(i,k) = Σ_j M(i,j)·N(j,k)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let (entries, _) = self.entries.product(&self.quantale, &other.entries);
        Ok(SquareMatrix {
            quantale: self.quantale.clone(),
            vertices: self.vertices.clone(),
            entries,
        })
    }

    /// `Mⁿ`, with `M⁰` the identity.
    pub fn power(&self, n: usize) -> Self {
        let mut acc = Self::identity(self.quantale.clone(), self.vertices.clone());
        for _ in 0..n {
            acc.entries = acc.entries.product(&self.quantale, &self.entries).0;
        }
        acc
    }

    /// Pointwise order.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self.entries.leq(&self.quantale, &other.entries))
    }

    /// Entrywise `≤` up to the quantale's tolerance.
    pub fn approx_leq(&self, other: &Self) -> bool {
        self.check_same_shape(other).is_ok()
            && self.entries.approx_leq(&self.quantale, &other.entries)
    }

    /// Entrywise equality up to the quantale's tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.check_same_shape(other).is_ok()
            && self.entries.approx_eq(&self.quantale, &other.entries)
    }

    /// Block-diagonal coproduct on the tagged disjoint union of vertices.
    pub fn coproduct(&self, other: &Self) -> Result<Self> {
        check_quantales(&self.quantale, &other.quantale)?;
        let shift = self.len();
        let mut out = Self::zero(self.quantale.clone(), self.vertices.coproduct(&other.vertices));
        for (i, j, v) in self.entries.iter() {
            out.entries.join_in(&self.quantale, i, j, v);
        }
        for (i, j, v) in other.entries.iter() {
            out.entries.join_in(&self.quantale, i + shift, j + shift, v);
        }
        Ok(out)
    }

    /// Restriction to `rows × cols` through the given functions into the
    /// vertex set: `R(x, y) = M(rows(x), cols(y))`.
    pub fn restrict(&self, rows: &SetFunction, cols: &SetFunction) -> Result<RectMatrix<Q>> {
        if rows.codomain() != &self.vertices || cols.codomain() != &self.vertices {
            return Err(Error::DomainMismatch(
                "restriction maps do not land in the matrix's vertices".into(),
            ));
        }
        let mut out = RectMatrix::zero(
            self.quantale.clone(),
            rows.domain().clone(),
            cols.domain().clone(),
        );
        for x in 0..rows.domain().len() {
            let row = self.entries.row(rows.apply_index(x));
            for y in 0..cols.domain().len() {
                if let Some(v) = row.get(&cols.apply_index(y)) {
                    out.entries.join_in(&self.quantale, x, y, v);
                }
            }
        }
        Ok(out)
    }
}

/// Pushforward `f_*(M)(y, y') = Σ_{f(x)=y, f(x')=y'} M(x, x')`.
pub fn pushforward<Q: Quantale>(f: &SetFunction, m: &SquareMatrix<Q>) -> Result<SquareMatrix<Q>> {
    if f.domain() != m.vertices() {
        return Err(Error::DomainMismatch(
            "pushforward function's domain is not the matrix's vertex set".into(),
        ));
    }
    let mut out = SquareMatrix::zero(m.quantale.clone(), f.codomain().clone());
    for (i, j, v) in m.entries.iter() {
        out.entries
            .join_in(&m.quantale, f.apply_index(i), f.apply_index(j), v);
    }
    Ok(out)
}

/// Whether `f` is a morphism `M → N`, i.e. `f_*(M) ≤ N`.
pub fn is_morphism<Q: Quantale>(
    f: &SetFunction,
    m: &SquareMatrix<Q>,
    n: &SquareMatrix<Q>,
) -> Result<bool> {
    if f.codomain() != n.vertices() {
        return Err(Error::DomainMismatch(
            "morphism codomain is not the target's vertex set".into(),
        ));
    }
    pushforward(f, m)?.leq(n)
}

/// The apex of a pushout of matrices together with the set-level pushout.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPushout<Q: Quantale> {
    pub matrix: SquareMatrix<Q>,
    pub injections: SetPushout,
}

/// Pushout `G +_K H` of morphisms `f: K → G` and `g: K → H`:
/// `i_*(G) + j_*(H)` over the pushout of vertex sets. The entries of `K`
/// only enter through the morphism checks.
pub fn matrix_pushout<Q: Quantale>(
    g_mat: &SquareMatrix<Q>,
    h_mat: &SquareMatrix<Q>,
    k_mat: &SquareMatrix<Q>,
    f: &SetFunction,
    g: &SetFunction,
) -> Result<MatrixPushout<Q>> {
    check_quantales(&g_mat.quantale, &h_mat.quantale)?;
    check_quantales(&g_mat.quantale, &k_mat.quantale)?;
    if f.domain() != k_mat.vertices() || g.domain() != k_mat.vertices() {
        return Err(Error::DomainMismatch(
            "pushout legs must start at the foot's vertex set".into(),
        ));
    }
    if !is_morphism(f, k_mat, g_mat)? {
        return Err(Error::NotAMorphism("left leg of the span".into()));
    }
    if !is_morphism(g, k_mat, h_mat)? {
        return Err(Error::NotAMorphism("right leg of the span".into()));
    }
    let injections = pushout_sets(f, g)?;
    let matrix = pushforward(&injections.left, g_mat)?.join(&pushforward(&injections.right, h_mat)?)?;
    Ok(MatrixPushout { matrix, injections })
}

/// An `X × Y` matrix: a horizontal morphism between boundary sets.
#[derive(Debug, Clone, PartialEq)]
pub struct RectMatrix<Q: Quantale> {
    quantale: Q,
    rows: VertexSet,
    cols: VertexSet,
    entries: Entries<Q::Scalar>,
}

impl<Q: Quantale> RectMatrix<Q> {
    pub fn zero(q: Q, rows: VertexSet, cols: VertexSet) -> Self {
        let entries = Entries::new(rows.len());
        RectMatrix {
            quantale: q,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(q: Q, set: VertexSet) -> Self {
        let mut m = Self::zero(q, set.clone(), set);
        let unit = m.quantale.unit();
        for i in 0..m.rows.len() {
            m.entries.join_in(&m.quantale, i, i, &unit);
        }
        m
    }

    pub fn from_entries<'a, I>(q: Q, rows: VertexSet, cols: VertexSet, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, Q::Scalar)>,
    {
        let mut m = Self::zero(q, rows, cols);
        for (src, dst, w) in triples {
            let i = lookup(&m.rows, src, "row")?;
            let j = lookup(&m.cols, dst, "column")?;
            if !m.quantale.contains(&w) {
                return Err(Error::InvalidScalar(format!("{w:?}")));
            }
            m.entries.join_in(&m.quantale, i, j, &w);
        }
        Ok(m)
    }

    pub fn from_dense(q: Q, rows: VertexSet, cols: VertexSet, data: Vec<Vec<Q::Scalar>>) -> Result<Self> {
        if data.len() != rows.len() || data.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::ShapeMismatch(format!(
                "dense data is not {}×{}",
                rows.len(),
                cols.len()
            )));
        }
        let mut m = Self::zero(q, rows, cols);
        for (i, row) in data.iter().enumerate() {
            for (j, w) in row.iter().enumerate() {
                m.entries.join_in(&m.quantale, i, j, w);
            }
        }
        m.entries.validate(&m.quantale)?;
        Ok(m)
    }

    pub fn quantale(&self) -> &Q {
        &self.quantale
    }

    pub fn rows(&self) -> &VertexSet {
        &self.rows
    }

    pub fn cols(&self) -> &VertexSet {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q::Scalar {
        self.entries
            .get(i, j)
            .cloned()
            .unwrap_or_else(|| self.quantale.bottom())
    }

    pub fn entry(&self, row: &str, col: &str) -> Option<Q::Scalar> {
        Some(self.get(self.rows.index_of(row)?, self.cols.index_of(col)?))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q::Scalar)> + '_ {
        self.entries.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q::Scalar>> {
        (0..self.rows.len())
            .map(|i| (0..self.cols.len()).map(|j| self.get(i, j)).collect())
            .collect()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        check_quantales(&self.quantale, &other.quantale)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("rectangles differ in shape".into()));
        }
        Ok(())
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(RectMatrix {
            quantale: self.quantale.clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.join(&self.quantale, &other.entries),
        })
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self.entries.leq(&self.quantale, &other.entries))
    }

    pub fn approx_leq(&self, other: &Self) -> bool {
        self.check_same_shape(other).is_ok()
            && self.entries.approx_leq(&self.quantale, &other.entries)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.check_same_shape(other).is_ok()
            && self.entries.approx_eq(&self.quantale, &other.entries)
    }

    /// Pushforward along `rows × cols`: entries landing on the same cell
    /// are joined.
    pub fn pushforward(&self, rows: &SetFunction, cols: &SetFunction) -> Result<Self> {
        if rows.domain() != &self.rows || cols.domain() != &self.cols {
            return Err(Error::DomainMismatch(
                "pushforward functions do not start at the rectangle's boundaries".into(),
            ));
        }
        let mut out = Self::zero(self.quantale.clone(), rows.codomain().clone(), cols.codomain().clone());
        for (i, j, v) in self.entries.iter() {
            out.entries
                .join_in(&self.quantale, rows.apply_index(i), cols.apply_index(j), v);
        }
        Ok(out)
    }

    /// Horizontal composition `X×Y` then `Y×Z`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        Ok(self.product_counted(other)?.0)
    }

    /// As [`RectMatrix::product`], also returning the number of scalar
    /// multiplications.
    pub fn product_counted(&self, other: &Self) -> Result<(Self, u64)> {
        check_quantales(&self.quantale, &other.quantale)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(
                "inner boundaries of the product differ".into(),
            ));
        }
        let (entries, ops) = self.entries.product(&self.quantale, &other.entries);
        Ok((
            RectMatrix {
                quantale: self.quantale.clone(),
                rows: self.rows.clone(),
                cols: other.cols.clone(),
                entries,
            },
            ops,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{Boolean, MinPlus};

    const INF: f64 = f64::INFINITY;

    fn set(names: &[&str]) -> VertexSet {
        VertexSet::new(names.iter().copied()).unwrap()
    }

    fn minplus(names: &[&str], rows: Vec<Vec<f64>>) -> SquareMatrix<MinPlus> {
        SquareMatrix::from_dense(MinPlus, set(names), rows).unwrap()
    }

    fn boolean(rows: Vec<Vec<bool>>) -> SquareMatrix<Boolean> {
        SquareMatrix::from_dense(Boolean, set(&["0", "1"]), rows).unwrap()
    }

    fn worked_m() -> SquareMatrix<MinPlus> {
        minplus(
            &["a", "b", "c"],
            vec![vec![1.0, 2.0, 0.1], vec![3.0, 0.0, 0.2], vec![INF, 1.0, 0.2]],
        )
    }

    #[test]
    fn add_is_pointwise_join() {
        let m = minplus(&["0", "1"], vec![vec![1.0, INF], vec![INF, 2.0]]);
        let n = minplus(&["0", "1"], vec![vec![3.0, 0.0], vec![INF, INF]]);
        assert_eq!(m.join(&n).unwrap().to_rows(), vec![vec![1.0, 0.0], vec![INF, 2.0]]);
        assert_eq!(m.join(&m).unwrap(), m);

        let a = boolean(vec![vec![false, true], vec![false, false]]);
        let b = boolean(vec![vec![true, false], vec![false, false]]);
        assert_eq!(
            a.join(&b).unwrap().to_rows(),
            vec![vec![true, true], vec![false, false]]
        );
    }

    #[test]
    fn add_rejects_shape_mismatch() {
        let m = minplus(&["0", "1"], vec![vec![1.0, INF], vec![INF, 2.0]]);
        let n = minplus(&["0"], vec![vec![1.0]]);
        assert!(matches!(m.join(&n), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn minplus_product() {
        // (0,0) = min(0+0, 1+2) = 0; (0,1) = min(0+∞, 1+0) = 1;
        // (1,0) = min(∞+0, 0+2) = 2; (1,1) = min(∞+∞, 0+0) = 0.
        let m = minplus(&["0", "1"], vec![vec![0.0, 1.0], vec![INF, 0.0]]);
        let n = minplus(&["0", "1"], vec![vec![0.0, INF], vec![2.0, 0.0]]);
        assert_eq!(m.product(&n).unwrap().to_rows(), vec![vec![0.0, 1.0], vec![2.0, 0.0]]);
        let id = SquareMatrix::identity(MinPlus, set(&["0", "1"]));
        assert_eq!(m.product(&id).unwrap(), m);
    }

    #[test]
    fn boolean_product() {
        let a = boolean(vec![vec![false, true], vec![false, false]]);
        let b = boolean(vec![vec![false, false], vec![false, true]]);
        assert_eq!(
            a.product(&b).unwrap().to_rows(),
            vec![vec![false, true], vec![false, false]]
        );
    }

    #[test]
    fn identity_and_zero() {
        let x = set(&["p", "q"]);
        assert_eq!(
            SquareMatrix::identity(MinPlus, x.clone()).to_rows(),
            vec![vec![0.0, INF], vec![INF, 0.0]]
        );
        assert_eq!(
            SquareMatrix::identity(Boolean, x.clone()).to_rows(),
            vec![vec![true, false], vec![false, true]]
        );
        assert_eq!(
            SquareMatrix::zero(MinPlus, x.clone()).to_rows(),
            vec![vec![INF, INF], vec![INF, INF]]
        );
        assert!(SquareMatrix::zero(Boolean, x).to_rows().iter().flatten().all(|b| !b));
        assert!(SquareMatrix::identity(MinPlus, VertexSet::empty()).is_empty());
        assert_eq!(SquareMatrix::zero(MinPlus, VertexSet::empty()).nnz(), 0);
    }

    #[test]
    fn pushforward_collapses_preimages() {
        let m = worked_m();
        let f = SetFunction::from_pairs(
            m.vertices().clone(),
            set(&["x", "y"]),
            [("a", "x"), ("b", "x"), ("c", "y")],
        )
        .unwrap();
        let p = pushforward(&f, &m).unwrap();
        assert_eq!(p.to_rows(), vec![vec![0.0, 0.1], vec![1.0, 0.2]]);
        assert_eq!(pushforward(&SetFunction::identity(m.vertices()), &m).unwrap(), m);
    }

    #[test]
    fn pushforward_into_unhit_vertex_is_bottom() {
        let m = worked_m();
        let f = SetFunction::from_pairs(
            m.vertices().clone(),
            set(&["x", "y"]),
            [("a", "x"), ("b", "x"), ("c", "x")],
        )
        .unwrap();
        let p = pushforward(&f, &m).unwrap();
        assert_eq!(p.to_rows()[1], vec![INF, INF]);
        assert_eq!(p.get(0, 1), INF);
    }

    #[test]
    fn order_and_morphisms() {
        let m = worked_m();
        assert!(m.leq(&m).unwrap());
        assert!(minplus(&["0"], vec![vec![5.0]]).leq(&minplus(&["0"], vec![vec![3.0]])).unwrap());

        let f = SetFunction::from_pairs(
            m.vertices().clone(),
            set(&["x", "y"]),
            [("a", "x"), ("b", "x"), ("c", "y")],
        )
        .unwrap();
        let good = minplus(&["x", "y"], vec![vec![0.0, 0.1], vec![1.0, 0.2]]);
        assert!(is_morphism(&f, &m, &good).unwrap());
        let bad = minplus(&["x", "y"], vec![vec![5.0, 0.1], vec![1.0, 0.2]]);
        assert!(!is_morphism(&f, &m, &bad).unwrap());
    }

    #[test]
    fn coproducts() {
        let m = worked_m();
        let empty = SquareMatrix::zero(MinPlus, VertexSet::empty());
        let c = m.coproduct(&empty).unwrap();
        assert_eq!(c.to_rows(), m.to_rows());

        let a = minplus(&["0"], vec![vec![1.0]]);
        let b = minplus(&["0"], vec![vec![2.0]]);
        assert_eq!(a.coproduct(&b).unwrap().to_rows(), vec![vec![1.0, INF], vec![INF, 2.0]]);

        let one = SquareMatrix::identity(Boolean, set(&["0"]));
        assert_eq!(
            one.coproduct(&one).unwrap(),
            SquareMatrix::identity(Boolean, set(&["L:0", "R:0"]))
        );
    }

    #[test]
    fn pushout_reproduces_worked_composite() {
        let g = worked_m();
        let h = minplus(&["d", "e"], vec![vec![6.0, INF], vec![0.0, 9.0]]);
        let y = set(&["3"]);
        let k = SquareMatrix::zero(MinPlus, y.clone());
        let f = SetFunction::from_pairs(y.clone(), g.vertices().clone(), [("3", "c")]).unwrap();
        let gl = SetFunction::from_pairs(y, h.vertices().clone(), [("3", "d")]).unwrap();
        let po = matrix_pushout(&g, &h, &k, &f, &gl).unwrap();
        assert_eq!(
            po.matrix.to_rows(),
            vec![
                vec![1.0, 2.0, 0.1, INF],
                vec![3.0, 0.0, 0.2, INF],
                vec![INF, 1.0, 0.2, INF],
                vec![INF, INF, 0.0, 9.0],
            ]
        );
    }

    #[test]
    fn pushout_rejects_non_morphism_leg() {
        let g = worked_m();
        let y = set(&["3"]);
        let k = minplus(&["3"], vec![vec![0.0]]);
        let f = SetFunction::from_pairs(y.clone(), g.vertices().clone(), [("3", "c")]).unwrap();
        let id = SetFunction::identity(&y);
        // K(3,3) = 0 is above G(c,c) = 0.2 in the reversed order
        let err = matrix_pushout(&g, &k, &k, &f, &id);
        assert!(matches!(err, Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn pushout_of_identical_copies() {
        let g = worked_m();
        let id = SetFunction::identity(g.vertices());
        let po = matrix_pushout(&g, &g, &g, &id, &id).unwrap();
        assert_eq!(po.matrix.to_rows(), g.to_rows());
    }

    #[test]
    fn rectangles_compose() {
        let x = set(&["x"]);
        let y = set(&["y"]);
        let z = set(&["z"]);
        let a = RectMatrix::from_dense(MinPlus, x.clone(), y.clone(), vec![vec![2.0]]).unwrap();
        let b = RectMatrix::from_dense(MinPlus, y.clone(), z, vec![vec![3.0]]).unwrap();
        assert_eq!(a.product(&b).unwrap().to_rows(), vec![vec![5.0]]);
        assert_eq!(a.product(&RectMatrix::identity(MinPlus, y)).unwrap(), a);
        assert!(matches!(b.product(&a), Err(Error::ShapeMismatch(_))));

        // [[1, 4], [∞, 2]]·[[3], [0]] = [[min(4, 4)], [min(∞, 2)]] = [[4], [2]]
        let two = set(&["u", "v"]);
        let c = RectMatrix::from_dense(
            MinPlus,
            two.clone(),
            two.clone(),
            vec![vec![1.0, 4.0], vec![INF, 2.0]],
        )
        .unwrap();
        let d = RectMatrix::from_dense(MinPlus, two, x, vec![vec![3.0], vec![0.0]]).unwrap();
        assert_eq!(c.product(&d).unwrap().to_rows(), vec![vec![4.0], vec![2.0]]);
    }

    #[test]
    fn invalid_scalars_rejected() {
        let err = SquareMatrix::from_entries(MinPlus, set(&["a"]), [("a", "a", -1.0)]);
        assert!(matches!(err, Err(Error::InvalidScalar(_))));
        let err = SquareMatrix::from_entries(MinPlus, set(&["a"]), [("a", "z", 1.0)]);
        assert!(matches!(err, Err(Error::DomainMismatch(_))));
    }
}
