//! Executable law suite for quantales and the matrix constructions built on
//! them. Built-in instances pass it; user-supplied instances should be run
//! through [`full_suite`] before being handed to the closure kernels.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closure::{is_rcategory, star_fixpoint, star_kleene};
use crate::error::Result;
use crate::matrix::{is_morphism, matrix_pushout, pushforward, SquareMatrix};
use crate::quantale::Quantale;
use crate::random::{random_function, random_matrix, vertex_set, RandomScalar};

#[derive(Debug, Clone, PartialEq)]
pub struct LawReport {
    pub law: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl LawReport {
    fn new(law: &'static str) -> Self {
        LawReport {
            law,
            checked: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {:<40} {:>6} checked", self.law, self.checked)?;
        if let Some(w) = &self.first_failure {
            write!(f, "  first failure: {w}")?;
        }
        Ok(())
    }
}

/// Whether `mul` is expected to commute. Concatenation does not.
pub trait Commutativity: Quantale {
    fn is_commutative(&self) -> bool {
        true
    }
}

impl Commutativity for crate::quantale::MinPlus {}
impl Commutativity for crate::quantale::MaxMin {}
impl Commutativity for crate::quantale::Viterbi {}
impl Commutativity for crate::quantale::Boolean {}
impl Commutativity for crate::quantale::Language {
    fn is_commutative(&self) -> bool {
        false
    }
}

/// Scalar laws over every pair/triple drawn from `samples`.
pub fn scalar_laws<Q: Commutativity>(q: &Q, samples: &[Q::Scalar]) -> Vec<LawReport> {
    let eq = |a: &Q::Scalar, b: &Q::Scalar| q.approx_eq(a, b);
    let bottom = q.bottom();
    let unit = q.unit();

    let mut join_monoid = LawReport::new("join assoc/comm/idempotent/bottom");
    let mut mul_monoid = LawReport::new("mul assoc/unit/annihilation");
    let mut mul_comm = LawReport::new("mul commutative");
    let mut distrib = LawReport::new("mul distributes over join");
    let mut order = LawReport::new("order is a partial order, join is lub");
    let mut monotone = LawReport::new("mul monotone");
    let mut star = LawReport::new("star fixpoint, star(0)=star(1)=1");

    for a in samples {
        join_monoid.record(
            eq(&q.join(a, a), a) && eq(&q.join(a, &bottom), a),
            || format!("a = {a:?}"),
        );
        mul_monoid.record(
            eq(&q.mul(a, &unit), a)
                && eq(&q.mul(&unit, a), a)
                && q.is_bottom(&q.mul(a, &bottom))
                && q.is_bottom(&q.mul(&bottom, a)),
            || format!("a = {a:?}"),
        );
        order.record(q.leq(a, a) && q.leq(&bottom, a), || format!("a = {a:?}"));
        match q.star(a) {
            Ok(s) => star.record(eq(&s, &q.join(&unit, &q.mul(a, &s))), || format!("a = {a:?}")),
            Err(e) => star.record(false, || format!("a = {a:?}: {e}")),
        }
        for b in samples {
            join_monoid.record(eq(&q.join(a, b), &q.join(b, a)), || format!("{a:?}, {b:?}"));
            if q.is_commutative() {
                mul_comm.record(eq(&q.mul(a, b), &q.mul(b, a)), || format!("{a:?}, {b:?}"));
            }
            let j = q.join(a, b);
            order.record(
                q.leq(a, &j) && q.leq(b, &j) && (q.leq(a, b) == eq(&j, b)),
                || format!("{a:?}, {b:?}"),
            );
            if q.leq(a, b) && q.leq(b, a) {
                order.record(eq(a, b), || format!("antisymmetry {a:?}, {b:?}"));
            }
            for c in samples {
                join_monoid.record(
                    eq(&q.join(&q.join(a, b), c), &q.join(a, &q.join(b, c))),
                    || format!("{a:?}, {b:?}, {c:?}"),
                );
                mul_monoid.record(
                    eq(&q.mul(&q.mul(a, b), c), &q.mul(a, &q.mul(b, c))),
                    || format!("{a:?}, {b:?}, {c:?}"),
                );
                distrib.record(
                    eq(&q.mul(a, &q.join(b, c)), &q.join(&q.mul(a, b), &q.mul(a, c)))
                        && eq(&q.mul(&q.join(b, c), a), &q.join(&q.mul(b, a), &q.mul(c, a))),
                    || format!("{a:?}, {b:?}, {c:?}"),
                );
                if q.leq(a, b) {
                    monotone.record(
                        q.leq(&q.mul(a, c), &q.mul(b, c)) && q.leq(&q.mul(c, a), &q.mul(c, b)),
                        || format!("{a:?} ≤ {b:?}, c = {c:?}"),
                    );
                    if q.leq(b, c) {
                        order.record(q.leq(a, c), || format!("transitivity {a:?}, {b:?}, {c:?}"));
                    }
                }
            }
        }
    }
    for s in [&bottom, &unit] {
        star.record(
            q.star(s).map(|v| eq(&v, &unit)).unwrap_or(false),
            || format!("star({s:?})"),
        );
    }

    let mut reports = vec![join_monoid, mul_monoid, distrib, order, monotone, star];
    if q.is_commutative() {
        reports.insert(2, mul_comm);
    }
    reports
}

/// Matrix, pushout and closure laws on `trials` random instances with up to
/// `max_vertices` vertices.
pub fn matrix_laws<Q: RandomScalar, R: Rng + ?Sized>(
    q: &Q,
    trials: usize,
    max_vertices: usize,
    rng: &mut R,
) -> Result<Vec<LawReport>> {
    let mut functoriality = LawReport::new("pushforward functoriality");
    let mut algebra = LawReport::new("matrix semiring laws");
    let mut order = LawReport::new("matrix order, join is binary join");
    let mut universal = LawReport::new("pushout universal property");
    let mut closure = LawReport::new("closure: R-category, least, oracle");
    let mut idempotent = LawReport::new("closure idempotent");
    let mut monotone = LawReport::new("closure monotone");

    for _ in 0..trials {
        let n = rng.random_range(1..=max_vertices);
        let x = vertex_set("x", n);
        let density = rng.random_range(0.2..0.7);
        let m = random_matrix(q, &x, density, rng);
        let n2 = random_matrix(q, &x, density, rng);
        let p = random_matrix(q, &x, density, rng);
        let zero = SquareMatrix::zero(q.clone(), x.clone());

        // pushforward
        let y = vertex_set("y", rng.random_range(1..=max_vertices));
        let z = vertex_set("z", rng.random_range(1..=max_vertices));
        let f = random_function(&x, &y, rng);
        let g = random_function(&y, &z, rng);
        let composite = pushforward(&f.then(&g)?, &m)?;
        let stepwise = pushforward(&g, &pushforward(&f, &m)?)?;
        functoriality.record(
            composite.approx_eq(&stepwise)
                && pushforward(&crate::vertex::SetFunction::identity(&x), &m)? == m,
            || format!("n = {n}"),
        );

        // semiring structure
        let assoc = m.product(&n2)?.product(&p)?.approx_eq(&m.product(&n2.product(&p)?)?);
        let add = m.join(&n2)? == n2.join(&m)?
            && m.join(&zero)? == m
            && m.join(&n2)?.join(&p)? == m.join(&n2.join(&p)?)?;
        let dist = m.product(&n2.join(&p)?)?.approx_eq(&m.product(&n2)?.join(&m.product(&p)?)?)
            && n2.join(&p)?.product(&m)?.approx_eq(&n2.product(&m)?.join(&p.product(&m)?)?);
        algebra.record(assoc && add && dist, || format!("n = {n}"));

        let j = m.join(&n2)?;
        order.record(
            m.leq(&m)?
                && m.leq(&j)?
                && n2.leq(&j)?
                && (m.leq(&n2)? == (j == n2))
                && (!(m.leq(&n2)? && n2.leq(&m)?) || m == n2),
            || format!("n = {n}"),
        );

        // pushout: G ← K → H with valid morphisms, then a cocone factoring
        // through the pushout of sets
        let k_set = vertex_set("k", rng.random_range(0..=max_vertices));
        let g_set = vertex_set("g", rng.random_range(1..=max_vertices));
        let h_set = vertex_set("h", rng.random_range(1..=max_vertices));
        let g_mat = random_matrix(q, &g_set, density, rng);
        let h_mat = random_matrix(q, &h_set, density, rng);
        let to_g = random_function(&k_set, &g_set, rng);
        let to_h = random_function(&k_set, &h_set, rng);
        let k_mat = dominated_foot(q, &k_set, &to_g, &g_mat, &to_h, &h_mat, rng);
        let po = matrix_pushout(&g_mat, &h_mat, &k_mat, &to_g, &to_h)?;
        let l_set = vertex_set("l", rng.random_range(1..=max_vertices));
        let u = random_function(&po.injections.set, &l_set, rng);
        let c1 = po.injections.left.then(&u)?;
        let c2 = po.injections.right.then(&u)?;
        let l_mat = pushforward(&c1, &g_mat)?
            .join(&pushforward(&c2, &h_mat)?)?
            .join(&random_matrix(q, &l_set, 0.2, rng))?;
        let cocone = is_morphism(&c1, &g_mat, &l_mat)? && is_morphism(&c2, &h_mat, &l_mat)?;
        universal.record(cocone && is_morphism(&u, &po.matrix, &l_mat)?, || {
            format!("|K| = {}, |G| = {}, |H| = {}", k_set.len(), g_set.len(), h_set.len())
        });

        // closure
        let star = star_kleene(&m)?;
        let upper = star_kleene(&m.join(&random_matrix(q, &x, 0.3, rng))?)?;
        closure.record(
            is_rcategory(&star)
                && m.approx_leq(&star)
                && star.approx_leq(&upper)
                && star.approx_eq(&star_fixpoint(&m)?),
            || format!("n = {n}"),
        );
        idempotent.record(star_kleene(&star)?.approx_eq(&star), || format!("n = {n}"));
        monotone.record(star.approx_leq(&star_kleene(&j)?), || format!("n = {n}"));
    }

    Ok(vec![functoriality, algebra, order, universal, closure, idempotent, monotone])
}

/// A foot matrix whose entries are dominated by both targets, so both legs
/// are morphisms.
fn dominated_foot<Q: RandomScalar, R: Rng + ?Sized>(
    q: &Q,
    k_set: &crate::vertex::VertexSet,
    to_g: &crate::vertex::SetFunction,
    g_mat: &SquareMatrix<Q>,
    to_h: &crate::vertex::SetFunction,
    h_mat: &SquareMatrix<Q>,
    rng: &mut R,
) -> SquareMatrix<Q> {
    let n = k_set.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = g_mat.get(to_g.apply_index(i), to_g.apply_index(j));
                    let b = h_mat.get(to_h.apply_index(i), to_h.apply_index(j));
                    // the meet is not available in general; use one side
                    // only when it is below the other
                    let candidate = if q.leq(&a, &b) { a } else if q.leq(&b, &a) { b } else { q.bottom() };
                    if rng.random_bool(0.5) {
                        candidate
                    } else {
                        q.bottom()
                    }
                })
                .collect()
        })
        .collect();
    SquareMatrix::from_dense(q.clone(), k_set.clone(), rows).expect("entries come from valid matrices")
}

/// Scalar laws on `samples` random scalars followed by matrix laws on
/// `trials` random matrices.
pub fn full_suite<Q: RandomScalar + Commutativity>(
    q: &Q,
    samples: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<LawReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scalars: Vec<_> = (0..samples).map(|_| q.random_scalar(&mut rng)).collect();
    scalars.push(q.bottom());
    scalars.push(q.unit());
    let mut reports = scalar_laws(q, &scalars);
    reports.extend(matrix_laws(q, trials, 6, &mut rng)?);
    Ok(reports)
}
