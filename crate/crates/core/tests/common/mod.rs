#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use openpath_core::{
    Language, MinPlus, OpenMatrix, Quantale, SetFunction, SquareMatrix, VertexSet, WordSet,
};

pub const INF: f64 = f64::INFINITY;

pub fn set(names: &[&str]) -> VertexSet {
    VertexSet::new(names.iter().copied()).unwrap()
}

pub fn leg(boundary: &[&str], apex: &VertexSet, pairs: &[(&str, &str)]) -> SetFunction {
    SetFunction::from_pairs(set(boundary), apex.clone(), pairs.iter().copied()).unwrap()
}

/// Join over every walk with at most `max_len` edges, by explicit
/// depth-first enumeration. Walks whose running weight is bottom are cut.
pub fn walk_closure<Q: Quantale>(m: &SquareMatrix<Q>, max_len: usize) -> Vec<Vec<Q::Scalar>> {
    let q = m.quantale();
    let n = m.len();
    let rows = m.to_rows();
    let mut out = vec![vec![q.bottom(); n]; n];

    fn extend<Q: Quantale>(
        q: &Q,
        rows: &[Vec<Q::Scalar>],
        out_row: &mut [Q::Scalar],
        at: usize,
        weight: &Q::Scalar,
        remaining: usize,
    ) {
        q.join_assign(&mut out_row[at], weight);
        if remaining == 0 {
            return;
        }
        for (next, w) in rows[at].iter().enumerate() {
            if q.is_bottom(w) {
                continue;
            }
            let through = q.mul(weight, w);
            if !q.is_bottom(&through) {
                extend(q, rows, out_row, next, &through, remaining - 1);
            }
        }
    }

    for (start, out_row) in out.iter_mut().enumerate() {
        extend(q, &rows, out_row, start, &q.unit(), max_len);
    }
    out
}

/// Language closure by search over `(vertex, word)` states: `w ∈ F(M)(s, t)`
/// iff the state `(t, w)` is reachable from `(s, ε)` reading one word of an
/// edge label per step. Every state has a word of length at most the cap,
/// so the search is finite.
pub fn word_closure(q: &Language, m: &SquareMatrix<Language>) -> Vec<Vec<WordSet>> {
    let n = m.len();
    let rows = m.to_rows();
    let mut out = vec![vec![WordSet::new(); n]; n];
    for (start, out_row) in out.iter_mut().enumerate() {
        let mut seen: BTreeSet<(usize, String)> = BTreeSet::new();
        let mut queue = VecDeque::from([(start, String::new())]);
        seen.insert((start, String::new()));
        while let Some((at, word)) = queue.pop_front() {
            out_row[at].insert(word.clone());
            for (next, label) in rows[at].iter().enumerate() {
                for piece in label {
                    let longer = format!("{word}{piece}");
                    if longer.chars().count() <= q.max_len() && seen.insert((next, longer.clone())) {
                        queue.push_back((next, longer));
                    }
                }
            }
        }
    }
    out
}

pub fn dense_eq<Q: Quantale>(q: &Q, a: &[Vec<Q::Scalar>], b: &[Vec<Q::Scalar>]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(x, y)| q.approx_eq(x, y)))
}

/// The two open matrices of the worked example: `M` on `{a, b, c}` with
/// inputs `{1, 2}` and output `{3}`, `N` on `{d, e}` with input `{3}` and
/// output `{4}`.
pub fn worked_pair() -> (OpenMatrix<MinPlus>, OpenMatrix<MinPlus>) {
    let abc = set(&["a", "b", "c"]);
    let m = SquareMatrix::from_dense(
        MinPlus,
        abc.clone(),
        vec![vec![1.0, 2.0, 0.1], vec![3.0, 0.0, 0.2], vec![INF, 1.0, 0.2]],
    )
    .unwrap();
    let m = OpenMatrix::new(
        m,
        leg(&["1", "2"], &abc, &[("1", "a"), ("2", "b")]),
        leg(&["3"], &abc, &[("3", "c")]),
    )
    .unwrap();
    let de = set(&["d", "e"]);
    let n = SquareMatrix::from_dense(MinPlus, de.clone(), vec![vec![6.0, INF], vec![0.0, 9.0]])
        .unwrap();
    let n = OpenMatrix::new(
        n,
        leg(&["3"], &de, &[("3", "d")]),
        leg(&["4"], &de, &[("4", "e")]),
    )
    .unwrap();
    (m, n)
}

/// A non-functional pair whose only cheap route from `x` to `z` crosses the
/// junction three times: `a → b1 | c1 → c2 | b2 → b3 | c3 → d`.
pub fn crossing_pair() -> (OpenMatrix<MinPlus>, OpenMatrix<MinPlus>) {
    let mv = set(&["a", "b1", "b2", "b3"]);
    let m = SquareMatrix::from_entries(MinPlus, mv.clone(), [("a", "b1", 1.0), ("b2", "b3", 1.0)])
        .unwrap();
    let m = OpenMatrix::new(
        m,
        leg(&["x"], &mv, &[("x", "a")]),
        leg(&["y1", "y2", "y3"], &mv, &[("y1", "b1"), ("y2", "b2"), ("y3", "b3")]),
    )
    .unwrap();
    let nv = set(&["c1", "c2", "c3", "d"]);
    let n = SquareMatrix::from_entries(MinPlus, nv.clone(), [("c1", "c2", 1.0), ("c3", "d", 1.0)])
        .unwrap();
    let n = OpenMatrix::new(
        n,
        leg(&["y1", "y2", "y3"], &nv, &[("y1", "c1"), ("y2", "c2"), ("y3", "c3")]),
        leg(&["z"], &nv, &[("z", "d")]),
    )
    .unwrap();
    (m, n)
}

/// A functional pair (no edges at all) with non-injective legs. The
/// junction class `m1 ~ n1 ~ m2 ~ n3` zig-zags between the two sides, so
/// `x` and `z` are glued together while every blackbox route is bottom.
pub fn zigzag_pair() -> (OpenMatrix<MinPlus>, OpenMatrix<MinPlus>) {
    let mv = set(&["m1", "m2"]);
    let m = OpenMatrix::new(
        SquareMatrix::zero(MinPlus, mv.clone()),
        leg(&["x"], &mv, &[("x", "m1")]),
        leg(&["y1", "y2", "y3"], &mv, &[("y1", "m1"), ("y2", "m2"), ("y3", "m2")]),
    )
    .unwrap();
    let nv = set(&["n1", "n3"]);
    let n = OpenMatrix::new(
        SquareMatrix::zero(MinPlus, nv.clone()),
        leg(&["y1", "y2", "y3"], &nv, &[("y1", "n1"), ("y2", "n1"), ("y3", "n3")]),
        leg(&["z"], &nv, &[("z", "n3")]),
    )
    .unwrap();
    (m, n)
}
