mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use openpath_core::random::{random_function, random_matrix, random_open, vertex_set};
use openpath_core::{
    is_functional, is_rcategory, parse_str, pushforward, rect_compose, serialize, solve_blackbox,
    solve_chain, star_fixpoint, star_kleene, AnyPayload, Boolean, Decomposition, Language,
    Manifest, MinPlus, Payload, SquareMatrix, Strategy as SolveStrategy, Viterbi,
};

use common::{walk_closure, word_closure};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Non-negative multiples of 1/4, or infinity.
fn quarter() -> impl Strategy<Value = f64> {
    prop_oneof![
        1 => Just(f64::INFINITY),
        6 => (0u32..40).prop_map(|k| f64::from(k) / 4.0),
    ]
}

fn minplus_matrix(max_n: usize) -> impl Strategy<Value = SquareMatrix<MinPlus>> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(quarter(), n), n).prop_map(move |rows| {
            SquareMatrix::from_dense(MinPlus, vertex_set("v", n), rows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn minplus_closure_matches_walks(m in minplus_matrix(6)) {
        let closed = star_kleene(&m).unwrap();
        prop_assert_eq!(closed.to_rows(), walk_closure(&m, m.len()));
        prop_assert_eq!(&closed, &star_fixpoint(&m).unwrap());
        prop_assert!(is_rcategory(&closed));
    }

    #[test]
    fn closure_is_idempotent_and_monotone(m in minplus_matrix(6), seed in any::<u64>()) {
        let closed = star_kleene(&m).unwrap();
        prop_assert_eq!(&star_kleene(&closed).unwrap(), &closed);
        let bigger = m.join(&random_matrix(&MinPlus, m.vertices(), 0.3, &mut rng(seed))).unwrap();
        prop_assert!(closed.leq(&star_kleene(&bigger).unwrap()).unwrap());
    }

    #[test]
    fn pushforward_composes(m in minplus_matrix(6), seed in any::<u64>(), k in 1usize..5, l in 1usize..5) {
        let mut r = rng(seed);
        let f = random_function(m.vertices(), &vertex_set("y", k), &mut r);
        let g = random_function(f.codomain(), &vertex_set("z", l), &mut r);
        let once = pushforward(&f.then(&g).unwrap(), &m).unwrap();
        let twice = pushforward(&g, &pushforward(&f, &m).unwrap()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn closure_commutes_with_pushforward_laxly(m in minplus_matrix(6), seed in any::<u64>(), k in 1usize..5) {
        let f = random_function(m.vertices(), &vertex_set("y", k), &mut rng(seed));
        let pushed_closure = pushforward(&f, &star_kleene(&m).unwrap()).unwrap();
        let closure_pushed = star_kleene(&pushforward(&f, &m).unwrap()).unwrap();
        prop_assert!(pushed_closure.leq(&closure_pushed).unwrap());
    }

    #[test]
    fn matrices_round_trip_through_json(m in minplus_matrix(6)) {
        let manifest = Manifest::new(AnyPayload::MinPlus(Payload::Matrix(m)));
        let text = serialize(&manifest);
        let back = parse_str(&text, None).unwrap();
        prop_assert_eq!(&back, &manifest);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn viterbi_json_is_lossless(seed in any::<u64>(), n in 1usize..6) {
        let m = random_matrix(&Viterbi, &vertex_set("v", n), 0.5, &mut rng(seed));
        let manifest = Manifest::new(AnyPayload::Viterbi(Payload::Matrix(m)));
        prop_assert_eq!(parse_str(&serialize(&manifest), None).unwrap(), manifest);
    }

    #[test]
    fn open_matrices_round_trip_through_json(seed in any::<u64>(), k in 1usize..5, i in 0usize..3, o in 0usize..3) {
        let m = random_open(&MinPlus, k, &vertex_set("x", i), &vertex_set("y", o), 0.4, &mut rng(seed));
        let manifest = Manifest::new(AnyPayload::MinPlus(Payload::Open(m)));
        prop_assert_eq!(parse_str(&serialize(&manifest), None).unwrap(), manifest);
    }

    #[test]
    fn composition_is_associative_on_blackboxes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (w, x, y, z) = (vertex_set("w", 2), vertex_set("x", 1), vertex_set("y", 2), vertex_set("z", 1));
        let a = random_open(&Boolean, 3, &w, &x, 0.4, &mut r);
        let b = random_open(&Boolean, 3, &x, &y, 0.4, &mut r);
        let c = random_open(&Boolean, 3, &y, &z, 0.4, &mut r);
        let left = solve_blackbox(&a.compose(&b).unwrap().compose(&c).unwrap()).unwrap();
        let right = solve_blackbox(&a.compose(&b.compose(&c).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn blackbox_is_lax_for_arbitrary_open_matrices(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, z) = (vertex_set("x", 2), vertex_set("y", 2), vertex_set("z", 2));
        let m = random_open(&MinPlus, 4, &x, &y, 0.4, &mut r);
        let n = random_open(&MinPlus, 4, &y, &z, 0.4, &mut r);
        let product = rect_compose(&solve_blackbox(&m).unwrap(), &solve_blackbox(&n).unwrap()).unwrap();
        let whole = solve_blackbox(&m.compose(&n).unwrap()).unwrap();
        prop_assert!(product.leq(&whole).unwrap());
    }
}

#[test]
fn language_closure_matches_word_search() {
    let q = Language::new("ab", 3).unwrap();
    let mut r = rng(11);
    for n in 1..=4 {
        for _ in 0..25 {
            let m = random_matrix(&q, &vertex_set("v", n), 0.5, &mut r);
            assert_eq!(star_kleene(&m).unwrap().to_rows(), word_closure(&q, &m));
        }
    }
}

#[test]
fn short_walks_miss_language_closure() {
    // ε-loops let a word's letters sit far apart along a walk, so walks of at
    // most |X| edges are not enough for words
    let q = Language::new("a", 2).unwrap();
    let vs = vertex_set("v", 2);
    let eps = q.words([""]);
    let a = q.words(["a"]);
    let m = SquareMatrix::from_entries(
        q.clone(),
        vs,
        [("v0", "v1", eps.clone()), ("v1", "v0", a.clone()), ("v1", "v1", eps)],
    )
    .unwrap();
    let short = walk_closure(&m, m.len());
    let full = star_kleene(&m).unwrap().to_rows();
    assert!(full[0][0].contains("aa"));
    assert!(!short[0][0].contains("aa"));
    assert_eq!(full, word_closure(&q, &m));
}

#[test]
fn injective_legs_are_needed_for_strictness() {
    let (m, n) = common::zigzag_pair();
    assert!(is_functional(&m) && is_functional(&n));
    assert!(!m.has_injective_legs() && !n.has_injective_legs());
    let product = rect_compose(&solve_blackbox(&m).unwrap(), &solve_blackbox(&n).unwrap()).unwrap();
    let whole = solve_blackbox(&m.compose(&n).unwrap()).unwrap();
    assert_eq!(product.entry("x", "z"), Some(f64::INFINITY));
    assert_eq!(whole.entry("x", "z"), Some(0.0));

    // the solver notices and glues instead
    let d = Decomposition::new(vec![m, n]).unwrap();
    assert!(!d.is_compositional());
    let report = solve_chain(&d).unwrap();
    assert_eq!(report.strategy, SolveStrategy::Monolithic);
    assert_eq!(report.result, whole);
}

#[test]
fn crossing_pair_is_properly_lax() {
    let (m, n) = common::crossing_pair();
    let product = rect_compose(&solve_blackbox(&m).unwrap(), &solve_blackbox(&n).unwrap()).unwrap();
    let whole = solve_blackbox(&m.compose(&n).unwrap()).unwrap();
    assert_eq!(product.entry("x", "z"), Some(f64::INFINITY));
    assert_eq!(whole.entry("x", "z"), Some(4.0));
}
