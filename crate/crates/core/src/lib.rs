//! Algebraic path problems over commutative quantales, on closed and open
//! weighted graphs.
//!
//! A weighted graph is a [`SquareMatrix`] valued in a [`Quantale`]; its
//! solution is the Kleene star `F(M) = Σ Mⁿ`, computed by [`star_kleene`].
//! An [`OpenMatrix`] adds input and output boundaries so graphs can be glued
//! together ([`OpenMatrix::compose`]) or set side by side
//! ([`OpenMatrix::tensor`]). For functional open matrices the boundary
//! solution of a glued graph is the product of the boundary solutions of its
//! parts, which [`solve_chain`] exploits.
//!
//! ```
//! use openpath_core::{star_kleene, MinPlus, SquareMatrix, VertexSet};
//!
//! let vs = VertexSet::new(["a", "b", "c"]).unwrap();
//! let m = SquareMatrix::from_entries(MinPlus, vs, [("a", "b", 1.0), ("b", "c", 2.0)]).unwrap();
//! assert_eq!(star_kleene(&m).unwrap().entry("a", "c"), Some(3.0));
//! ```

pub mod blackbox;
pub mod closure;
pub mod error;
pub mod io;
pub mod laws;
pub mod matrix;
pub mod open_net;
pub mod quantale;
pub mod random;
pub mod solver;
pub mod vertex;

pub use blackbox::{binomial_check, blackbox, check_lax, is_functional, rect_compose, solve_blackbox};
pub use closure::{is_rcategory, rcat_pushout, star_fixpoint, star_kleene, RCategory};
pub use error::{Error, Result};
pub use io::{parse, parse_str, serialize, AnyPayload, Builtin, Manifest, Payload, ScalarCodec};
pub use matrix::{is_morphism, matrix_pushout, pushforward, RectMatrix, SquareMatrix};
pub use open_net::{open_rcat_compose, star_open, OpenMatrix, OpenRCategory};
pub use quantale::{
    make_quantale, AnyQuantale, Boolean, Language, MaxMin, MinPlus, Quantale, QuantaleKind,
    Viterbi, WordSet,
};
pub use solver::{solve_chain, solve_monolithic, Decomposition, SolveReport, Strategy};
pub use vertex::{pushout_sets, SetFunction, SetPushout, VertexSet};
