//! Commutative quantales: the scalar domains every matrix in this crate is
//! valued in.
//!
//! A quantale here is an ordered set with a binary join (and a bottom
//! element, the empty join), plus a multiplication with a unit that
//! distributes over joins. The algebraic path problem only ever needs finite
//! joins and the countable join defining the Kleene star, which is computed
//! by fixpoint iteration.
//!
//! Five instances are built in:
//!
//! | id          | domain       | order | join  | mul                 |
//! |-------------|--------------|-------|-------|---------------------|
//! | `minplus`   | `[0, ∞]`     | `≥`   | `min` | `+`                 |
//! | `maxmin`    | `[0, ∞]`     | `≤`   | `max` | `min`               |
//! | `viterbi`   | `[0, 1]`     | `≤`   | `max` | `×`                 |
//! | `boolean`   | `{F, T}`     | `⇒`   | `OR`  | `AND`               |
//! | `language`  | words ≤ `L`  | `⊆`   | `∪`   | truncated concat    |

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Iteration cap for [`Quantale::star`].
pub const STAR_ITERATION_CAP: usize = 1024;

/// Default comparison tolerance for the floating point instances.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

pub trait Quantale: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Scalar: Clone + fmt::Debug + PartialEq + Send + Sync;

    /// String id used in files and on the command line.
    fn id(&self) -> String;

    /// The empty join.
    fn bottom(&self) -> Self::Scalar;

    fn unit(&self) -> Self::Scalar;

    fn join(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;

    fn mul(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;

    fn leq(&self, a: &Self::Scalar, b: &Self::Scalar) -> bool;

    /// Whether `a` lies in the quantale's domain.
    fn contains(&self, a: &Self::Scalar) -> bool;

    fn eq_tolerance(&self) -> f64 {
        0.0
    }

    fn approx_eq(&self, a: &Self::Scalar, b: &Self::Scalar) -> bool {
        a == b
    }

    /// `a ≤ b` up to the comparison tolerance.
    fn approx_leq(&self, a: &Self::Scalar, b: &Self::Scalar) -> bool {
        self.leq(a, b) || self.approx_eq(a, b)
    }

    fn is_bottom(&self, a: &Self::Scalar) -> bool {
        *a == self.bottom()
    }

    fn join_assign(&self, acc: &mut Self::Scalar, b: &Self::Scalar) {
        *acc = self.join(acc, b);
    }

    /// Join of a finite family; bottom when empty.
    fn join_all<'a, I>(&self, items: I) -> Self::Scalar
    where
        I: IntoIterator<Item = &'a Self::Scalar>,
        Self::Scalar: 'a,
    {
        let mut acc = self.bottom();
        for x in items {
            self.join_assign(&mut acc, x);
        }
        acc
    }

    /// `a* = 1 + a + a² + …`, the least fixpoint of `s = 1 + a·s`.
    fn star(&self, a: &Self::Scalar) -> Result<Self::Scalar> {
        let unit = self.unit();
        let mut s = unit.clone();
        for _ in 0..STAR_ITERATION_CAP {
            let next = self.join(&unit, &self.mul(a, &s));
            if next == s {
                return Ok(s);
            }
            s = next;
        }
        Err(Error::NonStabilizing(STAR_ITERATION_CAP))
    }
}

fn float_approx_eq(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    if a.is_infinite() || b.is_infinite() {
        return false;
    }
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

/// Tropical `([0, ∞], ≥, min, +)`: shortest paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinPlus;

impl Quantale for MinPlus {
    type Scalar = f64;

    fn id(&self) -> String {
        "minplus".into()
    }
    fn bottom(&self) -> f64 {
        f64::INFINITY
    }
    fn unit(&self) -> f64 {
        0.0
    }
    fn join(&self, a: &f64, b: &f64) -> f64 {
        a.min(*b)
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }
    fn leq(&self, a: &f64, b: &f64) -> bool {
        a >= b
    }
    fn contains(&self, a: &f64) -> bool {
        *a >= 0.0
    }
    fn eq_tolerance(&self) -> f64 {
        FLOAT_TOLERANCE
    }
    fn approx_eq(&self, a: &f64, b: &f64) -> bool {
        float_approx_eq(*a, *b, FLOAT_TOLERANCE)
    }
}

/// `([0, ∞], ≤, max, min)`: widest (bottleneck) paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxMin;

impl Quantale for MaxMin {
    type Scalar = f64;

    fn id(&self) -> String {
        "maxmin".into()
    }
    fn bottom(&self) -> f64 {
        0.0
    }
    fn unit(&self) -> f64 {
        f64::INFINITY
    }
    fn join(&self, a: &f64, b: &f64) -> f64 {
        a.max(*b)
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a.min(*b)
    }
    fn leq(&self, a: &f64, b: &f64) -> bool {
        a <= b
    }
    fn contains(&self, a: &f64) -> bool {
        *a >= 0.0
    }
    fn eq_tolerance(&self) -> f64 {
        FLOAT_TOLERANCE
    }
    fn approx_eq(&self, a: &f64, b: &f64) -> bool {
        float_approx_eq(*a, *b, FLOAT_TOLERANCE)
    }
}

/// `([0, 1], ≤, max, ×)`: most likely paths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viterbi;

impl Quantale for Viterbi {
    type Scalar = f64;

    fn id(&self) -> String {
        "viterbi".into()
    }
    fn bottom(&self) -> f64 {
        0.0
    }
    fn unit(&self) -> f64 {
        1.0
    }
    fn join(&self, a: &f64, b: &f64) -> f64 {
        a.max(*b)
    }
    fn mul(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }
    fn leq(&self, a: &f64, b: &f64) -> bool {
        a <= b
    }
    fn contains(&self, a: &f64) -> bool {
        (0.0..=1.0).contains(a)
    }
    fn eq_tolerance(&self) -> f64 {
        FLOAT_TOLERANCE
    }
    fn approx_eq(&self, a: &f64, b: &f64) -> bool {
        float_approx_eq(*a, *b, FLOAT_TOLERANCE)
    }
}

/// `({F, T}, OR, AND)`: reachability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boolean;

impl Quantale for Boolean {
    type Scalar = bool;

    fn id(&self) -> String {
        "boolean".into()
    }
    fn bottom(&self) -> bool {
        false
    }
    fn unit(&self) -> bool {
        true
    }
    fn join(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
    fn leq(&self, a: &bool, b: &bool) -> bool {
        !*a || *b
    }
    fn contains(&self, _: &bool) -> bool {
        true
    }
}

pub type WordSet = BTreeSet<String>;

/// Sets of words over a finite alphabet, joined by union and multiplied by
/// concatenation. Words longer than `max_len` are dropped, so this is an
/// under-approximation of the full powerset of `Σ*` that keeps every join
/// finite and every star terminating.
///
/// Concatenation is not commutative; matrix products keep path order.
#[derive(Debug, Clone, PartialEq)]
pub struct Language {
    alphabet: Vec<char>,
    max_len: usize,
}

impl Language {
    pub fn new(alphabet: &str, max_len: usize) -> Result<Self> {
        let letters: Vec<char> = alphabet.chars().collect();
        if letters.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must be nonempty".into()));
        }
        let distinct: BTreeSet<char> = letters.iter().copied().collect();
        if distinct.len() != letters.len() {
            return Err(Error::InvalidAlphabet(format!(
                "repeated letter in `{alphabet}`"
            )));
        }
        if letters.iter().any(|c| *c == ':' || c.is_whitespace()) {
            return Err(Error::InvalidAlphabet(format!(
                "`{alphabet}` contains ':' or whitespace"
            )));
        }
        Ok(Language {
            alphabet: letters,
            max_len,
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Builds a word set from string slices, without validation.
    pub fn words<'a>(&self, words: impl IntoIterator<Item = &'a str>) -> WordSet {
        words.into_iter().map(str::to_owned).collect()
    }
}

impl Quantale for Language {
    type Scalar = WordSet;

    fn id(&self) -> String {
        let letters: String = self.alphabet.iter().collect();
        format!("language:{letters}:{}", self.max_len)
    }
    fn bottom(&self) -> WordSet {
        WordSet::new()
    }
    fn unit(&self) -> WordSet {
        std::iter::once(String::new()).collect()
    }
    fn join(&self, a: &WordSet, b: &WordSet) -> WordSet {
        a.union(b).cloned().collect()
    }
    fn join_assign(&self, acc: &mut WordSet, b: &WordSet) {
        acc.extend(b.iter().cloned());
    }
    fn mul(&self, a: &WordSet, b: &WordSet) -> WordSet {
        let mut out = WordSet::new();
        for u in a {
            let room = self.max_len.saturating_sub(u.chars().count());
            for v in b {
                if v.chars().count() <= room {
                    out.insert(format!("{u}{v}"));
                }
            }
        }
        out
    }
    fn leq(&self, a: &WordSet, b: &WordSet) -> bool {
        a.is_subset(b)
    }
    fn contains(&self, a: &WordSet) -> bool {
        a.iter().all(|w| {
            w.chars().count() <= self.max_len && w.chars().all(|c| self.alphabet.contains(&c))
        })
    }
    fn is_bottom(&self, a: &WordSet) -> bool {
        a.is_empty()
    }
}

/// Identifier of a built-in quantale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuantaleKind {
    MinPlus,
    MaxMin,
    Viterbi,
    Boolean,
    Language { alphabet: String, max_len: usize },
}

impl FromStr for QuantaleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minplus" => Ok(QuantaleKind::MinPlus),
            "maxmin" => Ok(QuantaleKind::MaxMin),
            "viterbi" => Ok(QuantaleKind::Viterbi),
            "boolean" => Ok(QuantaleKind::Boolean),
            _ => {
                let rest = s
                    .strip_prefix("language:")
                    .ok_or_else(|| Error::UnknownQuantale(s.to_owned()))?;
                let (alphabet, max_len) = rest
                    .rsplit_once(':')
                    .ok_or_else(|| Error::UnknownQuantale(s.to_owned()))?;
                let max_len = max_len
                    .parse()
                    .map_err(|_| Error::UnknownQuantale(s.to_owned()))?;
                Ok(QuantaleKind::Language {
                    alphabet: alphabet.to_owned(),
                    max_len,
                })
            }
        }
    }
}

impl fmt::Display for QuantaleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantaleKind::MinPlus => f.write_str("minplus"),
            QuantaleKind::MaxMin => f.write_str("maxmin"),
            QuantaleKind::Viterbi => f.write_str("viterbi"),
            QuantaleKind::Boolean => f.write_str("boolean"),
            QuantaleKind::Language { alphabet, max_len } => {
                write!(f, "language:{alphabet}:{max_len}")
            }
        }
    }
}

/// A built-in quantale instance chosen at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyQuantale {
    MinPlus(MinPlus),
    MaxMin(MaxMin),
    Viterbi(Viterbi),
    Boolean(Boolean),
    Language(Language),
}

impl AnyQuantale {
    pub fn id(&self) -> String {
        match self {
            AnyQuantale::MinPlus(q) => q.id(),
            AnyQuantale::MaxMin(q) => q.id(),
            AnyQuantale::Viterbi(q) => q.id(),
            AnyQuantale::Boolean(q) => q.id(),
            AnyQuantale::Language(q) => q.id(),
        }
    }
}

pub fn make_quantale(kind: &QuantaleKind) -> Result<AnyQuantale> {
    Ok(match kind {
        QuantaleKind::MinPlus => AnyQuantale::MinPlus(MinPlus),
        QuantaleKind::MaxMin => AnyQuantale::MaxMin(MaxMin),
        QuantaleKind::Viterbi => AnyQuantale::Viterbi(Viterbi),
        QuantaleKind::Boolean => AnyQuantale::Boolean(Boolean),
        QuantaleKind::Language { alphabet, max_len } => {
            AnyQuantale::Language(Language::new(alphabet, *max_len)?)
        }
    })
}
