//! JSON file formats.
//!
//! A matrix document:
//!
//! ```json
//! {"format_version": "1", "quantale": "minplus",
//!  "vertices": ["a", "b"], "entries": [["a", "b", 0.5], ["b", "a", "inf"]]}
//! ```
//!
//! An open matrix adds `"left"` and `"right"` legs, each
//! `{"boundary": [names], "map": {boundary_name: apex_name}}`. A rectangular
//! matrix replaces `vertices` with `rows` and `cols`. A decomposition is a
//! top-level array of open-matrix documents. Omitted entries are bottom.
//!
//! `quantale` and `vertices` may be omitted when ingesting raw edge lists:
//! the quantale then comes from an override and the vertices from the order
//! of first appearance.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::error::{Error, Result};
use crate::laws::Commutativity;
use crate::matrix::{RectMatrix, SquareMatrix};
use crate::open_net::OpenMatrix;
use crate::quantale::{
    make_quantale, AnyQuantale, Boolean, Language, MaxMin, MinPlus, Quantale, QuantaleKind,
    Viterbi, WordSet,
};
use crate::random::RandomScalar;
use crate::vertex::{SetFunction, VertexSet};

pub const FORMAT_VERSION: &str = "1";

/// JSON encoding of scalars.
pub trait ScalarCodec: Quantale {
    fn encode(&self, s: &Self::Scalar) -> Value;
    fn decode(&self, v: &Value) -> std::result::Result<Self::Scalar, String>;
}

fn encode_float(x: f64) -> Value {
    if x == f64::INFINITY {
        Value::String("inf".into())
    } else {
        Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
    }
}

fn decode_float(v: &Value) -> std::result::Result<f64, String> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| format!("{n} is not a float")),
        Value::String(s) if s == "inf" => Ok(f64::INFINITY),
        other => Err(format!("expected a number or \"inf\", found {other}")),
    }
}

fn checked<Q: Quantale>(q: &Q, s: Q::Scalar) -> std::result::Result<Q::Scalar, String> {
    if q.contains(&s) {
        Ok(s)
    } else {
        Err(format!("{s:?} is outside the domain of `{}`", q.id()))
    }
}

impl ScalarCodec for MinPlus {
    fn encode(&self, s: &f64) -> Value {
        encode_float(*s)
    }
    fn decode(&self, v: &Value) -> std::result::Result<f64, String> {
        checked(self, decode_float(v)?)
    }
}

impl ScalarCodec for MaxMin {
    fn encode(&self, s: &f64) -> Value {
        encode_float(*s)
    }
    fn decode(&self, v: &Value) -> std::result::Result<f64, String> {
        checked(self, decode_float(v)?)
    }
}

impl ScalarCodec for Viterbi {
    fn encode(&self, s: &f64) -> Value {
        encode_float(*s)
    }
    fn decode(&self, v: &Value) -> std::result::Result<f64, String> {
        checked(self, decode_float(v)?)
    }
}

impl ScalarCodec for Boolean {
    fn encode(&self, s: &bool) -> Value {
        Value::Bool(*s)
    }
    fn decode(&self, v: &Value) -> std::result::Result<bool, String> {
        v.as_bool().ok_or_else(|| format!("expected a boolean, found {v}"))
    }
}

impl ScalarCodec for Language {
    fn encode(&self, s: &WordSet) -> Value {
        Value::Array(s.iter().map(|w| Value::String(w.clone())).collect())
    }
    fn decode(&self, v: &Value) -> std::result::Result<WordSet, String> {
        let words = v
            .as_array()
            .ok_or_else(|| format!("expected an array of words, found {v}"))?
            .iter()
            .map(|w| {
                w.as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| format!("expected a word, found {w}"))
            })
            .collect::<std::result::Result<WordSet, String>>()?;
        checked(self, words)
    }
}

/// A typed document.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Payload<Q: Quantale> {
    Matrix(SquareMatrix<Q>),
    Rect(RectMatrix<Q>),
    Open(OpenMatrix<Q>),
    Decomposition(Vec<OpenMatrix<Q>>),
}

impl<Q: Quantale> Payload<Q> {
    pub fn quantale(&self) -> &Q {
        match self {
            Payload::Matrix(m) => m.quantale(),
            Payload::Rect(m) => m.quantale(),
            Payload::Open(m) => m.quantale(),
            Payload::Decomposition(blocks) => blocks[0].quantale(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Matrix(_) => "matrix",
            Payload::Rect(_) => "rectangular matrix",
            Payload::Open(_) => "open matrix",
            Payload::Decomposition(_) => "decomposition",
        }
    }
}

/// A document over one of the built-in quantales.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPayload {
    MinPlus(Payload<MinPlus>),
    MaxMin(Payload<MaxMin>),
    Viterbi(Payload<Viterbi>),
    Boolean(Payload<Boolean>),
    Language(Payload<Language>),
}

/// The built-in quantales: serializable, sampleable and wrappable.
pub trait Builtin: ScalarCodec + RandomScalar + Commutativity {
    fn wrap(p: Payload<Self>) -> AnyPayload;
    fn unwrap(p: AnyPayload) -> Option<Payload<Self>>;
}

macro_rules! builtin {
    ($ty:ident) => {
        impl Builtin for $ty {
            fn wrap(p: Payload<Self>) -> AnyPayload {
                AnyPayload::$ty(p)
            }
            fn unwrap(p: AnyPayload) -> Option<Payload<Self>> {
                match p {
                    AnyPayload::$ty(p) => Some(p),
                    _ => None,
                }
            }
        }
    };
}

builtin!(MinPlus);
builtin!(MaxMin);
builtin!(Viterbi);
builtin!(Boolean);
builtin!(Language);

impl AnyPayload {
    pub fn quantale(&self) -> AnyQuantale {
        match self {
            AnyPayload::MinPlus(p) => AnyQuantale::MinPlus(*p.quantale()),
            AnyPayload::MaxMin(p) => AnyQuantale::MaxMin(*p.quantale()),
            AnyPayload::Viterbi(p) => AnyQuantale::Viterbi(*p.quantale()),
            AnyPayload::Boolean(p) => AnyQuantale::Boolean(*p.quantale()),
            AnyPayload::Language(p) => AnyQuantale::Language(p.quantale().clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub format_version: String,
    pub payload: AnyPayload,
}

impl Manifest {
    pub fn new(payload: AnyPayload) -> Self {
        Manifest {
            format_version: FORMAT_VERSION.into(),
            payload,
        }
    }

    pub fn quantale(&self) -> AnyQuantale {
        self.payload.quantale()
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLeg {
    boundary: Vec<String>,
    map: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    format_version: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quantale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cols: Option<Vec<String>>,
    #[serde(default)]
    entries: Vec<(String, String, Value)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left: Option<RawLeg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right: Option<RawLeg>,
}

enum RawFile {
    One(Box<RawDoc>),
    Many(Vec<RawDoc>),
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(
        format!("line {} column {}", e.line(), e.column()),
        e.to_string(),
    )
}

fn read_raw(text: &str) -> Result<RawFile> {
    if text.trim_start().starts_with('[') {
        let docs: Vec<RawDoc> = serde_json::from_str(text).map_err(json_error)?;
        if docs.is_empty() {
            return Err(Error::parse("$", "a decomposition needs at least one block"));
        }
        Ok(RawFile::Many(docs))
    } else {
        serde_json::from_str(text)
            .map(|doc| RawFile::One(Box::new(doc)))
            .map_err(json_error)
    }
}

fn vertex_set(names: &[String], at: &str) -> Result<VertexSet> {
    VertexSet::new(names.iter().cloned()).map_err(|e| Error::parse(at, e.to_string()))
}

fn lookup(set: &VertexSet, name: &str, at: String) -> Result<usize> {
    set.index_of(name)
        .ok_or_else(|| Error::parse(at, format!("vertex `{name}` is not declared")))
}

/// Declared vertices, or those mentioned by entries and legs in order of
/// first appearance.
fn apex_vertices(doc: &RawDoc, at: &str) -> Result<VertexSet> {
    if let Some(names) = &doc.vertices {
        return vertex_set(names, &format!("{at}vertices"));
    }
    let mut seen = IndexSet::new();
    for (src, dst, _) in &doc.entries {
        seen.insert(src.as_str());
        seen.insert(dst.as_str());
    }
    for leg in [&doc.left, &doc.right].into_iter().flatten() {
        for b in &leg.boundary {
            if let Some(v) = leg.map.get(b) {
                seen.insert(v.as_str());
            }
        }
    }
    Ok(VertexSet::new(seen).expect("an index set has no duplicates"))
}

fn decode_entries<Q: ScalarCodec>(
    q: &Q,
    doc: &RawDoc,
    rows: &VertexSet,
    cols: &VertexSet,
    at: &str,
) -> Result<Vec<(usize, usize, Q::Scalar)>> {
    doc.entries
        .iter()
        .enumerate()
        .map(|(k, (src, dst, w))| {
            let i = lookup(rows, src, format!("{at}entries[{k}][0]"))?;
            let j = lookup(cols, dst, format!("{at}entries[{k}][1]"))?;
            let w = q
                .decode(w)
                .map_err(|m| Error::parse(format!("{at}entries[{k}][2]"), m))?;
            Ok((i, j, w))
        })
        .collect()
}

fn dense<Q: Quantale>(q: &Q, n_rows: usize, n_cols: usize, entries: Vec<(usize, usize, Q::Scalar)>) -> Vec<Vec<Q::Scalar>> {
    let mut rows = vec![vec![q.bottom(); n_cols]; n_rows];
    for (i, j, w) in entries {
        q.join_assign(&mut rows[i][j], &w);
    }
    rows
}

fn decode_leg(leg: &RawLeg, apex: &VertexSet, at: &str) -> Result<SetFunction> {
    let boundary = vertex_set(&leg.boundary, &format!("{at}.boundary"))?;
    for key in leg.map.keys() {
        if boundary.index_of(key).is_none() {
            return Err(Error::parse(
                format!("{at}.map.{key}"),
                format!("`{key}` is not a boundary vertex"),
            ));
        }
    }
    let table = boundary
        .iter()
        .map(|b| {
            let target = leg.map.get(b).ok_or_else(|| {
                Error::parse(format!("{at}.map"), format!("boundary vertex `{b}` has no image"))
            })?;
            lookup(apex, target, format!("{at}.map.{b}"))
        })
        .collect::<Result<Vec<_>>>()?;
    SetFunction::from_indices(boundary, apex.clone(), table).map_err(|e| Error::parse(at, e.to_string()))
}

fn check_version(doc: &RawDoc, at: &str) -> Result<()> {
    match doc.format_version.as_deref() {
        None | Some(FORMAT_VERSION) => Ok(()),
        Some(v) => Err(Error::parse(
            format!("{at}format_version"),
            format!("unsupported format version `{v}`"),
        )),
    }
}

fn check_quantale<Q: Quantale>(q: &Q, doc: &RawDoc, at: &str, overridden: bool) -> Result<()> {
    if overridden {
        return Ok(());
    }
    match &doc.quantale {
        None => Err(Error::parse(
            format!("{at}quantale"),
            "missing quantale id (pass an override for raw edge lists)",
        )),
        Some(id) => {
            let kind: QuantaleKind = id.parse().map_err(|e: Error| Error::parse(format!("{at}quantale"), e.to_string()))?;
            if kind.to_string() == q.id() {
                Ok(())
            } else {
                Err(Error::QuantaleMismatch {
                    left: q.id(),
                    right: id.clone(),
                })
            }
        }
    }
}

fn decode_doc<Q: ScalarCodec>(q: &Q, doc: &RawDoc, at: &str, overridden: bool) -> Result<Payload<Q>> {
    check_version(doc, at)?;
    check_quantale(q, doc, at, overridden)?;
    let is_rect = doc.rows.is_some() || doc.cols.is_some();
    let is_open = doc.left.is_some() || doc.right.is_some();
    if is_rect {
        if is_open || doc.vertices.is_some() {
            return Err(Error::parse(at_or_root(at), "`rows`/`cols` cannot be combined with `vertices` or legs"));
        }
        let rows = vertex_set(doc.rows.as_deref().unwrap_or_default(), &format!("{at}rows"))?;
        let cols = vertex_set(doc.cols.as_deref().unwrap_or_default(), &format!("{at}cols"))?;
        let entries = decode_entries(q, doc, &rows, &cols, at)?;
        let data = dense(q, rows.len(), cols.len(), entries);
        return Ok(Payload::Rect(RectMatrix::from_dense(q.clone(), rows, cols, data)?));
    }
    let vertices = apex_vertices(doc, at)?;
    let entries = decode_entries(q, doc, &vertices, &vertices, at)?;
    let data = dense(q, vertices.len(), vertices.len(), entries);
    let apex = SquareMatrix::from_dense(q.clone(), vertices.clone(), data)?;
    if !is_open {
        return Ok(Payload::Matrix(apex));
    }
    let (Some(left), Some(right)) = (&doc.left, &doc.right) else {
        return Err(Error::parse(at_or_root(at), "an open matrix needs both `left` and `right`"));
    };
    let left = decode_leg(left, &vertices, &format!("{at}left"))?;
    let right = decode_leg(right, &vertices, &format!("{at}right"))?;
    Ok(Payload::Open(OpenMatrix::new(apex, left, right)?))
}

fn at_or_root(at: &str) -> String {
    if at.is_empty() {
        "$".into()
    } else {
        at.trim_end_matches('.').into()
    }
}

fn decode_raw<Q: ScalarCodec>(q: &Q, raw: &RawFile, overridden: bool) -> Result<Payload<Q>> {
    match raw {
        RawFile::One(doc) => decode_doc(q, doc, "", overridden),
        RawFile::Many(docs) => docs
            .iter()
            .enumerate()
            .map(|(k, doc)| match decode_doc(q, doc, &format!("[{k}]."), overridden)? {
                Payload::Open(m) => Ok(m),
                other => Err(Error::parse(
                    format!("[{k}]"),
                    format!("decomposition blocks must be open matrices, found a {}", other.kind()),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(Payload::Decomposition),
    }
}

/// Parses a document whose scalars are interpreted in `q`. With
/// `overridden`, the file's own quantale id is ignored.
pub fn parse_payload<Q: ScalarCodec>(text: &str, q: &Q, overridden: bool) -> Result<Payload<Q>> {
    decode_raw(q, &read_raw(text)?, overridden)
}

pub fn parse_str(text: &str, quantale: Option<&QuantaleKind>) -> Result<Manifest> {
    let raw = read_raw(text)?;
    let first = match &raw {
        RawFile::One(doc) => doc,
        RawFile::Many(docs) => &docs[0],
    };
    let at = if matches!(raw, RawFile::Many(_)) { "[0].quantale" } else { "quantale" };
    let kind = match (quantale, &first.quantale) {
        (Some(kind), _) => kind.clone(),
        (None, Some(id)) => id.parse().map_err(|e: Error| Error::parse(at, e.to_string()))?,
        (None, None) => {
            return Err(Error::parse(at, "missing quantale id (pass an override for raw edge lists)"))
        }
    };
    let overridden = quantale.is_some();
    let payload = match make_quantale(&kind).map_err(|e| Error::parse(at, e.to_string()))? {
        AnyQuantale::MinPlus(q) => AnyPayload::MinPlus(decode_raw(&q, &raw, overridden)?),
        AnyQuantale::MaxMin(q) => AnyPayload::MaxMin(decode_raw(&q, &raw, overridden)?),
        AnyQuantale::Viterbi(q) => AnyPayload::Viterbi(decode_raw(&q, &raw, overridden)?),
        AnyQuantale::Boolean(q) => AnyPayload::Boolean(decode_raw(&q, &raw, overridden)?),
        AnyQuantale::Language(q) => AnyPayload::Language(decode_raw(&q, &raw, overridden)?),
    };
    Ok(Manifest::new(payload))
}

pub fn parse(path: impl AsRef<Path>, quantale: Option<&QuantaleKind>) -> Result<Manifest> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text, quantale).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

fn names(set: &VertexSet) -> Vec<String> {
    set.iter().map(str::to_owned).collect()
}

fn encode_entries<'a, Q: ScalarCodec + 'a>(
    q: &Q,
    rows: &VertexSet,
    cols: &VertexSet,
    entries: impl Iterator<Item = (usize, usize, &'a Q::Scalar)>,
) -> Vec<(String, String, Value)> {
    entries
        .map(|(i, j, w)| (rows.name(i).to_owned(), cols.name(j).to_owned(), q.encode(w)))
        .collect()
}

fn encode_leg(f: &SetFunction) -> RawLeg {
    RawLeg {
        boundary: names(f.domain()),
        map: f
            .domain()
            .iter()
            .enumerate()
            .map(|(i, b)| (b.to_owned(), f.codomain().name(f.apply_index(i)).to_owned()))
            .collect(),
    }
}

fn header<Q: Quantale>(q: &Q) -> RawDoc {
    RawDoc {
        format_version: Some(FORMAT_VERSION.into()),
        quantale: Some(q.id()),
        vertices: None,
        rows: None,
        cols: None,
        entries: Vec::new(),
        left: None,
        right: None,
    }
}

fn encode_square<Q: ScalarCodec>(m: &SquareMatrix<Q>) -> RawDoc {
    let q = m.quantale();
    RawDoc {
        vertices: Some(names(m.vertices())),
        entries: encode_entries(q, m.vertices(), m.vertices(), m.entries()),
        ..header(q)
    }
}

fn encode_open<Q: ScalarCodec>(m: &OpenMatrix<Q>) -> RawDoc {
    RawDoc {
        left: Some(encode_leg(m.left())),
        right: Some(encode_leg(m.right())),
        ..encode_square(m.apex())
    }
}

fn to_canonical(value: impl Serialize) -> String {
    // converting to a `Value` first sorts object keys
    let value = serde_json::to_value(value).expect("documents are valid JSON");
    let mut text = String::new();
    write_value(&value, 0, false, &mut text);
    text.push('\n');
    text
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object() && (!i.is_array() || is_flat(i))),
        Value::Object(_) => false,
        _ => true,
    }
}

/// Two-space indentation; arrays without objects stay on one line, except
/// entry lists, which get one entry per line.
fn write_value(v: &Value, depth: usize, expand: bool, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if is_flat(v) && !(expand && !items.is_empty()) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_value(item, depth, false, out);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(item, depth + 1, false, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(item, depth + 1, key == "entries", out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Canonical JSON: sorted keys, vertices in declared order, entries in
/// row-major order, bottom entries omitted.
pub fn serialize_payload<Q: ScalarCodec>(p: &Payload<Q>) -> String {
    match p {
        Payload::Matrix(m) => to_canonical(encode_square(m)),
        Payload::Rect(m) => {
            let q = m.quantale();
            to_canonical(RawDoc {
                rows: Some(names(m.rows())),
                cols: Some(names(m.cols())),
                entries: encode_entries(q, m.rows(), m.cols(), m.entries()),
                ..header(q)
            })
        }
        Payload::Open(m) => to_canonical(encode_open(m)),
        Payload::Decomposition(blocks) => {
            to_canonical(blocks.iter().map(encode_open).collect::<Vec<_>>())
        }
    }
}

pub fn serialize(m: &Manifest) -> String {
    match &m.payload {
        AnyPayload::MinPlus(p) => serialize_payload(p),
        AnyPayload::MaxMin(p) => serialize_payload(p),
        AnyPayload::Viterbi(p) => serialize_payload(p),
        AnyPayload::Boolean(p) => serialize_payload(p),
        AnyPayload::Language(p) => serialize_payload(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const OPEN: &str = r#"{
        "format_version": "1",
        "quantale": "minplus",
        "vertices": ["a", "b", "c"],
        "entries": [["a", "b", 2], ["b", "a", 3], ["a", "c", "inf"], ["b", "c", 0.5]],
        "left": {"boundary": ["x"], "map": {"x": "a"}},
        "right": {"boundary": ["y", "z"], "map": {"y": "c", "z": "c"}}
    }"#;

    #[test]
    fn open_matrix_round_trips() {
        let m = parse_str(OPEN, None).unwrap();
        let text = serialize(&m);
        let again = parse_str(&text, None).unwrap();
        assert_eq!(m, again);
        assert_eq!(text, serialize(&again));
        let AnyPayload::MinPlus(Payload::Open(open)) = &m.payload else {
            panic!("expected a min-plus open matrix");
        };
        assert_eq!(open.apex().entry("b", "c"), Some(0.5));
        assert_eq!(open.apex().nnz(), 3);
        assert!(!text.contains("inf"));
    }

    #[test]
    fn infinity_is_a_string() {
        let m = parse_str(
            r#"{"quantale": "maxmin", "vertices": ["a"], "entries": [["a", "a", "inf"]]}"#,
            None,
        )
        .unwrap();
        assert!(serialize(&m).contains("\"inf\""));
    }

    #[test]
    fn empty_graph_is_an_empty_open_matrix() {
        let text = r#"{"format_version": "1", "quantale": "boolean", "vertices": [], "entries": [],
            "left": {"boundary": [], "map": {}}, "right": {"boundary": [], "map": {}}}"#;
        let AnyPayload::Boolean(Payload::Open(m)) = parse_str(text, None).unwrap().payload else {
            panic!("expected an open matrix");
        };
        assert!(m.apex().is_empty());
        assert!(m.inputs().is_empty());
    }

    #[test]
    fn undeclared_vertex_is_reported_by_field() {
        let err = parse_str(
            r#"{"quantale": "minplus", "vertices": ["a"], "entries": [["a", "a", 1], ["a", "z", 1]]}"#,
            None,
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::parse("entries[1][1]", "vertex `z` is not declared")
        );
    }

    #[test]
    fn schema_violations_carry_line_numbers() {
        let err = parse_str("{\n  \"quantale\": \"minplus\",\n  \"edges\": []\n}", None).unwrap_err();
        let Error::Parse { location, message } = err else {
            panic!("expected a parse error");
        };
        assert_eq!(location, "line 3 column 9");
        assert!(message.contains("unknown field `edges`"));
    }

    #[test]
    fn bad_scalars_and_quantales() {
        let err = parse_str(
            r#"{"quantale": "viterbi", "vertices": ["a"], "entries": [["a", "a", 2]]}"#,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "entries[0][2]"));
        let err = parse_str(r#"{"quantale": "tropical", "vertices": []}"#, None).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "quantale"));
        let err = parse_str(r#"{"quantale": "boolean", "format_version": "2"}"#, None).unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "format_version"));
    }

    #[test]
    fn raw_edge_lists_need_an_override() {
        let text = r#"{"entries": [["s", "t", 1.5], ["t", "u", 2]]}"#;
        assert!(parse_str(text, None).is_err());
        let m = parse_str(text, Some(&QuantaleKind::MinPlus)).unwrap();
        let AnyPayload::MinPlus(Payload::Matrix(m)) = m.payload else {
            panic!("expected a matrix");
        };
        assert_eq!(m.vertices().iter().collect::<Vec<_>>(), ["s", "t", "u"]);
        assert_eq!(m.entry("t", "u"), Some(2.0));
    }

    #[test]
    fn language_words_round_trip() {
        let text = r#"{"quantale": "language:ab:2", "vertices": ["p", "q"],
            "entries": [["p", "q", ["ab", ""]], ["q", "q", []]]}"#;
        let m = parse_str(text, None).unwrap();
        assert_eq!(parse_str(&serialize(&m), None).unwrap(), m);
        let err = parse_str(
            r#"{"quantale": "language:ab:2", "vertices": ["p"], "entries": [["p", "p", ["abc"]]]}"#,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "entries[0][2]"));
    }

    #[test]
    fn decomposition_is_an_array() {
        let text = format!("[{OPEN}, {OPEN}]");
        let m = parse_str(&text, None).unwrap();
        let AnyPayload::MinPlus(Payload::Decomposition(blocks)) = &m.payload else {
            panic!("expected a decomposition");
        };
        assert_eq!(blocks.len(), 2);
        assert!(serialize(&m).trim_start().starts_with('['));
        assert_eq!(parse_str(&serialize(&m), None).unwrap(), m);
        let err = parse_str("[]", None).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn viterbi_floats_are_lossless() {
        let x = 0.1 + 0.2;
        let m = SquareMatrix::from_entries(Viterbi, VertexSet::new(["a"]).unwrap(), [("a", "a", x)]).unwrap();
        let text = serialize_payload(&Payload::Matrix(m.clone()));
        let back = parse_payload(&text, &Viterbi, false).unwrap();
        assert_eq!(back, Payload::Matrix(m));
    }
}
