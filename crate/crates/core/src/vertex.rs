//! Finite named vertex sets and total functions between them.

use std::fmt;

use indexmap::IndexSet;

use crate::error::{Error, Result};

/// An ordered finite set of distinct names. Iteration order is declaration
/// order, and every index-based API in the crate refers to that order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct VertexSet {
    names: IndexSet<String>,
}

impl VertexSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = IndexSet::new();
        for name in names {
            let name = name.into();
            if !set.insert(name.clone()) {
                return Err(Error::InvalidVertexSet(format!("duplicate vertex `{name}`")));
            }
        }
        Ok(VertexSet { names: set })
    }

    pub fn empty() -> Self {
        VertexSet::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.get_index_of(name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.names.iter().map(String::as_str)
    }

    /// Disjoint union with `L:`/`R:` tagged names.
    pub fn coproduct(&self, other: &VertexSet) -> VertexSet {
        let names = self
            .iter()
            .map(|n| format!("L:{n}"))
            .chain(other.iter().map(|n| format!("R:{n}")));
        VertexSet {
            names: names.collect(),
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.names.iter()).finish()
    }
}

/// A total function between vertex sets, stored as an index table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunction {
    domain: VertexSet,
    codomain: VertexSet,
    map: Vec<usize>,
}

impl SetFunction {
    /// Builds a function from `(source, target)` name pairs. Every domain
    /// element must be mapped exactly once.
    pub fn from_pairs<'a, I>(domain: VertexSet, codomain: VertexSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut map = vec![None; domain.len()];
        for (src, dst) in pairs {
            let i = domain
                .index_of(src)
                .ok_or_else(|| Error::InvalidFunction(format!("`{src}` is not in the domain")))?;
            let j = codomain.index_of(dst).ok_or_else(|| {
                Error::InvalidFunction(format!("`{dst}` is not in the codomain"))
            })?;
            if map[i].replace(j).is_some() {
                return Err(Error::InvalidFunction(format!("`{src}` is mapped twice")));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, j)| {
                j.ok_or_else(|| {
                    Error::InvalidFunction(format!("`{}` has no image", domain.name(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SetFunction {
            domain,
            codomain,
            map,
        })
    }

    pub fn from_indices(domain: VertexSet, codomain: VertexSet, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.len() {
            return Err(Error::InvalidFunction(format!(
                "table has {} entries for a domain of {}",
                map.len(),
                domain.len()
            )));
        }
        if let Some(j) = map.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::InvalidFunction(format!(
                "index {j} is outside a codomain of {}",
                codomain.len()
            )));
        }
        Ok(SetFunction {
            domain,
            codomain,
            map,
        })
    }

    pub fn identity(set: &VertexSet) -> Self {
        SetFunction {
            domain: set.clone(),
            codomain: set.clone(),
            map: (0..set.len()).collect(),
        }
    }

    /// The unique function out of the empty set.
    pub fn from_empty(codomain: &VertexSet) -> Self {
        SetFunction {
            domain: VertexSet::empty(),
            codomain: codomain.clone(),
            map: Vec::new(),
        }
    }

    pub fn domain(&self) -> &VertexSet {
        &self.domain
    }

    pub fn codomain(&self) -> &VertexSet {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn apply(&self, name: &str) -> Option<&str> {
        self.domain
            .index_of(name)
            .map(|i| self.codomain.name(self.map[i]))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SetFunction) -> Result<SetFunction> {
        if self.codomain != other.domain {
            return Err(Error::DomainMismatch(
                "codomain of the first function is not the domain of the second".into(),
            ));
        }
        Ok(SetFunction {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            map: self.map.iter().map(|&j| other.map[j]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.map.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }

    /// `self + other` on tagged disjoint unions of domains and codomains.
    pub fn coproduct(&self, other: &SetFunction) -> SetFunction {
        let shift = self.codomain.len();
        SetFunction {
            domain: self.domain.coproduct(&other.domain),
            codomain: self.codomain.coproduct(&other.codomain),
            map: self
                .map
                .iter()
                .copied()
                .chain(other.map.iter().map(|j| j + shift))
                .collect(),
        }
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A pushout of finite sets together with its two canonical injections.
#[derive(Debug, Clone, PartialEq)]
pub struct SetPushout {
    pub set: VertexSet,
    pub left: SetFunction,
    pub right: SetFunction,
}

/// Pushout `X +_Z Y` of `f: Z → X` and `g: Z → Y`.
///
/// Each equivalence class is named by its lexicographically least tagged
/// member (`L:<x>` or `R:<y>`), and classes are ordered by first appearance
/// when scanning `X` and then `Y`. Two pushouts of the same span therefore
/// produce identical vertex sets.
pub fn pushout_sets(f: &SetFunction, g: &SetFunction) -> Result<SetPushout> {
    if f.domain() != g.domain() {
        return Err(Error::DomainMismatch(
            "pushout legs have different domains".into(),
        ));
    }
    let (x, y) = (f.codomain(), g.codomain());
    let n = x.len();
    let mut classes = DisjointSets::new(n + y.len());
    for z in 0..f.domain().len() {
        classes.union(f.apply_index(z), n + g.apply_index(z));
    }

    let tagged = x.coproduct(y);
    let mut root_slot: Vec<Option<usize>> = vec![None; tagged.len()];
    let mut least: Vec<usize> = Vec::new();
    let mut slot_of = Vec::with_capacity(tagged.len());
    for e in 0..tagged.len() {
        let root = classes.find(e);
        let slot = *root_slot[root].get_or_insert_with(|| {
            least.push(e);
            least.len() - 1
        });
        if tagged.name(e) < tagged.name(least[slot]) {
            least[slot] = e;
        }
        slot_of.push(slot);
    }

    let set = VertexSet::new(least.iter().map(|&e| tagged.name(e).to_owned()))?;
    let left = SetFunction::from_indices(x.clone(), set.clone(), slot_of[..n].to_vec())?;
    let right = SetFunction::from_indices(y.clone(), set.clone(), slot_of[n..].to_vec())?;
    Ok(SetPushout { set, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> VertexSet {
        VertexSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn duplicate_vertices_rejected() {
        assert!(VertexSet::new(["a", "a"]).is_err());
    }

    #[test]
    fn function_must_be_total() {
        let err = SetFunction::from_pairs(set(&["1", "2"]), set(&["a"]), [("1", "a")]);
        assert!(matches!(err, Err(Error::InvalidFunction(_))));
        let err = SetFunction::from_pairs(set(&["1"]), set(&["a"]), [("1", "b")]);
        assert!(matches!(err, Err(Error::InvalidFunction(_))));
    }

    #[test]
    fn pushout_over_empty_is_disjoint_union() {
        let x = set(&["a", "b"]);
        let y = set(&["a"]);
        let po = pushout_sets(&SetFunction::from_empty(&x), &SetFunction::from_empty(&y)).unwrap();
        assert_eq!(po.set, set(&["L:a", "L:b", "R:a"]));
        assert_eq!(po.left.table(), &[0, 1]);
        assert_eq!(po.right.table(), &[2]);
    }

    #[test]
    fn pushout_glues_shared_boundary() {
        let z = set(&["3"]);
        let f = SetFunction::from_pairs(z.clone(), set(&["a", "b", "c"]), [("3", "c")]).unwrap();
        let g = SetFunction::from_pairs(z, set(&["d", "e"]), [("3", "d")]).unwrap();
        let po = pushout_sets(&f, &g).unwrap();
        assert_eq!(po.set, set(&["L:a", "L:b", "L:c", "R:e"]));
        assert_eq!(po.left.table(), &[0, 1, 2]);
        assert_eq!(po.right.table(), &[2, 3]);
    }

    #[test]
    fn pushout_of_identities_is_the_set() {
        let z = set(&["p", "q"]);
        let id = SetFunction::identity(&z);
        let po = pushout_sets(&id, &id).unwrap();
        assert_eq!(po.set.len(), 2);
        assert_eq!(po.left.table(), &[0, 1]);
        assert_eq!(po.right.table(), &[0, 1]);
    }

    #[test]
    fn class_name_is_least_tagged_member() {
        // z ↦ b on the left and z ↦ a on the right: the class {L:b, R:a}
        // appears at position 1 (scanning L:a, L:b, ...) and is named L:b.
        let z = set(&["z"]);
        let f = SetFunction::from_pairs(z.clone(), set(&["a", "b"]), [("z", "b")]).unwrap();
        let g = SetFunction::from_pairs(z, set(&["a"]), [("z", "a")]).unwrap();
        let po = pushout_sets(&f, &g).unwrap();
        assert_eq!(po.set, set(&["L:a", "L:b"]));
        assert_eq!(po.right.table(), &[1]);
    }

    #[test]
    fn composition_and_injectivity() {
        let a = set(&["1", "2"]);
        let b = set(&["x", "y"]);
        let c = set(&["u"]);
        let f = SetFunction::from_pairs(a, b.clone(), [("1", "y"), ("2", "x")]).unwrap();
        let g = SetFunction::from_pairs(b, c, [("x", "u"), ("y", "u")]).unwrap();
        assert!(f.is_injective());
        assert!(!g.is_injective());
        let h = f.then(&g).unwrap();
        assert_eq!(h.apply("1"), Some("u"));
        assert!(g.then(&f).is_err());
    }
}
