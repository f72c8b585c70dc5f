//! Open matrices: a square matrix with an input boundary `X` and an output
//! boundary `Y`, each mapped into the vertices by a function. Composition
//! glues the output boundary of one to the input boundary of the next by
//! pushout.

use crate::closure::{is_rcategory, star_kleene, RCategory};
use crate::error::{Error, Result};
use crate::matrix::{is_morphism, matrix_pushout, SquareMatrix};
use crate::quantale::Quantale;
use crate::vertex::{SetFunction, SetPushout, VertexSet};

/// A cospan `0_X → M ← 0_Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenMatrix<Q: Quantale> {
    apex: SquareMatrix<Q>,
    left: SetFunction,
    right: SetFunction,
}

/// Result of [`OpenMatrix::compose_with_injections`]: the composite and the
/// canonical maps from each apex into the glued apex.
#[derive(Debug, Clone, PartialEq)]
pub struct Composite<Q: Quantale> {
    pub open: OpenMatrix<Q>,
    pub injections: SetPushout,
}

impl<Q: Quantale> OpenMatrix<Q> {
    pub fn new(apex: SquareMatrix<Q>, left: SetFunction, right: SetFunction) -> Result<Self> {
        for (which, leg) in [("left", &left), ("right", &right)] {
            if leg.codomain() != apex.vertices() {
                return Err(Error::InvalidFunction(format!(
                    "{which} leg does not land in the apex vertices"
                )));
            }
        }
        Ok(OpenMatrix { apex, left, right })
    }

    /// `0_X → 0_X ← 0_X` with identity legs.
    pub fn identity(q: Q, boundary: VertexSet) -> Self {
        let leg = SetFunction::identity(&boundary);
        OpenMatrix {
            apex: SquareMatrix::zero(q, boundary),
            left: leg.clone(),
            right: leg,
        }
    }

    pub fn apex(&self) -> &SquareMatrix<Q> {
        &self.apex
    }

    pub fn left(&self) -> &SetFunction {
        &self.left
    }

    pub fn right(&self) -> &SetFunction {
        &self.right
    }

    pub fn inputs(&self) -> &VertexSet {
        self.left.domain()
    }

    pub fn outputs(&self) -> &VertexSet {
        self.right.domain()
    }

    pub fn quantale(&self) -> &Q {
        self.apex.quantale()
    }

    /// Both boundary legs injective.
    pub fn has_injective_legs(&self) -> bool {
        self.left.is_injective() && self.right.is_injective()
    }

    /// `self ∘ next`: glue `self`'s outputs to `next`'s inputs.
    pub fn compose(&self, next: &OpenMatrix<Q>) -> Result<OpenMatrix<Q>> {
        Ok(self.compose_with_injections(next)?.open)
    }

    pub fn compose_with_injections(&self, next: &OpenMatrix<Q>) -> Result<Composite<Q>> {
        let foot = SquareMatrix::zero(self.quantale().clone(), self.outputs().clone());
        glue(self, next, &foot)
    }

    /// Side-by-side placement: block-diagonal apex, tagged boundaries.
    pub fn tensor(&self, other: &OpenMatrix<Q>) -> Result<OpenMatrix<Q>> {
        Ok(OpenMatrix {
            apex: self.apex.coproduct(&other.apex)?,
            left: self.left.coproduct(&other.left),
            right: self.right.coproduct(&other.right),
        })
    }
}

fn glue<Q: Quantale>(
    first: &OpenMatrix<Q>,
    second: &OpenMatrix<Q>,
    foot: &SquareMatrix<Q>,
) -> Result<Composite<Q>> {
    if first.outputs() != second.inputs() {
        return Err(Error::BoundaryMismatch(format!(
            "outputs {:?} do not match inputs {:?}",
            first.outputs(),
            second.inputs()
        )));
    }
    let glued = matrix_pushout(&first.apex, &second.apex, foot, &first.right, &second.left)?;
    let injections = glued.injections;
    let open = OpenMatrix {
        apex: glued.matrix,
        left: first.left.then(&injections.left)?,
        right: second.right.then(&injections.right)?,
    };
    Ok(Composite { open, injections })
}

/// A cospan `1_X → M ← 1_Y` whose apex is an R-category.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenRCategory<Q: Quantale> {
    open: OpenMatrix<Q>,
}

impl<Q: Quantale> OpenRCategory<Q> {
    pub fn new(open: OpenMatrix<Q>) -> Result<Self> {
        if !is_rcategory(open.apex()) {
            return Err(Error::NotAnRCategory("apex of the open matrix".into()));
        }
        Ok(OpenRCategory { open })
    }

    /// `1_X → 1_X ← 1_X`.
    pub fn identity(q: Q, boundary: VertexSet) -> Self {
        let leg = SetFunction::identity(&boundary);
        OpenRCategory {
            open: OpenMatrix {
                apex: SquareMatrix::identity(q, boundary),
                left: leg.clone(),
                right: leg,
            },
        }
    }

    pub fn as_open(&self) -> &OpenMatrix<Q> {
        &self.open
    }

    pub fn into_open(self) -> OpenMatrix<Q> {
        self.open
    }

    pub fn apex(&self) -> &SquareMatrix<Q> {
        self.open.apex()
    }

    pub fn rcategory(&self) -> RCategory<Q> {
        RCategory::new_unchecked(self.open.apex.clone())
    }

    pub fn tensor(&self, other: &OpenRCategory<Q>) -> Result<OpenRCategory<Q>> {
        // coproducts of R-categories are R-categories
        Ok(OpenRCategory {
            open: self.open.tensor(&other.open)?,
        })
    }
}

/// `★`: solve the path problem on the apex, keep the legs.
pub fn star_open<Q: Quantale>(m: &OpenMatrix<Q>) -> Result<OpenRCategory<Q>> {
    Ok(OpenRCategory {
        open: OpenMatrix {
            apex: star_kleene(&m.apex)?,
            left: m.left.clone(),
            right: m.right.clone(),
        },
    })
}

/// Composition of open R-categories: pushout over the identity foot `1_Y`,
/// then closure.
pub fn open_rcat_compose<Q: Quantale>(
    m: &OpenRCategory<Q>,
    n: &OpenRCategory<Q>,
) -> Result<OpenRCategory<Q>> {
    let foot = SquareMatrix::identity(m.open.quantale().clone(), m.open.outputs().clone());
    let glued = glue(&m.open, &n.open, &foot)?.open;
    star_open(&glued)
}

/// A vertical 2-morphism between open matrices: functions on the input
/// boundaries (`f`), apexes (`g`) and output boundaries (`h`).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoMorphism<Q: Quantale> {
    pub source: OpenMatrix<Q>,
    pub target: OpenMatrix<Q>,
    pub f: SetFunction,
    pub g: SetFunction,
    pub h: SetFunction,
}

/// Both squares commute and `g` is a matrix morphism.
pub fn check_2morphism<Q: Quantale>(t: &TwoMorphism<Q>) -> Result<bool> {
    let shapes = [
        (&t.f, t.source.inputs(), t.target.inputs()),
        (&t.g, t.source.apex.vertices(), t.target.apex.vertices()),
        (&t.h, t.source.outputs(), t.target.outputs()),
    ];
    if shapes
        .iter()
        .any(|(fun, dom, cod)| fun.domain() != *dom || fun.codomain() != *cod)
    {
        return Err(Error::DomainMismatch(
            "2-morphism components do not match the cospans".into(),
        ));
    }
    let left_square = t.source.left.then(&t.g)? == t.f.then(&t.target.left)?;
    let right_square = t.source.right.then(&t.g)? == t.h.then(&t.target.right)?;
    Ok(left_square && right_square && is_morphism(&t.g, &t.source.apex, &t.target.apex)?)
}
