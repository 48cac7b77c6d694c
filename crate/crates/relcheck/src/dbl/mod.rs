//! The double-category interface and its backends.
//!
//! A double category here has objects and arrows (the base category),
//! proarrows with an external composition that is associative up to chosen
//! invertible globular cells, and cells filling squares of two arrows and
//! two proarrows. The [`DoubleCategory`] trait exposes exactly the structure
//! the audit and equivalence pipelines consume; optional structure
//! (companions, conjoints, tabulators, products) is `Option`-valued so a
//! missing piece is a reportable fact rather than a crash.
//!
//! Three backends implement the trait:
//!
//! - [`rel_finset::RelFinSet`] — relations over skeletal finite sets, with
//!   bit-matrix proarrows and element-level composition;
//! - [`rel_table::RelTable`] — relations over any table category with a
//!   validated proper stable factorization system, all limits found by
//!   universal-property search;
//! - [`table::TableDouble`] — finite double categories loaded from
//!   `.dblcat` files (abstract cell tables, or relation/span semantics).
//!
//! Enumeration methods (`objects`, `arrows`, `proarrows`, `cells`) range
//! over the structure's construction budget; operations accept any values
//! they are handed, so intermediate objects (tabulator apexes, pullbacks)
//! may fall outside the enumerated range without breaking anything.

pub mod ops;
pub mod rel_finset;
pub mod rel_table;
pub mod table;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DblError {
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("missing structure: {0}")]
    Missing(String),
    #[error("missing composite: {0}")]
    MissingComposite(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// A span in the base category, used to present relations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanData<Ob, Arr> {
    pub apex: Ob,
    pub left: Arr,
    pub right: Arr,
}

/// A companion witness: the proarrow `f_!` with its unit and counit cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionWitness<D: DoubleCategory + ?Sized> {
    pub pro: D::Pro,
    /// `y_A => f_!` over `(1, f)`.
    pub unit: D::Cell,
    /// `f_! => y_B` over `(f, 1)`.
    pub counit: D::Cell,
}

/// A conjoint witness: the proarrow `f^*` with its unit and counit cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjointWitness<D: DoubleCategory + ?Sized> {
    pub pro: D::Pro,
    /// `y_A => f^*` over `(f, 1)`.
    pub unit: D::Cell,
    /// `f^* => y_B` over `(1, f)`.
    pub counit: D::Cell,
}

/// A tabulator witness: the object with its counit cell `y_T => m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulatorWitness<D: DoubleCategory + ?Sized> {
    pub ob: D::Ob,
    pub counit: D::Cell,
}

impl<D: DoubleCategory + ?Sized> TabulatorWitness<D> {
    pub fn left_leg(&self, d: &D) -> D::Arr {
        d.cell_left(&self.counit)
    }

    pub fn right_leg(&self, d: &D) -> D::Arr {
        d.cell_right(&self.counit)
    }
}

/// A binary product of objects with its projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObProduct<D: DoubleCategory + ?Sized> {
    pub ob: D::Ob,
    pub proj_left: D::Arr,
    pub proj_right: D::Arr,
}

/// A local product (binary product in a hom-category) with its globular
/// projection cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalProduct<D: DoubleCategory + ?Sized> {
    pub pro: D::Pro,
    pub proj_left: D::Cell,
    pub proj_right: D::Cell,
}

/// The interface every backend implements and every check consumes.
pub trait DoubleCategory {
    type Ob: Clone + Eq + Ord + Hash + Debug + Display;
    type Arr: Clone + Eq + Ord + Hash + Debug + Display;
    type Pro: Clone + Eq + Ord + Hash + Debug + Display;
    type Cell: Clone + Eq + Ord + Hash + Debug + Display;

    // ---- enumeration (bounded by construction budget) ----

    fn objects(&self) -> Vec<Self::Ob>;
    fn arrows(&self, a: &Self::Ob, b: &Self::Ob) -> Vec<Self::Arr>;
    fn proarrows(&self, a: &Self::Ob, b: &Self::Ob) -> Vec<Self::Pro>;
    /// Cells with the exact boundary `m => n` over `(f, g)`.
    fn cells(&self, m: &Self::Pro, n: &Self::Pro, f: &Self::Arr, g: &Self::Arr)
        -> Vec<Self::Cell>;

    // ---- boundaries ----

    fn dom(&self, f: &Self::Arr) -> Self::Ob;
    fn cod(&self, f: &Self::Arr) -> Self::Ob;
    fn src(&self, m: &Self::Pro) -> Self::Ob;
    fn tgt(&self, m: &Self::Pro) -> Self::Ob;
    fn cell_top(&self, c: &Self::Cell) -> Self::Pro;
    fn cell_bot(&self, c: &Self::Cell) -> Self::Pro;
    fn cell_left(&self, c: &Self::Cell) -> Self::Arr;
    fn cell_right(&self, c: &Self::Cell) -> Self::Arr;

    // ---- the base category ----

    fn id_arr(&self, a: &Self::Ob) -> Self::Arr;
    /// `f` then `g`.
    fn comp_arr(&self, f: &Self::Arr, g: &Self::Arr) -> Result<Self::Arr, DblError>;

    fn arr_is_id(&self, f: &Self::Arr) -> bool {
        *f == self.id_arr(&self.dom(f))
    }

    fn arr_inverse(&self, f: &Self::Arr) -> Option<Self::Arr> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.arrows(&b, &a).into_iter().find(|g| {
            self.comp_arr(f, g).ok() == Some(self.id_arr(&a))
                && self.comp_arr(g, f).ok() == Some(self.id_arr(&b))
        })
    }

    // ---- external structure ----

    fn unit_pro(&self, a: &Self::Ob) -> Self::Pro;
    fn comp_pro(&self, m: &Self::Pro, n: &Self::Pro) -> Result<Self::Pro, DblError>;
    fn id_cell(&self, m: &Self::Pro) -> Self::Cell;
    /// `y_f : y_A => y_B` over `(f, f)`.
    fn unit_cell(&self, f: &Self::Arr) -> Self::Cell;
    /// Vertical composition: `a : m => n`, `b : n => q`, result `m => q`.
    fn vcomp(&self, a: &Self::Cell, b: &Self::Cell) -> Result<Self::Cell, DblError>;
    /// Horizontal composition: `a : m => m'` over `(f, g)`, `b : n => n'`
    /// over `(g, h)`, result `m (x) n => m' (x) n'` over `(f, h)`.
    fn hcomp(&self, a: &Self::Cell, b: &Self::Cell) -> Result<Self::Cell, DblError>;

    // ---- chosen coherence cells ----

    /// Globular invertible `(m (x) n) (x) p => m (x) (n (x) p)`.
    fn associator(
        &self,
        m: &Self::Pro,
        n: &Self::Pro,
        p: &Self::Pro,
    ) -> Result<Self::Cell, DblError>;
    /// Globular invertible `y (x) m => m`.
    fn left_unitor(&self, m: &Self::Pro) -> Result<Self::Cell, DblError>;
    /// Globular invertible `m (x) y => m`.
    fn right_unitor(&self, m: &Self::Pro) -> Result<Self::Cell, DblError>;

    // ---- optional structure ----

    fn companion(&self, f: &Self::Arr) -> Option<CompanionWitness<Self>>;
    fn conjoint(&self, f: &Self::Arr) -> Option<ConjointWitness<Self>>;
    fn tabulator(&self, m: &Self::Pro) -> Option<TabulatorWitness<Self>>;
    fn terminal(&self) -> Option<Self::Ob>;
    fn ob_product(&self, a: &Self::Ob, b: &Self::Ob) -> Option<ObProduct<Self>>;
    /// The product proarrow `m x n` over the object products of the
    /// endpoints, with the middle-four reindexing baked in.
    fn pro_product(&self, m: &Self::Pro, n: &Self::Pro) -> Option<Self::Pro>;
    /// Binary product of parallel proarrows in their hom-category.
    fn local_product(&self, m: &Self::Pro, n: &Self::Pro) -> Option<LocalProduct<Self>>;

    // ---- derived conveniences ----

    /// Mediating arrow `<f, g>` into a product, by scan.
    fn pair_into(
        &self,
        p: &ObProduct<Self>,
        f: &Self::Arr,
        g: &Self::Arr,
    ) -> Option<Self::Arr> {
        let x = self.dom(f);
        self.arrows(&x, &p.ob).into_iter().find(|u| {
            self.comp_arr(u, &p.proj_left).ok().as_ref() == Some(f)
                && self.comp_arr(u, &p.proj_right).ok().as_ref() == Some(g)
        })
    }

    /// Globular cells `m => n` (identity arrows on both sides).
    fn globular_cells(&self, m: &Self::Pro, n: &Self::Pro) -> Vec<Self::Cell> {
        if self.src(m) != self.src(n) || self.tgt(m) != self.tgt(n) {
            return Vec::new();
        }
        let ia = self.id_arr(&self.src(m));
        let ib = self.id_arr(&self.tgt(m));
        self.cells(m, n, &ia, &ib)
    }

    /// Inverse of a globular cell, found by scan.
    fn cell_inverse(&self, c: &Self::Cell) -> Option<Self::Cell> {
        let m = self.cell_top(c);
        let n = self.cell_bot(c);
        if !self.arr_is_id(&self.cell_left(c)) || !self.arr_is_id(&self.cell_right(c)) {
            return None;
        }
        let idm = self.id_cell(&m);
        let idn = self.id_cell(&n);
        self.globular_cells(&n, &m).into_iter().find(|d| {
            self.vcomp(c, d).ok() == Some(idm.clone()) && self.vcomp(d, c).ok() == Some(idn.clone())
        })
    }

    /// All cells from a unit proarrow `y_X` into `m`, over any arrows.
    fn cells_from_unit(&self, x: &Self::Ob, m: &Self::Pro) -> Vec<Self::Cell> {
        let y = self.unit_pro(x);
        let mut out = Vec::new();
        for f in self.arrows(x, &self.src(m)) {
            for g in self.arrows(x, &self.tgt(m)) {
                out.extend(self.cells(&y, m, &f, &g));
            }
        }
        out
    }

    /// One-line description of the structure, used in report headers.
    fn describe(&self) -> String;
}

/// Backend hooks for the base-category relation calculus: jointly-monic
/// spans, pullbacks, and image factorization in the base. The audit's
/// factorization synthesis and the equivalence builder run on these.
pub trait RelBase: DoubleCategory {
    /// Canonical jointly-monic spans between `a` and `b` within the budget,
    /// one per relation, in canonical order.
    fn relation_spans(&self, a: &Self::Ob, b: &Self::Ob) -> Vec<SpanData<Self::Ob, Self::Arr>>;

    /// The proarrow a relation-span presents.
    fn span_to_pro(&self, s: &SpanData<Self::Ob, Self::Arr>) -> Option<Self::Pro>;

    /// Pullback of the cospan `(f: X -> Z, g: Y -> Z)` in the base, as a
    /// span `(P, p1: P -> X, p2: P -> Y)`.
    fn base_pullback(
        &self,
        f: &Self::Arr,
        g: &Self::Arr,
    ) -> Option<SpanData<Self::Ob, Self::Arr>>;

    /// Image factorization of a span: the relation-span image and the
    /// connecting left-class arrow `apex -> image apex`.
    fn span_image(
        &self,
        s: &SpanData<Self::Ob, Self::Arr>,
    ) -> Option<(SpanData<Self::Ob, Self::Arr>, Self::Arr)>;

    fn span_jointly_monic(&self, s: &SpanData<Self::Ob, Self::Arr>) -> bool {
        let a = self.dom(&s.left);
        for x in self.objects() {
            let hom = self.arrows(&x, &a);
            for (i, u) in hom.iter().enumerate() {
                for v in &hom[i + 1..] {
                    if self.comp_arr(u, &s.left).ok() == self.comp_arr(v, &s.left).ok()
                        && self.comp_arr(u, &s.right).ok() == self.comp_arr(v, &s.right).ok()
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Relational composite of two spans: pullback then image.
    fn compose_spans(
        &self,
        s1: &SpanData<Self::Ob, Self::Arr>,
        s2: &SpanData<Self::Ob, Self::Arr>,
    ) -> Option<SpanData<Self::Ob, Self::Arr>> {
        let p = self.base_pullback(&s1.right, &s2.left)?;
        let left = self.comp_arr(&p.left, &s1.left).ok()?;
        let right = self.comp_arr(&p.right, &s2.right).ok()?;
        let (image, _e) = self.span_image(&SpanData { apex: p.apex, left, right })?;
        Some(image)
    }
}
