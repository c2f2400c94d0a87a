//! The target-category interface for diagrams.
//!
//! Diagrams in this crate always have a finite shape, but their values live
//! either in the (large) category of finite sets or in another finite
//! category. [`Ambient`] abstracts over the two so that functor validation,
//! natural-transformation search, and the Kan engine are written once.
//!
//! * [`SetCat`] — finite sets and tabulated functions. All finite (co)limits
//!   exist; colimits are computed as union-find quotients of the disjoint
//!   union and limits as compatible families.
//! * [`FinTarget`] — a finite category. Hom-sets come from the tables and
//!   (co)limits are found by exhaustive cocone/cone search with a
//!   uniqueness check; they may legitimately fail to exist.

use std::sync::Arc;

use crate::cat::{FinCategory, MorIx, ObjIx};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::guard::SearchGuard;
use crate::limits;
use crate::set::{self, FinSet, SetFn};

/// A colimiting cocone: apex plus one leg per shape object (legs go from the
/// diagram values into the apex).
#[derive(Debug, Clone, PartialEq)]
pub struct Cocone<T: Ambient> {
    pub apex: T::Obj,
    pub legs: Vec<T::Mor>,
    pub witness: T::ColimitWitness,
}

/// A limiting cone: apex plus one leg per shape object (legs go from the
/// apex into the diagram values).
#[derive(Debug, Clone, PartialEq)]
pub struct Cone<T: Ambient> {
    pub apex: T::Obj,
    pub legs: Vec<T::Mor>,
    pub witness: T::LimitWitness,
}

/// Universality witness of a finite-set colimit: the partition of the
/// disjoint union that the apex quotients. Each class lists its members as
/// `(shape object, element)` pairs sorted by (object order, element order);
/// the first member is the canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuotientWitness {
    pub classes: Vec<Vec<(ObjIx, usize)>>,
}

/// Universality witness of a finite-set limit: the embedding of the apex
/// into the product, i.e. for each apex element the compatible family of
/// member indices in shape-object order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FamilyWitness {
    pub families: Vec<Vec<usize>>,
}

/// A category that diagram values can live in.
pub trait Ambient: Clone + PartialEq + std::fmt::Debug {
    type Obj: Clone + Eq + Ord + std::fmt::Debug;
    type Mor: Clone + Eq + Ord + std::fmt::Debug;
    type ColimitWitness: Clone + PartialEq + Default + std::fmt::Debug;
    type LimitWitness: Clone + PartialEq + Default + std::fmt::Debug;

    fn same(&self, other: &Self) -> bool;
    fn dom(&self, m: &Self::Mor) -> Self::Obj;
    fn cod(&self, m: &Self::Mor) -> Self::Obj;
    fn identity(&self, o: &Self::Obj) -> Self::Mor;
    /// `g∘f` ("g after f").
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    /// All morphisms `a -> b` in a fixed deterministic order.
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;
    /// `|hom(a, b)|` without materialising it (guard estimates).
    fn hom_size(&self, a: &Self::Obj, b: &Self::Obj) -> f64;
    /// All isomorphisms `a -> b` in a fixed deterministic order.
    fn isos(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;
    /// `|isos(a, b)|` without materialising it.
    fn iso_size(&self, a: &Self::Obj, b: &Self::Obj) -> f64;
    fn inverse(&self, m: &Self::Mor) -> Option<Self::Mor>;

    fn colimit(&self, d: &Diagram<Self>, guard: &SearchGuard) -> Result<Cocone<Self>>;
    fn limit(&self, d: &Diagram<Self>, guard: &SearchGuard) -> Result<Cone<Self>>;

    /// The unique morphism `univ.apex -> other.apex` commuting with the legs
    /// of the colimiting cocone `univ` and the cocone `other`.
    fn factor_cocone(
        &self,
        d: &Diagram<Self>,
        univ: &Cocone<Self>,
        other: &Cocone<Self>,
    ) -> Result<Self::Mor>;

    /// The unique morphism `other.apex -> univ.apex` commuting with the legs
    /// of the limiting cone `univ` and the cone `other`.
    fn factor_cone(
        &self,
        d: &Diagram<Self>,
        univ: &Cone<Self>,
        other: &Cone<Self>,
    ) -> Result<Self::Mor>;

    fn obj_label(&self, o: &Self::Obj) -> String;
    fn mor_label(&self, m: &Self::Mor) -> String;
}

/// The category of finite sets as an ambient. Stateless: every `SetCat`
/// value denotes the same category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SetCat;

impl Ambient for SetCat {
    type Obj = FinSet;
    type Mor = SetFn;
    type ColimitWitness = QuotientWitness;
    type LimitWitness = FamilyWitness;

    fn same(&self, _other: &Self) -> bool {
        true
    }

    fn dom(&self, m: &SetFn) -> FinSet {
        m.dom().clone()
    }

    fn cod(&self, m: &SetFn) -> FinSet {
        m.cod().clone()
    }

    fn identity(&self, o: &FinSet) -> SetFn {
        SetFn::identity(o)
    }

    fn compose(&self, g: &SetFn, f: &SetFn) -> SetFn {
        SetFn::compose(g, f)
    }

    fn hom(&self, a: &FinSet, b: &FinSet) -> Vec<SetFn> {
        set::all_functions(a, b)
    }

    fn hom_size(&self, a: &FinSet, b: &FinSet) -> f64 {
        set::function_count(a, b)
    }

    fn isos(&self, a: &FinSet, b: &FinSet) -> Vec<SetFn> {
        set::all_bijections(a, b)
    }

    fn iso_size(&self, a: &FinSet, b: &FinSet) -> f64 {
        set::bijection_count(a, b)
    }

    fn inverse(&self, m: &SetFn) -> Option<SetFn> {
        m.inverse()
    }

    fn colimit(&self, d: &Diagram<Self>, _guard: &SearchGuard) -> Result<Cocone<Self>> {
        Ok(limits::set_colimit(d))
    }

    fn limit(&self, d: &Diagram<Self>, _guard: &SearchGuard) -> Result<Cone<Self>> {
        Ok(limits::set_limit(d))
    }

    fn factor_cocone(
        &self,
        d: &Diagram<Self>,
        univ: &Cocone<Self>,
        other: &Cocone<Self>,
    ) -> Result<SetFn> {
        limits::set_factor_cocone(d, univ, other)
    }

    fn factor_cone(
        &self,
        d: &Diagram<Self>,
        univ: &Cone<Self>,
        other: &Cone<Self>,
    ) -> Result<SetFn> {
        limits::set_factor_cone(d, univ, other)
    }

    fn obj_label(&self, o: &FinSet) -> String {
        set::tuple_label(o.labels())
    }

    fn mor_label(&self, m: &SetFn) -> String {
        let entries: Vec<String> = m
            .table()
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", m.dom().label(i), m.cod().label(j)))
            .collect();
        format!("[{}]", entries.join(","))
    }
}

/// A finite category used as a diagram target.
#[derive(Debug, Clone, PartialEq)]
pub struct FinTarget(pub Arc<FinCategory>);

impl FinTarget {
    pub fn new(cat: Arc<FinCategory>) -> Self {
        FinTarget(cat)
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.0
    }
}

impl Ambient for FinTarget {
    type Obj = ObjIx;
    type Mor = MorIx;
    type ColimitWitness = ();
    type LimitWitness = ();

    fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }

    fn dom(&self, m: &MorIx) -> ObjIx {
        self.0.dom(*m)
    }

    fn cod(&self, m: &MorIx) -> ObjIx {
        self.0.cod(*m)
    }

    fn identity(&self, o: &ObjIx) -> MorIx {
        self.0.identity_of(*o)
    }

    fn compose(&self, g: &MorIx, f: &MorIx) -> MorIx {
        self.0.compose(*g, *f)
    }

    fn hom(&self, a: &ObjIx, b: &ObjIx) -> Vec<MorIx> {
        self.0.hom(*a, *b)
    }

    fn hom_size(&self, a: &ObjIx, b: &ObjIx) -> f64 {
        self.0.hom_size(*a, *b) as f64
    }

    fn isos(&self, a: &ObjIx, b: &ObjIx) -> Vec<MorIx> {
        self.0
            .hom(*a, *b)
            .into_iter()
            .filter(|&m| self.0.is_iso(m))
            .collect()
    }

    fn iso_size(&self, a: &ObjIx, b: &ObjIx) -> f64 {
        self.isos(a, b).len() as f64
    }

    fn inverse(&self, m: &MorIx) -> Option<MorIx> {
        self.0.inverse(*m)
    }

    fn colimit(&self, d: &Diagram<Self>, guard: &SearchGuard) -> Result<Cocone<Self>> {
        match limits::fin_colimit(d, guard)? {
            Some(c) => Ok(c),
            None => Err(Error::NoColimit {
                context: format!("diagram over {} objects", d.shape().object_count()),
            }),
        }
    }

    fn limit(&self, d: &Diagram<Self>, guard: &SearchGuard) -> Result<Cone<Self>> {
        match limits::fin_limit(d, guard)? {
            Some(c) => Ok(c),
            None => Err(Error::NoLimit {
                context: format!("diagram over {} objects", d.shape().object_count()),
            }),
        }
    }

    fn factor_cocone(
        &self,
        d: &Diagram<Self>,
        univ: &Cocone<Self>,
        other: &Cocone<Self>,
    ) -> Result<MorIx> {
        limits::fin_factor_cocone(d, univ, other)
    }

    fn factor_cone(
        &self,
        d: &Diagram<Self>,
        univ: &Cone<Self>,
        other: &Cone<Self>,
    ) -> Result<MorIx> {
        limits::fin_factor_cone(d, univ, other)
    }

    fn obj_label(&self, o: &ObjIx) -> String {
        self.0.object_name(*o).to_string()
    }

    fn mor_label(&self, m: &MorIx) -> String {
        self.0.mor_name(*m).to_string()
    }
}
