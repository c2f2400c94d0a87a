//! Pointwise Kan extensions.
//!
//! The left extension of `X : A -> T` along `K : A -> B` is computed one
//! base object at a time: its value at `b` is the colimit of `X` over the
//! comma category `K↓b`, and its action on `g : b -> b'` is the unique apex
//! map obtained by transporting the colimiting cocone along the induced
//! comma functor and factoring. The right extension is dual (limits over
//! `b↓K`). The unit (resp. counit) component at `a` is the (co)projection
//! at the comma object `(a, id)`.
//!
//! Universal properties and the hom-set bijections are verified by full
//! enumeration of natural transformations, independent of the construction.

use std::collections::BTreeMap;

use crate::ambient::{Ambient, Cocone, Cone, SetCat};

use crate::comma::{comma_left, comma_right, induced_between, CommaCategory};
use crate::diagram::{Diagram, Functor, SetFunctor};
use crate::error::{Error, Result};
use crate::guard::SearchGuard;
use crate::hom_search::{find_natural_iso, nat_hom};
use crate::set::{all_functions, tuple_label, FinSet, SetFn};
use crate::transform::{vcompose, whisker_right, Transformation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// A per-object universality certificate.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate<T: Ambient> {
    Colimit(Cocone<T>),
    Limit(Cone<T>),
}

/// A computed pointwise Kan extension with its certificates.
#[derive(Debug, Clone)]
pub struct KanExtension<T: Ambient> {
    pub direction: Direction,
    /// `K : A -> B`.
    pub k: Functor,
    /// `X : A -> T`.
    pub x: Diagram<T>,
    /// The extension `B -> T`.
    pub ext: Diagram<T>,
    /// Unit `X ⇒ ext∘K` (left) or counit `ext∘K ⇒ X` (right).
    pub mediator: Transformation<T>,
    /// Per base object: the comma category indexing the (co)limit.
    pub commas: Vec<CommaCategory>,
    /// Per base object: the (co)limit certificate.
    pub certificates: Vec<Certificate<T>>,
}

fn check_kan_inputs<T: Ambient>(k: &Functor, x: &Diagram<T>) -> Result<()> {
    if **k.shape() != **x.shape() {
        return Err(Error::Mismatch(
            "the functor and the diagram must share their source category".to_string(),
        ));
    }
    Ok(())
}

/// The left Kan extension of `x` along `k`.
pub fn lan<T: Ambient>(k: &Functor, x: &Diagram<T>, guard: &SearchGuard) -> Result<KanExtension<T>> {
    check_kan_inputs(k, x)?;
    let b_cat = k.target().category().clone();
    let target = x.target().clone();

    let mut commas = Vec::with_capacity(b_cat.object_count());
    let mut diagrams = Vec::with_capacity(b_cat.object_count());
    let mut cocones = Vec::with_capacity(b_cat.object_count());
    for b in b_cat.objects() {
        let comma = comma_left(k, b)?;
        let diagram = x.precompose(&comma.projection)?;
        let cocone = target.colimit(&diagram, guard)?;
        commas.push(comma);
        diagrams.push(diagram);
        cocones.push(cocone);
    }

    let ext_objects: Vec<T::Obj> = cocones.iter().map(|c| c.apex.clone()).collect();
    let mut ext_morphisms = Vec::with_capacity(b_cat.morphism_count());
    for g in b_cat.morphisms() {
        let (b, b2) = (b_cat.dom(g), b_cat.cod(g));
        let induced = induced_between(&commas[b.0], &commas[b2.0], g)?;
        // Transport the target cocone's legs back along the induced functor:
        // a cocone over the diagram at `b` with apex ext(b').
        let transported = Cocone {
            apex: ext_objects[b2.0].clone(),
            legs: commas[b.0]
                .cat
                .objects()
                .map(|o| cocones[b2.0].legs[induced.apply_obj(o).0].clone())
                .collect(),
            witness: T::ColimitWitness::default(),
        };
        ext_morphisms.push(target.factor_cocone(&diagrams[b.0], &cocones[b.0], &transported)?);
    }
    let ext = Diagram::new(b_cat.clone(), target.clone(), ext_objects, ext_morphisms)?;

    // Unit: at `a`, the coprojection at the comma object (a, id_{K a}).
    let unit_components: Vec<T::Mor> = k
        .shape()
        .objects()
        .map(|a| {
            let ka = k.apply_obj(a);
            let o = commas[ka.0]
                .object_of_pair(a, b_cat.identity_of(ka))
                .ok_or(Error::Internal(
                    "identity witness missing from its comma category".to_string(),
                ))?;
            Ok(cocones[ka.0].legs[o.0].clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let mediator = Transformation::new(x.clone(), ext.precompose(k)?, unit_components)?;

    Ok(KanExtension {
        direction: Direction::Left,
        k: k.clone(),
        x: x.clone(),
        ext,
        mediator,
        commas,
        certificates: cocones.into_iter().map(Certificate::Colimit).collect(),
    })
}

/// The right Kan extension of `x` along `k`.
pub fn ran<T: Ambient>(k: &Functor, x: &Diagram<T>, guard: &SearchGuard) -> Result<KanExtension<T>> {
    check_kan_inputs(k, x)?;
    let b_cat = k.target().category().clone();
    let target = x.target().clone();

    let mut commas = Vec::with_capacity(b_cat.object_count());
    let mut diagrams = Vec::with_capacity(b_cat.object_count());
    let mut cones = Vec::with_capacity(b_cat.object_count());
    for b in b_cat.objects() {
        let comma = comma_right(b, k)?;
        let diagram = x.precompose(&comma.projection)?;
        let cone = target.limit(&diagram, guard)?;
        commas.push(comma);
        diagrams.push(diagram);
        cones.push(cone);
    }

    let ext_objects: Vec<T::Obj> = cones.iter().map(|c| c.apex.clone()).collect();
    let mut ext_morphisms = Vec::with_capacity(b_cat.morphism_count());
    for g in b_cat.morphisms() {
        let (b, b2) = (b_cat.dom(g), b_cat.cod(g));
        // The induced functor goes b'↓K -> b↓K by precomposition; pulling
        // the limiting cone at `b` back along it gives a cone over the
        // diagram at `b'` with apex ext(b), whose factorisation is ext(g).
        let induced = induced_between(&commas[b2.0], &commas[b.0], g)?;
        let transported = Cone {
            apex: ext_objects[b.0].clone(),
            legs: commas[b2.0]
                .cat
                .objects()
                .map(|o| cones[b.0].legs[induced.apply_obj(o).0].clone())
                .collect(),
            witness: T::LimitWitness::default(),
        };
        ext_morphisms.push(target.factor_cone(&diagrams[b2.0], &cones[b2.0], &transported)?);
    }
    let ext = Diagram::new(b_cat.clone(), target.clone(), ext_objects, ext_morphisms)?;

    // Counit: at `a`, the projection at the comma object (a, id_{K a}).
    let counit_components: Vec<T::Mor> = k
        .shape()
        .objects()
        .map(|a| {
            let ka = k.apply_obj(a);
            let o = commas[ka.0]
                .object_of_pair(a, b_cat.identity_of(ka))
                .ok_or(Error::Internal(
                    "identity witness missing from its comma category".to_string(),
                ))?;
            Ok(cones[ka.0].legs[o.0].clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let mediator = Transformation::new(ext.precompose(k)?, x.clone(), counit_components)?;

    Ok(KanExtension {
        direction: Direction::Right,
        k: k.clone(),
        x: x.clone(),
        ext,
        mediator,
        commas,
        certificates: cones.into_iter().map(Certificate::Limit).collect(),
    })
}

/// Verifies the defining universal property against a candidate pair by
/// full enumeration, returning the unique factoring transformation.
///
/// Left: given `etap : X ⇒ Lp∘K`, finds the unique `α : ext ⇒ Lp` with
/// `(αK)∘unit = etap`. Right: given `etap : Lp∘K ⇒ X`, finds the unique
/// `β : Lp ⇒ ext` with `counit∘(βK) = etap`.
pub fn verify_universal<T: Ambient>(
    kan: &KanExtension<T>,
    lp: &Diagram<T>,
    etap: &Transformation<T>,
    guard: &SearchGuard,
) -> Result<Transformation<T>> {
    let restricted = lp.precompose(&kan.k)?;
    let survivors: Vec<Transformation<T>> = match kan.direction {
        Direction::Left => {
            if etap.source() != &kan.x || etap.target() != &restricted {
                return Err(Error::Mismatch(
                    "candidate transformation must go X ⇒ Lp∘K".to_string(),
                ));
            }
            nat_hom(&kan.ext, lp, guard)?
                .into_iter()
                .filter(|alpha| {
                    whisker_right(alpha, &kan.k)
                        .and_then(|ak| vcompose(&ak, &kan.mediator))
                        .map(|c| &c == etap)
                        .unwrap_or(false)
                })
                .collect()
        }
        Direction::Right => {
            if etap.source() != &restricted || etap.target() != &kan.x {
                return Err(Error::Mismatch(
                    "candidate transformation must go Lp∘K ⇒ X".to_string(),
                ));
            }
            nat_hom(lp, &kan.ext, guard)?
                .into_iter()
                .filter(|beta| {
                    whisker_right(beta, &kan.k)
                        .and_then(|bk| vcompose(&kan.mediator, &bk))
                        .map(|c| &c == etap)
                        .unwrap_or(false)
                })
                .collect()
        }
    };
    match survivors.len() {
        1 => Ok(survivors.into_iter().next().unwrap()),
        n => Err(Error::Universality {
            survivors: n,
            context: "verify_universal".to_string(),
        }),
    }
}

/// The outcome of checking one hom-set bijection.
#[derive(Debug, Clone)]
pub struct HomBijectionReport {
    pub direction: Direction,
    /// `|nat(ext, H)|` on the left, `|nat(H, ext)|` on the right.
    pub extension_side: usize,
    /// `|nat(X, H∘K)|` on the left, `|nat(H∘K, X)|` on the right.
    pub restricted_side: usize,
    pub injective: bool,
    /// Every image of the canonical map lies in the enumerated far side.
    pub well_defined: bool,
    pub holds: bool,
}

/// Checks that the canonical map between the two transformation sets of the
/// extension's defining bijection is injective with equal cardinalities.
pub fn hom_bijection_check<T: Ambient>(
    kan: &KanExtension<T>,
    h: &Diagram<T>,
    guard: &SearchGuard,
) -> Result<HomBijectionReport> {
    let restricted = h.precompose(&kan.k)?;
    let (near, far, images) = match kan.direction {
        Direction::Left => {
            let near = nat_hom(&kan.ext, h, guard)?;
            let far = nat_hom(&kan.x, &restricted, guard)?;
            let images: Vec<Transformation<T>> = near
                .iter()
                .map(|alpha| vcompose(&whisker_right(alpha, &kan.k)?, &kan.mediator))
                .collect::<Result<Vec<_>>>()?;
            (near, far, images)
        }
        Direction::Right => {
            let near = nat_hom(h, &kan.ext, guard)?;
            let far = nat_hom(&restricted, &kan.x, guard)?;
            let images: Vec<Transformation<T>> = near
                .iter()
                .map(|beta| vcompose(&kan.mediator, &whisker_right(beta, &kan.k)?))
                .collect::<Result<Vec<_>>>()?;
            (near, far, images)
        }
    };
    let mut injective = true;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            if images[i] == images[j] {
                injective = false;
            }
        }
    }
    let well_defined = images.iter().all(|im| far.contains(im));
    let holds = injective && well_defined && near.len() == far.len();
    Ok(HomBijectionReport {
        direction: kan.direction,
        extension_side: near.len(),
        restricted_side: far.len(),
        injective,
        well_defined,
        holds,
    })
}

/// An endofunctor of finite sets that the engine can evaluate: the identity,
/// a covariant representable `hom(c, -)`, or an explicitly tabulated functor
/// on a finite full subcategory of sets.
#[derive(Debug, Clone)]
pub enum SetEndofunctor {
    Identity,
    /// `S ↦ hom(domain, S)`, acting by postcomposition. Elements of
    /// `hom(domain, S)` are labelled by their image tuples in domain order.
    Representable { domain: FinSet },
    Tabulated(TabulatedEndo),
}

/// A tabulated endofunctor on an explicit finite full subcategory: `values`
/// pairs with `objects` positionally, and every function between listed
/// objects must appear as a key in `functions`.
#[derive(Debug, Clone)]
pub struct TabulatedEndo {
    pub objects: Vec<FinSet>,
    pub values: Vec<FinSet>,
    pub functions: BTreeMap<SetFn, SetFn>,
}

impl SetEndofunctor {
    pub fn representable(domain: FinSet) -> Self {
        SetEndofunctor::Representable { domain }
    }

    /// The set of functions `domain -> s`, labelled canonically.
    fn hom_set(domain: &FinSet, s: &FinSet) -> FinSet {
        let labels = all_functions(domain, s)
            .into_iter()
            .map(|f| tuple_label(f.table().iter().map(|&i| s.label(i))))
            .collect();
        FinSet::new(labels).expect("image tuples are distinct")
    }

    pub fn apply_set(&self, s: &FinSet) -> Result<FinSet> {
        match self {
            SetEndofunctor::Identity => Ok(s.clone()),
            SetEndofunctor::Representable { domain } => Ok(Self::hom_set(domain, s)),
            SetEndofunctor::Tabulated(t) => {
                let i = t
                    .objects
                    .iter()
                    .position(|o| o == s)
                    .ok_or_else(|| Error::UnsupportedValue(format!("{s:?}")))?;
                Ok(t.values[i].clone())
            }
        }
    }

    pub fn apply_fn(&self, f: &SetFn) -> Result<SetFn> {
        match self {
            SetEndofunctor::Identity => Ok(f.clone()),
            SetEndofunctor::Representable { domain } => {
                let dom_fns = all_functions(domain, f.dom());
                let cod_fns = all_functions(domain, f.cod());
                let index: BTreeMap<Vec<usize>, usize> = cod_fns
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (g.table().to_vec(), i))
                    .collect();
                let dom_set = Self::hom_set(domain, f.dom());
                let cod_set = Self::hom_set(domain, f.cod());
                Ok(SetFn::tabulate(dom_set, cod_set, |i| {
                    let post = SetFn::compose(f, &dom_fns[i]);
                    index[post.table()]
                }))
            }
            SetEndofunctor::Tabulated(t) => t
                .functions
                .get(f)
                .cloned()
                .ok_or_else(|| Error::UnsupportedValue(format!("{f:?}"))),
        }
    }

    pub fn apply_diagram(&self, d: &SetFunctor) -> Result<SetFunctor> {
        let objects = d
            .object_table()
            .iter()
            .map(|s| self.apply_set(s))
            .collect::<Result<Vec<_>>>()?;
        let morphisms = d
            .morphism_table()
            .iter()
            .map(|f| self.apply_fn(f))
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(d.shape().clone(), SetCat, objects, morphisms)
    }
}

#[derive(Debug, Clone)]
pub struct PreservationReport {
    /// Sizes `(object name, |Kan(G∘X)(b)|, |G(ext(b))|)` per base object.
    pub per_object: Vec<(String, usize, usize)>,
    pub iso: Option<Transformation<SetCat>>,
    pub holds: bool,
}

/// Checks whether an endofunctor preserves the given (set-valued) Kan
/// extension: computes the extension of `G∘X` along the same functor and
/// searches for a natural isomorphism with `G` applied to the extension.
pub fn preservation_check(
    endo: &SetEndofunctor,
    kan: &KanExtension<SetCat>,
    guard: &SearchGuard,
) -> Result<PreservationReport> {
    let gx = endo.apply_diagram(&kan.x)?;
    let direct = match kan.direction {
        Direction::Left => lan(&kan.k, &gx, guard)?,
        Direction::Right => ran(&kan.k, &gx, guard)?,
    };
    let mapped = endo.apply_diagram(&kan.ext)?;
    let per_object = kan
        .k
        .target()
        .category()
        .objects()
        .map(|b| {
            (
                kan.k.target().category().object_name(b).to_string(),
                direct.ext.set_at(b).size(),
                mapped.set_at(b).size(),
            )
        })
        .collect();
    let iso = find_natural_iso(&direct.ext, &mapped, guard)?;
    Ok(PreservationReport {
        per_object,
        holds: iso.is_some(),
        iso,
    })
}
