//! Comma categories `K↓b` and `b↓K`, the functors between them induced by
//! morphisms of the base, and categories of elements.
//!
//! Comma objects are pairs `(a, w)` of a source object and a witness
//! morphism (`K(a) -> b` on the left, `b -> K(a)` on the right), named
//! `"(a,w)"`. A comma morphism is an underlying source morphism making the
//! witness triangle commute; its identifier is the underlying name
//! qualified by the comma endpoints, which keeps the projection faithful by
//! construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ambient::FinTarget;
use crate::cat::{CategoryBuilder, FinCategory, MorIx, ObjIx};
use crate::diagram::{Diagram, Functor, SetFunctor};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommaSide {
    /// `K↓b`: witnesses `K(a) -> b`.
    Left,
    /// `b↓K`: witnesses `b -> K(a)`.
    Right,
}

/// A comma category together with its projection to the source of `K` and
/// the witness morphism of each object.
#[derive(Debug, Clone)]
pub struct CommaCategory {
    pub side: CommaSide,
    pub k: Functor,
    pub base: ObjIx,
    pub cat: Arc<FinCategory>,
    /// Projection `K↓b -> A` (or `b↓K -> A`).
    pub projection: Functor,
    /// Per comma object, the witness morphism in `B`.
    pub witnesses: Vec<MorIx>,
    /// Per comma object, the underlying pair `(a, w)`.
    pub pairs: Vec<(ObjIx, MorIx)>,
    pair_index: BTreeMap<(ObjIx, MorIx), ObjIx>,
    /// `(src, tgt, underlying) -> comma morphism` lookup.
    mor_index: BTreeMap<(ObjIx, ObjIx, MorIx), MorIx>,
}

impl CommaCategory {
    pub fn object_of_pair(&self, a: ObjIx, w: MorIx) -> Option<ObjIx> {
        self.pair_index.get(&(a, w)).copied()
    }

    pub fn morphism_between(&self, src: ObjIx, tgt: ObjIx, underlying: MorIx) -> Option<MorIx> {
        self.mor_index.get(&(src, tgt, underlying)).copied()
    }
}

fn build_comma(k: &Functor, base: ObjIx, side: CommaSide) -> Result<CommaCategory> {
    let a_cat = k.shape().clone();
    let b_cat = k.target().category().clone();
    if base.0 >= b_cat.object_count() {
        return Err(Error::UnknownObject(format!("object index {}", base.0)));
    }

    // Objects: pairs (a, w) in (object order, witness morphism order).
    let mut pairs: Vec<(ObjIx, MorIx)> = Vec::new();
    for a in a_cat.objects() {
        let ka = k.apply_obj(a);
        let witnesses = match side {
            CommaSide::Left => b_cat.hom(ka, base),
            CommaSide::Right => b_cat.hom(base, ka),
        };
        for w in witnesses {
            pairs.push((a, w));
        }
    }

    let object_name = |&(a, w): &(ObjIx, MorIx)| {
        format!("({},{})", a_cat.object_name(a), b_cat.mor_name(w))
    };

    let mut builder = CategoryBuilder::new();
    for p in &pairs {
        builder = builder.object(&object_name(p));
    }

    // Morphisms: source morphisms whose witness triangle commutes.
    // (src comma object, tgt comma object, underlying) in deterministic order.
    let mut comma_mors: Vec<(usize, usize, MorIx)> = Vec::new();
    for (i, &(a, w)) in pairs.iter().enumerate() {
        for (j, &(a2, w2)) in pairs.iter().enumerate() {
            for f in a_cat.hom(a, a2) {
                let kf = k.apply_mor(f);
                let commutes = match side {
                    CommaSide::Left => b_cat.compose(w2, kf) == w,
                    CommaSide::Right => b_cat.compose(kf, w) == w2,
                };
                if commutes {
                    comma_mors.push((i, j, f));
                }
            }
        }
    }

    let mor_name = |&(i, j, f): &(usize, usize, MorIx)| {
        format!(
            "{}:{}->{}",
            a_cat.mor_name(f),
            object_name(&pairs[i]),
            object_name(&pairs[j])
        )
    };
    for cm in &comma_mors {
        let name = mor_name(cm);
        builder = builder.morphism(&name, &object_name(&pairs[cm.0]), &object_name(&pairs[cm.1]));
    }

    // Identities and composition are inherited from the source category.
    let mor_pos: BTreeMap<(usize, usize, MorIx), usize> = comma_mors
        .iter()
        .enumerate()
        .map(|(n, &cm)| (cm, n))
        .collect();
    for (i, &(a, _)) in pairs.iter().enumerate() {
        let id = (i, i, a_cat.identity_of(a));
        builder = builder.identity(&object_name(&pairs[i]), &mor_name(&id));
    }
    for (gi, &(gm_src, gm_tgt, g)) in comma_mors.iter().enumerate() {
        for (fi, &(fm_src, fm_tgt, f)) in comma_mors.iter().enumerate() {
            if fm_tgt != gm_src {
                continue;
            }
            let gf = a_cat.compose(g, f);
            let composite = (fm_src, gm_tgt, gf);
            let Some(_) = mor_pos.get(&composite) else {
                return Err(Error::Internal(
                    "comma composition left the triangle condition".to_string(),
                ));
            };
            builder = builder.composite(
                &mor_name(&comma_mors[gi]),
                &mor_name(&comma_mors[fi]),
                &mor_name(&composite),
            );
        }
    }

    let cat = Arc::new(builder.build().map_err(Error::InvalidCategory)?);

    let projection = Diagram::new(
        cat.clone(),
        FinTarget::new(a_cat.clone()),
        pairs.iter().map(|&(a, _)| a).collect(),
        comma_mors.iter().map(|&(_, _, f)| f).collect(),
    )?;

    let pair_index = pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, ObjIx(i)))
        .collect();
    let mor_index = comma_mors
        .iter()
        .enumerate()
        .map(|(n, &(i, j, f))| ((ObjIx(i), ObjIx(j), f), MorIx(n)))
        .collect();

    Ok(CommaCategory {
        side,
        k: k.clone(),
        base,
        cat,
        projection,
        witnesses: pairs.iter().map(|&(_, w)| w).collect(),
        pairs,
        pair_index,
        mor_index,
    })
}

/// The comma category `K↓b`.
pub fn comma_left(k: &Functor, b: ObjIx) -> Result<CommaCategory> {
    build_comma(k, b, CommaSide::Left)
}

/// The comma category `b↓K`.
pub fn comma_right(b: ObjIx, k: &Functor) -> Result<CommaCategory> {
    build_comma(k, b, CommaSide::Right)
}

/// The functor between comma categories induced by `g : b -> b'`.
///
/// On the left it is `K↓b -> K↓b'`, `(a, w) ↦ (a, g∘w)`; on the right it is
/// `b'↓K -> b↓K`, `(a, w) ↦ (a, w∘g)`. Both are the identity on underlying
/// source morphisms and commute with the projections.
pub fn induced_comma_functor(k: &Functor, g: MorIx, side: CommaSide) -> Result<Functor> {
    let b_cat = k.target().category().clone();
    if g.0 >= b_cat.morphism_count() {
        return Err(Error::UnknownMorphism(format!("morphism index {}", g.0)));
    }
    let (src, tgt) = match side {
        CommaSide::Left => (
            build_comma(k, b_cat.dom(g), side)?,
            build_comma(k, b_cat.cod(g), side)?,
        ),
        CommaSide::Right => (
            build_comma(k, b_cat.cod(g), side)?,
            build_comma(k, b_cat.dom(g), side)?,
        ),
    };
    induced_between(&src, &tgt, g)
}

/// The induced functor between two already-built comma categories. `src` and
/// `tgt` must be the commas at the endpoints of `g` (dom/cod for the left
/// side, cod/dom for the right side).
pub fn induced_between(src: &CommaCategory, tgt: &CommaCategory, g: MorIx) -> Result<Functor> {
    if src.side != tgt.side || src.k != tgt.k {
        return Err(Error::Mismatch(
            "induced comma functor between unrelated commas".to_string(),
        ));
    }
    let b_cat = src.k.target().category();
    let expected = match src.side {
        CommaSide::Left => (b_cat.dom(g), b_cat.cod(g)),
        CommaSide::Right => (b_cat.cod(g), b_cat.dom(g)),
    };
    if (src.base, tgt.base) != expected {
        return Err(Error::Mismatch(
            "comma endpoints do not match the inducing morphism".to_string(),
        ));
    }

    let obj_map: Vec<ObjIx> = src
        .pairs
        .iter()
        .map(|&(a, w)| {
            let w2 = match src.side {
                CommaSide::Left => b_cat.compose(g, w),
                CommaSide::Right => b_cat.compose(w, g),
            };
            tgt.object_of_pair(a, w2).ok_or(Error::Internal(
                "induced comma image missing in the target comma".to_string(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mor_map: Vec<MorIx> = src
        .cat
        .morphisms()
        .map(|m| {
            let underlying = src.projection.apply_mor(m);
            let (i, j) = (src.cat.dom(m), src.cat.cod(m));
            tgt.morphism_between(obj_map[i.0], obj_map[j.0], underlying)
                .ok_or(Error::Internal(
                    "induced comma morphism missing in the target comma".to_string(),
                ))
        })
        .collect::<Result<Vec<_>>>()?;

    Diagram::new(
        src.cat.clone(),
        FinTarget::new(tgt.cat.clone()),
        obj_map,
        mor_map,
    )
}

/// A category of elements with its projection.
#[derive(Debug, Clone)]
pub struct ElementsCategory {
    pub cat: Arc<FinCategory>,
    /// Projection forgetting the element.
    pub projection: Functor,
    /// Per object, the underlying `(shape object, element index)` pair.
    pub pairs: Vec<(ObjIx, usize)>,
    pair_index: BTreeMap<(ObjIx, usize), ObjIx>,
}

impl ElementsCategory {
    pub fn object_of_pair(&self, o: ObjIx, x: usize) -> Option<ObjIx> {
        self.pair_index.get(&(o, x)).copied()
    }
}

fn build_elements(f: &SetFunctor, contravariant: bool) -> ElementsCategory {
    let shape = f.shape().clone();
    let mut pairs: Vec<(ObjIx, usize)> = Vec::new();
    for o in shape.objects() {
        for x in 0..f.set_at(o).size() {
            pairs.push((o, x));
        }
    }
    let object_name = |&(o, x): &(ObjIx, usize)| {
        format!("({},{})", shape.object_name(o), f.set_at(o).label(x))
    };

    let mut builder = CategoryBuilder::new();
    for p in &pairs {
        builder = builder.object(&object_name(p));
    }

    // Covariant: a morphism (o,x) -> (o2,x2) is m : o -> o2 with F(m)(x) = x2.
    // Contravariant (presheaf on shape^op): m : o2 -> o in the shape with
    // F(m)(x2) = x, i.e. the arrow points the way the base category does.
    let mut el_mors: Vec<(usize, usize, MorIx)> = Vec::new();
    for (i, &(o, x)) in pairs.iter().enumerate() {
        for (j, &(o2, x2)) in pairs.iter().enumerate() {
            if contravariant {
                for m in shape.hom(o2, o) {
                    if f.fn_at(m).apply(x2) == x {
                        el_mors.push((i, j, m));
                    }
                }
            } else {
                for m in shape.hom(o, o2) {
                    if f.fn_at(m).apply(x) == x2 {
                        el_mors.push((i, j, m));
                    }
                }
            }
        }
    }

    let mor_name = |&(i, j, m): &(usize, usize, MorIx)| {
        format!(
            "{}:{}->{}",
            shape.mor_name(m),
            object_name(&pairs[i]),
            object_name(&pairs[j])
        )
    };
    for em in &el_mors {
        builder = builder.morphism(&mor_name(em), &object_name(&pairs[em.0]), &object_name(&pairs[em.1]));
    }
    for (i, &(o, _)) in pairs.iter().enumerate() {
        builder = builder.identity(&object_name(&pairs[i]), &mor_name(&(i, i, shape.identity_of(o))));
    }
    for &(gi, gj, g) in &el_mors {
        for &(fi, fj, f_) in &el_mors {
            if fj != gi {
                continue;
            }
            let gf = if contravariant {
                shape.compose(f_, g)
            } else {
                shape.compose(g, f_)
            };
            builder = builder.composite(
                &mor_name(&(gi, gj, g)),
                &mor_name(&(fi, fj, f_)),
                &mor_name(&(fi, gj, gf)),
            );
        }
    }

    let cat = Arc::new(builder.build().expect("category of elements is valid"));
    let proj_target = if contravariant {
        Arc::new(shape.opposite())
    } else {
        shape.clone()
    };
    let projection = Diagram::new(
        cat.clone(),
        FinTarget::new(proj_target),
        pairs.iter().map(|&(o, _)| o).collect(),
        el_mors.iter().map(|&(_, _, m)| m).collect(),
    )
    .expect("elements projection is a functor");

    let pair_index = pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, ObjIx(i)))
        .collect();
    ElementsCategory {
        cat,
        projection,
        pairs,
        pair_index,
    }
}

/// Category of elements of a covariant set-functor: objects `(a, x ∈ F a)`,
/// morphisms `m : a -> a'` with `F(m)(x) = x'`. The projection lands in the
/// shape of `F`.
pub fn elements_covariant(f: &SetFunctor) -> ElementsCategory {
    build_elements(f, false)
}

/// Category of elements of a presheaf (a set-functor on an opposite
/// category): objects `(c, x ∈ F c)`, a morphism `(c,x) -> (c',x')` is
/// `m : c -> c'` of the base with `F(m)(x') = x`. The projection lands in
/// the base category (the opposite of `F`'s shape).
pub fn elements_presheaf(f: &SetFunctor) -> ElementsCategory {
    build_elements(f, true)
}
