//! Density of representables: every presheaf is the colimit of
//! representables indexed by its category of elements. The reconstruction
//! is computed pointwise, without reifying the presheaf category.

use std::sync::Arc;

use crate::ambient::{Cocone, SetCat};
use crate::cat::{FinCategory, ObjIx};
use crate::comma::{elements_presheaf, ElementsCategory};
use crate::diagram::{Diagram, SetFunctor};
use crate::error::Result;
use crate::guard::SearchGuard;
use crate::hom_search::find_natural_iso;
use crate::limits::{set_colimit, set_factor_cocone};
use crate::set::{FinSet, SetFn};
use crate::transform::Transformation;

#[derive(Debug, Clone)]
pub struct DensityReport {
    pub elements: ElementsCategory,
    /// The reconstructed presheaf `c' ↦ colim_{(c,x)} hom(c', c)`.
    pub reconstruction: SetFunctor,
    /// Per object of the base: (name, reconstructed size, original size).
    pub per_object: Vec<(String, usize, usize)>,
    pub iso: Option<Transformation<SetCat>>,
    pub holds: bool,
}

/// For a presheaf `F` (a set-functor on an opposite category), computes the
/// pointwise colimit of contravariant representables over the category of
/// elements of `F` and searches for a natural isomorphism with `F`.
pub fn density_check(f: &SetFunctor, guard: &SearchGuard) -> Result<DensityReport> {
    let op_shape = f.shape().clone(); // C^op
    let base: Arc<FinCategory> = Arc::new(op_shape.opposite()); // C
    let elements = elements_presheaf(f);

    // For each object c' of C, the diagram (c, x) ↦ hom_C(c', c) on the
    // category of elements, with morphism action by postcomposition.
    let diagram_at = |cp: ObjIx| -> Result<SetFunctor> {
        let sets: Vec<FinSet> = elements
            .pairs
            .iter()
            .map(|&(c, _)| {
                FinSet::new(
                    base.hom(cp, c)
                        .into_iter()
                        .map(|m| base.mor_name(m).to_string())
                        .collect(),
                )
                .expect("morphism names are distinct")
            })
            .collect();
        let fns: Vec<SetFn> = elements
            .cat
            .morphisms()
            .map(|m| {
                let (i, j) = (elements.cat.dom(m), elements.cat.cod(m));
                // Underlying morphism in C: f : c_i -> c_j.
                let under = elements.projection.apply_mor(m);
                let hom_i = base.hom(cp, elements.pairs[i.0].0);
                let hom_j = base.hom(cp, elements.pairs[j.0].0);
                SetFn::tabulate(sets[i.0].clone(), sets[j.0].clone(), |n| {
                    let composed = base.compose(under, hom_i[n]);
                    hom_j.iter().position(|&h| h == composed).expect("closed")
                })
            })
            .collect();
        Diagram::new(elements.cat.clone(), SetCat, sets, fns)
    };

    let mut colimits = Vec::with_capacity(base.object_count());
    let mut diagrams = Vec::with_capacity(base.object_count());
    for cp in base.objects() {
        let d = diagram_at(cp)?;
        colimits.push(set_colimit(&d));
        diagrams.push(d);
    }

    // Assemble the reconstruction as a presheaf on C (shape C^op): the
    // action along m : c2' -> c1' of C precomposes representative
    // morphisms and is obtained by factoring through the colimit.
    let rec_objects: Vec<FinSet> = colimits.iter().map(|c| c.apex.clone()).collect();
    let mut rec_morphisms: Vec<SetFn> = Vec::with_capacity(op_shape.morphism_count());
    for m_op in op_shape.morphisms() {
        // m_op : c1' -> c2' in C^op is m : c2' -> c1' in C (same index).
        let (c1p, c2p) = (op_shape.dom(m_op), op_shape.cod(m_op));
        let legs: Vec<SetFn> = elements
            .pairs
            .iter()
            .enumerate()
            .map(|(o, &(c, _))| {
                let hom_1 = base.hom(c1p, c);
                let hom_2 = base.hom(c2p, c);
                SetFn::tabulate(
                    diagrams[c1p.0].set_at(ObjIx(o)).clone(),
                    rec_objects[c2p.0].clone(),
                    |n| {
                        let precomposed = base.compose(hom_1[n], m_op);
                        let pos = hom_2
                            .iter()
                            .position(|&h| h == precomposed)
                            .expect("closed");
                        colimits[c2p.0].legs[o].apply(pos)
                    },
                )
            })
            .collect();
        let transported = Cocone {
            apex: rec_objects[c2p.0].clone(),
            legs,
            witness: Default::default(),
        };
        rec_morphisms.push(set_factor_cocone(
            &diagrams[c1p.0],
            &colimits[c1p.0],
            &transported,
        )?);
    }
    let reconstruction = Diagram::new(op_shape.clone(), SetCat, rec_objects, rec_morphisms)?;

    let per_object = base
        .objects()
        .map(|cp| {
            (
                base.object_name(cp).to_string(),
                reconstruction.set_at(cp).size(),
                f.set_at(cp).size(),
            )
        })
        .collect();

    let iso = find_natural_iso(&reconstruction, f, guard)?;
    Ok(DensityReport {
        elements,
        per_object,
        holds: iso.is_some(),
        iso,
        reconstruction,
    })
}
