//! Realization and nerve along a functor into a finite cocomplete-enough
//! category: the realization of a presheaf is the colimit of the functor
//! over the presheaf's category of elements, the nerve at `e` is the
//! presheaf `c ↦ E(F(c), e)`, and the two are related by a bijection of
//! hom-sets verified explicitly.

use crate::ambient::{Ambient, SetCat};
use crate::cat::ObjIx;
use crate::comma::elements_presheaf;
use crate::diagram::{Diagram, Functor, SetFunctor};
use crate::error::{Error, Result};
use crate::guard::SearchGuard;
use crate::hom_search::nat_hom;
use crate::set::{FinSet, SetFn};
use crate::transform::Transformation;

#[derive(Debug, Clone)]
pub struct NerveReport {
    /// The realization `|X|` as an object of `E`.
    pub realization: ObjIx,
    /// The nerve presheaf `R_e : c ↦ E(F(c), e)`.
    pub nerve: SetFunctor,
    /// `|E(|X|, e)|`.
    pub hom_size: usize,
    /// `|nat(X, R_e)|`.
    pub nat_size: usize,
    /// Images of the canonical map `u ↦ (x ↦ u∘leg)`, all valid and distinct.
    pub holds: bool,
}

/// Computes the realization of the presheaf `x` along `f : C -> E`, the
/// nerve value at `e`, and checks `E(|x|, e) ≅ nat(x, R_e)` via the
/// canonical map.
pub fn nerve_realization(
    f: &Functor,
    x: &SetFunctor,
    e: ObjIx,
    guard: &SearchGuard,
) -> Result<NerveReport> {
    let c_cat = f.shape().clone();
    let e_cat = f.target().category().clone();
    if **x.shape() != c_cat.opposite() {
        return Err(Error::Mismatch(
            "the presheaf must live on the opposite of the functor's source".to_string(),
        ));
    }
    if e.0 >= e_cat.object_count() {
        return Err(Error::UnknownObject(format!("object index {}", e.0)));
    }

    // Realization: colim over ∫X of F∘Π inside E.
    let elements = elements_presheaf(x);
    let diagram = f.precompose(&elements.projection)?;
    let cocone = f.target().colimit(&diagram, guard)?;
    let realization = cocone.apex;

    // Nerve presheaf R_e on C^op: R_e(c) = E(F c, e), acting by
    // precomposition with F(m).
    let op = x.shape().clone();
    let nerve_sets: Vec<FinSet> = c_cat
        .objects()
        .map(|c| {
            FinSet::new(
                e_cat
                    .hom(f.apply_obj(c), e)
                    .into_iter()
                    .map(|m| e_cat.mor_name(m).to_string())
                    .collect(),
            )
            .expect("morphism names are distinct")
        })
        .collect();
    let nerve_fns: Vec<SetFn> = op
        .morphisms()
        .map(|m_op| {
            // m_op : c -> c' in C^op is m : c' -> c in C (same index).
            let (c, c2) = (op.dom(m_op), op.cod(m_op));
            let fm = f.apply_mor(m_op);
            let hom_c = e_cat.hom(f.apply_obj(c), e);
            let hom_c2 = e_cat.hom(f.apply_obj(c2), e);
            SetFn::tabulate(nerve_sets[c.0].clone(), nerve_sets[c2.0].clone(), |i| {
                let precomposed = e_cat.compose(hom_c[i], fm);
                hom_c2
                    .iter()
                    .position(|&h| h == precomposed)
                    .expect("closed")
            })
        })
        .collect();
    let nerve = Diagram::new(op, SetCat, nerve_sets, nerve_fns)?;

    // Canonical map E(|X|, e) -> nat(X, R_e):
    // u ↦ (component at c: x ↦ u ∘ leg_{(c,x)}).
    let hom_real_e = e_cat.hom(realization, e);
    let enumerated = nat_hom(x, &nerve, guard)?;
    let mut images = Vec::with_capacity(hom_real_e.len());
    for &u in &hom_real_e {
        let components: Vec<SetFn> = c_cat
            .objects()
            .map(|c| {
                let hom_c = e_cat.hom(f.apply_obj(c), e);
                SetFn::tabulate(x.set_at(c).clone(), nerve.set_at(c).clone(), |xi| {
                    let o = elements
                        .object_of_pair(c, xi)
                        .expect("element present in the category of elements");
                    let composed = e_cat.compose(u, cocone.legs[o.0]);
                    hom_c.iter().position(|&h| h == composed).expect("closed")
                })
            })
            .collect();
        images.push(Transformation::new(x.clone(), nerve.clone(), components)?);
    }
    let mut injective = true;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            if images[i] == images[j] {
                injective = false;
            }
        }
    }
    let all_present = images.iter().all(|t| enumerated.contains(t));
    let holds = injective && all_present && hom_real_e.len() == enumerated.len();

    Ok(NerveReport {
        realization,
        nerve,
        hom_size: hom_real_e.len(),
        nat_size: enumerated.len(),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::FinCategory;
    use crate::diagram::representable_contra;
    use std::sync::Arc;

    fn guard() -> SearchGuard {
        SearchGuard::default()
    }

    /// C = chain of 3, E = diamond lattice, F monotone.
    fn setup() -> (Functor, Arc<FinCategory>, Arc<FinCategory>) {
        let c = Arc::new(FinCategory::chain(3));
        let e = Arc::new(FinCategory::diamond_lattice());
        // 0 ↦ bot, 1 ↦ a, 2 ↦ top
        let f = Functor::between_posets(&c, &e, vec![ObjIx(0), ObjIx(1), ObjIx(3)]).unwrap();
        (f, c, e)
    }

    #[test]
    fn representable_presheaf_realizes_to_its_image() {
        // |hom(-, c)| ≅ F(c), and the bijection with nat(H_c, R_e) is the
        // representable case of the adjunction.
        let (f, c, e) = setup();
        for cobj in c.objects() {
            let h = representable_contra(&c, cobj);
            for eobj in e.objects() {
                let report = nerve_realization(&f, &h, eobj, &guard()).unwrap();
                assert_eq!(report.realization, f.apply_obj(cobj));
                assert!(report.holds);
            }
        }
    }

    #[test]
    fn empty_presheaf_realizes_to_initial() {
        let (f, c, e) = setup();
        let op = Arc::new(c.opposite());
        let x = Diagram::constant(op, SetCat, FinSet::empty());
        for eobj in e.objects() {
            let report = nerve_realization(&f, &x, eobj, &guard()).unwrap();
            // Initial object of the diamond is bot; exactly one map to any e.
            assert_eq!(report.realization, ObjIx(0));
            assert_eq!(report.hom_size, 1);
            assert!(report.holds);
        }
    }
}
