//! Yoneda and coYoneda checks: `X(a) ≅ lim(a↓A -> A -> Set) ≅ nat(H^a, X)`
//! and `X(a) ≅ colim(A↓a -> A -> Set)`, verified with explicit bijections.
//!
//! The comma categories and the representable depend only on the base
//! category and the chosen object; [`YonedaProbe`] precomputes them once so
//! that sweeps over many set-functors stay cheap.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{FinCategory, MorIx, ObjIx};
use crate::comma::{comma_left, comma_right, CommaCategory};
use crate::diagram::{representable, Functor, SetFunctor};
use crate::error::{Error, Result};
use crate::guard::SearchGuard;
use crate::hom_search::nat_hom;
use crate::limits::{set_colimit, set_factor_cocone, set_limit};
use crate::set::SetFn;
use crate::transform::Transformation;

#[derive(Debug, Clone)]
pub struct YonedaReport {
    pub value_size: usize,
    pub limit_size: usize,
    pub nat_hom_size: usize,
    /// `x ↦ (w ↦ X(w)(x))` into the limit over `a↓A`, a bijection.
    pub into_limit: SetFn,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct CoyonedaReport {
    pub value_size: usize,
    pub colimit_size: usize,
    /// The factoring `colim(A↓a → Set) -> X(a)`, a bijection.
    pub from_colimit: SetFn,
    pub holds: bool,
}

/// Precomputed data for checking the (co)Yoneda statements at one object.
pub struct YonedaProbe {
    cat: Arc<FinCategory>,
    a: ObjIx,
    under: CommaCategory,
    over: CommaCategory,
    h: SetFunctor,
    /// Hom-sets `hom(a, c)` per object, aligned with `h`'s element order.
    hom_from_a: Vec<Vec<MorIx>>,
}

impl YonedaProbe {
    pub fn new(cat: &Arc<FinCategory>, a: ObjIx) -> Result<Self> {
        if a.0 >= cat.object_count() {
            return Err(Error::UnknownObject(format!("object index {}", a.0)));
        }
        let idf = Functor::identity(cat);
        Ok(YonedaProbe {
            cat: cat.clone(),
            a,
            under: comma_right(a, &idf)?,
            over: comma_left(&idf, a)?,
            h: representable(cat, a),
            hom_from_a: cat.objects().map(|c| cat.hom(a, c)).collect(),
        })
    }

    /// `X(a) ≅ lim(a↓A → Set) ≅ nat(hom(a,-), X)`, three ways with explicit
    /// comparison maps.
    pub fn check(&self, x: &SetFunctor, guard: &SearchGuard) -> Result<YonedaReport> {
        if **x.shape() != *self.cat {
            return Err(Error::Mismatch(
                "the set-functor must live on the probe's category".to_string(),
            ));
        }
        let a = self.a;
        let diagram = x.precompose(&self.under.projection)?;
        let lim = set_limit(&diagram);

        // x ∈ X(a) maps to the family ((a', w) ↦ X(w)(x)).
        let family_index: BTreeMap<&Vec<usize>, usize> = lim
            .witness
            .families
            .iter()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let mut table = Vec::with_capacity(x.set_at(a).size());
        for xi in 0..x.set_at(a).size() {
            let family: Vec<usize> = self
                .under
                .pairs
                .iter()
                .map(|&(_, w)| x.fn_at(w).apply(xi))
                .collect();
            let row = family_index.get(&family).copied().ok_or(Error::Internal(
                "Yoneda family is not compatible".to_string(),
            ))?;
            table.push(row);
        }
        let into_limit = SetFn::new(x.set_at(a).clone(), lim.apex.clone(), table)?;

        // Enumerate nat(H^a, X) independently; the canonical transformations
        // x ↦ (w ↦ X(w)(x)) must all appear, pairwise distinct.
        let transformations = nat_hom(&self.h, x, guard)?;
        let mut canonical: Vec<Transformation<crate::ambient::SetCat>> = Vec::new();
        for xi in 0..x.set_at(a).size() {
            let components: Vec<SetFn> = self
                .cat
                .objects()
                .map(|c| {
                    let hom = &self.hom_from_a[c.0];
                    SetFn::tabulate(self.h.set_at(c).clone(), x.set_at(c).clone(), |i| {
                        x.fn_at(hom[i]).apply(xi)
                    })
                })
                .collect();
            canonical.push(Transformation::new(self.h.clone(), x.clone(), components)?);
        }
        let mut injective = true;
        for i in 0..canonical.len() {
            for j in (i + 1)..canonical.len() {
                if canonical[i] == canonical[j] {
                    injective = false;
                }
            }
        }
        let all_present = canonical.iter().all(|t| transformations.contains(t));

        let holds = into_limit.is_bijection()
            && injective
            && all_present
            && transformations.len() == x.set_at(a).size()
            && lim.apex.size() == x.set_at(a).size();
        Ok(YonedaReport {
            value_size: x.set_at(a).size(),
            limit_size: lim.apex.size(),
            nat_hom_size: transformations.len(),
            into_limit,
            holds,
        })
    }

    /// `colim(A↓a → Set) ≅ X(a)` with the canonical factoring map.
    pub fn check_co(&self, x: &SetFunctor) -> Result<CoyonedaReport> {
        if **x.shape() != *self.cat {
            return Err(Error::Mismatch(
                "the set-functor must live on the probe's category".to_string(),
            ));
        }
        let a = self.a;
        let diagram = x.precompose(&self.over.projection)?;
        let colim = set_colimit(&diagram);

        // Cocone with apex X(a): leg at (a', w) is X(w).
        let legs: Vec<SetFn> = self
            .over
            .pairs
            .iter()
            .map(|&(_, w)| x.fn_at(w).clone())
            .collect();
        let other = crate::ambient::Cocone {
            apex: x.set_at(a).clone(),
            legs,
            witness: Default::default(),
        };
        let from_colimit = set_factor_cocone(&diagram, &colim, &other)?;
        let holds = from_colimit.is_bijection();
        Ok(CoyonedaReport {
            value_size: x.set_at(a).size(),
            colimit_size: colim.apex.size(),
            from_colimit,
            holds,
        })
    }
}

/// One-shot form of [`YonedaProbe::check`].
pub fn yoneda_check(x: &SetFunctor, a: ObjIx, guard: &SearchGuard) -> Result<YonedaReport> {
    YonedaProbe::new(x.shape(), a)?.check(x, guard)
}

/// One-shot form of [`YonedaProbe::check_co`].
pub fn coyoneda_check(x: &SetFunctor, a: ObjIx, _guard: &SearchGuard) -> Result<CoyonedaReport> {
    YonedaProbe::new(x.shape(), a)?.check_co(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::SetCat;
    use crate::diagram::Diagram;
    use crate::set::FinSet;

    fn chain3_with_inclusions() -> SetFunctor {
        let c = Arc::new(FinCategory::chain(3));
        let s0 = FinSet::from_labels(&["p"]);
        let s1 = FinSet::from_labels(&["p", "q"]);
        let s2 = FinSet::from_labels(&["p", "q", "r"]);
        let mut gens = BTreeMap::new();
        gens.insert(
            c.mor_named("le_0_1").unwrap(),
            SetFn::new(s0.clone(), s1.clone(), vec![0]).unwrap(),
        );
        gens.insert(
            c.mor_named("le_1_2").unwrap(),
            SetFn::new(s1.clone(), s2.clone(), vec![0, 1]).unwrap(),
        );
        Diagram::from_generators(c, SetCat, vec![s0, s1, s2], &gens).unwrap()
    }

    #[test]
    fn yoneda_on_chain_instance() {
        let x = chain3_with_inclusions();
        let report = yoneda_check(&x, ObjIx(1), &SearchGuard::default()).unwrap();
        assert!(report.holds);
        assert_eq!(report.value_size, 2);
        assert_eq!(report.nat_hom_size, 2);
        assert_eq!(report.limit_size, 2);
    }

    #[test]
    fn yoneda_on_representable_itself() {
        let c = Arc::new(FinCategory::chain(3));
        for a in c.objects() {
            let h = representable(&c, a);
            let report = yoneda_check(&h, a, &SearchGuard::default()).unwrap();
            assert!(report.holds);
            // Poset hom-sets are subsingletons.
            assert_eq!(report.value_size, 1);
        }
    }

    #[test]
    fn coyoneda_on_chain_instance() {
        let x = chain3_with_inclusions();
        let report = coyoneda_check(&x, ObjIx(1), &SearchGuard::default()).unwrap();
        assert!(report.holds);
        assert_eq!(report.colimit_size, 2);
        assert_eq!(report.value_size, 2);
    }

    #[test]
    fn probe_reuse_matches_one_shot() {
        let x = chain3_with_inclusions();
        let probe = YonedaProbe::new(x.shape(), ObjIx(2)).unwrap();
        let a = probe.check(&x, &SearchGuard::default()).unwrap();
        let b = yoneda_check(&x, ObjIx(2), &SearchGuard::default()).unwrap();
        assert_eq!(a.holds, b.holds);
        assert_eq!(a.into_limit, b.into_limit);
    }
}
