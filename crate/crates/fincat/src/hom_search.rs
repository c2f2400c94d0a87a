//! Enumeration of natural transformations and natural isomorphisms by
//! backtracking with naturality pruning.
//!
//! Components are fixed in shape-object order; as soon as both endpoints of
//! a shape morphism are assigned, its naturality square is checked and the
//! branch is pruned on failure. The complete, duplicate-free list comes out
//! in lexicographic candidate order, so results are deterministic.

use crate::ambient::Ambient;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::guard::SearchGuard;
use crate::transform::Transformation;

fn check_parallel<T: Ambient>(f: &Diagram<T>, g: &Diagram<T>) -> Result<()> {
    if **f.shape() != **g.shape() || !f.target().same(g.target()) {
        return Err(Error::Mismatch(
            "natural-transformation search requires parallel diagrams".to_string(),
        ));
    }
    Ok(())
}

struct Search<'a, T: Ambient> {
    f: &'a Diagram<T>,
    g: &'a Diagram<T>,
    candidates: Vec<Vec<T::Mor>>,
    /// Shape morphisms whose naturality square becomes checkable at each
    /// object level (both endpoints assigned).
    checks_at: Vec<Vec<crate::cat::MorIx>>,
    stop_after_first: bool,
    found: Vec<Vec<T::Mor>>,
}

impl<'a, T: Ambient> Search<'a, T> {
    fn run(mut self) -> Vec<Vec<T::Mor>> {
        let mut chosen: Vec<T::Mor> = Vec::with_capacity(self.candidates.len());
        self.descend(&mut chosen);
        self.found
    }

    fn descend(&mut self, chosen: &mut Vec<T::Mor>) {
        let level = chosen.len();
        if level == self.candidates.len() {
            self.found.push(chosen.clone());
            return;
        }
        let ambient = self.f.target();
        for cand in self.candidates[level].clone() {
            chosen.push(cand);
            let ok = self.checks_at[level].iter().all(|&m| {
                let shape = self.f.shape();
                let (a, b) = (shape.dom(m), shape.cod(m));
                let left = ambient.compose(self.g.mor(m), &chosen[a.0]);
                let right = ambient.compose(&chosen[b.0], self.f.mor(m));
                left == right
            });
            if ok {
                self.descend(chosen);
                if self.stop_after_first && !self.found.is_empty() {
                    chosen.pop();
                    return;
                }
            }
            chosen.pop();
        }
    }
}

fn checks_by_level(shape: &crate::cat::FinCategory) -> Vec<Vec<crate::cat::MorIx>> {
    let mut checks_at = vec![Vec::new(); shape.object_count()];
    for m in shape.morphisms() {
        let level = shape.dom(m).0.max(shape.cod(m).0);
        checks_at[level].push(m);
    }
    checks_at
}

/// All natural transformations `F ⇒ G`, in deterministic order.
///
/// The guard is checked against `∏_a |hom(F a, G a)|` before any search.
pub fn nat_hom<T: Ambient>(
    f: &Diagram<T>,
    g: &Diagram<T>,
    guard: &SearchGuard,
) -> Result<Vec<Transformation<T>>> {
    check_parallel(f, g)?;
    let shape = f.shape();
    let ambient = f.target();
    let estimate: f64 = shape
        .objects()
        .map(|a| ambient.hom_size(f.obj(a), g.obj(a)))
        .product();
    guard.admit(
        estimate,
        &format!(
            "natural-transformation enumeration over {} objects",
            shape.object_count()
        ),
    )?;
    let candidates: Vec<Vec<T::Mor>> = shape
        .objects()
        .map(|a| ambient.hom(f.obj(a), g.obj(a)))
        .collect();
    let search = Search {
        f,
        g,
        candidates,
        checks_at: checks_by_level(shape),
        stop_after_first: false,
        found: Vec::new(),
    };
    search
        .run()
        .into_iter()
        .map(|components| Transformation::new(f.clone(), g.clone(), components))
        .collect()
}

/// The number of natural transformations `F ⇒ G`.
pub fn nat_hom_count<T: Ambient>(
    f: &Diagram<T>,
    g: &Diagram<T>,
    guard: &SearchGuard,
) -> Result<usize> {
    Ok(nat_hom(f, g, guard)?.len())
}

/// The first natural isomorphism `F ⇒ G` under deterministic ordering, or
/// `None`. Prunes immediately when some object has no isomorphism between
/// its values (in particular, on any cardinality mismatch of finite sets).
pub fn find_natural_iso<T: Ambient>(
    f: &Diagram<T>,
    g: &Diagram<T>,
    guard: &SearchGuard,
) -> Result<Option<Transformation<T>>> {
    check_parallel(f, g)?;
    let shape = f.shape();
    let ambient = f.target();
    let mut estimate = 1.0f64;
    for a in shape.objects() {
        let n = ambient.iso_size(f.obj(a), g.obj(a));
        if n == 0.0 {
            return Ok(None);
        }
        estimate *= n;
    }
    guard.admit(
        estimate,
        &format!(
            "natural-isomorphism search over {} objects",
            shape.object_count()
        ),
    )?;
    let candidates: Vec<Vec<T::Mor>> = shape
        .objects()
        .map(|a| ambient.isos(f.obj(a), g.obj(a)))
        .collect();
    let search = Search {
        f,
        g,
        candidates,
        checks_at: checks_by_level(shape),
        stop_after_first: true,
        found: Vec::new(),
    };
    match search.run().into_iter().next() {
        Some(components) => Ok(Some(Transformation::new(f.clone(), g.clone(), components)?)),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::SetCat;
    use crate::cat::{FinCategory, ObjIx};
    use crate::diagram::representable;
    use crate::set::{FinSet, SetFn};
    use std::collections::BTreeMap;
    use std::sync::Arc;

    fn chain3() -> Arc<FinCategory> {
        Arc::new(FinCategory::chain(3))
    }

    fn monotone_inclusions(c: &Arc<FinCategory>) -> crate::diagram::SetFunctor {
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
        Diagram::from_generators(c.clone(), SetCat, vec![s0, s1, s2], &gens).unwrap()
    }

    #[test]
    fn yoneda_cardinality_on_chain() {
        let c = chain3();
        let x = monotone_inclusions(&c);
        let guard = SearchGuard::default();
        for a in c.objects() {
            let h = representable(&c, a);
            let count = nat_hom(&h, &x, &guard).unwrap().len();
            assert_eq!(count, x.set_at(a).size(), "at object {}", c.object_name(a));
        }
    }

    #[test]
    fn constant_singletons_have_one_transformation() {
        let c = chain3();
        let s = Diagram::constant(c.clone(), SetCat, FinSet::singleton("*"));
        assert_eq!(nat_hom(&s, &s, &SearchGuard::default()).unwrap().len(), 1);
    }

    #[test]
    fn arrow_category_pruned_count() {
        // F = H^source on the arrow category (both values singletons),
        // G with values {u,v} and {w}: both component choices at the source
        // survive the single naturality square into the singleton.
        let arrow = Arc::new(FinCategory::chain(2));
        let f = representable(&arrow, ObjIx(0));
        let uv = FinSet::from_labels(&["u", "v"]);
        let w = FinSet::singleton("w");
        let mut gens = BTreeMap::new();
        gens.insert(
            arrow.mor_named("le_0_1").unwrap(),
            SetFn::new(uv.clone(), w.clone(), vec![0, 0]).unwrap(),
        );
        let g = Diagram::from_generators(arrow.clone(), SetCat, vec![uv, w], &gens).unwrap();
        assert_eq!(nat_hom(&f, &g, &SearchGuard::default()).unwrap().len(), 2);
    }

    #[test]
    fn guard_rejects_oversized_search() {
        let c = chain3();
        let big = Diagram::constant(c.clone(), SetCat, FinSet::canonical(12, "e"));
        let err = nat_hom(&big, &big, &SearchGuard::new(1000)).unwrap_err();
        match err {
            Error::GuardExceeded { estimate, cap, .. } => {
                assert_eq!(cap, 1000);
                assert!(estimate > 1000.0);
            }
            other => panic!("expected guard error, got {other}"),
        }
    }

    #[test]
    fn iso_search_finds_identity_first() {
        let c = chain3();
        let x = monotone_inclusions(&c);
        let iso = find_natural_iso(&x, &x, &SearchGuard::default())
            .unwrap()
            .unwrap();
        assert_eq!(iso, crate::transform::Transformation::identity(&x));
    }

    #[test]
    fn iso_search_prunes_on_cardinality_mismatch() {
        let c = chain3();
        let x = monotone_inclusions(&c);
        let s = Diagram::constant(c.clone(), SetCat, FinSet::singleton("*"));
        // Guard cap of 0 would reject any search; pruning means we never get
        // to the guard.
        assert!(find_natural_iso(&x, &s, &SearchGuard::new(0))
            .unwrap()
            .is_none());
    }

    #[test]
    fn iso_symmetry() {
        // Two presentations of the same product with different label orders.
        let shape = Arc::new(FinCategory::discrete(&["a"]));
        let f = Diagram::new(
            shape.clone(),
            SetCat,
            vec![FinSet::from_labels(&["x", "y"])],
            vec![SetFn::identity(&FinSet::from_labels(&["x", "y"]))],
        )
        .unwrap();
        let g = Diagram::new(
            shape.clone(),
            SetCat,
            vec![FinSet::from_labels(&["y", "x"])],
            vec![SetFn::identity(&FinSet::from_labels(&["y", "x"]))],
        )
        .unwrap();
        let guard = SearchGuard::default();
        let fwd = find_natural_iso(&f, &g, &guard).unwrap();
        let bwd = find_natural_iso(&g, &f, &guard).unwrap();
        assert!(fwd.is_some() && bwd.is_some());
        let inv = fwd.unwrap().invert().unwrap();
        Transformation::new(g.clone(), f.clone(), inv.components().to_vec()).unwrap();
    }
}
