//! Cross-cutting invariants checked against independent oracles: unpruned
//! brute-force enumeration for the transformation search, exhaustive
//! factoring for (co)limit universality, and structural involutions.

use std::sync::Arc;

use fincat::corpus::{all_set_functors, random_set_functor, standard_corpus, Rng};
use fincat::set::{all_functions, FinSet, SetFn};
use fincat::{
    colimit, find_natural_iso, limit, nat_hom, representable, Cocone, Cone, Diagram, FinCategory,
    ObjIx, QuotientWitness, SearchGuard, SetCat, SetFunctor,
};

use proptest::prelude::*;

fn guard() -> SearchGuard {
    SearchGuard::default()
}

/// Unpruned oracle: generate every component tuple, filter by the full
/// naturality check. Independent of the backtracking search path.
fn brute_force_nat_hom(f: &SetFunctor, g: &SetFunctor) -> Vec<Vec<SetFn>> {
    let shape = f.shape();
    let candidates: Vec<Vec<SetFn>> = shape
        .objects()
        .map(|a| all_functions(f.set_at(a), g.set_at(a)))
        .collect();
    let lens: Vec<usize> = candidates.iter().map(Vec::len).collect();
    let mut out = Vec::new();
    for combo in fincat::search::cartesian_indices(&lens) {
        let comps: Vec<SetFn> = combo
            .iter()
            .enumerate()
            .map(|(a, &i)| candidates[a][i].clone())
            .collect();
        let natural = shape.morphisms().all(|m| {
            let (a, b) = (shape.dom(m), shape.cod(m));
            SetFn::compose(g.fn_at(m), &comps[a.0]) == SetFn::compose(&comps[b.0], f.fn_at(m))
        });
        if natural {
            out.push(comps);
        }
    }
    out
}

#[test]
fn nat_hom_agrees_with_brute_force() {
    let mut rng = Rng::new(7001);
    let shapes = standard_corpus(3, 3);
    let mut checked = 0;
    for shape in &shapes {
        for _ in 0..4 {
            let f = random_set_functor(shape, 2, true, &mut rng);
            let g = random_set_functor(shape, 2, true, &mut rng);
            let fast = nat_hom(&f, &g, &guard()).unwrap();
            let slow = brute_force_nat_hom(&f, &g);
            assert_eq!(fast.len(), slow.len());
            for (t, comps) in fast.iter().zip(&slow) {
                assert_eq!(t.components(), comps.as_slice());
            }
            checked += 1;
        }
    }
    assert!(checked >= 30);
}

/// Exhaustively checks that exactly one function factors every cocone
/// through the colimit apex, over all cocones with canonical apexes of
/// size <= 3.
fn assert_colimit_universal(d: &SetFunctor, colim: &Cocone<SetCat>) {
    let shape = d.shape();
    for apex_size in 0..=3usize {
        let apex = FinSet::canonical(apex_size, "m");
        let candidates: Vec<Vec<SetFn>> = shape
            .objects()
            .map(|j| all_functions(d.set_at(j), &apex))
            .collect();
        let lens: Vec<usize> = candidates.iter().map(Vec::len).collect();
        for combo in fincat::search::cartesian_indices(&lens) {
            let legs: Vec<SetFn> = combo
                .iter()
                .enumerate()
                .map(|(j, &i)| candidates[j][i].clone())
                .collect();
            let is_cocone = shape.morphisms().all(|m| {
                let (j, j2) = (shape.dom(m), shape.cod(m));
                SetFn::compose(&legs[j2.0], d.fn_at(m)) == legs[j.0]
            });
            if !is_cocone {
                continue;
            }
            let factorings = all_functions(&colim.apex, &apex)
                .into_iter()
                .filter(|h| {
                    shape
                        .objects()
                        .all(|j| SetFn::compose(h, &colim.legs[j.0]) == legs[j.0])
                })
                .count();
            assert_eq!(factorings, 1, "universality fails for some cocone");
        }
    }
}

fn assert_limit_universal(d: &SetFunctor, lim: &Cone<SetCat>) {
    let shape = d.shape();
    for apex_size in 0..=3usize {
        let apex = FinSet::canonical(apex_size, "m");
        let candidates: Vec<Vec<SetFn>> = shape
            .objects()
            .map(|j| all_functions(&apex, d.set_at(j)))
            .collect();
        let lens: Vec<usize> = candidates.iter().map(Vec::len).collect();
        for combo in fincat::search::cartesian_indices(&lens) {
            let legs: Vec<SetFn> = combo
                .iter()
                .enumerate()
                .map(|(j, &i)| candidates[j][i].clone())
                .collect();
            let is_cone = shape.morphisms().all(|m| {
                let (j, j2) = (shape.dom(m), shape.cod(m));
                SetFn::compose(d.fn_at(m), &legs[j.0]) == legs[j2.0]
            });
            if !is_cone {
                continue;
            }
            let factorings = all_functions(&apex, &lim.apex)
                .into_iter()
                .filter(|h| {
                    shape
                        .objects()
                        .all(|j| SetFn::compose(&lim.legs[j.0], h) == legs[j.0])
                })
                .count();
            assert_eq!(factorings, 1, "universality fails for some cone");
        }
    }
}

#[test]
fn certificates_are_universal() {
    let mut rng = Rng::new(7002);
    for shape in [
        Arc::new(FinCategory::discrete(&["a", "b"])),
        Arc::new(FinCategory::chain(2)),
        Arc::new(FinCategory::parallel_pair()),
        Arc::new(FinCategory::span()),
        Arc::new(FinCategory::cospan()),
        Arc::new(FinCategory::discrete(&[])),
    ] {
        for _ in 0..3 {
            let d = random_set_functor(&shape, 2, true, &mut rng);
            assert_colimit_universal(&d, &colimit(&d));
            assert_limit_universal(&d, &limit(&d));
        }
    }
}

#[test]
fn yoneda_cardinality_sweep() {
    // |nat(hom(a,-), X)| = |X(a)| for every corpus category with <= 4
    // objects and every set-functor with values <= 2 on the small shapes.
    for shape in standard_corpus(3, 2) {
        for x in all_set_functors(&shape, 2) {
            for a in shape.objects() {
                let h = representable(&shape, a);
                let n = nat_hom(&h, &x, &guard()).unwrap().len();
                assert_eq!(
                    n,
                    x.set_at(a).size(),
                    "Yoneda count failed on {} at {}",
                    shape.object_count(),
                    shape.object_name(a)
                );
            }
        }
    }
}

#[test]
fn iso_verdict_is_symmetric() {
    let mut rng = Rng::new(7003);
    for shape in standard_corpus(3, 3) {
        for _ in 0..6 {
            let f = random_set_functor(&shape, 2, true, &mut rng);
            let g = random_set_functor(&shape, 2, true, &mut rng);
            let fwd = find_natural_iso(&f, &g, &guard()).unwrap();
            let bwd = find_natural_iso(&g, &f, &guard()).unwrap();
            assert_eq!(fwd.is_some(), bwd.is_some());
            if let Some(t) = fwd {
                // Components invert to a valid transformation the other way.
                let inv = t.invert().unwrap();
                fincat::Transformation::new(g.clone(), f.clone(), inv.components().to_vec())
                    .unwrap();
            }
        }
    }
}

#[test]
fn elements_category_object_count() {
    let mut rng = Rng::new(7004);
    for shape in standard_corpus(3, 3) {
        for _ in 0..4 {
            let f = random_set_functor(&shape, 3, true, &mut rng);
            let total: usize = shape.objects().map(|o| f.set_at(o).size()).sum();
            assert_eq!(
                fincat::elements_covariant(&f).cat.object_count(),
                total
            );
        }
    }
}

#[test]
fn associativity_is_exhaustive_on_corpus() {
    for cat in standard_corpus(4, 4) {
        for h in cat.morphisms() {
            for g in cat.morphisms() {
                if cat.cod(g) != cat.dom(h) {
                    continue;
                }
                for f in cat.morphisms() {
                    if cat.cod(f) != cat.dom(g) {
                        continue;
                    }
                    assert_eq!(
                        cat.compose(h, cat.compose(g, f)),
                        cat.compose(cat.compose(h, g), f)
                    );
                }
            }
        }
    }
}

#[test]
fn colimit_partition_covers_disjoint_union() {
    let mut rng = Rng::new(7005);
    for shape in standard_corpus(3, 3) {
        let d = random_set_functor(&shape, 3, true, &mut rng);
        let c = colimit(&d);
        let QuotientWitness { classes } = &c.witness;
        let total: usize = shape.objects().map(|o| d.set_at(o).size()).sum();
        let covered: usize = classes.iter().map(Vec::len).sum();
        assert_eq!(covered, total);
        // Legs agree with the partition.
        for (class_ix, members) in classes.iter().enumerate() {
            for &(o, x) in members {
                assert_eq!(c.legs[o.0].apply(x), class_ix);
            }
        }
    }
}

proptest! {
    #[test]
    fn discrete_diagram_cardinalities(sizes in proptest::collection::vec(0usize..5, 0..5)) {
        let names: Vec<String> = (0..sizes.len()).map(|i| format!("o{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let shape = Arc::new(FinCategory::discrete(&refs));
        let sets: Vec<FinSet> = sizes.iter().map(|&s| FinSet::canonical(s, "x")).collect();
        let fns: Vec<SetFn> = sets.iter().map(SetFn::identity).collect();
        let d = Diagram::new(shape, SetCat, sets, fns).unwrap();
        let product: usize = sizes.iter().product();
        let sum: usize = sizes.iter().sum();
        prop_assert_eq!(limit(&d).apex.size(), product);
        prop_assert_eq!(colimit(&d).apex.size(), sum);
    }

    #[test]
    fn opposite_is_involution_on_posets(seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        // A random poset from a random relation closed reflexively and
        // transitively.
        let n = 1 + rng.below(4);
        let mut leq = [[false; 4]; 4];
        for (i, row) in leq.iter_mut().enumerate().take(n) {
            row[i] = true;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.below(2) == 0 {
                    leq[i][j] = true;
                }
            }
        }
        // transitive closure (upper triangular, so one pass in order works)
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if leq[i][j] && leq[j][k] {
                        leq[i][k] = true;
                    }
                }
            }
        }
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let cat = FinCategory::poset(&refs, |i, j| leq[i][j]).unwrap();
        prop_assert_eq!(cat.opposite().opposite(), cat);
    }

    #[test]
    fn chain_counts_property(n in 0usize..8) {
        let c = FinCategory::chain(n);
        prop_assert_eq!(c.object_count(), n);
        prop_assert_eq!(c.morphism_count(), n * (n + 1) / 2);
    }
}

#[test]
fn whisker_right_distributes_over_vcompose_on_corpus() {
    let mut rng = Rng::new(7006);
    let b_cat = Arc::new(FinCategory::chain(3));
    let a_cat = Arc::new(FinCategory::chain(2));
    for _ in 0..10 {
        let f = random_set_functor(&b_cat, 2, false, &mut rng);
        let g = random_set_functor(&b_cat, 2, false, &mut rng);
        let h = random_set_functor(&b_cat, 2, false, &mut rng);
        let alphas = nat_hom(&f, &g, &guard()).unwrap();
        let betas = nat_hom(&g, &h, &guard()).unwrap();
        let k = fincat::corpus::random_poset_functor(&a_cat, &b_cat, &mut rng);
        for alpha in alphas.iter().take(3) {
            for beta in betas.iter().take(3) {
                let lhs =
                    fincat::whisker_right(&fincat::vcompose(beta, alpha).unwrap(), &k).unwrap();
                let rhs = fincat::vcompose(
                    &fincat::whisker_right(beta, &k).unwrap(),
                    &fincat::whisker_right(alpha, &k).unwrap(),
                )
                .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn representable_on_terminal_is_constant_singleton() {
    let one = Arc::new(FinCategory::terminal());
    let h = representable(&one, ObjIx(0));
    assert_eq!(h.set_at(ObjIx(0)).size(), 1);
}

#[test]
fn yoneda_count_agrees_with_hom_bijection_count() {
    // Instantiating the extension bijection with K = a : 1 -> A and the
    // one-point diagram, both sides count |H(a)| — exactly the Yoneda count.
    let cat = Arc::new(FinCategory::chain(3));
    let mut rng = Rng::new(7007);
    for a in cat.objects() {
        let k = fincat::Functor::point(&cat, a);
        let star = Diagram::constant(
            k.shape().clone(),
            SetCat,
            FinSet::singleton("*"),
        );
        let kan = fincat::lan(&k, &star, &guard()).unwrap();
        for _ in 0..5 {
            let h = random_set_functor(&cat, 2, true, &mut rng);
            let report = fincat::hom_bijection_check(&kan, &h, &guard()).unwrap();
            assert!(report.holds);
            let yoneda = fincat::constructions::yoneda_check(&h, a, &guard()).unwrap();
            assert_eq!(report.extension_side, yoneda.nat_hom_size);
            assert_eq!(report.restricted_side, h.set_at(a).size());
        }
    }
}
