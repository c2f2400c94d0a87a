//! (Co)limit computation.
//!
//! Finite-set colimits are quotients of the disjoint union by the
//! equivalence generated by the diagram's functions, computed with a
//! union-find structure; classes are canonically labelled by their least
//! representative under (object order, element order). Finite-set limits are
//! the compatible families, canonically labelled by the tuple of member
//! labels in object order.
//!
//! (Co)limits in a finite target category are found by exhaustive search
//! over candidate apexes and (co)cones, with the universal property checked
//! against every other (co)cone.

use std::collections::BTreeMap;

use crate::ambient::{Cocone, Cone, FamilyWitness, FinTarget, QuotientWitness, SetCat};
use crate::cat::ObjIx;
use crate::diagram::{Diagram, SetFunctor};
use crate::error::{Error, Result};
use crate::guard::SearchGuard;
use crate::search::{cartesian_indices, UnionFind};
use crate::set::{tuple_label, FinSet, SetFn};

/// Deterministically disambiguates generated labels in the (unlikely) case
/// two canonical labels collide as strings.
fn uniquify(labels: Vec<String>) -> Vec<String> {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut out = Vec::with_capacity(labels.len());
    for l in labels {
        let n = seen.entry(l.clone()).or_insert(0);
        if *n == 0 {
            out.push(l.clone());
        } else {
            out.push(format!("{l}#{n}"));
        }
        *n += 1;
    }
    out
}

/// Colimit of a finite-set diagram, with the quotient partition as witness.
pub fn set_colimit(d: &SetFunctor) -> Cocone<SetCat> {
    let shape = d.shape();
    let mut offsets = Vec::with_capacity(shape.object_count());
    let mut total = 0usize;
    for o in shape.objects() {
        offsets.push(total);
        total += d.set_at(o).size();
    }

    let mut uf = UnionFind::new(total);
    for m in shape.morphisms() {
        let f = d.fn_at(m);
        let (j, j2) = (shape.dom(m), shape.cod(m));
        for x in 0..f.dom().size() {
            uf.union(offsets[j.0] + x, offsets[j2.0] + f.apply(x));
        }
    }

    // Group members by root, scanning in global order so that each class's
    // members are sorted and classes are ordered by least representative.
    let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<(ObjIx, usize)>> = Vec::new();
    let mut class_of_elem = vec![0usize; total];
    for o in shape.objects() {
        for x in 0..d.set_at(o).size() {
            let global = offsets[o.0] + x;
            let root = uf.find(global);
            let class = *class_of_root.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[class].push((o, x));
            class_of_elem[global] = class;
        }
    }

    let labels = uniquify(
        classes
            .iter()
            .map(|members| {
                let (o, x) = members[0];
                format!("{}:{}", shape.object_name(o), d.set_at(o).label(x))
            })
            .collect(),
    );
    let apex = FinSet::new(labels).expect("uniquified labels are distinct");

    let legs = shape
        .objects()
        .map(|o| {
            SetFn::tabulate(d.set_at(o).clone(), apex.clone(), |x| {
                class_of_elem[offsets[o.0] + x]
            })
        })
        .collect();

    Cocone {
        apex,
        legs,
        witness: QuotientWitness { classes },
    }
}

/// Limit of a finite-set diagram: all compatible families, found by
/// backtracking in shape-object order.
pub fn set_limit(d: &SetFunctor) -> Cone<SetCat> {
    let shape = d.shape();
    let n = shape.object_count();

    // For pruning, attach each shape morphism to the highest object index it
    // touches; its compatibility condition is checked as soon as both ends
    // are assigned.
    let mut checks_at: Vec<Vec<crate::cat::MorIx>> = vec![Vec::new(); n];
    for m in shape.morphisms() {
        let level = shape.dom(m).0.max(shape.cod(m).0);
        checks_at[level].push(m);
    }

    let mut families: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0usize; n];
    fn descend(
        d: &SetFunctor,
        checks_at: &[Vec<crate::cat::MorIx>],
        current: &mut Vec<usize>,
        level: usize,
        families: &mut Vec<Vec<usize>>,
    ) {
        let shape = d.shape();
        if level == shape.object_count() {
            families.push(current.clone());
            return;
        }
        for x in 0..d.set_at(ObjIx(level)).size() {
            current[level] = x;
            let ok = checks_at[level].iter().all(|&m| {
                let f = d.fn_at(m);
                f.apply(current[shape.dom(m).0]) == current[shape.cod(m).0]
            });
            if ok {
                descend(d, checks_at, current, level + 1, families);
            }
        }
    }
    descend(d, &checks_at, &mut current, 0, &mut families);

    let labels = uniquify(
        families
            .iter()
            .map(|fam| {
                tuple_label(
                    fam.iter()
                        .enumerate()
                        .map(|(o, &x)| d.set_at(ObjIx(o)).label(x)),
                )
            })
            .collect(),
    );
    let apex = FinSet::new(labels).expect("uniquified labels are distinct");

    let legs = shape
        .objects()
        .map(|o| {
            SetFn::tabulate(apex.clone(), d.set_at(o).clone(), |row| families[row][o.0])
        })
        .collect();

    Cone {
        apex,
        legs,
        witness: FamilyWitness { families },
    }
}

/// The unique map out of a finite-set colimit: each class goes to the image
/// of its representative under the other cocone's legs.
pub fn set_factor_cocone(
    d: &SetFunctor,
    univ: &Cocone<SetCat>,
    other: &Cocone<SetCat>,
) -> Result<SetFn> {
    let mut table = Vec::with_capacity(univ.apex.size());
    for members in &univ.witness.classes {
        let (o, x) = members[0];
        let value = other.legs[o.0].apply(x);
        for &(o2, x2) in members.iter().skip(1) {
            if other.legs[o2.0].apply(x2) != value {
                return Err(Error::Universality {
                    survivors: 0,
                    context: format!(
                        "cocone legs disagree on the identified elements {}:{} and {}:{}",
                        d.shape().object_name(o),
                        d.set_at(o).label(x),
                        d.shape().object_name(o2),
                        d.set_at(o2).label(x2)
                    ),
                });
            }
        }
        table.push(value);
    }
    SetFn::new(univ.apex.clone(), other.apex.clone(), table)
}

/// The unique map into a finite-set limit: each element of the other cone's
/// apex goes to its compatible family.
pub fn set_factor_cone(d: &SetFunctor, univ: &Cone<SetCat>, other: &Cone<SetCat>) -> Result<SetFn> {
    let index: BTreeMap<&Vec<usize>, usize> = univ
        .witness
        .families
        .iter()
        .enumerate()
        .map(|(i, fam)| (fam, i))
        .collect();
    let n = d.shape().object_count();
    let mut table = Vec::with_capacity(other.apex.size());
    for m in 0..other.apex.size() {
        let family: Vec<usize> = (0..n).map(|o| other.legs[o].apply(m)).collect();
        match index.get(&family) {
            Some(&row) => table.push(row),
            None => {
                return Err(Error::Universality {
                    survivors: 0,
                    context: format!(
                        "cone leg values at `{}` do not form a compatible family",
                        other.apex.label(m)
                    ),
                })
            }
        }
    }
    SetFn::new(other.apex.clone(), univ.apex.clone(), table)
}

/// All cocones over a diagram in a finite target, in deterministic order.
fn fin_all_cocones(
    d: &Diagram<FinTarget>,
    guard: &SearchGuard,
) -> Result<Vec<Cocone<FinTarget>>> {
    let shape = d.shape();
    let target = d.target();
    let cat = target.category();
    let mut cocones = Vec::new();
    let mut estimate = 0.0f64;
    for apex in cat.objects() {
        let candidates: Vec<Vec<crate::cat::MorIx>> = shape
            .objects()
            .map(|j| cat.hom(*d.obj(j), apex))
            .collect();
        let lens: Vec<usize> = candidates.iter().map(Vec::len).collect();
        estimate += lens.iter().map(|&l| l as f64).product::<f64>();
        guard.admit(estimate, "cocone enumeration in a finite target")?;
        for combo in cartesian_indices(&lens) {
            let legs: Vec<crate::cat::MorIx> = combo
                .iter()
                .enumerate()
                .map(|(j, &c)| candidates[j][c])
                .collect();
            let commutes = shape.morphisms().all(|m| {
                let (j, j2) = (shape.dom(m), shape.cod(m));
                cat.compose(legs[j2.0], *d.mor(m)) == legs[j.0]
            });
            if commutes {
                cocones.push(Cocone {
                    apex,
                    legs,
                    witness: (),
                });
            }
        }
    }
    Ok(cocones)
}

fn fin_all_cones(d: &Diagram<FinTarget>, guard: &SearchGuard) -> Result<Vec<Cone<FinTarget>>> {
    let shape = d.shape();
    let cat = d.target().category();
    let mut cones = Vec::new();
    let mut estimate = 0.0f64;
    for apex in cat.objects() {
        let candidates: Vec<Vec<crate::cat::MorIx>> = shape
            .objects()
            .map(|j| cat.hom(apex, *d.obj(j)))
            .collect();
        let lens: Vec<usize> = candidates.iter().map(Vec::len).collect();
        estimate += lens.iter().map(|&l| l as f64).product::<f64>();
        guard.admit(estimate, "cone enumeration in a finite target")?;
        for combo in cartesian_indices(&lens) {
            let legs: Vec<crate::cat::MorIx> = combo
                .iter()
                .enumerate()
                .map(|(j, &c)| candidates[j][c])
                .collect();
            let commutes = shape.morphisms().all(|m| {
                let (j, j2) = (shape.dom(m), shape.cod(m));
                cat.compose(*d.mor(m), legs[j.0]) == legs[j2.0]
            });
            if commutes {
                cones.push(Cone {
                    apex,
                    legs,
                    witness: (),
                });
            }
        }
    }
    Ok(cones)
}

fn factors_cocone(
    cat: &crate::cat::FinCategory,
    from: &Cocone<FinTarget>,
    to: &Cocone<FinTarget>,
) -> Vec<crate::cat::MorIx> {
    cat.hom(from.apex, to.apex)
        .into_iter()
        .filter(|&h| {
            from.legs
                .iter()
                .zip(&to.legs)
                .all(|(&l, &l2)| cat.compose(h, l) == l2)
        })
        .collect()
}

fn factors_cone(
    cat: &crate::cat::FinCategory,
    into: &Cone<FinTarget>,
    from: &Cone<FinTarget>,
) -> Vec<crate::cat::MorIx> {
    cat.hom(from.apex, into.apex)
        .into_iter()
        .filter(|&h| {
            into.legs
                .iter()
                .zip(&from.legs)
                .all(|(&l, &l2)| cat.compose(l, h) == l2)
        })
        .collect()
}

/// Exhaustive colimit search in a finite target: the first cocone through
/// which every other cocone factors uniquely, or `None`.
pub fn fin_colimit(
    d: &Diagram<FinTarget>,
    guard: &SearchGuard,
) -> Result<Option<Cocone<FinTarget>>> {
    let cocones = fin_all_cocones(d, guard)?;
    let cat = d.target().category();
    for candidate in &cocones {
        if cocones
            .iter()
            .all(|other| factors_cocone(cat, candidate, other).len() == 1)
        {
            return Ok(Some(candidate.clone()));
        }
    }
    Ok(None)
}

/// Exhaustive limit search in a finite target.
pub fn fin_limit(d: &Diagram<FinTarget>, guard: &SearchGuard) -> Result<Option<Cone<FinTarget>>> {
    let cones = fin_all_cones(d, guard)?;
    let cat = d.target().category();
    for candidate in &cones {
        if cones
            .iter()
            .all(|other| factors_cone(cat, candidate, other).len() == 1)
        {
            return Ok(Some(candidate.clone()));
        }
    }
    Ok(None)
}

pub fn fin_factor_cocone(
    d: &Diagram<FinTarget>,
    univ: &Cocone<FinTarget>,
    other: &Cocone<FinTarget>,
) -> Result<crate::cat::MorIx> {
    let cat = d.target().category();
    let found = factors_cocone(cat, univ, other);
    match found.len() {
        1 => Ok(found[0]),
        n => Err(Error::Universality {
            survivors: n,
            context: "factoring a cocone through the colimit".to_string(),
        }),
    }
}

pub fn fin_factor_cone(
    d: &Diagram<FinTarget>,
    univ: &Cone<FinTarget>,
    other: &Cone<FinTarget>,
) -> Result<crate::cat::MorIx> {
    let cat = d.target().category();
    let found = factors_cone(cat, univ, other);
    match found.len() {
        1 => Ok(found[0]),
        n => Err(Error::Universality {
            survivors: n,
            context: "factoring a cone through the limit".to_string(),
        }),
    }
}

/// Convenience wrappers used by callers that know their diagram is
/// set-valued.
pub fn colimit(d: &SetFunctor) -> Cocone<SetCat> {
    set_colimit(d)
}

pub fn limit(d: &SetFunctor) -> Cone<SetCat> {
    set_limit(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::FinCategory;
    use std::sync::Arc;

    fn discrete2_diagram(sizes: (usize, usize)) -> SetFunctor {
        let shape = Arc::new(FinCategory::discrete(&["a", "b"]));
        let sets = vec![
            FinSet::canonical(sizes.0, "x"),
            FinSet::canonical(sizes.1, "y"),
        ];
        let fns = vec![SetFn::identity(&sets[0]), SetFn::identity(&sets[1])];
        Diagram::new(shape, SetCat, sets, fns).unwrap()
    }

    #[test]
    fn product_and_coproduct_cardinalities() {
        let d = discrete2_diagram((2, 3));
        assert_eq!(set_limit(&d).apex.size(), 6);
        assert_eq!(set_colimit(&d).apex.size(), 5);
    }

    #[test]
    fn empty_shape_limit_is_terminal_and_colimit_initial() {
        let shape = Arc::new(FinCategory::discrete(&[]));
        let d = Diagram::new(shape, SetCat, vec![], vec![]).unwrap();
        let lim = set_limit(&d);
        assert_eq!(lim.apex.size(), 1);
        assert_eq!(lim.apex.label(0), "()");
        assert_eq!(set_colimit(&d).apex.size(), 0);
    }

    #[test]
    fn equalizer_of_parallel_pair() {
        // f, g : {0,1,2} -> {0,1}, f = (0,1,0), g = (0,0,1); only the family
        // rooted at 0 is compatible.
        let shape = Arc::new(FinCategory::parallel_pair());
        let s = FinSet::from_labels(&["0", "1", "2"]);
        let t = FinSet::from_labels(&["0", "1"]);
        let f = SetFn::new(s.clone(), t.clone(), vec![0, 1, 0]).unwrap();
        let g = SetFn::new(s.clone(), t.clone(), vec![0, 0, 1]).unwrap();
        let mut gens = std::collections::BTreeMap::new();
        gens.insert(shape.mor_named("par_0").unwrap(), f);
        gens.insert(shape.mor_named("par_1").unwrap(), g);
        let d = Diagram::from_generators(shape, SetCat, vec![s, t], &gens).unwrap();
        let lim = set_limit(&d);
        assert_eq!(lim.apex.size(), 1);
        assert_eq!(lim.apex.label(0), "(0,0)");
    }

    #[test]
    fn coequalizer_merges_everything() {
        // f, g : {a,b} -> {x,y,z}, f = (x,y), g = (y,z): all five elements
        // collapse to one class.
        let shape = Arc::new(FinCategory::parallel_pair());
        let s = FinSet::from_labels(&["a", "b"]);
        let t = FinSet::from_labels(&["x", "y", "z"]);
        let f = SetFn::new(s.clone(), t.clone(), vec![0, 1]).unwrap();
        let g = SetFn::new(s.clone(), t.clone(), vec![1, 2]).unwrap();
        let mut gens = std::collections::BTreeMap::new();
        gens.insert(shape.mor_named("par_0").unwrap(), f);
        gens.insert(shape.mor_named("par_1").unwrap(), g);
        let d = Diagram::from_generators(shape, SetCat, vec![s, t], &gens).unwrap();
        let colim = set_colimit(&d);
        assert_eq!(colim.apex.size(), 1);
        // least representative is (object "s", element "a")
        assert_eq!(colim.apex.label(0), "s:a");
    }

    #[test]
    fn factoring_through_set_colimit() {
        let d = discrete2_diagram((2, 1));
        let colim = set_colimit(&d);
        // Another cocone: everything to a single point.
        let pt = FinSet::singleton("*");
        let other = Cocone {
            apex: pt.clone(),
            legs: vec![
                SetFn::tabulate(d.set_at(ObjIx(0)).clone(), pt.clone(), |_| 0),
                SetFn::tabulate(d.set_at(ObjIx(1)).clone(), pt.clone(), |_| 0),
            ],
            witness: QuotientWitness::default(),
        };
        let h = set_factor_cocone(&d, &colim, &other).unwrap();
        assert_eq!(h.dom().size(), 3);
        assert!(h.table().iter().all(|&v| v == 0));
    }

    #[test]
    fn chain_colimit_in_finite_target_is_maximum() {
        // Diagram picking objects {0, 2} of the chain 0<1<2<3; its colimit is 2.
        let chain = Arc::new(FinCategory::chain(4));
        let shape = Arc::new(FinCategory::discrete(&["a", "b"]));
        let d = Diagram::new(
            shape,
            FinTarget::new(chain.clone()),
            vec![ObjIx(0), ObjIx(2)],
            vec![chain.identity_of(ObjIx(0)), chain.identity_of(ObjIx(2))],
        )
        .unwrap();
        let guard = SearchGuard::default();
        let colim = fin_colimit(&d, &guard).unwrap().unwrap();
        assert_eq!(colim.apex, ObjIx(2));
        let lim = fin_limit(&d, &guard).unwrap().unwrap();
        assert_eq!(lim.apex, ObjIx(0));
    }

    #[test]
    fn empty_diagram_in_chain_yields_bottom_and_top() {
        let chain = Arc::new(FinCategory::chain(3));
        let shape = Arc::new(FinCategory::discrete(&[]));
        let d = Diagram::new(shape, FinTarget::new(chain.clone()), vec![], vec![]).unwrap();
        let guard = SearchGuard::default();
        assert_eq!(fin_colimit(&d, &guard).unwrap().unwrap().apex, ObjIx(0));
        assert_eq!(fin_limit(&d, &guard).unwrap().unwrap().apex, ObjIx(2));
    }

    #[test]
    fn colimit_absent_in_discrete_target() {
        // Two distinct points of a discrete category have no coproduct.
        let disc = Arc::new(FinCategory::discrete(&["u", "v"]));
        let shape = Arc::new(FinCategory::discrete(&["a", "b"]));
        let d = Diagram::new(
            shape,
            FinTarget::new(disc.clone()),
            vec![ObjIx(0), ObjIx(1)],
            vec![disc.identity_of(ObjIx(0)), disc.identity_of(ObjIx(1))],
        )
        .unwrap();
        assert!(fin_colimit(&d, &SearchGuard::default()).unwrap().is_none());
    }
}
