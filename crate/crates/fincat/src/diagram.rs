//! Functors out of a finite shape category, validated eagerly.
//!
//! A [`Diagram<T>`] maps a finite shape into an ambient `T`. The two
//! instantiations used throughout are [`Functor`] (finite target category)
//! and [`SetFunctor`] (finite sets). Validation checks that endpoints,
//! identities and every binary composite are preserved.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ambient::{Ambient, FinTarget, SetCat};
use crate::cat::{FinCategory, MorIx, ObjIx};
use crate::error::{DiagramReport, DiagramViolation, Error, Result};
use crate::set::{FinSet, SetFn};

/// A functor from a finite shape category into an ambient category.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagram<T: Ambient> {
    shape: Arc<FinCategory>,
    target: T,
    objects: Vec<T::Obj>,
    morphisms: Vec<T::Mor>,
}

/// A functor between finite categories.
pub type Functor = Diagram<FinTarget>;

/// A functor from a finite category into finite sets.
pub type SetFunctor = Diagram<SetCat>;

impl<T: Ambient> Diagram<T> {
    /// Builds and validates a diagram from full object/morphism tables
    /// (indexed by the shape's object and morphism order).
    pub fn new(
        shape: Arc<FinCategory>,
        target: T,
        objects: Vec<T::Obj>,
        morphisms: Vec<T::Mor>,
    ) -> Result<Self> {
        if objects.len() != shape.object_count() {
            return Err(Error::Mismatch(format!(
                "object table has {} entries for a shape with {} objects",
                objects.len(),
                shape.object_count()
            )));
        }
        if morphisms.len() != shape.morphism_count() {
            return Err(Error::Mismatch(format!(
                "morphism table has {} entries for a shape with {} morphisms",
                morphisms.len(),
                shape.morphism_count()
            )));
        }
        let d = Diagram {
            shape,
            target,
            objects,
            morphisms,
        };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let mut violations = Vec::new();
        for m in self.shape.morphisms() {
            let value = &self.morphisms[m.0];
            if self.target.dom(value) != self.objects[self.shape.dom(m).0]
                || self.target.cod(value) != self.objects[self.shape.cod(m).0]
            {
                violations.push(DiagramViolation::EndpointMismatch {
                    morphism: self.shape.mor_name(m).to_string(),
                });
            }
        }
        if violations.is_empty() {
            for o in self.shape.objects() {
                let id = self.shape.identity_of(o);
                if self.morphisms[id.0] != self.target.identity(&self.objects[o.0]) {
                    violations.push(DiagramViolation::IdentityNotPreserved {
                        object: self.shape.object_name(o).to_string(),
                    });
                }
            }
            for (g, f) in self.shape.composable_pairs() {
                let gf = self.shape.compose(g, f);
                let composed = self
                    .target
                    .compose(&self.morphisms[g.0], &self.morphisms[f.0]);
                if composed != self.morphisms[gf.0] {
                    violations.push(DiagramViolation::CompositionNotPreserved {
                        g: self.shape.mor_name(g).to_string(),
                        f: self.shape.mor_name(f).to_string(),
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(DiagramReport { violations }.into())
        }
    }

    /// Builds a diagram from values on a generating set of morphisms,
    /// closing under composition. Fails when the closure is inconsistent
    /// (two factorisations of the same morphism disagree) or when some
    /// morphism is not reachable from the given generators.
    pub fn from_generators(
        shape: Arc<FinCategory>,
        target: T,
        objects: Vec<T::Obj>,
        generators: &BTreeMap<MorIx, T::Mor>,
    ) -> Result<Self> {
        if objects.len() != shape.object_count() {
            return Err(Error::Mismatch(
                "object table length does not match the shape".to_string(),
            ));
        }
        let mut table: Vec<Option<T::Mor>> = vec![None; shape.morphism_count()];
        for o in shape.objects() {
            let id = shape.identity_of(o);
            table[id.0] = Some(target.identity(&objects[o.0]));
        }
        for (&m, v) in generators {
            if let Some(prev) = &table[m.0] {
                if prev != v {
                    return Err(Error::Mismatch(format!(
                        "generator value for `{}` conflicts with a forced value",
                        shape.mor_name(m)
                    )));
                }
            }
            table[m.0] = Some(v.clone());
        }
        // Close under composition to a fixpoint.
        loop {
            let mut progress = false;
            for (g, f) in shape.composable_pairs() {
                let (Some(gv), Some(fv)) = (&table[g.0], &table[f.0]) else {
                    continue;
                };
                let gf = shape.compose(g, f);
                let value = target.compose(gv, fv);
                match &table[gf.0] {
                    Some(prev) => {
                        if *prev != value {
                            return Err(Error::Mismatch(format!(
                                "inconsistent factorisations for `{}`",
                                shape.mor_name(gf)
                            )));
                        }
                    }
                    None => {
                        table[gf.0] = Some(value);
                        progress = true;
                    }
                }
            }
            if !progress {
                break;
            }
        }
        let mut morphisms = Vec::with_capacity(table.len());
        for (i, slot) in table.into_iter().enumerate() {
            match slot {
                Some(v) => morphisms.push(v),
                None => {
                    return Err(Error::Mismatch(format!(
                        "no value derivable for morphism `{}`; supply it explicitly",
                        shape.mor_name(MorIx(i))
                    )))
                }
            }
        }
        Diagram::new(shape, target, objects, morphisms)
    }

    /// The constant diagram at `value`.
    pub fn constant(shape: Arc<FinCategory>, target: T, value: T::Obj) -> Self {
        let objects = vec![value.clone(); shape.object_count()];
        let id = target.identity(&value);
        let morphisms = vec![id; shape.morphism_count()];
        Diagram::new(shape, target, objects, morphisms).expect("constant diagrams are functorial")
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn target(&self) -> &T {
        &self.target
    }

    pub fn obj(&self, o: ObjIx) -> &T::Obj {
        &self.objects[o.0]
    }

    pub fn mor(&self, m: MorIx) -> &T::Mor {
        &self.morphisms[m.0]
    }

    pub fn object_table(&self) -> &[T::Obj] {
        &self.objects
    }

    pub fn morphism_table(&self) -> &[T::Mor] {
        &self.morphisms
    }

    /// `self ∘ k`: restricts this diagram along a functor into its shape.
    pub fn precompose(&self, k: &Functor) -> Result<Diagram<T>> {
        if **k.target().category() != **self.shape() {
            return Err(Error::Mismatch(
                "precompose: functor target differs from the diagram shape".to_string(),
            ));
        }
        let objects = k.object_table().iter().map(|&o| self.objects[o.0].clone());
        let morphisms = k
            .morphism_table()
            .iter()
            .map(|&m| self.morphisms[m.0].clone());
        Diagram::new(
            k.shape().clone(),
            self.target.clone(),
            objects.collect(),
            morphisms.collect(),
        )
    }
}

impl Functor {
    /// The identity functor.
    pub fn identity(cat: &Arc<FinCategory>) -> Functor {
        Diagram::new(
            cat.clone(),
            FinTarget::new(cat.clone()),
            cat.objects().collect(),
            cat.morphisms().collect(),
        )
        .expect("identity functor is valid")
    }

    /// An object `c` of `cat` as a functor from the terminal category.
    pub fn point(cat: &Arc<FinCategory>, c: ObjIx) -> Functor {
        let one = Arc::new(FinCategory::terminal());
        Diagram::new(
            one,
            FinTarget::new(cat.clone()),
            vec![c],
            vec![cat.identity_of(c)],
        )
        .expect("point functors are valid")
    }

    /// The inclusion of a subcategory whose object and morphism names all
    /// appear in `sup`.
    pub fn inclusion_by_names(sub: &Arc<FinCategory>, sup: &Arc<FinCategory>) -> Result<Functor> {
        let objects = sub
            .objects()
            .map(|o| {
                sup.object_named(sub.object_name(o))
                    .ok_or_else(|| Error::UnknownObject(sub.object_name(o).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let morphisms = sub
            .morphisms()
            .map(|m| {
                let (a, b) = (objects[sub.dom(m).0], objects[sub.cod(m).0]);
                // Match by name when possible, otherwise by unique hom.
                if let Some(n) = sup.mor_named(sub.mor_name(m)) {
                    return Ok(n);
                }
                let hom = sup.hom(a, b);
                if hom.len() == 1 {
                    Ok(hom[0])
                } else {
                    Err(Error::UnknownMorphism(sub.mor_name(m).to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(sub.clone(), FinTarget::new(sup.clone()), objects, morphisms)
    }

    /// A functor between categories whose hom-sets have at most one element
    /// (posets), determined by its object map.
    pub fn between_posets(
        src: &Arc<FinCategory>,
        tgt: &Arc<FinCategory>,
        object_map: Vec<ObjIx>,
    ) -> Result<Functor> {
        if object_map.len() != src.object_count() {
            return Err(Error::Mismatch(
                "object map length does not match the source".to_string(),
            ));
        }
        let morphisms = src
            .morphisms()
            .map(|m| {
                let (a, b) = (object_map[src.dom(m).0], object_map[src.cod(m).0]);
                let hom = tgt.hom(a, b);
                match hom.len() {
                    1 => Ok(hom[0]),
                    0 => Err(Error::Mismatch(format!(
                        "object map is not monotone: no morphism `{}` -> `{}`",
                        tgt.object_name(a),
                        tgt.object_name(b)
                    ))),
                    _ => Err(Error::Mismatch(
                        "target category is not a poset".to_string(),
                    )),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(src.clone(), FinTarget::new(tgt.clone()), object_map, morphisms)
    }

    pub fn apply_obj(&self, o: ObjIx) -> ObjIx {
        *self.obj(o)
    }

    pub fn apply_mor(&self, m: MorIx) -> MorIx {
        *self.mor(m)
    }

    /// Checks full faithfulness by hom-set bijectivity on every object pair.
    pub fn is_fully_faithful(&self) -> bool {
        let src = self.shape();
        let tgt = self.target().category();
        for a in src.objects() {
            for b in src.objects() {
                let images: Vec<MorIx> = src
                    .hom(a, b)
                    .into_iter()
                    .map(|m| self.apply_mor(m))
                    .collect();
                let mut sorted = images.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != images.len() {
                    return false; // not faithful
                }
                if sorted.len() != tgt.hom_size(self.apply_obj(a), self.apply_obj(b)) {
                    return false; // not full
                }
            }
        }
        true
    }

    /// The same tables read as a functor between the opposite categories.
    pub fn dualize(&self) -> Functor {
        let op_shape = Arc::new(self.shape().opposite());
        let op_target = Arc::new(self.target().category().opposite());
        Diagram::new(
            op_shape,
            FinTarget::new(op_target),
            self.object_table().to_vec(),
            self.morphism_table().to_vec(),
        )
        .expect("dual of a functor is a functor")
    }
}

/// Variance of a represented hom-functor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// The covariant representable `x ↦ hom(c, x)` on `cat`, with morphism
/// actions by postcomposition. Element labels are the morphism identifiers.
pub fn representable(cat: &Arc<FinCategory>, c: ObjIx) -> SetFunctor {
    let sets: Vec<FinSet> = cat
        .objects()
        .map(|x| {
            FinSet::new(
                cat.hom(c, x)
                    .into_iter()
                    .map(|m| cat.mor_name(m).to_string())
                    .collect(),
            )
            .expect("morphism names are unique")
        })
        .collect();
    let functions: Vec<SetFn> = cat
        .morphisms()
        .map(|f| {
            let (x, y) = (cat.dom(f), cat.cod(f));
            let hom_x = cat.hom(c, x);
            let hom_y = cat.hom(c, y);
            SetFn::tabulate(sets[x.0].clone(), sets[y.0].clone(), |i| {
                let composed = cat.compose(f, hom_x[i]);
                hom_y.iter().position(|&m| m == composed).expect("closed")
            })
        })
        .collect();
    Diagram::new(cat.clone(), SetCat, sets, functions).expect("representables are functorial")
}

/// The contravariant representable `x ↦ hom(x, c)`, presented as a covariant
/// set-functor on the opposite category (a presheaf). Morphism actions are
/// precomposition.
pub fn representable_contra(cat: &Arc<FinCategory>, c: ObjIx) -> SetFunctor {
    let op = Arc::new(cat.opposite());
    let sets: Vec<FinSet> = cat
        .objects()
        .map(|x| {
            FinSet::new(
                cat.hom(x, c)
                    .into_iter()
                    .map(|m| cat.mor_name(m).to_string())
                    .collect(),
            )
            .expect("morphism names are unique")
        })
        .collect();
    let functions: Vec<SetFn> = op
        .morphisms()
        .map(|f_op| {
            // f_op: x -> y in the opposite category is f: y -> x in `cat`.
            let (x, y) = (op.dom(f_op), op.cod(f_op));
            let f = f_op; // same index in both tables
            let hom_x = cat.hom(x, c);
            let hom_y = cat.hom(y, c);
            SetFn::tabulate(sets[x.0].clone(), sets[y.0].clone(), |i| {
                let composed = cat.compose(hom_x[i], f);
                hom_y.iter().position(|&m| m == composed).expect("closed")
            })
        })
        .collect();
    Diagram::new(op, SetCat, sets, functions).expect("representables are functorial")
}

/// Convenience accessors for set-valued diagrams.
impl SetFunctor {
    pub fn set_at(&self, o: ObjIx) -> &FinSet {
        self.obj(o)
    }

    pub fn fn_at(&self, m: MorIx) -> &SetFn {
        self.mor(m)
    }
}

pub fn variance_of(v: Variance) -> &'static str {
    match v {
        Variance::Covariant => "covariant",
        Variance::Contravariant => "contravariant",
    }
}
