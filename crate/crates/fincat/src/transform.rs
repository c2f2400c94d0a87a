//! Natural transformations between parallel diagrams, with the whiskering
//! and vertical-composition calculus.

use crate::ambient::Ambient;
use crate::cat::ObjIx;
use crate::diagram::{Diagram, Functor};
use crate::error::{Error, Result, TransformationReport, TransformationViolation};

/// A natural transformation between two parallel diagrams. Components are
/// indexed by the shape's object order.
#[derive(Debug, Clone, PartialEq)]
pub struct Transformation<T: Ambient> {
    source: Diagram<T>,
    target: Diagram<T>,
    components: Vec<T::Mor>,
}

impl<T: Ambient> Transformation<T> {
    /// Builds and validates: the diagrams must be parallel, each component
    /// must go `F(a) -> G(a)`, and every naturality square must commute.
    pub fn new(source: Diagram<T>, target: Diagram<T>, components: Vec<T::Mor>) -> Result<Self> {
        let mut violations = Vec::new();
        if **source.shape() != **target.shape() || !source.target().same(target.target()) {
            violations.push(TransformationViolation::NotParallel);
            return Err(TransformationReport { violations }.into());
        }
        let shape = source.shape().clone();
        if components.len() != shape.object_count() {
            return Err(Error::Mismatch(format!(
                "component table has {} entries for a shape with {} objects",
                components.len(),
                shape.object_count()
            )));
        }
        let ambient = source.target();
        for a in shape.objects() {
            let c = &components[a.0];
            if ambient.dom(c) != *source.obj(a) || ambient.cod(c) != *target.obj(a) {
                violations.push(TransformationViolation::ComponentEndpoints {
                    object: shape.object_name(a).to_string(),
                });
            }
        }
        if violations.is_empty() {
            for m in shape.morphisms() {
                let (a, b) = (shape.dom(m), shape.cod(m));
                let left = ambient.compose(target.mor(m), &components[a.0]);
                let right = ambient.compose(&components[b.0], source.mor(m));
                if left != right {
                    violations.push(TransformationViolation::Naturality {
                        morphism: shape.mor_name(m).to_string(),
                        dom: shape.object_name(a).to_string(),
                        cod: shape.object_name(b).to_string(),
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(Transformation {
                source,
                target,
                components,
            })
        } else {
            Err(TransformationReport { violations }.into())
        }
    }

    /// The identity transformation on a diagram.
    pub fn identity(d: &Diagram<T>) -> Self {
        let components = d
            .object_table()
            .iter()
            .map(|o| d.target().identity(o))
            .collect();
        Transformation {
            source: d.clone(),
            target: d.clone(),
            components,
        }
    }

    pub fn source(&self) -> &Diagram<T> {
        &self.source
    }

    pub fn target(&self) -> &Diagram<T> {
        &self.target
    }

    pub fn component(&self, a: ObjIx) -> &T::Mor {
        &self.components[a.0]
    }

    pub fn components(&self) -> &[T::Mor] {
        &self.components
    }

    /// Vertical composite: `later ∘ self`, valid when `later` starts where
    /// `self` ends.
    pub fn then(&self, later: &Transformation<T>) -> Result<Transformation<T>> {
        vcompose(later, self)
    }

    /// True when every component is an isomorphism.
    pub fn is_iso(&self) -> bool {
        let ambient = self.source.target();
        self.components
            .iter()
            .all(|c| ambient.inverse(c).is_some())
    }

    /// Componentwise inverse, when every component is invertible.
    pub fn invert(&self) -> Option<Transformation<T>> {
        let ambient = self.source.target();
        let components = self
            .components
            .iter()
            .map(|c| ambient.inverse(c))
            .collect::<Option<Vec<_>>>()?;
        Some(Transformation {
            source: self.target.clone(),
            target: self.source.clone(),
            components,
        })
    }
}

/// Vertical composition `(β ∘ α)_a = β_a ∘ α_a` for `α : F ⇒ G`, `β : G ⇒ H`.
pub fn vcompose<T: Ambient>(
    beta: &Transformation<T>,
    alpha: &Transformation<T>,
) -> Result<Transformation<T>> {
    if alpha.target != beta.source {
        return Err(Error::Mismatch(
            "vertical composition endpoints do not match".to_string(),
        ));
    }
    let ambient = alpha.source.target().clone();
    let components = alpha
        .components
        .iter()
        .zip(&beta.components)
        .map(|(a, b)| ambient.compose(b, a))
        .collect();
    Ok(Transformation {
        source: alpha.source.clone(),
        target: beta.target.clone(),
        components,
    })
}

/// Right whiskering `(αK)_a = α_{K a}` for `α : L ⇒ L'` between diagrams on
/// `B` and `K : A -> B`.
pub fn whisker_right<T: Ambient>(
    alpha: &Transformation<T>,
    k: &Functor,
) -> Result<Transformation<T>> {
    if **k.target().category() != **alpha.source.shape() {
        return Err(Error::Mismatch(
            "whisker_right: functor target differs from the transformation's shape".to_string(),
        ));
    }
    let source = alpha.source.precompose(k)?;
    let target = alpha.target.precompose(k)?;
    let components = k
        .object_table()
        .iter()
        .map(|&b| alpha.components[b.0].clone())
        .collect();
    Ok(Transformation {
        source,
        target,
        components,
    })
}

/// Left whiskering `(Gα)_a = G(α_a)` for `α : F ⇒ F'` between functors into
/// a finite category and `G` a diagram on that category.
pub fn whisker_left<T: Ambient>(
    g: &Diagram<T>,
    alpha: &Transformation<crate::ambient::FinTarget>,
) -> Result<Transformation<T>> {
    if **g.shape() != **alpha.source().target().category() {
        return Err(Error::Mismatch(
            "whisker_left: diagram shape differs from the transformation's target category"
                .to_string(),
        ));
    }
    let source = g.precompose(alpha.source())?;
    let target = g.precompose(alpha.target())?;
    let components = alpha
        .components()
        .iter()
        .map(|&m| g.mor(m).clone())
        .collect();
    Ok(Transformation {
        source,
        target,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::SetCat;
    use crate::cat::FinCategory;
    use crate::diagram::representable;
    use crate::set::{FinSet, SetFn};
    use std::collections::BTreeMap;
    use std::sync::Arc;

    fn chain3() -> Arc<FinCategory> {
        Arc::new(FinCategory::chain(3))
    }

    fn inclusion_functor(c: &Arc<FinCategory>) -> crate::diagram::SetFunctor {
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
    fn identity_transformation_is_valid() {
        let c = chain3();
        let x = inclusion_functor(&c);
        let id = Transformation::identity(&x);
        // Reconstruct through the validating constructor.
        Transformation::new(x.clone(), x.clone(), id.components().to_vec()).unwrap();
    }

    #[test]
    fn naturality_violation_is_listed() {
        // Constant functors {x} and {u,v} on the arrow category: the
        // component at the source may pick u while the arrow forces v.
        let arrow = Arc::new(FinCategory::chain(2));
        let fx = Diagram::constant(arrow.clone(), SetCat, FinSet::singleton("x"));
        let guv = Diagram::constant(arrow.clone(), SetCat, FinSet::from_labels(&["u", "v"]));
        let comp0 = SetFn::new(
            FinSet::singleton("x"),
            FinSet::from_labels(&["u", "v"]),
            vec![0],
        )
        .unwrap();
        let comp1 = SetFn::new(
            FinSet::singleton("x"),
            FinSet::from_labels(&["u", "v"]),
            vec![1],
        )
        .unwrap();
        let err = Transformation::new(fx, guv, vec![comp0, comp1]).unwrap_err();
        match err {
            Error::InvalidTransformation(report) => {
                assert!(report.violations.iter().any(|v| matches!(
                    v,
                    TransformationViolation::Naturality { morphism, .. } if morphism == "le_0_1"
                )));
            }
            other => panic!("expected a transformation report, got {other}"),
        }
    }

    #[test]
    fn vcompose_identities() {
        let c = chain3();
        let x = inclusion_functor(&c);
        let h1 = representable(&c, crate::cat::ObjIx(1));
        // The Yoneda transformation picking p in X(1).
        let comps = vec![
            SetFn::new(h1.set_at(crate::cat::ObjIx(0)).clone(), x.set_at(crate::cat::ObjIx(0)).clone(), vec![]).unwrap(),
            SetFn::new(h1.set_at(crate::cat::ObjIx(1)).clone(), x.set_at(crate::cat::ObjIx(1)).clone(), vec![0]).unwrap(),
            SetFn::new(h1.set_at(crate::cat::ObjIx(2)).clone(), x.set_at(crate::cat::ObjIx(2)).clone(), vec![0]).unwrap(),
        ];
        let alpha = Transformation::new(h1.clone(), x.clone(), comps).unwrap();
        let left = vcompose(&Transformation::identity(&x), &alpha).unwrap();
        assert_eq!(left.components(), alpha.components());
        let right = vcompose(&alpha, &Transformation::identity(&h1)).unwrap();
        assert_eq!(right.components(), alpha.components());
    }

    #[test]
    fn whisker_right_of_identity_is_identity() {
        let c = chain3();
        let x = inclusion_functor(&c);
        let two = Arc::new(FinCategory::chain(2));
        let k = Functor::between_posets(&two, &c, vec![crate::cat::ObjIx(0), crate::cat::ObjIx(2)])
            .unwrap();
        let whiskered = whisker_right(&Transformation::identity(&x), &k).unwrap();
        let restricted = x.precompose(&k).unwrap();
        assert_eq!(whiskered, Transformation::identity(&restricted));
    }

    #[test]
    fn whisker_distributes_over_vcompose() {
        // (β∘α)K = βK ∘ αK on a small instance: α, β between constant
        // functors on the chain.
        let c = chain3();
        let s2 = FinSet::from_labels(&["u", "v"]);
        let f = Diagram::constant(c.clone(), SetCat, FinSet::singleton("x"));
        let g = Diagram::constant(c.clone(), SetCat, s2.clone());
        let h = Diagram::constant(c.clone(), SetCat, FinSet::singleton("w"));
        let alpha = Transformation::new(
            f.clone(),
            g.clone(),
            (0..3)
                .map(|_| SetFn::new(FinSet::singleton("x"), s2.clone(), vec![1]).unwrap())
                .collect(),
        )
        .unwrap();
        let beta = Transformation::new(
            g.clone(),
            h.clone(),
            (0..3)
                .map(|_| SetFn::new(s2.clone(), FinSet::singleton("w"), vec![0, 0]).unwrap())
                .collect(),
        )
        .unwrap();
        let two = Arc::new(FinCategory::chain(2));
        let k = Functor::between_posets(&two, &c, vec![crate::cat::ObjIx(1), crate::cat::ObjIx(2)])
            .unwrap();
        let lhs = whisker_right(&vcompose(&beta, &alpha).unwrap(), &k).unwrap();
        let rhs = vcompose(
            &whisker_right(&beta, &k).unwrap(),
            &whisker_right(&alpha, &k).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }
}
