//! The left-extension criterion for adjunctions: `L ⊣ R` holds exactly when
//! the left extension of the identity along `L` is `R` and `L` preserves it
//! (the left extension of `L` along `L` is `L∘R`). When both conditions
//! hold, the unit and counit are assembled from the extensions and both
//! triangle identities are checked componentwise.

use crate::ambient::FinTarget;
use crate::diagram::Functor;
use crate::error::{Error, Result};
use crate::guard::SearchGuard;
use crate::hom_search::find_natural_iso;
use crate::kan::{lan, verify_universal};
use crate::transform::{vcompose, whisker_left, whisker_right, Transformation};

/// Verdict for one of the two extension conditions.
#[derive(Debug, Clone)]
pub enum ConditionVerdict {
    Holds {
        iso: Transformation<FinTarget>,
    },
    /// The extension exists but is not isomorphic to the expected functor.
    NotIsomorphic {
        expected_sizes: Vec<String>,
    },
    /// A required colimit does not exist in the finite target.
    ColimitMissing {
        detail: String,
    },
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionVerdict::Holds { .. })
    }
}

#[derive(Debug, Clone)]
pub struct TriangleReport {
    /// `εL ∘ Lη = 1_L`.
    pub left: bool,
    /// `Rε ∘ ηR = 1_R`.
    pub right: bool,
}

#[derive(Debug, Clone)]
pub struct AdjunctionReport {
    pub condition1: ConditionVerdict,
    pub condition2: ConditionVerdict,
    /// Unit `1_A ⇒ RL`, available when condition 1 holds.
    pub unit: Option<Transformation<FinTarget>>,
    /// Counit `LR ⇒ 1_B`, available when both conditions hold.
    pub counit: Option<Transformation<FinTarget>>,
    pub triangles: Option<TriangleReport>,
    pub holds: bool,
}

/// Checks whether `L ⊣ R` via the two left-extension conditions.
pub fn adjunction_check(
    l: &Functor,
    r: &Functor,
    guard: &SearchGuard,
) -> Result<AdjunctionReport> {
    let a_cat = l.shape().clone();
    let b_cat = l.target().category().clone();
    if **r.shape() != *b_cat || **r.target().category() != *a_cat {
        return Err(Error::Mismatch(
            "adjunction candidates must be functors in opposite directions".to_string(),
        ));
    }

    // Condition 1: lan_L(1_A) ≅ R.
    let id_a = Functor::identity(&a_cat);
    let kan1 = match lan(l, &id_a, guard) {
        Ok(k) => Ok(k),
        Err(Error::NoColimit { context }) => Err(context),
        Err(e) => return Err(e),
    };
    let (condition1, unit) = match kan1 {
        Err(context) => (ConditionVerdict::ColimitMissing { detail: context }, None),
        Ok(kan1) => match find_natural_iso(&kan1.ext, r, guard)? {
            Some(iso) => {
                // Unit: transport the extension's unit along the iso.
                let eta = vcompose(&whisker_right(&iso, l)?, &kan1.mediator)?;
                (ConditionVerdict::Holds { iso }, Some(eta))
            }
            None => (
                ConditionVerdict::NotIsomorphic {
                    expected_sizes: b_cat
                        .objects()
                        .map(|b| {
                            format!(
                                "{}: ext={} r={}",
                                b_cat.object_name(b),
                                a_cat.object_name(kan1.ext.apply_obj(b)),
                                a_cat.object_name(r.apply_obj(b))
                            )
                        })
                        .collect(),
                },
                None,
            ),
        },
    };

    // Condition 2: lan_L(L) ≅ L∘R.
    let lr = l.precompose(r)?;
    let kan2 = match lan(l, &l.clone(), guard) {
        Ok(k) => Ok(k),
        Err(Error::NoColimit { context }) => Err(context),
        Err(e) => return Err(e),
    };
    let (condition2, counit_data) = match kan2 {
        Err(context) => (ConditionVerdict::ColimitMissing { detail: context }, None),
        Ok(kan2) => match find_natural_iso(&kan2.ext, &lr, guard)? {
            Some(iso) => (ConditionVerdict::Holds { iso: iso.clone() }, Some((kan2, iso))),
            None => (
                ConditionVerdict::NotIsomorphic {
                    expected_sizes: b_cat
                        .objects()
                        .map(|b| {
                            format!(
                                "{}: ext={} lr={}",
                                b_cat.object_name(b),
                                b_cat.object_name(kan2.ext.apply_obj(b)),
                                b_cat.object_name(lr.apply_obj(b))
                            )
                        })
                        .collect(),
                },
                None,
            ),
        },
    };

    // When both conditions hold, build the counit by the universal property
    // of lan_L(L) applied to 1_L : L ⇒ 1_B ∘ L, then check the triangles.
    let mut counit = None;
    let mut triangles = None;
    if condition1.holds() && condition2.holds() {
        let (kan2, psi) = counit_data.as_ref().expect("condition 2 data");
        let eta = unit.as_ref().expect("condition 1 unit");
        let id_b = Functor::identity(&b_cat);
        let one_l = Transformation::new(
            l.clone(),
            id_b.precompose(l)?,
            l.shape()
                .objects()
                .map(|a| l.apply_mor(a_cat.identity_of(a)))
                .collect(),
        )?;
        let alpha = verify_universal(kan2, &id_b, &one_l, guard)?;
        let psi_inv = psi.invert().ok_or(Error::Internal(
            "condition-2 comparison is not invertible".to_string(),
        ))?;
        let eps = vcompose(&alpha, &psi_inv)?;

        // Triangle 1: εL ∘ Lη = 1_L.
        let eps_l = whisker_right(&eps, l)?;
        let l_eta = whisker_left(l, eta)?;
        let tri_left = vcompose(&eps_l, &l_eta)?.components().to_vec()
            == l
                .shape()
                .objects()
                .map(|a| l.apply_mor(a_cat.identity_of(a)))
                .collect::<Vec<_>>();
        // Triangle 2: Rε ∘ ηR = 1_R.
        let r_eps = whisker_left(r, &eps)?;
        let eta_r = whisker_right(eta, r)?;
        let tri_right = vcompose(&r_eps, &eta_r)?.components().to_vec()
            == r
                .shape()
                .objects()
                .map(|b| r.apply_mor(b_cat.identity_of(b)))
                .collect::<Vec<_>>();

        counit = Some(eps);
        triangles = Some(TriangleReport {
            left: tri_left,
            right: tri_right,
        });
    }

    let holds = condition1.holds() && condition2.holds();
    Ok(AdjunctionReport {
        condition1,
        condition2,
        unit,
        counit,
        triangles,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{FinCategory, ObjIx};
    use std::sync::Arc;

    fn guard() -> SearchGuard {
        SearchGuard::default()
    }

    /// The Galois connection between the chains 0<1<2 and 0<1:
    /// L = (0,1,1), R = (0,2).
    fn galois() -> (Functor, Functor) {
        let a = Arc::new(FinCategory::chain(3));
        let b = Arc::new(FinCategory::chain(2));
        let l = Functor::between_posets(&a, &b, vec![ObjIx(0), ObjIx(1), ObjIx(1)]).unwrap();
        let r = Functor::between_posets(&b, &a, vec![ObjIx(0), ObjIx(2)]).unwrap();
        (l, r)
    }

    #[test]
    fn galois_connection_is_an_adjunction() {
        let (l, r) = galois();
        let report = adjunction_check(&l, &r, &guard()).unwrap();
        assert!(report.holds);
        let t = report.triangles.unwrap();
        assert!(t.left && t.right);
    }

    #[test]
    fn identity_adjunction() {
        let a = Arc::new(FinCategory::chain(3));
        let idf = Functor::identity(&a);
        let report = adjunction_check(&idf, &idf, &guard()).unwrap();
        assert!(report.holds);
        // Unit and counit are identity transformations.
        let unit = report.unit.unwrap();
        assert!(unit.components().iter().enumerate().all(|(i, &m)| {
            m == a.identity_of(ObjIx(i))
        }));
    }

    #[test]
    fn swapped_pair_fails_condition_one() {
        let (l, r) = galois();
        // Swap roles: R : B -> A on the left, L : A -> B on the right.
        let report = adjunction_check(&r, &l, &guard()).unwrap();
        assert!(!report.holds);
        assert!(!report.condition1.holds());
    }
}
