//! Exact computation over explicitly finite categories.
//!
//! The crate provides validated finite categories, functors and natural
//! transformations, finite-set (co)limits with universality witnesses,
//! comma categories, and pointwise left/right Kan extensions computed by
//! the comma-category (co)limit formulas. On top of the engine sit
//! executable constructions and checks: limits as right extensions, a
//! two-condition adjunction criterion, codensity monads, Yoneda/coYoneda,
//! density of representables, nerve/realization, and monotone order
//! extensions.
//!
//! Everything is desk-scale and exhaustive: universal properties are
//! verified by complete enumeration behind explicit size guards, and all
//! outputs are deterministic (canonical labels, fixed orders).

pub mod ambient;
pub mod cat;
pub mod comma;
pub mod constructions;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod guard;
pub mod hom_search;
pub mod kan;
pub mod limits;
pub mod search;
pub mod set;
pub mod transform;

pub use ambient::{Ambient, Cocone, Cone, FamilyWitness, FinTarget, QuotientWitness, SetCat};
pub use cat::{CategoryBuilder, FinCategory, MorIx, ObjIx};
pub use comma::{
    comma_left, comma_right, elements_covariant, elements_presheaf, induced_comma_functor,
    CommaCategory, CommaSide, ElementsCategory,
};
pub use diagram::{representable, representable_contra, Diagram, Functor, SetFunctor, Variance};
pub use error::{
    CategoryReport, CategoryViolation, DiagramReport, DiagramViolation, Error, Result,
    TransformationReport, TransformationViolation,
};
pub use guard::SearchGuard;
pub use hom_search::{find_natural_iso, nat_hom, nat_hom_count};
pub use kan::{
    hom_bijection_check, lan, preservation_check, ran, verify_universal, Certificate, Direction,
    HomBijectionReport, KanExtension, PreservationReport, SetEndofunctor, TabulatedEndo,
};
pub use limits::{colimit, limit};
pub use transform::{vcompose, whisker_left, whisker_right, Transformation};

// Every value is immutable after validation and may be shared across
// threads freely.
const _: () = {
    const fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<FinCategory>();
    assert_send_sync::<SetFunctor>();
    assert_send_sync::<Functor>();
    assert_send_sync::<Transformation<SetCat>>();
    assert_send_sync::<KanExtension<SetCat>>();
};
