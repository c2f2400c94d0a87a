//! Error and violation-report types shared across the crate.

use std::fmt;

/// A single broken category axiom, reported with the offending identifiers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryViolation {
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism id `{0}`")]
    DuplicateMorphism(String),
    #[error("{context} references unknown object `{object}`")]
    UnknownObject { context: String, object: String },
    #[error("{context} references unknown morphism `{morphism}`")]
    UnknownMorphism { context: String, morphism: String },
    #[error("object `{object}` has no identity morphism")]
    MissingIdentity { object: String },
    #[error("identity `{morphism}` of `{object}` does not have `{object}` as both endpoints")]
    IdentityEndpoints { object: String, morphism: String },
    #[error("composition not total: no entry for `{g}` after `{f}`")]
    CompositionMissing { g: String, f: String },
    #[error("composition entry (`{g}`, `{f}`) is not a composable pair")]
    NotComposable { g: String, f: String },
    #[error("conflicting composition entries for (`{g}`, `{f}`)")]
    CompositionConflict { g: String, f: String },
    #[error("composite `{gf}` of (`{g}`, `{f}`) has wrong endpoints")]
    CompositeEndpoints { g: String, f: String, gf: String },
    #[error("identity law fails: `{composite}` != `{f}` (composing `{f}` with an identity)")]
    IdentityLaw { f: String, composite: String },
    #[error("associativity fails on (`{h}`, `{g}`, `{f}`)")]
    Associativity { h: String, g: String, f: String },
}

/// A single broken functor law.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramViolation {
    #[error("value of morphism `{morphism}` has endpoints that disagree with the object map")]
    EndpointMismatch { morphism: String },
    #[error("identity of `{object}` is not sent to an identity")]
    IdentityNotPreserved { object: String },
    #[error("composition not preserved on (`{g}`, `{f}`)")]
    CompositionNotPreserved { g: String, f: String },
}

/// A single broken naturality condition.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformationViolation {
    #[error("source and target functors are not parallel")]
    NotParallel,
    #[error("component at `{object}` has wrong endpoints")]
    ComponentEndpoints { object: String },
    #[error("naturality square fails at `{morphism}` (objects `{dom}` -> `{cod}`)")]
    Naturality {
        morphism: String,
        dom: String,
        cod: String,
    },
}

macro_rules! report_type {
    ($name:ident, $violation:ty, $label:literal) => {
        /// A list of violations found during validation; empty means valid.
        #[derive(Debug, Clone, PartialEq, Eq)]
        pub struct $name {
            pub violations: Vec<$violation>,
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                writeln!(f, "{} ({} violations):", $label, self.violations.len())?;
                for v in &self.violations {
                    writeln!(f, "  - {v}")?;
                }
                Ok(())
            }
        }

        impl std::error::Error for $name {}
    };
}

report_type!(CategoryReport, CategoryViolation, "invalid category");
report_type!(DiagramReport, DiagramViolation, "invalid functor");
report_type!(
    TransformationReport,
    TransformationViolation,
    "invalid natural transformation"
);

/// Top-level error type for engine operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("search space estimate {estimate:.4e} exceeds guard cap {cap} ({context})")]
    GuardExceeded {
        estimate: f64,
        cap: u64,
        context: String,
    },
    #[error("no colimit exists in the target category ({context})")]
    NoColimit { context: String },
    #[error("no limit exists in the target category ({context})")]
    NoLimit { context: String },
    #[error("universal property violated: {survivors} factorisations found ({context})")]
    Universality { survivors: usize, context: String },
    #[error("incompatible inputs: {0}")]
    Mismatch(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unsupported endofunctor value: {0}")]
    UnsupportedValue(String),
    #[error(transparent)]
    InvalidCategory(#[from] CategoryReport),
    #[error(transparent)]
    InvalidDiagram(#[from] DiagramReport),
    #[error(transparent)]
    InvalidTransformation(#[from] TransformationReport),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
