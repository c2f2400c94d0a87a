//! Limits computed as right extensions along the functor to the terminal
//! category, compared against the direct limit.

use std::sync::Arc;

use crate::ambient::{Cone, FinTarget, SetCat};
use crate::cat::{FinCategory, ObjIx};
use crate::diagram::{Diagram, SetFunctor};
use crate::error::Result;
use crate::guard::SearchGuard;
use crate::kan::{ran, KanExtension};
use crate::limits::{set_factor_cone, set_limit};
use crate::set::SetFn;

#[derive(Debug, Clone)]
pub struct LimitAsRanReport {
    pub kan: KanExtension<SetCat>,
    /// Value of the extension at the unique object.
    pub extension_value_size: usize,
    pub direct_limit_size: usize,
    /// Bijection from the extension value to the direct limit apex,
    /// commuting with all projections.
    pub comparison: SetFn,
    pub holds: bool,
}

/// Runs the right extension of `d` along `Δ : I -> 1` and checks that its
/// value at the unique object is the limit of `d`: a bijection commuting
/// with every projection.
pub fn limit_as_ran(d: &SetFunctor, guard: &SearchGuard) -> Result<LimitAsRanReport> {
    let one = Arc::new(FinCategory::terminal());
    let delta = Diagram::constant(d.shape().clone(), FinTarget::new(one), ObjIx(0));
    let kan = ran(&delta, d, guard)?;

    let direct = set_limit(d);

    // The comma category 1↓Δ is I itself (every witness is the identity);
    // the extension's limiting cone re-indexes the diagram along that
    // bijection of shapes. Factor it through the direct limit.
    let comma = &kan.commas[0];
    let cert_cone = match &kan.certificates[0] {
        crate::kan::Certificate::Limit(c) => c,
        crate::kan::Certificate::Colimit(_) => unreachable!("ran produces limit certificates"),
    };
    // Cone over d with apex = extension value: leg at shape object j is the
    // certificate leg at the comma object (j, id).
    let shape = d.shape();
    let legs: Vec<SetFn> = shape
        .objects()
        .map(|j| {
            // The witness is the unique identity of the terminal category.
            let o = comma.object_of_pair(j, crate::cat::MorIx(0)).ok_or(
                crate::error::Error::Internal("missing comma object in 1↓Δ".to_string()),
            )?;
            Ok(cert_cone.legs[o.0].clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let as_cone = Cone {
        apex: cert_cone.apex.clone(),
        legs,
        witness: Default::default(),
    };
    let comparison = set_factor_cone(d, &direct, &as_cone)?;

    let holds = comparison.is_bijection();
    Ok(LimitAsRanReport {
        extension_value_size: cert_cone.apex.size(),
        direct_limit_size: direct.apex.size(),
        comparison,
        holds,
        kan,
    })
}
