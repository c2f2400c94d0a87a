//! Monotone extensions along a chain inclusion: the left extension takes
//! pointwise suprema of the values below, the right extension pointwise
//! infima of the values above. Empty approximation sets are reported as
//! undefined rather than silently filled with a bottom or top element.

use std::sync::Arc;

use crate::ambient::{Ambient, FinTarget};
use crate::cat::{FinCategory, ObjIx};
use crate::comma::{comma_left, comma_right};
use crate::diagram::Functor;
use crate::error::{Error, Result};
use crate::guard::SearchGuard;
use crate::kan::{lan, ran, KanExtension};

/// One entry of an extension table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderValue {
    Value(ObjIx),
    /// The approximation set at this point is empty; the engine does not
    /// invent a bottom/top element.
    UndefinedEmpty,
}

#[derive(Debug, Clone)]
pub struct OrderExtensionReport {
    /// The inclusion functor built from the object names.
    pub inclusion: Functor,
    /// Per object of the super-chain: the left extension value (sup of the
    /// values below) or undefined.
    pub lan_table: Vec<OrderValue>,
    /// Per object of the super-chain: the right extension value (inf of the
    /// values above) or undefined.
    pub ran_table: Vec<OrderValue>,
    /// The sup/inf oracle tables computed directly from the order.
    pub sup_oracle: Vec<OrderValue>,
    pub inf_oracle: Vec<OrderValue>,
    /// Full extensions, available when no approximation set is empty.
    pub lan_extension: Option<KanExtension<FinTarget>>,
    pub ran_extension: Option<KanExtension<FinTarget>>,
    /// Engine tables agree with the sup/inf oracle at every defined point.
    pub holds: bool,
}

/// Extends a monotone map `x : Qsub -> V` along the full chain inclusion
/// `Qsub ⊆ Rsup` in both directions and checks the comma-formula values
/// against the direct sup/inf description.
pub fn order_extension(
    qsub: &Arc<FinCategory>,
    rsup: &Arc<FinCategory>,
    x: &Functor,
    guard: &SearchGuard,
) -> Result<OrderExtensionReport> {
    if **x.shape() != **qsub {
        return Err(Error::Mismatch(
            "the monotone map must be defined on the sub-chain".to_string(),
        ));
    }
    let inclusion = Functor::inclusion_by_names(qsub, rsup)?;
    if !inclusion.is_fully_faithful() {
        return Err(Error::Mismatch(
            "the sub-chain must include fully faithfully".to_string(),
        ));
    }
    let v_cat = x.target().category().clone();
    let v_is_chain = v_cat.objects().all(|i| {
        v_cat
            .objects()
            .all(|j| i == j || v_cat.hom_size(i, j) + v_cat.hom_size(j, i) == 1)
    });
    if !v_is_chain {
        return Err(Error::Mismatch(
            "the value category must be a finite chain".to_string(),
        ));
    }

    // Pointwise comma (co)limits, skipping empty approximation sets.
    let mut lan_table = Vec::with_capacity(rsup.object_count());
    let mut ran_table = Vec::with_capacity(rsup.object_count());
    let mut any_empty_down = false;
    let mut any_empty_up = false;
    for b in rsup.objects() {
        let down = comma_left(&inclusion, b)?;
        if down.cat.object_count() == 0 {
            any_empty_down = true;
            lan_table.push(OrderValue::UndefinedEmpty);
        } else {
            let diagram = x.precompose(&down.projection)?;
            let cocone = x.target().colimit(&diagram, guard)?;
            lan_table.push(OrderValue::Value(cocone.apex));
        }
        let up = comma_right(b, &inclusion)?;
        if up.cat.object_count() == 0 {
            any_empty_up = true;
            ran_table.push(OrderValue::UndefinedEmpty);
        } else {
            let diagram = x.precompose(&up.projection)?;
            let cone = x.target().limit(&diagram, guard)?;
            ran_table.push(OrderValue::Value(cone.apex));
        }
    }

    // Direct sup/inf oracle over the order (chains: sup = max, inf = min),
    // phrased via the hom relation so that object listing order is
    // irrelevant.
    let sup_of = |vals: &[ObjIx]| -> OrderValue {
        match vals
            .iter()
            .copied()
            .find(|&m| vals.iter().all(|&s| v_cat.hom_size(s, m) > 0))
        {
            Some(m) => OrderValue::Value(m),
            None => OrderValue::UndefinedEmpty,
        }
    };
    let inf_of = |vals: &[ObjIx]| -> OrderValue {
        match vals
            .iter()
            .copied()
            .find(|&m| vals.iter().all(|&s| v_cat.hom_size(m, s) > 0))
        {
            Some(m) => OrderValue::Value(m),
            None => OrderValue::UndefinedEmpty,
        }
    };
    let mut sup_oracle = Vec::with_capacity(rsup.object_count());
    let mut inf_oracle = Vec::with_capacity(rsup.object_count());
    for b in rsup.objects() {
        let below: Vec<ObjIx> = qsub
            .objects()
            .filter(|&q| rsup.hom_size(inclusion.apply_obj(q), b) > 0)
            .map(|q| x.apply_obj(q))
            .collect();
        sup_oracle.push(sup_of(&below));
        let above: Vec<ObjIx> = qsub
            .objects()
            .filter(|&q| rsup.hom_size(b, inclusion.apply_obj(q)) > 0)
            .map(|q| x.apply_obj(q))
            .collect();
        inf_oracle.push(inf_of(&above));
    }

    let holds = lan_table == sup_oracle && ran_table == inf_oracle;

    // The full functorial extensions exist when nothing is undefined.
    let lan_extension = if any_empty_down {
        None
    } else {
        Some(lan(&inclusion, x, guard)?)
    };
    let ran_extension = if any_empty_up {
        None
    } else {
        Some(ran(&inclusion, x, guard)?)
    };
    // Sanity: the functorial extensions agree with the pointwise tables.
    if let Some(kan) = &lan_extension {
        for b in rsup.objects() {
            if OrderValue::Value(kan.ext.apply_obj(b)) != lan_table[b.0] {
                return Err(Error::Internal(
                    "functorial left extension disagrees with the pointwise table".to_string(),
                ));
            }
        }
    }
    if let Some(kan) = &ran_extension {
        for b in rsup.objects() {
            if OrderValue::Value(kan.ext.apply_obj(b)) != ran_table[b.0] {
                return Err(Error::Internal(
                    "functorial right extension disagrees with the pointwise table".to_string(),
                ));
            }
        }
    }

    Ok(OrderExtensionReport {
        inclusion,
        lan_table,
        ran_table,
        sup_oracle,
        inf_oracle,
        lan_extension,
        ran_extension,
        holds,
    })
}
