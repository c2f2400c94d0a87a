//! The codensity monad of a set-valued functor: the right extension of the
//! functor along itself, materialised at a list of probe sets.
//!
//! At a probe `b`, `T(b)` is the limit of `G∘Π` over the comma category
//! `b↓G`, whose objects are pairs `(d, w : b -> G d)`. The unit sends `y` to
//! the evaluation family `(d, w) ↦ w(y)`; the multiplication re-indexes a
//! family over `T(b)↓G` along the projections `(d, w) ↦ (d, proj_w)`.
//!
//! `T(T(b))` is doubly exponential in `|T(b)|`, so the square tables, the
//! materialised multiplication and its independent cross-checks are built
//! only where the guard admits them. The unit laws are evaluated lazily and
//! never need the square; associativity is checked in its equivalent
//! extension form, quantified over all elements and all arrows
//! `b -> T(c)`, `c -> T(e)` between probes.

use std::collections::BTreeMap;

use crate::ambient::{Cone, SetCat};
use crate::cat::ObjIx;
use crate::comma::{elements_covariant, ElementsCategory};
use crate::diagram::SetFunctor;
use crate::error::{Error, Result};
use crate::guard::SearchGuard;
use crate::kan::SetEndofunctor;
use crate::limits::{set_factor_cone, set_limit};
use crate::search::cartesian_indices;
use crate::set::{all_functions, function_count, FinSet, SetFn};

/// The materialised limit data of `T` at one set.
#[derive(Debug, Clone)]
pub struct ProbeTable {
    pub probe: FinSet,
    /// The comma category `probe↓G` (as a category of elements of
    /// `hom(probe, G-)`).
    pub comma: ElementsCategory,
    /// Per comma object, the witness function `probe -> G(d)`.
    pub witnesses: Vec<SetFn>,
    /// `T(probe)`: the limit apex.
    pub value: FinSet,
    /// Limit families: `families[t][o]` is the member of `G(d_o)` assigned
    /// by element `t` at comma object `o`.
    pub families: Vec<Vec<usize>>,
    /// Limit projections `T(probe) -> G(d_o)`.
    pub legs: Vec<SetFn>,
    /// `η : probe -> T(probe)`.
    pub unit: SetFn,
    /// Data at `T(T(probe))`, when within guard.
    pub square: Option<Box<SquareData>>,
    diagram: SetFunctor,
    cone: Cone<SetCat>,
    family_index: BTreeMap<Vec<usize>, usize>,
    /// `(d, witness table) -> comma object position`.
    comma_lookup: BTreeMap<(ObjIx, Vec<usize>), usize>,
}

/// The square tables of one probe: `T²` with its multiplication and the
/// independently computed cross-check.
#[derive(Debug, Clone)]
pub struct SquareData {
    /// The materialisation of `T` at `T(probe)`.
    pub table: ProbeTable,
    /// The re-indexed cone over the probe's diagram with apex `T²(probe)`:
    /// leg at comma object `o` is the square projection at `(d_o, proj_o)`.
    pub cone_legs: Vec<SetFn>,
    /// `μ : T²(probe) -> T(probe)` from the canonical re-indexing formula.
    pub mult: SetFn,
    /// The same morphism obtained by factoring the re-indexed cone through
    /// the limit: an independent code path.
    pub mult_by_factoring: SetFn,
}

impl ProbeTable {
    pub fn mult(&self) -> Option<&SetFn> {
        self.square.as_ref().map(|s| &s.mult)
    }

    pub fn square_value(&self) -> Option<&FinSet> {
        self.square.as_ref().map(|s| &s.table.value)
    }

    fn locate(&self, family: &[usize]) -> Result<usize> {
        self.family_index
            .get(family)
            .copied()
            .ok_or_else(|| Error::Internal("incompatible codensity family".to_string()))
    }

    fn comma_position(&self, d: ObjIx, table: &[usize]) -> Result<usize> {
        self.comma_lookup
            .get(&(d, table.to_vec()))
            .copied()
            .ok_or_else(|| Error::Internal("missing codensity comma object".to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct MonadLaws {
    /// `μ ∘ Tη = 1` element-by-element over `T(b)` at every probe.
    pub left_unit: bool,
    /// `μ ∘ ηT = 1` element-by-element over `T(b)` at every probe.
    pub right_unit: bool,
    /// Associativity in extension form over every probe triple: for all
    /// `x ∈ T(b)`, `k : b -> T(c)`, `l : c -> T(e)`,
    /// `bind(bind(x,k),l) = bind(x, y ↦ bind(k(y),l))`.
    pub associativity: bool,
    /// Wherever `μ` is materialised, the canonical formula agrees with the
    /// unique factorisation through the limit (and, where small enough,
    /// with a brute-force uniqueness search over all candidate functions).
    pub mult_agreement: bool,
    /// `T(u) ∘ η_b = η_c ∘ u` for every function `u` between probes.
    pub unit_natural: bool,
    /// `T(u) ∘ μ_b = μ_c ∘ T²(u)` over probe pairs with materialised
    /// squares.
    pub mult_natural: bool,
    /// Skipped checks (guard-limited squares and similar).
    pub notes: Vec<String>,
}

impl MonadLaws {
    pub fn all_hold(&self) -> bool {
        self.left_unit
            && self.right_unit
            && self.associativity
            && self.mult_agreement
            && self.unit_natural
            && self.mult_natural
    }
}

#[derive(Debug, Clone)]
pub struct CodensityMonad {
    pub g: SetFunctor,
    pub probes: Vec<ProbeTable>,
    pub laws: MonadLaws,
}

/// Materialises the limit data of `T` at `base`.
fn materialize(g: &SetFunctor, base: &FinSet, guard: &SearchGuard) -> Result<ProbeTable> {
    let d_cat = g.shape().clone();
    let comma_estimate: f64 = d_cat
        .objects()
        .map(|d| function_count(base, g.set_at(d)))
        .sum();
    guard.admit(comma_estimate, "codensity comma objects at a probe")?;
    let family_estimate = square_family_estimate(g, base);
    guard.admit(family_estimate, "codensity limit families at a probe")?;

    let hom_from_base = SetEndofunctor::representable(base.clone()).apply_diagram(g)?;
    let comma = elements_covariant(&hom_from_base);
    let witnesses: Vec<SetFn> = comma
        .pairs
        .iter()
        .map(|&(d, xi)| all_functions(base, g.set_at(d))[xi].clone())
        .collect();
    let comma_lookup: BTreeMap<(ObjIx, Vec<usize>), usize> = comma
        .pairs
        .iter()
        .enumerate()
        .map(|(i, &(d, _))| ((d, witnesses[i].table().to_vec()), i))
        .collect();
    let diagram = g.precompose(&comma.projection)?;
    let cone = set_limit(&diagram);
    let families = cone.witness.families.clone();
    let family_index: BTreeMap<Vec<usize>, usize> = families
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();

    // Unit: y ↦ the evaluation family.
    let mut unit_table = Vec::with_capacity(base.size());
    for y in 0..base.size() {
        let fam: Vec<usize> = witnesses.iter().map(|w| w.apply(y)).collect();
        unit_table.push(
            family_index
                .get(&fam)
                .copied()
                .ok_or_else(|| Error::Internal("unit family is not compatible".to_string()))?,
        );
    }
    let unit = SetFn::new(base.clone(), cone.apex.clone(), unit_table)?;

    Ok(ProbeTable {
        probe: base.clone(),
        comma,
        witnesses,
        value: cone.apex.clone(),
        families,
        legs: cone.legs.clone(),
        unit,
        square: None,
        diagram,
        cone,
        family_index,
        comma_lookup,
    })
}

/// `∏_d |G d|^(|G d|^|base|)` as a float: the number of limit families at
/// `base` before the compatibility filter.
fn square_family_estimate(g: &SetFunctor, base: &FinSet) -> f64 {
    g.shape()
        .objects()
        .map(|d| (g.set_at(d).size() as f64).powf(function_count(base, g.set_at(d))))
        .product()
}

fn build_square(g: &SetFunctor, p: &ProbeTable, guard: &SearchGuard) -> Result<SquareData> {
    let square = materialize(g, &p.value, guard)?;

    // positions of (d_o, proj_o) inside the square comma
    let reindex: Vec<usize> = p
        .comma
        .pairs
        .iter()
        .enumerate()
        .map(|(o, &(d, _))| square.comma_position(d, p.legs[o].table()))
        .collect::<Result<Vec<_>>>()?;

    let mut mult_table = Vec::with_capacity(square.value.size());
    for z in 0..square.value.size() {
        let fam: Vec<usize> = reindex.iter().map(|&pos| square.families[z][pos]).collect();
        mult_table.push(p.locate(&fam)?);
    }
    let mult = SetFn::new(square.value.clone(), p.value.clone(), mult_table)?;

    let cone_legs: Vec<SetFn> = reindex
        .iter()
        .enumerate()
        .map(|(o, &pos)| {
            SetFn::tabulate(
                square.value.clone(),
                p.diagram.set_at(ObjIx(o)).clone(),
                |z| square.families[z][pos],
            )
        })
        .collect();
    let transported = Cone {
        apex: square.value.clone(),
        legs: cone_legs.clone(),
        witness: Default::default(),
    };
    let mult_by_factoring = set_factor_cone(&p.diagram, &p.cone, &transported)?;

    Ok(SquareData {
        table: square,
        cone_legs,
        mult,
        mult_by_factoring,
    })
}

/// Precomputes, for a Kleisli arrow `k : b -> T(c)` (given as rows of
/// `T(c)`), the comma position of `proj_w ∘ k` in `b↓G` for every comma
/// object `(d, w)` of `c↓G`.
fn bind_positions(pb: &ProbeTable, pc: &ProbeTable, k: &[usize]) -> Result<Vec<usize>> {
    pc.comma
        .pairs
        .iter()
        .enumerate()
        .map(|(o, &(d, _))| {
            let table: Vec<usize> = k.iter().map(|&ky| pc.legs[o].apply(ky)).collect();
            pb.comma_position(d, &table)
        })
        .collect()
}

/// `bind(x, k)` evaluated through precomputed positions.
fn bind_apply(pb: &ProbeTable, pc: &ProbeTable, x: usize, positions: &[usize]) -> Result<usize> {
    let fam: Vec<usize> = positions.iter().map(|&p| pb.families[x][p]).collect();
    pc.locate(&fam)
}

/// `T(u) : T(b) -> T(c)` for a function `u` between the probes.
fn t_apply(pb: &ProbeTable, pc: &ProbeTable, u: &SetFn) -> Result<SetFn> {
    let positions: Vec<usize> = pc
        .comma
        .pairs
        .iter()
        .enumerate()
        .map(|(o, &(d, _))| {
            let composed = SetFn::compose(&pc.witnesses[o], u);
            pb.comma_position(d, composed.table())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = Vec::with_capacity(pb.value.size());
    for t in 0..pb.value.size() {
        let fam: Vec<usize> = positions.iter().map(|&p| pb.families[t][p]).collect();
        table.push(pc.locate(&fam)?);
    }
    SetFn::new(pb.value.clone(), pc.value.clone(), table)
}

impl CodensityMonad {
    /// The action of `T` on a function between two probes.
    pub fn t_on_function(&self, from: usize, to: usize, u: &SetFn) -> Result<SetFn> {
        t_apply(&self.probes[from], &self.probes[to], u)
    }
}

/// Builds the codensity monad of `g` at the given probes and checks the
/// monad laws.
pub fn codensity(
    g: &SetFunctor,
    probe_sets: &[FinSet],
    guard: &SearchGuard,
) -> Result<CodensityMonad> {
    let mut probes = Vec::with_capacity(probe_sets.len());
    for b in probe_sets {
        probes.push(materialize(g, b, guard)?);
    }
    let mut notes = Vec::new();

    // Square tables and μ where the guard admits them.
    for p in probes.iter_mut() {
        let comma_estimate: f64 = g
            .shape()
            .objects()
            .map(|d| function_count(&p.value, g.set_at(d)))
            .sum();
        let family_estimate = square_family_estimate(g, &p.value);
        if comma_estimate > guard.cap as f64 || family_estimate > guard.cap as f64 {
            notes.push(format!(
                "square at probe of size {} not materialised (estimate {:.3e} families)",
                p.probe.size(),
                family_estimate
            ));
            continue;
        }
        let square = build_square(g, p, guard)?;
        p.square = Some(Box::new(square));
    }

    // Unit laws, evaluated lazily through the tables.
    let mut left_unit = true;
    let mut right_unit = true;
    for p in &probes {
        // The component of μ(Tη(t)) at comma object o is t's family value
        // at the position of legs[o]∘η.
        let eta_positions: Vec<usize> = p
            .comma
            .pairs
            .iter()
            .enumerate()
            .map(|(o, &(d, _))| {
                let composed = SetFn::compose(&p.legs[o], &p.unit);
                p.comma_position(d, composed.table())
            })
            .collect::<Result<Vec<_>>>()?;
        for t in 0..p.value.size() {
            for (o, &pos) in eta_positions.iter().enumerate() {
                if p.families[t][pos] != p.families[t][o] {
                    left_unit = false;
                }
            }
            // μ(η_{T b}(t)) at o is proj_o(t).
            for (o, leg) in p.legs.iter().enumerate() {
                if leg.apply(t) != p.families[t][o] {
                    right_unit = false;
                }
            }
        }
    }

    // Associativity in extension form over all probe triples.
    let mut associativity = true;
    for pb in &probes {
        for pc in &probes {
            for pe in &probes {
                let pairs_estimate = (pc.value.size() as f64).powi(pb.probe.size() as i32)
                    * (pe.value.size() as f64).powi(pc.probe.size() as i32);
                if pairs_estimate > guard.cap as f64 {
                    notes.push(format!(
                        "associativity triple ({},{},{}) skipped (estimate {:.3e} arrow pairs)",
                        pb.probe.size(),
                        pc.probe.size(),
                        pe.probe.size(),
                        pairs_estimate
                    ));
                    continue;
                }
                for k in cartesian_indices(&vec![pc.value.size(); pb.probe.size()]) {
                    let pos_k = bind_positions(pb, pc, &k)?;
                    for l in cartesian_indices(&vec![pe.value.size(); pc.probe.size()]) {
                        let pos_l = bind_positions(pc, pe, &l)?;
                        // composite arrow y ↦ bind(k(y), l)
                        let kl: Vec<usize> = k
                            .iter()
                            .map(|&ky| bind_apply(pc, pe, ky, &pos_l))
                            .collect::<Result<Vec<_>>>()?;
                        let pos_kl = bind_positions(pb, pe, &kl)?;
                        for x in 0..pb.value.size() {
                            let lhs =
                                bind_apply(pc, pe, bind_apply(pb, pc, x, &pos_k)?, &pos_l)?;
                            let rhs = bind_apply(pb, pe, x, &pos_kl)?;
                            if lhs != rhs {
                                associativity = false;
                            }
                        }
                    }
                }
            }
        }
    }

    // μ agreement: canonical vs factoring, plus a brute-force uniqueness
    // search over every candidate function where that is feasible.
    let mut mult_agreement = true;
    for p in &probes {
        let Some(square) = &p.square else { continue };
        if square.mult != square.mult_by_factoring {
            mult_agreement = false;
        }
        let square_size = square.table.value.size();
        let brute_estimate = (p.value.size() as f64).powf(square_size as f64);
        if brute_estimate <= guard.cap as f64 {
            let mut survivors = 0usize;
            let mut matches_canonical = false;
            for cand in cartesian_indices(&vec![p.value.size(); square_size]) {
                // The candidate must commute with every projection:
                // legs[o](cand(z)) == cone_legs[o](z).
                let ok = (0..p.legs.len()).all(|o| {
                    (0..square_size)
                        .all(|z| p.legs[o].apply(cand[z]) == square.cone_legs[o].apply(z))
                });
                if ok {
                    survivors += 1;
                    if cand == square.mult.table() {
                        matches_canonical = true;
                    }
                }
            }
            if survivors != 1 || !matches_canonical {
                mult_agreement = false;
            }
        } else {
            notes.push(format!(
                "brute-force μ uniqueness at probe of size {} skipped (estimate {:.3e})",
                p.probe.size(),
                brute_estimate
            ));
        }
    }

    // Naturality of the unit over every function between probes.
    let mut unit_natural = true;
    for pb in &probes {
        for pc in &probes {
            for u in all_functions(&pb.probe, &pc.probe) {
                let tu = t_apply(pb, pc, &u)?;
                for y in 0..pb.probe.size() {
                    if tu.apply(pb.unit.apply(y)) != pc.unit.apply(u.apply(y)) {
                        unit_natural = false;
                    }
                }
            }
        }
    }

    // Naturality of μ over probe pairs with materialised squares.
    let mut mult_natural = true;
    for pb in &probes {
        for pc in &probes {
            let (Some(sq_b), Some(sq_c)) = (&pb.square, &pc.square) else {
                continue;
            };
            for u in all_functions(&pb.probe, &pc.probe) {
                let tu = t_apply(pb, pc, &u)?;
                // T²(u) : T²(b) -> T²(c), computed through the square tables.
                let positions: Vec<usize> = sq_c
                    .table
                    .comma
                    .pairs
                    .iter()
                    .enumerate()
                    .map(|(o, &(d, _))| {
                        let composed = SetFn::compose(&sq_c.table.witnesses[o], &tu);
                        sq_b.table.comma_position(d, composed.table())
                    })
                    .collect::<Result<Vec<_>>>()?;
                for z in 0..sq_b.table.value.size() {
                    let fam: Vec<usize> = positions
                        .iter()
                        .map(|&pos| sq_b.table.families[z][pos])
                        .collect();
                    let t2u_z = sq_c.table.locate(&fam)?;
                    if tu.apply(sq_b.mult.apply(z)) != sq_c.mult.apply(t2u_z) {
                        mult_natural = false;
                    }
                }
            }
        }
    }
    for p in &probes {
        if p.square.is_none() {
            notes.push(format!(
                "μ naturality through the probe of size {} unchecked (square not materialised)",
                p.probe.size()
            ));
        }
    }

    let laws = MonadLaws {
        left_unit,
        right_unit,
        associativity,
        mult_agreement,
        unit_natural,
        mult_natural,
        notes,
    };
    Ok(CodensityMonad {
        g: g.clone(),
        probes,
        laws,
    })
}
