//! Deterministic desk-scale instance generators used by the verification
//! suites: the standard small-category corpus, exhaustive set-functor
//! enumeration, and a seeded generator for randomised instances.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ambient::SetCat;
use crate::cat::{FinCategory, MorIx, ObjIx};
use crate::diagram::{Diagram, Functor, SetFunctor};
use crate::set::{FinSet, SetFn};

/// A tiny deterministic PRNG (splitmix64), fixed forever so that seeded
/// instances never change across runs or platforms.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (n > 0).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// The small-category corpus: chains up to the given length, discrete
/// categories up to the given size, the arrow category, and the commuting
/// square.
pub fn standard_corpus(max_chain: usize, max_discrete: usize) -> Vec<Arc<FinCategory>> {
    let mut out = Vec::new();
    for n in 1..=max_chain {
        out.push(Arc::new(FinCategory::chain(n)));
    }
    let names = ["a", "b", "c", "d", "e", "f"];
    for n in 1..=max_discrete {
        out.push(Arc::new(FinCategory::discrete(&names[..n])));
    }
    out.push(Arc::new(FinCategory::chain(2))); // the arrow category
    out.push(Arc::new(FinCategory::commutative_square()));
    out
}

/// All set-functors on `shape` whose value sets are canonical sets of size
/// `0..=max_size`, enumerated deterministically. Shapes with relations are
/// handled by the consistency filter of the generator closure.
pub fn all_set_functors(shape: &Arc<FinCategory>, max_size: usize) -> Vec<SetFunctor> {
    let generators = shape.generating_morphisms();
    let n = shape.object_count();
    let mut out = Vec::new();
    for sizes in crate::search::cartesian_indices(&vec![max_size + 1; n]) {
        let sets: Vec<FinSet> = sizes.iter().map(|&s| FinSet::canonical(s, "v")).collect();
        // Enumerate generator assignments; each generator m needs a function
        // set(dom m) -> set(cod m). Function lists are built once per size
        // combination.
        let choices: Vec<Vec<SetFn>> = generators
            .iter()
            .map(|&m| {
                crate::set::all_functions(&sets[shape.dom(m).0], &sets[shape.cod(m).0])
            })
            .collect();
        let fn_counts: Vec<usize> = choices.iter().map(Vec::len).collect();
        for combo in crate::search::cartesian_indices(&fn_counts) {
            let gens: BTreeMap<MorIx, SetFn> = generators
                .iter()
                .enumerate()
                .map(|(gi, &m)| (m, choices[gi][combo[gi]].clone()))
                .collect();
            if let Ok(d) = Diagram::from_generators(shape.clone(), SetCat, sets.clone(), &gens) {
                out.push(d);
            }
        }
    }
    out
}

/// A seeded random set-functor on `shape` with value sets of size
/// `0..=max_size` (or `1..=max_size` when `allow_empty` is false). Retries
/// until the generator assignment closes consistently.
pub fn random_set_functor(
    shape: &Arc<FinCategory>,
    max_size: usize,
    allow_empty: bool,
    rng: &mut Rng,
) -> SetFunctor {
    let generators = shape.generating_morphisms();
    loop {
        let lo = if allow_empty { 0 } else { 1 };
        let sets: Vec<FinSet> = shape
            .objects()
            .map(|_| FinSet::canonical(lo + rng.below(max_size + 1 - lo), "v"))
            .collect();
        let mut gens: BTreeMap<MorIx, SetFn> = BTreeMap::new();
        let mut ok = true;
        for &m in &generators {
            let dom = &sets[shape.dom(m).0];
            let cod = &sets[shape.cod(m).0];
            if dom.size() > 0 && cod.size() == 0 {
                ok = false;
                break;
            }
            let table: Vec<usize> = (0..dom.size()).map(|_| rng.below(cod.size())).collect();
            gens.insert(m, SetFn::new(dom.clone(), cod.clone(), table).unwrap());
        }
        if !ok {
            continue;
        }
        if let Ok(d) = Diagram::from_generators(shape.clone(), SetCat, sets, &gens) {
            return d;
        }
    }
}

/// A seeded random monotone functor between posets (retries until the
/// random object map is monotone).
pub fn random_poset_functor(
    src: &Arc<FinCategory>,
    tgt: &Arc<FinCategory>,
    rng: &mut Rng,
) -> Functor {
    loop {
        let map: Vec<ObjIx> = src
            .objects()
            .map(|_| ObjIx(rng.below(tgt.object_count())))
            .collect();
        if let Ok(f) = Functor::between_posets(src, tgt, map) {
            return f;
        }
    }
}

/// All monotone maps between two posets, as functors.
pub fn all_poset_functors(src: &Arc<FinCategory>, tgt: &Arc<FinCategory>) -> Vec<Functor> {
    crate::search::cartesian_indices(&vec![tgt.object_count(); src.object_count()])
        .filter_map(|map| {
            Functor::between_posets(src, tgt, map.into_iter().map(ObjIx).collect()).ok()
        })
        .collect()
}
