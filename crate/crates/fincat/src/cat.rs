//! Finite categories given by explicit, total tables.
//!
//! A [`FinCategory`] stores its objects, morphisms, identity assignment and
//! the full composition table keyed `(g, f) -> g∘f` ("g after f"). Validation
//! checks the axioms exhaustively: totality of composition on composable
//! pairs, the identity laws, and associativity over every composable triple.
//! No operation in this crate accepts an unvalidated category.

use std::collections::BTreeMap;

use crate::error::{CategoryReport, CategoryViolation};

/// Index of an object inside a [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjIx(pub usize);

/// Index of a morphism inside a [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorIx(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
struct MorRecord {
    name: String,
    dom: ObjIx,
    cod: ObjIx,
}

/// A finite category with identifier-based equality on the tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<MorRecord>,
    identity: Vec<MorIx>,
    compose: BTreeMap<(MorIx, MorIx), MorIx>,
}

/// Raw tables for a category, validated by [`CategoryBuilder::build`].
///
/// Compositions with an identity factor may be omitted; they are forced by
/// the identity laws and filled in before validation. Explicitly supplied
/// entries are never overwritten, so a wrong explicit entry is still caught.
#[derive(Debug, Clone, Default)]
pub struct CategoryBuilder {
    pub objects: Vec<String>,
    /// `(id, dom, cod)` triples.
    pub morphisms: Vec<(String, String, String)>,
    /// `(object, identity morphism)` pairs.
    pub identities: Vec<(String, String)>,
    /// `(g, f, g∘f)` triples, meaning "g after f".
    pub compositions: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn morphism(mut self, id: &str, dom: &str, cod: &str) -> Self {
        self.morphisms
            .push((id.to_string(), dom.to_string(), cod.to_string()));
        self
    }

    pub fn identity(mut self, object: &str, id: &str) -> Self {
        self.identities.push((object.to_string(), id.to_string()));
        self
    }

    pub fn composite(mut self, g: &str, f: &str, gf: &str) -> Self {
        self.compositions
            .push((g.to_string(), f.to_string(), gf.to_string()));
        self
    }

    pub fn build(self) -> Result<FinCategory, CategoryReport> {
        let mut violations = Vec::new();

        let mut obj_index: BTreeMap<String, ObjIx> = BTreeMap::new();
        for (i, name) in self.objects.iter().enumerate() {
            if obj_index.insert(name.clone(), ObjIx(i)).is_some() {
                violations.push(CategoryViolation::DuplicateObject(name.clone()));
            }
        }

        let mut mor_index: BTreeMap<String, MorIx> = BTreeMap::new();
        let mut morphisms = Vec::new();
        for (i, (id, dom, cod)) in self.morphisms.iter().enumerate() {
            if mor_index.insert(id.clone(), MorIx(i)).is_some() {
                violations.push(CategoryViolation::DuplicateMorphism(id.clone()));
            }
            let dom_ix = obj_index.get(dom).copied();
            let cod_ix = obj_index.get(cod).copied();
            if dom_ix.is_none() {
                violations.push(CategoryViolation::UnknownObject {
                    context: format!("morphism `{id}`"),
                    object: dom.clone(),
                });
            }
            if cod_ix.is_none() {
                violations.push(CategoryViolation::UnknownObject {
                    context: format!("morphism `{id}`"),
                    object: cod.clone(),
                });
            }
            morphisms.push(MorRecord {
                name: id.clone(),
                dom: dom_ix.unwrap_or(ObjIx(0)),
                cod: cod_ix.unwrap_or(ObjIx(0)),
            });
        }
        if !violations.is_empty() {
            // Referential integrity failed; the axioms below would only
            // produce noise on top of placeholder indices.
            return Err(CategoryReport { violations });
        }

        // Identity table.
        let mut identity: Vec<Option<MorIx>> = vec![None; self.objects.len()];
        for (object, id) in &self.identities {
            let Some(&o) = obj_index.get(object) else {
                violations.push(CategoryViolation::UnknownObject {
                    context: "identity entry".to_string(),
                    object: object.clone(),
                });
                continue;
            };
            let Some(&m) = mor_index.get(id) else {
                violations.push(CategoryViolation::UnknownMorphism {
                    context: format!("identity entry for `{object}`"),
                    morphism: id.clone(),
                });
                continue;
            };
            if morphisms[m.0].dom != o || morphisms[m.0].cod != o {
                violations.push(CategoryViolation::IdentityEndpoints {
                    object: object.clone(),
                    morphism: id.clone(),
                });
            }
            identity[o.0] = Some(m);
        }
        for (i, slot) in identity.iter().enumerate() {
            if slot.is_none() {
                violations.push(CategoryViolation::MissingIdentity {
                    object: self.objects[i].clone(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(CategoryReport { violations });
        }
        let identity: Vec<MorIx> = identity.into_iter().map(Option::unwrap).collect();

        // Composition table, with identity entries inferred when omitted.
        let mut compose: BTreeMap<(MorIx, MorIx), MorIx> = BTreeMap::new();
        for (g, f, gf) in &self.compositions {
            let (Some(&gi), Some(&fi), Some(&gfi)) =
                (mor_index.get(g), mor_index.get(f), mor_index.get(gf))
            else {
                for id in [g, f, gf] {
                    if !mor_index.contains_key(id) {
                        violations.push(CategoryViolation::UnknownMorphism {
                            context: "composition entry".to_string(),
                            morphism: id.clone(),
                        });
                    }
                }
                continue;
            };
            if morphisms[fi.0].cod != morphisms[gi.0].dom {
                violations.push(CategoryViolation::NotComposable {
                    g: g.clone(),
                    f: f.clone(),
                });
                continue;
            }
            if let Some(prev) = compose.insert((gi, fi), gfi) {
                if prev != gfi {
                    violations.push(CategoryViolation::CompositionConflict {
                        g: g.clone(),
                        f: f.clone(),
                    });
                }
            }
        }
        for (i, m) in morphisms.iter().enumerate() {
            let f = MorIx(i);
            compose.entry((identity[m.cod.0], f)).or_insert(f);
            compose.entry((f, identity[m.dom.0])).or_insert(f);
        }
        if !violations.is_empty() {
            return Err(CategoryReport { violations });
        }

        let cat = FinCategory {
            objects: self.objects,
            morphisms,
            identity,
            compose,
        };
        cat.check_axioms()?;
        Ok(cat)
    }
}

impl FinCategory {
    fn check_axioms(&self) -> Result<(), CategoryReport> {
        let mut violations = Vec::new();

        // Totality on composable pairs, and endpoint sanity of each entry.
        for g in 0..self.morphisms.len() {
            for f in 0..self.morphisms.len() {
                let (g, f) = (MorIx(g), MorIx(f));
                let composable = self.cod(f) == self.dom(g);
                match self.compose.get(&(g, f)) {
                    None if composable => {
                        violations.push(CategoryViolation::CompositionMissing {
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        });
                    }
                    Some(&gf) if composable => {
                        if self.dom(gf) != self.dom(f) || self.cod(gf) != self.cod(g) {
                            violations.push(CategoryViolation::CompositeEndpoints {
                                g: self.mor_name(g).to_string(),
                                f: self.mor_name(f).to_string(),
                                gf: self.mor_name(gf).to_string(),
                            });
                        }
                    }
                    Some(_) => {
                        violations.push(CategoryViolation::NotComposable {
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        });
                    }
                    None => {}
                }
            }
        }
        if !violations.is_empty() {
            return Err(CategoryReport { violations });
        }

        // Identity laws.
        for f in self.morphisms() {
            let left = self.compose(self.identity_of(self.cod(f)), f);
            let right = self.compose(f, self.identity_of(self.dom(f)));
            for composite in [left, right] {
                if composite != f {
                    violations.push(CategoryViolation::IdentityLaw {
                        f: self.mor_name(f).to_string(),
                        composite: self.mor_name(composite).to_string(),
                    });
                }
            }
        }

        // Associativity over every composable triple.
        for h in self.morphisms() {
            for g in self.morphisms() {
                if self.cod(g) != self.dom(h) {
                    continue;
                }
                for f in self.morphisms() {
                    if self.cod(f) != self.dom(g) {
                        continue;
                    }
                    let left = self.compose(h, self.compose(g, f));
                    let right = self.compose(self.compose(h, g), f);
                    if left != right {
                        violations.push(CategoryViolation::Associativity {
                            h: self.mor_name(h).to_string(),
                            g: self.mor_name(g).to_string(),
                            f: self.mor_name(f).to_string(),
                        });
                    }
                }
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(CategoryReport { violations })
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjIx> {
        (0..self.objects.len()).map(ObjIx)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorIx> {
        (0..self.morphisms.len()).map(MorIx)
    }

    pub fn object_name(&self, o: ObjIx) -> &str {
        &self.objects[o.0]
    }

    pub fn mor_name(&self, m: MorIx) -> &str {
        &self.morphisms[m.0].name
    }

    pub fn object_named(&self, name: &str) -> Option<ObjIx> {
        self.objects.iter().position(|n| n == name).map(ObjIx)
    }

    pub fn mor_named(&self, name: &str) -> Option<MorIx> {
        self.morphisms.iter().position(|m| m.name == name).map(MorIx)
    }

    pub fn dom(&self, m: MorIx) -> ObjIx {
        self.morphisms[m.0].dom
    }

    pub fn cod(&self, m: MorIx) -> ObjIx {
        self.morphisms[m.0].cod
    }

    pub fn identity_of(&self, o: ObjIx) -> MorIx {
        self.identity[o.0]
    }

    pub fn is_identity(&self, m: MorIx) -> bool {
        self.identity[self.dom(m).0] == m
    }

    /// `g∘f`. Panics when the pair is not composable; validated categories
    /// are total on composable pairs, so this is a programmer error.
    pub fn compose(&self, g: MorIx, f: MorIx) -> MorIx {
        match self.compose.get(&(g, f)) {
            Some(&gf) => gf,
            None => panic!(
                "compose called on non-composable pair ({}, {})",
                self.mor_name(g),
                self.mor_name(f)
            ),
        }
    }

    pub fn try_compose(&self, g: MorIx, f: MorIx) -> Option<MorIx> {
        self.compose.get(&(g, f)).copied()
    }

    /// All morphisms `a -> b`, in morphism-table order.
    pub fn hom(&self, a: ObjIx, b: ObjIx) -> Vec<MorIx> {
        self.morphisms()
            .filter(|&m| self.dom(m) == a && self.cod(m) == b)
            .collect()
    }

    pub fn hom_size(&self, a: ObjIx, b: ObjIx) -> usize {
        self.morphisms()
            .filter(|&m| self.dom(m) == a && self.cod(m) == b)
            .count()
    }

    /// Two-sided inverse of `m`, when one exists.
    pub fn inverse(&self, m: MorIx) -> Option<MorIx> {
        let (a, b) = (self.dom(m), self.cod(m));
        self.hom(b, a).into_iter().find(|&n| {
            self.compose(n, m) == self.identity_of(a) && self.compose(m, n) == self.identity_of(b)
        })
    }

    pub fn is_iso(&self, m: MorIx) -> bool {
        self.inverse(m).is_some()
    }

    /// Non-identity morphisms that factor through no pair of non-identity
    /// morphisms. Every morphism is a composite of these (plus identities).
    pub fn generating_morphisms(&self) -> Vec<MorIx> {
        self.morphisms()
            .filter(|&m| {
                if self.is_identity(m) {
                    return false;
                }
                !self.morphisms().any(|g| {
                    !self.is_identity(g)
                        && self.morphisms().any(|f| {
                            !self.is_identity(f)
                                && self.try_compose(g, f) == Some(m)
                                && g != m
                                && f != m
                        })
                })
            })
            .collect()
    }

    /// The opposite category: same identifiers, endpoints swapped,
    /// composition table transposed.
    pub fn opposite(&self) -> FinCategory {
        FinCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorRecord {
                    name: m.name.clone(),
                    dom: m.cod,
                    cod: m.dom,
                })
                .collect(),
            identity: self.identity.clone(),
            compose: self
                .compose
                .iter()
                .map(|(&(g, f), &gf)| ((f, g), gf))
                .collect(),
        }
    }

    /// The one-object, one-morphism category.
    pub fn terminal() -> FinCategory {
        CategoryBuilder::new()
            .object("1")
            .morphism("id_1", "1", "1")
            .identity("1", "id_1")
            .build()
            .expect("terminal category is valid")
    }

    /// The poset `0 < 1 < ... < n-1` as a category. `chain(0)` is the empty
    /// category.
    pub fn chain(n: usize) -> FinCategory {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::chain_on(&refs)
    }

    /// A chain poset on the given object names, ordered as listed.
    pub fn chain_on(names: &[&str]) -> FinCategory {
        Self::poset(names, |i, j| i <= j).expect("chains are valid posets")
    }

    /// The discrete category on the given object names.
    pub fn discrete(names: &[&str]) -> FinCategory {
        Self::poset(names, |i, j| i == j).expect("discrete categories are valid")
    }

    /// A poset as a category: one morphism `a -> b` exactly when `leq(a, b)`.
    /// Fails when `leq` is not reflexive/transitive (the axioms catch it).
    pub fn poset(
        names: &[&str],
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<FinCategory, CategoryReport> {
        let mut b = CategoryBuilder::new();
        for &n in names {
            b = b.object(n);
        }
        for (i, &ni) in names.iter().enumerate() {
            for (j, &nj) in names.iter().enumerate() {
                if leq(i, j) {
                    let id = if i == j {
                        format!("id_{ni}")
                    } else {
                        format!("le_{ni}_{nj}")
                    };
                    b = b.morphism(&id, ni, nj);
                    if i == j {
                        b = b.identity(ni, &id);
                    }
                }
            }
        }
        // Composition is forced: at most one morphism between any two objects.
        let mor_names: Vec<(String, usize, usize)> = {
            let mut v = Vec::new();
            for (i, &ni) in names.iter().enumerate() {
                for (j, &nj) in names.iter().enumerate() {
                    if leq(i, j) {
                        let id = if i == j {
                            format!("id_{ni}")
                        } else {
                            format!("le_{ni}_{nj}")
                        };
                        v.push((id, i, j));
                    }
                }
            }
            v
        };
        for (g, gd, gc) in &mor_names {
            for (f, fd, fc) in &mor_names {
                if fc == gd {
                    if let Some((gf, _, _)) = mor_names
                        .iter()
                        .find(|(_, d, c)| d == fd && c == gc)
                    {
                        b = b.composite(g, f, gf);
                    }
                }
            }
        }
        b.build()
    }

    /// The commuting-square poset `(0,0) < (0,1), (1,0) < (1,1)` with object
    /// names `00`, `01`, `10`, `11`.
    pub fn commutative_square() -> FinCategory {
        let names = ["00", "01", "10", "11"];
        Self::poset(&names, |i, j| {
            let (a0, a1) = (i / 2, i % 2);
            let (b0, b1) = (j / 2, j % 2);
            a0 <= b0 && a1 <= b1
        })
        .expect("square poset is valid")
    }

    /// The category `• ⇉ •` with two parallel non-identity arrows.
    pub fn parallel_pair() -> FinCategory {
        CategoryBuilder::new()
            .object("s")
            .object("t")
            .morphism("id_s", "s", "s")
            .morphism("id_t", "t", "t")
            .morphism("par_0", "s", "t")
            .morphism("par_1", "s", "t")
            .identity("s", "id_s")
            .identity("t", "id_t")
            .build()
            .expect("parallel pair is valid")
    }

    /// The cospan poset `a -> t <- b` (pullback shape).
    pub fn cospan() -> FinCategory {
        Self::poset(&["a", "b", "t"], |i, j| i == j || j == 2).expect("cospan is valid")
    }

    /// The span poset `a <- s -> b` (pushout shape).
    pub fn span() -> FinCategory {
        Self::poset(&["s", "a", "b"], |i, j| i == j || i == 0).expect("span is valid")
    }

    /// The four-element diamond lattice `bot < a, b < top`.
    pub fn diamond_lattice() -> FinCategory {
        Self::poset(&["bot", "a", "b", "top"], |i, j| {
            i == j || i == 0 || j == 3
        })
        .expect("diamond is valid")
    }

    /// Composable pairs `(g, f)` of the composition table, in key order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorIx, MorIx)> + '_ {
        self.compose.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3_builder() -> CategoryBuilder {
        CategoryBuilder::new()
            .object("0")
            .object("1")
            .object("2")
            .morphism("id_0", "0", "0")
            .morphism("id_1", "1", "1")
            .morphism("id_2", "2", "2")
            .morphism("f01", "0", "1")
            .morphism("f12", "1", "2")
            .morphism("f02", "0", "2")
            .identity("0", "id_0")
            .identity("1", "id_1")
            .identity("2", "id_2")
            .composite("f12", "f01", "f02")
    }

    #[test]
    fn terminal_category_is_valid() {
        let one = FinCategory::terminal();
        assert_eq!(one.object_count(), 1);
        assert_eq!(one.morphism_count(), 1);
    }

    #[test]
    fn chain_poset_is_valid() {
        let c = chain3_builder().build().unwrap();
        assert_eq!(c.object_count(), 3);
        assert_eq!(c.morphism_count(), 6);
        let f01 = c.mor_named("f01").unwrap();
        let f12 = c.mor_named("f12").unwrap();
        assert_eq!(c.compose(f12, f01), c.mor_named("f02").unwrap());
    }

    #[test]
    fn missing_composite_is_reported() {
        // Same chain but without the (f12, f01) entry; identity entries are
        // inferred, the genuine composite is not.
        let raw = CategoryBuilder {
            compositions: vec![],
            ..chain3_builder()
        };
        let report = raw.build().unwrap_err();
        assert!(report.violations.iter().any(|v| matches!(
            v,
            CategoryViolation::CompositionMissing { g, f } if g == "f12" && f == "f01"
        )));
    }

    #[test]
    fn missing_identity_is_reported() {
        let raw = CategoryBuilder::new().object("x");
        let report = raw.build().unwrap_err();
        assert_eq!(
            report.violations,
            vec![CategoryViolation::MissingIdentity {
                object: "x".to_string()
            }]
        );
    }

    #[test]
    fn wrong_identity_law_is_reported() {
        // Two parallel endomorphisms where the declared "identity" composes
        // to the other morphism.
        let raw = CategoryBuilder::new()
            .object("x")
            .morphism("e", "x", "x")
            .morphism("z", "x", "x")
            .identity("x", "e")
            .composite("e", "e", "e")
            .composite("e", "z", "e") // violates id∘z = z
            .composite("z", "e", "z")
            .composite("z", "z", "z");
        let report = raw.build().unwrap_err();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, CategoryViolation::IdentityLaw { .. })));
    }

    #[test]
    fn associativity_failure_is_reported() {
        // A three-element "monoid" table that is deliberately non-associative:
        // a∘a = b, a∘b = a, b∘a = a, b∘b = b. Then (a∘a)∘a = b∘a = a but
        // a∘(a∘a) = a∘b = a — fine; tweak: b∘b = a makes a genuine failure.
        let raw = CategoryBuilder::new()
            .object("x")
            .morphism("e", "x", "x")
            .morphism("a", "x", "x")
            .morphism("b", "x", "x")
            .identity("x", "e")
            .composite("a", "a", "b")
            .composite("a", "b", "a")
            .composite("b", "a", "a")
            .composite("b", "b", "a");
        let report = raw.build().unwrap_err();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, CategoryViolation::Associativity { .. })));
    }

    #[test]
    fn dangling_reference_is_reported() {
        let raw = CategoryBuilder::new()
            .object("x")
            .morphism("f", "x", "ghost")
            .identity("x", "f");
        let report = raw.build().unwrap_err();
        assert!(report.violations.iter().any(|v| matches!(
            v,
            CategoryViolation::UnknownObject { object, .. } if object == "ghost"
        )));
    }

    #[test]
    fn chain_counts() {
        // n objects and one morphism per ordered pair i <= j.
        for n in 0..=5 {
            let c = FinCategory::chain(n);
            assert_eq!(c.object_count(), n);
            assert_eq!(c.morphism_count(), n * (n + 1) / 2);
        }
        assert_eq!(FinCategory::chain(3).morphism_count(), 6);
    }

    #[test]
    fn opposite_is_involution() {
        for cat in [
            FinCategory::chain(4),
            FinCategory::commutative_square(),
            FinCategory::parallel_pair(),
            FinCategory::terminal(),
        ] {
            assert_eq!(cat.opposite().opposite(), cat);
            cat.opposite().check_axioms().unwrap();
        }
    }

    #[test]
    fn hom_sets_and_inverses() {
        let c = FinCategory::chain(3);
        let (o0, o1) = (c.object_named("0").unwrap(), c.object_named("1").unwrap());
        assert_eq!(c.hom(o0, o1).len(), 1);
        assert_eq!(c.hom(o1, o0).len(), 0);
        assert!(c.is_iso(c.identity_of(o0)));
        assert!(!c.is_iso(c.hom(o0, o1)[0]));
    }

    #[test]
    fn generating_morphisms_of_chain() {
        let c = FinCategory::chain(3);
        let gens: Vec<&str> = c
            .generating_morphisms()
            .into_iter()
            .map(|m| c.mor_name(m))
            .collect();
        assert_eq!(gens, vec!["le_0_1", "le_1_2"]);
    }

    #[test]
    fn square_poset_counts() {
        let sq = FinCategory::commutative_square();
        assert_eq!(sq.object_count(), 4);
        assert_eq!(sq.morphism_count(), 9);
    }
}
