//! Workspace loading: parse, expand generator forms, resolve references,
//! validate everything, and report every failure with file provenance.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use fincat::set::{FinSet, SetFn};
use fincat::{
    CategoryBuilder, Diagram, FinCategory, FinTarget, Functor, MorIx, ObjIx, SearchGuard, SetCat,
    SetFunctor, Transformation,
};

use crate::schema::{
    RawCategory, RawCategoryTables, RawComponent, RawFunctor, RawMorphism, RawSetFunctor,
    RawTransformation, RawWorkspace,
};

#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub file: String,
    pub item: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.file, self.item, self.message)
    }
}

#[derive(Debug)]
pub struct LoadError {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "workspace failed to load:")?;
        for d in &self.diagnostics {
            writeln!(f, "  - {d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for LoadError {}

/// A transformation, of either kind.
#[derive(Debug, Clone)]
pub enum AnyTransformation {
    BetweenFunctors(Transformation<FinTarget>),
    BetweenSetFunctors(Transformation<SetCat>),
}

/// A named catalog of validated values.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub functors: BTreeMap<String, Functor>,
    pub set_functors: BTreeMap<String, SetFunctor>,
    pub transformations: BTreeMap<String, AnyTransformation>,
    pub guard: SearchGuard,
}

struct Loader {
    diagnostics: Vec<Diagnostic>,
    /// name -> (kind, defining file), for global-namespace collisions.
    names: BTreeMap<String, (String, String)>,
}

impl Loader {
    fn diag(&mut self, file: &str, item: &str, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            file: file.to_string(),
            item: item.to_string(),
            message: message.into(),
        });
    }

    fn claim_name(&mut self, file: &str, kind: &str, name: &str) -> bool {
        if let Some((other_kind, other_file)) = self.names.get(name) {
            let message = format!(
                "name collision: already defined as {other_kind} in {other_file}"
            );
            self.diag(file, &format!("{kind} `{name}`"), message);
            false
        } else {
            self.names
                .insert(name.to_string(), (kind.to_string(), file.to_string()));
            true
        }
    }
}

pub fn load(paths: &[impl AsRef<Path>], guard: SearchGuard) -> Result<Workspace, LoadError> {
    let mut loader = Loader {
        diagnostics: Vec::new(),
        names: BTreeMap::new(),
    };

    // Parse every file and merge the raw maps, tracking provenance.
    let mut categories: BTreeMap<String, (String, RawCategory)> = BTreeMap::new();
    let mut functors: BTreeMap<String, (String, RawFunctor)> = BTreeMap::new();
    let mut set_functors: BTreeMap<String, (String, RawSetFunctor)> = BTreeMap::new();
    let mut transformations: BTreeMap<String, (String, RawTransformation)> = BTreeMap::new();
    for path in paths {
        let file = path.as_ref().display().to_string();
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                loader.diag(&file, "file", format!("cannot read: {e}"));
                continue;
            }
        };
        let raw: RawWorkspace = match serde_json::from_str(&text) {
            Ok(r) => r,
            Err(e) => {
                loader.diag(
                    &file,
                    "file",
                    format!("parse error at line {}, column {}: {e}", e.line(), e.column()),
                );
                continue;
            }
        };
        for (name, c) in raw.categories {
            if loader.claim_name(&file, "category", &name) {
                categories.insert(name, (file.clone(), c));
            }
        }
        for (name, f) in raw.functors {
            if loader.claim_name(&file, "functor", &name) {
                functors.insert(name, (file.clone(), f));
            }
        }
        for (name, s) in raw.setfunctors {
            if loader.claim_name(&file, "setfunctor", &name) {
                set_functors.insert(name, (file.clone(), s));
            }
        }
        for (name, t) in raw.transformations {
            if loader.claim_name(&file, "transformation", &name) {
                transformations.insert(name, (file.clone(), t));
            }
        }
    }

    // Categories: explicit tables and non-referencing generators first, then
    // opposites to a fixpoint (cycles diagnosed).
    let mut built_cats: BTreeMap<String, Arc<FinCategory>> = BTreeMap::new();
    let mut pending_opposites: Vec<(String, String, String)> = Vec::new();
    for (name, (file, raw)) in &categories {
        let item = format!("category `{name}`");
        match raw {
            RawCategory::PosetChain { poset_chain } => {
                built_cats.insert(name.clone(), Arc::new(FinCategory::chain(*poset_chain)));
            }
            RawCategory::Chain { chain } => {
                let refs: Vec<&str> = chain.iter().map(String::as_str).collect();
                match FinCategory::poset(&refs, |i, j| i <= j) {
                    Ok(c) => {
                        built_cats.insert(name.clone(), Arc::new(c));
                    }
                    Err(report) => loader.diag(file, &item, report.to_string()),
                }
            }
            RawCategory::Discrete { discrete } => {
                let refs: Vec<&str> = discrete.iter().map(String::as_str).collect();
                match FinCategory::poset(&refs, |i, j| i == j) {
                    Ok(c) => {
                        built_cats.insert(name.clone(), Arc::new(c));
                    }
                    Err(report) => loader.diag(file, &item, report.to_string()),
                }
            }
            RawCategory::Opposite { opposite } => {
                pending_opposites.push((name.clone(), file.clone(), opposite.clone()));
            }
            RawCategory::Explicit(tables) => match build_explicit(tables) {
                Ok(c) => {
                    built_cats.insert(name.clone(), Arc::new(c));
                }
                Err(message) => loader.diag(file, &item, message),
            },
        }
    }
    loop {
        let mut progress = false;
        pending_opposites.retain(|(name, _file, base)| {
            if let Some(cat) = built_cats.get(base) {
                built_cats.insert(name.clone(), Arc::new(cat.opposite()));
                progress = true;
                false
            } else {
                true
            }
        });
        if !progress {
            break;
        }
    }
    for (name, file, base) in &pending_opposites {
        loader.diag(
            file,
            &format!("category `{name}`"),
            format!("opposite of unknown or cyclic category `{base}`"),
        );
    }

    // Functors.
    let mut built_functors: BTreeMap<String, Functor> = BTreeMap::new();
    for (name, (file, raw)) in &functors {
        let item = format!("functor `{name}`");
        match build_functor(raw, &built_cats) {
            Ok(f) => {
                built_functors.insert(name.clone(), f);
            }
            Err(message) => loader.diag(file, &item, message),
        }
    }

    // Set-functors.
    let mut built_set_functors: BTreeMap<String, SetFunctor> = BTreeMap::new();
    for (name, (file, raw)) in &set_functors {
        let item = format!("setfunctor `{name}`");
        match build_set_functor(raw, &built_cats) {
            Ok(f) => {
                built_set_functors.insert(name.clone(), f);
            }
            Err(message) => loader.diag(file, &item, message),
        }
    }

    // Transformations.
    let mut built_transformations: BTreeMap<String, AnyTransformation> = BTreeMap::new();
    for (name, (file, raw)) in &transformations {
        let item = format!("transformation `{name}`");
        match build_transformation(raw, &built_functors, &built_set_functors) {
            Ok(t) => {
                built_transformations.insert(name.clone(), t);
            }
            Err(message) => loader.diag(file, &item, message),
        }
    }

    if loader.diagnostics.is_empty() {
        Ok(Workspace {
            categories: built_cats,
            functors: built_functors,
            set_functors: built_set_functors,
            transformations: built_transformations,
            guard,
        })
    } else {
        Err(LoadError {
            diagnostics: loader.diagnostics,
        })
    }
}

fn build_explicit(tables: &RawCategoryTables) -> Result<FinCategory, String> {
    let mut b = CategoryBuilder::new();
    for o in &tables.objects {
        b = b.object(o);
    }
    for RawMorphism { id, dom, cod } in &tables.morphisms {
        b = b.morphism(id, dom, cod);
    }
    for (object, id) in &tables.identities {
        b = b.identity(object, id);
    }
    for [g, f, gf] in &tables.composition {
        b = b.composite(g, f, gf);
    }
    b.build().map_err(|report| report.to_string())
}

fn build_functor(
    raw: &RawFunctor,
    cats: &BTreeMap<String, Arc<FinCategory>>,
) -> Result<Functor, String> {
    let source = cats
        .get(&raw.source)
        .ok_or(format!("dangling reference: source category `{}`", raw.source))?;
    let target = cats
        .get(&raw.target)
        .ok_or(format!("dangling reference: target category `{}`", raw.target))?;
    let mut object_map = Vec::with_capacity(source.object_count());
    for o in source.objects() {
        let name = source.object_name(o);
        let image = raw
            .objects
            .get(name)
            .ok_or(format!("object map missing entry for `{name}`"))?;
        let ix = target
            .object_named(image)
            .ok_or(format!("dangling reference: target object `{image}`"))?;
        object_map.push(ix);
    }
    for key in raw.objects.keys() {
        if source.object_named(key).is_none() {
            return Err(format!("object map names unknown source object `{key}`"));
        }
    }
    let mut mor_map: Vec<Option<MorIx>> = vec![None; source.morphism_count()];
    for (m_name, image) in &raw.morphisms {
        let m = source
            .mor_named(m_name)
            .ok_or(format!("morphism map names unknown morphism `{m_name}`"))?;
        let im = target
            .mor_named(image)
            .ok_or(format!("dangling reference: target morphism `{image}`"))?;
        mor_map[m.0] = Some(im);
    }
    // Unique-hom inference for omitted entries (covers poset targets).
    let mut missing = Vec::new();
    for m in source.morphisms() {
        if mor_map[m.0].is_some() {
            continue;
        }
        let hom = target.hom(
            object_map[source.dom(m).0],
            object_map[source.cod(m).0],
        );
        match hom.len() {
            1 => mor_map[m.0] = Some(hom[0]),
            0 => {
                return Err(format!(
                    "no possible image for morphism `{}` under the object map",
                    source.mor_name(m)
                ))
            }
            _ => missing.push(source.mor_name(m).to_string()),
        }
    }
    if !missing.is_empty() {
        return Err(format!(
            "morphism map is ambiguous; supply entries for: {}",
            missing.join(", ")
        ));
    }
    let mor_map: Vec<MorIx> = mor_map.into_iter().map(Option::unwrap).collect();
    Diagram::new(
        source.clone(),
        FinTarget::new(target.clone()),
        object_map,
        mor_map,
    )
    .map_err(|e| e.to_string())
}

fn build_set_functor(
    raw: &RawSetFunctor,
    cats: &BTreeMap<String, Arc<FinCategory>>,
) -> Result<SetFunctor, String> {
    let shape = cats
        .get(&raw.shape)
        .ok_or(format!("dangling reference: shape category `{}`", raw.shape))?;
    let mut sets = Vec::with_capacity(shape.object_count());
    for o in shape.objects() {
        let name = shape.object_name(o);
        let labels = raw
            .sets
            .get(name)
            .ok_or(format!("sets missing entry for object `{name}`"))?;
        sets.push(FinSet::new(labels.clone()).map_err(|e| e.to_string())?);
    }
    for key in raw.sets.keys() {
        if shape.object_named(key).is_none() {
            return Err(format!("sets name unknown object `{key}`"));
        }
    }
    let mut generators: BTreeMap<MorIx, SetFn> = BTreeMap::new();
    for (m_name, table) in &raw.functions {
        let m = shape
            .mor_named(m_name)
            .ok_or(format!("functions name unknown morphism `{m_name}`"))?;
        let dom = &sets[shape.dom(m).0];
        let cod = &sets[shape.cod(m).0];
        let mut map = Vec::with_capacity(dom.size());
        for i in 0..dom.size() {
            let from = dom.label(i);
            let to = table.get(from).ok_or(format!(
                "function for `{m_name}` missing entry for element `{from}`"
            ))?;
            map.push(
                cod.index_of(to)
                    .ok_or(format!("dangling reference: element `{to}`"))?,
            );
        }
        for key in table.keys() {
            if dom.index_of(key).is_none() {
                return Err(format!(
                    "function for `{m_name}` names unknown element `{key}`"
                ));
            }
        }
        generators.insert(m, SetFn::new(dom.clone(), cod.clone(), map).map_err(|e| e.to_string())?);
    }
    Diagram::from_generators(shape.clone(), SetCat, sets, &generators).map_err(|e| e.to_string())
}

fn build_transformation(
    raw: &RawTransformation,
    functors: &BTreeMap<String, Functor>,
    set_functors: &BTreeMap<String, SetFunctor>,
) -> Result<AnyTransformation, String> {
    match (
        functors.get(&raw.source),
        set_functors.get(&raw.source),
        functors.get(&raw.target),
        set_functors.get(&raw.target),
    ) {
        (Some(f), _, Some(g), _) => {
            let shape = f.shape().clone();
            let target_cat = f.target().category().clone();
            let mut components = Vec::with_capacity(shape.object_count());
            for o in shape.objects() {
                let name = shape.object_name(o);
                match raw.components.get(name) {
                    Some(RawComponent::Morphism(m)) => {
                        components.push(
                            target_cat
                                .mor_named(m)
                                .ok_or(format!("dangling reference: morphism `{m}`"))?,
                        );
                    }
                    Some(RawComponent::Function(_)) => {
                        return Err(format!(
                            "component at `{name}` must be a morphism name"
                        ))
                    }
                    None => return Err(format!("component missing at object `{name}`")),
                }
            }
            Transformation::new(f.clone(), g.clone(), components)
                .map(AnyTransformation::BetweenFunctors)
                .map_err(|e| e.to_string())
        }
        (_, Some(f), _, Some(g)) => {
            let shape = f.shape().clone();
            let mut components = Vec::with_capacity(shape.object_count());
            for o in shape.objects() {
                let name = shape.object_name(o);
                let dom = f.set_at(o);
                let cod = g.set_at(o);
                match raw.components.get(name) {
                    Some(RawComponent::Function(table)) => {
                        let mut map = Vec::with_capacity(dom.size());
                        for i in 0..dom.size() {
                            let from = dom.label(i);
                            let to = table.get(from).ok_or(format!(
                                "component at `{name}` missing entry for `{from}`"
                            ))?;
                            map.push(
                                cod.index_of(to)
                                    .ok_or(format!("dangling reference: element `{to}`"))?,
                            );
                        }
                        components.push(
                            SetFn::new(dom.clone(), cod.clone(), map).map_err(|e| e.to_string())?,
                        );
                    }
                    Some(RawComponent::Morphism(_)) => {
                        return Err(format!(
                            "component at `{name}` must be an element map"
                        ))
                    }
                    None => return Err(format!("component missing at object `{name}`")),
                }
            }
            Transformation::new(f.clone(), g.clone(), components)
                .map(AnyTransformation::BetweenSetFunctors)
                .map_err(|e| e.to_string())
        }
        _ => Err(format!(
            "dangling or mixed endpoints: `{}` and `{}` must both name functors or both name setfunctors",
            raw.source, raw.target
        )),
    }
}

impl Workspace {
    pub fn category(&self, name: &str) -> Result<&Arc<FinCategory>, String> {
        self.categories
            .get(name)
            .ok_or(format!("unknown category `{name}`"))
    }

    pub fn functor(&self, name: &str) -> Result<&Functor, String> {
        self.functors
            .get(name)
            .ok_or(format!("unknown functor `{name}`"))
    }

    pub fn set_functor(&self, name: &str) -> Result<&SetFunctor, String> {
        self.set_functors
            .get(name)
            .ok_or(format!("unknown setfunctor `{name}`"))
    }

    pub fn object_of(&self, cat: &FinCategory, name: &str) -> Result<ObjIx, String> {
        cat.object_named(name)
            .ok_or(format!("unknown object `{name}`"))
    }

    /// Canonical raw form: explicit tables only, suitable for round-trips.
    pub fn to_raw(&self) -> RawWorkspace {
        let mut raw = RawWorkspace::default();
        for (name, cat) in &self.categories {
            raw.categories.insert(
                name.clone(),
                RawCategory::Explicit(RawCategoryTables {
                    objects: cat.objects().map(|o| cat.object_name(o).to_string()).collect(),
                    morphisms: cat
                        .morphisms()
                        .map(|m| RawMorphism {
                            id: cat.mor_name(m).to_string(),
                            dom: cat.object_name(cat.dom(m)).to_string(),
                            cod: cat.object_name(cat.cod(m)).to_string(),
                        })
                        .collect(),
                    identities: cat
                        .objects()
                        .map(|o| {
                            (
                                cat.object_name(o).to_string(),
                                cat.mor_name(cat.identity_of(o)).to_string(),
                            )
                        })
                        .collect(),
                    composition: cat
                        .composable_pairs()
                        .map(|(g, f)| {
                            [
                                cat.mor_name(g).to_string(),
                                cat.mor_name(f).to_string(),
                                cat.mor_name(cat.compose(g, f)).to_string(),
                            ]
                        })
                        .collect(),
                }),
            );
        }
        for (name, f) in &self.functors {
            let src = f.shape();
            let tgt = f.target().category();
            raw.functors.insert(
                name.clone(),
                RawFunctor {
                    source: self.name_of_category(src).unwrap_or_default(),
                    target: self.name_of_category(tgt).unwrap_or_default(),
                    objects: src
                        .objects()
                        .map(|o| {
                            (
                                src.object_name(o).to_string(),
                                tgt.object_name(f.apply_obj(o)).to_string(),
                            )
                        })
                        .collect(),
                    morphisms: src
                        .morphisms()
                        .map(|m| {
                            (
                                src.mor_name(m).to_string(),
                                tgt.mor_name(f.apply_mor(m)).to_string(),
                            )
                        })
                        .collect(),
                },
            );
        }
        for (name, f) in &self.set_functors {
            let shape = f.shape();
            raw.setfunctors.insert(
                name.clone(),
                RawSetFunctor {
                    shape: self.name_of_category(shape).unwrap_or_default(),
                    sets: shape
                        .objects()
                        .map(|o| {
                            (
                                shape.object_name(o).to_string(),
                                f.set_at(o).labels().map(str::to_string).collect(),
                            )
                        })
                        .collect(),
                    functions: shape
                        .morphisms()
                        .map(|m| {
                            let fun = f.fn_at(m);
                            (
                                shape.mor_name(m).to_string(),
                                (0..fun.dom().size())
                                    .map(|i| {
                                        (
                                            fun.dom().label(i).to_string(),
                                            fun.cod().label(fun.apply(i)).to_string(),
                                        )
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                },
            );
        }
        for (name, t) in &self.transformations {
            let entry = match t {
                AnyTransformation::BetweenFunctors(t) => {
                    let shape = t.source().shape();
                    let tgt = t.source().target().category();
                    RawTransformation {
                        source: self.name_of_functor(t.source()).unwrap_or_default(),
                        target: self.name_of_functor(t.target()).unwrap_or_default(),
                        components: shape
                            .objects()
                            .map(|o| {
                                (
                                    shape.object_name(o).to_string(),
                                    RawComponent::Morphism(
                                        tgt.mor_name(*t.component(o)).to_string(),
                                    ),
                                )
                            })
                            .collect(),
                    }
                }
                AnyTransformation::BetweenSetFunctors(t) => {
                    let shape = t.source().shape();
                    RawTransformation {
                        source: self.name_of_set_functor(t.source()).unwrap_or_default(),
                        target: self.name_of_set_functor(t.target()).unwrap_or_default(),
                        components: shape
                            .objects()
                            .map(|o| {
                                let c = t.component(o);
                                (
                                    shape.object_name(o).to_string(),
                                    RawComponent::Function(
                                        (0..c.dom().size())
                                            .map(|i| {
                                                (
                                                    c.dom().label(i).to_string(),
                                                    c.cod().label(c.apply(i)).to_string(),
                                                )
                                            })
                                            .collect(),
                                    ),
                                )
                            })
                            .collect(),
                    }
                }
            };
            raw.transformations.insert(name.clone(), entry);
        }
        raw
    }

    fn name_of_category(&self, cat: &Arc<FinCategory>) -> Option<String> {
        self.categories
            .iter()
            .find(|(_, c)| Arc::ptr_eq(c, cat) || ***c == **cat)
            .map(|(n, _)| n.clone())
    }

    fn name_of_functor(&self, f: &Functor) -> Option<String> {
        self.functors
            .iter()
            .find(|(_, g)| *g == f)
            .map(|(n, _)| n.clone())
    }

    fn name_of_set_functor(&self, f: &SetFunctor) -> Option<String> {
        self.set_functors
            .iter()
            .find(|(_, g)| *g == f)
            .map(|(n, _)| n.clone())
    }
}
