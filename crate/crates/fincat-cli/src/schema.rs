//! The JSON input format: one document per file with top-level keys
//! `categories`, `functors`, `setfunctors`, `transformations`.
//!
//! Categories are either explicit tables (`objects`, `morphisms` with
//! id/dom/cod, `identities`, `composition` as `[g, f, gf]` triples, identity
//! compositions inferred) or generator forms: `{"poset_chain": n}`,
//! `{"chain": [names]}`, `{"discrete": [names]}`, `{"opposite": name}`.
//!
//! Functor morphism maps may be omitted where the target forces them
//! (unique hom-sets, e.g. posets); set-functor function tables may omit
//! entries that follow by composition from the given ones.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawWorkspace {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, RawCategory>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, RawFunctor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub setfunctors: BTreeMap<String, RawSetFunctor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub transformations: BTreeMap<String, RawTransformation>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RawCategory {
    PosetChain {
        poset_chain: usize,
    },
    Chain {
        chain: Vec<String>,
    },
    Discrete {
        discrete: Vec<String>,
    },
    Opposite {
        opposite: String,
    },
    Explicit(RawCategoryTables),
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategoryTables {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    /// `[g, f, g∘f]` triples; entries with an identity factor may be
    /// omitted.
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawFunctor {
    pub source: String,
    pub target: String,
    /// source object -> target object
    pub objects: BTreeMap<String, String>,
    /// source morphism -> target morphism; omitted entries are inferred
    /// when the target hom-set has exactly one candidate
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawSetFunctor {
    pub shape: String,
    /// shape object -> element labels
    pub sets: BTreeMap<String, Vec<String>>,
    /// shape morphism -> element map; identities and derivable composites
    /// may be omitted
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawTransformation {
    /// Name of a functor or of a set-functor; both endpoints must be of the
    /// same kind.
    pub source: String,
    pub target: String,
    /// object -> component: a target-category morphism name for functor
    /// transformations, an element map for set-functor transformations
    pub components: BTreeMap<String, RawComponent>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RawComponent {
    Morphism(String),
    Function(BTreeMap<String, String>),
}
