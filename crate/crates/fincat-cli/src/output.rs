//! Canonical JSON rendering: key order comes from `serde_json`'s BTreeMap
//! backing and all lists follow the engine's table order, so identical
//! inputs produce byte-identical output.

use serde_json::{json, Map, Value};

use fincat::set::SetFn;
use fincat::{
    Certificate, Direction, FinCategory, Functor, KanExtension, SetCat, SetFunctor,
    Transformation,
};

pub fn category_json(cat: &FinCategory) -> Value {
    let composition: Vec<Value> = cat
        .composable_pairs()
        .filter(|&(g, f)| !cat.is_identity(g) && !cat.is_identity(f))
        .map(|(g, f)| {
            json!([
                cat.mor_name(g),
                cat.mor_name(f),
                cat.mor_name(cat.compose(g, f))
            ])
        })
        .collect();
    json!({
        "objects": cat.objects().map(|o| cat.object_name(o)).collect::<Vec<_>>(),
        "morphisms": cat.morphisms().map(|m| json!({
            "id": cat.mor_name(m),
            "dom": cat.object_name(cat.dom(m)),
            "cod": cat.object_name(cat.cod(m)),
        })).collect::<Vec<_>>(),
        "identities": cat.objects().map(|o| (
            cat.object_name(o).to_string(),
            Value::from(cat.mor_name(cat.identity_of(o))),
        )).collect::<Map<String, Value>>(),
        "composition": composition,
    })
}

pub fn set_fn_json(f: &SetFn) -> Value {
    let mut m = Map::new();
    for i in 0..f.dom().size() {
        m.insert(
            f.dom().label(i).to_string(),
            Value::from(f.cod().label(f.apply(i))),
        );
    }
    Value::Object(m)
}

pub fn set_functor_json(f: &SetFunctor) -> Value {
    let shape = f.shape();
    json!({
        "sets": shape.objects().map(|o| (
            shape.object_name(o).to_string(),
            Value::from(f.set_at(o).labels().collect::<Vec<_>>()),
        )).collect::<Map<String, Value>>(),
        "functions": shape.morphisms().map(|m| (
            shape.mor_name(m).to_string(),
            set_fn_json(f.fn_at(m)),
        )).collect::<Map<String, Value>>(),
    })
}

pub fn functor_json(f: &Functor) -> Value {
    let src = f.shape();
    let tgt = f.target().category();
    json!({
        "objects": src.objects().map(|o| (
            src.object_name(o).to_string(),
            Value::from(tgt.object_name(f.apply_obj(o))),
        )).collect::<Map<String, Value>>(),
        "morphisms": src.morphisms().map(|m| (
            src.mor_name(m).to_string(),
            Value::from(tgt.mor_name(f.apply_mor(m))),
        )).collect::<Map<String, Value>>(),
    })
}

pub fn set_transformation_json(t: &Transformation<SetCat>) -> Value {
    let shape = t.source().shape();
    shape
        .objects()
        .map(|o| {
            (
                shape.object_name(o).to_string(),
                set_fn_json(t.component(o)),
            )
        })
        .collect::<Map<String, Value>>()
        .into()
}

pub fn kan_json(kan: &KanExtension<SetCat>) -> Value {
    let b_cat = kan.k.target().category();
    let commas: Map<String, Value> = b_cat
        .objects()
        .map(|b| {
            let comma = &kan.commas[b.0];
            (
                b_cat.object_name(b).to_string(),
                json!({
                    "objects": comma.cat.object_count(),
                    "morphisms": comma.cat.morphism_count(),
                }),
            )
        })
        .collect();
    let certificates: Map<String, Value> = b_cat
        .objects()
        .map(|b| {
            let value = match &kan.certificates[b.0] {
                Certificate::Colimit(c) => json!({
                    "kind": "colimit",
                    "classes": c.witness.classes.iter().map(|members| {
                        members.iter().map(|&(o, x)| json!([
                            kan.commas[b.0].cat.object_name(o),
                            kan.x.set_at(kan.commas[b.0].projection.apply_obj(o)).label(x),
                        ])).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                }),
                Certificate::Limit(c) => json!({
                    "kind": "limit",
                    "families": c.witness.families.len(),
                }),
            };
            (b_cat.object_name(b).to_string(), value)
        })
        .collect();
    json!({
        "direction": match kan.direction {
            Direction::Left => "left",
            Direction::Right => "right",
        },
        "extension": set_functor_json(&kan.ext),
        "mediator": set_transformation_json(&kan.mediator),
        "commas": commas,
        "certificates": certificates,
    })
}

/// Serialises with the configured indent; `0` means compact.
pub fn render(value: &Value, indent: usize) -> String {
    if indent == 0 {
        serde_json::to_string(value).expect("value serialises")
    } else {
        let spaces = vec![b' '; indent];
        let mut out = Vec::new();
        let formatter = serde_json::ser::PrettyFormatter::with_indent(&spaces);
        let mut ser = serde_json::Serializer::with_formatter(&mut out, formatter);
        serde::Serialize::serialize(value, &mut ser).expect("value serialises");
        String::from_utf8(out).expect("serde_json emits utf-8")
    }
}
