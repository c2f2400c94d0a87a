//! DOT renderings: objects as nodes, non-identity morphisms as labelled
//! edges (composites dashed), and extension tables as element graphs
//! clustered per base object.

use fincat::{FinCategory, KanExtension, SetCat};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// True when `m` factors through a pair of non-identity morphisms.
fn is_composite(cat: &FinCategory, m: fincat::MorIx) -> bool {
    cat.morphisms().any(|g| {
        !cat.is_identity(g)
            && g != m
            && cat.morphisms().any(|f| {
                !cat.is_identity(f) && f != m && cat.try_compose(g, f) == Some(m)
            })
    })
}

pub fn category_dot(name: &str, cat: &FinCategory) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", quote(name)));
    for o in cat.objects() {
        out.push_str(&format!("  {};\n", quote(cat.object_name(o))));
    }
    for m in cat.morphisms() {
        if cat.is_identity(m) {
            continue;
        }
        let style = if is_composite(cat, m) {
            ", style=dashed"
        } else {
            ""
        };
        out.push_str(&format!(
            "  {} -> {} [label={}{}];\n",
            quote(cat.object_name(cat.dom(m))),
            quote(cat.object_name(cat.cod(m))),
            quote(cat.mor_name(m)),
            style
        ));
    }
    out.push_str("}\n");
    out
}

/// Bipartite element graph of a computed extension: one cluster of element
/// nodes per base object, edges along each non-identity base morphism.
pub fn extension_dot(name: &str, kan: &KanExtension<SetCat>) -> String {
    let b_cat = kan.k.target().category();
    let mut out = String::new();
    out.push_str(&format!("digraph {} {{\n", quote(name)));
    for b in b_cat.objects() {
        let set = kan.ext.set_at(b);
        out.push_str(&format!("  subgraph cluster_{} {{\n", b.0));
        out.push_str(&format!("    label={};\n", quote(b_cat.object_name(b))));
        if set.is_empty() {
            // keep the cluster visible for empty values
            out.push_str(&format!(
                "    {} [shape=point, style=invis];\n",
                quote(&format!("{}/∅", b_cat.object_name(b)))
            ));
        }
        for label in set.labels() {
            out.push_str(&format!(
                "    {};\n",
                quote(&format!("{}/{}", b_cat.object_name(b), label))
            ));
        }
        out.push_str("  }\n");
    }
    for g in b_cat.morphisms() {
        if b_cat.is_identity(g) {
            continue;
        }
        let style = if is_composite(b_cat, g) {
            ", style=dashed"
        } else {
            ""
        };
        let (b, b2) = (b_cat.dom(g), b_cat.cod(g));
        let fun = kan.ext.fn_at(g);
        for i in 0..fun.dom().size() {
            out.push_str(&format!(
                "  {} -> {} [label={}{}];\n",
                quote(&format!("{}/{}", b_cat.object_name(b), fun.dom().label(i))),
                quote(&format!(
                    "{}/{}",
                    b_cat.object_name(b2),
                    fun.cod().label(fun.apply(i))
                )),
                quote(b_cat.mor_name(g)),
                style
            ));
        }
    }
    out.push_str("}\n");
    out
}
