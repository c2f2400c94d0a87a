//! Canonical serialisation round-trip: loading the canonical form of a
//! workspace reproduces it value for value.

use std::path::PathBuf;

use fincat::SearchGuard;
use fincat_cli::load::{self, AnyTransformation};

fn data_files() -> Vec<PathBuf> {
    let mut dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    dir.pop();
    dir.pop();
    dir.push("data");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("json"))
        .collect();
    files.sort();
    files
}

#[test]
fn load_of_serialised_workspace_is_identical() {
    // All example files load together (names are globally unique), so the
    // round-trip covers every construct the format supports.
    let files = data_files();
    let ws = load::load(&files, SearchGuard::default()).expect("examples load");

    let raw = ws.to_raw();
    let text = serde_json::to_string_pretty(&raw).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("canonical.json");
    std::fs::write(&path, &text).unwrap();

    let ws2 = load::load(&[path], SearchGuard::default()).expect("canonical form loads");
    assert_eq!(ws.categories.len(), ws2.categories.len());
    for (name, cat) in &ws.categories {
        assert_eq!(**cat, **ws2.categories.get(name).expect("category survives"));
    }
    assert_eq!(ws.functors, ws2.functors);
    assert_eq!(ws.set_functors, ws2.set_functors);
    // Transformations serialise through their endpoints; compare components.
    assert_eq!(ws.transformations.len(), ws2.transformations.len());
    for (name, t) in &ws.transformations {
        match (t, ws2.transformations.get(name).unwrap()) {
            (
                AnyTransformation::BetweenSetFunctors(a),
                AnyTransformation::BetweenSetFunctors(b),
            ) => assert_eq!(a, b),
            (AnyTransformation::BetweenFunctors(a), AnyTransformation::BetweenFunctors(b)) => {
                assert_eq!(a, b)
            }
            _ => panic!("transformation changed kind in the round trip"),
        }
    }

    // Serialising again is byte-identical (canonical form is a fixpoint).
    let text2 = serde_json::to_string_pretty(&ws2.to_raw()).unwrap();
    assert_eq!(text, text2);
}
