//! End-to-end tests driving the `fincat` binary over the shipped example
//! workspaces: exit codes, determinism, diagnostics, and DOT output.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(file: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push("data");
    p.push(file);
    p.display().to_string()
}

fn fincat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fincat"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn validate_reports_ok() {
    let out = fincat(&["--input", &data("representable.json"), "validate"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["counts"]["categories"], 2);

    let out = fincat(&[
        "--input",
        &data("representable.json"),
        "validate",
        "--cat",
        "c3",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_json(&out)["status"], "ok");
}

#[test]
fn all_example_files_load() {
    for file in std::fs::read_dir(data("").trim_end_matches('/')).unwrap() {
        let path = file.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let out = fincat(&["--input", path.to_str().unwrap(), "validate"]);
        assert_eq!(
            exit_code(&out),
            0,
            "{} failed to load: {}",
            path.display(),
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn lan_of_point_matches_representable() {
    let out = fincat(&[
        "--input",
        &data("representable.json"),
        "lan",
        "--K",
        "pt0",
        "--X",
        "star",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["direction"], "left");
    for obj in ["0", "1", "2"] {
        assert_eq!(
            doc["extension"]["sets"][obj].as_array().unwrap().len(),
            1,
            "hom(0, {obj}) is a singleton"
        );
    }
}

#[test]
fn lan_of_discrete_inclusion_has_expected_tables() {
    // Extending {0 ↦ {u}, 2 ↦ {u,v}} along the discrete inclusion into the
    // chain of 3: values of sizes 1, 1 and 3 (nothing merges at the top).
    let out = fincat(&[
        "--input",
        &data("universal.json"),
        "lan",
        "--K",
        "uinc",
        "--X",
        "ux",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    let sizes: Vec<usize> = ["0", "1", "2"]
        .iter()
        .map(|o| doc["extension"]["sets"][*o].as_array().unwrap().len())
        .collect();
    assert_eq!(sizes, vec![1, 1, 3]);
    // The unit lands each point of X in its own class.
    assert_eq!(doc["mediator"]["0"]["u"], "(0,id_0):u");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = [
        "--input",
        &data("representable.json"),
        "lan",
        "--K",
        "pt0",
        "--X",
        "star",
    ];
    let a = fincat(&args);
    let b = fincat(&args);
    assert_eq!(a.stdout, b.stdout);
    // Compact output is also deterministic.
    let args = [
        "--json-indent",
        "0",
        "--input",
        &data("yoneda.json"),
        "yoneda",
        "--X",
        "xinc",
        "--object",
        "1",
    ];
    let a = fincat(&args);
    let b = fincat(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.iter().filter(|&&c| c == b'\n').count(), 1);
}

#[test]
fn ran_along_constant_functor_computes_limits() {
    // Product: 2 x 3 = 6.
    let out = fincat(&[
        "--input",
        &data("limit_diagrams.json"),
        "ran",
        "--K",
        "delta_pair",
        "--X",
        "prod23",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["extension"]["sets"]["u"].as_array().unwrap().len(), 6);

    // Equalizer: one compatible family.
    let out = fincat(&[
        "--input",
        &data("limit_diagrams.json"),
        "ran",
        "--K",
        "delta_pp",
        "--X",
        "equalizer",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["extension"]["sets"]["u"].as_array().unwrap().len(), 1);

    // Direct limit/colimit commands agree.
    let out = fincat(&[
        "--input",
        &data("limit_diagrams.json"),
        "limit",
        "--diagram",
        "equalizer",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_json(&out)["apex"].as_array().unwrap().len(), 1);
    let out = fincat(&[
        "--input",
        &data("limit_diagrams.json"),
        "colimit",
        "--diagram",
        "prod23",
    ]);
    assert_eq!(stdout_json(&out)["apex"].as_array().unwrap().len(), 5);
}

#[test]
fn adjunction_galois_holds_and_swap_fails() {
    let out = fincat(&[
        "--input",
        &data("adjunction_galois.json"),
        "adjunction",
        "--L",
        "gl",
        "--R",
        "gr",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["holds"], true);
    assert_eq!(doc["triangles"]["left"], true);
    assert_eq!(doc["triangles"]["right"], true);

    let out = fincat(&[
        "--input",
        &data("adjunction_galois.json"),
        "adjunction",
        "--L",
        "gr",
        "--R",
        "gl",
    ]);
    assert_eq!(exit_code(&out), 1);
    let doc = stdout_json(&out);
    assert_eq!(doc["status"], "fail");
    assert_eq!(doc["condition1"]["holds"], false);
}

#[test]
fn codensity_continuation_sizes() {
    let out = fincat(&[
        "--input",
        &data("codensity.json"),
        "codensity",
        "--G",
        "g2",
        "--probe-size",
        "0",
        "--probe-size",
        "1",
        "--probe-size",
        "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    let sizes: Vec<u64> = doc["probes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["value_size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes, vec![2, 4, 16]);
    assert_eq!(doc["laws"]["associativity"], true);
    assert_eq!(doc["laws"]["mult_agreement"], true);
}

#[test]
fn yoneda_and_coyoneda_counts() {
    let out = fincat(&[
        "--input",
        &data("yoneda.json"),
        "yoneda",
        "--X",
        "xinc",
        "--object",
        "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["value_size"], 2);
    assert_eq!(doc["nat_hom_size"], 2);
    let out = fincat(&[
        "--input",
        &data("yoneda.json"),
        "coyoneda",
        "--X",
        "xinc",
        "--object",
        "1",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_json(&out)["colimit_size"], 2);
}

#[test]
fn universal_returns_unique_factoring() {
    let out = fincat(&[
        "--input",
        &data("universal.json"),
        "universal",
        "--direction",
        "left",
        "--K",
        "uinc",
        "--X",
        "ux",
        "--L",
        "ul",
        "--eta",
        "ueta",
    ]);
    assert_eq!(
        exit_code(&out),
        0,
        "stdout: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(stdout_json(&out)["survivors"], 1);
}

#[test]
fn hom_bijection_holds_on_example() {
    for direction in ["left", "right"] {
        let out = fincat(&[
            "--input",
            &data("hom_bijection.json"),
            "hom-bijection",
            "--direction",
            direction,
            "--K",
            "hinc",
            "--X",
            "hx",
            "--H",
            "hprobe",
        ]);
        assert_eq!(exit_code(&out), 0);
        let doc = stdout_json(&out);
        assert_eq!(doc["holds"], true);
        assert_eq!(doc["extension_side"], doc["restricted_side"]);
    }
}

#[test]
fn density_reconstructs_presheaves() {
    for name in ["hrep1", "dconst"] {
        let out = fincat(&["--input", &data("density.json"), "density", "--F", name]);
        assert_eq!(exit_code(&out), 0, "presheaf {name}");
        assert_eq!(stdout_json(&out)["holds"], true);
    }
}

#[test]
fn nerve_bijection_on_diamond() {
    for object in ["bot", "a", "b", "top"] {
        let out = fincat(&[
            "--input",
            &data("nerve.json"),
            "nerve",
            "--F",
            "embed",
            "--X",
            "npre",
            "--object",
            object,
        ]);
        assert_eq!(exit_code(&out), 0, "at {object}");
        let doc = stdout_json(&out);
        assert_eq!(doc["holds"], true);
        assert_eq!(doc["hom_size"], doc["nat_size"]);
    }
}

#[test]
fn order_extension_tables() {
    let out = fincat(&[
        "--input",
        &data("order_extension.json"),
        "order-ext",
        "--sub",
        "q02",
        "--sup",
        "r3",
        "--X",
        "xpow",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["lan"]["0"], "1");
    assert_eq!(doc["lan"]["1"], "1");
    assert_eq!(doc["lan"]["2"], "4");
    assert_eq!(doc["ran"]["0"], "1");
    assert_eq!(doc["ran"]["1"], "4");
    assert_eq!(doc["ran"]["2"], "4");
}

#[test]
fn preserve_representable_on_right_extension() {
    let out = fincat(&[
        "--input",
        &data("preserve.json"),
        "preserve",
        "--direction",
        "right",
        "--K",
        "pinc",
        "--X",
        "px",
        "--hom-size",
        "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_json(&out)["holds"], true);
}

#[test]
fn comma_of_point_functor_is_discrete() {
    let out = fincat(&[
        "--input",
        &data("comma_demo.json"),
        "comma",
        "--side",
        "left",
        "--functor",
        "cpt0",
        "--object",
        "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    // exactly |hom(0, 2)| = 1 object, identity morphisms only
    assert_eq!(doc["category"]["objects"].as_array().unwrap().len(), 1);
    assert_eq!(doc["category"]["morphisms"].as_array().unwrap().len(), 1);
}

#[test]
fn dot_outputs() {
    let out = fincat(&[
        "--input",
        &data("representable.json"),
        "dot",
        "--target",
        "category",
        "--name",
        "one",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("digraph \"one\""));
    assert_eq!(text.matches("->").count(), 0);

    let out = fincat(&[
        "--input",
        &data("representable.json"),
        "dot",
        "--target",
        "category",
        "--name",
        "c3",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    // 3 edges, one dashed composite
    assert_eq!(text.matches("->").count(), 3);
    assert_eq!(text.matches("style=dashed").count(), 1);

    let out = fincat(&[
        "--input",
        &data("representable.json"),
        "dot",
        "--target",
        "extension",
        "--direction",
        "left",
        "--K",
        "pt0",
        "--X",
        "star",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("subgraph cluster_0"));
}

#[test]
fn dangling_reference_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"categories": {"c": {"objects": ["x"], "morphisms": [{"id": "f", "dom": "x", "cod": "ghost"}], "identities": {"x": "f"}}}}"#,
    )
    .unwrap();
    let out = fincat(&["--input", path.to_str().unwrap(), "validate"]);
    assert_eq!(exit_code(&out), 2);
    let doc = stdout_json(&out);
    assert_eq!(doc["status"], "error");
    assert_eq!(doc["error"]["code"], "load");
    let text = serde_json::to_string(&doc["error"]["diagnostics"]).unwrap();
    assert!(text.contains("ghost"));
    // stderr mentions the failure without color codes (NO_COLOR is set).
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error:"));
    assert!(!err.contains('\x1b'));
}

#[test]
fn name_collision_across_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, r#"{"categories": {"same": {"poset_chain": 2}}}"#).unwrap();
    std::fs::write(&b, r#"{"categories": {"same": {"poset_chain": 3}}}"#).unwrap();
    let out = fincat(&[
        "--input",
        a.to_str().unwrap(),
        "--input",
        b.to_str().unwrap(),
        "validate",
    ]);
    assert_eq!(exit_code(&out), 2);
    let doc = stdout_json(&out);
    let text = serde_json::to_string(&doc).unwrap();
    assert!(text.contains("collision"));
}

#[test]
fn parse_error_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"categories\": {\n").unwrap();
    let out = fincat(&["--input", path.to_str().unwrap(), "validate"]);
    assert_eq!(exit_code(&out), 2);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("line"));
}

#[test]
fn axiom_violation_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("axiom.json");
    // Chain with the composite entry deleted: composition not total.
    std::fs::write(
        &path,
        r#"{"categories": {"c": {
            "objects": ["0", "1", "2"],
            "morphisms": [
                {"id": "id_0", "dom": "0", "cod": "0"},
                {"id": "id_1", "dom": "1", "cod": "1"},
                {"id": "id_2", "dom": "2", "cod": "2"},
                {"id": "f", "dom": "0", "cod": "1"},
                {"id": "g", "dom": "1", "cod": "2"},
                {"id": "h", "dom": "0", "cod": "2"}
            ],
            "identities": {"0": "id_0", "1": "id_1", "2": "id_2"}
        }}}"#,
    )
    .unwrap();
    let out = fincat(&["--input", path.to_str().unwrap(), "validate"]);
    assert_eq!(exit_code(&out), 2);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("composition not total"));
}

#[test]
fn guard_exceeded_reports_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.json");
    std::fs::write(
        &path,
        r#"{"categories": {"c": {"discrete": ["a"]}},
            "setfunctors": {
                "big": {"shape": "c", "sets": {"a": ["0","1","2","3","4","5","6","7","8","9"]}}
            }}"#,
    )
    .unwrap();
    let out = fincat(&[
        "--input",
        path.to_str().unwrap(),
        "--guard-nathom",
        "100",
        "codensity",
        "--G",
        "big",
        "--probe-size",
        "3",
    ]);
    assert_eq!(exit_code(&out), 2);
    let doc = stdout_json(&out);
    assert_eq!(doc["error"]["code"], "guard_exceeded");
    assert!(doc["error"]["message"]
        .as_str()
        .unwrap()
        .contains("exceeds guard cap"));
}

#[test]
fn unknown_name_is_usage_error() {
    let out = fincat(&[
        "--input",
        &data("yoneda.json"),
        "yoneda",
        "--X",
        "missing",
        "--object",
        "1",
    ]);
    assert_eq!(exit_code(&out), 2);
}
