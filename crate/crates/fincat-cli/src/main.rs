//! `fincat`: batch front end for the finite-category engine. Loads JSON
//! workspaces, dispatches to the engine, and emits deterministic JSON
//! verdicts (exit 0: holds, exit 1: fails mathematically, exit 2: usage or
//! validation error) plus optional DOT renderings.

use fincat_cli::{dot, load, output};

use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use fincat::constructions::{
    adjunction_check, codensity, coyoneda_check, density_check, nerve_realization,
    order_extension, yoneda_check, ConditionVerdict, OrderValue,
};
use fincat::set::FinSet;
use fincat::{
    colimit, hom_bijection_check, lan, limit, preservation_check, ran, verify_universal,
    Direction, Error as EngineError, SearchGuard, SetEndofunctor,
};

use load::{AnyTransformation, Workspace};
use output::{
    category_json, functor_json, kan_json, render, set_fn_json, set_functor_json,
    set_transformation_json,
};

#[derive(Parser)]
#[command(name = "fincat", version, about = "exact Kan extensions over finite categories")]
struct Cli {
    /// Input workspace file (repeatable).
    #[arg(long = "input", global = true)]
    input: Vec<PathBuf>,
    /// Cap on enumeration search-space estimates.
    #[arg(long = "guard-nathom", global = true, default_value_t = 1_000_000)]
    guard_nathom: u64,
    /// Pretty-print indent for JSON output (0 = compact).
    #[arg(long = "json-indent", global = true, default_value_t = 2)]
    json_indent: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotTarget {
    Category,
    Comma,
    Extension,
}

#[derive(Args)]
struct KanArgs {
    /// The functor to extend along.
    #[arg(long = "K")]
    k: String,
    /// The set-functor to extend.
    #[arg(long = "X")]
    x: String,
    /// Also write a DOT rendering of the extension tables.
    #[arg(long = "dot")]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the workspace (or one named value).
    Validate {
        #[arg(long = "cat")]
        cat: Option<String>,
        #[arg(long = "functor")]
        functor: Option<String>,
        #[arg(long = "setfunctor")]
        setfunctor: Option<String>,
        #[arg(long = "transformation")]
        transformation: Option<String>,
    },
    /// Limit of a set-valued diagram.
    Limit {
        #[arg(long = "diagram")]
        diagram: String,
    },
    /// Colimit of a set-valued diagram.
    Colimit {
        #[arg(long = "diagram")]
        diagram: String,
    },
    /// Build a comma category K↓b or b↓K.
    Comma {
        #[arg(long = "side")]
        side: SideArg,
        #[arg(long = "functor")]
        functor: String,
        #[arg(long = "object")]
        object: String,
        #[arg(long = "dot")]
        dot: Option<PathBuf>,
    },
    /// Left Kan extension of X along K.
    Lan(KanArgs),
    /// Right Kan extension of X along K.
    Ran(KanArgs),
    /// Verify the universal property against a candidate (L, eta).
    Universal {
        #[arg(long = "direction")]
        direction: DirectionArg,
        #[arg(long = "K")]
        k: String,
        #[arg(long = "X")]
        x: String,
        #[arg(long = "L")]
        l: String,
        #[arg(long = "eta")]
        eta: String,
    },
    /// Check the defining hom-set bijection against a probe functor H.
    HomBijection {
        #[arg(long = "direction")]
        direction: DirectionArg,
        #[arg(long = "K")]
        k: String,
        #[arg(long = "X")]
        x: String,
        #[arg(long = "H")]
        h: String,
    },
    /// Check L ⊣ R via the two left-extension conditions.
    Adjunction {
        #[arg(long = "L")]
        l: String,
        #[arg(long = "R")]
        r: String,
    },
    /// Codensity monad of a set-functor at the given probes.
    Codensity {
        #[arg(long = "G")]
        g: String,
        /// Probe set given as comma-separated element labels (may be empty).
        #[arg(long = "probe")]
        probes: Vec<String>,
        /// Probe set of the given size with canonical labels.
        #[arg(long = "probe-size")]
        probe_sizes: Vec<usize>,
    },
    /// Yoneda check at one object.
    Yoneda {
        #[arg(long = "X")]
        x: String,
        #[arg(long = "object")]
        object: String,
    },
    /// CoYoneda check at one object.
    Coyoneda {
        #[arg(long = "X")]
        x: String,
        #[arg(long = "object")]
        object: String,
    },
    /// Density check: reconstruct a presheaf from representables.
    Density {
        #[arg(long = "F")]
        f: String,
    },
    /// Nerve/realization bijection at one object of the target.
    Nerve {
        #[arg(long = "F")]
        f: String,
        #[arg(long = "X")]
        x: String,
        #[arg(long = "object")]
        object: String,
    },
    /// Monotone order extension along a chain inclusion.
    OrderExt {
        #[arg(long = "sub")]
        sub: String,
        #[arg(long = "sup")]
        sup: String,
        #[arg(long = "X")]
        x: String,
    },
    /// Check that an endofunctor preserves a Kan extension.
    Preserve {
        #[arg(long = "direction")]
        direction: DirectionArg,
        #[arg(long = "K")]
        k: String,
        #[arg(long = "X")]
        x: String,
        /// Use hom(c, -) with |c| = N.
        #[arg(long = "hom-size", conflicts_with = "identity")]
        hom_size: Option<usize>,
        /// Use the identity endofunctor.
        #[arg(long = "identity")]
        identity: bool,
    },
    /// Export a DOT rendering.
    Dot {
        #[arg(long = "target")]
        target: DotTarget,
        /// Category name (target = category).
        #[arg(long = "name")]
        name: Option<String>,
        /// Comma side (target = comma).
        #[arg(long = "side")]
        side: Option<SideArg>,
        /// Functor name (target = comma).
        #[arg(long = "functor")]
        functor: Option<String>,
        /// Base object (target = comma).
        #[arg(long = "object")]
        object: Option<String>,
        /// Extension direction (target = extension).
        #[arg(long = "direction")]
        direction: Option<DirectionArg>,
        #[arg(long = "K")]
        k: Option<String>,
        #[arg(long = "X")]
        x: Option<String>,
        /// Write to a file instead of standard output.
        #[arg(long = "out")]
        out: Option<PathBuf>,
    },
}

/// A command outcome: a JSON document plus the mathematical verdict.
struct Outcome {
    value: Value,
    holds: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, holds: true }
    }
}

enum Failure {
    /// Usage or validation problem: exit 2.
    Usage(Value),
    /// Mathematical failure verdict: exit 1.
    Mathematical(Value),
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(json!({
        "status": "error",
        "error": {"code": "usage", "message": message.into()},
    }))
}

fn engine_error(e: EngineError) -> Failure {
    let (code, is_usage) = match &e {
        EngineError::GuardExceeded { .. } => ("guard_exceeded", true),
        EngineError::NoColimit { .. } => ("no_colimit", false),
        EngineError::NoLimit { .. } => ("no_limit", false),
        EngineError::Universality { .. } => ("universality", false),
        EngineError::Mismatch(_) => ("mismatch", true),
        EngineError::UnknownObject(_) | EngineError::UnknownMorphism(_) => ("unknown_name", true),
        EngineError::UnsupportedValue(_) => ("unsupported", true),
        EngineError::InvalidCategory(_)
        | EngineError::InvalidDiagram(_)
        | EngineError::InvalidTransformation(_) => ("validation", true),
        EngineError::Internal(_) => ("internal", true),
    };
    let doc = json!({
        "status": if is_usage { "error" } else { "fail" },
        "error": {"code": code, "message": e.to_string()},
    });
    if is_usage {
        Failure::Usage(doc)
    } else {
        Failure::Mathematical(doc)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let indent = cli.json_indent;
    match run(cli) {
        Ok(outcome) => {
            println!("{}", render(&outcome.value, indent));
            if outcome.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Mathematical(doc)) => {
            println!("{}", render(&doc, indent));
            ExitCode::from(1)
        }
        Err(Failure::Usage(doc)) => {
            println!("{}", render(&doc, indent));
            eprintln!("{}", error_line(&doc));
            ExitCode::from(2)
        }
    }
}

/// Human-readable one-liner for stderr; colored only on a terminal with
/// NO_COLOR unset.
fn error_line(doc: &Value) -> String {
    let message = doc
        .pointer("/error/message")
        .and_then(Value::as_str)
        .unwrap_or("invalid invocation");
    let color = std::io::stderr().is_terminal() && std::env::var_os("NO_COLOR").is_none();
    if color {
        format!("\x1b[31merror:\x1b[0m {message}")
    } else {
        format!("error: {message}")
    }
}

fn load_workspace(cli: &Cli) -> Result<Workspace, Failure> {
    if cli.input.is_empty() {
        return Err(usage("at least one --input file is required"));
    }
    load::load(&cli.input, SearchGuard::new(cli.guard_nathom)).map_err(|e| {
        Failure::Usage(json!({
            "status": "error",
            "error": {
                "code": "load",
                "message": "workspace failed to load",
                "diagnostics": e.diagnostics.iter().map(|d| json!({
                    "file": d.file,
                    "item": d.item,
                    "message": d.message,
                })).collect::<Vec<_>>(),
            },
        }))
    })
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let ws = load_workspace(&cli)?;
    let guard = ws.guard;
    let name_err = |m: String| usage(m);

    match &cli.command {
        Command::Validate {
            cat,
            functor,
            setfunctor,
            transformation,
        } => {
            // Loading already validated everything; report on the named
            // value or on the whole catalog.
            if let Some(name) = cat {
                ws.category(name).map_err(name_err)?;
                Ok(Outcome::ok(json!({"status": "ok", "category": name})))
            } else if let Some(name) = functor {
                ws.functor(name).map_err(name_err)?;
                Ok(Outcome::ok(json!({"status": "ok", "functor": name})))
            } else if let Some(name) = setfunctor {
                ws.set_functor(name).map_err(name_err)?;
                Ok(Outcome::ok(json!({"status": "ok", "setfunctor": name})))
            } else if let Some(name) = transformation {
                let t = ws
                    .transformations
                    .get(name)
                    .ok_or_else(|| usage(format!("unknown transformation `{name}`")))?;
                let (kind, components) = match t {
                    AnyTransformation::BetweenFunctors(t) => {
                        ("functor", t.components().len())
                    }
                    AnyTransformation::BetweenSetFunctors(t) => {
                        ("setfunctor", t.components().len())
                    }
                };
                Ok(Outcome::ok(json!({
                    "status": "ok",
                    "transformation": name,
                    "kind": kind,
                    "components": components,
                })))
            } else {
                Ok(Outcome::ok(json!({
                    "status": "ok",
                    "counts": {
                        "categories": ws.categories.len(),
                        "functors": ws.functors.len(),
                        "setfunctors": ws.set_functors.len(),
                        "transformations": ws.transformations.len(),
                    },
                })))
            }
        }

        Command::Limit { diagram } => {
            let d = ws.set_functor(diagram).map_err(name_err)?;
            let cone = limit(d);
            let shape = d.shape();
            Ok(Outcome::ok(json!({
                "status": "ok",
                "apex": cone.apex.labels().collect::<Vec<_>>(),
                "legs": shape.objects().map(|o| (
                    shape.object_name(o).to_string(),
                    set_fn_json(&cone.legs[o.0]),
                )).collect::<Map<String, Value>>(),
            })))
        }

        Command::Colimit { diagram } => {
            let d = ws.set_functor(diagram).map_err(name_err)?;
            let cocone = colimit(d);
            let shape = d.shape();
            Ok(Outcome::ok(json!({
                "status": "ok",
                "apex": cocone.apex.labels().collect::<Vec<_>>(),
                "legs": shape.objects().map(|o| (
                    shape.object_name(o).to_string(),
                    set_fn_json(&cocone.legs[o.0]),
                )).collect::<Map<String, Value>>(),
                "classes": cocone.witness.classes.iter().map(|members| {
                    members.iter().map(|&(o, x)| json!([
                        shape.object_name(o),
                        d.set_at(o).label(x),
                    ])).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })))
        }

        Command::Comma {
            side,
            functor,
            object,
            dot: dot_path,
        } => {
            let k = ws.functor(functor).map_err(name_err)?;
            let b = ws
                .object_of(k.target().category(), object)
                .map_err(name_err)?;
            let comma = match side {
                SideArg::Left => fincat::comma_left(k, b).map_err(engine_error)?,
                SideArg::Right => fincat::comma_right(b, k).map_err(engine_error)?,
            };
            if let Some(path) = dot_path {
                let text = dot::category_dot(&format!("comma_{object}"), &comma.cat);
                std::fs::write(path, text)
                    .map_err(|e| usage(format!("cannot write DOT file: {e}")))?;
            }
            let b_cat = k.target().category();
            Ok(Outcome::ok(json!({
                "status": "ok",
                "category": category_json(&comma.cat),
                "projection": functor_json(&comma.projection),
                "witnesses": comma.cat.objects().map(|o| (
                    comma.cat.object_name(o).to_string(),
                    Value::from(b_cat.mor_name(comma.witnesses[o.0])),
                )).collect::<Map<String, Value>>(),
            })))
        }

        Command::Lan(args) | Command::Ran(args) => {
            let left = matches!(cli.command, Command::Lan(_));
            let k = ws.functor(&args.k).map_err(name_err)?;
            let x = ws.set_functor(&args.x).map_err(name_err)?;
            let kan = if left {
                lan(k, x, &guard).map_err(engine_error)?
            } else {
                ran(k, x, &guard).map_err(engine_error)?
            };
            if let Some(path) = &args.dot {
                let text = dot::extension_dot(
                    &format!("{}_{}", if left { "lan" } else { "ran" }, args.x),
                    &kan,
                );
                std::fs::write(path, text)
                    .map_err(|e| usage(format!("cannot write DOT file: {e}")))?;
            }
            let mut doc = Map::new();
            doc.insert("status".into(), "ok".into());
            if let Value::Object(body) = kan_json(&kan) {
                doc.extend(body);
            }
            Ok(Outcome::ok(Value::Object(doc)))
        }

        Command::Universal {
            direction,
            k,
            x,
            l,
            eta,
        } => {
            let k = ws.functor(k).map_err(name_err)?;
            let x = ws.set_functor(x).map_err(name_err)?;
            let lp = ws.set_functor(l).map_err(name_err)?;
            let etap = match ws.transformations.get(eta) {
                Some(AnyTransformation::BetweenSetFunctors(t)) => t,
                Some(AnyTransformation::BetweenFunctors(_)) => {
                    return Err(usage("--eta must name a transformation between setfunctors"))
                }
                None => return Err(usage(format!("unknown transformation `{eta}`"))),
            };
            let kan = match direction {
                DirectionArg::Left => lan(k, x, &guard).map_err(engine_error)?,
                DirectionArg::Right => ran(k, x, &guard).map_err(engine_error)?,
            };
            // The candidate transformation must relate X and L∘K; rebuild it
            // against the computed restriction so the endpoints are checked.
            let restricted = lp.precompose(k).map_err(engine_error)?;
            let rebuilt = match kan.direction {
                Direction::Left => fincat::Transformation::new(
                    x.clone(),
                    restricted,
                    etap.components().to_vec(),
                ),
                Direction::Right => fincat::Transformation::new(
                    restricted,
                    x.clone(),
                    etap.components().to_vec(),
                ),
            }
            .map_err(engine_error)?;
            match verify_universal(&kan, lp, &rebuilt, &guard) {
                Ok(found) => Ok(Outcome::ok(json!({
                    "status": "ok",
                    "survivors": 1,
                    "factoring": set_transformation_json(&found),
                }))),
                Err(EngineError::Universality { survivors, .. }) => {
                    Err(Failure::Mathematical(json!({
                        "status": "fail",
                        "survivors": survivors,
                    })))
                }
                Err(e) => Err(engine_error(e)),
            }
        }

        Command::HomBijection { direction, k, x, h } => {
            let k = ws.functor(k).map_err(name_err)?;
            let x = ws.set_functor(x).map_err(name_err)?;
            let h = ws.set_functor(h).map_err(name_err)?;
            let kan = match direction {
                DirectionArg::Left => lan(k, x, &guard).map_err(engine_error)?,
                DirectionArg::Right => ran(k, x, &guard).map_err(engine_error)?,
            };
            let report = hom_bijection_check(&kan, h, &guard).map_err(engine_error)?;
            let doc = json!({
                "status": if report.holds { "ok" } else { "fail" },
                "extension_side": report.extension_side,
                "restricted_side": report.restricted_side,
                "injective": report.injective,
                "holds": report.holds,
            });
            Ok(Outcome {
                holds: report.holds,
                value: doc,
            })
        }

        Command::Adjunction { l, r } => {
            let l = ws.functor(l).map_err(name_err)?;
            let r = ws.functor(r).map_err(name_err)?;
            let report = adjunction_check(l, r, &guard).map_err(engine_error)?;
            let condition = |v: &ConditionVerdict| match v {
                ConditionVerdict::Holds { .. } => json!({"holds": true}),
                ConditionVerdict::NotIsomorphic { expected_sizes } => json!({
                    "holds": false,
                    "witness": expected_sizes,
                }),
                ConditionVerdict::ColimitMissing { detail } => json!({
                    "holds": false,
                    "missing_colimit": detail,
                }),
            };
            let doc = json!({
                "status": if report.holds { "ok" } else { "fail" },
                "condition1": condition(&report.condition1),
                "condition2": condition(&report.condition2),
                "triangles": report.triangles.as_ref().map(|t| json!({
                    "left": t.left,
                    "right": t.right,
                })),
                "holds": report.holds,
            });
            Ok(Outcome {
                holds: report.holds,
                value: doc,
            })
        }

        Command::Codensity {
            g,
            probes,
            probe_sizes,
        } => {
            let g = ws.set_functor(g).map_err(name_err)?;
            let mut probe_sets = Vec::new();
            for labels in probes {
                let parts: Vec<String> = if labels.is_empty() {
                    Vec::new()
                } else {
                    labels.split(',').map(str::to_string).collect()
                };
                probe_sets.push(FinSet::new(parts).map_err(engine_error)?);
            }
            for &n in probe_sizes {
                probe_sets.push(FinSet::canonical(n, "b"));
            }
            if probe_sets.is_empty() {
                return Err(usage("at least one --probe or --probe-size is required"));
            }
            let monad = codensity(g, &probe_sets, &guard).map_err(engine_error)?;
            let holds = monad.laws.all_hold();
            let doc = json!({
                "status": if holds { "ok" } else { "fail" },
                "probes": monad.probes.iter().map(|p| json!({
                    "probe": p.probe.labels().collect::<Vec<_>>(),
                    "value_size": p.value.size(),
                    "value": p.value.labels().collect::<Vec<_>>(),
                    "unit": set_fn_json(&p.unit),
                    "square_size": p.square_value().map(FinSet::size),
                    "mult": p.mult().map(set_fn_json),
                })).collect::<Vec<_>>(),
                "laws": {
                    "left_unit": monad.laws.left_unit,
                    "right_unit": monad.laws.right_unit,
                    "associativity": monad.laws.associativity,
                    "mult_agreement": monad.laws.mult_agreement,
                    "unit_natural": monad.laws.unit_natural,
                    "mult_natural": monad.laws.mult_natural,
                    "notes": monad.laws.notes,
                },
            });
            Ok(Outcome { holds, value: doc })
        }

        Command::Yoneda { x, object } => {
            let x = ws.set_functor(x).map_err(name_err)?;
            let a = ws.object_of(x.shape(), object).map_err(name_err)?;
            let report = yoneda_check(x, a, &guard).map_err(engine_error)?;
            Ok(Outcome {
                holds: report.holds,
                value: json!({
                    "status": if report.holds { "ok" } else { "fail" },
                    "value_size": report.value_size,
                    "limit_size": report.limit_size,
                    "nat_hom_size": report.nat_hom_size,
                    "into_limit": set_fn_json(&report.into_limit),
                    "holds": report.holds,
                }),
            })
        }

        Command::Coyoneda { x, object } => {
            let x = ws.set_functor(x).map_err(name_err)?;
            let a = ws.object_of(x.shape(), object).map_err(name_err)?;
            let report = coyoneda_check(x, a, &guard).map_err(engine_error)?;
            Ok(Outcome {
                holds: report.holds,
                value: json!({
                    "status": if report.holds { "ok" } else { "fail" },
                    "value_size": report.value_size,
                    "colimit_size": report.colimit_size,
                    "from_colimit": set_fn_json(&report.from_colimit),
                    "holds": report.holds,
                }),
            })
        }

        Command::Density { f } => {
            let f = ws.set_functor(f).map_err(name_err)?;
            let report = density_check(f, &guard).map_err(engine_error)?;
            Ok(Outcome {
                holds: report.holds,
                value: json!({
                    "status": if report.holds { "ok" } else { "fail" },
                    "per_object": report.per_object.iter().map(|(name, rec, orig)| json!({
                        "object": name,
                        "reconstructed": rec,
                        "original": orig,
                    })).collect::<Vec<_>>(),
                    "reconstruction": set_functor_json(&report.reconstruction),
                    "holds": report.holds,
                }),
            })
        }

        Command::Nerve { f, x, object } => {
            let f = ws.functor(f).map_err(name_err)?;
            let x = ws.set_functor(x).map_err(name_err)?;
            let e = ws
                .object_of(f.target().category(), object)
                .map_err(name_err)?;
            let report = nerve_realization(f, x, e, &guard).map_err(engine_error)?;
            let e_cat = f.target().category();
            Ok(Outcome {
                holds: report.holds,
                value: json!({
                    "status": if report.holds { "ok" } else { "fail" },
                    "realization": e_cat.object_name(report.realization),
                    "nerve": set_functor_json(&report.nerve),
                    "hom_size": report.hom_size,
                    "nat_size": report.nat_size,
                    "holds": report.holds,
                }),
            })
        }

        Command::OrderExt { sub, sup, x } => {
            let sub = ws.category(sub).map_err(name_err)?;
            let sup = ws.category(sup).map_err(name_err)?;
            let x = ws.functor(x).map_err(name_err)?;
            let report = order_extension(sub, sup, x, &guard).map_err(engine_error)?;
            let v_cat = x.target().category();
            let table_json = |table: &[OrderValue]| -> Value {
                sup.objects()
                    .map(|b| {
                        (
                            sup.object_name(b).to_string(),
                            match table[b.0] {
                                OrderValue::Value(o) => Value::from(v_cat.object_name(o)),
                                OrderValue::UndefinedEmpty => Value::Null,
                            },
                        )
                    })
                    .collect::<Map<String, Value>>()
                    .into()
            };
            Ok(Outcome {
                holds: report.holds,
                value: json!({
                    "status": if report.holds { "ok" } else { "fail" },
                    "lan": table_json(&report.lan_table),
                    "ran": table_json(&report.ran_table),
                    "agrees_with_order_oracle": report.holds,
                }),
            })
        }

        Command::Preserve {
            direction,
            k,
            x,
            hom_size,
            identity,
        } => {
            let k = ws.functor(k).map_err(name_err)?;
            let x = ws.set_functor(x).map_err(name_err)?;
            let endo = match (hom_size, identity) {
                (Some(n), false) => SetEndofunctor::representable(FinSet::canonical(*n, "c")),
                (None, true) => SetEndofunctor::Identity,
                _ => return Err(usage("choose exactly one of --hom-size or --identity")),
            };
            let kan = match direction {
                DirectionArg::Left => lan(k, x, &guard).map_err(engine_error)?,
                DirectionArg::Right => ran(k, x, &guard).map_err(engine_error)?,
            };
            let report = preservation_check(&endo, &kan, &guard).map_err(engine_error)?;
            Ok(Outcome {
                holds: report.holds,
                value: json!({
                    "status": if report.holds { "ok" } else { "fail" },
                    "per_object": report.per_object.iter().map(|(name, a, b)| json!({
                        "object": name,
                        "direct": a,
                        "mapped": b,
                    })).collect::<Vec<_>>(),
                    "holds": report.holds,
                }),
            })
        }

        Command::Dot {
            target,
            name,
            side,
            functor,
            object,
            direction,
            k,
            x,
            out,
        } => {
            let text = match target {
                DotTarget::Category => {
                    let name = name
                        .as_ref()
                        .ok_or_else(|| usage("--name is required for --target category"))?;
                    let cat = ws.category(name).map_err(name_err)?;
                    dot::category_dot(name, cat)
                }
                DotTarget::Comma => {
                    let functor = functor
                        .as_ref()
                        .ok_or_else(|| usage("--functor is required for --target comma"))?;
                    let object = object
                        .as_ref()
                        .ok_or_else(|| usage("--object is required for --target comma"))?;
                    let side =
                        side.ok_or_else(|| usage("--side is required for --target comma"))?;
                    let kf = ws.functor(functor).map_err(name_err)?;
                    let b = ws
                        .object_of(kf.target().category(), object)
                        .map_err(name_err)?;
                    let comma = match side {
                        SideArg::Left => fincat::comma_left(kf, b).map_err(engine_error)?,
                        SideArg::Right => fincat::comma_right(b, kf).map_err(engine_error)?,
                    };
                    dot::category_dot(&format!("comma_{object}"), &comma.cat)
                }
                DotTarget::Extension => {
                    let k = k
                        .as_ref()
                        .ok_or_else(|| usage("--K is required for --target extension"))?;
                    let x = x
                        .as_ref()
                        .ok_or_else(|| usage("--X is required for --target extension"))?;
                    let direction = direction
                        .ok_or_else(|| usage("--direction is required for --target extension"))?;
                    let kf = ws.functor(k).map_err(name_err)?;
                    let xf = ws.set_functor(x).map_err(name_err)?;
                    let kan = match direction {
                        DirectionArg::Left => lan(kf, xf, &guard).map_err(engine_error)?,
                        DirectionArg::Right => ran(kf, xf, &guard).map_err(engine_error)?,
                    };
                    dot::extension_dot(x, &kan)
                }
            };
            match out {
                Some(path) => {
                    std::fs::write(path, &text)
                        .map_err(|e| usage(format!("cannot write DOT file: {e}")))?;
                    Ok(Outcome::ok(json!({
                        "status": "ok",
                        "path": path.display().to_string(),
                    })))
                }
                None => {
                    // DOT is the primary output here; print it raw.
                    print!("{text}");
                    Ok(Outcome::ok(json!({"status": "ok"})))
                }
            }
        }
    }
}
