use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use uneval_core::analysis::{Analyzer, EvalPair};
use uneval_core::harness::{self, document_size};
use uneval_core::json::serialize_json_pretty;
use uneval_core::pattern::PatternSet;
use uneval_core::schema::serialize_subschema;
use uneval_core::{
    elim_document, enf_named, parse_json, parse_schema, serialize_schema, JsonValue, SchemaDocument, Target, Validator,
};

#[derive(Parser)]
#[command(
    name = "uneval",
    version,
    about = "Validate JSON with annotation semantics and rewrite unevaluated* keywords away"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate one instance and report its evaluated properties and items.
    Validate {
        #[arg(long)]
        schema: PathBuf,
        #[arg(long)]
        instance: PathBuf,
    },
    /// Rewrite the schema without unevaluatedProperties/unevaluatedItems.
    Eliminate {
        #[arg(long)]
        schema: PathBuf,
        /// Write the schema here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Report sizes, timing and normal-form branch counts.
        #[arg(long)]
        stats: bool,
    },
    /// Print the evaluation normal form of a named schema.
    Enf {
        #[arg(long)]
        schema: PathBuf,
        /// `/$defs/name`; the root when omitted.
        #[arg(long)]
        pointer: Option<String>,
    },
    /// Print the static property and item bounds of every named schema.
    Analyze {
        #[arg(long)]
        schema: PathBuf,
    },
    /// Compare validity before and after elimination.
    Difftest {
        #[arg(long)]
        schema: PathBuf,
        /// Directory of instance files; the built-in enumeration when omitted.
        #[arg(long)]
        instances: Option<PathBuf>,
    },
    /// Print a member of one of the exponential schema families.
    GenFamily {
        #[arg(long, value_enum)]
        kind: Family,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Sn,
    San,
}

/// A failure that maps to exit status 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

fn read_json(path: &Path) -> Result<JsonValue, Fatal> {
    let bytes = fs::read(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    parse_json(&bytes).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn read_schema(path: &Path) -> Result<SchemaDocument, Fatal> {
    parse_schema(&read_json(path)?).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn emit(value: &JsonValue) {
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(io::stdout().lock(), "{}", serialize_json_pretty(value));
}

fn patterns(set: &PatternSet) -> JsonValue {
    JsonValue::Array(set.sources().into_iter().map(JsonValue::String).collect())
}

fn pair(p: &EvalPair) -> JsonValue {
    let h = match p.h {
        uneval_core::ItemBound::Finite(h) => JsonValue::from_i64(h as i64),
        uneval_core::ItemBound::Infinite => JsonValue::string("inf"),
    };
    JsonValue::object([("h", h), ("guard", serialize_subschema(&p.guard))])
}

fn undefined_or<T>(v: Option<T>, f: impl Fn(&T) -> JsonValue) -> JsonValue {
    v.as_ref().map(f).unwrap_or_else(|| JsonValue::string("undefined"))
}

fn parse_pointer(pointer: Option<&str>) -> Result<Target, Fatal> {
    let Some(p) = pointer else { return Ok(Target::Root) };
    let p = p.strip_prefix('#').unwrap_or(p);
    if p.is_empty() {
        return Ok(Target::Root);
    }
    match p.strip_prefix("/$defs/") {
        Some(name) if !name.contains('/') => Ok(Target::Def(name.replace("~1", "/").replace("~0", "~"))),
        _ => Err(Fatal(format!("unsupported pointer {p:?}; expected /$defs/name"))),
    }
}

fn run(command: Command) -> Result<ExitCode, Fatal> {
    match command {
        Command::Validate { schema, instance } => {
            let doc = read_schema(&schema)?;
            let instance = read_json(&instance)?;
            let out = Validator::new(&doc)?.validate(&instance);
            emit(&JsonValue::object([
                ("valid", JsonValue::Bool(out.valid)),
                (
                    "evaluatedProperties",
                    JsonValue::Array(out.annotation.props.into_iter().map(JsonValue::String).collect()),
                ),
                (
                    "evaluatedItems",
                    JsonValue::Array(out.annotation.items.into_iter().map(|i| JsonValue::from_i64(i as i64)).collect()),
                ),
            ]));
            Ok(if out.valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Eliminate { schema, output, stats } => {
            let doc = read_schema(&schema)?;
            let start = Instant::now();
            let (out, elim_stats) = elim_document(&doc)?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let rendered = serialize_schema(&out);
            let stats_block = || {
                let input = document_size(&doc);
                let output = document_size(&out);
                JsonValue::object([
                    ("input_bytes", JsonValue::from_i64(input as i64)),
                    ("output_bytes", JsonValue::from_i64(output as i64)),
                    (
                        "size_ratio",
                        format!("{:.4}", output as f64 / input.max(1) as f64).parse().unwrap_or(JsonValue::Null),
                    ),
                    ("elapsed_ms", format!("{elapsed:.4}").parse().unwrap_or(JsonValue::Null)),
                    (
                        "enf_branches",
                        JsonValue::object(
                            elim_stats.enf_branches.iter().map(|(k, v)| (k.clone(), JsonValue::from_i64(*v as i64))),
                        ),
                    ),
                ])
            };
            match (output, stats) {
                (Some(path), stats) => {
                    fs::write(&path, serialize_json_pretty(&rendered) + "\n")
                        .map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
                    if stats {
                        emit(&stats_block());
                    }
                }
                (None, false) => emit(&rendered),
                (None, true) => emit(&JsonValue::object([("schema", rendered), ("stats", stats_block())])),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enf { schema, pointer } => {
            let doc = read_schema(&schema)?;
            let target = parse_pointer(pointer.as_deref())?;
            let enf = enf_named(&doc, &target)?;
            let branches = enf.as_any_of().map_or(0, <[_]>::len);
            emit(&JsonValue::object([
                ("enf", serialize_subschema(&enf)),
                ("branches", JsonValue::from_i64(branches as i64)),
            ]));
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze { schema } => {
            let doc = read_schema(&schema)?;
            Validator::new(&doc)?;
            let a = Analyzer::new(&doc);
            let entries = doc
                .named()
                .map(|(t, s)| {
                    let (min_ep, max_ep) = a.ep(s);
                    let (min_ei, max_ei) = a.ei(s);
                    JsonValue::object([
                        ("target", JsonValue::string(t.to_string())),
                        ("minEP", patterns(&min_ep)),
                        ("maxEP", patterns(&max_ep)),
                        ("minEI", pair(&min_ei)),
                        ("maxEI", pair(&max_ei)),
                        ("exEP", undefined_or(a.ex_ep(s), patterns)),
                        ("exEI", undefined_or(a.ex_ei(s), pair)),
                    ])
                })
                .collect();
            emit(&JsonValue::Array(entries));
            Ok(ExitCode::SUCCESS)
        }
        Command::Difftest { schema, instances } => {
            let doc = read_schema(&schema)?;
            let id = schema.display().to_string();
            let inputs = match instances {
                Some(dir) => {
                    if !dir.is_dir() {
                        return Err(Fatal(format!("{}: not a directory", dir.display())));
                    }
                    harness::read_instances(&dir)?
                }
                None => {
                    harness::universe(&doc).into_iter().enumerate().map(|(i, v)| (format!("#{i}"), Ok(v))).collect()
                }
            };
            let report = harness::difftest(&id, &doc, &inputs)?;
            if report.instances_total == 0 {
                eprintln!("warning: no instances to compare");
            }
            emit(&report.to_json());
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::GenFamily { kind, n } => {
            let n = n as usize;
            emit(&match kind {
                Family::Sn => harness::family_sn_json(n),
                Family::San => harness::family_san_json(n),
            });
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
