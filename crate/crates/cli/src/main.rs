//! `cubecomp` — exact computations with twisted Bhargava cubes, their rank-2
//! composition algebras, Jordan-algebra constructions, and integral module
//! triples, over Q or a prime field.
//!
//! Inputs and outputs are JSON documents; every output re-parses through the
//! same subcommands. Exit codes: 0 success, 2 invalid input, 3 a checked
//! property failed (a replayable counterexample document is printed).

mod ops;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubecomp::field::{Fp, FpCtx, QCtx, Rat};
use ops::{CliError, FieldSel, OrbitsFormat, Rendered};
use serde_json::Value;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cubecomp", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Scalar field: `Q` or `Fp:<p>` (a document's own `field` key wins)
    #[arg(long)]
    field: Option<String>,
    /// Cubic algebra shape: inline JSON or a file path (a document's own
    /// `shape` key wins)
    #[arg(long)]
    algebra: Option<String>,
    /// Write the output document to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InputArg {
    /// Input JSON document: a path, or `-`/omitted for stdin
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quartic invariant and its square class for a cube
    Invariant {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
    },
    /// Reduce a nondegenerate cube, emitting the group word and the result
    Reduce {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
    },
    /// Slice a split-algebra cube into three binary quadratic forms
    Slice {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
    },
    /// Attach the rank-2 composition structure to a cube
    ToComp {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
    },
    /// Read the cube back off a composition document
    ToCube {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
    },
    /// Fuzz the composition-algebra axioms for a cube's structure
    CheckAxioms {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
        /// Number of random vectors to test (default 100; a document's
        /// own `samples` key wins over the default)
        #[arg(long)]
        samples: Option<usize>,
        /// RNG seed; identical seeds give identical runs (default 0; a
        /// document's own `seed` key wins over the default)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Convert between reduced cubes and Tits-construction pairs
    Tits {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
    },
    /// Derive the cube of a rank-1 element in a degree-3 Jordan algebra
    Springer {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
    },
    /// Integral module triple of an integer reduced cube over Z
    Gauss {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
        /// Number of random module points to verify (default 20; a
        /// document's own `samples` key wins over the default)
        #[arg(long)]
        samples: Option<usize>,
        /// RNG seed; identical seeds give identical runs (default 0; a
        /// document's own `seed` key wins over the default)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Enumerate group orbits on cubes over a small prime field
    Orbits {
        #[command(flatten)]
        common: Common,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Seeded property battery over a chosen field and shape
    Verify {
        #[command(flatten)]
        common: Common,
        /// Number of samples per suite
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// RNG seed; identical seeds give identical runs
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Flag wins, then the document's own key, then the default — so a
/// counterexample document replays with no extra arguments.
fn resolve_num(flag: Option<u64>, doc: &Value, key: &str, default: u64) -> u64 {
    flag.or_else(|| doc.get(key).and_then(Value::as_u64))
        .unwrap_or(default)
}

fn read_doc(input: &InputArg) -> Result<Value, CliError> {
    let (source, text) = match &input.input {
        Some(p) if p.as_os_str() != "-" => (
            p.display().to_string(),
            std::fs::read_to_string(p)
                .map_err(|e| ops::validation(format!("cannot read {}: {e}", p.display())))?,
        ),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| ops::validation(format!("cannot read stdin: {e}")))?;
            ("<stdin>".to_string(), buf)
        }
    };
    serde_json::from_str(&text)
        .map_err(|e| ops::validation(format!("{source}: invalid JSON: {e}")))
}

/// Resolve field and shape (document keys win over flags) and run the body
/// under the matching scalar type.
macro_rules! with_alg {
    ($common:expr, $doc:expr, |$field:ident, $alg:ident, $height:ident| $body:expr) => {{
        let $field = ops::resolve_field($doc, $common.field.as_deref())?;
        let shape = ops::resolve_shape($doc, $common.algebra.as_deref())?;
        let $height = ops::default_height(&$field);
        match $field {
            FieldSel::Q => {
                let $alg = ops::build_alg::<Rat>(&QCtx, &shape)?;
                $body
            }
            FieldSel::Fp(p) => {
                let ctx = FpCtx::new(p).map_err(|e| ops::validation(e.to_string()))?;
                let $alg = ops::build_alg::<Fp>(&ctx, &shape)?;
                $body
            }
        }
    }};
}

fn run(cmd: &Cmd) -> Result<(Rendered, Option<PathBuf>), CliError> {
    let (value, out) = match cmd {
        Cmd::Invariant { common, input } => {
            let doc = read_doc(input)?;
            let v = with_alg!(common, Some(&doc), |field, alg, _h| {
                ops::op_invariant(&field, &alg, &doc)?
            });
            (v, common.out.clone())
        }
        Cmd::Reduce { common, input } => {
            let doc = read_doc(input)?;
            let v = with_alg!(common, Some(&doc), |field, alg, _h| {
                ops::op_reduce(&field, &alg, &doc)?
            });
            (v, common.out.clone())
        }
        Cmd::Slice { common, input } => {
            let doc = read_doc(input)?;
            let v = with_alg!(common, Some(&doc), |field, alg, _h| {
                ops::op_slice(&field, &alg, &doc)?
            });
            (v, common.out.clone())
        }
        Cmd::ToComp { common, input } => {
            let doc = read_doc(input)?;
            let v = with_alg!(common, Some(&doc), |field, alg, _h| {
                ops::op_to_comp(&field, &alg, &doc)?
            });
            (v, common.out.clone())
        }
        Cmd::ToCube { common, input } => {
            let doc = read_doc(input)?;
            let v = with_alg!(common, Some(&doc), |field, alg, _h| {
                ops::op_to_cube(&field, &alg, &doc)?
            });
            (v, common.out.clone())
        }
        Cmd::CheckAxioms {
            common,
            input,
            samples,
            seed,
        } => {
            let doc = read_doc(input)?;
            let samples = resolve_num(samples.map(|s| s as u64), &doc, "samples", 100) as usize;
            let seed = resolve_num(*seed, &doc, "seed", 0);
            let v = with_alg!(common, Some(&doc), |field, alg, height| {
                ops::op_check_axioms(&field, &alg, &doc, samples, seed, height)?
            });
            (v, common.out.clone())
        }
        Cmd::Tits { common, input } => {
            let doc = read_doc(input)?;
            let v = with_alg!(common, Some(&doc), |field, alg, _h| {
                ops::op_tits(&field, &alg, &doc)?
            });
            (v, common.out.clone())
        }
        Cmd::Springer { common, input } => {
            let doc = read_doc(input)?;
            let field = ops::resolve_field(Some(&doc), common.field.as_deref())?;
            let v = match field {
                FieldSel::Q => ops::op_springer::<Rat>(&field, &QCtx, &doc)?,
                FieldSel::Fp(p) => {
                    let ctx = FpCtx::new(p).map_err(|e| ops::validation(e.to_string()))?;
                    ops::op_springer::<Fp>(&field, &ctx, &doc)?
                }
            };
            (v, common.out.clone())
        }
        Cmd::Gauss {
            common,
            input,
            samples,
            seed,
        } => {
            let doc = read_doc(input)?;
            let field = ops::resolve_field(Some(&doc), common.field.as_deref())?;
            if field != FieldSel::Q {
                return Err(ops::validation(
                    "module triples live over Z; the field must be Q",
                ));
            }
            let shape = ops::resolve_shape(Some(&doc), common.algebra.as_deref())?;
            if shape != serde_json::json!("split") {
                return Err(ops::validation(
                    "module triples are computed over the split cubic algebra",
                ));
            }
            let samples = resolve_num(samples.map(|s| s as u64), &doc, "samples", 20) as usize;
            let seed = resolve_num(*seed, &doc, "seed", 0);
            (ops::op_gauss(&doc, samples, seed)?, common.out.clone())
        }
        Cmd::Orbits { common, format } => {
            let field = ops::resolve_field(None, common.field.as_deref())?;
            let fmt = match format {
                Format::Json => OrbitsFormat::Json,
                Format::Csv => OrbitsFormat::Csv,
            };
            return Ok((ops::op_orbits(&field, fmt)?, common.out.clone()));
        }
        Cmd::Verify {
            common,
            samples,
            seed,
        } => {
            let v = with_alg!(common, None, |field, alg, height| {
                ops::op_verify(&field, &alg, *samples, *seed, height)?
            });
            (v, common.out.clone())
        }
    };
    Ok((Rendered::Json(value), out))
}

fn emit(rendered: &Rendered, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = match rendered {
        Rendered::Json(v) => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON serialization");
            s.push('\n');
            s
        }
        Rendered::Text(t) => {
            let mut t = t.clone();
            if !t.ends_with('\n') {
                t.push('\n');
            }
            t
        }
    };
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok((rendered, out)) => match emit(&rendered, out.as_ref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                ExitCode::from(2)
            }
        },
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Property {
            message,
            counterexample,
        }) => {
            let out = match &cli.cmd {
                Cmd::Invariant { common, .. }
                | Cmd::Reduce { common, .. }
                | Cmd::Slice { common, .. }
                | Cmd::ToComp { common, .. }
                | Cmd::ToCube { common, .. }
                | Cmd::CheckAxioms { common, .. }
                | Cmd::Tits { common, .. }
                | Cmd::Springer { common, .. }
                | Cmd::Gauss { common, .. }
                | Cmd::Orbits { common, .. }
                | Cmd::Verify { common, .. } => common.out.clone(),
            };
            let _ = emit(&Rendered::Json(counterexample), out.as_ref());
            eprintln!("property failure: {message}");
            ExitCode::from(3)
        }
    }
}
