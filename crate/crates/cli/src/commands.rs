//! Command-line surface. [`run`] does all the work and returns the text to
//! print with an exit code, so tests can drive it without a process.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use polygraph_core::counterexample::verify_counterexample;
use polygraph_core::{
    check_pullback_square, enumerate_cells, normalize, pi2_bounded, product2, pullback2, Computad2,
    Computad2Morphism, Error, SetSquare,
};

use crate::dsl::{
    builtins, parse_document, parse_term, print_computad2, print_morphism, resolve_term,
    Definition, DslDocument, DslError, Name, Pos,
};
use crate::random::selftest;
use crate::report::{
    emit_report, CellDoc, CellsDoc, CounterexampleDoc, DefinitionSummary, Format, GeneratorDoc,
    NormalDoc, Pi2Doc, ProductDoc, PullbackDoc, Render, ValidateDoc,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "polygraph",
    version,
    about = "Computads with Eckmann-Hilton normal forms, products, pullbacks and parallel pairs"
)]
pub struct Cli {
    /// Presentation files (`.cpd`) to load, in order. Built-in names
    /// paper_A, paper_B, paper_C, paper_alpha and paper_beta are always available.
    #[arg(short, long = "input", global = true)]
    pub inputs: Vec<PathBuf>,
    /// Largest cell degree to enumerate.
    #[arg(short = 'k', long, default_value_t = 3, global = true)]
    pub max_degree: usize,
    #[arg(short, long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that every loaded definition is well formed and summarize it.
    Validate,
    /// Print the product of two 2-computads with its projections.
    Product { left: String, right: String },
    /// List the 2-cells of an EH computad by degree.
    Cells { computad: String },
    /// List the parallel pairs of 2-cells of bounded degree.
    Pi2 { computad: String },
    /// Test whether the square of cell maps over a cospan F, G with apex
    /// their pullback is a pullback of sets (exit 1 if not).
    CheckPullback { left: String, right: String },
    /// Check that the parallel-pair functor fails to preserve paper_A x paper_B.
    VerifyCounterexample,
    /// Normal form of a cell term, e.g. `v(a1, h(a2, id(x)))`.
    Normalize { computad: String, term: String },
    /// Randomized check of normal forms against rewrites and exchanges.
    Selftest {
        /// Computad to draw terms from; defaults to paper_A x paper_B.
        computad: Option<String>,
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
}

/// What a command prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report<R: Render + Serialize>(code: i32, r: &R, format: Format) -> Self {
        Outcome {
            code,
            stdout: emit_report(r, format),
            stderr: String::new(),
        }
    }

    fn failure(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }

    fn core(e: Error) -> Self {
        let code = match e {
            Error::NotEHClass(_) => EXIT_UNSUPPORTED,
            _ => EXIT_INPUT,
        };
        Outcome::failure(code, format!("error: {e}"))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::failure(code, text.trim_end())
            }
        }
    }
}

/// Loads the builtins and every input file into one document.
pub fn load(inputs: &[PathBuf]) -> Result<(DslDocument, Vec<(String, DslDocument)>), Outcome> {
    let mut scope = builtins();
    let mut loaded = Vec::new();
    for path in inputs {
        let shown = path.display().to_string();
        let src = std::fs::read_to_string(path)
            .map_err(|e| Outcome::failure(EXIT_INPUT, format!("error: {shown}: {e}")))?;
        let doc = parse_document(&src, &scope).map_err(|e| dsl_failure(&shown, &e))?;
        scope
            .merge(doc.clone())
            .expect("parse_document rejects clashing names");
        loaded.push((shown, doc));
    }
    Ok((scope, loaded))
}

fn dsl_failure(file: &str, e: &DslError) -> Outcome {
    let code = match e.core_error() {
        Some(Error::NotEHClass(_)) => EXIT_UNSUPPORTED,
        _ => EXIT_INPUT,
    };
    Outcome::failure(code, format!("error: {file}:{e}"))
}

fn computad<'a>(scope: &'a DslDocument, name: &str) -> Result<&'a Computad2, Outcome> {
    scope
        .computad(name)
        .ok_or_else(|| Outcome::failure(EXIT_INPUT, format!("error: no 2-computad named `{name}`")))
}

fn morphism<'a>(scope: &'a DslDocument, name: &str) -> Result<&'a Computad2Morphism, Outcome> {
    scope
        .morphism(name)
        .ok_or_else(|| Outcome::failure(EXIT_INPUT, format!("error: no morphism named `{name}`")))
}

pub fn run(cli: &Cli) -> Outcome {
    match run_inner(cli) {
        Ok(o) | Err(o) => o,
    }
}

fn run_inner(cli: &Cli) -> Result<Outcome, Outcome> {
    let k = cli.max_degree;
    let fmt = cli.format;
    let (scope, loaded) = load(&cli.inputs)?;
    Ok(match &cli.command {
        Command::Validate => {
            let files = loaded.iter().map(|(f, _)| f.clone()).collect();
            let shown: Vec<&DslDocument> = if loaded.is_empty() {
                vec![&scope]
            } else {
                loaded.iter().map(|(_, d)| d).collect()
            };
            let definitions = shown
                .into_iter()
                .flat_map(|d| d.iter())
                .map(|(name, def)| summarize(name, def))
                .collect();
            Outcome::report(EXIT_OK, &ValidateDoc { files, definitions }, fmt)
        }
        Command::Product { left, right } => {
            let (a, b) = (computad(&scope, left)?, computad(&scope, right)?);
            let span = product2(a, b);
            let name = format!("{left}_x_{right}");
            let mut presentation = print_computad2(&name, &span.computad);
            presentation.push('\n');
            presentation.push_str(&print_morphism("proj_left", &name, left, &span.left));
            presentation.push('\n');
            presentation.push_str(&print_morphism("proj_right", &name, right, &span.right));
            let g = span.computad.skeleton();
            let doc = ProductDoc {
                left: left.clone(),
                right: right.clone(),
                vertices: g.vertices().to_vec(),
                edges: g
                    .edges()
                    .iter()
                    .map(|e| {
                        let (s, t) = g.endpoints(e).expect("edge of the product");
                        GeneratorDoc {
                            name: e.clone(),
                            source: s.clone(),
                            target: t.clone(),
                        }
                    })
                    .collect(),
                indets2: span
                    .computad
                    .generators()
                    .map(|(n, b)| GeneratorDoc {
                        name: n.clone(),
                        source: b.src.to_string(),
                        target: b.tgt.to_string(),
                    })
                    .collect(),
                presentation,
            };
            Outcome::report(EXIT_OK, &doc, fmt)
        }
        Command::Cells { computad: name } => {
            let graded = enumerate_cells(computad(&scope, name)?, k).map_err(Outcome::core)?;
            Outcome::report(EXIT_OK, &CellsDoc::new(name, &graded), fmt)
        }
        Command::Pi2 { computad: name } => {
            let pairs = pi2_bounded(computad(&scope, name)?, k).map_err(Outcome::core)?;
            let doc = Pi2Doc {
                computad: name.clone(),
                max_degree: k,
                count: pairs.len(),
                pairs: pairs
                    .iter()
                    .map(|p| [CellDoc::from(&p.first), CellDoc::from(&p.second)])
                    .collect(),
            };
            Outcome::report(EXIT_OK, &doc, fmt)
        }
        Command::CheckPullback { left, right } => {
            let (f, g) = (morphism(&scope, left)?, morphism(&scope, right)?);
            let apex = pullback2(f, g).map_err(|e| {
                Outcome::failure(
                    EXIT_INPUT,
                    format!("error: `{left}` and `{right}` do not form a cospan: {e}"),
                )
            })?;
            let square = SetSquare::new(
                apex.left.cell_map(k).map_err(Outcome::core)?,
                apex.right.cell_map(k).map_err(Outcome::core)?,
                f.cell_map(k).map_err(Outcome::core)?,
                g.cell_map(k).map_err(Outcome::core)?,
            )
            .map_err(Outcome::core)?;
            let report = check_pullback_square(&square);
            let code = if report.is_pullback {
                EXIT_OK
            } else {
                EXIT_FALSE
            };
            let doc = PullbackDoc::new(left, right, k, square.top().dom().len(), report);
            Outcome::report(code, &doc, fmt)
        }
        Command::VerifyCounterexample => {
            let report = verify_counterexample(k).map_err(|e| match e {
                Error::DegreeTooSmall(_) => Outcome::failure(EXIT_FALSE, format!("error: {e}")),
                e => Outcome::core(e),
            })?;
            let doc = CounterexampleDoc::from(&report);
            let code = if doc.confirmed { EXIT_OK } else { EXIT_FALSE };
            Outcome::report(code, &doc, fmt)
        }
        Command::Normalize {
            computad: name,
            term,
        } => {
            let kk = computad(&scope, name)?;
            let owner = Name {
                text: "<term>".into(),
                pos: Pos { line: 1, col: 1 },
            };
            let t = parse_term(term)
                .and_then(|ast| resolve_term(&ast, kk, &owner))
                .map_err(|e| dsl_failure("<term>", &e))?;
            let nf = normalize(&t, kk).map_err(Outcome::core)?;
            let doc = NormalDoc {
                computad: name.clone(),
                term: t.to_string(),
                degree: nf.degree(),
                normal_form: CellDoc::from(&nf),
            };
            Outcome::report(EXIT_OK, &doc, fmt)
        }
        Command::Selftest {
            computad: name,
            count,
        } => {
            let kk = match name {
                Some(n) => computad(&scope, n)?.clone(),
                None => {
                    let (a, b) = (computad(&scope, "paper_A")?, computad(&scope, "paper_B")?);
                    product2(a, b).computad
                }
            };
            let report = selftest(&kk, cli.seed, *count).map_err(Outcome::core)?;
            let code = if report.passed() { EXIT_OK } else { EXIT_FALSE };
            Outcome::report(code, &report, fmt)
        }
    })
}

fn summarize(name: &str, def: &Definition) -> DefinitionSummary {
    let (kind, summary) = match def {
        Definition::Computad2(k) => (
            "computad2",
            format!(
                "{} vertices, {} edges, {} 2-indets",
                k.skeleton().vertices().len(),
                k.skeleton().edges().len(),
                k.indets2().len()
            ),
        ),
        Definition::Com3 { over, object } => (
            "com3",
            format!("over {over}, {} 3-indets", object.indets3().len()),
        ),
        Definition::Morphism { source, target, .. } => {
            ("morphism", format!("{source} -> {target}"))
        }
    };
    DefinitionSummary {
        name: name.to_owned(),
        kind,
        summary,
    }
}
