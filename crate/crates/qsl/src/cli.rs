//! Command-line front end.
//!
//! Exit codes: 0 = affirmative result (ok / valid / derivable),
//! 1 = negative with witness, 2 = unknown (bound exhausted),
//! 3 = input error.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::formula::{parse_with, Formula, Signature};
use crate::kripke::{check_frame_class, FrameClass, Model};
use crate::proofs::{check_proof, ScriptFile};
use crate::qdeduction::{quantum_derives, Derivability, QDeductionTrace, ThesisKind};
use crate::suite::run_acceptance_suite;
use crate::validity::{check_validity, SearchBound, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser)]
#[command(name = "qsl", about = "A workbench for a modal logic of quantum superpositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Maximum number of worlds to search
    #[arg(long, default_value_t = 3)]
    bound: usize,
    /// Frame class: K, T, S4 or S5
    #[arg(long, default_value = "S4")]
    class: FrameClass,
    /// Enforce the orthogonality constraint on declared perp pairs
    #[arg(long, default_value = "on", value_parser = parse_on_off)]
    ortho: bool,
    /// Signature file (JSON: atoms and perp pairs)
    #[arg(long)]
    sig: Option<PathBuf>,
}

fn parse_on_off(s: &str) -> Result<bool, String> {
    match s {
        "on" | "true" | "1" => Ok(true),
        "off" | "false" | "0" => Ok(false),
        other => Err(format!("expected on or off, got {other:?}")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its canonical form
    Parse {
        formula: String,
        #[arg(long)]
        sig: Option<PathBuf>,
        /// Register unknown kets instead of rejecting them
        #[arg(long, default_value_t = true)]
        auto_atoms: bool,
    },
    /// Evaluate a formula at a world of a model
    Eval {
        formula: String,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: String,
    },
    /// Bounded validity check
    Validate {
        formula: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Bounded countermodel search; emits the countermodel as a model file
    Countermodel {
        formula: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the countermodel here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a proof script file
    CheckProof { file: PathBuf },
    /// Decide the quantum deduction relation
    Qderive {
        /// Premises: inline `f1; f2; ...` or `@file` with one formula per line
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run the full acceptance battery
    Suite,
}

#[derive(Deserialize, Default)]
struct SigFile {
    #[serde(default)]
    atoms: Vec<String>,
    #[serde(default)]
    perp: Vec<[String; 2]>,
}

fn load_signature(path: Option<&PathBuf>) -> Result<Signature, String> {
    let Some(path) = path else {
        return Ok(Signature::new());
    };
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: SigFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut sig = Signature::with_atoms(file.atoms);
    for [a, b] in file.perp {
        sig.add_perp(a, b).map_err(|e| e.to_string())?;
    }
    Ok(sig)
}

fn search_bound(args: &SearchArgs) -> SearchBound {
    SearchBound::new(args.bound, args.class).orthogonality(args.ortho)
}

fn parse_formula(text: &str, sig: &mut Signature, auto: bool) -> Result<Formula, String> {
    parse_with(text, sig, auto).map_err(|e| e.to_string())
}

fn print_verdict(verdict: &Verdict) {
    match verdict {
        Verdict::ValidUpToBound(b) => println!("verdict: ValidUpToBound({b})"),
        Verdict::Countermodel { model, world } => {
            println!("verdict: Countermodel");
            println!("world: {world}");
            println!("worlds: {}", model.frame().world_count());
        }
        Verdict::Unknown => println!("verdict: Unknown"),
    }
}

fn verdict_exit(verdict: &Verdict) -> i32 {
    match verdict {
        Verdict::ValidUpToBound(_) => EXIT_OK,
        Verdict::Countermodel { .. } => EXIT_NEGATIVE,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn input_error(message: impl AsRef<str>) -> i32 {
    eprintln!("error: {}", message.as_ref());
    EXIT_INPUT
}

/// Runs the CLI; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version itself with exit code 0
            if e.use_stderr() {
                eprint!("{e}");
                return EXIT_INPUT;
            }
            print!("{e}");
            return EXIT_OK;
        }
    };
    match cli.command {
        Command::Parse {
            formula,
            sig,
            auto_atoms,
        } => {
            let mut sig = match load_signature(sig.as_ref()) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            match parse_formula(&formula, &mut sig, auto_atoms) {
                Ok(f) => {
                    println!("ok: {}", f.render());
                    println!("basic: {}", f.is_basic());
                    EXIT_OK
                }
                Err(e) => input_error(e),
            }
        }
        Command::Eval {
            formula,
            model,
            world,
        } => {
            let text = match fs::read_to_string(&model) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", model.display())),
            };
            let model = match Model::from_json(&text) {
                Ok(m) => m,
                Err(e) => return input_error(e.to_string()),
            };
            if let Err(violations) = model.check_acceptability() {
                return input_error(format!(
                    "model is not acceptable: {}",
                    violations[0]
                ));
            }
            let mut sig = model.signature().clone();
            let f = match parse_formula(&formula, &mut sig, false) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            let frame = check_frame_class(model.frame(), model.class());
            println!(
                "frame: reflexive={} transitive={} symmetric={} euclidean={}",
                frame.properties.reflexive,
                frame.properties.transitive,
                frame.properties.symmetric,
                frame.properties.euclidean
            );
            match model.eval_at(&world, &f) {
                Ok(value) => {
                    println!("value: {value}");
                    if value {
                        EXIT_OK
                    } else {
                        EXIT_NEGATIVE
                    }
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Command::Validate { formula, search } => {
            let mut sig = match load_signature(search.sig.as_ref()) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let f = match parse_formula(&formula, &mut sig, true) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            match check_validity(&f, &sig, &search_bound(&search)) {
                Ok(verdict) => {
                    print_verdict(&verdict);
                    verdict_exit(&verdict)
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Command::Countermodel {
            formula,
            search,
            out,
        } => {
            let mut sig = match load_signature(search.sig.as_ref()) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let f = match parse_formula(&formula, &mut sig, true) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            match check_validity(&f, &sig, &search_bound(&search)) {
                Ok(verdict) => {
                    print_verdict(&verdict);
                    if let Verdict::Countermodel { model, .. } = &verdict {
                        let json = model.to_json();
                        match &out {
                            Some(path) => {
                                if let Err(e) = fs::write(path, json + "\n") {
                                    return input_error(format!("{}: {e}", path.display()));
                                }
                                println!("model-file: {}", path.display());
                            }
                            None => println!("{json}"),
                        }
                    }
                    verdict_exit(&verdict)
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Command::CheckProof { file } => {
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", file.display())),
            };
            let script = match ScriptFile::from_json(&text).and_then(ScriptFile::into_script) {
                Ok(s) => s,
                Err(e) => return input_error(e.to_string()),
            };
            println!("name: {}", script.name);
            println!("class: {}", script.class);
            println!("lines: {}", script.lines.len());
            match check_proof(&script) {
                Ok(()) => {
                    println!("proof: ok");
                    if let Some(conclusion) = script.conclusion() {
                        println!("conclusion: {}", conclusion.render());
                    }
                    EXIT_OK
                }
                Err(report) => {
                    println!("proof: failed");
                    println!("line: {}", report.line);
                    println!("reason: {}", report.reason);
                    EXIT_NEGATIVE
                }
            }
        }
        Command::Qderive {
            gamma,
            alpha,
            search,
        } => {
            let mut sig = match load_signature(search.sig.as_ref()) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let premise_texts: Vec<String> = if let Some(path) = gamma.strip_prefix('@') {
                match fs::read_to_string(path) {
                    Ok(t) => t
                        .lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty())
                        .map(str::to_string)
                        .collect(),
                    Err(e) => return input_error(format!("{path}: {e}")),
                }
            } else {
                gamma
                    .split(';')
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(str::to_string)
                    .collect()
            };
            let mut premises = Vec::new();
            for text in &premise_texts {
                match parse_formula(text, &mut sig, true) {
                    Ok(f) => premises.push(f),
                    Err(e) => return input_error(e),
                }
            }
            let target = match parse_formula(&alpha, &mut sig, true) {
                Ok(f) => f,
                Err(e) => return input_error(e),
            };
            match quantum_derives(&premises, &target, &sig, &search_bound(&search)) {
                Ok((derivability, trace)) => {
                    println!("derivable: {derivability}");
                    match &trace {
                        QDeductionTrace::Membership => println!("clause: membership"),
                        QDeductionTrace::Thesis(kind) => {
                            println!("clause: thesis");
                            match kind {
                                ThesisKind::Library(name) => println!("thesis: library {name}"),
                                ThesisKind::ValidUpToBound(b) => {
                                    println!("thesis: valid-up-to-bound {b}")
                                }
                            }
                        }
                        QDeductionTrace::Subset {
                            delta,
                            witness_world,
                            entailment_bound,
                        } => {
                            println!("clause: subset");
                            println!(
                                "delta: {}",
                                delta
                                    .iter()
                                    .map(Formula::render)
                                    .collect::<Vec<_>>()
                                    .join("; ")
                            );
                            println!("witness-world: {witness_world}");
                            println!("entailment-bound: {entailment_bound}");
                        }
                        QDeductionTrace::Refuted => println!("clause: none (refuted)"),
                        QDeductionTrace::BoundExhausted => {
                            println!("clause: none (bound exhausted)")
                        }
                    }
                    match derivability {
                        Derivability::Yes => EXIT_OK,
                        Derivability::No => EXIT_NEGATIVE,
                        Derivability::Unknown => EXIT_UNKNOWN,
                    }
                }
                Err(e) => input_error(e.to_string()),
            }
        }
        Command::Suite => {
            let results = run_acceptance_suite();
            let mut all = true;
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!("criterion-{}: {status} {} ({})", r.id, r.name, r.detail);
                all &= r.passed;
            }
            println!("suite: {}", if all { "pass" } else { "fail" });
            if all {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            }
        }
    }
}
