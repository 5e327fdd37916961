//! Command-line front end. Every command prints a canonical report and
//! exits with 0 (pass), 1 (mathematical failure), 2 (invalid input) or 3
//! (generator exhaustion).

pub mod format;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::construct::{check_hom_action, semidirect_product};
use crate::error::{Error, Result};
use crate::freepres::{check_pbw_injectivity, enveloping};
use crate::generate::{named_seed, AlgebraKind, Generated, Generator, DEFAULT_SEED, SEED_NAMES};
use crate::hnn::{
    build_q, crosscheck_semidirect, embedding_certificate_assoc, embedding_certificate_lie, hnn_lie_presentation,
    validate_hnn_assoc_data, build_m,
};
use crate::homalg::{
    check_hom_associative, check_hom_lie, check_ideal, check_subalgebra, commutator_hom_lie, DerivationData,
    LeibnizVariant, TwistedAlgebra,
};
use format::{parse, render, AlgebraFile, FileKind};
use report::{axioms_json, certificate_json, digest, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hom-hnn", version, about = "Exact checks and HNN-extensions of involutive Hom-algebras")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    YauTwist,
    RandomSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    HomAssociative,
    HomLie,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full axiom suite of an algebra file.
    Check { file: PathBuf },
    /// Commutator Hom-Lie algebra of a Hom-associative algebra.
    Commutator {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Semidirect product of the target by the actor.
    Semidirect {
        actor: PathBuf,
        target: PathBuf,
        action: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Truncated enveloping algebra and its injectivity check.
    Envelope {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Associative HNN-extension certificate at sequence length `maxlen`.
    HnnAssoc {
        file: PathBuf,
        #[arg(long)]
        maxlen: usize,
        /// Leibniz convention for the derivations: mixed or twisted-both.
        #[arg(long)]
        variant: Option<String>,
    },
    /// Hom-Lie HNN-extension certificate.
    HnnLie {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        maxlen: usize,
    },
    /// Emit a validated algebra file.
    Generate {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "hom-lie")]
        kind: KindArg,
        /// Exact dimension for random search, upper bound for Yau twists.
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        nonabelian: bool,
        #[arg(long, help = format!("Seed algebra for Yau twists: {SEED_NAMES}"))]
        base: Option<String>,
        #[arg(long, default_value_t = 2000)]
        attempts: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Inputs {
    texts: Vec<String>,
    digest: String,
}

fn read_inputs(paths: &[&Path]) -> Result<Inputs> {
    let mut texts = Vec::new();
    for p in paths {
        let t = std::fs::read_to_string(p).map_err(|e| Error::invalid(format!("{}: {e}", p.display())))?;
        texts.push(t);
    }
    let bytes: Vec<&[u8]> = texts.iter().map(|t| t.as_bytes()).collect();
    let digest = digest(&bytes);
    Ok(Inputs { texts, digest })
}

fn write_artifact(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| Error::invalid(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn require_pass(name: &str, r: &crate::report::AxiomReport) -> Result<()> {
    match r.violations.first() {
        Some(v) => Err(Error::hypothesis(name, format!("{} fails at {:?}", v.axiom, v.witness))),
        None => Ok(()),
    }
}

fn show(p: &Path) -> String {
    p.display().to_string()
}

fn check(report: &mut Report, f: &AlgebraFile) -> Result<()> {
    let (axioms, dim) = match f.kind {
        FileKind::HomAssociative => {
            let a = f.to_assoc()?;
            (check_hom_associative(&a), a.dim())
        }
        FileKind::HomLie => {
            let l = f.to_lie()?;
            let mut r = check_hom_lie(&l);
            if let (None, Some(d)) = (&f.subalgebra, &f.derivation) {
                let d = DerivationData::new(d.clone(), 1)?;
                r.merge(crate::homalg::check_beta_k_derivation(&l, &d)?.prefixed("derivation: "));
            }
            (r, l.dim())
        }
        FileKind::HomAction => return Err(Error::invalid("check expects an algebra file")),
    };
    report.set("kind", json!(f.kind.name()));
    report.set("dim", json!(dim));
    report.pass = axioms.pass();
    report.set("axioms", axioms_json(&axioms));
    Ok(())
}

fn commutator(report: &mut Report, f: &AlgebraFile, out: &Option<PathBuf>) -> Result<()> {
    let a = f.to_assoc()?;
    require_pass("Hom-associative algebra", &check_hom_associative(&a))?;
    let l = commutator_hom_lie(&a)?;
    let axioms = check_hom_lie(&l);
    report.pass = axioms.pass();
    report.set("result_axioms", axioms_json(&axioms));
    report.set("result_dim", json!(l.dim()));
    write_artifact(out, &render(&AlgebraFile::from_lie(&l)))
}

fn semidirect(report: &mut Report, files: &[AlgebraFile], out: &Option<PathBuf>) -> Result<()> {
    let actor = files[0].to_lie()?;
    let target = files[1].to_lie()?;
    let act = files[2].to_action(&actor, &target)?;
    let action_axioms = check_hom_action(&act)?;
    report.set("action_axioms", axioms_json(&action_axioms));
    require_pass("Hom-action", &action_axioms)?;
    let sp = semidirect_product(&act)?;
    let axioms = check_hom_lie(&sp.result);
    let ideal = check_ideal(&sp.result, &sp.target_embedding)?;
    let sub = check_subalgebra(&sp.result, &sp.actor_embedding)?;
    report.pass = axioms.pass() && ideal.pass() && sub.pass();
    report.set("result_axioms", axioms_json(&axioms));
    report.set("target_is_ideal", axioms_json(&ideal));
    report.set("actor_is_subalgebra", axioms_json(&sub));
    write_artifact(out, &render(&AlgebraFile::from_lie(&sp.result)))
}

fn envelope(report: &mut Report, f: &AlgebraFile, degree: usize) -> Result<()> {
    let g = f.to_lie()?;
    let e = enveloping(&g, degree)?;
    let cert = check_pbw_injectivity(&e);
    report.pass = e.verification.pass() && cert.pass;
    report.set("degree", json!(degree));
    report.set("dims", json!(e.dims()));
    let basis: Vec<Vec<String>> = (0..=degree).map(|k| e.algebra.render_basis(k)).collect::<Result<_>>()?;
    report.set("basis", json!(basis));
    report.set("verification", axioms_json(&e.verification));
    report.set("certificate", certificate_json(&cert));
    Ok(())
}

fn hnn_assoc(report: &mut Report, f: &AlgebraFile, maxlen: usize, variant: Option<LeibnizVariant>) -> Result<()> {
    let mut data = f.to_hnn_assoc()?;
    if let Some(v) = variant {
        data.variant = v;
    }
    report.set("variant", json!(data.variant.name()));
    let validation = validate_hnn_assoc_data(&data);
    report.set("validation", axioms_json(&validation));
    require_pass("extension data", &validation)?;
    let q = build_q(&data, maxlen)?;
    let cert = embedding_certificate_assoc(&data, maxlen)?;
    let involutive = q.twist_is_involutive();
    report.pass = cert.pass && involutive;
    report.set("sequences", json!(q.sequences.len()));
    report.set("module_dim", json!(q.dim()));
    report.set("twist_involutive", json!(involutive));
    report.set("certificate", certificate_json(&cert));
    Ok(())
}

fn hnn_lie(report: &mut Report, f: &AlgebraFile, degree: usize, maxlen: usize) -> Result<()> {
    let data = f.to_hnn_lie()?;
    let pres = hnn_lie_presentation(&data)?;
    report.set("generators", json!(pres.generators));
    let model = build_m(&data, degree, maxlen)?;
    report.set("dims", json!(model.algebra.dims()));
    let cert = embedding_certificate_lie(&data, degree, maxlen)?;
    report.pass = cert.pass;
    report.set("certificate", certificate_json(&cert));
    if data.s.dim() == data.g.dim() {
        let cross = crosscheck_semidirect(&data.g, &DerivationData::new(data.d.clone(), 1)?)?;
        report.pass &= cross.pass();
        report.set("semidirect_crosscheck", axioms_json(&cross));
    }
    Ok(())
}

fn generated_file(g: &Generated) -> AlgebraFile {
    match g {
        Generated::Assoc(a) => AlgebraFile::from_assoc(a),
        Generated::Lie(l) => AlgebraFile::from_lie(l),
    }
}

#[allow(clippy::too_many_arguments)]
fn generate(
    mode: Mode,
    seed: u64,
    kind: KindArg,
    dim: usize,
    nonabelian: bool,
    base: &Option<String>,
    attempts: usize,
) -> Result<Generated> {
    let kind = match kind {
        KindArg::HomAssociative => AlgebraKind::HomAssociative,
        KindArg::HomLie => AlgebraKind::HomLie,
    };
    let mut g = Generator::new(seed);
    match mode {
        Mode::YauTwist => match base {
            Some(name) => {
                let s = named_seed(name)
                    .ok_or_else(|| Error::invalid(format!("unknown seed algebra {name:?}; known: {SEED_NAMES}")))?;
                g.yau_twist_of(&s)
            }
            None => g.yau_twist(kind, dim),
        },
        Mode::RandomSearch => g.random_search(kind, dim, nonabelian, attempts),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::TruncationOverflow { .. } => EXIT_INVALID,
        Error::Hypothesis { .. } | Error::Internal(_) => EXIT_FAIL,
        Error::Exhausted { .. } => EXIT_EXHAUSTED,
    }
}

fn finish(mut report: Report, result: Result<()>, json_out: bool) -> Outcome {
    let mut stderr = String::new();
    let code = match result {
        Ok(()) if report.pass => EXIT_PASS,
        Ok(()) => EXIT_FAIL,
        Err(e @ (Error::Hypothesis { .. } | Error::Internal(_))) => {
            report.pass = false;
            if let Error::Hypothesis { hypothesis, detail } = &e {
                report.set("failed_hypothesis", json!({ "hypothesis": hypothesis, "detail": detail }));
            } else {
                report.set("error", json!(e.to_string()));
            }
            stderr = format!("error: {e}\n");
            EXIT_FAIL
        }
        Err(e) => {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                code: exit_code(&e),
            }
        }
    };
    let stdout = if json_out { report.to_json() } else { report.to_text() };
    Outcome { stdout, stderr, code }
}

fn invalid(e: Error) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: exit_code(&e),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let json_out = cli.json;
    let (command, paths): (String, Vec<&Path>) = match &cli.command {
        Command::Check { file } => (format!("check {}", show(file)), vec![file]),
        Command::Commutator { file, .. } => (format!("commutator {}", show(file)), vec![file]),
        Command::Semidirect { actor, target, action, .. } => (
            format!("semidirect {} {} {}", show(actor), show(target), show(action)),
            vec![actor, target, action],
        ),
        Command::Envelope { file, degree } => (format!("envelope --degree {degree} {}", show(file)), vec![file]),
        Command::HnnAssoc { file, maxlen, variant } => {
            let v = variant.as_ref().map(|v| format!(" --variant {v}")).unwrap_or_default();
            (format!("hnn-assoc --maxlen {maxlen}{v} {}", show(file)), vec![file])
        }
        Command::HnnLie { file, degree, maxlen } => (
            format!("hnn-lie --degree {degree} --maxlen {maxlen} {}", show(file)),
            vec![file],
        ),
        Command::Generate {
            mode,
            seed,
            kind,
            dim,
            nonabelian,
            base,
            attempts,
            out,
        } => {
            return match generate(*mode, *seed, *kind, *dim, *nonabelian, base, *attempts) {
                Ok(g) => {
                    let text = render(&generated_file(&g));
                    match out {
                        None => Outcome {
                            stdout: text,
                            stderr: String::new(),
                            code: EXIT_PASS,
                        },
                        Some(_) => match write_artifact(out, &text) {
                            Ok(()) => Outcome {
                                stdout: String::new(),
                                stderr: String::new(),
                                code: EXIT_PASS,
                            },
                            Err(e) => invalid(e),
                        },
                    }
                }
                Err(e) => invalid(e),
            };
        }
    };
    let inputs = match read_inputs(&paths) {
        Ok(i) => i,
        Err(e) => return invalid(e),
    };
    let files = match inputs.texts.iter().map(|t| parse(t)).collect::<Result<Vec<_>>>() {
        Ok(f) => f,
        Err(e) => return invalid(e),
    };
    let mut report = Report::new(command, inputs.digest);
    let result = match &cli.command {
        Command::Check { .. } => check(&mut report, &files[0]),
        Command::Commutator { out, .. } => commutator(&mut report, &files[0], out),
        Command::Semidirect { out, .. } => semidirect(&mut report, &files, out),
        Command::Envelope { degree, .. } => envelope(&mut report, &files[0], *degree),
        Command::HnnAssoc { maxlen, variant, .. } => match variant.as_deref().map(LeibnizVariant::parse).transpose() {
            Ok(v) => hnn_assoc(&mut report, &files[0], *maxlen, v),
            Err(e) => return invalid(e),
        },
        Command::HnnLie { degree, maxlen, .. } => hnn_lie(&mut report, &files[0], *degree, *maxlen),
        Command::Generate { .. } => unreachable!("handled above"),
    };
    // structural problems found while interpreting the file are input errors
    if let Err(e @ (Error::InvalidInput(_) | Error::TruncationOverflow { .. })) = &result {
        return invalid(e.clone());
    }
    finish(report, result, json_out)
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let out = run(&cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
