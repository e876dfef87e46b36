//! The `kfl` command line.
//!
//! Exit codes: 0 on success, 1 when the checked property does not hold,
//! 2 on usage, parse or file errors, 3 when `witness` finds no defect.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::axioms::get_scheme;
use crate::document::{CountermodelDocument, DocumentError, ModelDocument, NodeNames};
use crate::formula::{parse, parse_template, Scheme};
use crate::kripke::Frame;
use crate::lab::{enumerate_frames, verify_theorem_with, SweepConfig, TheoremId};
use crate::semantics::{frame_validates_scheme, model_validates_scheme, Model, SchemeVerdict};
use crate::witness::{witness, Theorem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOTHING: i32 = 3;

/// Environment variable holding the worker count for sweeps (0 = automatic).
pub const THREADS_ENV: &str = "KFL_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "kfl",
    version,
    about = "Kripke semantics workbench for fuzzy and superintuitionistic logics"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula at every node (or one node) of a model.
    Check(CheckArgs),
    /// Print the structural properties of a model.
    Props(ModelArg),
    /// Check a scheme in a model or on its frame.
    Axiom(AxiomArgs),
    /// Sweep frames to check a correspondence claim.
    Verify(VerifyArgs),
    /// Build a countermodel from a defect of the given model.
    Witness(WitnessArgs),
    /// List every frame on a given number of nodes.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
struct ModelArg {
    /// Model document (JSON).
    #[arg(long)]
    model: PathBuf,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    formula: String,
    /// Only report this node.
    #[arg(long)]
    node: Option<String>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["name", "scheme"])))]
struct AxiomArgs {
    #[arg(long)]
    model: PathBuf,
    /// A registered scheme: A1 .. A7, A5a, A5b, MP, GODEL, LIN.
    #[arg(long)]
    name: Option<String>,
    /// An ad-hoc scheme over uppercase metavariables, e.g. "PHI -> PHI".
    #[arg(long)]
    scheme: Option<String>,
    /// Check every valuation on the model's frame instead of the model itself.
    #[arg(long)]
    frame: bool,
    /// With --frame, only persistent valuations.
    #[arg(long, requires = "frame")]
    persistent_only: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_theorem_id)]
    theorem: TheoremId,
    #[arg(long)]
    max_nodes: usize,
    #[arg(long, default_value_t = 3)]
    atoms: usize,
    /// Draw this many random frames on exactly --max-nodes nodes.
    #[arg(long, requires = "seed")]
    sample: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
    /// Lift the exhaustive sweep budget.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[arg(long, value_parser = parse_witness_theorem)]
    theorem: Theorem,
    #[arg(long)]
    model: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FrameFilter {
    Reflexive,
    Transitive,
    Connected,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    nodes: usize,
    /// Keep only frames with all of these properties.
    #[arg(long, value_delimiter = ',')]
    filter: Vec<FrameFilter>,
    #[arg(long)]
    count_only: bool,
    #[arg(long)]
    allow_large: bool,
}

fn parse_theorem_id(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: crate::lab::LabError| e.to_string())
}

fn parse_witness_theorem(s: &str) -> Result<Theorem, String> {
    s.parse()
        .map_err(|e: crate::witness::WitnessError| e.to_string())
}

#[derive(Debug, Error)]
#[error("{message}")]
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl ToString) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::usage(e)
            }
        }
    )*};
}

usage_from!(
    DocumentError,
    crate::formula::FormulaError,
    crate::semantics::SemanticsError,
    crate::lab::LabError,
    crate::witness::WitnessError,
    crate::axioms::UnknownScheme,
    serde_json::Error
);

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(format!("I/O error: {e}"))
    }
}

/// Parses `args` (program name first) and runs the command, writing to `out`
/// and `err`. Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Check(a) => check(a, out),
        Command::Props(a) => props(&a.model, out),
        Command::Axiom(a) => axiom(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Witness(a) => witness_cmd(a, out),
        Command::Enumerate(a) => enumerate(a, out),
    }
}

fn load_model(path: &Path) -> Result<(Model, NodeNames), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let doc = ModelDocument::from_json(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok(doc.to_model()?)
}

fn check(a: CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (model, names) = load_model(&a.model)?;
    let formula = parse(&a.formula)?;
    let nodes: Vec<usize> = match &a.node {
        Some(name) => vec![names.index(name)?],
        None => (0..names.len()).collect(),
    };
    let mut all = true;
    for k in nodes {
        let holds = model.forces(k, &formula)?;
        all &= holds;
        writeln!(out, "{}: {}", names.name(k), holds)?;
    }
    Ok(if all { EXIT_OK } else { EXIT_FAILS })
}

fn props(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let (model, names) = load_model(path)?;
    let f = model.frame();
    let everything = f.nodes();
    writeln!(out, "nodes: {}", f.size())?;
    writeln!(out, "edges: {}", f.edges().count())?;
    writeln!(out, "reflexive: {}", f.is_reflexive())?;
    writeln!(out, "transitive: {}", f.is_transitive())?;
    writeln!(out, "connected: {}", f.is_connected())?;
    writeln!(
        out,
        "atom-persistent: {}",
        model.is_atom_persistent(everything)
    )?;
    writeln!(
        out,
        "formula-persistent: {}",
        model.is_formula_persistent(everything)
    )?;
    for k in 0..f.size() {
        let plus = f.reach_plus(k).expect("node in range");
        let plusplus = f.reach_plusplus(k).expect("node in range");
        writeln!(
            out,
            "{}: R = {}, R+ = {}, R++ = {}; on R+: reflexive {}, transitive {}, atom-persistent {}, formula-persistent {}",
            names.name(k),
            names.format_set(f.row(k)),
            names.format_set(plus),
            names.format_set(plusplus),
            f.is_reflexive_on(plus),
            f.is_transitive_on(plus),
            model.is_atom_persistent(plus),
            model.is_formula_persistent(plus),
        )?;
    }
    Ok(EXIT_OK)
}

fn axiom(a: AxiomArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (model, names) = load_model(&a.model)?;
    let custom;
    let scheme: &Scheme = match (&a.name, &a.scheme) {
        (Some(name), _) => get_scheme(name)?,
        (None, Some(text)) => {
            let body = parse_template(text)?;
            if let Some(atom) = body.atoms().into_iter().next() {
                return Err(CliError::usage(format!(
                    "ad-hoc schemes may only use metavariables, found atom `{atom}`"
                )));
            }
            custom = Scheme::axiom("scheme", body);
            &custom
        }
        (None, None) => unreachable!("clap requires one of --name and --scheme"),
    };
    let verdict = if a.frame {
        frame_validates_scheme(model.frame(), scheme, a.persistent_only)?
    } else {
        model_validates_scheme(&model, scheme)?
    };
    let scope = match (a.frame, a.persistent_only) {
        (false, _) => "model",
        (true, false) => "frame",
        (true, true) => "frame, persistent valuations",
    };
    report_verdict(out, scheme, scope, &verdict, &names)?;
    Ok(if verdict.holds { EXIT_OK } else { EXIT_FAILS })
}

fn report_verdict(
    out: &mut dyn Write,
    scheme: &Scheme,
    scope: &str,
    v: &SchemeVerdict,
    names: &NodeNames,
) -> std::io::Result<()> {
    writeln!(out, "{} ({scope}): {}", scheme.name(), scheme.render())?;
    let Some(node) = v.failing_node else {
        return writeln!(out, "holds");
    };
    writeln!(out, "fails at {}", names.name(node))?;
    if let Some(instance) = &v.failing_instance {
        writeln!(out, "instance: {}", instance.render())?;
    }
    if let Some(assignment) = &v.failing_assignment {
        for (meta, set) in assignment {
            writeln!(out, "  {meta} = {}", names.format_set(*set))?;
        }
    }
    if let Some(valuation) = &v.failing_valuation {
        let shown: Vec<String> = valuation
            .iter()
            .map(|(atom, set)| format!("{atom} = {}", names.format_set(*set)))
            .collect();
        writeln!(out, "valuation: {}", shown.join(", "))?;
    }
    Ok(())
}

fn threads_from_env() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) if v.trim().is_empty() => Ok(0),
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::usage(format!(
                "{THREADS_ENV} must be a non-negative integer, got `{v}`"
            ))
        }),
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut cfg = match a.sample {
        Some(samples) => {
            SweepConfig::sampled(a.max_nodes, samples, a.seed.expect("clap requires --seed"))
        }
        None => SweepConfig::exhaustive(a.max_nodes),
    }
    .with_atoms(a.atoms);
    cfg.allow_large = a.allow_large;
    let report = verify_theorem_with(a.theorem, &cfg, threads_from_env()?)?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILS })
}

fn witness_cmd(a: WitnessArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (model, names) = load_model(&a.model)?;
    match witness(a.theorem, &model)? {
        None => {
            writeln!(
                out,
                "no {} defect: nothing to witness",
                a.theorem.condition()
            )?;
            Ok(EXIT_NOTHING)
        }
        Some(cm) => {
            let doc = CountermodelDocument::new(&cm, &names);
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn keep(f: &Frame, filters: &[FrameFilter]) -> bool {
    filters.iter().all(|filter| match filter {
        FrameFilter::Reflexive => f.is_reflexive(),
        FrameFilter::Transitive => f.is_transitive(),
        FrameFilter::Connected => f.is_connected(),
    })
}

fn enumerate(a: EnumerateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let frames = enumerate_frames(a.nodes, a.allow_large)?.filter(|f| keep(f, &a.filter));
    if a.count_only {
        writeln!(out, "{}", frames.count())?;
    } else {
        for f in frames {
            writeln!(
                out,
                "{}",
                serde_json::to_string(&ModelDocument::from_frame(&f))?
            )?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("kfl").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&[]).0, EXIT_USAGE);
        assert_eq!(
            run(&["verify", "--theorem", "nope", "--max-nodes", "2"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run(&[
                "verify",
                "--theorem",
                "thm-mp",
                "--max-nodes",
                "2",
                "--sample",
                "5"
            ])
            .0,
            EXIT_USAGE
        );
        assert_eq!(
            run(&["check", "--model", "/no/such/file.json", "--formula", "p"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }

    #[test]
    fn enumerate_counts() {
        let (code, out, _) = run(&["enumerate", "--nodes", "2", "--count-only"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "16");
        let (_, out, _) = run(&[
            "enumerate",
            "--nodes",
            "3",
            "--filter",
            "reflexive",
            "--count-only",
        ]);
        assert_eq!(out.trim(), "64");
        assert_eq!(
            run(&["enumerate", "--nodes", "5", "--count-only"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn verify_reports_and_exits_0() {
        let (code, out, _) = run(&["verify", "--theorem", "thm-mp", "--max-nodes", "2"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("thm-mp: 16+2 frames, 0 mismatches"));
    }
}
