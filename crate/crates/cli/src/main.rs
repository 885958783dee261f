//! `lukas`: check, build and transform Łukasiewicz-style proofs and
//! refutations.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or parse error,
//! 3 resource bound, 4 internal error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lukas_core::complete_sets::{build_refutation, build_system, jankov_formula, CompleteSetFamily, CpcProver, PositiveError, RefutationError};
use lukas_core::fuzz::InferenceFuzzer;
use lukas_core::prover::{IpcOutcome, ProverError};
use lukas_core::script::{parse_proof_script, parse_system_manifest, render_proof_script, render_system_manifest, SystemManifest};
use lukas_core::semantics::{frame_valid, frame_validates, model_validates, parse_model_file, render_model, Budget, Frame, SemanticsError, TabularOracle};
use lukas_core::transforms::{convert_ipc, extract_positive, symmetry_transform, TransformError};
use lukas_core::{check_inference, parse_formula, prove_ipc, DeductiveSystem, Formula, Mode, ProverBudget, Statement};

#[derive(Parser)]
#[command(name = "lukas", version, about = "Proof and refutation systems for intermediate logics and K4")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Mode for formulas given on the command line.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Int)]
    mode: ModeArg,
    /// Largest frame considered (Jankov family, countermodels).
    #[arg(long, global = true, default_value_t = 3)]
    bound: usize,
    /// Sequent nodes the prover may explore per attempt.
    #[arg(long, global = true, default_value_t = 200_000)]
    budget: usize,
    /// Seed for the fuzzer.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Int,
    K4,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Int => Mode::Int,
            ModeArg::K4 => Mode::K4,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check proof scripts.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// System manifest to check against (default: the base system).
        #[arg(long)]
        system: Option<PathBuf>,
    },
    /// Decide a formula on a model or on a frame.
    Valid {
        #[arg(long, conflicts_with = "frame", required_unless_present = "frame")]
        model: Option<PathBuf>,
        #[arg(long)]
        frame: Option<PathBuf>,
        formula: String,
    },
    /// Print the Jankov formula of a rooted frame.
    Jankov {
        #[arg(long)]
        frame: PathBuf,
    },
    /// Build a system for the logic of the given frames.
    Axiomatize {
        #[arg(long, required = true, num_args = 1..)]
        frames: Vec<PathBuf>,
    },
    /// Refute a formula in a system with frames.
    Refute {
        #[arg(long)]
        system: PathBuf,
        formula: String,
    },
    /// Prove a classical tautology in the classical system.
    ProveCpc {
        /// Classical system manifest (default: built from the one-point frame).
        #[arg(long)]
        system: Option<PathBuf>,
        formula: String,
    },
    /// Decide a formula intuitionistically.
    Ipc { formula: String },
    /// Transform a proof script.
    Transform {
        #[command(subcommand)]
        kind: TransformKind,
    },
    /// Generate random inferences and check their soundness on the frames
    /// of a system.
    Fuzz {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 30)]
        len: usize,
    },
}

#[derive(Subcommand)]
enum TransformKind {
    /// Keep only the assertions.
    Extract { file: PathBuf },
    /// Turn a derivation of `+B` from hypotheses into a refutation of one of
    /// them from `-B`.
    Symmetry {
        file: PathBuf,
        #[arg(long)]
        system: PathBuf,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

fn usage(msg: impl ToString) -> Failure {
    Failure { code: 2, msg: msg.to_string() }
}

fn resource(msg: impl ToString) -> Failure {
    Failure { code: 3, msg: msg.to_string() }
}

fn internal(msg: impl ToString) -> Failure {
    Failure { code: 4, msg: format!("internal error: {}", msg.to_string()) }
}

fn negative(msg: impl ToString) -> Failure {
    Failure { code: 1, msg: msg.to_string() }
}

impl From<SemanticsError> for Failure {
    fn from(e: SemanticsError) -> Self {
        match e {
            SemanticsError::ResourceBound { .. } => resource(e),
            SemanticsError::ModeMismatch(..) => usage(e),
        }
    }
}

impl From<ProverError> for Failure {
    fn from(e: ProverError) -> Self {
        match e {
            ProverError::Modal => negative(e),
            _ => resource(e),
        }
    }
}

fn semantic_budget() -> Budget {
    Budget::new(12, 8)
}

struct Ctx {
    g: Global,
    out: String,
}

impl Ctx {
    fn emit(&mut self, text: &str, value: Value) {
        match self.g.format {
            Format::Text => {
                self.out.push_str(text);
                if !text.is_empty() && !text.ends_with('\n') {
                    self.out.push('\n');
                }
            }
            Format::Json => {
                self.out.push_str(&value.to_string());
                self.out.push('\n');
            }
        }
    }

    fn formula(&self, text: &str) -> Result<Formula, Failure> {
        parse_formula(text, self.g.mode.into()).map_err(|e| usage(format!("formula: {e}")))
    }

    fn prover_budget(&self) -> ProverBudget {
        ProverBudget { max_nodes: self.g.budget, ..ProverBudget::default() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn manifest(path: &Path) -> Result<SystemManifest, Failure> {
    parse_system_manifest(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn frame_file(path: &Path) -> Result<Frame, Failure> {
    parse_model_file(&read(path)?).map(|m| m.frame).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn oracle_of(m: &SystemManifest, path: &Path) -> Result<TabularOracle, Failure> {
    TabularOracle::new(m.frames.clone(), semantic_budget())
        .map_err(|e| usage(format!("{}: {e} (add `frame` lines)", path.display())))
}

fn cpc_system(bound: usize) -> Result<DeductiveSystem, Failure> {
    let oracle = TabularOracle::new(vec![Frame::point(Mode::Int)], semantic_budget()).expect("one frame");
    build_system(&oracle, &CompleteSetFamily::jankov(bound), Mode::Int).map_err(resource)
}

fn script_json(mode: Mode, inf: &lukas_core::Inference) -> Value {
    json!(render_proof_script(mode, inf))
}

fn run(cx: &mut Ctx, cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Check { files, system } => {
            let sys = system.as_deref().map(manifest).transpose()?;
            let mut all_ok = true;
            let many = files.len() > 1;
            for file in &files {
                let script = parse_proof_script(&read(file)?).map_err(|e| usage(format!("{}: {e}", file.display())))?;
                let ds = match &sys {
                    Some(m) if m.system.mode() != script.mode => {
                        return Err(usage(format!("{}: mode differs from the system", file.display())))
                    }
                    Some(m) => m.system.clone(),
                    None => DeductiveSystem::base(script.mode),
                };
                let report = lukas_core::CheckReport(check_inference(&ds, &script.inference));
                all_ok &= report.is_ok();
                let text = if many { format!("{}: {report}", file.display()) } else { report.to_string() };
                let value = match &report.0 {
                    Ok(s) => json!({"file": file.display().to_string(), "verdict": "OK", "statement": s.to_string()}),
                    Err(e) => json!({"file": file.display().to_string(), "verdict": "ERR", "step": e.step, "reason": e.reason.to_string()}),
                };
                cx.emit(&text, value);
            }
            Ok(if all_ok { 0 } else { 1 })
        }
        Command::Valid { model, frame, formula } => {
            let valid = match (model, frame) {
                (Some(path), _) => {
                    let m = parse_model_file(&read(&path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    let a = parse_formula(&formula, m.frame.mode()).map_err(|e| usage(format!("formula: {e}")))?;
                    model_validates(&m, &Statement::assert(a))
                }
                (None, Some(path)) => {
                    let f = frame_file(&path)?;
                    let a = parse_formula(&formula, f.mode()).map_err(|e| usage(format!("formula: {e}")))?;
                    frame_valid(&f, &a, &semantic_budget())?
                }
                (None, None) => return Err(usage("one of --model or --frame is required")),
            };
            let verdict = if valid { "VALID" } else { "INVALID" };
            cx.emit(verdict, json!({"verdict": verdict}));
            Ok(if valid { 0 } else { 1 })
        }
        Command::Jankov { frame } => {
            let f = frame_file(&frame)?;
            if f.mode() != Mode::Int || !f.is_rooted() {
                return Err(usage("Jankov formulas need a rooted Int frame"));
            }
            let x = jankov_formula(&f);
            cx.emit(&x.to_string(), json!({"formula": x.to_string()}));
            Ok(0)
        }
        Command::Axiomatize { frames } => {
            let frames = frames.iter().map(|p| frame_file(p)).collect::<Result<Vec<_>, _>>()?;
            let oracle = TabularOracle::new(frames.clone(), semantic_budget()).map_err(usage)?;
            if oracle.mode() != Mode::Int {
                return Err(usage("the Jankov family is only available for Int frames"));
            }
            let family = CompleteSetFamily::jankov(cx.g.bound);
            let ds = build_system(&oracle, &family, Mode::Int).map_err(resource)?;
            let text = render_system_manifest(&ds, &frames);
            cx.emit(&text, json!({"manifest": text}));
            Ok(0)
        }
        Command::Refute { system, formula } => {
            let m = manifest(&system)?;
            let oracle = oracle_of(&m, &system)?;
            let a = parse_formula(&formula, m.system.mode()).map_err(|e| usage(format!("formula: {e}")))?;
            let family = CompleteSetFamily::from_formulas(m.system.anti_axioms().iter().cloned());
            match build_refutation(&m.system, &a, &oracle, &family, &cx.prover_budget()) {
                Ok(inf) => {
                    let text = render_proof_script(m.system.mode(), &inf);
                    cx.emit(&text, json!({"verdict": "REFUTED", "script": script_json(m.system.mode(), &inf)}));
                    Ok(0)
                }
                Err(RefutationError::InLogic(f)) => {
                    let msg = format!("{f} belongs to the logic");
                    cx.emit(&format!("NOT REFUTABLE: {msg}"), json!({"verdict": "NOT REFUTABLE", "reason": msg}));
                    Ok(1)
                }
                Err(RefutationError::Oracle(e)) => Err(e.into()),
                Err(e @ (RefutationError::SearchExhausted(_) | RefutationError::Prover(_))) => Err(resource(e)),
                Err(e) => Err(internal(e)),
            }
        }
        Command::ProveCpc { system, formula } => {
            let ds = match system {
                Some(p) => manifest(&p)?.system,
                None => cpc_system(cx.g.bound)?,
            };
            let a = parse_formula(&formula, ds.mode()).map_err(|e| usage(format!("formula: {e}")))?;
            let prover = CpcProver::new(ds, cx.prover_budget()).map_err(|e| match e {
                PositiveError::TemplateUnavailable => usage(e),
                e => resource(e),
            })?;
            match prover.prove(&a) {
                Ok(inf) => {
                    let text = render_proof_script(Mode::Int, &inf);
                    cx.emit(&text, json!({"verdict": "PROVED", "script": script_json(Mode::Int, &inf)}));
                    Ok(0)
                }
                Err(PositiveError::NotTautology(f)) => {
                    let msg = format!("{f} is not a classical tautology");
                    cx.emit(&format!("NOT PROVABLE: {msg}"), json!({"verdict": "NOT PROVABLE", "reason": msg}));
                    Ok(1)
                }
                Err(PositiveError::Prover(e)) => Err(e.into()),
                Err(e) => Err(internal(e)),
            }
        }
        Command::Ipc { formula } => {
            let a = cx.formula(&formula)?;
            let budget = ProverBudget { max_countermodel_worlds: cx.g.bound.max(5), ..cx.prover_budget() };
            match prove_ipc(&a, &budget)? {
                IpcOutcome::Theorem(d) => {
                    let ds = DeductiveSystem::base(cx.g.mode.into());
                    let inf = convert_ipc(&d, &ds).map_err(internal)?;
                    let script = render_proof_script(ds.mode(), &inf);
                    cx.emit(&format!("THEOREM\n{script}"), json!({"verdict": "THEOREM", "script": script}));
                    Ok(0)
                }
                IpcOutcome::Countermodel(m) => {
                    let text = render_model(&m);
                    cx.emit(&format!("COUNTERMODEL\n{text}"), json!({"verdict": "COUNTERMODEL", "model": text}));
                    Ok(1)
                }
            }
        }
        Command::Transform { kind } => match kind {
            TransformKind::Extract { file } => {
                let script = parse_proof_script(&read(&file)?).map_err(|e| usage(format!("{}: {e}", file.display())))?;
                let out = extract_positive(&script.inference).map_err(negative)?;
                let text = render_proof_script(script.mode, &out);
                cx.emit(&text, json!({"script": text}));
                Ok(0)
            }
            TransformKind::Symmetry { file, system } => {
                let script = parse_proof_script(&read(&file)?).map_err(|e| usage(format!("{}: {e}", file.display())))?;
                let m = manifest(&system)?;
                let oracle = oracle_of(&m, &system)?;
                match symmetry_transform(&script.inference, &m.system, &oracle) {
                    Ok(sym) => {
                        let text = render_proof_script(m.system.mode(), &sym.inference);
                        cx.emit(&format!("# index {}\n{text}", sym.index), json!({"index": sym.index, "script": text}));
                        Ok(0)
                    }
                    Err(TransformError::Oracle(e)) => Err(e.into()),
                    Err(e) => Err(negative(e)),
                }
            }
        },
        Command::Fuzz { system, count, len } => {
            let m = manifest(&system)?;
            if m.frames.is_empty() {
                return Err(usage(format!("{}: no frames to test against", system.display())));
            }
            let mut fz = InferenceFuzzer::new(&m.system, cx.g.seed);
            let (mut statements, mut violations) = (0usize, 0usize);
            for _ in 0..count {
                let inf = fz.rich_inference(vec![], len);
                if check_inference(&m.system, &inf).is_err() {
                    violations += 1;
                    continue;
                }
                for s in &inf.steps {
                    statements += 1;
                    for f in &m.frames {
                        if !frame_validates(f, &s.statement, &semantic_budget())? {
                            violations += 1;
                        }
                    }
                }
            }
            let text = format!("{count} inferences, {statements} statements, {violations} violations");
            cx.emit(&text, json!({"inferences": count, "statements": statements, "violations": violations}));
            Ok(if violations == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cx = Ctx { g: cli.global, out: String::new() };
    let code = match run(&mut cx, cli.command) {
        Ok(code) => code,
        Err(f) => {
            print!("{}", cx.out);
            eprintln!("lukas: {}", f.msg);
            return ExitCode::from(f.code);
        }
    };
    print!("{}", cx.out);
    ExitCode::from(code)
}
