//! Acceptance harness: one line per criterion, nonzero exit on any failure.

use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lukas_core::complete_sets::{
    build_refutation, build_system, jankov_formula, CompleteSetFamily, CpcProver, PositiveError, RefutationError,
};
use lukas_core::fuzz::{enumerate_formulas, random_formula, InferenceFuzzer};
use lukas_core::prover::{classically_valid, IpcOutcome};
use lukas_core::script::{render_proof_script, render_system_manifest};
use lukas_core::semantics::{
    check_adequacy, enumerate_rooted_posets, frame_valid, frame_validates, model_validates, p_morphic_reduct_exists,
    Budget, Frame, TabularOracle,
};
use lukas_core::transforms::{convert_ipc, extract_positive, symmetry_transform};
use lukas_core::{
    check_inference, parse_formula, prove_ipc, DeductiveSystem, Formula, Justification, Mode, ProverBudget, Sign,
    Statement,
};

type Outcome = Result<String, String>;

fn f(s: &str) -> Formula {
    parse_formula(s, Mode::Int).unwrap()
}

fn cpc() -> (DeductiveSystem, TabularOracle, CompleteSetFamily) {
    let oracle = TabularOracle::new(vec![Frame::point(Mode::Int)], Budget::new(1, 16)).unwrap();
    let family = CompleteSetFamily::jankov(3);
    let ds = build_system(&oracle, &family, Mode::Int).unwrap();
    (ds, oracle, family)
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    if start.elapsed() > limit {
        Err(format!("took {:.1?}, limit {:?}", start.elapsed(), limit))
    } else {
        Ok(())
    }
}

fn rule_soundness() -> Outcome {
    let start = Instant::now();
    let (ds, _, _) = cpc();
    let point = Frame::point(Mode::Int);
    let budget = Budget::new(1, 16);
    let mut fz = InferenceFuzzer::new(&ds, 11);
    let mut statements = 0;
    for n in 0..10_000 {
        let inf = fz.rich_inference(vec![], 16);
        check_inference(&ds, &inf).map_err(|e| format!("inference {n} fails the checker: {e:?}"))?;
        for (k, s) in inf.steps.iter().enumerate() {
            statements += 1;
            if !frame_validates(&point, &s.statement, &budget).map_err(|e| e.to_string())? {
                return Err(format!("inference {n} step {}: {} not valid on the one-point frame", k + 1, s.statement));
            }
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("10000 inferences, {statements} statements, 0 violations"))
}

fn positive_extraction() -> Outcome {
    let start = Instant::now();
    let ds = DeductiveSystem::new(Mode::Int, vec![], vec![f("p"), f("p | ~p")]).unwrap();
    let mut fz = InferenceFuzzer::new(&ds, 12);
    let mut mixed = 0;
    for n in 0..1000 {
        let inf = fz.mixed_with_positive_conclusion(1 + n % 3, 24);
        check_inference(&ds, &inf).map_err(|e| format!("generated inference {n} invalid: {e:?}"))?;
        if !inf.is_sign_pure(Sign::Assert) {
            mixed += 1;
        }
        let pos = extract_positive(&inf).map_err(|e| e.to_string())?;
        let concl = check_inference(&ds, &pos).map_err(|e| format!("extraction {n} fails the checker: {e:?}"))?;
        if !pos.is_sign_pure(Sign::Assert) || pos.len() > inf.len() || Some(&concl) != inf.conclusion() {
            return Err(format!("extraction {n} is not a positive inference of the same conclusion"));
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("1000 extractions ({mixed} mixed-sign inputs)"))
}

fn symmetry_case(
    ds: &DeductiveSystem,
    oracle: &TabularOracle,
    fz: &mut InferenceFuzzer,
    n_hyps: usize,
) -> Result<(bool, bool), String> {
    let inf = fz.symmetry_instance(oracle, n_hyps, 6).map_err(|e| e.to_string())?;
    check_inference(ds, &inf).map_err(|e| format!("generated instance invalid: {e:?}"))?;
    let start = Instant::now();
    let sym = symmetry_transform(&inf, ds, oracle).map_err(|e| e.to_string())?;
    within(Duration::from_secs(2), start)?;
    let b = inf.conclusion().unwrap().body.clone();
    if sym.inference.hypotheses != vec![Statement::reject(b)] {
        return Err("wrong hypotheses".into());
    }
    let concl = check_inference(ds, &sym.inference).map_err(|e| format!("output fails the checker: {e:?}"))?;
    if concl != Statement::reject(inf.hypotheses[sym.index - 1].body.clone()) {
        return Err(format!("output concludes {concl}, not the rejection of hypothesis {}", sym.index));
    }
    let ns = inf.steps.iter().any(|s| matches!(s.justification, Justification::Ns(_)));
    let rn = sym.inference.steps.iter().any(|s| matches!(s.justification, Justification::Rn(_)));
    Ok((ns, rn))
}

fn symmetry() -> Outcome {
    let budget = Budget::new(8, 16);
    let int = DeductiveSystem::base(Mode::Int);
    let k4 = DeductiveSystem::base(Mode::K4);
    let point = TabularOracle::new(vec![Frame::point(Mode::Int)], budget).unwrap();
    let chain3 = TabularOracle::new(vec![Frame::chain(3)], budget).unwrap();
    let refl = TabularOracle::new(vec![Frame::reflexive_point(Mode::K4)], budget).unwrap();
    let mut fz = InferenceFuzzer::new(&int, 13);
    for n in 0..500 {
        let oracle = if n % 2 == 0 { &point } else { &chain3 };
        symmetry_case(&int, oracle, &mut fz, 1 + n % 3).map_err(|e| format!("Int case {n}: {e}"))?;
    }
    let mut fz = InferenceFuzzer::new(&k4, 14);
    let (mut with_ns, mut with_rn) = (0, 0);
    for n in 0..200 {
        let (ns, rn) = symmetry_case(&k4, &refl, &mut fz, 1 + n % 3).map_err(|e| format!("K4 case {n}: {e}"))?;
        with_ns += ns as usize;
        with_rn += rn as usize;
    }
    if with_rn == 0 {
        return Err("no K4 case exercised reverse necessitation".into());
    }
    Ok(format!("500 Int cases (CPC, 3-chain), 200 K4 cases ({with_ns} with NS, {with_rn} reversed by RN)"))
}

fn jankov_characterization() -> Outcome {
    let start = Instant::now();
    let frames = enumerate_rooted_posets(4);
    let budget = Budget::new(4, 4);
    let mut pairs = 0;
    for fr in &frames {
        let x = jankov_formula(fr);
        for g in &frames {
            pairs += 1;
            let valid = frame_valid(g, &x, &budget).map_err(|e| e.to_string())?;
            if valid == p_morphic_reduct_exists(g, fr) {
                return Err(format!("mismatch for {:?} against {:?}", fr, g));
            }
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{} frames, {pairs} pairs, 0 mismatches", frames.len()))
}

const IPC_THEOREMS: [&str; 30] = [
    "p -> p",
    "p -> (q -> p)",
    "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
    "p & q -> q & p",
    "p | q -> q | p",
    "(p -> q) -> ((q -> r) -> (p -> r))",
    "p -> ~~p",
    "~~~p -> ~p",
    "~~(p | ~p)",
    "(p -> q) -> (~q -> ~p)",
    "~(p | q) -> ~p & ~q",
    "~p & ~q -> ~(p | q)",
    "~p | ~q -> ~(p & q)",
    "(p | q) & r -> (p & r) | (q & r)",
    "(p & r) | (q & r) -> (p | q) & r",
    "(p & q -> r) -> (p -> (q -> r))",
    "(p -> (q -> r)) -> (p & q -> r)",
    "((p -> q) -> p) -> ((p -> q) -> q)",
    "~~(~~p -> p)",
    "~~(((p -> q) -> p) -> p)",
    "(p | q -> r) -> (p -> r) & (q -> r)",
    "(p -> r) & (q -> r) -> (p | q -> r)",
    "bot -> p",
    "~p -> (p -> q)",
    "(p -> q) & (p -> r) -> (p -> q & r)",
    "p | (q & r) -> (p | q) & (p | r)",
    "(p -> ~p) -> ~p",
    "~~(p -> q) -> (~~p -> ~~q)",
    "(~~p -> ~~q) -> ~~(p -> q)",
    "~(p & ~p)",
];

const IPC_NON_THEOREMS: [&str; 10] = [
    "p | ~p",
    "~~p -> p",
    "((p -> q) -> p) -> p",
    "(p -> q) | (q -> p)",
    "~p | ~~p",
    "(~q -> ~p) -> (p -> q)",
    "~(p & q) -> ~p | ~q",
    "(p -> q | r) -> (p -> q) | (p -> r)",
    "((p -> q) -> q) -> (p | q)",
    "(~~p -> p) -> (p | ~p)",
];

fn ipc_regression() -> Outcome {
    let start = Instant::now();
    let budget = ProverBudget { max_countermodel_worlds: 5, ..ProverBudget::default() };
    let ds = DeductiveSystem::base(Mode::Int);
    for s in IPC_THEOREMS {
        match prove_ipc(&f(s), &budget).map_err(|e| format!("{s}: {e}"))? {
            IpcOutcome::Theorem(d) => {
                let inf = convert_ipc(&d, &ds).map_err(|e| format!("{s}: {e}"))?;
                let concl = check_inference(&ds, &inf).map_err(|e| format!("{s}: {e:?}"))?;
                if concl != Statement::assert(f(s)) || !inf.hypotheses.is_empty() {
                    return Err(format!("{s}: wrong conclusion {concl}"));
                }
            }
            IpcOutcome::Countermodel(_) => return Err(format!("{s} was refuted")),
        }
    }
    let mut largest = 0;
    for s in IPC_NON_THEOREMS {
        match prove_ipc(&f(s), &budget).map_err(|e| format!("{s}: {e}"))? {
            IpcOutcome::Countermodel(m) => {
                if !model_validates(&m, &Statement::reject(f(s))) || m.frame.len() > 5 {
                    return Err(format!("{s}: countermodel does not verify"));
                }
                largest = largest.max(m.frame.len());
            }
            IpcOutcome::Theorem(_) => return Err(format!("{s} was proved")),
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("30 theorems checked, 10 countermodels verified (largest {largest} worlds)"))
}

fn corpus() -> Vec<Formula> {
    let mut out = enumerate_formulas(&["p", "q"], 2);
    let mut rng = StdRng::seed_from_u64(16);
    while out.len() < 2000 {
        let n = rng.gen_range(3..=6);
        let g = random_formula(&mut rng, &["p", "q"], n, Mode::Int);
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

fn standardness() -> Outcome {
    let start = Instant::now();
    let (ds, oracle, family) = cpc();
    let budget = ProverBudget::default();
    let prover = CpcProver::new(ds.clone(), budget).map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let manifest = dir.path().join("cpc.ds");
    fs::write(&manifest, render_system_manifest(&ds, &[Frame::point(Mode::Int)])).map_err(|e| e.to_string())?;

    let formulas = corpus();
    let (mut proved, mut refuted) = (0, 0);
    let mut files: Vec<PathBuf> = Vec::new();
    for (n, a) in formulas.iter().enumerate() {
        let pos = prover.prove(a);
        let neg = build_refutation(&ds, a, &oracle, &family, &budget);
        let inf = match (pos, neg) {
            (Ok(inf), Err(RefutationError::InLogic(_))) if classically_valid(a) => {
                proved += 1;
                inf
            }
            (Err(PositiveError::NotTautology(_)), Ok(inf)) if !classically_valid(a) => {
                refuted += 1;
                inf
            }
            (p, r) => return Err(format!("{a}: prove {:?} refute {:?}", p.err(), r.err())),
        };
        let path = dir.path().join(format!("f{n}.proof"));
        fs::write(&path, render_proof_script(Mode::Int, &inf)).map_err(|e| e.to_string())?;
        files.push(path);
    }

    let mut checked = 0;
    for chunk in files.chunks(250) {
        let out = Command::new(env!("CARGO_BIN_EXE_lukas"))
            .arg("check")
            .arg("--system")
            .arg(&manifest)
            .args(chunk)
            .output()
            .map_err(|e| e.to_string())?;
        let text = String::from_utf8_lossy(&out.stdout);
        let ok = text.lines().filter(|l| l.contains(": OK ")).count();
        if !out.status.success() || ok != chunk.len() {
            let bad: Vec<&str> = text.lines().filter(|l| !l.contains(": OK ")).take(3).collect();
            return Err(format!("lukas check rejected proofs: {bad:?}"));
        }
        checked += ok;
    }
    within(Duration::from_secs(600), start)?;
    Ok(format!(
        "{} formulas: {proved} proved, {refuted} refuted, split matches truth tables, {checked} proofs accepted by lukas check",
        formulas.len()
    ))
}

fn adequacy() -> Outcome {
    let start = Instant::now();
    let budget = Budget::new(8, 4);
    let mut report = Vec::new();
    for (name, frame) in [("CPC", Frame::point(Mode::Int)), ("2-chain", Frame::chain(2)), ("3-chain", Frame::chain(3))] {
        let oracle = TabularOracle::new(vec![frame.clone()], budget).unwrap();
        let ds = build_system(&oracle, &CompleteSetFamily::jankov(4), Mode::Int).map_err(|e| e.to_string())?;
        if !check_adequacy(&frame, &ds, &budget).map_err(|e| e.to_string())? {
            return Err(format!("{name} system is not adequate"));
        }
        report.push(format!("{name} {}+/{}-", ds.extra_axioms().len(), ds.anti_axioms().len()));
    }
    within(Duration::from_secs(10), start)?;
    Ok(report.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("rule soundness", rule_soundness),
        ("positive extraction", positive_extraction),
        ("symmetry", symmetry),
        ("Jankov characterization", jankov_characterization),
        ("IPC prover regression", ipc_regression),
        ("standardness on the corpus", standardness),
        ("adequacy certification", adequacy),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1}s): {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.1}s): {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
