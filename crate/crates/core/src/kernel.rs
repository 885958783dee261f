//! Statements, deductive systems and the inference checker.
//!
//! Everything the other modules produce is accepted only after it passes
//! [`check_inference`].

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::formula::{apply_substitution, match_instance, parse_formula, Formula, Mode, Substitution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Assert,
    Reject,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Assert => Sign::Reject,
            Sign::Reject => Sign::Assert,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Assert => '+',
            Sign::Reject => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Statement {
    pub sign: Sign,
    pub body: Formula,
}

impl Statement {
    pub fn assert(body: Formula) -> Self {
        Statement { sign: Sign::Assert, body }
    }

    pub fn reject(body: Formula) -> Self {
        Statement { sign: Sign::Reject, body }
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Assert
    }

    /// The same formula with the opposite sign.
    pub fn opposite(&self) -> Statement {
        Statement {
            sign: self.sign.opposite(),
            body: self.body.clone(),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.sign.symbol(), self.body)
    }
}

static IPC_AXIOMS: OnceLock<Vec<Formula>> = OnceLock::new();
static K4_AXIOMS: OnceLock<Vec<Formula>> = OnceLock::new();

const IPC_AXIOM_TEXT: [&str; 10] = [
    "p -> (q -> p)",
    "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
    "p & q -> p",
    "p & q -> q",
    "p -> (q -> p & q)",
    "p -> p | q",
    "q -> p | q",
    "(p -> r) -> ((q -> r) -> (p | q -> r))",
    "(p -> q) -> ((p -> ~q) -> ~p)",
    "bot -> p",
];

/// The fixed Hilbert basis for intuitionistic logic, in a fixed order.
pub fn ipc_axioms() -> &'static [Formula] {
    IPC_AXIOMS.get_or_init(|| {
        IPC_AXIOM_TEXT
            .iter()
            .map(|s| parse_formula(s, Mode::Int).expect("built-in axiom"))
            .collect()
    })
}

/// Modal axioms added in K4 mode: distribution, transitivity and double
/// negation elimination (the propositional base is otherwise intuitionistic).
pub fn k4_axioms() -> &'static [Formula] {
    K4_AXIOMS.get_or_init(|| {
        ["[](p -> q) -> ([]p -> []q)", "[]p -> [][]p", "~~p -> p"]
            .iter()
            .map(|s| parse_formula(s, Mode::K4).expect("built-in axiom"))
            .collect()
    })
}

/// Axioms, anti-axioms and a mode. The base axioms for the mode are always
/// part of the positive axioms and need not be listed.
#[derive(Debug, Clone)]
pub struct DeductiveSystem {
    mode: Mode,
    extra_axioms: Vec<Formula>,
    anti_axioms: Vec<Formula>,
    positive_index: HashSet<Formula>,
    negative_index: HashSet<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("formula {0} is not in the {1} language")]
pub struct ModeError(pub Formula, pub Mode);

impl DeductiveSystem {
    pub fn new(
        mode: Mode,
        positive: impl IntoIterator<Item = Formula>,
        negative: impl IntoIterator<Item = Formula>,
    ) -> Result<Self, ModeError> {
        let mut ds = DeductiveSystem {
            mode,
            extra_axioms: Vec::new(),
            anti_axioms: Vec::new(),
            positive_index: HashSet::new(),
            negative_index: HashSet::new(),
        };
        for f in Self::base_axioms_for(mode) {
            ds.positive_index.insert(f.clone());
        }
        for f in positive {
            ds.add_axiom(f)?;
        }
        for f in negative {
            ds.add_anti_axiom(f)?;
        }
        Ok(ds)
    }

    /// The system with only the base axioms of `mode`.
    pub fn base(mode: Mode) -> Self {
        Self::new(mode, [], []).expect("base axioms respect their mode")
    }

    fn base_axioms_for(mode: Mode) -> impl Iterator<Item = &'static Formula> {
        let modal: &[Formula] = match mode {
            Mode::Int => &[],
            Mode::K4 => k4_axioms(),
        };
        ipc_axioms().iter().chain(modal)
    }

    pub fn add_axiom(&mut self, f: Formula) -> Result<(), ModeError> {
        if !f.respects(self.mode) {
            return Err(ModeError(f, self.mode));
        }
        if self.positive_index.insert(f.clone()) {
            self.extra_axioms.push(f);
        }
        Ok(())
    }

    pub fn add_anti_axiom(&mut self, f: Formula) -> Result<(), ModeError> {
        if !f.respects(self.mode) {
            return Err(ModeError(f, self.mode));
        }
        if self.negative_index.insert(f.clone()) {
            self.anti_axioms.push(f);
        }
        Ok(())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn base_axioms(&self) -> impl Iterator<Item = &'static Formula> {
        Self::base_axioms_for(self.mode)
    }

    /// Axioms beyond the base, in insertion order.
    pub fn extra_axioms(&self) -> &[Formula] {
        &self.extra_axioms
    }

    /// All positive axioms: the base followed by the extra axioms.
    pub fn positive_axioms(&self) -> impl Iterator<Item = &Formula> + '_ {
        self.base_axioms().map(|f| -> &Formula { f }).chain(self.extra_axioms.iter())
    }

    pub fn anti_axioms(&self) -> &[Formula] {
        &self.anti_axioms
    }

    pub fn is_axiom(&self, f: &Formula) -> bool {
        self.positive_index.contains(f)
    }

    pub fn is_anti_axiom(&self, f: &Formula) -> bool {
        self.negative_index.contains(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Justification {
    Axiom,
    AntiAxiom,
    Hypothesis,
    /// `MP(i, j)`: step `i` is `+ B -> A`, step `j` is `+ B`.
    Mp(usize, usize),
    Sb(usize, Substitution),
    /// `MT(i, j)`: step `i` is `+ A -> B`, step `j` is `- B`.
    Mt(usize, usize),
    Rs(usize),
    Ns(usize),
    Rn(usize),
}

impl Justification {
    /// Step indices this justification refers to (1-based).
    pub fn premises(&self) -> Vec<usize> {
        match *self {
            Justification::Axiom | Justification::AntiAxiom | Justification::Hypothesis => vec![],
            Justification::Mp(i, j) | Justification::Mt(i, j) => vec![i, j],
            Justification::Sb(i, _)
            | Justification::Rs(i)
            | Justification::Ns(i)
            | Justification::Rn(i) => vec![i],
        }
    }

    /// The same rule with its premise indices rewritten by `f`.
    pub fn map_premises(&self, mut f: impl FnMut(usize) -> usize) -> Justification {
        match self {
            Justification::Axiom => Justification::Axiom,
            Justification::AntiAxiom => Justification::AntiAxiom,
            Justification::Hypothesis => Justification::Hypothesis,
            Justification::Mp(i, j) => Justification::Mp(f(*i), f(*j)),
            Justification::Sb(i, s) => Justification::Sb(f(*i), s.clone()),
            Justification::Mt(i, j) => Justification::Mt(f(*i), f(*j)),
            Justification::Rs(i) => Justification::Rs(f(*i)),
            Justification::Ns(i) => Justification::Ns(f(*i)),
            Justification::Rn(i) => Justification::Rn(f(*i)),
        }
    }

    pub fn rule(&self) -> Rule {
        match self {
            Justification::Axiom => Rule::Axiom,
            Justification::AntiAxiom => Rule::AntiAxiom,
            Justification::Hypothesis => Rule::Hypothesis,
            Justification::Mp(..) => Rule::Mp,
            Justification::Sb(..) => Rule::Sb,
            Justification::Mt(..) => Rule::Mt,
            Justification::Rs(_) => Rule::Rs,
            Justification::Ns(_) => Rule::Ns,
            Justification::Rn(_) => Rule::Rn,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Axiom,
    AntiAxiom,
    Hypothesis,
    Mp,
    Sb,
    Mt,
    Rs,
    Ns,
    Rn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub statement: Statement,
    pub justification: Justification,
}

impl Step {
    pub fn new(statement: Statement, justification: Justification) -> Self {
        Step { statement, justification }
    }
}

/// A sequence of justified statements over a list of hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Inference {
    pub hypotheses: Vec<Statement>,
    pub steps: Vec<Step>,
}

impl Inference {
    pub fn new(hypotheses: Vec<Statement>) -> Self {
        Inference { hypotheses, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn conclusion(&self) -> Option<&Statement> {
        self.steps.last().map(|s| &s.statement)
    }

    /// 1-based access.
    pub fn step(&self, i: usize) -> &Step {
        &self.steps[i - 1]
    }

    /// Appends a step and returns its 1-based index.
    pub fn push(&mut self, statement: Statement, justification: Justification) -> usize {
        self.steps.push(Step::new(statement, justification));
        self.steps.len()
    }

    /// The inference made of the first `n` steps.
    pub fn prefix(&self, n: usize) -> Inference {
        Inference {
            hypotheses: self.hypotheses.clone(),
            steps: self.steps[..n].to_vec(),
        }
    }

    /// Steps (1-based) that step `i` transitively depends on, including `i`.
    pub fn cone(&self, i: usize) -> Vec<bool> {
        let mut mark = vec![false; self.steps.len() + 1];
        let mut stack = vec![i];
        while let Some(k) = stack.pop() {
            if k == 0 || k > self.steps.len() || mark[k] {
                continue;
            }
            mark[k] = true;
            stack.extend(self.step(k).justification.premises());
        }
        mark
    }

    pub fn is_sign_pure(&self, sign: Sign) -> bool {
        self.steps.iter().all(|s| s.statement.sign == sign)
    }
}

/// Machine-readable reason a step was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    EmptyInference,
    IndexOutOfRange,
    SignMismatch,
    FormulaMismatch,
    RsNoMatch,
    ModalRuleInIntMode,
    AxiomNotInSystem,
    AntiAxiomNotInSystem,
    HypothesisNotInContext,
    ModeViolation,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::EmptyInference => "empty-inference",
            Reason::IndexOutOfRange => "index-out-of-range",
            Reason::SignMismatch => "sign-mismatch",
            Reason::FormulaMismatch => "formula-mismatch",
            Reason::RsNoMatch => "rs-no-match",
            Reason::ModalRuleInIntMode => "modal-rule-in-int-mode",
            Reason::AxiomNotInSystem => "axiom-not-in-system",
            Reason::AntiAxiomNotInSystem => "antiaxiom-not-in-system",
            Reason::HypothesisNotInContext => "hypothesis-not-in-context",
            Reason::ModeViolation => "mode-violation",
        }
    }

    pub fn from_code(code: &str) -> Option<Reason> {
        use Reason::*;
        [
            EmptyInference,
            IndexOutOfRange,
            SignMismatch,
            FormulaMismatch,
            RsNoMatch,
            ModalRuleInIntMode,
            AxiomNotInSystem,
            AntiAxiomNotInSystem,
            HypothesisNotInContext,
            ModeViolation,
        ]
        .into_iter()
        .find(|r| r.code() == code)
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("step {step}: {reason}")]
pub struct CheckError {
    /// 1-based step index; 0 when the inference as a whole is malformed.
    pub step: usize,
    pub reason: Reason,
}

/// Outcome of checking an inference. Renders as `OK <statement>` or
/// `ERR <step> <reason-code>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport(pub Result<Statement, CheckError>);

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.0.is_ok()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Ok(s) => write!(f, "OK {s}"),
            Err(e) => write!(f, "ERR {} {}", e.step, e.reason),
        }
    }
}

/// Checks every step of `inf` against `ds` and returns the conclusion.
pub fn check_inference(ds: &DeductiveSystem, inf: &Inference) -> Result<Statement, CheckError> {
    if inf.steps.is_empty() {
        return Err(CheckError { step: 0, reason: Reason::EmptyInference });
    }
    let mode = ds.mode();
    if inf.hypotheses.iter().any(|h| !h.body.respects(mode)) {
        return Err(CheckError { step: 0, reason: Reason::ModeViolation });
    }
    for (k, step) in inf.steps.iter().enumerate() {
        let n = k + 1;
        let fail = |reason| Err(CheckError { step: n, reason });
        if !step.statement.body.respects(mode) {
            return fail(Reason::ModeViolation);
        }
        for i in step.justification.premises() {
            if i == 0 || i >= n {
                return fail(Reason::IndexOutOfRange);
            }
        }
        let premises: Vec<&Statement> = step
            .justification
            .premises()
            .into_iter()
            .map(|i| &inf.steps[i - 1].statement)
            .collect();
        let expected = match derive(ds, &step.justification, &premises, &step.statement) {
            Ok(s) => s,
            Err(reason) => return fail(reason),
        };
        if expected.sign != step.statement.sign {
            return fail(Reason::SignMismatch);
        }
        if expected.body != step.statement.body {
            return fail(Reason::FormulaMismatch);
        }
        if step.justification == Justification::Hypothesis && !inf.hypotheses.contains(&step.statement) {
            return fail(Reason::HypothesisNotInContext);
        }
    }
    Ok(inf.steps.last().expect("nonempty").statement.clone())
}

/// Wraps [`check_inference`] in a [`CheckReport`].
pub fn check_report(ds: &DeductiveSystem, inf: &Inference) -> CheckReport {
    CheckReport(check_inference(ds, inf))
}

/// What the rule produces from `premises`. `claimed` is only consulted for
/// the rules whose output is not determined by the premises (axioms,
/// hypotheses and reverse substitution).
fn derive(
    ds: &DeductiveSystem,
    just: &Justification,
    premises: &[&Statement],
    claimed: &Statement,
) -> Result<Statement, Reason> {
    let need = |s: &Statement, sign: Sign| {
        if s.sign == sign {
            Ok(())
        } else {
            Err(Reason::SignMismatch)
        }
    };
    match just {
        Justification::Axiom => {
            need(claimed, Sign::Assert)?;
            if ds.is_axiom(&claimed.body) {
                Ok(claimed.clone())
            } else {
                Err(Reason::AxiomNotInSystem)
            }
        }
        Justification::AntiAxiom => {
            need(claimed, Sign::Reject)?;
            if ds.is_anti_axiom(&claimed.body) {
                Ok(claimed.clone())
            } else {
                Err(Reason::AntiAxiomNotInSystem)
            }
        }
        Justification::Hypothesis => Ok(claimed.clone()),
        Justification::Mp(..) => {
            let (major, minor) = (premises[0], premises[1]);
            need(major, Sign::Assert)?;
            need(minor, Sign::Assert)?;
            match major.body.as_implication() {
                Some((b, a)) if *b == minor.body => Ok(Statement::assert(a.clone())),
                _ => Err(Reason::FormulaMismatch),
            }
        }
        Justification::Sb(_, sigma) => {
            need(premises[0], Sign::Assert)?;
            let out = apply_substitution(sigma, &premises[0].body);
            if !out.respects(ds.mode()) {
                return Err(Reason::ModeViolation);
            }
            Ok(Statement::assert(out))
        }
        Justification::Mt(..) => {
            let (major, minor) = (premises[0], premises[1]);
            need(major, Sign::Assert)?;
            need(minor, Sign::Reject)?;
            match major.body.as_implication() {
                Some((a, b)) if *b == minor.body => Ok(Statement::reject(a.clone())),
                _ => Err(Reason::FormulaMismatch),
            }
        }
        Justification::Rs(_) => {
            need(premises[0], Sign::Reject)?;
            need(claimed, Sign::Reject)?;
            if match_instance(&claimed.body, &premises[0].body).is_some() {
                Ok(claimed.clone())
            } else {
                Err(Reason::RsNoMatch)
            }
        }
        Justification::Ns(_) => {
            if ds.mode() != Mode::K4 {
                return Err(Reason::ModalRuleInIntMode);
            }
            need(premises[0], Sign::Assert)?;
            Ok(Statement::assert(Formula::boxed(premises[0].body.clone())))
        }
        Justification::Rn(_) => {
            if ds.mode() != Mode::K4 {
                return Err(Reason::ModalRuleInIntMode);
            }
            need(premises[0], Sign::Reject)?;
            match &premises[0].body {
                Formula::Box(a) => Ok(Statement::reject((**a).clone())),
                _ => Err(Reason::FormulaMismatch),
            }
        }
    }
}

/// Argument of [`apply_rule`] for the rules that need more than premises.
#[derive(Debug, Clone)]
pub enum RulePayload {
    None,
    /// Substitution for `Sb`.
    Substitution(Substitution),
    /// The more general formula for `RS`, or the formula for axiom,
    /// anti-axiom and hypothesis steps.
    Formula(Formula),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rule {rule:?} cannot be applied: {reason}")]
pub struct RuleError {
    pub rule: Rule,
    pub reason: Reason,
}

/// Forward application of a single rule: the statement that
/// [`check_inference`] would accept for this justification.
pub fn apply_rule(
    ds: &DeductiveSystem,
    rule: Rule,
    premises: &[&Statement],
    payload: &RulePayload,
) -> Result<Statement, RuleError> {
    let err = |reason| RuleError { rule, reason };
    let arity = match rule {
        Rule::Axiom | Rule::AntiAxiom | Rule::Hypothesis => 0,
        Rule::Mp | Rule::Mt => 2,
        _ => 1,
    };
    if premises.len() != arity {
        return Err(err(Reason::IndexOutOfRange));
    }
    let payload_formula = || match payload {
        RulePayload::Formula(f) => Ok(f.clone()),
        _ => Err(err(Reason::FormulaMismatch)),
    };
    let (just, claimed) = match rule {
        Rule::Axiom => (Justification::Axiom, Statement::assert(payload_formula()?)),
        Rule::AntiAxiom => (Justification::AntiAxiom, Statement::reject(payload_formula()?)),
        Rule::Hypothesis => {
            let f = payload_formula()?;
            return Ok(Statement::assert(f));
        }
        Rule::Mp => (Justification::Mp(1, 2), premises[0].clone()),
        Rule::Mt => (Justification::Mt(1, 2), premises[0].clone()),
        Rule::Sb => match payload {
            RulePayload::Substitution(s) => (Justification::Sb(1, s.clone()), premises[0].clone()),
            _ => return Err(err(Reason::FormulaMismatch)),
        },
        Rule::Rs => (Justification::Rs(1), Statement::reject(payload_formula()?)),
        Rule::Ns => (Justification::Ns(1), premises[0].clone()),
        Rule::Rn => (Justification::Rn(1), premises[0].clone()),
    };
    let out = derive(ds, &just, premises, &claimed).map_err(err)?;
    if !out.body.respects(ds.mode()) {
        return Err(err(Reason::ModeViolation));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s, Mode::K4).unwrap()
    }

    #[test]
    fn ipc_basis_shape() {
        let ax = ipc_axioms();
        assert_eq!(ax.len(), 10);
        assert_eq!(ax[0], f("p -> (q -> p)"));
        assert!(ax.contains(&f("bot -> p")));
    }

    #[test]
    fn statement_rendering_and_opposite() {
        let s = Statement::assert(f("p -> q"));
        assert_eq!(s.to_string(), "+ p->q");
        assert_eq!(s.opposite().to_string(), "- p->q");
        assert_eq!(s.opposite().opposite(), s);
    }

    #[test]
    fn modus_ponens_golden() {
        let ds = DeductiveSystem::base(Mode::Int);
        let mut inf = Inference::new(vec![Statement::assert(f("p"))]);
        inf.push(Statement::assert(f("p -> (q -> p)")), Justification::Axiom);
        inf.push(Statement::assert(f("p")), Justification::Hypothesis);
        inf.push(Statement::assert(f("q -> p")), Justification::Mp(1, 2));
        let report = check_report(&ds, &inf);
        assert_eq!(report.to_string(), "OK + q->p");
    }

    #[test]
    fn axiom_not_in_system() {
        let ds = DeductiveSystem::base(Mode::Int);
        let mut inf = Inference::default();
        inf.push(Statement::assert(f("p -> q")), Justification::Axiom);
        assert_eq!(
            check_inference(&ds, &inf),
            Err(CheckError { step: 1, reason: Reason::AxiomNotInSystem })
        );
    }

    #[test]
    fn reverse_substitution_reconstructs_match() {
        let ds = DeductiveSystem::base(Mode::Int);
        let hyp = Statement::reject(f("(a&b)->(c->(a&b))"));
        let mut inf = Inference::new(vec![hyp.clone()]);
        inf.push(hyp, Justification::Hypothesis);
        inf.push(Statement::reject(f("p->(q->p)")), Justification::Rs(1));
        assert_eq!(check_inference(&ds, &inf), Ok(Statement::reject(f("p->(q->p)"))));

        let mut bad = inf.clone();
        bad.steps[1].statement = Statement::reject(f("p->(p->p)"));
        assert_eq!(
            check_inference(&ds, &bad),
            Err(CheckError { step: 2, reason: Reason::RsNoMatch })
        );
    }

    #[test]
    fn error_paths() {
        let ds = DeductiveSystem::base(Mode::Int);
        let mut inf = Inference::new(vec![Statement::assert(f("p"))]);
        inf.push(Statement::assert(f("p")), Justification::Hypothesis);
        inf.push(Statement::assert(f("q")), Justification::Mp(1, 3));
        assert_eq!(check_inference(&ds, &inf).unwrap_err().reason, Reason::IndexOutOfRange);

        inf.steps[1].justification = Justification::Mt(1, 1);
        assert_eq!(check_inference(&ds, &inf).unwrap_err().reason, Reason::SignMismatch);

        inf.steps[1] = Step::new(Statement::assert(f("[]p")), Justification::Ns(1));
        assert_eq!(check_inference(&ds, &inf).unwrap_err().reason, Reason::ModeViolation);

        let k4 = DeductiveSystem::base(Mode::K4);
        assert_eq!(check_inference(&k4, &inf), Ok(Statement::assert(f("[]p"))));

        let mut rn = Inference::new(vec![Statement::reject(f("p"))]);
        rn.push(Statement::reject(f("p")), Justification::Hypothesis);
        rn.push(Statement::reject(f("p")), Justification::Rn(1));
        assert_eq!(check_inference(&ds, &rn).unwrap_err().reason, Reason::ModalRuleInIntMode);
        assert_eq!(check_inference(&k4, &rn).unwrap_err().reason, Reason::FormulaMismatch);

        let mut hyp = Inference::default();
        hyp.push(Statement::assert(f("p")), Justification::Hypothesis);
        assert_eq!(check_inference(&ds, &hyp).unwrap_err().reason, Reason::HypothesisNotInContext);

        assert_eq!(
            check_inference(&ds, &Inference::default()).unwrap_err().reason,
            Reason::EmptyInference
        );
    }

    #[test]
    fn forward_rules() {
        let int = DeductiveSystem::base(Mode::Int);
        let k4 = DeductiveSystem::base(Mode::K4);
        let pq = Statement::assert(f("p -> q"));
        let nq = Statement::reject(f("q"));
        assert_eq!(
            apply_rule(&int, Rule::Mt, &[&pq, &nq], &RulePayload::None),
            Ok(Statement::reject(f("p")))
        );
        assert_eq!(
            apply_rule(&k4, Rule::Ns, &[&Statement::assert(f("p"))], &RulePayload::None),
            Ok(Statement::assert(f("[]p")))
        );
        let inst = Statement::reject(f("(a & b) -> (c -> (a & b))"));
        assert_eq!(
            apply_rule(&int, Rule::Rs, &[&inst], &RulePayload::Formula(f("p -> (q -> p)"))),
            Ok(Statement::reject(f("p -> (q -> p)")))
        );
        assert!(apply_rule(&int, Rule::Ns, &[&Statement::assert(f("p"))], &RulePayload::None).is_err());
        assert!(apply_rule(&int, Rule::Mp, &[&pq, &nq], &RulePayload::None).is_err());
    }

    #[test]
    fn mode_is_enforced_on_axioms() {
        assert!(DeductiveSystem::new(Mode::Int, [f("[]p")], []).is_err());
        assert!(DeductiveSystem::new(Mode::K4, [f("[]p -> p")], []).is_ok());
    }
}
