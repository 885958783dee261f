//! Decision procedure for intuitionistic propositional logic.
//!
//! Provable formulas come back as Hilbert derivations over the ten-axiom
//! basis of [`ipc_axioms`](crate::kernel::ipc_axioms), using only modus
//! ponens and substitution. Unprovable ones come back with a finite Kripke
//! countermodel.

mod g4ip;
mod terms;

use std::collections::BTreeSet;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::formula::{apply_substitution, Formula, Substitution};
use crate::kernel::ipc_axioms;
use crate::semantics::{find_refuting_valuation, rooted_posets_of_size, Budget, KripkeModel};

use g4ip::Search;

/// How a Hilbert step was obtained. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertRule {
    /// Axiom number `k` of the basis.
    Axiom(usize),
    /// Hypothesis number `k`.
    Hypothesis(usize),
    /// Modus ponens: step `i` is `A -> B`, step `j` is `A`.
    Mp(usize, usize),
    Sb(usize, Substitution),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertStep {
    pub formula: Formula,
    pub rule: HilbertRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HilbertDerivation {
    pub hypotheses: Vec<Formula>,
    pub steps: Vec<HilbertStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {msg}")]
pub struct HilbertError {
    pub step: usize,
    pub msg: String,
}

impl HilbertDerivation {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    /// Rechecks every step against the axiom basis and the hypotheses.
    pub fn validate(&self) -> Result<(), HilbertError> {
        let axioms = ipc_axioms();
        for (n, step) in self.steps.iter().enumerate() {
            let at = n + 1;
            let err = |msg: &str| HilbertError { step: at, msg: msg.to_string() };
            let earlier = |i: usize| {
                if i == 0 || i >= at {
                    Err(err("premise index out of range"))
                } else {
                    Ok(&self.steps[i - 1].formula)
                }
            };
            let expected = match &step.rule {
                HilbertRule::Axiom(k) => axioms.get(k.wrapping_sub(1)).cloned().ok_or_else(|| err("no such axiom"))?,
                HilbertRule::Hypothesis(k) => self
                    .hypotheses
                    .get(k.wrapping_sub(1))
                    .cloned()
                    .ok_or_else(|| err("no such hypothesis"))?,
                HilbertRule::Mp(i, j) => {
                    let (imp, minor) = (earlier(*i)?, earlier(*j)?);
                    match imp.as_implication() {
                        Some((a, b)) if a == minor => b.clone(),
                        _ => return Err(err("modus ponens premises do not match")),
                    }
                }
                HilbertRule::Sb(i, sigma) => apply_substitution(sigma, earlier(*i)?),
            };
            if expected != step.formula {
                return Err(err("formula does not match its justification"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for HilbertDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in &self.hypotheses {
            writeln!(f, "hyp {h}")?;
        }
        for (n, s) in self.steps.iter().enumerate() {
            let why = match &s.rule {
                HilbertRule::Axiom(k) => format!("ax{k}"),
                HilbertRule::Hypothesis(k) => format!("hyp{k}"),
                HilbertRule::Mp(i, j) => format!("mp {i} {j}"),
                HilbertRule::Sb(i, _) => format!("sb {i}"),
            };
            writeln!(f, "{} {} ; {}", n + 1, s.formula, why)?;
        }
        Ok(())
    }
}

/// Search limits for the prover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProverBudget {
    /// Sequent nodes explored per proof attempt.
    pub max_nodes: usize,
    /// Largest countermodel searched for.
    pub max_countermodel_worlds: usize,
    /// Substitution instances of hypotheses combined at once.
    pub max_instances: usize,
    /// Instance combinations tried before giving up.
    pub max_combinations: usize,
}

impl Default for ProverBudget {
    fn default() -> Self {
        ProverBudget { max_nodes: 200_000, max_countermodel_worlds: 6, max_instances: 2, max_combinations: 4_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("resource bound: proof search exceeded {0} nodes")]
    SearchExhausted(usize),
    #[error("resource bound: no countermodel with at most {0} worlds")]
    NoSmallCountermodel(usize),
    #[error("formula contains modalities; no intuitionistic countermodel is produced")]
    Modal,
}

#[derive(Debug, Clone)]
pub enum IpcOutcome {
    Theorem(HilbertDerivation),
    Countermodel(KripkeModel),
}

/// Decides `a` in intuitionistic logic.
///
/// Boxed subformulas are treated as atoms, so a derivation is still found for
/// modal substitution instances of intuitionistic theorems; when such a
/// formula is unprovable, [`ProverError::Modal`] is returned instead of a
/// countermodel.
pub fn prove_ipc(a: &Formula, budget: &ProverBudget) -> Result<IpcOutcome, ProverError> {
    let mut search = Search::new(budget.max_nodes);
    match search.prove(Vec::new(), a) {
        Ok(Some(t)) => Ok(IpcOutcome::Theorem(finish(&t, Vec::new()))),
        Ok(None) => countermodel(a, budget).map(IpcOutcome::Countermodel),
        Err(_) => Err(ProverError::SearchExhausted(budget.max_nodes)),
    }
}

/// Smallest rooted countermodel to `a`, trying frames in order of size.
pub fn countermodel(a: &Formula, budget: &ProverBudget) -> Result<KripkeModel, ProverError> {
    if a.is_modal() {
        return Err(ProverError::Modal);
    }
    let vars = a.vars().len();
    for n in 1..=budget.max_countermodel_worlds {
        for frame in rooted_posets_of_size(n) {
            let b = Budget::new(n, vars);
            if let Ok(Some(m)) = find_refuting_valuation(&frame, a, &b) {
                return Ok(m);
            }
        }
    }
    Err(ProverError::NoSmallCountermodel(budget.max_countermodel_worlds))
}

fn finish(t: &terms::Term, hypotheses: Vec<Formula>) -> HilbertDerivation {
    let closed = terms::eliminate_lambdas(t);
    let d = terms::emit(&closed, hypotheses);
    debug_assert!(d.validate().is_ok(), "prover emitted an invalid derivation");
    d
}

/// Derives `a` from `hypotheses` using modus ponens and substitution.
///
/// Substitution may be applied to hypotheses, so this searches over
/// instances of them (constants first, then subformulas of the goal) and asks
/// the prover to finish. Derivations from a single instance `I` are tried
/// first and come out in the shape `I`, a hypothesis-free proof of `I -> a`,
/// modus ponens; [`symmetry_transform`](crate::transforms::symmetry_transform)
/// can always reverse that shape. `Ok(None)` means the bounded search found
/// nothing; it is not a proof of underivability.
pub fn derive_from_hypotheses(
    hypotheses: &[Formula],
    a: &Formula,
    budget: &ProverBudget,
) -> Result<Option<HilbertDerivation>, ProverError> {
    let mut search = Search::new(budget.max_nodes);
    let exhausted = |_| ProverError::SearchExhausted(budget.max_nodes);
    let instances = instances(hypotheses, a);
    let mut tried = 0usize;

    for (formula, term) in &instances {
        tried += 1;
        if tried > budget.max_combinations {
            return Ok(None);
        }
        let goal = Formula::implies(formula.clone(), a.clone());
        if !classically_valid(&goal) {
            continue;
        }
        search.refuel();
        if let Some(p) = search.prove(Vec::new(), &goal).map_err(exhausted)? {
            let t = terms::app(terms::eliminate_lambdas(&p), Rc::clone(term));
            return Ok(Some(finish(&t, hypotheses.to_vec())));
        }
    }

    let base: Vec<(Formula, terms::Term)> =
        hypotheses.iter().enumerate().map(|(i, h)| (h.clone(), terms::hyp(i, h.clone()))).collect();
    let substituted: Vec<_> = instances.iter().filter(|(f, _)| !hypotheses.contains(f)).collect();
    for k in 0..=budget.max_instances {
        for combo in combinations(substituted.len(), k) {
            tried += 1;
            if tried > budget.max_combinations {
                return Ok(None);
            }
            let mut ctx = base.clone();
            ctx.extend(combo.iter().map(|&j| (substituted[j].0.clone(), Rc::clone(&substituted[j].1))));
            if k + base.len() <= 1 {
                continue; // covered by the single-instance pass
            }
            let goal = Formula::implies(Formula::conj(ctx.iter().map(|(f, _)| f.clone())), a.clone());
            if !classically_valid(&goal) {
                continue;
            }
            search.refuel();
            if let Some(t) = search.prove(ctx, a).map_err(exhausted)? {
                return Ok(Some(finish(&t, hypotheses.to_vec())));
            }
        }
    }
    Ok(None)
}

/// Hypotheses themselves, then their substitution instances over the
/// candidate pool, cheapest first.
fn instances(hypotheses: &[Formula], a: &Formula) -> Vec<(Formula, terms::Term)> {
    const MAX_PER_HYPOTHESIS: usize = 100_000;
    let pool = candidate_pool(a);
    let mut out: Vec<(Formula, terms::Term)> =
        hypotheses.iter().enumerate().map(|(i, h)| (h.clone(), terms::hyp(i, h.clone()))).collect();
    let mut scored: Vec<(usize, Formula, terms::Term)> = Vec::new();
    for (i, h) in hypotheses.iter().enumerate() {
        let vars: Vec<_> = h.vars().into_iter().collect();
        if vars.is_empty() || pool.len().checked_pow(vars.len() as u32).is_none_or(|n| n > MAX_PER_HYPOTHESIS) {
            continue;
        }
        for choice in odometer(vars.len(), pool.len()) {
            let sigma: Substitution =
                vars.iter().zip(&choice).map(|(v, &c)| (v.clone(), pool[c].clone())).collect();
            let t = terms::sb(terms::hyp(i, h.clone()), sigma.without_identities());
            if !out.iter().any(|(f, _)| *f == t.ty) {
                scored.push((choice.iter().sum(), t.ty.clone(), t));
            }
        }
    }
    scored.sort_by_key(|x| (x.0, x.1.size()));
    let mut seen: std::collections::HashSet<Formula> = out.iter().map(|(f, _)| f.clone()).collect();
    for (_, f, t) in scored {
        if seen.insert(f.clone()) {
            out.push((f, t));
        }
    }
    out
}

/// Constants, then variables of the goal, then its other subformulas by size.
fn candidate_pool(a: &Formula) -> Vec<Formula> {
    let mut out = vec![Formula::Bottom, Formula::top()];
    out.extend(a.vars().into_iter().map(|v| Formula::var(&v)));
    for s in a.subformulas() {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// All length-`len` tuples over `0..base`.
fn odometer(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|p| (0..base).map(move |c| [p.clone(), vec![c]].concat())).collect();
    }
    out
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k)
}

/// Truth-table validity, with boxed subformulas read as atoms.
pub fn classically_valid(a: &Formula) -> bool {
    let mut atoms = BTreeSet::new();
    collect_atoms(a, &mut atoms);
    let atoms: Vec<Formula> = atoms.into_iter().collect();
    if atoms.len() > 16 {
        return true;
    }
    (0u32..1 << atoms.len()).all(|row| eval(a, &atoms, row))
}

fn collect_atoms(a: &Formula, out: &mut BTreeSet<Formula>) {
    match a {
        Formula::Var(_) | Formula::Box(_) => {
            out.insert(a.clone());
        }
        Formula::Bottom => {}
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
            collect_atoms(x, out);
            collect_atoms(y, out);
        }
    }
}

fn eval(a: &Formula, atoms: &[Formula], row: u32) -> bool {
    match a {
        Formula::Var(_) | Formula::Box(_) => {
            let i = atoms.binary_search(a).expect("atom collected");
            row >> i & 1 == 1
        }
        Formula::Bottom => false,
        Formula::And(x, y) => eval(x, atoms, row) && eval(y, atoms, row),
        Formula::Or(x, y) => eval(x, atoms, row) || eval(y, atoms, row),
        Formula::Implies(x, y) => !eval(x, atoms, row) || eval(y, atoms, row),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, Mode};

    fn f(s: &str) -> Formula {
        parse_formula(s, Mode::K4).unwrap()
    }

    fn theorem(s: &str) -> HilbertDerivation {
        match prove_ipc(&f(s), &ProverBudget::default()).unwrap() {
            IpcOutcome::Theorem(d) => {
                d.validate().unwrap();
                assert_eq!(d.conclusion(), Some(&f(s)));
                d
            }
            IpcOutcome::Countermodel(m) => panic!("{s} refuted by {m:?}"),
        }
    }

    #[test]
    fn proves_basic_theorems() {
        for s in [
            "p -> p",
            "p & q -> q & p",
            "p | q -> q | p",
            "~~(p | ~p)",
            "(p -> q) -> (~q -> ~p)",
            "((p -> q) -> p) -> ((p -> q) -> q)",
            "~~~p -> ~p",
            "(p | q) & r -> (p & r) | (q & r)",
            "[]p -> []p",
        ] {
            theorem(s);
        }
    }

    #[test]
    fn refutes_classical_principles() {
        for s in ["p | ~p", "~~p -> p", "((p -> q) -> p) -> p", "(p -> q) | (q -> p)"] {
            match prove_ipc(&f(s), &ProverBudget::default()).unwrap() {
                IpcOutcome::Countermodel(m) => assert!(!crate::semantics::forces(&m, 0, &f(s))),
                IpcOutcome::Theorem(_) => panic!("{s} proved"),
            }
        }
    }

    #[test]
    fn derives_excluded_middle_from_double_negation() {
        let d = derive_from_hypotheses(&[f("~~p -> p")], &f("q | ~q"), &ProverBudget::default())
            .unwrap()
            .expect("derivable");
        d.validate().unwrap();
        assert!(d.steps.iter().any(|s| matches!(s.rule, HilbertRule::Sb(..))));
    }

    #[test]
    fn derivation_fails_without_support() {
        let d = derive_from_hypotheses(&[f("p -> p")], &f("q | ~q"), &ProverBudget::default()).unwrap();
        assert!(d.is_none());
    }
}
