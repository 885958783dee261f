//! Jankov formulas as a complete set, and the axiomatizer built on them.
//!
//! Given a membership oracle for a logic and a family of formulas, the
//! system keeps every family member the logic contains as an axiom and every
//! other member as an anti-axiom. Refutations of non-members are then built
//! syntactically: derive a rejected family formula `C` from `a`, reverse the
//! derivation with the symmetry transform, and start from the anti-axiom
//! `-C`.

use thiserror::Error;

use crate::formula::{Formula, Mode, Substitution};
use crate::kernel::{check_inference, CheckError, DeductiveSystem, Inference, Justification, Statement};
use crate::prover::{classically_valid, derive_from_hypotheses, prove_ipc, IpcOutcome, ProverBudget, ProverError};
use crate::semantics::{enumerate_rooted_posets, Frame, LogicOracle, SemanticsError};
use crate::transforms::{convert_ipc, symmetry_transform, TransformError};

fn world_var(i: usize) -> Formula {
    Formula::var(&format!("p{i}"))
}

/// The Jankov/de Jongh formula of a rooted finite poset.
///
/// Uses one variable `p{i}` per world. A rooted poset `g` validates the
/// result exactly when `f` is not a p-morphic image of a generated subframe
/// of `g`.
pub fn jankov_formula(f: &Frame) -> Formula {
    assert_eq!(f.mode(), Mode::Int, "Jankov formulas are defined for intuitionistic frames");
    let root = f.root().expect("frame must be rooted");
    let n = f.len();
    // N_i: the worlds not above i
    let below: Vec<Option<Formula>> = (0..n)
        .map(|i| {
            let out: Vec<Formula> = (0..n).filter(|&k| !f.sees(i, k)).map(world_var).collect();
            (!out.is_empty()).then(|| Formula::conj(out))
        })
        .collect();
    let guarded = |i: usize, body: Formula| match &below[i] {
        Some(c) => Formula::implies(c.clone(), body),
        None => body,
    };

    let mut conjuncts = Vec::new();
    for i in 0..n {
        for j in f.immediate_successors(i) {
            conjuncts.push(Formula::implies(guarded(j, world_var(j)), world_var(i)));
        }
    }
    for i in 0..n {
        let lhs = match &below[i] {
            Some(c) => Formula::and(c.clone(), world_var(i)),
            None => world_var(i),
        };
        let rhs = Formula::disj(f.immediate_successors(i).into_iter().map(|j| below[j].clone().expect("nonempty")));
        conjuncts.push(Formula::implies(lhs, rhs));
    }
    Formula::implies(Formula::conj(conjuncts), world_var(root))
}

/// A finite, ordered family of formulas, optionally tagged with the frame
/// each one came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteSetFamily {
    members: Vec<(Formula, Option<Frame>)>,
}

impl CompleteSetFamily {
    /// Jankov formulas of all rooted posets with at most `bound` worlds,
    /// ordered by world count and then canonical form.
    pub fn jankov(bound: usize) -> Self {
        let members = enumerate_rooted_posets(bound).into_iter().map(|f| (jankov_formula(&f), Some(f))).collect();
        CompleteSetFamily { members }
    }

    /// A user-supplied family, in the given order, without duplicates.
    pub fn from_formulas(formulas: impl IntoIterator<Item = Formula>) -> Self {
        let mut members: Vec<(Formula, Option<Frame>)> = Vec::new();
        for f in formulas {
            if !members.iter().any(|(g, _)| *g == f) {
                members.push((f, None));
            }
        }
        CompleteSetFamily { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Formula, Option<&Frame>)> {
        self.members.iter().map(|(f, fr)| (f, fr.as_ref()))
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.members.iter().map(|(f, _)| f)
    }
}

#[derive(Debug, Error)]
pub enum SystemError {
    #[error(transparent)]
    Oracle(#[from] SemanticsError),
    #[error("family formula {0} does not fit mode {1}")]
    Mode(Formula, Mode),
}

/// The base system of `mode` plus `+C` for family members in the logic and
/// `-C` for the rest.
pub fn build_system(
    oracle: &dyn LogicOracle,
    family: &CompleteSetFamily,
    mode: Mode,
) -> Result<DeductiveSystem, SystemError> {
    let mut ds = DeductiveSystem::base(mode);
    for c in family.formulas() {
        let res = if oracle.contains(c)? { ds.add_axiom(c.clone()) } else { ds.add_anti_axiom(c.clone()) };
        res.map_err(|e| SystemError::Mode(e.0, e.1))?;
    }
    Ok(ds)
}

#[derive(Debug, Error)]
pub enum RefutationError {
    #[error("{0} belongs to the logic and cannot be refuted")]
    InLogic(Formula),
    #[error("no rejected family formula was derived from {0} within the search bounds")]
    SearchExhausted(Formula),
    #[error(transparent)]
    Oracle(#[from] SemanticsError),
    #[error(transparent)]
    Prover(#[from] ProverError),
    #[error(transparent)]
    Transform(TransformError),
    #[error("internal error: refutation fails the checker: {0}")]
    Internal(CheckError),
}

/// A checked inference of `-a` with no hypotheses.
///
/// Family members are tried in order. The first rejected member `C` that
/// can be derived from `a` (and whose derivation the symmetry transform can
/// reverse) is used.
pub fn build_refutation(
    ds: &DeductiveSystem,
    a: &Formula,
    oracle: &dyn LogicOracle,
    family: &CompleteSetFamily,
    budget: &ProverBudget,
) -> Result<Inference, RefutationError> {
    if oracle.contains(a)? {
        return Err(RefutationError::InLogic(a.clone()));
    }
    for c in family.formulas() {
        if !ds.is_anti_axiom(c) || oracle.contains(c)? {
            continue;
        }
        let derivation = match derive_from_hypotheses(std::slice::from_ref(a), c, budget) {
            Ok(Some(d)) => d,
            Ok(None) | Err(ProverError::SearchExhausted(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        let positive = convert_ipc(&derivation, ds).map_err(RefutationError::Transform)?;
        let sym = match symmetry_transform(&positive, ds, oracle) {
            Ok(s) => s,
            Err(TransformError::Entangled(_)) => continue,
            Err(TransformError::Oracle(e)) => return Err(e.into()),
            Err(e) => return Err(RefutationError::Transform(e)),
        };
        let out = discharge(sym.inference, Justification::AntiAxiom);
        check_inference(ds, &out).map_err(RefutationError::Internal)?;
        return Ok(out);
    }
    Err(RefutationError::SearchExhausted(a.clone()))
}

/// Drops the hypotheses, justifying former hypothesis steps by `by`
/// (an axiom or anti-axiom of the target system).
fn discharge(mut inf: Inference, by: Justification) -> Inference {
    inf.hypotheses.clear();
    for s in &mut inf.steps {
        if s.justification == Justification::Hypothesis {
            s.justification = by.clone();
        }
    }
    inf
}

#[derive(Debug, Error)]
pub enum PositiveError {
    #[error("{0} is not a classical tautology")]
    NotTautology(Formula),
    #[error("no positive axiom of the system yields ~~p->p")]
    TemplateUnavailable,
    #[error(transparent)]
    Prover(#[from] ProverError),
    #[error("intuitionistic prover failed on {0}")]
    Defect(Formula),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("internal error: proof fails the checker: {0}")]
    Internal(CheckError),
}

/// Positive proofs in a classical system built by [`build_system`].
///
/// Every tautology `a` is proved through `~~a`, which is intuitionistically
/// provable, and the once-derived template `~~p->p`.
#[derive(Debug, Clone)]
pub struct CpcProver {
    ds: DeductiveSystem,
    template: Inference,
    budget: ProverBudget,
}

impl CpcProver {
    pub fn new(ds: DeductiveSystem, budget: ProverBudget) -> Result<Self, PositiveError> {
        let target = Formula::implies(Formula::not(Formula::not(Formula::var("p"))), Formula::var("p"));
        for h in ds.extra_axioms() {
            let Some(d) = derive_from_hypotheses(std::slice::from_ref(h), &target, &budget)? else { continue };
            let template = discharge(convert_ipc(&d, &ds)?, Justification::Axiom);
            check_inference(&ds, &template).map_err(PositiveError::Internal)?;
            return Ok(CpcProver { ds, template, budget });
        }
        Err(PositiveError::TemplateUnavailable)
    }

    pub fn system(&self) -> &DeductiveSystem {
        &self.ds
    }

    /// The checked derivation of `~~p->p`.
    pub fn template(&self) -> &Inference {
        &self.template
    }

    /// A checked proof of `+a` with no hypotheses.
    pub fn prove(&self, a: &Formula) -> Result<Inference, PositiveError> {
        if !classically_valid(a) {
            return Err(PositiveError::NotTautology(a.clone()));
        }
        if let IpcOutcome::Theorem(d) = prove_ipc(a, &self.budget)? {
            return Ok(convert_ipc(&d, &self.ds)?);
        }
        let nn = Formula::not(Formula::not(a.clone()));
        let IpcOutcome::Theorem(d) = prove_ipc(&nn, &self.budget)? else {
            return Err(PositiveError::Defect(nn));
        };
        let mut out = convert_ipc(&d, &self.ds)?;
        let nn_at = out.len();
        let offset = out.len();
        for s in &self.template.steps {
            let just = s.justification.map_premises(|i| i + offset);
            out.push(s.statement.clone(), just);
        }
        let sigma = Substitution::new().with("p", a.clone());
        let inst = out.push(
            Statement::assert(Formula::implies(nn.clone(), a.clone())),
            Justification::Sb(out.len(), sigma),
        );
        out.push(Statement::assert(a.clone()), Justification::Mp(inst, nn_at));
        check_inference(&self.ds, &out).map_err(PositiveError::Internal)?;
        Ok(out)
    }
}

/// One-shot form of [`CpcProver::prove`].
pub fn build_positive_cpc(ds: &DeductiveSystem, a: &Formula) -> Result<Inference, PositiveError> {
    CpcProver::new(ds.clone(), ProverBudget::default())?.prove(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::semantics::{check_adequacy, frame_valid, p_morphic_reduct_exists, Budget, TabularOracle};

    fn f(s: &str) -> Formula {
        parse_formula(s, Mode::Int).unwrap()
    }

    #[test]
    fn small_jankov_formulas() {
        assert_eq!(jankov_formula(&Frame::point(Mode::Int)), f("~p0 -> p0"));
        assert_eq!(
            jankov_formula(&Frame::chain(2)),
            f("((p0 -> p1) -> p0) & ((p0 -> p0) & (p0 & p1 -> bot)) -> p0")
        );
    }

    #[test]
    fn characterization_up_to_three_worlds() {
        let frames = enumerate_rooted_posets(3);
        let budget = Budget::new(8, 4);
        for fr in &frames {
            let x = jankov_formula(fr);
            for g in &frames {
                assert_eq!(frame_valid(g, &x, &budget).unwrap(), !p_morphic_reduct_exists(g, fr));
            }
        }
    }

    fn cpc() -> (DeductiveSystem, TabularOracle, CompleteSetFamily) {
        let oracle = TabularOracle::new(vec![Frame::point(Mode::Int)], Budget::new(8, 4)).unwrap();
        let family = CompleteSetFamily::jankov(3);
        let ds = build_system(&oracle, &family, Mode::Int).unwrap();
        (ds, oracle, family)
    }

    #[test]
    fn cpc_system_is_adequate() {
        let (ds, _, family) = cpc();
        assert_eq!(ds.extra_axioms().len(), family.len() - 1);
        assert_eq!(ds.anti_axioms(), &[f("~p0 -> p0")]);
        assert!(check_adequacy(&Frame::point(Mode::Int), &ds, &Budget::new(8, 4)).unwrap());
    }

    #[test]
    fn refutes_excluded_middle_over_two_chain() {
        let oracle = TabularOracle::new(vec![Frame::chain(2)], Budget::new(8, 4)).unwrap();
        let family = CompleteSetFamily::jankov(3);
        let ds = build_system(&oracle, &family, Mode::Int).unwrap();
        let inf = build_refutation(&ds, &f("p | ~p"), &oracle, &family, &ProverBudget::default()).unwrap();
        assert_eq!(inf.conclusion(), Some(&Statement::reject(f("p | ~p"))));
        assert!(inf.hypotheses.is_empty());
    }

    #[test]
    fn refutation_guard() {
        let (ds, oracle, family) = cpc();
        assert!(matches!(
            build_refutation(&ds, &f("~~p -> p"), &oracle, &family, &ProverBudget::default()),
            Err(RefutationError::InLogic(_))
        ));
    }

    #[test]
    fn classical_proofs() {
        let (ds, _, _) = cpc();
        let prover = CpcProver::new(ds, ProverBudget::default()).unwrap();
        for s in ["p -> p", "p | ~p", "((p -> q) -> p) -> p", "(p -> q) | (q -> p)"] {
            let inf = prover.prove(&f(s)).unwrap();
            assert_eq!(inf.conclusion(), Some(&Statement::assert(f(s))));
        }
        assert!(matches!(prover.prove(&f("p")), Err(PositiveError::NotTautology(_))));
    }
}
