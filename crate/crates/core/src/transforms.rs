//! Transformations between inferences: positive-part extraction, import of
//! intuitionistic Hilbert derivations, and the symmetry transformation that
//! turns a derivation `A1..An |- +B` into a refutation `-B |- -Ai`.

use std::collections::HashMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::formula::{apply_substitution, Formula, Substitution};
use crate::kernel::{check_inference, CheckError, DeductiveSystem, Inference, Justification, Statement};
use crate::prover::{prove_ipc, HilbertDerivation, HilbertRule, IpcOutcome, ProverBudget};
use crate::semantics::{LogicOracle, SemanticsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("inference has no steps")]
    Empty,
    #[error("inference has no positive steps")]
    NoPositiveSteps,
    #[error("conclusion must be an assertion")]
    NegativeConclusion,
    #[error("hypotheses must all be assertions")]
    NegativeHypothesis,
    #[error("input inference is not valid: {0}")]
    Invalid(CheckError),
    #[error("derivation step {0} is malformed")]
    MalformedDerivation(usize),
    #[error("conclusion {0} belongs to the logic, so it cannot be rejected")]
    ConclusionInLogic(Formula),
    #[error("oracle inconsistency: {0}")]
    OracleInconsistent(String),
    #[error(transparent)]
    Oracle(#[from] SemanticsError),
    #[error("both premises of step {0} depend on hypotheses")]
    Entangled(usize),
    #[error("internal error: produced inference fails the checker: {0}")]
    Internal(CheckError),
}

/// Keeps only the assertion steps of `inf`, with premise indices re-pointed.
///
/// Assertions never depend on rejections, so the result is again an
/// inference from the positive hypotheses.
pub fn extract_positive(inf: &Inference) -> Result<Inference, TransformError> {
    if inf.is_empty() {
        return Err(TransformError::Empty);
    }
    let mut out = Inference::new(inf.hypotheses.iter().filter(|h| h.is_positive()).cloned().collect());
    let mut map = vec![0usize; inf.len() + 1];
    for (k, step) in inf.steps.iter().enumerate() {
        if !step.statement.is_positive() {
            continue;
        }
        let just = step.justification.map_premises(|i| map.get(i).copied().unwrap_or(0));
        map[k + 1] = out.push(step.statement.clone(), just);
    }
    if out.is_empty() {
        return Err(TransformError::NoPositiveSteps);
    }
    Ok(out)
}

/// Rewrites an intuitionistic Hilbert derivation as an assertion-only
/// inference of `ds`, step for step.
pub fn convert_ipc(d: &HilbertDerivation, ds: &DeductiveSystem) -> Result<Inference, TransformError> {
    if d.is_empty() {
        return Err(TransformError::Empty);
    }
    d.validate().map_err(|e| TransformError::MalformedDerivation(e.step))?;
    let mut out = Inference::new(d.hypotheses.iter().cloned().map(Statement::assert).collect());
    for s in &d.steps {
        let just = match &s.rule {
            HilbertRule::Axiom(_) => Justification::Axiom,
            HilbertRule::Hypothesis(_) => Justification::Hypothesis,
            HilbertRule::Mp(i, j) => Justification::Mp(*i, *j),
            HilbertRule::Sb(i, sigma) => Justification::Sb(*i, sigma.clone()),
        };
        out.push(Statement::assert(s.formula.clone()), just);
    }
    check_inference(ds, &out).map_err(TransformError::Internal)?;
    Ok(out)
}

/// Result of [`symmetry_transform`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetric {
    /// Inference from `-B` concluding `-Ai`.
    pub inference: Inference,
    /// 1-based index of `Ai` among the input hypotheses.
    pub index: usize,
}

/// Turns `A1..An |- +B` (with `B` outside the logic) into `-B |- -Ai`.
///
/// The derivation is walked backwards from its conclusion. At a modus ponens
/// step `+B` from `+(C -> B)` and `+C`: when `C -> B` was derived without
/// hypotheses it is replayed and modus tollens gives `-C`; when `C` was
/// derived without hypotheses, `+((C -> B) -> B)` is built from it and modus
/// tollens gives `-(C -> B)`. If both premises rest on hypotheses the walk
/// stops with [`TransformError::Entangled`]. Substitution steps
/// become reverse substitution and necessitation becomes reverse
/// necessitation. The walk ends at a hypothesis. The oracle cross-checks
/// every hypothesis-free formula the walk relies on.
pub fn symmetry_transform(
    inf: &Inference,
    ds: &DeductiveSystem,
    oracle: &dyn LogicOracle,
) -> Result<Symmetric, TransformError> {
    if inf.is_empty() {
        return Err(TransformError::Empty);
    }
    if inf.hypotheses.iter().any(|h| !h.is_positive()) {
        return Err(TransformError::NegativeHypothesis);
    }
    if !inf.conclusion().is_some_and(|c| c.is_positive()) {
        return Err(TransformError::NegativeConclusion);
    }
    check_inference(ds, inf).map_err(TransformError::Invalid)?;
    let pos = extract_positive(inf)?;
    let b = pos.conclusion().expect("nonempty").body.clone();
    if oracle.contains(&b)? {
        return Err(TransformError::ConclusionInLogic(b));
    }

    let uses_hyp: Vec<bool> = {
        // uses_hyp[k]: the cone of step k contains a hypothesis step
        let mut v = vec![false; pos.len() + 1];
        for k in 1..=pos.len() {
            let j = &pos.step(k).justification;
            v[k] = matches!(j, Justification::Hypothesis) || j.premises().iter().any(|&i| v[i]);
        }
        v
    };
    if !uses_hyp[pos.len()] {
        return Err(TransformError::OracleInconsistent(format!("{b} is derivable without hypotheses")));
    }

    let mut out = Inference::new(vec![Statement::reject(b.clone())]);
    let mut cur = out.push(Statement::reject(b), Justification::Hypothesis);
    let mut replayed: HashMap<usize, usize> = HashMap::new();
    let mut k = pos.len();

    loop {
        let step = pos.step(k);
        let x = step.statement.body.clone();
        match &step.justification {
            Justification::Hypothesis => {
                let index = inf
                    .hypotheses
                    .iter()
                    .position(|h| h.body == x)
                    .map(|i| i + 1)
                    .expect("checked hypothesis");
                check_inference(ds, &out).map_err(TransformError::Internal)?;
                return Ok(Symmetric { inference: out, index });
            }
            Justification::Mp(j, l) => {
                let imp = pos.step(*j).statement.body.clone();
                let c = pos.step(*l).statement.body.clone();
                if !uses_hyp[*j] {
                    // +(C -> B), -B / -C
                    expect_member(oracle, &imp)?;
                    let ji = replay(&pos, *j, &mut out, &mut replayed);
                    cur = out.push(Statement::reject(c), Justification::Mt(ji, cur));
                    k = *l;
                } else if !uses_hyp[*l] {
                    // +((C -> B) -> B), -B / -(C -> B), with the first premise
                    // obtained from +C and an instance of p -> ((p -> q) -> q)
                    expect_member(oracle, &c)?;
                    let ci = replay(&pos, *l, &mut out, &mut replayed);
                    let schema = append_derivation(&mut out, modus_ponens_schema());
                    let sigma = Substitution::new().with("p", c.clone()).with("q", x.clone());
                    let inst = apply_substitution(&sigma, &out.step(schema).statement.body);
                    let s = out.push(Statement::assert(inst), Justification::Sb(schema, sigma));
                    let back = Formula::implies(imp.clone(), x.clone());
                    let m = out.push(Statement::assert(back), Justification::Mp(s, ci));
                    cur = out.push(Statement::reject(imp), Justification::Mt(m, cur));
                    k = *j;
                } else {
                    return Err(TransformError::Entangled(k));
                }
            }
            Justification::Sb(j, _) => {
                let general = pos.step(*j).statement.body.clone();
                cur = out.push(Statement::reject(general), Justification::Rs(cur));
                k = *j;
            }
            Justification::Ns(j) => {
                let inner = pos.step(*j).statement.body.clone();
                cur = out.push(Statement::reject(inner), Justification::Rn(cur));
                k = *j;
            }
            Justification::Axiom => {
                return Err(TransformError::OracleInconsistent(format!("walk reached the axiom {x}")));
            }
            other => unreachable!("positive part has no {:?} steps", other.rule()),
        }
    }
}

fn expect_member(oracle: &dyn LogicOracle, a: &Formula) -> Result<(), TransformError> {
    if oracle.contains(a)? {
        Ok(())
    } else {
        Err(TransformError::OracleInconsistent(format!(
            "{a} is derivable without hypotheses but rejected by the oracle"
        )))
    }
}

/// A hypothesis-free derivation of `p -> ((p -> q) -> q)`.
fn modus_ponens_schema() -> &'static HilbertDerivation {
    static CELL: OnceLock<HilbertDerivation> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = Formula::implies(
            Formula::var("p"),
            Formula::implies(Formula::implies(Formula::var("p"), Formula::var("q")), Formula::var("q")),
        );
        match prove_ipc(&f, &ProverBudget::default()) {
            Ok(IpcOutcome::Theorem(d)) => d,
            other => panic!("prover failed on an intuitionistic theorem: {other:?}"),
        }
    })
}

/// Appends a hypothesis-free Hilbert derivation and returns the index of its
/// conclusion.
fn append_derivation(out: &mut Inference, d: &HilbertDerivation) -> usize {
    let offset = out.len();
    for s in &d.steps {
        let just = match &s.rule {
            HilbertRule::Axiom(_) => Justification::Axiom,
            HilbertRule::Hypothesis(_) => unreachable!("closed derivation"),
            HilbertRule::Mp(i, j) => Justification::Mp(i + offset, j + offset),
            HilbertRule::Sb(i, sigma) => Justification::Sb(i + offset, sigma.clone()),
        };
        out.push(Statement::assert(s.formula.clone()), just);
    }
    out.len()
}

/// Copies the cone of step `j` of `src` into `out`, reusing earlier copies.
fn replay(src: &Inference, j: usize, out: &mut Inference, done: &mut HashMap<usize, usize>) -> usize {
    let cone = src.cone(j);
    for i in 1..=j {
        if !cone[i] || done.contains_key(&i) {
            continue;
        }
        let step = src.step(i);
        let just = step.justification.map_premises(|p| done[&p]);
        let at = out.push(step.statement.clone(), just);
        done.insert(i, at);
    }
    done[&j]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, Mode};
    use crate::kernel::Sign;
    use crate::prover::{derive_from_hypotheses, ProverBudget};
    use crate::semantics::{Budget, Frame, TabularOracle};

    fn f(s: &str) -> Formula {
        parse_formula(s, Mode::Int).unwrap()
    }

    #[test]
    fn extraction_drops_negative_steps() {
        let ds = DeductiveSystem::new(Mode::Int, vec![], vec![f("p")]).unwrap();
        let mut inf = Inference::new(vec![Statement::assert(f("q"))]);
        inf.push(Statement::reject(f("p")), Justification::AntiAxiom);
        inf.push(Statement::assert(f("q")), Justification::Hypothesis);
        inf.push(Statement::assert(f("p -> (q -> p)")), Justification::Axiom);
        let s = Substitution::new().with("p", f("q")).with("q", f("r"));
        inf.push(Statement::assert(f("q -> (r -> q)")), Justification::Sb(3, s));
        inf.push(Statement::assert(f("r -> q")), Justification::Mp(4, 2));
        check_inference(&ds, &inf).unwrap();
        let pos = extract_positive(&inf).unwrap();
        assert_eq!(pos.len(), 4);
        assert!(pos.is_sign_pure(Sign::Assert));
        assert_eq!(check_inference(&ds, &pos).unwrap(), Statement::assert(f("r -> q")));
    }

    #[test]
    fn symmetry_of_excluded_middle_derivation() {
        let ds = DeductiveSystem::base(Mode::Int);
        let d = derive_from_hypotheses(&[f("~~p -> p")], &f("q | ~q"), &ProverBudget::default())
            .unwrap()
            .unwrap();
        let inf = convert_ipc(&d, &ds).unwrap();
        let chain2 = TabularOracle::new(vec![Frame::chain(2)], Budget::default()).unwrap();
        let sym = symmetry_transform(&inf, &ds, &chain2).unwrap();
        assert_eq!(sym.index, 1);
        assert_eq!(sym.inference.hypotheses, vec![Statement::reject(f("q | ~q"))]);
        let concl = check_inference(&ds, &sym.inference).unwrap();
        assert_eq!(concl, Statement::reject(f("~~p -> p")));
    }

    #[test]
    fn symmetry_rejects_logic_members() {
        let ds = DeductiveSystem::base(Mode::Int);
        let mut inf = Inference::new(vec![Statement::assert(f("p"))]);
        inf.push(Statement::assert(f("p")), Justification::Hypothesis);
        let cpc = |a: &Formula| crate::prover::classically_valid(a);
        assert!(symmetry_transform(&inf, &ds, &cpc).is_ok());
        let everything = |_: &Formula| true;
        assert!(matches!(symmetry_transform(&inf, &ds, &everything), Err(TransformError::ConclusionInLogic(_))));
    }
}
