//! Seeded generators for formulas and checker-valid inferences.
//!
//! Used by the property tests and the acceptance harness. Every inference
//! produced here is built by forward rule application, so it passes
//! [`check_inference`](crate::kernel::check_inference) by construction.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::formula::{apply_substitution, match_instance, Formula, Mode, Substitution};
use crate::kernel::{ipc_axioms, DeductiveSystem, Inference, Justification, Statement};
use crate::semantics::{LogicOracle, SemanticsError};

/// A random formula with exactly `connectives` connectives over `vars`.
///
/// `bot` is one of the leaves; box only appears in K4 mode.
pub fn random_formula(rng: &mut impl Rng, vars: &[&str], connectives: usize, mode: Mode) -> Formula {
    if connectives == 0 {
        return match rng.gen_range(0..=vars.len()) {
            0 if rng.gen_bool(0.5) => Formula::Bottom,
            i => Formula::var(vars[i.saturating_sub(1).min(vars.len() - 1)]),
        };
    }
    let kinds = if mode == Mode::K4 { 6 } else { 5 };
    match rng.gen_range(0..kinds) {
        0 => Formula::not(random_formula(rng, vars, connectives - 1, mode)),
        5 => Formula::boxed(random_formula(rng, vars, connectives - 1, mode)),
        k => {
            let left = rng.gen_range(0..connectives);
            let a = random_formula(rng, vars, left, mode);
            let b = random_formula(rng, vars, connectives - 1 - left, mode);
            match k {
                1 => Formula::and(a, b),
                2 => Formula::or(a, b),
                _ => Formula::implies(a, b),
            }
        }
    }
}

/// Every formula over `vars` and `bot` with at most `max_connectives`
/// connectives from `~ & | ->`, counting `~` as one connective.
pub fn enumerate_formulas(vars: &[&str], max_connectives: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = Vec::new();
    let mut leaves = vec![Formula::Bottom];
    leaves.extend(vars.iter().map(|v| Formula::var(v)));
    by_size.push(leaves);
    for n in 1..=max_connectives {
        let mut level: Vec<Formula> = by_size[n - 1].iter().cloned().map(Formula::not).collect();
        for left in 0..n {
            let right = n - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    level.push(Formula::and(a.clone(), b.clone()));
                    level.push(Formula::or(a.clone(), b.clone()));
                    if !matches!(b, Formula::Bottom) {
                        level.push(Formula::implies(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size.push(level);
    }
    by_size.concat()
}

/// Generator of random inferences in a fixed system.
pub struct InferenceFuzzer<'a> {
    ds: &'a DeductiveSystem,
    rng: StdRng,
    vars: Vec<&'static str>,
    max_size: usize,
}

const VARS: [&str; 3] = ["p", "q", "r"];

impl<'a> InferenceFuzzer<'a> {
    pub fn new(ds: &'a DeductiveSystem, seed: u64) -> Self {
        InferenceFuzzer { ds, rng: StdRng::seed_from_u64(seed), vars: VARS.to_vec(), max_size: 40 }
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    fn small_formula(&mut self) -> Formula {
        let n = self.rng.gen_range(0..=2);
        random_formula(&mut self.rng, &self.vars, n, self.ds.mode())
    }

    fn random_substitution(&mut self, f: &Formula) -> Substitution {
        let mut s = Substitution::new();
        for v in f.vars() {
            if self.rng.gen_bool(0.6) {
                let g = self.small_formula();
                s.insert(&v, g);
            }
        }
        s
    }

    /// Replaces every occurrence of a random subformula of `f` by a fresh
    /// variable, so that `f` is an instance of the result.
    fn generalize(&mut self, f: &Formula) -> Formula {
        let subs = f.subformulas();
        let target = subs.choose(&mut self.rng).expect("nonempty").clone();
        let fresh = (0..).map(|i| format!("x{i}")).find(|v| !f.vars().iter().any(|w| &**w == v)).unwrap();
        replace(f, &target, &Formula::var(&fresh))
    }

    /// A random inference from `hypotheses` with `len` steps, mixing
    /// assertions and rejections.
    pub fn inference(&mut self, hypotheses: Vec<Statement>, len: usize) -> Inference {
        let mut inf = Inference::new(hypotheses);
        let pos_axioms: Vec<Formula> = self.ds.positive_axioms().cloned().collect();
        let anti: Vec<Formula> = self.ds.anti_axioms().to_vec();
        let mut guard = 0;
        while inf.len() < len && guard < len * 50 {
            guard += 1;
            let (pos, neg) = split(&inf);
            let roll = self.rng.gen_range(0..100);
            let step = match roll {
                0..=9 => Some((Statement::assert(pos_axioms.choose(&mut self.rng).unwrap().clone()), Justification::Axiom)),
                10..=14 if !anti.is_empty() => {
                    Some((Statement::reject(anti.choose(&mut self.rng).unwrap().clone()), Justification::AntiAxiom))
                }
                15..=19 if !inf.hypotheses.is_empty() => {
                    let h = inf.hypotheses.choose(&mut self.rng).unwrap().clone();
                    Some((h, Justification::Hypothesis))
                }
                20..=39 if !pos.is_empty() => {
                    let i = *pos.choose(&mut self.rng).unwrap();
                    let s = self.random_substitution(&inf.step(i).statement.body);
                    let body = apply_substitution(&s, &inf.step(i).statement.body);
                    Some((Statement::assert(body), Justification::Sb(i, s)))
                }
                40..=59 => self.modus_ponens(&inf, &pos),
                60..=74 => self.modus_tollens(&inf, &pos, &neg),
                75..=89 if !neg.is_empty() => {
                    let i = *neg.choose(&mut self.rng).unwrap();
                    let g = self.generalize(&inf.step(i).statement.body);
                    Some((Statement::reject(g), Justification::Rs(i)))
                }
                90..=94 if self.ds.mode() == Mode::K4 && !pos.is_empty() => {
                    let i = *pos.choose(&mut self.rng).unwrap();
                    Some((Statement::assert(Formula::boxed(inf.step(i).statement.body.clone())), Justification::Ns(i)))
                }
                95..=99 if self.ds.mode() == Mode::K4 => {
                    let boxed: Vec<usize> =
                        neg.iter().copied().filter(|&i| matches!(inf.step(i).statement.body, Formula::Box(_))).collect();
                    boxed.choose(&mut self.rng).map(|&i| {
                        let Formula::Box(a) = &inf.step(i).statement.body else { unreachable!() };
                        (Statement::reject((**a).clone()), Justification::Rn(i))
                    })
                }
                _ => None,
            };
            if let Some((st, just)) = step {
                if st.body.size() <= self.max_size {
                    inf.push(st, just);
                }
            }
        }
        inf
    }

    /// Modus ponens, instantiating an earlier assertion to fit the antecedent
    /// of an earlier implication when needed.
    fn modus_ponens(&mut self, inf: &Inference, pos: &[usize]) -> Option<(Statement, Justification)> {
        let imps: Vec<usize> = pos.iter().copied().filter(|&i| inf.step(i).statement.body.as_implication().is_some()).collect();
        let &i = imps.choose(&mut self.rng)?;
        let (ante, cons) = inf.step(i).statement.body.as_implication().unwrap();
        let j = pos.iter().copied().find(|&j| inf.step(j).statement.body == *ante)?;
        Some((Statement::assert(cons.clone()), Justification::Mp(i, j)))
    }

    fn modus_tollens(&mut self, inf: &Inference, pos: &[usize], neg: &[usize]) -> Option<(Statement, Justification)> {
        let &j = neg.choose(&mut self.rng)?;
        let target = &inf.step(j).statement.body;
        let i = pos.iter().copied().find(|&i| {
            inf.step(i).statement.body.as_implication().is_some_and(|(_, b)| b == target)
        })?;
        let (a, _) = inf.step(i).statement.body.as_implication().unwrap();
        Some((Statement::reject(a.clone()), Justification::Mt(i, j)))
    }

    /// Like [`inference`](Self::inference), but adds the steps needed to make
    /// modus ponens and modus tollens fire: an instance of an earlier
    /// assertion matching an antecedent, or an instance of an implication
    /// whose consequent matches an earlier rejection.
    pub fn rich_inference(&mut self, hypotheses: Vec<Statement>, len: usize) -> Inference {
        let mut inf = self.inference(hypotheses, len / 2);
        let mut guard = 0;
        while inf.len() < len && guard < len * 20 {
            guard += 1;
            let (pos, neg) = split(&inf);
            if pos.is_empty() {
                let ax = ipc_axioms()[0].clone();
                inf.push(Statement::assert(ax), Justification::Axiom);
                continue;
            }
            if self.rng.gen_bool(0.5) {
                // bring some assertion to the antecedent of an implication
                let imps: Vec<usize> =
                    pos.iter().copied().filter(|&i| inf.step(i).statement.body.as_implication().is_some()).collect();
                let (Some(&i), Some(&j)) = (imps.choose(&mut self.rng), pos.choose(&mut self.rng)) else { continue };
                let ante = inf.step(i).statement.body.as_implication().unwrap().0.clone();
                let Some(s) = match_instance(&inf.step(j).statement.body, &ante) else { continue };
                let jj = if s.without_identities().is_empty() {
                    j
                } else {
                    inf.push(Statement::assert(ante.clone()), Justification::Sb(j, s))
                };
                let cons = inf.step(i).statement.body.as_implication().unwrap().1.clone();
                if cons.size() <= self.max_size {
                    inf.push(Statement::assert(cons), Justification::Mp(i, jj));
                }
            } else {
                let (Some(&j), Some(&i)) = (neg.choose(&mut self.rng), pos.choose(&mut self.rng)) else { continue };
                let Some((_, cons)) = inf.step(i).statement.body.as_implication() else { continue };
                let target = inf.step(j).statement.body.clone();
                let Some(s) = match_instance(cons, &target) else { continue };
                let inst = apply_substitution(&s, &inf.step(i).statement.body);
                if inst.size() > self.max_size {
                    continue;
                }
                let ii = inf.push(Statement::assert(inst.clone()), Justification::Sb(i, s));
                let ante = inst.as_implication().unwrap().0.clone();
                inf.push(Statement::reject(ante), Justification::Mt(ii, j));
            }
        }
        inf
    }

    /// A random inference from positive hypotheses whose conclusion is an
    /// assertion.
    pub fn mixed_with_positive_conclusion(&mut self, n_hyps: usize, len: usize) -> Inference {
        let hyps: Vec<Statement> = (0..n_hyps).map(|_| Statement::assert(self.small_formula())).collect();
        let mut inf = self.rich_inference(hyps, len);
        let (pos, _) = split(&inf);
        match pos.choose(&mut self.rng) {
            Some(&i) => {
                let body = inf.step(i).statement.body.clone();
                inf.push(Statement::assert(body), Justification::Sb(i, Substitution::new()));
            }
            None => {
                inf.push(Statement::assert(ipc_axioms()[0].clone()), Justification::Axiom);
            }
        }
        inf
    }

    /// A symmetry-theorem instance: positive hypotheses `A1..An` outside the
    /// logic and a derivation of some `+B` from them with `B` outside the
    /// logic. Each move keeps the current formula outside the logic.
    pub fn symmetry_instance(
        &mut self,
        oracle: &dyn LogicOracle,
        n_hyps: usize,
        moves: usize,
    ) -> Result<Inference, SemanticsError> {
        let mode = self.ds.mode();
        let mut hyps = Vec::new();
        while hyps.len() < n_hyps {
            let n = self.rng.gen_range(1..=3);
            let f = random_formula(&mut self.rng, &self.vars, n, mode);
            if !oracle.contains(&f)? {
                hyps.push(Statement::assert(f));
            }
        }
        let mut inf = Inference::new(hyps.clone());
        // distractors from the other hypotheses
        for h in &hyps {
            if self.rng.gen_bool(0.5) {
                let i = inf.push(h.clone(), Justification::Hypothesis);
                let s = self.random_substitution(&h.body);
                inf.push(Statement::assert(apply_substitution(&s, &h.body)), Justification::Sb(i, s));
            }
        }
        let h = hyps.choose(&mut self.rng).unwrap().clone();
        let mut cur = inf.push(h, Justification::Hypothesis);
        for _ in 0..moves {
            let x = inf.step(cur).statement.body.clone();
            let roll = self.rng.gen_range(0..if mode == Mode::K4 { 6 } else { 5 });
            let next = match roll {
                0 => {
                    let s = self.random_substitution(&x);
                    let y = apply_substitution(&s, &x);
                    (y.size() <= self.max_size).then(|| (Statement::assert(y), Justification::Sb(cur, s)))
                }
                1 => {
                    // x, p -> (q -> p) / y -> x
                    let y = self.small_formula();
                    let k = self.axiom_instance(&mut inf, 0, &[("p", x.clone()), ("q", y.clone())]);
                    Some((Statement::assert(Formula::implies(y, x)), Justification::Mp(k, cur)))
                }
                2 => {
                    // x, p -> (p | q) / x | y
                    let y = self.small_formula();
                    let k = self.axiom_instance(&mut inf, 5, &[("p", x.clone()), ("q", y.clone())]);
                    Some((Statement::assert(Formula::or(x, y)), Justification::Mp(k, cur)))
                }
                3 => {
                    // from x derive t -> x, then use a theorem t
                    let t_ax = self.rng.gen_range(0..ipc_axioms().len());
                    let t = ipc_axioms()[t_ax].clone();
                    let ti = inf.push(Statement::assert(t.clone()), Justification::Axiom);
                    let k = self.axiom_instance(&mut inf, 0, &[("p", x.clone()), ("q", t.clone())]);
                    let w = inf.push(Statement::assert(Formula::implies(t, x.clone())), Justification::Mp(k, cur));
                    Some((Statement::assert(x), Justification::Mp(w, ti)))
                }
                4 => match &x {
                    Formula::And(a, b) => {
                        let (ax, part) = if self.rng.gen_bool(0.5) { (2, a) } else { (3, b) };
                        let k = self.axiom_instance(&mut inf, ax, &[("p", (**a).clone()), ("q", (**b).clone())]);
                        Some((Statement::assert((**part).clone()), Justification::Mp(k, cur)))
                    }
                    _ => None,
                },
                _ => Some((Statement::assert(Formula::boxed(x)), Justification::Ns(cur))),
            };
            if let Some((st, just)) = next {
                if oracle.contains(&st.body)? {
                    continue;
                }
                cur = inf.push(st, just);
            }
        }
        if cur != inf.len() {
            // a rejected move left helper steps after the current formula
            let body = inf.step(cur).statement.body.clone();
            inf.push(Statement::assert(body), Justification::Sb(cur, Substitution::new()));
        }
        Ok(inf)
    }

    fn axiom_instance(&mut self, inf: &mut Inference, k: usize, bindings: &[(&str, Formula)]) -> usize {
        let ax = ipc_axioms()[k].clone();
        let a = inf.push(Statement::assert(ax.clone()), Justification::Axiom);
        let mut s = Substitution::new();
        for (v, f) in bindings {
            s.insert(v, f.clone());
        }
        let body = apply_substitution(&s, &ax);
        inf.push(Statement::assert(body), Justification::Sb(a, s))
    }
}

fn split(inf: &Inference) -> (Vec<usize>, Vec<usize>) {
    (1..=inf.len()).partition(|&i| inf.step(i).statement.is_positive())
}

fn replace(f: &Formula, target: &Formula, with: &Formula) -> Formula {
    if f == target {
        return with.clone();
    }
    match f {
        Formula::Var(_) | Formula::Bottom => f.clone(),
        Formula::And(a, b) => Formula::and(replace(a, target, with), replace(b, target, with)),
        Formula::Or(a, b) => Formula::or(replace(a, target, with), replace(b, target, with)),
        Formula::Implies(a, b) => Formula::implies(replace(a, target, with), replace(b, target, with)),
        Formula::Box(a) => Formula::boxed(replace(a, target, with)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check_inference;

    #[test]
    fn enumeration_counts() {
        // leaves: bot, p, q
        assert_eq!(enumerate_formulas(&["p", "q"], 0).len(), 3);
        // 3 negations, 9 conjunctions, 9 disjunctions, 6 implications
        assert_eq!(enumerate_formulas(&["p", "q"], 1).len(), 3 + 27);
    }

    #[test]
    fn generated_inferences_check() {
        let ds = DeductiveSystem::new(Mode::Int, vec![], vec![Formula::var("p")]).unwrap();
        let mut fz = InferenceFuzzer::new(&ds, 7);
        for _ in 0..50 {
            let inf = fz.rich_inference(vec![], 30);
            check_inference(&ds, &inf).unwrap();
        }
    }
}
