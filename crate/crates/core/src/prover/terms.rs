//! Typed combinator terms over the intuitionistic axiom basis.
//!
//! Sequent proofs are realized as lambda terms whose constants are axiom
//! instances (`K`, `S`, pairing, projections, injections, case, abort).
//! Bracket abstraction then removes every lambda, leaving a tree of axiom
//! instances and applications, which is a Hilbert derivation.

use std::collections::HashMap;
use std::rc::Rc;

use crate::formula::{apply_substitution, Formula, Substitution};
use crate::kernel::ipc_axioms;

use super::{HilbertDerivation, HilbertRule};

pub(crate) type VarId = u32;

#[derive(Debug)]
pub(crate) enum Node {
    Var(VarId),
    /// Hypothesis, 0-based.
    Hyp(usize),
    /// Instance of axiom `k` (0-based) under a substitution.
    Axiom(usize, Substitution),
    /// Substitution instance of a closed term.
    Sb(Term, Substitution),
    App(Term, Term),
    Lam(VarId, Term),
}

#[derive(Debug)]
pub(crate) struct TermData {
    pub node: Node,
    pub ty: Formula,
    /// Free variables, sorted.
    pub fv: Vec<VarId>,
}

pub(crate) type Term = Rc<TermData>;

fn merge(a: &[VarId], b: &[VarId]) -> Vec<VarId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(_), Some(&y)) => {
                j += 1;
                y
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

pub(crate) fn var(x: VarId, ty: Formula) -> Term {
    Rc::new(TermData { node: Node::Var(x), ty, fv: vec![x] })
}

pub(crate) fn hyp(i: usize, ty: Formula) -> Term {
    Rc::new(TermData { node: Node::Hyp(i), ty, fv: vec![] })
}

pub(crate) fn sb(t: Term, sigma: Substitution) -> Term {
    assert!(t.fv.is_empty(), "substitution applied to an open term");
    let ty = apply_substitution(&sigma, &t.ty);
    Rc::new(TermData { node: Node::Sb(t, sigma), ty, fv: vec![] })
}

pub(crate) fn app(f: Term, x: Term) -> Term {
    let ty = match f.ty.as_implication() {
        Some((a, b)) if *a == x.ty => b.clone(),
        _ => panic!("ill-typed application: {} to {}", f.ty, x.ty),
    };
    let fv = merge(&f.fv, &x.fv);
    Rc::new(TermData { node: Node::App(f, x), ty, fv })
}

pub(crate) fn app2(f: Term, x: Term, y: Term) -> Term {
    app(app(f, x), y)
}

pub(crate) fn lam(x: VarId, dom: Formula, body: Term) -> Term {
    let ty = Formula::implies(dom, body.ty.clone());
    let fv = body.fv.iter().copied().filter(|&v| v != x).collect();
    Rc::new(TermData { node: Node::Lam(x, body), ty, fv })
}

fn axiom(k: usize, bindings: &[(&str, &Formula)]) -> Term {
    let mut sigma = Substitution::new();
    for (v, f) in bindings {
        sigma.insert(v, (*f).clone());
    }
    let ty = apply_substitution(&sigma, &ipc_axioms()[k]);
    Rc::new(TermData { node: Node::Axiom(k, sigma), ty, fv: vec![] })
}

/// `a -> (b -> a)`
pub(crate) fn k(a: &Formula, b: &Formula) -> Term {
    axiom(0, &[("p", a), ("q", b)])
}

/// `(a -> (b -> c)) -> ((a -> b) -> (a -> c))`
pub(crate) fn s(a: &Formula, b: &Formula, c: &Formula) -> Term {
    axiom(1, &[("p", a), ("q", b), ("r", c)])
}

pub(crate) fn fst(a: &Formula, b: &Formula) -> Term {
    axiom(2, &[("p", a), ("q", b)])
}

pub(crate) fn snd(a: &Formula, b: &Formula) -> Term {
    axiom(3, &[("p", a), ("q", b)])
}

pub(crate) fn pair(a: &Formula, b: &Formula) -> Term {
    axiom(4, &[("p", a), ("q", b)])
}

pub(crate) fn inl(a: &Formula, b: &Formula) -> Term {
    axiom(5, &[("p", a), ("q", b)])
}

pub(crate) fn inr(a: &Formula, b: &Formula) -> Term {
    axiom(6, &[("p", a), ("q", b)])
}

/// `(a -> c) -> ((b -> c) -> (a | b -> c))`
pub(crate) fn case(a: &Formula, b: &Formula, c: &Formula) -> Term {
    axiom(7, &[("p", a), ("q", b), ("r", c)])
}

/// `bot -> c`
pub(crate) fn abort(c: &Formula) -> Term {
    axiom(9, &[("p", c)])
}

/// `a -> a` as `S K K`.
fn identity(a: &Formula) -> Term {
    let aa = Formula::implies(a.clone(), a.clone());
    app2(s(a, &aa, a), k(a, &aa), k(a, a))
}

/// Removes every lambda from `t`.
pub(crate) fn eliminate_lambdas(t: &Term) -> Term {
    let mut memo = HashMap::new();
    elim(t, &mut memo)
}

fn elim(t: &Term, memo: &mut HashMap<*const TermData, Term>) -> Term {
    if let Some(hit) = memo.get(&Rc::as_ptr(t)) {
        return hit.clone();
    }
    let out = match &t.node {
        Node::Var(_) | Node::Hyp(_) | Node::Axiom(..) | Node::Sb(..) => t.clone(),
        Node::App(f, x) => {
            let (f2, x2) = (elim(f, memo), elim(x, memo));
            if Rc::ptr_eq(&f2, f) && Rc::ptr_eq(&x2, x) {
                t.clone()
            } else {
                app(f2, x2)
            }
        }
        Node::Lam(x, body) => {
            let dom = t.ty.as_implication().expect("lambda type").0.clone();
            let body = elim(body, memo);
            abstract_var(*x, &dom, &body, &mut HashMap::new())
        }
    };
    memo.insert(Rc::as_ptr(t), out.clone());
    out
}

/// Bracket abstraction of a lambda-free term: a term of type `dom -> ty(t)`.
fn abstract_var(x: VarId, dom: &Formula, t: &Term, memo: &mut HashMap<*const TermData, Term>) -> Term {
    if let Some(hit) = memo.get(&Rc::as_ptr(t)) {
        return hit.clone();
    }
    let out = if t.fv.binary_search(&x).is_err() {
        app(k(&t.ty, dom), t.clone())
    } else {
        match &t.node {
            Node::Var(_) => identity(dom),
            Node::App(f, a) => {
                if matches!(a.node, Node::Var(y) if y == x) && f.fv.binary_search(&x).is_err() {
                    f.clone()
                } else {
                    let (from, to) = f.ty.as_implication().expect("function type");
                    let (from, to) = (from.clone(), to.clone());
                    let lf = abstract_var(x, dom, f, memo);
                    let la = abstract_var(x, dom, a, memo);
                    app2(s(dom, &from, &to), lf, la)
                }
            }
            Node::Lam(..) => unreachable!("lambdas are eliminated inside-out"),
            Node::Hyp(_) | Node::Axiom(..) | Node::Sb(..) => unreachable!("closed terms have no free variables"),
        }
    };
    memo.insert(Rc::as_ptr(t), out.clone());
    out
}

/// Flattens a closed, lambda-free term into a Hilbert derivation, sharing
/// repeated formulas.
pub(crate) fn emit(t: &Term, hypotheses: Vec<Formula>) -> HilbertDerivation {
    let mut d = HilbertDerivation { hypotheses, steps: Vec::new() };
    let mut memo: HashMap<Formula, usize> = HashMap::new();
    emit_into(t, &mut d, &mut memo);
    d
}

fn push(d: &mut HilbertDerivation, memo: &mut HashMap<Formula, usize>, formula: Formula, rule: HilbertRule) -> usize {
    d.steps.push(super::HilbertStep { formula: formula.clone(), rule });
    let idx = d.steps.len();
    memo.entry(formula).or_insert(idx);
    idx
}

fn emit_into(t: &Term, d: &mut HilbertDerivation, memo: &mut HashMap<Formula, usize>) -> usize {
    if let Some(&i) = memo.get(&t.ty) {
        return i;
    }
    match &t.node {
        Node::Var(_) | Node::Lam(..) => panic!("emit expects a closed lambda-free term"),
        Node::Hyp(i) => push(d, memo, t.ty.clone(), HilbertRule::Hypothesis(i + 1)),
        Node::Axiom(k, sigma) => {
            let schema = &ipc_axioms()[*k];
            let base = match memo.get(schema) {
                Some(&i) => i,
                None => push(d, memo, schema.clone(), HilbertRule::Axiom(k + 1)),
            };
            let sigma = sigma.without_identities();
            if t.ty == *schema {
                base
            } else {
                push(d, memo, t.ty.clone(), HilbertRule::Sb(base, sigma))
            }
        }
        Node::Sb(inner, sigma) => {
            let base = emit_into(inner, d, memo);
            push(d, memo, t.ty.clone(), HilbertRule::Sb(base, sigma.without_identities()))
        }
        Node::App(f, x) => {
            let fi = emit_into(f, d, memo);
            let xi = emit_into(x, d, memo);
            push(d, memo, t.ty.clone(), HilbertRule::Mp(fi, xi))
        }
    }
}
