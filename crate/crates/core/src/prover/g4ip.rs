//! Contraction-free sequent search (G4ip) producing proof terms.
//!
//! Each context entry carries the term that proves it, so left rules never
//! need let-bindings: decomposing `a & b` proved by `z` yields `a` proved by
//! `fst z` and `b` proved by `snd z`. Boxed formulas behave as atoms.

use std::collections::HashSet;

use crate::formula::Formula;

use super::terms::{self, Term, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

type Ctx = Vec<(Formula, Term)>;

pub(crate) struct Search {
    nodes: usize,
    max_nodes: usize,
    next_var: VarId,
    failed: HashSet<(Vec<Formula>, Formula)>,
}

fn is_atom(f: &Formula) -> bool {
    matches!(f, Formula::Var(_) | Formula::Box(_))
}

fn add(ctx: &mut Ctx, f: Formula, t: Term) {
    if !ctx.iter().any(|(g, _)| *g == f) {
        ctx.push((f, t));
    }
}

fn lookup<'a>(ctx: &'a Ctx, f: &Formula) -> Option<&'a Term> {
    ctx.iter().find(|(g, _)| g == f).map(|(_, t)| t)
}

impl Search {
    pub(crate) fn new(max_nodes: usize) -> Self {
        Search { nodes: 0, max_nodes, next_var: 0, failed: HashSet::new() }
    }

    /// Resets the node counter, keeping the failure cache.
    pub(crate) fn refuel(&mut self) {
        self.nodes = 0;
    }

    fn fresh(&mut self) -> VarId {
        self.next_var += 1;
        self.next_var
    }

    fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    pub(crate) fn prove(&mut self, ctx: Ctx, goal: &Formula) -> Result<Option<Term>, Exhausted> {
        self.tick()?;
        let mut ctx = ctx;
        if let Some(t) = self.saturate(&mut ctx, goal) {
            return Ok(Some(t));
        }
        if let Some(t) = lookup(&ctx, goal) {
            return Ok(Some(t.clone()));
        }

        // invertible right rules
        match goal {
            Formula::Implies(a, b) => {
                let x = self.fresh();
                let mut inner = ctx;
                add(&mut inner, (**a).clone(), terms::var(x, (**a).clone()));
                return Ok(self.prove(inner, b)?.map(|m| terms::lam(x, (**a).clone(), m)));
            }
            Formula::And(a, b) => {
                let Some(m) = self.prove(ctx.clone(), a)? else { return Ok(None) };
                let Some(n) = self.prove(ctx, b)? else { return Ok(None) };
                return Ok(Some(terms::app2(terms::pair(a, b), m, n)));
            }
            _ => {}
        }

        // disjunction on the left
        if let Some(i) = ctx.iter().position(|(f, _)| matches!(f, Formula::Or(..))) {
            let (f, z) = ctx.remove(i);
            let Formula::Or(a, b) = &f else { unreachable!() };
            let (x, y) = (self.fresh(), self.fresh());
            let mut left = ctx.clone();
            add(&mut left, (**a).clone(), terms::var(x, (**a).clone()));
            let Some(m1) = self.prove(left, goal)? else { return Ok(None) };
            let mut right = ctx;
            add(&mut right, (**b).clone(), terms::var(y, (**b).clone()));
            let Some(m2) = self.prove(right, goal)? else { return Ok(None) };
            let c = terms::case(a, b, goal);
            let t = terms::app(
                terms::app2(c, terms::lam(x, (**a).clone(), m1), terms::lam(y, (**b).clone(), m2)),
                z,
            );
            return Ok(Some(t));
        }

        let mut key: Vec<Formula> = ctx.iter().map(|(f, _)| f.clone()).collect();
        key.sort();
        let key = (key, goal.clone());
        if self.failed.contains(&key) {
            return Ok(None);
        }

        if let Formula::Or(a, b) = goal {
            if let Some(m) = self.prove(ctx.clone(), a)? {
                return Ok(Some(terms::app(terms::inl(a, b), m)));
            }
            if let Some(m) = self.prove(ctx.clone(), b)? {
                return Ok(Some(terms::app(terms::inr(a, b), m)));
            }
        }

        for i in 0..ctx.len() {
            let Formula::Implies(ab, d) = &ctx[i].0 else { continue };
            let Formula::Implies(a, b) = &**ab else { continue };
            let f = ctx[i].1.clone();
            let mut rest = ctx.clone();
            rest.remove(i);

            // h = \y:b. f (\x:a. y) : b -> d
            let (x, y) = (self.fresh(), self.fresh());
            let inner = terms::lam(x, (**a).clone(), terms::var(y, (**b).clone()));
            let h = terms::lam(y, (**b).clone(), terms::app(f.clone(), inner));
            let mut first = rest.clone();
            add(&mut first, Formula::implies((**b).clone(), (**d).clone()), h);
            let Some(m) = self.prove(first, ab)? else { continue };
            let mut second = rest;
            add(&mut second, (**d).clone(), terms::app(f, m));
            if let Some(n) = self.prove(second, goal)? {
                return Ok(Some(n));
            }
        }

        self.failed.insert(key);
        Ok(None)
    }

    /// Applies the invertible left rules other than disjunction until none
    /// applies. Returns a proof outright when `bot` shows up.
    fn saturate(&mut self, ctx: &mut Ctx, goal: &Formula) -> Option<Term> {
        let mut i = 0;
        while i < ctx.len() {
            let f = ctx[i].0.clone();
            match &f {
                Formula::Bottom => return Some(terms::app(terms::abort(goal), ctx[i].1.clone())),
                Formula::And(a, b) => {
                    let (_, z) = ctx.remove(i);
                    add(ctx, (**a).clone(), terms::app(terms::fst(a, b), z.clone()));
                    add(ctx, (**b).clone(), terms::app(terms::snd(a, b), z));
                    i = 0;
                    continue;
                }
                Formula::Implies(ant, d) => match &**ant {
                    Formula::Bottom => {
                        ctx.remove(i);
                        i = 0;
                        continue;
                    }
                    p if is_atom(p) => {
                        if let Some(x) = lookup(ctx, p).cloned() {
                            let (_, g) = ctx.remove(i);
                            add(ctx, (**d).clone(), terms::app(g, x));
                            i = 0;
                            continue;
                        }
                    }
                    Formula::And(a, b) => {
                        let (_, g) = ctx.remove(i);
                        let (x, y) = (self.fresh(), self.fresh());
                        let body = terms::app(
                            g,
                            terms::app2(
                                terms::pair(a, b),
                                terms::var(x, (**a).clone()),
                                terms::var(y, (**b).clone()),
                            ),
                        );
                        let t = terms::lam(x, (**a).clone(), terms::lam(y, (**b).clone(), body));
                        let curried = Formula::implies((**a).clone(), Formula::implies((**b).clone(), (**d).clone()));
                        add(ctx, curried, t);
                        i = 0;
                        continue;
                    }
                    Formula::Or(a, b) => {
                        let (_, g) = ctx.remove(i);
                        let (x, y) = (self.fresh(), self.fresh());
                        let l = terms::lam(
                            x,
                            (**a).clone(),
                            terms::app(g.clone(), terms::app(terms::inl(a, b), terms::var(x, (**a).clone()))),
                        );
                        let r = terms::lam(
                            y,
                            (**b).clone(),
                            terms::app(g, terms::app(terms::inr(a, b), terms::var(y, (**b).clone()))),
                        );
                        add(ctx, Formula::implies((**a).clone(), (**d).clone()), l);
                        add(ctx, Formula::implies((**b).clone(), (**d).clone()), r);
                        i = 0;
                        continue;
                    }
                    _ => {}
                },
                _ => {}
            }
            i += 1;
        }
        None
    }
}
