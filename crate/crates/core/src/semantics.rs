//! Finite Kripke semantics for both modes.
//!
//! Worlds are numbered `0..n` with `n <= 64`; sets of worlds are `u64` masks.
//! In `Int` mode the relation is a partial order and `->` quantifies over
//! successors; in `K4` mode the relation is transitive, connectives are
//! classical at each world and `[]A` holds where `A` holds at every successor.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use thiserror::Error;

use crate::formula::{parse_formula, Formula, Mode, ParseError};
use crate::kernel::{DeductiveSystem, Sign, Statement};

pub const MAX_WORLDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("a frame needs between 1 and {MAX_WORLDS} worlds, got {0}")]
    WorldCount(usize),
    #[error("world {0} out of range")]
    WorldOutOfRange(usize),
    #[error("relation is not antisymmetric (worlds {0} and {1})")]
    NotAntisymmetric(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("resource bound exceeded: {worlds} worlds, {vars} variables (limit {max_worlds} worlds, {max_vars} variables)")]
    ResourceBound {
        worlds: usize,
        vars: usize,
        max_worlds: usize,
        max_vars: usize,
    },
    #[error("formula {0} does not belong to mode {1}")]
    ModeMismatch(Formula, Mode),
}

/// Limits for exhaustive valuation enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_worlds: usize,
    pub max_vars: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_worlds: 8, max_vars: 3 }
    }
}

impl Budget {
    pub fn new(max_worlds: usize, max_vars: usize) -> Self {
        Budget { max_worlds, max_vars }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    mode: Mode,
    /// `succ[w]` is the set of worlds `v` with `w R v`.
    succ: Vec<u64>,
}

fn bit(i: usize) -> u64 {
    1u64 << i
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

impl Frame {
    /// Builds a frame from relation pairs. In `Int` mode the reflexive
    /// transitive closure is taken and antisymmetry verified; in `K4` mode the
    /// transitive closure is taken.
    pub fn from_pairs(mode: Mode, n: usize, pairs: &[(usize, usize)]) -> Result<Frame, FrameError> {
        if n == 0 || n > MAX_WORLDS {
            return Err(FrameError::WorldCount(n));
        }
        let mut succ = vec![0u64; n];
        for &(i, j) in pairs {
            if i >= n {
                return Err(FrameError::WorldOutOfRange(i));
            }
            if j >= n {
                return Err(FrameError::WorldOutOfRange(j));
            }
            succ[i] |= bit(j);
        }
        if mode == Mode::Int {
            for (w, s) in succ.iter_mut().enumerate() {
                *s |= bit(w);
            }
        }
        // Warshall over bitsets.
        for k in 0..n {
            for i in 0..n {
                if succ[i] & bit(k) != 0 {
                    succ[i] |= succ[k];
                }
            }
        }
        if mode == Mode::Int {
            for i in 0..n {
                for j in (i + 1)..n {
                    if succ[i] & bit(j) != 0 && succ[j] & bit(i) != 0 {
                        return Err(FrameError::NotAntisymmetric(i, j));
                    }
                }
            }
        }
        Ok(Frame { mode, succ })
    }

    fn from_succ(mode: Mode, succ: Vec<u64>) -> Frame {
        Frame { mode, succ }
    }

    /// The one-world frame: reflexive in `Int`, irreflexive in `K4`.
    pub fn point(mode: Mode) -> Frame {
        Frame::from_pairs(mode, 1, &[]).expect("valid")
    }

    /// The one-world frame whose world sees itself.
    pub fn reflexive_point(mode: Mode) -> Frame {
        Frame::from_pairs(mode, 1, &[(0, 0)]).expect("valid")
    }

    /// `0 < 1 < ... < n-1` in `Int` mode.
    pub fn chain(n: usize) -> Frame {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Frame::from_pairs(Mode::Int, n, &pairs).expect("valid")
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn sees(&self, w: usize, v: usize) -> bool {
        self.succ[w] & bit(v) != 0
    }

    pub fn successors(&self, w: usize) -> u64 {
        self.succ[w]
    }

    pub fn all_worlds(&self) -> u64 {
        full_mask(self.len())
    }

    /// A world that sees every other world, if any.
    pub fn root(&self) -> Option<usize> {
        let all = self.all_worlds();
        (0..self.len()).find(|&w| (self.succ[w] | bit(w)) == all)
    }

    pub fn is_rooted(&self) -> bool {
        self.root().is_some()
    }

    /// Pairs that generate the relation: the covering pairs in `Int` mode,
    /// every pair in `K4` mode.
    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.sees(i, j) {
                    continue;
                }
                match self.mode {
                    Mode::K4 => out.push((i, j)),
                    Mode::Int => {
                        if i == j {
                            continue;
                        }
                        let covered = (0..n).any(|k| k != i && k != j && self.sees(i, k) && self.sees(k, j));
                        if !covered {
                            out.push((i, j));
                        }
                    }
                }
            }
        }
        out
    }

    /// Proper successors `v` of `w` with nothing strictly in between.
    pub fn immediate_successors(&self, w: usize) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&v| v != w && self.sees(w, v))
            .filter(|&v| !(0..n).any(|k| k != w && k != v && self.sees(w, k) && self.sees(k, v)))
            .collect()
    }

    /// Sets of worlds admissible as values of a variable: upsets in `Int`,
    /// all subsets in `K4`.
    pub fn admissible_sets(&self) -> Vec<u64> {
        let n = self.len();
        assert!(n <= 20, "admissible set enumeration is limited to 20 worlds");
        let mut out = Vec::new();
        for m in 0..(1u64 << n) {
            if self.mode == Mode::K4 || self.is_upset(m) {
                out.push(m);
            }
        }
        out
    }

    pub fn is_upset(&self, m: u64) -> bool {
        (0..self.len()).all(|w| m & bit(w) == 0 || self.succ[w] & !m == 0)
    }

    /// Smallest upset containing `m` (or `m` itself in `K4` mode).
    pub fn upward_closure(&self, m: u64) -> u64 {
        if self.mode == Mode::K4 {
            return m;
        }
        (0..self.len()).filter(|&w| m & bit(w) != 0).fold(m, |acc, w| acc | self.succ[w])
    }

    /// The subframe generated by `w`, relabelled `0..k` in increasing world order.
    pub fn generated_subframe(&self, w: usize) -> (Frame, Vec<usize>) {
        let worlds: Vec<usize> = (0..self.len())
            .filter(|&v| v == w || self.sees(w, v))
            .collect();
        let succ = worlds
            .iter()
            .map(|&u| {
                worlds
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.sees(u, v))
                    .fold(0u64, |acc, (k, _)| acc | bit(k))
            })
            .collect();
        (Frame::from_succ(self.mode, succ), worlds)
    }

    /// The same frame with world `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Frame {
        let n = self.len();
        let mut succ = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if self.sees(i, j) {
                    succ[perm[i]] |= bit(perm[j]);
                }
            }
        }
        Frame::from_succ(self.mode, succ)
    }

    /// Row-major relation matrix read through `order` (`order[k]` is the old
    /// world placed at position `k`).
    fn code_under(&self, order: &[usize]) -> Vec<bool> {
        let mut code = Vec::with_capacity(order.len() * order.len());
        for &i in order {
            for &j in order {
                code.push(self.sees(i, j));
            }
        }
        code
    }

    /// Isomorphism-invariant representative: the relabelling with the
    /// lexicographically greatest relation matrix.
    pub fn canonical(&self) -> Frame {
        let n = self.len();
        let best = (0..n)
            .permutations(n)
            .max_by(|a, b| self.code_under(a).cmp(&self.code_under(b)))
            .expect("nonempty");
        // best[k] = old world at new position k; invert for relabel.
        let mut perm = vec![0; n];
        for (k, &old) in best.iter().enumerate() {
            perm[old] = k;
        }
        self.relabel(&perm)
    }

    /// Relation matrix bits, row-major.
    pub fn code(&self) -> Vec<bool> {
        let order: Vec<usize> = (0..self.len()).collect();
        self.code_under(&order)
    }

    pub fn is_isomorphic(&self, other: &Frame) -> bool {
        self.mode == other.mode && self.len() == other.len() && self.canonical() == other.canonical()
    }
}

/// A frame with a valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    pub frame: Frame,
    valuation: BTreeMap<Arc<str>, u64>,
}

impl KripkeModel {
    pub fn new(frame: Frame) -> Self {
        KripkeModel { frame, valuation: BTreeMap::new() }
    }

    /// Sets the worlds where `var` holds; in `Int` mode the set is closed upward.
    pub fn set(&mut self, var: &str, worlds: u64) {
        let m = self.frame.upward_closure(worlds & self.frame.all_worlds());
        self.valuation.insert(Arc::from(var), m);
    }

    pub fn with(mut self, var: &str, worlds: &[usize]) -> Self {
        let m = worlds.iter().fold(0u64, |acc, &w| acc | bit(w));
        self.set(var, m);
        self
    }

    pub fn value(&self, var: &str) -> u64 {
        self.valuation.get(var).copied().unwrap_or(0)
    }

    pub fn valuation(&self) -> impl Iterator<Item = (&str, u64)> {
        self.valuation.iter().map(|(k, v)| (&**k, *v))
    }

    /// Set of worlds forcing `a`.
    pub fn truth_set(&self, a: &Formula) -> u64 {
        let compiled = Compiled::new(a);
        let vals: Vec<u64> = compiled.vars.iter().map(|v| self.value(v)).collect();
        compiled.eval(&self.frame, &vals)
    }
}

pub fn forces(m: &KripkeModel, w: usize, a: &Formula) -> bool {
    m.truth_set(a) & bit(w) != 0
}

/// Statement validity in a model: `+A` iff `A` is forced everywhere, `-A` iff not.
pub fn model_validates(m: &KripkeModel, s: &Statement) -> bool {
    let everywhere = m.truth_set(&s.body) == m.frame.all_worlds();
    match s.sign {
        Sign::Assert => everywhere,
        Sign::Reject => !everywhere,
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Var(usize),
    Bot,
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    Box(usize),
}

/// A formula flattened into a DAG of operations over world masks.
struct Compiled {
    ops: Vec<Op>,
    vars: Vec<Arc<str>>,
}

impl Compiled {
    fn new(a: &Formula) -> Compiled {
        let mut c = Compiled { ops: Vec::new(), vars: Vec::new() };
        let mut seen: HashMap<Formula, usize> = HashMap::new();
        let mut var_ix: HashMap<Arc<str>, usize> = HashMap::new();
        c.push(a, &mut seen, &mut var_ix);
        c
    }

    fn push(&mut self, a: &Formula, seen: &mut HashMap<Formula, usize>, var_ix: &mut HashMap<Arc<str>, usize>) -> usize {
        if let Some(&slot) = seen.get(a) {
            return slot;
        }
        let op = match a {
            Formula::Var(x) => {
                let next = var_ix.len();
                let ix = *var_ix.entry(x.clone()).or_insert_with(|| {
                    self.vars.push(x.clone());
                    next
                });
                Op::Var(ix)
            }
            Formula::Bottom => Op::Bot,
            Formula::And(l, r) => {
                let (l, r) = (self.push(l, seen, var_ix), self.push(r, seen, var_ix));
                Op::And(l, r)
            }
            Formula::Or(l, r) => {
                let (l, r) = (self.push(l, seen, var_ix), self.push(r, seen, var_ix));
                Op::Or(l, r)
            }
            Formula::Implies(l, r) => {
                let (l, r) = (self.push(l, seen, var_ix), self.push(r, seen, var_ix));
                Op::Imp(l, r)
            }
            Formula::Box(x) => Op::Box(self.push(x, seen, var_ix)),
        };
        self.ops.push(op);
        let slot = self.ops.len() - 1;
        seen.insert(a.clone(), slot);
        slot
    }

    fn eval_into(&self, frame: &Frame, vals: &[u64], slots: &mut Vec<u64>) -> u64 {
        let n = frame.len();
        let all = frame.all_worlds();
        slots.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) => vals[i],
                Op::Bot => 0,
                Op::And(a, b) => slots[a] & slots[b],
                Op::Or(a, b) => slots[a] | slots[b],
                Op::Imp(a, b) => match frame.mode {
                    Mode::K4 => (!slots[a] | slots[b]) & all,
                    Mode::Int => {
                        let bad = slots[a] & !slots[b];
                        (0..n).filter(|&w| frame.succ[w] & bad == 0).fold(0, |acc, w| acc | bit(w))
                    }
                },
                Op::Box(a) => {
                    let bad = !slots[a] & all;
                    (0..n).filter(|&w| frame.succ[w] & bad == 0).fold(0, |acc, w| acc | bit(w))
                }
            };
            slots.push(v);
        }
        *slots.last().expect("nonempty")
    }

    fn eval(&self, frame: &Frame, vals: &[u64]) -> u64 {
        self.eval_into(frame, vals, &mut Vec::with_capacity(self.ops.len()))
    }
}

fn check_budget(f: &Frame, vars: usize, budget: &Budget) -> Result<(), SemanticsError> {
    if f.len() > budget.max_worlds || vars > budget.max_vars || f.len() > 20 {
        return Err(SemanticsError::ResourceBound {
            worlds: f.len(),
            vars,
            max_worlds: budget.max_worlds,
            max_vars: budget.max_vars,
        });
    }
    Ok(())
}

/// A valuation under which `a` fails somewhere on `f`, if one exists.
pub fn find_refuting_valuation(f: &Frame, a: &Formula, budget: &Budget) -> Result<Option<KripkeModel>, SemanticsError> {
    if !a.respects(f.mode) {
        return Err(SemanticsError::ModeMismatch(a.clone(), f.mode));
    }
    let compiled = Compiled::new(a);
    let k = compiled.vars.len();
    check_budget(f, k, budget)?;
    let sets = f.admissible_sets();
    let all = f.all_worlds();
    let mut idx = vec![0usize; k];
    let mut vals = vec![sets[0]; k];
    let mut slots = Vec::with_capacity(compiled.ops.len());
    loop {
        if compiled.eval_into(f, &vals, &mut slots) != all {
            let mut m = KripkeModel::new(f.clone());
            for (v, &s) in compiled.vars.iter().zip(&vals) {
                m.set(v, s);
            }
            return Ok(Some(m));
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < sets.len() {
                vals[pos] = sets[idx[pos]];
                break;
            }
            idx[pos] = 0;
            vals[pos] = sets[0];
            pos += 1;
        }
    }
}

/// `a` is forced everywhere under every admissible valuation of its variables.
pub fn frame_valid(f: &Frame, a: &Formula, budget: &Budget) -> Result<bool, SemanticsError> {
    find_refuting_valuation(f, a, budget).map(|m| m.is_none())
}

/// Statement validity with the frame read as a matrix (all valuations).
pub fn frame_validates(f: &Frame, s: &Statement, budget: &Budget) -> Result<bool, SemanticsError> {
    let valid = frame_valid(f, &s.body, budget)?;
    Ok(match s.sign {
        Sign::Assert => valid,
        Sign::Reject => !valid,
    })
}

/// Every positive axiom of `ds` is valid on `f` and every anti-axiom is not.
pub fn check_adequacy(f: &Frame, ds: &DeductiveSystem, budget: &Budget) -> Result<bool, SemanticsError> {
    for a in ds.positive_axioms() {
        if !frame_valid(f, a, budget)? {
            return Ok(false);
        }
    }
    for a in ds.anti_axioms() {
        if frame_valid(f, a, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The fixed-valuation counterpart of [`check_adequacy`].
pub fn check_model_adequacy(m: &KripkeModel, ds: &DeductiveSystem) -> bool {
    ds.positive_axioms().all(|a| model_validates(m, &Statement::assert(a.clone())))
        && ds.anti_axioms().iter().all(|a| model_validates(m, &Statement::reject(a.clone())))
}

/// Membership in a logic.
pub trait LogicOracle {
    fn contains(&self, a: &Formula) -> Result<bool, SemanticsError>;
}

impl<F: Fn(&Formula) -> bool> LogicOracle for F {
    fn contains(&self, a: &Formula) -> Result<bool, SemanticsError> {
        Ok(self(a))
    }
}

/// The logic of finitely many finite frames.
#[derive(Debug)]
pub struct TabularOracle {
    frames: Vec<Frame>,
    budget: Budget,
    cache: Mutex<HashMap<Formula, bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("a tabular oracle needs at least one frame")]
    NoFrames,
    #[error("frames of a tabular oracle must share one mode")]
    MixedModes,
}

impl TabularOracle {
    pub fn new(frames: Vec<Frame>, budget: Budget) -> Result<Self, OracleError> {
        let Some(first) = frames.first() else {
            return Err(OracleError::NoFrames);
        };
        if frames.iter().any(|f| f.mode != first.mode) {
            return Err(OracleError::MixedModes);
        }
        Ok(TabularOracle { frames, budget, cache: Mutex::new(HashMap::new()) })
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn mode(&self) -> Mode {
        self.frames[0].mode
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }
}

impl LogicOracle for TabularOracle {
    fn contains(&self, a: &Formula) -> Result<bool, SemanticsError> {
        if let Some(&hit) = self.cache.lock().expect("poisoned").get(a) {
            return Ok(hit);
        }
        let mut result = true;
        for f in &self.frames {
            if !frame_valid(f, a, &self.budget)? {
                result = false;
                break;
            }
        }
        self.cache.lock().expect("poisoned").insert(a.clone(), result);
        Ok(result)
    }
}

/// All rooted finite partial orders with at most `max_n` worlds, up to
/// isomorphism, ordered by size and then by canonical code (descending).
/// Each frame is returned in canonical labelling.
pub fn enumerate_rooted_posets(max_n: usize) -> Vec<Frame> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(rooted_posets_of_size(n));
    }
    out
}

pub fn rooted_posets_of_size(n: usize) -> Vec<Frame> {
    if n == 0 {
        return Vec::new();
    }
    // Worlds are added in a linear-extension order: each new world picks a
    // nonempty downset of the earlier worlds as its strict predecessors.
    let mut labelled: Vec<Vec<u64>> = vec![vec![1]];
    for j in 1..n {
        let mut next = Vec::new();
        for pred in &labelled {
            // pred[i] = strict-or-equal predecessors mask of world i
            for d in 1u64..(1u64 << j) {
                let is_downset = (0..j).all(|i| d & bit(i) == 0 || pred[i] & !d == 0);
                if is_downset {
                    let mut p = pred.clone();
                    p.push(d | bit(j));
                    next.push(p);
                }
            }
        }
        labelled = next;
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut frames = Vec::new();
    for pred in labelled {
        let mut succ = vec![0u64; n];
        for (v, &p) in pred.iter().enumerate() {
            for (w, s) in succ.iter_mut().enumerate() {
                if p & bit(w) != 0 {
                    *s |= bit(v);
                }
            }
        }
        let canon = Frame::from_succ(Mode::Int, succ).canonical();
        if seen.insert(canon.code()) {
            frames.push(canon);
        }
    }
    frames.sort_by(|a, b| b.code().cmp(&a.code()));
    frames
}

/// Some generated subframe of `g` maps onto `f` by a p-morphism.
pub fn p_morphic_reduct_exists(g: &Frame, f: &Frame) -> bool {
    (0..g.len()).any(|x| {
        let (sub, _) = g.generated_subframe(x);
        sub.len() >= f.len() && p_morphism_onto(&sub, f).is_some()
    })
}

/// A surjective p-morphism from `g` onto `f`, found by backtracking.
pub fn p_morphism_onto(g: &Frame, f: &Frame) -> Option<Vec<usize>> {
    fn extend(g: &Frame, f: &Frame, h: &mut Vec<usize>) -> bool {
        let u = h.len();
        if u == g.len() {
            let image = h.iter().fold(0u64, |acc, &b| acc | bit(b));
            if image != f.all_worlds() {
                return false;
            }
            // back condition
            return (0..g.len()).all(|u| {
                (0..f.len())
                    .filter(|&b| f.sees(h[u], b))
                    .all(|b| (0..g.len()).any(|v| g.sees(u, v) && h[v] == b))
            });
        }
        for a in 0..f.len() {
            // forth condition against already-assigned worlds
            let ok = (0..u).all(|v| (!g.sees(u, v) || f.sees(a, h[v])) && (!g.sees(v, u) || f.sees(h[v], a)))
                && (!g.sees(u, u) || f.sees(a, a));
            if ok {
                h.push(a);
                if extend(g, f, h) {
                    return true;
                }
                h.pop();
            }
        }
        false
    }
    let mut h = Vec::with_capacity(g.len());
    extend(g, f, &mut h).then_some(h)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Frame { line: usize, source: FrameError },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
}

/// Parses the frame/model file format:
///
/// ```text
/// mode int
/// worlds 2
/// rel 0 1
/// val p 1
/// ```
pub fn parse_model_file(text: &str) -> Result<KripkeModel, FrameFileError> {
    let syntax = |line: usize, msg: &str| FrameFileError::Syntax { line, msg: msg.to_string() };
    let mut mode = None;
    let mut worlds = None;
    let mut rel = Vec::new();
    let mut vals: Vec<(usize, String, Vec<usize>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let key = words.next().unwrap_or("");
        let rest: Vec<&str> = words.collect();
        let nums = |ws: &[&str]| -> Result<Vec<usize>, FrameFileError> {
            ws.iter()
                .map(|w| w.parse::<usize>().map_err(|_| syntax(line, "expected a world index")))
                .collect()
        };
        match key {
            "mode" => {
                let m = rest.first().and_then(|m| Mode::parse(m));
                mode = Some(m.ok_or_else(|| syntax(line, "expected `mode int` or `mode k4`"))?);
            }
            "worlds" => {
                let n = nums(&rest)?;
                if n.len() != 1 {
                    return Err(syntax(line, "expected `worlds <n>`"));
                }
                worlds = Some(n[0]);
            }
            "rel" => {
                let ij = nums(&rest)?;
                if ij.len() != 2 {
                    return Err(syntax(line, "expected `rel <i> <j>`"));
                }
                rel.push((ij[0], ij[1]));
            }
            "val" => {
                let Some((var, ws)) = rest.split_first() else {
                    return Err(syntax(line, "expected `val <var> <i> ...`"));
                };
                match parse_formula(var, Mode::Int) {
                    Ok(Formula::Var(_)) => {}
                    Ok(_) => return Err(syntax(line, "not a variable")),
                    Err(source) => return Err(FrameFileError::Formula { line, source }),
                }
                vals.push((line, var.to_string(), nums(ws)?));
            }
            _ => return Err(syntax(line, "unknown directive")),
        }
    }
    let mode = mode.ok_or_else(|| syntax(1, "missing mode line"))?;
    let n = worlds.ok_or_else(|| syntax(1, "missing worlds line"))?;
    let frame = Frame::from_pairs(mode, n, &rel).map_err(|source| FrameFileError::Frame { line: 1, source })?;
    let mut model = KripkeModel::new(frame);
    for (line, var, ws) in vals {
        if let Some(&w) = ws.iter().find(|&&w| w >= n) {
            return Err(FrameFileError::Frame { line, source: FrameError::WorldOutOfRange(w) });
        }
        let m = ws.iter().fold(model.value(&var), |acc, &w| acc | bit(w));
        model.set(&var, m);
    }
    Ok(model)
}

pub fn render_frame(f: &Frame) -> String {
    let mut out = format!("mode {}\nworlds {}\n", f.mode, f.len());
    for (i, j) in f.generating_pairs() {
        let _ = writeln!(out, "rel {i} {j}");
    }
    out
}

pub fn render_model(m: &KripkeModel) -> String {
    let mut out = render_frame(&m.frame);
    for (var, set) in m.valuation() {
        let worlds: Vec<String> = (0..m.frame.len())
            .filter(|&w| set & bit(w) != 0)
            .map(|w| w.to_string())
            .collect();
        if worlds.is_empty() {
            let _ = writeln!(out, "val {var}");
        } else {
            let _ = writeln!(out, "val {var} {}", worlds.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s, Mode::K4).unwrap()
    }

    #[test]
    fn two_chain_forcing() {
        let m = KripkeModel::new(Frame::chain(2)).with("p", &[1]);
        assert!(forces(&m, 0, &f("~~p")));
        assert!(!forces(&m, 0, &f("p")));
        assert!(!forces(&m, 0, &f("~~p -> p")));
        assert!(forces(&m, 1, &f("~~p -> p")));
        assert!(model_validates(&m, &Statement::reject(f("~~p -> p"))));
        assert!(model_validates(&m, &Statement::assert(f("p -> p"))));
    }

    #[test]
    fn single_point_is_classical() {
        let pt = Frame::point(Mode::Int);
        for v in [0u64, 1] {
            let mut m = KripkeModel::new(pt.clone());
            m.set("p", v);
            assert!(forces(&m, 0, &f("p | ~p")));
        }
    }

    #[test]
    fn irreflexive_point_forces_box_bottom() {
        let m = KripkeModel::new(Frame::point(Mode::K4));
        assert!(forces(&m, 0, &f("[]bot")));
        let r = KripkeModel::new(Frame::reflexive_point(Mode::K4));
        assert!(!forces(&r, 0, &f("[]bot")));
    }

    #[test]
    fn frame_validity_examples() {
        let b = Budget::default();
        assert!(frame_valid(&Frame::point(Mode::Int), &f("p | ~p"), &b).unwrap());
        assert!(!frame_valid(&Frame::chain(2), &f("~~p -> p"), &b).unwrap());
        assert!(frame_valid(&Frame::chain(3), &f("(p -> q) | (q -> p)"), &b).unwrap());
        assert!(frame_valid(&Frame::chain(2), &f("~p | ~~p"), &b).unwrap());
        assert!(frame_valid(&Frame::point(Mode::K4), &f("[]p -> [][]p"), &b).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let b = Budget::new(8, 1);
        assert!(matches!(
            frame_valid(&Frame::chain(2), &f("p -> q"), &b),
            Err(SemanticsError::ResourceBound { vars: 2, .. })
        ));
        assert!(matches!(
            frame_valid(&Frame::chain(9), &f("p"), &Budget::default()),
            Err(SemanticsError::ResourceBound { worlds: 9, .. })
        ));
        assert!(matches!(
            frame_valid(&Frame::chain(2), &f("[]p"), &Budget::default()),
            Err(SemanticsError::ModeMismatch(..))
        ));
    }

    #[test]
    fn adequacy() {
        let b = Budget::default();
        let ds = DeductiveSystem::new(Mode::Int, [f("~~p -> p")], []).unwrap();
        assert!(check_adequacy(&Frame::point(Mode::Int), &ds, &b).unwrap());
        assert!(!check_adequacy(&Frame::chain(2), &ds, &b).unwrap());
        let bad = DeductiveSystem::new(Mode::Int, [], [f("p -> p")]).unwrap();
        for fr in enumerate_rooted_posets(3) {
            assert!(!check_adequacy(&fr, &bad, &b).unwrap());
        }
        let m = KripkeModel::new(Frame::point(Mode::Int));
        assert!(!check_model_adequacy(&m, &bad));
    }

    #[test]
    fn tabular_oracle_of_two_chain() {
        let o = TabularOracle::new(vec![Frame::chain(2)], Budget::default()).unwrap();
        assert!(!o.contains(&f("~~p -> p")).unwrap());
        assert!(o.contains(&f("~p | ~~p")).unwrap());
        assert!(o.contains(&f("p -> p")).unwrap());
        assert!(TabularOracle::new(vec![], Budget::default()).is_err());
        assert!(TabularOracle::new(vec![Frame::chain(2), Frame::point(Mode::K4)], Budget::default()).is_err());
    }

    #[test]
    fn rooted_poset_counts() {
        // 1, 1, 2, 5, 16, 63 rooted posets on 1..6 points
        let counts: Vec<usize> = (1..=6).map(|n| rooted_posets_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
        let two = enumerate_rooted_posets(2);
        assert_eq!(two.len(), 2);
        assert!(two[0].is_isomorphic(&Frame::point(Mode::Int)));
        assert!(two[1].is_isomorphic(&Frame::chain(2)));
        for fr in enumerate_rooted_posets(5) {
            assert_eq!(fr.root(), Some(0));
        }
    }

    #[test]
    fn p_morphic_reducts() {
        assert!(p_morphic_reduct_exists(&Frame::chain(3), &Frame::chain(2)));
        assert!(!p_morphic_reduct_exists(&Frame::point(Mode::Int), &Frame::chain(2)));
        let fork = Frame::from_pairs(Mode::Int, 3, &[(0, 1), (0, 2)]).unwrap();
        let diamond = Frame::from_pairs(Mode::Int, 4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(!p_morphic_reduct_exists(&diamond, &fork));
        assert!(p_morphic_reduct_exists(&fork, &Frame::chain(2)));
        assert!(!p_morphic_reduct_exists(&Frame::chain(4), &fork));
    }

    #[test]
    fn model_file_round_trip() {
        let text = "mode int\nworlds 3\nrel 0 1\nrel 1 2\nval p 1\nval q 2\n";
        let m = parse_model_file(text).unwrap();
        assert_eq!(m.value("p"), 0b110);
        assert_eq!(m.value("q"), 0b100);
        assert_eq!(render_model(&m), "mode int\nworlds 3\nrel 0 1\nrel 1 2\nval p 1 2\nval q 2\n");
        assert!(matches!(
            parse_model_file("mode int\nworlds 2\nrel 0 1\nrel 1 0\n"),
            Err(FrameFileError::Frame { source: FrameError::NotAntisymmetric(0, 1), .. })
        ));
        assert!(matches!(parse_model_file("mode int\nworlds 2\nrel 0 5\n"), Err(FrameFileError::Frame { .. })));
        assert!(matches!(parse_model_file("worlds 2\n"), Err(FrameFileError::Syntax { .. })));
        let k4 = parse_model_file("mode k4\nworlds 2\nrel 0 1\nrel 1 1\n").unwrap();
        assert!(k4.frame.sees(0, 1) && !k4.frame.sees(0, 0));
    }
}
