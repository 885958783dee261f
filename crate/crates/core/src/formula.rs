//! Formula syntax: trees, parsing, printing, substitution and one-sided matching.
//!
//! Negation is not primitive. `~A` is read as `A -> bot` and the printer turns
//! every `A -> bot` back into `~A`, so the printed form of a tree always parses
//! back to the same tree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Which language a formula lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Intermediate logics: `&`, `|`, `->`, `bot`.
    Int,
    /// Normal extensions of K4: the intuitionistic connectives plus `[]`.
    K4,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Int => "int",
            Mode::K4 => "k4",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "int" => Some(Mode::Int),
            "k4" => Some(Mode::K4),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Arc<str>),
    Bottom,
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(Arc::from(name))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::implies(a, Formula::Bottom)
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Arc::new(a))
    }

    /// `~bot`, the constant true formula.
    pub fn top() -> Formula {
        Formula::not(Formula::Bottom)
    }

    /// Right-nested conjunction; the empty conjunction is `~bot`.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut items: Vec<Formula> = items.into_iter().collect();
        match items.pop() {
            None => Formula::top(),
            Some(last) => items
                .into_iter()
                .rev()
                .fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    /// Right-nested disjunction; the empty disjunction is `bot`.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut items: Vec<Formula> = items.into_iter().collect();
        match items.pop() {
            None => Formula::Bottom,
            Some(last) => items
                .into_iter()
                .rev()
                .fold(last, |acc, f| Formula::or(f, acc)),
        }
    }

    /// `A1 -> (A2 -> ... -> goal)`.
    pub fn curried(premises: &[Formula], goal: Formula) -> Formula {
        premises
            .iter()
            .rev()
            .fold(goal, |acc, p| Formula::implies(p.clone(), acc))
    }

    pub fn as_implication(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Implies(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn is_modal(&self) -> bool {
        match self {
            Formula::Var(_) | Formula::Bottom => false,
            Formula::Box(_) => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_modal() || b.is_modal()
            }
        }
    }

    pub fn respects(&self, mode: Mode) -> bool {
        mode == Mode::K4 || !self.is_modal()
    }

    /// Number of binary connectives and boxes, with `~A` counted as one.
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom => 0,
            Formula::Implies(a, b) if **b == Formula::Bottom => 1 + a.connectives(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.connectives() + b.connectives()
            }
            Formula::Box(a) => 1 + a.connectives(),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Box(a) => 1 + a.size(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Var(x) => {
                out.insert(x.clone());
            }
            Formula::Bottom => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Box(a) => a.collect_vars(out),
        }
    }

    /// Distinct subformulas, smallest first (ties broken by the derived order).
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut set = BTreeSet::new();
        self.collect_subformulas(&mut set);
        let mut out: Vec<Formula> = set.into_iter().collect();
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Var(_) | Formula::Bottom => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
            Formula::Box(a) => a.collect_subformulas(out),
        }
    }

    pub fn substitute(&self, s: &Substitution) -> Formula {
        apply_substitution(s, self)
    }
}

/// Binding strength used by the printer.
fn is_compound(f: &Formula) -> bool {
    match f {
        Formula::Var(_) | Formula::Bottom | Formula::Box(_) => false,
        Formula::Implies(_, b) => **b != Formula::Bottom,
        Formula::And(..) | Formula::Or(..) => true,
    }
}

fn write_operand(f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if is_compound(f) {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

impl fmt::Display for Formula {
    /// Compact ASCII form: binary operands that are themselves binary get
    /// parentheses, nothing else does. `A -> bot` prints as `~A`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(x) => out.write_str(x),
            Formula::Bottom => out.write_str("bot"),
            Formula::Implies(a, b) if **b == Formula::Bottom => {
                out.write_str("~")?;
                write_operand(a, out)
            }
            Formula::Box(a) => {
                out.write_str("[]")?;
                write_operand(a, out)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let op = match self {
                    Formula::And(..) => "&",
                    Formula::Or(..) => "|",
                    _ => "->",
                };
                write_operand(a, out)?;
                out.write_str(op)?;
                write_operand(b, out)
            }
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    /// Parses in K4 mode, i.e. accepts every formula.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s, Mode::K4)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("modality not allowed in int mode (at {pos})")]
    ModalityNotAllowed { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Not,
    Box,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next = chars.get(i + 1).map(|&(_, c)| c);
        match c {
            c if c.is_whitespace() => {}
            '~' | '¬' | '∼' => toks.push((pos, Tok::Not)),
            '&' | '∧' => toks.push((pos, Tok::And)),
            '|' | '∨' => toks.push((pos, Tok::Or)),
            '→' => toks.push((pos, Tok::Arrow)),
            '□' => toks.push((pos, Tok::Box)),
            '⊥' => toks.push((pos, Tok::Bot)),
            '(' => toks.push((pos, Tok::LParen)),
            ')' => toks.push((pos, Tok::RParen)),
            '-' if next == Some('>') => {
                toks.push((pos, Tok::Arrow));
                i += 1;
            }
            '[' if next == Some(']') => {
                toks.push((pos, Tok::Box));
                i += 1;
            }
            'a'..='z' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.get(i) {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        name.push(c);
                        i += 1;
                    } else {
                        break;
                    }
                }
                i -= 1;
                if name == "bot" {
                    toks.push((pos, Tok::Bot));
                } else {
                    toks.push((pos, Tok::Ident(name)));
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    mode: Mode,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    // imp := or ('->' imp)?
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.at += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Box) => {
                if self.mode == Mode::Int {
                    return Err(ParseError::ModalityNotAllowed { pos });
                }
                self.at += 1;
                Ok(Formula::boxed(self.unary()?))
            }
            Some(Tok::Bot) => {
                self.at += 1;
                Ok(Formula::Bottom)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Formula::var(&name))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.implication()?;
                if !self.eat(&Tok::RParen) {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some(t) => self.error(format!("unexpected token {t:?}")),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses `text` in the given mode. `[]` is rejected in [`Mode::Int`].
pub fn parse_formula(text: &str, mode: Mode) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        mode,
    };
    let f = p.implication()?;
    if p.at != p.toks.len() {
        return p.error("trailing input");
    }
    Ok(f)
}

/// A finite map from variable names to formulas, applied simultaneously.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution(BTreeMap<Arc<str>, Formula>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, var: &str, f: Formula) {
        self.0.insert(Arc::from(var), f);
    }

    pub fn with(mut self, var: &str, f: Formula) -> Self {
        self.insert(var, f);
        self
    }

    pub fn get(&self, var: &str) -> Option<&Formula> {
        self.0.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.0.iter().map(|(k, v)| (&**k, v))
    }

    /// Drops bindings of the form `x := x`.
    pub fn without_identities(&self) -> Substitution {
        Substitution(
            self.0
                .iter()
                .filter(|(k, v)| !matches!(v, Formula::Var(x) if x == *k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        )
    }
}

impl FromIterator<(Arc<str>, Formula)> for Substitution {
    fn from_iter<T: IntoIterator<Item = (Arc<str>, Formula)>>(iter: T) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

pub fn apply_substitution(s: &Substitution, a: &Formula) -> Formula {
    if s.is_empty() {
        return a.clone();
    }
    fn go(s: &Substitution, a: &Arc<Formula>) -> Arc<Formula> {
        match &**a {
            Formula::Var(x) => match s.0.get(x) {
                Some(f) => Arc::new(f.clone()),
                None => a.clone(),
            },
            Formula::Bottom => a.clone(),
            Formula::And(l, r) => Arc::new(Formula::And(go(s, l), go(s, r))),
            Formula::Or(l, r) => Arc::new(Formula::Or(go(s, l), go(s, r))),
            Formula::Implies(l, r) => Arc::new(Formula::Implies(go(s, l), go(s, r))),
            Formula::Box(x) => Arc::new(Formula::Box(go(s, x))),
        }
    }
    (*go(s, &Arc::new(a.clone()))).clone()
}

/// Finds the substitution `σ`, restricted to the variables of `pattern`, with
/// `σ(pattern) = target`.
pub fn match_instance(pattern: &Formula, target: &Formula) -> Option<Substitution> {
    fn go(p: &Formula, t: &Formula, acc: &mut BTreeMap<Arc<str>, Formula>) -> bool {
        match (p, t) {
            (Formula::Var(x), _) => match acc.get(x) {
                Some(bound) => bound == t,
                None => {
                    acc.insert(x.clone(), t.clone());
                    true
                }
            },
            (Formula::Bottom, Formula::Bottom) => true,
            (Formula::And(a, b), Formula::And(c, d))
            | (Formula::Or(a, b), Formula::Or(c, d))
            | (Formula::Implies(a, b), Formula::Implies(c, d)) => go(a, c, acc) && go(b, d, acc),
            (Formula::Box(a), Formula::Box(c)) => go(a, c, acc),
            _ => false,
        }
    }
    let mut acc = BTreeMap::new();
    go(pattern, target, &mut acc).then_some(Substitution(acc))
}
