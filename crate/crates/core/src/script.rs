//! Text formats for inferences (proof scripts) and deductive systems
//! (system manifests).
//!
//! Proof script:
//!
//! ```text
//! mode int
//! hyp + p
//! 1 + p->(q->p) ; ax
//! 2 + p ; hyp
//! 3 + q->p ; mp 1 2
//! ```
//!
//! System manifest: a `mode` line, optional `frame <n> <i> <j> ...` lines
//! naming the frames whose logic the system axiomatizes, then one `+ A` line
//! per extra axiom and one `- A` line per anti-axiom. Base axioms are implied.
//!
//! Blank lines and `#` comments are ignored on input.

use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{parse_formula, Formula, Mode, ParseError, Substitution};
use crate::kernel::{DeductiveSystem, Inference, Justification, ModeError, Sign, Statement};
use crate::semantics::{Frame, FrameError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("line {line}: {source}")]
    Mode { line: usize, source: ModeError },
    #[error("line {line}: {source}")]
    Frame { line: usize, source: FrameError },
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T, ScriptError> {
    Err(ScriptError::Syntax { line, msg: msg.into() })
}

/// Content lines with 1-based line numbers, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn mode_from(line: usize, text: &str) -> Result<Mode, ScriptError> {
    match text.strip_prefix("mode") {
        Some(rest) => match Mode::parse(rest.trim()) {
            Some(m) => Ok(m),
            None => syntax(line, format!("unknown mode {:?}", rest.trim())),
        },
        None => syntax(line, "expected `mode int` or `mode k4`"),
    }
}

fn formula_at(line: usize, text: &str, mode: Mode) -> Result<Formula, ScriptError> {
    parse_formula(text, mode).map_err(|source| ScriptError::Formula { line, source })
}

fn signed_at(line: usize, text: &str, mode: Mode) -> Result<Statement, ScriptError> {
    let text = text.trim();
    let (sign, rest) = match text.chars().next() {
        Some('+') => (Sign::Assert, &text[1..]),
        Some('-') => (Sign::Reject, &text[1..]),
        _ => return syntax(line, "expected `+` or `-`"),
    };
    Ok(Statement { sign, body: formula_at(line, rest, mode)? })
}

fn index_at(line: usize, text: Option<&str>) -> Result<usize, ScriptError> {
    match text.and_then(|t| t.parse::<usize>().ok()) {
        Some(i) => Ok(i),
        None => syntax(line, "expected a step index"),
    }
}

fn justification_at(line: usize, text: &str, mode: Mode) -> Result<Justification, ScriptError> {
    let text = text.trim();
    let mut words = text.split_whitespace();
    let rule = words.next().unwrap_or("");
    let just = match rule {
        "ax" => Justification::Axiom,
        "antiax" => Justification::AntiAxiom,
        "hyp" => Justification::Hypothesis,
        "mp" => Justification::Mp(index_at(line, words.next())?, index_at(line, words.next())?),
        "mt" => Justification::Mt(index_at(line, words.next())?, index_at(line, words.next())?),
        "rs" => Justification::Rs(index_at(line, words.next())?),
        "ns" => Justification::Ns(index_at(line, words.next())?),
        "rn" => Justification::Rn(index_at(line, words.next())?),
        "sb" => {
            let i = index_at(line, words.next())?;
            let after_index = text["sb".len()..].trim_start();
            let body = after_index[after_index.find(char::is_whitespace).unwrap_or(after_index.len())..].trim();
            let inner = match body.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
                Some(inner) => inner,
                None => return syntax(line, "expected `{ x := A ; ... }` after sb"),
            };
            let mut sigma = Substitution::new();
            for binding in inner.split(';').map(str::trim).filter(|b| !b.is_empty()) {
                let Some((var, f)) = binding.split_once(":=") else {
                    return syntax(line, format!("bad binding {binding:?}"));
                };
                let var = var.trim();
                match formula_at(line, var, mode)? {
                    Formula::Var(_) => {}
                    _ => return syntax(line, format!("{var:?} is not a variable")),
                }
                if sigma.get(var).is_some() {
                    return syntax(line, format!("variable {var} bound twice"));
                }
                sigma.insert(var, formula_at(line, f, mode)?);
            }
            return Ok(Justification::Sb(i, sigma));
        }
        other => return syntax(line, format!("unknown rule {other:?}")),
    };
    if words.next().is_some() {
        return syntax(line, "trailing input after justification");
    }
    Ok(just)
}

/// A parsed proof script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub mode: Mode,
    pub inference: Inference,
}

pub fn parse_proof_script(text: &str) -> Result<ProofScript, ScriptError> {
    let mut lines = content_lines(text);
    let Some((first, head)) = lines.next() else {
        return syntax(1, "empty proof script");
    };
    let mode = mode_from(first, head)?;
    let mut inf = Inference::default();
    for (line, content) in lines {
        if let Some(rest) = content.strip_prefix("hyp ") {
            if !inf.steps.is_empty() {
                return syntax(line, "hypotheses must precede the steps");
            }
            inf.hypotheses.push(signed_at(line, rest, mode)?);
            continue;
        }
        let (number, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let n = index_at(line, Some(number))?;
        if n != inf.steps.len() + 1 {
            return syntax(line, format!("expected step {}, found {n}", inf.steps.len() + 1));
        }
        let Some((stmt, just)) = rest.split_once(';') else {
            return syntax(line, "expected `<sign> <formula> ; <justification>`");
        };
        let statement = signed_at(line, stmt, mode)?;
        let justification = justification_at(line, just, mode)?;
        inf.push(statement, justification);
    }
    Ok(ProofScript { mode, inference: inf })
}

fn render_justification(j: &Justification) -> String {
    match j {
        Justification::Axiom => "ax".into(),
        Justification::AntiAxiom => "antiax".into(),
        Justification::Hypothesis => "hyp".into(),
        Justification::Mp(i, k) => format!("mp {i} {k}"),
        Justification::Mt(i, k) => format!("mt {i} {k}"),
        Justification::Rs(i) => format!("rs {i}"),
        Justification::Ns(i) => format!("ns {i}"),
        Justification::Rn(i) => format!("rn {i}"),
        Justification::Sb(i, s) => {
            if s.is_empty() {
                return format!("sb {i} {{ }}");
            }
            let bindings: Vec<String> = s.iter().map(|(x, f)| format!("{x} := {f}")).collect();
            format!("sb {i} {{ {} }}", bindings.join(" ; "))
        }
    }
}

pub fn render_proof_script(mode: Mode, inf: &Inference) -> String {
    let mut out = format!("mode {mode}\n");
    for h in &inf.hypotheses {
        let _ = writeln!(out, "hyp {h}");
    }
    for (k, step) in inf.steps.iter().enumerate() {
        let _ = writeln!(out, "{} {} ; {}", k + 1, step.statement, render_justification(&step.justification));
    }
    out
}

/// A deductive system together with the frames it was read off, if any.
#[derive(Debug, Clone)]
pub struct SystemManifest {
    pub system: DeductiveSystem,
    pub frames: Vec<Frame>,
}

pub fn parse_system_manifest(text: &str) -> Result<SystemManifest, ScriptError> {
    let mut lines = content_lines(text);
    let Some((first, head)) = lines.next() else {
        return syntax(1, "empty system manifest");
    };
    let mode = mode_from(first, head)?;
    let mut system = DeductiveSystem::base(mode);
    let mut frames = Vec::new();
    for (line, content) in lines {
        if let Some(rest) = content.strip_prefix("frame") {
            let nums: Result<Vec<usize>, _> = rest.split_whitespace().map(str::parse).collect();
            let Ok(nums) = nums else {
                return syntax(line, "frame line takes a world count and index pairs");
            };
            let Some((&n, pairs)) = nums.split_first() else {
                return syntax(line, "frame line needs a world count");
            };
            if pairs.len() % 2 != 0 {
                return syntax(line, "odd number of relation indices");
            }
            let rel: Vec<(usize, usize)> = pairs.chunks(2).map(|c| (c[0], c[1])).collect();
            let frame = Frame::from_pairs(mode, n, &rel).map_err(|source| ScriptError::Frame { line, source })?;
            frames.push(frame);
            continue;
        }
        let st = signed_at(line, content, mode)?;
        let res = match st.sign {
            Sign::Assert => system.add_axiom(st.body),
            Sign::Reject => system.add_anti_axiom(st.body),
        };
        res.map_err(|source| ScriptError::Mode { line, source })?;
    }
    Ok(SystemManifest { system, frames })
}

pub fn render_system_manifest(system: &DeductiveSystem, frames: &[Frame]) -> String {
    let mut out = format!("mode {}\n", system.mode());
    for f in frames {
        let _ = write!(out, "frame {}", f.len());
        for (i, j) in f.generating_pairs() {
            let _ = write!(out, " {i} {j}");
        }
        out.push('\n');
    }
    for a in system.extra_axioms() {
        let _ = writeln!(out, "+ {a}");
    }
    for a in system.anti_axioms() {
        let _ = writeln!(out, "- {a}");
    }
    out
}
