//! Pushdown processes, their bounded-height unfoldings and the experiments
//! run on them.

mod deterministic;
mod gadget;
mod solve;
mod unfold;

pub use deterministic::{collapse_bound_upper, collapse_bound_upper_u64, simulate_deterministic, CycleKind, DeterministicRun};
pub use gadget::{restart_gadget, RESTART_SYMBOL};
pub use solve::{solve_unfolded, solve_unfolded_with, stabilize, Stabilization, UnfoldedSolve, DEFAULT_WINDOW};
pub use unfold::{unfold, unfold_with, OverflowPolicy, UnfoldResult};

use crate::arena::Player;
use crate::error::{Error, Result};
use std::fmt::{self, Write as _};

/// A stack symbol index; `None` stands for the bottom symbol.
pub type Top = Option<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    Push(usize),
    Pop,
    Skip,
}

/// `(from, top, action, to)`. A pop always carries the popped symbol as `top`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub from: usize,
    pub top: Top,
    pub action: Action,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlState {
    pub name: String,
    pub owner: Player,
    pub color: u32,
}

/// Control state plus stack. The stack is stored bottom first, so the top
/// symbol is the last element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: usize,
    pub stack: Vec<usize>,
}

impl Configuration {
    pub fn new(state: usize, stack: Vec<usize>) -> Self {
        Configuration { state, stack }
    }

    pub fn height(&self) -> usize {
        self.stack.len()
    }

    pub fn top(&self) -> Top {
        self.stack.last().copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushdownProcess {
    pub name: String,
    pub max_color: u32,
    pub states: Vec<ControlState>,
    pub alphabet: Vec<String>,
    pub transitions: Vec<Transition>,
}

impl PushdownProcess {
    pub fn new(name: impl Into<String>, max_color: u32) -> Self {
        PushdownProcess {
            name: name.into(),
            max_color,
            states: Vec::new(),
            alphabet: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>, owner: Player, color: u32) -> usize {
        self.states.push(ControlState {
            name: name.into(),
            owner,
            color,
        });
        self.states.len() - 1
    }

    pub fn add_symbol(&mut self, name: impl Into<String>) -> usize {
        self.alphabet.push(name.into());
        self.alphabet.len() - 1
    }

    pub fn push(&mut self, from: usize, top: Top, b: usize, to: usize) {
        self.transitions.push(Transition {
            from,
            top,
            action: Action::Push(b),
            to,
        });
    }

    pub fn pop(&mut self, from: usize, a: usize, to: usize) {
        self.transitions.push(Transition {
            from,
            top: Some(a),
            action: Action::Pop,
            to,
        });
    }

    pub fn skip(&mut self, from: usize, top: Top, to: usize) {
        self.transitions.push(Transition {
            from,
            top,
            action: Action::Skip,
            to,
        });
    }

    /// The bottom symbol followed by every stack symbol.
    pub fn tops(&self) -> Vec<Top> {
        std::iter::once(None).chain((0..self.alphabet.len()).map(Some)).collect()
    }

    /// `push` for every possible top, bottom included.
    pub fn push_any(&mut self, from: usize, b: usize, to: usize) {
        for t in self.tops() {
            self.push(from, t, b, to);
        }
    }

    pub fn skip_any(&mut self, from: usize, to: usize) {
        for t in self.tops() {
            self.skip(from, t, to);
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_id(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s.name == name)
    }

    pub fn symbol_id(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    /// Control states of color 0.
    pub fn buchi_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&q| self.states[q].color == 0).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArena(m));
        let n = self.states.len();
        let k = self.alphabet.len();
        if n == 0 {
            return bad("no control states".into());
        }
        for s in &self.states {
            if s.color > self.max_color {
                return bad(format!("state {} has color {} above {}", s.name, s.color, self.max_color));
            }
        }
        for (i, name) in self.alphabet.iter().enumerate() {
            if name.is_empty() || name == "-" || name.contains(['⊥', ':', '.', ' ']) {
                return bad(format!("bad symbol name {name:?}"));
            }
            if self.alphabet[..i].contains(name) {
                return bad(format!("duplicate symbol {name}"));
            }
        }
        for (i, s) in self.states.iter().enumerate() {
            if s.name.is_empty() || s.name.contains([':', ' ']) || self.states[..i].iter().any(|t| t.name == s.name) {
                return bad(format!("bad or duplicate state name {:?}", s.name));
            }
        }
        for t in &self.transitions {
            if t.from >= n || t.to >= n || t.top.is_some_and(|a| a >= k) {
                return bad(format!("transition {t:?} out of range"));
            }
            match t.action {
                Action::Push(b) if b >= k => return bad(format!("transition {t:?} pushes an unknown symbol")),
                Action::Pop if t.top.is_none() => return bad("the bottom symbol cannot be popped".into()),
                _ => {}
            }
        }
        Ok(())
    }

    /// One-step successors in transition order, duplicates removed.
    pub fn successors(&self, c: &Configuration) -> Vec<Configuration> {
        let top = c.top();
        let mut out: Vec<Configuration> = Vec::new();
        for t in &self.transitions {
            if t.from != c.state || t.top != top {
                continue;
            }
            let mut stack = c.stack.clone();
            match t.action {
                Action::Push(b) => stack.push(b),
                Action::Pop => {
                    stack.pop();
                }
                Action::Skip => {}
            }
            let next = Configuration::new(t.to, stack);
            if !out.contains(&next) {
                out.push(next);
            }
        }
        out
    }

    /// Prints `q:u⊥` with the top symbol leftmost. Symbols are separated by
    /// dots unless they all are single characters.
    pub fn format_configuration(&self, c: &Configuration) -> String {
        let sep = if self.alphabet.iter().all(|s| s.chars().count() == 1) { "" } else { "." };
        let word: Vec<&str> = c.stack.iter().rev().map(|&a| self.alphabet[a].as_str()).collect();
        let mut s = format!("{}:{}", self.states[c.state].name, word.join(sep));
        if !word.is_empty() && !sep.is_empty() {
            s.push_str(sep);
        }
        s.push('⊥');
        s
    }

    /// Inverse of [`format_configuration`](Self::format_configuration). The
    /// trailing `⊥` is optional.
    pub fn parse_configuration(&self, text: &str) -> Result<Configuration> {
        let err = |m: &str| Error::BadParams(format!("configuration {text:?}: {m}"));
        let (q, word) = text.trim().split_once(':').ok_or_else(|| err("expected q:u⊥"))?;
        let state = self.state_id(q).ok_or_else(|| err("unknown state"))?;
        let word = word.strip_suffix('⊥').unwrap_or(word);
        let word = word.strip_suffix('.').unwrap_or(word);
        let names: Vec<String> = if word.is_empty() {
            Vec::new()
        } else if self.alphabet.iter().all(|s| s.chars().count() == 1) {
            word.chars().filter(|&c| c != '.').map(String::from).collect()
        } else {
            word.split('.').map(str::to_string).collect()
        };
        let mut stack = names
            .iter()
            .map(|s| self.symbol_id(s).ok_or_else(|| err("unknown symbol")))
            .collect::<Result<Vec<_>>>()?;
        stack.reverse();
        Ok(Configuration::new(state, stack))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("pushdown {} maxcolor {}\n", self.name, self.max_color);
        if !self.alphabet.is_empty() {
            let _ = writeln!(s, "symbols {}", self.alphabet.join(" "));
        }
        for q in &self.states {
            let _ = writeln!(s, "state {} {} {}", q.name, q.owner, q.color);
        }
        let top = |t: Top| t.map_or("-", |a| self.alphabet[a].as_str());
        for t in &self.transitions {
            let (p, q) = (&self.states[t.from].name, &self.states[t.to].name);
            let _ = match t.action {
                Action::Push(b) => writeln!(s, "trans {p} {} push {} {q}", top(t.top), self.alphabet[b]),
                Action::Pop => writeln!(s, "trans {p} pop {} {q}", top(t.top)),
                Action::Skip => writeln!(s, "trans {p} {} skip {q}", top(t.top)),
            };
        }
        s
    }

    /// Parses the text format. Symbols are declared by an optional
    /// `symbols` line or on first use.
    pub fn parse(text: &str) -> Result<PushdownProcess> {
        let mut pd: Option<PushdownProcess> = None;
        let mut pending: Vec<(usize, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let Some(p) = pd.as_mut() else {
                if toks.len() != 4 || toks[0] != "pushdown" || toks[2] != "maxcolor" {
                    return Err(err("expected `pushdown <name> maxcolor <d>`"));
                }
                let d = toks[3].parse().map_err(|_| err("bad max color"))?;
                pd = Some(PushdownProcess::new(toks[1], d));
                continue;
            };
            match toks[0] {
                "symbols" => {
                    for s in &toks[1..] {
                        if p.symbol_id(s).is_none() {
                            p.add_symbol(*s);
                        }
                    }
                }
                "state" => {
                    if toks.len() != 4 {
                        return Err(err("expected `state <q> <E|A> <color>`"));
                    }
                    let owner = Player::from_letter(toks[2]).ok_or_else(|| err("owner must be E or A"))?;
                    let c = toks[3].parse().map_err(|_| err("bad color"))?;
                    if p.state_id(toks[1]).is_some() {
                        return Err(err("duplicate state"));
                    }
                    p.add_state(toks[1], owner, c);
                }
                "trans" => pending.push((line_no, toks.iter().map(|s| s.to_string()).collect())),
                _ => return Err(err("unknown directive")),
            }
        }
        let mut p = pd.ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        for (line, toks) in pending {
            let err = |msg: &str| Error::Parse {
                line,
                msg: msg.to_string(),
            };
            let state = |p: &PushdownProcess, s: &str| p.state_id(s).ok_or_else(|| err(&format!("unknown state {s}")));
            let sym = |p: &mut PushdownProcess, s: &str| p.symbol_id(s).unwrap_or_else(|| p.add_symbol(s));
            let top = |p: &mut PushdownProcess, s: &str| if s == "-" { None } else { Some(sym(p, s)) };
            match toks.len() {
                5 if toks[2] == "pop" => {
                    let (from, to) = (state(&p, &toks[1])?, state(&p, &toks[4])?);
                    if toks[3] == "-" {
                        return Err(err("the bottom symbol cannot be popped"));
                    }
                    let a = sym(&mut p, &toks[3]);
                    p.pop(from, a, to);
                }
                5 if toks[3] == "skip" => {
                    let (from, to) = (state(&p, &toks[1])?, state(&p, &toks[4])?);
                    let t = top(&mut p, &toks[2]);
                    p.skip(from, t, to);
                }
                6 if toks[3] == "push" => {
                    let (from, to) = (state(&p, &toks[1])?, state(&p, &toks[5])?);
                    let t = top(&mut p, &toks[2]);
                    if toks[4] == "-" {
                        return Err(err("the bottom symbol cannot be pushed"));
                    }
                    let b = sym(&mut p, &toks[4]);
                    p.push(from, t, b, to);
                }
                _ => return Err(err("malformed transition")),
            }
        }
        p.validate()?;
        Ok(p)
    }
}

impl fmt::Display for PushdownProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} states, {} symbols, {} transitions",
            self.name,
            self.states.len(),
            self.alphabet.len(),
            self.transitions.len()
        )
    }
}

#[cfg(test)]
mod tests;
