//! Strategies: positional maps and finite-memory strategies.

use crate::arena::{Arena, Player};
use crate::error::{Error, Result};
use crate::memory::MemoryStructure;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyKind {
    /// `moves[v]` for the player's vertices.
    Positional(Vec<Option<usize>>),
    /// `next[v * |M| + m]` for the player's vertices.
    FiniteMemory {
        memory: MemoryStructure,
        next: Vec<Option<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub player: Player,
    pub kind: StrategyKind,
}

impl Strategy {
    pub fn positional(player: Player, moves: Vec<Option<usize>>) -> Strategy {
        Strategy {
            player,
            kind: StrategyKind::Positional(moves),
        }
    }

    pub fn finite_memory(
        player: Player,
        memory: MemoryStructure,
        next: Vec<Option<usize>>,
    ) -> Strategy {
        Strategy {
            player,
            kind: StrategyKind::FiniteMemory { memory, next },
        }
    }

    /// Number of memory states; 1 for positional strategies.
    pub fn memory_size(&self) -> usize {
        match &self.kind {
            StrategyKind::Positional(_) => 1,
            StrategyKind::FiniteMemory { memory, .. } => memory.num_states(),
        }
    }

    /// True also for a finite-memory strategy with a single memory state.
    pub fn is_positional(&self) -> bool {
        self.memory_size() == 1
    }

    pub fn initial(&self, v: usize) -> usize {
        match &self.kind {
            StrategyKind::Positional(_) => 0,
            StrategyKind::FiniteMemory { memory, .. } => memory.initial(v),
        }
    }

    /// Memory after taking edge `e` in state `m`.
    pub fn update(&self, m: usize, e: usize) -> usize {
        match &self.kind {
            StrategyKind::Positional(_) => 0,
            StrategyKind::FiniteMemory { memory, .. } => memory.update(m, e),
        }
    }

    pub fn next_move(&self, v: usize, m: usize) -> Option<usize> {
        match &self.kind {
            StrategyKind::Positional(moves) => moves.get(v).copied().flatten(),
            StrategyKind::FiniteMemory { memory, next } => {
                next.get(v * memory.num_states() + m).copied().flatten()
            }
        }
    }

    /// Checks that every prescribed move follows an edge and that tables fit.
    pub fn check(&self, arena: &Arena) -> Result<()> {
        let k = self.memory_size();
        let table_len = match &self.kind {
            StrategyKind::Positional(m) => m.len(),
            StrategyKind::FiniteMemory { memory, next } => {
                if !memory.fits(arena) {
                    return Err(Error::InvalidStrategy(
                        "memory structure does not match the arena".into(),
                    ));
                }
                next.len() / k
            }
        };
        if table_len != arena.num_vertices() {
            return Err(Error::InvalidStrategy(format!(
                "move table covers {table_len} vertices, arena has {}",
                arena.num_vertices()
            )));
        }
        for v in arena.vertices() {
            for m in 0..k {
                if let Some(w) = self.next_move(v, m) {
                    if arena.owner(v) != self.player {
                        return Err(Error::InvalidStrategy(format!(
                            "move prescribed at opponent vertex {v}"
                        )));
                    }
                    if !arena.succ(v).contains(&w) {
                        return Err(Error::InvalidStrategy(format!(
                            "illegal move {v}->{w}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Lines of the strategy text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match &self.kind {
            StrategyKind::Positional(moves) => {
                let _ = write!(s, "strategy {} positional:", self.player);
                for (v, w) in moves.iter().enumerate() {
                    if let Some(w) = w {
                        let _ = write!(s, " {v}->{w}");
                    }
                }
                s.push('\n');
            }
            StrategyKind::FiniteMemory { memory, next } => {
                let k = memory.num_states();
                let _ = write!(s, "strategy {} memory {}:", self.player, k);
                for (i, w) in next.iter().enumerate() {
                    if let Some(w) = w {
                        let _ = write!(s, " ({},{})->{}", i / k, i % k, w);
                    }
                }
                s.push('\n');
                let init: Vec<String> =
                    memory.initial_table().iter().map(|m| m.to_string()).collect();
                let _ = writeln!(s, "initial: {}", init.join(","));
                for m in 0..k {
                    let row: Vec<String> = (0..memory.num_edges())
                        .map(|e| memory.update(m, e).to_string())
                        .collect();
                    let _ = writeln!(s, "update {m}: {}", row.join(","));
                }
            }
        }
        s
    }

    /// Parses the text produced by [`Strategy::to_text`].
    pub fn parse(arena: &Arena, text: &str) -> Result<Strategy> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let perr = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let (ln, head) = *lines.first().ok_or_else(|| perr(0, "empty strategy"))?;
        let (lhs, rhs) = head
            .split_once(':')
            .ok_or_else(|| perr(ln, "missing ':'"))?;
        let toks: Vec<&str> = lhs.split_whitespace().collect();
        if toks.len() < 3 || toks[0] != "strategy" {
            return Err(perr(ln, "expected `strategy <E|A> ...`"));
        }
        let player = Player::from_letter(toks[1]).ok_or_else(|| perr(ln, "bad player"))?;
        let n = arena.num_vertices();
        let pair = |s: &str| -> Option<(String, usize)> {
            let (a, b) = s.split_once("->")?;
            Some((a.to_string(), b.parse().ok()?))
        };
        let strat = match toks[2] {
            "positional" => {
                let mut moves = vec![None; n];
                for t in rhs.split_whitespace() {
                    let (a, w) = pair(t).ok_or_else(|| perr(ln, "bad move"))?;
                    let v: usize = a.parse().map_err(|_| perr(ln, "bad vertex"))?;
                    if v >= n {
                        return Err(perr(ln, "vertex out of range"));
                    }
                    moves[v] = Some(w);
                }
                Strategy::positional(player, moves)
            }
            "memory" => {
                let k: usize = toks
                    .get(3)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| perr(ln, "bad memory size"))?;
                if k == 0 {
                    return Err(perr(ln, "memory size must be positive"));
                }
                let mut next = vec![None; n * k];
                for t in rhs.split_whitespace() {
                    let (a, w) = pair(t).ok_or_else(|| perr(ln, "bad move"))?;
                    let inner = a
                        .strip_prefix('(')
                        .and_then(|x| x.strip_suffix(')'))
                        .ok_or_else(|| perr(ln, "bad (v,m)"))?;
                    let (vs, ms) = inner.split_once(',').ok_or_else(|| perr(ln, "bad (v,m)"))?;
                    let v: usize = vs.parse().map_err(|_| perr(ln, "bad vertex"))?;
                    let m: usize = ms.parse().map_err(|_| perr(ln, "bad state"))?;
                    if v >= n || m >= k {
                        return Err(perr(ln, "(v,m) out of range"));
                    }
                    next[v * k + m] = Some(w);
                }
                let nums = |line: usize, s: &str| -> Result<Vec<usize>> {
                    s.split(',')
                        .map(|x| x.trim().parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| perr(line, "bad number list"))
                };
                let mut initial = None;
                let mut update = vec![None; k];
                for &(l, line) in &lines[1..] {
                    let (tag, rest) = line.split_once(':').ok_or_else(|| perr(l, "missing ':'"))?;
                    let tag = tag.trim();
                    if tag == "initial" {
                        initial = Some(nums(l, rest.trim())?);
                    } else if let Some(m) = tag.strip_prefix("update ") {
                        let m: usize = m.trim().parse().map_err(|_| perr(l, "bad state"))?;
                        if m >= k {
                            return Err(perr(l, "state out of range"));
                        }
                        update[m] = Some(nums(l, rest.trim())?);
                    } else {
                        return Err(perr(l, "unexpected line"));
                    }
                }
                let initial = initial.ok_or_else(|| perr(ln, "missing initial line"))?;
                let mut table = Vec::new();
                for row in update {
                    table.extend(row.ok_or_else(|| perr(ln, "missing update row"))?);
                }
                let memory = MemoryStructure::new(k, arena.num_edges(), initial, table)?;
                Strategy::finite_memory(player, memory, next)
            }
            _ => return Err(perr(ln, "expected positional or memory")),
        };
        strat.check(arena)?;
        Ok(strat)
    }
}

/// Mixed-radix counter used by the enumerators.
#[derive(Clone, Debug)]
pub(crate) struct Odometer {
    radix: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl Odometer {
    pub(crate) fn new(radix: Vec<usize>) -> Self {
        let done = radix.contains(&0);
        Odometer {
            digits: vec![0; radix.len()],
            radix,
            done,
        }
    }

    pub(crate) fn next_digits(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        let mut i = 0;
        loop {
            if i == self.radix.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.radix[i] {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Size of a strategy space as a decimal string, or `None` if it fits `cap`.
fn space_exceeds(radix: &[usize], cap: u128) -> Option<String> {
    let mut total: u128 = 1;
    for &r in radix {
        total = total.saturating_mul(r as u128);
        if total > cap {
            let big = radix
                .iter()
                .fold(num_bigint::BigUint::from(1u32), |acc, &r| acc * r);
            return Some(big.to_string());
        }
    }
    None
}

/// Default bound on enumerated strategy spaces.
pub const ENUMERATION_CAP: u128 = 5_000_000;

/// All positional strategies (`memory_size == 1`), or all strategies over
/// `memory_size` states with initial state 0 and arbitrary update and
/// next-move tables.
pub fn enumerate_strategies(
    arena: &Arena,
    player: Player,
    memory_size: usize,
) -> Result<Box<dyn Iterator<Item = Strategy> + '_>> {
    enumerate_strategies_capped(arena, player, memory_size, ENUMERATION_CAP)
}

pub fn enumerate_strategies_capped(
    arena: &Arena,
    player: Player,
    memory_size: usize,
    cap: u128,
) -> Result<Box<dyn Iterator<Item = Strategy> + '_>> {
    if memory_size == 0 {
        return Err(Error::BadParams("memory size must be at least 1".into()));
    }
    let owned: Vec<usize> = arena.vertices().filter(|&v| arena.owner(v) == player).collect();
    let k = memory_size;
    let mut radix: Vec<usize> = Vec::new();
    for &v in &owned {
        for _ in 0..k {
            radix.push(arena.out_degree(v));
        }
    }
    let moves_len = radix.len();
    if k > 1 {
        radix.extend(std::iter::repeat_n(k, k * arena.num_edges()));
    }
    if let Some(size) = space_exceeds(&radix, cap) {
        return Err(Error::SpaceTooLarge(size));
    }
    let mut odo = Odometer::new(radix);
    let n = arena.num_vertices();
    Ok(Box::new(std::iter::from_fn(move || {
        let d = odo.next_digits()?;
        let mut next = vec![None; n * k];
        for (i, &v) in owned.iter().enumerate() {
            for m in 0..k {
                next[v * k + m] = Some(arena.succ(v)[d[i * k + m]]);
            }
        }
        if k == 1 {
            return Some(Strategy::positional(player, next));
        }
        let memory = MemoryStructure::new(k, arena.num_edges(), vec![0; n], d[moves_len..].to_vec())
            .expect("enumerated tables are total");
        Some(Strategy::finite_memory(player, memory, next))
    })))
}

/// Number of positional strategies for `player`.
pub fn positional_count(arena: &Arena, player: Player) -> num_bigint::BigUint {
    arena
        .vertices()
        .filter(|&v| arena.owner(v) == player)
        .fold(num_bigint::BigUint::from(1u32), |acc, v| acc * arena.out_degree(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> Arena {
        Arena::buchi(
            "fig3",
            vec![Player::Adam; 3],
            &[0, 2],
            vec![vec![0, 1], vec![2], vec![2]],
        )
        .unwrap()
    }

    #[test]
    fn enumerate_counts() {
        let a = Arena::buchi("x", vec![Player::Eve], &[0], vec![vec![0, 0]]).unwrap();
        assert_eq!(enumerate_strategies(&a, Player::Eve, 1).unwrap().count(), 2);
        assert_eq!(enumerate_strategies(&fig3(), Player::Eve, 1).unwrap().count(), 1);
        assert_eq!(enumerate_strategies(&fig3(), Player::Adam, 1).unwrap().count(), 2);
        // 2 states: moves 2^2 per Adam vertex with 2 succ, updates 2^(2*4)
        let c = enumerate_strategies(&fig3(), Player::Adam, 2).unwrap().count();
        assert_eq!(c, 4 * 256);
        assert!(matches!(
            enumerate_strategies_capped(&fig3(), Player::Adam, 3, 10),
            Err(Error::SpaceTooLarge(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let a = fig3();
        let s = Strategy::positional(Player::Adam, vec![Some(1), Some(2), Some(2)]);
        assert_eq!(s.to_text(), "strategy A positional: 0->1 1->2 2->2\n");
        assert_eq!(Strategy::parse(&a, &s.to_text()).unwrap(), s);
        for s in enumerate_strategies(&a, Player::Adam, 2).unwrap().step_by(97) {
            assert_eq!(Strategy::parse(&a, &s.to_text()).unwrap(), s);
        }
    }

    #[test]
    fn illegal_moves_rejected() {
        let a = fig3();
        let s = Strategy::positional(Player::Adam, vec![Some(2), None, None]);
        assert!(s.check(&a).is_err());
        let s = Strategy::positional(Player::Eve, vec![Some(0), None, None]);
        assert!(s.check(&a).is_err());
    }
}
