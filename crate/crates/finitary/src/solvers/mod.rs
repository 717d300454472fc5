//! Winning regions and strategies.

mod buchi_family;
mod classic;
mod parity_family;

pub use buchi_family::{
    minimal_uniform_bound, solve_bnd_uniform_buchi, solve_finitary_buchi, solve_uniform_buchi,
    DEFAULT_BOUND_CAP,
};
pub use classic::{buchi_for, solve_buchi, solve_cobuchi, solve_parity, solve_safety};
pub use parity_family::{solve_bnd_parity, solve_finitary_parity};

use crate::arena::{Arena, Player, SubArena};
use crate::condition::Condition;
use crate::error::Result;
use crate::strategy::Strategy;
use crate::vertex_set::VertexSet;

/// Fixpoint bookkeeping.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    /// Iterations of the outermost fixpoint.
    pub iterations: usize,
    /// Sizes of the slices, in discovery order.
    pub slices: Vec<usize>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub condition: Condition,
    pub eve_region: VertexSet,
    pub adam_region: VertexSet,
    pub eve_strategy: Option<Strategy>,
    pub adam_strategy: Option<Strategy>,
    pub trace: Trace,
}

impl SolveResult {
    pub fn region(&self, p: Player) -> &VertexSet {
        match p {
            Player::Eve => &self.eve_region,
            Player::Adam => &self.adam_region,
        }
    }

    pub fn strategy(&self, p: Player) -> Option<&Strategy> {
        match p {
            Player::Eve => self.eve_strategy.as_ref(),
            Player::Adam => self.adam_strategy.as_ref(),
        }
    }

    /// The line based text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("condition {}\n", self.condition);
        s.push_str(&format!("region E: {}\n", self.eve_region));
        s.push_str(&format!("region A: {}\n", self.adam_region));
        for st in [&self.eve_strategy, &self.adam_strategy].into_iter().flatten() {
            s.push_str(&st.to_text());
        }
        s.push_str(&format!("trace iterations {}", self.trace.iterations));
        if !self.trace.slices.is_empty() {
            let sl: Vec<String> = self.trace.slices.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!(" slices {}", sl.join(",")));
        }
        s.push('\n');
        for n in &self.trace.notes {
            s.push_str(&format!("note {n}\n"));
        }
        s
    }
}

/// Solves any supported condition.
pub fn solve(arena: &Arena, cond: &Condition) -> Result<SolveResult> {
    cond.check(arena)?;
    Ok(match cond {
        Condition::Safety(s) => solve_safety(arena, s),
        Condition::Buchi(f) => solve_buchi(arena, f),
        Condition::CoBuchi(f) => solve_cobuchi(arena, f),
        Condition::Parity => solve_parity(arena),
        Condition::BndUniformBuchi(f, n) => solve_bnd_uniform_buchi(arena, f, *n),
        Condition::UniformBuchi(f, n) => solve_uniform_buchi(arena, f, *n),
        Condition::FinitaryBuchi(f) => solve_finitary_buchi(arena, f),
        Condition::BndParity => solve_bnd_parity(arena),
        Condition::FinitaryParity => solve_finitary_parity(arena),
        Condition::CounterParity(_) => {
            return Err(crate::error::Error::BadParams(
                "counter-parity is a checking condition only".into(),
            ))
        }
    })
}

/// Gives every vertex of `player` without a move its first successor.
pub(crate) fn fill_moves(arena: &Arena, player: Player, moves: &mut [Option<usize>]) {
    for v in arena.vertices() {
        if arena.owner(v) == player && moves[v].is_none() {
            moves[v] = arena.succ(v).first().copied();
        }
    }
}

/// Moves of a subarena strategy, in base ids.
pub(crate) fn lift_moves(sub: &SubArena, moves: &[Option<usize>], into: &mut [Option<usize>]) {
    for (i, m) in moves.iter().enumerate() {
        if let Some(w) = m {
            into[sub.to_old[i]] = Some(sub.to_old[*w]);
        }
    }
}

/// Positional moves of a strategy known to be positional.
pub(crate) fn positional_moves(s: &Strategy) -> Vec<Option<usize>> {
    match &s.kind {
        crate::strategy::StrategyKind::Positional(m) => m.clone(),
        _ => panic!("expected a positional strategy"),
    }
}
