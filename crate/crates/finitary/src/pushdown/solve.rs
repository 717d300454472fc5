use super::{unfold_with, Configuration, OverflowPolicy, PushdownProcess, UnfoldResult};
use crate::condition::Condition;
use crate::error::Result;
use crate::solvers::{solve, SolveResult};
use std::fmt;
use std::ops::RangeInclusive;

/// Consecutive equal heights needed before a verdict counts as stable.
pub const DEFAULT_WINDOW: usize = 3;

#[derive(Clone, Debug)]
pub struct UnfoldedSolve {
    pub unfold: UnfoldResult,
    pub result: SolveResult,
    /// The vertex of the start configuration (always 0).
    pub start: usize,
    pub start_wins: bool,
}

/// Solves a condition, given by name, on the unfolding at `height` with
/// pushes beyond the bound losing for Eve. `F` is the color-0 set.
pub fn solve_unfolded(
    pd: &PushdownProcess,
    height: usize,
    start: &Configuration,
    condition: &str,
    n: Option<usize>,
) -> Result<UnfoldedSolve> {
    solve_unfolded_with(pd, height, start, condition, n, |_| OverflowPolicy::LoseEve)
}

pub fn solve_unfolded_with(
    pd: &PushdownProcess,
    height: usize,
    start: &Configuration,
    condition: &str,
    n: Option<usize>,
    policy: impl Fn(usize) -> OverflowPolicy,
) -> Result<UnfoldedSolve> {
    let unfold = unfold_with(pd, height, start, policy)?;
    let cond = Condition::from_name(&unfold.arena, condition, n, None)?;
    let result = solve(&unfold.arena, &cond)?;
    let start_wins = result.eve_region.contains(0);
    Ok(UnfoldedSolve {
        unfold,
        result,
        start: 0,
        start_wins,
    })
}

/// Values of an experiment over a range of heights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilization<T> {
    pub values: Vec<(usize, T)>,
    pub window: usize,
}

impl<T: Clone + PartialEq> Stabilization<T> {
    /// First height from which every value agrees with the last one.
    pub fn stable_from(&self) -> Option<usize> {
        let (_, last) = self.values.last()?;
        let run = self.values.iter().rev().take_while(|(_, v)| v == last).count();
        (run >= self.window).then(|| self.values[self.values.len() - run].0)
    }

    /// The last value, if the last `window` heights agree on it.
    pub fn stable(&self) -> Option<T> {
        self.stable_from()?;
        self.values.last().map(|(_, v)| v.clone())
    }
}

impl<T: fmt::Debug + Clone + PartialEq> fmt::Display for Stabilization<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (h, v) in &self.values {
            writeln!(f, "H={h}: {v:?}")?;
        }
        match self.stable_from() {
            Some(h) => write!(
                f,
                "stable from H={h} over a window of {} (a heuristic witness, not a proof)",
                self.window
            ),
            None => write!(f, "not stable over a window of {}", self.window),
        }
    }
}

/// Evaluates `f` at every height of the range, in order.
pub fn stabilize<T: Clone + PartialEq>(
    heights: RangeInclusive<usize>,
    window: usize,
    mut f: impl FnMut(usize) -> Result<T>,
) -> Result<Stabilization<T>> {
    let mut values = Vec::new();
    for h in heights {
        values.push((h, f(h)?));
    }
    Ok(Stabilization { values, window })
}
