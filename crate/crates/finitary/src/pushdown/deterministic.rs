use super::{Configuration, PushdownProcess, Top};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleKind {
    /// A configuration repeats.
    Flat,
    /// Same state and top symbol at a greater height, with the symbols below
    /// untouched in between.
    Increasing,
}

/// The unique run from a configuration, as a stem followed by a period
/// repeated forever.
#[derive(Clone, Debug)]
pub struct DeterministicRun {
    pub kind: CycleKind,
    pub stem: usize,
    pub period: usize,
    /// Height gained per period.
    pub climb: usize,
    /// Control states of the stem and of one period.
    pub states: Vec<usize>,
    pub heights: Vec<usize>,
    /// Sup over all positions of the distance to the next color-0 state;
    /// `None` when the period avoids color 0.
    pub max_gap: Option<usize>,
}

impl DeterministicRun {
    pub fn steps(&self) -> usize {
        self.stem + self.period
    }
}

/// Runs a deterministic process until its run provably repeats.
pub fn simulate_deterministic(pd: &PushdownProcess, start: &Configuration, max_steps: usize) -> Result<DeterministicRun> {
    pd.validate()?;
    let mut seen: HashMap<Configuration, usize> = HashMap::new();
    let mut states: Vec<usize> = Vec::new();
    let mut heights: Vec<usize> = Vec::new();
    // times whose height no later time has gone below, heights nondecreasing
    let mut floor: Vec<(usize, usize, usize, Top)> = Vec::new();
    let mut c = start.clone();
    for t in 0..=max_steps {
        if let Some(&t1) = seen.get(&c) {
            return Ok(finish(pd, CycleKind::Flat, t1, states, heights, 0));
        }
        let (h, top) = (c.height(), c.top());
        while floor.last().is_some_and(|e| e.0 > h) {
            floor.pop();
        }
        let hit = floor
            .iter()
            .find(|&&(h1, _, q, a)| h1 < h && q == c.state && a == top)
            .map(|&(h1, t1, _, _)| (t1, h - h1));
        if let Some((t1, climb)) = hit {
            return Ok(finish(pd, CycleKind::Increasing, t1, states, heights, climb));
        }
        floor.push((h, t, c.state, top));
        seen.insert(c.clone(), t);
        states.push(c.state);
        heights.push(h);
        let next = pd.successors(&c);
        c = match next.len() {
            1 => next.into_iter().next().unwrap(),
            0 => return Err(Error::DeadEndConfiguration(pd.format_configuration(&c))),
            _ => return Err(Error::Nondeterministic(pd.format_configuration(&c))),
        };
    }
    Err(Error::NoCycleWithinBudget(max_steps))
}

fn finish(pd: &PushdownProcess, kind: CycleKind, t1: usize, states: Vec<usize>, heights: Vec<usize>, climb: usize) -> DeterministicRun {
    let period = states.len() - t1;
    let is_f = |i: usize| pd.states[states[if i < states.len() { i } else { t1 + (i - t1) % period }]].color == 0;
    let max_gap = (t1..states.len()).any(is_f).then(|| {
        // distance to the next F position, scanning backwards over stem + two periods
        let len = states.len() + period;
        let mut next_f = None;
        let mut best = 0;
        for i in (0..len).rev() {
            if is_f(i) {
                next_f = Some(i);
            }
            if i < states.len() {
                best = best.max(next_f.expect("the period contains F") - i);
            }
        }
        best
    });
    DeterministicRun {
        kind,
        stem: t1,
        period,
        climb,
        states,
        heights,
        max_gap,
    }
}

/// `n² · k^(n·k + 1)`.
pub fn collapse_bound_upper(n: usize, k: usize) -> BigUint {
    let e = n
        .checked_mul(k)
        .and_then(|x| x.checked_add(1))
        .and_then(|x| u32::try_from(x).ok())
        .expect("exponent fits in 32 bits");
    let n = BigUint::from(n);
    &n * &n * BigUint::from(k).pow(e)
}

/// [`collapse_bound_upper`] when it fits in 64 bits.
pub fn collapse_bound_upper_u64(n: usize, k: usize) -> Result<u64> {
    u64::try_from(collapse_bound_upper(n, k)).map_err(|_| Error::Overflow(64))
}
