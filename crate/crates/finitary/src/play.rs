//! Plays, distance sequences and counter profiles.

use crate::arena::{Arena, Player};
use crate::error::{Error, Result};
use crate::strategy::Strategy;
use crate::vertex_set::VertexSet;

/// A finite play prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayPrefix {
    pub vertices: Vec<usize>,
    pub colors: Vec<u32>,
}

impl PlayPrefix {
    pub fn new(arena: &Arena, vertices: Vec<usize>) -> Result<PlayPrefix> {
        for w in vertices.windows(2) {
            if !arena.succ(w[0]).contains(&w[1]) {
                return Err(Error::InvalidStrategy(format!(
                    "{} -> {} is not an edge",
                    w[0], w[1]
                )));
            }
        }
        let colors = vertices.iter().map(|&v| arena.color(v)).collect();
        Ok(PlayPrefix { vertices, colors })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// `dist_k` for each position: steps to the next even color not above
/// `c(π_k)`. `None` means no answer inside the prefix.
pub fn distance_sequence(colors: &[u32]) -> Vec<Option<usize>> {
    let d = colors.iter().copied().max().unwrap_or(0) as usize;
    // next[e] = next position (from the current one on) of even color e
    let mut next: Vec<Option<usize>> = vec![None; d + 1];
    let mut out = vec![None; colors.len()];
    for k in (0..colors.len()).rev() {
        let c = colors[k] as usize;
        if c.is_multiple_of(2) {
            next[c] = Some(k);
        }
        out[k] = (0..=c)
            .step_by(2)
            .filter_map(|e| next[e])
            .min()
            .map(|k2| k2 - k);
    }
    out
}

/// Distances to the next vertex of `f`.
pub fn set_distances(vertices: &[usize], f: &VertexSet) -> Vec<Option<usize>> {
    let colors: Vec<u32> = vertices
        .iter()
        .map(|&v| if f.contains(v) { 0 } else { 1 })
        .collect();
    distance_sequence(&colors)
}

/// Counter action at one position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CounterAction {
    Skip,
    Incr,
    Reset,
}

impl CounterAction {
    pub fn symbol(self) -> char {
        match self {
            CounterAction::Skip => 'e',
            CounterAction::Incr => 'i',
            CounterAction::Reset => 'r',
        }
    }
}

/// One counter per odd color. A counter runs while a request of its color
/// is open and is reset when the request is answered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterProfile {
    pub odd_colors: Vec<u32>,
    /// `values[k][i]` is counter `i` after position `k`.
    pub values: Vec<Vec<usize>>,
    pub actions: Vec<Vec<CounterAction>>,
}

impl CounterProfile {
    pub fn from_colors(colors: &[u32]) -> CounterProfile {
        let mut odd: Vec<u32> = colors.iter().copied().filter(|c| c % 2 == 1).collect();
        odd.sort_unstable();
        odd.dedup();
        let mut open: Vec<Option<usize>> = vec![None; odd.len()];
        let mut values = Vec::with_capacity(colors.len());
        let mut actions = Vec::with_capacity(colors.len());
        for (k, &c) in colors.iter().enumerate() {
            let mut acts = vec![CounterAction::Skip; odd.len()];
            for (i, &o) in odd.iter().enumerate() {
                if open[i].is_some() {
                    if c % 2 == 0 && c < o {
                        open[i] = None;
                        acts[i] = CounterAction::Reset;
                    } else {
                        acts[i] = CounterAction::Incr;
                    }
                } else if c == o {
                    open[i] = Some(k);
                }
            }
            values.push(open.iter().map(|s| s.map_or(0, |s| k - s)).collect());
            actions.push(acts);
        }
        CounterProfile {
            odd_colors: odd,
            values,
            actions,
        }
    }

    /// Largest value reached by any counter.
    pub fn max_value(&self) -> usize {
        self.values
            .iter()
            .flat_map(|r| r.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

/// Outcome of [`simulate`].
#[derive(Clone, Debug)]
pub struct Simulation {
    pub prefix: PlayPrefix,
    pub dist: Vec<Option<usize>>,
    /// `true` where `dist` is `None` only because the prefix ended.
    pub censored: Vec<bool>,
    pub counters: CounterProfile,
}

/// The unique play of length `horizon` consistent with both strategies.
pub fn simulate(
    arena: &Arena,
    eve: &Strategy,
    adam: &Strategy,
    start: usize,
    horizon: usize,
) -> Result<Simulation> {
    if horizon == 0 {
        return Err(Error::BadParams("horizon must be at least 1".into()));
    }
    if eve.player != Player::Eve || adam.player != Player::Adam {
        return Err(Error::InvalidStrategy("strategy players swapped".into()));
    }
    eve.check(arena)?;
    adam.check(arena)?;
    let mut v = start;
    let mut me = eve.initial(v);
    let mut ma = adam.initial(v);
    let mut vertices = vec![v];
    while vertices.len() < horizon {
        let s = match arena.owner(v) {
            Player::Eve => eve.next_move(v, me),
            Player::Adam => adam.next_move(v, ma),
        }
        .ok_or_else(|| Error::InvalidStrategy(format!("no move at vertex {v}")))?;
        let e = arena.edge_id(v, s).expect("checked move");
        me = eve.update(me, e);
        ma = adam.update(ma, e);
        v = s;
        vertices.push(v);
    }
    let prefix = PlayPrefix::new(arena, vertices)?;
    let dist = distance_sequence(&prefix.colors);
    let censored = dist.iter().map(|d| d.is_none()).collect();
    let counters = CounterProfile::from_colors(&prefix.colors);
    Ok(Simulation {
        prefix,
        dist,
        censored,
        counters,
    })
}
