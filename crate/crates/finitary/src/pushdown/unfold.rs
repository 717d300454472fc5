use super::{Configuration, PushdownProcess};
use crate::arena::{Arena, Player};
use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};

/// What happens to a push from a configuration at the height bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverflowPolicy {
    /// The push leads to an Adam-owned self-loop of color 1.
    LoseEve,
    /// The push leads to a self-loop of color 0.
    LoseAdam,
    /// The push is removed.
    Drop,
}

impl OverflowPolicy {
    pub fn name(self) -> &'static str {
        match self {
            OverflowPolicy::LoseEve => "lose-eve",
            OverflowPolicy::LoseAdam => "lose-adam",
            OverflowPolicy::Drop => "drop",
        }
    }

    pub fn from_name(s: &str) -> Option<OverflowPolicy> {
        match s {
            "lose-eve" => Some(OverflowPolicy::LoseEve),
            "lose-adam" => Some(OverflowPolicy::LoseAdam),
            "drop" => Some(OverflowPolicy::Drop),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct UnfoldResult {
    pub arena: Arena,
    /// Configuration of each vertex; `None` for overflow sinks.
    pub configs: Vec<Option<Configuration>>,
    index: HashMap<Configuration, usize>,
    /// The overflow sinks that were created.
    pub overflow: Vec<usize>,
    pub height: usize,
    /// Number of pushes removed under [`OverflowPolicy::Drop`].
    pub dropped: usize,
}

impl UnfoldResult {
    pub fn vertex(&self, c: &Configuration) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn config(&self, v: usize) -> Option<&Configuration> {
        self.configs[v].as_ref()
    }

    pub fn label(&self, pd: &PushdownProcess, v: usize) -> String {
        match &self.configs[v] {
            Some(c) => pd.format_configuration(c),
            None if self.arena.color(v) == 0 => "overflow(lose-adam)".into(),
            None => "overflow(lose-eve)".into(),
        }
    }
}

/// Unfolds the configurations reachable from `start` with stack height at
/// most `height`. Vertex 0 is `start`; ids follow breadth-first discovery.
pub fn unfold(pd: &PushdownProcess, height: usize, start: &Configuration, policy: OverflowPolicy) -> Result<UnfoldResult> {
    unfold_with(pd, height, start, |_| policy)
}

/// Like [`unfold`], with the policy chosen by the control state that pushes.
pub fn unfold_with(
    pd: &PushdownProcess,
    height: usize,
    start: &Configuration,
    policy: impl Fn(usize) -> OverflowPolicy,
) -> Result<UnfoldResult> {
    pd.validate()?;
    if start.state >= pd.num_states() || start.stack.iter().any(|&a| a >= pd.alphabet.len()) {
        return Err(Error::BadParams("start configuration out of range".into()));
    }
    if start.height() > height {
        return Err(Error::EmptyUnfolding);
    }
    let mut configs: Vec<Option<Configuration>> = vec![Some(start.clone())];
    let mut index = HashMap::from([(start.clone(), 0)]);
    let mut succs: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0]);
    let mut sinks: [Option<usize>; 2] = [None, None];
    let mut dropped = 0;
    while let Some(v) = queue.pop_front() {
        let c = configs[v].clone().expect("queued vertices are configurations");
        let next = pd.successors(&c);
        if next.is_empty() {
            return Err(Error::DeadEndConfiguration(pd.format_configuration(&c)));
        }
        let mut list = Vec::with_capacity(next.len());
        for n in next {
            let w = if n.height() > height {
                let slot = match policy(c.state) {
                    OverflowPolicy::Drop => {
                        dropped += 1;
                        continue;
                    }
                    OverflowPolicy::LoseEve => 0,
                    OverflowPolicy::LoseAdam => 1,
                };
                *sinks[slot].get_or_insert_with(|| {
                    configs.push(None);
                    succs.push(vec![configs.len() - 1]);
                    configs.len() - 1
                })
            } else if let Some(&w) = index.get(&n) {
                w
            } else {
                let w = configs.len();
                index.insert(n.clone(), w);
                configs.push(Some(n));
                succs.push(Vec::new());
                queue.push_back(w);
                w
            };
            if !list.contains(&w) {
                list.push(w);
            }
        }
        if list.is_empty() {
            return Err(Error::DeadEndConfiguration(format!(
                "{} (every move overflows)",
                pd.format_configuration(&c)
            )));
        }
        succs[v] = list;
    }
    let d = pd.max_color.max(1);
    let mut owner = Vec::with_capacity(configs.len());
    let mut color = Vec::with_capacity(configs.len());
    for (v, c) in configs.iter().enumerate() {
        match c {
            Some(c) => {
                owner.push(pd.states[c.state].owner);
                color.push(pd.states[c.state].color);
            }
            None => {
                owner.push(Player::Adam);
                color.push(if sinks[1] == Some(v) { 0 } else { 1 });
            }
        }
    }
    let overflow = sinks.iter().flatten().copied().collect();
    let arena = Arena::new(format!("{}@{height}", pd.name), owner, color, d, succs)?;
    Ok(UnfoldResult {
        arena,
        configs,
        index,
        overflow,
        height,
        dropped,
    })
}
