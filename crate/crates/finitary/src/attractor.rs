//! `Pre` and attractors, for either player, optionally inside a subarena.

use crate::arena::{Arena, Player};
use crate::vertex_set::VertexSet;
use std::collections::VecDeque;

/// Result of an attractor computation.
#[derive(Clone, Debug)]
pub struct Attractor {
    pub set: VertexSet,
    /// `rank[v]` is the least `k` with `v` in the `k`-th approximant.
    pub rank: Vec<Option<usize>>,
    /// Move for the attracting player's vertices of positive rank.
    pub strategy: Vec<Option<usize>>,
}

/// Controllable predecessors of `x` for `player`.
pub fn pre_for(arena: &Arena, player: Player, x: &VertexSet) -> VertexSet {
    VertexSet::from_fn(arena.num_vertices(), |u| {
        let s = arena.succ(u);
        if arena.owner(u) == player {
            s.iter().any(|&w| x.contains(w))
        } else {
            s.iter().all(|&w| x.contains(w))
        }
    })
}

/// Eve's `Pre`.
pub fn pre(arena: &Arena, x: &VertexSet) -> VertexSet {
    pre_for(arena, Player::Eve, x)
}

/// Attractor for `player` to `target`, computed inside `within`.
///
/// Vertices outside `within` are ignored: their edges do not count.
/// Ranks are exact: BFS processes approximant layers in order.
pub fn attractor_within(
    arena: &Arena,
    player: Player,
    target: &VertexSet,
    within: &VertexSet,
) -> Attractor {
    let n = arena.num_vertices();
    let mut rank: Vec<Option<usize>> = vec![None; n];
    let mut strategy = vec![None; n];
    let mut remaining: Vec<usize> = (0..n)
        .map(|v| arena.succ(v).iter().filter(|&&w| within.contains(w)).count())
        .collect();
    let mut queue = VecDeque::new();
    for v in target.iter() {
        if within.contains(v) {
            rank[v] = Some(0);
            queue.push_back(v);
        }
    }
    while let Some(w) = queue.pop_front() {
        let r = rank[w].unwrap();
        for &u in arena.pred(w) {
            if !within.contains(u) || rank[u].is_some() {
                continue;
            }
            if arena.owner(u) == player {
                rank[u] = Some(r + 1);
                queue.push_back(u);
            } else {
                remaining[u] -= 1;
                if remaining[u] == 0 {
                    rank[u] = Some(r + 1);
                    queue.push_back(u);
                }
            }
        }
    }
    for u in 0..n {
        if let Some(r) = rank[u] {
            if r > 0 && arena.owner(u) == player {
                strategy[u] = arena
                    .succ(u)
                    .iter()
                    .copied()
                    .find(|&w| within.contains(w) && rank[w].is_some_and(|rw| rw < r));
            }
        }
    }
    let set = VertexSet::from_fn(n, |v| rank[v].is_some());
    Attractor {
        set,
        rank,
        strategy,
    }
}

/// Eve's attractor in the whole arena.
pub fn attractor(arena: &Arena, target: &VertexSet) -> Attractor {
    attractor_within(arena, Player::Eve, target, &arena.full_set())
}

/// Adam's attractor in the whole arena.
pub fn adam_attractor(arena: &Arena, target: &VertexSet) -> Attractor {
    attractor_within(arena, Player::Adam, target, &arena.full_set())
}

/// The `n`-th approximant of Eve's attractor.
pub fn bounded_attractor(arena: &Arena, target: &VertexSet, n: usize) -> VertexSet {
    bounded_attractor_within(arena, Player::Eve, target, n, &arena.full_set())
}

pub fn bounded_attractor_within(
    arena: &Arena,
    player: Player,
    target: &VertexSet,
    n: usize,
    within: &VertexSet,
) -> VertexSet {
    let a = attractor_within(arena, player, target, within);
    VertexSet::from_fn(arena.num_vertices(), |v| a.rank[v].is_some_and(|r| r <= n))
}
