//! Memory structures and expanded arenas.

use crate::arena::Arena;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A deterministic automaton reading edges of an arena.
///
/// `update` is a flat table indexed by `state * num_edges + edge`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryStructure {
    num_states: usize,
    num_edges: usize,
    initial: Vec<usize>,
    update: Vec<usize>,
}

impl MemoryStructure {
    pub fn new(
        num_states: usize,
        num_edges: usize,
        initial: Vec<usize>,
        update: Vec<usize>,
    ) -> Result<Self> {
        let m = MemoryStructure {
            num_states,
            num_edges,
            initial,
            update,
        };
        if num_states == 0 {
            return Err(Error::InvalidStrategy("memory needs at least one state".into()));
        }
        if m.update.len() != num_states * num_edges {
            return Err(Error::InvalidStrategy("update table is not total".into()));
        }
        if m.update.iter().chain(m.initial.iter()).any(|&s| s >= num_states) {
            return Err(Error::InvalidStrategy("memory state out of range".into()));
        }
        Ok(m)
    }

    pub fn from_fn(
        arena: &Arena,
        num_states: usize,
        initial: impl Fn(usize) -> usize,
        update: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let ne = arena.num_edges();
        let mut table = Vec::with_capacity(num_states * ne);
        for m in 0..num_states {
            for e in 0..ne {
                table.push(update(m, e));
            }
        }
        MemoryStructure {
            num_states,
            num_edges: ne,
            initial: arena.vertices().map(initial).collect(),
            update: table,
        }
    }

    /// The one-state structure.
    pub fn trivial(arena: &Arena) -> Self {
        Self::from_fn(arena, 1, |_| 0, |_, _| 0)
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn initial(&self, v: usize) -> usize {
        self.initial[v]
    }

    pub fn initial_table(&self) -> &[usize] {
        &self.initial
    }

    pub fn update(&self, m: usize, edge: usize) -> usize {
        self.update[m * self.num_edges + edge]
    }

    pub fn fits(&self, arena: &Arena) -> bool {
        self.num_edges == arena.num_edges() && self.initial.len() == arena.num_vertices()
    }
}

/// Counts steps since the last visit to `f`, saturating at `n`.
pub fn step_counter_memory(arena: &Arena, f: &VertexSet, n: usize) -> MemoryStructure {
    MemoryStructure::from_fn(
        arena,
        n + 1,
        |_| 0,
        |i, e| {
            let (v, w) = (arena.edge_source(e), arena.edge_target(e));
            if f.contains(v) || f.contains(w) {
                0
            } else if i < n {
                i + 1
            } else {
                n
            }
        },
    )
}

/// Even bound used by the tracker: the max color, lifted by one when odd.
pub fn tracker_max_color(arena: &Arena) -> u32 {
    let d = arena.max_color();
    if d % 2 == 1 {
        d + 1
    } else {
        d
    }
}

/// Tracker state index to the color it stands for.
pub fn tracker_state_color(m: usize) -> u32 {
    2 * m as u32 + 1
}

/// Color to tracker state index. Odd `c` maps to `(c-1)/2`, the even bound `d` to `d/2`.
pub fn tracker_state_of(c: u32) -> usize {
    if c % 2 == 1 {
        ((c - 1) / 2) as usize
    } else {
        (c / 2) as usize
    }
}

/// Remembers the smallest open request. States are `1,3,..,d-1` and `d`,
/// indexed densely so that the state of color `c` is `c / 2`.
pub fn request_tracker_memory(arena: &Arena, d: u32) -> Result<MemoryStructure> {
    if d % 2 == 1 {
        return Err(Error::OddMaxColor(d));
    }
    let states = (d / 2 + 1) as usize;
    let value = |m: usize| -> u32 {
        if m == states - 1 {
            d
        } else {
            tracker_state_color(m)
        }
    };
    let step = |m: u32, c: u32| -> u32 {
        if c >= m {
            m
        } else if c % 2 == 1 {
            c
        } else {
            d
        }
    };
    Ok(MemoryStructure::from_fn(
        arena,
        states,
        |v| {
            let c = arena.color(v);
            tracker_state_of(if c % 2 == 1 { c } else { d })
        },
        |m, e| tracker_state_of(step(value(m), arena.color(arena.edge_target(e)))),
    ))
}

/// `arena × memory`. Without pruning, the vertex `(v, m)` has id `v * |M| + m`.
#[derive(Clone, Debug)]
pub struct ProductArena {
    pub arena: Arena,
    pub num_states: usize,
    pairs: Vec<(usize, usize)>,
    index: Vec<Option<usize>>,
}

impl ProductArena {
    pub fn build(base: &Arena, mem: &MemoryStructure, prune: bool) -> ProductArena {
        let k = mem.num_states();
        let n = base.num_vertices();
        let mut index = vec![None; n * k];
        let mut pairs = Vec::new();
        if prune {
            let mut stack = Vec::new();
            for v in base.vertices() {
                let p = v * k + mem.initial(v);
                if index[p].is_none() {
                    index[p] = Some(pairs.len());
                    pairs.push((v, mem.initial(v)));
                    stack.push((v, mem.initial(v)));
                }
            }
            while let Some((v, m)) = stack.pop() {
                for e in base.edges(v) {
                    let w = base.edge_target(e);
                    let m2 = mem.update(m, e);
                    let p = w * k + m2;
                    if index[p].is_none() {
                        index[p] = Some(pairs.len());
                        pairs.push((w, m2));
                        stack.push((w, m2));
                    }
                }
            }
        } else {
            for v in 0..n {
                for m in 0..k {
                    index[v * k + m] = Some(pairs.len());
                    pairs.push((v, m));
                }
            }
        }
        let mut owner = Vec::with_capacity(pairs.len());
        let mut color = Vec::with_capacity(pairs.len());
        let mut succs = Vec::with_capacity(pairs.len());
        for &(v, m) in &pairs {
            owner.push(base.owner(v));
            color.push(base.color(v));
            succs.push(
                base.edges(v)
                    .map(|e| {
                        let w = base.edge_target(e);
                        index[w * k + mem.update(m, e)].expect("closed under successors")
                    })
                    .collect(),
            );
        }
        let arena = Arena::from_parts(
            format!("{}-x{}", base.name(), k),
            owner,
            color,
            base.max_color(),
            succs,
        );
        ProductArena {
            arena,
            num_states: k,
            pairs,
            index,
        }
    }

    pub fn pair(&self, p: usize) -> (usize, usize) {
        self.pairs[p]
    }

    pub fn id(&self, v: usize, m: usize) -> Option<usize> {
        self.index[v * self.num_states + m]
    }

    /// Product vertices whose base vertex lies in `set`.
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_fn(self.arena.num_vertices(), |p| set.contains(self.pairs[p].0))
    }

    /// Product vertices `(v, m)` with `pred(v, m)`.
    pub fn select(&self, pred: impl Fn(usize, usize) -> bool) -> VertexSet {
        VertexSet::from_fn(self.arena.num_vertices(), |p| {
            let (v, m) = self.pairs[p];
            pred(v, m)
        })
    }

    /// Base vertices `v` such that `(v, initial(v))` is in `set`.
    pub fn project_initial(
        &self,
        base: &Arena,
        mem: &MemoryStructure,
        set: &VertexSet,
    ) -> VertexSet {
        VertexSet::from_fn(base.num_vertices(), |v| {
            self.id(v, mem.initial(v)).is_some_and(|p| set.contains(p))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::Player;

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
    fn counter_updates() {
        let a = fig3();
        let f = a.buchi_set();
        let m = step_counter_memory(&a, &f, 2);
        let e01 = a.edge_id(0, 1).unwrap();
        let e12 = a.edge_id(1, 2).unwrap();
        assert_eq!(m.update(0, e01), 0);
        assert_eq!(m.update(1, e12), 0);
        let line = Arena::buchi("l", vec![Player::Eve; 2], &[], vec![vec![1], vec![1]]).unwrap();
        let m = step_counter_memory(&line, &line.buchi_set(), 2);
        let e = line.edge_id(1, 1).unwrap();
        assert_eq!(m.update(2, e), 2);
        assert_eq!(m.update(1, e), 2);
    }

    #[test]
    fn tracker_updates() {
        // vertex i has color i
        let a = Arena::new(
            "c",
            vec![Player::Eve; 5],
            vec![0, 1, 2, 3, 4],
            4,
            vec![vec![1]; 5],
        )
        .unwrap();
        let m = request_tracker_memory(&a, 4).unwrap();
        assert_eq!(m.num_states(), 3);
        // edges all go to vertex 1 (color 1): from state 3 -> 1
        let e = a.edge_id(3, 1).unwrap();
        assert_eq!(m.update(tracker_state_of(3), e), tracker_state_of(1));
        // to color 0 from state 1 -> d
        let b = a.recolor(vec![0, 0, 0, 0, 0], 4);
        let mb = request_tracker_memory(&b, 4).unwrap();
        assert_eq!(mb.update(tracker_state_of(1), e), tracker_state_of(4));
        // c(v') = m keeps m
        assert_eq!(m.update(tracker_state_of(1), e), tracker_state_of(1));
        assert_eq!(m.initial(3), tracker_state_of(3));
        assert_eq!(m.initial(2), tracker_state_of(4));
        assert!(matches!(request_tracker_memory(&a, 3), Err(Error::OddMaxColor(3))));
    }

    #[test]
    fn product_shapes() {
        let a = fig3();
        let p = ProductArena::build(&a, &MemoryStructure::trivial(&a), false);
        assert_eq!(p.arena.num_vertices(), 3);
        for v in a.vertices() {
            assert_eq!(p.arena.succ(v), a.succ(v));
        }
        let m = step_counter_memory(&a, &a.buchi_set(), 1);
        let p = ProductArena::build(&a, &m, false);
        assert!(p.arena.num_vertices() <= 6);
        for q in p.arena.vertices() {
            assert_eq!(p.arena.out_degree(q), a.out_degree(p.pair(q).0));
        }
        assert!(p.arena.validate().is_empty());
        let pruned = ProductArena::build(&a, &m, true);
        assert!(pruned.arena.num_vertices() <= 6);
        assert!(pruned.arena.validate().is_empty());
    }
}
