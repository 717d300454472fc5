//! Checking strategies by cycle analysis of the graph of consistent plays.

use crate::arena::{Arena, Player};
use crate::condition::Condition;
use crate::error::{Error, Result};
use crate::graph::{Digraph, NodeLasso};
use crate::memory::{tracker_max_color, tracker_state_of, MemoryStructure};
use crate::play::{distance_sequence, set_distances};
use crate::strategy::Strategy;
use crate::vertex_set::VertexSet;
use std::collections::HashMap;
use std::fmt;

/// Plays consistent with a strategy, as a graph over `(vertex, memory)`.
#[derive(Clone, Debug)]
pub struct RestrictedGraph {
    pub nodes: Vec<(usize, usize)>,
    pub graph: Digraph,
    pub roots: Vec<usize>,
}

/// The strategy's player keeps the prescribed edge only; the opponent keeps all edges.
pub fn restrict_to_strategy(
    arena: &Arena,
    strategy: &Strategy,
    from: &VertexSet,
) -> Result<RestrictedGraph> {
    strategy.check(arena)?;
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut roots = Vec::new();
    let mut work = Vec::new();
    let mut intern = |key: (usize, usize),
                      nodes: &mut Vec<(usize, usize)>,
                      succ: &mut Vec<Vec<usize>>,
                      work: &mut Vec<usize>|
     -> usize {
        *index.entry(key).or_insert_with(|| {
            nodes.push(key);
            succ.push(Vec::new());
            work.push(nodes.len() - 1);
            nodes.len() - 1
        })
    };
    for v in from.iter() {
        let id = intern((v, strategy.initial(v)), &mut nodes, &mut succ, &mut work);
        if !roots.contains(&id) {
            roots.push(id);
        }
    }
    while let Some(i) = work.pop() {
        let (v, m) = nodes[i];
        let mut out = Vec::new();
        if arena.owner(v) == strategy.player {
            let w = strategy.next_move(v, m).ok_or_else(|| {
                Error::InvalidStrategy(format!("no move at vertex {v} in memory state {m}"))
            })?;
            let e = arena.edge_id(v, w).expect("checked move");
            out.push((w, strategy.update(m, e)));
        } else {
            for e in arena.edges(v) {
                out.push((arena.edge_target(e), strategy.update(m, e)));
            }
        }
        let ids: Vec<usize> = out
            .into_iter()
            .map(|k| intern(k, &mut nodes, &mut succ, &mut work))
            .collect();
        succ[i] = ids;
    }
    Ok(RestrictedGraph {
        nodes,
        graph: Digraph { succ },
        roots,
    })
}

/// A restricted graph synchronized with a deterministic monitor on vertices.
struct Monitored {
    /// (restricted node, monitor state)
    nodes: Vec<(usize, usize)>,
    graph: Digraph,
    roots: Vec<usize>,
}

fn monitor(
    rg: &RestrictedGraph,
    init: &dyn Fn(usize) -> usize,
    step: &dyn Fn(usize, usize) -> usize,
) -> Monitored {
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut nodes: Vec<(usize, usize)> = Vec::new();
    let mut roots = Vec::new();
    for &r in &rg.roots {
        let key = (r, init(rg.nodes[r].0));
        let id = *index.entry(key).or_insert_with(|| {
            nodes.push(key);
            nodes.len() - 1
        });
        roots.push(id);
    }
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut done = 0;
    while done < nodes.len() {
        let (r, s) = nodes[done];
        let mut out = Vec::new();
        for &r2 in &rg.graph.succ[r] {
            let key = (r2, step(s, rg.nodes[r2].0));
            let id = *index.entry(key).or_insert_with(|| {
                nodes.push(key);
                nodes.len() - 1
            });
            out.push(id);
        }
        succ.push(out);
        done += 1;
    }
    Monitored {
        nodes,
        graph: Digraph { succ },
        roots,
    }
}

/// A lasso counterexample over arena vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
    /// Position (in `stem · cycle · cycle`) of the largest distance.
    pub witness_pos: usize,
    /// `None` is an unanswered request.
    pub witness_dist: Option<usize>,
    /// A segment of the cycle that can be repeated to make distances grow.
    pub pump: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Counterexample),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

fn ids(v: &[usize]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "HOLDS"),
            Verdict::Fails(c) => {
                let d = c
                    .witness_dist
                    .map_or_else(|| "inf".to_string(), |d| d.to_string());
                write!(
                    f,
                    "FAILS stem={} cycle={} witness={},{}",
                    ids(&c.stem),
                    ids(&c.cycle),
                    c.witness_pos,
                    d
                )?;
                if let Some((a, b)) = c.pump {
                    write!(f, " pump={a}..{b}")?;
                }
                Ok(())
            }
        }
    }
}

/// Largest distance over `stem · cycle · cycle`, looking one more period ahead.
pub fn lasso_witness(
    arena: &Arena,
    cond: &Condition,
    stem: &[usize],
    cycle: &[usize],
) -> (usize, Option<usize>) {
    let mut seq = stem.to_vec();
    for _ in 0..3 {
        seq.extend_from_slice(cycle);
    }
    let dist = match cond.set() {
        Some(f) => set_distances(&seq, f),
        None => {
            let colors: Vec<u32> = seq.iter().map(|&v| arena.color(v)).collect();
            distance_sequence(&colors)
        }
    };
    let horizon = stem.len() + 2 * cycle.len();
    let mut best = (0, Some(0));
    for (k, d) in dist.iter().enumerate().take(horizon) {
        let better = match (d, best.1) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(x), Some(y)) => *x > y,
        };
        if better {
            best = (k, *d);
        }
    }
    best
}

/// The outcome sought in the play graph.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Want {
    Violating,
    Satisfying,
}

/// Decides whether all plays from `from` consistent with `strategy` satisfy
/// the condition (Eve) or violate it (Adam).
pub fn verify(
    arena: &Arena,
    strategy: &Strategy,
    cond: &Condition,
    from: &VertexSet,
) -> Result<Verdict> {
    cond.check(arena)?;
    let rg = restrict_to_strategy(arena, strategy, from)?;
    let want = match strategy.player {
        Player::Eve => Want::Violating,
        Player::Adam => Want::Satisfying,
    };
    Ok(match find_play(arena, &rg, cond, want) {
        None => Verdict::Holds,
        Some((stem, cycle, pump)) => {
            let (witness_pos, witness_dist) = lasso_witness(arena, cond, &stem, &cycle);
            Verdict::Fails(Counterexample {
                stem,
                cycle,
                witness_pos,
                witness_dist,
                pump,
            })
        }
    })
}

type Found = (Vec<usize>, Vec<usize>, Option<(usize, usize)>);

fn project(m: &Monitored, rg: &RestrictedGraph, l: NodeLasso) -> Found {
    let base = |i: usize| rg.nodes[m.nodes[i].0].0;
    (
        l.stem.into_iter().map(base).collect(),
        l.cycle.into_iter().map(base).collect(),
        None,
    )
}

fn find_play(arena: &Arena, rg: &RestrictedGraph, cond: &Condition, want: Want) -> Option<Found> {
    let any = |_: usize| true;
    match cond {
        Condition::Safety(s) => {
            let m = monitor(rg, &|_| 0, &|_, _| 0);
            let vert = |i: usize| rg.nodes[m.nodes[i].0].0;
            let inside = |i: usize| s.contains(vert(i));
            let l = match want {
                Want::Violating => m.graph.lasso_through(&m.roots, &any, &|i| !inside(i)),
                Want::Satisfying => m.graph.find_lasso(&m.roots, &inside, &inside, &any),
            };
            l.map(|l| project(&m, rg, l))
        }
        Condition::Buchi(f) | Condition::FinitaryBuchi(f) | Condition::CoBuchi(f) => {
            let m = monitor(rg, &|_| 0, &|_, _| 0);
            let vert = |i: usize| rg.nodes[m.nodes[i].0].0;
            let in_f = |i: usize| f.contains(vert(i));
            let not_f = |i: usize| !f.contains(vert(i));
            let buchi = !matches!(cond, Condition::CoBuchi(_));
            // a cycle through F satisfies Büchi; an F-free cycle satisfies CoBüchi
            let l = match (buchi, want) {
                (true, Want::Violating) | (false, Want::Satisfying) => {
                    m.graph.find_lasso(&m.roots, &any, &not_f, &any)
                }
                (true, Want::Satisfying) | (false, Want::Violating) => {
                    m.graph.find_lasso(&m.roots, &any, &any, &in_f)
                }
            };
            l.map(|l| project(&m, rg, l))
        }
        Condition::Parity => {
            let m = monitor(rg, &|_| 0, &|_, _| 0);
            let parity = match want {
                Want::Violating => 1,
                Want::Satisfying => 0,
            };
            min_color_cycle(arena, rg, &m, parity).map(|l| project(&m, rg, l))
        }
        Condition::BndUniformBuchi(f, n) | Condition::UniformBuchi(f, n) => {
            let cap = n + 1;
            let init = |v: usize| usize::from(!f.contains(v));
            let step = |c: usize, v: usize| {
                if f.contains(v) {
                    0
                } else {
                    (c + 1).min(cap)
                }
            };
            let m = monitor(rg, &init, &step);
            let high = |i: usize| m.nodes[i].1 == cap;
            let low = |i: usize| m.nodes[i].1 < cap;
            let bounded = matches!(cond, Condition::BndUniformBuchi(..));
            let l = match (bounded, want) {
                (true, Want::Violating) => m.graph.lasso_through(&m.roots, &any, &high),
                (true, Want::Satisfying) => m.graph.find_lasso(&m.roots, &low, &low, &any),
                (false, Want::Violating) => m.graph.find_lasso(&m.roots, &any, &any, &high),
                (false, Want::Satisfying) => m.graph.find_lasso(&m.roots, &any, &low, &any),
            };
            l.map(|l| project(&m, rg, l))
        }
        Condition::BndParity => {
            let d = tracker_max_color(arena);
            let top = tracker_state_of(d);
            let init = |v: usize| {
                let c = arena.color(v);
                tracker_state_of(if c % 2 == 1 { c } else { d })
            };
            let step = |s: usize, v: usize| {
                let m = if s == top { d } else { 2 * s as u32 + 1 };
                let c = arena.color(v);
                let next = if c >= m {
                    m
                } else if c % 2 == 1 {
                    c
                } else {
                    d
                };
                tracker_state_of(next)
            };
            let m = monitor(rg, &init, &step);
            let answered = |i: usize| m.nodes[i].1 == top;
            let pending = |i: usize| m.nodes[i].1 != top;
            let l = match want {
                Want::Violating => m.graph.find_lasso(&m.roots, &any, &pending, &any),
                Want::Satisfying => m.graph.find_lasso(&m.roots, &any, &any, &answered),
            };
            l.map(|l| project(&m, rg, l))
        }
        Condition::FinitaryParity => {
            let m = monitor(rg, &|_| 0, &|_, _| 0);
            match want {
                Want::Satisfying => min_color_cycle(arena, rg, &m, 0).map(|l| project(&m, rg, l)),
                Want::Violating => {
                    if let Some(l) = min_color_cycle(arena, rg, &m, 1) {
                        return Some(project(&m, rg, l));
                    }
                    pumping_lasso(arena, rg, &m)
                }
            }
        }
        Condition::CounterParity(n) => {
            let odd = arena.odd_colors();
            let mon = AgeMonitor::new(&odd, *n);
            let init = |v: usize| mon.init(arena.color(v));
            let step = |s: usize, v: usize| mon.step(s, arena.color(v));
            let m = monitor(rg, &init, &step);
            let bad = |i: usize| m.nodes[i].1 == mon.bad;
            let good = |i: usize| m.nodes[i].1 != mon.bad;
            let l = match want {
                Want::Violating => m.graph.lasso_through(&m.roots, &any, &bad),
                Want::Satisfying => m.graph.find_lasso(&m.roots, &good, &good, &any),
            };
            l.map(|l| project(&m, rg, l))
        }
    }
}

/// A reachable cycle whose least color has the given parity.
fn min_color_cycle(
    arena: &Arena,
    rg: &RestrictedGraph,
    m: &Monitored,
    parity: u32,
) -> Option<NodeLasso> {
    let color = |i: usize| arena.color(rg.nodes[m.nodes[i].0].0);
    let mut cols: Vec<u32> = (0..m.nodes.len()).map(color).collect();
    cols.sort_unstable();
    cols.dedup();
    for o in cols.into_iter().filter(|c| c % 2 == parity) {
        let l = m
            .graph
            .find_lasso(&m.roots, &|_| true, &|i| color(i) >= o, &|i| color(i) == o);
        if l.is_some() {
            return l;
        }
    }
    None
}

/// A cycle through a request `u` from which, without meeting an answer,
/// another cycle can be entered and repeated at will.
fn pumping_lasso(arena: &Arena, rg: &RestrictedGraph, m: &Monitored) -> Option<Found> {
    let n = m.nodes.len();
    let color = |i: usize| arena.color(rg.nodes[m.nodes[i].0].0);
    let (parent, order) = m.graph.bfs_order(&m.roots, &|_| true);
    let reach = |i: usize| parent[i].is_some();
    let (comp, count) = m.graph.sccs(&reach);
    let mut size = vec![0usize; count];
    for &c in &comp {
        if c != usize::MAX {
            size[c] += 1;
        }
    }
    let nontrivial = |i: usize| size[comp[i]] > 1 || m.graph.succ[i].contains(&i);
    let mut odd: Vec<u32> = (0..n).filter(|&i| reach(i)).map(color).filter(|c| c % 2 == 1).collect();
    odd.sort_unstable();
    odd.dedup();
    for o in odd {
        let quiet = |i: usize| reach(i) && !(color(i) % 2 == 0 && color(i) < o);
        let (sub, sub_count) = m.graph.sccs(&quiet);
        let mut sub_size = vec![0usize; sub_count];
        for &c in &sub {
            if c != usize::MAX {
                sub_size[c] += 1;
            }
        }
        let pumpable = |i: usize| {
            sub[i] != usize::MAX && (sub_size[sub[i]] > 1 || m.graph.succ[i].contains(&i))
        };
        for &u in &order {
            if color(u) != o || !nontrivial(u) {
                continue;
            }
            let c = comp[u];
            let zone = |i: usize| comp[i] == c && quiet(i);
            // shortest quiet path from u to a pumpable node of the same component
            let target = (0..n)
                .filter(|&x| comp[x] == c && pumpable(x))
                .filter_map(|x| {
                    if x == u {
                        Some((x, vec![u]))
                    } else {
                        m.graph.path_within(u, x, &zone).map(|p| (x, p))
                    }
                })
                .min_by_key(|(_, p)| p.len());
            let Some((x, to_x)) = target else { continue };
            let inner = m
                .graph
                .path_within(x, x, &|i| sub[i] == sub[x])
                .expect("pumpable");
            let back = if x == u {
                vec![u]
            } else {
                m.graph.path_within(x, u, &|i| comp[i] == c).expect("same component")
            };
            // cycle: u .. x (excl), inner loop at x, x .. u (excl)
            let mut cycle: Vec<usize> = to_x[..to_x.len() - 1].to_vec();
            let a = cycle.len();
            cycle.extend_from_slice(&inner);
            let b = cycle.len();
            cycle.extend_from_slice(&back[..back.len() - 1]);
            let stem = Digraph::path_to(&parent, u);
            let base = |i: usize| rg.nodes[m.nodes[i].0].0;
            return Some((
                stem.into_iter().map(base).collect(),
                cycle.into_iter().map(base).collect(),
                Some((a, b)),
            ));
        }
    }
    None
}

/// Ages of the oldest open request per odd color, capped; one absorbing bad state.
pub(crate) struct AgeMonitor {
    odd: Vec<u32>,
    n: usize,
    base: usize,
    pub(crate) bad: usize,
}

impl AgeMonitor {
    pub(crate) fn new(odd: &[u32], n: usize) -> Self {
        let base = n + 2;
        let bad = base.pow(odd.len() as u32);
        AgeMonitor {
            odd: odd.to_vec(),
            n,
            base,
            bad,
        }
    }

    fn decode(&self, mut s: usize) -> Vec<usize> {
        let mut out = vec![0; self.odd.len()];
        for slot in out.iter_mut() {
            *slot = s % self.base;
            s /= self.base;
        }
        out
    }

    fn encode(&self, ages: &[usize]) -> usize {
        ages.iter().rev().fold(0, |acc, &a| acc * self.base + a)
    }

    /// Slot value 0 is "closed", `a + 1` is "open for `a` steps".
    pub(crate) fn init(&self, c: u32) -> usize {
        let ages: Vec<usize> = self.odd.iter().map(|&o| usize::from(o == c)).collect();
        self.encode(&ages)
    }

    pub(crate) fn step(&self, s: usize, c: u32) -> usize {
        if s == self.bad {
            return s;
        }
        let mut ages = self.decode(s);
        for (slot, &o) in ages.iter_mut().zip(&self.odd) {
            if *slot > 0 {
                if c.is_multiple_of(2) && c < o {
                    *slot = 0;
                } else {
                    *slot += 1;
                    if *slot - 1 > self.n {
                        return self.bad;
                    }
                }
            } else if c == o {
                *slot = 1;
            }
        }
        self.encode(&ages)
    }
}

/// `strategy` with memory state `m` renamed `label[m]`; the new state `c`
/// behaves like the old state `rep[c]`.
fn quotient(arena: &Arena, strategy: &Strategy, label: &[usize], rep: &[usize]) -> Strategy {
    let k = rep.len();
    if k == 1 {
        let moves = arena.vertices().map(|v| strategy.next_move(v, rep[0])).collect();
        return Strategy::positional(strategy.player, moves);
    }
    let mem = MemoryStructure::from_fn(
        arena,
        k,
        |v| label[strategy.initial(v)],
        |c, e| label[strategy.update(rep[c], e)],
    );
    let mut next = vec![None; arena.num_vertices() * k];
    for v in arena.vertices() {
        if arena.owner(v) == strategy.player {
            for c in 0..k {
                next[v * k + c] = strategy.next_move(v, rep[c]);
            }
        }
    }
    Strategy::finite_memory(strategy.player, mem, next)
}

/// Greedily merges memory states of a winning strategy while it keeps
/// winning from `from`. Returns the strategy unchanged if it does not win.
pub fn minimize_memory(arena: &Arena, strategy: &Strategy, cond: &Condition, from: &VertexSet) -> Result<Strategy> {
    let mut best = strategy.clone();
    if best.is_positional() || !verify(arena, &best, cond, from)?.holds() {
        return Ok(best);
    }
    'outer: while best.memory_size() > 1 {
        let k = best.memory_size();
        for i in 0..k {
            for j in (0..k).filter(|&j| j != i) {
                // j is dropped and its transitions lead to i
                let rep: Vec<usize> = (0..k).filter(|&m| m != j).collect();
                let mut label = vec![0; k];
                for (c, &m) in rep.iter().enumerate() {
                    label[m] = c;
                }
                label[j] = label[i];
                let cand = quotient(arena, &best, &label, &rep);
                if verify(arena, &cand, cond, from)?.holds() {
                    best = cand;
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(best)
}
