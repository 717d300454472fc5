//! Brute-force reference solver for tiny arenas.
//!
//! Regions come from exhaustive search over Eve's positional strategies on
//! the arena times a small monitor (a step counter or a request tracker).
//! For a fixed Eve strategy the remaining one-player game is decided by
//! reachability closures on the restricted graph. Nothing here calls into
//! the fixpoint solvers.

use crate::arena::{Arena, Player};
use crate::condition::Condition;
use crate::error::{Error, Result};
use crate::memory::MemoryStructure;
use crate::strategy::Strategy;
use crate::verify::verify;
use crate::vertex_set::VertexSet;
use std::collections::HashMap;

/// Limits checked before and during enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_memory: usize,
    /// Complete strategies examined per search.
    pub max_space: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 16,
            max_memory: 4,
            max_space: 5_000_000,
        }
    }
}

/// The oracle's own observation automata, indexed by target vertex.
enum Monitor {
    Trivial,
    /// Consecutive positions outside `f`, capped at `cap`.
    Steps { f: VertexSet, cap: usize },
    /// Smallest pending odd color, `none` when nothing is pending.
    Pending { none: usize },
}

impl Monitor {
    fn for_condition(arena: &Arena, cond: &Condition) -> Monitor {
        match cond {
            Condition::BndUniformBuchi(f, n) | Condition::UniformBuchi(f, n) => Monitor::Steps {
                f: f.clone(),
                cap: n + 1,
            },
            Condition::BndParity | Condition::FinitaryParity => Monitor::Pending {
                none: arena.max_color() as usize + 1,
            },
            _ => Monitor::Trivial,
        }
    }

    fn init(&self, arena: &Arena, v: usize) -> usize {
        match self {
            Monitor::Trivial => 0,
            Monitor::Steps { f, .. } => usize::from(!f.contains(v)),
            Monitor::Pending { none } => {
                let c = arena.color(v) as usize;
                if c % 2 == 1 {
                    c
                } else {
                    *none
                }
            }
        }
    }

    fn step(&self, arena: &Arena, s: usize, w: usize) -> usize {
        match self {
            Monitor::Trivial => 0,
            Monitor::Steps { f, cap } => {
                if f.contains(w) {
                    0
                } else {
                    (s + 1).min(*cap)
                }
            }
            Monitor::Pending { none } => {
                let c = arena.color(w) as usize;
                match (c.is_multiple_of(2), s == *none) {
                    (true, false) if c < s => *none,
                    (true, _) => s,
                    (false, true) => c,
                    (false, false) => s.min(c),
                }
            }
        }
    }
}

/// The explored part of a restricted graph.
struct Explored {
    nodes: Vec<(usize, usize)>,
    succ: Vec<Vec<usize>>,
}

impl Explored {
    /// `reach[i][j]`: a path of length at least one from `i` to `j` inside `ok`.
    fn closure(&self, ok: &dyn Fn(usize) -> bool) -> Vec<Vec<bool>> {
        let n = self.nodes.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            if !ok(i) {
                continue;
            }
            let mut stack: Vec<usize> = self.succ[i].iter().copied().filter(|&j| ok(j)).collect();
            while let Some(j) = stack.pop() {
                if row[j] {
                    continue;
                }
                row[j] = true;
                stack.extend(self.succ[j].iter().copied().filter(|&k| ok(k) && !row[k]));
            }
        }
        reach
    }

    fn has_cycle_in(&self, ok: &dyn Fn(usize) -> bool) -> bool {
        let r = self.closure(ok);
        (0..self.nodes.len()).any(|i| r[i][i])
    }

    /// A reachable cycle through some node with `mark`.
    fn has_cycle_through(&self, mark: &dyn Fn(usize) -> bool) -> bool {
        let r = self.closure(&|_| true);
        (0..self.nodes.len()).any(|i| mark(i) && r[i][i])
    }

    /// Adam can keep a request of color `o` open for arbitrarily long, again and again.
    fn has_pumpable_request(&self, arena: &Arena) -> bool {
        let r = self.closure(&|_| true);
        let n = self.nodes.len();
        for u in 0..n {
            let o = arena.color(self.nodes[u].0);
            if o.is_multiple_of(2) || !r[u][u] {
                continue;
            }
            let open = |j: usize| {
                let c = arena.color(self.nodes[j].0);
                (c % 2 == 1 || c > o) && r[u][j] && r[j][u]
            };
            let inner = self.closure(&open);
            if (0..n).any(|w| (w == u || inner[u][w]) && inner[w][w]) {
                return true;
            }
        }
        false
    }
}

/// Some play of the explored graph violates `cond`. Every node counts as
/// reachable because exploration starts at the roots.
fn violated(arena: &Arena, cond: &Condition, g: &Explored, mon: &Monitor) -> bool {
    let vert = |i: usize| g.nodes[i].0;
    let state = |i: usize| g.nodes[i].1;
    match cond {
        Condition::Safety(s) => (0..g.nodes.len()).any(|i| !s.contains(vert(i))),
        Condition::Buchi(f) | Condition::FinitaryBuchi(f) => g.has_cycle_in(&|i| !f.contains(vert(i))),
        Condition::CoBuchi(f) => g.has_cycle_through(&|i| f.contains(vert(i))),
        Condition::Parity => {
            let r = g.closure(&|_| true);
            (0..g.nodes.len()).any(|i| {
                let o = arena.color(vert(i));
                o % 2 == 1 && r[i][i] && {
                    let low = g.closure(&|j| arena.color(vert(j)) >= o);
                    low[i][i]
                }
            })
        }
        Condition::BndUniformBuchi(_, n) => (0..g.nodes.len()).any(|i| state(i) == n + 1),
        Condition::UniformBuchi(_, n) => g.has_cycle_through(&|i| state(i) == n + 1),
        Condition::BndParity => {
            let Monitor::Pending { none } = mon else { unreachable!() };
            g.has_cycle_in(&|i| state(i) != *none)
        }
        Condition::FinitaryParity => g.has_pumpable_request(arena),
        Condition::CounterParity(_) => unreachable!("rejected earlier"),
    }
}

/// Depth-first search over Eve's positional strategies on the arena times
/// the monitor, assigning moves only where the play graph reaches.
struct RegionSearch<'a> {
    arena: &'a Arena,
    cond: &'a Condition,
    mon: Monitor,
    choice: HashMap<(usize, usize), usize>,
    leaves: u64,
    budget: u64,
}

enum Step {
    Done(Explored),
    Open((usize, usize), Explored),
}

impl RegionSearch<'_> {
    fn explore(&self, root: (usize, usize)) -> Step {
        let mut index = HashMap::new();
        let mut g = Explored {
            nodes: vec![root],
            succ: vec![Vec::new()],
        };
        index.insert(root, 0);
        let mut open = None;
        let mut i = 0;
        while i < g.nodes.len() {
            let (v, s) = g.nodes[i];
            let targets: Vec<usize> = match self.arena.owner(v) {
                Player::Adam => self.arena.succ(v).to_vec(),
                Player::Eve => match self.choice.get(&(v, s)) {
                    Some(&k) => vec![self.arena.succ(v)[k]],
                    None => {
                        open.get_or_insert((v, s));
                        Vec::new()
                    }
                },
            };
            for w in targets {
                let key = (w, self.mon.step(self.arena, s, w));
                let j = *index.entry(key).or_insert_with(|| {
                    g.nodes.push(key);
                    g.succ.push(Vec::new());
                    g.nodes.len() - 1
                });
                g.succ[i].push(j);
            }
            i += 1;
        }
        match open {
            None => Step::Done(g),
            Some(k) => Step::Open(k, g),
        }
    }

    fn wins(&mut self, root: (usize, usize)) -> Result<bool> {
        match self.explore(root) {
            Step::Done(g) => {
                self.leaves += 1;
                if self.leaves > self.budget {
                    return Err(Error::BudgetExceeded(format!(
                        "more than {} strategies",
                        self.budget
                    )));
                }
                Ok(!violated(self.arena, self.cond, &g, &self.mon))
            }
            Step::Open(key, g) => {
                // plays already fixed stay in every completion
                if violated(self.arena, self.cond, &g, &self.mon) {
                    return Ok(false);
                }
                for k in 0..self.arena.out_degree(key.0) {
                    self.choice.insert(key, k);
                    if self.wins(root)? {
                        self.choice.remove(&key);
                        return Ok(true);
                    }
                }
                self.choice.remove(&key);
                Ok(false)
            }
        }
    }
}

pub fn oracle_region(arena: &Arena, cond: &Condition) -> Result<VertexSet> {
    oracle_region_with(arena, cond, &OracleBudget::default())
}

pub fn oracle_region_with(arena: &Arena, cond: &Condition, budget: &OracleBudget) -> Result<VertexSet> {
    cond.check(arena)?;
    if matches!(cond, Condition::CounterParity(_)) {
        return Err(Error::BadParams("the oracle covers the solvable conditions only".into()));
    }
    if arena.num_vertices() > budget.max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "{} vertices, at most {}",
            arena.num_vertices(),
            budget.max_vertices
        )));
    }
    let mut search = RegionSearch {
        arena,
        cond,
        mon: Monitor::for_condition(arena, cond),
        choice: HashMap::new(),
        leaves: 0,
        budget: budget.max_space,
    };
    let mut out = VertexSet::empty(arena.num_vertices());
    for v in arena.vertices() {
        search.choice.clear();
        let root = (v, search.mon.init(arena, v));
        if search.wins(root)? {
            out.insert(v);
        }
    }
    Ok(out)
}

/// Partial strategy tables explored by [`oracle_min_memory`]. Memory changes
/// only along edges leaving vertices with a choice; other edges keep it.
struct MemorySearch<'a> {
    arena: &'a Arena,
    player: Player,
    cond: &'a Condition,
    from: &'a VertexSet,
    k: usize,
    init: HashMap<usize, usize>,
    update: HashMap<(usize, usize), usize>,
    next: HashMap<(usize, usize), usize>,
    leaves: u64,
    budget: u64,
}

#[derive(Clone, Copy)]
enum Entry {
    Init(usize),
    Update(usize, usize),
    Next(usize, usize),
}

impl MemorySearch<'_> {
    fn branching(&self, v: usize) -> bool {
        self.arena.out_degree(v) > 1
    }

    fn step(&self, m: usize, e: usize) -> Option<usize> {
        if self.branching(self.arena.edge_source(e)) {
            self.update.get(&(m, e)).copied()
        } else {
            Some(m)
        }
    }

    /// First unassigned entry met by the plays, if any.
    fn open_entry(&self) -> Option<Entry> {
        let mut seen = std::collections::HashSet::new();
        let mut stack = Vec::new();
        for v in self.from.iter() {
            match self.init.get(&v) {
                Some(&m) => stack.push((v, m)),
                None => return Some(Entry::Init(v)),
            }
        }
        while let Some((v, m)) = stack.pop() {
            if !seen.insert((v, m)) {
                continue;
            }
            let edges: Vec<usize> = if self.arena.owner(v) == self.player && self.branching(v) {
                match self.next.get(&(v, m)) {
                    Some(&w) => vec![self.arena.edge_id(v, w).unwrap()],
                    None => return Some(Entry::Next(v, m)),
                }
            } else {
                self.arena.edges(v).collect()
            };
            for e in edges {
                match self.step(m, e) {
                    Some(m2) => stack.push((self.arena.edge_target(e), m2)),
                    None => return Some(Entry::Update(m, e)),
                }
            }
        }
        None
    }

    fn strategy(&self) -> Strategy {
        let (a, k) = (self.arena, self.k);
        let memory = MemoryStructure::from_fn(
            a,
            k,
            |v| self.init.get(&v).copied().unwrap_or(0),
            |m, e| self.step(m, e).unwrap_or(0),
        );
        let mut next = vec![None; a.num_vertices() * k];
        for v in a.vertices() {
            if a.owner(v) != self.player {
                continue;
            }
            for m in 0..k {
                next[v * k + m] = if self.branching(v) {
                    self.next.get(&(v, m)).copied().or(Some(a.succ(v)[0]))
                } else {
                    Some(a.succ(v)[0])
                };
            }
        }
        Strategy::finite_memory(self.player, memory, next)
    }

    /// Largest memory state used so far; new states are introduced in order.
    fn fresh_limit(&self) -> usize {
        let used = self.init.values().chain(self.update.values()).copied().max();
        used.map_or(0, |u| u + 1).min(self.k - 1)
    }

    fn search(&mut self) -> Result<bool> {
        match self.open_entry() {
            None => {
                self.leaves += 1;
                if self.leaves > self.budget {
                    return Err(Error::BudgetExceeded(format!(
                        "more than {} strategies",
                        self.budget
                    )));
                }
                Ok(verify(self.arena, &self.strategy(), self.cond, self.from)?.holds())
            }
            Some(Entry::Next(v, m)) => {
                for &w in self.arena.succ(v) {
                    self.next.insert((v, m), w);
                    if self.search()? {
                        return Ok(true);
                    }
                }
                self.next.remove(&(v, m));
                Ok(false)
            }
            Some(Entry::Init(v)) => {
                for m in 0..=self.fresh_limit() {
                    self.init.insert(v, m);
                    if self.search()? {
                        return Ok(true);
                    }
                }
                self.init.remove(&v);
                Ok(false)
            }
            Some(Entry::Update(m, e)) => {
                for m2 in 0..=self.fresh_limit() {
                    self.update.insert((m, e), m2);
                    if self.search()? {
                        return Ok(true);
                    }
                }
                self.update.remove(&(m, e));
                Ok(false)
            }
        }
    }
}

/// Least memory size up to `cap` for which `player` has a strategy passing
/// [`verify`] from `from`. `Ok(None)` when no size up to `cap` works.
pub fn oracle_min_memory(
    arena: &Arena,
    player: Player,
    cond: &Condition,
    from: &VertexSet,
    cap: usize,
) -> Result<Option<usize>> {
    oracle_min_memory_with(arena, player, cond, from, cap, &OracleBudget::default())
}

pub fn oracle_min_memory_with(
    arena: &Arena,
    player: Player,
    cond: &Condition,
    from: &VertexSet,
    cap: usize,
    budget: &OracleBudget,
) -> Result<Option<usize>> {
    cond.check(arena)?;
    if cap > budget.max_memory {
        return Err(Error::BudgetExceeded(format!(
            "memory cap {cap}, at most {}",
            budget.max_memory
        )));
    }
    for k in 1..=cap {
        let mut s = MemorySearch {
            arena,
            player,
            cond,
            from,
            k,
            init: HashMap::new(),
            update: HashMap::new(),
            next: HashMap::new(),
            leaves: 0,
            budget: budget.max_space,
        };
        if s.search()? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
