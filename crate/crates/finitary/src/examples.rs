//! Named fixtures: the arenas and pushdown processes drawn as examples of
//! finitary and bounded conditions, each with the claims it illustrates.

use crate::arena::{Arena, Player};
use crate::condition::Condition;
use crate::error::{Error, Result};
use crate::oracle::oracle_min_memory;
use crate::pushdown::{collapse_bound_upper, simulate_deterministic, unfold, Configuration, OverflowPolicy, PushdownProcess};
use crate::solvers::{minimal_uniform_bound, solve, DEFAULT_BOUND_CAP};
use crate::vertex_set::VertexSet;
use num_bigint::BigUint;
use std::fmt;

/// One catalog line.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// `"arena"` or `"pushdown"`.
    pub kind: &'static str,
    /// Parameter names with their defaults.
    pub params: &'static [(&'static str, usize)],
    /// The drawing the fixture transcribes, and the choices made where the
    /// drawing is silent.
    pub source: &'static str,
}

const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "round-robin",
        kind: "pushdown",
        params: &[],
        source: "diagram: two Adam states, F pushes a, the other pops down to the bottom and returns; \
                 Büchi holds but no bound does in the infinite game",
    },
    CatalogEntry {
        name: "fig3",
        kind: "arena",
        params: &[],
        source: "diagram: three vertices, F = {v0, v2}, v0 loops and leaves to v1, v1 enters the v2 loop; \
                 owners set to Adam",
    },
    CatalogEntry {
        name: "adam-memory",
        kind: "arena",
        params: &[("n", 3)],
        source: "diagram: Adam picks i, Eve answers with a path j != i of length n whose j-th vertex is F; \
                 Adam wins the bound n+1 only by remembering Eve's last path",
    },
    CatalogEntry {
        name: "boundunknown",
        kind: "arena",
        params: &[("n", 4)],
        source: "diagram: Adam's top path of F vertices, branch k enters a loop of length k with one F vertex; \
                 truncated after branch n",
    },
    CatalogEntry {
        name: "bndparity-rounds",
        kind: "arena",
        params: &[("n", 3)],
        source: "diagram: rounds where Adam requests 1 or 3 (the latter after a path of length k) and Eve \
                 answers with 0 or stops on a 2 loop; truncated after round n, round n leads back to round 1",
    },
    CatalogEntry {
        name: "uniparity",
        kind: "arena",
        params: &[],
        source: "diagram: Adam requests 3 or 1, Eve then chooses the 2 loop or the 0 loop, both two steps away",
    },
    CatalogEntry {
        name: "credit",
        kind: "pushdown",
        params: &[],
        source: "diagram: Adam stores credits a, then spends one per round to delay F by pushing and popping b",
    },
    CatalogEntry {
        name: "switch",
        kind: "pushdown",
        params: &[],
        source: "diagram: Eve pops in q or moves to F, Adam pushes back to q or pops through a non-F state; \
                 owners: q Eve, the others Adam",
    },
    CatalogEntry {
        name: "bincounter",
        kind: "pushdown",
        params: &[("n", 3), ("k", 2)],
        source: "text: deterministic counter adding one to the base-k number of n digits on the stack, \
                 F when it wraps around",
    },
    CatalogEntry {
        name: "onecounter",
        kind: "pushdown",
        params: &[("n", 2)],
        source: "diagram: Eve pushes a block of a, Adam checks its length modulo one of the first n primes",
    },
    CatalogEntry {
        name: "doubleexp",
        kind: "pushdown",
        params: &[("n", 1)],
        source: "diagram: Eve pushes a binary block, it is incremented until it overflows while Adam may check \
                 the block length modulo one of the first n primes",
    },
    CatalogEntry {
        name: "nested",
        kind: "pushdown",
        params: &[("n", 1), ("k", 2)],
        source: "text (sketch): k nested binary blocks over symbols a_i/b_i separated by sep, each checked \
                 modulo the first n primes; the wiring of the check is filled in",
    },
];

/// The fixtures, in a fixed order.
pub fn list() -> &'static [CatalogEntry] {
    CATALOG
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Arena(Arena),
    Pushdown { process: PushdownProcess, start: Configuration },
}

/// What a claim asserts about the start.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    EveWins,
    AdamWins,
    /// Least `N` for the uniform Büchi condition.
    MinBound(usize),
    BoundAtLeast(usize),
    /// No positional strategy of this player wins.
    NoPositional(Player),
    /// Least memory size of a winning strategy, within `lo..=hi`.
    MinMemory(Player, usize, usize),
    /// The unique run's sup gap is at most the collapse bound.
    GapWithinCollapseBound,
    /// Recorded, not asserted.
    Measured,
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub condition: &'static str,
    pub n: Option<usize>,
    /// A vertex id, or a configuration for pushdown fixtures.
    pub start: String,
    /// Height and policy of the unfolding, for pushdown fixtures.
    pub height: Option<usize>,
    pub policy: OverflowPolicy,
    pub expected: Expected,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.condition)?;
        if let Some(n) = self.n {
            write!(f, "(N={n})")?;
        }
        write!(f, " from {}", self.start)?;
        if let Some(h) = self.height {
            write!(f, " at H={h} ({})", self.policy.name())?;
        }
        write!(f, ": {:?}", self.expected)
    }
}

#[derive(Clone, Debug)]
pub struct Built {
    pub name: &'static str,
    pub params: Vec<(&'static str, usize)>,
    pub fixture: Fixture,
    pub claims: Vec<Claim>,
    /// The drawing is infinite and this is a finite cut of it.
    pub truncated: bool,
}

impl Built {
    pub fn arena(&self) -> Option<&Arena> {
        match &self.fixture {
            Fixture::Arena(a) => Some(a),
            Fixture::Pushdown { .. } => None,
        }
    }

    pub fn pushdown(&self) -> Option<(&PushdownProcess, &Configuration)> {
        match &self.fixture {
            Fixture::Arena(_) => None,
            Fixture::Pushdown { process, start } => Some((process, start)),
        }
    }
}

/// Builds a fixture. Missing parameters take their defaults.
pub fn build(name: &str, params: &[(&str, usize)]) -> Result<Built> {
    let entry = CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownExample(name.to_string()))?;
    for (k, _) in params {
        if !entry.params.iter().any(|(p, _)| p == k) {
            return Err(Error::BadParams(format!("{name} has no parameter {k}")));
        }
    }
    let resolved: Vec<(&'static str, usize)> = entry
        .params
        .iter()
        .map(|&(p, d)| (p, params.iter().rev().find(|(k, _)| *k == p).map_or(d, |&(_, v)| v)))
        .collect();
    let get = |p: &str| resolved.iter().find(|(k, _)| *k == p).map(|&(_, v)| v).unwrap();
    let in_range = |p: &str, lo: usize, hi: usize| -> Result<usize> {
        let v = get(p);
        if (lo..=hi).contains(&v) {
            Ok(v)
        } else {
            Err(Error::BadParams(format!("{name}: {p} must lie in {lo}..={hi}, got {v}")))
        }
    };
    let (fixture, claims, truncated) = match name {
        "round-robin" => round_robin(),
        "fig3" => fig3(),
        "adam-memory" => adam_memory(in_range("n", 2, 8)?),
        "boundunknown" => boundunknown(in_range("n", 1, 64)?),
        "bndparity-rounds" => bndparity_rounds(in_range("n", 1, 16)?),
        "uniparity" => uniparity(),
        "credit" => credit(),
        "switch" => switch(),
        "bincounter" => bincounter(in_range("n", 1, 16)?, in_range("k", 2, 9)?),
        "onecounter" => onecounter(in_range("n", 1, 4)?),
        "doubleexp" => doubleexp(in_range("n", 1, 3)?),
        "nested" => nested(in_range("n", 1, 3)?, in_range("k", 1, 4)?),
        _ => unreachable!("catalog and constructors agree"),
    };
    match &fixture {
        Fixture::Arena(a) => {
            let r = a.validate();
            if !r.is_empty() {
                return Err(Error::InvalidArena(r.to_string()));
            }
        }
        Fixture::Pushdown { process, .. } => process.validate()?,
    }
    Ok(Built {
        name: entry.name,
        params: resolved,
        fixture,
        claims,
        truncated,
    })
}

type Parts = (Fixture, Vec<Claim>, bool);

fn claim(condition: &'static str, n: Option<usize>, start: impl Into<String>, expected: Expected) -> Claim {
    Claim {
        condition,
        n,
        start: start.into(),
        height: None,
        policy: OverflowPolicy::LoseEve,
        expected,
    }
}

fn pd_claim(
    condition: &'static str,
    n: Option<usize>,
    start: &str,
    height: usize,
    policy: OverflowPolicy,
    expected: Expected,
) -> Claim {
    Claim {
        height: Some(height),
        policy,
        ..claim(condition, n, start, expected)
    }
}

/// The first `n` primes.
pub fn first_primes(n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    let mut c = 2;
    while out.len() < n {
        if out.iter().all(|p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Product of the first `n` primes.
pub fn prime_product(n: usize) -> usize {
    first_primes(n).iter().product()
}

fn round_robin() -> Parts {
    let mut pd = PushdownProcess::new("round-robin", 1);
    let push = pd.add_state("F", Player::Adam, 0);
    let pop = pd.add_state("pop", Player::Adam, 1);
    let a = pd.add_symbol("a");
    pd.push_any(push, a, push);
    pd.skip_any(push, pop);
    pd.pop(pop, a, pop);
    pd.skip(pop, None, push);
    let claims = vec![
        pd_claim("buchi", None, "F:⊥", 3, OverflowPolicy::Drop, Expected::EveWins),
        pd_claim("finitary-buchi", None, "F:⊥", 3, OverflowPolicy::Drop, Expected::EveWins),
        pd_claim("uniform-buchi", None, "F:⊥", 3, OverflowPolicy::Drop, Expected::MinBound(4)),
        pd_claim("uniform-buchi", None, "F:⊥", 6, OverflowPolicy::Drop, Expected::MinBound(7)),
    ];
    let start = Configuration::new(push, vec![]);
    (Fixture::Pushdown { process: pd, start }, claims, false)
}

fn fig3() -> Parts {
    let a = Arena::buchi("fig3", vec![Player::Adam; 3], &[0, 2], vec![vec![0, 1], vec![2], vec![2]])
        .expect("fixed arena");
    let claims = vec![
        claim("bnd-uniform-buchi", Some(0), "0", Expected::AdamWins),
        claim("bnd-uniform-buchi", Some(0), "2", Expected::EveWins),
        claim("uniform-buchi", Some(0), "0", Expected::EveWins),
        claim("finitary-buchi", None, "0", Expected::EveWins),
    ];
    (Fixture::Arena(a), claims, false)
}

fn adam_memory(n: usize) -> Parts {
    // c = 0, w_i = i, p_{j,l} = n + 1 + (j-1)n + (l-1)
    let p = |j: usize, l: usize| n + 1 + (j - 1) * n + (l - 1);
    let total = 1 + n + n * n;
    let mut owner = vec![Player::Adam; total];
    let mut color = vec![1; total];
    let mut succ = vec![Vec::new(); total];
    succ[0] = (1..=n).collect();
    for i in 1..=n {
        owner[i] = Player::Eve;
        succ[i] = (1..=n).filter(|&j| j != i).map(|j| p(j, 1)).collect();
    }
    for j in 1..=n {
        color[p(j, j)] = 0;
        for l in 1..n {
            succ[p(j, l)] = vec![p(j, l + 1)];
        }
        succ[p(j, n)] = vec![0];
    }
    let a = Arena::new(format!("adam-memory-{n}"), owner, color, 1, succ).expect("well formed");
    let claims = vec![
        claim("bnd-uniform-buchi", Some(n + 1), "0", Expected::AdamWins),
        claim("bnd-uniform-buchi", Some(n + 1), "0", Expected::NoPositional(Player::Adam)),
        claim("bnd-uniform-buchi", Some(n + 1), "0", Expected::MinMemory(Player::Adam, 2, n)),
        claim("bnd-uniform-buchi", Some(n + 2), "0", Expected::EveWins),
    ];
    (Fixture::Arena(a), claims, false)
}

fn boundunknown(n: usize) -> Parts {
    // top path v_0..v_n, then the loops
    let mut owner = Vec::new();
    let mut color = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut add = |c: u32| {
        owner.push(Player::Adam);
        color.push(c);
        succ.push(Vec::new());
        color.len() - 1
    };
    let top: Vec<usize> = (0..=n).map(|_| add(0)).collect();
    let mut loops = Vec::new();
    for k in 1..=n {
        let l: Vec<usize> = (0..k).map(|i| add(u32::from(i != 0))).collect();
        loops.push(l);
    }
    for k in 0..=n {
        if k < n {
            succ[top[k]].push(top[k + 1]);
        }
        if k > 0 {
            succ[top[k]].push(loops[k - 1][0]);
        }
    }
    for l in &loops {
        for i in 0..l.len() {
            succ[l[i]].push(l[(i + 1) % l.len()]);
        }
    }
    let a = Arena::new(format!("boundunknown-{n}"), owner, color, 1, succ).expect("well formed");
    let claims = vec![
        claim("finitary-buchi", None, "0", Expected::EveWins),
        claim("uniform-buchi", None, "0", Expected::MinBound(n - 1)),
    ];
    (Fixture::Arena(a), claims, true)
}

fn bndparity_rounds(n: usize) -> Parts {
    let mut owner = Vec::new();
    let mut color = Vec::new();
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut add = |p: Player, c: u32| {
        owner.push(p);
        color.push(c);
        succ.push(Vec::new());
        color.len() - 1
    };
    struct Round {
        v: usize,
        one: usize,
        three: usize,
        path: Vec<usize>,
        c: usize,
        zero: usize,
        two: usize,
    }
    let rounds: Vec<Round> = (1..=n)
        .map(|k| Round {
            v: add(Player::Adam, 4),
            one: add(Player::Adam, 1),
            three: add(Player::Adam, 3),
            path: (1..k).map(|_| add(Player::Adam, 4)).collect(),
            c: add(Player::Eve, 4),
            zero: add(Player::Adam, 0),
            two: add(Player::Adam, 2),
        })
        .collect();
    for (k, r) in rounds.iter().enumerate() {
        succ[r.v] = vec![r.one, r.three];
        succ[r.one] = vec![r.c];
        let mut prev = r.three;
        for &x in &r.path {
            succ[prev] = vec![x];
            prev = x;
        }
        succ[prev] = vec![r.c];
        succ[r.c] = vec![r.zero, r.two];
        succ[r.zero] = vec![rounds[(k + 1) % n].v];
        succ[r.two] = vec![r.two];
    }
    let a = Arena::new(format!("bndparity-rounds-{n}"), owner, color, 4, succ).expect("well formed");
    let claims = vec![
        claim("bnd-parity", None, "0", Expected::EveWins),
        claim("bnd-parity", None, "0", Expected::NoPositional(Player::Eve)),
        claim("bnd-parity", None, "0", Expected::MinMemory(Player::Eve, 1, 2)),
    ];
    (Fixture::Arena(a), claims, true)
}

fn uniparity() -> Parts {
    use Player::{Adam, Eve};
    let owner = vec![Adam, Adam, Adam, Adam, Eve, Adam, Adam, Adam];
    let color = vec![4, 3, 4, 1, 4, 2, 4, 0];
    let succ = vec![vec![1, 3], vec![2], vec![4], vec![4], vec![5, 6], vec![5], vec![7], vec![7]];
    let a = Arena::new("uniparity", owner, color, 4, succ).expect("fixed arena");
    let claims = vec![
        claim("parity", None, "0", Expected::EveWins),
        claim("bnd-parity", None, "0", Expected::EveWins),
        claim("counter-parity", Some(2), "0", Expected::NoPositional(Player::Eve)),
        claim("counter-parity", Some(2), "0", Expected::MinMemory(Player::Eve, 2, 2)),
    ];
    (Fixture::Arena(a), claims, false)
}

fn credit() -> Parts {
    let mut pd = PushdownProcess::new("credit", 1);
    let q0 = pd.add_state("q0", Player::Adam, 0);
    let q1 = pd.add_state("q1", Player::Adam, 1);
    let q2 = pd.add_state("q2", Player::Adam, 0);
    let q3 = pd.add_state("q3", Player::Adam, 1);
    let q4 = pd.add_state("q4", Player::Adam, 0);
    let a = pd.add_symbol("a");
    let b = pd.add_symbol("b");
    pd.push_any(q0, a, q0);
    pd.skip_any(q0, q1);
    pd.pop(q1, a, q2);
    pd.skip_any(q1, q4);
    pd.push_any(q2, b, q2);
    pd.skip_any(q2, q3);
    pd.pop(q3, b, q3);
    pd.skip_any(q3, q1);
    pd.skip_any(q4, q4);
    let mut claims = Vec::new();
    for h in 4..=8 {
        claims.push(pd_claim("uniform-buchi", Some(0), "q0:⊥", h, OverflowPolicy::Drop, Expected::EveWins));
        claims.push(pd_claim("bnd-uniform-buchi", Some(h - 3), "q0:⊥", h, OverflowPolicy::Drop, Expected::AdamWins));
    }
    let start = Configuration::new(q0, vec![]);
    (Fixture::Pushdown { process: pd, start }, claims, false)
}

fn switch() -> Parts {
    let mut pd = PushdownProcess::new("switch", 1);
    let q = pd.add_state("q", Player::Eve, 1);
    let f = pd.add_state("F", Player::Adam, 0);
    let p = pd.add_state("p", Player::Adam, 1);
    let a = pd.add_symbol("a");
    pd.pop(q, a, q);
    pd.skip_any(q, f);
    pd.push_any(f, a, q);
    pd.pop(f, a, p);
    pd.pop(p, a, p);
    pd.skip_any(p, f);
    let claims = (4..=6)
        .map(|h| pd_claim("uniform-buchi", None, "q:⊥", h, OverflowPolicy::LoseEve, Expected::MinBound(2)))
        .collect();
    let start = Configuration::new(q, vec![]);
    (Fixture::Pushdown { process: pd, start }, claims, false)
}

/// Deterministic base-`k` counter with `n` digits, least significant digit
/// on top. F resets with an empty stack after the counter wraps.
fn bincounter(n: usize, k: usize) -> Parts {
    let mut pd = PushdownProcess::new(format!("bincounter-{n}-{k}"), 1);
    let f = pd.add_state("F", Player::Eve, 0);
    let qs: Vec<usize> = (1..=n).map(|i| pd.add_state(format!("q{i}"), Player::Eve, 1)).collect();
    let digits: Vec<usize> = (0..k).map(|d| pd.add_symbol(d.to_string())).collect();
    let top = k - 1;
    // p0.d: top digit d < k-1 popped, push d+1
    let p0: Vec<usize> = (0..top).map(|d| pd.add_state(format!("p0.{d}"), Player::Eve, 1)).collect();
    // p_i: i carries so far
    let ps: Vec<usize> = (1..n).map(|i| pd.add_state(format!("p{i}"), Player::Eve, 1)).collect();
    // r_i.d: digit d < k-1 popped below i carries
    let rs: Vec<Vec<usize>> = (1..n)
        .map(|i| (0..top).map(|d| pd.add_state(format!("r{i}.{d}"), Player::Eve, 1)).collect())
        .collect();
    // s_i: i zeros left to push
    let ss: Vec<usize> = (1..n).map(|i| pd.add_state(format!("s{i}"), Player::Eve, 1)).collect();
    let zero = digits[0];
    pd.push(f, None, zero, qs[0]);
    for i in 0..n - 1 {
        pd.push(qs[i], Some(zero), zero, qs[i + 1]);
    }
    let qn = qs[n - 1];
    for d in 0..top {
        pd.pop(qn, digits[d], p0[d]);
        pd.push_any(p0[d], digits[d + 1], qn);
    }
    let carried = |i: usize| if i == n { f } else { ps[i - 1] };
    pd.pop(qn, digits[top], carried(1));
    for i in 1..n {
        pd.pop(ps[i - 1], digits[top], carried(i + 1));
        for d in 0..top {
            pd.pop(ps[i - 1], digits[d], rs[i - 1][d]);
            pd.push_any(rs[i - 1][d], digits[d + 1], ss[i - 1]);
        }
        let next = if i == 1 { qn } else { ss[i - 2] };
        pd.push_any(ss[i - 1], zero, next);
    }
    let start = Configuration::new(f, vec![]);
    let claims = vec![claim("buchi", None, "F:⊥", Expected::GapWithinCollapseBound)];
    (Fixture::Pushdown { process: pd, start }, claims, false)
}

/// Residue loops reading `symbols` modulo each prime. Returns the entry
/// state of each prime, which expects at least one symbol.
struct Residues {
    entries: Vec<usize>,
}

/// `on_zero(top)` is where a residue-0 loop goes when `top` is not one of
/// `symbols`; every other mismatch goes to `lose`.
fn residues(
    pd: &mut PushdownProcess,
    tag: &str,
    primes: &[usize],
    symbols: &[usize],
    lose: usize,
    on_zero: &dyn Fn(&mut PushdownProcess, usize, Option<usize>) -> bool,
) -> Residues {
    let mut entries = Vec::new();
    for &p in primes {
        let start = pd.add_state(format!("{tag}{p}.s"), Player::Adam, 1);
        let loops: Vec<usize> = (0..p).map(|r| pd.add_state(format!("{tag}{p}.{r}"), Player::Adam, 1)).collect();
        for &a in symbols {
            pd.pop(start, a, loops[1 % p]);
            for r in 0..p {
                pd.pop(loops[r], a, loops[(r + 1) % p]);
            }
        }
        for t in pd.tops() {
            if t.is_some_and(|a| symbols.contains(&a)) {
                continue;
            }
            pd.skip(start, t, lose);
            for r in 0..p {
                if !(r == 0 && on_zero(pd, loops[0], t)) {
                    pd.skip(loops[r], t, lose);
                }
            }
        }
        entries.push(start);
    }
    Residues { entries }
}

fn onecounter(n: usize) -> Parts {
    let primes = first_primes(n);
    let q = prime_product(n);
    let mut pd = PushdownProcess::new(format!("onecounter-{n}"), 1);
    let i = pd.add_state("i", Player::Eve, 1);
    let c = pd.add_state("c", Player::Adam, 1);
    let f = pd.add_state("F", Player::Adam, 0);
    let lose = pd.add_state("lose", Player::Adam, 1);
    let a = pd.add_symbol("a");
    pd.push_any(i, a, i);
    pd.skip(i, Some(a), c);
    pd.skip(f, None, i);
    pd.skip_any(lose, lose);
    let res = residues(&mut pd, "m", &primes, &[a], lose, &|pd, z, t| {
        if t.is_none() {
            pd.skip(z, None, f);
            true
        } else {
            false
        }
    });
    for &e in &res.entries {
        pd.skip(c, Some(a), e);
    }
    let start = Configuration::new(i, vec![]);
    let claims = vec![pd_claim("uniform-buchi", None, "i:⊥", 3 * q, OverflowPolicy::LoseEve, Expected::BoundAtLeast(q))];
    (Fixture::Pushdown { process: pd, start }, claims, false)
}

fn doubleexp(n: usize) -> Parts {
    let primes = first_primes(n);
    let q = prime_product(n);
    let mut pd = PushdownProcess::new(format!("doubleexp-{n}"), 1);
    let i = pd.add_state("i", Player::Eve, 1);
    let choix = pd.add_state("choix", Player::Adam, 1);
    let s = pd.add_state("s", Player::Eve, 1);
    let int = pd.add_state("int", Player::Eve, 1);
    let c = pd.add_state("c", Player::Eve, 1);
    let f = pd.add_state("F", Player::Adam, 0);
    let win = pd.add_state("win", Player::Adam, 0);
    let lose = pd.add_state("lose", Player::Adam, 1);
    let zero = pd.add_symbol("0");
    let one = pd.add_symbol("1");
    pd.push(i, None, zero, i);
    pd.push(i, Some(zero), zero, i);
    pd.skip(i, Some(zero), choix);
    for t in [zero, one] {
        pd.skip(choix, Some(t), s);
    }
    pd.pop(s, one, s);
    pd.pop(s, zero, int);
    pd.skip(s, None, f);
    pd.push_any(int, one, c);
    for t in [zero, one] {
        pd.push(c, Some(t), zero, c);
        pd.skip(c, Some(t), choix);
    }
    pd.skip(f, None, i);
    pd.skip_any(win, win);
    pd.skip_any(lose, lose);
    let res = residues(&mut pd, "m", &primes, &[zero, one], lose, &|pd, z, t| {
        if t.is_none() {
            pd.skip(z, None, win);
            true
        } else {
            false
        }
    });
    for &e in &res.entries {
        for t in [zero, one] {
            pd.skip(choix, Some(t), e);
        }
    }
    let start = Configuration::new(i, vec![]);
    let claims = vec![pd_claim(
        "uniform-buchi",
        None,
        "i:⊥",
        q + 2,
        OverflowPolicy::LoseEve,
        Expected::BoundAtLeast(1 << q),
    )];
    (Fixture::Pushdown { process: pd, start }, claims, false)
}

/// `k` levels of binary blocks, block `j` over `a_j` (0) and `b_j` (1),
/// blocks separated by `sep`. Incrementing block `j < k` starts a fresh block
/// `j + 1`; an overflowing block is erased and the block below incremented.
/// Adam may check, after any block is written or incremented, that every
/// block has a length divisible by each of the first `n` primes.
fn nested(n: usize, k: usize) -> Parts {
    let primes = first_primes(n);
    let q = prime_product(n);
    let mut pd = PushdownProcess::new(format!("nested-{n}-{k}"), 1);
    let f = pd.add_state("F", Player::Adam, 0);
    let win = pd.add_state("win", Player::Adam, 0);
    let lose = pd.add_state("lose", Player::Adam, 1);
    let sep = pd.add_symbol("sep");
    let a: Vec<usize> = (1..=k).map(|j| pd.add_symbol(format!("a{j}"))).collect();
    let b: Vec<usize> = (1..=k).map(|j| pd.add_symbol(format!("b{j}"))).collect();
    let st = |pd: &mut PushdownProcess, s: &str, j: usize, p: Player| pd.add_state(format!("{s}{}", j + 1), p, 1);
    let init: Vec<usize> = (0..k).map(|j| st(&mut pd, "init", j, Player::Eve)).collect();
    let d: Vec<usize> = (0..k).map(|j| st(&mut pd, "d", j, Player::Adam)).collect();
    let v: Vec<usize> = (0..k).map(|j| st(&mut pd, "v", j, Player::Eve)).collect();
    let int: Vec<usize> = (0..k).map(|j| st(&mut pd, "int", j, Player::Eve)).collect();
    let c: Vec<usize> = (0..k).map(|j| st(&mut pd, "c", j, Player::Eve)).collect();
    let e: Vec<usize> = (0..k).map(|j| st(&mut pd, "e", j, Player::Adam)).collect();
    let chk: Vec<usize> = (0..k).map(|j| st(&mut pd, "chk", j, Player::Adam)).collect();
    pd.skip(f, None, init[0]);
    pd.skip_any(win, win);
    pd.skip_any(lose, lose);
    for j in 0..k {
        let below = if j == 0 { None } else { Some(sep) };
        pd.push(init[j], below, a[j], init[j]);
        pd.push(init[j], Some(a[j]), a[j], init[j]);
        pd.skip(init[j], Some(a[j]), d[j]);
        pd.skip(d[j], Some(a[j]), chk[j]);
        if j + 1 < k {
            pd.push(d[j], Some(a[j]), sep, init[j + 1]);
        } else {
            pd.skip(d[j], Some(a[j]), v[j]);
        }
        pd.pop(v[j], b[j], v[j]);
        pd.pop(v[j], a[j], int[j]);
        if j == 0 {
            pd.skip(v[j], None, f);
        } else {
            pd.pop(v[j], sep, v[j - 1]);
        }
        pd.push_any(int[j], b[j], c[j]);
        for t in [a[j], b[j]] {
            pd.push(c[j], Some(t), a[j], c[j]);
            pd.skip(c[j], Some(t), e[j]);
            pd.skip(e[j], Some(t), chk[j]);
            if j + 1 < k {
                pd.push(e[j], Some(t), sep, init[j + 1]);
            } else {
                pd.skip(e[j], Some(t), v[j]);
            }
        }
    }
    // the check of level j pops block j, then a separator into level j-1
    for j in 0..k {
        let below = if j == 0 { None } else { Some(chk[j - 1]) };
        let res = residues(&mut pd, &format!("m{}.", j + 1), &primes, &[a[j], b[j]], lose, &|pd, z, t| {
            match (t, below) {
                (None, None) => pd.skip(z, None, win),
                (Some(x), Some(next)) if x == sep => pd.pop(z, sep, next),
                _ => return false,
            }
            true
        });
        for &entry in &res.entries {
            for t in [a[j], b[j]] {
                pd.skip(chk[j], Some(t), entry);
            }
        }
    }
    let start = Configuration::new(f, vec![]);
    let claims = vec![pd_claim(
        "uniform-buchi",
        None,
        "F:⊥",
        k * (q + 1),
        OverflowPolicy::LoseEve,
        Expected::Measured,
    )];
    (Fixture::Pushdown { process: pd, start }, claims, false)
}

/// Result of checking one claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// `None` for claims that are only measured.
    pub holds: Option<bool>,
    pub measured: String,
}

/// Runs the check a claim describes.
pub fn check_claim(built: &Built, c: &Claim) -> Result<Outcome> {
    let (arena, start) = match &built.fixture {
        Fixture::Arena(a) => {
            let v: usize = c
                .start
                .parse()
                .map_err(|_| Error::BadParams(format!("bad start vertex {}", c.start)))?;
            (a.clone(), v)
        }
        Fixture::Pushdown { process, .. } => {
            let conf = process.parse_configuration(&c.start)?;
            if c.expected == Expected::GapWithinCollapseBound {
                let run = simulate_deterministic(process, &conf, 10_000_000)?;
                let bound = collapse_bound_upper(process.num_states(), process.alphabet.len());
                let gap = run.max_gap;
                return Ok(Outcome {
                    holds: Some(gap.is_some_and(|g| BigUint::from(g) <= bound)),
                    measured: format!("max gap {gap:?}, bound {bound}"),
                });
            }
            let h = c.height.ok_or_else(|| Error::BadParams("pushdown claims need a height".into()))?;
            (unfold(process, h, &conf, c.policy)?.arena, 0)
        }
    };
    let wins = |n: Option<usize>| -> Result<bool> {
        let cond = Condition::from_name(&arena, c.condition, n, None)?;
        Ok(solve(&arena, &cond)?.eve_region.contains(start))
    };
    let from = VertexSet::from_ids(arena.num_vertices(), [start]);
    let f = arena.buchi_set();
    Ok(match c.expected {
        Expected::EveWins | Expected::AdamWins => {
            let w = wins(c.n)?;
            Outcome {
                holds: Some(w == (c.expected == Expected::EveWins)),
                measured: format!("Eve {}", if w { "wins" } else { "loses" }),
            }
        }
        Expected::MinBound(_) | Expected::BoundAtLeast(_) | Expected::Measured => {
            let b = minimal_uniform_bound(&arena, &f, start, DEFAULT_BOUND_CAP)?;
            let holds = match c.expected {
                Expected::MinBound(x) => Some(b == Some(x)),
                Expected::BoundAtLeast(x) => Some(b.is_none_or(|b| b >= x)),
                _ => None,
            };
            Outcome {
                holds,
                measured: format!("least bound {}", b.map_or("none".into(), |b| b.to_string())),
            }
        }
        Expected::NoPositional(p) => {
            let cond = Condition::from_name(&arena, c.condition, c.n, None)?;
            let m = oracle_min_memory(&arena, p, &cond, &from, 1)?;
            Outcome {
                holds: Some(m.is_none()),
                measured: format!("positional {}", if m.is_some() { "wins" } else { "never wins" }),
            }
        }
        Expected::MinMemory(p, lo, hi) => {
            let cond = Condition::from_name(&arena, c.condition, c.n, None)?;
            let m = oracle_min_memory(&arena, p, &cond, &from, hi)?;
            Outcome {
                holds: Some(m.is_some_and(|m| (lo..=hi).contains(&m))),
                measured: format!("least memory {}", m.map_or(format!("> {hi}"), |m| m.to_string())),
            }
        }
        Expected::GapWithinCollapseBound => {
            return Err(Error::BadParams("gap claims apply to deterministic processes".into()));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds_with_defaults() {
        assert!(list().len() >= 12);
        for e in list() {
            let b = build(e.name, &[]).unwrap();
            assert!(!e.source.is_empty());
            assert_eq!(b.arena().is_some(), e.kind == "arena", "{}", e.name);
            assert!(!b.claims.is_empty());
        }
    }

    #[test]
    fn unknown_names_and_params() {
        assert_eq!(build("nope", &[]).unwrap_err(), Error::UnknownExample("nope".into()));
        assert!(matches!(build("fig3", &[("n", 2)]), Err(Error::BadParams(_))));
        assert!(matches!(build("adam-memory", &[("n", 1)]), Err(Error::BadParams(_))));
    }

    #[test]
    fn fig3_shape() {
        let b = build("fig3", &[]).unwrap();
        let a = b.arena().unwrap();
        assert_eq!((a.num_vertices(), a.num_edges()), (3, 4));
        assert_eq!(a.buchi_set(), VertexSet::from_ids(3, [0, 2]));
    }

    #[test]
    fn adam_memory_shape() {
        let a = build("adam-memory", &[("n", 3)]).unwrap().fixture;
        let Fixture::Arena(a) = a else { panic!() };
        assert_eq!(a.out_degree(0), 3);
        assert_eq!(a.num_vertices(), 13);
        assert_eq!(a.num_edges(), 18);
        // each path has length 3 and one F vertex
        assert_eq!(a.buchi_set().len(), 3);
    }

    #[test]
    fn bincounter_shape() {
        let b = build("bincounter", &[("n", 3)]).unwrap();
        let (pd, _) = b.pushdown().unwrap();
        assert_eq!(pd.num_states(), 11);
        assert_eq!(pd.alphabet, vec!["0", "1"]);
        assert_eq!(pd.buchi_states().len(), 1);
    }

    #[test]
    fn bincounter_counts() {
        for (n, k) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
            let b = build("bincounter", &[("n", n), ("k", k)]).unwrap();
            let (pd, start) = b.pushdown().unwrap();
            let run = simulate_deterministic(pd, start, 100_000).unwrap();
            // every configuration with the counter in q_n appears once per value
            let values = run.states.iter().filter(|&&s| s == n).count();
            assert_eq!(values, k.pow(n as u32), "n={n} k={k}");
            assert_eq!(run.stem, 0);
        }
    }

    #[test]
    fn primes() {
        assert_eq!(first_primes(4), vec![2, 3, 5, 7]);
        assert_eq!(prime_product(2), 6);
        assert_eq!(prime_product(3), 30);
        assert_eq!(prime_product(4), 210);
    }

    #[test]
    fn round_robin_unfolding_size() {
        let b = build("round-robin", &[]).unwrap();
        let (pd, start) = b.pushdown().unwrap();
        let u = unfold(pd, 3, start, OverflowPolicy::Drop).unwrap();
        assert!(u.arena.num_vertices() <= 2 * 4 * pd.alphabet.len());
    }
}
