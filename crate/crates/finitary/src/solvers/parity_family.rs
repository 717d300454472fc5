use super::buchi_family::solve_finitary_buchi;
use super::{positional_moves, SolveResult, Trace};
use crate::arena::{Arena, Player};
use crate::attractor::attractor_within;
use crate::condition::Condition;
use crate::memory::{request_tracker_memory, tracker_max_color, tracker_state_of, MemoryStructure, ProductArena};
use crate::strategy::Strategy;
use crate::vertex_set::VertexSet;

/// Bounded parity through the request tracker product.
struct TrackerGame {
    mem: MemoryStructure,
    prod: ProductArena,
    /// Eve's region in the product.
    win: VertexSet,
    eve: Vec<Option<usize>>,
    adam: Option<Vec<Option<usize>>>,
    /// Base vertices `v` with `(v, initial(v))` winning.
    region: VertexSet,
}

fn tracker_game(arena: &Arena) -> TrackerGame {
    let d = tracker_max_color(arena);
    let mem = request_tracker_memory(arena, d).expect("lifted to an even color");
    let prod = ProductArena::build(arena, &mem, false);
    let top = tracker_state_of(d);
    let answered = prod.select(|v, m| m == top && arena.color(v).is_multiple_of(2));
    let fin = solve_finitary_buchi(&prod.arena, &answered);
    let region = prod.project_initial(arena, &mem, &fin.eve_region);
    TrackerGame {
        eve: positional_moves(fin.eve_strategy.as_ref().unwrap()),
        adam: fin.adam_strategy.as_ref().map(positional_moves),
        win: fin.eve_region,
        mem,
        prod,
        region,
    }
}

/// Product moves read as a finite-memory strategy on the base arena.
fn project_moves(arena: &Arena, g: &TrackerGame, player: Player, moves: &[Option<usize>]) -> Vec<Option<usize>> {
    let k = g.mem.num_states();
    let mut next = vec![None; arena.num_vertices() * k];
    for v in arena.vertices() {
        if arena.owner(v) != player {
            continue;
        }
        for m in 0..k {
            let p = g.prod.id(v, m).unwrap();
            next[v * k + m] = moves[p].map(|q| g.prod.pair(q).0);
        }
    }
    next
}

/// Renumbers the colors that occur densely, merging neighbours of equal
/// parity. Which even colors answer which requests is unchanged, and the
/// tracker then has one state per odd color left plus one.
fn compress_colors(arena: &Arena) -> Arena {
    let mut used: Vec<u32> = arena.colors().to_vec();
    used.sort_unstable();
    used.dedup();
    let mut map = Vec::with_capacity(used.len());
    for (i, &c) in used.iter().enumerate() {
        let m = match i {
            0 => c % 2,
            _ if c % 2 == used[i - 1] % 2 => map[i - 1],
            _ => map[i - 1] + 1,
        };
        map.push(m);
    }
    let new = |c: u32| map[used.binary_search(&c).unwrap()];
    let color = arena.colors().iter().map(|&c| new(c)).collect();
    arena.recolor(color, map.last().copied().unwrap_or(0))
}

pub fn solve_bnd_parity(arena: &Arena) -> SolveResult {
    let arena = &compress_colors(arena);
    let g = tracker_game(arena);
    let eve = project_moves(arena, &g, Player::Eve, &g.eve);
    let adam = g
        .adam
        .as_ref()
        .map(|a| Strategy::finite_memory(Player::Adam, g.mem.clone(), project_moves(arena, &g, Player::Adam, a)));
    SolveResult {
        condition: Condition::BndParity,
        adam_region: g.region.complement(),
        eve_region: g.region.clone(),
        eve_strategy: Some(Strategy::finite_memory(Player::Eve, g.mem.clone(), eve)),
        adam_strategy: adam,
        trace: Trace {
            iterations: 1,
            slices: Vec::new(),
            notes: vec![format!("tracker states {}", g.mem.num_states())],
        },
    }
}

struct Slice {
    to_new: Vec<Option<usize>>,
    to_old: Vec<usize>,
    game: TrackerGame,
    /// attractor moves toward the bounded-parity core
    attract: Vec<Option<usize>>,
}

/// Slices of bounded-parity cores on the base arena. Eve's memory is the
/// request tracker, reset whenever the play changes slice or leaves the
/// slice's winning product states.
pub fn solve_finitary_parity(arena: &Arena) -> SolveResult {
    let arena = &compress_colors(arena);
    let n = arena.num_vertices();
    let mut rest = arena.full_set();
    let mut slice_of: Vec<Option<usize>> = vec![None; n];
    let mut slices: Vec<Slice> = Vec::new();
    let mut sizes = Vec::new();
    while !rest.is_empty() {
        let sub = arena.restrict(&rest).expect("complement of an Eve attractor is a subarena");
        let game = tracker_game(&sub.arena);
        if game.region.is_empty() {
            break;
        }
        let core = sub.lift(&game.region);
        let at = attractor_within(arena, Player::Eve, &core, &rest);
        for v in at.set.iter() {
            slice_of[v] = Some(slices.len());
        }
        sizes.push(at.set.len());
        rest = rest.difference(&at.set);
        slices.push(Slice {
            to_new: sub.to_new,
            to_old: sub.to_old,
            game,
            attract: at.strategy,
        });
    }
    let region = VertexSet::from_fn(n, |v| slice_of[v].is_some());
    let d = tracker_max_color(arena);
    let base_mem = request_tracker_memory(arena, d).expect("lifted to an even color");
    let k = base_mem.num_states();
    // product id of (v, m) inside its slice's tracker game, if winning there
    let winning = |v: usize, m: usize| -> Option<(usize, usize)> {
        let s = slice_of[v]?;
        let sl = &slices[s];
        let p = sl.game.prod.id(sl.to_new[v]?, m)?;
        sl.game.win.contains(p).then_some((s, p))
    };
    let mem = MemoryStructure::from_fn(
        arena,
        k,
        |v| base_mem.initial(v),
        |m, e| {
            let (u, v) = (arena.edge_source(e), arena.edge_target(e));
            let m2 = base_mem.update(m, e);
            let same = slice_of[u].is_some() && slice_of[u] == slice_of[v];
            if same && winning(v, m2).is_some() {
                m2
            } else {
                base_mem.initial(v)
            }
        },
    );
    let mut next = vec![None; n * k];
    for v in arena.vertices() {
        if arena.owner(v) != Player::Eve {
            continue;
        }
        let Some(s) = slice_of[v] else { continue };
        let sl = &slices[s];
        for m in 0..k {
            let mv = match winning(v, m) {
                Some((_, p)) => sl.game.eve[p].map(|q| sl.to_old[sl.game.prod.pair(q).0]),
                None => sl.attract[v].or_else(|| {
                    let p = sl.game.prod.id(sl.to_new[v]?, base_mem.initial(v))?;
                    sl.game.eve[p].map(|q| sl.to_old[sl.game.prod.pair(q).0])
                }),
            };
            next[v * k + m] = mv;
        }
    }
    for v in arena.vertices() {
        if arena.owner(v) == Player::Eve {
            for m in 0..k {
                if next[v * k + m].is_none() {
                    next[v * k + m] = arena.succ(v).first().copied();
                }
            }
        }
    }
    SolveResult {
        condition: Condition::FinitaryParity,
        adam_region: region.complement(),
        eve_region: region,
        eve_strategy: Some(Strategy::finite_memory(Player::Eve, mem, next)),
        adam_strategy: None,
        trace: Trace {
            iterations: sizes.len() + 1,
            slices: sizes,
            notes: vec![format!("tracker states {k}")],
        },
    }
}
