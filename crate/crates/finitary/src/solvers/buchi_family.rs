use super::classic::{buchi_for, solve_safety};
use super::{fill_moves, lift_moves, positional_moves, SolveResult, Trace};
use crate::arena::{Arena, Player};
use crate::attractor::{attractor_within, pre};
use crate::condition::Condition;
use crate::error::{Error, Result};
use crate::memory::{step_counter_memory, ProductArena};
use crate::strategy::Strategy;
use crate::vertex_set::VertexSet;

/// Default cap for [`minimal_uniform_bound`].
pub const DEFAULT_BOUND_CAP: usize = 4096;

/// Greatest fixpoint `Z = Attr_N(F ∩ Pre(Z))`. Returns the region, Eve's
/// positional moves and the number of iterations.
fn bnd_uniform_region(arena: &Arena, f: &VertexSet, n: usize) -> (VertexSet, Vec<Option<usize>>, usize) {
    let mut z = arena.full_set();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let x = f.intersection(&pre(arena, &z));
        let at = attractor_within(arena, Player::Eve, &x, &arena.full_set());
        let next = VertexSet::from_fn(arena.num_vertices(), |v| at.rank[v].is_some_and(|r| r <= n));
        if next == z {
            let mut moves = vec![None; arena.num_vertices()];
            for v in z.iter() {
                if arena.owner(v) != Player::Eve {
                    continue;
                }
                moves[v] = if x.contains(v) {
                    arena.succ(v).iter().copied().find(|&w| z.contains(w))
                } else {
                    at.strategy[v]
                };
            }
            return (z, moves, iterations);
        }
        z = next;
    }
}

pub fn solve_bnd_uniform_buchi(arena: &Arena, f: &VertexSet, n: usize) -> SolveResult {
    let (z, mut eve, iterations) = bnd_uniform_region(arena, f, n);
    fill_moves(arena, Player::Eve, &mut eve);
    let mut notes = Vec::new();
    let adam = if n == 0 {
        // every position must be in F
        notes.push("N=0: Adam plays the positional safety strategy".to_string());
        let s = solve_safety(arena, f);
        s.adam_strategy
    } else {
        // counter product, Eve keeps the counter below N
        let mem = step_counter_memory(arena, f, n);
        let prod = ProductArena::build(arena, &mem, false);
        let safe = prod.select(|_, m| m < n);
        let s = solve_safety(&prod.arena, &safe);
        let pm = positional_moves(s.adam_strategy.as_ref().unwrap());
        // state N only occurs after Adam has won; fold it into N-1
        let small = step_counter_memory(arena, f, n - 1);
        let k = n;
        let mut next = vec![None; arena.num_vertices() * k];
        for v in arena.vertices() {
            if arena.owner(v) != Player::Adam {
                continue;
            }
            for m in 0..k {
                let p = prod.id(v, m).unwrap();
                next[v * k + m] = pm[p].map(|q| prod.pair(q).0);
            }
        }
        Some(Strategy::finite_memory(Player::Adam, small, next))
    };
    SolveResult {
        condition: Condition::BndUniformBuchi(f.clone(), n),
        adam_region: z.complement(),
        eve_region: z,
        eve_strategy: Some(Strategy::positional(Player::Eve, eve)),
        adam_strategy: adam,
        trace: Trace {
            iterations,
            slices: Vec::new(),
            notes,
        },
    }
}

/// Slice decomposition: repeatedly find `Ξ` on the remaining subarena, take
/// Eve's attractor to it and remove it. Eve's moves glue the slice strategy
/// on `Ξ` with attractor moves.
fn slices(
    arena: &Arena,
    xi: &dyn Fn(&Arena) -> (VertexSet, Vec<Option<usize>>),
) -> (VertexSet, Vec<Option<usize>>, Vec<usize>) {
    let n = arena.num_vertices();
    let mut rest = arena.full_set();
    let mut region = VertexSet::empty(n);
    let mut moves = vec![None; n];
    let mut sizes = Vec::new();
    while !rest.is_empty() {
        let sub = arena.restrict(&rest).expect("complement of an Eve attractor is a subarena");
        let (x_sub, x_moves) = xi(&sub.arena);
        if x_sub.is_empty() {
            break;
        }
        let x = sub.lift(&x_sub);
        let at = attractor_within(arena, Player::Eve, &x, &rest);
        let mut local = vec![None; sub.arena.num_vertices()];
        for v in x_sub.iter() {
            local[v] = x_moves[v];
        }
        lift_moves(&sub, &local, &mut moves);
        for v in at.set.iter() {
            if !x.contains(v) && arena.owner(v) == Player::Eve {
                moves[v] = at.strategy[v];
            }
        }
        sizes.push(at.set.len());
        region.union_with(&at.set);
        rest = rest.difference(&at.set);
    }
    (region, moves, sizes)
}

/// Uniform Büchi region of an arena whose target set is its color-0 set.
fn uniform_region(marked: &Arena, n: usize) -> (VertexSet, Vec<Option<usize>>, Vec<usize>) {
    slices(marked, &|a: &Arena| {
        let (z, moves, _) = bnd_uniform_region(a, &a.buchi_set(), n);
        (z, moves)
    })
}

/// `arena` recolored so that `f` is exactly the color-0 set.
fn marked(arena: &Arena, f: &VertexSet) -> Arena {
    let colors = arena.vertices().map(|v| u32::from(!f.contains(v))).collect();
    arena.recolor(colors, 1)
}

pub fn solve_uniform_buchi(arena: &Arena, f: &VertexSet, n: usize) -> SolveResult {
    let m = marked(arena, f);
    let (region, mut eve, sizes) = uniform_region(&m, n);
    fill_moves(arena, Player::Eve, &mut eve);
    let mut notes = Vec::new();
    let adam = if n == 0 {
        notes.push("N=0: Adam plays the positional Büchi strategy on the complement of F".to_string());
        let b = buchi_for(arena, Player::Adam, &f.complement());
        Strategy::positional(Player::Adam, b.win_moves)
    } else {
        // Eve must see counter value N only finitely often
        let mem = step_counter_memory(arena, f, n);
        let prod = ProductArena::build(arena, &mem, false);
        let top = prod.select(|_, c| c == n);
        let b = buchi_for(&prod.arena, Player::Adam, &top);
        let k = n + 1;
        let mut next = vec![None; arena.num_vertices() * k];
        for v in arena.vertices() {
            if arena.owner(v) != Player::Adam {
                continue;
            }
            for c in 0..k {
                let p = prod.id(v, c).unwrap();
                next[v * k + c] = b.win_moves[p].map(|q| prod.pair(q).0);
            }
        }
        Strategy::finite_memory(Player::Adam, mem, next)
    };
    SolveResult {
        condition: Condition::UniformBuchi(f.clone(), n),
        adam_region: region.complement(),
        eve_region: region,
        eve_strategy: Some(Strategy::positional(Player::Eve, eve)),
        adam_strategy: Some(adam),
        trace: Trace {
            iterations: sizes.len() + 1,
            slices: sizes,
            notes,
        },
    }
}

pub fn solve_finitary_buchi(arena: &Arena, f: &VertexSet) -> SolveResult {
    let m = marked(arena, f);
    // on a subarena A', the union over N of the uniform regions is reached at N = |A'|
    let (region, mut eve, sizes) = slices(&m, &|a: &Arena| {
        let (r, moves, _) = uniform_region(a, a.num_vertices());
        (r, moves)
    });
    fill_moves(arena, Player::Eve, &mut eve);
    let b = buchi_for(arena, Player::Eve, f);
    let mut notes = Vec::new();
    let adam = if b.win == region {
        Some(Strategy::positional(Player::Adam, b.lose_moves))
    } else {
        notes.push("Büchi and finitary Büchi regions differ; no Adam strategy".to_string());
        None
    };
    SolveResult {
        condition: Condition::FinitaryBuchi(f.clone()),
        adam_region: region.complement(),
        eve_region: region,
        eve_strategy: Some(Strategy::positional(Player::Eve, eve)),
        adam_strategy: adam,
        trace: Trace {
            iterations: sizes.len() + 1,
            slices: sizes,
            notes,
        },
    }
}

/// Least `N ≤ cap` such that Eve wins the uniform condition from `start`.
/// `Ok(None)` when even the finitary region misses `start`.
pub fn minimal_uniform_bound(arena: &Arena, f: &VertexSet, start: usize, cap: usize) -> Result<Option<usize>> {
    let m = marked(arena, f);
    let wins = |n: usize| uniform_region(&m, n).0.contains(start);
    if !solve_finitary_buchi(arena, f).eve_region.contains(start) {
        return Ok(None);
    }
    if wins(0) {
        return Ok(Some(0));
    }
    let mut hi = 1;
    while !wins(hi) {
        if hi >= cap {
            return Err(Error::CapExceeded(cap));
        }
        hi = (hi * 2).min(cap);
    }
    let mut lo = hi / 2; // loses at lo
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if wins(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}
