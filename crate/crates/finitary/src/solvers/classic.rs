use super::{fill_moves, SolveResult, Trace};
use crate::arena::{Arena, Player};
use crate::attractor::attractor_within;
use crate::condition::Condition;
use crate::strategy::Strategy;
use crate::vertex_set::VertexSet;

fn pick_inside(arena: &Arena, v: usize, set: &VertexSet) -> Option<usize> {
    arena.succ(v).iter().copied().find(|&w| set.contains(w))
}

pub fn solve_safety(arena: &Arena, safe: &VertexSet) -> SolveResult {
    let bad = safe.complement();
    let at = attractor_within(arena, Player::Adam, &bad, &arena.full_set());
    let eve_region = at.set.complement();
    let mut eve = vec![None; arena.num_vertices()];
    let mut adam = at.strategy.clone();
    for v in arena.vertices() {
        match arena.owner(v) {
            Player::Eve if eve_region.contains(v) => eve[v] = pick_inside(arena, v, &eve_region),
            _ => {}
        }
    }
    fill_moves(arena, Player::Eve, &mut eve);
    fill_moves(arena, Player::Adam, &mut adam);
    SolveResult {
        condition: Condition::Safety(safe.clone()),
        adam_region: at.set,
        eve_region,
        eve_strategy: Some(Strategy::positional(Player::Eve, eve)),
        adam_strategy: Some(Strategy::positional(Player::Adam, adam)),
        trace: Trace {
            iterations: 1,
            ..Default::default()
        },
    }
}

/// Classical Büchi game for `player` with target `target`.
pub struct BuchiSolution {
    pub win: VertexSet,
    pub win_moves: Vec<Option<usize>>,
    pub lose: VertexSet,
    pub lose_moves: Vec<Option<usize>>,
    pub iterations: usize,
}

/// Repeatedly removes the opponent's attractor to the complement of the
/// player's attractor to `target`.
pub fn buchi_for(arena: &Arena, player: Player, target: &VertexSet) -> BuchiSolution {
    let n = arena.num_vertices();
    let opp = player.opponent();
    let mut game = arena.full_set();
    let mut lose = VertexSet::empty(n);
    let mut lose_moves = vec![None; n];
    let mut iterations = 0;
    loop {
        iterations += 1;
        let reach = attractor_within(arena, player, target, &game);
        let trap = game.difference(&reach.set);
        if trap.is_empty() {
            let mut win_moves = reach.strategy.clone();
            for v in game.iter() {
                if arena.owner(v) == player && win_moves[v].is_none() {
                    win_moves[v] = pick_inside(arena, v, &game);
                }
            }
            fill_moves(arena, player, &mut win_moves);
            fill_moves(arena, opp, &mut lose_moves);
            return BuchiSolution {
                win: game,
                win_moves,
                lose,
                lose_moves,
                iterations,
            };
        }
        let esc = attractor_within(arena, opp, &trap, &game);
        for v in esc.set.iter() {
            if arena.owner(v) == opp {
                lose_moves[v] = if trap.contains(v) {
                    pick_inside(arena, v, &trap)
                } else {
                    esc.strategy[v]
                };
            }
        }
        lose.union_with(&esc.set);
        game = game.difference(&esc.set);
    }
}

pub fn solve_buchi(arena: &Arena, f: &VertexSet) -> SolveResult {
    let b = buchi_for(arena, Player::Eve, f);
    SolveResult {
        condition: Condition::Buchi(f.clone()),
        eve_region: b.win,
        adam_region: b.lose,
        eve_strategy: Some(Strategy::positional(Player::Eve, b.win_moves)),
        adam_strategy: Some(Strategy::positional(Player::Adam, b.lose_moves)),
        trace: Trace {
            iterations: b.iterations,
            ..Default::default()
        },
    }
}

/// Eve avoids `f` eventually: Adam's Büchi game on `f`, read from Eve's side.
pub fn solve_cobuchi(arena: &Arena, f: &VertexSet) -> SolveResult {
    let b = buchi_for(arena, Player::Adam, f);
    SolveResult {
        condition: Condition::CoBuchi(f.clone()),
        eve_region: b.lose,
        adam_region: b.win,
        eve_strategy: Some(Strategy::positional(Player::Eve, b.lose_moves)),
        adam_strategy: Some(Strategy::positional(Player::Adam, b.win_moves)),
        trace: Trace {
            iterations: b.iterations,
            ..Default::default()
        },
    }
}

struct Zielonka<'a> {
    arena: &'a Arena,
    moves: [Vec<Option<usize>>; 2],
    calls: usize,
}

fn idx(p: Player) -> usize {
    match p {
        Player::Eve => 0,
        Player::Adam => 1,
    }
}

impl Zielonka<'_> {
    /// Returns (Eve region, Adam region) of the subgame `game`.
    fn solve(&mut self, game: &VertexSet) -> [VertexSet; 2] {
        self.calls += 1;
        let n = self.arena.num_vertices();
        if game.is_empty() {
            return [VertexSet::empty(n), VertexSet::empty(n)];
        }
        let p = game.iter().map(|v| self.arena.color(v)).min().unwrap();
        let alpha = if p % 2 == 0 { Player::Eve } else { Player::Adam };
        let beta = alpha.opponent();
        let top = VertexSet::from_fn(n, |v| game.contains(v) && self.arena.color(v) == p);
        let a = attractor_within(self.arena, alpha, &top, game);
        let rest = game.difference(&a.set);
        let w1 = self.solve(&rest);
        if w1[idx(beta)].is_empty() {
            for v in a.set.iter() {
                if self.arena.owner(v) == alpha {
                    self.moves[idx(alpha)][v] = a.strategy[v].or_else(|| pick_inside(self.arena, v, game));
                }
            }
            let mut out = [VertexSet::empty(n), VertexSet::empty(n)];
            out[idx(alpha)] = game.clone();
            return out;
        }
        let b = attractor_within(self.arena, beta, &w1[idx(beta)], game);
        for v in b.set.iter() {
            if self.arena.owner(v) == beta && !w1[idx(beta)].contains(v) {
                self.moves[idx(beta)][v] = b.strategy[v];
            }
        }
        let w2 = self.solve(&game.difference(&b.set));
        let mut out = w2;
        out[idx(beta)].union_with(&b.set);
        out
    }
}

/// Zielonka's recursive algorithm, min-parity: Eve wins iff the least color
/// seen infinitely often is even.
pub fn solve_parity(arena: &Arena) -> SolveResult {
    let n = arena.num_vertices();
    let mut z = Zielonka {
        arena,
        moves: [vec![None; n], vec![None; n]],
        calls: 0,
    };
    let [e, a] = z.solve(&arena.full_set());
    let [mut me, mut ma] = z.moves;
    fill_moves(arena, Player::Eve, &mut me);
    fill_moves(arena, Player::Adam, &mut ma);
    SolveResult {
        condition: Condition::Parity,
        eve_region: e,
        adam_region: a,
        eve_strategy: Some(Strategy::positional(Player::Eve, me)),
        adam_strategy: Some(Strategy::positional(Player::Adam, ma)),
        trace: Trace {
            iterations: z.calls,
            ..Default::default()
        },
    }
}
