//! Seeded random arenas for cross-checking.

use crate::arena::{Arena, Player};
use crate::pushdown::PushdownProcess;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shape of the generated arenas.
#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_out_degree: usize,
    pub max_color: u32,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            min_vertices: 1,
            max_vertices: 6,
            max_out_degree: 3,
            max_color: 3,
        }
    }
}

/// Arena number `seed`. Successor lists are sorted and free of duplicates.
pub fn random_arena(seed: u64, p: &RandomParams) -> Arena {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(p.min_vertices..=p.max_vertices);
    let d = rng.gen_range(1..=p.max_color);
    let owner = (0..n)
        .map(|_| if rng.gen_bool(0.5) { Player::Eve } else { Player::Adam })
        .collect();
    let color = (0..n).map(|_| rng.gen_range(0..=d)).collect();
    let succ = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=p.max_out_degree.min(n));
            let mut s = sample(&mut rng, n, k).into_vec();
            s.sort_unstable();
            s
        })
        .collect();
    Arena::new(format!("random-{seed}"), owner, color, d, succ).expect("generated arenas are valid")
}

/// A subset of the vertices, for Büchi-type conditions.
pub fn random_set(seed: u64, n: usize) -> crate::VertexSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f00d);
    crate::VertexSet::from_fn(n, |_| rng.gen_bool(0.5))
}

/// Shape of the generated pushdown processes.
#[derive(Clone, Copy, Debug)]
pub struct ProcessParams {
    pub max_states: usize,
    pub max_symbols: usize,
    pub max_color: u32,
    /// Transitions per (state, top) pair are drawn from `1..=max_choices`.
    pub max_choices: usize,
}

impl Default for ProcessParams {
    fn default() -> Self {
        ProcessParams {
            max_states: 4,
            max_symbols: 2,
            max_color: 3,
            max_choices: 2,
        }
    }
}

/// Process number `seed` with maximal color exactly `max_color`. Every
/// (state, top) pair has at least one transition, so no configuration is a
/// dead end.
pub fn random_process(seed: u64, p: &ProcessParams) -> PushdownProcess {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9d5e_ed00);
    let n = rng.gen_range(1..=p.max_states);
    let k = rng.gen_range(1..=p.max_symbols);
    let mut pd = PushdownProcess::new(format!("random-pd-{seed}"), p.max_color);
    for q in 0..n {
        let owner = if rng.gen_bool(0.5) { Player::Eve } else { Player::Adam };
        pd.add_state(format!("q{q}"), owner, rng.gen_range(0..=p.max_color));
    }
    for a in 0..k {
        pd.add_symbol(((b'a' + a as u8) as char).to_string());
    }
    for q in 0..n {
        for top in pd.tops() {
            for _ in 0..rng.gen_range(1..=p.max_choices) {
                let to = rng.gen_range(0..n);
                match rng.gen_range(0..3) {
                    0 => {
                        let b = rng.gen_range(0..k);
                        pd.push(q, top, b, to);
                    }
                    1 if top.is_some() => pd.pop(q, top.unwrap(), to),
                    _ => pd.skip(q, top, to),
                }
            }
        }
    }
    pd
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let p = RandomParams::default();
        for seed in 0..20 {
            let a = random_arena(seed, &p);
            assert_eq!(a.to_text(), random_arena(seed, &p).to_text());
            assert!(a.validate().is_empty());
            assert!(a.num_vertices() <= 6);
            assert!(a.vertices().all(|v| (1..=3).contains(&a.out_degree(v))));
        }
    }
}
