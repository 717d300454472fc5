use super::*;
use crate::random::{random_process, ProcessParams};
use num_bigint::BigUint;
use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest};

fn tiny() -> PushdownProcess {
    let mut pd = PushdownProcess::new("tiny", 1);
    let p = pd.add_state("p", Player::Eve, 0);
    let q = pd.add_state("q", Player::Adam, 1);
    let a = pd.add_symbol("a");
    pd.push(p, None, a, q);
    pd.pop(q, a, p);
    pd
}

#[test]
fn successor_rules() {
    let pd = tiny();
    let a = 0;
    assert_eq!(pd.successors(&Configuration::new(0, vec![])), vec![Configuration::new(1, vec![a])]);
    assert_eq!(pd.successors(&Configuration::new(1, vec![a])), vec![Configuration::new(0, vec![])]);
    let mut pd2 = pd.clone();
    let b = pd2.add_symbol("b");
    assert!(pd2.successors(&Configuration::new(1, vec![b])).is_empty());
}

#[test]
fn text_round_trip() {
    let pd = tiny();
    let text = pd.to_text();
    assert_eq!(PushdownProcess::parse(&text).unwrap(), pd);
    assert!(text.contains("trans p - push a q"));
    let c = Configuration::new(1, vec![0, 0]);
    assert_eq!(pd.format_configuration(&c), "q:aa⊥");
    assert_eq!(pd.parse_configuration("q:aa⊥").unwrap(), c);
    assert_eq!(pd.parse_configuration("p:").unwrap(), Configuration::new(0, vec![]));
    assert!(pd.parse_configuration("r:⊥").is_err());
}

#[test]
fn multi_char_symbols_use_dots() {
    let mut pd = PushdownProcess::new("m", 1);
    let p = pd.add_state("p", Player::Eve, 0);
    let a = pd.add_symbol("a1");
    let b = pd.add_symbol("b1");
    pd.skip_any(p, p);
    let c = Configuration::new(p, vec![a, b]);
    assert_eq!(pd.format_configuration(&c), "p:b1.a1.⊥");
    assert_eq!(pd.parse_configuration("p:b1.a1.⊥").unwrap(), c);
}

#[test]
fn parse_errors() {
    assert!(PushdownProcess::parse("pushdown x maxcolor 1\nstate p E 0\ntrans p pop - p\n").is_err());
    assert!(PushdownProcess::parse("pushdown x maxcolor 1\nstate p E 2\n").is_err());
    assert!(PushdownProcess::parse("state p E 0\n").is_err());
    let e = PushdownProcess::parse("pushdown x maxcolor 1\nstate p E 0\ntrans p - skip r\n").unwrap_err();
    assert!(matches!(e, Error::Parse { line: 3, .. }));
}

#[test]
fn height_zero_skip_only_is_the_control_graph() {
    let mut pd = PushdownProcess::new("ring", 1);
    let s: Vec<usize> = (0..3).map(|i| pd.add_state(format!("s{i}"), Player::Eve, i % 2)).collect();
    for i in 0..3 {
        pd.skip(s[i], None, s[(i + 1) % 3]);
    }
    let u = unfold(&pd, 0, &Configuration::new(0, vec![]), OverflowPolicy::LoseEve).unwrap();
    assert_eq!(u.arena.num_vertices(), 3);
    assert_eq!(u.arena.num_edges(), 3);
    assert!(u.overflow.is_empty());
}

#[test]
fn overflow_policies() {
    let pd = tiny();
    let start = Configuration::new(0, vec![]);
    let lose = unfold(&pd, 0, &start, OverflowPolicy::LoseEve).unwrap();
    assert_eq!(lose.arena.num_vertices(), 2);
    assert_eq!(lose.arena.color(1), 1);
    assert_eq!(lose.overflow, vec![1]);
    let win = unfold(&pd, 0, &start, OverflowPolicy::LoseAdam).unwrap();
    assert_eq!(win.arena.color(1), 0);
    assert_eq!(
        unfold(&pd, 0, &start, OverflowPolicy::Drop).unwrap_err(),
        Error::DeadEndConfiguration("p:⊥ (every move overflows)".into())
    );
    assert_eq!(unfold(&pd, 1, &start, OverflowPolicy::Drop).unwrap().arena.num_vertices(), 2);
    assert_eq!(
        unfold(&pd, 0, &Configuration::new(1, vec![0]), OverflowPolicy::Drop).unwrap_err(),
        Error::EmptyUnfolding
    );
}

#[test]
fn dead_end_is_reported() {
    let mut pd = tiny();
    pd.transitions.pop();
    let e = unfold(&pd, 3, &Configuration::new(0, vec![]), OverflowPolicy::LoseEve).unwrap_err();
    assert_eq!(e, Error::DeadEndConfiguration("q:a⊥".into()));
}

#[test]
fn constant_f_run_has_gap_zero() {
    let mut pd = PushdownProcess::new("one", 1);
    let p = pd.add_state("p", Player::Eve, 0);
    pd.skip(p, None, p);
    let r = simulate_deterministic(&pd, &Configuration::new(p, vec![]), 10).unwrap();
    assert_eq!(r.kind, CycleKind::Flat);
    assert_eq!((r.stem, r.period, r.max_gap), (0, 1, Some(0)));
}

#[test]
fn increasing_run_is_detected() {
    // p pushes forever, visiting q (F) every other step
    let mut pd = PushdownProcess::new("climb", 1);
    let p = pd.add_state("p", Player::Eve, 1);
    let q = pd.add_state("q", Player::Eve, 0);
    let a = pd.add_symbol("a");
    pd.push_any(p, a, q);
    pd.skip_any(q, p);
    let r = simulate_deterministic(&pd, &Configuration::new(p, vec![]), 100).unwrap();
    assert_eq!(r.kind, CycleKind::Increasing);
    assert_eq!(r.climb, 1);
    assert_eq!(r.max_gap, Some(1));
    assert!(simulate_deterministic(&pd, &Configuration::new(p, vec![]), 1).is_err());
}

#[test]
fn nondeterminism_is_rejected() {
    let mut pd = tiny();
    pd.skip(0, None, 0);
    assert_eq!(
        simulate_deterministic(&pd, &Configuration::new(0, vec![]), 10).unwrap_err(),
        Error::Nondeterministic("p:⊥".into())
    );
}

#[test]
fn collapse_bound_values() {
    assert_eq!(collapse_bound_upper(1, 1), BigUint::from(1u32));
    assert_eq!(collapse_bound_upper(2, 1), BigUint::from(4u32));
    assert_eq!(collapse_bound_upper(2, 2), BigUint::from(128u32));
    assert_eq!(collapse_bound_upper_u64(2, 2).unwrap(), 128);
    assert_eq!(collapse_bound_upper_u64(40, 2), Err(Error::Overflow(64)));
    assert_eq!(collapse_bound_upper(8, 2), BigUint::from(64u32) * BigUint::from(2u32).pow(17));
}

#[test]
fn gadget_shape() {
    let mut pd = PushdownProcess::new("one-edge", 1);
    let p = pd.add_state("p", Player::Eve, 1);
    pd.skip(p, None, p);
    let g = restart_gadget(&pd).unwrap();
    assert_eq!(g.num_states(), 4);
    assert_eq!(g.max_color, 2);
    let colors: Vec<u32> = g.states[1..].iter().map(|s| s.color).collect();
    assert_eq!(colors, vec![2, 0, 1]);
    assert_eq!(g.alphabet, vec![RESTART_SYMBOL.to_string()]);
    let mut even = pd.clone();
    even.max_color = 2;
    assert_eq!(restart_gadget(&even).unwrap_err(), Error::EvenMaxColor(2));
}

#[test]
fn gadget_paths() {
    let mut pd = PushdownProcess::new("one-edge", 1);
    let p = pd.add_state("p", Player::Eve, 1);
    pd.skip(p, None, p);
    let g = restart_gadget(&pd).unwrap();
    let (c, z, w) = (1, 2, 3);
    let start = Configuration::new(p, vec![]);
    let step = |from: &Configuration| g.successors(from);
    // never restarting: p, c, p
    assert_eq!(step(&start), vec![Configuration::new(c, vec![])]);
    assert!(step(&Configuration::new(c, vec![])).contains(&start));
    // restart with no ♯: c, z (color 0), w (color d), p
    assert!(step(&Configuration::new(c, vec![])).contains(&Configuration::new(z, vec![])));
    assert!(step(&Configuration::new(z, vec![])).contains(&Configuration::new(w, vec![])));
    assert_eq!(step(&Configuration::new(w, vec![])), vec![start.clone()]);
    // w pops every ♯ before leaving
    assert_eq!(step(&Configuration::new(w, vec![0, 0])), vec![Configuration::new(w, vec![0])]);
}

#[test]
fn stabilization_window() {
    let s = stabilize(1..=6, 3, |h| Ok(h.min(3))).unwrap();
    assert_eq!(s.stable_from(), Some(3));
    assert_eq!(s.stable(), Some(3));
    let t = stabilize(1..=4, 3, |h| Ok(h.min(3))).unwrap();
    assert_eq!(t.stable(), None);
    assert!(t.to_string().contains("not stable"));
}

#[test]
fn solving_an_unfolding() {
    // Eve pushes a and must pop it back to see F; LoseEve at height 1 is harmless
    let pd = tiny();
    let r = solve_unfolded(&pd, 1, &Configuration::new(0, vec![]), "buchi", None).unwrap();
    assert!(r.start_wins);
    let r = solve_unfolded(&pd, 0, &Configuration::new(0, vec![]), "buchi", None).unwrap();
    assert!(!r.start_wins);
}

proptest! {
    #[test]
    fn unfolding_is_sound(seed in any::<u64>(), h in 0usize..4) {
        let pd = random_process(seed, &ProcessParams::default());
        let start = Configuration::new(0, vec![]);
        let u = unfold(&pd, h, &start, OverflowPolicy::LoseEve).unwrap();
        for v in u.arena.vertices() {
            let Some(c) = u.config(v) else {
                prop_assert!(u.overflow.contains(&v));
                prop_assert_eq!(u.arena.succ(v), &[v][..]);
                continue;
            };
            prop_assert!(c.height() <= h);
            let succ = pd.successors(c);
            for &w in u.arena.succ(v) {
                match u.config(w) {
                    Some(cw) => prop_assert!(succ.contains(cw)),
                    None => prop_assert!(succ.iter().any(|s| s.height() > h)),
                }
            }
            for s in succ.iter().filter(|s| s.height() <= h) {
                let w = u.vertex(s);
                prop_assert!(w.is_some_and(|w| u.arena.succ(v).contains(&w)));
            }
        }
    }

    #[test]
    fn more_room_helps_eve_in_buchi(seed in any::<u64>(), h in 0usize..3) {
        let pd = random_process(seed, &ProcessParams::default());
        let start = Configuration::new(0, vec![]);
        let lo = solve_unfolded(&pd, h, &start, "buchi", None).unwrap();
        let hi = solve_unfolded(&pd, h + 1, &start, "buchi", None).unwrap();
        for v in lo.result.eve_region.iter() {
            if let Some(c) = lo.unfold.config(v) {
                let w = hi.unfold.vertex(c).unwrap();
                prop_assert!(hi.result.eve_region.contains(w));
            }
        }
    }

    #[test]
    fn unfoldings_collapse(seed in any::<u64>(), h in 0usize..4) {
        let pd = random_process(seed, &ProcessParams::default());
        let start = Configuration::new(0, vec![]);
        let fin = solve_unfolded(&pd, h, &start, "finitary-buchi", None).unwrap();
        let b = solve_unfolded(&pd, h, &start, "buchi", None).unwrap();
        prop_assert_eq!(fin.result.eve_region, b.result.eve_region);
    }
}
