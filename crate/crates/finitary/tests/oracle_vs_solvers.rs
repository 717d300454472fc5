use finitary::oracle::oracle_region;
use finitary::random::{random_arena, random_set, RandomParams};
use finitary::solvers::solve;
use finitary::Condition;

#[test]
fn corpus_agrees() {
    let p = RandomParams::default();
    let mut mismatches = Vec::new();
    for seed in 0..200u64 {
        let a = random_arena(seed, &p);
        let f = random_set(seed, a.num_vertices());
        let mut conds = vec![
            Condition::Safety(f.clone()),
            Condition::Buchi(f.clone()),
            Condition::CoBuchi(f.clone()),
            Condition::Parity,
            Condition::FinitaryBuchi(f.clone()),
            Condition::BndParity,
            Condition::FinitaryParity,
        ];
        for n in 0..=3 {
            conds.push(Condition::BndUniformBuchi(f.clone(), n));
            conds.push(Condition::UniformBuchi(f.clone(), n));
        }
        for c in conds {
            let s = solve(&a, &c).unwrap().eve_region;
            let o = oracle_region(&a, &c).unwrap();
            if s != o {
                mismatches.push(format!("seed {seed} {c}: solver {s} oracle {o}"));
            }
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}
