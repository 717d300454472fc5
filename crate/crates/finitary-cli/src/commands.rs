use super::{Command, ConditionArgs, ExamplesCmd, ExperimentCmd, SimulateArgs, SolveArgs, UnfoldArgs, VerifyArgs};
use anyhow::{anyhow, bail, Context, Result};
use finitary::examples::{self, check_claim, Expected, Fixture};
use finitary::oracle::oracle_min_memory;
use finitary::play::simulate;
use finitary::pushdown::{
    collapse_bound_upper, simulate_deterministic, stabilize, unfold, OverflowPolicy, PushdownProcess, UnfoldResult,
};
use finitary::solvers::{minimal_uniform_bound, solve};
use finitary::verify::{verify, Verdict};
use finitary::{Arena, Condition, Error, Player, Strategy, VertexSet};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;

pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::CapExceeded(_) | Error::BudgetExceeded(_) | Error::SpaceTooLarge(_) | Error::NoCycleWithinBudget(_),
        ) => 3,
        _ => 2,
    }
}

pub fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Solve(a) => solve_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Simulate(a) => simulate_cmd(a),
        Command::Unfold(a) => unfold_cmd(a),
        Command::Examples { action } => examples_cmd(action),
        Command::Experiment { which } => experiment_cmd(which),
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

fn write(path: &str, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {path}"))
}

fn load_arena(path: &str) -> Result<Arena> {
    Arena::parse(&read(path)?).with_context(|| format!("in {path}"))
}

fn load_pushdown(path: &str) -> Result<PushdownProcess> {
    PushdownProcess::parse(&read(path)?).with_context(|| format!("in {path}"))
}

fn parse_ids(text: &str, n: usize) -> Result<VertexSet> {
    let mut ids = Vec::new();
    for t in text.split(',').map(str::trim).filter(|t| !t.is_empty() && *t != "-") {
        let v: usize = t.parse().map_err(|_| Error::BadParams(format!("bad vertex {t:?}")))?;
        if v >= n {
            return Err(Error::BadParams(format!("vertex {v} out of range")).into());
        }
        ids.push(v);
    }
    Ok(VertexSet::from_ids(n, ids))
}

fn condition(arena: &Arena, c: &ConditionArgs) -> Result<Condition> {
    let set = c.set.as_deref().map(|s| parse_ids(s, arena.num_vertices())).transpose()?;
    Ok(Condition::from_name(arena, &c.condition, c.n, set)?)
}

fn check_start(arena: &Arena, v: usize) -> Result<()> {
    if v >= arena.num_vertices() {
        return Err(Error::BadParams(format!("start vertex {v} out of range")).into());
    }
    Ok(())
}

fn policy(name: &str) -> Result<OverflowPolicy> {
    OverflowPolicy::from_name(name).ok_or_else(|| Error::BadParams(format!("unknown policy {name}")).into())
}

/// `A..B` or `A..=B`, both inclusive.
fn range(text: &str) -> Result<RangeInclusive<usize>> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| Error::BadParams(format!("range {text:?} is not A..B")))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let bad = || Error::BadParams(format!("bad range {text:?}"));
    let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad().into());
    }
    Ok(a..=b)
}

fn params(list: &[String]) -> Result<Vec<(String, usize)>> {
    list.iter()
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Error::BadParams(format!("parameter {p:?} is not k=v")))?;
            let v = v.parse().map_err(|_| Error::BadParams(format!("parameter {p:?} needs a number")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

fn build(name: &str, list: &[String]) -> Result<examples::Built> {
    let ps = params(list)?;
    let refs: Vec<(&str, usize)> = ps.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    Ok(examples::build(name, &refs)?)
}

fn player(p: Player) -> &'static str {
    match p {
        Player::Eve => "E",
        Player::Adam => "A",
    }
}

fn memory(s: Option<&Strategy>) -> Value {
    s.map_or(Value::Null, |s| json!(s.memory_size()))
}

fn solve_cmd(a: SolveArgs) -> Result<u8> {
    let arena = load_arena(&a.input)?;
    let cond = condition(&arena, &a.cond)?;
    check_start(&arena, a.start)?;
    let r = solve(&arena, &cond)?;
    let winner = if r.eve_region.contains(a.start) { Player::Eve } else { Player::Adam };
    if let Some(path) = &a.emit_strategy {
        let s = r
            .strategy(winner)
            .ok_or_else(|| anyhow!("the solver emits no strategy for {winner} here"))?;
        write(path, &s.to_text())?;
    }
    if a.dot {
        let mut s = arena.to_dot();
        let _ = writeln!(s, "// region E: {}", r.eve_region);
        print!("{s}");
    } else if a.json {
        let v = json!({
            "arena": arena.name(),
            "condition": cond.name(),
            "N": cond.bound(),
            "set": cond.set().map(|s| s.to_vec()),
            "eve_region": r.eve_region.to_vec(),
            "adam_region": r.adam_region.to_vec(),
            "start": a.start,
            "winner": player(winner),
            "eve_memory": memory(r.eve_strategy.as_ref()),
            "adam_memory": memory(r.adam_strategy.as_ref()),
            "trace": {
                "iterations": r.trace.iterations,
                "slices": r.trace.slices,
                "notes": r.trace.notes,
            },
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "condition {cond}");
        let _ = writeln!(s, "region E: {}", r.eve_region);
        let _ = writeln!(s, "region A: {}", r.adam_region);
        let _ = writeln!(s, "start {}: {}", a.start, player(winner));
        for p in [Player::Eve, Player::Adam] {
            if let Some(st) = r.strategy(p) {
                let _ = writeln!(s, "strategy {}: {} memory states", player(p), st.memory_size());
            }
        }
        let _ = writeln!(s, "iterations {}", r.trace.iterations);
        if !r.trace.slices.is_empty() {
            let sl: Vec<String> = r.trace.slices.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "slices {}", sl.join(","));
        }
        for n in &r.trace.notes {
            let _ = writeln!(s, "note {n}");
        }
        print!("{s}");
    }
    Ok(if winner == Player::Eve { 0 } else { 1 })
}

fn verify_cmd(a: VerifyArgs) -> Result<u8> {
    let arena = load_arena(&a.input)?;
    let strategy = Strategy::parse(&arena, &read(&a.strategy)?).with_context(|| format!("in {}", a.strategy))?;
    let cond = condition(&arena, &a.cond)?;
    let from = parse_ids(&a.from, arena.num_vertices())?;
    let v = verify(&arena, &strategy, &cond, &from)?;
    if a.json {
        let body = match &v {
            Verdict::Holds => json!({ "holds": true }),
            Verdict::Fails(c) => json!({
                "holds": false,
                "stem": c.stem,
                "cycle": c.cycle,
                "witness_pos": c.witness_pos,
                "witness_dist": c.witness_dist,
                "pump": c.pump,
            }),
        };
        println!("{}", serde_json::to_string_pretty(&body)?);
    } else {
        println!("{} strategy, {} memory states", player(strategy.player), strategy.memory_size());
        println!("{cond} from {from}: {v}");
    }
    Ok(if v.holds() { 0 } else { 1 })
}

fn simulate_cmd(a: SimulateArgs) -> Result<u8> {
    let arena = load_arena(&a.input)?;
    let eve = Strategy::parse(&arena, &read(&a.eve)?).with_context(|| format!("in {}", a.eve))?;
    let adam = Strategy::parse(&arena, &read(&a.adam)?).with_context(|| format!("in {}", a.adam))?;
    check_start(&arena, a.start)?;
    let sim = simulate(&arena, &eve, &adam, a.start, a.horizon)?;
    let dist: Vec<String> = sim
        .dist
        .iter()
        .zip(&sim.censored)
        .map(|(d, &c)| match d {
            Some(d) => d.to_string(),
            None if c => "?".into(),
            None => "inf".into(),
        })
        .collect();
    if a.json {
        let v = json!({
            "play": sim.prefix.vertices,
            "colors": sim.prefix.colors,
            "dist": sim.dist,
            "censored": sim.censored,
            "max_counter": sim.counters.max_value(),
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        let join = |v: Vec<String>| v.join(" ");
        println!("play {}", join(sim.prefix.vertices.iter().map(|v| v.to_string()).collect()));
        println!("colors {}", join(sim.prefix.colors.iter().map(|v| v.to_string()).collect()));
        println!("dist {} (? = beyond the horizon)", join(dist));
        println!("max counter {}", sim.counters.max_value());
    }
    Ok(0)
}

/// Arena text followed by the configuration of every vertex as comments.
fn unfolding_text(pd: &PushdownProcess, u: &UnfoldResult) -> String {
    let mut s = u.arena.to_text();
    for v in u.arena.vertices() {
        let _ = writeln!(s, "# {v} {}", u.label(pd, v));
    }
    s
}

fn unfold_cmd(a: UnfoldArgs) -> Result<u8> {
    let pd = load_pushdown(&a.pushdown)?;
    let start = pd.parse_configuration(&a.start)?;
    let u = unfold(&pd, a.height, &start, policy(&a.policy)?)?;
    let text = if a.dot { u.arena.to_dot() } else { unfolding_text(&pd, &u) };
    match &a.out {
        Some(path) => {
            write(path, &text)?;
            let ov: Vec<String> = u.overflow.iter().map(|v| v.to_string()).collect();
            println!(
                "vertices {} edges {} overflow {} dropped {}",
                u.arena.num_vertices(),
                u.arena.num_edges(),
                if ov.is_empty() { "-".into() } else { ov.join(",") },
                u.dropped
            );
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn examples_cmd(cmd: ExamplesCmd) -> Result<u8> {
    match cmd {
        ExamplesCmd::List { json } => {
            if json {
                let v: Vec<Value> = examples::list()
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "kind": e.kind,
                            "params": e.params.iter().map(|(k, d)| json!({"name": k, "default": d})).collect::<Vec<_>>(),
                            "source": e.source,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                for e in examples::list() {
                    let ps: Vec<String> = e.params.iter().map(|(k, d)| format!("{k}={d}")).collect();
                    let ps = if ps.is_empty() { "-".into() } else { ps.join(",") };
                    println!("{:<17} {:<8} {:<10} {}", e.name, e.kind, ps, e.source);
                }
            }
            Ok(0)
        }
        ExamplesCmd::Dump {
            name,
            params,
            format,
            height,
        } => {
            let b = build(&name, &params)?;
            let text = match (&b.fixture, format.as_deref()) {
                (Fixture::Arena(a), None | Some("arena")) => a.to_text(),
                (Fixture::Arena(a), Some("dot")) => a.to_dot(),
                (Fixture::Pushdown { process, start }, None | Some("pushdown")) => {
                    format!("{}# start {}\n", process.to_text(), process.format_configuration(start))
                }
                (Fixture::Pushdown { process, start }, Some(f @ ("arena" | "dot"))) => {
                    let h = height
                        .or_else(|| b.claims.iter().find_map(|c| c.height))
                        .unwrap_or(3);
                    let p = b.claims.first().map_or(OverflowPolicy::LoseEve, |c| c.policy);
                    let u = unfold(process, h, start, p)?;
                    if f == "dot" {
                        u.arena.to_dot()
                    } else {
                        unfolding_text(process, &u)
                    }
                }
                (_, Some(f)) => bail!(Error::BadParams(format!("format {f} does not apply to {name}"))),
            };
            print!("{text}");
            Ok(0)
        }
        ExamplesCmd::Check { name, params } => {
            let b = build(&name, &params)?;
            let mut failed = false;
            for c in &b.claims {
                let o = check_claim(&b, c)?;
                let verdict = match o.holds {
                    Some(true) => "holds",
                    Some(false) => {
                        failed = true;
                        "FAILS"
                    }
                    None => "measured",
                };
                println!("{c}: {verdict} ({})", o.measured);
            }
            Ok(u8::from(failed))
        }
    }
}

fn experiment_cmd(cmd: ExperimentCmd) -> Result<u8> {
    match cmd {
        ExperimentCmd::CollapseGrowth { example, n_range, k, csv } => {
            if example != "bincounter" {
                bail!(Error::BadParams(format!("{example} is not a deterministic counter")));
            }
            let mut out = String::from("n,k,states,period,max_gap,collapse_bound,ratio\n");
            let mut prev: Option<usize> = None;
            for n in range(&n_range)? {
                let b = examples::build("bincounter", &[("n", n), ("k", k)])?;
                let (pd, start) = b.pushdown().expect("a pushdown fixture");
                let run = simulate_deterministic(pd, start, 50_000_000)?;
                let gap = run.max_gap.ok_or_else(|| anyhow!("the counter never visits F"))?;
                let ratio = prev.map_or(String::new(), |p| format!("{:.4}", gap as f64 / p as f64));
                let line = format!(
                    "{n},{k},{},{},{gap},{},{ratio}\n",
                    pd.num_states(),
                    run.period,
                    collapse_bound_upper(pd.num_states(), pd.alphabet.len())
                );
                if csv.is_none() {
                    print!("{}{line}", if prev.is_none() { out.as_str() } else { "" });
                }
                out.push_str(&line);
                prev = Some(gap);
            }
            if let Some(path) = csv {
                write(&path, &out)?;
            }
            Ok(0)
        }
        ExperimentCmd::MinBound {
            pushdown,
            start,
            height_range,
            policy: pol,
            window,
            cap,
            csv,
        } => {
            let pd = load_pushdown(&pushdown)?;
            let start = pd.parse_configuration(&start)?;
            let pol = policy(&pol)?;
            let mut out = String::from("height,vertices,min_bound\n");
            if csv.is_none() {
                print!("{out}");
            }
            let st = stabilize(range(&height_range)?, window, |h| {
                let u = unfold(&pd, h, &start, pol)?;
                let b = minimal_uniform_bound(&u.arena, &u.arena.buchi_set(), 0, cap)?;
                let line = format!(
                    "{h},{},{}\n",
                    u.arena.num_vertices(),
                    b.map_or("none".to_string(), |b| b.to_string())
                );
                if csv.is_none() {
                    print!("{line}");
                }
                out.push_str(&line);
                Ok(b)
            })?;
            if let Some(path) = csv {
                write(&path, &out)?;
            }
            let verdict = match (st.stable_from(), st.stable()) {
                (Some(h), Some(v)) => format!(
                    "stable from H={h}: {} (window {window}, a heuristic witness only)",
                    v.map_or("none".to_string(), |v| v.to_string())
                ),
                _ => format!("not stable over a window of {window}"),
            };
            println!("{verdict}");
            Ok(if st.stable().is_some() { 0 } else { 1 })
        }
        ExperimentCmd::MemoryBound {
            example,
            params,
            player: who,
            cap,
            condition,
            n,
            start,
        } => {
            let who = Player::from_letter(&who).ok_or_else(|| Error::BadParams("player must be E or A".into()))?;
            let b = build(&example, &params)?;
            let arena = b
                .arena()
                .ok_or_else(|| Error::BadParams(format!("{example} is a pushdown fixture")))?;
            let claim = b.claims.iter().find(|c| {
                matches!(c.expected, Expected::MinMemory(p, ..) | Expected::NoPositional(p) if p == who)
            });
            let (cname, n, start) = match (condition, claim) {
                (Some(c), _) => (c, n, start.unwrap_or(0)),
                (None, Some(c)) => (c.condition.to_string(), c.n, c.start.parse().unwrap_or(0)),
                (None, None) => bail!(Error::BadParams(format!("{example} records no memory claim; pass --condition"))),
            };
            check_start(arena, start)?;
            let cond = Condition::from_name(arena, &cname, n, None)?;
            let from = VertexSet::from_ids(arena.num_vertices(), [start]);
            let m = oracle_min_memory(arena, who, &cond, &from, cap)?;
            println!("{example} {cond} from {start}, player {}", player(who));
            match m {
                Some(k) => println!("least memory {k}"),
                None => println!("no winning strategy with at most {cap} memory states"),
            }
            Ok(if m.is_some() { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_are_inclusive() {
        assert_eq!(range("2..5").unwrap(), 2..=5);
        assert_eq!(range("3..=3").unwrap(), 3..=3);
        assert!(range("5..2").is_err());
        assert!(range("7").is_err());
    }

    #[test]
    fn params_and_ids() {
        assert_eq!(params(&["n=3".into()]).unwrap(), vec![("n".to_string(), 3)]);
        assert!(params(&["n".into()]).is_err());
        assert_eq!(parse_ids("0, 2", 3).unwrap(), VertexSet::from_ids(3, [0, 2]));
        assert!(parse_ids("3", 3).is_err());
        assert_eq!(exit_code(&Error::BudgetExceeded("x".into()).into()), 3);
        assert_eq!(exit_code(&anyhow!("other")), 2);
    }
}
