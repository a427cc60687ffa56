//! Acceptance suite. Each test prints one `PASS` or `FAIL` line for its
//! criterion before asserting, so `cargo test --test acceptance -- --nocapture`
//! gives a readable scoreboard.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lazycops::expansion::{verify_expansion, ExpansionOptions};
use lazycops::game::Step;
use lazycops::graph::{
    balance_limit, exact_domination_number, find_balanced_separator, gen_gnp, gen_gnp_connected,
    gen_named, max_component_without, serialize_graph, SeparatorMode,
};
use lazycops::solver::{classic_cop_number, lazy_cop_number};
use lazycops::strategy::bounds::{
    genus_bound, k_main, k_main_prefactor, k_mid, k_sparse, recursion_slack,
};
use lazycops::strategy::{
    gnp_params, hypercube_robber_move, is_dangerous, is_safe, potential_params, Decomposition,
    GreedyCop, GreedyRobber, GnpRobber, OptimalCop, OptimalRobber, PotentialRobber, RandomCop,
    RandomRobber, SeparatorCop,
};
use lazycops::{play, seeded_rng, solve_lazy, GameRecord, GameState, Graph, Outcome, Side};
use rand::Rng as _;

fn report(id: u32, name: &str, ok: bool, detail: &str) {
    println!("{} criterion {id} ({name}): {detail}", if ok { "PASS" } else { "FAIL" });
}

fn tree(seed: u64) -> Graph {
    gen_named("random_tree", &[2 + (seed as usize % 11)], seed).unwrap()
}

fn dense_sample(seed: u64) -> Graph {
    gen_gnp_connected(10, 0.3, seed, 1000).unwrap()
}

/// The graphs of criteria 1 and 2 with their lazy cop numbers.
fn ground_truth_instances() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for s in 0..50 {
        out.push((format!("tree seed {s}"), tree(s)));
    }
    for n in 4..=12 {
        out.push((format!("C_{n}"), gen_named("cycle", &[n], 0).unwrap()));
    }
    for n in 1..=8 {
        out.push((format!("K_{n}"), gen_named("complete", &[n], 0).unwrap()));
    }
    for s in 0..100 {
        out.push((format!("G(10,0.3) seed {s}"), dense_sample(s)));
    }
    out
}

/// Sides alternate, cops first, and every state replays legally.
fn one_cop_per_round(g: &Graph, rec: &GameRecord) -> bool {
    let alternates = rec.transcript.iter().enumerate().all(|(i, step): (usize, &Step)| {
        step.side == if i % 2 == 0 { Side::Cops } else { Side::Robber }
    });
    alternates && rec.replay(g).is_ok()
}

#[test]
fn criterion_1_solver_ground_truth() {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut check = |label: String, g: &Graph, want: usize| {
        let t = Instant::now();
        let got = lazy_cop_number(g, 3);
        let el = t.elapsed();
        slowest = slowest.max(el);
        if got.as_ref().ok() != Some(&want) || el >= Duration::from_secs(1) {
            bad.push(format!("{label}: {got:?} in {el:?}"));
        }
    };
    for s in 0..50 {
        check(format!("tree seed {s}"), &tree(s), 1);
    }
    for n in 4..=12 {
        check(format!("C_{n}"), &gen_named("cycle", &[n], 0).unwrap(), 2);
    }
    for n in 1..=8 {
        check(format!("K_{n}"), &gen_named("complete", &[n], 0).unwrap(), 1);
    }
    let ok = bad.is_empty();
    report(
        1,
        "solver ground truth",
        ok,
        &format!("67 instances, {} mismatches, slowest {slowest:?}", bad.len()),
    );
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_2_classic_lazy_domination_chain() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for s in 0..100 {
        let g = dense_sample(s);
        let gamma = exact_domination_number(&g).unwrap();
        let c_l = lazy_cop_number(&g, gamma);
        let c = match c_l {
            Ok(cl) => classic_cop_number(&g, cl.min(3)),
            Err(ref e) => Err(e.clone()),
        };
        match (c, c_l) {
            (Ok(c), Ok(cl)) if c <= cl && cl <= gamma => {}
            other => bad.push(format!("seed {s}: {other:?}, gamma {gamma}")),
        }
    }
    let el = t.elapsed();
    let ok = bad.is_empty() && el < Duration::from_secs(300);
    report(
        2,
        "c <= c_L <= gamma",
        ok,
        &format!("100 samples, {} violations, {el:?}", bad.len()),
    );
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_3_optimal_play_realizes_solver() {
    let mut bad = Vec::new();
    let mut games = 0;
    for (label, g) in ground_truth_instances() {
        let c_l = lazy_cop_number(&g, 4).unwrap();
        // Cops win with c_L, the robber with one fewer.
        for k in [c_l, c_l - 1] {
            if k == 0 {
                continue;
            }
            let table = Arc::new(solve_lazy(&g, k).unwrap());
            let mut cop = OptimalCop::new(table.clone());
            let mut robber = OptimalRobber::new(table.clone());
            let rec = play(&g, &mut cop, &mut robber, k, 200).unwrap();
            games += 1;
            let fine = match table.placement_distance() {
                Some(d) => rec.outcome == Outcome::Capture && rec.rounds <= (d as usize).div_ceil(2),
                None => rec.outcome == Outcome::Survival,
            };
            if !fine || table.cop_win() != (k == c_l) {
                bad.push(format!("{label} k={k}: {:?} after {}", rec.outcome, rec.rounds));
            }
        }
    }
    let ok = bad.is_empty();
    report(3, "optimal play", ok, &format!("{games} games, {} violations", bad.len()));
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_4_potential_system() {
    let mut notes = Vec::new();
    let mut weights_ok = true;
    for n in 8..=64 {
        for eps in [0.5, 1.0, 2.0] {
            let p = potential_params(n, eps).unwrap();
            if !(p.first_weight_is_one() && p.w[1] == 1.0 && p.weights_decrease_by_two()) {
                weights_ok = false;
                notes.push(format!("weights n={n} eps={eps}"));
            }
        }
    }

    // Exhaustive argmin on Q_10.
    let q10 = gen_named("hypercube", &[10], 0).unwrap();
    let p10 = potential_params(10, 1.0).unwrap();
    let mut rng = seeded_rng(4);
    let mut argmin_bad = 0;
    for _ in 0..1000 {
        let k = rng.gen_range(1..=8);
        let cops: Vec<usize> = (0..k).map(|_| rng.gen_range(0..1024)).collect();
        let r = loop {
            let r = rng.gen_range(0..1024);
            if !cops.contains(&r) {
                break r;
            }
        };
        let s = GameState::new(cops.clone(), r, Side::Robber, 1);
        let mut best: Option<(usize, f64)> = None;
        for u in 0..1024usize {
            if (u ^ r).count_ones() != 1 || cops.contains(&u) {
                continue;
            }
            let pot: f64 = cops.iter().map(|&c| p10.weight((c ^ u).count_ones() as usize)).sum();
            if best.map_or(true, |(_, b)| pot < b) {
                best = Some((u, pot));
            }
        }
        let want = best.map_or(r, |b| b.0);
        if hypercube_robber_move(&p10, &q10, &s).unwrap() != want {
            argmin_bad += 1;
        }
    }
    if argmin_bad > 0 {
        notes.push(format!("{argmin_bad} argmin mismatches"));
    }

    // Survival on Q_12 against five greedy cops.
    let t = Instant::now();
    let q12 = gen_named("hypercube", &[12], 0).unwrap();
    let p12 = potential_params(12, 1.0).unwrap();
    let mut survived = 0;
    let mut start_zero = true;
    for seed in 0..20 {
        let mut cops = GreedyCop::new(seed);
        let mut robber = PotentialRobber::new(p12.clone());
        let rec = play(&q12, &mut cops, &mut robber, 5, 10_000).unwrap();
        if p12.potential_at(&rec.cops_start, rec.robber_start) != 0.0 {
            start_zero = false;
        }
        if rec.outcome == Outcome::Survival && rec.rounds == 10_000 {
            survived += 1;
        }
    }
    let el = t.elapsed();
    if !start_zero {
        notes.push("non-zero initial potential".into());
    }
    let ok = weights_ok && argmin_bad == 0 && start_zero && survived == 20 && el < Duration::from_secs(120);
    report(
        4,
        "potential system",
        ok,
        &format!("weights ok {weights_ok}, argmin 1000 states {argmin_bad} bad, P=0 at start {start_zero}, survived {survived}/20 in {el:?} {notes:?}"),
    );
    assert!(ok);
}

/// Floyd-Warshall distances in `g` minus `removed`.
fn all_pairs_without(g: &Graph, removed: &[usize]) -> Vec<Vec<usize>> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        if removed.contains(&u) {
            continue;
        }
        d[u][u] = 0;
        for &w in g.neighbors(u) {
            if !removed.contains(&w) {
                d[u][w] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

#[test]
fn criterion_5_gnp_robber() {
    // Classifiers against the oracle, with hand-set thresholds so every level
    // matters.
    let mut rng = seeded_rng(5);
    let mut instances = 0;
    let mut disagreements = 0;
    let mut seed = 0u64;
    while instances < 200 {
        seed += 1;
        let n = rng.gen_range(8..=30);
        let p = rng.gen_range(0.1..0.4);
        let g = gen_gnp(n, p, seed).unwrap();
        let Some(v) = (0..n).find(|&v| g.degree(v) >= 2) else { continue };
        let mut params = gnp_params(800, 800f64.powf(-0.6), 0.4, None).unwrap();
        let levels = rng.gen_range(2..=3);
        params.level_threshold = (0..=levels)
            .map(|r| if r < 2 { 0.0 } else { rng.gen_range(0..4) as f64 + 0.5 })
            .collect();
        let cops: Vec<usize> = (0..rng.gen_range(1..=8)).map(|_| rng.gen_range(0..n)).collect();
        instances += 1;
        let within = |dist: &Vec<Vec<usize>>, from: usize, r: usize| {
            cops.iter().filter(|&&c| dist[from][c] <= r).count() as f64
        };
        for &x in g.neighbors(v) {
            let dx = all_pairs_without(&g, &[x]);
            let want = (0..=levels).all(|i| within(&dx, v, i) <= params.level_threshold[i]);
            if is_safe(&g, &cops, v, x, &params).unwrap() != want {
                disagreements += 1;
            }
            let dvx = all_pairs_without(&g, &[v, x]);
            for &y in g.neighbors(v).iter().filter(|&&y| y != x) {
                for r in 0..=levels {
                    let want = within(&dvx, y, r) > params.level_threshold[r];
                    if is_dangerous(&g, &cops, v, x, y, r, &params).unwrap() != want {
                        disagreements += 1;
                    }
                }
            }
        }
    }

    let n = 800;
    let p = (n as f64).powf(-0.6);
    let params = gnp_params(n, p, 0.4, None).unwrap();
    let pre_ok = params.j == 2
        && (params.k_prefactor - 0.2 / 2880.0).abs() <= 1e-12 * (0.2 / 2880.0)
        && (k_main_prefactor(2, 0.4) - 0.2 / 2880.0).abs() <= 1e-12 * (0.2 / 2880.0);

    let t = Instant::now();
    let mut vs_greedy = 0;
    let mut vs_random = 0;
    for seed in 0..10u64 {
        let g = gen_gnp(n, p, seed).unwrap();
        let mut robber = GnpRobber::new(gnp_params(n, p, 0.4, None).unwrap());
        if play(&g, &mut GreedyCop::new(seed), &mut robber, 1, 10 * n).unwrap().outcome
            == Outcome::Survival
        {
            vs_greedy += 1;
        }
        let mut robber = GnpRobber::new(gnp_params(n, p, 0.4, None).unwrap());
        if play(&g, &mut RandomCop::new(seed), &mut robber, 1, 10 * n).unwrap().outcome
            == Outcome::Survival
        {
            vs_random += 1;
        }
    }
    let ok = disagreements == 0 && pre_ok && vs_greedy >= 9 && vs_random >= 9;
    report(
        5,
        "gnp robber",
        ok,
        &format!(
            "oracle {instances} instances {disagreements} disagreements, prefactor {:.15e}, survived {vs_greedy}/10 vs greedy and {vs_random}/10 vs random in {:?}",
            params.k_prefactor,
            t.elapsed()
        ),
    );
    assert!(ok);
}

fn mixed_graph(i: u64) -> Graph {
    match i % 6 {
        0 => gen_named("random_tree", &[5 + (i as usize % 40)], i).unwrap(),
        1 => gen_named("grid2d", &[2 + (i as usize % 7), 2 + (i as usize / 6 % 7)], 0).unwrap(),
        2 => gen_named("cycle", &[3 + (i as usize % 30)], 0).unwrap(),
        3 => gen_gnp_connected(10 + (i as usize % 40), 0.3, i, 1000).unwrap(),
        4 => gen_named("hypercube", &[1 + (i as usize % 6)], 0).unwrap(),
        _ => gen_named(["petersen", "star", "complete", "path"][i as usize / 6 % 4], &[1 + (i as usize % 12)], 0)
            .unwrap(),
    }
}

#[test]
fn criterion_6_separators() {
    let mut notes = Vec::new();

    let mut balance_bad = 0;
    for i in 0..100 {
        let g = mixed_graph(i);
        let s = find_balanced_separator(&g, SeparatorMode::Heuristic).unwrap();
        if max_component_without(&g, &s.mask(g.n())) > balance_limit(g.n()) {
            balance_bad += 1;
        }
    }
    if balance_bad > 0 {
        notes.push(format!("{balance_bad} unbalanced"));
    }

    let mut size_bad = 0;
    for r in 1..=8 {
        for c in 1..=8 {
            let g = gen_named("grid2d", &[r, c], 0).unwrap();
            let s = find_balanced_separator(&g, SeparatorMode::Heuristic).unwrap();
            if s.len() as f64 > 2.0 * (2.0 * g.n() as f64).sqrt() + 1.0 {
                size_bad += 1;
            }
        }
    }
    if size_bad > 0 {
        notes.push(format!("{size_bad} oversized grid separators"));
    }

    let mut optimal_bad = 0;
    for i in 0..20u64 {
        let g = gen_gnp_connected(4 + (i as usize % 9), 0.35, 600 + i, 1000).unwrap();
        let k = Decomposition::new(&g).unwrap().required();
        let table = Arc::new(solve_lazy(&g, k).unwrap());
        let mut cop = SeparatorCop::new(&g, k).unwrap();
        let mut robber = OptimalRobber::new(table);
        let rec = play(&g, &mut cop, &mut robber, k, 10 * g.n() * k).unwrap();
        if rec.outcome != Outcome::Capture || !one_cop_per_round(&g, &rec) {
            optimal_bad += 1;
        }
    }
    if optimal_bad > 0 {
        notes.push(format!("{optimal_bad} escapes from separator cops"));
    }

    let mut grid_bad = 0;
    let mut budget_bad = 0;
    for side in 2..=10 {
        let g = gen_named("grid2d", &[side, side], 0).unwrap();
        let tree = Decomposition::new(&g).unwrap();
        let k = tree.required();
        if tree.separators_within_genus_bound(0.0) && k as f64 > 20.0 * (2.0 * g.n() as f64).sqrt() {
            budget_bad += 1;
        }
        for seed in 0..2u64 {
            let greedy = play(&g, &mut SeparatorCop::new(&g, k).unwrap(), &mut GreedyRobber, k, 10 * g.n() * k).unwrap();
            let random = play(
                &g,
                &mut SeparatorCop::new(&g, k).unwrap(),
                &mut RandomRobber::new(seed),
                k,
                10 * g.n() * k,
            )
            .unwrap();
            for rec in [greedy, random] {
                if rec.outcome != Outcome::Capture || !one_cop_per_round(&g, &rec) {
                    grid_bad += 1;
                }
            }
        }
    }
    for i in 0..20u64 {
        let g = [
            gen_named("random_tree", &[10 + i as usize * 5], i).unwrap(),
            gen_named("cycle", &[3 + i as usize * 4], 0).unwrap(),
        ];
        for g in g {
            let tree = Decomposition::new(&g).unwrap();
            if tree.separators_within_genus_bound(0.0)
                && tree.required() as f64 > 20.0 * (2.0 * g.n() as f64).sqrt()
            {
                budget_bad += 1;
            }
        }
    }
    if grid_bad + budget_bad > 0 {
        notes.push(format!("{grid_bad} grid games lost, {budget_bad} budget overruns"));
    }
    let ok = notes.is_empty();
    report(
        6,
        "separator machinery",
        ok,
        &format!("100 balance checks, 64 grid sizes, 20 optimal robbers, 36 grid games, 49 budgets {notes:?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_7_expansion_verifier() {
    let t = Instant::now();
    let n = 3000;
    let g = gen_gnp(n, (n as f64).powf(-0.5), 3).unwrap();
    let opts = ExpansionOptions {
        seed: 3,
        cycle_length: Some(4),
        ..ExpansionOptions::default()
    };
    let r = verify_expansion(&g, 0.5, 0.05, &opts).unwrap();
    let el = t.elapsed();
    let first = r.neighbourhood(1).unwrap();
    let cycles = r.cycles.as_ref().unwrap();
    let ok = first.pass
        && first.checked == 200
        && cycles.pass
        && cycles.checked == 200
        && el < Duration::from_secs(60);
    report(
        7,
        "expansion verifier",
        ok,
        &format!(
            "(i) i=1: {}/{} outside tolerance, ratios [{:.4}, {:.4}]; (iii) L=4: {}/{} edges above {:.4}, max {} mean {:.2}; {el:?}",
            first.failures, first.checked, first.min_ratio, first.max_ratio,
            cycles.failures, cycles.checked, cycles.ceiling, cycles.max_count, cycles.mean_count
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_bound_calculators() {
    let genus = genus_bound(96.0, 0.0);
    let want = 20.0 * 192f64.sqrt();
    let genus_ok = format!("{genus:.11e}") == format!("{want:.11e}");
    let (a, b) = recursion_slack();
    let slack_ok = a < 55.0 && b < 19.0;

    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * y.abs();
    let (j, alpha, n, d, p) = (2, 0.4, 1.0e4, 40.0, 0.004);
    let main_ok = close(k_main(j, alpha, 2.0 * p) / k_main(j, alpha, p), 0.5)
        && close(k_main(j, alpha, p) * p, k_main_prefactor(j, alpha));
    let mid_ok = close(k_mid(j, alpha, n, 2.0 * d) / k_mid(j, alpha, n, d), 4.0)
        && close(k_mid(j, alpha, n * n, d) / k_mid(j, alpha, n, d), 0.5);
    let sparse_ok = close(k_sparse(j, alpha, n, 2.0 * d) / k_sparse(j, alpha, n, d), 0.5)
        && close(k_sparse(j, alpha, n * n, d) / k_sparse(j, alpha, n, d), n / 4.0);
    let ok = genus_ok && slack_ok && main_ok && mid_ok && sparse_ok;
    report(
        8,
        "bound calculators",
        ok,
        &format!(
            "genus {genus:.12} vs {want:.12}, slack {a:.6} < 55 and {b:.6} < 19, scaling main {main_ok} mid {mid_ok} sparse {sparse_ok}"
        ),
    );
    assert!(ok);
}

fn cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_lazycops"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn criterion_9_reproducibility() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let config = path("config.json");
    std::fs::write(
        &config,
        r#"{"family": {"kind": "gnp", "n": 200, "alpha": 0.4}, "cops": "greedy",
            "robber": "gnp:alpha=0.4", "k": 2, "trials": 16, "max_rounds": 300, "seed": 42}"#,
    )
    .unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4", "1"] {
        let (csv, json) = (path(&format!("t{threads}.csv")), path(&format!("t{threads}.json")));
        cli(&["experiment", "--config", &config, "--out", &csv, "--json-out", &json, "--threads", threads]);
        outputs.push((std::fs::read(&csv).unwrap(), std::fs::read(&json).unwrap()));
    }
    let experiment_ok = outputs.windows(2).all(|w| w[0] == w[1]);

    let tree = path("tree.txt");
    std::fs::write(&tree, serialize_graph(&tree_for_cli())).unwrap();
    let sim = ["simulate", "--graph", &tree, "--cops", "random", "--robber", "random", "--k", "1", "--seed", "9"];
    let expansion = ["verify-expansion", "--n", "500", "--alpha", "0.5", "--eps", "0.05", "--seed", "3", "--pairs", "200"];
    let others_ok = cli(&sim) == cli(&sim) && cli(&expansion) == cli(&expansion);

    let ok = experiment_ok && others_ok;
    report(
        9,
        "reproducibility",
        ok,
        &format!("experiment CSV/JSON across 1 and 4 threads identical {experiment_ok}, simulate and verify-expansion reruns identical {others_ok}"),
    );
    assert!(ok);
}

fn tree_for_cli() -> Graph {
    gen_named("random_tree", &[40], 1).unwrap()
}
