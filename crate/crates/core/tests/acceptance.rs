//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p tempoctrl-core --test acceptance`. The dataset check reads
//! edge lists from `$TEMPOCTRL_COLONY_DIR` (default `data/colonies` at the workspace
//! root) and is skipped when no files are found.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempoctrl_core::controllability::check_submodular;
use tempoctrl_core::detect::{otaha_with, greedy_with, BruteForceOptions, LazyOptions, Objective};
use tempoctrl_core::edges::{
    attack_simulation, classify_edges, AttackOptions, AttackStrategy, EdgeRole,
};
use tempoctrl_core::oracle::random_rank;
use tempoctrl_core::{
    brute_force, check_bound, controllable_dimension, greedy_baseline, otaha,
    parse_temporal_edgelist, DriverSet, GeneratorSpec, ParseOptions, ResidualState,
    Result, TemporalNetwork,
};

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

struct Criterion {
    id: u32,
    name: &'static str,
    run: fn() -> Result<Verdict>,
}

fn verdict(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

/// Coverage function standing in for the flow objective: node `v` covers `sets[v]`.
struct GainTable {
    sets: Vec<Vec<usize>>,
    universe: usize,
}

impl Objective for GainTable {
    type State = Vec<bool>;

    fn ground_size(&self) -> usize {
        self.sets.len()
    }

    fn target(&self) -> usize {
        self.universe
    }

    fn empty_state(&self) -> Vec<bool> {
        vec![false; self.universe]
    }

    fn value(&self, state: &Vec<bool>) -> usize {
        state.iter().filter(|&&c| c).count()
    }

    fn extend(&self, state: &Vec<bool>, node: usize) -> Result<(usize, Vec<bool>)> {
        let mut next = state.clone();
        let gain = self.sets[node].iter().filter(|&&e| !std::mem::replace(&mut next[e], true)).count();
        Ok((gain, next))
    }

    fn evaluate(&self, set: &[usize]) -> Result<usize> {
        let mut state = self.empty_state();
        for &v in set {
            state = self.extend(&state, v)?.1;
        }
        Ok(self.value(&state))
    }
}

fn lazy_evaluation_golden() -> Result<Verdict> {
    // singleton gains 5, 2, 4, 2, 1, 1, 1, 1, 1, 1 over a universe of 10
    let table = GainTable {
        sets: vec![
            vec![0, 1, 2, 3, 4],
            vec![0, 8],
            vec![4, 5, 6, 7],
            vec![8, 9],
            vec![5],
            vec![6],
            vec![7],
            vec![8],
            vec![9],
            vec![9],
        ],
        universe: 10,
    };
    let started = Instant::now();
    let lazy = otaha_with(&table, &[], LazyOptions::default())?;
    let plain = greedy_with(&table)?;
    let elapsed = started.elapsed();
    let ok = lazy.drivers == [0, 2, 3]
        && lazy.f_trace == [5, 8, 10]
        && lazy.evaluations == 13
        && plain.evaluations == 27
        && elapsed < Duration::from_secs(1);
    Ok(verdict(
        ok,
        format!(
            "picked v{:?} (1-based), f {:?}, lazy {} vs plain {} evaluations, {:.2?}",
            lazy.drivers.iter().map(|v| v + 1).collect::<Vec<_>>(),
            lazy.f_trace,
            lazy.evaluations,
            plain.evaluations,
            elapsed
        ),
    ))
}

fn online_increment_equivalence() -> Result<Verdict> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut mismatches = 0;
    let instances = 500;
    for k in 0..instances {
        let n = rng.gen_range(2..=12);
        let steps = rng.gen_range(1..=6);
        let p = [0.1, 0.2, 0.3][k % 3];
        let net = GeneratorSpec::er(n, steps, p, rng.gen()).generate()?;
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(&mut rng);
        let size = rng.gen_range(0..n);
        let d = DriverSet::new(nodes[..size].iter().copied());
        let v = nodes[size];

        let mut state = ResidualState::for_network(&net);
        for &u in d.nodes() {
            state.add_driver(u)?;
        }
        let online = state.add_driver(v)?;
        let scratch = controllable_dimension(&net, &d.with(v))? - controllable_dimension(&net, &d)?;
        if online != scratch {
            mismatches += 1;
        }
    }
    let elapsed = started.elapsed();
    Ok(verdict(
        mismatches == 0 && elapsed < Duration::from_secs(60),
        format!("{mismatches} mismatches over {instances} instances, {elapsed:.2?}"),
    ))
}

fn near_optimality() -> Result<Verdict> {
    let mut nets = Vec::new();
    for seed in 0..50 {
        let p = [0.05, 0.1, 0.15, 0.2, 0.3][seed as usize % 5];
        nets.push(GeneratorSpec::er(10, 10, p, 100 + seed).generate()?);
    }
    for seed in 0..20 {
        let k = [1.0, 1.5, 2.0, 3.0][seed as usize % 4];
        nets.push(GeneratorSpec::scale_free(12, 10, k, 200 + seed).generate()?);
    }
    let (mut optimal, mut bounded) = (0, 0);
    for net in &nets {
        let sel = otaha(net)?;
        let n_d = brute_force(net, BruteForceOptions::default())?
            .min_size
            .expect("retention makes V controlling");
        optimal += usize::from(sel.len() == n_d);
        bounded += usize::from(check_bound(&sel, n_d));
    }
    let total = nets.len();
    let rate = optimal as f64 / total as f64;
    Ok(verdict(
        rate >= 0.9 && bounded == total,
        format!("optimal on {optimal}/{total} ({:.1}%), bound holds on {bounded}/{total}", rate * 100.0),
    ))
}

fn submodularity_suite() -> Result<Verdict> {
    let (mut trials, mut dr, mut mono) = (0, 0, 0);
    for seed in 0..20u64 {
        let n = 6 + seed as usize % 7;
        let p = [0.1, 0.2, 0.3][seed as usize % 3];
        let net = GeneratorSpec::er(n, 2 + seed as usize % 5, p, 300 + seed).generate()?;
        let report = check_submodular(&net, 50, seed)?;
        trials += report.trials;
        dr += report.diminishing_returns_violations;
        mono += report.monotonicity_violations;
    }
    Ok(verdict(
        trials == 1000 && dr == 0 && mono == 0,
        format!("{trials} triples, {dr} diminishing-returns and {mono} monotonicity violations"),
    ))
}

fn rank_oracle_agreement() -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut agree, mut redraws, mut mismatched) = (0, 0, 0);
    let pairs = 200;
    for _ in 0..pairs {
        let n = rng.gen_range(2..=8);
        let steps = rng.gen_range(1..=5);
        let p = rng.gen_range(0.1..0.4);
        let net = GeneratorSpec::er(n, steps, p, rng.gen()).generate()?;
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(&mut rng);
        let d = DriverSet::new(nodes[..rng.gen_range(1..=n)].iter().copied());
        let flow = controllable_dimension(&net, &d)?;
        let mut rank = random_rank(&net, &d, rng.gen())?;
        if rank != flow {
            redraws += 1;
            rank = random_rank(&net, &d, rng.gen())?;
        }
        if rank == flow {
            agree += 1;
        } else {
            mismatched += 1;
        }
    }
    Ok(verdict(
        agree == pairs,
        format!("{agree}/{pairs} agree, {redraws} weight re-draws, {mismatched} mismatches after re-draw"),
    ))
}

fn greedy_equivalence() -> Result<Verdict> {
    let mut same = 0;
    let instances = 50;
    for seed in 0..instances as u64 {
        let net = if seed % 2 == 0 {
            GeneratorSpec::er(8 + seed as usize % 13, 3 + seed as usize % 6, 0.15, 400 + seed).generate()?
        } else {
            GeneratorSpec::scale_free(8 + seed as usize % 13, 3 + seed as usize % 6, 1.5, 400 + seed).generate()?
        };
        let lazy = otaha(&net)?;
        let plain = greedy_baseline(&net)?;
        same += usize::from(lazy.drivers == plain.drivers && lazy.f_trace == plain.f_trace);
    }
    Ok(verdict(same == instances, format!("identical sequences on {same}/{instances}")))
}

fn edge_roles_directional() -> Result<Verdict> {
    let instances = 20;
    let (mut redundant, mut critical, mut confirmed, mut small_nd) = (0.0, 0, 0, 0);
    for seed in 0..instances as u64 {
        let net = GeneratorSpec::er(15, 15, 0.05, 500 + seed).generate()?;
        let c = classify_edges(&net, 16)?;
        small_nd += usize::from(c.n_d < 2);
        redundant += c.fraction(EdgeRole::Redundant) / instances as f64;
        for &(edge, role) in &c.roles {
            if role != EdgeRole::Critical {
                continue;
            }
            critical += 1;
            let pruned = net.without_edges(&[edge]);
            let min = brute_force(&pruned, BruteForceOptions::default())?.min_size;
            confirmed += usize::from(min.is_some_and(|m| m > c.n_d));
        }
    }
    Ok(verdict(
        redundant > 0.8 && confirmed == critical && small_nd == 0,
        format!(
            "mean redundant fraction {:.3}, {confirmed}/{critical} critical verdicts confirmed, {small_nd} instances with N_D < 2",
            redundant
        ),
    ))
}

fn attack_directional() -> Result<Verdict> {
    let instances = 20;
    let options = AttackOptions {
        step_fraction: 0.05,
        trials: 100,
        seed: 0,
        ..AttackOptions::default()
    };
    let mean_curve = |strategy, net: &TemporalNetwork, d: &DriverSet, acc: &mut Vec<f64>, area: &mut f64| -> Result<()> {
        let trace = attack_simulation(net, std::slice::from_ref(d), strategy, options)?.remove(0);
        *area += trace.area() / instances as f64;
        acc.resize(trace.points.len(), 0.0);
        for (a, p) in acc.iter_mut().zip(&trace.points) {
            *a += p.mean / instances as f64;
        }
        Ok(())
    };
    let (mut desc, mut asc, mut random) = (Vec::new(), Vec::new(), Vec::new());
    let (mut desc_area, mut asc_area, mut random_area) = (0.0, 0.0, 0.0);
    for seed in 0..instances as u64 {
        let net = GeneratorSpec::er(20, 10, 0.15, 600 + seed).generate()?;
        let d = otaha(&net)?.driver_set();
        mean_curve(AttackStrategy::Descending, &net, &d, &mut desc, &mut desc_area)?;
        mean_curve(AttackStrategy::Ascending, &net, &d, &mut asc, &mut asc_area)?;
        mean_curve(AttackStrategy::Random, &net, &d, &mut random, &mut random_area)?;
    }
    let eps = 1e-9;
    let between = (0..random.len())
        .filter(|&k| desc[k] <= random[k] + eps && random[k] <= asc[k] + eps)
        .count();
    let share = between as f64 / random.len() as f64;
    Ok(verdict(
        desc_area <= asc_area && share >= 0.8,
        format!(
            "mean area desc {desc_area:.3} / random {random_area:.3} / asc {asc_area:.3}; random between at {between}/{} fractions ({:.0}%)",
            random.len(),
            share * 100.0
        ),
    ))
}

fn lazy_speedup() -> Result<Verdict> {
    let (mut lazy_time, mut plain_time) = (Duration::ZERO, Duration::ZERO);
    let mut sizes = Vec::new();
    for seed in 0..2 {
        let net = GeneratorSpec::er(200, 20, 0.002, 700 + seed).generate()?;
        let t = Instant::now();
        let lazy = otaha(&net)?;
        lazy_time += t.elapsed();
        let t = Instant::now();
        let plain = greedy_baseline(&net)?;
        plain_time += t.elapsed();
        sizes.push((lazy.len(), plain.len()));
    }
    let ratio = plain_time.as_secs_f64() / lazy_time.as_secs_f64();
    Ok(verdict(
        ratio >= 3.0,
        format!("lazy {lazy_time:.2?} vs plain {plain_time:.2?} (ratio {ratio:.1}), sizes {sizes:?}"),
    ))
}

fn colony_dir() -> PathBuf {
    std::env::var_os("TEMPOCTRL_COLONY_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/colonies"))
}

fn find_colony(dir: &PathBuf, id: &str) -> Option<PathBuf> {
    let entries = std::fs::read_dir(dir).ok()?;
    entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .find(|p| p.file_stem().and_then(|s| s.to_str()).is_some_and(|s| s.ends_with(id)))
}

fn colony_table() -> Result<Verdict> {
    let dir = colony_dir();
    let expected = [
        ("1-1", 3, 153),
        ("1-2", 2, 21),
        ("2-1", 5, 89),
        ("2-2", 4, 115),
        ("6-1", 1, 3),
        ("6-2", 2, 10),
    ];
    let files: Vec<_> = expected.iter().map(|(id, ..)| find_colony(&dir, id)).collect();
    if files.iter().any(Option::is_none) {
        return Ok(Verdict::Skip(format!("colony edge lists not found in {}", dir.display())));
    }
    let mut report = Vec::new();
    let mut ok = true;
    for ((id, n_d, sets), path) in expected.iter().zip(files.into_iter().flatten()) {
        let file = std::fs::File::open(&path)?;
        let net = parse_temporal_edgelist(std::io::BufReader::new(file), ParseOptions::default())?;
        let lazy = otaha(&net)?;
        let exact = brute_force(
            &net,
            BruteForceOptions {
                max_size: None,
                allow_large: true,
            },
        )?;
        let matches = lazy.len() == *n_d && exact.min_size == Some(*n_d) && exact.sets.len() == *sets;
        ok &= matches;
        report.push(format!("{id}: {}/{:?}/{}", lazy.len(), exact.min_size, exact.sets.len()));
    }
    Ok(verdict(ok, report.join(", ")))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "lazy evaluation golden table", run: lazy_evaluation_golden },
        Criterion { id: 2, name: "online increment equivalence", run: online_increment_equivalence },
        Criterion { id: 3, name: "near-optimality and bound", run: near_optimality },
        Criterion { id: 4, name: "submodularity and monotonicity", run: submodularity_suite },
        Criterion { id: 5, name: "rank oracle agreement", run: rank_oracle_agreement },
        Criterion { id: 6, name: "lazy and plain greedy agree", run: greedy_equivalence },
        Criterion { id: 7, name: "edge roles mostly redundant", run: edge_roles_directional },
        Criterion { id: 8, name: "targeted attack ordering", run: attack_directional },
        Criterion { id: 9, name: "lazy greedy speedup", run: lazy_speedup },
        Criterion { id: 10, name: "ant colony driver counts", run: colony_table },
    ];
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let started = Instant::now();
        let (tag, detail) = match (c.run)() {
            Ok(Verdict::Pass(d)) => ("PASS", d),
            Ok(Verdict::Skip(d)) => ("SKIP", d),
            Ok(Verdict::Fail(d)) => ("FAIL", d),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        failed += usize::from(tag == "FAIL");
        println!("[{tag}] {:>2} {}: {detail} ({:.1?})", c.id, c.name, started.elapsed());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
