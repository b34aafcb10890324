use anyhow::{bail, ensure, Result};
use serde::Serialize;
use tempoctrl_core::detect::{BruteForceOptions, SeedStrategy};
use tempoctrl_core::edges::{
    attack_simulation, classify_edges, temporal_edge_betweenness, AttackOptions, AttackStrategy,
    AttackTrace, EdgeRole, Provenance,
};
use tempoctrl_core::generate::{Model, DEFAULT_STATIC_EXPONENT};
use tempoctrl_core::{
    brute_force, controllable_dimension, greedy_baseline, multi_solutions, otaha, DriverSelection,
    DriverSet, GeneratorSpec, TemporalEdge, TemporalNetwork,
};

use crate::args::{
    AlgorithmArg, AttackArgs, BenchArgs, BetweennessArgs, ClassifyArgs, DetectArgs, DimensionArgs,
    GenerateArgs, ModelArg, SeedStrategyArg, StrategyArg,
};
use crate::config::{derive_seed, load_input, parse_drivers, RunConfig};
use crate::output::{emit, fixed};

#[derive(Serialize)]
struct NetworkSummary {
    n: usize,
    t0: usize,
    t1: usize,
    edges: usize,
    non_empty_snapshots: usize,
    self_loops: bool,
}

impl NetworkSummary {
    fn of(net: &TemporalNetwork) -> Self {
        Self {
            n: net.node_count(),
            t0: net.t0(),
            t1: net.t1(),
            edges: net.edge_count(),
            non_empty_snapshots: net.non_empty_snapshots(),
            self_loops: net.self_loops(),
        }
    }
}

fn labels_of(net: &TemporalNetwork, nodes: &[usize]) -> Vec<String> {
    nodes.iter().map(|&v| net.labels()[v].clone()).collect()
}

#[derive(Serialize)]
struct LabelledSelection {
    #[serde(flatten)]
    selection: DriverSelection,
    driver_labels: Vec<String>,
}

#[derive(Serialize)]
struct BruteSummary {
    min_size: Option<usize>,
    set_count: usize,
    sets: Vec<Vec<String>>,
    evaluations: usize,
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct DetectResult {
    network: NetworkSummary,
    selections: Vec<LabelledSelection>,
    brute_force: Option<BruteSummary>,
    solutions: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct DetectRow {
    algorithm: String,
    drivers: usize,
    f: usize,
    evaluations: usize,
    elapsed_ms: String,
    driver_set: String,
}

pub fn detect(args: &DetectArgs) -> Result<()> {
    let input = load_input(&args.input)?;
    let net = &input.network;
    let config = RunConfig::new("detect", &args.output, args)?
        .with_input(&input)
        .with_seed(args.seed);

    let mut algorithms = args.algorithm.clone();
    if args.brute_force {
        algorithms.push(AlgorithmArg::Brute);
    }
    algorithms.dedup();
    ensure!(args.solutions >= 1, "--solutions must be at least 1");

    let mut selections = Vec::new();
    let mut brute_summary = None;
    for algorithm in &algorithms {
        let selection = match algorithm {
            AlgorithmArg::Otaha => Some(otaha(net)?),
            AlgorithmArg::Greedy => Some(greedy_baseline(net)?),
            AlgorithmArg::Brute => {
                let options = BruteForceOptions {
                    max_size: None,
                    allow_large: args.allow_large,
                };
                let result = brute_force(net, options)?;
                let first = result.first_selection(&tempoctrl_core::detect::FlowObjective::new(net))?;
                brute_summary = Some(BruteSummary {
                    min_size: result.min_size,
                    set_count: result.sets.len(),
                    sets: result.sets.iter().map(|s| labels_of(net, s)).collect(),
                    evaluations: result.evaluations,
                    elapsed_ms: result.elapsed_ms,
                });
                first
            }
        };
        if let Some(selection) = selection {
            eprintln!(
                "{}, {}, {}, {}, {:.3}",
                selection.algorithm,
                selection.len(),
                selection.value(),
                selection.evaluations,
                selection.elapsed_ms
            );
            selections.push(LabelledSelection {
                driver_labels: labels_of(net, &selection.drivers),
                selection,
            });
        }
    }

    let solutions = if args.solutions > 1 {
        let strategy = match args.seed_strategy {
            SeedStrategyArg::Random => SeedStrategy::Random,
            SeedStrategyArg::Degree => SeedStrategy::DegreeSeeded,
        };
        multi_solutions(net, args.solutions, strategy, derive_seed(args.seed, 0))?
            .iter()
            .map(|s| labels_of(net, s.driver_set().nodes()))
            .collect()
    } else {
        Vec::new()
    };

    let result = DetectResult {
        network: NetworkSummary::of(net),
        selections,
        brute_force: brute_summary,
        solutions,
    };
    emit(&args.output, &config, "detect", &result, || {
        result
            .selections
            .iter()
            .map(|s| DetectRow {
                algorithm: s.selection.algorithm.to_string(),
                drivers: s.selection.len(),
                f: s.selection.value(),
                evaluations: s.selection.evaluations,
                elapsed_ms: fixed(s.selection.elapsed_ms),
                driver_set: s.driver_labels.join(" "),
            })
            .collect()
    })
}

#[derive(Serialize)]
struct TraceWithArea {
    #[serde(flatten)]
    trace: AttackTrace,
    area: f64,
}

#[derive(Serialize)]
struct AttackResult {
    network: NetworkSummary,
    driver_sets: Vec<Vec<String>>,
    traces: Vec<TraceWithArea>,
}

#[derive(Serialize)]
struct AttackRow {
    strategy: String,
    driver_set_id: usize,
    fraction: String,
    /// Mean dimension rounded to the nearest integer.
    dimension: usize,
    trial_mean: String,
    trial_std: String,
}

pub fn attack(args: &AttackArgs) -> Result<()> {
    let input = load_input(&args.input)?;
    let net = &input.network;
    let config = RunConfig::new("attack", &args.output, args)?
        .with_input(&input)
        .with_seed(args.seed);

    let driver_sets: Vec<DriverSet> = match &args.drivers {
        Some(spec) => vec![parse_drivers(spec, net)?],
        None => {
            ensure!(args.solutions >= 1, "--solutions must be at least 1");
            multi_solutions(net, args.solutions, SeedStrategy::DegreeSeeded, derive_seed(args.seed, 0))?
                .iter()
                .map(DriverSelection::driver_set)
                .collect()
        }
    };

    let mut traces = Vec::new();
    let mut strategies = args.strategy.clone();
    strategies.dedup();
    for (k, strategy) in strategies.iter().enumerate() {
        let strategy = match strategy {
            StrategyArg::Random => AttackStrategy::Random,
            StrategyArg::Asc => AttackStrategy::Ascending,
            StrategyArg::Desc => AttackStrategy::Descending,
        };
        let options = AttackOptions {
            step_fraction: args.step,
            trials: args.trials,
            seed: derive_seed(args.seed, 1 + k as u64),
            adaptive: args.adaptive,
            retention_paths: args.retention_paths,
        };
        for trace in attack_simulation(net, &driver_sets, strategy, options)? {
            traces.push(TraceWithArea {
                area: trace.area(),
                trace,
            });
        }
    }

    let result = AttackResult {
        network: NetworkSummary::of(net),
        driver_sets: driver_sets.iter().map(|d| labels_of(net, d.nodes())).collect(),
        traces,
    };
    emit(&args.output, &config, "attack", &result, || {
        let mut rows = Vec::new();
        for t in &result.traces {
            for p in &t.trace.points {
                rows.push(AttackRow {
                    strategy: t.trace.strategy.to_string(),
                    driver_set_id: t.trace.driver_set_id,
                    fraction: fixed(p.fraction),
                    dimension: p.mean.round() as usize,
                    trial_mean: fixed(p.mean),
                    trial_std: fixed(p.std),
                });
            }
        }
        rows
    })
}

#[derive(Serialize)]
struct EdgeRecord<V: Serialize> {
    time: usize,
    source: String,
    target: String,
    #[serde(flatten)]
    value: V,
}

fn edge_record<V: Serialize>(net: &TemporalNetwork, e: TemporalEdge, value: V) -> EdgeRecord<V> {
    EdgeRecord {
        time: e.time,
        source: net.labels()[e.source].clone(),
        target: net.labels()[e.target].clone(),
        value,
    }
}

#[derive(Serialize)]
struct RoleValue {
    role: EdgeRole,
}

#[derive(Serialize)]
struct RoleCounts {
    critical: usize,
    ordinary: usize,
    redundant: usize,
}

#[derive(Serialize)]
struct ClassifyResult {
    network: NetworkSummary,
    provenance: Provenance,
    n_d: usize,
    reference: Vec<String>,
    counts: RoleCounts,
    edges: Vec<EdgeRecord<RoleValue>>,
}

#[derive(Serialize)]
struct RoleRow<'a> {
    time: usize,
    source: &'a str,
    target: &'a str,
    role: EdgeRole,
}

pub fn classify(args: &ClassifyArgs) -> Result<()> {
    let input = load_input(&args.input)?;
    let net = &input.network;
    let config = RunConfig::new("classify", &args.output, args)?.with_input(&input);
    let c = classify_edges(net, args.exact_threshold)?;
    if c.provenance == Provenance::Approximate {
        log::warn!(
            "{} nodes exceed the exact threshold {}; roles use lazy greedy counts",
            net.node_count(),
            args.exact_threshold
        );
    }
    let result = ClassifyResult {
        network: NetworkSummary::of(net),
        provenance: c.provenance,
        n_d: c.n_d,
        reference: labels_of(net, c.reference.nodes()),
        counts: RoleCounts {
            critical: c.count(EdgeRole::Critical),
            ordinary: c.count(EdgeRole::Ordinary),
            redundant: c.count(EdgeRole::Redundant),
        },
        edges: c
            .roles
            .iter()
            .map(|&(e, role)| edge_record(net, e, RoleValue { role }))
            .collect(),
    };
    emit(&args.output, &config, "classify", &result, || {
        result
            .edges
            .iter()
            .map(|e| RoleRow {
                time: e.time,
                source: &e.source,
                target: &e.target,
                role: e.value.role,
            })
            .collect()
    })
}

#[derive(Serialize)]
struct ScoreValue {
    score: f64,
}

#[derive(Serialize)]
struct BetweennessResult {
    network: NetworkSummary,
    edges: Vec<EdgeRecord<ScoreValue>>,
}

#[derive(Serialize)]
struct ScoreRow<'a> {
    time: usize,
    source: &'a str,
    target: &'a str,
    score: String,
}

pub fn betweenness(args: &BetweennessArgs) -> Result<()> {
    let input = load_input(&args.input)?;
    let net = &input.network;
    let config = RunConfig::new("betweenness", &args.output, args)?.with_input(&input);
    let result = BetweennessResult {
        network: NetworkSummary::of(net),
        edges: temporal_edge_betweenness(net)
            .into_iter()
            .map(|(e, score)| edge_record(net, e, ScoreValue { score }))
            .collect(),
    };
    emit(&args.output, &config, "betweenness", &result, || {
        result
            .edges
            .iter()
            .map(|e| ScoreRow {
                time: e.time,
                source: &e.source,
                target: &e.target,
                score: fixed(e.value.score),
            })
            .collect()
    })
}

#[derive(Serialize)]
struct GenerateResult {
    spec: GeneratorSpec,
    network: TemporalNetwork,
}

#[derive(Serialize)]
struct EdgeRow {
    source: usize,
    target: usize,
    time: usize,
}

pub fn generate(args: &GenerateArgs) -> Result<()> {
    let config = RunConfig::new("generate", &args.output, args)?.with_seed(args.seed);
    let model = match args.model {
        ModelArg::Er => {
            ensure!(args.mean_degree.is_none(), "--mean-degree applies to scale-free only");
            let Some(p) = args.p else {
                bail!("--model er needs --p");
            };
            Model::Er { p }
        }
        ModelArg::ScaleFree => {
            ensure!(args.p.is_none(), "--p applies to er only");
            let Some(mean_degree) = args.mean_degree else {
                bail!("--model scale-free needs --mean-degree");
            };
            Model::ScaleFree {
                mean_degree,
                exponent: args.exponent.unwrap_or(DEFAULT_STATIC_EXPONENT),
            }
        }
    };
    let spec = GeneratorSpec {
        model,
        n: args.n,
        snapshots: args.t,
        seed: args.seed,
        self_loops: !args.no_self_loops,
    };
    let network = spec.generate()?;
    let result = GenerateResult { spec, network };
    emit(&args.output, &config, "generate", &result, || {
        result
            .network
            .edges()
            .map(|e| EdgeRow {
                source: e.source,
                target: e.target,
                time: e.time,
            })
            .collect()
    })
}

#[derive(Serialize)]
struct DimensionResult {
    network: NetworkSummary,
    drivers: Vec<String>,
    dimension: usize,
    controllable: bool,
}

#[derive(Serialize)]
struct DimensionRow {
    n: usize,
    drivers: usize,
    dimension: usize,
    controllable: bool,
}

pub fn dimension(args: &DimensionArgs) -> Result<()> {
    let input = load_input(&args.input)?;
    let net = &input.network;
    let config = RunConfig::new("dimension", &args.output, args)?.with_input(&input);
    let drivers = parse_drivers(&args.drivers, net)?;
    let dimension = controllable_dimension(net, &drivers)?;
    let result = DimensionResult {
        network: NetworkSummary::of(net),
        drivers: labels_of(net, drivers.nodes()),
        dimension,
        controllable: dimension == net.node_count(),
    };
    emit(&args.output, &config, "dimension", &result, || {
        vec![DimensionRow {
            n: net.node_count(),
            drivers: drivers.len(),
            dimension,
            controllable: result.controllable,
        }]
    })
}

#[derive(Serialize)]
struct BenchRun {
    instance: usize,
    seed: u64,
    edges: usize,
    otaha_drivers: usize,
    greedy_drivers: usize,
    otaha_evaluations: usize,
    greedy_evaluations: usize,
    otaha_ms: f64,
    greedy_ms: f64,
    ratio: f64,
}

#[derive(Serialize)]
struct BenchResult {
    runs: Vec<BenchRun>,
    mean_ratio: f64,
}

#[derive(Serialize)]
struct BenchRow {
    instance: usize,
    seed: u64,
    edges: usize,
    otaha_drivers: usize,
    greedy_drivers: usize,
    otaha_ms: String,
    greedy_ms: String,
    ratio: String,
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let config = RunConfig::new("bench", &args.output, args)?.with_seed(args.seed);
    ensure!(args.instances >= 1, "--instances must be at least 1");
    let mut runs = Vec::new();
    for instance in 0..args.instances {
        let seed = derive_seed(args.seed, instance as u64);
        let net = GeneratorSpec::er(args.n, args.t, args.p, seed).generate()?;
        let lazy = otaha(&net)?;
        let plain = greedy_baseline(&net)?;
        let ratio = plain.elapsed_ms / lazy.elapsed_ms.max(1e-6);
        eprintln!(
            "instance {instance}: otaha {} drivers {:.1} ms, greedy {} drivers {:.1} ms, ratio {ratio:.2}",
            lazy.len(),
            lazy.elapsed_ms,
            plain.len(),
            plain.elapsed_ms
        );
        runs.push(BenchRun {
            instance,
            seed,
            edges: net.edge_count(),
            otaha_drivers: lazy.len(),
            greedy_drivers: plain.len(),
            otaha_evaluations: lazy.evaluations,
            greedy_evaluations: plain.evaluations,
            otaha_ms: lazy.elapsed_ms,
            greedy_ms: plain.elapsed_ms,
            ratio,
        });
    }
    let mean_ratio = runs.iter().map(|r| r.ratio).sum::<f64>() / runs.len() as f64;
    let result = BenchResult { runs, mean_ratio };
    emit(&args.output, &config, "bench", &result, || {
        result
            .runs
            .iter()
            .map(|r| BenchRow {
                instance: r.instance,
                seed: r.seed,
                edges: r.edges,
                otaha_drivers: r.otaha_drivers,
                greedy_drivers: r.greedy_drivers,
                otaha_ms: fixed(r.otaha_ms),
                greedy_ms: fixed(r.greedy_ms),
                ratio: fixed(r.ratio),
            })
            .collect()
    })
}
