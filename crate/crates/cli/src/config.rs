use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tempoctrl_core::{parse_temporal_edgelist, DriverSet, ParseOptions, TemporalNetwork};

use crate::args::{Format, InputArgs, OutputArgs};

pub const THREADS_VAR: &str = "TEMPOCTRL_THREADS";

pub fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))?;
    if threads == 0 {
        bail!("{THREADS_VAR} must be a positive integer, got 0");
    }
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

/// Everything needed to rerun a command, embedded in every JSON result.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub inputs: Vec<PathBuf>,
    pub resolution: Option<f64>,
    pub self_loops: Option<bool>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// The command's own arguments, verbatim.
    pub params: serde_json::Value,
}

impl RunConfig {
    pub fn new<A: Serialize>(subcommand: &'static str, output: &OutputArgs, args: &A) -> Result<Self> {
        Ok(Self {
            subcommand,
            inputs: Vec::new(),
            resolution: None,
            self_loops: None,
            seed: None,
            out: output.out.clone(),
            format: output.format,
            params: serde_json::to_value(args)?,
        })
    }

    pub fn with_input(mut self, input: &LoadedInput) -> Self {
        self.inputs.push(input.path.clone());
        self.resolution = Some(input.options.resolution);
        self.self_loops = Some(input.options.self_loops);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Descriptor {
    resolution: Option<f64>,
    directed: Option<bool>,
    self_loops: Option<bool>,
}

pub struct LoadedInput {
    pub path: PathBuf,
    pub options: ParseOptions,
    pub network: TemporalNetwork,
}

pub fn load_input(args: &InputArgs) -> Result<LoadedInput> {
    let descriptor = match &args.descriptor {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing descriptor {}", path.display()))?
        }
        None => Descriptor::default(),
    };
    let mut options = ParseOptions::default();
    if let Some(r) = args.resolution.or(descriptor.resolution) {
        options.resolution = r;
    }
    if let Some(d) = descriptor.directed {
        options.directed = d;
    }
    if args.undirected {
        options.directed = false;
    }
    if let Some(s) = descriptor.self_loops {
        options.self_loops = s;
    }
    if args.self_loops {
        options.self_loops = true;
    }
    if args.no_self_loops {
        options.self_loops = false;
    }

    let network = if is_json(&args.input) {
        let text = fs::read_to_string(&args.input)
            .with_context(|| format!("reading {}", args.input.display()))?;
        let net = network_from_json(&text).with_context(|| format!("parsing {}", args.input.display()))?;
        if args.self_loops || args.no_self_loops || descriptor.self_loops.is_some() {
            net.with_self_loops(options.self_loops)
        } else {
            options.self_loops = net.self_loops();
            net
        }
    } else {
        let file = fs::File::open(&args.input).with_context(|| format!("opening {}", args.input.display()))?;
        parse_temporal_edgelist(BufReader::new(file), options)
            .with_context(|| format!("parsing {}", args.input.display()))?
    };
    log::info!(
        "loaded {}: {} nodes, {} edges, {} steps",
        args.input.display(),
        network.node_count(),
        network.edge_count(),
        network.steps()
    );
    Ok(LoadedInput {
        path: args.input.clone(),
        options,
        network,
    })
}

/// A bare network, or the output of `generate` with the network under `"network"`.
fn network_from_json(text: &str) -> Result<TemporalNetwork> {
    let mut value: serde_json::Value = serde_json::from_str(text)?;
    if let Some(inner) = value.get_mut("network") {
        value = inner.take();
    }
    Ok(serde_json::from_value(value)?)
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// `all`, or comma-separated node labels.
pub fn parse_drivers(spec: &str, net: &TemporalNetwork) -> Result<DriverSet> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("all") {
        return Ok(DriverSet::all(net.node_count()));
    }
    let mut nodes = Vec::new();
    for label in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match net.labels().iter().position(|l| l == label) {
            Some(v) => nodes.push(v),
            None => bail!("unknown node label {label:?}"),
        }
    }
    Ok(DriverSet::new(nodes))
}

/// Independent stream seed for component `index` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
