//! End-to-end experiment orchestration: load or generate networks, build
//! matched random controls, run the strategy x replicate grid, and emit CSV
//! curves plus an index table.
//!
//! Outputs are deterministic for a fixed config: replicate seeds are derived
//! as `base_seed + replicate_index`, and files are written in config order.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::attack::{self, Measure, PerformanceCurve, Strategy};
use crate::gen::{GenError, GenKind, GenSpec};
use crate::graph::Graph;
use crate::index::{self, IndexError};
use crate::io as netio;
use crate::io::ParseError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("no networks configured")]
    NoNetworks,
    #[error("no strategies configured")]
    NoStrategies,
    #[error("replicates must be at least 1")]
    BadReplicates,
    #[error("thresholds must be ascending and within (0, 1]")]
    BadThresholds,
    #[error("stride must be at least 1")]
    BadStride,
    #[error("config line {line}: {message}")]
    BadLine { line: usize, message: String },
    #[error("invalid value for {key}: {message}")]
    BadValue { key: String, message: String },
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error("internal attack failure: {0}")]
    Attack(#[from] attack::AttackError),
}

impl RunError {
    /// Process exit code contract: 1 for I/O-ish failures, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    EdgeList,
    Gml,
}

impl std::str::FromStr for FileFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "edgelist" => Ok(FileFormat::EdgeList),
            "gml" => Ok(FileFormat::Gml),
            other => Err(format!("unknown format {other:?} (expected edgelist or gml)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkSource {
    File {
        path: PathBuf,
        format: Option<FileFormat>,
    },
    Generated(GenSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub networks: Vec<NetworkSource>,
    /// Generate a matched G(n, m) control per network.
    pub control: bool,
    pub strategies: Vec<Strategy>,
    pub varpi: f64,
    pub measure: Measure,
    pub thresholds: Vec<f64>,
    /// Replicate count for the random strategy and for control generation.
    pub replicates: usize,
    pub base_seed: u64,
    pub out_dir: PathBuf,
    /// Subsampling step for the extra plotting CSV; 1 disables it. Never
    /// feeds index computation.
    pub stride: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            networks: Vec::new(),
            control: false,
            strategies: Strategy::ALL.to_vec(),
            varpi: 1.0,
            measure: Measure::NodeFraction,
            thresholds: index::DEFAULT_THRESHOLDS.to_vec(),
            replicates: 100,
            base_seed: 0,
            out_dir: PathBuf::from("out"),
            stride: 1,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.networks.is_empty() {
            return Err(ConfigError::NoNetworks);
        }
        if self.strategies.is_empty() {
            return Err(ConfigError::NoStrategies);
        }
        if self.replicates < 1 {
            return Err(ConfigError::BadReplicates);
        }
        if self.stride < 1 {
            return Err(ConfigError::BadStride);
        }
        if self.thresholds.is_empty()
            || self.thresholds.iter().any(|&q| !(q > 0.0 && q <= 1.0))
            || self.thresholds.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(ConfigError::BadThresholds);
        }
        Ok(())
    }

    /// Parses the flat `key = value` config format. Keys mirror the CLI
    /// flags; `network` and `gen` may repeat. '#' starts a comment.
    pub fn from_text(text: &str) -> Result<ExperimentConfig, ConfigError> {
        let mut cfg = ExperimentConfig::default();
        let mut format: Option<FileFormat> = None;
        let mut paths: Vec<PathBuf> = Vec::new();
        for (lineno, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::BadLine {
                line: lineno + 1,
                message: "expected 'key = value'".into(),
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad = |message: String| ConfigError::BadValue {
                key: key.to_owned(),
                message,
            };
            match key {
                "network" => paths.push(PathBuf::from(value)),
                "format" => format = Some(value.parse().map_err(bad)?),
                "gen" => cfg
                    .networks
                    .push(NetworkSource::Generated(parse_gen_spec(value).map_err(bad)?)),
                "strategies" => {
                    cfg.strategies = value
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<Result<_, _>>()
                        .map_err(bad)?
                }
                "measure" => cfg.measure = value.parse().map_err(bad)?,
                "varpi" => cfg.varpi = value.parse().map_err(|e| bad(format!("{e}")))?,
                "thresholds" => {
                    cfg.thresholds = value
                        .split(',')
                        .map(|s| s.trim().parse::<f64>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| bad(format!("{e}")))?
                }
                "replicates" => {
                    cfg.replicates = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "seed" => cfg.base_seed = value.parse().map_err(|e| bad(format!("{e}")))?,
                "control" => {
                    cfg.control = value
                        .parse()
                        .map_err(|_| bad("expected true or false".into()))?
                }
                "out" => cfg.out_dir = PathBuf::from(value),
                "stride" => cfg.stride = value.parse().map_err(|e| bad(format!("{e}")))?,
                other => {
                    return Err(ConfigError::BadLine {
                        line: lineno + 1,
                        message: format!("unknown key {other:?}"),
                    })
                }
            }
        }
        cfg.networks.extend(
            paths
                .into_iter()
                .map(|path| NetworkSource::File { path, format }),
        );
        Ok(cfg)
    }
}

/// Parses "gnm:N:M" or "ba:N:M". The generator seed comes from the
/// experiment's base seed at run time, so it is left at 0 here.
pub fn parse_gen_spec(value: &str) -> Result<GenSpec, String> {
    let parts: Vec<&str> = value.split(':').collect();
    let [kind, n, m] = parts.as_slice() else {
        return Err(format!("expected kind:N:M, got {value:?}"));
    };
    let kind = match *kind {
        "gnm" => GenKind::Gnm,
        "ba" => GenKind::BarabasiAlbert,
        other => return Err(format!("unknown generator {other:?} (expected gnm or ba)")),
    };
    let n = n.parse().map_err(|e| format!("bad node count: {e}"))?;
    let m = m.parse().map_err(|e| format!("bad edge count: {e}"))?;
    Ok(GenSpec { kind, n, m, seed: 0 })
}

/// Matched random control: uniform G(n, m) with the source network's node
/// and edge counts. Reported under the source's name plus a prime suffix.
pub fn generate_control(graph: &Graph, seed: u64) -> Graph {
    crate::gen::gnm(graph.node_count(), graph.edge_count(), seed)
        .expect("a simple graph's edge count always fits G(n, m)")
}

fn load_network(source: &NetworkSource, base_seed: u64) -> Result<(String, Graph), RunError> {
    match source {
        NetworkSource::File { path, format } => {
            let text = fs::read_to_string(path).map_err(|source| RunError::Io {
                path: path.clone(),
                source,
            })?;
            let format = format.unwrap_or_else(|| {
                match path.extension().and_then(|e| e.to_str()) {
                    Some("gml") => FileFormat::Gml,
                    _ => FileFormat::EdgeList,
                }
            });
            let raw = match format {
                FileFormat::EdgeList => netio::parse_edge_list(&text, false),
                FileFormat::Gml => netio::parse_gml_edges(&text),
            }
            .map_err(|source| RunError::Parse {
                path: path.clone(),
                source,
            })?;
            let graph = netio::to_graph(&raw).map_err(|source| RunError::Parse {
                path: path.clone(),
                source,
            })?;
            let name = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("network")
                .to_owned();
            Ok((name, graph))
        }
        NetworkSource::Generated(spec) => {
            let spec = GenSpec {
                seed: base_seed,
                ..*spec
            };
            let kind = match spec.kind {
                GenKind::Gnm => "gnm",
                GenKind::BarabasiAlbert => "ba",
            };
            let name = format!("{kind}_{}_{}", spec.n, spec.m);
            Ok((name, spec.generate()?))
        }
    }
}

fn sanitize_file_name(name: &str) -> String {
    name.chars()
        .map(|c| match c {
            '\'' => 'p',
            c if c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.' => c,
            _ => '_',
        })
        .collect()
}

/// Pointwise mean of equally shaped curves.
fn average_curves(curves: &[PerformanceCurve]) -> PerformanceCurve {
    let first = &curves[0];
    let mut points = first.points.clone();
    for curve in &curves[1..] {
        for (acc, &(_, s)) in points.iter_mut().zip(&curve.points) {
            acc.1 += s;
        }
    }
    let count = curves.len() as f64;
    for point in &mut points {
        point.1 /= count;
    }
    PerformanceCurve {
        points,
        measure: first.measure,
        m_total: first.m_total,
    }
}

fn curve_to_csv(curve: &PerformanceCurve, stride: usize) -> String {
    let mut out = String::from("r,s\n");
    for (i, &(r, s)) in curve.points.iter().enumerate() {
        if i % stride == 0 || i + 1 == curve.points.len() {
            let _ = writeln!(out, "{r},{s}");
        }
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<(), RunError> {
    fs::write(path, contents).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone)]
pub struct IndexRow {
    pub network: String,
    pub strategy: Strategy,
    pub measure: Measure,
    pub replicates: usize,
    pub seed: u64,
    pub values: Vec<f64>,
}

/// One experiment unit: a named set of graph instances to run and average
/// (a single loaded network, or the replicated control ensemble).
struct Unit {
    name: String,
    graphs: Vec<Graph>,
}

/// Runs the full grid and writes per-(network, strategy) curve CSVs plus a
/// combined index CSV. Returns the index rows in emission order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<IndexRow>, RunError> {
    config.validate()?;
    fs::create_dir_all(&config.out_dir).map_err(|source| RunError::Io {
        path: config.out_dir.clone(),
        source,
    })?;

    let mut units: Vec<Unit> = Vec::new();
    for source in &config.networks {
        let (name, graph) = load_network(source, config.base_seed)?;
        if config.control {
            let controls = (0..config.replicates)
                .map(|i| generate_control(&graph, config.base_seed + i as u64))
                .collect();
            units.push(Unit {
                name: name.clone(),
                graphs: vec![graph],
            });
            units.push(Unit {
                name: format!("{name}'"),
                graphs: controls,
            });
        } else {
            units.push(Unit {
                name,
                graphs: vec![graph],
            });
        }
    }

    let mut rows = Vec::new();
    for unit in &units {
        for &strategy in &config.strategies {
            let mut curves = Vec::new();
            for (i, graph) in unit.graphs.iter().enumerate() {
                let seeds: Vec<u64> = if strategy == Strategy::Rne && unit.graphs.len() == 1 {
                    (0..config.replicates)
                        .map(|j| config.base_seed + j as u64)
                        .collect()
                } else {
                    vec![config.base_seed + i as u64]
                };
                for seed in seeds {
                    let plan = attack::plan(graph, strategy, config.varpi, seed);
                    curves.push(attack::run_attack(graph, &plan, config.measure)?);
                }
            }
            let replicates = curves.len();
            let averaged = average_curves(&curves);
            let report = index::index_report(&averaged, &config.thresholds, &strategy.to_string())?;

            let stem = format!("{}_{strategy}", sanitize_file_name(&unit.name));
            write_file(
                &config.out_dir.join(format!("{stem}_curve.csv")),
                &curve_to_csv(&averaged, 1),
            )?;
            if config.stride > 1 {
                write_file(
                    &config.out_dir.join(format!("{stem}_plot.csv")),
                    &curve_to_csv(&averaged, config.stride),
                )?;
            }
            rows.push(IndexRow {
                network: unit.name.clone(),
                strategy,
                measure: config.measure,
                replicates,
                seed: config.base_seed,
                values: report.values,
            });
        }
    }

    let mut index_csv = String::from("network,strategy,measure,replicates,seed");
    for q in &config.thresholds {
        let _ = write!(index_csv, ",I_{q}");
    }
    index_csv.push('\n');
    for row in &rows {
        let _ = write!(
            index_csv,
            "{},{},{},{},{}",
            row.network, row.strategy, row.measure, row.replicates, row.seed
        );
        for value in &row.values {
            let _ = write!(index_csv, ",{value}");
        }
        index_csv.push('\n');
    }
    write_file(&config.out_dir.join("index.csv"), &index_csv)?;
    Ok(rows)
}
