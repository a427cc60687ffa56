//! Batch experiments: many seeded games of one strategy pairing on one graph
//! family, written as CSV with an optional JSON mirror.
//!
//! Trial `i` uses seed `seed + i` (wrapping) for both the graph and the
//! strategies, so results do not depend on how trials are scheduled. Rows are
//! collected in trial order before anything is written.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{play, GameError, Outcome};
use crate::graph::{gen_gnp, Family, Graph, GraphError};
use crate::strategy::{
    bounds::{theoretical_bounds, BoundQuery},
    CopSpec, GnpRegime, RobberSpec, StrategyContext, StrategyError,
};

pub const CSV_HEADER: [&str; 9] = [
    "trial",
    "seed",
    "n",
    "params",
    "k",
    "cop_strategy",
    "robber_strategy",
    "outcome",
    "rounds",
];

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("trial {trial}: {source}")]
    Game {
        trial: usize,
        #[source]
        source: GameError,
    },
}

/// Graph family of an experiment. `gnp` takes `n` and either `p` or `alpha`
/// (`p = n^-alpha`); every other kind takes `sizes` as for named families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sizes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

enum ResolvedFamily {
    Gnp { n: usize, p: f64 },
    Named(Family),
}

impl FamilyConfig {
    fn resolve(&self) -> Result<ResolvedFamily, ExperimentError> {
        if self.kind == "gnp" {
            let n = self
                .n
                .or_else(|| self.sizes.first().copied())
                .ok_or_else(|| ExperimentError::Config("gnp family needs `n`".into()))?;
            let p = match (self.p, self.alpha) {
                (Some(p), _) => p,
                (None, Some(a)) => (n as f64).powf(-a),
                (None, None) => {
                    return Err(ExperimentError::Config("gnp family needs `p` or `alpha`".into()))
                }
            };
            if !(0.0..=1.0).contains(&p) {
                return Err(GraphError::InvalidProbability(p).into());
            }
            return Ok(ResolvedFamily::Gnp { n, p });
        }
        let sizes = if self.sizes.is_empty() {
            self.n.into_iter().collect()
        } else {
            self.sizes.clone()
        };
        Ok(ResolvedFamily::Named(Family::from_kind(&self.kind, &sizes)?))
    }
}

impl ResolvedFamily {
    fn generate(&self, seed: u64) -> Result<Graph, GraphError> {
        match *self {
            ResolvedFamily::Gnp { n, p } => gen_gnp(n, p, seed),
            ResolvedFamily::Named(f) => f.generate(seed),
        }
    }

    fn params(&self) -> String {
        match *self {
            ResolvedFamily::Gnp { p, .. } => format!("p={}", fmt_sig(p)),
            ResolvedFamily::Named(f) => match f {
                Family::Grid2d { rows, cols } => format!("rows={rows};cols={cols}"),
                Family::Hypercube(d) => format!("dim={d}"),
                Family::Star(l) => format!("leaves={l}"),
                Family::Petersen => String::new(),
                Family::Path(_) | Family::Cycle(_) | Family::Complete(_) | Family::RandomTree(_) => {
                    String::new()
                }
            },
        }
    }
}

/// A bound used as the cop budget; `k = max(1, ceil(value))`.
///
/// Missing `n` and `p` are taken from the family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundBudget {
    pub which: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_degree: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regime: Option<GnpRegime>,
}

/// Builds a [`BoundQuery`] from loosely typed fields, as given on the command
/// line or in a config file.
pub fn bound_query(b: &BoundBudget) -> Result<BoundQuery, StrategyError> {
    let need = |v: Option<f64>, what: &str| {
        v.ok_or_else(|| StrategyError::BadParam {
            name: "bounds".into(),
            reason: format!("`{}` bound needs `{what}`", b.which),
        })
    };
    Ok(match b.which.as_str() {
        "genus" => BoundQuery::Genus {
            n: need(b.n, "n")?,
            g: need(b.g, "g")?,
        },
        "gnp" => {
            let n = need(b.n, "n")?;
            let alpha = need(b.alpha, "alpha")?;
            BoundQuery::Gnp {
                n: n as usize,
                p: b.p.unwrap_or_else(|| n.powf(-alpha)),
                alpha,
                regime: b.regime,
            }
        }
        "hypercube" => BoundQuery::Hypercube {
            n: need(b.n, "n")?,
            eps: need(b.eps, "eps")?,
            constant: b.constant.unwrap_or(1.0),
        },
        "domination" => BoundQuery::Domination {
            n: need(b.n, "n")?,
            min_degree: b.min_degree,
            p: b.p,
        },
        other => return Err(StrategyError::UnknownName(other.to_string())),
    })
}

fn default_max_rounds() -> usize {
    10_000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: FamilyConfig,
    pub cops: String,
    pub robber: String,
    /// Fixed cop budget; exclusive with `bound`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<BoundBudget>,
    pub trials: usize,
    #[serde(default = "default_max_rounds")]
    pub max_rounds: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing)]
    pub json_out: Option<PathBuf>,
    /// Worker threads; the output does not depend on it. Paths and thread
    /// count are left out of the JSON mirror.
    #[serde(default, skip_serializing)]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ExperimentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ExperimentError> {
        let text = std::fs::read_to_string(path).map_err(|source| ExperimentError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// The seed of trial `i`.
    pub fn trial_seed(&self, i: usize) -> u64 {
        self.seed.wrapping_add(i as u64)
    }

    fn budget(&self, family: &ResolvedFamily) -> Result<usize, ExperimentError> {
        match (&self.k, &self.bound) {
            (Some(k), None) => Ok(*k),
            (None, Some(b)) => {
                let mut b = b.clone();
                if let ResolvedFamily::Gnp { n, p } = *family {
                    b.n.get_or_insert(n as f64);
                    if b.which != "domination" || b.min_degree.is_none() {
                        b.p.get_or_insert(p);
                    }
                }
                let report = theoretical_bounds(&bound_query(&b)?, true)?;
                Ok(report.integer.unwrap_or(0).max(1) as usize)
            }
            _ => Err(ExperimentError::Config(
                "give exactly one of `k` and `bound`".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub params: String,
    pub k: usize,
    pub cop_strategy: String,
    pub robber_strategy: String,
    pub outcome: Outcome,
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub trials: usize,
    pub captures: usize,
    pub survivals: usize,
    pub survival_rate: f64,
    pub mean_rounds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentResults {
    pub config: ExperimentConfig,
    pub k: usize,
    pub rows: Vec<TrialRow>,
    pub aggregate: Aggregate,
}

/// Formats a float with 6 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..15).contains(&e) {
        format!("{:.*}", (5 - e).max(0) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}

/// Runs every trial without writing anything.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<ExperimentResults, ExperimentError> {
    let cop_spec: CopSpec = cfg.cops.parse()?;
    let robber_spec: RobberSpec = cfg.robber.parse()?;
    let family = cfg.family.resolve()?;
    let k = cfg.budget(&family)?;
    let params = family.params();
    let run = |i: usize| -> Result<TrialRow, ExperimentError> {
        let seed = cfg.trial_seed(i);
        let g = family.generate(seed)?;
        let ctx = StrategyContext::new(&g, k, seed);
        let mut cops = ctx.cop(&cop_spec)?;
        let mut robber = ctx.robber(&robber_spec)?;
        let rec = play(&g, cops.as_mut(), robber.as_mut(), k, cfg.max_rounds)
            .map_err(|source| ExperimentError::Game { trial: i, source })?;
        Ok(TrialRow {
            trial: i,
            seed,
            n: g.n(),
            params: params.clone(),
            k,
            cop_strategy: cop_spec.to_string(),
            robber_strategy: robber_spec.to_string(),
            outcome: rec.outcome,
            rounds: rec.rounds,
        })
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| ExperimentError::Config(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(run)
            .collect::<Result<Vec<_>, _>>()
    })?;
    let survivals = rows.iter().filter(|r| r.outcome == Outcome::Survival).count();
    let total_rounds: usize = rows.iter().map(|r| r.rounds).sum();
    let denom = rows.len().max(1) as f64;
    let aggregate = Aggregate {
        trials: rows.len(),
        captures: rows.len() - survivals,
        survivals,
        survival_rate: survivals as f64 / denom,
        mean_rounds: total_rounds as f64 / denom,
    };
    Ok(ExperimentResults {
        config: cfg.clone(),
        k,
        rows,
        aggregate,
    })
}

impl ExperimentResults {
    /// Trial rows, then an aggregate row whose `outcome` column holds the
    /// survival rate and `rounds` column the mean rounds.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), ExperimentError> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(CSV_HEADER)?;
        for r in &self.rows {
            out.write_record([
                r.trial.to_string(),
                r.seed.to_string(),
                r.n.to_string(),
                r.params.clone(),
                r.k.to_string(),
                r.cop_strategy.clone(),
                r.robber_strategy.clone(),
                match r.outcome {
                    Outcome::Capture => "capture".into(),
                    Outcome::Survival => "survival".into(),
                },
                r.rounds.to_string(),
            ])?;
        }
        let n = match self.rows.first() {
            Some(first) if self.rows.iter().all(|r| r.n == first.n) => first.n.to_string(),
            _ => String::new(),
        };
        let params = self.rows.first().map(|r| r.params.clone()).unwrap_or_default();
        out.write_record([
            "aggregate".to_string(),
            self.config.seed.to_string(),
            n,
            params,
            self.k.to_string(),
            self.rows.first().map(|r| r.cop_strategy.clone()).unwrap_or_default(),
            self.rows.first().map(|r| r.robber_strategy.clone()).unwrap_or_default(),
            fmt_sig(self.aggregate.survival_rate),
            fmt_sig(self.aggregate.mean_rounds),
        ])?;
        out.flush().map_err(|source| ExperimentError::Io {
            path: PathBuf::from("<csv>"),
            source,
        })?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String, ExperimentError> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn to_json_string(&self) -> Result<String, ExperimentError> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, ExperimentError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| ExperimentError::Io {
            path: path.to_path_buf(),
            source,
        })
}

/// Runs the experiment and writes the CSV to `cfg.out` (required) and the
/// JSON mirror to `cfg.json_out` when set.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResults, ExperimentError> {
    let out = cfg
        .out
        .as_deref()
        .ok_or_else(|| ExperimentError::Config("no output path".into()))?;
    let results = run_trials(cfg)?;
    results.write_csv(create(out)?)?;
    if let Some(path) = &cfg.json_out {
        let mut w = create(path)?;
        w.write_all(results.to_json_string()?.as_bytes())
            .and_then(|_| w.write_all(b"\n"))
            .and_then(|_| w.flush())
            .map_err(|source| ExperimentError::Io {
                path: path.clone(),
                source,
            })?;
    }
    Ok(results)
}
