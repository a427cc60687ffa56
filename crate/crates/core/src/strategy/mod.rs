//! Cop and robber strategies, and the closed-form budgets that go with them.
//!
//! Strategies are named by short strings such as `greedy`, `random:seed=5`,
//! `potential:eps=1` or `gnp:alpha=0.4`; see [`CopSpec`] and [`RobberSpec`].
//! Seeded strategies use their explicit `seed` parameter when given, and
//! otherwise the seed of the game; robber strategies mix
//! [`ROBBER_STREAM`] into that default so that the two sides never share a
//! random stream.

mod baseline;
pub mod bounds;
mod dominating;
mod gnp;
mod optimal;
mod potential;
mod separator;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub use baseline::{GreedyCop, GreedyRobber, RandomCop, RandomRobber, StayRobber};
pub use dominating::DominatingCop;
pub use gnp::{
    cop_counts_within, gnp_params, gnp_robber_move, is_dangerous, is_safe, GnpRegime,
    GnpRobber, GnpRobberParams,
};
pub use optimal::{OptimalCop, OptimalRobber};
pub use potential::{hypercube_robber_move, potential, potential_params, PotentialParams, PotentialRobber};
pub use separator::{Decomposition, DecompositionNode, SeparatorCop};

use crate::game::{CopStrategy, RobberStrategy};
use crate::graph::{Graph, GraphError};
use crate::solver::{solve, Rules, SolveError, SolveResult, SolverLimits};

/// XORed into the game seed to derive the default robber seed.
pub const ROBBER_STREAM: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrategyError {
    #[error("unknown strategy `{0}`")]
    UnknownName(String),
    #[error("bad parameter for `{name}`: {reason}")]
    BadParam { name: String, reason: String },
    #[error("strategy needs {required} cops but the budget is {k}")]
    Budget { required: usize, k: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// A parsed `name:key=value,key=value` strategy string.
#[derive(Clone, Debug, PartialEq)]
struct Spec {
    name: String,
    params: BTreeMap<String, String>,
}

impl FromStr for Spec {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let name = name.trim().to_string();
        if name.is_empty() {
            return Err(StrategyError::UnknownName(s.to_string()));
        }
        let mut params = BTreeMap::new();
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| StrategyError::BadParam {
                name: name.clone(),
                reason: format!("expected key=value, got `{item}`"),
            })?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Spec { name, params })
    }
}

impl Spec {
    fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, StrategyError> {
        match self.params.remove(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| StrategyError::BadParam {
                name: self.name.clone(),
                reason: format!("cannot parse {key}=`{raw}`"),
            }),
        }
    }

    fn finish(self) -> Result<String, StrategyError> {
        match self.params.keys().next() {
            Some(k) => Err(StrategyError::BadParam {
                name: self.name.clone(),
                reason: format!("unexpected parameter `{k}`"),
            }),
            None => Ok(self.name),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CopSpec {
    Greedy { seed: Option<u64> },
    Random { seed: Option<u64> },
    Dominating,
    Separator,
    Optimal,
}

impl FromStr for CopSpec {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut spec: Spec = s.parse()?;
        let parsed = match spec.name.as_str() {
            "greedy" => CopSpec::Greedy { seed: spec.take("seed")? },
            "random" => CopSpec::Random { seed: spec.take("seed")? },
            "dominating" => CopSpec::Dominating,
            "separator" => CopSpec::Separator,
            "optimal" => CopSpec::Optimal,
            _ => return Err(StrategyError::UnknownName(s.to_string())),
        };
        spec.finish()?;
        Ok(parsed)
    }
}

impl fmt::Display for CopSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopSpec::Greedy { seed: None } => write!(f, "greedy"),
            CopSpec::Greedy { seed: Some(s) } => write!(f, "greedy:seed={s}"),
            CopSpec::Random { seed: None } => write!(f, "random"),
            CopSpec::Random { seed: Some(s) } => write!(f, "random:seed={s}"),
            CopSpec::Dominating => write!(f, "dominating"),
            CopSpec::Separator => write!(f, "separator"),
            CopSpec::Optimal => write!(f, "optimal"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RobberSpec {
    Greedy,
    Random { seed: Option<u64> },
    Stay,
    Potential { eps: f64 },
    /// `p` defaults to the edge density of the graph.
    Gnp { alpha: f64, p: Option<f64> },
    Optimal,
}

impl FromStr for RobberSpec {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut spec: Spec = s.parse()?;
        let parsed = match spec.name.as_str() {
            "greedy" => RobberSpec::Greedy,
            "random" => RobberSpec::Random { seed: spec.take("seed")? },
            "stay" => RobberSpec::Stay,
            "potential" => RobberSpec::Potential {
                eps: spec.take("eps")?.unwrap_or(1.0),
            },
            "gnp" => RobberSpec::Gnp {
                alpha: spec.take("alpha")?.ok_or_else(|| StrategyError::BadParam {
                    name: "gnp".into(),
                    reason: "alpha is required".into(),
                })?,
                p: spec.take("p")?,
            },
            "optimal" => RobberSpec::Optimal,
            _ => return Err(StrategyError::UnknownName(s.to_string())),
        };
        spec.finish()?;
        Ok(parsed)
    }
}

impl fmt::Display for RobberSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RobberSpec::Greedy => write!(f, "greedy"),
            RobberSpec::Random { seed: None } => write!(f, "random"),
            RobberSpec::Random { seed: Some(s) } => write!(f, "random:seed={s}"),
            RobberSpec::Stay => write!(f, "stay"),
            RobberSpec::Potential { eps } => write!(f, "potential:eps={eps}"),
            RobberSpec::Gnp { alpha, p: None } => write!(f, "gnp:alpha={alpha}"),
            RobberSpec::Gnp { alpha, p: Some(p) } => write!(f, "gnp:alpha={alpha},p={p}"),
            RobberSpec::Optimal => write!(f, "optimal"),
        }
    }
}

/// Everything needed to instantiate strategies for one game. The lazy solver
/// table is computed on first use and shared by both sides.
pub struct StrategyContext<'a> {
    pub graph: &'a Graph,
    pub k: usize,
    pub seed: u64,
    pub limits: SolverLimits,
    table: OnceLock<Arc<SolveResult>>,
}

impl<'a> StrategyContext<'a> {
    pub fn new(graph: &'a Graph, k: usize, seed: u64) -> Self {
        StrategyContext {
            graph,
            k,
            seed,
            limits: SolverLimits::default(),
            table: OnceLock::new(),
        }
    }

    /// Reuses an existing table instead of solving.
    pub fn with_table(mut self, table: Arc<SolveResult>) -> Self {
        self.table = OnceLock::from(table);
        self
    }

    pub fn table(&self) -> Result<Arc<SolveResult>, StrategyError> {
        if let Some(t) = self.table.get() {
            return Ok(t.clone());
        }
        if !self.graph.is_connected() {
            return Err(SolveError::Disconnected.into());
        }
        let solved = Arc::new(solve(self.graph, self.k, Rules::Lazy, &self.limits)?);
        Ok(self.table.get_or_init(|| solved).clone())
    }

    pub fn cop(&self, spec: &CopSpec) -> Result<Box<dyn CopStrategy>, StrategyError> {
        let g = self.graph;
        Ok(match spec {
            CopSpec::Greedy { seed } => Box::new(GreedyCop::new(seed.unwrap_or(self.seed))),
            CopSpec::Random { seed } => Box::new(RandomCop::new(seed.unwrap_or(self.seed))),
            CopSpec::Dominating => Box::new(DominatingCop::new(g, self.k)?),
            CopSpec::Separator => Box::new(SeparatorCop::new(g, self.k)?),
            CopSpec::Optimal => Box::new(OptimalCop::new(self.table()?)),
        })
    }

    pub fn robber(&self, spec: &RobberSpec) -> Result<Box<dyn RobberStrategy>, StrategyError> {
        let g = self.graph;
        let default_seed = self.seed ^ ROBBER_STREAM;
        Ok(match spec {
            RobberSpec::Greedy => Box::new(GreedyRobber),
            RobberSpec::Random { seed } => Box::new(RandomRobber::new(seed.unwrap_or(default_seed))),
            RobberSpec::Stay => Box::new(StayRobber),
            RobberSpec::Potential { eps } => {
                let dim = (0..usize::BITS as usize)
                    .find(|&d| 1usize << d == g.n())
                    .filter(|&d| g.is_hypercube_labelled(d))
                    .ok_or_else(|| StrategyError::BadParam {
                        name: "potential".into(),
                        reason: "graph is not a labelled hypercube".into(),
                    })?;
                Box::new(PotentialRobber::new(potential_params(dim, *eps)?))
            }
            RobberSpec::Gnp { alpha, p } => {
                let n = g.n();
                let p = p.unwrap_or_else(|| {
                    if n < 2 {
                        0.0
                    } else {
                        2.0 * g.m() as f64 / (n as f64 * (n as f64 - 1.0))
                    }
                });
                Box::new(GnpRobber::new(gnp_params(n, p, *alpha, None)?))
            }
            RobberSpec::Optimal => Box::new(OptimalRobber::new(self.table()?)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in ["greedy", "random:seed=5", "dominating", "separator", "optimal"] {
            assert_eq!(s.parse::<CopSpec>().unwrap().to_string(), s);
        }
        for s in ["greedy", "random", "stay", "potential:eps=1", "gnp:alpha=0.4", "gnp:alpha=0.4,p=0.1", "optimal"] {
            assert_eq!(s.parse::<RobberSpec>().unwrap().to_string(), s);
        }
        assert_eq!(
            "potential".parse::<RobberSpec>().unwrap(),
            RobberSpec::Potential { eps: 1.0 }
        );
    }

    #[test]
    fn bad_names() {
        assert!(matches!("teleport".parse::<CopSpec>(), Err(StrategyError::UnknownName(_))));
        assert!(matches!("gnp".parse::<RobberSpec>(), Err(StrategyError::BadParam { .. })));
        assert!(matches!("random:seed=x".parse::<CopSpec>(), Err(StrategyError::BadParam { .. })));
        assert!(matches!("greedy:depth=2".parse::<CopSpec>(), Err(StrategyError::BadParam { .. })));
        assert!(matches!("random:seed".parse::<RobberSpec>(), Err(StrategyError::BadParam { .. })));
    }
}
