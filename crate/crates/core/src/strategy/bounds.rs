//! Closed-form cop budgets and bounds.

use serde::Serialize;

use super::gnp::{gnp_params, GnpRegime};
use super::StrategyError;

pub use super::gnp::{k_main, k_main_prefactor, k_mid, k_sparse, level_count};

/// Upper bound for graphs of genus `g`: `60 sqrt(g n) + 20 sqrt(2n)`.
pub fn genus_bound(n: f64, g: f64) -> f64 {
    60.0 * (g * n).sqrt() + 20.0 * (2.0 * n).sqrt()
}

/// Separator size bound for genus `g`: `6 sqrt(g n) + 2 sqrt(2n) + 1`.
pub fn separator_bound(n: f64, g: f64) -> f64 {
    6.0 * (g * n).sqrt() + 2.0 * (2.0 * n).sqrt() + 1.0
}

/// The two slack constants of the genus recursion, `60 sqrt(2/3) + 6` and
/// `20 sqrt(2/3) + 2`, which must stay below 55 and 19.
pub fn recursion_slack() -> (f64, f64) {
    let r = (2.0f64 / 3.0).sqrt();
    (60.0 * r + 6.0, 20.0 * r + 2.0)
}

/// Hypercube lower bound `constant * 2^n / n^{7/2 + eps}`; the constant is a
/// free choice.
pub fn hypercube_bound(n: f64, eps: f64, constant: f64) -> f64 {
    constant * 2f64.powf(n) / n.powf(3.5 + eps)
}

/// Domination upper bound `n ln(delta + 1) / (delta + 1)`.
pub fn domination_bound(n: f64, min_degree: f64) -> f64 {
    n * (min_degree + 1.0).ln() / (min_degree + 1.0)
}

/// Dense random-graph upper bound `ln(pn) / p`, without the `1 + o(1)`.
pub fn domination_gnp_bound(n: f64, p: f64) -> f64 {
    (p * n).ln() / p
}

/// A request to [`theoretical_bounds`].
#[derive(Clone, Debug, PartialEq)]
pub enum BoundQuery {
    Genus { n: f64, g: f64 },
    /// Robber-side budget `K` for `G(n, p)`.
    Gnp { n: usize, p: f64, alpha: f64, regime: Option<GnpRegime> },
    Hypercube { n: f64, eps: f64, constant: f64 },
    /// `min_degree` selects the deterministic form, `p` the random-graph one.
    Domination { n: f64, min_degree: Option<f64>, p: Option<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub which: &'static str,
    pub inputs: Vec<(&'static str, f64)>,
    pub value: f64,
    /// `ceil(value)`, present when an integer budget was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integer: Option<u64>,
    /// Extra context such as the selected regime.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn theoretical_bounds(query: &BoundQuery, integer: bool) -> Result<BoundReport, StrategyError> {
    let missing = |what: &str| StrategyError::BadParam {
        name: "bounds".into(),
        reason: format!("missing or invalid {what}"),
    };
    let (which, inputs, value, note) = match *query {
        BoundQuery::Genus { n, g } => {
            if !(n >= 0.0 && g >= 0.0) {
                return Err(missing("n or g"));
            }
            ("genus", vec![("n", n), ("g", g)], genus_bound(n, g), None)
        }
        BoundQuery::Gnp { n, p, alpha, regime } => {
            let params = gnp_params(n, p, alpha, regime)?;
            (
                "gnp",
                vec![("n", n as f64), ("p", p), ("alpha", alpha), ("j", params.j as f64)],
                params.k_budget,
                serde_json::to_value(params.regime)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from)),
            )
        }
        BoundQuery::Hypercube { n, eps, constant } => {
            if !(n >= 1.0 && eps > 0.0) {
                return Err(missing("n or eps"));
            }
            (
                "hypercube",
                vec![("n", n), ("eps", eps), ("constant", constant)],
                hypercube_bound(n, eps, constant),
                None,
            )
        }
        BoundQuery::Domination { n, min_degree, p } => match (min_degree, p) {
            (Some(delta), _) if delta >= 0.0 => (
                "domination",
                vec![("n", n), ("delta", delta)],
                domination_bound(n, delta),
                None,
            ),
            (None, Some(p)) if p > 0.0 && p <= 1.0 => (
                "domination",
                vec![("n", n), ("p", p)],
                domination_gnp_bound(n, p),
                None,
            ),
            _ => return Err(missing("delta or p")),
        },
    };
    Ok(BoundReport {
        which,
        inputs,
        value,
        integer: integer.then(|| value.max(0.0).ceil() as u64),
        note,
    })
}
