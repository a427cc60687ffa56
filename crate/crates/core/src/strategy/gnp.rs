//! Robber for random graphs `G(n, p)` with `p = n^{-alpha}`, driven by cop
//! counts in vertex-deleted neighbourhoods.
//!
//! Write `Cl^X_i(v)` for the number of cops (with multiplicity) within
//! distance `i` of `v` in `G - X`. The robber's vertex `v` is *safe* with
//! deadly neighbour `x` when `Cl^{x}_i(v) <= threshold[i]` for every level;
//! a neighbour `y != x` of `v` is *r-dangerous* when
//! `Cl^{v,x}_r(y) > threshold[r]`. Levels run `0..=j`, plus `j + 1` in the
//! sparse boundary regime. The robber moves to a neighbour that is dangerous
//! at no level and whose `L`-neighbourhood in `G - v` misses `x`, where `L`
//! is the top level.

use serde::{Deserialize, Serialize};

use crate::game::{GameError, GameState, RobberStrategy};
use crate::graph::{multi_source_distances, Graph, UNREACHABLE};

use super::StrategyError;

/// Tolerance for recognising `alpha = 1/(j+1)`.
const BOUNDARY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GnpRegime {
    /// `1/(j+1) < alpha < 1/j`.
    Main,
    /// `alpha = 1/(j+1)` and `d^{j+1} >= 7 n ln n`.
    BoundaryDense,
    /// `alpha = 1/(j+1)` and `n / ln n <= d^{j+1} < 7 n ln n`.
    BoundaryMid,
    /// `alpha = 1/(j+1)` and `d^{j+1} < n / ln n`.
    BoundarySparse,
}

impl std::str::FromStr for GnpRegime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "main" => Ok(GnpRegime::Main),
            "boundary-dense" => Ok(GnpRegime::BoundaryDense),
            "boundary-mid" => Ok(GnpRegime::BoundaryMid),
            "boundary-sparse" => Ok(GnpRegime::BoundarySparse),
            other => Err(format!("unknown regime `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GnpRobberParams {
    pub n: usize,
    pub p: f64,
    pub alpha: f64,
    pub j: usize,
    /// `6 / (1 - j alpha)`.
    pub c: f64,
    /// `(n - 1) p`.
    pub d: f64,
    pub regime: GnpRegime,
    /// Prefactor of the budget formula for this regime; multiply by `1/p`
    /// (main, dense), `d^j / ln n` (mid) or `n / (d ln^2 n)` (sparse).
    pub k_prefactor: f64,
    /// The cop budget `K` the strategy is designed to beat.
    pub k_budget: f64,
    /// Largest tolerated cop count within distance `r`, for `r = 0..=levels`.
    pub level_threshold: Vec<f64>,
}

impl GnpRobberParams {
    /// The top level: `j`, or `j + 1` in the sparse boundary regime.
    pub fn levels(&self) -> usize {
        self.level_threshold.len() - 1
    }
}

/// `(1 - j alpha) / (12 (2c)^{j-1} j^j)`.
pub fn k_main_prefactor(j: usize, alpha: f64) -> f64 {
    let c = 6.0 / (1.0 - j as f64 * alpha);
    (1.0 - j as f64 * alpha) / (12.0 * (2.0 * c).powi(j as i32 - 1) * (j as f64).powi(j as i32))
}

/// Budget for `1/(j+1) < alpha < 1/j` (and the dense boundary case).
pub fn k_main(j: usize, alpha: f64, p: f64) -> f64 {
    k_main_prefactor(j, alpha) / p
}

/// `c (1 - j alpha) / (42 (2cj)^j) * d^j / ln n`.
pub fn k_mid(j: usize, alpha: f64, n: f64, d: f64) -> f64 {
    let (jf, ji) = (j as f64, j as i32);
    let c = 6.0 / (1.0 - jf * alpha);
    c * (1.0 - jf * alpha) / (42.0 * (2.0 * c * jf).powi(ji)) * d.powi(ji) / n.ln()
}

/// `c^2 (1 - j alpha)^2 / (3528 (2c(j+1))^{j+1}) * n / (d ln^2 n)`.
pub fn k_sparse(j: usize, alpha: f64, n: f64, d: f64) -> f64 {
    let jf = j as f64;
    let c = 6.0 / (1.0 - jf * alpha);
    let pre = c * c * (1.0 - jf * alpha).powi(2) / (3528.0 * (2.0 * c * (jf + 1.0)).powi(j as i32 + 1));
    pre * n / (d * n.ln().powi(2))
}

/// `j` with `1/(j+1) <= alpha < 1/j`, and whether `alpha = 1/(j+1)`.
pub fn level_count(alpha: f64) -> Result<(usize, bool), StrategyError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StrategyError::BadParam {
            name: "gnp".into(),
            reason: format!("alpha must lie in (0, 1), got {alpha}"),
        });
    }
    let inv = 1.0 / alpha;
    let nearest = inv.round();
    if (inv - nearest).abs() < BOUNDARY_TOLERANCE {
        Ok((nearest as usize - 1, true))
    } else {
        Ok((inv.floor() as usize, false))
    }
}

/// Thresholds and budget for `G(n, p)` at exponent `alpha`. The regime is
/// chosen from `d^{j+1}` unless given; off the boundary only `Main` applies.
pub fn gnp_params(
    n: usize,
    p: f64,
    alpha: f64,
    regime: Option<GnpRegime>,
) -> Result<GnpRobberParams, StrategyError> {
    let bad = |reason: String| StrategyError::BadParam {
        name: "gnp".into(),
        reason,
    };
    let (j, boundary) = level_count(alpha)?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(bad(format!("p must lie in (0, 1], got {p}")));
    }
    if n < 2 {
        return Err(bad("need at least two vertices".into()));
    }
    let (nf, jf) = (n as f64, j as f64);
    let c = 6.0 / (1.0 - jf * alpha);
    let d = (nf - 1.0) * p;
    let ln_n = nf.ln();
    let reach = d.powi(j as i32 + 1);
    let auto = if !boundary {
        GnpRegime::Main
    } else if reach >= 7.0 * nf * ln_n {
        GnpRegime::BoundaryDense
    } else if reach >= nf / ln_n {
        GnpRegime::BoundaryMid
    } else {
        GnpRegime::BoundarySparse
    };
    let regime = match regime {
        Some(r) if !boundary && r != GnpRegime::Main => {
            return Err(bad(format!(
                "regime {r:?} needs alpha = 1/(j+1); alpha = {alpha} is interior"
            )))
        }
        Some(r) => r,
        None => auto,
    };

    let base = match regime {
        GnpRegime::BoundarySparse => 2.0 * c * (jf + 1.0),
        _ => 2.0 * c * jf,
    };
    let mut level_threshold = vec![0.0, 0.0];
    for r in 2..=j {
        level_threshold.push((d / base).powi(r as i32 - 1));
    }
    let (k_prefactor, k_budget) = match regime {
        GnpRegime::Main | GnpRegime::BoundaryDense => (k_main_prefactor(j, alpha), k_main(j, alpha, p)),
        GnpRegime::BoundaryMid => {
            let k = k_mid(j, alpha, nf, d);
            (k / (d.powi(j as i32) / ln_n), k)
        }
        GnpRegime::BoundarySparse => {
            level_threshold.push((d / base).powi(j as i32) * c * (1.0 - jf * alpha) / (42.0 * ln_n));
            let k = k_sparse(j, alpha, nf, d);
            (k / (nf / (d * ln_n * ln_n)), k)
        }
    };
    Ok(GnpRobberParams {
        n,
        p,
        alpha,
        j,
        c,
        d,
        regime,
        k_prefactor,
        k_budget,
        level_threshold,
    })
}

/// `counts[i]` = cops within distance `i` of `center` in `G - removed`, for
/// `i = 0..=max_r`. `center` itself must not be removed.
pub fn cop_counts_within(
    g: &Graph,
    cops: &[usize],
    center: usize,
    removed: &[usize],
    max_r: usize,
) -> Vec<usize> {
    let dist = crate::graph::distances_avoiding(g, &[center], |u| removed.contains(&u), max_r as u32);
    let mut counts = vec![0usize; max_r + 1];
    for &c in cops {
        let dc = dist[c];
        if dc != UNREACHABLE {
            counts[dc as usize] += 1;
        }
    }
    for i in 1..=max_r {
        counts[i] += counts[i - 1];
    }
    counts
}

fn within_thresholds(counts: &[usize], params: &GnpRobberParams) -> bool {
    counts
        .iter()
        .zip(&params.level_threshold)
        .all(|(&c, &t)| c as f64 <= t)
}

fn not_a_neighbour(what: &str, u: usize, v: usize) -> StrategyError {
    StrategyError::BadParam {
        name: "gnp".into(),
        reason: format!("{what} {u} is not a neighbour of {v}"),
    }
}

/// Whether `v` is safe with deadly neighbour `x`.
pub fn is_safe(
    g: &Graph,
    cops: &[usize],
    v: usize,
    x: usize,
    params: &GnpRobberParams,
) -> Result<bool, StrategyError> {
    g.check_vertex(v)?;
    if x == v || !g.has_edge(v, x) {
        return Err(not_a_neighbour("deadly vertex", x, v));
    }
    let counts = cop_counts_within(g, cops, v, &[x], params.levels());
    Ok(within_thresholds(&counts, params))
}

/// Whether the neighbour `y` of `v` is `r`-dangerous with deadly neighbour `x`.
pub fn is_dangerous(
    g: &Graph,
    cops: &[usize],
    v: usize,
    x: usize,
    y: usize,
    r: usize,
    params: &GnpRobberParams,
) -> Result<bool, StrategyError> {
    g.check_vertex(v)?;
    if y == v || y == x || !g.has_edge(v, y) {
        return Err(not_a_neighbour("candidate", y, v));
    }
    if r > params.levels() {
        return Err(StrategyError::BadParam {
            name: "gnp".into(),
            reason: format!("level {r} above the top level {}", params.levels()),
        });
    }
    let counts = cop_counts_within(g, cops, y, &[v, x], r);
    Ok(counts[r] as f64 > params.level_threshold[r])
}

/// Everything the move rule knows about one candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Verdict {
    vertex: usize,
    /// Levels at which the candidate is dangerous, plus one if `x` lies within
    /// the top level in `G - v`.
    violations: usize,
    nearest_cop: u32,
}

fn assess(g: &Graph, cops: &[usize], v: usize, x: usize, y: usize, params: &GnpRobberParams, near: &[u32]) -> Verdict {
    let top = params.levels();
    let counts = cop_counts_within(g, cops, y, &[v, x], top);
    let mut violations = counts
        .iter()
        .zip(&params.level_threshold)
        .filter(|(&c, &t)| c as f64 > t)
        .count();
    let from_y = crate::graph::distances_avoiding(g, &[y], |u| u == v, top as u32);
    if from_y[x] != UNREACHABLE {
        violations += 1;
    }
    Verdict {
        vertex: y,
        violations,
        nearest_cop: near[y],
    }
}

/// The deadly neighbour used at `v`: the previous vertex when it is a
/// neighbour, otherwise the lowest-id neighbour making `v` safe, otherwise the
/// lowest-id neighbour.
fn deadly_neighbour(g: &Graph, cops: &[usize], v: usize, prev: Option<usize>, params: &GnpRobberParams) -> Option<usize> {
    if let Some(p) = prev.filter(|&p| p != v && g.has_edge(v, p)) {
        return Some(p);
    }
    let nbrs = g.neighbors(v);
    nbrs.iter()
        .copied()
        .find(|&x| is_safe(g, cops, v, x, params).unwrap_or(false))
        .or_else(|| nbrs.first().copied())
}

/// Target of the robber at `s.robber()`, having come from `prev`.
///
/// The first neighbour (by id) passing every filter wins. If none does, the
/// neighbour with the fewest violations is taken, then the one farthest from
/// the nearest cop, then the lowest id.
pub fn gnp_robber_move(g: &Graph, s: &GameState, params: &GnpRobberParams, prev: Option<usize>) -> usize {
    let v = s.robber().expect("robber to move is placed");
    let cops = s.cops();
    let Some(x) = deadly_neighbour(g, cops, v, prev, params) else {
        return v;
    };
    let near = multi_source_distances(g, cops);
    let mut verdicts: Vec<Verdict> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&y| y != x)
        .map(|y| assess(g, cops, v, x, y, params, &near))
        .collect();
    if let Some(ok) = verdicts.iter().find(|t| t.violations == 0) {
        return ok.vertex;
    }
    if verdicts.is_empty() {
        // `x` is the only neighbour; judge it with its own deletion lifted.
        verdicts.push(Verdict {
            vertex: x,
            violations: usize::from(cops.contains(&x)),
            nearest_cop: near[x],
        });
    }
    verdicts
        .into_iter()
        .min_by_key(|t| (t.violations, std::cmp::Reverse(t.nearest_cop), t.vertex))
        .map(|t| t.vertex)
        .expect("at least one candidate")
}

/// Stateful wrapper remembering the previous vertex.
#[derive(Clone, Debug)]
pub struct GnpRobber {
    params: GnpRobberParams,
    prev: Option<usize>,
}

impl GnpRobber {
    pub fn new(params: GnpRobberParams) -> Self {
        GnpRobber { params, prev: None }
    }

    pub fn params(&self) -> &GnpRobberParams {
        &self.params
    }
}

impl RobberStrategy for GnpRobber {
    /// A safe vertex as far as possible from the nearest cop (lowest id on
    /// ties), or simply the farthest vertex when none is safe.
    fn place(&mut self, g: &Graph, cops: &[usize]) -> Result<usize, GameError> {
        if g.n() == 0 {
            return Err(GameError::Placement("graph has no vertices".into()));
        }
        self.prev = None;
        let near = multi_source_distances(g, cops);
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(near[v]), v));
        let safe = order.iter().copied().find(|&v| {
            g.neighbors(v)
                .iter()
                .any(|&x| is_safe(g, cops, v, x, &self.params).unwrap_or(false))
        });
        Ok(safe.unwrap_or(order[0]))
    }

    fn choose(&mut self, g: &Graph, s: &GameState) -> usize {
        let v = s.robber().expect("robber to move is placed");
        let to = gnp_robber_move(g, s, &self.params, self.prev);
        self.prev = Some(v);
        to
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_named;

    #[test]
    fn alpha_point_four() {
        let p = gnp_params(1000, 0.01, 0.4, None).unwrap();
        assert_eq!((p.j, p.regime), (2, GnpRegime::Main));
        assert!((p.c - 30.0).abs() < 1e-12);
        let coefficient = 0.2 / 2880.0;
        assert!((p.k_prefactor - coefficient).abs() <= 1e-12 * coefficient);
        assert!((p.k_budget - coefficient / 0.01).abs() <= 1e-12 * p.k_budget);
    }

    #[test]
    fn threshold_at_d_100() {
        // d = (n - 1) p = 100.
        let p = gnp_params(1001, 0.1, 0.4, None).unwrap();
        assert!((p.d - 100.0).abs() < 1e-9);
        assert!((p.level_threshold[2] - 5.0 / 6.0).abs() < 1e-12);
        assert_eq!(&p.level_threshold[..2], &[0.0, 0.0]);
    }

    #[test]
    fn boundary_regimes() {
        assert_eq!(level_count(1.0 / 3.0).unwrap(), (2, true));
        assert_eq!(level_count(0.5).unwrap(), (1, true));
        assert_eq!(level_count(0.7).unwrap(), (1, false));
        assert!(level_count(1.0).is_err());
        assert!(level_count(0.0).is_err());

        let n = 10_000usize;
        let nf = n as f64;
        let pick = |d: f64| gnp_params(n, d / (nf - 1.0), 1.0 / 3.0, None).unwrap();
        // d^3 against 7 n ln n ~ 644_700 and n / ln n ~ 1086.
        let dense = pick(100.0);
        assert_eq!(dense.regime, GnpRegime::BoundaryDense);
        assert!((dense.k_budget - k_main(2, 1.0 / 3.0, dense.p)).abs() <= 1e-12 * dense.k_budget);
        let mid = pick(20.0);
        assert_eq!(mid.regime, GnpRegime::BoundaryMid);
        let sparse = pick(5.0);
        assert_eq!(sparse.regime, GnpRegime::BoundarySparse);
        assert_eq!(sparse.levels(), 3);
        let c: f64 = 6.0 / (1.0 - 2.0 / 3.0);
        let expect = (5.0f64 / (2.0 * c * 3.0)).powi(2) * c * (1.0 / 3.0) / (42.0 * nf.ln());
        assert!((sparse.level_threshold[3] - expect).abs() <= 1e-12 * expect);
        assert!(gnp_params(n, 0.01, 0.4, Some(GnpRegime::BoundaryMid)).is_err());
    }

    /// Star-like witness: v = 0 with neighbours 1 and 3, a cop sitting on 1.
    fn witness() -> (Graph, GnpRobberParams) {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 3), (3, 4)]).unwrap();
        let params = gnp_params(5, 0.5, 0.4, None).unwrap();
        (g, params)
    }

    #[test]
    fn safety_through_the_deadly_neighbour() {
        let (g, params) = witness();
        assert!(is_safe(&g, &[], 0, 1, &params).unwrap());
        assert!(!is_safe(&g, &[0], 0, 1, &params).unwrap());
        // Deleting 1 hides the cop standing on it.
        assert!(is_safe(&g, &[1], 0, 1, &params).unwrap());
        assert!(!is_safe(&g, &[1], 0, 3, &params).unwrap());
        assert!(is_safe(&g, &[1], 0, 2, &params).is_err());
    }

    #[test]
    fn danger_levels() {
        let (g, params) = witness();
        assert!(is_dangerous(&g, &[3], 0, 1, 3, 0, &params).unwrap());
        assert!(is_dangerous(&g, &[4], 0, 1, 3, 1, &params).unwrap());
        assert!(!is_dangerous(&g, &[4], 0, 1, 3, 0, &params).unwrap());
        // A cop behind v is invisible from 3 once v is deleted.
        assert!(!is_dangerous(&g, &[2], 0, 1, 3, 2, &params).unwrap());
        assert!(is_dangerous(&g, &[2], 0, 1, 1, 0, &params).is_err());
    }

    #[test]
    fn no_cops_lowest_neighbour() {
        let g = gen_named("cycle", &[9], 0).unwrap();
        let params = gnp_params(9, 0.25, 0.4, None).unwrap();
        let s = GameState::new(vec![], 4, crate::game::Side::Robber, 0);
        // Previous vertex 3 is deadly; 5 is the only other neighbour.
        assert_eq!(gnp_robber_move(&g, &s, &params, Some(3)), 5);
        assert_eq!(gnp_robber_move(&g, &s, &params, None), 5);
    }

    #[test]
    fn far_cops_do_not_filter() {
        // Path of 12 vertices, robber at 2, single cop at 11: every neighbour
        // of 2 is at least 8 away from the cop.
        let g = gen_named("path", &[12], 0).unwrap();
        let params = gnp_params(12, 0.2, 0.4, None).unwrap();
        for y in [1, 3] {
            for r in 0..=params.levels() {
                let x = if y == 1 { 3 } else { 1 };
                assert!(!is_dangerous(&g, &[11], 2, x, y, r, &params).unwrap());
            }
        }
    }

    #[test]
    fn stacked_start_is_safe_at_distance_j_plus_one() {
        // All cops on 0 of a path; vertex j + 1 = 3 is safe.
        let g = gen_named("path", &[8], 0).unwrap();
        let params = gnp_params(8, 0.3, 0.4, None).unwrap();
        let cops = vec![0; 4];
        assert!(is_safe(&g, &cops, 3, 4, &params).unwrap());
        assert!(!is_safe(&g, &cops, 2, 3, &params).unwrap());
    }
}
