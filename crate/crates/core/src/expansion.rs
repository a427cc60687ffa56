//! Empirical check of the expansion properties expected of `G(n, p)` with
//! `d = (n - 1) p = n^alpha`: neighbourhood growth, path multiplicities and
//! short cycles through edges.
//!
//! Everything is measured on seeded samples and reported with the measured
//! extremes next to the ceilings, so marginal instances can be audited.

use rand::seq::index::sample;
use rand::Rng as _;
use serde::Serialize;

use crate::graph::{
    count_cycles_through_edge, count_paths_by_length, distances_avoiding, Graph, GraphError,
    CYCLE_LENGTH_CAP, UNREACHABLE,
};
use crate::seeded_rng;

/// How far `ln d / ln n` may drift from `alpha` before the degree hypothesis
/// is flagged.
pub const EXPONENT_SLACK: f64 = 0.1;

/// Upper limit on the estimated path-enumeration work of one check.
const PATH_WORK_CAP: f64 = 5e8;

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionOptions {
    /// Relative tolerance on neighbourhood sizes.
    pub tolerance: f64,
    pub sample_vertices: usize,
    pub sample_pairs: usize,
    pub sample_edges: usize,
    /// Longest cycle counted; `None` picks `i + 2` for the largest `i` with
    /// `d^i < n / ln n`.
    pub cycle_length: Option<usize>,
    /// Overrides the observed average degree.
    pub d: Option<f64>,
    pub seed: u64,
}

impl Default for ExpansionOptions {
    fn default() -> Self {
        ExpansionOptions {
            tolerance: 0.25,
            sample_vertices: 200,
            sample_pairs: 2000,
            sample_edges: 200,
            cycle_length: None,
            d: None,
            seed: 0,
        }
    }
}

/// Neighbourhood sizes at one radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NeighbourhoodCheck {
    pub radius: usize,
    /// `sparse` (`d^i <= n / ln n`) or `dense` (`d^i = c n`, `c <= 1`).
    pub regime: &'static str,
    /// Centre of the accepted band: `d^i`, or `(1 - e^{-c}) n` when dense.
    pub expected: f64,
    pub lower: f64,
    pub upper: f64,
    /// Extremes of `|N_i[v]| / expected`.
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub failures: usize,
    pub checked: usize,
    pub pass: bool,
}

/// One path-multiplicity branch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathCheck {
    /// `a` to `d`.
    pub branch: &'static str,
    pub length: usize,
    pub ceiling: f64,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Pairs whose `w` lies in the required neighbourhood of `v`.
    pub checked: usize,
    pub max_count: u64,
    pub failures: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleCheck {
    pub max_length: usize,
    /// `eps * d`.
    pub ceiling: f64,
    /// Whether `d^{L-2} < n / ln n` holds for the chosen length `L`.
    pub within_hypothesis: bool,
    pub checked: usize,
    pub max_count: u64,
    pub mean_count: f64,
    pub failures: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionReport {
    pub n: usize,
    pub d: f64,
    pub alpha: f64,
    pub eps: f64,
    /// Largest integer strictly below `1 / alpha`.
    pub ell: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub hypothesis_violations: Vec<String>,
    pub sample_vertices: usize,
    pub sample_pairs: usize,
    pub sample_edges: usize,
    pub neighbourhoods: Vec<NeighbourhoodCheck>,
    pub paths: Vec<PathCheck>,
    pub cycles: Option<CycleCheck>,
    /// All applicable checks passed.
    pub pass: bool,
}

impl ExpansionReport {
    pub fn neighbourhood(&self, radius: usize) -> Option<&NeighbourhoodCheck> {
        self.neighbourhoods.iter().find(|c| c.radius == radius)
    }
}

/// Largest integer strictly below `1 / alpha`.
pub fn ell_for(alpha: f64) -> usize {
    let inv = 1.0 / alpha;
    let f = inv.floor();
    if f == inv {
        f as usize - 1
    } else {
        f as usize
    }
}

/// Path ceilings `(branch, length, ceiling, applicable, reason)`.
fn path_branches(n: f64, d: f64, alpha: f64, ell: usize) -> Vec<(&'static str, usize, f64, bool, Option<String>)> {
    let ln_n = n.ln();
    let lf = ell as f64;
    let d1 = d.powi(ell as i32 + 1);
    let mut out = Vec::new();
    for i in 2..=ell {
        out.push(("a", i, 3.0 / (1.0 - i as f64 * alpha), true, None));
    }
    let dense = d1 >= 7.0 * n * ln_n;
    out.push((
        "b",
        ell + 1,
        6.0 / (1.0 - lf * alpha) * d1 / n,
        dense,
        (!dense).then(|| "d^(l+1) < 7 n ln n".to_string()),
    ));
    out.push((
        "c",
        ell + 1,
        42.0 / (1.0 - lf * alpha) * ln_n,
        !dense,
        dense.then(|| "d^(l+1) >= 7 n ln n".to_string()),
    ));
    let sparse = d1 < n;
    out.push((
        "d",
        ell + 2,
        84.0 / (1.0 - lf * alpha) * d.powi(ell as i32 + 2) * ln_n / n,
        sparse,
        (!sparse).then(|| "d^(l+1) >= n".to_string()),
    ));
    out
}

/// Runs every check on `g` as a sample of `G(n, p)` at exponent `alpha`.
pub fn verify_expansion(
    g: &Graph,
    alpha: f64,
    eps: f64,
    opts: &ExpansionOptions,
) -> Result<ExpansionReport, GraphError> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::InvalidSize("need at least two vertices".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(GraphError::InvalidArgument(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(opts.tolerance >= 0.0) {
        return Err(GraphError::InvalidArgument("tolerance must be non-negative".into()));
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let d = opts.d.unwrap_or_else(|| g.average_degree());
    let ell = ell_for(alpha);

    let mut violations = Vec::new();
    if !(eps > 0.0 && eps < 0.1) {
        violations.push(format!("eps = {eps} is outside (0, 0.1)"));
    }
    if !(eps < alpha && alpha < 1.0 - eps) {
        violations.push(format!("alpha = {alpha} is outside (eps, 1 - eps)"));
    }
    let exponent = if d > 0.0 { d.ln() / ln_n } else { f64::NEG_INFINITY };
    if (exponent - alpha).abs() > EXPONENT_SLACK {
        violations.push(format!(
            "d = {d:.6} is n^{exponent:.4}, not n^(alpha + o(1)) with alpha = {alpha}"
        ));
    }

    let mut rng = seeded_rng(opts.seed);
    let vertices: Vec<usize> = {
        let mut v = sample(&mut rng, n, opts.sample_vertices.min(n)).into_vec();
        v.sort_unstable();
        v
    };

    // (i): radii with d^i <= n / ln n, then the first radius with d^i <= n
    // beyond that as the dense variant.
    let mut radii: Vec<(usize, &'static str, f64)> = Vec::new();
    let mut i = 1;
    loop {
        let di = d.powi(i as i32);
        if di <= nf / ln_n {
            radii.push((i, "sparse", di));
        } else {
            if di <= nf {
                radii.push((i, "dense", (1.0 - (-di / nf).exp()) * nf));
            }
            break;
        }
        if d <= 1.0 {
            break;
        }
        i += 1;
    }
    let max_radius = radii.last().map_or(0, |r| r.0) as u32;
    let mut sizes: Vec<Vec<usize>> = vec![Vec::new(); radii.len()];
    for &v in &vertices {
        let dist = distances_avoiding(g, &[v], |_| false, max_radius);
        let mut per = vec![0usize; max_radius as usize + 1];
        for &x in dist.iter().filter(|&&x| x != UNREACHABLE) {
            per[x as usize] += 1;
        }
        for r in 1..per.len() {
            per[r] += per[r - 1];
        }
        for (slot, &(radius, _, _)) in sizes.iter_mut().zip(&radii) {
            slot.push(per[radius]);
        }
    }
    let tau = opts.tolerance;
    let neighbourhoods: Vec<NeighbourhoodCheck> = radii
        .iter()
        .zip(&sizes)
        .map(|(&(radius, regime, expected), got)| {
            let (lower, upper) = ((1.0 - tau) * expected, (1.0 + tau) * expected);
            let ratios = got.iter().map(|&s| s as f64 / expected);
            let failures = got
                .iter()
                .filter(|&&s| (s as f64) < lower || (s as f64) > upper)
                .count();
            NeighbourhoodCheck {
                radius,
                regime,
                expected,
                lower,
                upper,
                min_ratio: ratios.clone().fold(f64::INFINITY, f64::min),
                max_ratio: ratios.fold(f64::NEG_INFINITY, f64::max),
                failures,
                checked: got.len(),
                pass: failures == 0,
            }
        })
        .collect();

    // (ii): sampled ordered pairs.
    let pairs: Vec<(usize, usize)> = (0..opts.sample_pairs)
        .map(|_| {
            let v = rng.gen_range(0..n);
            let mut w = rng.gen_range(0..n - 1);
            if w >= v {
                w += 1;
            }
            (v, w)
        })
        .collect();
    let mut paths: Vec<PathCheck> = path_branches(nf, d, alpha, ell)
        .into_iter()
        .map(|(branch, length, ceiling, applicable, reason)| PathCheck {
            branch,
            length,
            ceiling,
            applicable,
            reason,
            checked: 0,
            max_count: 0,
            failures: 0,
            pass: true,
        })
        .collect();
    let deepest = paths.iter().filter(|p| p.applicable).map(|p| p.length).max().unwrap_or(0);
    let work = pairs.len() as f64 * d.max(1.0).powi(deepest.saturating_sub(1) as i32);
    if work > PATH_WORK_CAP {
        for p in paths.iter_mut().filter(|p| p.applicable && p.length == deepest) {
            p.applicable = false;
            p.reason = Some(format!("skipped: about {work:.3e} path steps"));
        }
    }
    let deepest = paths.iter().filter(|p| p.applicable).map(|p| p.length).max().unwrap_or(0);
    if deepest > 0 {
        for &(v, w) in &pairs {
            let dist = distances_avoiding(g, &[v], |_| false, deepest as u32)[w];
            if dist == UNREACHABLE {
                continue;
            }
            let counts = count_paths_by_length(g, v, w, deepest)?;
            for p in paths.iter_mut().filter(|p| p.applicable) {
                if dist as usize <= p.length {
                    p.checked += 1;
                    let c = counts[p.length];
                    p.max_count = p.max_count.max(c);
                    if c as f64 > p.ceiling {
                        p.failures += 1;
                    }
                }
            }
        }
    }
    for p in &mut paths {
        p.pass = p.failures == 0;
    }

    // (iii): sampled edges.
    let auto_len = (1..)
        .take_while(|&i| d.powi(i as i32) < nf / ln_n && i + 2 <= CYCLE_LENGTH_CAP)
        .last()
        .map(|i: usize| i + 2);
    let cycle_len = opts.cycle_length.or(auto_len);
    let cycles = match cycle_len {
        Some(len) if g.m() > 0 => {
            let edges: Vec<(usize, usize)> = g.edges().collect();
            let mut picked = sample(&mut rng, edges.len(), opts.sample_edges.min(edges.len())).into_vec();
            picked.sort_unstable();
            let counts = picked
                .iter()
                .map(|&e| count_cycles_through_edge(g, edges[e].0, edges[e].1, len))
                .collect::<Result<Vec<_>, _>>()?;
            let ceiling = eps * d;
            let failures = counts.iter().filter(|&&c| c as f64 > ceiling).count();
            Some(CycleCheck {
                max_length: len,
                ceiling,
                within_hypothesis: len >= 3 && d.powi(len as i32 - 2) < nf / ln_n,
                checked: counts.len(),
                max_count: counts.iter().copied().max().unwrap_or(0),
                mean_count: counts.iter().sum::<u64>() as f64 / counts.len().max(1) as f64,
                failures,
                pass: failures == 0,
            })
        }
        Some(len) => Some(CycleCheck {
            max_length: len,
            ceiling: eps * d,
            within_hypothesis: true,
            checked: 0,
            max_count: 0,
            mean_count: 0.0,
            failures: 0,
            pass: true,
        }),
        None => None,
    };

    let pass = neighbourhoods.iter().all(|c| c.pass)
        && paths.iter().all(|p| !p.applicable || p.pass)
        && cycles.as_ref().map_or(true, |c| c.pass);
    Ok(ExpansionReport {
        n,
        d,
        alpha,
        eps,
        ell,
        tolerance: tau,
        seed: opts.seed,
        hypothesis_violations: violations,
        sample_vertices: vertices.len(),
        sample_pairs: pairs.len(),
        sample_edges: cycles.as_ref().map_or(0, |c| c.checked),
        neighbourhoods,
        paths,
        cycles,
        pass,
    })
}
