//! Potential-function robber for the hypercube `Q_n`.
//!
//! A cop at Hamming distance `i` from the robber weighs `w_i`, for
//! `1 <= i <= top` where `top = n/2 - rho`; farther cops weigh nothing. The
//! robber always steps to the cop-free neighbour of least total weight.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::game::{GameError, GameState, RobberStrategy};
use crate::graph::Graph;

use super::StrategyError;

/// Largest dimension [`potential_params`] accepts; the exact weight check is
/// quadratic in big-integer size.
const MAX_DIMENSION: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialParams {
    /// Hypercube dimension.
    pub n: usize,
    pub eps: f64,
    /// Smallest `rho >= sqrt(n)` with `n/2 - rho` an integer; a half-integer
    /// when `n` is odd.
    pub rho: f64,
    /// `n/2 - rho`, the largest distance that carries weight.
    pub top: usize,
    /// Normaliser `(n - 1) / (1 + eps_1)`.
    pub a: f64,
    /// `eps_i[i] = (4 + eps) / (n - 2i - 1)` for `1 <= i <= top`; index 0 is 0.
    pub eps_i: Vec<f64>,
    /// `w[i]` for `1 <= i <= top`; index 0 is 0.
    pub w: Vec<f64>,
    exact: Vec<BigRational>,
}

pub fn potential_params(n: usize, eps: f64) -> Result<PotentialParams, StrategyError> {
    let bad = |reason: String| StrategyError::BadParam {
        name: "potential".into(),
        reason,
    };
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(bad(format!("eps must be positive and finite, got {eps}")));
    }
    if n > MAX_DIMENSION {
        return Err(bad(format!("dimension {n} above {MAX_DIMENSION}")));
    }
    // top is the largest integer m with n - 2m >= 2 sqrt(n), i.e.
    // (n - 2m)^2 >= 4n, decided in integers.
    let top = (0..=n / 2)
        .rev()
        .find(|&m| (n - 2 * m) * (n - 2 * m) >= 4 * n)
        .unwrap_or(0);
    if top == 0 {
        return Err(bad(format!(
            "dimension {n} leaves no weighted distance (need n >= 8)"
        )));
    }
    let rho = n as f64 / 2.0 - top as f64;

    let eps_exact = BigRational::from_float(eps).ok_or_else(|| bad("eps is not finite".into()))?;
    let four = BigRational::from_integer(BigInt::from(4));
    let eps_of = |i: usize| -> BigRational {
        (&four + &eps_exact) / BigRational::from_integer(BigInt::from(n - 2 * i - 1))
    };
    let mut exact = vec![BigRational::zero(), BigRational::one()];
    for i in 2..=top {
        let ratio = BigRational::new(BigInt::from(i), BigInt::from(n - i));
        let next = &exact[i - 1] * ratio * (BigRational::one() + eps_of(i));
        exact.push(next);
    }
    let to_f64 = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
    let eps_i: Vec<f64> = std::iter::once(0.0)
        .chain((1..=top).map(|i| to_f64(&eps_of(i))))
        .collect();
    let a = to_f64(&(BigRational::from_integer(BigInt::from(n - 1)) / (BigRational::one() + eps_of(1))));
    let w = exact.iter().map(to_f64).collect();
    Ok(PotentialParams {
        n,
        eps,
        rho,
        top,
        a,
        eps_i,
        w,
        exact,
    })
}

impl PotentialParams {
    /// `w[1] == 1` in exact arithmetic.
    pub fn first_weight_is_one(&self) -> bool {
        self.exact[1].is_one()
    }

    /// `w[i-1] > w[i+1]` for every `2 <= i <= top - 1`, checked exactly.
    pub fn weights_decrease_by_two(&self) -> bool {
        (2..self.top).all(|i| self.exact[i - 1] > self.exact[i + 1])
    }

    /// `w[i]` evaluated directly from the closed form
    /// `A * C(n-1, i)^-1 * prod_{j <= i} (1 + eps_j)` in floating point, as a
    /// cross-check on the recurrence.
    pub fn closed_form_weight(&self, i: usize) -> f64 {
        let mut binom = 1.0f64;
        for t in 0..i {
            binom = binom * (self.n - 1 - t) as f64 / (t + 1) as f64;
        }
        let prod: f64 = (1..=i).map(|j| 1.0 + self.eps_i[j]).product();
        self.a / binom * prod
    }

    /// Weight of a cop at distance `d`.
    pub fn weight(&self, d: usize) -> f64 {
        if (1..=self.top).contains(&d) {
            self.w[d]
        } else {
            0.0
        }
    }

    /// Potential of a robber at `r` against cops at `cops`.
    pub fn potential_at(&self, cops: &[usize], r: usize) -> f64 {
        // Summing per distance class keeps equal histograms bit-identical.
        let mut count = vec![0usize; self.top + 1];
        for &c in cops {
            let d = (c ^ r).count_ones() as usize;
            if (1..=self.top).contains(&d) {
                count[d] += 1;
            }
        }
        (1..=self.top).map(|d| count[d] as f64 * self.w[d]).sum()
    }

    fn check_graph(&self, g: &Graph) -> Result<(), StrategyError> {
        if self.n >= usize::BITS as usize || g.n() != 1usize << self.n {
            return Err(StrategyError::BadParam {
                name: "potential".into(),
                reason: format!("graph has {} vertices, not 2^{}", g.n(), self.n),
            });
        }
        Ok(())
    }
}

/// `P = sum_i N_i w_i` for the state's robber.
pub fn potential(params: &PotentialParams, g: &Graph, s: &GameState) -> Result<f64, StrategyError> {
    params.check_graph(g)?;
    let r = s.robber().ok_or_else(|| StrategyError::BadParam {
        name: "potential".into(),
        reason: "robber is not placed".into(),
    })?;
    Ok(params.potential_at(s.cops(), r))
}

/// Cop-free neighbour with the least potential, lowest id on ties; stays when
/// every neighbour holds a cop.
pub fn hypercube_robber_move(
    params: &PotentialParams,
    g: &Graph,
    s: &GameState,
) -> Result<usize, StrategyError> {
    potential(params, g, s)?;
    let r = s.robber().expect("checked by potential");
    let mut best: Option<(usize, f64)> = None;
    for &u in g.neighbors(r) {
        if s.cops().binary_search(&u).is_ok() {
            continue;
        }
        let p = params.potential_at(s.cops(), u);
        if best.map_or(true, |(_, b)| p < b) {
            best = Some((u, p));
        }
    }
    Ok(best.map_or(r, |(u, _)| u))
}

#[derive(Clone, Debug)]
pub struct PotentialRobber {
    params: PotentialParams,
}

impl PotentialRobber {
    pub fn new(params: PotentialParams) -> Self {
        PotentialRobber { params }
    }

    pub fn params(&self) -> &PotentialParams {
        &self.params
    }
}

impl RobberStrategy for PotentialRobber {
    /// Least potential, then farthest from the nearest cop, then lowest id.
    fn place(&mut self, g: &Graph, cops: &[usize]) -> Result<usize, GameError> {
        self.params
            .check_graph(g)
            .map_err(|e| GameError::Placement(e.to_string()))?;
        let mut best: Option<(usize, f64, u32)> = None;
        for v in 0..g.n() {
            let p = self.params.potential_at(cops, v);
            let near = cops.iter().map(|&c| (c ^ v).count_ones()).min().unwrap_or(u32::MAX);
            let better = match best {
                None => true,
                Some((_, bp, bn)) => p < bp || (p == bp && near > bn),
            };
            if better {
                best = Some((v, p, near));
            }
        }
        best.map(|b| b.0)
            .ok_or_else(|| GameError::Placement("empty graph".into()))
    }

    fn choose(&mut self, g: &Graph, s: &GameState) -> usize {
        hypercube_robber_move(&self.params, g, s).unwrap_or_else(|_| s.robber().expect("placed"))
    }
}
