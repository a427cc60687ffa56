//! Exact solver for the lazy and the classic game by retrograde analysis.
//!
//! A state is a cop multiset, a robber vertex and the side to move. Cops are
//! interchangeable, so multisets are stored once each, ranked with the
//! combinatorial number system (a sorted multiset `c_0 <= .. <= c_{k-1}` maps
//! to the strictly increasing `c_i + i`).
//!
//! Labelling starts from the capture states (distance 0) and proceeds in
//! layers: a cops-to-move state is won as soon as one successor is won,
//! a robber-to-move state once all its successors are. Distances are in
//! half-moves, so layered processing yields the optimal distance for both
//! sides. Whatever is unlabelled at the fixpoint is a robber win.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{GameState, Move, Side};
use crate::graph::Graph;

/// Which move rule the cops play under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rules {
    /// One cop moves per round.
    Lazy,
    /// Every cop may move each round.
    Classic,
}

impl std::str::FromStr for Rules {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lazy" => Ok(Rules::Lazy),
            "classic" => Ok(Rules::Classic),
            other => Err(format!("unknown mode `{other}` (expected lazy or classic)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    /// Cap on `2 * n * C(n + k - 1, k)`.
    pub max_states: usize,
    pub classic_max_n: usize,
    pub classic_max_k: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_states: 50_000_000,
            classic_max_n: 12,
            classic_max_k: 3,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("{states} states exceed the cap of {cap}")]
    StateCap { states: u128, cap: usize },
    #[error("classic solver limited to n <= {max_n}, k <= {max_k} (got n = {n}, k = {k})")]
    ClassicCap {
        n: usize,
        k: usize,
        max_n: usize,
        max_k: usize,
    },
    #[error("at least one cop and one vertex are required")]
    Empty,
    #[error("graph is disconnected; the game value is only defined on connected graphs")]
    Disconnected,
    #[error("no k <= {0} cops win")]
    NotFound(usize),
    #[error("capture distance exceeds the 16-bit table range")]
    DistanceOverflow,
    #[error("state is not in the table: {0}")]
    StateMissing(String),
    #[error("optimal moves are only available for the lazy rules")]
    Unsupported,
}

/// Value of one state in the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    /// Cops force capture within `distance` half-moves.
    CopWin { distance: u16 },
    RobberWin,
}

const UNKNOWN: u16 = u16::MAX;

/// Bijection between sorted cop multisets and `0..C(n + k - 1, k)`.
#[derive(Clone, Debug)]
struct MultisetIndex {
    k: usize,
    /// `binom[a][b] = C(a, b)` for `a <= n + k`, `b <= k`.
    binom: Vec<Vec<usize>>,
    /// Flattened `len * k` table, sorted multiset per rank.
    sets: Vec<u16>,
}

impl MultisetIndex {
    fn count(n: usize, k: usize) -> u128 {
        // C(n + k - 1, k) without overflow for the sizes we care about.
        let mut c: u128 = 1;
        for i in 0..k as u128 {
            c = c * (n as u128 + i) / (i + 1);
        }
        c
    }

    fn new(n: usize, k: usize) -> Self {
        let top = n + k;
        let mut binom = vec![vec![0usize; k + 1]; top + 1];
        for a in 0..=top {
            binom[a][0] = 1;
            for b in 1..=k.min(a) {
                binom[a][b] = binom[a - 1][b - 1] + if b < a { binom[a - 1][b] } else { 0 };
            }
        }
        let len = binom[n + k - 1][k];
        let mut sets = Vec::with_capacity(len * k);
        // Colex enumeration of k-subsets d of 0..n+k-1; rank order matches.
        let mut d: Vec<usize> = (0..k).collect();
        loop {
            sets.extend(d.iter().enumerate().map(|(i, &x)| (x - i) as u16));
            let mut i = 0;
            while i < k && d[i] + 1 == if i + 1 < k { d[i + 1] } else { n + k - 1 } {
                i += 1;
            }
            if i == k {
                break;
            }
            d[i] += 1;
            for (j, slot) in d.iter_mut().enumerate().take(i) {
                *slot = j;
            }
        }
        debug_assert_eq!(sets.len(), len * k);
        MultisetIndex { k, binom, sets }
    }

    fn len(&self) -> usize {
        self.sets.len() / self.k
    }

    fn get(&self, rank: usize) -> &[u16] {
        &self.sets[rank * self.k..(rank + 1) * self.k]
    }

    /// Rank of a sorted multiset.
    fn rank<T: Copy + Into<usize>>(&self, sorted: &[T]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &c)| self.binom[c.into() + i][i + 1])
            .sum()
    }
}

/// Generates the cop-side neighbours of a multiset (including itself, the
/// all-pass option). The relation is symmetric under both rule sets, so the
/// same routine yields predecessors.
struct CopMoves<'a> {
    g: &'a Graph,
    index: &'a MultisetIndex,
    rules: Rules,
    buf: Vec<u16>,
    out: Vec<usize>,
}

impl<'a> CopMoves<'a> {
    fn new(g: &'a Graph, index: &'a MultisetIndex, rules: Rules) -> Self {
        CopMoves {
            g,
            index,
            rules,
            buf: vec![0; index.k],
            out: Vec::new(),
        }
    }

    fn neighbours(&mut self, rank: usize) -> &[usize] {
        self.out.clear();
        self.out.push(rank);
        let cops = self.index.get(rank);
        match self.rules {
            Rules::Lazy => {
                for i in 0..cops.len() {
                    if i > 0 && cops[i] == cops[i - 1] {
                        continue;
                    }
                    for &t in self.g.neighbors(cops[i] as usize) {
                        self.buf.copy_from_slice(cops);
                        self.buf[i] = t as u16;
                        // Restore order by shifting the moved entry.
                        let mut j = i;
                        while j > 0 && self.buf[j - 1] > self.buf[j] {
                            self.buf.swap(j - 1, j);
                            j -= 1;
                        }
                        while j + 1 < self.buf.len() && self.buf[j] > self.buf[j + 1] {
                            self.buf.swap(j, j + 1);
                            j += 1;
                        }
                        self.out.push(self.index.rank(&self.buf));
                    }
                }
            }
            Rules::Classic => {
                let options: Vec<Vec<usize>> = cops
                    .iter()
                    .map(|&c| self.g.closed_neighbors(c as usize))
                    .collect();
                let mut pick = vec![0usize; options.len()];
                'product: loop {
                    for (slot, (o, &p)) in self.buf.iter_mut().zip(options.iter().zip(&pick)) {
                        *slot = o[p] as u16;
                    }
                    self.buf.sort_unstable();
                    self.out.push(self.index.rank(&self.buf));
                    for i in 0..pick.len() {
                        pick[i] += 1;
                        if pick[i] < options[i].len() {
                            continue 'product;
                        }
                        pick[i] = 0;
                    }
                    break;
                }
                self.out.sort_unstable();
                self.out.dedup();
            }
        }
        &self.out
    }
}

/// Outcome of solving one `(G, k, rules)` instance, with the full state table.
#[derive(Clone, Debug)]
pub struct SolveResult {
    graph: Graph,
    rules: Rules,
    k: usize,
    index: MultisetIndex,
    cop_turn: Vec<u16>,
    robber_turn: Vec<u16>,
    placement: Option<usize>,
    placement_depth: Option<u16>,
    layers: usize,
    elapsed: Duration,
}

/// Machine-readable summary of a solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveSummary {
    pub n: usize,
    pub k: usize,
    pub mode: Rules,
    pub cop_win: bool,
    pub states: usize,
    pub seconds: f64,
}

pub fn solve_lazy(g: &Graph, k: usize) -> Result<SolveResult, SolveError> {
    solve(g, k, Rules::Lazy, &SolverLimits::default())
}

pub fn solve_classic(g: &Graph, k: usize) -> Result<SolveResult, SolveError> {
    solve(g, k, Rules::Classic, &SolverLimits::default())
}

pub fn solve(
    g: &Graph,
    k: usize,
    rules: Rules,
    limits: &SolverLimits,
) -> Result<SolveResult, SolveError> {
    let n = g.n();
    if n == 0 || k == 0 {
        return Err(SolveError::Empty);
    }
    if rules == Rules::Classic && (n > limits.classic_max_n || k > limits.classic_max_k) {
        return Err(SolveError::ClassicCap {
            n,
            k,
            max_n: limits.classic_max_n,
            max_k: limits.classic_max_k,
        });
    }
    let states = MultisetIndex::count(n, k) * n as u128 * 2;
    if states > limits.max_states as u128 || n > u16::MAX as usize {
        return Err(SolveError::StateCap {
            states,
            cap: limits.max_states,
        });
    }
    let started = Instant::now();
    let index = MultisetIndex::new(n, k);
    let total = index.len() * n;
    let mut cop_turn = vec![UNKNOWN; total];
    let mut robber_turn = vec![UNKNOWN; total];
    let mut pending: Vec<u16> = Vec::with_capacity(total);
    let mut cop_frontier: Vec<u32> = Vec::new();
    let mut robber_frontier: Vec<u32> = Vec::new();
    for a in 0..index.len() {
        let cops = index.get(a);
        for r in 0..n {
            let s = a * n + r;
            if cops.binary_search(&(r as u16)).is_ok() {
                cop_turn[s] = 0;
                robber_turn[s] = 0;
                cop_frontier.push(s as u32);
                robber_frontier.push(s as u32);
                pending.push(0);
            } else {
                pending.push(g.degree(r) as u16 + 1);
            }
        }
    }

    let mut moves = CopMoves::new(g, &index, rules);
    let closed: Vec<Vec<usize>> = (0..n).map(|v| g.closed_neighbors(v)).collect();
    let mut level: u16 = 0;
    let mut layers = 0;
    while !cop_frontier.is_empty() || !robber_frontier.is_empty() {
        if level + 1 == UNKNOWN {
            return Err(SolveError::DistanceOverflow);
        }
        let mut next_cop = Vec::new();
        let mut next_robber = Vec::new();
        // Robber-to-move predecessors of newly won cops-to-move states.
        for &s in &cop_frontier {
            let (a, r) = (s as usize / n, s as usize % n);
            for &from in &closed[r] {
                let p = a * n + from;
                if robber_turn[p] == UNKNOWN {
                    pending[p] -= 1;
                    if pending[p] == 0 {
                        robber_turn[p] = level + 1;
                        next_robber.push(p as u32);
                    }
                }
            }
        }
        // Cops-to-move predecessors of newly won robber-to-move states.
        for &s in &robber_frontier {
            let (a, r) = (s as usize / n, s as usize % n);
            for &b in moves.neighbours(a) {
                let p = b * n + r;
                if cop_turn[p] == UNKNOWN {
                    cop_turn[p] = level + 1;
                    next_cop.push(p as u32);
                }
            }
        }
        cop_frontier = next_cop;
        robber_frontier = next_robber;
        level += 1;
        layers += 1;
    }

    // Cops place to minimise the robber's best response.
    let mut placement = None;
    let mut placement_depth = None;
    for a in 0..index.len() {
        let worst = (0..n).map(|r| cop_turn[a * n + r]).max().unwrap_or(UNKNOWN);
        if worst != UNKNOWN && placement_depth.map_or(true, |d| worst < d) {
            placement = Some(a);
            placement_depth = Some(worst);
        }
    }

    Ok(SolveResult {
        graph: g.clone(),
        rules,
        k,
        index,
        cop_turn,
        robber_turn,
        placement,
        placement_depth,
        layers,
        elapsed: started.elapsed(),
    })
}

impl SolveResult {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Whether some placement of `k` cops wins against every robber placement.
    pub fn cop_win(&self) -> bool {
        self.placement.is_some()
    }

    /// Total number of states, both sides to move.
    pub fn states(&self) -> usize {
        self.cop_turn.len() * 2
    }

    pub fn elapsed(&self) -> Duration {
        self.elapsed
    }

    /// Number of labelling layers until the fixpoint.
    pub fn layers(&self) -> usize {
        self.layers
    }

    /// Best cop placement (minimal worst-case capture distance), if any wins.
    pub fn placement(&self) -> Option<Vec<usize>> {
        self.placement
            .map(|a| self.index.get(a).iter().map(|&c| c as usize).collect())
    }

    /// Worst-case half-move distance from the best placement.
    pub fn placement_distance(&self) -> Option<u16> {
        self.placement_depth
    }

    pub fn summary(&self) -> SolveSummary {
        SolveSummary {
            n: self.graph.n(),
            k: self.k,
            mode: self.rules,
            cop_win: self.cop_win(),
            states: self.states(),
            seconds: self.elapsed.as_secs_f64(),
        }
    }

    fn slot(&self, cops: &[usize], robber: usize) -> Result<usize, SolveError> {
        let n = self.graph.n();
        if cops.len() != self.k || robber >= n || cops.iter().any(|&c| c >= n) {
            return Err(SolveError::StateMissing(format!(
                "cops {cops:?}, robber {robber} (k = {}, n = {n})",
                self.k
            )));
        }
        let mut sorted = cops.to_vec();
        sorted.sort_unstable();
        Ok(self.index.rank(&sorted) * n + robber)
    }

    fn decode(d: u16) -> Value {
        if d == UNKNOWN {
            Value::RobberWin
        } else {
            Value::CopWin { distance: d }
        }
    }

    /// Table entry with explicit positions.
    pub fn value_of(&self, cops: &[usize], robber: usize, to_move: Side) -> Result<Value, SolveError> {
        let s = self.slot(cops, robber)?;
        Ok(Self::decode(match to_move {
            Side::Cops => self.cop_turn[s],
            Side::Robber => self.robber_turn[s],
        }))
    }

    pub fn value(&self, s: &GameState) -> Result<Value, SolveError> {
        let robber = s
            .robber()
            .ok_or_else(|| SolveError::StateMissing("robber not placed".into()))?;
        self.value_of(s.cops(), robber, s.to_move())
    }

    /// Robber's best reply to a cop placement: a robber-win vertex if there is
    /// one, otherwise the vertex maximising the capture distance; lowest id on
    /// ties.
    pub fn robber_placement(&self, cops: &[usize]) -> Result<usize, SolveError> {
        let mut best = (0usize, 0u32);
        for r in 0..self.graph.n() {
            let key = match self.value_of(cops, r, Side::Cops)? {
                Value::RobberWin => u32::MAX,
                Value::CopWin { distance } => distance as u32,
            };
            if r == 0 || key > best.1 {
                best = (r, key);
            }
        }
        Ok(best.0)
    }

    /// A move realising the table value. Cops in a won state minimise the
    /// successor distance; the robber heads for a robber-win successor, or
    /// else maximises the distance. Ties go to the first candidate in
    /// [`crate::game::legal_moves`] order.
    pub fn optimal_move(&self, s: &GameState) -> Result<Move, SolveError> {
        if self.rules != Rules::Lazy {
            return Err(SolveError::Unsupported);
        }
        if s.robber().is_none() {
            return Err(SolveError::StateMissing("robber not placed".into()));
        }
        if s.is_captured() {
            return Err(SolveError::StateMissing("state is already a capture".into()));
        }
        self.slot(s.cops(), s.robber().unwrap())?;
        let moves = crate::game::legal_moves(&self.graph, s)
            .map_err(|e| SolveError::StateMissing(e.to_string()))?;
        let successor = |m: Move| -> Result<u16, SolveError> {
            let next = crate::game::apply_move(&self.graph, s, m)
                .map_err(|e| SolveError::StateMissing(e.to_string()))?;
            let r = next.robber().expect("placed");
            let slot = self.slot(next.cops(), r)?;
            Ok(match next.to_move() {
                Side::Cops => self.cop_turn[slot],
                Side::Robber => self.robber_turn[slot],
            })
        };
        let mut best: Option<(Move, u16)> = None;
        for m in moves {
            let d = successor(m)?;
            let better = match (s.to_move(), best) {
                (_, None) => true,
                // UNKNOWN sorts last, so min picks won successors.
                (Side::Cops, Some((_, b))) => d < b,
                // Largest wins; UNKNOWN (robber win) is the largest value.
                (Side::Robber, Some((_, b))) => d > b,
            };
            if better {
                best = Some((m, d));
            }
        }
        let (m, _) = best.expect("legal move list is never empty");
        Ok(m)
    }

    /// Re-applies the labelling rule to every state once and reports whether
    /// anything would change; `true` certifies a fixpoint with consistent
    /// distances.
    pub fn is_fixpoint(&self) -> bool {
        let n = self.graph.n();
        let mut moves = CopMoves::new(&self.graph, &self.index, self.rules);
        for a in 0..self.index.len() {
            let cops = self.index.get(a);
            for r in 0..n {
                let s = a * n + r;
                let terminal = cops.binary_search(&(r as u16)).is_ok();
                let (cop_expect, robber_expect) = if terminal {
                    (0, 0)
                } else {
                    let best = moves
                        .neighbours(a)
                        .iter()
                        .map(|&b| self.robber_turn[b * n + r])
                        .min()
                        .unwrap();
                    let cop = if best == UNKNOWN { UNKNOWN } else { best + 1 };
                    let worst = self
                        .graph
                        .closed_neighbors(r)
                        .into_iter()
                        .map(|t| self.cop_turn[a * n + t])
                        .max()
                        .unwrap();
                    let rob = if worst == UNKNOWN { UNKNOWN } else { worst + 1 };
                    (cop, rob)
                };
                if self.cop_turn[s] != cop_expect || self.robber_turn[s] != robber_expect {
                    return false;
                }
            }
        }
        true
    }
}

/// Smallest `k <= k_max` for which `k` cops win under `rules`.
pub fn cop_number(
    g: &Graph,
    rules: Rules,
    k_max: usize,
    limits: &SolverLimits,
) -> Result<usize, SolveError> {
    if g.n() == 0 {
        return Err(SolveError::Empty);
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    for k in 1..=k_max {
        if solve(g, k, rules, limits)?.cop_win() {
            return Ok(k);
        }
    }
    Err(SolveError::NotFound(k_max))
}

/// The lazy cop number `c_L(G)`, searching `k = 1..=k_max`.
pub fn lazy_cop_number(g: &Graph, k_max: usize) -> Result<usize, SolveError> {
    cop_number(g, Rules::Lazy, k_max, &SolverLimits::default())
}

/// The classic cop number `c(G)`, searching `k = 1..=k_max`.
pub fn classic_cop_number(g: &Graph, k_max: usize) -> Result<usize, SolveError> {
    cop_number(g, Rules::Classic, k_max, &SolverLimits::default())
}
