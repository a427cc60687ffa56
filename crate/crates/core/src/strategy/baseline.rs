//! Simple opponents: greedy pursuit and evasion, uniform random play, and a
//! robber that never moves.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::game::{legal_moves, CopStrategy, GameError, GameState, Move, RobberStrategy};
use crate::graph::{distances_from, multi_source_distances, Graph, UNREACHABLE};
use crate::{seeded_rng, Rng};

fn random_placement(rng: &mut Rng, g: &Graph, k: usize) -> Result<Vec<usize>, GameError> {
    if g.n() == 0 {
        return Err(GameError::Placement("graph has no vertices".into()));
    }
    Ok((0..k).map(|_| rng.gen_range(0..g.n())).collect())
}

/// Moves a cop onto the robber if one is within reach.
pub(crate) fn capture_move(g: &Graph, s: &GameState) -> Option<Move> {
    let r = s.robber()?;
    s.cops()
        .iter()
        .position(|&c| g.closed_adjacent(c, r))
        .map(|index| Move::Cop { index, to: r })
}

/// Next vertex from `from` on a shortest path towards the vertex whose BFS
/// distances are `dist`; lowest id among equally good steps.
pub(crate) fn step_towards(g: &Graph, dist: &[u32], from: usize) -> Option<usize> {
    let d = dist[from];
    if d == 0 || d == UNREACHABLE {
        return None;
    }
    g.neighbors(from).iter().copied().find(|&u| dist[u] + 1 == d)
}

/// Captures when adjacent; otherwise the cop nearest the robber (lowest index
/// on ties) takes one step along a shortest path. Placement is uniform at
/// random.
#[derive(Clone, Debug)]
pub struct GreedyCop {
    rng: Rng,
}

impl GreedyCop {
    pub fn new(seed: u64) -> Self {
        GreedyCop { rng: seeded_rng(seed) }
    }
}

impl CopStrategy for GreedyCop {
    fn place(&mut self, g: &Graph, k: usize) -> Result<Vec<usize>, GameError> {
        random_placement(&mut self.rng, g, k)
    }

    fn choose(&mut self, g: &Graph, s: &GameState) -> Move {
        if let Some(m) = capture_move(g, s) {
            return m;
        }
        let Some(r) = s.robber() else { return Move::Pass };
        let dist = distances_from(g, r).expect("robber is on the graph");
        let best = s
            .cops()
            .iter()
            .enumerate()
            .filter(|(_, &c)| dist[c] != UNREACHABLE)
            .min_by_key(|(i, &c)| (dist[c], *i));
        match best.and_then(|(index, &c)| step_towards(g, &dist, c).map(|to| (index, to))) {
            Some((index, to)) => Move::Cop { index, to },
            None => Move::Pass,
        }
    }
}

/// Uniform over the legal moves, including `Pass`.
#[derive(Clone, Debug)]
pub struct RandomCop {
    rng: Rng,
}

impl RandomCop {
    pub fn new(seed: u64) -> Self {
        RandomCop { rng: seeded_rng(seed) }
    }
}

impl CopStrategy for RandomCop {
    fn place(&mut self, g: &Graph, k: usize) -> Result<Vec<usize>, GameError> {
        random_placement(&mut self.rng, g, k)
    }

    fn choose(&mut self, g: &Graph, s: &GameState) -> Move {
        let moves = legal_moves(g, s).unwrap_or_default();
        moves.choose(&mut self.rng).copied().unwrap_or(Move::Pass)
    }
}

/// Vertex maximising the distance to the nearest cop, lowest id on ties.
/// Unreachable counts as infinitely far.
pub(crate) fn farthest_from_cops(g: &Graph, cops: &[usize]) -> usize {
    let dist = multi_source_distances(g, cops);
    (0..g.n()).max_by_key(|&v| (dist[v], std::cmp::Reverse(v))).unwrap_or(0)
}

/// Keeps the distance to the nearest cop as large as possible, preferring to
/// stay put on ties and then the lowest id.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyRobber;

impl RobberStrategy for GreedyRobber {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> Result<usize, GameError> {
        Ok(farthest_from_cops(g, cops))
    }

    fn choose(&mut self, g: &Graph, s: &GameState) -> usize {
        let r = s.robber().expect("robber to move is placed");
        let dist = multi_source_distances(g, s.cops());
        let mut best = r;
        for &u in g.neighbors(r) {
            if dist[u] > dist[best] {
                best = u;
            }
        }
        best
    }
}

/// Uniform placement on a cop-free vertex and uniform moves in `N[v]`.
#[derive(Clone, Debug)]
pub struct RandomRobber {
    rng: Rng,
}

impl RandomRobber {
    pub fn new(seed: u64) -> Self {
        RandomRobber { rng: seeded_rng(seed) }
    }
}

impl RobberStrategy for RandomRobber {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> Result<usize, GameError> {
        let free: Vec<usize> = (0..g.n()).filter(|v| !cops.contains(v)).collect();
        match free.choose(&mut self.rng) {
            Some(&v) => Ok(v),
            None => random_placement(&mut self.rng, g, 1).map(|v| v[0]),
        }
    }

    fn choose(&mut self, g: &Graph, s: &GameState) -> usize {
        let r = s.robber().expect("robber to move is placed");
        *g.closed_neighbors(r).choose(&mut self.rng).expect("N[v] contains v")
    }
}

/// Places like [`GreedyRobber`] and never moves.
#[derive(Clone, Copy, Debug, Default)]
pub struct StayRobber;

impl RobberStrategy for StayRobber {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> Result<usize, GameError> {
        Ok(farthest_from_cops(g, cops))
    }

    fn choose(&mut self, _g: &Graph, s: &GameState) -> usize {
        s.robber().expect("robber to move is placed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play, Outcome};
    use crate::graph::gen_named;

    #[test]
    fn greedy_cop_walks_down_a_path() {
        let p = gen_named("path", &[5], 0).unwrap();
        let mut cop = GreedyCop::new(3);
        let rec = play(&p, &mut cop, &mut StayRobber, 1, 100).unwrap();
        assert_eq!(rec.outcome, Outcome::Capture);
        assert!(rec.rounds <= 4);
    }

    #[test]
    fn greedy_robber_parks_at_an_eccentric_vertex() {
        // Cop on a different component: the robber sits still at the farthest
        // vertex of the whole graph.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let mut robber = GreedyRobber;
        let r = robber.place(&g, &[3]).unwrap();
        assert_eq!(r, 0);
        let s = GameState::new(vec![3], r, crate::game::Side::Robber, 0);
        assert_eq!(robber.choose(&g, &s), 0);
        // Same component: it moves to the distance-maximising neighbour.
        let p = gen_named("path", &[6], 0).unwrap();
        let s = GameState::new(vec![2], 3, crate::game::Side::Robber, 0);
        assert_eq!(robber.choose(&p, &s), 4);
    }

    #[test]
    fn random_strategies_replay_exactly() {
        let g = gen_named("grid2d", &[4, 4], 0).unwrap();
        let run = |seed| {
            let mut c = RandomCop::new(seed);
            let mut r = RandomRobber::new(seed + 1);
            play(&g, &mut c, &mut r, 2, 50).unwrap()
        };
        assert_eq!(run(5), run(5));
        assert_ne!(run(5).transcript, run(6).transcript);
    }
}
