use crate::game::{CopStrategy, GameError, GameState, Move};
use crate::graph::{greedy_dominating_set, Graph};

use super::baseline::capture_move;
use super::StrategyError;

/// Occupies the greedy dominating set; the first cop move captures.
#[derive(Clone, Debug)]
pub struct DominatingCop {
    set: Vec<usize>,
}

impl DominatingCop {
    pub fn new(g: &Graph, k: usize) -> Result<Self, StrategyError> {
        let set = greedy_dominating_set(g).into_vec();
        if set.len() > k {
            return Err(StrategyError::Budget {
                required: set.len(),
                k,
            });
        }
        Ok(DominatingCop { set })
    }

    pub fn required(&self) -> usize {
        self.set.len()
    }
}

impl CopStrategy for DominatingCop {
    fn place(&mut self, _g: &Graph, k: usize) -> Result<Vec<usize>, GameError> {
        if k < self.set.len() || self.set.is_empty() {
            return Err(GameError::Placement(format!(
                "dominating set has {} vertices, budget is {k}",
                self.set.len()
            )));
        }
        let mut at = self.set.clone();
        at.resize(k, self.set[0]);
        Ok(at)
    }

    fn choose(&mut self, g: &Graph, s: &GameState) -> Move {
        capture_move(g, s).unwrap_or(Move::Pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{play, Outcome};
    use crate::graph::gen_named;
    use crate::strategy::GreedyRobber;

    #[test]
    fn star_and_cycle() {
        let star = gen_named("star", &[5], 0).unwrap();
        let mut cop = DominatingCop::new(&star, 1).unwrap();
        let rec = play(&star, &mut cop, &mut GreedyRobber, 1, 10).unwrap();
        assert_eq!((rec.outcome, rec.cops_start.clone()), (Outcome::Capture, vec![0]));
        assert_eq!(rec.rounds, 1);

        let c6 = gen_named("cycle", &[6], 0).unwrap();
        let mut cop = DominatingCop::new(&c6, 2).unwrap();
        let rec = play(&c6, &mut cop, &mut GreedyRobber, 2, 10).unwrap();
        assert_eq!(rec.outcome, Outcome::Capture);
        assert!(rec.rounds <= 1);
        assert_eq!(
            DominatingCop::new(&c6, 1).unwrap_err(),
            StrategyError::Budget { required: 2, k: 1 }
        );
    }
}
