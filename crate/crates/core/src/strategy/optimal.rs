use std::sync::Arc;

use crate::game::{CopStrategy, GameError, GameState, Move, RobberStrategy};
use crate::graph::Graph;
use crate::solver::SolveResult;

/// Plays the solver table. In a robber-win position every cop move is
/// equally lost and the strategy passes.
#[derive(Clone, Debug)]
pub struct OptimalCop {
    table: Arc<SolveResult>,
}

impl OptimalCop {
    pub fn new(table: Arc<SolveResult>) -> Self {
        OptimalCop { table }
    }
}

impl CopStrategy for OptimalCop {
    fn place(&mut self, g: &Graph, k: usize) -> Result<Vec<usize>, GameError> {
        if k != self.table.k() || g.n() != self.table.graph().n() {
            return Err(GameError::Placement(format!(
                "table is for k = {}, n = {}",
                self.table.k(),
                self.table.graph().n()
            )));
        }
        // Without a winning placement any choice loses; stack on vertex 0.
        Ok(self.table.placement().unwrap_or_else(|| vec![0; k]))
    }

    fn choose(&mut self, _g: &Graph, s: &GameState) -> Move {
        self.table.optimal_move(s).unwrap_or(Move::Pass)
    }
}

/// Best response from the solver table: a robber-win vertex when one exists,
/// otherwise the longest forced chase.
#[derive(Clone, Debug)]
pub struct OptimalRobber {
    table: Arc<SolveResult>,
}

impl OptimalRobber {
    pub fn new(table: Arc<SolveResult>) -> Self {
        OptimalRobber { table }
    }
}

impl RobberStrategy for OptimalRobber {
    fn place(&mut self, _g: &Graph, cops: &[usize]) -> Result<usize, GameError> {
        self.table
            .robber_placement(cops)
            .map_err(|e| GameError::Placement(e.to_string()))
    }

    fn choose(&mut self, _g: &Graph, s: &GameState) -> usize {
        let here = s.robber().expect("robber to move is placed");
        match self.table.optimal_move(s) {
            Ok(Move::Robber { to }) => to,
            _ => here,
        }
    }
}
