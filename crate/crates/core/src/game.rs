//! Rules of Lazy Cops and Robbers.
//!
//! Cops place first, the robber places having seen them, then rounds
//! alternate: one cop moves (or all pass), then the robber moves or stays.
//! Capture is checked after every half-move.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Cops,
    Robber,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Cops => Side::Robber,
            Side::Robber => Side::Cops,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Every cop stays put.
    Pass,
    /// The cop at `index` of the sorted position list moves to `to`.
    Cop { index: usize, to: usize },
    /// The robber moves to `to` (possibly its own vertex).
    Robber { to: usize },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Pass => write!(f, "pass"),
            Move::Cop { index, to } => write!(f, "cop {index} -> {to}"),
            Move::Robber { to } => write!(f, "robber -> {to}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("robber has not been placed")]
    NotPlaced,
    #[error("game is already over")]
    GameOver,
    #[error("illegal move `{mv}`: {reason}")]
    IllegalMove { mv: Move, reason: String },
    #[error("invalid placement: {0}")]
    Placement(String),
}

/// A position: sorted cop multiset, robber, side to move and completed rounds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    cops: Vec<usize>,
    robber: Option<usize>,
    to_move: Side,
    round: usize,
}

impl GameState {
    /// Cops placed, robber not yet.
    pub fn with_cops(mut cops: Vec<usize>) -> Self {
        cops.sort_unstable();
        GameState {
            cops,
            robber: None,
            to_move: Side::Robber,
            round: 0,
        }
    }

    pub fn new(mut cops: Vec<usize>, robber: usize, to_move: Side, round: usize) -> Self {
        cops.sort_unstable();
        GameState {
            cops,
            robber: Some(robber),
            to_move,
            round,
        }
    }

    /// The position right after both placements: cops to move, round 0.
    pub fn placed(cops: Vec<usize>, robber: usize) -> Self {
        Self::new(cops, robber, Side::Cops, 0)
    }

    pub fn cops(&self) -> &[usize] {
        &self.cops
    }

    pub fn robber(&self) -> Option<usize> {
        self.robber
    }

    pub fn to_move(&self) -> Side {
        self.to_move
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn is_captured(&self) -> bool {
        self.robber
            .is_some_and(|r| self.cops.binary_search(&r).is_ok())
    }

    fn robber_or_err(&self) -> Result<usize, GameError> {
        self.robber.ok_or(GameError::NotPlaced)
    }
}

/// All legal moves for the side to move. `Pass` stands for the all-stay
/// option, so cop moves never target the cop's own vertex; the robber's list
/// includes staying.
pub fn legal_moves(g: &Graph, s: &GameState) -> Result<Vec<Move>, GameError> {
    let robber = s.robber_or_err()?;
    if s.is_captured() {
        return Err(GameError::GameOver);
    }
    let moves = match s.to_move {
        Side::Cops => std::iter::once(Move::Pass)
            .chain(s.cops.iter().enumerate().flat_map(|(index, &c)| {
                g.neighbors(c).iter().map(move |&to| Move::Cop { index, to })
            }))
            .collect(),
        Side::Robber => g
            .closed_neighbors(robber)
            .into_iter()
            .map(|to| Move::Robber { to })
            .collect(),
    };
    Ok(moves)
}

/// Plays `m`, validating it against the rules.
pub fn apply_move(g: &Graph, s: &GameState, m: Move) -> Result<GameState, GameError> {
    let robber = s.robber_or_err()?;
    if s.is_captured() {
        return Err(GameError::GameOver);
    }
    let illegal = |reason: String| GameError::IllegalMove { mv: m, reason };
    let mut next = s.clone();
    match (s.to_move, m) {
        (Side::Cops, Move::Pass) => {}
        (Side::Cops, Move::Cop { index, to }) => {
            let &from = s
                .cops
                .get(index)
                .ok_or_else(|| illegal(format!("no cop with index {index}")))?;
            if to >= g.n() || !g.has_edge(from, to) {
                return Err(illegal(format!("{to} is not adjacent to {from}")));
            }
            next.cops[index] = to;
            next.cops.sort_unstable();
        }
        (Side::Robber, Move::Robber { to }) => {
            if to >= g.n() || !g.closed_adjacent(robber, to) {
                return Err(illegal(format!("{to} is not in N[{robber}]")));
            }
            next.robber = Some(to);
            next.round += 1;
        }
        (side, _) => return Err(illegal(format!("it is the {side:?} turn"))),
    }
    next.to_move = s.to_move.other();
    Ok(next)
}

/// Policy for the cop side.
pub trait CopStrategy {
    /// Initial positions of all `k` cops.
    fn place(&mut self, g: &Graph, k: usize) -> Result<Vec<usize>, GameError>;
    /// A move for a cops-to-move state.
    fn choose(&mut self, g: &Graph, s: &GameState) -> Move;
}

/// Policy for the robber side.
pub trait RobberStrategy {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> Result<usize, GameError>;
    /// Target vertex in `N[robber]` for a robber-to-move state.
    fn choose(&mut self, g: &Graph, s: &GameState) -> usize;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Capture,
    Survival,
}

/// One half-move of a transcript. `Pass` has neither endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub side: Side,
    pub from: Option<usize>,
    pub to: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameRecord {
    pub outcome: Outcome,
    /// Rounds played; a capture during round `r` (1-based) reports `r`, a
    /// capture at placement reports 0.
    pub rounds: usize,
    pub transcript: Vec<Step>,
    pub cops_start: Vec<usize>,
    pub robber_start: usize,
}

impl GameRecord {
    /// Replays the transcript, returning every state from the first
    /// cops-to-move position onwards.
    pub fn replay(&self, g: &Graph) -> Result<Vec<GameState>, GameError> {
        let mut s = GameState::placed(self.cops_start.clone(), self.robber_start);
        let mut states = vec![s.clone()];
        for step in &self.transcript {
            let m = match (step.side, step.from, step.to) {
                (Side::Cops, None, None) => Move::Pass,
                (Side::Cops, Some(from), Some(to)) => {
                    let index = s.cops.binary_search(&from).map_err(|_| {
                        GameError::Placement(format!("no cop on {from} to move"))
                    })?;
                    Move::Cop { index, to }
                }
                (Side::Robber, _, Some(to)) => Move::Robber { to },
                _ => return Err(GameError::Placement("malformed transcript step".into())),
            };
            s = apply_move(g, &s, m)?;
            states.push(s.clone());
        }
        Ok(states)
    }
}

/// Plays a game with `k` cops for at most `max_rounds` robber moves.
///
/// Any illegal move or placement aborts the game with an error; nothing is
/// corrected silently.
pub fn play(
    g: &Graph,
    cops: &mut dyn CopStrategy,
    robber: &mut dyn RobberStrategy,
    k: usize,
    max_rounds: usize,
) -> Result<GameRecord, GameError> {
    let start = cops.place(g, k)?;
    if start.len() != k {
        return Err(GameError::Placement(format!(
            "cop strategy placed {} cops, expected {k}",
            start.len()
        )));
    }
    if let Some(&v) = start.iter().find(|&&v| v >= g.n()) {
        return Err(GameError::Placement(format!("cop placed on missing vertex {v}")));
    }
    let pre = GameState::with_cops(start);
    let r0 = robber.place(g, pre.cops())?;
    if r0 >= g.n() {
        return Err(GameError::Placement(format!(
            "robber placed on missing vertex {r0}"
        )));
    }
    let mut state = GameState::placed(pre.cops, r0);
    let mut record = GameRecord {
        outcome: Outcome::Survival,
        rounds: 0,
        transcript: Vec::new(),
        cops_start: state.cops.clone(),
        robber_start: r0,
    };
    if state.is_captured() {
        record.outcome = Outcome::Capture;
        return Ok(record);
    }
    while state.round < max_rounds {
        let m = cops.choose(g, &state);
        let step = match m {
            Move::Pass => Step { side: Side::Cops, from: None, to: None },
            Move::Cop { index, to } => Step {
                side: Side::Cops,
                from: state.cops.get(index).copied(),
                to: Some(to),
            },
            Move::Robber { .. } => {
                return Err(GameError::IllegalMove {
                    mv: m,
                    reason: "cop strategy returned a robber move".into(),
                })
            }
        };
        state = apply_move(g, &state, m)?;
        record.transcript.push(step);
        if state.is_captured() {
            record.outcome = Outcome::Capture;
            record.rounds = state.round + 1;
            return Ok(record);
        }

        let from = state.robber.expect("placed");
        let to = robber.choose(g, &state);
        state = apply_move(g, &state, Move::Robber { to })?;
        record.transcript.push(Step {
            side: Side::Robber,
            from: Some(from),
            to: Some(to),
        });
        if state.is_captured() {
            record.outcome = Outcome::Capture;
            record.rounds = state.round;
            return Ok(record);
        }
    }
    record.rounds = state.round;
    Ok(record)
}
