//! Recursive separator strategy for the cops.
//!
//! The graph is decomposed ahead of time: a region (initially all of `G`)
//! gets a balanced separator `S`, and each component of `region - S` becomes a
//! child region. During play the cops post one guard on every vertex of the
//! current region's separator, then follow the robber into whichever child
//! region it occupies. Guards never move again, so the robber can only leave
//! its region by stepping onto a guard. A region of one vertex has that vertex
//! as separator, and posting it captures.

use std::collections::HashMap;

use crate::game::{CopStrategy, GameError, GameState, Move};
use crate::graph::{
    components_excluding, distances_avoiding, find_balanced_separator, Graph, SeparatorMode,
};

use super::baseline::{capture_move, step_towards};
use super::StrategyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionNode {
    /// Vertices of the region, ascending.
    pub region: Vec<usize>,
    /// Balanced separator of the region's induced subgraph, ascending.
    pub separator: Vec<usize>,
    /// Child regions: the components of `region - separator`.
    pub children: Vec<usize>,
    /// Guards needed from this region downwards.
    pub required: usize,
    pub depth: usize,
}

/// The full separator tree; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub nodes: Vec<DecompositionNode>,
}

impl Decomposition {
    pub fn new(g: &Graph) -> Result<Self, StrategyError> {
        if g.n() == 0 {
            return Err(StrategyError::BadParam {
                name: "separator".into(),
                reason: "graph has no vertices".into(),
            });
        }
        if !g.is_connected() {
            return Err(crate::graph::GraphError::Disconnected.into());
        }
        let mut nodes = Vec::new();
        build(g, (0..g.n()).collect(), 0, &mut nodes)?;
        Ok(Decomposition { nodes })
    }

    /// Cops needed overall: the worst root-to-leaf sum of separator sizes.
    pub fn required(&self) -> usize {
        self.nodes[0].required
    }

    /// Whether every separator respects the size bound
    /// `6 sqrt(g m) + 2 sqrt(2m) + 1` for its region of `m` vertices.
    pub fn separators_within_genus_bound(&self, genus: f64) -> bool {
        self.nodes.iter().all(|node| {
            let m = node.region.len() as f64;
            node.separator.len() as f64 <= 6.0 * (genus * m).sqrt() + 2.0 * (2.0 * m).sqrt() + 1.0
        })
    }

    /// The child of `node` containing `v`, if `v` is in a child region.
    fn child_containing(&self, node: usize, v: usize) -> Option<usize> {
        self.nodes[node]
            .children
            .iter()
            .copied()
            .find(|&c| self.nodes[c].region.binary_search(&v).is_ok())
    }
}

fn build(
    g: &Graph,
    region: Vec<usize>,
    depth: usize,
    nodes: &mut Vec<DecompositionNode>,
) -> Result<usize, StrategyError> {
    let (sub, ids) = g.induced_subgraph(&region);
    let local = find_balanced_separator(&sub, SeparatorMode::Heuristic)?;
    let separator: Vec<usize> = local.iter().map(|v| ids[v]).collect();
    let mut removed = vec![false; sub.n()];
    for v in local.iter() {
        removed[v] = true;
    }
    let (label, count) = components_excluding(&sub, &removed);
    let mut parts = vec![Vec::new(); count];
    for (v, &l) in label.iter().enumerate() {
        if l != usize::MAX {
            parts[l].push(ids[v]);
        }
    }
    let at = nodes.len();
    nodes.push(DecompositionNode {
        region,
        separator,
        children: Vec::new(),
        required: 0,
        depth,
    });
    let mut children = Vec::with_capacity(parts.len());
    let mut deepest = 0;
    for mut part in parts {
        part.sort_unstable();
        let child = build(g, part, depth + 1, nodes)?;
        deepest = deepest.max(nodes[child].required);
        children.push(child);
    }
    let node = &mut nodes[at];
    node.required = node.separator.len() + deepest;
    node.children = children;
    Ok(at)
}

/// Cop strategy over a [`Decomposition`]. Cops are tracked by identity
/// (`0..k`) independently of the sorted order in the game state.
#[derive(Clone, Debug)]
pub struct SeparatorCop {
    tree: Decomposition,
    k: usize,
    /// Current vertex of each cop identity.
    at: Vec<usize>,
    /// Whether each identity is a posted guard.
    posted: Vec<bool>,
    /// The robber's current region.
    node: usize,
    /// Regions entered so far, root first.
    path: Vec<usize>,
    /// BFS distances towards each walking target.
    towards: HashMap<usize, Vec<u32>>,
}

impl SeparatorCop {
    pub fn new(g: &Graph, k: usize) -> Result<Self, StrategyError> {
        let tree = Decomposition::new(g)?;
        if k < tree.required() {
            return Err(StrategyError::Budget {
                required: tree.required(),
                k,
            });
        }
        Ok(SeparatorCop {
            tree,
            k,
            at: Vec::new(),
            posted: Vec::new(),
            node: 0,
            path: Vec::new(),
            towards: HashMap::new(),
        })
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.tree
    }

    pub fn required(&self) -> usize {
        self.tree.required()
    }

    /// Region sizes at each level entered during the current game.
    pub fn region_trail(&self) -> Vec<usize> {
        self.path.iter().map(|&n| self.tree.nodes[n].region.len()).collect()
    }

    fn unfilled_targets(&self) -> Vec<usize> {
        self.tree.nodes[self.node]
            .separator
            .iter()
            .copied()
            .filter(|v| !(0..self.k).any(|i| self.posted[i] && self.at[i] == *v))
            .collect()
    }

    /// Descends into the robber's child region while the current separator is
    /// fully guarded.
    fn descend(&mut self, robber: usize) {
        while self.unfilled_targets().is_empty() {
            match self.tree.child_containing(self.node, robber) {
                Some(child) => {
                    self.node = child;
                    self.path.push(child);
                }
                None => break,
            }
        }
    }

    fn distances_to(&mut self, g: &Graph, target: usize) -> &[u32] {
        self.towards
            .entry(target)
            .or_insert_with(|| distances_avoiding(g, &[target], |_| false, u32::MAX))
    }

    /// Re-derives identities from a state this strategy did not produce: a
    /// cop on an unclaimed separator vertex of the current path is a guard.
    fn sync(&mut self, s: &GameState) {
        let mut mine = self.at.clone();
        mine.sort_unstable();
        if mine == s.cops() {
            return;
        }
        self.at = s.cops().to_vec();
        self.posted = vec![false; self.k];
        for &node in &self.path {
            for &v in &self.tree.nodes[node].separator {
                if let Some(i) = (0..self.k).find(|&i| !self.posted[i] && self.at[i] == v) {
                    self.posted[i] = true;
                }
            }
        }
    }

    fn issue(&mut self, s: &GameState, who: usize, to: usize) -> Move {
        let from = self.at[who];
        // Cops sharing a vertex are interchangeable; the first index will do.
        let index = s
            .cops()
            .iter()
            .position(|&c| c == from)
            .expect("synchronised cop positions");
        self.at[who] = to;
        Move::Cop { index, to }
    }
}

impl CopStrategy for SeparatorCop {
    /// One cop on each root separator vertex; spares stack on the first.
    fn place(&mut self, _g: &Graph, k: usize) -> Result<Vec<usize>, GameError> {
        if k != self.k {
            return Err(GameError::Placement(format!(
                "strategy was built for {} cops, asked to place {k}",
                self.k
            )));
        }
        let root = &self.tree.nodes[0].separator;
        let mut at = root.clone();
        let spare = root[0];
        at.resize(k, spare);
        self.posted = (0..k).map(|i| i < root.len()).collect();
        self.at = at.clone();
        self.node = 0;
        self.path = vec![0];
        Ok(at)
    }

    fn choose(&mut self, g: &Graph, s: &GameState) -> Move {
        self.sync(s);
        if let Some(m) = capture_move(g, s) {
            // Keep identities in step with the capture.
            if let Move::Cop { index, to } = m {
                let from = s.cops()[index];
                if let Some(who) = (0..self.k).find(|&i| self.at[i] == from) {
                    self.at[who] = to;
                }
            }
            return m;
        }
        let Some(robber) = s.robber() else { return Move::Pass };
        self.descend(robber);
        let Some(who) = (0..self.k).find(|&i| !self.posted[i]) else {
            return Move::Pass;
        };
        let targets = self.unfilled_targets();
        if targets.is_empty() {
            return Move::Pass;
        }
        let from = self.at[who];
        let dist_from = distances_avoiding(g, &[from], |_| false, u32::MAX);
        let target = *targets
            .iter()
            .min_by_key(|&&t| (dist_from[t], t))
            .expect("non-empty");
        if from == target {
            self.posted[who] = true;
            return Move::Pass;
        }
        let to = {
            let dist = self.distances_to(g, target);
            step_towards(g, dist, from)
        };
        let Some(to) = to else { return Move::Pass };
        let m = self.issue(s, who, to);
        if to == target {
            self.posted[who] = true;
        }
        m
    }
}
