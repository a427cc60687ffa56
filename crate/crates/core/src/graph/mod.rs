//! Undirected simple graphs with the reflexive convention of the game.
//!
//! Stored graphs never contain loops; every vertex is nonetheless treated as
//! adjacent to itself by the game engine, so "stay" is always a legal move.

mod domination;
mod generate;
mod io;
mod metric;
mod separator;

pub use domination::{
    exact_domination_number, greedy_dominating_set, minimum_dominating_set, DOMINATION_CAP,
};
pub use generate::{gen_gnp, gen_gnp_connected, gen_named, Family};
pub use io::{parse_graph, serialize_graph};
pub use metric::{
    count_cycles_through_edge, count_paths, count_paths_by_length, distances_avoiding,
    distances_from, kth_neighborhood, multi_source_distances, CYCLE_LENGTH_CAP, UNREACHABLE,
};
pub use separator::{
    balance_limit, find_balanced_separator, max_component_without, SeparatorMode,
    EXACT_SEPARATOR_CAP,
};

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}; loops are implicit and must not be listed")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("{0} {1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("malformed edge list at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{what} limited to {cap}, got {got}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        got: usize,
    },
    #[error("{0}")]
    InvalidArgument(String),
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are sorted ascending, which every tie-break in the crate
/// relies on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Graph {
    pub fn edgeless(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, edges: count })
    }

    /// Generator-internal constructor; callers guarantee simple, symmetric input.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(u, l)| l.windows(2).all(|w| w[0] < w[1]) && !l.contains(&u)));
        Graph { adj, edges }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// `u == v` or `u ~ v`.
    #[inline]
    pub fn closed_adjacent(&self, u: usize, v: usize) -> bool {
        u == v || self.has_edge(u, v)
    }

    /// Closed neighbourhood N[v] in ascending order.
    pub fn closed_neighbors(&self, v: usize) -> Vec<usize> {
        let list = &self.adj[v];
        let at = list.partition_point(|&w| w < v);
        let mut out = Vec::with_capacity(list.len() + 1);
        out.extend_from_slice(&list[..at]);
        out.push(v);
        out.extend_from_slice(&list[at..]);
        out
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `2m / n`.
    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.edges as f64 / self.n() as f64
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Component label per vertex, labels assigned in order of smallest member.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        components_excluding(self, &vec![false; self.n()])
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.component_labels().1 == 1
    }

    /// Subgraph induced on `vertices` (any order, duplicates ignored). The
    /// returned map sends new ids to old ids, in ascending old-id order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut old: Vec<usize> = vertices.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            index[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        (Graph::from_sorted_adjacency(adj), old)
    }

    /// Checks that this is `Q_dim` with vertex `b` labelled by bit string `b`.
    pub fn is_hypercube_labelled(&self, dim: usize) -> bool {
        if dim >= usize::BITS as usize || self.n() != 1usize << dim {
            return false;
        }
        (0..self.n()).all(|v| {
            self.adj[v].len() == dim && self.adj[v].iter().all(|&w| (v ^ w).count_ones() == 1)
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=[", self.n(), self.m())?;
        for (i, (u, v)) in self.edges().enumerate().take(32) {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        if self.m() > 32 {
            write!(f, ", ...")?;
        }
        write!(f, "])")
    }
}

/// Connected components of `G - removed`; removed vertices get `usize::MAX`.
pub(crate) fn components_excluding(g: &Graph, removed: &[bool]) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if removed[s] || label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !removed[w] && label[w] == usize::MAX {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// A set of vertex ids, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(at) => {
                self.0.insert(at, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(at) => {
                self.0.remove(at);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }

    /// Every vertex of `g` lies in the closed neighbourhood of the set.
    pub fn dominates(&self, g: &Graph) -> bool {
        let mut covered = vec![false; g.n()];
        for v in self.iter() {
            covered[v] = true;
            for &w in g.neighbors(v) {
                covered[w] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, usize>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}
