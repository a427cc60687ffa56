//! Deterministic graph generators.
//!
//! All randomness comes from [`crate::seeded_rng`] (ChaCha8 seeded from a
//! 64-bit integer), so every generator is a pure function of its arguments.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;

use super::{Graph, GraphError};
use crate::seeded_rng;

/// The named families understood by [`gen_named`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Grid2d { rows: usize, cols: usize },
    Hypercube(usize),
    Petersen,
    RandomTree(usize),
    /// `K_{1,leaves}` with the centre at vertex 0.
    Star(usize),
}

impl Family {
    /// Parses a family tag with its sizes. `grid2d` takes `[rows, cols]` or a
    /// single side length.
    pub fn from_kind(kind: &str, sizes: &[usize]) -> Result<Family, GraphError> {
        let need = |count: usize| -> Result<(), GraphError> {
            if sizes.len() < count {
                Err(GraphError::InvalidSize(format!(
                    "`{kind}` needs {count} size parameter(s)"
                )))
            } else {
                Ok(())
            }
        };
        let family = match kind {
            "path" => {
                need(1)?;
                Family::Path(sizes[0])
            }
            "cycle" => {
                need(1)?;
                Family::Cycle(sizes[0])
            }
            "complete" => {
                need(1)?;
                Family::Complete(sizes[0])
            }
            "grid2d" | "grid" => {
                need(1)?;
                let cols = sizes.get(1).copied().unwrap_or(sizes[0]);
                Family::Grid2d {
                    rows: sizes[0],
                    cols,
                }
            }
            "hypercube" => {
                need(1)?;
                Family::Hypercube(sizes[0])
            }
            "petersen" => Family::Petersen,
            "random_tree" | "tree" => {
                need(1)?;
                Family::RandomTree(sizes[0])
            }
            "star" => {
                need(1)?;
                Family::Star(sizes[0])
            }
            other => return Err(GraphError::UnknownFamily(other.to_string())),
        };
        family.validate()?;
        Ok(family)
    }

    fn validate(&self) -> Result<(), GraphError> {
        let bad = |msg: &str| Err(GraphError::InvalidSize(msg.to_string()));
        match *self {
            Family::Path(0) | Family::Complete(0) | Family::RandomTree(0) => {
                bad("vertex count must be at least 1")
            }
            Family::Cycle(n) if n < 3 => bad("a cycle needs at least 3 vertices"),
            Family::Grid2d { rows, cols } if rows == 0 || cols == 0 => {
                bad("grid sides must be at least 1")
            }
            Family::Hypercube(0) => bad("hypercube dimension must be at least 1"),
            Family::Hypercube(d) if d > 26 => bad("hypercube dimension above 26"),
            Family::Star(0) => bad("a star needs at least one leaf"),
            _ => Ok(()),
        }
    }

    pub fn generate(&self, seed: u64) -> Result<Graph, GraphError> {
        self.validate()?;
        let g = match *self {
            Family::Path(n) => Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))?,
            Family::Cycle(n) => {
                Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))?
            }
            Family::Complete(n) => complete(n),
            Family::Grid2d { rows, cols } => {
                let id = |r: usize, c: usize| r * cols + c;
                let mut edges = Vec::new();
                for r in 0..rows {
                    for c in 0..cols {
                        if c + 1 < cols {
                            edges.push((id(r, c), id(r, c + 1)));
                        }
                        if r + 1 < rows {
                            edges.push((id(r, c), id(r + 1, c)));
                        }
                    }
                }
                Graph::from_edges(rows * cols, edges)?
            }
            Family::Hypercube(dim) => hypercube(dim),
            Family::Petersen => {
                // Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
                let mut edges = Vec::new();
                for i in 0..5 {
                    edges.push((i, (i + 1) % 5));
                    edges.push((5 + i, 5 + (i + 2) % 5));
                    edges.push((i, i + 5));
                }
                Graph::from_edges(10, edges)?
            }
            Family::RandomTree(n) => random_tree(n, seed),
            Family::Star(leaves) => Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))?,
        };
        Ok(g)
    }
}

/// Generates a member of a named family; `seed` only matters for random
/// families.
pub fn gen_named(kind: &str, sizes: &[usize], seed: u64) -> Result<Graph, GraphError> {
    Family::from_kind(kind, sizes)?.generate(seed)
}

fn complete(n: usize) -> Graph {
    let adj = (0..n)
        .map(|u| (0..n).filter(|&v| v != u).collect())
        .collect();
    Graph::from_sorted_adjacency(adj)
}

fn hypercube(dim: usize) -> Graph {
    let n = 1usize << dim;
    let adj = (0..n)
        .map(|v| {
            let mut l: Vec<usize> = (0..dim).map(|b| v ^ (1 << b)).collect();
            l.sort_unstable();
            l
        })
        .collect();
    Graph::from_sorted_adjacency(adj)
}

/// Uniform labelled tree via a random Prüfer sequence.
fn random_tree(n: usize, seed: u64) -> Graph {
    if n == 1 {
        return Graph::edgeless(1);
    }
    if n == 2 {
        return Graph::from_sorted_adjacency(vec![vec![1], vec![0]]);
    }
    let mut rng = seeded_rng(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut adj = vec![Vec::new(); n];
    for &c in &code {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        adj[leaf].push(c);
        adj[c].push(leaf);
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    adj[a].push(b);
    adj[b].push(a);
    for l in &mut adj {
        l.sort_unstable();
    }
    Graph::from_sorted_adjacency(adj)
}

/// Binomial random graph `G(n, p)`.
///
/// Pairs are visited as `(u, v)`, `u < v`, in lexicographic order and each
/// consumes exactly one uniform draw, so the output is reproducible bit for
/// bit from `(n, p, seed)`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    if n == 0 {
        return Err(GraphError::InvalidSize("vertex count must be at least 1".into()));
    }
    let mut rng = seeded_rng(seed);
    let mut adj = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    // Lists fill in increasing order already: for u, smaller partners are
    // pushed while handling them, larger ones afterwards.
    Ok(Graph::from_sorted_adjacency(adj))
}

/// `G(n, p)` conditioned on connectivity by rejection. Attempt `a` uses seed
/// `seed + a * 2^32`, so attempt 0 is plain [`gen_gnp`].
pub fn gen_gnp_connected(n: usize, p: f64, seed: u64, max_attempts: usize) -> Result<Graph, GraphError> {
    for a in 0..max_attempts as u64 {
        let g = gen_gnp(n, p, seed.wrapping_add(a << 32))?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GraphError::Disconnected)
}
