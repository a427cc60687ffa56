//! Hop distances, closed neighbourhoods, and simple-path / cycle counting.

use std::collections::VecDeque;

use super::{Graph, GraphError, VertexSet};

/// Distance value for vertices that cannot be reached.
pub const UNREACHABLE: u32 = u32::MAX;

/// Longest cycle length [`count_cycles_through_edge`] accepts. Enumeration
/// cost grows like `degree^L`.
pub const CYCLE_LENGTH_CAP: usize = 8;

/// BFS hop distances from `v`.
pub fn distances_from(g: &Graph, v: usize) -> Result<Vec<u32>, GraphError> {
    g.check_vertex(v)?;
    Ok(distances_avoiding(g, &[v], |_| false, u32::MAX))
}

/// Distance from every vertex to the nearest source.
pub fn multi_source_distances(g: &Graph, sources: &[usize]) -> Vec<u32> {
    distances_avoiding(g, sources, |_| false, u32::MAX)
}

/// BFS from `sources` in the graph with `blocked` vertices deleted, exploring
/// at most `max_depth` hops. Blocked sources are ignored. Vertices beyond the
/// depth limit stay [`UNREACHABLE`].
pub fn distances_avoiding<F>(g: &Graph, sources: &[usize], blocked: F, max_depth: u32) -> Vec<u32>
where
    F: Fn(usize) -> bool,
{
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !blocked(s) && dist[s] == UNREACHABLE {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        if du >= max_depth {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE && !blocked(w) {
                dist[w] = du + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// `N_i[v]`: all vertices within distance `i` of `v`.
pub fn kth_neighborhood(g: &Graph, v: usize, i: usize) -> Result<VertexSet, GraphError> {
    g.check_vertex(v)?;
    let depth = u32::try_from(i).unwrap_or(u32::MAX - 1);
    let dist = distances_avoiding(g, &[v], |_| false, depth);
    Ok((0..g.n()).filter(|&u| dist[u] != UNREACHABLE).collect())
}

/// Number of simple paths with exactly `len` edges from `v` to `w`.
pub fn count_paths(g: &Graph, v: usize, w: usize, len: usize) -> Result<u64, GraphError> {
    if len == 0 {
        return Err(GraphError::InvalidArgument("path length must be at least 1".into()));
    }
    Ok(count_paths_by_length(g, v, w, len)?[len])
}

/// Simple `v`-`w` path counts for every length `0..=max_len` (index = edges).
pub fn count_paths_by_length(
    g: &Graph,
    v: usize,
    w: usize,
    max_len: usize,
) -> Result<Vec<u64>, GraphError> {
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if v == w {
        return Err(GraphError::InvalidArgument(
            "path endpoints must be distinct".into(),
        ));
    }
    let mut counts = vec![0u64; max_len + 1];
    if max_len == 0 {
        return Ok(counts);
    }
    let mut visited = vec![false; g.n()];
    visited[v] = true;
    let mut walker = PathWalker {
        g,
        target: w,
        max_len,
        visited,
        counts: &mut counts,
    };
    walker.extend(v, 0);
    Ok(counts)
}

struct PathWalker<'a> {
    g: &'a Graph,
    target: usize,
    max_len: usize,
    visited: Vec<bool>,
    counts: &'a mut [u64],
}

impl PathWalker<'_> {
    /// `at` is the current endpoint of a simple path with `depth` edges.
    fn extend(&mut self, at: usize, depth: usize) {
        if depth + 1 == self.max_len {
            // Last edge: only the target matters, so skip the scan.
            if self.g.has_edge(at, self.target) {
                self.counts[depth + 1] += 1;
            }
            return;
        }
        for &next in self.g.neighbors(at) {
            if next == self.target {
                self.counts[depth + 1] += 1;
            } else if !self.visited[next] {
                self.visited[next] = true;
                self.extend(next, depth + 1);
                self.visited[next] = false;
            }
        }
    }
}

/// Simple cycles of length `<= max_len` through the edge `u v`.
///
/// Each such cycle is the edge plus a unique simple `u`-`v` path of length
/// `2..max_len`, so this is a sum of path counts.
pub fn count_cycles_through_edge(
    g: &Graph,
    u: usize,
    v: usize,
    max_len: usize,
) -> Result<u64, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v || !g.has_edge(u, v) {
        return Err(GraphError::NotAnEdge(u, v));
    }
    if max_len > CYCLE_LENGTH_CAP {
        return Err(GraphError::CapExceeded {
            what: "cycle length",
            cap: CYCLE_LENGTH_CAP,
            got: max_len,
        });
    }
    if max_len < 3 {
        return Err(GraphError::InvalidArgument(
            "cycles have length at least 3".into(),
        ));
    }
    let counts = count_paths_by_length(g, u, v, max_len - 1)?;
    Ok(counts[2..].iter().sum())
}
