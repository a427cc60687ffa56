//! Balanced vertex separators: `S` such that every component of `G - S` has at
//! most `⌊2n/3⌋` vertices.

use super::{components_excluding, distances_avoiding, Graph, GraphError, VertexSet, UNREACHABLE};

/// Largest graph the exhaustive mode accepts.
pub const EXACT_SEPARATOR_CAP: usize = 20;

/// Above this many vertices the BFS-level heuristic only tries evenly spaced
/// start vertices.
const HEURISTIC_FULL_START_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparatorMode {
    /// Minimum-size separator by increasing-size subset search.
    Exact,
    /// Best of BFS-level cuts and highest-degree peeling.
    Heuristic,
}

/// `⌊2n/3⌋`.
pub fn balance_limit(n: usize) -> usize {
    2 * n / 3
}

/// Order of the largest component of `G - removed`.
pub fn max_component_without(g: &Graph, removed: &[bool]) -> usize {
    let (label, count) = components_excluding(g, removed);
    let mut sizes = vec![0usize; count];
    for l in label.into_iter().filter(|&l| l != usize::MAX) {
        sizes[l] += 1;
    }
    sizes.into_iter().max().unwrap_or(0)
}

pub fn find_balanced_separator(g: &Graph, mode: SeparatorMode) -> Result<VertexSet, GraphError> {
    if g.n() == 0 {
        return Ok(VertexSet::new());
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    match mode {
        SeparatorMode::Exact => exact(g),
        SeparatorMode::Heuristic => Ok(heuristic(g)),
    }
}

fn exact(g: &Graph) -> Result<VertexSet, GraphError> {
    let n = g.n();
    if n > EXACT_SEPARATOR_CAP {
        return Err(GraphError::CapExceeded {
            what: "exact separator vertex count",
            cap: EXACT_SEPARATOR_CAP,
            got: n,
        });
    }
    let limit = balance_limit(n);
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let full = (1u32 << n) - 1;
    for size in 1..=n {
        // Gosper's hack walks all `size`-subsets in increasing numeric order.
        let mut set: u32 = (1u32 << size) - 1;
        while set <= full {
            if largest_component_mask(&nbr, full & !set) <= limit {
                return Ok((0..n).filter(|&v| set >> v & 1 == 1).collect());
            }
            if size == n {
                break;
            }
            let c = set & set.wrapping_neg();
            let r = set + c;
            set = (((r ^ set) >> 2) / c) | r;
        }
    }
    unreachable!("removing every vertex always balances")
}

fn largest_component_mask(nbr: &[u32], mut alive: u32) -> usize {
    let mut best = 0;
    while alive != 0 {
        let mut comp = alive & alive.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = nbr[v] & alive & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        alive &= !comp;
        best = best.max(comp.count_ones() as usize);
    }
    best
}

fn heuristic(g: &Graph) -> VertexSet {
    let n = g.n();
    let limit = balance_limit(n);
    let mut best: Option<Vec<usize>> = None;
    let mut offer = |cand: Vec<usize>| {
        let cand = prune(g, cand, limit);
        if best.as_ref().map_or(true, |b| cand.len() < b.len()) {
            best = Some(cand);
        }
    };

    let step = if n <= HEURISTIC_FULL_START_LIMIT {
        1
    } else {
        n.div_ceil(HEURISTIC_FULL_START_LIMIT)
    };
    for start in (0..n).step_by(step) {
        if let Some(level) = best_bfs_level(g, start, limit) {
            offer(level);
        }
    }
    offer(degree_peeling(g, limit));
    VertexSet::from_iter(best.expect("degree peeling always yields a candidate"))
}

/// Smallest BFS layer from `start` whose removal balances the graph.
fn best_bfs_level(g: &Graph, start: usize, limit: usize) -> Option<Vec<usize>> {
    let dist = distances_avoiding(g, &[start], |_| false, u32::MAX);
    let depth = dist.iter().copied().filter(|&d| d != UNREACHABLE).max()? as usize;
    let mut layers = vec![Vec::new(); depth + 1];
    for (v, &d) in dist.iter().enumerate() {
        layers[d as usize].push(v);
    }
    let mut removed = vec![false; g.n()];
    let mut best: Option<Vec<usize>> = None;
    for layer in layers {
        if best.as_ref().is_some_and(|b| b.len() <= layer.len()) {
            continue;
        }
        for &v in &layer {
            removed[v] = true;
        }
        if max_component_without(g, &removed) <= limit {
            best = Some(layer.clone());
        }
        for &v in &layer {
            removed[v] = false;
        }
    }
    best
}

/// Repeatedly delete the highest-degree vertex (degree in what remains, lowest
/// id on ties) of the largest remaining component.
fn degree_peeling(g: &Graph, limit: usize) -> Vec<usize> {
    let n = g.n();
    let mut removed = vec![false; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut taken = Vec::new();
    loop {
        let (label, count) = components_excluding(g, &removed);
        let mut sizes = vec![0usize; count];
        for &l in label.iter().filter(|&&l| l != usize::MAX) {
            sizes[l] += 1;
        }
        let Some((big, &size)) = sizes.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        else {
            break;
        };
        if size <= limit {
            break;
        }
        let v = (0..n)
            .filter(|&v| label[v] == big)
            .max_by(|&a, &b| degree[a].cmp(&degree[b]).then(b.cmp(&a)))
            .expect("component is non-empty");
        removed[v] = true;
        taken.push(v);
        for &w in g.neighbors(v) {
            degree[w] -= 1;
        }
    }
    taken
}

/// Drops members (in ascending order) that are not needed for balance.
fn prune(g: &Graph, mut set: Vec<usize>, limit: usize) -> Vec<usize> {
    set.sort_unstable();
    let mut removed = vec![false; g.n()];
    for &v in &set {
        removed[v] = true;
    }
    let mut kept = Vec::with_capacity(set.len());
    for v in set {
        removed[v] = false;
        if max_component_without(g, &removed) <= limit {
            continue;
        }
        removed[v] = true;
        kept.push(v);
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_named;

    fn balanced(g: &Graph, s: &VertexSet) -> bool {
        max_component_without(g, &s.mask(g.n())) <= balance_limit(g.n())
    }

    #[test]
    fn path_nine_single_middle_vertex() {
        let p = gen_named("path", &[9], 0).unwrap();
        for mode in [SeparatorMode::Exact, SeparatorMode::Heuristic] {
            let s = find_balanced_separator(&p, mode).unwrap();
            assert_eq!(s.len(), 1);
            let v = s.as_slice()[0];
            assert!((2..=6).contains(&v), "separator vertex {v}");
            assert!(balanced(&p, &s));
        }
    }

    #[test]
    fn grid_four_by_four() {
        let g = gen_named("grid2d", &[4, 4], 0).unwrap();
        let s = find_balanced_separator(&g, SeparatorMode::Heuristic).unwrap();
        assert!(balanced(&g, &s));
        assert!(s.len() <= 4, "{s:?}");
        let e = find_balanced_separator(&g, SeparatorMode::Exact).unwrap();
        assert!(balanced(&g, &e));
        assert!(e.len() <= s.len());
    }

    /// Smallest balancing set size by plain enumeration of all subsets.
    fn brute_force_min(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                let s: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                balanced(g, &s)
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn complete_seven() {
        // K_7 - S is a clique on 7 - |S| vertices, balanced iff 7 - |S| <= 4.
        let k = gen_named("complete", &[7], 0).unwrap();
        assert_eq!(brute_force_min(&k), 3);
        let s = find_balanced_separator(&k, SeparatorMode::Exact).unwrap();
        assert_eq!(s.len(), 3);
        assert!(balanced(&k, &s));
    }

    #[test]
    fn exact_matches_enumeration() {
        for seed in 0..8 {
            let t = gen_named("random_tree", &[11], seed).unwrap();
            let s = find_balanced_separator(&t, SeparatorMode::Exact).unwrap();
            assert_eq!(s.len(), brute_force_min(&t));
        }
        let p = gen_named("petersen", &[], 0).unwrap();
        let s = find_balanced_separator(&p, SeparatorMode::Exact).unwrap();
        assert_eq!(s.len(), brute_force_min(&p));
    }

    #[test]
    fn tiny_and_disconnected_inputs() {
        let one = Graph::edgeless(1);
        assert_eq!(
            find_balanced_separator(&one, SeparatorMode::Heuristic).unwrap().len(),
            1
        );
        let two = Graph::edgeless(2);
        assert_eq!(
            find_balanced_separator(&two, SeparatorMode::Heuristic),
            Err(GraphError::Disconnected)
        );
        let big = gen_named("path", &[21], 0).unwrap();
        assert!(matches!(
            find_balanced_separator(&big, SeparatorMode::Exact),
            Err(GraphError::CapExceeded { .. })
        ));
    }
}
