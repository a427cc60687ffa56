use super::{Graph, GraphError, VertexSet};

/// Largest `n` accepted by the exact domination search.
pub const DOMINATION_CAP: usize = 24;

/// Greedy dominating set: repeatedly take the vertex whose closed
/// neighbourhood covers the most still-uncovered vertices, lowest id on ties.
pub fn greedy_dominating_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut covered = vec![false; n];
    // gain[v] = |N[v] ∩ uncovered|
    let mut gain: Vec<usize> = (0..n).map(|v| g.degree(v) + 1).collect();
    let mut remaining = n;
    let mut chosen = VertexSet::new();
    while remaining > 0 {
        let best = (0..n)
            .max_by(|&a, &b| gain[a].cmp(&gain[b]).then(b.cmp(&a)))
            .expect("remaining > 0 implies n > 0");
        chosen.insert(best);
        for u in g.closed_neighbors(best) {
            if !covered[u] {
                covered[u] = true;
                remaining -= 1;
                gain[u] -= 1;
                for &w in g.neighbors(u) {
                    gain[w] -= 1;
                }
            }
        }
    }
    chosen
}

/// γ(G), the size of a smallest dominating set.
pub fn exact_domination_number(g: &Graph) -> Result<usize, GraphError> {
    minimum_dominating_set(g).map(|s| s.len())
}

/// A smallest dominating set, found by iterative deepening: the lowest
/// undominated vertex must be covered by one of its closed neighbours, so
/// branch on those.
pub fn minimum_dominating_set(g: &Graph) -> Result<VertexSet, GraphError> {
    let n = g.n();
    if n > DOMINATION_CAP {
        return Err(GraphError::CapExceeded {
            what: "exact domination vertex count",
            cap: DOMINATION_CAP,
            got: n,
        });
    }
    if n == 0 {
        return Ok(VertexSet::new());
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| g.closed_neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let max_cover = closed.iter().map(|m| m.count_ones()).max().unwrap_or(1);
    let mut picked = Vec::new();
    for budget in 1..=n {
        if search(&closed, full, 0, budget, max_cover, &mut picked) {
            return Ok(picked.into_iter().collect());
        }
    }
    unreachable!("V itself dominates")
}

fn search(
    closed: &[u32],
    full: u32,
    covered: u32,
    budget: usize,
    max_cover: u32,
    picked: &mut Vec<usize>,
) -> bool {
    let missing = full & !covered;
    if missing == 0 {
        return true;
    }
    if budget == 0 || (missing.count_ones() as usize) > budget * max_cover as usize {
        return false;
    }
    let u = missing.trailing_zeros() as usize;
    let mut options = closed[u];
    while options != 0 {
        let w = options.trailing_zeros() as usize;
        options &= options - 1;
        picked.push(w);
        if search(closed, full, covered | closed[w], budget - 1, max_cover, picked) {
            return true;
        }
        picked.pop();
    }
    false
}
