use std::collections::HashSet;

use lazycops::game::{legal_moves, GameState, Side};
use lazycops::graph::{
    balance_limit, count_paths_by_length, exact_domination_number,
    find_balanced_separator, gen_gnp, gen_gnp_connected, max_component_without,
    parse_graph, serialize_graph, SeparatorMode,
};
use lazycops::solver::{classic_cop_number, lazy_cop_number, solve_lazy};
use lazycops::strategy::{
    cop_counts_within, potential_params, Decomposition, RandomCop, RandomRobber,
};
use lazycops::{play, Graph};
use proptest::prelude::*;

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 0.25f64..0.9, any::<u64>())
        .prop_filter_map("disconnected", |(n, p, seed)| gen_gnp_connected(n, p, seed, 200).ok())
}

/// Simple `v`-`w` paths by length, by plain DFS.
fn brute_paths(g: &Graph, v: usize, w: usize, max_len: usize) -> Vec<u64> {
    fn go(g: &Graph, at: usize, w: usize, len: usize, max_len: usize, seen: &mut Vec<bool>, out: &mut Vec<u64>) {
        if at == w {
            out[len] += 1;
            return;
        }
        if len == max_len {
            return;
        }
        for &u in g.neighbors(at) {
            if !seen[u] {
                seen[u] = true;
                go(g, u, w, len + 1, max_len, seen, out);
                seen[u] = false;
            }
        }
    }
    let mut out = vec![0; max_len + 1];
    let mut seen = vec![false; g.n()];
    seen[v] = true;
    go(g, v, w, 0, max_len, &mut seen, &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn more_cops_never_hurt(g in connected(8)) {
        let wins: Vec<bool> = (1..=3).map(|k| solve_lazy(&g, k).unwrap().cop_win()).collect();
        for w in wins.windows(2) {
            prop_assert!(!w[0] || w[1]);
        }
    }

    #[test]
    fn classic_lazy_domination_chain(g in connected(8)) {
        let gamma = exact_domination_number(&g).unwrap();
        let c_l = lazy_cop_number(&g, gamma).unwrap();
        let c = classic_cop_number(&g, c_l.min(3)).unwrap();
        prop_assert!(c <= c_l && c_l <= gamma);
    }

    #[test]
    fn solved_tables_are_fixpoints(g in connected(7), k in 1usize..=2) {
        prop_assert!(solve_lazy(&g, k).unwrap().is_fixpoint());
    }

    #[test]
    fn lazy_moves_touch_at_most_one_cop(g in connected(8), seed in any::<u64>()) {
        let k = 1 + (seed % 3) as usize;
        let rec = play(&g, &mut RandomCop::new(seed), &mut RandomRobber::new(!seed), k, 60).unwrap();
        let states = rec.replay(&g).unwrap();
        for pair in states.windows(2) {
            if pair[0].to_move() == Side::Cops {
                // Compare as multisets: sorted slots can shift when a cop
                // overtakes another.
                let mut before = pair[0].cops().to_vec();
                for &c in pair[1].cops() {
                    if let Some(i) = before.iter().position(|&b| b == c) {
                        before.swap_remove(i);
                    }
                }
                prop_assert!(before.len() <= 1);
            }
        }
    }

    #[test]
    fn legal_moves_are_distinct(g in connected(8), r in 0usize..8, c in 0usize..8) {
        let n = g.n();
        let cops = vec![c % n, (c + 1) % n];
        prop_assume!(!cops.contains(&(r % n)));
        let s = GameState::placed(cops, r % n);
        let moves = legal_moves(&g, &s).unwrap();
        let unique: HashSet<_> = moves.iter().map(|m| format!("{m:?}")).collect();
        prop_assert_eq!(unique.len(), moves.len());
    }

    #[test]
    fn potential_is_additive_and_order_free(
        cops in proptest::collection::vec(0usize..4096, 1..8),
        more in proptest::collection::vec(0usize..4096, 1..8),
        r in 0usize..4096,
    ) {
        let p = potential_params(12, 1.0).unwrap();
        let mut all = cops.clone();
        all.extend(&more);
        let split = p.potential_at(&cops, r) + p.potential_at(&more, r);
        let joint = p.potential_at(&all, r);
        prop_assert!((split - joint).abs() <= 1e-12 * joint.max(1.0));
        let mut reversed = all.clone();
        reversed.reverse();
        prop_assert_eq!(joint.to_bits(), p.potential_at(&reversed, r).to_bits());
    }

    #[test]
    fn cop_counts_are_cumulative(g in connected(20), cops in proptest::collection::vec(0usize..20, 1..6)) {
        let cops: Vec<usize> = cops.into_iter().map(|c| c % g.n()).collect();
        let counts = cop_counts_within(&g, &cops, 0, &[], 4);
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(counts[4] <= cops.len());
        prop_assert_eq!(counts[0], cops.iter().filter(|&&c| c == 0).count());
    }

    #[test]
    fn separators_balance(g in connected(40)) {
        let s = find_balanced_separator(&g, SeparatorMode::Heuristic).unwrap();
        prop_assert!(max_component_without(&g, &s.mask(g.n())) <= balance_limit(g.n()));
    }

    #[test]
    fn decomposition_partitions_regions(g in connected(30)) {
        let tree = Decomposition::new(&g).unwrap();
        for node in &tree.nodes {
            let mut covered: Vec<usize> = node.separator.clone();
            let mut deepest = 0;
            for &c in &node.children {
                covered.extend(&tree.nodes[c].region);
                deepest = deepest.max(tree.nodes[c].required);
                prop_assert_eq!(tree.nodes[c].depth, node.depth + 1);
            }
            covered.sort_unstable();
            prop_assert_eq!(&covered, &node.region);
            prop_assert_eq!(node.required, node.separator.len() + deepest);
            prop_assert!(!node.separator.is_empty());
        }
    }

    #[test]
    fn path_counts_match_dfs(g in connected(11), v in 0usize..11, w in 0usize..11) {
        let (v, w) = (v % g.n(), w % g.n());
        prop_assume!(v != w);
        prop_assert_eq!(count_paths_by_length(&g, v, w, 6).unwrap(), brute_paths(&g, v, w, 6));
    }

    #[test]
    fn edge_lists_round_trip(n in 1usize..40, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = gen_gnp(n, p, seed).unwrap();
        let text = serialize_graph(&g);
        prop_assert_eq!(parse_graph(&text).unwrap(), g.clone());
        prop_assert_eq!(gen_gnp(n, p, seed).unwrap(), g);
    }
}
