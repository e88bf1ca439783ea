mod common;

use common::Dense;
use fpcomm::fastfp::{
    self, build_candidate_graph, extract_seeds, merge_communities, pair_weight, EdgeCounting,
    FastFpParams, Threshold,
};
use fpcomm::fpgreed::{self, GreedyOptions, SweepOrder};
use fpcomm::graph::{load_edge_list, LoadOptions};
use fpcomm::quality::{apply_move, merge_delta, move_delta};
use fpcomm::{fp, modularity, Graph, Partition};
use proptest::prelude::*;
use proptest::sample::Index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// (n, edge list) with n in `lo..=hi`.
fn graph(lo: usize, hi: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        (Just(n), proptest::sample::subsequence(pairs, 0..=len))
    })
}

fn graph_with_labels(
    lo: usize,
    hi: usize,
) -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<usize>)> {
    graph(lo, hi)
        .prop_flat_map(|(n, edges)| (Just(n), Just(edges), proptest::collection::vec(0..n, n)))
}

proptest! {
    #[test]
    fn fp_is_a_fraction((n, edges, labels) in graph_with_labels(2, 24)) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let p = Partition::from_labels(&g, &labels).unwrap();
        let s = fp(&g, &p).unwrap();
        prop_assert!(s.correct <= s.total);
        prop_assert!((0.0..=1.0).contains(&s.value()));
        prop_assert_eq!(s.correct, Dense::new(n, &edges).correct_pairs(&labels));
    }

    #[test]
    fn singletons_and_whole_are_complementary((n, edges) in graph(2, 30)) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let single = fp(&g, &Partition::singletons(n)).unwrap();
        let whole_p = Partition::from_labels(&g, &vec![0; n]).unwrap();
        let whole = fp(&g, &whole_p).unwrap();
        prop_assert_eq!(single.correct + whole.correct, single.total);
        prop_assert_eq!(whole.correct, edges.len() as u64);
        if !edges.is_empty() {
            prop_assert!(modularity(&g, &whole_p, 1.0).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn moves_keep_caches_exact((n, edges, labels) in graph_with_labels(2, 20), picks in proptest::collection::vec((any::<Index>(), any::<Index>()), 1..40)) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let mut p = Partition::from_labels(&g, &labels).unwrap();
        let dense = Dense::new(n, &edges);
        for (u, c) in picks {
            let u = u.index(n);
            let ids: Vec<usize> = p.community_ids().filter(|&c| c != p.community_of(u)).collect();
            if ids.is_empty() {
                break;
            }
            let target = ids[c.index(ids.len())];
            let before = dense.correct_pairs(p.assignment()) as i64;
            let delta = move_delta(&g, &p, u, target).unwrap();
            apply_move(&g, &mut p, u, target).unwrap();
            prop_assert_eq!(dense.correct_pairs(p.assignment()) as i64 - before, delta);
            prop_assert!(p.validate(&g).is_ok());
        }
    }

    #[test]
    fn pair_weight_is_symmetric((n, edges) in graph(2, 16), a in any::<Index>(), b in any::<Index>()) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let (u, v) = (a.index(n), b.index(n));
        prop_assume!(u != v);
        for counting in [EdgeCounting::Unordered, EdgeCounting::Ordered] {
            prop_assert_eq!(pair_weight(&g, u, v, counting).unwrap(), pair_weight(&g, v, u, counting).unwrap());
        }
    }

    #[test]
    fn loader_ignores_line_order_and_direction((n, edges) in graph(2, 20), seed in any::<u64>()) {
        prop_assume!(!edges.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = |edges: &[(usize, usize)]| -> String {
            edges.iter().map(|&(u, v)| format!("{} {}\n", 100 + 7 * u, 100 + 7 * v)).collect()
        };
        let mut shuffled: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| if rng.random_bool(0.5) { (v, u) } else { (u, v) })
            .collect();
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.random_range(0..=i));
        }
        let (g1, l1) = load_edge_list(text(&edges).as_bytes(), LoadOptions::default()).unwrap();
        let (g2, l2) = load_edge_list(text(&shuffled).as_bytes(), LoadOptions::default()).unwrap();
        prop_assert_eq!(g1.edges().collect::<Vec<_>>(), g2.edges().collect::<Vec<_>>());
        prop_assert_eq!(l1, l2);
        prop_assert!(g1.node_count() <= n);
    }

    #[test]
    fn fastfp_invariants((n, edges) in graph(2, 40), t in 1u32..6) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let params = FastFpParams { threshold: Threshold::new(t).unwrap(), counting: EdgeCounting::Unordered };
        let g2 = build_candidate_graph(&g, params.threshold, params.counting);
        let seeds = extract_seeds(&g2);
        prop_assert!(seeds.seed_weights.windows(2).all(|w| w[0] >= w[1]));
        let mut covered: Vec<usize> = seeds.communities.iter().flatten().chain(&seeds.leftovers).copied().collect();
        covered.sort_unstable();
        prop_assert_eq!(covered, (0..n).collect::<Vec<_>>());

        let mut comms = seeds.communities.clone();
        comms.extend(seeds.leftovers.iter().map(|&u| vec![u]));
        let merged = merge_communities(&g, comms).unwrap();
        prop_assert!(merged.merge_gains.iter().all(|&gain| gain > 0));

        let (p, stats) = fastfp::run(&g, params).unwrap();
        prop_assert!(p.validate(&g).is_ok());
        prop_assert_eq!(p.communities(), merged.communities);
        prop_assert_eq!(stats.final_fp, fp(&g, &p).unwrap());
        let (again, _) = fastfp::run(&g, params).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn fpgreed_output_is_locally_stable((n, edges) in graph(2, 30), seed in proptest::option::of(any::<u64>())) {
        let g = Graph::from_edges(n, &edges).unwrap();
        let order = seed.map_or(SweepOrder::Ascending, |seed| SweepOrder::Random { seed });
        let (p, stats) = fpgreed::run_with(&g, GreedyOptions { order, record_trace: true }).unwrap();
        prop_assert!(stats.trace.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(stats.final_fp, fp(&g, &p).unwrap());
        prop_assert!((stats.moves + stats.merges) as u64 <= stats.final_fp.total);
        let ids: Vec<usize> = p.community_ids().collect();
        // Node passes only consider communities holding a neighbor of u.
        for u in 0..n {
            for &c in &ids {
                if c != p.community_of(u) && g.neighbors(u).iter().any(|&v| p.community_of(v) == c) {
                    prop_assert!(move_delta(&g, &p, u, c).unwrap() <= 0);
                }
            }
        }
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let e_cc = fpcomm::quality::cross_edges(&g, &p, a, b).unwrap();
                prop_assert!(merge_delta(&p, a, b, e_cc).unwrap() <= 0);
            }
        }
        let (again, _) = fpgreed::run_with(&g, GreedyOptions { order, record_trace: false }).unwrap();
        prop_assert_eq!(again, p);
    }
}

#[test]
fn hundred_random_moves_on_fifty_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let edges = common::random_edges(&mut rng, 50, 0.15);
    let g = Graph::from_edges(50, &edges).unwrap();
    let mut p = Partition::from_labels(&g, &common::random_labels(&mut rng, 50)).unwrap();
    for _ in 0..100 {
        let u = rng.random_range(0..50);
        let ids: Vec<usize> = p
            .community_ids()
            .filter(|&c| c != p.community_of(u))
            .collect();
        if let Some(&target) = ids.get(rng.random_range(0..ids.len().max(1))) {
            apply_move(&g, &mut p, u, target).unwrap();
        }
    }
    p.validate(&g).unwrap();
}
