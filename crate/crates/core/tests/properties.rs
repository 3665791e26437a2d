use std::collections::BTreeSet;

use proptest::prelude::*;

use dfvs::graph::{TriGraph, VertexId};
use dfvs::oracle::{exact_min_dfvs, exact_min_dfvs_instance, has_cycle_avoiding, is_valid_dfvs};
use dfvs::pace::{parse_instance, to_pace_string};
use dfvs::reductions::{reduce_to_fixpoint, rule4_cross_scc_edge_pruning, rule5_edge_dominance};
use dfvs::solver::{is_one_minimal, prune_redundant, score_product, SolverState};
use dfvs::{Instance, SolverConfig, Stop};

type Arcs = BTreeSet<(u32, u32)>;

fn digraph(max_n: usize, density: f64) -> impl Strategy<Value = (usize, Arcs)> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(density), n * n).prop_map(move |bits| {
            let arcs = bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| ((i / n) as u32, (i % n) as u32))
                .collect();
            (n, arcs)
        })
    })
}

fn instance(n: usize, arcs: &Arcs) -> Instance {
    Instance::from_arcs(n, arcs.iter().map(|&(u, v)| (VertexId(u), VertexId(v))))
}

fn arc_model(g: &TriGraph) -> Arcs {
    g.arc_set().into_iter().map(|(u, v)| (u.0, v.0)).collect()
}

/// Naive `G - v` on an explicit arc set.
fn model_remove(arcs: &Arcs, v: u32) -> Arcs {
    arcs.iter()
        .copied()
        .filter(|&(a, b)| a != v && b != v)
        .collect()
}

/// Naive `G ∘ v`: predecessors times successors, union with the rest.
fn model_merge(arcs: &Arcs, v: u32) -> Arcs {
    let preds: Vec<u32> = arcs
        .iter()
        .filter(|&&(a, b)| b == v && a != v)
        .map(|&(a, _)| a)
        .collect();
    let succs: Vec<u32> = arcs
        .iter()
        .filter(|&&(a, b)| a == v && b != v)
        .map(|&(_, b)| b)
        .collect();
    let mut out = model_remove(arcs, v);
    for &p in &preds {
        for &s in &succs {
            out.insert((p, s));
        }
    }
    out
}

/// Transitive closure by repeated relaxation.
#[allow(clippy::needless_range_loop)]
fn reach_matrix(n: usize, arcs: &Arcs) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for &(a, b) in arcs {
        r[a as usize][b as usize] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

fn optimum(g: &TriGraph) -> usize {
    exact_min_dfvs(g).unwrap().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn remove_and_merge_match_model((n, arcs) in digraph(9, 0.3), picks in proptest::collection::vec(any::<u32>(), 1..9)) {
        let mut g = TriGraph::from_instance(&instance(n, &arcs));
        let mut model = arcs.clone();
        for pick in picks {
            let live: Vec<VertexId> = g.live_vertices().collect();
            if live.is_empty() {
                break;
            }
            let v = live[pick as usize % live.len()];
            if pick % 2 == 0 || g.has_self_loop(v) {
                g.remove_vertex(v);
                model = model_remove(&model, v.0);
            } else {
                let looped = g.merge_vertex(v);
                let next = model_merge(&model, v.0);
                for u in &looped {
                    prop_assert!(next.contains(&(u.0, u.0)) && !model.contains(&(u.0, u.0)));
                }
                model = next;
            }
            prop_assert!(g.audit().is_ok(), "{:?}", g.audit());
            prop_assert_eq!(arc_model(&g), model.clone());
        }
    }

    #[test]
    fn low_degree_merge_preserves_optimum((n, arcs) in digraph(9, 0.3)) {
        let g = TriGraph::from_instance(&instance(n, &arcs));
        let opt = optimum(&g);
        for v in g.live_vertices() {
            let b = g.bidir_degree(v);
            if g.has_self_loop(v) || (g.in_degree(v) + b > 1 && g.out_degree(v) + b > 1) {
                continue;
            }
            let mut h = g.clone();
            h.merge_vertex(v);
            prop_assert_eq!(optimum(&h), opt);
        }
    }

    #[test]
    fn scc_matches_reachability((n, arcs) in digraph(8, 0.25)) {
        let g = TriGraph::from_instance(&instance(n, &arcs));
        let comp = g.scc();
        let r = reach_matrix(n, &arcs);
        for i in 0..n {
            for j in 0..n {
                let same = i == j || (r[i][j] && r[j][i]);
                prop_assert_eq!(comp[i] == comp[j], same, "vertices {} {}", i, j);
            }
        }
    }

    #[test]
    fn restore_query_matches_explicit_check(
        (n, arcs) in digraph(10, 0.3),
        v_pick in any::<u32>(),
        out_bits in proptest::collection::vec(proptest::bool::weighted(0.3), 10),
        in_bits in proptest::collection::vec(proptest::bool::weighted(0.3), 10),
    ) {
        // forward arcs only, so the base graph is acyclic
        let v = v_pick % n as u32;
        let base: Arcs = arcs.iter().copied().filter(|&(a, b)| a < b && a != v && b != v).collect();
        let succs: Vec<VertexId> = (0..n as u32).filter(|&w| out_bits[w as usize]).map(VertexId).collect();
        let preds: Vec<VertexId> = (0..n as u32).filter(|&w| in_bits[w as usize]).map(VertexId).collect();

        let mut g = TriGraph::from_instance(&instance(n, &base));
        g.remove_vertex(VertexId(v));
        prop_assert!(g.is_acyclic());
        let fast = g.creates_cycle_if_restored(VertexId(v), &succs, &preds);

        let mut full = base.clone();
        full.extend(succs.iter().map(|s| (v, s.0)));
        full.extend(preds.iter().map(|p| (p.0, v)));
        let full = instance(n, &full);
        prop_assert_eq!(fast, !TriGraph::from_instance(&full).is_acyclic());
        prop_assert_eq!(fast, has_cycle_avoiding(&full, &vec![false; n]));
    }

    #[test]
    fn pace_text_round_trips((n, arcs) in digraph(12, 0.2), dup in any::<bool>()) {
        let inst = instance(n, &arcs);
        let mut text = to_pace_string(&inst);
        if dup && !arcs.is_empty() {
            // repeat the first adjacency line's first neighbor
            let (u, w) = *arcs.iter().next().unwrap();
            let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
            lines[u as usize + 1].push_str(&format!(" {}", w + 1));
            text = lines.join("\n") + "\n";
        }
        let parsed = parse_instance(&text).unwrap();
        prop_assert_eq!(parsed.arcs().collect::<Vec<_>>(), inst.arcs().collect::<Vec<_>>());
    }

    #[test]
    fn oracle_answer_is_valid_and_minimum((n, arcs) in digraph(8, 0.3)) {
        let inst = instance(n, &arcs);
        let best = exact_min_dfvs_instance(&inst).unwrap();
        prop_assert!(is_valid_dfvs(&inst, &best));
        let mut removed = vec![false; n];
        for v in &best {
            removed[v.index()] = true;
        }
        prop_assert!(!has_cycle_avoiding(&inst, &removed));
        // no smaller set works, checked with the DFS route
        if !best.is_empty() {
            let k = best.len() - 1;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let removed: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
                prop_assert!(has_cycle_avoiding(&inst, &removed));
            }
        }
    }

    #[test]
    fn fixpoint_is_sound_and_idempotent((n, arcs) in digraph(10, 0.3)) {
        let g = TriGraph::from_instance(&instance(n, &arcs));
        let opt = optimum(&g);
        let mut state = SolverState::new(g, &SolverConfig::default());
        let out = reduce_to_fixpoint(&mut state, &Stop::never());
        let merged: BTreeSet<VertexId> = out.merged.iter().copied().collect();
        prop_assert!(out.forced.iter().all(|v| !merged.contains(v)));
        prop_assert_eq!(out.forced.len() + optimum(state.graph()), opt);
        prop_assert!(state.graph().audit().is_ok());
        let arcs_before = state.graph().arc_set();
        let again = reduce_to_fixpoint(&mut state, &Stop::never());
        prop_assert!(!again.changed);
        prop_assert_eq!(arcs_before, state.graph().arc_set());
    }

    #[test]
    fn rule5_fires_on_empty_sides((n, arcs) in digraph(9, 0.3)) {
        let g = TriGraph::from_instance(&instance(n, &arcs));
        for u in g.live_vertices() {
            for &v in g.out_only(u) {
                if g.in_only(u).is_empty() || g.out_only(v).is_empty() {
                    let mut h = g.clone();
                    prop_assert!(rule5_edge_dominance(&mut h, u, v).changed);
                }
            }
        }
    }

    #[test]
    fn rule4_keeps_one_directional_cycles((n, arcs) in digraph(9, 0.3)) {
        let g = TriGraph::from_instance(&instance(n, &arcs));
        let one_way: Arcs = arcs.iter().copied().filter(|&(a, b)| a != b && !arcs.contains(&(b, a))).collect();
        let r = reach_matrix(n, &one_way);
        let mut h = g.clone();
        rule4_cross_scc_edge_pruning(&mut h);
        let kept = arc_model(&h);
        for &(a, b) in &one_way {
            // (a, b) lies on a cycle of one-directional edges iff b reaches a
            if r[b as usize][a as usize] {
                prop_assert!(kept.contains(&(a, b)));
            }
        }
        for &(a, b) in &arcs {
            if a == b || arcs.contains(&(b, a)) {
                prop_assert!(kept.contains(&(a, b)));
            }
        }
    }

    #[test]
    fn product_score_bounds((n, arcs) in digraph(9, 0.3)) {
        let g = TriGraph::from_instance(&instance(n, &arcs));
        for v in g.live_vertices() {
            let b = g.bidir_degree(v) as u64;
            let s = score_product(&g, v);
            prop_assert!(s >= b * b);
            let one_side_empty = g.out_degree(v) as u64 + b == 0 || g.in_degree(v) as u64 + b == 0;
            prop_assert_eq!(s == 0, one_side_empty);
        }
    }

    #[test]
    fn pruning_yields_one_minimal_sets((n, arcs) in digraph(10, 0.3), order_seed in any::<u64>()) {
        let inst = instance(n, &arcs);
        // every vertex is a (trivial) feedback vertex set; shuffle the order
        let mut order: Vec<VertexId> = inst.vertices().collect();
        let len = order.len();
        let mut s = order_seed;
        for i in (1..len).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let best = prune_redundant(&order, &inst, &Stop::never()).unwrap();
        prop_assert!(is_valid_dfvs(&inst, best.vertices()));
        prop_assert!(is_one_minimal(&inst, &best));
    }
}

/// Slow oracle route through `TriGraph::is_acyclic`, for cross-checking the
/// bitmask search on a handful of graphs.
#[test]
fn bitmask_oracle_agrees_with_trigraph_route() {
    use dfvs::oracle::{random_digraph, GeneratorParams};
    for seed in 0..60 {
        let inst = random_digraph(&GeneratorParams {
            n: 7,
            p: 0.3,
            self_loops: seed % 3 == 0,
            seed,
        });
        let fast = exact_min_dfvs_instance(&inst).unwrap().len();
        let n = inst.vertex_count();
        let slow = (0u32..(1 << n))
            .filter(|mask| {
                let s: Vec<VertexId> = (0..n as u32)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(VertexId)
                    .collect();
                is_valid_dfvs(&inst, &s)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap();
        assert_eq!(fast, slow, "seed {seed}");
    }
}
