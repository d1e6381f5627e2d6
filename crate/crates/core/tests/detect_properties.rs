use std::collections::BTreeSet;
use std::ops::ControlFlow;

use proptest::prelude::*;
use qturan_core::constructions::blowup;
use qturan_core::detect::for_each_s_copy;
use qturan_core::{contains_s_copy, find_s_copies, full_qgraph, support_graph, PatternGraph, QEdge, QGraph};

fn arb_pattern(max_k: usize) -> impl Strategy<Value = PatternGraph> {
    (1..=max_k).prop_flat_map(|k| {
        let pairs: Vec<(usize, usize)> = (1..=k).flat_map(|u| (u + 1..=k).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            PatternGraph::from_edges(k, pairs.iter().zip(&mask).filter(|(_, &b)| b).map(|(e, _)| *e)).unwrap()
        })
    })
}

fn arb_host_on(n: usize, q: u32) -> impl Strategy<Value = QGraph> {
    let all: Vec<QEdge> = full_qgraph(n, q).unwrap().edges().copied().collect();
    proptest::collection::vec(any::<bool>(), all.len()).prop_map(move |mask| {
        QGraph::from_edges(n, q, all.iter().zip(&mask).filter(|(_, &b)| b).map(|(e, _)| *e)).unwrap()
    })
}

fn arb_host(max_n: usize, max_q: u32) -> impl Strategy<Value = QGraph> {
    (2..=max_n, 1..=max_q).prop_flat_map(|(n, q)| arb_host_on(n, q))
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

/// Injective maps of every pattern vertex, then every q-edge per pattern edge.
fn oracle(h: &QGraph, f: &PatternGraph, s: u32) -> bool {
    let k = f.vertex_count();
    let n = h.n();
    if k > n {
        return false;
    }
    let edges: Vec<(usize, usize)> = f.edges().collect();
    let mut maps = vec![Vec::new()];
    for _ in 0..k {
        maps = maps
            .into_iter()
            .flat_map(|m: Vec<usize>| {
                (1..=n).filter(|x| !m.contains(x)).map(|x| [m.clone(), vec![x]].concat()).collect::<Vec<_>>()
            })
            .collect();
    }
    maps.iter().any(|m| {
        let img = |v: usize| m[v - 1];
        let options: Vec<Vec<QEdge>> = edges
            .iter()
            .map(|&(u, v)| {
                let (x, y) = (img(u).min(img(v)), img(u).max(img(v)));
                h.edges().filter(|e| (e.u, e.v) == (x, y)).copied().collect()
            })
            .collect();
        let mut choice: Vec<Vec<QEdge>> = vec![Vec::new()];
        for opts in &options {
            choice =
                choice.into_iter().flat_map(|c| opts.iter().map(move |e| [c.clone(), vec![*e]].concat())).collect();
        }
        choice.iter().any(|c| {
            (0..edges.len()).all(|i| {
                (i + 1..edges.len()).all(|j| {
                    let shared = [edges[i].0, edges[i].1].into_iter().find(|&z| z == edges[j].0 || z == edges[j].1);
                    shared.is_none_or(|z| c[i].weight_at(img(z)) + c[j].weight_at(img(z)) >= s)
                })
            })
        })
    })
}

fn subgraph_containment(host: &PatternGraph, f: &PatternGraph) -> bool {
    let h =
        QGraph::from_edges(host.vertex_count(), 1, host.edges().map(|(u, v)| QEdge::new(u, v, 1, 1).unwrap())).unwrap();
    oracle(&h, f, 0)
}

#[test]
fn find_limit_one_agrees_with_contains() {
    let h = blowup(&PatternGraph::complete(4), 2);
    for f in [PatternGraph::cycle(3), PatternGraph::cycle(4), PatternGraph::path(4)] {
        for s in 1..=5 {
            let one = find_s_copies(&h, &f, s, 1).unwrap();
            let first = contains_s_copy(&h, &f, s).unwrap();
            assert_eq!(one.first(), first.as_ref());
        }
    }
}

#[test]
fn blowup_triangle_weight_patterns() {
    let h = blowup(&PatternGraph::complete(3), 2);
    let c3 = PatternGraph::cycle(3);
    let identity = vec![(1, 1), (2, 2), (3, 3)];
    let mut seen = BTreeSet::new();
    for_each_s_copy(&h, &c3, 3, |e| {
        if e.vertex_map == identity {
            let w = |u, v| {
                e.edge_map.iter().find(|(p, _)| *p == (u, v)).map(|(_, q)| (q.weight_at(u), q.weight_at(v))).unwrap()
            };
            seen.insert([w(1, 2), w(1, 3), w(2, 3)]);
        }
        ControlFlow::Continue(())
    })
    .unwrap();
    let mut expected = BTreeSet::new();
    for code in 0..64u32 {
        let pair = |i: u32| (((code >> (2 * i)) & 1) + 1, ((code >> (2 * i + 1)) & 1) + 1);
        let [(a12, b12), (a13, b13), (a23, b23)] = [pair(0), pair(1), pair(2)];
        if a12 + a13 >= 3 && b12 + a23 >= 3 && b13 + b23 >= 3 {
            expected.insert([(a12, b12), (a13, b13), (a23, b23)]);
        }
    }
    assert!(!expected.is_empty());
    assert_eq!(seen, expected);
    let copies = find_s_copies(&h, &c3, 3, 100).unwrap();
    assert_eq!(copies.len(), 6);
    assert!(copies.iter().all(|e| e.is_valid(&h, &c3, 3)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_oracle(h in arb_host(5, 2), f in arb_pattern(4), s in 1u32..=5) {
        let found = contains_s_copy(&h, &f, s).unwrap();
        prop_assert_eq!(found.is_some(), oracle(&h, &f, s));
        if let Some(e) = found {
            prop_assert!(e.is_valid(&h, &f, s));
        }
    }

    #[test]
    fn relabel_invariance(
        (h, perm) in arb_host(5, 2).prop_flat_map(|h| { let n = h.n(); (Just(h), arb_perm(n)) }),
        (f, fperm) in arb_pattern(4).prop_flat_map(|f| { let k = f.vertex_count(); (Just(f), arb_perm(k)) }),
        s in 1u32..=4,
    ) {
        let base = contains_s_copy(&h, &f, s).unwrap().is_some();
        prop_assert_eq!(base, contains_s_copy(&h.relabel(&perm), &f, s).unwrap().is_some());
        prop_assert_eq!(base, contains_s_copy(&h, &f.relabel(&fperm), s).unwrap().is_some());
    }

    #[test]
    fn monotone_in_s_and_host(
        (h, extra) in (2usize..=5, 1u32..=3).prop_flat_map(|(n, q)| (arb_host_on(n, q), arb_host_on(n, q))),
        f in arb_pattern(4),
        s in 2u32..=6,
    ) {
        if contains_s_copy(&h, &f, s).unwrap().is_some() {
            prop_assert!(contains_s_copy(&h, &f, s - 1).unwrap().is_some());
            prop_assert!(contains_s_copy(&h.union(&extra), &f, s).unwrap().is_some());
        }
    }

    #[test]
    fn q1_is_subgraph_containment(h in arb_host(6, 1), f in arb_pattern(4)) {
        let found = contains_s_copy(&h, &f, 2).unwrap().is_some();
        prop_assert_eq!(found, subgraph_containment(&support_graph(&h), &f));
    }
}
