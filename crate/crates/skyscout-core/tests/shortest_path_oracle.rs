//! Validates the shortest-path routine against exhaustive enumeration of all
//! simple paths on small random graphs, and checks structural invariants.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skyscout_core::{EdgeId, Graph, GraphBuilder, VertexId};

/// Random connected-ish geometric graph on n <= 8 vertices.
fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let mut b = GraphBuilder::new();
        let mut coords = Vec::new();
        for i in 0..n {
            let x = rng.gen_range(0.0..100.0);
            let y = rng.gen_range(0.0..100.0);
            coords.push((x, y));
            b.vertex(&format!("n{i}"), x, y);
        }
        let mut any = false;
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen::<f64>() < 0.45 {
                    // mix declared and Euclidean lengths
                    if rng.gen::<bool>() {
                        b.edge_euclidean(&format!("n{i}"), &format!("n{j}"));
                    } else {
                        let len = rng.gen_range(1.0..150.0);
                        b.edge(&format!("n{i}"), &format!("n{j}"), len);
                    }
                    any = true;
                }
            }
        }
        if any {
            return b.build().unwrap();
        }
    }
}

/// Minimum length over every simple path, by depth-first enumeration.
fn brute_force_shortest(
    graph: &Graph,
    at: VertexId,
    goal: VertexId,
    blocked: &BTreeSet<EdgeId>,
    visited: &mut Vec<VertexId>,
) -> Option<f64> {
    if at == goal {
        return Some(0.0);
    }
    let mut best: Option<f64> = None;
    for &(next, edge) in graph.neighbors(at) {
        if blocked.contains(&edge) || visited.contains(&next) {
            continue;
        }
        visited.push(next);
        if let Some(rest) = brute_force_shortest(graph, next, goal, blocked, visited) {
            let total = graph.edge_length(edge) + rest;
            if best.is_none_or(|b| total < b) {
                best = Some(total);
            }
        }
        visited.pop();
    }
    best
}

#[test]
fn matches_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0usize;
    for trial in 0..150 {
        let n = 3 + (trial % 6);
        let g = random_graph(&mut rng, n);

        // random blocked subset
        let mut blocked = BTreeSet::new();
        for e in g.edge_ids() {
            if rng.gen::<f64>() < 0.25 {
                blocked.insert(e);
            }
        }

        let vs: Vec<VertexId> = g.vertices_sorted().collect();
        let s = vs[rng.gen_range(0..vs.len())];
        let t = vs[rng.gen_range(0..vs.len())];
        if s == t {
            continue;
        }

        let mut visited = vec![s];
        let expected = brute_force_shortest(&g, s, t, &blocked, &mut visited);
        let got = g.shortest_path(s, t, &blocked);
        match (expected, &got) {
            (None, None) => {}
            (Some(len), Some(path)) => {
                assert!(
                    (path.length() - len).abs() <= 1e-9 * len.max(1.0),
                    "trial {trial}: {} vs {}",
                    path.length(),
                    len
                );
                compared += 1;
            }
            _ => panic!("trial {trial}: reachability disagreement"),
        }

        if let Some(path) = got {
            // structural checks on the returned path
            assert_eq!(path.vertices().first(), Some(&s));
            assert_eq!(path.vertices().last(), Some(&t));
            assert_eq!(path.edges().len() + 1, path.vertices().len());
            let unique: BTreeSet<_> = path.vertices().iter().collect();
            assert_eq!(unique.len(), path.vertices().len(), "path must be simple");
            for e in path.edges() {
                assert!(!blocked.contains(e));
            }
            let sum: f64 = path.edges().iter().map(|e| g.edge_length(*e)).sum();
            assert!((sum - path.length()).abs() <= 1e-9 * sum.max(1.0));
        }
    }
    assert!(compared >= 40, "only {compared} reachable cases exercised");
}

#[test]
fn blocking_more_edges_never_shortens() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..60 {
        let g = random_graph(&mut rng, 7);
        let vs: Vec<VertexId> = g.vertices_sorted().collect();
        let (s, t) = (vs[0], vs[vs.len() - 1]);
        let mut blocked = BTreeSet::new();
        let mut prev = match g.shortest_path(s, t, &blocked) {
            Some(p) => p.length(),
            None => continue,
        };
        let edges: Vec<EdgeId> = g.edge_ids().collect();
        for e in edges {
            if rng.gen::<f64>() < 0.3 {
                blocked.insert(e);
                match g.shortest_path(s, t, &blocked) {
                    Some(p) => {
                        assert!(p.length() >= prev - 1e-9);
                        prev = p.length();
                    }
                    None => break,
                }
            }
        }
    }
}

#[test]
fn motion_weight_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..40 {
        let g = random_graph(&mut rng, 6);
        let vs: Vec<VertexId> = g.vertices_sorted().collect();
        for &p in &vs {
            for &q in &vs {
                let w = g.motion_weight(p, q);
                assert_eq!(w, g.motion_weight(q, p), "symmetry");
                if p == q {
                    assert_eq!(w, 0.0);
                } else if g.edge_between(p, q).is_none() {
                    assert!((w - g.euclidean(p, q)).abs() < 1e-12);
                } else {
                    let e = g.edge_between(p, q).unwrap();
                    assert_eq!(w, g.edge_length(e));
                }
            }
        }
    }
}

#[test]
fn deterministic_path_selection_under_ties() {
    // 2x2 grid of unit edges: two equal-length routes corner to corner; the
    // tie must resolve identically on every query.
    let mut b = GraphBuilder::new();
    b.vertex("a", 0.0, 0.0)
        .vertex("b", 1.0, 0.0)
        .vertex("c", 0.0, 1.0)
        .vertex("d", 1.0, 1.0)
        .edge("a", "b", 1.0)
        .edge("a", "c", 1.0)
        .edge("b", "d", 1.0)
        .edge("c", "d", 1.0);
    let g = b.build().unwrap();
    let (a, d) = (g.vertex("a").unwrap(), g.vertex("d").unwrap());
    let first = g.shortest_path(a, d, &BTreeSet::new()).unwrap();
    for _ in 0..5 {
        let again = g.shortest_path(a, d, &BTreeSet::new()).unwrap();
        assert_eq!(first, again);
    }
    // the lexicographically smaller intermediate wins
    assert_eq!(g.vertex_name(first.vertices()[1]), "b");
}
