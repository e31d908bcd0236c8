//! End-to-end properties of the two-robot simulator: agreement with the
//! closed-form ground-only costs on adversarial disjoint-path instances,
//! competitive ratios bounded below by 1, dominance of full observation, and
//! the shortest-first visit order.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skyscout_core::{
    gen_disjoint_adversarial, gen_random, simulate, ugv_only_time, EventKind, Graph, GraphBuilder,
    Strategy, VertexId,
};

/// Grid with unit-ish spacing and a few random deletions; guaranteed to keep
/// the four corners.
fn random_grid(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Graph {
    loop {
        let mut b = GraphBuilder::new();
        for r in 0..rows {
            for c in 0..cols {
                let jx = rng.gen_range(-0.2..0.2);
                let jy = rng.gen_range(-0.2..0.2);
                b.vertex(
                    &format!("g{r:02}x{c:02}"),
                    c as f64 * 10.0 + jx,
                    r as f64 * 10.0 + jy,
                );
            }
        }
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols && rng.gen::<f64>() > 0.1 {
                    b.edge_euclidean(&format!("g{r:02}x{c:02}"), &format!("g{r:02}x{:02}", c + 1));
                }
                if r + 1 < rows && rng.gen::<f64>() > 0.1 {
                    b.edge_euclidean(&format!("g{r:02}x{c:02}"), &format!("g{:02}x{c:02}", r + 1));
                }
            }
        }
        let g = b.build().unwrap();
        let s = g.vertex("g00x00").unwrap();
        let t = g
            .vertex(&format!("g{:02}x{:02}", rows - 1, cols - 1))
            .unwrap();
        if g.shortest_path(s, t, &BTreeSet::new()).is_some() {
            return g;
        }
    }
}

#[test]
fn adversarial_instances_match_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..30 {
        let k = 2 + trial % 4;
        let mut lengths: Vec<f64> = (0..k).map(|_| rng.gen_range(50.0..500.0)).collect();
        lengths.sort_by(f64::total_cmp);
        let eps_fraction = 1e-6;
        let (g, sc) = gen_disjoint_adversarial(&lengths, 3, eps_fraction, 5.0, 10.0).unwrap();
        let r = simulate(&g, &sc, Strategy::UgvOnly).unwrap();

        // every path but the longest is blocked eps from the goal
        let seg = |i: usize| lengths[i] / 3.0;
        let epsilons: Vec<f64> = (0..k - 1).map(|i| eps_fraction * seg(i)).collect();
        let expected = ugv_only_time(&lengths, k, &epsilons, 5.0).unwrap();
        assert!(
            (r.ugv_time - expected).abs() <= 1e-9 * expected,
            "trial {trial}: sim {} vs formula {}",
            r.ugv_time,
            expected
        );
    }
}

#[test]
fn shortest_first_visit_order() {
    // paths are attempted in nondecreasing length order: the probe events
    // land on path 1, then path 2, ...
    let (g, sc) =
        gen_disjoint_adversarial(&[100.0, 150.0, 200.0, 250.0], 2, 1e-6, 5.0, 10.0).unwrap();
    let r = simulate(&g, &sc, Strategy::UgvOnly).unwrap();
    let mut probed = Vec::new();
    for e in &r.trace {
        if let EventKind::ReachDamagePoint { edge, .. } = e.kind {
            let (lo, hi) = g.edge_endpoints(edge);
            let name = if g.vertex_name(lo) == "g" {
                g.vertex_name(hi)
            } else {
                g.vertex_name(lo)
            };
            probed.push(name.to_string());
        }
    }
    assert_eq!(probed, vec!["p01v01", "p02v01", "p03v01"]);
}

#[test]
fn full_observation_dominates_and_ratios_stay_above_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut improved = 0usize;
    for trial in 0..40 {
        let g = random_grid(&mut rng, 4, 5);
        let vs: Vec<VertexId> = g.vertices_sorted().collect();
        let s = vs[0];
        let t = *vs.last().unwrap();
        let uav = vs[rng.gen_range(0..vs.len())];
        let sc = match gen_random(&g, s, t, uav, 0.25, 5.0, 10.0, 1000 + trial) {
            Ok(sc) => sc,
            Err(_) => continue,
        };
        let full = simulate(&g, &sc, Strategy::FullObservation).unwrap();
        assert!((full.competitive_ratio - 1.0).abs() < 1e-9, "trial {trial}");
        for strategy in [
            Strategy::UgvOnly,
            Strategy::Bidirectional,
            Strategy::OptimalPartition,
        ] {
            let r = simulate(&g, &sc, strategy).unwrap();
            assert!(
                r.ugv_time >= full.ugv_time - 1e-9,
                "trial {trial} {strategy}: {} < {}",
                r.ugv_time,
                full.ugv_time
            );
            assert!(
                r.competitive_ratio >= 1.0 - 1e-12,
                "trial {trial} {strategy}"
            );
            if strategy != Strategy::UgvOnly {
                let solo = simulate(&g, &sc, Strategy::UgvOnly).unwrap();
                if r.ugv_time < solo.ugv_time - 1e-9 {
                    improved += 1;
                }
            }
        }
    }
    // aerial help must actually pay off somewhere in the batch
    assert!(improved > 0);
}

#[test]
fn uav_never_traverses_blocked_roads_but_sweeps_them() {
    // bidirectional sweep reports blocked edges from their far vertex and the
    // ground vehicle reroutes without probing them
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for trial in 0..20 {
        let g = random_grid(&mut rng, 3, 4);
        let vs: Vec<VertexId> = g.vertices_sorted().collect();
        let s = vs[0];
        let t = *vs.last().unwrap();
        let sc = match gen_random(&g, s, t, t, 0.3, 5.0, 20.0, 9000 + trial) {
            Ok(sc) => sc,
            Err(_) => continue,
        };
        let r = simulate(&g, &sc, Strategy::Bidirectional).unwrap();
        // anything the team learned as blocked is truly blocked, and vice
        // versa for open
        let truth = sc.blocked_edges();
        for (e, status) in r.discovered.iter() {
            assert_eq!(status.is_blocked(), truth.contains(&e), "trial {trial}");
        }
    }
}
