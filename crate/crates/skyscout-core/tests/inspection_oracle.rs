//! Validates the aerial suffix-inspection planner against the brute-force
//! reference on random geometric instances, and checks that the expanded
//! walks actually realize the planned costs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skyscout_core::{
    expand_euler_walk, oracle_inspection_time, plan_inspection, DeadheadMode, Graph, GraphBuilder,
    SuffixPath, VertexId,
};

/// Random path of `l` edges embedded in the plane, plus a few off-path
/// vertices, with lengths sometimes longer than the Euclidean gap so the
/// cheapest-deadhead and road-weight modes genuinely differ.
fn random_instance(rng: &mut ChaCha8Rng, l: usize) -> (Graph, SuffixPath, VertexId) {
    let mut b = GraphBuilder::new();
    let mut pts = Vec::new();
    for i in 0..=l {
        let x = i as f64 * 10.0 + rng.gen_range(-3.0..3.0);
        let y = rng.gen_range(-8.0..8.0);
        pts.push((x, y));
        b.vertex(&format!("r{i}"), x, y);
    }
    for i in 0..l {
        let eu = {
            let (x0, y0) = pts[i];
            let (x1, y1) = pts[i + 1];
            ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt()
        };
        let stretch = rng.gen_range(1.0..1.8);
        b.edge(&format!("r{i}"), &format!("r{}", i + 1), eu * stretch);
    }
    for j in 0..3 {
        b.vertex(
            &format!("x{j}"),
            rng.gen_range(-20.0..(l as f64 * 10.0 + 20.0)),
            rng.gen_range(-30.0..30.0),
        );
    }
    let g = b.build().unwrap();
    let vs: Vec<VertexId> = (0..=l)
        .map(|i| g.vertex(&format!("r{i}")).unwrap())
        .collect();
    let suffix = SuffixPath::new(&g, vs).unwrap();
    let pos_name = if rng.gen::<bool>() {
        format!("x{}", rng.gen_range(0..3))
    } else {
        format!("r{}", rng.gen_range(0..=l))
    };
    let pos = g.vertex(&pos_name).unwrap();
    (g, suffix, pos)
}

#[test]
fn planner_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..200 {
        let l = 1 + (trial % 6);
        let (g, suffix, pos) = random_instance(&mut rng, l);
        for mode in [DeadheadMode::Cheapest, DeadheadMode::RoadWeight] {
            let plan = plan_inspection(&g, &suffix, pos, 2.0, mode).unwrap();
            let oracle = oracle_inspection_time(&g, &suffix, pos, 2.0, mode).unwrap();
            assert!(
                (plan.total_time - oracle).abs() <= 1e-9 * oracle.max(1.0),
                "trial {trial} mode {mode:?}: planner {} vs oracle {}",
                plan.total_time,
                oracle
            );
        }
    }
}

#[test]
fn walks_realize_planned_cost() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..120 {
        let l = 1 + (trial % 6);
        let (g, suffix, pos) = random_instance(&mut rng, l);
        for mode in [DeadheadMode::Cheapest, DeadheadMode::RoadWeight] {
            let plan = plan_inspection(&g, &suffix, pos, 2.0, mode).unwrap();
            let walk = expand_euler_walk(&suffix, &plan).unwrap();
            assert_eq!(walk.first(), Some(&plan.start));
            assert_eq!(walk.last(), Some(&plan.stop));

            // the walk is exactly one sweep of every required edge plus (at
            // most) the single connector hop; the connector may coincide with
            // a required edge when it joins adjacent path vertices
            let hops = if plan.connector.is_some() { 1 } else { 0 };
            assert_eq!(walk.len() - 1, suffix.edge_count() + hops, "trial {trial}");
            let mut seen = vec![0usize; suffix.edge_count()];
            for w in walk.windows(2) {
                let pair = suffix.vertices().windows(2).position(|vv| {
                    (vv[0] == w[0] && vv[1] == w[1]) || (vv[0] == w[1] && vv[1] == w[0])
                });
                match pair {
                    Some(i) => seen[i] += 1,
                    None => {
                        let (a, b) = plan.connector.expect("unexpected hop without connector");
                        assert!((w[0] == a && w[1] == b) || (w[0] == b && w[1] == a));
                    }
                }
            }
            assert!(seen.iter().all(|c| *c >= 1), "trial {trial}: {seen:?}");
            assert!(seen.iter().all(|c| *c <= 2), "trial {trial}: {seen:?}");
            assert!(
                seen.iter().filter(|c| **c == 2).count() <= hops,
                "trial {trial}: {seen:?}"
            );
        }
    }
}

#[test]
fn endpoint_start_needs_no_deadhead() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for trial in 0..50 {
        let l = 1 + (trial % 5);
        let (g, suffix, _) = random_instance(&mut rng, l);
        for pos in [suffix.vertices()[0], *suffix.vertices().last().unwrap()] {
            let plan = plan_inspection(&g, &suffix, pos, 2.0, DeadheadMode::Cheapest).unwrap();
            assert_eq!(plan.deadhead_length, 0.0);
            assert_eq!(plan.transit_time, 0.0);
            assert!(
                (plan.total_time - suffix.total_length() / 2.0).abs() < 1e-12,
                "trial {trial}"
            );
        }
    }
}

#[test]
fn cheapest_mode_never_costs_more() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for trial in 0..80 {
        let l = 1 + (trial % 6);
        let (g, suffix, pos) = random_instance(&mut rng, l);
        let cheap = plan_inspection(&g, &suffix, pos, 2.0, DeadheadMode::Cheapest).unwrap();
        let road = plan_inspection(&g, &suffix, pos, 2.0, DeadheadMode::RoadWeight).unwrap();
        assert!(
            cheap.total_time <= road.total_time + 1e-12,
            "trial {trial}: {} vs {}",
            cheap.total_time,
            road.total_time
        );
    }
}
