//! Synthetic road networks: a jittered grid with random edge deletions, so
//! the pipeline runs without any external map data.

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skyscout_core::{Graph, GraphBuilder};

pub struct GridParams {
    pub rows: usize,
    pub cols: usize,
    /// Nominal distance between neighboring intersections, meters.
    pub spacing: f64,
    /// Max coordinate perturbation as a fraction of spacing, in [0, 0.5).
    pub jitter: f64,
    /// Independent deletion probability per grid edge, in [0, 1).
    pub delete_prob: f64,
    pub seed: u64,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams {
            rows: 6,
            cols: 6,
            spacing: 200.0,
            jitter: 0.2,
            delete_prob: 0.1,
            seed: 0,
        }
    }
}

fn node(r: usize, c: usize) -> String {
    format!("n{r:03}x{c:03}")
}

/// Deterministic for a fixed seed. Deletions are resampled until the whole
/// grid stays connected, so every vertex pair remains usable as start/goal.
pub fn grid_map(params: &GridParams) -> Result<Graph> {
    if params.rows < 2 || params.cols < 2 {
        bail!("grid needs at least 2x2 intersections");
    }
    if !(params.spacing > 0.0) {
        bail!("spacing must be positive");
    }
    if !(0.0..0.5).contains(&params.jitter) {
        bail!("jitter must be in [0, 0.5)");
    }
    if !(0.0..1.0).contains(&params.delete_prob) {
        bail!("delete_prob must be in [0, 1)");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let jit = params.jitter * params.spacing;
    let mut coords = vec![vec![(0.0, 0.0); params.cols]; params.rows];
    for (r, row) in coords.iter_mut().enumerate() {
        for (c, p) in row.iter_mut().enumerate() {
            let dx = if jit > 0.0 {
                rng.gen_range(-jit..jit)
            } else {
                0.0
            };
            let dy = if jit > 0.0 {
                rng.gen_range(-jit..jit)
            } else {
                0.0
            };
            *p = (
                c as f64 * params.spacing + dx,
                r as f64 * params.spacing + dy,
            );
        }
    }

    for _attempt in 0..1000 {
        let mut b = GraphBuilder::new();
        for r in 0..params.rows {
            for c in 0..params.cols {
                let (x, y) = coords[r][c];
                b.vertex(&node(r, c), x, y);
            }
        }
        for r in 0..params.rows {
            for c in 0..params.cols {
                if c + 1 < params.cols && rng.gen::<f64>() >= params.delete_prob {
                    b.edge_euclidean(&node(r, c), &node(r, c + 1));
                }
                if r + 1 < params.rows && rng.gen::<f64>() >= params.delete_prob {
                    b.edge_euclidean(&node(r, c), &node(r + 1, c));
                }
            }
        }
        let g = b.build()?;
        if is_connected(&g) {
            return Ok(g);
        }
    }
    bail!("could not sample a connected grid; lower delete_prob");
}

fn is_connected(g: &Graph) -> bool {
    let Some(first) = g.vertices_sorted().next() else {
        return false;
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![first];
    seen.insert(first);
    while let Some(v) = stack.pop() {
        for &(u, _) in g.neighbors(v) {
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen.len() == g.vertex_count()
}
