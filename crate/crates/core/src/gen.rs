//! Random graphs, projects and fax-built morphisms for the property suites.
//!
//! Every trial draws from its own ChaCha8 stream keyed by `(seed, trial)`,
//! so results do not depend on scheduling.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, Vertex, WeightedGraph};
use crate::project::{Delocation, Project, SlicedGraph};
use crate::rational::ratio;
use crate::scalar::ExtReal;
use crate::Rational;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Size limits for random graphs.
#[derive(Clone, Copy, Debug)]
pub struct GraphShape {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Weights are `n/d` with `1 ≤ n ≤ d ≤ max_den`.
    pub max_den: i64,
}

impl Default for GraphShape {
    fn default() -> Self {
        GraphShape {
            max_vertices: 8,
            max_edges: 12,
            max_den: 6,
        }
    }
}

pub fn weight(rng: &mut impl Rng, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    ratio(rng.gen_range(1..=d), d)
}

/// A nonzero rational `±n/d` with small numerator and denominator.
pub fn coefficient(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(1..=4) * if rng.gen_bool(0.25) { -1 } else { 1 };
    ratio(n, rng.gen_range(1..=3))
}

/// Up to `max_edges` edges with endpoints drawn uniformly from `vertices`.
pub fn graph_on(rng: &mut impl Rng, vertices: &BTreeSet<Vertex>, max_edges: usize, max_den: i64) -> WeightedGraph {
    let vs: Vec<Vertex> = vertices.iter().copied().collect();
    let m = if vs.is_empty() { 0 } else { rng.gen_range(0..=max_edges) };
    let edges = (0..m)
        .map(|_| {
            let s = *vs.choose(rng).unwrap();
            let t = *vs.choose(rng).unwrap();
            Edge {
                src: s,
                tgt: t,
                weight: weight(rng, max_den),
            }
        })
        .collect();
    WeightedGraph::new(vs, edges).expect("endpoints and weights are valid")
}

/// Carriers drawn by assigning each of `universe` vertices to a random
/// nonempty set of owners, never all `n` of them when `n ≥ 3`.  Owner sets
/// larger than `max` are rejected and redrawn.
pub fn carriers(rng: &mut impl Rng, n: usize, universe: u64, max: usize) -> Vec<BTreeSet<Vertex>> {
    loop {
        let mut out = vec![BTreeSet::new(); n];
        for v in 0..universe {
            let full = (1u32 << n) - 1;
            let mask = loop {
                let m = rng.gen_range(1..=full);
                if n < 3 || m != full {
                    break m;
                }
            };
            for (i, c) in out.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    c.insert(Vertex(v));
                }
            }
        }
        if out.iter().all(|c| c.len() <= max) {
            return out;
        }
    }
}

/// Three graphs with `V^F ∩ V^G ∩ V^H = ∅`.
pub fn triple(rng: &mut impl Rng, shape: &GraphShape) -> (WeightedGraph, WeightedGraph, WeightedGraph) {
    let universe = rng.gen_range(3..=(shape.max_vertices as u64 * 3 / 2));
    let cs = carriers(rng, 3, universe, shape.max_vertices);
    let mut g = cs.iter().map(|c| graph_on(rng, c, shape.max_edges, shape.max_den));
    (g.next().unwrap(), g.next().unwrap(), g.next().unwrap())
}

/// Two graphs with overlapping carriers.
pub fn pair(rng: &mut impl Rng, shape: &GraphShape) -> (WeightedGraph, WeightedGraph) {
    let universe = rng.gen_range(2..=(shape.max_vertices as u64 * 3 / 2));
    let cs = carriers(rng, 2, universe, shape.max_vertices);
    let f = graph_on(rng, &cs[0], shape.max_edges, shape.max_den);
    let g = graph_on(rng, &cs[1], shape.max_edges, shape.max_den);
    (f, g)
}

/// Up to `max_slices` slices with random nonzero coefficients; the wager is
/// `0` when `wager_free`, otherwise a random small rational.
pub fn project_on(
    rng: &mut impl Rng,
    carrier: &BTreeSet<Vertex>,
    shape: &GraphShape,
    max_slices: usize,
    wager_free: bool,
) -> Project {
    let k = rng.gen_range(1..=max_slices);
    let slices = (0..k)
        .map(|_| (coefficient(rng), graph_on(rng, carrier, shape.max_edges, shape.max_den)))
        .collect();
    let wager = if wager_free || rng.gen_bool(0.3) {
        ExtReal::zero()
    } else {
        ExtReal::rational(coefficient(rng))
    };
    Project::new(wager, SlicedGraph::new(carrier.clone(), slices).expect("slices share the carrier"))
}

/// A random bijection from `src` onto `tgt` (equal sizes).
pub fn bijection(rng: &mut impl Rng, src: &BTreeSet<Vertex>, tgt: &BTreeSet<Vertex>) -> Delocation {
    let mut image: Vec<Vertex> = tgt.iter().copied().collect();
    image.shuffle(rng);
    Delocation::from_pairs(src.iter().copied().zip(image))
}

pub fn vertex_range(lo: u64, hi: u64) -> BTreeSet<Vertex> {
    (lo..hi).map(Vertex).collect()
}
