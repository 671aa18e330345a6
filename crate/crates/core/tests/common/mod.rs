#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::path::PathBuf;

use pstnet::catalog;
use pstnet::{Graph, Net, RoutingProblem, VertexId};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(rel: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", rel].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|_| rng.random_bool(p)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((rng.random_range(0..i), i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !edges.contains(&(i, j)) && rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Connected host on `min_n..=max_n` vertices with up to `max_nets` nets on
/// distinct terminals.
pub fn random_instance<R: Rng>(rng: &mut R, min_n: usize, max_n: usize, max_nets: usize) -> RoutingProblem {
    let n = rng.random_range(min_n..=max_n);
    let p = rng.random_range(0.0..0.3);
    let g = random_connected(rng, n, p);
    let q = rng.random_range(1..=max_nets.min(n / 2));
    let mut vs: Vec<VertexId> = (0..n).collect();
    vs.shuffle(rng);
    let nets = (0..q).map(|i| Net { id: i + 1, sender: vs[2 * i], receiver: vs[2 * i + 1] }).collect();
    RoutingProblem::new(g, nets).unwrap()
}

/// Library gadgets as standalone graphs with a transfer pair and its time.
pub fn catalog_transfers() -> Vec<(Graph, VertexId, VertexId, f64)> {
    vec![
        (catalog::path(2), 0, 1, FRAC_PI_2),
        (catalog::path(3), 0, 2, PI / SQRT_2),
        (catalog::cycle(4), 0, 2, FRAC_PI_2),
        (catalog::cycle(4), 1, 3, FRAC_PI_2),
        (catalog::hypercube_q3(), 0, 7, FRAC_PI_2),
        (catalog::hypercube_q3(), 2, 5, FRAC_PI_2),
    ]
}

pub fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

pub fn connected_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        (parents, proptest::collection::vec(0u8..10, n * n.saturating_sub(1) / 2)).prop_map(move |(parents, extra)| {
            let mut edges: Vec<_> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            for (e, x) in pairs.zip(extra) {
                if x == 0 && !edges.contains(&e) {
                    edges.push(e);
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}
