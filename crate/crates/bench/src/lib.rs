//! Shared inputs for the benchmarks.

use pstnet::catalog;
use pstnet::{Graph, Net, RoutingProblem};

/// Hypercube with two pendants per outer vertex and its four crossing nets.
pub fn cube_routing() -> RoutingProblem {
    let g = catalog::cube_with_pendants();
    let nets = [("8", "12"), ("9", "13"), ("15", "10"), ("14", "11")];
    problem(g, &nets)
}

/// Square with four pendants and its two crossing nets.
pub fn square_routing() -> RoutingProblem {
    problem(catalog::square_with_pendants(), &[("1", "5"), ("6", "4")])
}

fn problem(g: Graph, nets: &[(&str, &str)]) -> RoutingProblem {
    let nets = nets
        .iter()
        .enumerate()
        .map(|(i, (s, r))| Net { id: i + 1, sender: g.vertex(s).unwrap(), receiver: g.vertex(r).unwrap() })
        .collect();
    RoutingProblem::new(g, nets).unwrap()
}

/// Cycles of increasing length for eigensolver timing.
pub fn cycles(sizes: &[usize]) -> Vec<Graph> {
    sizes.iter().map(|&n| catalog::cycle(n)).collect()
}
