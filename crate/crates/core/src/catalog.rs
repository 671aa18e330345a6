//! Standard graph families and the worked-example networks used across the
//! test suites and the fixture corpus.

use crate::graph::{glue, Graph, VertexId};

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// `K_{a,b}` with the `a` side on vertices `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
    Graph::from_edges(a + b, &edges).unwrap()
}

pub fn empty(n: usize) -> Graph {
    Graph::from_edges(n, &[]).unwrap()
}

/// The 3-cube drawn as two nested squares: inner `0-1-2-3`, outer `5-6-7-4`,
/// spokes `0-5`, `1-6`, `2-7`, `3-4`. Antipodal pairs are
/// `{0,7}`, `{1,4}`, `{2,5}`, `{3,6}`.
pub fn hypercube_q3() -> Graph {
    Graph::from_edges(8, &Q3_EDGES).unwrap()
}

const Q3_EDGES: [(VertexId, VertexId); 12] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 0),
    (5, 6),
    (6, 7),
    (7, 4),
    (4, 5),
    (0, 5),
    (1, 6),
    (2, 7),
    (3, 4),
];

/// Path `1-2-3-4`.
pub fn labeled_path4() -> Graph {
    Graph::build(&["1", "2", "3", "4"], &[("1", "2"), ("2", "3"), ("3", "4")], None).unwrap()
}

/// Four 4-cycles sharing the hub vertex `0`.
pub fn four_squares() -> Graph {
    let mut g = path(1);
    for _ in 0..4 {
        g = glue(&g, 0, &cycle(4), 0).unwrap();
    }
    g
}

/// `C4` on `0-1-2-3` with `m` extra vertices joined to `0` and `2`.
pub fn square_with_bridges(m: usize) -> Graph {
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
    for k in 0..m {
        edges.push((0, 4 + k));
        edges.push((2, 4 + k));
    }
    Graph::from_edges(4 + m, &edges).unwrap()
}

/// Square `2-3-8-7` with pendants `1-2`, `6-7`, `3-4`, `8-5`.
pub fn square_with_pendants() -> Graph {
    let labels = ["1", "2", "3", "4", "5", "6", "7", "8"];
    let edges = [
        ("1", "2"),
        ("6", "7"),
        ("2", "3"),
        ("3", "8"),
        ("8", "7"),
        ("7", "2"),
        ("3", "4"),
        ("8", "5"),
    ];
    Graph::build(&labels, &edges, Some(&labels)).unwrap()
}

/// The 3-cube of [`hypercube_q3`] with two pendants on each outer vertex:
/// `4: 8, 9`, `5: 10, 11`, `6: 12, 13`, `7: 14, 15`.
pub fn cube_with_pendants() -> Graph {
    let labels: Vec<String> = (0..16).map(|i| i.to_string()).collect();
    let mut edges: Vec<(String, String)> =
        Q3_EDGES.iter().map(|&(u, v)| (u.to_string(), v.to_string())).collect();
    for (hub, leaves) in [(4, [8, 9]), (5, [10, 11]), (6, [12, 13]), (7, [14, 15])] {
        for leaf in leaves {
            edges.push((hub.to_string(), leaf.to_string()));
        }
    }
    let boundary: Vec<String> = [4, 8, 9, 5, 10, 11, 6, 12, 13, 7, 14, 15].iter().map(|v| v.to_string()).collect();
    Graph::build(&labels, &edges, Some(&boundary)).unwrap()
}
