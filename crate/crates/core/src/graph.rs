//! Labeled undirected simple graphs with switchable-edge masks.
//!
//! Vertices are addressed by label at the boundary of the library and by a
//! dense index ([`VertexId`]) internally. Index assignment follows the label
//! sort order (integer-looking labels numerically, then the rest
//! lexicographically), so equal inputs always produce equal graphs.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("self-loop on vertex {0:?}")]
    SelfLoop(String),
    #[error("edge endpoint {0:?} is not a vertex")]
    UnknownEndpoint(String),
    #[error("duplicate edge ({0:?}, {1:?})")]
    DuplicateEdge(String, String),
    #[error("boundary vertex {0:?} is not a vertex")]
    UnknownBoundaryVertex(String),
    #[error("boundary vertex {0:?} listed twice")]
    RepeatedBoundaryVertex(String),
    #[error("vertex id {0} out of range")]
    InvalidVertex(VertexId),
    #[error("edge ({0}, {1}) is not an edge of the host graph")]
    EdgeNotInHost(VertexId, VertexId),
}

/// Sort key for labels: integers first in numeric order, then other strings.
pub(crate) fn label_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

fn normalize(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    adjacency: Vec<Vec<VertexId>>,
    edges: Vec<(VertexId, VertexId)>,
    boundary: Option<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from labels and label pairs.
    pub fn build<L, E>(labels: &[L], edges: &[(E, E)], boundary: Option<&[L]>) -> Result<Self, GraphError>
    where
        L: AsRef<str>,
        E: AsRef<str>,
    {
        let mut sorted: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        sorted.sort_by(|a, b| label_order(a, b));
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateLabel(pair[0].clone()));
            }
        }
        let index: HashMap<String, VertexId> =
            sorted.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let lookup = |l: &str| index.get(l).copied().ok_or_else(|| GraphError::UnknownEndpoint(l.to_string()));

        let mut id_edges = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            if a == b {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            id_edges.push((lookup(a)?, lookup(b)?));
        }
        let boundary = match boundary {
            None => None,
            Some(bs) => {
                let mut ids = Vec::with_capacity(bs.len());
                for b in bs {
                    let b = b.as_ref();
                    let id = index
                        .get(b)
                        .copied()
                        .ok_or_else(|| GraphError::UnknownBoundaryVertex(b.to_string()))?;
                    ids.push(id);
                }
                Some(ids)
            }
        };
        Self::assemble(sorted, index, &id_edges, boundary)
    }

    /// Graph on vertices `0..n` labeled by their decimal index.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::InvalidVertex(u));
            }
            if v >= n {
                return Err(GraphError::InvalidVertex(v));
            }
        }
        Self::assemble(labels, index, edges, None)
    }

    fn assemble(
        labels: Vec<String>,
        index: HashMap<String, VertexId>,
        edges: &[(VertexId, VertexId)],
        boundary: Option<Vec<VertexId>>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(labels[u].clone()));
            }
            if !set.insert(normalize(u, v)) {
                return Err(GraphError::DuplicateEdge(labels[u].clone(), labels[v].clone()));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        if let Some(b) = &boundary {
            let mut seen = BTreeSet::new();
            for &v in b {
                if v >= n {
                    return Err(GraphError::InvalidVertex(v));
                }
                if !seen.insert(v) {
                    return Err(GraphError::RepeatedBoundaryVertex(labels[v].clone()));
                }
            }
        }
        Ok(Graph { labels, index, adjacency, edges: set.into_iter().collect(), boundary })
    }

    /// Same vertices and labels, different edge set and boundary.
    pub(crate) fn with_edges(
        &self,
        edges: &[(VertexId, VertexId)],
        boundary: Option<Vec<VertexId>>,
    ) -> Result<Self, GraphError> {
        Self::assemble(self.labels.clone(), self.index.clone(), edges, boundary)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn boundary(&self) -> Option<&[VertexId]> {
        self.boundary.as_deref()
    }

    pub fn on_boundary(&self, v: VertexId) -> Option<bool> {
        self.boundary.as_ref().map(|b| b.contains(&v))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<VertexId, GraphError> {
        if v < self.vertex_count() {
            Ok(v)
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.vertex_count();
        let mut a = vec![vec![0u8; n]; n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }

    /// Hop distances from `source`; `None` marks unreachable vertices.
    pub fn bfs(&self, source: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A shortest path from `u` to `v`, preferring the lowest-id neighbor at
    /// every step.
    pub fn shortest_path(&self, u: VertexId, v: VertexId) -> Option<Vec<VertexId>> {
        let to_target = self.bfs(v);
        let mut len = to_target[u]?;
        let mut path = vec![u];
        let mut at = u;
        while len > 0 {
            at = *self.adjacency[at].iter().find(|&&w| to_target[w] == Some(len - 1))?;
            path.push(at);
            len -= 1;
        }
        Some(path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentMetrics {
    pub vertices: Vec<VertexId>,
    pub diameter: usize,
    pub radius: usize,
    pub center: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    /// All-pairs hop counts, `None` across components.
    pub distances: Vec<Vec<Option<usize>>>,
    /// Eccentricity of each vertex within its own component.
    pub eccentricities: Vec<usize>,
    pub components: Vec<ComponentMetrics>,
}

impl GraphMetrics {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    /// Diameter of a connected graph; `None` when disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        match self.components.as_slice() {
            [c] => Some(c.diameter),
            _ => None,
        }
    }

    pub fn radius(&self) -> Option<usize> {
        match self.components.as_slice() {
            [c] => Some(c.radius),
            _ => None,
        }
    }

    pub fn center(&self) -> Option<&[VertexId]> {
        match self.components.as_slice() {
            [c] => Some(&c.center),
            _ => None,
        }
    }

    pub fn component_of(&self, v: VertexId) -> &ComponentMetrics {
        self.components
            .iter()
            .find(|c| c.vertices.binary_search(&v).is_ok())
            .expect("every vertex belongs to a component")
    }

    pub fn is_central(&self, v: VertexId) -> bool {
        self.component_of(v).center.contains(&v)
    }
}

pub fn metrics(g: &Graph) -> GraphMetrics {
    let n = g.vertex_count();
    let distances: Vec<Vec<Option<usize>>> = (0..n).map(|v| g.bfs(v)).collect();
    let eccentricities: Vec<usize> = distances
        .iter()
        .map(|row| row.iter().flatten().copied().max().unwrap_or(0))
        .collect();

    let mut assigned = vec![false; n];
    let mut components = Vec::new();
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let vertices: Vec<VertexId> = (0..n).filter(|&w| distances[v][w].is_some()).collect();
        for &w in &vertices {
            assigned[w] = true;
        }
        let diameter = vertices.iter().map(|&w| eccentricities[w]).max().unwrap_or(0);
        let radius = vertices.iter().map(|&w| eccentricities[w]).min().unwrap_or(0);
        let center = vertices.iter().copied().filter(|&w| eccentricities[w] == radius).collect();
        components.push(ComponentMetrics { vertices, diameter, radius, center });
    }
    GraphMetrics { distances, eccentricities, components }
}

/// Vertex-disjoint union; block `i` is shifted by the sizes of blocks before it.
/// Labels of the result are the new decimal indices.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let mut offset = 0;
    let mut edges = Vec::new();
    let mut boundary: Option<Vec<VertexId>> = None;
    for g in parts {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
        if let Some(b) = g.boundary() {
            boundary.get_or_insert_with(Vec::new).extend(b.iter().map(|&v| v + offset));
        }
        offset += g.vertex_count();
    }
    let mut out = Graph::from_edges(offset, &edges).expect("union of valid graphs is valid");
    out.boundary = boundary;
    out
}

/// Identifies vertex `v1` of `g1` with vertex `v2` of `g2`.
///
/// Vertices of `g1` keep their indices; the remaining vertices of `g2` follow
/// in their original order. Labels of the result are the new decimal indices.
pub fn glue(g1: &Graph, v1: VertexId, g2: &Graph, v2: VertexId) -> Result<Graph, GraphError> {
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    let n1 = g1.vertex_count();
    let relabel = |w: VertexId| -> VertexId {
        match w.cmp(&v2) {
            Ordering::Equal => v1,
            Ordering::Less => n1 + w,
            Ordering::Greater => n1 + w - 1,
        }
    };
    let mut edges: Vec<(VertexId, VertexId)> = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&(a, b)| (relabel(a), relabel(b))));
    let mut out = Graph::from_edges(n1 + g2.vertex_count() - 1, &edges)?;
    if g1.boundary().is_some() || g2.boundary().is_some() {
        let mut b: Vec<VertexId> = g1.boundary().unwrap_or(&[]).to_vec();
        for &w in g2.boundary().unwrap_or(&[]) {
            let w = relabel(w);
            if !b.contains(&w) {
                b.push(w);
            }
        }
        out.boundary = Some(b);
    }
    Ok(out)
}

/// Set of host edges switched on during one step.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubgraphMask {
    active_edges: BTreeSet<(VertexId, VertexId)>,
}

impl SubgraphMask {
    pub fn new(edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        SubgraphMask { active_edges: edges.into_iter().map(|(u, v)| normalize(u, v)).collect() }
    }

    pub fn full(g: &Graph) -> Self {
        Self::new(g.edges().iter().copied())
    }

    pub fn active_edges(&self) -> impl Iterator<Item = &(VertexId, VertexId)> {
        self.active_edges.iter()
    }
}

/// Host graph with only the mask's edges switched on.
pub fn mask(g: &Graph, m: &SubgraphMask) -> Result<Graph, GraphError> {
    for &(u, v) in &m.active_edges {
        if !g.has_edge(u, v) {
            return Err(GraphError::EdgeNotInHost(u, v));
        }
    }
    let edges: Vec<_> = m.active_edges.iter().copied().collect();
    g.with_edges(&edges, g.boundary.clone())
}

/// Euler bound `|E| <= 3|V| - 6`, a necessary condition for planarity.
/// Graphs with fewer than three vertices are always planar.
pub fn planarity_bound_check(g: &Graph) -> bool {
    let n = g.vertex_count();
    n < 3 || g.edge_count() <= 3 * n - 6
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn build_sorts_labels_numerically() {
        let g = Graph::build(&["10", "2", "1"], &[("1", "10")], None).unwrap();
        assert_eq!(g.labels(), &["1", "2", "10"]);
        assert_eq!(g.edges(), &[(0, 2)]);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Graph::build(&["a", "a"], &[] as &[(&str, &str)], None),
            Err(GraphError::DuplicateLabel("a".into()))
        );
        assert_eq!(Graph::build(&["a"], &[("a", "a")], None), Err(GraphError::SelfLoop("a".into())));
        assert_eq!(
            Graph::build(&["a"], &[("a", "b")], None),
            Err(GraphError::UnknownEndpoint("b".into()))
        );
        assert!(matches!(
            Graph::build(&["a", "b"], &[("a", "b"), ("b", "a")], None),
            Err(GraphError::DuplicateEdge(..))
        ));
        assert!(matches!(
            Graph::build(&["a", "b"], &[("a", "b")], Some(&["a", "a"])),
            Err(GraphError::RepeatedBoundaryVertex(_))
        ));
    }

    #[test]
    fn small_graphs() {
        let p2 = Graph::build(&["0", "1"], &[("0", "1")], None).unwrap();
        assert_eq!((p2.vertex_count(), p2.edge_count()), (2, 1));
        let single = Graph::build(&["0"], &[] as &[(&str, &str)], None).unwrap();
        assert_eq!((single.vertex_count(), single.edge_count()), (1, 0));
        let g = catalog::square_with_pendants();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 8));
        let sq = ["2", "3", "8", "7"].map(|l| g.vertex(l).unwrap());
        for i in 0..4 {
            assert!(g.has_edge(sq[i], sq[(i + 1) % 4]));
        }
        let pendants = ["1", "4", "5", "6"].map(|l| g.vertex(l).unwrap());
        assert!(pendants.iter().all(|&p| g.degree(p) == 1));
    }

    #[test]
    fn metrics_of_small_graphs() {
        let c4 = metrics(&catalog::cycle(4));
        assert_eq!((c4.diameter(), c4.radius()), (Some(2), Some(2)));
        assert_eq!(c4.center().unwrap(), &[0, 1, 2, 3]);

        let p3 = metrics(&catalog::path(3));
        assert_eq!((p3.diameter(), p3.radius()), (Some(2), Some(1)));
        assert_eq!(p3.center().unwrap(), &[1]);

        assert_eq!(metrics(&catalog::four_squares()).diameter(), Some(4));
    }

    #[test]
    fn metrics_of_disconnected_graph() {
        let g = disjoint_union(&[catalog::path(3), catalog::path(1)]);
        let m = metrics(&g);
        assert!(!m.is_connected());
        assert_eq!(m.diameter(), None);
        let sizes: Vec<usize> = m.components.iter().map(|c| c.vertices.len()).collect();
        assert_eq!(sizes, vec![3, 1]);
        assert_eq!(m.distances[0][3], None);
        assert_eq!(m.distances[0][2], Some(2));
    }

    #[test]
    fn union_blocks() {
        let g = disjoint_union(&[catalog::path(2), catalog::path(2)]);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 2));
        assert_eq!(metrics(&g).components.len(), 2);

        let empty = disjoint_union(&vec![catalog::path(1); 5]);
        assert_eq!((empty.vertex_count(), empty.edge_count()), (5, 0));
    }

    #[test]
    fn glue_examples() {
        let g = glue(&catalog::cycle(4), 0, &catalog::cycle(4), 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 8));
        assert_eq!(metrics(&g).diameter(), Some(4));

        let c4 = catalog::cycle(4);
        let same = glue(&catalog::path(1), 0, &c4, 2).unwrap();
        assert_eq!(same.vertex_count(), 4);
        assert_eq!(same.edge_count(), 4);
        assert!(same.neighbors(0).len() == 2 && metrics(&same).diameter() == Some(2));

        let p3 = glue(&catalog::path(2), 1, &catalog::path(2), 0).unwrap();
        assert_eq!(p3, catalog::path(3));

        assert_eq!(glue(&c4, 9, &c4, 0), Err(GraphError::InvalidVertex(9)));
    }

    #[test]
    fn mask_examples() {
        let path = catalog::labeled_path4();
        let (v1, v2, v3) = (path.vertex("1").unwrap(), path.vertex("2").unwrap(), path.vertex("3").unwrap());
        let sub = mask(&path, &SubgraphMask::new([(v1, v2), (v2, v3)])).unwrap();
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(sub.degree(path.vertex("4").unwrap()), 0);

        let none = mask(&path, &SubgraphMask::default()).unwrap();
        assert_eq!((none.vertex_count(), none.edge_count()), (4, 0));
        assert_eq!(mask(&path, &SubgraphMask::full(&path)).unwrap(), path);
        assert_eq!(
            mask(&path, &SubgraphMask::new([(v1, v3)])),
            Err(GraphError::EdgeNotInHost(v1, v3))
        );
    }

    #[test]
    fn euler_bound() {
        assert!(planarity_bound_check(&catalog::hypercube_q3()));
        assert!(!planarity_bound_check(&catalog::complete(5)));
        let g = catalog::cube_with_pendants();
        assert_eq!((g.vertex_count(), g.edge_count()), (16, 20));
        assert!(planarity_bound_check(&g));
        assert!(planarity_bound_check(&catalog::path(2)));
    }

    #[test]
    fn shortest_path_prefers_low_ids() {
        let c4 = catalog::cycle(4);
        assert_eq!(c4.shortest_path(0, 2), Some(vec![0, 1, 2]));
        assert_eq!(c4.shortest_path(3, 3), Some(vec![3]));
        let g = disjoint_union(&[catalog::path(2), catalog::path(2)]);
        assert_eq!(g.shortest_path(0, 3), None);
    }
}
