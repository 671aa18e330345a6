//! Scalable network constructions and p-PST certification.
//!
//! A graph is p-PST when any two vertices can exchange a state with at most
//! `p` perfect transfers, each realized by switching on one gadget. The
//! diameter bound walks a shortest path two hops at a time; the exact search
//! runs a breadth-first search over token positions where one move rides one
//! gadget placement.

use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use serde::Serialize;
use thiserror::Error;

use crate::engineering::{
    simulate_schedule, EngineeringError, Gadget, GadgetKind, Round, Schedule, TokenState,
};
use crate::graph::{glue, metrics, Graph, GraphError, VertexId};

/// Largest host for exact search and placement enumeration.
pub const SEARCH_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuilderError {
    #[error("vertices {0} and {1} are in different components")]
    Disconnected(VertexId, VertexId),
    #[error("no schedule with at most {0} transfers")]
    SearchExhausted(usize),
    #[error("exact search is limited to {SEARCH_CAP} vertices, graph has {0}")]
    InstanceTooLarge(usize),
    #[error("endpoints must be distinct, got {0} twice")]
    IdenticalEndpoints(VertexId),
    #[error("witness schedule failed to re-verify: {0}")]
    Witness(EngineeringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The gadget kinds a search may switch on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLibrary {
    kinds: Vec<GadgetKind>,
}

impl Default for GadgetLibrary {
    fn default() -> Self {
        GadgetLibrary { kinds: GadgetKind::LIBRARY.to_vec() }
    }
}

impl GadgetLibrary {
    pub fn new(kinds: &[GadgetKind]) -> Self {
        let set: BTreeSet<GadgetKind> = kinds.iter().copied().filter(|k| *k != GadgetKind::Custom).collect();
        GadgetLibrary { kinds: set.into_iter().collect() }
    }

    pub fn kinds(&self) -> &[GadgetKind] {
        &self.kinds
    }

    pub fn contains(&self, kind: GadgetKind) -> bool {
        self.kinds.contains(&kind)
    }
}

/// One way of embedding a library gadget in a host graph. Placements need
/// not be induced subgraphs: extra host edges among the vertices stay off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub kind: GadgetKind,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub transfers: Vec<(VertexId, VertexId)>,
}

impl Placement {
    fn new(kind: GadgetKind, vertices: Vec<VertexId>, mut edges: Vec<(VertexId, VertexId)>, pairs: &[(VertexId, VertexId)]) -> Self {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        let transfers = pairs.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
        Placement { kind, vertices, edges, transfers }
    }

    pub fn vertex_set(&self) -> Vec<VertexId> {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn is_disjoint(&self, other: &Placement) -> bool {
        !self.vertices.iter().any(|v| other.contains(*v))
    }

    pub fn to_gadget(&self) -> Gadget {
        let duration = self.kind.pst_duration().expect("library gadget");
        Gadget::new_unchecked(self.kind, self.vertices.clone(), self.edges.clone(), duration, self.transfers.clone())
    }

    fn order_key(&self) -> (GadgetKind, Vec<VertexId>, Vec<(VertexId, VertexId)>) {
        (self.kind, self.vertex_set(), self.edges.clone())
    }
}

fn k2_placements(g: &Graph) -> Vec<Placement> {
    g.edges().iter().map(|&(a, b)| Placement::new(GadgetKind::K2, vec![a, b], vec![(a, b)], &[(a, b)])).collect()
}

fn p3_placements(g: &Graph) -> Vec<Placement> {
    let mut out = Vec::new();
    for m in 0..g.vertex_count() {
        let nbrs = g.neighbors(m);
        for (i, &a) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                out.push(Placement::new(GadgetKind::P3, vec![a, m, c], vec![(a, m), (m, c)], &[(a, c)]));
            }
        }
    }
    out
}

fn q2_placements(g: &Graph) -> Vec<Placement> {
    let mut out = Vec::new();
    for a in 0..g.vertex_count() {
        let nbrs = g.neighbors(a);
        for (i, &b) in nbrs.iter().enumerate() {
            for &d in &nbrs[i + 1..] {
                if b < a || d < a {
                    continue;
                }
                for &c in g.neighbors(b) {
                    if c > a && c != d && g.has_edge(c, d) {
                        out.push(Placement::new(
                            GadgetKind::Q2,
                            vec![a, b, c, d],
                            vec![(a, b), (b, c), (c, d), (d, a)],
                            &[(a, c), (b, d)],
                        ));
                    }
                }
            }
        }
    }
    out
}

fn q3_placements(g: &Graph) -> Vec<Placement> {
    fn extend(g: &Graph, image: &mut Vec<VertexId>, found: &mut Vec<Vec<VertexId>>) {
        let i = image.len();
        if i == 8 {
            if image.iter().all(|&v| v >= image[0]) {
                found.push(image.clone());
            }
            return;
        }
        // cube neighbours of i with smaller index are i with one set bit cleared
        let lower: Vec<VertexId> = (0..3).filter(|b| i & (1 << b) != 0).map(|b| image[i ^ (1 << b)]).collect();
        let anchor = lower[0];
        for &cand in g.neighbors(anchor) {
            if cand < image[0] || image.contains(&cand) || !lower.iter().all(|&w| g.has_edge(w, cand)) {
                continue;
            }
            image.push(cand);
            extend(g, image, found);
            image.pop();
        }
    }
    let mut found = Vec::new();
    for root in 0..g.vertex_count() {
        if g.degree(root) >= 3 {
            extend(g, &mut vec![root], &mut found);
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for image in found {
        let edges: Vec<(VertexId, VertexId)> = (0..8usize)
            .flat_map(|i| (0..3).map(move |b| (i, i ^ (1 << b))))
            .filter(|&(i, j)| i < j)
            .map(|(i, j)| (image[i], image[j]))
            .collect();
        let placement =
            Placement::new(GadgetKind::Q3, image.clone(), edges, &(0..4).map(|i| (image[i], image[7 ^ i])).collect::<Vec<_>>());
        if seen.insert(placement.edges.clone()) {
            out.push(placement);
        }
    }
    out
}

/// Every placement of every library gadget in `host`, ordered by kind, then
/// by sorted vertex ids.
pub fn enumerate_placements(host: &Graph, library: &GadgetLibrary) -> Vec<Placement> {
    let mut out = Vec::new();
    for &kind in library.kinds() {
        out.extend(match kind {
            GadgetKind::K2 => k2_placements(host),
            GadgetKind::P3 => p3_placements(host),
            GadgetKind::Q2 => q2_placements(host),
            GadgetKind::Q3 => q3_placements(host),
            GadgetKind::Custom => Vec::new(),
        });
    }
    out.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
    out
}

/// Placements of a host, indexed by the vertices a token can leave from.
#[derive(Debug, Clone)]
pub struct PlacementIndex {
    placements: Vec<Placement>,
    moves: Vec<Vec<(usize, VertexId)>>,
}

impl PlacementIndex {
    pub fn new(host: &Graph, library: &GadgetLibrary) -> Self {
        let placements = enumerate_placements(host, library);
        let mut moves = vec![Vec::new(); host.vertex_count()];
        for (i, p) in placements.iter().enumerate() {
            for &(s, d) in &p.transfers {
                moves[s].push((i, d));
            }
        }
        PlacementIndex { placements, moves }
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn placement(&self, i: usize) -> &Placement {
        &self.placements[i]
    }

    /// `(placement, destination)` pairs leaving `v`, in placement order.
    pub fn moves_from(&self, v: VertexId) -> &[(usize, VertexId)] {
        &self.moves[v]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundSource {
    #[serde(rename = "DIAMETER_LEMMA")]
    DiameterLemma,
    #[serde(rename = "SEARCH")]
    Search,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PstNumberCertificate {
    pub source: VertexId,
    pub target: VertexId,
    pub p: usize,
    pub bound_source: BoundSource,
    pub witness: Schedule,
    pub total_time: f64,
}

fn check_witness(host: &Graph, cert: &PstNumberCertificate, tol: f64) -> Result<(), BuilderError> {
    let trace = simulate_schedule(host, &cert.witness, &[TokenState::at(0, cert.source)], tol)
        .map_err(BuilderError::Witness)?;
    let end = trace.final_positions(&[TokenState::at(0, cert.source)])[0];
    if end != cert.target || cert.witness.rounds.len() != cert.p {
        return Err(BuilderError::Witness(EngineeringError::TokenCollision { round: None, vertex: end }));
    }
    Ok(())
}

/// Shortest-path bound: `ceil(l / 2)` transfers, P3 gadgets along the path
/// and a final K2 when the length is odd.
pub fn ppst_upper_bound(g: &Graph, u: VertexId, v: VertexId, tol: f64) -> Result<PstNumberCertificate, BuilderError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let path = g.shortest_path(u, v).ok_or(BuilderError::Disconnected(u, v))?;
    let mut rounds = Vec::new();
    let mut i = 0;
    while i + 1 < path.len() {
        let gadget = if i + 2 < path.len() {
            let (a, m, c) = (path[i], path[i + 1], path[i + 2]);
            i += 2;
            Placement::new(GadgetKind::P3, vec![a, m, c], vec![(a, m), (m, c)], &[(a, c)]).to_gadget()
        } else {
            let (a, b) = (path[i], path[i + 1]);
            i += 1;
            Placement::new(GadgetKind::K2, vec![a, b], vec![(a, b)], &[(a, b)]).to_gadget()
        };
        rounds.push(Round::new(vec![gadget]));
    }
    let witness = Schedule::new(rounds);
    let cert = PstNumberCertificate {
        source: u,
        target: v,
        p: witness.rounds.len(),
        bound_source: BoundSource::DiameterLemma,
        total_time: witness.total_time(),
        witness,
    };
    check_witness(g, &cert, tol)?;
    Ok(cert)
}

/// Closed form of the diameter bound's total time for a path of length `l`.
pub fn diameter_bound_time(length: usize) -> f64 {
    (length / 2) as f64 * PI / SQRT_2 + (length % 2) as f64 * FRAC_PI_2
}

/// Breadth-first tree over token positions from one source.
struct SearchTree {
    // (previous vertex, placement used, depth)
    parent: Vec<Option<(VertexId, usize, usize)>>,
    source: VertexId,
}

impl SearchTree {
    fn grow(index: &PlacementIndex, n: usize, source: VertexId, stop_at: Option<VertexId>, max_depth: usize) -> Self {
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[source] = 0;
        let mut queue = VecDeque::from([source]);
        'outer: while let Some(at) = queue.pop_front() {
            if depth[at] == max_depth {
                continue;
            }
            for &(placement, dest) in index.moves_from(at) {
                if depth[dest] == usize::MAX {
                    depth[dest] = depth[at] + 1;
                    parent[dest] = Some((at, placement, depth[dest]));
                    if Some(dest) == stop_at {
                        break 'outer;
                    }
                    queue.push_back(dest);
                }
            }
        }
        SearchTree { parent, source }
    }

    fn depth(&self, v: VertexId) -> Option<usize> {
        if v == self.source {
            Some(0)
        } else {
            self.parent[v].map(|p| p.2)
        }
    }

    fn witness(&self, index: &PlacementIndex, v: VertexId) -> Schedule {
        let mut rounds = Vec::new();
        let mut at = v;
        while let Some((prev, placement, _)) = self.parent[at] {
            rounds.push(Round::new(vec![index.placement(placement).to_gadget()]));
            at = prev;
        }
        rounds.reverse();
        Schedule::new(rounds)
    }
}

/// Minimum number of single-gadget rounds moving a token from `u` to `v`.
/// Ties between equally short schedules go to the placement met first in
/// library order (K2, P3, Q2, Q3).
pub fn ppst_exact(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    library: &GadgetLibrary,
    p_max: usize,
    tol: f64,
) -> Result<PstNumberCertificate, BuilderError> {
    if g.vertex_count() > SEARCH_CAP {
        return Err(BuilderError::InstanceTooLarge(g.vertex_count()));
    }
    let index = PlacementIndex::new(g, library);
    ppst_exact_indexed(g, &index, u, v, p_max, tol)
}

pub fn ppst_exact_indexed(
    g: &Graph,
    index: &PlacementIndex,
    u: VertexId,
    v: VertexId,
    p_max: usize,
    tol: f64,
) -> Result<PstNumberCertificate, BuilderError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if g.bfs(u)[v].is_none() {
        return Err(BuilderError::Disconnected(u, v));
    }
    let tree = SearchTree::grow(index, g.vertex_count(), u, Some(v), p_max);
    let p = tree.depth(v).ok_or(BuilderError::SearchExhausted(p_max))?;
    let witness = tree.witness(index, v);
    let cert = PstNumberCertificate {
        source: u,
        target: v,
        p,
        bound_source: BoundSource::Search,
        total_time: witness.total_time(),
        witness,
    };
    check_witness(g, &cert, tol)?;
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "warning", rename_all = "snake_case")]
pub enum BuildWarning {
    HubNotCentral { hub: VertexId },
    AttachNotCentral { attachment: usize, vertex: VertexId },
    AttachNotOnBoundary { attachment: usize, vertex: VertexId },
    EndpointNotOnBoundary { vertex: VertexId },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub graph: Graph,
    pub warnings: Vec<BuildWarning>,
}

/// Glues every attachment's vertex onto `hub` in turn. The hub keeps its id.
pub fn procedure1(g0: &Graph, hub: VertexId, attachments: &[(Graph, VertexId)]) -> Result<Construction, BuilderError> {
    g0.check_vertex(hub)?;
    let mut warnings = Vec::new();
    if !metrics(g0).is_central(hub) {
        warnings.push(BuildWarning::HubNotCentral { hub });
    }
    let mut graph = g0.clone();
    for (attachment, (gi, vertex)) in attachments.iter().enumerate() {
        let vertex = gi.check_vertex(*vertex)?;
        if !metrics(gi).is_central(vertex) {
            warnings.push(BuildWarning::AttachNotCentral { attachment, vertex });
        }
        if gi.on_boundary(vertex) == Some(false) {
            warnings.push(BuildWarning::AttachNotOnBoundary { attachment, vertex });
        }
        graph = glue(&graph, hub, gi, vertex)?;
    }
    Ok(Construction { graph, warnings })
}

/// Adds `m` new vertices, each joined to both `u` and `v`.
pub fn procedure2(g0: &Graph, u: VertexId, v: VertexId, m: usize) -> Result<Construction, BuilderError> {
    g0.check_vertex(u)?;
    g0.check_vertex(v)?;
    if u == v {
        return Err(BuilderError::IdenticalEndpoints(u));
    }
    let warnings: Vec<BuildWarning> = [u, v]
        .into_iter()
        .filter(|&x| g0.on_boundary(x) == Some(false))
        .map(|vertex| BuildWarning::EndpointNotOnBoundary { vertex })
        .collect();

    let mut labels: Vec<String> = g0.labels().to_vec();
    let mut next = labels.iter().filter_map(|l| l.parse::<i64>().ok()).max().map_or(0, |x| x + 1);
    let mut fresh = Vec::with_capacity(m);
    for _ in 0..m {
        while labels.iter().any(|l| *l == next.to_string()) {
            next += 1;
        }
        fresh.push(next.to_string());
        labels.push(next.to_string());
        next += 1;
    }
    let mut edges: Vec<(String, String)> =
        g0.edges().iter().map(|&(a, b)| (g0.label(a).to_string(), g0.label(b).to_string())).collect();
    for f in &fresh {
        edges.push((g0.label(u).to_string(), f.clone()));
        edges.push((g0.label(v).to_string(), f.clone()));
    }
    let boundary: Option<Vec<String>> = g0.boundary().map(|b| {
        b.iter().map(|&x| g0.label(x).to_string()).chain(fresh.iter().cloned()).collect()
    });
    let graph = Graph::build(&labels, &edges, boundary.as_deref())?;
    Ok(Construction { graph, warnings })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairCertificate {
    pub source: VertexId,
    pub target: VertexId,
    /// `None` when the pair is disconnected.
    pub p: Option<usize>,
    pub bound_source: BoundSource,
    pub total_time: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificationVerdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkCertificate {
    pub p_target: usize,
    pub verdict: CertificationVerdict,
    pub max_p: Option<usize>,
    pub max_total_time: f64,
    pub pairs: Vec<PairCertificate>,
}

/// Certifies every unordered vertex pair. Hosts within [`SEARCH_CAP`] use
/// the exact search, larger ones the diameter bound.
pub fn certify_network(g: &Graph, p_target: usize, library: &GadgetLibrary) -> NetworkCertificate {
    let n = g.vertex_count();
    let exact = n <= SEARCH_CAP;
    let index = exact.then(|| PlacementIndex::new(g, library));
    let mut pairs = Vec::new();
    for u in 0..n {
        let tree = index.as_ref().map(|ix| SearchTree::grow(ix, n, u, None, usize::MAX));
        for v in u + 1..n {
            let cert = match (&tree, &index) {
                (Some(tree), Some(ix)) => tree.depth(v).map(|p| PairCertificate {
                    source: u,
                    target: v,
                    p: Some(p),
                    bound_source: BoundSource::Search,
                    total_time: Some(tree.witness(ix, v).total_time()),
                }),
                _ => g.bfs(u)[v].map(|len| PairCertificate {
                    source: u,
                    target: v,
                    p: Some(len.div_ceil(2)),
                    bound_source: BoundSource::DiameterLemma,
                    total_time: Some(diameter_bound_time(len)),
                }),
            };
            pairs.push(cert.unwrap_or(PairCertificate {
                source: u,
                target: v,
                p: None,
                bound_source: if exact { BoundSource::Search } else { BoundSource::DiameterLemma },
                total_time: None,
            }));
        }
    }
    let all_connected = pairs.iter().all(|p| p.p.is_some());
    let max_p = pairs.iter().filter_map(|p| p.p).max();
    let max_total_time = pairs.iter().filter_map(|p| p.total_time).fold(0.0, f64::max);
    let pass = all_connected && max_p.unwrap_or(0) <= p_target;
    NetworkCertificate {
        p_target,
        verdict: if pass { CertificationVerdict::Pass } else { CertificationVerdict::Fail },
        max_p,
        max_total_time,
        pairs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::graph::{disjoint_union, metrics};
    use crate::spectral::{find_pst_time, DEFAULT_TOLERANCE};

    const TOL: f64 = DEFAULT_TOLERANCE;

    #[test]
    fn placement_counts() {
        let lib = GadgetLibrary::default();
        let q3 = catalog::hypercube_q3();
        let count = |kind| enumerate_placements(&q3, &lib).iter().filter(|p| p.kind == kind).count();
        assert_eq!(count(GadgetKind::K2), 12);
        // 8 vertices with C(3,2) neighbour pairs each
        assert_eq!(count(GadgetKind::P3), 24);
        assert_eq!(count(GadgetKind::Q2), 6);
        assert_eq!(count(GadgetKind::Q3), 1);

        let c4 = catalog::cycle(4);
        assert_eq!(enumerate_placements(&c4, &lib).iter().filter(|p| p.kind == GadgetKind::Q2).count(), 1);
        // K4 holds three distinct 4-cycles
        let k4 = catalog::complete(4);
        assert_eq!(enumerate_placements(&k4, &lib).iter().filter(|p| p.kind == GadgetKind::Q2).count(), 3);
        assert_eq!(enumerate_placements(&catalog::cube_with_pendants(), &lib).iter().filter(|p| p.kind == GadgetKind::Q3).count(), 1);
    }

    #[test]
    fn placements_are_perfect_transfers() {
        let lib = GadgetLibrary::default();
        for p in enumerate_placements(&catalog::cube_with_pendants(), &lib) {
            let gadget = p.to_gadget();
            let round = Round::new(vec![gadget.clone()]);
            for &(s, d) in gadget.transfers() {
                let e = crate::engineering::round_unitary_entry(&round, s, d).unwrap();
                assert!(e.magnitude >= 1.0 - TOL, "{p:?} {s}->{d}: {}", e.magnitude);
            }
        }
    }

    #[test]
    fn upper_bound_examples() {
        let g = catalog::labeled_path4();
        let cert = ppst_upper_bound(&g, 0, 3, TOL).unwrap();
        assert_eq!(cert.p, 2);
        assert!((cert.total_time - (PI / SQRT_2 + FRAC_PI_2)).abs() < 1e-12);
        assert_eq!(cert.witness.rounds[0].gadgets[0].kind(), GadgetKind::P3);
        assert_eq!(cert.witness.rounds[1].gadgets[0].kind(), GadgetKind::K2);

        let same = ppst_upper_bound(&g, 2, 2, TOL).unwrap();
        assert_eq!(same.p, 0);
        assert!(same.witness.rounds.is_empty());

        // opposite outer corners of two squares of the four-square hub graph
        let g = catalog::four_squares();
        let d = metrics(&g).distances[2][5].unwrap();
        assert_eq!(d, 4);
        let cert = ppst_upper_bound(&g, 2, 5, TOL).unwrap();
        assert_eq!(cert.p, 2);
        assert!((cert.total_time - SQRT_2 * PI).abs() < 1e-12);

        let split = disjoint_union(&[catalog::path(2), catalog::path(2)]);
        assert_eq!(ppst_upper_bound(&split, 0, 2, TOL), Err(BuilderError::Disconnected(0, 2)));
    }

    #[test]
    fn exact_examples() {
        let lib = GadgetLibrary::default();
        assert_eq!(ppst_exact(&catalog::hypercube_q3(), 0, 7, &lib, 8, TOL).unwrap().p, 1);
        let only_k2 = GadgetLibrary::new(&[GadgetKind::K2]);
        assert_eq!(ppst_exact(&catalog::path(3), 0, 2, &only_k2, 8, TOL).unwrap().p, 2);
        let k2_p3 = GadgetLibrary::new(&[GadgetKind::K2, GadgetKind::P3]);
        assert_eq!(ppst_exact(&catalog::path(3), 0, 2, &k2_p3, 8, TOL).unwrap().p, 1);

        assert_eq!(ppst_exact(&catalog::path(7), 0, 6, &lib, 2, TOL), Err(BuilderError::SearchExhausted(2)));
        let split = disjoint_union(&[catalog::path(2), catalog::path(2)]);
        assert_eq!(ppst_exact(&split, 0, 3, &lib, 4, TOL), Err(BuilderError::Disconnected(0, 3)));
        assert_eq!(
            ppst_exact(&catalog::path(33), 0, 1, &lib, 4, TOL),
            Err(BuilderError::InstanceTooLarge(33))
        );
    }

    #[test]
    fn procedure1_examples() {
        let c4 = catalog::cycle(4);
        let attachments = vec![(c4.clone(), 0); 4];
        let built = procedure1(&catalog::path(1), 0, &attachments).unwrap();
        assert!(built.warnings.is_empty());
        assert_eq!(built.graph.vertex_count(), 1 + 4 * 4 - 4);
        assert_eq!(metrics(&built.graph).diameter(), Some(4));
        assert_eq!(built.graph, catalog::four_squares());
        assert_eq!(certify_network(&built.graph, 2, &GadgetLibrary::default()).verdict, CertificationVerdict::Pass);

        let same = procedure1(&c4, 1, &[]).unwrap();
        assert_eq!(same.graph, c4);

        let p2 = catalog::path(2);
        let built = procedure1(&catalog::path(1), 0, &[(p2.clone(), 0), (p2, 0)]).unwrap();
        assert_eq!(built.graph, catalog::path(3).with_edges(&[(0, 1), (0, 2)], None).unwrap());
        assert_eq!(metrics(&built.graph).diameter(), Some(2));
        // endpoints of P2 are central; the P3 end is not
        assert_eq!(built.warnings, vec![]);
        let warned = procedure1(&catalog::path(3), 0, &[]).unwrap();
        assert_eq!(warned.warnings, vec![BuildWarning::HubNotCentral { hub: 0 }]);
    }

    #[test]
    fn procedure2_examples() {
        let c4 = catalog::cycle(4);
        let built = procedure2(&c4, 0, 2, 4).unwrap();
        assert_eq!(built.graph, catalog::square_with_bridges(4));
        assert_eq!(built.graph.edge_count(), 4 + 2 * 4);
        assert_eq!(procedure2(&c4, 0, 2, 0).unwrap().graph, c4);

        let k23 = procedure2(&c4, 0, 2, 1).unwrap().graph;
        let (t, _) = find_pst_time(&k23, 0, 2, 4.0, TOL).unwrap().unwrap();
        assert!((t - PI / 6.0_f64.sqrt()).abs() < 1e-6);

        assert_eq!(procedure2(&c4, 1, 1, 2), Err(BuilderError::IdenticalEndpoints(1)));
        assert_eq!(procedure2(&c4, 0, 7, 2), Err(BuilderError::Graph(GraphError::InvalidVertex(7))));
    }

    #[test]
    fn certification_examples() {
        let lib = GadgetLibrary::default();
        assert_eq!(certify_network(&catalog::path(2), 1, &lib).verdict, CertificationVerdict::Pass);
        let p6 = certify_network(&catalog::path(6), 2, &lib);
        assert_eq!(p6.verdict, CertificationVerdict::Fail);
        assert_eq!(p6.max_p, Some(3));

        let four_squares = certify_network(&catalog::four_squares(), 2, &lib);
        assert_eq!(four_squares.max_p, Some(2));
        assert!((four_squares.max_total_time - SQRT_2 * PI).abs() < 1e-9);

        let split = certify_network(&disjoint_union(&[catalog::path(2), catalog::path(2)]), 4, &lib);
        assert_eq!(split.verdict, CertificationVerdict::Fail);
    }

    #[test]
    fn diameter_bound_closed_form() {
        assert_eq!(diameter_bound_time(0), 0.0);
        assert!((diameter_bound_time(3) - (PI / SQRT_2 + FRAC_PI_2)).abs() < 1e-15);
        assert!((diameter_bound_time(4) - SQRT_2 * PI).abs() < 1e-12);
    }
}
