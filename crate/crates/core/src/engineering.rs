//! Switchable-edge schedules: gadgets, rounds and multi-token transport.
//!
//! A round switches on a set of vertex-disjoint gadgets and leaves every
//! other vertex isolated. Each gadget evolves for its own duration from the
//! start of the round, then its edges switch off and its vertices freeze
//! until the longest gadget of the round has finished. Within a round the
//! evolution is therefore block-diagonal: a gadget block `exp(-i A_g tau_g)`
//! per gadget and the identity on every isolated vertex.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{disjoint_union, Graph, GraphError, VertexId};
use crate::spectral::{principal_phase, AmplitudeReport, Evolution, SpectralError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GadgetKind {
    K2,
    P3,
    Q2,
    Q3,
    #[serde(rename = "CUSTOM")]
    Custom,
}

impl GadgetKind {
    pub const LIBRARY: [GadgetKind; 4] = [GadgetKind::K2, GadgetKind::P3, GadgetKind::Q2, GadgetKind::Q3];

    /// Computed PST time of the library gadget between its antipodal pair.
    pub fn pst_duration(self) -> Option<f64> {
        match self {
            GadgetKind::K2 | GadgetKind::Q2 | GadgetKind::Q3 => Some(FRAC_PI_2),
            GadgetKind::P3 => Some(PI / SQRT_2),
            GadgetKind::Custom => None,
        }
    }

    /// `(vertices, edges)` of the library shape.
    pub fn shape(self) -> Option<(usize, usize)> {
        match self {
            GadgetKind::K2 => Some((2, 1)),
            GadgetKind::P3 => Some((3, 2)),
            GadgetKind::Q2 => Some((4, 4)),
            GadgetKind::Q3 => Some((8, 12)),
            GadgetKind::Custom => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::K2 => "K2",
            GadgetKind::P3 => "P3",
            GadgetKind::Q2 => "Q2",
            GadgetKind::Q3 => "Q3",
            GadgetKind::Custom => "CUSTOM",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GadgetError {
    #[error("gadget vertex {0} is not a host vertex")]
    UnknownVertex(VertexId),
    #[error("gadget vertex {0} listed twice")]
    RepeatedVertex(VertexId),
    #[error("gadget edge ({0}, {1}) is not a host edge")]
    EdgeNotInHost(VertexId, VertexId),
    #[error("gadget edge ({0}, {1}) leaves the gadget's vertex set")]
    EdgeOutsideGadget(VertexId, VertexId),
    #[error("transfer ({0}, {1}) leaves the gadget's vertex set")]
    TransferOutsideGadget(VertexId, VertexId),
    #[error("gadget duration must be positive and finite, got {0}")]
    BadDuration(f64),
    #[error("{kind:?} gadget needs {want_vertices} vertices and {want_edges} edges, got {vertices} and {edges}")]
    ShapeMismatch {
        kind: GadgetKind,
        want_vertices: usize,
        want_edges: usize,
        vertices: usize,
        edges: usize,
    },
    #[error("custom gadget transfer ({0}, {1}) has magnitude {2} at its duration")]
    NotPst(VertexId, VertexId, f64),
    #[error("gadget has no vertices")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineeringError {
    #[error("round {round}: vertex {vertex} belongs to more than one gadget")]
    InvalidRound { round: usize, vertex: VertexId },
    #[error("tokens collide at vertex {vertex} after round {round:?}")]
    TokenCollision { round: Option<usize>, vertex: VertexId },
    #[error("round {round}: token {token} keeps only magnitude {magnitude}")]
    AmplitudeLoss { round: usize, token: usize, magnitude: f64 },
    #[error("token {token} starts at invalid vertex {vertex}")]
    InvalidToken { token: usize, vertex: VertexId },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// A PST-capable subgraph switched on for `duration`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gadget {
    kind: GadgetKind,
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    duration: f64,
    transfers: Vec<(VertexId, VertexId)>,
}

impl Gadget {
    /// Validates the gadget against `host`. Custom gadgets must carry a
    /// perfect transfer on every declared pair at `duration`; library kinds
    /// are only checked for shape so that wrong durations surface later as
    /// amplitude losses.
    pub fn new(
        host: &Graph,
        kind: GadgetKind,
        vertices: Vec<VertexId>,
        edges: Vec<(VertexId, VertexId)>,
        duration: f64,
        transfers: Vec<(VertexId, VertexId)>,
        tol: f64,
    ) -> Result<Self, GadgetError> {
        if vertices.is_empty() {
            return Err(GadgetError::Empty);
        }
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if v >= host.vertex_count() {
                return Err(GadgetError::UnknownVertex(v));
            }
            if !seen.insert(v) {
                return Err(GadgetError::RepeatedVertex(v));
            }
        }
        for &(a, b) in &edges {
            if !seen.contains(&a) || !seen.contains(&b) {
                return Err(GadgetError::EdgeOutsideGadget(a, b));
            }
            if !host.has_edge(a, b) {
                return Err(GadgetError::EdgeNotInHost(a, b));
            }
        }
        for &(a, b) in &transfers {
            if !seen.contains(&a) || !seen.contains(&b) {
                return Err(GadgetError::TransferOutsideGadget(a, b));
            }
        }
        if !(duration.is_finite() && duration > 0.0) {
            return Err(GadgetError::BadDuration(duration));
        }
        if let Some((want_vertices, want_edges)) = kind.shape() {
            if vertices.len() != want_vertices || edges.len() != want_edges {
                return Err(GadgetError::ShapeMismatch {
                    kind,
                    want_vertices,
                    want_edges,
                    vertices: vertices.len(),
                    edges: edges.len(),
                });
            }
        }
        let gadget = Gadget { kind, vertices, edges, duration, transfers };
        if kind == GadgetKind::Custom {
            let evo = Evolution::new(&gadget.local_graph()?).map_err(|_| GadgetError::Empty)?;
            for &(a, b) in &gadget.transfers {
                let m = evo.spectrum().amplitude(gadget.local(a), gadget.local(b), duration).norm();
                if m < 1.0 - tol {
                    return Err(GadgetError::NotPst(a, b, m));
                }
            }
        }
        Ok(gadget)
    }

    pub(crate) fn new_unchecked(
        kind: GadgetKind,
        vertices: Vec<VertexId>,
        edges: Vec<(VertexId, VertexId)>,
        duration: f64,
        transfers: Vec<(VertexId, VertexId)>,
    ) -> Self {
        Gadget { kind, vertices, edges, duration, transfers }
    }

    pub fn kind(&self) -> GadgetKind {
        self.kind
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn transfers(&self) -> &[(VertexId, VertexId)] {
        &self.transfers
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn transfer_from(&self, v: VertexId) -> Option<VertexId> {
        self.transfers.iter().find(|&&(s, _)| s == v).map(|&(_, d)| d)
    }

    pub fn with_duration(&self, duration: f64) -> Self {
        Gadget { duration, ..self.clone() }
    }

    fn local(&self, v: VertexId) -> usize {
        self.vertices.iter().position(|&w| w == v).expect("vertex belongs to gadget")
    }

    /// The gadget as a standalone graph on `0..k` in vertex-list order.
    pub fn local_graph(&self) -> Result<Graph, GraphError> {
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (self.local(a), self.local(b))).collect();
        Graph::from_edges(self.vertices.len(), &edges)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Round {
    pub gadgets: Vec<Gadget>,
}

impl Round {
    pub fn new(gadgets: Vec<Gadget>) -> Self {
        Round { gadgets }
    }

    /// Length of the round: the longest gadget duration, zero when idle.
    pub fn duration(&self) -> f64 {
        self.gadgets.iter().map(Gadget::duration).fold(0.0, f64::max)
    }

    pub fn is_idle(&self) -> bool {
        self.gadgets.is_empty()
    }

    pub fn gadget_of(&self, v: VertexId) -> Option<&Gadget> {
        self.gadgets.iter().find(|g| g.contains(v))
    }

    /// First vertex shared by two gadgets, if any.
    pub fn overlap(&self) -> Option<VertexId> {
        let mut seen = BTreeSet::new();
        for g in &self.gadgets {
            for &v in g.vertices() {
                if !seen.insert(v) {
                    return Some(v);
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule {
    pub rounds: Vec<Round>,
}

impl Schedule {
    pub fn new(rounds: Vec<Round>) -> Self {
        Schedule { rounds }
    }

    pub fn total_time(&self) -> f64 {
        self.rounds.iter().map(Round::duration).sum()
    }

    pub fn active_rounds(&self) -> usize {
        self.rounds.iter().filter(|r| !r.is_idle()).count()
    }
}

/// Replaces every gadget duration by its perfect-transfer time: the catalog
/// time for library kinds, the earliest time in `(0, t_max]` for custom ones.
pub fn correct_durations(schedule: &Schedule, t_max: f64, tol: f64) -> Result<Schedule, EngineeringError> {
    let mut out = schedule.clone();
    for gadget in out.rounds.iter_mut().flat_map(|r| r.gadgets.iter_mut()) {
        let tau = match gadget.kind.pst_duration() {
            Some(tau) => tau,
            None => {
                let Some(&(a, b)) = gadget.transfers.first() else { continue };
                let local = gadget.local_graph()?;
                match Evolution::new(&local)?.find_pst_time(gadget.local(a), gadget.local(b), t_max, tol)? {
                    Some((tau, _)) => tau,
                    None => continue,
                }
            }
        };
        *gadget = gadget.with_duration(tau);
    }
    Ok(out)
}

/// Evolution operator of one round, with the gadget spectra cached.
pub struct RoundEvolution<'a> {
    round: &'a Round,
    evolutions: Vec<Evolution>,
}

impl<'a> RoundEvolution<'a> {
    pub fn new(round: &'a Round, index: usize) -> Result<Self, EngineeringError> {
        if let Some(vertex) = round.overlap() {
            return Err(EngineeringError::InvalidRound { round: index, vertex });
        }
        let evolutions = round
            .gadgets
            .iter()
            .map(|g| Ok(Evolution::new(&g.local_graph()?)?))
            .collect::<Result<Vec<_>, EngineeringError>>()?;
        Ok(RoundEvolution { round, evolutions })
    }

    /// `<v| U_round |u>`.
    pub fn entry(&self, u: VertexId, v: VertexId) -> AmplitudeReport {
        let owner = |x| self.round.gadgets.iter().position(|g| g.contains(x));
        match (owner(u), owner(v)) {
            (None, None) => {
                let a = if u == v { 1.0 } else { 0.0 };
                AmplitudeReport::new(u, v, self.round.duration(), Complex64::new(a, 0.0))
            }
            (Some(i), Some(j)) if i == j => {
                let g = &self.round.gadgets[i];
                let a = self.evolutions[i].spectrum().amplitude(g.local(u), g.local(v), g.duration());
                AmplitudeReport::new(u, v, g.duration(), a)
            }
            _ => AmplitudeReport::new(u, v, self.round.duration(), Complex64::new(0.0, 0.0)),
        }
    }
}

pub fn round_unitary_entry(round: &Round, u: VertexId, v: VertexId) -> Result<AmplitudeReport, EngineeringError> {
    Ok(RoundEvolution::new(round, 0)?.entry(u, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TokenState {
    pub token: usize,
    pub position: VertexId,
    pub accumulated_phase: f64,
}

impl TokenState {
    pub fn at(token: usize, position: VertexId) -> Self {
        TokenState { token, position, accumulated_phase: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TokenSnapshot {
    pub token: usize,
    pub position: VertexId,
    pub accumulated_phase: f64,
    /// Product of per-round magnitudes so far.
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundTrace {
    pub index: usize,
    pub duration: f64,
    pub tokens: Vec<TokenSnapshot>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransportTrace {
    pub rounds: Vec<RoundTrace>,
    pub total_time: f64,
}

impl TransportTrace {
    pub fn final_positions(&self, initial: &[TokenState]) -> Vec<VertexId> {
        match self.rounds.last() {
            Some(r) => r.tokens.iter().map(|t| t.position).collect(),
            None => initial.iter().map(|t| t.position).collect(),
        }
    }
}

fn first_repeat(positions: impl IntoIterator<Item = VertexId>) -> Option<VertexId> {
    let mut seen = BTreeSet::new();
    positions.into_iter().find(|&p| !seen.insert(p))
}

fn wrap_phase(x: f64) -> f64 {
    principal_phase(Complex64::from_polar(1.0, x))
}

/// Moves every token through the schedule. A token inside a gadget rides the
/// gadget's transfer from its position if one exists, otherwise it must
/// return to itself with magnitude at least `1 - tol`.
pub fn simulate_schedule(
    host: &Graph,
    schedule: &Schedule,
    tokens: &[TokenState],
    tol: f64,
) -> Result<TransportTrace, EngineeringError> {
    for t in tokens {
        if t.position >= host.vertex_count() {
            return Err(EngineeringError::InvalidToken { token: t.token, vertex: t.position });
        }
    }
    if let Some(vertex) = first_repeat(tokens.iter().map(|t| t.position)) {
        return Err(EngineeringError::TokenCollision { round: None, vertex });
    }
    let mut state: Vec<TokenSnapshot> = tokens
        .iter()
        .map(|t| TokenSnapshot {
            token: t.token,
            position: t.position,
            accumulated_phase: t.accumulated_phase,
            magnitude: 1.0,
        })
        .collect();
    let mut rounds = Vec::with_capacity(schedule.rounds.len());
    for (index, round) in schedule.rounds.iter().enumerate() {
        let evo = RoundEvolution::new(round, index)?;
        for tok in &mut state {
            let target = round
                .gadget_of(tok.position)
                .and_then(|g| g.transfer_from(tok.position))
                .unwrap_or(tok.position);
            let entry = evo.entry(tok.position, target);
            if entry.magnitude < 1.0 - tol {
                return Err(EngineeringError::AmplitudeLoss {
                    round: index,
                    token: tok.token,
                    magnitude: entry.magnitude,
                });
            }
            tok.position = target;
            tok.accumulated_phase = wrap_phase(tok.accumulated_phase + entry.phase);
            tok.magnitude *= entry.magnitude;
        }
        if let Some(vertex) = first_repeat(state.iter().map(|t| t.position)) {
            return Err(EngineeringError::TokenCollision { round: Some(index), vertex });
        }
        rounds.push(RoundTrace { index, duration: round.duration(), tokens: state.clone() });
    }
    Ok(TransportTrace { rounds, total_time: schedule.total_time() })
}

/// Checks that every part keeps its perfect transfer inside the disjoint
/// union of all parts.
pub fn verify_union_lemma(parts: &[(Graph, VertexId, VertexId, f64)], tol: f64) -> bool {
    let graphs: Vec<Graph> = parts.iter().map(|p| p.0.clone()).collect();
    let union = disjoint_union(&graphs);
    let evo = match Evolution::new(&union) {
        Ok(e) => e,
        Err(_) => return false,
    };
    let mut offset = 0;
    for (g, u, v, tau) in parts {
        match evo.check_pst(u + offset, v + offset, *tau, tol) {
            Ok(cert) if cert.is_pst() => {}
            _ => return false,
        }
        offset += g.vertex_count();
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::spectral::DEFAULT_TOLERANCE;

    const TOL: f64 = DEFAULT_TOLERANCE;

    fn k2(host: &Graph, a: &str, b: &str) -> Gadget {
        let (a, b) = (host.vertex(a).unwrap(), host.vertex(b).unwrap());
        Gadget::new(host, GadgetKind::K2, vec![a, b], vec![(a, b)], FRAC_PI_2, vec![(a, b), (b, a)], TOL).unwrap()
    }

    fn p3(host: &Graph, a: &str, m: &str, b: &str) -> Gadget {
        let [a, m, b] = [a, m, b].map(|l| host.vertex(l).unwrap());
        Gadget::new(host, GadgetKind::P3, vec![a, m, b], vec![(a, m), (m, b)], PI / SQRT_2, vec![(a, b), (b, a)], TOL)
            .unwrap()
    }

    fn q2(host: &Graph, cycle: [&str; 4], duration: f64) -> Gadget {
        let c = cycle.map(|l| host.vertex(l).unwrap());
        let edges = (0..4).map(|i| (c[i], c[(i + 1) % 4])).collect();
        let transfers = vec![(c[0], c[2]), (c[2], c[0]), (c[1], c[3]), (c[3], c[1])];
        Gadget::new(host, GadgetKind::Q2, c.to_vec(), edges, duration, transfers, TOL).unwrap()
    }

    #[test]
    fn gadget_validation() {
        let host = catalog::labeled_path4();
        let v = |l| host.vertex(l).unwrap();
        assert_eq!(
            Gadget::new(&host, GadgetKind::K2, vec![v("1"), v("3")], vec![(v("1"), v("3"))], 1.0, vec![], TOL),
            Err(GadgetError::EdgeNotInHost(v("1"), v("3")))
        );
        assert!(matches!(
            Gadget::new(&host, GadgetKind::P3, vec![v("1"), v("2")], vec![(v("1"), v("2"))], 1.0, vec![], TOL),
            Err(GadgetError::ShapeMismatch { .. })
        ));
        assert!(matches!(
            Gadget::new(&host, GadgetKind::K2, vec![v("1"), v("2")], vec![(v("1"), v("2"))], 0.0, vec![], TOL),
            Err(GadgetError::BadDuration(_))
        ));
        // a custom P4 has no end-to-end PST
        let all: Vec<_> = (0..4).collect();
        let edges = host.edges().to_vec();
        assert!(matches!(
            Gadget::new(&host, GadgetKind::Custom, all.clone(), edges.clone(), 2.0, vec![(0, 3)], TOL),
            Err(GadgetError::NotPst(0, 3, _))
        ));
        // but a custom P3 at its PST time is fine
        assert!(Gadget::new(&host, GadgetKind::Custom, vec![0, 1, 2], edges[..2].to_vec(), PI / SQRT_2, vec![(0, 2)], TOL)
            .is_ok());
    }

    #[test]
    fn round_entries() {
        let host = catalog::labeled_path4();
        let round = Round::new(vec![k2(&host, "1", "2")]);
        let e = round_unitary_entry(&round, 0, 1).unwrap();
        assert!((e.magnitude - 1.0).abs() < 1e-12);
        let e = round_unitary_entry(&round, 2, 2).unwrap();
        assert_eq!(e.amplitude, Complex64::new(1.0, 0.0));
        let e = round_unitary_entry(&round, 0, 2).unwrap();
        assert_eq!(e.amplitude, Complex64::new(0.0, 0.0));

        let host = catalog::cube_with_pendants();
        let round = Round::new(vec![p3(&host, "14", "7", "2")]);
        let seven = host.vertex("7").unwrap();
        let e = round_unitary_entry(&round, seven, seven).unwrap();
        assert!((e.amplitude - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn overlapping_round_is_rejected() {
        let host = catalog::labeled_path4();
        let round = Round::new(vec![k2(&host, "1", "2"), k2(&host, "2", "3")]);
        assert_eq!(
            round_unitary_entry(&round, 0, 1),
            Err(EngineeringError::InvalidRound { round: 0, vertex: 1 })
        );
    }

    #[test]
    fn labeled_path_transport() {
        let host = catalog::labeled_path4();
        let schedule = Schedule::new(vec![
            Round::new(vec![p3(&host, "1", "2", "3")]),
            Round::new(vec![k2(&host, "3", "4")]),
        ]);
        let trace = simulate_schedule(&host, &schedule, &[TokenState::at(0, 0)], TOL).unwrap();
        assert_eq!(trace.rounds.len(), 2);
        assert_eq!(trace.final_positions(&[]), vec![host.vertex("4").unwrap()]);
        assert!((trace.total_time - (PI / SQRT_2 + FRAC_PI_2)).abs() < 1e-12);
        assert!((trace.rounds[1].tokens[0].magnitude - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_schedule_leaves_tokens() {
        let host = catalog::square_with_pendants();
        let tokens = [TokenState::at(0, 0), TokenState::at(1, 5)];
        let trace = simulate_schedule(&host, &Schedule::default(), &tokens, TOL).unwrap();
        assert!(trace.rounds.is_empty());
        assert_eq!(trace.final_positions(&tokens), vec![0, 5]);
        assert_eq!(trace.total_time, 0.0);
    }

    #[test]
    fn square_schedule_moves_both_tokens() {
        let host = catalog::square_with_pendants();
        let schedule = Schedule::new(vec![
            Round::new(vec![k2(&host, "1", "2"), k2(&host, "6", "7")]),
            Round::new(vec![q2(&host, ["2", "3", "8", "7"], FRAC_PI_2)]),
            Round::new(vec![k2(&host, "3", "4"), k2(&host, "8", "5")]),
        ]);
        let v = |l| host.vertex(l).unwrap();
        let tokens = [TokenState::at(1, v("1")), TokenState::at(2, v("6"))];
        let trace = simulate_schedule(&host, &schedule, &tokens, TOL).unwrap();
        assert_eq!(trace.final_positions(&tokens), vec![v("5"), v("4")]);

        // at pi/sqrt(2) the square drops the amplitude
        let mut literal = schedule.clone();
        literal.rounds[1] = Round::new(vec![q2(&host, ["2", "3", "8", "7"], PI / SQRT_2)]);
        match simulate_schedule(&host, &literal, &tokens, TOL) {
            Err(EngineeringError::AmplitudeLoss { round: 1, magnitude, .. }) => {
                assert!((magnitude - 0.633).abs() < 1e-3)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn collisions_are_reported() {
        let host = catalog::path(3);
        let g = Gadget::new(&host, GadgetKind::K2, vec![0, 1], vec![(0, 1)], FRAC_PI_2, vec![(0, 1)], TOL).unwrap();
        let schedule = Schedule::new(vec![Round::new(vec![g])]);
        // the token at 1 has no declared transfer and loses its amplitude
        let err = simulate_schedule(&host, &schedule, &[TokenState::at(0, 0), TokenState::at(1, 1)], TOL);
        assert!(matches!(err, Err(EngineeringError::AmplitudeLoss { token: 1, .. })));

        let g = Gadget::new(&host, GadgetKind::K2, vec![0, 1], vec![(0, 1)], FRAC_PI_2, vec![(0, 1)], TOL).unwrap();
        let schedule = Schedule::new(vec![Round::new(vec![g])]);
        let err = simulate_schedule(&host, &schedule, &[TokenState::at(0, 0), TokenState::at(1, 0)], TOL);
        assert_eq!(err.unwrap_err(), EngineeringError::TokenCollision { round: None, vertex: 0 });
    }

    #[test]
    fn union_lemma_examples() {
        let pi2 = FRAC_PI_2;
        assert!(verify_union_lemma(&[(catalog::path(2), 0, 1, pi2), (catalog::path(3), 0, 2, PI / SQRT_2)], TOL));
        assert!(verify_union_lemma(&[(catalog::hypercube_q3(), 0, 7, pi2), (catalog::path(2), 0, 1, pi2)], TOL));
        assert!(verify_union_lemma(&[(catalog::path(2), 0, 1, pi2)], TOL));
        assert!(!verify_union_lemma(&[(catalog::cycle(4), 0, 2, PI / SQRT_2)], TOL));
    }
}
