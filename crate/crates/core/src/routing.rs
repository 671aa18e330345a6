//! Multi-token routing with switched gadgets.
//!
//! Each net moves one token from its sender to its receiver. A routing table
//! pairs a schedule of rounds with one itinerary per net, where every cell
//! either rides a gadget transfer or keeps the token in place.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::builder::{GadgetLibrary, Placement, PlacementIndex};
use crate::engineering::{Round, RoundEvolution, Schedule};
use crate::graph::{metrics, Graph, GraphError, VertexId};
use crate::spectral::principal_phase;

pub const EXACT_MAX_VERTICES: usize = 20;
pub const EXACT_MAX_NETS: usize = 4;
pub const CLASSICAL_MAX_NETS: usize = 4;
pub const CLASSICAL_MAX_EDGES: usize = 40;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RoutingError {
    #[error("net {net}: sender and receiver are both {vertex}")]
    SameEndpoints { net: usize, vertex: VertexId },
    #[error("vertex {vertex} is a terminal of more than one net")]
    SharedTerminal { vertex: VertexId },
    #[error("net {net}: terminal {vertex} is not on the declared boundary")]
    NotOnBoundary { net: usize, vertex: VertexId },
    #[error("net id {0} used twice")]
    DuplicateNetId(usize),
    #[error("instance too large: {vertices} vertices, {edges} edges, {nets} nets")]
    InstanceTooLarge { vertices: usize, edges: usize, nets: usize },
    #[error("no routing found within {round_cap} rounds")]
    NoSolution { round_cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Net {
    pub id: usize,
    pub sender: VertexId,
    pub receiver: VertexId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoutingProblem {
    host: Graph,
    nets: Vec<Net>,
}

impl RoutingProblem {
    pub fn new(host: Graph, nets: Vec<Net>) -> Result<Self, RoutingError> {
        let mut ids = BTreeSet::new();
        let mut terminals = BTreeSet::new();
        for net in &nets {
            if !ids.insert(net.id) {
                return Err(RoutingError::DuplicateNetId(net.id));
            }
            host.check_vertex(net.sender)?;
            host.check_vertex(net.receiver)?;
            if net.sender == net.receiver {
                return Err(RoutingError::SameEndpoints { net: net.id, vertex: net.sender });
            }
            for vertex in [net.sender, net.receiver] {
                if host.on_boundary(vertex) == Some(false) {
                    return Err(RoutingError::NotOnBoundary { net: net.id, vertex });
                }
                if !terminals.insert(vertex) {
                    return Err(RoutingError::SharedTerminal { vertex });
                }
            }
        }
        Ok(RoutingProblem { host, nets })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn nets(&self) -> &[Net] {
        &self.nets
    }

    pub fn net(&self, id: usize) -> Option<&Net> {
        self.nets.iter().find(|n| n.id == id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Idle(VertexId),
    Transfer(VertexId, VertexId),
}

impl Cell {
    pub fn entry(self) -> VertexId {
        match self {
            Cell::Idle(v) | Cell::Transfer(v, _) => v,
        }
    }

    pub fn exit(self) -> VertexId {
        match self {
            Cell::Idle(v) | Cell::Transfer(_, v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Itinerary {
    pub net: usize,
    pub cells: Vec<Cell>,
}

/// One itinerary per net, one cell per schedule round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutingTable {
    pub itineraries: Vec<Itinerary>,
    pub schedule: Schedule,
}

impl RoutingTable {
    pub fn round_count(&self) -> usize {
        self.schedule.rounds.len()
    }

    pub fn active_rounds(&self) -> usize {
        self.schedule.active_rounds()
    }

    /// Drops round `j` from the schedule and from every itinerary.
    pub fn without_round(&self, j: usize) -> RoutingTable {
        let mut t = self.clone();
        t.schedule.rounds.remove(j);
        for it in &mut t.itineraries {
            if j < it.cells.len() {
                it.cells.remove(j);
            }
        }
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// Itinerary does not start at the sender or end at the receiver.
    Endpoints,
    /// A cell does not begin where the previous one ended.
    Continuity,
    /// Itinerary length differs from the number of rounds, or nets are
    /// missing or unknown.
    Shape,
    /// Two tokens occupy one vertex when a round starts.
    EntryCollision,
    /// Two tokens land on one vertex when a round ends.
    ExitCollision,
    /// Two gadgets of one round share a vertex.
    GadgetOverlap,
    /// A transfer cell has no matching transfer in the round's gadgets.
    UndeclaredTransfer,
    TransferAmplitude,
    IdleAmplitude,
    /// First or last round is not edgeless.
    BoundaryRound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub net: Option<usize>,
    pub round: Option<usize>,
    pub magnitude: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetReport {
    pub net: usize,
    /// Product of the per-round magnitudes.
    pub magnitude: f64,
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub rounds: usize,
    pub active_rounds: usize,
    pub total_time: f64,
    pub nets: Vec<NetReport>,
    pub violations: Vec<Violation>,
}

fn violation(condition: Condition, net: Option<usize>, round: Option<usize>, detail: String) -> Violation {
    Violation { condition, net, round, magnitude: None, detail }
}

/// Checks a table against its problem. Idle cells are accepted anywhere the
/// round keeps the token in place with magnitude at least `1 - tol`, even
/// inside an active gadget.
pub fn verify_table(problem: &RoutingProblem, table: &RoutingTable, tol: f64) -> VerificationReport {
    let rounds = table.round_count();
    let mut v = Vec::new();

    if rounds == 0 {
        v.push(violation(Condition::Shape, None, None, "table has no rounds".into()));
    }
    for (j, round) in table.schedule.rounds.iter().enumerate() {
        if let Some(x) = round.overlap() {
            v.push(violation(Condition::GadgetOverlap, None, Some(j), format!("vertex {x} is in two gadgets")));
        }
    }
    for j in [0, rounds.saturating_sub(1)].into_iter().collect::<BTreeSet<_>>() {
        if rounds > 0 && !table.schedule.rounds[j].is_idle() {
            v.push(violation(Condition::BoundaryRound, None, Some(j), "round has active gadgets".into()));
        }
    }

    let mut rows: Vec<(&Net, &Itinerary)> = Vec::new();
    for it in &table.itineraries {
        match problem.net(it.net) {
            Some(net) if rows.iter().any(|(n, _)| n.id == net.id) => {
                v.push(violation(Condition::Shape, Some(it.net), None, "net has two itineraries".into()))
            }
            Some(net) => rows.push((net, it)),
            None => v.push(violation(Condition::Shape, Some(it.net), None, "itinerary for an unknown net".into())),
        }
    }
    for net in problem.nets() {
        if !rows.iter().any(|(n, _)| n.id == net.id) {
            v.push(violation(Condition::Shape, Some(net.id), None, "net has no itinerary".into()));
        }
    }

    let n = problem.host().vertex_count();
    let mut usable = Vec::new();
    for (net, it) in &rows {
        if it.cells.len() != rounds {
            v.push(violation(
                Condition::Shape,
                Some(net.id),
                None,
                format!("{} cells for {} rounds", it.cells.len(), rounds),
            ));
            continue;
        }
        if let Some(cell) = it.cells.iter().find(|c| c.entry() >= n || c.exit() >= n) {
            v.push(violation(Condition::Shape, Some(net.id), None, format!("cell {cell:?} names an unknown vertex")));
            continue;
        }
        if let Some(first) = it.cells.first() {
            if first.entry() != net.sender {
                v.push(violation(Condition::Endpoints, Some(net.id), Some(0), "does not start at the sender".into()));
            }
        }
        if let Some(last) = it.cells.last() {
            if last.exit() != net.receiver {
                v.push(violation(
                    Condition::Endpoints,
                    Some(net.id),
                    Some(rounds - 1),
                    "does not end at the receiver".into(),
                ));
            }
        }
        for j in 1..rounds {
            if it.cells[j].entry() != it.cells[j - 1].exit() {
                v.push(violation(Condition::Continuity, Some(net.id), Some(j), "cell starts away from previous exit".into()));
            }
        }
        for j in [0, rounds.saturating_sub(1)].into_iter().collect::<BTreeSet<_>>() {
            if rounds > 0 && matches!(it.cells[j], Cell::Transfer(..)) {
                v.push(violation(Condition::BoundaryRound, Some(net.id), Some(j), "boundary cell is a transfer".into()));
            }
        }
        usable.push((*net, *it));
    }

    let mut products: Vec<(f64, f64)> = vec![(1.0, 0.0); usable.len()];
    for (j, round) in table.schedule.rounds.iter().enumerate() {
        for (pick, condition) in [(Cell::entry as fn(Cell) -> VertexId, Condition::EntryCollision), (Cell::exit, Condition::ExitCollision)] {
            let mut seen: HashMap<VertexId, usize> = HashMap::new();
            for (net, it) in &usable {
                if let Some(other) = seen.insert(pick(it.cells[j]), net.id) {
                    v.push(violation(
                        condition,
                        Some(net.id),
                        Some(j),
                        format!("shares vertex {} with net {other}", pick(it.cells[j])),
                    ));
                }
            }
        }

        let evo = match RoundEvolution::new(round, j) {
            Ok(e) => e,
            Err(err) => {
                if round.overlap().is_none() {
                    v.push(violation(Condition::Shape, None, Some(j), err.to_string()));
                }
                products.iter_mut().for_each(|p| p.0 = 0.0);
                continue;
            }
        };
        for (k, (net, it)) in usable.iter().enumerate() {
            let cell = it.cells[j];
            let (condition, a, b) = match cell {
                Cell::Idle(x) => (Condition::IdleAmplitude, x, x),
                Cell::Transfer(a, b) => {
                    let declared = round.gadget_of(a).is_some_and(|g| g.transfers().contains(&(a, b)));
                    if !declared {
                        v.push(violation(
                            Condition::UndeclaredTransfer,
                            Some(net.id),
                            Some(j),
                            format!("no gadget declares transfer ({a}, {b})"),
                        ));
                    }
                    (Condition::TransferAmplitude, a, b)
                }
            };
            let entry = evo.entry(a, b);
            if entry.magnitude < 1.0 - tol {
                v.push(Violation {
                    condition,
                    net: Some(net.id),
                    round: Some(j),
                    magnitude: Some(entry.magnitude),
                    detail: format!("amplitude magnitude {:.6} from {a} to {b}", entry.magnitude),
                });
            }
            products[k].0 *= entry.magnitude;
            products[k].1 += entry.phase;
        }
    }

    v.sort_by(|a, b| (a.round, a.net, a.condition).cmp(&(b.round, b.net, b.condition)));
    let nets = usable
        .iter()
        .zip(&products)
        .map(|((net, _), &(magnitude, phase))| NetReport {
            net: net.id,
            magnitude,
            phase: principal_phase(Complex64::from_polar(1.0, phase)),
        })
        .collect();
    VerificationReport {
        passed: v.is_empty(),
        rounds,
        active_rounds: table.active_rounds(),
        total_time: table.schedule.total_time(),
        nets,
        violations: v,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveMode {
    #[serde(rename = "EXACT")]
    Exact,
    #[serde(rename = "GREEDY")]
    Greedy,
}

pub fn exact_within_bounds(problem: &RoutingProblem) -> bool {
    problem.host().vertex_count() <= EXACT_MAX_VERTICES && problem.nets().len() <= EXACT_MAX_NETS
}

/// One parallel step: the placements switched on and every token's new
/// position.
#[derive(Debug, Clone)]
struct Step {
    placements: Vec<usize>,
    positions: Vec<VertexId>,
}

fn assemble_table(problem: &RoutingProblem, index: &PlacementIndex, steps: &[Step]) -> RoutingTable {
    let nets = problem.nets();
    let mut at: Vec<VertexId> = nets.iter().map(|n| n.sender).collect();
    let mut cells: Vec<Vec<Cell>> = at.iter().map(|&s| vec![Cell::Idle(s)]).collect();
    let mut rounds = vec![Round::default()];
    for step in steps {
        let mut chosen = step.placements.clone();
        chosen.sort_unstable();
        rounds.push(Round::new(chosen.iter().map(|&p| index.placement(p).to_gadget()).collect()));
        for (k, &next) in step.positions.iter().enumerate() {
            cells[k].push(if next == at[k] { Cell::Idle(next) } else { Cell::Transfer(at[k], next) });
            at[k] = next;
        }
    }
    rounds.push(Round::default());
    for (k, c) in cells.iter_mut().enumerate() {
        c.push(Cell::Idle(at[k]));
    }
    RoutingTable {
        itineraries: nets.iter().zip(cells).map(|(n, cells)| Itinerary { net: n.id, cells }).collect(),
        schedule: Schedule::new(rounds),
    }
}

/// Calls `emit` with every legal step from `pos`: each token idles or rides
/// a transfer, chosen placements are identical or vertex-disjoint, idle
/// tokens sit outside every chosen placement, at least one token moves and
/// no two tokens land together.
fn for_each_step(index: &PlacementIndex, pos: &[VertexId], mut emit: impl FnMut(&[usize], &[VertexId])) {
    fn go(
        i: usize,
        index: &PlacementIndex,
        pos: &[VertexId],
        chosen: &mut Vec<usize>,
        next: &mut Vec<VertexId>,
        emit: &mut dyn FnMut(&[usize], &[VertexId]),
    ) {
        if i == pos.len() {
            if chosen.is_empty() {
                return;
            }
            for a in 0..next.len() {
                if next[a + 1..].contains(&next[a]) {
                    return;
                }
            }
            emit(chosen, next);
            return;
        }
        let here = pos[i];
        if !chosen.iter().any(|&p| index.placement(p).contains(here)) {
            next.push(here);
            go(i + 1, index, pos, chosen, next, emit);
            next.pop();
        }
        for &(p, dest) in index.moves_from(here) {
            if next.contains(&dest) {
                continue;
            }
            let placement = index.placement(p);
            let fresh = !chosen.contains(&p);
            if fresh {
                // earlier tokens that stayed put must not be covered
                let covers_idle = (0..i).any(|k| next[k] == pos[k] && placement.contains(pos[k]));
                if covers_idle || chosen.iter().any(|&q| !index.placement(q).is_disjoint(placement)) {
                    continue;
                }
                chosen.push(p);
            }
            next.push(dest);
            go(i + 1, index, pos, chosen, next, emit);
            next.pop();
            if fresh {
                chosen.pop();
            }
        }
    }
    let mut chosen = Vec::new();
    let mut next = Vec::with_capacity(pos.len());
    go(0, index, pos, &mut chosen, &mut next, &mut emit);
}

fn solve_exact(problem: &RoutingProblem, index: &PlacementIndex, round_cap: usize) -> Result<Vec<Step>, RoutingError> {
    let n = problem.host().vertex_count();
    let start: Vec<VertexId> = problem.nets().iter().map(|x| x.sender).collect();
    let goal: Vec<VertexId> = problem.nets().iter().map(|x| x.receiver).collect();
    let key = |p: &[VertexId]| p.iter().fold(0usize, |acc, &x| acc * n + x);

    let mut seen: HashMap<usize, usize> = HashMap::new();
    // (configuration, parent node, step that reached it)
    let mut nodes: Vec<(Vec<VertexId>, usize, Option<Step>)> = vec![(start.clone(), 0, None)];
    seen.insert(key(&start), 0);
    let mut frontier = vec![0usize];
    let mut found = None;
    for _depth in 0..round_cap {
        let mut next_frontier = Vec::new();
        for &node in &frontier {
            let pos = nodes[node].0.clone();
            for_each_step(index, &pos, |chosen, next| {
                if found.is_some() {
                    return;
                }
                let k = key(next);
                if seen.contains_key(&k) {
                    return;
                }
                seen.insert(k, nodes.len());
                if next == goal.as_slice() {
                    found = Some(nodes.len());
                }
                next_frontier.push(nodes.len());
                nodes.push((next.to_vec(), node, Some(Step { placements: chosen.to_vec(), positions: next.to_vec() })));
            });
            if found.is_some() {
                break;
            }
        }
        if found.is_some() || next_frontier.is_empty() {
            break;
        }
        frontier = next_frontier;
    }
    let mut at = found.ok_or(RoutingError::NoSolution { round_cap })?;
    let mut steps = Vec::new();
    while let Some(step) = nodes[at].2.take() {
        steps.push(step);
        at = nodes[at].1;
    }
    steps.reverse();
    Ok(steps)
}

/// Strategy knobs shared by the deterministic and randomized greedy runs.
trait GreedyOrder {
    fn order_tokens(&mut self, tokens: &mut Vec<usize>, remaining: &[usize], ids: &[usize]);
    fn order_moves(&mut self, moves: &mut Vec<(usize, VertexId, usize)>, index: &PlacementIndex);
}

struct Deterministic;

impl GreedyOrder for Deterministic {
    fn order_tokens(&mut self, tokens: &mut Vec<usize>, remaining: &[usize], ids: &[usize]) {
        tokens.sort_by_key(|&k| (std::cmp::Reverse(remaining[k]), ids[k]));
    }

    fn order_moves(&mut self, moves: &mut Vec<(usize, VertexId, usize)>, index: &PlacementIndex) {
        moves.sort_by(|a, b| {
            let (pa, pb) = (index.placement(a.0), index.placement(b.0));
            (std::cmp::Reverse(a.2), pa.kind, pa.vertex_set(), a.0).cmp(&(std::cmp::Reverse(b.2), pb.kind, pb.vertex_set(), b.0))
        });
    }
}

struct Shuffled<'a, R: Rng>(&'a mut R);

impl<R: Rng> GreedyOrder for Shuffled<'_, R> {
    fn order_tokens(&mut self, tokens: &mut Vec<usize>, _: &[usize], _: &[usize]) {
        tokens.shuffle(self.0);
    }

    fn order_moves(&mut self, moves: &mut Vec<(usize, VertexId, usize)>, _: &PlacementIndex) {
        moves.shuffle(self.0);
    }
}

fn greedy_step(
    problem: &RoutingProblem,
    index: &PlacementIndex,
    dist: &[Vec<Option<usize>>],
    at: &[VertexId],
    order: &mut dyn GreedyOrder,
) -> Option<Step> {
    let nets = problem.nets();
    let d = |v: VertexId, k: usize| dist[v][nets[k].receiver].unwrap_or(usize::MAX);
    let remaining: Vec<usize> = (0..nets.len()).map(|k| d(at[k], k)).collect();
    let ids: Vec<usize> = nets.iter().map(|n| n.id).collect();
    let mut tokens: Vec<usize> = (0..nets.len()).filter(|&k| remaining[k] > 0).collect();
    order.order_tokens(&mut tokens, &remaining, &ids);

    let mut next: Vec<Option<VertexId>> = vec![None; nets.len()];
    let mut chosen: Vec<usize> = Vec::new();
    let mut idle = vec![false; nets.len()];
    for k in 0..nets.len() {
        if remaining[k] == 0 {
            idle[k] = true;
        }
    }

    for &k in &tokens {
        if next[k].is_some() {
            continue;
        }
        let mut moves: Vec<(usize, VertexId, usize)> = index
            .moves_from(at[k])
            .iter()
            .filter(|&&(_, dest)| d(dest, k) < remaining[k])
            .map(|&(p, dest)| (p, dest, remaining[k] - d(dest, k)))
            .collect();
        order.order_moves(&mut moves, index);

        'candidates: for (p, _, _) in moves {
            let placement: &Placement = index.placement(p);
            if chosen.iter().any(|&q| !index.placement(q).is_disjoint(placement)) {
                continue;
            }
            let mut riders = Vec::new();
            for j in 0..nets.len() {
                if !placement.contains(at[j]) {
                    continue;
                }
                if idle[j] || next[j].is_some() {
                    continue 'candidates;
                }
                let Some(dest) = placement.transfers.iter().find(|t| t.0 == at[j]).map(|t| t.1) else {
                    continue 'candidates;
                };
                if d(dest, j) > remaining[j] {
                    continue 'candidates;
                }
                riders.push((j, dest));
            }
            let blocked = |x: VertexId| {
                (0..nets.len()).any(|j| next[j] == Some(x) || (next[j].is_none() && !riders.iter().any(|r| r.0 == j) && at[j] == x))
            };
            if riders.iter().any(|&(_, dest)| blocked(dest)) {
                continue;
            }
            for (j, dest) in riders {
                next[j] = Some(dest);
            }
            chosen.push(p);
            break;
        }
        if next[k].is_none() {
            idle[k] = true;
        }
    }
    if chosen.is_empty() {
        return None;
    }
    Some(Step { placements: chosen, positions: (0..nets.len()).map(|k| next[k].unwrap_or(at[k])).collect() })
}

fn run_greedy(
    problem: &RoutingProblem,
    index: &PlacementIndex,
    round_cap: usize,
    order: &mut dyn GreedyOrder,
) -> Result<Vec<Step>, RoutingError> {
    let dist = metrics(problem.host()).distances;
    let mut at: Vec<VertexId> = problem.nets().iter().map(|n| n.sender).collect();
    let mut steps = Vec::new();
    while problem.nets().iter().zip(&at).any(|(n, &a)| n.receiver != a) {
        if steps.len() == round_cap {
            return Err(RoutingError::NoSolution { round_cap });
        }
        let step = greedy_step(problem, index, &dist, &at, order).ok_or(RoutingError::NoSolution { round_cap })?;
        at = step.positions.clone();
        steps.push(step);
    }
    Ok(steps)
}

/// Solves within `round_cap` active rounds. EXACT returns a table with the
/// fewest active rounds.
pub fn solve(
    problem: &RoutingProblem,
    library: &GadgetLibrary,
    mode: SolveMode,
    round_cap: usize,
) -> Result<RoutingTable, RoutingError> {
    let index = PlacementIndex::new(problem.host(), library);
    let steps = match mode {
        SolveMode::Exact => {
            if !exact_within_bounds(problem) {
                return Err(RoutingError::InstanceTooLarge {
                    vertices: problem.host().vertex_count(),
                    edges: problem.host().edge_count(),
                    nets: problem.nets().len(),
                });
            }
            solve_exact(problem, &index, round_cap)?
        }
        SolveMode::Greedy => run_greedy(problem, &index, round_cap, &mut Deterministic)?,
    };
    Ok(assemble_table(problem, &index, &steps))
}

/// Greedy with token and move order shuffled by `rng`.
pub fn solve_greedy_randomized<R: Rng>(
    problem: &RoutingProblem,
    index: &PlacementIndex,
    round_cap: usize,
    rng: &mut R,
) -> Result<RoutingTable, RoutingError> {
    let steps = run_greedy(problem, index, round_cap, &mut Shuffled(rng))?;
    Ok(assemble_table(problem, index, &steps))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalReport {
    pub feasible: bool,
    /// One vertex path per net, in net order.
    pub witness: Option<Vec<Vec<VertexId>>>,
}

/// Whether pairwise edge-disjoint paths join every net's terminals.
pub fn classical_feasible(problem: &RoutingProblem) -> Result<ClassicalReport, RoutingError> {
    let g = problem.host();
    if problem.nets().len() > CLASSICAL_MAX_NETS || g.edge_count() > CLASSICAL_MAX_EDGES {
        return Err(RoutingError::InstanceTooLarge {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            nets: problem.nets().len(),
        });
    }
    let key = |a: VertexId, b: VertexId| (a.min(b), a.max(b));

    fn route(
        g: &Graph,
        nets: &[Net],
        i: usize,
        used: &mut BTreeSet<(VertexId, VertexId)>,
        paths: &mut Vec<Vec<VertexId>>,
        key: &dyn Fn(VertexId, VertexId) -> (VertexId, VertexId),
    ) -> bool {
        if i == nets.len() {
            return true;
        }
        let mut path = vec![nets[i].sender];
        extend(g, nets, i, used, paths, &mut path, key)
    }

    fn extend(
        g: &Graph,
        nets: &[Net],
        i: usize,
        used: &mut BTreeSet<(VertexId, VertexId)>,
        paths: &mut Vec<Vec<VertexId>>,
        path: &mut Vec<VertexId>,
        key: &dyn Fn(VertexId, VertexId) -> (VertexId, VertexId),
    ) -> bool {
        let here = *path.last().unwrap();
        if here == nets[i].receiver {
            paths.push(path.clone());
            if route(g, nets, i + 1, used, paths, key) {
                return true;
            }
            paths.pop();
            return false;
        }
        for &w in g.neighbors(here) {
            let e = key(here, w);
            if path.contains(&w) || used.contains(&e) {
                continue;
            }
            used.insert(e);
            path.push(w);
            if extend(g, nets, i, used, paths, path, key) {
                return true;
            }
            path.pop();
            used.remove(&e);
        }
        false
    }

    let mut paths = Vec::new();
    let feasible = route(g, problem.nets(), 0, &mut BTreeSet::new(), &mut paths, &key);
    Ok(ClassicalReport { feasible, witness: feasible.then_some(paths) })
}

fn cell_text(g: &Graph, c: Cell) -> String {
    match c {
        Cell::Idle(v) => format!("{{{}}}", g.label(v)),
        Cell::Transfer(a, b) => format!("({},{})", g.label(a), g.label(b)),
    }
}

/// Plain-text table: a header naming the rounds, then one row per net.
pub fn render_table(problem: &RoutingProblem, table: &RoutingTable) -> String {
    let g = problem.host();
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["net".to_string()];
    header.extend((0..table.round_count()).map(|j| format!("G{j}")));
    grid.push(header);
    for it in &table.itineraries {
        let name = match problem.net(it.net) {
            Some(n) => format!("({},{})", g.label(n.sender), g.label(n.receiver)),
            None => format!("#{}", it.net),
        };
        let mut row = vec![name];
        row.extend(it.cells.iter().map(|&c| cell_text(g, c)));
        grid.push(row);
    }
    let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| grid.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &grid {
        let cells: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        let _ = writeln!(out, "{}", cells.join(" | ").trim_end());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::engineering::GadgetKind;
    use crate::graph::disjoint_union;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    const TOL: f64 = 1e-9;

    fn net(g: &Graph, id: usize, s: &str, r: &str) -> Net {
        Net { id, sender: g.vertex(s).unwrap(), receiver: g.vertex(r).unwrap() }
    }

    fn square_problem() -> RoutingProblem {
        let g = catalog::square_with_pendants();
        let nets = vec![net(&g, 1, "1", "5"), net(&g, 2, "6", "4")];
        RoutingProblem::new(g, nets).unwrap()
    }

    fn square_table(q2_duration: f64) -> RoutingTable {
        let p = square_problem();
        let g = p.host();
        let v = |s: &str| g.vertex(s).unwrap();
        let k2 = |a, b| Placement {
            kind: GadgetKind::K2,
            vertices: vec![v(a), v(b)],
            edges: vec![(v(a).min(v(b)), v(a).max(v(b)))],
            transfers: vec![(v(a), v(b)), (v(b), v(a))],
        }
        .to_gadget();
        let square = Placement {
            kind: GadgetKind::Q2,
            vertices: vec![v("2"), v("3"), v("8"), v("7")],
            edges: vec![(v("2"), v("3")), (v("2"), v("7")), (v("3"), v("8")), (v("7"), v("8"))],
            transfers: vec![(v("2"), v("8")), (v("8"), v("2")), (v("3"), v("7")), (v("7"), v("3"))],
        }
        .to_gadget()
        .with_duration(q2_duration);
        let schedule = Schedule::new(vec![
            Round::default(),
            Round::new(vec![k2("1", "2"), k2("6", "7")]),
            Round::new(vec![square]),
            Round::new(vec![k2("3", "4"), k2("8", "5")]),
            Round::default(),
        ]);
        let t = |a, b| Cell::Transfer(v(a), v(b));
        let i = |a| Cell::Idle(v(a));
        RoutingTable {
            itineraries: vec![
                Itinerary { net: 1, cells: vec![i("1"), t("1", "2"), t("2", "8"), t("8", "5"), i("5")] },
                Itinerary { net: 2, cells: vec![i("6"), t("6", "7"), t("7", "3"), t("3", "4"), i("4")] },
            ],
            schedule,
        }
    }

    #[test]
    fn problem_validation() {
        let g = catalog::square_with_pendants();
        let n = |s, r| net(&g, 1, s, r);
        assert!(matches!(RoutingProblem::new(g.clone(), vec![n("1", "1")]), Err(RoutingError::SameEndpoints { .. })));
        let clash = vec![net(&g, 1, "1", "5"), net(&g, 2, "5", "4")];
        assert!(matches!(RoutingProblem::new(g.clone(), clash), Err(RoutingError::SharedTerminal { .. })));
        let twice = vec![net(&g, 1, "1", "5"), net(&g, 1, "6", "4")];
        assert_eq!(RoutingProblem::new(g.clone(), twice), Err(RoutingError::DuplicateNetId(1)));

        let cube = catalog::cube_with_pendants();
        let inner = vec![net(&cube, 1, "0", "12")];
        assert!(matches!(RoutingProblem::new(cube, inner), Err(RoutingError::NotOnBoundary { .. })));
    }

    #[test]
    fn square_table_passes() {
        let report = verify_table(&square_problem(), &square_table(FRAC_PI_2), TOL);
        assert!(report.passed, "{:?}", report.violations);
        assert_eq!(report.active_rounds, 3);
        assert!(report.nets.iter().all(|n| n.magnitude >= 1.0 - TOL));
        assert!((report.total_time - 3.0 * FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn square_table_wrong_duration_fails() {
        let report = verify_table(&square_problem(), &square_table(PI / SQRT_2), TOL);
        assert!(!report.passed);
        let losses: Vec<&Violation> =
            report.violations.iter().filter(|v| v.condition == Condition::TransferAmplitude).collect();
        assert_eq!(losses.len(), 2);
        let closed = ((SQRT_2 * PI).cos() - 1.0).abs() / 2.0;
        for l in losses {
            assert_eq!(l.round, Some(2));
            assert!((l.magnitude.unwrap() - closed).abs() < 1e-9);
        }
    }

    #[test]
    fn tampered_tables_fail() {
        let p = square_problem();
        let good = square_table(FRAC_PI_2);
        let v = |s: &str| p.host().vertex(s).unwrap();

        let mut collide = good.clone();
        collide.itineraries[1].cells[3] = Cell::Transfer(v("3"), v("5"));
        collide.itineraries[1].cells[4] = Cell::Idle(v("5"));
        let report = verify_table(&p, &collide, TOL);
        assert!(report.violations.iter().any(|x| x.condition == Condition::ExitCollision && x.round == Some(3)));

        let mut endpoint = good.clone();
        endpoint.itineraries[0].cells[4] = Cell::Idle(v("8"));
        let report = verify_table(&p, &endpoint, TOL);
        assert!(report.violations.iter().any(|x| x.condition == Condition::Endpoints && x.net == Some(1)));

        let short = good.without_round(2);
        assert!(!verify_table(&p, &short, TOL).passed);
        assert!(!verify_table(&p, &good.without_round(0), TOL).passed);

        let mut stray = good.clone();
        stray.itineraries.pop();
        let report = verify_table(&p, &stray, TOL);
        assert!(report.violations.iter().any(|x| x.condition == Condition::Shape && x.net == Some(2)));
    }

    #[test]
    fn exact_square_three_rounds() {
        let p = square_problem();
        let table = solve(&p, &GadgetLibrary::default(), SolveMode::Exact, 8).unwrap();
        assert_eq!(table.active_rounds(), 3);
        assert_eq!(table.round_count(), 5);
        assert!(verify_table(&p, &table, TOL).passed);
        let capped = solve(&p, &GadgetLibrary::default(), SolveMode::Exact, 2);
        assert_eq!(capped, Err(RoutingError::NoSolution { round_cap: 2 }));
    }

    #[test]
    fn single_net_on_p2() {
        let g = catalog::path(2);
        let p = RoutingProblem::new(g, vec![Net { id: 0, sender: 0, receiver: 1 }]).unwrap();
        for mode in [SolveMode::Exact, SolveMode::Greedy] {
            let table = solve(&p, &GadgetLibrary::default(), mode, 4).unwrap();
            assert_eq!(table.active_rounds(), 1);
            assert_eq!(table.schedule.rounds[1].gadgets[0].kind(), GadgetKind::K2);
            assert!(verify_table(&p, &table, TOL).passed);
        }
    }

    #[test]
    fn greedy_cube() {
        let g = catalog::cube_with_pendants();
        let nets = vec![net(&g, 1, "8", "12"), net(&g, 2, "9", "13"), net(&g, 3, "15", "10"), net(&g, 4, "14", "11")];
        let p = RoutingProblem::new(g, nets).unwrap();
        let table = solve(&p, &GadgetLibrary::default(), SolveMode::Greedy, 8).unwrap();
        assert!(table.active_rounds() <= 6, "{}", render_table(&p, &table));
        let report = verify_table(&p, &table, TOL);
        assert!(report.passed, "{:?}", report.violations);
    }

    #[test]
    fn classical_examples() {
        assert!(!classical_feasible(&square_problem()).unwrap().feasible);
        let g = disjoint_union(&[catalog::path(2), catalog::path(2)]);
        let p = RoutingProblem::new(g, vec![Net { id: 0, sender: 0, receiver: 1 }, Net { id: 1, sender: 2, receiver: 3 }])
            .unwrap();
        let report = classical_feasible(&p).unwrap();
        assert_eq!(report.witness, Some(vec![vec![0, 1], vec![2, 3]]));
    }

    #[test]
    fn text_rendering() {
        let text = render_table(&square_problem(), &square_table(FRAC_PI_2));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "(1,5) | {1} | (1,2) | (2,8) | (8,5) | {5}");
        assert_eq!(lines[2], "(6,4) | {6} | (6,7) | (7,3) | (3,4) | {4}");
    }
}
