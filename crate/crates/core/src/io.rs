//! JSON documents for graphs, schedules, routing tables and nets.
//!
//! Vertices are written by label. Labels may be JSON strings or integers on
//! input and are always written back as strings.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::engineering::{Gadget, GadgetError, GadgetKind, Round, Schedule};
use crate::graph::{Graph, GraphError, VertexId};
use crate::routing::{Cell, Itinerary, Net, RoutingTable};
use crate::spectral::PstClaim;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl DocError {
    fn field(path: impl Into<String>, message: impl ToString) -> Self {
        DocError::Field { path: path.into(), message: message.to_string() }
    }
}

fn parse_value<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, DocError> {
    serde_json::from_str(text).map_err(|e| DocError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
    Other(Value),
}

impl Label {
    fn text(&self) -> String {
        match self {
            Label::Int(i) => i.to_string(),
            Label::Str(s) => s.clone(),
            Label::Other(v) => v.to_string(),
        }
    }
}

fn check_labels<'a>(labels: impl IntoIterator<Item = &'a Label>, path: &str) -> Result<(), DocError> {
    for (i, l) in labels.into_iter().enumerate() {
        if let Label::Other(v) = l {
            return Err(DocError::field(format!("{path}[{i}]"), format!("label {v} is not a string or integer")));
        }
    }
    Ok(())
}

fn resolve(g: &Graph, label: &Label, path: &str) -> Result<VertexId, DocError> {
    if let Label::Other(v) = label {
        return Err(DocError::field(path, format!("label {v} is not a string or integer")));
    }
    g.vertex(&label.text()).ok_or_else(|| DocError::field(path, format!("unknown vertex {:?}", label.text())))
}

fn resolve_pair(g: &Graph, pair: &[Label], path: &str) -> Result<(VertexId, VertexId), DocError> {
    match pair {
        [a, b] => Ok((resolve(g, a, &format!("{path}[0]"))?, resolve(g, b, &format!("{path}[1]"))?)),
        _ => Err(DocError::field(path, format!("expected a pair, got {} entries", pair.len()))),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClaimDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    source: Label,
    target: Label,
    time: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    vertices: Vec<Label>,
    edges: Vec<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boundary: Option<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    claims: Vec<ClaimDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<Value>,
}

/// A graph document with its optional name and embedded transfer claims.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub name: Option<String>,
    pub graph: Graph,
    pub claims: Vec<PstClaim>,
}

pub fn parse_graph(text: &str) -> Result<GraphFile, DocError> {
    let doc: GraphDoc = parse_value(text)?;
    check_labels(&doc.vertices, "vertices")?;
    if let Some(b) = &doc.boundary {
        check_labels(b, "boundary")?;
    }
    let labels: Vec<String> = doc.vertices.iter().map(Label::text).collect();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (i, e) in doc.edges.iter().enumerate() {
        match e.as_slice() {
            [a, b] => {
                check_labels([a, b], &format!("edges[{i}]"))?;
                edges.push((a.text(), b.text()))
            }
            [_, _, _] => return Err(DocError::field(format!("edges[{i}]"), "weighted edges are not supported")),
            _ => return Err(DocError::field(format!("edges[{i}]"), "an edge needs exactly two endpoints")),
        }
    }
    let boundary: Option<Vec<String>> = doc.boundary.as_ref().map(|b| b.iter().map(Label::text).collect());
    let graph = Graph::build(&labels, &edges, boundary.as_deref())?;
    let mut claims = Vec::new();
    for (i, c) in doc.claims.iter().enumerate() {
        let path = format!("claims[{i}]");
        claims.push(PstClaim {
            name: c.name.clone().or_else(|| doc.name.clone()).unwrap_or_else(|| "graph".into()),
            graph: graph.clone(),
            source: resolve(&graph, &c.source, &format!("{path}.source"))?,
            target: resolve(&graph, &c.target, &format!("{path}.target"))?,
            time: c.time,
        });
    }
    Ok(GraphFile { name: doc.name, graph, claims })
}

pub fn graph_to_value(g: &Graph, name: Option<&str>) -> Value {
    let l = |v: VertexId| Label::Str(g.label(v).to_string());
    let doc = GraphDoc {
        name: name.map(str::to_string),
        vertices: (0..g.vertex_count()).map(l).collect(),
        edges: g.edges().iter().map(|&(a, b)| vec![l(a), l(b)]).collect(),
        boundary: g.boundary().map(|b| b.iter().map(|&v| l(v)).collect()),
        claims: Vec::new(),
        provenance: None,
    };
    serde_json::to_value(doc).expect("graph document serializes")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GadgetDoc {
    kind: GadgetKind,
    vertices: Vec<Label>,
    edges: Vec<Vec<Label>>,
    duration: f64,
    transfers: Vec<Vec<Label>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RoundDoc {
    gadgets: Vec<GadgetDoc>,
}

fn gadget_doc(g: &Graph, gadget: &Gadget) -> GadgetDoc {
    let l = |v: VertexId| Label::Str(g.label(v).to_string());
    let pairs = |ps: &[(VertexId, VertexId)]| ps.iter().map(|&(a, b)| vec![l(a), l(b)]).collect();
    GadgetDoc {
        kind: gadget.kind(),
        vertices: gadget.vertices().iter().map(|&v| l(v)).collect(),
        edges: pairs(gadget.edges()),
        duration: gadget.duration(),
        transfers: pairs(gadget.transfers()),
    }
}

fn round_docs(g: &Graph, schedule: &Schedule) -> Vec<RoundDoc> {
    schedule.rounds.iter().map(|r| RoundDoc { gadgets: r.gadgets.iter().map(|x| gadget_doc(g, x)).collect() }).collect()
}

fn schedule_from_docs(host: &Graph, rounds: &[RoundDoc], tol: f64) -> Result<Schedule, DocError> {
    let mut out = Vec::with_capacity(rounds.len());
    for (j, r) in rounds.iter().enumerate() {
        let mut gadgets = Vec::with_capacity(r.gadgets.len());
        for (k, d) in r.gadgets.iter().enumerate() {
            let path = format!("rounds[{j}].gadgets[{k}]");
            let vertices = d
                .vertices
                .iter()
                .enumerate()
                .map(|(i, v)| resolve(host, v, &format!("{path}.vertices[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let pairs = |ps: &[Vec<Label>], what: &str| {
                ps.iter()
                    .enumerate()
                    .map(|(i, p)| resolve_pair(host, p, &format!("{path}.{what}[{i}]")))
                    .collect::<Result<Vec<_>, _>>()
            };
            let edges = pairs(&d.edges, "edges")?;
            let transfers = pairs(&d.transfers, "transfers")?;
            let gadget = Gadget::new(host, d.kind, vertices, edges, d.duration, transfers, tol)
                .map_err(|e: GadgetError| DocError::field(&path, e))?;
            gadgets.push(gadget);
        }
        out.push(Round::new(gadgets));
    }
    Ok(Schedule::new(out))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleDoc {
    rounds: Vec<RoundDoc>,
}

pub fn parse_schedule(host: &Graph, text: &str, tol: f64) -> Result<Schedule, DocError> {
    let doc: ScheduleDoc = parse_value(text)?;
    schedule_from_docs(host, &doc.rounds, tol)
}

pub fn schedule_to_value(host: &Graph, schedule: &Schedule) -> Value {
    serde_json::to_value(ScheduleDoc { rounds: round_docs(host, schedule) }).expect("schedule serializes")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetDoc {
    id: usize,
    sender: Label,
    receiver: Label,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetsDoc {
    nets: Vec<NetDoc>,
    #[serde(default, skip_serializing)]
    #[allow(dead_code)]
    config: Option<Value>,
}

fn nets_from_docs(host: &Graph, docs: &[NetDoc], prefix: &str) -> Result<Vec<Net>, DocError> {
    docs.iter()
        .enumerate()
        .map(|(i, n)| {
            Ok(Net {
                id: n.id,
                sender: resolve(host, &n.sender, &format!("{prefix}[{i}].sender"))?,
                receiver: resolve(host, &n.receiver, &format!("{prefix}[{i}].receiver"))?,
            })
        })
        .collect()
}

fn net_docs(host: &Graph, nets: &[Net]) -> Vec<NetDoc> {
    nets.iter()
        .map(|n| NetDoc {
            id: n.id,
            sender: Label::Str(host.label(n.sender).into()),
            receiver: Label::Str(host.label(n.receiver).into()),
        })
        .collect()
}

pub fn parse_nets(host: &Graph, text: &str) -> Result<Vec<Net>, DocError> {
    let doc: NetsDoc = parse_value(text)?;
    nets_from_docs(host, &doc.nets, "nets")
}

pub fn nets_to_value(host: &Graph, nets: &[Net]) -> Value {
    serde_json::to_value(NetsDoc { nets: net_docs(host, nets), config: None }).expect("nets serialize")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
enum CellDoc {
    #[serde(rename = "idle")]
    Idle(Label),
    #[serde(rename = "transfer")]
    Transfer(Vec<Label>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItineraryDoc {
    net: usize,
    cells: Vec<CellDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    #[serde(default, skip_serializing)]
    #[allow(dead_code)]
    config: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nets: Option<Vec<NetDoc>>,
    rounds: Vec<RoundDoc>,
    itineraries: Vec<ItineraryDoc>,
}

/// A routing table document, with the nets it was solved for when embedded.
#[derive(Debug, Clone, PartialEq)]
pub struct TableFile {
    pub table: RoutingTable,
    pub nets: Option<Vec<Net>>,
}

/// Parses a table against `host`. Gadget transfers are not re-checked here;
/// amplitudes are the verifier's job.
pub fn parse_table(host: &Graph, text: &str) -> Result<TableFile, DocError> {
    let doc: TableDoc = parse_value(text)?;
    let schedule = schedule_from_docs(host, &doc.rounds, f64::INFINITY)?;
    let mut itineraries = Vec::with_capacity(doc.itineraries.len());
    for (i, it) in doc.itineraries.iter().enumerate() {
        let mut cells = Vec::with_capacity(it.cells.len());
        for (j, c) in it.cells.iter().enumerate() {
            let path = format!("itineraries[{i}].cells[{j}]");
            cells.push(match c {
                CellDoc::Idle(v) => Cell::Idle(resolve(host, v, &format!("{path}.idle"))?),
                CellDoc::Transfer(p) => {
                    let (a, b) = resolve_pair(host, p, &format!("{path}.transfer"))?;
                    Cell::Transfer(a, b)
                }
            });
        }
        itineraries.push(Itinerary { net: it.net, cells });
    }
    let nets = doc.nets.as_deref().map(|n| nets_from_docs(host, n, "nets")).transpose()?;
    Ok(TableFile { table: RoutingTable { itineraries, schedule }, nets })
}

pub fn table_to_value(host: &Graph, table: &RoutingTable, nets: Option<&[Net]>) -> Value {
    let l = |v: VertexId| Label::Str(host.label(v).to_string());
    let doc = TableDoc {
        config: None,
        nets: nets.map(|n| net_docs(host, n)),
        rounds: round_docs(host, &table.schedule),
        itineraries: table
            .itineraries
            .iter()
            .map(|it| ItineraryDoc {
                net: it.net,
                cells: it
                    .cells
                    .iter()
                    .map(|&c| match c {
                        Cell::Idle(v) => CellDoc::Idle(l(v)),
                        Cell::Transfer(a, b) => CellDoc::Transfer(vec![l(a), l(b)]),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("table serializes")
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}
