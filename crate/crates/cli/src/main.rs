use clap::{Args, Parser, Subcommand, ValueEnum};
use pstnet::builder::BuildWarning;
use pstnet::hilbert::HilbertError;
use pstnet::io::{graph_to_value, parse_graph, parse_nets, parse_table, table_to_value, to_pretty, GraphFile};
use pstnet::routing::exact_within_bounds;
use pstnet::spectral::audit_catalog;
use pstnet::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pstnet", version, about = "Perfect state transfer networks and quantum routing")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Serialize, Clone)]
struct Config {
    /// Magnitude tolerance for transfer verdicts, in (0, 1e-3].
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
    tolerance: f64,
    /// Upper end of the time scan when searching transfer times.
    #[arg(long, global = true, default_value_t = 20.0)]
    t_max: f64,
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    round_cap: u64,
    /// Routing solver; exact when the instance is small enough, greedy otherwise.
    #[arg(long, global = true, value_enum, ignore_case = true)]
    mode: Option<Mode>,
    /// Replace table durations by computed transfer times before verifying.
    #[arg(long, global = true)]
    correct_durations: bool,
    #[arg(long, global = true)]
    #[serde(skip)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "UPPERCASE")]
enum Mode {
    Exact,
    Greedy,
}

impl From<Mode> for SolveMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => SolveMode::Exact,
            Mode::Greedy => SolveMode::Greedy,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Metrics, transfer pairs at the library times, and an audit of embedded claims.
    Analyze { graph: PathBuf },
    /// Solve a routing problem and emit the table.
    Route { graph: PathBuf, nets: PathBuf },
    /// Check a routing table against the host graph.
    Verify {
        graph: PathBuf,
        table: PathBuf,
        /// Nets file; defaults to the nets embedded in the table.
        #[arg(long)]
        nets: Option<PathBuf>,
    },
    /// Construct a network by gluing or bridging.
    Build(BuildArgs),
    /// Check that every vertex pair has a transfer with at most P gadgets.
    Certify {
        graph: PathBuf,
        #[arg(long)]
        p: usize,
    },
    /// Compare the single-excitation block of the spin Hamiltonian with the walk.
    Xcheck { graph: PathBuf },
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    procedure: u8,
    #[arg(long)]
    base: PathBuf,
    #[arg(long)]
    hub: Option<String>,
    /// Attachment as FILE@LABEL; repeat for several.
    #[arg(long)]
    attach: Vec<String>,
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    v: Option<String>,
    #[arg(long)]
    count: Option<usize>,
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t <= 1e-3 {
        Ok(t)
    } else {
        Err(format!("tolerance must lie in (0, 1e-3], got {t}"))
    }
}

enum Failure {
    Input(String),
    NoSolution(String),
    TooLarge(String),
    /// The document is still emitted; only the exit status differs.
    Verify,
    Certify,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::NoSolution(_) => 3,
            Failure::TooLarge(_) => 4,
            Failure::Verify => 5,
            Failure::Certify => 6,
        }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn routing_failure(e: RoutingError) -> Failure {
    match e {
        RoutingError::NoSolution { .. } => Failure::NoSolution(e.to_string()),
        RoutingError::InstanceTooLarge { .. } => Failure::TooLarge(e.to_string()),
        e => input(e),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<GraphFile, Failure> {
    parse_graph(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn vertex(g: &Graph, label: &str) -> Result<VertexId, Failure> {
    g.vertex(label).ok_or_else(|| input(format!("unknown vertex {label:?}")))
}

fn labels(g: &Graph, vs: &[VertexId]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

fn with_config(config: &Config, body: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("config".into(), serde_json::to_value(config).expect("config serializes"));
    match body {
        Value::Object(m) => doc.extend(m),
        other => {
            doc.insert("result".into(), other);
        }
    }
    Value::Object(doc)
}

fn write(config: &Config, doc: &Value) -> Result<(), Failure> {
    let text = to_pretty(doc);
    match &config.output {
        Some(p) => std::fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn analyze(config: &Config, path: &Path) -> Result<(), Failure> {
    let file = load_graph(path)?;
    let g = &file.graph;
    let m = metrics(g);
    let mut pst = Vec::new();
    for t in [FRAC_PI_2, PI / SQRT_2] {
        let pairs = if g.vertex_count() == 0 {
            Vec::new()
        } else {
            find_pst_pairs(g, t, config.tolerance).map_err(input)?
        };
        let pairs: Vec<Value> = pairs
            .iter()
            .map(|r| {
                json!({
                    "source": g.label(r.source),
                    "target": g.label(r.target),
                    "magnitude": r.magnitude,
                    "phase": r.phase,
                })
            })
            .collect();
        pst.push(json!({ "time": t, "pairs": pairs }));
    }
    let audit = audit_catalog(&file.claims, config.t_max, config.tolerance).map_err(input)?;
    let components: Vec<Value> = m
        .components
        .iter()
        .map(|c| {
            json!({
                "vertices": labels(g, &c.vertices),
                "diameter": c.diameter,
                "radius": c.radius,
                "center": labels(g, &c.center),
            })
        })
        .collect();
    let doc = json!({
        "graph": file.name,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "metrics": {
            "connected": m.is_connected(),
            "diameter": m.diameter(),
            "radius": m.radius(),
            "center": m.center().map(|c| labels(g, c)),
            "eccentricities": g.labels().iter().cloned().zip(m.eccentricities.iter().map(|&e| json!(e))).collect::<Map<_, _>>(),
            "components": components,
        },
        "pst_pairs": pst,
        "audit": audit,
    });
    write(config, &with_config(config, doc))
}

fn route(config: &Config, graph: &Path, nets: &Path) -> Result<(), Failure> {
    let g = load_graph(graph)?.graph;
    let nets = parse_nets(&g, &read(nets)?).map_err(input)?;
    let problem = RoutingProblem::new(g, nets).map_err(routing_failure)?;
    let mode = config.mode.unwrap_or(if exact_within_bounds(&problem) { Mode::Exact } else { Mode::Greedy });
    let table = solve(&problem, &GadgetLibrary::default(), mode.into(), config.round_cap as usize)
        .map_err(routing_failure)?;
    let report = verify_table(&problem, &table, config.tolerance);
    if !report.passed {
        return Err(Failure::NoSolution(format!("solver produced a table that fails verification: {:?}", report.violations)));
    }
    let resolved = Config { mode: Some(mode), ..config.clone() };
    let doc = with_config(&resolved, table_to_value(problem.host(), &table, Some(problem.nets())));
    write(config, &doc)?;
    if config.output.is_some() {
        print!("{}", render_table(&problem, &table));
    }
    Ok(())
}

fn verify(config: &Config, graph: &Path, table: &Path, nets: Option<&Path>) -> Result<(), Failure> {
    let g = load_graph(graph)?.graph;
    let file = parse_table(&g, &read(table)?).map_err(input)?;
    let nets = match nets {
        Some(p) => parse_nets(&g, &read(p)?).map_err(input)?,
        None => file.nets.clone().ok_or_else(|| input("the table embeds no nets; pass --nets"))?,
    };
    let problem = RoutingProblem::new(g, nets).map_err(routing_failure)?;
    let as_given = verify_table(&problem, &file.table, config.tolerance);
    let (doc, passed) = if config.correct_durations {
        let schedule = correct_durations(&file.table.schedule, config.t_max, config.tolerance).map_err(input)?;
        let corrected = RoutingTable { schedule, ..file.table.clone() };
        let report = verify_table(&problem, &corrected, config.tolerance);
        let passed = report.passed;
        (json!({ "as_given": as_given, "corrected": report }), passed)
    } else {
        let passed = as_given.passed;
        (serde_json::to_value(&as_given).expect("report serializes"), passed)
    };
    write(config, &with_config(config, doc))?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn warning_value(g: &Graph, w: &BuildWarning, attachments: &[GraphFile]) -> Value {
    match *w {
        BuildWarning::HubNotCentral { hub } => json!({ "warning": "hub_not_central", "hub": g.label(hub) }),
        BuildWarning::AttachNotCentral { attachment, vertex } => json!({
            "warning": "attach_not_central",
            "attachment": attachment,
            "vertex": attachments[attachment].graph.label(vertex),
        }),
        BuildWarning::AttachNotOnBoundary { attachment, vertex } => json!({
            "warning": "attach_not_on_boundary",
            "attachment": attachment,
            "vertex": attachments[attachment].graph.label(vertex),
        }),
        BuildWarning::EndpointNotOnBoundary { vertex } => {
            json!({ "warning": "endpoint_not_on_boundary", "vertex": g.label(vertex) })
        }
    }
}

fn build(config: &Config, args: &BuildArgs) -> Result<(), Failure> {
    let base = load_graph(&args.base)?;
    let g0 = &base.graph;
    let base_name = base.name.clone().unwrap_or_else(|| "graph".into());
    let (construction, attachments, name, parameters) = match args.procedure {
        1 => {
            let hub_label = args.hub.as_deref().ok_or_else(|| input("--procedure 1 needs --hub"))?;
            let hub = vertex(g0, hub_label)?;
            let mut files = Vec::new();
            let mut parts = Vec::new();
            for item in &args.attach {
                let (file, label) = item
                    .rsplit_once('@')
                    .ok_or_else(|| input(format!("attachment {item:?} is not FILE@LABEL")))?;
                let f = load_graph(Path::new(file))?;
                let v = vertex(&f.graph, label)?;
                parts.push((f.graph.clone(), v));
                files.push(f);
            }
            let c = procedure1(g0, hub, &parts).map_err(input)?;
            let params = json!({ "base": args.base, "hub": hub_label, "attach": args.attach });
            (c, files, format!("{base_name}_glued"), params)
        }
        _ => {
            let (u, v, m) = match (&args.u, &args.v, args.count) {
                (Some(u), Some(v), Some(m)) => (u, v, m),
                _ => return Err(input("--procedure 2 needs --u, --v and --count")),
            };
            let c = procedure2(g0, vertex(g0, u)?, vertex(g0, v)?, m).map_err(input)?;
            let params = json!({ "base": args.base, "u": u, "v": v, "count": m });
            (c, Vec::new(), format!("{base_name}_bridged"), params)
        }
    };
    let g = &construction.graph;
    let mut doc = graph_to_value(g, Some(&name));
    let obj = doc.as_object_mut().expect("graph documents are objects");
    obj.insert("provenance".into(), json!({ "procedure": args.procedure, "parameters": parameters }));
    let warnings: Vec<Value> = construction.warnings.iter().map(|w| warning_value(g0, w, &attachments)).collect();
    obj.insert("warnings".into(), Value::Array(warnings));
    write(config, &with_config(config, doc))
}

fn certify(config: &Config, path: &Path, p: usize) -> Result<(), Failure> {
    let g = load_graph(path)?.graph;
    let cert = certify_network(&g, p, &GadgetLibrary::default());
    let pairs: Vec<Value> = cert
        .pairs
        .iter()
        .map(|c| {
            json!({
                "source": g.label(c.source),
                "target": g.label(c.target),
                "p": c.p,
                "bound_source": c.bound_source,
                "total_time": c.total_time,
            })
        })
        .collect();
    let doc = json!({
        "p_target": cert.p_target,
        "verdict": cert.verdict,
        "max_p": cert.max_p,
        "max_total_time": cert.max_total_time,
        "pairs": pairs,
    });
    write(config, &with_config(config, doc))?;
    match cert.verdict {
        builder::CertificationVerdict::Pass => Ok(()),
        builder::CertificationVerdict::Fail => Err(Failure::Certify),
    }
}

fn xcheck(config: &Config, path: &Path) -> Result<(), Failure> {
    let g = load_graph(path)?.graph;
    let times: Vec<f64> = (1..=10).map(|k| config.t_max * k as f64 / 10.0).collect();
    let check = cross_check(&g, &times).map_err(|e| match e {
        HilbertError::TooManyQubits(_) => Failure::TooLarge(e.to_string()),
        e => input(e),
    })?;
    write(config, &with_config(config, serde_json::to_value(&check).expect("report serializes")))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let config = &cli.config;
    match &cli.command {
        Command::Analyze { graph } => analyze(config, graph),
        Command::Route { graph, nets } => route(config, graph, nets),
        Command::Verify { graph, table, nets } => verify(config, graph, table, nets.as_deref()),
        Command::Build(args) => build(config, args),
        Command::Certify { graph, p } => certify(config, graph, *p),
        Command::Xcheck { graph } => xcheck(config, graph),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(m) | Failure::NoSolution(m) | Failure::TooLarge(m) => eprintln!("error: {m}"),
                Failure::Verify => eprintln!("verification failed"),
                Failure::Certify => eprintln!("certification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
