use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use tightnb::catalog::{catalog, catalog_entry, catalog_get, IDS};
use tightnb::dual::{facet_tree, DualGraph};
use tightnb::enumeration::{
    encode, enumerate_all, minimal_representative, relaxed_search, EnumerationReport,
    DUAL_GRAPHS,
};
use tightnb::graph::{classify, oracle_classification, GraphFamilyId, OracleMode};
use tightnb::topology::{
    automorphisms, boundary, contains_z3, in_k, in_kbar, is_stacked_ball, is_stacked_sphere,
    is_tight_neighborly, isomorphic, orientable, phi_permutation, z2_betti,
};
use tightnb::{Error, Exec, SimplicialComplex};

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = writeln!(std::io::stdout().lock(), "{args}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

#[derive(Parser)]
#[command(name = "tightnb", version)]
#[command(about = "Tight neighborly 4-manifolds on 15 vertices: catalog, checks and enumeration")]
struct Cli {
    /// Worker threads (1 runs sequentially)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The twelve complexes N1..N12
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check membership in a class; exit 1 if it fails
    Verify {
        /// Facet file, or a catalog id such as N3
        input: String,
        #[arg(long, value_enum)]
        class: ClassArg,
    },
    /// f-vector, homology, orientability and dual-graph data
    Invariants {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the boundary complex as a facet file
    Boundary {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exit 0 with a vertex map if isomorphic, 1 otherwise
    Isomorphic {
        first: String,
        second: String,
        #[arg(long)]
        json: bool,
    },
    /// Least isomorphic member of the class with Φ = ∏(ai,bi,ci)
    Minimal {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Automorphism group
    Aut {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the enumeration over the dual graphs G(r,9-r)
    Enumerate {
        #[arg(long, value_enum, default_value = "all")]
        graph: GraphArg,
        /// Template-free search instead of the case templates
        #[arg(long)]
        relaxed: bool,
        /// Directory for one facet file per class and summary.json
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Dual-graph family oracle
    Graphs {
        #[command(subcommand)]
        action: GraphsAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long)]
        json: bool,
    },
    Show {
        id: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GraphsAction {
    Classify {
        #[arg(long)]
        vertices: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    /// Vertex links are stacked balls
    Kbar,
    /// Kbar and neighborly, any dimension
    KbarStar,
    /// Kbar*, dimension 5
    Kbar5,
    /// Vertex links are stacked spheres
    K,
    KStar,
    /// K*, dimension 4
    K4,
    StackedBall,
    StackedSphere,
    /// Tight neighborly (dimension ≥ 3)
    Tight,
    /// Φ is an automorphism and the dual graph is G(r,9-r)
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphArg {
    G36,
    G45,
    G54,
    G63,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Subdivision,
}

/// Failure of a check (exit 1) versus inability to run it (exit 2).
enum Fail {
    Check(String),
    Usage(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

type Outcome = Result<(), Fail>;

fn load(input: &str) -> Result<SimplicialComplex, Fail> {
    let path = Path::new(input);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{input}: {e}")))?;
        return SimplicialComplex::parse_facet_file(&text).map_err(|e| Fail::Usage(format!("{input}: {e}")));
    }
    let id = input.strip_suffix(".facets").unwrap_or(input);
    if IDS.iter().any(|x| x.eq_ignore_ascii_case(id)) {
        return Ok(catalog_get(id)?);
    }
    Err(Fail::Usage(format!("{input}: no such file or catalog id")))
}

fn print_json<T: Serialize>(v: &T) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable report"));
}

fn check(ok: bool, msg: String) -> Outcome {
    if ok {
        out!("{msg}: yes");
        Ok(())
    } else {
        Err(Fail::Check(format!("{msg}: no")))
    }
}

fn verify(input: &str, class: ClassArg) -> Outcome {
    let k = load(input)?;
    let ok = match class {
        ClassArg::Kbar => in_kbar(&k, false),
        ClassArg::KbarStar => in_kbar(&k, true),
        ClassArg::Kbar5 => k.dim() == 5 && in_kbar(&k, true),
        ClassArg::K => in_k(&k, false),
        ClassArg::KStar => in_k(&k, true),
        ClassArg::K4 => k.dim() == 4 && in_k(&k, true),
        ClassArg::StackedBall => is_stacked_ball(&k),
        ClassArg::StackedSphere => is_stacked_sphere(&k),
        ClassArg::Tight => is_tight_neighborly(&k)?,
        ClassArg::C => encode(&k).is_ok(),
    };
    let name = class.to_possible_value().expect("named variant");
    check(ok, format!("{input} in {}", name.get_name()))
}

#[derive(Serialize)]
struct DualSection {
    nodes: usize,
    edges: usize,
    two_connected: bool,
    family: Option<String>,
    tree_sizes: Vec<usize>,
}

#[derive(Serialize)]
struct Invariants {
    vertices: usize,
    dimension: usize,
    f_vector: Vec<usize>,
    euler_characteristic: i64,
    z2_betti: Vec<usize>,
    neighborly: bool,
    pseudomanifold: bool,
    closed: bool,
    orientable: Option<bool>,
    dual_graph: DualSection,
}

fn invariants(input: &str, json: bool) -> Outcome {
    let k = load(input)?;
    let lambda = DualGraph::of(&k);
    let closed = k.ridge_counts().values().all(|&c| c == 2);
    let inv = Invariants {
        vertices: k.n(),
        dimension: k.dim(),
        f_vector: k.f_vector().0,
        euler_characteristic: k.euler_characteristic(),
        z2_betti: z2_betti(&k).0,
        neighborly: k.is_neighborly(),
        pseudomanifold: k.is_pseudomanifold(),
        closed,
        orientable: closed.then(|| orientable(&k)).transpose()?,
        dual_graph: DualSection {
            nodes: lambda.node_count(),
            edges: lambda.edge_count(),
            two_connected: lambda.is_two_connected(),
            family: lambda.to_simple_graph().ok().map(|g| classify(&g).to_string()),
            tree_sizes: k.vertices().map(|x| facet_tree(&lambda, x).nodes.len()).collect(),
        },
    };
    if json {
        print_json(&inv);
        return Ok(());
    }
    out!("vertices      {}", inv.vertices);
    out!("dimension     {}", inv.dimension);
    out!("f-vector      {:?}", inv.f_vector);
    out!("euler char    {}", inv.euler_characteristic);
    out!("Z2 betti      {:?}", inv.z2_betti);
    out!("neighborly    {}", inv.neighborly);
    out!("pseudomfd     {}", inv.pseudomanifold);
    out!("closed        {}", inv.closed);
    if let Some(o) = inv.orientable {
        out!("orientable    {o}");
    }
    let d = &inv.dual_graph;
    let family = d.family.as_deref().unwrap_or("-");
    out!("dual graph    {} nodes, {} edges, 2-connected {}, {family}", d.nodes, d.edges, d.two_connected);
    out!("tree sizes    {:?}", d.tree_sizes);
    Ok(())
}

fn boundary_cmd(input: &str, out: Option<&Path>) -> Outcome {
    let b = boundary(&load(input)?)?;
    let text = b.to_facet_file();
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())))?,
        None => out!("{}", text.trim_end()),
    }
    Ok(())
}

fn isomorphic_cmd(a: &str, b: &str, json: bool) -> Outcome {
    let (ka, kb) = (load(a)?, load(b)?);
    let map = isomorphic(&ka, &kb);
    if json {
        let pairs = map.as_ref().map(|m| {
            m.iter()
                .enumerate()
                .map(|(i, &j)| (ka.labels()[i].clone(), kb.labels()[j].clone()))
                .collect::<Vec<_>>()
        });
        print_json(&json!({ "isomorphic": map.is_some(), "map": pairs }));
    } else if let Some(m) = &map {
        out!("isomorphic");
        for (i, &j) in m.iter().enumerate() {
            out!("{} -> {}", ka.labels()[i], kb.labels()[j]);
        }
    }
    match map {
        Some(_) => Ok(()),
        None if json => Err(Fail::Check(String::new())),
        None => Err(Fail::Check("not isomorphic".into())),
    }
}

fn minimal_cmd(input: &str, exec: Exec, json: bool) -> Outcome {
    let k = load(input)?;
    let m = minimal_representative(&k, exec)?;
    if json {
        print_json(&json!({
            "string": m.string_rep.to_string(),
            "tuple": m.tuple,
            "relabelings": m.relabelings,
            "facets": m.complex.to_facet_file().lines().collect::<Vec<_>>(),
        }));
    } else {
        out!("# {}", m.tuple);
        out!("# {}", m.string_rep);
        out!("{}", m.complex.to_facet_file().trim_end());
    }
    Ok(())
}

fn cycles(perm: &[usize], labels: &[String]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(labels[x].as_str());
            x = perm[x];
        }
        out.push_str(&format!("({})", c.join(",")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn aut_cmd(input: &str, json: bool) -> Outcome {
    let k = load(input)?;
    let g = automorphisms(&k);
    let phi = phi_permutation(&k).ok();
    let has_phi = phi.as_ref().map(|p| contains_z3(&k, p) && g.contains(p));
    let gens: Vec<String> = g.generators.iter().map(|p| cycles(p, k.labels())).collect();
    if json {
        print_json(&json!({ "order": g.order, "generators": gens, "contains_phi": has_phi }));
    } else {
        out!("order {}", g.order);
        for s in &gens {
            out!("  {s}");
        }
        if let Some(h) = has_phi {
            out!("contains Φ: {h}");
        }
    }
    Ok(())
}

fn graphs_for(arg: GraphArg) -> Vec<GraphFamilyId> {
    let i = match arg {
        GraphArg::All => return DUAL_GRAPHS.to_vec(),
        GraphArg::G36 => 0,
        GraphArg::G45 => 1,
        GraphArg::G54 => 2,
        GraphArg::G63 => 3,
    };
    vec![DUAL_GRAPHS[i]]
}

fn catalog_match(k: &SimplicialComplex) -> Option<String> {
    IDS.iter()
        .find(|id| catalog_get(id).is_ok_and(|c| c.to_facet_file() == k.to_facet_file()))
        .or_else(|| IDS.iter().find(|id| catalog_get(id).is_ok_and(|c| isomorphic(&c, k).is_some())))
        .map(|s| s.to_string())
}

#[derive(Serialize)]
struct ClassSummary {
    index: usize,
    string: String,
    tuple: tightnb::enumeration::XYTuple,
    catalog: Option<String>,
}

fn write_classes(dir: &Path, rep: &EnumerationReport, summary: &serde_json::Value) -> Outcome {
    let io = |e: std::io::Error| Fail::Usage(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    for (i, c) in rep.classes.iter().enumerate() {
        let name = catalog_match(&c.complex).unwrap_or_else(|| format!("class{:02}", i + 1));
        fs::write(dir.join(format!("{name}.facets")), c.complex.to_facet_file()).map_err(io)?;
    }
    let text = serde_json::to_string_pretty(summary).expect("serializable report") + "\n";
    fs::write(dir.join("summary.json"), text).map_err(io)
}

fn enumerate_cmd(graph: GraphArg, relaxed: bool, out: Option<&Path>, exec: Exec, json: bool) -> Outcome {
    let graphs = graphs_for(graph);
    let start = Instant::now();
    if relaxed {
        let mut reports = Vec::new();
        for g in &graphs {
            let GraphFamilyId::G { r, .. } = g else { unreachable!() };
            reports.push(relaxed_search(*r, exec)?);
        }
        let summary = json!({ "mode": "relaxed", "graphs": reports });
        if let Some(dir) = out {
            fs::create_dir_all(dir).map_err(|e| Fail::Usage(format!("{}: {e}", dir.display())))?;
            let text = serde_json::to_string_pretty(&summary).expect("serializable report") + "\n";
            fs::write(dir.join("summary.json"), text).map_err(|e| Fail::Usage(e.to_string()))?;
        }
        if json {
            print_json(&summary);
        } else {
            for r in &reports {
                out!(
                    "{}  nodes {}  closed {}  members {}  classes {}",
                    r.graph,
                    r.nodes,
                    r.closed,
                    r.members,
                    r.classes.len()
                );
            }
            let total: usize = reports.iter().map(|r| r.classes.len()).sum();
            out!("total classes {total}");
            eprintln!("elapsed {:.2?}", start.elapsed());
        }
        return Ok(());
    }
    let rep = enumerate_all(&graphs, exec)?;
    let classes: Vec<ClassSummary> = rep
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| ClassSummary {
            index: i + 1,
            string: c.string_rep.to_string(),
            tuple: c.tuple,
            catalog: catalog_match(&c.complex),
        })
        .collect();
    let summary = json!({
        "mode": "templates",
        "graphs": rep.graphs,
        "total_classes": rep.total_classes,
        "classes": classes,
    });
    if let Some(dir) = out {
        write_classes(dir, &rep, &summary)?;
    }
    if json {
        print_json(&summary);
        return Ok(());
    }
    for g in &rep.graphs {
        out!("{}  classes {}", g.graph, g.classes);
        if let Some(w) = &g.witness {
            out!("  no templates: {w}");
        }
        for t in &g.templates {
            out!(
                "  {:<12} candidates {:>4}  chain {:>3}  degenerate {:>3}  members {:>2}  survivors {}",
                t.template,
                t.candidates,
                t.chain_errors,
                t.degenerate,
                t.members,
                t.survivors.len()
            );
        }
    }
    for c in &classes {
        out!("{:>2} {:<4} {}", c.index, c.catalog.as_deref().unwrap_or("-"), c.tuple);
    }
    out!("total classes {}", rep.total_classes);
    eprintln!("elapsed {:.2?}", start.elapsed());
    Ok(())
}

fn graphs_cmd(n: usize, mode: ModeArg, exec: Exec, json: bool) -> Outcome {
    let mode = match mode {
        ModeArg::Exhaustive => OracleMode::Exhaustive,
        ModeArg::Subdivision => OracleMode::Subdivision,
    };
    let rep = oracle_classification(n, mode, exec)?;
    if json {
        print_json(&rep);
    } else {
        out!("n = {}  scanned {}  qualifying {}", rep.n, rep.scanned, rep.qualifying);
        for c in &rep.classes {
            out!("  {}  degrees {:?}", c.family, c.degree_sequence);
        }
        let pred: Vec<String> = rep.predicted.iter().map(|f| f.to_string()).collect();
        out!("predicted {}", pred.join(" "));
        for note in &rep.notes {
            out!("note: {note}");
        }
    }
    if rep.matches_prediction {
        Ok(())
    } else if json {
        Err(Fail::Check(String::new()))
    } else {
        Err(Fail::Check("classification differs from prediction".into()))
    }
}

fn catalog_cmd(action: CatalogAction) -> Outcome {
    match action {
        CatalogAction::List { json } => {
            let all = catalog()?;
            if json {
                print_json(&all);
            } else {
                for e in &all {
                    let o = if e.boundary_orientable { "orientable" } else { "non-orientable" };
                    out!("{:<4} {:<7} {:<15} {}", e.id, e.graph, o, e.tuple);
                }
            }
        }
        CatalogAction::Show { id, json } => {
            let e = catalog_entry(&id)?;
            if json {
                let mut v = serde_json::to_value(&e).expect("serializable entry");
                v["facets"] = json!(e.complex.to_facet_file().lines().collect::<Vec<_>>());
                print_json(&v);
            } else {
                out!("{}", e.complex.to_facet_file().trim_end());
            }
        }
    }
    Ok(())
}

fn executor(jobs: Option<usize>) -> Result<Exec, Fail> {
    match jobs {
        Some(0) => Err(Fail::Usage("--jobs must be at least 1".into())),
        Some(1) => Ok(Exec::Sequential),
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Fail::Usage(e.to_string()))?;
            Ok(Exec::Parallel)
        }
        None => Ok(Exec::default()),
    }
}

fn run(cli: Cli) -> Outcome {
    let exec = executor(cli.jobs)?;
    match cli.command {
        Command::Catalog { action } => catalog_cmd(action),
        Command::Verify { input, class } => verify(&input, class),
        Command::Invariants { input, json } => invariants(&input, json),
        Command::Boundary { input, out } => boundary_cmd(&input, out.as_deref()),
        Command::Isomorphic { first, second, json } => isomorphic_cmd(&first, &second, json),
        Command::Minimal { input, json } => minimal_cmd(&input, exec, json),
        Command::Aut { input, json } => aut_cmd(&input, json),
        Command::Enumerate { graph, relaxed, out, json } => {
            enumerate_cmd(graph, relaxed, out.as_deref(), exec, json)
        }
        Command::Graphs {
            action: GraphsAction::Classify { vertices, mode, json },
        } => graphs_cmd(vertices, mode, exec, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(msg)) => {
            if !msg.is_empty() {
                out!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
