use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use mbgame::desk::run_suite;
use mbgame::generators::{generate, FamilySpec};
use mbgame::graph::{parse_graph, parse_vertex_set};
use mbgame::qgraph::{alice_strategy_qgraph_with, cg_qgraph_with, parse_tree, validate_tree};
use mbgame::reductions::{build_bipartite, build_planar, build_split, parse_cnf, parse_hex, ReductionKind};
use mbgame::solver::{cg_with, SolveOptions, DEFAULT_MAX_STATES};
use mbgame::strategies::{builtin_strategy, StrategySpec, BUILTINS};
use mbgame::verify::{random_playouts, verify_strategy_exhaustive, VerifyOptions};
use mbgame::{Error, GameVariant, Graph, Player};

#[derive(Parser)]
#[command(name = "mbgame", version, about = "Maker-Breaker largest connected subgraph game toolkit")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search states allowed before giving up (exit code 3).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: u64,
    /// Wall-clock limit in seconds (exit code 3 when hit).
    #[arg(long, global = true)]
    time_limit: Option<f64>,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact game value with a line of optimal play.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        /// plain, connected, target:FILE or skip:A,B[,target:FILE]
        #[arg(long, default_value = "plain")]
        variant: String,
        /// Disable alpha-beta cut-offs.
        #[arg(long)]
        no_prune: bool,
    },
    /// Guaranteed value of a named strategy against every opponent line.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, conflicts_with = "bob", required_unless_present = "bob")]
        alice: Option<String>,
        #[arg(long)]
        bob: Option<String>,
        #[arg(long, default_value = "plain")]
        variant: String,
        /// Also play this many games against a uniformly random opponent.
        #[arg(long, default_value_t = 0)]
        playouts: usize,
    },
    /// Game value from a decomposition tree.
    Qgraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        /// Verify the composed Alice strategy against exhaustive Bob.
        #[arg(long)]
        check_strategy: bool,
    },
    /// Build a hardness construction from a CNF or Hex instance.
    Reduce {
        #[arg(long)]
        kind: String,
        #[arg(long = "in")]
        input: PathBuf,
        /// Write the graph here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a graph family in the graph format.
    Generate {
        family: String,
        /// key=value parameters
        params: Vec<String>,
    },
    /// Run a benchmark suite.
    Bench {
        #[arg(long, default_value = "desk")]
        suite: String,
        /// Comma-separated criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Suite,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Run = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn with_file<T>(path: &Path, f: impl FnOnce(&str) -> mbgame::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    f(&text).map_err(|e| match e {
        Error::Parse { .. } => Failure::Io(format!("{}: {e}", path.display())),
        e => Failure::Lib(e),
    })
}

fn solve_options(g: &Global) -> SolveOptions {
    SolveOptions {
        max_states: g.max_states,
        time_limit: g.time_limit.map(Duration::from_secs_f64),
        threads: g.threads,
        pruning: true,
    }
}

fn parse_variant(text: &str) -> Result<GameVariant, Failure> {
    let target = |spec: &str| -> Result<_, Failure> {
        let file = spec
            .strip_prefix("target:")
            .ok_or_else(|| Error::domain(format!("expected target:FILE, found `{spec}`")))?;
        with_file(Path::new(file), parse_vertex_set)
    };
    match text {
        "plain" => Ok(GameVariant::Plain),
        "connected" => Ok(GameVariant::Connected),
        t if t.starts_with("target:") => Ok(GameVariant::TargetSet(target(t)?)),
        t if t.starts_with("skip:") => {
            let mut parts = t["skip:".len()..].splitn(3, ',');
            let mut budget = || -> Result<u8, Failure> {
                parts
                    .next()
                    .and_then(|x| x.parse().ok())
                    .ok_or_else(|| Error::domain("skip variant needs skip:A,B with budgets 0 or 1").into())
            };
            let (alice, bob) = (budget()?, budget()?);
            let target = parts.next().map(target).transpose()?;
            Ok(GameVariant::SkipBudget { alice, bob, target })
        }
        t => Err(Error::domain(format!("unknown variant `{t}`")).into()),
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    with_file(path, parse_graph)
}

fn solve(g: &Global, graph: &Path, variant: &str, no_prune: bool) -> Run {
    let graph = load_graph(graph)?;
    let variant = parse_variant(variant)?;
    let opts = SolveOptions { pruning: !no_prune, ..solve_options(g) };
    let r = cg_with(&graph, &variant, &opts)?;
    let pv: Vec<String> = r.principal_variation.iter().map(|m| m.to_string()).collect();
    Ok(format!("c_g = {}\nstates expanded: {}\nprincipal variation: {}\n", r.value, r.states_expanded, pv.join(" ")))
}

fn verify(g: &Global, graph: &Path, alice: Option<&str>, bob: Option<&str>, variant: &str, playouts: usize) -> Run {
    let graph = load_graph(graph)?;
    let variant = parse_variant(variant)?;
    let (side, name) = match (alice, bob) {
        (Some(a), None) => (Player::Alice, a),
        (None, Some(b)) => (Player::Bob, b),
        _ => return Err(Error::domain("give exactly one of --alice and --bob").into()),
    };
    let spec = StrategySpec::parse(name)?;
    let opts = solve_options(g);
    let s = builtin_strategy(&spec, &graph, &variant, side, &opts)?;
    let vopts = VerifyOptions { max_states: g.max_states, threads: g.threads };
    let r = verify_strategy_exhaustive(&graph, &variant, &s, side, vopts)?;
    let mut out = format!("strategy: {} ({side})\nguaranteed value = {}\nstates: {}\n", s.name(), r.value, r.states);
    if playouts > 0 {
        let p = random_playouts(&graph, &variant, &s, side, playouts, g.seed)?;
        writeln!(out, "random playouts: {} plays, min {}, max {}", p.plays, p.min, p.max).expect("string write");
    }
    Ok(out)
}

fn qgraph(g: &Global, graph: &Path, tree: &Path, check: bool) -> Run {
    let graph = load_graph(graph)?;
    let tree = with_file(tree, parse_tree)?;
    if let Err(d) = validate_tree(&graph, &tree) {
        return Err(Error::domain(format!("invalid tree: {d}")).into());
    }
    let opts = solve_options(g);
    let r = cg_qgraph_with(&graph, &tree, &opts)?;
    let mut out =
        format!("tree valid (q = {}, {} nodes)\nc_g = {}\nops: {}\n", tree.q, tree.root.size(), r.value, r.ops);
    if check {
        let s = alice_strategy_qgraph_with(&graph, &tree, &opts)?;
        let vopts = VerifyOptions { max_states: g.max_states, threads: g.threads };
        let v = verify_strategy_exhaustive(&graph, &GameVariant::Plain, &s, Player::Alice, vopts)?;
        writeln!(out, "strategy guarantees {}", v.value).expect("string write");
    }
    Ok(out)
}

fn reduce(kind: &str, input: &Path, out: Option<&Path>) -> Run {
    let kind = ReductionKind::parse(kind)?;
    let built = match kind {
        ReductionKind::Bipartite => build_bipartite(&with_file(input, parse_cnf)?)?,
        ReductionKind::Split => build_split(&with_file(input, parse_cnf)?)?,
        ReductionKind::Planar => build_planar(&with_file(input, parse_hex)?)?,
    };
    let summary = format!("# k = {}, |V| = {}\n", built.k, built.g.n());
    match out {
        Some(path) => {
            fs::write(path, built.to_text()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            Ok(summary)
        }
        None => Ok(summary + &built.to_text()),
    }
}

fn generate_cmd(g: &Global, family: &str, params: &[String]) -> Run {
    let mut spec = FamilySpec::parse(family, params)?;
    if matches!(family, "gnm" | "random_connected" | "random_cubic") {
        spec.params.entry("seed".into()).or_insert(g.seed as usize);
    }
    Ok(generate(&spec)?.to_text())
}

fn bench(suite: &str, only: &[u8]) -> Run {
    if suite != "desk" {
        return Err(Error::domain(format!("unknown suite `{suite}`; only `desk` exists")).into());
    }
    let outcomes = run_suite((!only.is_empty()).then_some(only));
    let mut out = String::new();
    for o in &outcomes {
        writeln!(out, "{o}").expect("string write");
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    writeln!(out, "{passed}/{} criteria passed", outcomes.len()).expect("string write");
    print!("{out}");
    if passed == outcomes.len() {
        Ok(String::new())
    } else {
        Err(Failure::Suite)
    }
}

fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Solve { graph, variant, no_prune } => solve(g, graph, variant, *no_prune),
        Cmd::Verify { graph, alice, bob, variant, playouts } => {
            verify(g, graph, alice.as_deref(), bob.as_deref(), variant, *playouts)
        }
        Cmd::Qgraph { graph, tree, check_strategy } => qgraph(g, graph, tree, *check_strategy),
        Cmd::Reduce { kind, input, out } => reduce(kind, input, out.as_deref()),
        Cmd::Generate { family, params } => generate_cmd(g, family, params),
        Cmd::Bench { suite, only } => bench(suite, only),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Suite) => ExitCode::from(1),
        Err(Failure::Lib(e)) if e.is_budget() => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            if matches!(e, Error::Domain(ref m) if m.starts_with("unknown strategy")) {
                let names: Vec<&str> = BUILTINS.iter().map(|(n, _)| *n).collect();
                eprintln!("error: {e}; known strategies: {}", names.join(", "));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
