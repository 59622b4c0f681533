//! `gdom`: solve, verify, generate, and benchmark grouped-domination
//! instances.
//!
//! Exit codes for `solve`: 0 solved (including a NO decision), 2 reported
//! infeasible, 3 state/time budget exceeded, 1 usage or parse error.

use clap::{Args, Parser, Subcommand};
use grouped_domination::cnf::parse_dimacs_cnf;
use grouped_domination::generators::{
    gen_bipartite_paths, gen_bipartite_t_gadget, gen_from_3sat, gen_planted_twin_cover,
    gen_planted_vc, gen_split_k_copies, gen_split_r_copies, GeneratedInstance, InstanceSidecar,
    SourceRecord,
};
use grouped_domination::graph::{parse_graph, Graph, GraphFormat};
use grouped_domination::report::{ErrorReport, SolveReport};
use grouped_domination::reductions::SolveRun;
use grouped_domination::solution::{
    brute_force_min_units, GroupedSolution, SolutionJson, SolveError,
};
use grouped_domination::vcdp::DEFAULT_STATE_BUDGET;
use grouped_domination::{solve_detailed, verify_solution, Algo, CoverKind, SolveOptions, VertexSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "gdom", version, about = "Exact solvers for r-grouped dominating sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the minimum number of r-units (or decide k* <= k).
    Solve(SolveArgs),
    /// Check a solution file against a graph.
    Verify(VerifyArgs),
    /// Write instance files produced by the reduction and planted generators.
    #[command(subcommand)]
    Generate(GenerateCmd),
    /// Run a suite of (instance, r, algo) rows and write a CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file.
    #[arg(long)]
    input: PathBuf,
    /// Input format: edge-list or dimacs.
    #[arg(long, default_value = "edge-list")]
    format: GraphFormat,
    /// Unit size.
    #[arg(long)]
    r: usize,
    /// Decision bound: also answer whether k* <= k.
    #[arg(long)]
    k: Option<usize>,
    /// auto, brute, vc-dp, tc-dp, xp, or big-r.
    #[arg(long, default_value = "auto")]
    algo: Algo,
    /// Emit the machine-readable JSON report.
    #[arg(long)]
    json: bool,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Maximum number of DP table entries.
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    state_budget: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file.
    #[arg(long)]
    input: PathBuf,
    /// Input format: edge-list or dimacs.
    #[arg(long, default_value = "edge-list")]
    format: GraphFormat,
    /// Solution JSON file ({"r": .., "units": [[..], ..]}).
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Copies of a split source with the clique parts joined (k copies).
    SplitK(SplitGenArgs),
    /// Copies of a split source with the clique parts joined (r copies).
    SplitR(SplitGenArgs),
    /// Bipartite gadget construction (unit size becomes r + 1).
    BipT(SplitGenArgs),
    /// Bipartite construction with k pendant paths of r vertices.
    BipPaths(SplitGenArgs),
    /// Variable-gadget construction from a 3-SAT formula.
    Sat(SatGenArgs),
    /// Random graph with a planted vertex cover.
    PlantedVc(PlantedVcArgs),
    /// Random graph with a planted twin cover.
    PlantedTc(PlantedTcArgs),
}

#[derive(Args)]
struct SplitGenArgs {
    /// Split source graph.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "edge-list")]
    format: GraphFormat,
    /// Comma-separated clique-part vertex ids, e.g. 0,1,2.
    #[arg(long)]
    clique: String,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    k: usize,
    /// Output prefix: writes PREFIX.gr and PREFIX.json.
    #[arg(long)]
    out: PathBuf,
    /// Solve sources up to this size by brute force to record the
    /// expected answer.
    #[arg(long, default_value_t = 16)]
    oracle_cap: usize,
}

#[derive(Args)]
struct SatGenArgs {
    /// DIMACS cnf file with at most three literals per clause.
    #[arg(long)]
    cnf: PathBuf,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    out: PathBuf,
    /// Enumerate assignments up to this many variables to record the
    /// expected answer.
    #[arg(long, default_value_t = 20)]
    oracle_cap: usize,
}

#[derive(Args)]
struct PlantedVcArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    nu: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PlantedTcArgs {
    /// Number of cover vertices.
    #[arg(long)]
    cover: usize,
    /// Twin classes as size@attach-list, semicolon-separated,
    /// e.g. "2@0;3@0,1".
    #[arg(long)]
    classes: String,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Suite file: one "instance-path r algo" row per line, # comments.
    #[arg(long)]
    suite: PathBuf,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Generate(cmd) => cmd_generate(cmd),
        Command::Bench(args) => cmd_bench(args),
    };
    ExitCode::from(code)
}

fn read_graph(path: &Path, format: GraphFormat) -> Result<Graph, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_graph(&text, format).map_err(|e| format!("{}: {e}", path.display()))
}

fn solve_error_exit(e: &SolveError) -> u8 {
    match e {
        SolveError::InvalidArgument(_) => 1,
        SolveError::StateBudget { .. } | SolveError::TimeLimit | SolveError::Internal(_) => 3,
    }
}

fn cmd_solve(args: SolveArgs) -> u8 {
    let fail = |kind: &str, msg: String, code: u8| -> u8 {
        if args.json {
            println!(
                "{}",
                serde_json::to_string_pretty(&ErrorReport::new(kind, &msg)).unwrap()
            );
        } else {
            eprintln!("error: {msg}");
        }
        code
    };
    let g = match read_graph(&args.input, args.format) {
        Ok(g) => g,
        Err(e) => return fail("parse", e, 1),
    };
    let opts = SolveOptions {
        algo: args.algo,
        k_bound: args.k,
        state_budget: args.state_budget,
        time_limit: args.time_limit.map(Duration::from_secs_f64),
        ..SolveOptions::default()
    };
    let run = match solve_detailed(&g, args.r, &opts) {
        Ok(run) => run,
        Err(e) => {
            let kind = ErrorReport::from_solve_error(&e).error.kind;
            return fail(&kind, e.to_string(), solve_error_exit(&e));
        }
    };
    if args.json {
        let report = SolveReport::from_run(&run, &args.algo.to_string(), args.k);
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        print_human_report(&run, args.k);
    }
    if run.outcome.is_feasible() {
        0
    } else {
        2
    }
}

fn print_human_report(run: &SolveRun, k_bound: Option<usize>) {
    let outcome = &run.outcome;
    match outcome.min_units {
        Some(k) => {
            println!("k* = {k}");
            if let Some(sol) = &outcome.solution {
                for (i, unit) in sol.units.iter().enumerate() {
                    println!("unit {}: {unit}", i + 1);
                }
            }
        }
        None => println!("infeasible"),
    }
    if let Some(k) = k_bound {
        let yes = outcome.decision(k);
        match outcome.min_units {
            Some(m) => println!(
                "decision: {} (k* = {m} {} {k})",
                if yes { "YES" } else { "NO" },
                if yes { "<=" } else { ">" }
            ),
            None => println!("decision: NO (nothing within the bound)"),
        }
    }
    for comp in &run.components {
        match &comp.cover {
            Some(c) => println!(
                "component at vertex {} (n={}): algo {}, cover {} size {} {}",
                comp.rep,
                comp.n,
                comp.algo,
                cover_kind_name(c.kind),
                c.size(),
                c.members
            ),
            None => println!(
                "component at vertex {} (n={}): algo {}",
                comp.rep, comp.n, comp.algo
            ),
        }
    }
    println!("states: {}", outcome.stats.states);
    println!("nodes: {}", outcome.stats.nodes);
    println!("time: {:.3}s", outcome.stats.wall.as_secs_f64());
}

fn cover_kind_name(kind: CoverKind) -> &'static str {
    match kind {
        CoverKind::VertexCover => "vertex-cover",
        CoverKind::TwinCover => "twin-cover",
    }
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let g = match read_graph(&args.input, args.format) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let text = match fs::read_to_string(&args.solution) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.solution.display());
            return 1;
        }
    };
    let json: SolutionJson = match serde_json::from_str(&text) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {}: {e}", args.solution.display());
            return 1;
        }
    };
    let sol = match GroupedSolution::try_from(json) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", args.solution.display());
            return 1;
        }
    };
    match verify_solution(&g, &sol) {
        Ok(()) => {
            println!("valid: {} units of size {}", sol.units.len(), sol.r);
            0
        }
        Err(violation) => {
            println!("invalid: {violation}");
            2
        }
    }
}

fn parse_id_list(s: &str) -> Result<VertexSet, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid vertex id {t:?}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|ids| ids.into_iter().collect())
}

fn parse_classes(s: &str) -> Result<Vec<(usize, VertexSet)>, String> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|part| {
            let (size, attach) = part
                .split_once('@')
                .ok_or_else(|| format!("class {part:?} must look like size@id,id"))?;
            let size = size
                .trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid class size {size:?}"))?;
            Ok((size, parse_id_list(attach)?))
        })
        .collect()
}

/// Minimum dominating set size of a small source graph, when it fits the
/// oracle cap.
fn source_ds_min(g: &Graph, cap: usize) -> Option<usize> {
    if g.n() > cap {
        return None;
    }
    brute_force_min_units(g, 1, None)
        .ok()
        .and_then(|o| o.min_units)
}

fn write_instance(out: &Path, graph: &Graph, sidecar: &InstanceSidecar) -> Result<(), String> {
    let gr = out.with_extension("gr");
    let js = out.with_extension("json");
    fs::write(&gr, graph.to_edge_list_string())
        .map_err(|e| format!("cannot write {}: {e}", gr.display()))?;
    fs::write(&js, serde_json::to_string_pretty(sidecar).unwrap())
        .map_err(|e| format!("cannot write {}: {e}", js.display()))?;
    Ok(())
}

fn finish_generated(out: &Path, inst: &GeneratedInstance) -> u8 {
    if let Err(e) = write_instance(out, &inst.graph, &inst.sidecar()) {
        eprintln!("error: {e}");
        return 1;
    }
    println!(
        "wrote {}.gr / {}.json: reduction={} n={} m={} r={} k={} expected={}",
        out.display(),
        out.display(),
        inst.reduction,
        inst.graph.n(),
        inst.graph.m(),
        inst.r,
        inst.k,
        match inst.expected {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        }
    );
    0
}

fn cmd_generate(cmd: GenerateCmd) -> u8 {
    match cmd {
        GenerateCmd::SplitK(args) => split_generate(args, gen_split_k_copies, SourceBound::R),
        GenerateCmd::SplitR(args) => split_generate(args, gen_split_r_copies, SourceBound::K),
        GenerateCmd::BipT(args) => split_generate(args, gen_bipartite_t_gadget, SourceBound::R),
        GenerateCmd::BipPaths(args) => split_generate(args, gen_bipartite_paths, SourceBound::K),
        GenerateCmd::Sat(args) => sat_generate(args),
        GenerateCmd::PlantedVc(args) => planted_vc_generate(args),
        GenerateCmd::PlantedTc(args) => planted_tc_generate(args),
    }
}

/// Which of (r, k) bounds the source's dominating set in the reduction.
enum SourceBound {
    R,
    K,
}

fn split_generate<F>(args: SplitGenArgs, gen: F, bound: SourceBound) -> u8
where
    F: Fn(&Graph, VertexSet, usize, usize) -> Result<GeneratedInstance, SolveError>,
{
    let g = match read_graph(&args.input, args.format) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let clique = match parse_id_list(&args.clique) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let mut inst = match gen(&g, clique, args.r, args.k) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if let Some(ds) = source_ds_min(&g, args.oracle_cap) {
        let limit = match bound {
            SourceBound::R => args.r,
            SourceBound::K => args.k,
        };
        inst.expected = Some(ds <= limit);
    }
    finish_generated(&args.out, &inst)
}

fn sat_generate(args: SatGenArgs) -> u8 {
    let text = match fs::read_to_string(&args.cnf) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.cnf.display());
            return 1;
        }
    };
    let cnf = match parse_dimacs_cnf(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", args.cnf.display());
            return 1;
        }
    };
    let mut inst = match gen_from_3sat(&cnf, args.r) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if cnf.num_vars <= args.oracle_cap {
        inst.expected = cnf.satisfiable_brute(args.oracle_cap).ok();
    }
    finish_generated(&args.out, &inst)
}

fn planted_vc_generate(args: PlantedVcArgs) -> u8 {
    if args.nu > args.n || args.n > grouped_domination::MAX_VERTICES {
        eprintln!(
            "error: need nu <= n <= {}",
            grouped_domination::MAX_VERTICES
        );
        return 1;
    }
    let g = gen_planted_vc(args.n, args.nu, args.p, args.seed);
    let sidecar = InstanceSidecar {
        reduction: "planted-vc".into(),
        r: None,
        k: None,
        source: SourceRecord::PlantedVc {
            n: args.n,
            nu: args.nu,
            p: args.p,
        },
        seed: Some(args.seed),
        expected: None,
    };
    if let Err(e) = write_instance(&args.out, &g, &sidecar) {
        eprintln!("error: {e}");
        return 1;
    }
    println!(
        "wrote {}.gr / {}.json: planted-vc n={} m={} nu={} seed={}",
        args.out.display(),
        args.out.display(),
        g.n(),
        g.m(),
        args.nu,
        args.seed
    );
    0
}

fn planted_tc_generate(args: PlantedTcArgs) -> u8 {
    let classes = match parse_classes(&args.classes) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let g = match gen_planted_twin_cover(args.cover, &classes, args.p, args.seed) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let sidecar = InstanceSidecar {
        reduction: "planted-tc".into(),
        r: None,
        k: None,
        source: SourceRecord::PlantedTc {
            n_cover: args.cover,
            classes: classes.iter().map(|(s, a)| (*s, a.to_vec())).collect(),
            p: args.p,
        },
        seed: Some(args.seed),
        expected: None,
    };
    if let Err(e) = write_instance(&args.out, &g, &sidecar) {
        eprintln!("error: {e}");
        return 1;
    }
    println!(
        "wrote {}.gr / {}.json: planted-tc n={} m={} cover={} seed={}",
        args.out.display(),
        args.out.display(),
        g.n(),
        g.m(),
        args.cover,
        args.seed
    );
    0
}

fn sniff_format(text: &str) -> GraphFormat {
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        return if t.starts_with("c ") || t.starts_with("p ") || t.starts_with("e ") {
            GraphFormat::Dimacs
        } else {
            GraphFormat::EdgeList
        };
    }
    GraphFormat::EdgeList
}

fn cmd_bench(args: BenchArgs) -> u8 {
    let suite = match fs::read_to_string(&args.suite) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.suite.display());
            return 1;
        }
    };
    let mut writer = match csv::Writer::from_path(&args.out) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", args.out.display());
            return 1;
        }
    };
    writer
        .write_record([
            "instance",
            "n",
            "m",
            "cover-kind",
            "cover-size",
            "r",
            "algo",
            "k_star",
            "states",
            "seconds",
            "status",
        ])
        .expect("csv header");
    for raw in suite.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
        let mut record = BenchRecord::new(tokens.first().copied().unwrap_or("").to_string());
        record.run(&tokens);
        writer.write_record(record.fields()).expect("csv row");
    }
    writer.flush().expect("csv flush");
    println!("wrote {}", args.out.display());
    0
}

#[derive(Default)]
struct BenchRecord {
    instance: String,
    n: String,
    m: String,
    cover_kind: String,
    cover_size: String,
    r: String,
    algo: String,
    k_star: String,
    states: String,
    seconds: String,
    status: String,
}

impl BenchRecord {
    fn new(instance: String) -> Self {
        BenchRecord {
            instance,
            ..BenchRecord::default()
        }
    }

    fn run(&mut self, tokens: &[&str]) {
        if tokens.len() != 3 {
            self.status = "bad-row".into();
            return;
        }
        let (path, r_str, algo_str) = (tokens[0], tokens[1], tokens[2]);
        self.r = r_str.to_string();
        self.algo = algo_str.to_string();
        let Ok(r) = r_str.parse::<usize>() else {
            self.status = "bad-row".into();
            return;
        };
        let Ok(algo) = algo_str.parse::<Algo>() else {
            self.status = "bad-row".into();
            return;
        };
        let Ok(text) = fs::read_to_string(path) else {
            self.status = "read-error".into();
            return;
        };
        let Ok(g) = parse_graph(&text, sniff_format(&text)) else {
            self.status = "parse-error".into();
            return;
        };
        self.n = g.n().to_string();
        self.m = g.m().to_string();
        let opts = SolveOptions {
            algo,
            ..SolveOptions::default()
        };
        match solve_detailed(&g, r, &opts) {
            Ok(run) => {
                let report = SolveReport::from_run(&run, algo_str, None);
                if let Some(c) = &report.cover {
                    self.cover_kind = cover_kind_name(c.kind).to_string();
                    self.cover_size = c.size.to_string();
                }
                self.k_star = report
                    .k_star
                    .map(|k| k.to_string())
                    .unwrap_or_else(|| "infeasible".into());
                self.states = report.stats.states.to_string();
                self.seconds = format!("{:.6}", report.stats.seconds);
                self.status = if run.outcome.is_feasible() {
                    "ok".into()
                } else {
                    "infeasible".into()
                };
            }
            Err(SolveError::StateBudget { .. }) => self.status = "budget".into(),
            Err(SolveError::TimeLimit) => self.status = "time-limit".into(),
            Err(e) => self.status = format!("error: {e}"),
        }
    }

    fn fields(&self) -> [&str; 11] {
        [
            &self.instance,
            &self.n,
            &self.m,
            &self.cover_kind,
            &self.cover_size,
            &self.r,
            &self.algo,
            &self.k_star,
            &self.states,
            &self.seconds,
            &self.status,
        ]
    }
}
