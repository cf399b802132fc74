use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use partialcover::bench::{format_table, run_suite, Suite};
use partialcover::format::{parse_mcq, parse_wpvc, write_mcq, write_wpvc, ParsedMcq, ParsedWpvc};
use partialcover::gadgets::{pendantize, reduce_mcq_to_wpvcbd};
use partialcover::generate::{gen_bipartite, gen_bounded_degree, gen_mcq_planted, GenParams};
use partialcover::instance::{CoverSolution, SolveReport, Variant, WpvcInstance};
use partialcover::oracle::{oracle_fractional, oracle_mcq, oracle_pvcbm, oracle_wpvc, DEFAULT_CAP};
use partialcover::report::{render_json, render_text};
use partialcover::{
    solve_epvcbd, solve_pvcbm, solve_wpvc_bounded_degree, solve_wpvc_by_l, solve_wpvcbfd, Graph, Verdict,
};

#[derive(Parser)]
#[command(name = "partialcover", version, about = "Exact solvers for partial vertex cover variants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance with one of the parameterized algorithms.
    Solve(SolveArgs),
    /// Decide an instance by exhaustive search.
    Oracle(OracleArgs),
    /// Reduce a multi-colored clique instance to a weighted bipartite instance.
    Reduce(ReduceArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Run a benchmark suite and check the node-count bounds.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alg {
    Epvcbd,
    BoundedDegree,
    #[value(name = "by-L", alias = "by-l")]
    ByL,
    Fractional,
    Pvcbm,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Wpvc,
    Epvc,
    Vpvc,
    Pvc,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Wpvc => Variant::Wpvc,
            VariantArg::Epvc => Variant::Epvc,
            VariantArg::Vpvc => Variant::Vpvc,
            VariantArg::Pvc => Variant::Pvc,
        }
    }
}

#[derive(Args)]
struct MatchingArgs {
    /// Vertex budget (defaults to R from the file).
    #[arg(long)]
    k1: Option<usize>,
    /// Edges to cover (defaults to L from the file).
    #[arg(long)]
    k2: Option<usize>,
    /// Required matching size among the covered edges.
    #[arg(long, default_value_t = 0)]
    k3: usize,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    alg: Alg,
    /// Degree bound for `bounded-degree` (defaults to the maximum degree).
    #[arg(long)]
    degree: Option<usize>,
    #[command(flatten)]
    matching: MatchingArgs,
    /// Override the variant inferred from the weights.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Re-check the witness and compare with the oracle when it is small enough.
    #[arg(long)]
    verify: bool,
    /// Largest number of candidate vertices handed to the oracle.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    oracle_cap: usize,
    /// Print the report as one JSON object.
    #[arg(long)]
    json_like: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Wpvc,
    Fractional,
    Pvcbm,
    Mcq,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    /// Problem to decide; `mcq` files are detected from their header.
    #[arg(long, value_enum)]
    kind: Option<OracleKind>,
    #[command(flatten)]
    matching: MatchingArgs,
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long)]
    json_like: bool,
}

#[derive(Args)]
struct ReduceArgs {
    file: PathBuf,
    /// Replace the heavy-vertex edges by unit-profit pendant vertices.
    #[arg(long)]
    pendantize: bool,
    /// Output file (stdout by default).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    BipartiteRandom,
    BoundedDegree,
    McqPlanted,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 12)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    max_cost: u64,
    #[arg(long, default_value_t = 1)]
    max_profit: u64,
    /// Budget R written to the header.
    #[arg(long, default_value_t = 2)]
    budget: u64,
    /// Threshold L written to the header.
    #[arg(long, default_value_t = 4)]
    threshold: u64,
    #[arg(long, default_value_t = 3)]
    degree: usize,
    /// Number of colors for `mcq-planted`.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    class_size: usize,
    /// Chance, in percent, of each cross-class edge outside the clique.
    #[arg(long, default_value_t = 30)]
    edge_percent: u64,
    /// Do not plant a clique.
    #[arg(long)]
    no_plant: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// TOML suite; the bundled default suite when omitted.
    #[arg(long)]
    suite: Option<PathBuf>,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn is_mcq(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.split_whitespace().nth(1) == Some("mcq"))
}

fn load_wpvc(path: &Path, variant: Option<VariantArg>) -> Result<ParsedWpvc, Failure> {
    let text = read(path)?;
    let parsed = parse_wpvc(&text, variant.map(Variant::from)).map_err(|e| Failure(format!("parse error: {e}")))?;
    if let Err(violations) = parsed.instance.validate() {
        let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure(msgs.join("; ")));
    }
    Ok(parsed)
}

fn load_mcq(path: &Path) -> Result<ParsedMcq, Failure> {
    let parsed = parse_mcq(&read(path)?).map_err(|e| Failure(format!("parse error: {e}")))?;
    for &(u, v) in parsed.instance.dropped_edges() {
        eprintln!(
            "warning: dropped edge {}-{} inside color class {}",
            parsed.labels[u],
            parsed.labels[v],
            parsed.instance.color(u)
        );
    }
    Ok(parsed)
}

fn verdict_code(v: Verdict) -> ExitCode {
    if v.is_yes() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_report(report: &SolveReport, g: &Graph, labels: &[String], json: bool, extra: &[(&str, String)]) {
    if json {
        let mut value: serde_json::Value =
            serde_json::from_str(&render_json(report, g, Some(labels))).expect("report renders valid JSON");
        for (k, v) in extra {
            value[*k] = serde_json::Value::from(v.clone());
        }
        println!("{value}");
    } else {
        print!("{}", render_text(report, g, Some(labels)));
        for (k, v) in extra {
            println!("{k}={v}");
        }
    }
}

fn matching_params(m: &MatchingArgs, inst: &WpvcInstance) -> Result<(usize, usize, usize), Failure> {
    let k1 = match m.k1 {
        Some(k) => k,
        None => inst.budget.to_usize().ok_or_else(|| Failure("R does not fit k1".into()))?,
    };
    let k2 = match m.k2 {
        Some(k) => k,
        None => inst.threshold.to_usize().ok_or_else(|| Failure("L does not fit k2".into()))?,
    };
    Ok((k1, k2, m.k3))
}

fn affordable(inst: &WpvcInstance) -> usize {
    inst.graph.vertices().filter(|&v| *inst.graph.cost(v) <= inst.budget).count()
}

/// Re-evaluates the witness from scratch and compares with the oracle.
fn verify(args: &SolveArgs, inst: &WpvcInstance, report: &SolveReport) -> Result<String, Failure> {
    let g = &inst.graph;
    if let Some(w) = &report.witness {
        let again = CoverSolution::evaluate(g, w.integral.iter().copied(), w.fractional.clone());
        if again != *w {
            return Err(Failure("verification failed: witness cost or profit is misreported".into()));
        }
        if args.alg == Alg::Pvcbm {
            let (k1, k2, k3) = matching_params(&args.matching, inst)?;
            let covered = g.coverage(&w.integral.iter().copied().collect::<Vec<_>>())?;
            let m = report.matching.as_ref().ok_or_else(|| Failure("verification failed: no matching".into()))?;
            let ok = w.integral.len() <= k1
                && covered.edges.len() >= k2
                && m.size() >= k3
                && m.is_valid_for(g)
                && m.edges.iter().all(|e| covered.edges.contains(e));
            if !ok {
                return Err(Failure("verification failed: matching witness does not check out".into()));
            }
        } else if !inst.accepts(w) {
            return Err(Failure("verification failed: witness misses the budget or threshold".into()));
        }
    }
    let oracle = match args.alg {
        Alg::Fractional if g.n() <= args.oracle_cap => Some(oracle_fractional(inst, args.oracle_cap, true)?),
        Alg::Pvcbm if g.n() <= args.oracle_cap => {
            let (k1, k2, k3) = matching_params(&args.matching, inst)?;
            Some(oracle_pvcbm(g, k1, k2, k3, args.oracle_cap)?)
        }
        Alg::Epvcbd | Alg::BoundedDegree | Alg::ByL if affordable(inst) <= args.oracle_cap => {
            Some(oracle_wpvc(inst, args.oracle_cap)?)
        }
        _ => None,
    };
    match oracle {
        Some(o) if o.verdict != report.verdict => Err(Failure(format!(
            "verification failed: solver says {}, oracle says {}",
            report.verdict, o.verdict
        ))),
        Some(_) => Ok("oracle".into()),
        None => Ok("witness-only".into()),
    }
}

fn cmd_solve(args: SolveArgs) -> Outcome {
    let parsed = load_wpvc(&args.file, args.variant)?;
    let inst = &parsed.instance;
    let report = match args.alg {
        Alg::Epvcbd => solve_epvcbd(inst)?,
        Alg::BoundedDegree => solve_wpvc_bounded_degree(inst, args.degree.unwrap_or(inst.graph.max_degree()))?,
        Alg::ByL => solve_wpvc_by_l(inst)?,
        Alg::Fractional => solve_wpvcbfd(inst)?,
        Alg::Pvcbm => {
            let (k1, k2, k3) = matching_params(&args.matching, inst)?;
            solve_pvcbm(&inst.graph, k1, k2, k3)?
        }
    };
    let mut extra = Vec::new();
    if args.verify {
        extra.push(("verified", verify(&args, inst, &report)?));
    }
    print_report(&report, &inst.graph, &parsed.labels, args.json_like, &extra);
    Ok(verdict_code(report.verdict))
}

fn cmd_oracle(args: OracleArgs) -> Outcome {
    let text = read(&args.file)?;
    let kind = args.kind.unwrap_or(if is_mcq(&text) { OracleKind::Mcq } else { OracleKind::Wpvc });
    if kind == OracleKind::Mcq {
        let parsed = load_mcq(&args.file)?;
        let clique = oracle_mcq(&parsed.instance)?;
        let names: Vec<&str> = clique.iter().flatten().map(|&v| parsed.labels[v].as_str()).collect();
        let verdict = if clique.is_some() { Verdict::Yes } else { Verdict::No };
        if args.json_like {
            println!("{}", serde_json::json!({ "verdict": verdict.to_string(), "clique": names }));
        } else {
            println!("verdict={verdict}");
            if clique.is_some() {
                println!("clique={}", names.join(","));
            }
        }
        return Ok(verdict_code(verdict));
    }
    let parsed = load_wpvc(&args.file, args.variant)?;
    let inst = &parsed.instance;
    let report = match kind {
        OracleKind::Wpvc => oracle_wpvc(inst, args.cap)?,
        OracleKind::Fractional => oracle_fractional(inst, args.cap, true)?,
        OracleKind::Pvcbm => {
            let (k1, k2, k3) = matching_params(&args.matching, inst)?;
            oracle_pvcbm(&inst.graph, k1, k2, k3, args.cap)?
        }
        OracleKind::Mcq => unreachable!(),
    };
    print_report(&report, &inst.graph, &parsed.labels, args.json_like, &[]);
    Ok(verdict_code(report.verdict))
}

fn cmd_reduce(args: ReduceArgs) -> Outcome {
    let parsed = load_mcq(&args.file)?;
    let mut out = reduce_mcq_to_wpvcbd(&parsed.instance)?;
    if args.pendantize {
        out = pendantize(&out)?;
    }
    let labels = out.labels(&parsed.labels);
    let text = write_wpvc(&out.instance, Some(&labels), &out.provenance(&parsed.labels));
    emit(args.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gen(args: GenArgs) -> Outcome {
    let params = GenParams {
        n: args.n,
        m: args.m,
        max_cost: args.max_cost,
        max_profit: args.max_profit,
        budget: args.budget,
        threshold: args.threshold,
    };
    let text = match args.kind {
        GenKind::BipartiteRandom => write_wpvc(&gen_bipartite(&params, args.seed)?, None, &[]),
        GenKind::BoundedDegree => write_wpvc(&gen_bounded_degree(&params, args.degree, args.seed)?, None, &[]),
        GenKind::McqPlanted => {
            let (mcq, _) = gen_mcq_planted(args.k, args.class_size, args.edge_percent, !args.no_plant, args.seed)?;
            write_mcq(&mcq, None)
        }
    };
    emit(args.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: BenchArgs) -> Outcome {
    let suite = match &args.suite {
        Some(p) => Suite::parse(&read(p)?)?,
        None => Suite::default_suite(),
    };
    let rows = run_suite(&suite)?;
    print!("{}", format_table(&rows));
    let bad = rows.iter().filter(|r| !r.ok()).count();
    if bad > 0 {
        eprintln!("{bad} of {} rows exceed their bounds", rows.len());
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
