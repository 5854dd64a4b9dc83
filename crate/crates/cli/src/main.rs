//! Command-line surface for Boolean network synthesis and analysis.
//!
//! Exit codes: 0 = satisfiable / property holds, 1 = unsatisfiable /
//! property does not hold, 2 = usage or validation error, 3 = resource
//! or time budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use bnsynth_core::format::{
    parse_model_path, parse_problem_path, problem_to_json, render_function, solution_to_json,
};
use bnsynth_core::instances::{bench_run, differentiation_property, gen_scale_free, ConstraintKind, GeneratorParams};
use bnsynth_core::oracle::{reach_oracle_all_l, trap_spaces_oracle, OracleBudget};
use bnsynth_core::synthesis::{Mode, SynthesisOptions, SynthesisProblem};
use bnsynth_core::{
    attractors_with_cap, check_problem, is_reachable, synthesize, ClauseBound, Configuration,
    Error,
};

#[derive(Parser)]
#[command(name = "bnsynth", version, about = "Boolean network synthesis under the most permissive semantics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate, count or find networks satisfying a problem file.
    Synthesize(SynthesizeArgs),
    /// Check a model against a problem; prints a witness when satisfied.
    Check { problem: PathBuf, model: PathBuf },
    /// Decide most-permissive reachability between two configurations.
    Reach {
        model: PathBuf,
        from: String,
        to: String,
        /// Cross-check with the exhaustive all-L oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Print the attractors (minimal trap spaces) of a model.
    Attractors {
        model: PathBuf,
        /// Dimension cap for the exact computation.
        #[arg(long, default_value_t = 16)]
        cap: usize,
        /// Cross-check with the exhaustive trap-space oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Generate a random scale-free influence graph as a problem file.
    Gen(GenArgs),
    /// Generate an instance and run a first-solution benchmark.
    Bench(BenchArgs),
    /// Print a model's local functions in text form.
    Show { model: PathBuf },
}

#[derive(Args)]
struct SynthesizeArgs {
    problem: PathBuf,
    /// Print only the number of solutions.
    #[arg(long, conflicts_with_all = ["first", "limit"])]
    count: bool,
    /// Stop at the first solution.
    #[arg(long, conflicts_with = "limit")]
    first: bool,
    /// Stop after this many solutions.
    #[arg(long)]
    limit: Option<u64>,
    /// Override the problem's clause bound ("max" or an integer).
    #[arg(long)]
    max_clauses: Option<String>,
    /// Worker threads; the solution set is worker-independent.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Sort emitted solutions by candidate indices (byte-identical
    /// output across runs and worker counts).
    #[arg(long)]
    sorted: bool,
    /// Attach witness configurations to each solution.
    #[arg(long)]
    witness: bool,
    /// Keep only these constraint families (comma-separated from
    /// pr,nr,fp,tp), e.g. --constraints pr,fp.
    #[arg(long)]
    constraints: Option<String>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    budget_secs: Option<u64>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    max_indegree: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    sign_bias: f64,
    /// Attach a constraint skeleton ("diff2": the two-stage
    /// differentiation property).
    #[arg(long)]
    property: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    max_indegree: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    sign_bias: f64,
    /// Constraint families to include, comma-separated from pr,nr,fp,tp.
    #[arg(long, default_value = "pr,nr,fp")]
    constraints: String,
    /// Clause bound ("max" or an integer).
    #[arg(long, default_value = "2")]
    max_clauses: String,
    #[arg(long, default_value_t = 900)]
    budget_secs: u64,
}

fn parse_bound(s: &str) -> Result<ClauseBound, Error> {
    if s == "max" {
        return Ok(ClauseBound::Max);
    }
    s.parse::<usize>().map(ClauseBound::Limit).map_err(|_| {
        Error::validation("bad_clause_bound", "--max-clauses", format!("expected \"max\" or an integer, got {s:?}"))
    })
}

fn parse_constraint_kinds(s: &str) -> Result<Vec<ConstraintKind>, Error> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| match p.trim() {
            "pr" => Ok(ConstraintKind::Pr),
            "nr" => Ok(ConstraintKind::Nr),
            "fp" => Ok(ConstraintKind::Fp),
            "tp" => Ok(ConstraintKind::Tp),
            other => Err(Error::validation(
                "bad_constraint_kind",
                "--constraints",
                format!("expected pr, nr, fp or tp, got {other:?}"),
            )),
        })
        .collect()
}

fn restrict_constraints(problem: &SynthesisProblem, kinds: &[ConstraintKind]) -> Result<SynthesisProblem, Error> {
    let has = |k| kinds.contains(&k);
    let mut p = SynthesisProblem::new(
        problem.graph().clone(),
        problem.observations().to_vec(),
        if has(ConstraintKind::Pr) { problem.pr().to_vec() } else { vec![] },
        if has(ConstraintKind::Nr) { problem.nr().to_vec() } else { vec![] },
        if has(ConstraintKind::Fp) { problem.fp().to_vec() } else { vec![] },
        if has(ConstraintKind::Tp) { problem.tp().to_vec() } else { vec![] },
    )?
    .with_distinct(problem.distinct().to_vec())?
    .with_default_bound(problem.default_bound());
    for i in 0..problem.dimension() {
        if problem.bound_for(i) != problem.default_bound() {
            p = p.with_node_bound(i, problem.bound_for(i));
        }
    }
    Ok(p)
}

const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Capacity { .. } => ExitCode::from(EXIT_CAPACITY),
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Synthesize(args) => cmd_synthesize(args),
        Command::Check { problem, model } => cmd_check(problem, model),
        Command::Reach { model, from, to, oracle } => cmd_reach(model, from, to, oracle),
        Command::Attractors { model, cap, oracle } => cmd_attractors(model, cap, oracle),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Show { model } => cmd_show(model),
    }
}

fn cmd_synthesize(args: SynthesizeArgs) -> Result<u8, Error> {
    let (names, mut problem) = parse_problem_path(&args.problem)?;
    if let Some(kinds) = &args.constraints {
        problem = restrict_constraints(&problem, &parse_constraint_kinds(kinds)?)?;
    }
    if let Some(bound) = &args.max_clauses {
        problem = problem.rebound(parse_bound(bound)?);
    }
    let mode = if args.count {
        Mode::Count
    } else if args.first {
        Mode::First
    } else {
        Mode::Enumerate
    };
    let options = SynthesisOptions {
        mode,
        limit: args.limit,
        jobs: args.jobs,
        sorted: args.sorted,
        with_witness: args.witness,
        deadline: args.budget_secs.map(|s| Instant::now() + Duration::from_secs(s)),
    };
    let outcome = synthesize(&problem, &options)?;
    if args.count {
        println!("{}", outcome.count);
    } else {
        for s in &outcome.solutions {
            println!("{}", solution_to_json(&names, &problem, s, args.witness));
        }
    }
    eprintln!(
        "# solutions {} candidates {} leaves {} completions {} reach-checks {}",
        outcome.count,
        outcome.stats.candidates_tried,
        outcome.stats.leaves_checked,
        outcome.stats.completions_tried,
        outcome.stats.reach_checks,
    );
    Ok(if outcome.count > 0 { 0 } else { EXIT_NO })
}

fn cmd_check(problem_path: PathBuf, model_path: PathBuf) -> Result<u8, Error> {
    let (problem_names, problem) = parse_problem_path(&problem_path)?;
    let (model_names, f) = parse_model_path(&model_path)?;
    if problem_names != model_names {
        return Err(Error::validation(
            "node_mismatch",
            "nodes",
            "problem and model must declare the same nodes in the same order",
        ));
    }
    if !f.influence_graph().is_subgraph_of(problem.graph())? {
        eprintln!("model uses influences outside the problem graph");
        return Ok(EXIT_NO);
    }
    match check_problem(&f, &problem)? {
        Some(witness) => {
            let mut map = serde_json::Map::new();
            for (o, x) in problem.observations().iter().zip(&witness) {
                map.insert(o.name().to_string(), serde_json::json!(x.to_string()));
            }
            println!("{}", serde_json::Value::Object(map));
            Ok(0)
        }
        None => Ok(EXIT_NO),
    }
}

fn cmd_reach(model: PathBuf, from: String, to: String, oracle: bool) -> Result<u8, Error> {
    let (_, f) = parse_model_path(&model)?;
    let x: Configuration = from.parse()?;
    let y: Configuration = to.parse()?;
    let reachable = is_reachable(&f, &x, &y)?;
    if oracle {
        let slow = reach_oracle_all_l(&f, &x, &y, &OracleBudget::default())?;
        if slow != reachable {
            eprintln!("oracle disagreement: engine {reachable}, oracle {slow}");
            return Err(Error::validation("oracle_disagreement", "reach", "engine and oracle disagree"));
        }
        eprintln!("# oracle agrees");
    }
    println!("{}", if reachable { "reachable" } else { "unreachable" });
    Ok(if reachable { 0 } else { EXIT_NO })
}

fn cmd_attractors(model: PathBuf, cap: usize, oracle: bool) -> Result<u8, Error> {
    let (_, f) = parse_model_path(&model)?;
    let mins = attractors_with_cap(&f, cap)?;
    if oracle {
        let slow = trap_spaces_oracle(&f, &OracleBudget::default())?;
        if slow != mins {
            return Err(Error::validation("oracle_disagreement", "attractors", "engine and oracle disagree"));
        }
        eprintln!("# oracle agrees");
    }
    for h in &mins {
        println!("{h}");
    }
    Ok(0)
}

fn cmd_gen(args: GenArgs) -> Result<u8, Error> {
    let params = GeneratorParams {
        n: args.nodes,
        d_max: args.max_indegree,
        seed: args.seed,
        sign_bias: args.sign_bias,
    };
    let graph = gen_scale_free(&params)?;
    let names: Vec<String> = (1..=args.nodes).map(|i| format!("n{i}")).collect();
    let problem = match args.property.as_deref() {
        None => SynthesisProblem::new(graph, vec![], vec![], vec![], vec![], vec![])?,
        Some("diff2") => differentiation_property(&graph),
        Some(other) => {
            return Err(Error::validation(
                "bad_property",
                "--property",
                format!("unknown property {other:?}, expected diff2"),
            ))
        }
    };
    println!("{}", serde_json::to_string_pretty(&problem_to_json(&names, &problem))?);
    Ok(0)
}

fn cmd_bench(args: BenchArgs) -> Result<u8, Error> {
    let params = GeneratorParams {
        n: args.nodes,
        d_max: args.max_indegree,
        seed: args.seed,
        sign_bias: args.sign_bias,
    };
    let kinds = parse_constraint_kinds(&args.constraints)?;
    let bound = parse_bound(&args.max_clauses)?;
    let report = bench_run(&params, &kinds, bound, Duration::from_secs(args.budget_secs))?;
    println!("{}", serde_json::to_string(&report)?);
    Ok(0)
}

fn cmd_show(model: PathBuf) -> Result<u8, Error> {
    let (names, f) = parse_model_path(&model)?;
    for (i, name) in names.iter().enumerate() {
        println!("{}", render_function(&names, name, f.local(i)));
    }
    Ok(0)
}
