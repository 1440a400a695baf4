use clap::{Args, Parser, Subcommand, ValueEnum};
use dziobek::census::census;
use dziobek::dziobek::{rejected_readings, DziobekState, MassVector, PsiValues, SquaredDistances};
use dziobek::geometry::{canonicalize, realize, squared_distances, CanonicalFrame};
use dziobek::solver::{self, linear_grid, Normalization, SolveOptions, SolveReport};
use dziobek::verifier::{self, newtonian_oracle, CheckResult, DEFAULT_SEED};
use dziobek::{exec, io, json, Execution};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Serialize)]
#[command(name = "dziobek", version, about = "Planar four-body central configurations in Dziobek coordinates")]
struct Cli {
    /// Worker threads for parallel stages (0 = rayon default).
    #[arg(long, global = true, env = "DZIOBEK_THREADS", default_value_t = 0)]
    threads: usize,
    /// Run every stage on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Progress and diagnostics on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
enum Command {
    /// Solve for one central configuration.
    Solve(SolveArgs),
    /// Solve over an (alpha, beta) grid with warm starts.
    Sweep(SweepArgs),
    /// Count convex classes from a grid of seeds.
    Census(CensusArgs),
    /// Run lemma and theorem checks.
    Verify(VerifyArgs),
    /// Place a solved distance set in the plane.
    Realize(RealizeArgs),
}

#[derive(Args, Serialize, Clone, Copy)]
struct MassArgs {
    #[arg(long, allow_negative_numbers = true, value_parser = positive, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, allow_negative_numbers = true, value_parser = positive, default_value_t = 1.0)]
    beta: f64,
}

#[derive(Args, Serialize, Clone, Copy)]
struct NewtonArgs {
    /// Scale-relative residual tolerance.
    #[arg(long, allow_negative_numbers = true, value_parser = positive, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    max_iter: u32,
    #[arg(long, value_enum, default_value_t = Norm::Inertia)]
    normalization: Norm,
}

impl NewtonArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            max_iterations: self.max_iter as usize,
            residual_tol: self.tol,
            normalization: match self.normalization {
                Norm::Inertia => Normalization::FixInertiaOne,
                Norm::A => Normalization::FixAOne,
            },
            ..SolveOptions::default()
        }
    }
}

#[derive(ValueEnum, Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum Norm {
    /// Moment of inertia equal to one.
    Inertia,
    /// r12 equal to one.
    A,
}

#[derive(ValueEnum, Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum Ansatz {
    Full,
    Kite,
    Rhombus,
}

#[derive(ValueEnum, Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Serialize)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct SolveArgs {
    #[command(flatten)]
    masses: MassArgs,
    #[arg(long, value_enum, default_value_t = Ansatz::Kite)]
    ansatz: Ansatz,
    /// Seed frame `u,v,t,s,theta` for the full ansatz (default: the square).
    #[arg(long, value_parser = frame)]
    start: Option<Grid>,
    #[command(flatten)]
    newton: NewtonArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Vertex coordinates as CSV.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct SweepArgs {
    /// `start:stop:step` or a comma list.
    #[arg(long, value_parser = grid, default_value = "0.2:1.0:0.2")]
    alpha_grid: Grid,
    #[arg(long, value_parser = grid, default_value = "0.2:2.0:0.2")]
    beta_grid: Grid,
    #[command(flatten)]
    newton: NewtonArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Realized shapes per cell as CSV.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct CensusArgs {
    #[command(flatten)]
    masses: MassArgs,
    /// Seeds per axis; the grid has resolution^4 seeds.
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(2..=40))]
    resolution: u32,
    #[command(flatten)]
    newton: NewtonArgs,
    #[command(flatten)]
    out: OutputArgs,
    /// Vertex coordinates of every class as CSV.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(ValueEnum, Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
enum Suite {
    All,
    Lemmas,
    Identities,
    Theorem1,
    Theorem2,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Random draws per randomized check.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(2..=40))]
    resolution: u32,
    /// Mass grid for the kite suite.
    #[arg(long, value_parser = grid, default_value = "0.2:1.0:0.2")]
    alpha_grid: Grid,
    #[arg(long, value_parser = grid, default_value = "0.2:2.0:0.2")]
    beta_grid: Grid,
    /// Mass grid for the rhombus suite.
    #[arg(long, value_parser = grid, default_value = "0.1:3.0:0.1")]
    rhombus_grid: Grid,
    #[command(flatten)]
    newton: NewtonArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Serialize)]
struct RealizeArgs {
    /// JSON file: a solve report, a state record, or six squared distances.
    #[arg(long, short)]
    input: PathBuf,
    /// Used when the input carries no masses.
    #[command(flatten)]
    masses: MassArgs,
    #[command(flatten)]
    out: OutputArgs,
    #[arg(long)]
    plot: Option<PathBuf>,
}

/// A list of floats given as one flag value.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
struct Grid(Vec<f64>);

impl std::ops::Deref for Grid {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("must be positive and finite, got {x}")),
        Err(e) => Err(e.to_string()),
    }
}

fn grid(s: &str) -> Result<Grid, String> {
    let values = if s.contains(':') {
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let [start, stop, step] = parts[..] else {
            return Err("expected start:stop:step".into());
        };
        linear_grid(start, stop, step).map_err(|e| e.to_string())?
    } else {
        s.split(',').map(positive).collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err("grid is empty".into());
    }
    if let Some(x) = values.iter().find(|x| **x <= 0.0) {
        return Err(format!("grid entry {x} is not positive"));
    }
    Ok(Grid(values))
}

fn frame(s: &str) -> Result<Grid, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if v.len() != 5 {
        return Err(format!("expected five numbers u,v,t,s,theta, got {}", v.len()));
    }
    Ok(Grid(v))
}

/// Output envelope: the resolved command line, then the result.
#[derive(Serialize)]
struct Envelope<'a, T> {
    config: &'a Cli,
    result: T,
}

enum Failure {
    /// Solver or verification failure: exit 1.
    Run(String),
    /// Bad input discovered after parsing: exit 2.
    Usage(String),
}

impl From<dziobek::Error> for Failure {
    fn from(e: dziobek::Error) -> Self {
        match e {
            dziobek::Error::Io { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if cli.threads > 0 && !exec::set_threads(cli.threads) && cli.verbose {
        eprintln!("warning: thread pool already initialised; --threads ignored");
    }
    let started = Instant::now();
    let result = run(&cli);
    if cli.verbose {
        eprintln!("elapsed: {:.3} s", started.elapsed().as_secs_f64());
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn execution(cli: &Cli) -> Execution {
    if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Solve(a) => run_solve(cli, a),
        Command::Sweep(a) => run_sweep(cli, a),
        Command::Census(a) => run_census(cli, a),
        Command::Verify(a) => run_verify(cli, a),
        Command::Realize(a) => run_realize(cli, a),
    }
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => io::write_file(path, text).map_err(Failure::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_json<T: Serialize>(cli: &Cli, out: &OutputArgs, result: T) -> Result<(), Failure> {
    emit(out, &json::to_string(&Envelope { config: cli, result }))
}

/// `# key: value` lines echoing the resolved configuration.
fn csv_header(cli: &Cli) -> String {
    let value = serde_json::to_value(cli).expect("config serializes");
    let mut lines = vec![format!("dziobek {}", env!("CARGO_PKG_VERSION"))];
    flatten("", &value, &mut lines);
    lines.join("\n")
}

fn flatten(prefix: &str, v: &serde_json::Value, out: &mut Vec<String>) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        other => out.push(format!("{prefix}: {other}")),
    }
}

fn comment(header: &str) -> String {
    header.lines().map(|l| format!("# {l}\n")).collect()
}

fn masses(m: &MassArgs) -> Result<MassVector, Failure> {
    MassVector::new(m.alpha, m.beta).map_err(|e| Failure::Usage(e.to_string()))
}

fn solve_one(a: &SolveArgs, m: &MassVector) -> Result<SolveReport, Failure> {
    let opts = a.newton.options();
    let rep = match a.ansatz {
        Ansatz::Kite => solver::solve_kite(m, &opts)?,
        Ansatz::Rhombus => {
            if m.alpha != m.beta {
                return Err(Failure::Usage("--ansatz rhombus needs --alpha equal to --beta".into()));
            }
            solver::solve_rhombus(m.alpha, &opts)?
        }
        Ansatz::Full => {
            let f = a.start.clone().map(|g| g.0).unwrap_or(vec![0.5, 0.5, 0.5, 0.5, std::f64::consts::FRAC_PI_2]);
            let frame = CanonicalFrame::normalized(f[0], f[1], f[2], f[3], f[4], m)
                .map_err(|e| Failure::Usage(format!("--start: {e}")))?;
            let cfg = frame.reconstruct(m)?;
            let seed = DziobekState::from_distances(squared_distances(&cfg), m)?;
            solver::newton_solve(&seed, m, &opts)?
        }
    };
    Ok(rep)
}

#[derive(Serialize)]
struct SolveOutput {
    report: SolveReport,
    frame: Option<CanonicalFrame>,
    lambda_dz: f64,
    lambda_cc: Option<f64>,
    oracle_residual: Option<f64>,
}

fn run_solve(cli: &Cli, a: &SolveArgs) -> Outcome {
    let m = masses(&a.masses)?;
    let rep = solve_one(a, &m)?;
    let cfg = realize(&rep.state.sq, &m).ok();
    let oracle = cfg.as_ref().and_then(|c| newtonian_oracle(c).ok());
    if cli.verbose {
        let psi = PsiValues::from_distances(&rep.state.sq);
        eprintln!("iterations: {}, residual: {:e}", rep.iterations, rep.final_residual);
        eprintln!("rejected readings: {:?}", rejected_readings(&rep.state.sq, &psi, &m));
    }
    if let (Some(path), Some(c)) = (&a.plot, &cfg) {
        io::write_file(path, &io::config_plot_data(c))?;
    }
    let out = SolveOutput {
        report: rep,
        frame: cfg.as_ref().and_then(|c| canonicalize(c).ok()),
        lambda_dz: rep.state.lambda_dz(),
        lambda_cc: oracle.map(|o| o.lambda_cc),
        oracle_residual: oracle.map(|o| o.residual),
    };
    match a.out.format {
        Format::Json => write_json(cli, &a.out, &out)?,
        Format::Csv => {
            let table = dziobek::SweepTable {
                alpha_grid: vec![m.alpha],
                beta_grid: vec![m.beta],
                cells: vec![dziobek::SweepCell {
                    alpha: m.alpha,
                    beta: m.beta,
                    report: Some(rep),
                    frame: out.frame,
                    lambda_cc: out.lambda_cc,
                    error: None,
                }],
            };
            emit(&a.out, &io::sweep_csv(&table, &csv_header(cli)))?;
        }
    }
    Ok(true)
}

fn run_sweep(cli: &Cli, a: &SweepArgs) -> Outcome {
    let table = solver::sweep(&a.alpha_grid, &a.beta_grid, &a.newton.options(), execution(cli))
        .map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(path) = &a.plot {
        io::write_file(path, &io::sweep_plot_data(&table))?;
    }
    let failed = table.cells.iter().filter(|c| c.report.is_none()).count();
    if failed > 0 {
        eprintln!("warning: {failed} of {} cells did not converge", table.cells.len());
    }
    match a.out.format {
        Format::Json => write_json(cli, &a.out, &table)?,
        Format::Csv => emit(&a.out, &io::sweep_csv(&table, &csv_header(cli)))?,
    }
    Ok(true)
}

fn run_census(cli: &Cli, a: &CensusArgs) -> Outcome {
    let m = masses(&a.masses)?;
    let rep = census(&m, a.resolution as usize, &a.newton.options(), execution(cli));
    if cli.verbose {
        eprintln!(
            "seeds: {} converged of {}; failures {:?}",
            rep.seeds_converged, rep.seeds_total, rep.failures
        );
    }
    if !rep.within_theorem_hypothesis {
        eprintln!("note: alpha and beta both exceed 1; uniqueness is not claimed here");
    }
    if rep.classes.is_empty() {
        eprintln!("warning: no seed converged");
    }
    if let Some(path) = &a.plot {
        io::write_file(path, &io::census_plot_data(&rep))?;
    }
    match a.out.format {
        Format::Json => write_json(cli, &a.out, &rep)?,
        Format::Csv => emit(&a.out, &(comment(&csv_header(cli)) + &io::census_csv(&rep)))?,
    }
    Ok(true)
}

/// Converged states used by the lemma and identity checks.
fn reference_states(opts: &SolveOptions) -> Result<Vec<(DziobekState, MassVector)>, Failure> {
    let mut out = Vec::new();
    for (alpha, beta) in [(1.0, 1.0), (0.5, 0.8), (0.2, 2.0), (0.5, 0.5), (2.0, 2.0)] {
        let m = MassVector::new(alpha, beta)?;
        out.push((solver::solve_kite(&m, opts)?.state, m));
    }
    Ok(out)
}

fn run_verify(cli: &Cli, a: &VerifyArgs) -> Outcome {
    let opts = a.newton.options();
    let exec = execution(cli);
    let res = a.resolution as usize;
    let wants = |s: Suite| a.suite == Suite::All || a.suite == s;
    let mut results: Vec<CheckResult> = Vec::new();
    if wants(Suite::Lemmas) || wants(Suite::Identities) {
        let states = reference_states(&opts)?;
        let plain: Vec<DziobekState> = states.iter().map(|(s, _)| *s).collect();
        if wants(Suite::Lemmas) {
            results.push(verifier::check_lemma1_nu_positive(&plain));
            results.push(verifier::check_lemma2_albouy(&states));
            results.push(verifier::check_lemma3_sign(a.trials, a.seed));
            results.push(verifier::check_lemma4_orderings(a.trials, a.seed));
            results.push(verifier::check_lemma4_distance_chains(&plain));
        }
        if wants(Suite::Identities) {
            for (st, m) in &states {
                let mut r = verifier::check_theorem_identities(st, m);
                r.name = format!("{} ({}, {})", r.name, m.alpha, m.beta);
                results.push(r);
            }
            results.push(verifier::check_balanced_identities(&states));
            results.push(verifier::check_oracle_equivalence(&states));
            results.push(verifier::check_converged_invariants(&states, 1e-9));
            results.push(verifier::check_scaling(&states, &[0.1, 8.0, 1000.0]));
        }
    }
    if wants(Suite::Theorem1) {
        let grid: Vec<(f64, f64)> = a
            .alpha_grid
            .iter()
            .flat_map(|&x| a.beta_grid.iter().map(move |&y| (x, y)))
            .collect();
        results.push(verifier::run_theorem1_suite(&grid, res, &opts, exec));
    }
    if wants(Suite::Theorem2) {
        results.push(verifier::run_theorem2_suite(&a.rhombus_grid, res, &opts, exec));
    }
    let passed = results.iter().all(|r| r.passed);
    for r in &results {
        if cli.verbose || !r.passed {
            eprintln!("{} {} (worst {:e}, tol {:e})", if r.passed { "PASS" } else { "FAIL" }, r.name, r.worst_violation, r.tolerance);
        }
    }
    match a.out.format {
        Format::Json => write_json(cli, &a.out, &results)?,
        Format::Csv => {
            let mut text = comment(&csv_header(cli));
            text.push_str("name,passed,worst_violation,tolerance,checked\n");
            for r in &results {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.name.replace(',', ";"),
                    r.passed,
                    json::float(r.worst_violation),
                    json::float(r.tolerance),
                    r.checked
                ));
            }
            emit(&a.out, &text)?;
        }
    }
    Ok(passed)
}

#[derive(Serialize)]
struct Realized {
    config: dziobek::PlanarConfig,
    frame: CanonicalFrame,
    lambda_cc: f64,
    oracle_residual: f64,
}

fn read_input(a: &RealizeArgs) -> Result<(SquaredDistances, MassVector), Failure> {
    let text = io::read_file(&a.input)?;
    let bad = |e: serde_json::Error| Failure::Usage(format!("--input {}: {e}", a.input.display()));
    let value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
    // A CLI solve output nests the report under "result".
    let value = value.get("result").and_then(|r| r.get("report")).cloned().unwrap_or(value);
    if let Ok(rep) = serde_json::from_value::<SolveReport>(value.clone()) {
        return Ok((rep.state.sq, rep.masses));
    }
    let m = masses(&a.masses)?;
    if let Ok(st) = serde_json::from_value::<DziobekState>(value.clone()) {
        return Ok((st.sq, m));
    }
    let sq = serde_json::from_value::<SquaredDistances>(value).map_err(bad)?;
    Ok((sq, m))
}

fn run_realize(cli: &Cli, a: &RealizeArgs) -> Outcome {
    let (sq, m) = read_input(a)?;
    let cfg = realize(&sq, &m)?;
    let o = newtonian_oracle(&cfg)?;
    if let Some(path) = &a.plot {
        io::write_file(path, &io::config_plot_data(&cfg))?;
    }
    let out = Realized {
        frame: canonicalize(&cfg)?,
        config: cfg,
        lambda_cc: o.lambda_cc,
        oracle_residual: o.residual,
    };
    match a.out.format {
        Format::Json => write_json(cli, &a.out, &out)?,
        Format::Csv => emit(&a.out, &(comment(&csv_header(cli)) + &io::config_plot_data(&out.config)))?,
    }
    Ok(true)
}
