use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use committee::benchmark::{run_benchmark, write_csv, BenchmarkSpec, CommitteeSize};
use committee::config::{Config, ConfigError};
use committee::json::SolveOutput;
use committee::lp::emit_ilp;
use committee::preflib::{read_profile, write_profile, FormatError};
use committee::runner::{parse_model, parse_pair, run, AlgoName, AlgoParams, RuleName, RunError};
use committee_core::bounds;
use committee_core::exact::brute_force_winners;
use committee_core::profiles::{generate, GeneratorConfig};
use committee_core::{PreferenceProfile, ScoringFunction};

#[derive(Parser)]
#[command(
    name = "committee",
    version,
    about = "Monroe and Chamberlin-Courant winner determination"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a synthetic profile and write it in PrefLib format.
    Generate(GenerateArgs),
    /// Pick a committee for a profile file and print a JSON report.
    Solve(SolveArgs),
    /// Run algorithms on repeated generated instances, CSV output.
    Benchmark(BenchmarkArgs),
    /// Print approximation guarantees as name=value lines.
    Bounds(BoundsArgs),
    /// Write the integer program for a profile in CPLEX LP format.
    EmitIlp(EmitArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value = "ic")]
    model: String,
    #[arg(short = 'n', long)]
    voters: usize,
    #[arg(short = 'm', long)]
    alternatives: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    urn_ratio: Option<f64>,
    #[arg(long)]
    components: Option<usize>,
    /// Keep only the top positions of each ballot.
    #[arg(long)]
    truncate: Option<usize>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Default)]
struct ParamArgs {
    #[arg(long)]
    beam_width: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args)]
struct ScoringArgs {
    /// `borda`, `borda-inc`, or comma-separated scores.
    #[arg(long)]
    scoring: Option<String>,
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    #[arg(long)]
    rule: Option<String>,
    #[arg(long)]
    algo: Option<String>,
    #[arg(short = 'k', long)]
    committee_size: Option<usize>,
    #[command(flatten)]
    scoring: ScoringArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Also compute the optimum by exhaustive search.
    #[arg(long)]
    with_opt: bool,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct BenchmarkArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(short = 'n', long)]
    voters: Option<usize>,
    #[arg(short = 'm', long)]
    alternatives: Option<usize>,
    /// Committee size, or a fraction of m such as 0.3.
    #[arg(short = 'k', long)]
    committee_size: Option<String>,
    /// Comma-separated rule:algorithm pairs.
    #[arg(long)]
    algos: Option<String>,
    #[arg(long)]
    repetitions: Option<usize>,
    /// Comma-separated truncation depths.
    #[arg(long)]
    truncation: Option<String>,
    #[arg(long)]
    with_opt: bool,
    #[arg(long)]
    urn_ratio: Option<f64>,
    #[arg(long)]
    components: Option<usize>,
    #[command(flatten)]
    params: ParamArgs,
    /// Write only the summary rows.
    #[arg(long)]
    summary_only: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(short = 'm', long)]
    alternatives: Option<usize>,
    #[arg(short = 'k', long)]
    committee_size: Option<usize>,
    /// Known positions for the truncated bounds.
    #[arg(short = 'p', long)]
    depth: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 0.9)]
    lambda: f64,
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args)]
struct EmitArgs {
    input: PathBuf,
    #[arg(long)]
    rule: String,
    #[arg(short = 'k', long)]
    committee_size: usize,
    #[command(flatten)]
    scoring: ScoringArgs,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Runtime(#[from] anyhow::Error),
}

impl From<RunError> for CliError {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Solver(_) => CliError::Runtime(e.into()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io { .. } => CliError::Runtime(e.into()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

macro_rules! runtime {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Runtime(e.into())
            }
        }
    )*};
}
runtime!(
    io::Error,
    FormatError,
    committee_core::Error,
    committee::lp::LpError,
    serde_json::Error
);

impl From<committee::benchmark::BenchError> for CliError {
    fn from(e: committee::benchmark::BenchError) -> Self {
        use committee::benchmark::BenchError;
        match e {
            BenchError::Spec(m) => CliError::Usage(m),
            BenchError::Run {
                source: RunError::Solver(_),
                ..
            } => CliError::Runtime(e.into()),
            BenchError::Run { .. } => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.into()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn output(path: Option<&PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                CliError::Runtime(anyhow::anyhow!("{}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_profile(path: &PathBuf) -> CliResult<PreferenceProfile> {
    let file = File::open(path)
        .map_err(|e| CliError::Runtime(anyhow::anyhow!("{}: {e}", path.display())))?;
    Ok(read_profile(BufReader::new(file))?)
}

fn load_config(path: Option<&PathBuf>) -> CliResult<Config> {
    Ok(match path {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    })
}

fn scoring(spec: Option<&str>, m: usize) -> CliResult<ScoringFunction> {
    match spec.unwrap_or("borda") {
        "borda" | "borda-dec" => Ok(ScoringFunction::borda_dec(m)),
        "borda-inc" => Ok(ScoringFunction::borda_inc(m)),
        list => {
            let scores = list
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| usage(format!("bad scoring {list:?}")))?;
            ScoringFunction::custom(scores).map_err(|e| usage(e.to_string()))
        }
    }
}

fn params(args: &ParamArgs, config: &Config) -> CliResult<AlgoParams> {
    let d = AlgoParams::default();
    Ok(AlgoParams {
        beam_width: config.pick(args.beam_width, "beam-width", d.beam_width)?,
        samples: config.pick(args.samples, "samples", d.samples)?,
        seed: config.pick(args.seed, "seed", d.seed)?,
        epsilon: config.pick_opt(args.epsilon, "epsilon")?,
        lambda: config.pick(args.lambda, "lambda", d.lambda)?,
        window: config.pick_opt(args.window, "window")?,
        delta: config.pick_opt(args.delta, "delta")?,
    })
}

fn required<T>(value: Option<T>, name: &str) -> CliResult<T> {
    value.ok_or_else(|| usage(format!("missing --{name}")))
}

fn cmd_generate(args: GenerateArgs) -> CliResult<()> {
    let model = parse_model(&args.model)?;
    let mut config = GeneratorConfig::new(model, args.voters, args.alternatives, args.seed);
    if let Some(r) = args.urn_ratio {
        config.urn_alpha_ratio = r;
    }
    if let Some(c) = args.components {
        config.mixture_components = c;
    }
    let mut profile = generate(&config).map_err(|e| usage(e.to_string()))?;
    if let Some(depth) = args.truncate {
        profile = profile.truncate(depth).map_err(|e| usage(e.to_string()))?;
    }
    let title = format!(
        "{} n={} m={} seed={}",
        model.name(),
        args.voters,
        args.alternatives,
        args.seed
    );
    let mut out = output(args.out.as_ref())?;
    write_profile(&profile, &mut out, Some(&title))?;
    out.flush()?;
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> CliResult<()> {
    let config = load_config(args.config.as_ref())?;
    let rule: RuleName =
        required(args.rule.or(config.get("rule")?), "rule")?.parse::<RuleName>()?;
    let algo: AlgoName =
        required(args.algo.or(config.get("algo")?), "algo")?.parse::<AlgoName>()?;
    let k = required(config.pick_opt(args.committee_size, "k")?, "committee-size")?;
    let scoring_spec = config.pick_opt(args.scoring.scoring, "scoring")?;
    let with_opt = args.with_opt || config.get::<bool>("with-opt")?.unwrap_or(false);
    let params = params(&args.params, &config)?;
    let profile = load_profile(&args.input)?;
    let psf = scoring(scoring_spec.as_deref(), profile.num_alternatives())?;
    let mut report = run(&profile, &psf, rule, algo, k, &params)?;
    let c_opt = if with_opt {
        let opt = brute_force_winners(&profile, &psf, &rule.rule(k))?.l1();
        report.evaluation.set_opt(opt);
        Some(opt)
    } else {
        None
    };
    let json = SolveOutput::new(&profile, rule.name(), k, &report, c_opt);
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &json)?;
    writeln!(out)?;
    Ok(())
}

fn csv_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| usage(format!("bad {what} {x:?}")))
        })
        .collect()
}

fn cmd_benchmark(args: BenchmarkArgs) -> CliResult<()> {
    let config = load_config(args.config.as_ref())?;
    let model = parse_model(&config.pick(args.model, "model", "ic".to_string())?)?;
    let n = required(config.pick_opt(args.voters, "n")?, "voters")?;
    let m = required(config.pick_opt(args.alternatives, "m")?, "alternatives")?;
    let k: CommitteeSize = required(config.pick_opt(args.committee_size, "k")?, "committee-size")?
        .parse()
        .map_err(usage)?;
    let algos = required(config.pick_opt(args.algos, "algos")?, "algos")?;
    let mut spec = BenchmarkSpec::new(model, n, m, k);
    spec.runs = algos
        .split(',')
        .map(|p| parse_pair(p.trim()))
        .collect::<Result<_, _>>()?;
    spec.repetitions = config.pick(args.repetitions, "repetitions", 1)?;
    if let Some(t) = config.pick_opt(args.truncation, "truncation")? {
        spec.truncation = csv_list(&t, "truncation depth")?;
    }
    spec.with_opt = args.with_opt || config.get::<bool>("with-opt")?.unwrap_or(false);
    spec.params = params(&args.params, &config)?;
    spec.seed = spec.params.seed;
    spec.urn_ratio = config.pick(args.urn_ratio, "urn-ratio", spec.urn_ratio)?;
    spec.mixture_components =
        config.pick(args.components, "components", spec.mixture_components)?;
    let mut result = run_benchmark(&spec)?;
    if args.summary_only {
        result.instances.clear();
    }
    let out = output(args.out.as_ref())?;
    write_csv(&result, out)?;
    Ok(())
}

fn cmd_bounds(args: BoundsArgs) -> CliResult<()> {
    let mut lines: Vec<(&str, committee_core::Result<f64>)> = Vec::new();
    let (x, ratio) = bounds::sampling_crossover();
    lines.push(("sampling-crossover-x", Ok(x)));
    lines.push(("sampling-crossover-ratio", Ok(ratio)));
    if let Some(k) = args.committee_size {
        lines.push(("harmonic", Ok(bounds::harmonic_f64(k))));
        if let Some(eps) = args.epsilon {
            if k >= 8 {
                lines.push(("sampling-failure", bounds::sampling_failure_prob(k, eps)));
            }
            lines.push((
                "ar-samples",
                bounds::ar_sample_count(k, eps, args.lambda).map(|s| s as f64),
            ));
        }
        lines.push(("cc-p", bounds::cc_p_bound(k)));
    }
    if let (Some(m), Some(k)) = (args.alternatives, args.committee_size) {
        lines.push(("monroe-greedy", bounds::monroe_greedy_bound(m, k)));
        lines.push(("sampling-ratio", bounds::sampling_expected_ratio(m, k)));
        lines.push(("cc-p-window", bounds::cc_p_window(m, k).map(|w| w as f64)));
        if let Some(p) = args.depth {
            lines.push(("monroe-truncated", bounds::monroe_truncated_bound(m, k, p)));
            lines.push(("cc-truncated", bounds::cc_truncated_bound(m, k, p)));
        }
        if let Some(delta) = args.delta {
            lines.push((
                "cc-delta-x",
                bounds::cc_delta_x(m, k, delta).map(|x| x as f64),
            ));
            lines.push(("cc-delta", bounds::cc_delta_bound(m, k, delta)));
        }
    }
    let mut out = io::stdout().lock();
    let mut failed = 0;
    for (name, v) in &lines {
        match v {
            Ok(v) => writeln!(out, "{name}={v}")?,
            Err(e) => {
                eprintln!("{name}: {e}");
                failed += 1;
            }
        }
    }
    // only an error when nothing requested could be evaluated
    if failed > 0 && failed + 2 == lines.len() {
        return Err(usage("no bound could be evaluated for these parameters"));
    }
    Ok(())
}

fn cmd_emit(args: EmitArgs) -> CliResult<()> {
    let rule: RuleName = args.rule.parse()?;
    let profile = load_profile(&args.input)?;
    let psf = scoring(args.scoring.scoring.as_deref(), profile.num_alternatives())?;
    let mut out = output(args.out.as_ref())?;
    emit_ilp(&profile, &psf, &rule.rule(args.committee_size), &mut out)?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Benchmark(a) => cmd_benchmark(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::EmitIlp(a) => cmd_emit(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
