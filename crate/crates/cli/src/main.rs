//! Command-line front end: validation, completion, CHSH quantities, payoff
//! tables, equilibrium checks, family generation and verification, angle
//! sweeps, and simulation.
//!
//! Machine-readable payloads (JSON, CSV) go to stdout; human commentary for
//! commands that emit both goes to stderr. Exit status is 0 on success, 1
//! when a validation-style check fails, 2 on malformed input.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use epr_games::family::{generate, membership_test, verify_family, FamilyCase, FamilyParams};
use epr_games::io as doc;
use epr_games::monte_carlo::simulate_with;
use epr_games::nash::{is_nash, nash_brackets, DEFAULT_NE_TOL};
use epr_games::probability::{EprDistribution, IndependentProbs, TOL_EXTERNAL};
use epr_games::quantum::{born_distribution, MeasurementConfig};
use epr_games::{GameMatrix, MixedStrategyPair};

#[derive(Parser)]
#[command(
    name = "epr-games",
    about = "Games over joint measurement-outcome distributions: CHSH quantities, equilibria, game families",
    long_about = "Distribution files carry {\"epsilon\": [16 numbers]} or {\"mu\": [8 numbers]};\n\
                  wherever a distribution is expected, a measurement config\n\
                  {\"state\": \"singlet\" | {\"schmidt_angle\": x}, \"angles\": [4 numbers]}\n\
                  is also accepted and realized through the Born rule. Pass \"-\" to read stdin.\n\
                  Angles in files are radians; --degrees converts command-line angle values only.",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a distribution against range, normalization, and no-signaling constraints
    Validate(ValidateArgs),
    /// Complete the 8 independent probabilities into a full 16-entry distribution
    Complete(CompleteArgs),
    /// Print the CHSH sum of correlations and its discriminant
    Chsh(ChshArgs),
    /// Print the pure payoff table (and a mixed payoff when p and q are given)
    Payoffs(PayoffsArgs),
    /// Check whether a strategy pair is a Nash equilibrium
    Nash(NashArgs),
    /// Generate a family game from free constants
    Generate(GenerateArgs),
    /// Verify a game's family bracket identities on sampled distributions
    VerifyFamily(VerifyFamilyArgs),
    /// Recover family parameters from a game, if it belongs to either case
    Membership(MembershipArgs),
    /// Sweep measurement angles and tabulate delta, brackets, and the equilibrium verdict
    Sweep(SweepArgs),
    /// Simulate repeated runs under a mixed strategy pair
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Distribution (or measurement config) JSON file
    #[arg(long)]
    dist: String,
    /// Residual tolerance
    #[arg(long, default_value_t = TOL_EXTERNAL)]
    tol: f64,
    /// Emit the full report as JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompleteArgs {
    /// The 8 independent probabilities, comma separated
    #[arg(long, value_delimiter = ',', conflicts_with = "dist")]
    mu: Option<Vec<f64>>,
    /// Distribution JSON file in {"mu": [...]} form
    #[arg(long, required_unless_present = "mu")]
    dist: Option<String>,
}

#[derive(Args)]
struct ChshArgs {
    #[arg(long)]
    dist: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PayoffsArgs {
    /// Game JSON file with `{"a": [16], "b": [16]}`
    #[arg(long)]
    game: String,
    #[arg(long)]
    dist: String,
    /// Probability Alice plays her first direction
    #[arg(short, long)]
    p: Option<f64>,
    /// Probability Bob plays his first direction
    #[arg(short, long)]
    q: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct NashArgs {
    #[arg(long)]
    game: String,
    #[arg(long)]
    dist: String,
    #[arg(short, long)]
    p: f64,
    #[arg(short, long)]
    q: f64,
    /// Tolerance on deviation gains
    #[arg(long, default_value_t = DEFAULT_NE_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<CaseArg> for FamilyCase {
    fn from(value: CaseArg) -> Self {
        match value {
            CaseArg::A => FamilyCase::NonNegativeDelta,
            CaseArg::B => FamilyCase::NegativeDelta,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// A targets delta >= 2, B targets delta <= -2
    #[arg(long, value_enum)]
    case: CaseArg,
    /// Free constants a1,a4,a5,a8,a12,a14,a15
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.0; 7])]
    free_a: Vec<f64>,
    /// Value shared by b1, b2, b5, b6
    #[arg(long, default_value_t = 1.0)]
    b_top: f64,
    /// Value shared by b3, b4, b7, b8
    #[arg(long, default_value_t = 1.0)]
    b_bottom: f64,
    /// Unconstrained b9..b16
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.0; 8])]
    b_rest: Vec<f64>,
}

#[derive(Args)]
struct VerifyFamilyArgs {
    #[arg(long)]
    game: String,
    #[arg(long, value_enum)]
    case: CaseArg,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct MembershipArgs {
    #[arg(long)]
    game: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AngleName {
    A1,
    A2,
    B1,
    B2,
}

impl AngleName {
    fn index(self) -> usize {
        match self {
            AngleName::A1 => 0,
            AngleName::A2 => 1,
            AngleName::B1 => 2,
            AngleName::B2 => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            AngleName::A1 => "a1",
            AngleName::A2 => "a2",
            AngleName::B1 => "b1",
            AngleName::B2 => "b2",
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    game: String,
    /// Baseline measurement-config JSON file
    #[arg(long)]
    config: String,
    /// Angle(s) set to the swept value, comma separated (a1, a2, b1, b2)
    #[arg(long, value_enum, value_delimiter = ',', num_args = 1..)]
    angle: Vec<AngleName>,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    /// Number of rows; the swept value runs linearly from --from to --to
    #[arg(long)]
    steps: usize,
    #[arg(short, long)]
    p: f64,
    #[arg(short, long)]
    q: f64,
    /// Interpret --from and --to as degrees
    #[arg(long)]
    degrees: bool,
    #[arg(long, default_value_t = DEFAULT_NE_TOL)]
    tol: f64,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    game: String,
    #[arg(long)]
    dist: String,
    #[arg(short, long)]
    p: f64,
    #[arg(short, long)]
    q: f64,
    /// Number of runs
    #[arg(short, long)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write one CSV row per run to this file
    #[arg(long)]
    runs_csv: Option<String>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Complete(args) => cmd_complete(args),
        Command::Chsh(args) => cmd_chsh(args),
        Command::Payoffs(args) => cmd_payoffs(args),
        Command::Nash(args) => cmd_nash(args),
        Command::Generate(args) => cmd_generate(args),
        Command::VerifyFamily(args) => cmd_verify_family(args),
        Command::Membership(args) => cmd_membership(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Simulate(args) => cmd_simulate(args),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load_distribution(path: &str) -> Result<EprDistribution> {
    doc::parse_distribution_input(&read_input(path)?)
        .with_context(|| format!("distribution input {path}"))
}

fn load_game(path: &str) -> Result<GameMatrix> {
    doc::parse_game(&read_input(path)?).with_context(|| format!("game input {path}"))
}

fn load_config(path: &str) -> Result<MeasurementConfig> {
    doc::parse_config(&read_input(path)?).with_context(|| format!("config input {path}"))
}

fn strategy_pair(p: f64, q: f64) -> Result<MixedStrategyPair> {
    MixedStrategyPair::new(p, q).map_err(|e| anyhow!(e))
}

fn fixed_count<const N: usize>(values: Vec<f64>, flag: &str) -> Result<[f64; N]> {
    let found = values.len();
    values
        .try_into()
        .map_err(|_| anyhow!("--{flag} needs exactly {N} comma-separated values, found {found}"))
}

fn cmd_validate(args: ValidateArgs) -> Result<ExitCode> {
    let dist = load_distribution(&args.dist)?;
    let report = dist.validate(args.tol);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else if report.is_valid {
        println!("valid (tolerance {})", args.tol);
        match report.is_local_polytope_member {
            Some(true) => println!("local polytope (CHSH facet): inside"),
            Some(false) => println!("local polytope (CHSH facet): outside"),
            None => {}
        }
    } else {
        for v in &report.violations {
            println!("violation: {} (residual {})", v.constraint, v.residual);
        }
        println!(
            "invalid: {} violation(s) at tolerance {}",
            report.violations.len(),
            args.tol
        );
    }
    Ok(if report.is_valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_complete(args: CompleteArgs) -> Result<ExitCode> {
    let dist = if let Some(values) = args.mu {
        let mu: [f64; 8] = fixed_count(values, "mu")?;
        EprDistribution::from_independent(&IndependentProbs::new(mu).map_err(|e| anyhow!(e))?)
    } else {
        load_distribution(args.dist.as_deref().expect("clap requires one input"))?
    };
    println!("{}", doc::distribution_json(&dist));
    Ok(ExitCode::SUCCESS)
}

fn cmd_chsh(args: ChshArgs) -> Result<ExitCode> {
    let dist = load_distribution(&args.dist)?;
    let delta = dist.correlations().delta;
    let discriminant = dist.bell_discriminant();
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "delta": delta,
                "discriminant": discriminant,
                "bell_violated": discriminant < 0.0,
            }))?
        );
    } else {
        println!("delta = {delta}");
        println!("discriminant = {discriminant}");
        println!(
            "{}",
            if discriminant < 0.0 {
                "Bell violated"
            } else {
                "Bell satisfied"
            }
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_payoffs(args: PayoffsArgs) -> Result<ExitCode> {
    let game = load_game(&args.game)?;
    let dist = load_distribution(&args.dist)?;
    let table = game.pure_payoffs(&dist);
    let mixed = match (args.p, args.q) {
        (Some(p), Some(q)) => Some(table.mixed_payoff(&strategy_pair(p, q)?)),
        (None, None) => None,
        _ => return Err(anyhow!("payoffs needs both -p and -q, or neither")),
    };

    if args.json {
        let mut value = serde_json::json!({ "table": table });
        if let Some((a, b)) = mixed {
            value["mixed"] = serde_json::json!([a, b]);
        }
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        let cell = |i: usize, j: usize| {
            let (a, b) = table.entry(i, j);
            format!("({a:>10.4}, {b:>10.4})")
        };
        println!("        {:^24}  {:^24}", "S1'", "S2'");
        println!("  S1    {}  {}", cell(0, 0), cell(0, 1));
        println!("  S2    {}  {}", cell(1, 0), cell(1, 1));
        if let Some((a, b)) = mixed {
            println!(
                "  mixed payoff at ({}, {}) = ({a}, {b})",
                args.p.unwrap(),
                args.q.unwrap()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_nash(args: NashArgs) -> Result<ExitCode> {
    let game = load_game(&args.game)?;
    let dist = load_distribution(&args.dist)?;
    let pair = strategy_pair(args.p, args.q)?;
    let report = is_nash(&game, &dist, &pair, args.tol);

    println!("{}", serde_json::to_string_pretty(&report)?);

    let delta = dist.correlations().delta;
    eprintln!("pair (p, q) = ({}, {})", pair.p(), pair.q());
    eprintln!("delta = {delta}");
    eprintln!("discriminant (2 - |delta|) = {}", 2.0 - delta.abs());
    let verdict = match (report.is_ne, report.is_strict_boundary) {
        (true, true) => "NE: yes (weak, at boundary)",
        (true, false) => "NE: yes",
        (false, _) => "NE: no",
    };
    eprintln!("{verdict}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode> {
    let params = FamilyParams {
        free_a: fixed_count(args.free_a, "free-a")?,
        b_top: args.b_top,
        b_bottom: args.b_bottom,
        b_rest: fixed_count(args.b_rest, "b-rest")?,
        case: args.case.into(),
    };
    println!("{}", doc::game_json(&generate(&params)));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_family(args: VerifyFamilyArgs) -> Result<ExitCode> {
    let game = load_game(&args.game)?;
    let report = verify_family(&game, args.case.into(), args.samples, args.seed);
    println!("{}", serde_json::to_string_pretty(&report)?);
    eprintln!(
        "case {}: max residuals bracket_a {:.3e}, bracket_b {:.3e} over {} samples -> {}",
        report.case,
        report.max_residual_bracket_a,
        report.max_residual_bracket_b,
        report.samples,
        if report.pass { "pass" } else { "fail" }
    );
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_membership(args: MembershipArgs) -> Result<ExitCode> {
    let game = load_game(&args.game)?;
    let result = membership_test(&game);
    println!("{}", serde_json::to_string_pretty(&result)?);
    match &result {
        Some(params) => eprintln!("member of case {}", params.case),
        None => eprintln!("not a family member"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode> {
    if args.steps < 2 {
        return Err(anyhow!("--steps must be at least 2"));
    }
    if args.from >= args.to || args.from.is_nan() || args.to.is_nan() {
        return Err(anyhow!("--from must be below --to"));
    }
    if args.angle.is_empty() {
        return Err(anyhow!("--angle needs at least one of a1, a2, b1, b2"));
    }
    let game = load_game(&args.game)?;
    let baseline = load_config(&args.config)?;
    let pair = strategy_pair(args.p, args.q)?;
    let scale = if args.degrees {
        std::f64::consts::PI / 180.0
    } else {
        1.0
    };
    let (from, to) = (args.from * scale, args.to * scale);

    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let names: Vec<&str> = args.angle.iter().map(|a| a.label()).collect();
    writeln!(
        out,
        "{},delta,bracket_a,bracket_b,is_ne,is_strict_boundary",
        names.join(",")
    )?;

    for step in 0..args.steps {
        let value = from + (to - from) * step as f64 / (args.steps - 1) as f64;
        let mut config = baseline;
        for angle in &args.angle {
            config.angles[angle.index()] = value;
        }
        let dist = born_distribution(&config).map_err(|e| anyhow!(e))?;
        let delta = dist.correlations().delta;
        let brackets = nash_brackets(&game, &dist);
        let report = is_nash(&game, &dist, &pair, args.tol);
        let angle_cols = vec![format!("{value}"); args.angle.len()];
        writeln!(
            out,
            "{},{delta},{},{},{},{}",
            angle_cols.join(","),
            brackets.bracket_a,
            brackets.bracket_b,
            report.is_ne,
            report.is_strict_boundary
        )?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode> {
    let game = load_game(&args.game)?;
    let dist = load_distribution(&args.dist)?;
    let pair = strategy_pair(args.p, args.q)?;

    let mut csv = match &args.runs_csv {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {path}"))?;
            let mut writer = BufWriter::new(file);
            writeln!(writer, "run,alice_dir,bob_dir,x,y,payoff_a,payoff_b")?;
            Some(writer)
        }
        None => None,
    };

    let summary = simulate_with(&game, &dist, &pair, args.n, args.seed, |record| {
        if let Some(writer) = csv.as_mut() {
            writeln!(
                writer,
                "{},{},{},{},{},{},{}",
                record.run,
                record.alice_dir,
                record.bob_dir,
                record.x,
                record.y,
                record.payoff_a,
                record.payoff_b
            )
            .expect("writing runs CSV");
        }
    })
    .map_err(|e| anyhow!(e))?;
    if let Some(writer) = csv.as_mut() {
        writer.flush()?;
    }

    println!("{}", serde_json::to_string_pretty(&summary)?);
    eprintln!("runs = {}, seed = {}", summary.n_runs, summary.seed);
    eprintln!(
        "payoff A = {} +- {}",
        summary.payoff_mean.0, summary.payoff_stderr.0
    );
    eprintln!(
        "payoff B = {} +- {}",
        summary.payoff_mean.1, summary.payoff_stderr.1
    );
    if let Some(delta) = summary.empirical_delta() {
        eprintln!("empirical delta = {delta}");
    }
    Ok(ExitCode::SUCCESS)
}
