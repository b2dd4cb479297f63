use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qcorr::error::Error;
use qcorr::states::{as_bell_diagonal, BellDiagonalState};
use qcorr::{
    chsh_violating, discord_variational, entanglement_bd, measure_report, parse_state_input,
    pure_state_measures, run_suite, steerable_two_pm, DensityMatrix, MeasureReport,
    OptimizerConfig, StateInput, SweepQuantity, SweepSpec,
};

const STEERING_SCENARIO: &str = "two-projective-measurements";

#[derive(Parser)]
#[command(
    name = "qcorr",
    about = "Relative-entropy correlation quantifiers for two-qubit states",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report all quantifiers and criteria for one state
    Measure(MeasureArgs),
    /// Write a CSV grid sweep over (c1, c2) at fixed c3
    Sweep(SweepArgs),
    /// Run a sampled verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MeasureArgs {
    /// Path to a JSON state document (bell_diagonal | matrix | pure_alpha)
    #[arg(long, group = "input")]
    state: Option<PathBuf>,
    /// Bell-diagonal correlation triple, e.g. -0.8,-0.8,-0.8
    #[arg(long, group = "input", value_name = "c1,c2,c3", allow_hyphen_values = true)]
    bell_diag: Option<String>,
    /// Schmidt coefficient alpha of a pure state
    #[arg(long, group = "input", value_name = "a", allow_hyphen_values = true)]
    pure_alpha: Option<f64>,
    /// Also compute variational bounds for general matrix input
    /// (fails with an error unless the matrix is Bell-diagonal)
    #[arg(long)]
    bounds: bool,
    /// Optimizer seed
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    /// Quantity: d_minus_e | e | c_minus_d | d | coh | chsh_param
    #[arg(long)]
    quantity: String,
    #[arg(long, allow_hyphen_values = true)]
    c3: f64,
    /// Lattice points per axis
    #[arg(long)]
    grid: usize,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// hierarchy | convexity | monotonicity | criteria | oracles | steering_oracle
    #[arg(long)]
    suite: String,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
}

fn parse_triple(text: &str) -> Result<[f64; 3], Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse("expected three comma-separated numbers".into()));
    }
    let mut c = [0.0; 3];
    for (slot, part) in c.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("not a number: '{part}'")))?;
    }
    Ok(c)
}

fn check_line(label: &str, ok: bool) -> String {
    format!("check {label}: {}", if ok { "pass" } else { "fail" })
}

fn print_full_report(report: &MeasureReport) {
    println!("discord           = {}", report.discord);
    println!("entanglement      = {}", report.entanglement);
    println!("coherence         = {}", report.coherence);
    println!("steerable_2pm     = {}", report.steerable_2pm);
    println!("chsh_violating    = {}", report.chsh_violating);
    println!("chsh_parameter    = {}", report.chsh_parameter);
    println!("steering_bound    = {}", report.steering_bound);
    println!("nonlocality_bound = {}", report.nonlocality_bound);
    println!("{}", check_line("D >= E", report.discord >= report.entanglement - 1e-9));
    println!("{}", check_line("Coh >= D", report.coherence >= report.discord - 1e-9));
    let mut block = serde_json::to_value(report).expect("serializable report");
    block["steering_scenario"] = json!(STEERING_SCENARIO);
    println!("{block}");
}

/// Triple outside the tetrahedron: only spectrum-free quantities are
/// meaningful, so the report is partial and flagged as unphysical.
fn print_formal_report(c: [f64; 3]) {
    let bd = BellDiagonalState::from_c_unchecked(c[0], c[1], c[2]);
    let e = entanglement_bd(&bd);
    let steerable = steerable_two_pm(&bd).0;
    let (violating, chsh_parameter) = chsh_violating(&bd);
    println!("note: triple lies outside the state tetrahedron; formal report");
    println!("entanglement      = {e}");
    println!("steerable_2pm     = {steerable}");
    println!("chsh_violating    = {violating}");
    println!("chsh_parameter    = {chsh_parameter}");
    let block = json!({
        "discord": Value::Null,
        "entanglement": e,
        "coherence": Value::Null,
        "steerable_2pm": steerable,
        "chsh_violating": violating,
        "chsh_parameter": chsh_parameter,
        "steering_bound": Value::Null,
        "nonlocality_bound": Value::Null,
        "physical": false,
        "steering_scenario": STEERING_SCENARIO,
    });
    println!("{block}");
}

/// General matrix with no Bell-diagonal structure: only the basis-free
/// variational quantities are reported.
fn print_matrix_report(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<(), Error> {
    let discord = discord_variational(rho, cfg)?;
    println!("discord           = {discord}");
    println!("entanglement      = (closed form requires a Bell-diagonal state)");
    let block = json!({
        "discord": discord,
        "steering_scenario": STEERING_SCENARIO,
    });
    println!("{block}");
    Ok(())
}

fn cmd_measure(args: &MeasureArgs) -> Result<(), Error> {
    let cfg = OptimizerConfig::with_seed(args.seed);

    if let Some(alpha) = args.pure_alpha {
        let ps = qcorr::PureSchmidtState::new(alpha)?;
        print_full_report(&pure_state_measures(&ps));
        return Ok(());
    }

    if let Some(triple) = &args.bell_diag {
        let c = parse_triple(triple)?;
        return match BellDiagonalState::from_c(c[0], c[1], c[2]) {
            Ok(bd) => {
                print_full_report(&measure_report(&bd, &cfg)?);
                Ok(())
            }
            Err(_) => {
                print_formal_report(c);
                Ok(())
            }
        };
    }

    let path = args
        .state
        .as_ref()
        .ok_or_else(|| Error::Parse("one of --state, --bell-diag, --pure-alpha required".into()))?;
    let document = std::fs::read_to_string(path)?;
    match parse_state_input(&document)? {
        StateInput::BellDiagonal(bd) => print_full_report(&measure_report(&bd, &cfg)?),
        StateInput::PureAlpha(ps) => print_full_report(&pure_state_measures(&ps)),
        StateInput::Matrix(rho) => match as_bell_diagonal(&rho) {
            Some(bd) => print_full_report(&measure_report(&bd, &cfg)?),
            None if args.bounds => return Err(Error::NotBellDiagonal),
            None => print_matrix_report(&rho, &cfg)?,
        },
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), Error> {
    let quantity: SweepQuantity = args.quantity.parse()?;
    let spec = SweepSpec::new(quantity, args.c3, args.grid)?;
    qcorr::sweep::write_sweep_csv(&spec, &args.out)?;
    println!(
        "wrote {} ({} rows)",
        args.out.display(),
        args.grid * args.grid
    );
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, Error> {
    let result = run_suite(&args.suite, args.samples, args.seed)?;
    println!("suite            = {}", result.suite_name);
    println!("samples          = {}", result.samples);
    println!("failures         = {}", result.failures);
    println!("worst_violation  = {:e}", result.worst_violation);
    println!("elapsed_seconds  = {:.3}", result.elapsed_seconds);
    println!("{}", check_line(&result.suite_name, result.passed()));
    Ok(result.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Measure(args) => cmd_measure(args).map(|_| true),
        Command::Sweep(args) => cmd_sweep(args).map(|_| true),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
