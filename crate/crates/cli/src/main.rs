use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use qincompress_core::report::{self, OutputRecord, ReproduceOptions, RunOptions};
use qincompress_core::{Error, ScenarioConfig};

#[derive(Parser)]
#[command(name = "qincompress", version, about = "Scenario runner for the circular-Rydberg and tidal charge-separation models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Moments, magnetic moment, flux and gaps of a circular state
    Rydberg(Common),
    /// Diamagnetic and tidal energy shifts
    Shift(Common),
    /// Forces from the field gradients of the shifts
    Force(Common),
    /// Two-point free fall toward the Earth's centre
    Drop(Common),
    /// Exact α and the candidate β values for the dumbbell pair
    Dumbbell(Common),
    /// Equilibrium charge and voltage of the cube circuit
    Circuit(Common),
    /// Rotating source masses, lock-in detection and outcome table
    Cavendish(Common),
    /// Recompute every headline number and check its tolerance
    ReproducePaper {
        #[command(flatten)]
        common: Common,
        /// Override α with an exact rational such as 1/2
        #[arg(long, value_parser = parse_rational)]
        alpha: Option<BigRational>,
    },
}

#[derive(Args)]
struct Common {
    /// JSON scenario file; omitted keys take their defaults
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use a_n² in place of the exact ⟨x²+y²⟩
    #[arg(long)]
    use_paper_approx: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim().parse::<BigRational>().map_err(|e| format!("expected p/q: {e}"))
}

fn load_config(path: Option<&Path>) -> Result<ScenarioConfig, Error> {
    match path {
        Some(p) => ScenarioConfig::load(&fs::read_to_string(p)?),
        None => Ok(ScenarioConfig::default()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
            _ => {}
        },
    }
    Ok(())
}

fn render(record: &OutputRecord, format: Format) -> String {
    match format {
        Format::Json => record.to_json(),
        Format::Csv => record.to_csv(),
    }
}

type Runner = fn(&ScenarioConfig, RunOptions) -> Result<OutputRecord, Error>;

fn run_scenario(common: &Common, runner: Runner) -> Result<bool, Error> {
    let config = load_config(common.config.as_deref())?;
    let options = RunOptions { seed: common.seed, use_paper_approx: common.use_paper_approx };
    let record = runner(&config, options)?;
    emit(&render(&record, common.format), common.out.as_deref())?;
    Ok(true)
}

fn reproduce(common: &Common, alpha: Option<BigRational>) -> Result<bool, Error> {
    // the report has fixed inputs; a config file is still parsed so typos surface
    load_config(common.config.as_deref())?;
    let report = report::reproduce_paper(&ReproduceOptions { seed: common.seed, alpha_override: alpha })?;
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    emit(&text, common.out.as_deref())?;
    for check in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("check {} failed: {} ({})", check.id, check.name, check.criterion);
    }
    Ok(report.all_passed)
}

fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::Rydberg(c) => run_scenario(&c, report::run_rydberg),
        Command::Shift(c) => run_scenario(&c, report::run_shift),
        Command::Force(c) => run_scenario(&c, report::run_force),
        Command::Drop(c) => run_scenario(&c, report::run_drop),
        Command::Dumbbell(c) => run_scenario(&c, report::run_dumbbell),
        Command::Circuit(c) => run_scenario(&c, report::run_circuit),
        Command::Cavendish(c) => run_scenario(&c, report::run_cavendish),
        Command::ReproducePaper { common, alpha } => reproduce(&common, alpha),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
