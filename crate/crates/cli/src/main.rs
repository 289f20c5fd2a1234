use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use grlc_cli::{parse_scenario, run_counterexample, run_scenario, CliError, Command, Overrides, Report};

/// Exact multigraded local cohomology workbench.
#[derive(Parser)]
#[command(name = "grlc", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert function of the module on the fine window
    Hilbert(ScenarioArgs),
    /// Graded Hom from the module into `target` (default: the module itself)
    Hom(ScenarioArgs),
    /// Ext^i(R/a, M)
    Ext(ScenarioArgs),
    /// The a-torsion submodule
    Gamma(ScenarioArgs),
    /// Local cohomology by the Čech route
    Cech(ScenarioArgs),
    /// Local cohomology by both routes, compared
    Lc(ScenarioArgs),
    /// Ideal transform D^i
    Dtransform(ScenarioArgs),
    /// Coarsened module against fiber sums
    Coarsen(ScenarioArgs),
    /// Does local cohomology commute with coarsening on the window?
    CheckCommute(ScenarioArgs),
    /// The four-term sequence and D^i = H^(i+1)
    CheckProp70(ScenarioArgs),
    /// Certificates for the monoid-algebra witness family
    Counterexample(CounterexampleArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file
    scenario: PathBuf,
    /// Cohomological index
    #[arg(long = "i", default_value_t = 0)]
    i: usize,
    /// Ideal generators, e.g. "x, y^2"
    #[arg(long)]
    ideal: Option<String>,
    /// Matrix of ψ, e.g. "[[1, 1]]"
    #[arg(long)]
    psi: Option<String>,
    /// Fine window, "lo:hi" or a list of degrees
    #[arg(long)]
    gwindow: Option<String>,
    /// Coarse window, "lo:hi" or a list of degrees
    #[arg(long)]
    hwindow: Option<String>,
    /// Stage cap for colimits
    #[arg(long)]
    ncap: Option<usize>,
    /// Accept fiber sums over the fine window when ψ has infinite kernel
    #[arg(long)]
    assume_support_covered: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Truncation level K
    #[arg(long)]
    k: usize,
    /// Seed for the probe exponents and generator sets
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Directory for report.json and report.tsv
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the table
    #[arg(long)]
    json: bool,
}

fn scenario_command(cmd: Cmd) -> Result<(Report, OutputArgs), CliError> {
    let (command, args) = match cmd {
        Cmd::Counterexample(a) => return Ok((run_counterexample(a.k, a.seed)?, a.output)),
        Cmd::Hilbert(a) => (Command::Hilbert, a),
        Cmd::Hom(a) => (Command::Hom, a),
        Cmd::Ext(a) => (Command::Ext, a),
        Cmd::Gamma(a) => (Command::Gamma, a),
        Cmd::Cech(a) => (Command::Cech, a),
        Cmd::Lc(a) => (Command::Lc, a),
        Cmd::Dtransform(a) => (Command::Dtransform, a),
        Cmd::Coarsen(a) => (Command::Coarsen, a),
        Cmd::CheckCommute(a) => (Command::CheckCommute, a),
        Cmd::CheckProp70(a) => (Command::CheckProp70, a),
    };
    let text = fs::read_to_string(&args.scenario)?;
    let scenario = parse_scenario(&text)?;
    let overrides = Overrides {
        i: args.i,
        ideal: args.ideal,
        psi: args.psi,
        gwindow: args.gwindow,
        hwindow: args.hwindow,
        n_cap: args.ncap,
        assume_support_covered: args.assume_support_covered,
    };
    Ok((run_scenario(command, scenario, &overrides)?, args.output))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match scenario_command(cli.command) {
        Ok((report, output)) => {
            if output.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_tsv());
            }
            if let Some(dir) = output.out {
                if let Err(e) = report.write(&dir) {
                    eprintln!("error: cannot write reports to {}: {e}", dir.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
