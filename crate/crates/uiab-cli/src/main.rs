//! Command-line front end: runs axiom suites, homology and cone checks on
//! catalog fixtures or JSON scenario files.
//!
//! Exit status: 0 when every check passes, 1 when some check fails, 2 for
//! usage errors, 3 for invalid input (schema, unknown fixture, unreadable
//! file), 4 for internal errors.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use uiab::fixtures::{CATALOG, DEFAULT_WINDOW};
use uiab::scenario::{Loaded, Scenario, Task};
use uiab::suite::{fixture_scenario, run, RunOptions};
use uiab::{Error, Report, Ring};

#[derive(Parser)]
#[command(name = "uiab", version, about = "Exact checks for unital infinitesimal anti-symmetric bialgebras")]
struct Cli {
    /// Report format; defaults to md, or json for `report`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Truncation window N for catalog fixtures.
    #[arg(long, global = true, default_value_t = DEFAULT_WINDOW)]
    window: i64,
    /// Coefficient ring (Z, Q or GF(p)); overrides the ring of a scenario file.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Record elapsed time per section (makes reports non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Axiom suite and structural properties of a fixture or scenario file.
    Check { target: String },
    /// Homology of the chain complexes in a fixture or scenario file.
    Homology {
        target: String,
        /// Also compute mapping cones and transition automorphisms.
        #[arg(long)]
        cone: bool,
    },
    /// Cone product construction and its cross-checks.
    Cone { target: String },
    /// Every check that applies to a catalog fixture.
    Demo { fixture: String },
    /// Every check listed in a scenario file (or applicable to a fixture).
    Report { targets: Vec<String> },
    /// Print a fixture as a scenario file.
    Export { fixture: String },
    /// List catalog fixtures.
    List,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Schema { .. } | Error::Unknown(_) | Error::InvalidRing(_) | Error::InvalidScalar(_) | Error::Hypothesis(_) => {
                Failure::Input(e.to_string())
            }
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn ring_arg(cli: &Cli) -> Result<Option<Ring>, Failure> {
    cli.ring.as_deref().map(|r| r.parse::<Ring>()).transpose().map_err(Failure::from)
}

fn load(cli: &Cli, target: &str) -> Result<Loaded, Failure> {
    let ring = ring_arg(cli)?;
    if CATALOG.contains(&target) {
        return Ok(fixture_scenario(target, cli.window, ring.unwrap_or(Ring::Integers))?.validate(None)?);
    }
    let path = Path::new(target);
    if !path.exists() {
        return Err(Failure::Input(format!(
            "{target:?} is neither a scenario file nor a fixture; available fixtures: {}",
            CATALOG.join(", ")
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{target}: {e}")))?;
    let sc = Scenario::parse(&text).map_err(|e| Failure::Input(format!("{target}: {e}")))?;
    sc.validate(ring).map_err(|e| Failure::Input(format!("{target}: {e}")))
}

fn scenario_tasks(l: &Loaded) -> Vec<Task> {
    if !l.checks.is_empty() {
        l.checks.clone()
    } else if l.instance.is_some() {
        vec![Task::Axioms]
    } else {
        vec![Task::Homology]
    }
}

fn execute(cli: &Cli) -> Result<(String, bool), Failure> {
    let opts = RunOptions { cone_homology: false, timing: cli.timing };
    let full = RunOptions { cone_homology: true, ..opts };
    let mut format = cli.format.unwrap_or(Format::Md);
    let report = match &cli.command {
        Command::List => return Ok((CATALOG.join("\n") + "\n", true)),
        Command::Export { fixture } => {
            let ring = ring_arg(cli)?.unwrap_or(Ring::Integers);
            if !CATALOG.contains(&fixture.as_str()) {
                return Err(Error::Unknown(format!("unknown fixture {fixture:?}; available: {}", CATALOG.join(", "))).into());
            }
            return Ok((fixture_scenario(fixture, cli.window, ring)?.to_json(), true));
        }
        Command::Check { target } => {
            let l = load(cli, target)?;
            let mut tasks: Vec<Task> =
                scenario_tasks(&l).into_iter().filter(|t| !matches!(t, Task::Cone | Task::Homology)).collect();
            if tasks.is_empty() {
                tasks.push(Task::Axioms);
            }
            run(&l, &tasks, opts)?
        }
        Command::Homology { target, cone } => {
            let l = load(cli, target)?;
            run(&l, &[Task::Homology], RunOptions { cone_homology: *cone, ..opts })?
        }
        Command::Cone { target } => run(&load(cli, target)?, &[Task::Cone], opts)?,
        Command::Demo { fixture } => {
            if !CATALOG.contains(&fixture.as_str()) {
                return Err(Error::Unknown(format!("unknown fixture {fixture:?}; available: {}", CATALOG.join(", "))).into());
            }
            let l = load(cli, fixture)?;
            run(&l, &scenario_tasks(&l), full)?
        }
        Command::Report { targets } => {
            format = cli.format.unwrap_or(Format::Json);
            if targets.is_empty() {
                return Err(Failure::Input("report needs at least one fixture or scenario".into()));
            }
            let mut sections = Vec::new();
            for t in targets {
                let l = load(cli, t)?;
                sections.extend(run(&l, &scenario_tasks(&l), full)?.sections);
            }
            Report::new(sections)
        }
    };
    let text = match format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    Ok((text, report.all_passed()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(4)
        }
    }
}
