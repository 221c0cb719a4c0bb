//! Command-line interface.
//!
//! Two subcommands: `list` prints the registered test names, `run`
//! executes one test and writes its report. The exit status encodes the
//! verdict — 0 pass, 1 verification failure, 2 usage error, 3 internal
//! (I/O) error — so the binary composes with shell pipelines and CI
//! without parsing any output.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::fifo::{FaultMode, FifoConfig};
use crate::kernel::{run_test, RunOptions, RunReport, SimConfig, SimError};
use crate::tb::registry::TEST_NAMES;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fifosim",
    version,
    about = "Cycle-accurate synchronous FIFO simulator and verification runner"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one registered test and write its report.
    Run(RunArgs),
    /// Print the registered test names, one per line.
    List,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Registered test name (see `list`).
    #[arg(long)]
    pub test: String,

    /// Stimulus seed, decimal or 0x-prefixed hex.
    #[arg(long, default_value = "1", value_parser = parse_seed)]
    pub seed: u64,

    /// FIFO depth in entries; must be a power of two ≥ 2.
    #[arg(long, default_value_t = 8)]
    pub depth: usize,

    /// Data port width in bits (1–64).
    #[arg(long, default_value_t = 8)]
    pub width: u32,

    /// Write a VCD waveform dump to this path.
    #[arg(long)]
    pub vcd: Option<PathBuf>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub report: ReportFormat,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Cap on simulated cycles, reset window included.
    #[arg(long, default_value_t = 20_000)]
    pub max_cycles: u64,

    /// Override the transaction count of random tests.
    #[arg(long)]
    pub transactions: Option<usize>,

    /// Invert the design's full flag, which must make the directed tests
    /// fail; exists to prove the checkers are alive.
    #[arg(long)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|e| format!("expected a decimal or 0x-prefixed seed: {e}"))
}

/// Execute a parsed command line and return the process exit code.
pub fn execute(cli: Cli) -> u8 {
    match cli.command {
        Command::List => {
            for name in TEST_NAMES {
                println!("{name}");
            }
            EXIT_PASS
        }
        Command::Run(args) => run_command(&args),
    }
}

fn run_command(args: &RunArgs) -> u8 {
    let fifo_config = match FifoConfig::new(args.depth, args.width) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let sim = SimConfig { seed: args.seed, max_cycles: args.max_cycles, ..SimConfig::default() };
    let options = RunOptions {
        vcd_path: args.vcd.clone(),
        capture_trace: false,
        fault: if args.inject_fault { FaultMode::InvertFull } else { FaultMode::None },
        transaction_override: args.transactions,
    };

    let outcome = match run_test(&args.test, &sim, &fifo_config, &options) {
        Ok(outcome) => outcome,
        Err(e @ (SimError::UnknownTest(_) | SimError::Config(_))) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
    };

    let rendered = match args.report {
        ReportFormat::Json => outcome.report.to_json_string(),
        ReportFormat::Text => render_text(&outcome.report),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: cannot write report to {}: {e}", path.display());
                return EXIT_INTERNAL;
            }
        }
        None => print!("{rendered}"),
    }

    // The run itself survives a broken waveform sink, but the invocation
    // must not claim success when an artifact the user asked for is
    // missing or partial.
    if let Some(e) = &outcome.vcd_error {
        eprintln!("error: waveform output failed: {e}");
        return EXIT_INTERNAL;
    }
    if outcome.report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Human-oriented report rendering. Deterministic, like the JSON form.
pub fn render_text(report: &RunReport) -> String {
    let mut s = String::new();
    let bins = &report.coverage.bins;
    let _ = writeln!(s, "test:            {}", report.test);
    let _ = writeln!(s, "seed:            {}", report.seed);
    let _ = writeln!(s, "cycles:          {}", report.cycles);
    let _ = writeln!(s, "writes accepted: {}", report.writes_accepted);
    let _ = writeln!(s, "reads accepted:  {}", report.reads_accepted);
    let _ = writeln!(s, "writes rejected: {}", report.writes_rejected);
    let _ = writeln!(s, "reads rejected:  {}", report.reads_rejected);
    let _ = writeln!(s, "coverage:        {}% ({}/8 bins)", report.coverage.percent, bins.hit_count());
    for (name, count) in [
        ("full_seen", bins.full_seen),
        ("empty_reasserted", bins.empty_reasserted),
        ("simultaneous_rw", bins.simultaneous_rw),
        ("write_rejected", bins.write_rejected),
        ("read_rejected", bins.read_rejected),
        ("pointer_wrap", bins.pointer_wrap),
        ("data_low", bins.data_low),
        ("data_high", bins.data_high),
    ] {
        let _ = writeln!(s, "  {name:<18} {count}");
    }
    let _ = writeln!(s, "mismatches:      {}", report.mismatches.len());
    const SHOWN: usize = 10;
    for m in report.mismatches.iter().take(SHOWN) {
        let _ = writeln!(
            s,
            "  cycle {:>6}  {:<10} expected {:#x} actual {:#x}",
            m.cycle, m.category, m.expected, m.actual
        );
    }
    if report.mismatches.len() > SHOWN {
        let _ = writeln!(s, "  ... and {} more", report.mismatches.len() - SHOWN);
    }
    if report.truncated {
        let _ = writeln!(s, "note:            stimulus truncated at max_cycles");
    }
    let _ = writeln!(s, "result:          {}", if report.pass { "PASS" } else { "FAIL" });
    s
}
