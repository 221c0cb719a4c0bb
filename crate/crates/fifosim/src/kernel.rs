//! Deterministic simulation kernel.
//!
//! One run is a plain loop: `reset_cycles` posedges with reset asserted,
//! then one transaction per clock cycle until the sequence is exhausted or
//! `max_cycles` is reached. Every cycle follows the same two-phase shape —
//! sample the pre-edge flags, drive the pins, apply the edge, then let the
//! monitor, scoreboard, and coverage collector see what happened — and
//! simulation time advances by exactly one clock period. Nothing consults
//! a wall clock or global state, so a run is a pure function of
//! `(test name, SimConfig, FifoConfig, options)`: repeated invocations
//! produce byte-identical reports and waveform files.

use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use crate::fifo::{FaultMode, Fifo, FifoConfig, FifoError, FifoInputs, FifoOutputs};
use crate::prng::SplitMix64;
use crate::tb::coverage::CoverageReport;
use crate::tb::env::{AgentMode, Environment};
use crate::tb::monitor::{OpKind, PreEdgeFlags};
use crate::tb::registry::{self, UnknownTest};
use crate::tb::scoreboard::{MismatchCategory, MismatchRecord};
use crate::tb::sequence::{SequenceError, SequenceSpec};
use crate::vcd::{self, VcdWriter};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    Config(String),
    #[error(transparent)]
    UnknownTest(#[from] UnknownTest),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Fifo(#[from] FifoError),
}

/// Clocking and run-length parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    /// Nanoseconds per clock cycle; posedge k falls at `k · clock_period`.
    pub clock_period: u64,
    /// Posedges with reset asserted before stimulus starts.
    pub reset_cycles: u64,
    /// Hard cap on total posedges, reset window included.
    pub max_cycles: u64,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        // 10 cycles of 10 ns keep reset asserted through t = 100 ns; the
        // cycle cap leaves room for the 10,000-transaction soak test.
        Self { clock_period: 10, reset_cycles: 10, max_cycles: 20_000, seed: 1 }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.clock_period == 0 {
            return Err(SimError::Config("clock_period must be positive".into()));
        }
        if self.reset_cycles == 0 {
            return Err(SimError::Config("reset_cycles must be at least 1".into()));
        }
        if self.max_cycles <= self.reset_cycles {
            return Err(SimError::Config(format!(
                "max_cycles ({}) must exceed reset_cycles ({})",
                self.max_cycles, self.reset_cycles
            )));
        }
        Ok(())
    }
}

/// Per-run knobs that don't affect the simulated behavior of a healthy
/// design: waveform output, trace capture, fault injection, and stimulus
/// length overrides.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub vcd_path: Option<PathBuf>,
    /// Keep a [`PinSample`] per cycle in the outcome (off by default; a
    /// soak run is ten thousand samples).
    pub capture_trace: bool,
    pub fault: FaultMode,
    /// Replace the transaction count of random sequences; ignored for
    /// directed tests, whose length is part of their meaning.
    pub transaction_override: Option<usize>,
}

/// Pin-level snapshot of one cycle: the driven inputs and the post-edge
/// outputs, as they appear in the waveform at `time_ns`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PinSample {
    pub cycle: u64,
    pub time_ns: u64,
    pub data_in: u64,
    pub wn: bool,
    pub rn: bool,
    pub reset: bool,
    pub data_out: u64,
    pub full: bool,
    pub empty: bool,
}

/// The serializable result of one run. Field order is the report schema;
/// reports contain no timestamps or host information, so identical runs
/// serialize to identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub test: String,
    pub seed: u64,
    /// Total posedges executed, reset window included.
    pub cycles: u64,
    pub writes_accepted: u64,
    pub reads_accepted: u64,
    pub writes_rejected: u64,
    pub reads_rejected: u64,
    pub mismatches: Vec<MismatchRecord>,
    pub coverage: CoverageReport,
    /// True iff no mismatches were recorded and the stimulus ran to
    /// completion.
    pub pass: bool,
    /// True when `max_cycles` cut the sequence short. A truncated run
    /// never passes: silently shortened stimulus would hide bugs.
    pub truncated: bool,
}

impl RunReport {
    /// Canonical JSON rendering (pretty-printed, trailing newline).
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is infallible");
        s.push('\n');
        s
    }
}

/// A finished run: the report plus everything a caller might want to
/// inspect that doesn't belong in the serialized schema.
#[derive(Debug)]
pub struct RunOutcome {
    pub report: RunReport,
    /// Final design state, for occupancy conservation and determinism
    /// checks.
    pub fifo: Fifo,
    /// Per-cycle pin samples; empty unless [`RunOptions::capture_trace`].
    pub trace: Vec<PinSample>,
    /// First waveform I/O failure, if any. A broken VCD sink never aborts
    /// the run — the report is still produced and the failure recorded.
    pub vcd_error: Option<String>,
}

/// Run a registered test and return just its report.
pub fn run(test: &str, sim: &SimConfig, fifo_config: &FifoConfig) -> Result<RunReport, SimError> {
    run_test(test, sim, fifo_config, &RunOptions::default()).map(|outcome| outcome.report)
}

/// Run a registered test with full control over options.
pub fn run_test(
    test: &str,
    sim: &SimConfig,
    fifo_config: &FifoConfig,
    options: &RunOptions,
) -> Result<RunOutcome, SimError> {
    sim.validate()?;
    let mut spec = registry::sequence_for(test, fifo_config)?;
    if let (Some(count), SequenceSpec::Random { count: c, .. }) =
        (options.transaction_override, &mut spec)
    {
        *c = count;
    }
    let mut env = Environment::from_spec(test, spec, fifo_config, AgentMode::Active)?;
    let mut fifo = Fifo::with_fault(*fifo_config, options.fault);
    let mut rng = SplitMix64::new(sim.seed);
    let mut sink = VcdSink::open(options.vcd_path.as_deref(), fifo_config);
    let mut trace = Vec::new();

    let mut cycle: u64 = 0;
    let mut writes_accepted = 0;
    let mut reads_accepted = 0;
    let mut writes_rejected = 0;
    let mut reads_rejected = 0;

    // Reset window: reset dominates, every cycle must show the cleared
    // outputs (data_out=0, full=0, empty=1). The reference queue is empty
    // here, so the flag comparison doubles as the reset check; data_out
    // has no reference analogue and is checked directly.
    let reset_inputs = FifoInputs { reset: true, ..FifoInputs::default() };
    for _ in 0..sim.reset_cycles {
        let outputs = fifo.posedge(&reset_inputs)?;
        if outputs.data_out != 0 {
            env.scoreboard.record(MismatchRecord {
                cycle,
                category: MismatchCategory::Data,
                expected: 0,
                actual: outputs.data_out,
            });
        }
        env.scoreboard.check_flags(cycle, &outputs);
        sink.emit_cycle(sim, cycle, &reset_inputs, &outputs, &fifo);
        if options.capture_trace {
            trace.push(sample(sim, cycle, &reset_inputs, &outputs));
        }
        cycle += 1;
    }

    // Driven phase: one transaction per posedge.
    let mut truncated = false;
    loop {
        if cycle >= sim.max_cycles {
            truncated = env
                .agent
                .sequencer
                .as_ref()
                .is_some_and(|s| s.remaining() > 0);
            break;
        }
        let sequencer = env.agent.sequencer.as_mut().expect("kernel runs an active agent");
        let Some(tx) = sequencer.next_item(&mut rng) else {
            break;
        };
        let pre = PreEdgeFlags { full: fifo.is_full(), empty: fifo.is_empty() };
        let inputs = env.agent.driver.as_ref().expect("active agent has a driver").drive(&tx);
        let outputs = fifo.posedge(&inputs)?;
        let ops = env.agent.monitor.sample(pre, &inputs, &outputs, cycle);

        env.scoreboard.begin_cycle();
        for op in &ops {
            match op.op {
                OpKind::WriteAccepted => writes_accepted += 1,
                OpKind::WriteRejected => writes_rejected += 1,
                OpKind::ReadAccepted => reads_accepted += 1,
                OpKind::ReadRejected => reads_rejected += 1,
            }
            env.scoreboard.check_op(op);
        }
        env.scoreboard.check_flags(cycle, &outputs);
        env.coverage.record(&ops, &outputs);

        sink.emit_cycle(sim, cycle, &inputs, &outputs, &fifo);
        if options.capture_trace {
            trace.push(sample(sim, cycle, &inputs, &outputs));
        }
        cycle += 1;
    }

    let vcd_error = sink.finish();
    let coverage = env.coverage.report();
    let mismatches = env.scoreboard.into_mismatches();
    let pass = mismatches.is_empty() && !truncated;
    Ok(RunOutcome {
        report: RunReport {
            test: test.to_string(),
            seed: sim.seed,
            cycles: cycle,
            writes_accepted,
            reads_accepted,
            writes_rejected,
            reads_rejected,
            mismatches,
            coverage,
            pass,
            truncated,
        },
        fifo,
        trace,
        vcd_error,
    })
}

fn sample(sim: &SimConfig, cycle: u64, inputs: &FifoInputs, outputs: &FifoOutputs) -> PinSample {
    PinSample {
        cycle,
        time_ns: cycle * sim.clock_period,
        data_in: inputs.data_in,
        wn: inputs.wn,
        rn: inputs.rn,
        reset: inputs.reset,
        data_out: outputs.data_out,
        full: outputs.full,
        empty: outputs.empty,
    }
}

/// Waveform sink that degrades gracefully: any I/O failure is recorded
/// once and emission stops, but the simulation itself continues.
struct VcdSink {
    writer: Option<VcdWriter<std::io::BufWriter<std::fs::File>>>,
    error: Option<String>,
}

impl VcdSink {
    fn open(path: Option<&std::path::Path>, config: &FifoConfig) -> Self {
        let Some(path) = path else {
            return Self { writer: None, error: None };
        };
        let roster = vcd::fifo_roster(config.width(), config.pointer_bits());
        match VcdWriter::create(path, 1, roster) {
            Ok(writer) => Self { writer: Some(writer), error: None },
            Err(e) => Self { writer: None, error: Some(e.to_string()) },
        }
    }

    /// Dump one cycle: all pins at the posedge timestamp, then the clock's
    /// falling edge half a period later, so viewers show a square wave.
    fn emit_cycle(
        &mut self,
        sim: &SimConfig,
        cycle: u64,
        inputs: &FifoInputs,
        outputs: &FifoOutputs,
        fifo: &Fifo,
    ) {
        if self.writer.is_none() {
            return;
        }
        let t = cycle * sim.clock_period;
        let changes: [(&str, u64); 10] = [
            (vcd::ids::CLOCK, 1),
            (vcd::ids::DATA_IN, inputs.data_in),
            (vcd::ids::RESET, u64::from(inputs.reset)),
            (vcd::ids::WN, u64::from(inputs.wn)),
            (vcd::ids::RN, u64::from(inputs.rn)),
            (vcd::ids::FULL, u64::from(outputs.full)),
            (vcd::ids::EMPTY, u64::from(outputs.empty)),
            (vcd::ids::DATA_OUT, outputs.data_out),
            (vcd::ids::WPTR, u64::from(fifo.wptr())),
            (vcd::ids::RPTR, u64::from(fifo.rptr())),
        ];
        let result = (|| {
            let writer = self.writer.as_mut().expect("checked above");
            for (id, value) in &changes {
                writer.change_value(t, id, *value)?;
            }
            writer.change_value(t + sim.clock_period / 2, vcd::ids::CLOCK, 0)
        })();
        if let Err(e) = result {
            self.error = Some(e.to_string());
            self.writer = None;
        }
    }

    fn finish(&mut self) -> Option<String> {
        if let Some(writer) = self.writer.take() {
            if let Err(e) = writer.finish() {
                self.error = Some(e.to_string());
            }
        }
        self.error.take()
    }
}
