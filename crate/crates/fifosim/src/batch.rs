//! Batched test execution.
//!
//! Runs are pure functions with fully disjoint state, so a batch of them
//! — the whole registered suite, or one test swept across many seeds — is
//! data-parallel by construction. With the `parallel` feature on (the
//! default), [`run_batch`] fans the jobs out across rayon's thread pool;
//! [`run_batch_sequential`] is the same loop on the calling thread and is
//! always available. Both return results in job order, so the outputs are
//! identical regardless of scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::fifo::FifoConfig;
use crate::kernel::{run_test, RunOptions, RunReport, SimConfig, SimError};
use crate::tb::registry::TEST_NAMES;

/// One unit of batch work. No waveform output: parallel jobs writing VCD
/// files would contend on paths, and batch mode exists for throughput.
#[derive(Debug, Clone)]
pub struct RunJob {
    pub test: String,
    pub sim: SimConfig,
    pub fifo: FifoConfig,
    pub fault: crate::fifo::FaultMode,
    pub transaction_override: Option<usize>,
}

impl RunJob {
    pub fn new(test: &str, sim: SimConfig, fifo: FifoConfig) -> Self {
        Self {
            test: test.to_string(),
            sim,
            fifo,
            fault: crate::fifo::FaultMode::None,
            transaction_override: None,
        }
    }

    fn execute(&self) -> Result<RunReport, SimError> {
        let options = RunOptions {
            fault: self.fault,
            transaction_override: self.transaction_override,
            ..RunOptions::default()
        };
        run_test(&self.test, &self.sim, &self.fifo, &options).map(|outcome| outcome.report)
    }
}

/// Run every job, in parallel when the `parallel` feature is enabled.
/// Results are in job order.
pub fn run_batch(jobs: &[RunJob]) -> Vec<Result<RunReport, SimError>> {
    #[cfg(feature = "parallel")]
    {
        jobs.par_iter().map(RunJob::execute).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_batch_sequential(jobs)
    }
}

/// Run every job on the calling thread, in job order.
pub fn run_batch_sequential(jobs: &[RunJob]) -> Vec<Result<RunReport, SimError>> {
    jobs.iter().map(RunJob::execute).collect()
}

/// Jobs for the full registered suite under one configuration.
pub fn suite_jobs(sim: SimConfig, fifo: FifoConfig) -> Vec<RunJob> {
    TEST_NAMES.iter().map(|test| RunJob::new(test, sim, fifo)).collect()
}

/// Jobs sweeping one test across seeds.
pub fn seed_sweep_jobs(test: &str, seeds: &[u64], sim: SimConfig, fifo: FifoConfig) -> Vec<RunJob> {
    seeds
        .iter()
        .map(|&seed| RunJob::new(test, SimConfig { seed, ..sim }, fifo))
        .collect()
}
