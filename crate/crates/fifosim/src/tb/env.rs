//! Environment assembly: agent, scoreboard, and coverage wired together.

use crate::fifo::FifoConfig;
use crate::tb::coverage::CoverageCollector;
use crate::tb::driver::Driver;
use crate::tb::monitor::Monitor;
use crate::tb::registry::{self, UnknownTest};
use crate::tb::scoreboard::Scoreboard;
use crate::tb::sequence::{SequenceError, SequenceSpec, Sequencer};

/// Whether the agent generates stimulus or only observes pins driven by
/// someone else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AgentMode {
    #[default]
    Active,
    Passive,
}

/// The agent bundles the stimulus side (sequencer + driver, present only
/// in active mode) with the always-present monitor.
#[derive(Debug)]
pub struct Agent {
    pub mode: AgentMode,
    pub sequencer: Option<Sequencer>,
    pub driver: Option<Driver>,
    pub monitor: Monitor,
}

/// Everything a test run needs besides the design itself.
#[derive(Debug)]
pub struct Environment {
    pub test_name: String,
    pub agent: Agent,
    pub scoreboard: Scoreboard,
    pub coverage: CoverageCollector,
}

impl Environment {
    /// Build the environment for a registered test: look up its stimulus,
    /// construct the agent in the requested mode, and size the scoreboard's
    /// reference queue to the FIFO's capacity. Monitor output feeds both
    /// the scoreboard and the coverage collector.
    pub fn build(test: &str, config: &FifoConfig, mode: AgentMode) -> Result<Self, UnknownTest> {
        let spec = registry::sequence_for(test, config)?;
        Ok(Self::from_spec(test, spec, config, mode)
            .expect("registry sequences are valid by construction"))
    }

    /// Like [`Environment::build`] but with explicit stimulus, for callers
    /// that adjust the registered sequence (e.g. a transaction-count
    /// override) before running it.
    pub fn from_spec(
        test: &str,
        spec: SequenceSpec,
        config: &FifoConfig,
        mode: AgentMode,
    ) -> Result<Self, SequenceError> {
        let (sequencer, driver) = match mode {
            AgentMode::Active => (Some(Sequencer::new(spec)?), Some(Driver)),
            AgentMode::Passive => (None, None),
        };
        Ok(Self {
            test_name: test.to_string(),
            agent: Agent { mode, sequencer, driver, monitor: Monitor },
            scoreboard: Scoreboard::new(config.depth()),
            coverage: CoverageCollector::new(config),
        })
    }
}
