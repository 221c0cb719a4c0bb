//! Transaction-level testbench kit.
//!
//! The structure follows the classic layered-testbench discipline: a
//! [`sequence::Sequencer`] produces [`Transaction`]s, the
//! [`driver`] turns each one into pin wiggles, a passive
//! [`monitor::Monitor`] reconstructs what actually happened at the pins,
//! and the [`scoreboard::Scoreboard`] compares that against the golden
//! [`crate::ref_model::RefQueue`] while the
//! [`coverage::CoverageCollector`] tallies which interesting corners the
//! run visited. [`env::Environment`] bundles the pieces; the named tests
//! live in [`registry`].

pub mod coverage;
pub mod driver;
pub mod env;
pub mod monitor;
pub mod registry;
pub mod scoreboard;
pub mod sequence;

/// What a single transaction asks the FIFO to do on one clock edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransactionKind {
    Write,
    Read,
    /// Write and read on the same edge.
    Both,
    Idle,
}

impl TransactionKind {
    /// Whether this kind carries a data payload.
    pub fn carries_data(self) -> bool {
        matches!(self, TransactionKind::Write | TransactionKind::Both)
    }
}

/// One unit of stimulus, stamped with a sequence-unique id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transaction {
    pub kind: TransactionKind,
    /// Payload for data-carrying kinds; zero otherwise.
    pub data: u64,
    /// Position in the emitting sequence, starting at zero.
    pub id: u64,
}
