//! Scoreboard: compares observed pin activity against the golden queue.
//!
//! Every accepted operation is mirrored into a [`RefQueue`] and checked;
//! every rejected operation is checked for guard consistency (the design
//! may only reject a write when the reference is full, a read when it is
//! empty); and at the end of each cycle the design's status flags are
//! compared against the reference's. Checks never stop the run — each
//! failure is recorded as a [`MismatchRecord`] and the simulation carries
//! on, so a single bug produces a complete picture rather than a single
//! aborted cycle.

use serde::Serialize;

use crate::fifo::FifoOutputs;
use crate::ref_model::RefQueue;
use crate::tb::monitor::{ObservedOp, OpKind};

/// Which check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MismatchCategory {
    Data,
    FullFlag,
    EmptyFlag,
}

impl std::fmt::Display for MismatchCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MismatchCategory::Data => "DATA",
            MismatchCategory::FullFlag => "FULL_FLAG",
            MismatchCategory::EmptyFlag => "EMPTY_FLAG",
        })
    }
}

/// One failed check. Flags are encoded as 0/1 in `expected`/`actual`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MismatchRecord {
    pub cycle: u64,
    pub category: MismatchCategory,
    pub expected: u64,
    pub actual: u64,
}

#[derive(Debug, Clone)]
pub struct Scoreboard {
    reference: RefQueue,
    mismatches: Vec<MismatchRecord>,
    checks: u64,
    /// Reference flags `(full, empty)` frozen at the start of the current
    /// cycle. Guard checks for rejected operations must use these: on a
    /// simultaneous write+read the reference mutates mid-cycle, and the
    /// design's guards only ever saw the pre-edge state.
    cycle_start_flags: (bool, bool),
}

impl Scoreboard {
    pub fn new(capacity: usize) -> Self {
        let reference = RefQueue::new(capacity);
        let cycle_start_flags = reference.flags();
        Self { reference, mismatches: Vec::new(), checks: 0, cycle_start_flags }
    }

    /// Snapshot the reference flags before applying this cycle's events.
    pub fn begin_cycle(&mut self) {
        self.cycle_start_flags = self.reference.flags();
    }

    /// Check one observed operation and mirror it into the reference.
    pub fn check_op(&mut self, op: &ObservedOp) {
        match op.op {
            OpKind::WriteAccepted => {
                self.checks += 1;
                if !self.reference.push(op.data) {
                    // Design accepted a write the reference says must be
                    // rejected: its full flag read false when it was full.
                    self.record_flag(op.cycle, MismatchCategory::FullFlag, true, false);
                }
            }
            OpKind::ReadAccepted => {
                self.checks += 1;
                match self.reference.pop() {
                    None => {
                        self.record_flag(op.cycle, MismatchCategory::EmptyFlag, true, false);
                    }
                    Some(expected) if expected != op.data => {
                        self.mismatches.push(MismatchRecord {
                            cycle: op.cycle,
                            category: MismatchCategory::Data,
                            expected,
                            actual: op.data,
                        });
                    }
                    Some(_) => {}
                }
            }
            OpKind::WriteRejected => {
                if !self.cycle_start_flags.0 {
                    self.record_flag(op.cycle, MismatchCategory::FullFlag, false, true);
                }
            }
            OpKind::ReadRejected => {
                if !self.cycle_start_flags.1 {
                    self.record_flag(op.cycle, MismatchCategory::EmptyFlag, false, true);
                }
            }
        }
    }

    /// Compare the design's post-edge status flags against the reference.
    pub fn check_flags(&mut self, cycle: u64, outputs: &FifoOutputs) {
        let (full, empty) = self.reference.flags();
        if outputs.full != full {
            self.record_flag(cycle, MismatchCategory::FullFlag, full, outputs.full);
        }
        if outputs.empty != empty {
            self.record_flag(cycle, MismatchCategory::EmptyFlag, empty, outputs.empty);
        }
    }

    /// Record an externally detected mismatch (the kernel uses this for
    /// reset-window output checks).
    pub fn record(&mut self, record: MismatchRecord) {
        self.mismatches.push(record);
    }

    /// Reset the reference queue alongside the design.
    pub fn reset_reference(&mut self) {
        self.reference.reset();
        self.cycle_start_flags = self.reference.flags();
    }

    fn record_flag(&mut self, cycle: u64, category: MismatchCategory, expected: bool, actual: bool) {
        self.mismatches.push(MismatchRecord {
            cycle,
            category,
            expected: u64::from(expected),
            actual: u64::from(actual),
        });
    }

    pub fn mismatches(&self) -> &[MismatchRecord] {
        &self.mismatches
    }

    pub fn into_mismatches(self) -> Vec<MismatchRecord> {
        self.mismatches
    }

    /// Number of accepted operations checked against the reference.
    pub fn checks(&self) -> u64 {
        self.checks
    }

    pub fn reference(&self) -> &RefQueue {
        &self.reference
    }
}
