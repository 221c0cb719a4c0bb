//! Functional coverage collection.
//!
//! Eight fixed bins capture the corner cases a FIFO verification run is
//! expected to visit. Bins only ever count upward; the summary percentage
//! is simply the fraction of bins hit at least once.

use serde::Serialize;

use crate::fifo::{FifoConfig, FifoOutputs};
use crate::tb::monitor::{ObservedOp, OpKind};

/// Hit counters for the eight coverage bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CoverageBins {
    /// Cycles on which the full flag was observed asserted.
    pub full_seen: u64,
    /// Transitions of the empty flag from deasserted back to asserted.
    pub empty_reasserted: u64,
    /// Cycles carrying both a write and a read request.
    pub simultaneous_rw: u64,
    /// Write requests rejected by the full guard.
    pub write_rejected: u64,
    /// Read requests rejected by the empty guard.
    pub read_rejected: u64,
    /// Write-pointer wraps around the end of the memory array.
    pub pointer_wrap: u64,
    /// Writes whose data falls in the bottom quarter of the value range.
    pub data_low: u64,
    /// Writes whose data falls in the top quarter of the value range.
    pub data_high: u64,
}

impl CoverageBins {
    pub const BIN_COUNT: u32 = 8;

    fn as_array(&self) -> [u64; 8] {
        [
            self.full_seen,
            self.empty_reasserted,
            self.simultaneous_rw,
            self.write_rejected,
            self.read_rejected,
            self.pointer_wrap,
            self.data_low,
            self.data_high,
        ]
    }

    pub fn hit_count(&self) -> u32 {
        self.as_array().iter().filter(|&&c| c > 0).count() as u32
    }
}

/// Summary attached to every run report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageReport {
    pub bins: CoverageBins,
    /// `100 · bins hit / 8`.
    pub percent: f64,
}

/// Accumulates coverage over the driven (post-reset) cycles of a run.
#[derive(Debug, Clone)]
pub struct CoverageCollector {
    bins: CoverageBins,
    depth: u64,
    width: u32,
    /// Empty flag on the previous driven cycle; starts `true` because the
    /// FIFO leaves reset empty, so the reset-exit state itself is not a
    /// "reassertion".
    prev_empty: bool,
    /// Accepted writes so far; the write pointer's index equals this
    /// modulo depth, which is how wraps are detected from pin activity
    /// alone.
    writes_seen: u64,
}

impl CoverageCollector {
    pub fn new(config: &FifoConfig) -> Self {
        Self {
            bins: CoverageBins::default(),
            depth: config.depth() as u64,
            width: config.width(),
            prev_empty: true,
            writes_seen: 0,
        }
    }

    /// Record one driven cycle: the operations the monitor observed plus
    /// the post-edge outputs.
    pub fn record(&mut self, ops: &[ObservedOp], outputs: &FifoOutputs) {
        if outputs.full {
            self.bins.full_seen += 1;
        }
        if outputs.empty && !self.prev_empty {
            self.bins.empty_reasserted += 1;
        }
        self.prev_empty = outputs.empty;

        let has_write = ops.iter().any(|o| matches!(o.op, OpKind::WriteAccepted | OpKind::WriteRejected));
        let has_read = ops.iter().any(|o| matches!(o.op, OpKind::ReadAccepted | OpKind::ReadRejected));
        if has_write && has_read {
            self.bins.simultaneous_rw += 1;
        }

        for op in ops {
            match op.op {
                OpKind::WriteAccepted => {
                    if self.writes_seen % self.depth == self.depth - 1 {
                        self.bins.pointer_wrap += 1;
                    }
                    self.writes_seen += 1;
                    self.record_data(op.data);
                }
                OpKind::WriteRejected => {
                    self.bins.write_rejected += 1;
                    self.record_data(op.data);
                }
                OpKind::ReadRejected => {
                    self.bins.read_rejected += 1;
                }
                OpKind::ReadAccepted => {}
            }
        }
    }

    /// Quartile bins on the write payload: low means `data < 2^width / 4`,
    /// high means `data ≥ 3 · 2^width / 4`. Computed as `4·data` against
    /// `2^width` in 128 bits so width 64 cannot overflow and width 1
    /// still behaves (0 is low, 1 is high).
    fn record_data(&mut self, data: u64) {
        let span = 1u128 << self.width;
        let scaled = u128::from(data) * 4;
        if scaled < span {
            self.bins.data_low += 1;
        } else if scaled >= 3 * span {
            self.bins.data_high += 1;
        }
    }

    pub fn bins(&self) -> &CoverageBins {
        &self.bins
    }

    pub fn report(&self) -> CoverageReport {
        CoverageReport {
            bins: self.bins,
            percent: 100.0 * f64::from(self.bins.hit_count()) / f64::from(CoverageBins::BIN_COUNT),
        }
    }
}
