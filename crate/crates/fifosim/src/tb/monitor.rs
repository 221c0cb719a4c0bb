//! Passive bus monitor.
//!
//! The monitor watches pins only: the request lines, the status flags as
//! they stood *before* the clock edge, and the outputs after it. From
//! those it reconstructs which operations the design accepted or rejected
//! on that edge. It holds no reference to the FIFO's internals and no
//! mutable state, so attaching it cannot perturb the design — the same
//! property a passive UVM monitor has on a real bus.

use serde::Serialize;

use crate::fifo::{FifoInputs, FifoOutputs};

/// Status flags sampled just before a rising clock edge. These are what
/// the design's accept/reject guards actually consult.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreEdgeFlags {
    pub full: bool,
    pub empty: bool,
}

/// Classification of one pin-level operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OpKind {
    WriteAccepted,
    WriteRejected,
    ReadAccepted,
    ReadRejected,
}

/// One operation observed at the pins on one clock edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObservedOp {
    pub cycle: u64,
    pub op: OpKind,
    /// Written data for write ops; `data_out` for an accepted read; zero
    /// for a rejected read.
    pub data: u64,
    /// `(full, empty)` as visible after the edge.
    pub flags_after: (bool, bool),
}

/// The passive monitor component.
#[derive(Debug, Clone, Copy, Default)]
pub struct Monitor;

impl Monitor {
    /// Classify the operations on one non-reset clock edge.
    ///
    /// A write request is accepted iff the FIFO was not full before the
    /// edge, a read request iff it was not empty; that mirrors the
    /// design's own guard conditions without reading its state. When both
    /// requests are present the write event is reported first.
    pub fn sample(
        &self,
        pre: PreEdgeFlags,
        inputs: &FifoInputs,
        outputs: &FifoOutputs,
        cycle: u64,
    ) -> Vec<ObservedOp> {
        debug_assert!(!inputs.reset, "monitor only samples driven cycles");
        let flags_after = (outputs.full, outputs.empty);
        let mut ops = Vec::with_capacity(2);
        if inputs.wn {
            let op = if pre.full { OpKind::WriteRejected } else { OpKind::WriteAccepted };
            ops.push(ObservedOp { cycle, op, data: inputs.data_in, flags_after });
        }
        if inputs.rn {
            let (op, data) = if pre.empty {
                (OpKind::ReadRejected, 0)
            } else {
                (OpKind::ReadAccepted, outputs.data_out)
            };
            ops.push(ObservedOp { cycle, op, data, flags_after });
        }
        ops
    }
}
