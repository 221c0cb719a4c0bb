//! Driver: converts transactions into pin-level stimulus.

use crate::fifo::FifoInputs;
use crate::tb::{Transaction, TransactionKind};

/// Map a transaction onto one cycle's input pins. Reset is never driven
/// from a transaction; the simulation kernel owns the reset window.
pub fn drive(tx: &Transaction) -> FifoInputs {
    match tx.kind {
        TransactionKind::Write => FifoInputs { data_in: tx.data, wn: true, rn: false, reset: false },
        TransactionKind::Read => FifoInputs { data_in: 0, wn: false, rn: true, reset: false },
        TransactionKind::Both => FifoInputs { data_in: tx.data, wn: true, rn: true, reset: false },
        TransactionKind::Idle => FifoInputs::default(),
    }
}

/// The driver component. It carries no state — [`Driver::drive`] is pure —
/// but having it as a struct lets an agent own (or omit) a driver
/// explicitly.
#[derive(Debug, Clone, Copy, Default)]
pub struct Driver;

impl Driver {
    pub fn drive(&self, tx: &Transaction) -> FifoInputs {
        drive(tx)
    }
}
