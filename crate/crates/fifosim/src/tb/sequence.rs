//! Stimulus sequences: directed transaction lists and constrained-random
//! generation.

use thiserror::Error;

use crate::prng::SplitMix64;
use crate::tb::{Transaction, TransactionKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("random sequence needs at least one transaction")]
    EmptyCount,
    #[error("kind weights must include at least one positive entry")]
    ZeroWeights,
    #[error("data range is empty: min {min:#x} > max {max:#x}")]
    EmptyDataRange { min: u64, max: u64 },
}

/// Relative weights for drawing transaction kinds in random mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KindWeights {
    pub write: u32,
    pub read: u32,
    pub both: u32,
    pub idle: u32,
}

impl KindWeights {
    pub fn total(&self) -> u64 {
        u64::from(self.write) + u64::from(self.read) + u64::from(self.both) + u64::from(self.idle)
    }
}

impl Default for KindWeights {
    fn default() -> Self {
        Self { write: 1, read: 1, both: 1, idle: 1 }
    }
}

/// Description of a stimulus stream, either fully scripted or drawn from
/// the PRNG under constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSpec {
    /// Fixed list of `(kind, data)` pairs, replayed in order.
    Directed(Vec<(TransactionKind, u64)>),
    Random {
        count: usize,
        weights: KindWeights,
        data_min: u64,
        data_max: u64,
    },
}

impl SequenceSpec {
    pub fn validate(&self) -> Result<(), SequenceError> {
        match self {
            SequenceSpec::Directed(_) => Ok(()),
            SequenceSpec::Random { count, weights, data_min, data_max } => {
                if *count == 0 {
                    return Err(SequenceError::EmptyCount);
                }
                if weights.total() == 0 {
                    return Err(SequenceError::ZeroWeights);
                }
                if data_min > data_max {
                    return Err(SequenceError::EmptyDataRange { min: *data_min, max: *data_max });
                }
                Ok(())
            }
        }
    }

    /// Total number of transactions this spec will emit.
    pub fn len(&self) -> usize {
        match self {
            SequenceSpec::Directed(items) => items.len(),
            SequenceSpec::Random { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Walks a [`SequenceSpec`], stamping ids and drawing random fields.
///
/// PRNG consumption is part of the reproducibility contract: random mode
/// draws the kind first, then — only for data-carrying kinds — one more
/// value for the payload. Idle and read transactions consume a single
/// draw. Directed mode never touches the PRNG.
#[derive(Debug, Clone)]
pub struct Sequencer {
    spec: SequenceSpec,
    issued: usize,
}

impl Sequencer {
    pub fn new(spec: SequenceSpec) -> Result<Self, SequenceError> {
        spec.validate()?;
        Ok(Self { spec, issued: 0 })
    }

    pub fn len(&self) -> usize {
        self.spec.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spec.is_empty()
    }

    pub fn remaining(&self) -> usize {
        self.spec.len() - self.issued
    }

    /// Produce the next transaction, or `None` once the sequence is done.
    pub fn next_item(&mut self, rng: &mut SplitMix64) -> Option<Transaction> {
        if self.issued == self.spec.len() {
            return None;
        }
        let id = self.issued as u64;
        let tx = match &self.spec {
            SequenceSpec::Directed(items) => {
                let (kind, data) = items[self.issued];
                Transaction { kind, data, id }
            }
            SequenceSpec::Random { weights, data_min, data_max, .. } => {
                let kind = draw_kind(rng, weights);
                let data = if kind.carries_data() {
                    rng.next_in_range(*data_min, *data_max)
                } else {
                    0
                };
                Transaction { kind, data, id }
            }
        };
        self.issued += 1;
        Some(tx)
    }
}

/// Weighted pick, walking the kinds in the fixed order write, read, both,
/// idle. The order is load-bearing for replay: reordering it would change
/// every randomized run.
fn draw_kind(rng: &mut SplitMix64, weights: &KindWeights) -> TransactionKind {
    let mut roll = rng.next_u64() % weights.total();
    for (kind, weight) in [
        (TransactionKind::Write, weights.write),
        (TransactionKind::Read, weights.read),
        (TransactionKind::Both, weights.both),
        (TransactionKind::Idle, weights.idle),
    ] {
        if roll < u64::from(weight) {
            return kind;
        }
        roll -= u64::from(weight);
    }
    unreachable!("roll < total by construction");
}
