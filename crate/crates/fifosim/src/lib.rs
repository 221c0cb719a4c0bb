//! Cycle-accurate synchronous FIFO model with a transaction-level
//! verification kit.
//!
//! The system under test is a single-clock FIFO with wrap-bit pointers
//! ([`fifo`]); around it sits a layered testbench — sequences, driver,
//! passive monitor, scoreboard against a golden queue ([`ref_model`]),
//! and functional coverage — orchestrated by a deterministic simulation
//! kernel ([`kernel`]) that can dump bit-exact VCD waveforms ([`vcd`]).
//! Small geometries can be verified exhaustively instead of statistically
//! ([`explore`]), and independent runs fan out across threads ([`batch`]).
//! The `fifosim` binary ([`cli`]) exposes the registered tests.
//!
//! Everything is deterministic by construction: stimulus comes from a
//! seeded SplitMix64 stream ([`prng`]), reports carry no timestamps, and
//! repeated runs produce byte-identical JSON and VCD output.

pub mod batch;
pub mod cli;
pub mod explore;
pub mod fifo;
pub mod kernel;
pub mod prng;
pub mod ref_model;
pub mod tb;
pub mod vcd;

pub use fifo::{FaultMode, Fifo, FifoConfig, FifoError, FifoInputs, FifoOutputs};
pub use kernel::{run, run_test, PinSample, RunOptions, RunOutcome, RunReport, SimConfig, SimError};
pub use prng::SplitMix64;
pub use ref_model::RefQueue;
