//! Exhaustive state-space exploration for small FIFO geometries.
//!
//! For geometries small enough to enumerate (say depth 2, width 1), random
//! soak testing can be replaced by proof-by-exhaustion: breadth-first
//! search from the reset state over *every* input combination, carrying
//! the design and the golden queue side by side and checking the full
//! invariant set on every transition. Reaching a fixpoint with no
//! violations means no input sequence of any length can produce one.
//!
//! Frontier expansion is embarrassingly parallel — each (state, input)
//! pair is independent — so it is farmed out to rayon when the `parallel`
//! feature is on. Deduplication stays sequential either way, and results
//! are collected in deterministic order, so both paths produce identical
//! reports.

use std::collections::HashSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::fifo::{Fifo, FifoConfig, FifoInputs};
use crate::ref_model::RefQueue;

/// Design and reference advancing in lockstep; the pair is the BFS node.
type Node = (Fifo, RefQueue);

/// Successor nodes of one frontier, each paired with the invariant
/// violations observed while stepping to it.
type Expansion = Vec<(Node, Vec<String>)>;

/// Result of one exploration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreReport {
    /// Distinct reachable (design, reference) states, reset state included.
    pub states: usize,
    /// (state, input) transitions checked.
    pub transitions: usize,
    /// BFS levels until the frontier emptied.
    pub levels: usize,
    /// Human-readable invariant violations; empty on success.
    pub violations: Vec<String>,
}

impl ExploreReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively explore `config`, using parallel frontier expansion when
/// the `parallel` feature is enabled.
pub fn explore(config: &FifoConfig) -> ExploreReport {
    explore_impl(config, expand)
}

/// Same exploration, forced onto a single thread.
pub fn explore_sequential(config: &FifoConfig) -> ExploreReport {
    explore_impl(config, expand_sequential)
}

/// Every input combination for one edge: both request lines crossed with
/// every representable data value, plus the reset edge for each.
fn input_space(config: &FifoConfig) -> Vec<FifoInputs> {
    let mut inputs = Vec::new();
    for data_in in 0..=config.value_mask() {
        for (wn, rn) in [(false, false), (true, false), (false, true), (true, true)] {
            for reset in [false, true] {
                inputs.push(FifoInputs { data_in, wn, rn, reset });
            }
        }
        if data_in == config.value_mask() {
            break; // avoid wrapping when the mask is u64::MAX
        }
    }
    inputs
}

/// Apply one input to one node, checking every transition invariant.
fn step(node: &Node, inputs: &FifoInputs) -> (Node, Vec<String>) {
    let (fifo, reference) = node;
    let mut violations = Vec::new();
    let mut fail = |msg: String| violations.push(format!("{inputs:?} on {fifo:?}: {msg}"));

    let pre_full = fifo.is_full();
    let pre_empty = fifo.is_empty();
    let pre_occupancy = fifo.occupancy();

    let mut next_fifo = fifo.clone();
    let mut next_ref = reference.clone();
    let outputs = next_fifo.posedge(inputs).expect("input space respects the data width");

    if inputs.reset {
        if next_fifo != Fifo::new(*fifo.config()) {
            fail("reset did not restore the initial state".into());
        }
        next_ref.reset();
    } else {
        let write_accepted = inputs.wn && !pre_full;
        let read_accepted = inputs.rn && !pre_empty;
        if write_accepted && !next_ref.push(inputs.data_in) {
            fail("design accepted a write the reference rejects".into());
        }
        if inputs.wn && !write_accepted {
            // Rejected write: no effect beyond a possible read.
            if next_fifo.wptr() != fifo.wptr() {
                fail("rejected write moved the write pointer".into());
            }
        }
        if read_accepted {
            match next_ref.pop() {
                None => fail("design accepted a read the reference rejects".into()),
                Some(expected) if expected != outputs.data_out => fail(format!(
                    "read returned {:#x}, reference expected {expected:#x}",
                    outputs.data_out
                )),
                Some(_) => {}
            }
        }
        if inputs.rn && !read_accepted {
            if next_fifo.rptr() != fifo.rptr() {
                fail("rejected read moved the read pointer".into());
            }
            if outputs.data_out != fifo.outputs().data_out {
                fail("rejected read changed data_out".into());
            }
        }
        if !inputs.wn && !inputs.rn && &next_fifo != fifo {
            fail("idle cycle changed state".into());
        }
        let expected_occupancy =
            pre_occupancy + usize::from(write_accepted) - usize::from(read_accepted);
        if next_fifo.occupancy() != expected_occupancy {
            fail(format!(
                "occupancy {} after edge, expected {expected_occupancy}",
                next_fifo.occupancy()
            ));
        }
    }

    // State invariants that must hold everywhere, however we got here.
    let depth = fifo.config().depth();
    let modulus = fifo.config().pointer_modulus();
    if next_fifo.wptr() >= modulus || next_fifo.rptr() >= modulus {
        fail("pointer escaped its modulus".into());
    }
    if next_fifo.occupancy() > depth {
        fail("occupancy exceeded depth".into());
    }
    if next_fifo.is_empty() != (next_fifo.occupancy() == 0) {
        fail("empty flag disagrees with occupancy".into());
    }
    if next_fifo.is_full() != (next_fifo.occupancy() == depth) {
        fail("full flag disagrees with occupancy".into());
    }
    if next_fifo.occupancy() != next_ref.len() {
        fail("design and reference occupancy diverged".into());
    }
    let (ref_full, ref_empty) = next_ref.flags();
    if outputs.full != ref_full || outputs.empty != ref_empty {
        fail("design flags disagree with reference flags".into());
    }

    ((next_fifo, next_ref), violations)
}

fn expand_sequential(frontier: &[Node], inputs: &[FifoInputs]) -> Expansion {
    frontier
        .iter()
        .flat_map(|node| inputs.iter().map(move |i| step(node, i)))
        .collect()
}

#[cfg(feature = "parallel")]
fn expand(frontier: &[Node], inputs: &[FifoInputs]) -> Expansion {
    frontier
        .par_iter()
        .flat_map_iter(|node| inputs.iter().map(move |i| step(node, i)))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn expand(frontier: &[Node], inputs: &[FifoInputs]) -> Expansion {
    expand_sequential(frontier, inputs)
}

fn explore_impl(
    config: &FifoConfig,
    expand: fn(&[Node], &[FifoInputs]) -> Expansion,
) -> ExploreReport {
    let inputs = input_space(config);
    let root: Node = (Fifo::new(*config), RefQueue::new(config.depth()));
    let mut seen: HashSet<Node> = HashSet::from([root.clone()]);
    let mut frontier = vec![root];
    let mut transitions = 0;
    let mut levels = 0;
    let mut violations = Vec::new();

    while !frontier.is_empty() {
        levels += 1;
        let expanded = expand(&frontier, &inputs);
        transitions += expanded.len();
        let mut next = Vec::new();
        for (node, mut step_violations) in expanded {
            violations.append(&mut step_violations);
            if seen.insert(node.clone()) {
                next.push(node);
            }
        }
        frontier = next;
    }

    ExploreReport { states: seen.len(), transitions, levels, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Re-enumerate the reachable set with a plain depth-first stack.
    /// This shares `step` with the search proper but none of the frontier
    /// or level bookkeeping, so it catches BFS mistakes like dropped or
    /// double-expanded frontier nodes.
    fn depth_first_states(config: &FifoConfig) -> usize {
        let inputs = input_space(config);
        let mut seen = HashSet::new();
        let root = (Fifo::new(*config), RefQueue::new(config.depth()));
        seen.insert(root.clone());
        let mut stack = vec![root];
        while let Some(node) = stack.pop() {
            for i in &inputs {
                let (next, violations) = step(&node, i);
                assert!(violations.is_empty(), "{violations:?}");
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn smallest_geometry_is_clean_and_counts_check_out() {
        let config = FifoConfig::new(2, 1).unwrap();
        let report = explore(&config);
        assert!(report.is_clean(), "{:?}", report.violations);
        assert_eq!(report.states, depth_first_states(&config));
        // Frozen from an independent replay of the same semantics outside
        // this codebase: 64 reachable (design, reference) states, fixpoint
        // after 7 frontier generations.
        assert_eq!(report.states, 64);
        assert_eq!(report.levels, 7);
        // Every state is expanded against the whole input space exactly once.
        assert_eq!(report.transitions, report.states * input_space(&config).len());
        assert_eq!(report.transitions, 1024);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for (depth, width) in [(2, 1), (2, 2), (4, 1)] {
            let config = FifoConfig::new(depth, width).unwrap();
            assert_eq!(explore(&config), explore_sequential(&config));
        }
    }

    #[test]
    fn depth_two_width_two_is_clean() {
        let report = explore(&FifoConfig::new(2, 2).unwrap());
        assert!(report.is_clean(), "{:?}", report.violations);
    }

    #[test]
    fn input_space_covers_all_combinations() {
        let config = FifoConfig::new(2, 1).unwrap();
        let inputs = input_space(&config);
        // 2 data values × 4 request combinations × 2 reset values.
        assert_eq!(inputs.len(), 16);
        let unique: HashSet<_> = inputs
            .iter()
            .map(|i| (i.data_in, i.wn, i.rn, i.reset))
            .collect();
        assert_eq!(unique.len(), 16);
    }
}
