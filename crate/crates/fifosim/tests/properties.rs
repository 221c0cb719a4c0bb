//! Property-based invariant checks across randomly generated stimulus,
//! geometries, and seeds.

use std::collections::VecDeque;

use proptest::prelude::*;

use fifosim::kernel::{run, run_test, RunOptions, SimConfig};
use fifosim::tb::monitor::{Monitor, OpKind, PreEdgeFlags};
use fifosim::tb::scoreboard::Scoreboard;
use fifosim::tb::sequence::{KindWeights, SequenceSpec, Sequencer};
use fifosim::vcd;
use fifosim::{Fifo, FifoConfig, FifoInputs, SplitMix64};

/// One abstract stimulus step, independent of any geometry.
#[derive(Debug, Clone, Copy)]
struct Step {
    data: u64,
    wn: bool,
    rn: bool,
    reset: bool,
}

fn step_strategy() -> impl Strategy<Value = Step> {
    // Resets are rare so runs actually accumulate state.
    (any::<u64>(), any::<bool>(), any::<bool>(), prop::bool::weighted(0.02))
        .prop_map(|(data, wn, rn, reset)| Step { data, wn, rn, reset })
}

fn geometry_strategy() -> impl Strategy<Value = FifoConfig> {
    (prop::sample::select(vec![2usize, 4, 8, 16]), 1u32..=16)
        .prop_map(|(depth, width)| FifoConfig::new(depth, width).unwrap())
}

fn inputs_for(config: &FifoConfig, step: Step) -> FifoInputs {
    FifoInputs {
        data_in: step.data & config.value_mask(),
        wn: step.wn,
        rn: step.rn,
        reset: step.reset,
    }
}

proptest! {
    /// The design against an unbounded queue that mirrors only accepted
    /// operations: read data must come back in exactly write order.
    #[test]
    fn fifo_ordering_matches_unbounded_queue(
        config in geometry_strategy(),
        steps in prop::collection::vec(step_strategy(), 1..300),
    ) {
        let mut fifo = Fifo::new(config);
        let mut oracle: VecDeque<u64> = VecDeque::new();
        for step in steps {
            let pre_full = fifo.is_full();
            let pre_empty = fifo.is_empty();
            let inputs = inputs_for(&config, step);
            let out = fifo.posedge(&inputs).unwrap();
            if inputs.reset {
                oracle.clear();
                continue;
            }
            if inputs.wn && !pre_full {
                oracle.push_back(inputs.data_in);
            }
            if inputs.rn && !pre_empty {
                let expected = oracle.pop_front().expect("oracle diverged: empty on accepted read");
                prop_assert_eq!(out.data_out, expected);
            }
            prop_assert_eq!(fifo.occupancy(), oracle.len());
        }
    }

    /// Flags, occupancy, and pointers stay mutually consistent at every
    /// step, for every geometry.
    #[test]
    fn flags_and_occupancy_stay_equivalent(
        config in geometry_strategy(),
        steps in prop::collection::vec(step_strategy(), 1..300),
    ) {
        let mut fifo = Fifo::new(config);
        for step in steps {
            fifo.posedge(&inputs_for(&config, step)).unwrap();
            prop_assert!(fifo.occupancy() <= config.depth());
            prop_assert!(u64::from(fifo.wptr()) < u64::from(config.pointer_modulus()));
            prop_assert!(u64::from(fifo.rptr()) < u64::from(config.pointer_modulus()));
            prop_assert_eq!(fifo.is_empty(), fifo.occupancy() == 0);
            prop_assert_eq!(fifo.is_full(), fifo.occupancy() == config.depth());
            prop_assert!(!(fifo.is_full() && fifo.is_empty()));
        }
    }

    /// Rejected operations are exact no-ops on the architectural state.
    #[test]
    fn rejected_operations_preserve_state(
        config in geometry_strategy(),
        steps in prop::collection::vec(step_strategy(), 1..200),
        tail_data in any::<u64>(),
    ) {
        let mut fifo = Fifo::new(config);
        for step in steps {
            fifo.posedge(&inputs_for(&config, step)).unwrap();
        }
        let data = tail_data & config.value_mask();
        if fifo.is_full() {
            let before = fifo.clone();
            fifo.posedge(&FifoInputs { data_in: data, wn: true, rn: false, reset: false }).unwrap();
            prop_assert_eq!(&fifo, &before);
        }
        if fifo.is_empty() {
            let before = fifo.clone();
            fifo.posedge(&FifoInputs { data_in: 0, wn: false, rn: true, reset: false }).unwrap();
            prop_assert_eq!(&fifo, &before);
        }
    }

    /// Attaching the monitor cannot change the design's trajectory: it
    /// sees only copies of pins, never the design itself.
    #[test]
    fn monitor_is_passive(
        config in geometry_strategy(),
        steps in prop::collection::vec(step_strategy(), 1..200),
    ) {
        let mut with_monitor = Fifo::new(config);
        let mut without_monitor = Fifo::new(config);
        let monitor = Monitor;
        for (cycle, step) in steps.into_iter().enumerate() {
            let inputs = inputs_for(&config, step);
            let pre = PreEdgeFlags { full: with_monitor.is_full(), empty: with_monitor.is_empty() };
            let outputs = with_monitor.posedge(&inputs).unwrap();
            if !inputs.reset {
                let _ops = monitor.sample(pre, &inputs, &outputs, cycle as u64);
            }
            without_monitor.posedge(&inputs).unwrap();
            prop_assert_eq!(&with_monitor, &without_monitor);
        }
    }

    /// Scoreboard completeness: every accepted operation produces exactly
    /// one reference check; within a cycle the monitor reports at most one
    /// write and one read event, with nondecreasing cycle stamps.
    #[test]
    fn scoreboard_checks_match_accepted_ops(
        steps in prop::collection::vec(step_strategy(), 1..400),
    ) {
        let config = FifoConfig::default();
        let mut fifo = Fifo::new(config);
        let monitor = Monitor;
        let mut scoreboard = Scoreboard::new(config.depth());
        let mut accepted = 0u64;
        let mut last_cycle = 0u64;
        for (cycle, step) in steps.into_iter().enumerate() {
            let cycle = cycle as u64;
            let inputs = FifoInputs { reset: false, ..inputs_for(&config, step) };
            let pre = PreEdgeFlags { full: fifo.is_full(), empty: fifo.is_empty() };
            let outputs = fifo.posedge(&inputs).unwrap();
            let ops = monitor.sample(pre, &inputs, &outputs, cycle);

            let writes = ops.iter().filter(|o| matches!(o.op, OpKind::WriteAccepted | OpKind::WriteRejected)).count();
            let reads = ops.iter().filter(|o| matches!(o.op, OpKind::ReadAccepted | OpKind::ReadRejected)).count();
            prop_assert!(writes <= 1 && reads <= 1);

            scoreboard.begin_cycle();
            for op in &ops {
                prop_assert!(op.cycle >= last_cycle);
                last_cycle = op.cycle;
                if matches!(op.op, OpKind::WriteAccepted | OpKind::ReadAccepted) {
                    accepted += 1;
                }
                scoreboard.check_op(op);
            }
            scoreboard.check_flags(cycle, &outputs);
        }
        prop_assert_eq!(scoreboard.checks(), accepted);
        prop_assert!(scoreboard.mismatches().is_empty());
    }

    /// The sequencer respects its constraints for arbitrary weightings.
    #[test]
    fn sequencer_respects_weights_and_ranges(
        seed in any::<u64>(),
        write_w in 0u32..5,
        read_w in 0u32..5,
        both_w in 0u32..5,
        idle_w in 0u32..5,
        lo in 0u64..100,
        span in 0u64..100,
        count in 1usize..200,
    ) {
        let weights = KindWeights { write: write_w, read: read_w, both: both_w, idle: idle_w };
        prop_assume!(weights.total() > 0);
        let spec = SequenceSpec::Random {
            count,
            weights,
            data_min: lo,
            data_max: lo + span,
        };
        let mut seq = Sequencer::new(spec).unwrap();
        let mut rng = SplitMix64::new(seed);
        let mut produced = 0usize;
        while let Some(tx) = seq.next_item(&mut rng) {
            produced += 1;
            use fifosim::tb::TransactionKind::*;
            let weight = match tx.kind {
                Write => write_w,
                Read => read_w,
                Both => both_w,
                Idle => idle_w,
            };
            prop_assert!(weight > 0, "drew a zero-weight kind: {:?}", tx.kind);
            if tx.kind.carries_data() {
                prop_assert!((lo..=lo + span).contains(&tx.data));
            }
        }
        prop_assert_eq!(produced, count);
    }

    /// End-to-end determinism and conservation across arbitrary seeds.
    #[test]
    fn runs_are_deterministic_and_conservative(seed in any::<u64>()) {
        let sim = SimConfig { seed, ..SimConfig::default() };
        let options = RunOptions { transaction_override: Some(300), ..RunOptions::default() };
        let config = FifoConfig::default();
        let a = run_test("random_soak", &sim, &config, &options).unwrap();
        let b = run_test("random_soak", &sim, &config, &options).unwrap();
        prop_assert_eq!(a.report.to_json_string(), b.report.to_json_string());
        prop_assert_eq!(&a.fifo, &b.fifo);
        prop_assert!(a.report.pass, "soak found a mismatch at seed {}", seed);
        prop_assert_eq!(
            a.report.writes_accepted - a.report.reads_accepted,
            a.fifo.occupancy() as u64
        );
        // Request/verdict bookkeeping is complete: every request was
        // either accepted or rejected.
        let total_events = a.report.writes_accepted
            + a.report.writes_rejected
            + a.report.reads_accepted
            + a.report.reads_rejected;
        let driven = a.report.cycles - 10;
        prop_assert!(total_events <= 2 * driven);
    }

    /// VCD round trip over arbitrary event traces on a small roster.
    #[test]
    fn vcd_round_trip_is_byte_identical(
        raw_events in prop::collection::vec(
            (0u64..50, 0usize..3, any::<u64>()),
            0..100,
        ),
    ) {
        let roster = vec![
            vcd::SignalDecl::wire("a", 1, "!"),
            vcd::SignalDecl::wire("b", 4, "\""),
            vcd::SignalDecl::reg("c", 12, "#"),
        ];
        let widths = [1u32, 4, 12];
        // Times must be nondecreasing for the writer: sort the raw pairs.
        let mut times: Vec<u64> = raw_events.iter().map(|(t, _, _)| *t).collect();
        times.sort_unstable();
        let mut writer = vcd::VcdWriter::new(Vec::new(), 1, roster.clone()).unwrap();
        for ((_, sig, value), time) in raw_events.iter().zip(times) {
            let width = widths[*sig];
            let event = vcd::VcdEvent {
                time,
                signal: roster[*sig].id_code.clone(),
                value: vcd::bits(*value, width),
            };
            writer.change(&event).unwrap();
        }
        let text = String::from_utf8(writer.finish().unwrap()).unwrap();

        let parsed = vcd::parse(&text).unwrap();
        prop_assert_eq!(&parsed.signals, &roster);
        let mut rewriter = vcd::VcdWriter::new(Vec::new(), 1, parsed.signals.clone()).unwrap();
        for event in &parsed.events {
            rewriter.change(event).unwrap();
        }
        let rewritten = String::from_utf8(rewriter.finish().unwrap()).unwrap();
        prop_assert_eq!(rewritten, text);
    }

    /// Every registered test passes for any seed (the design is correct,
    /// so no stimulus may produce a mismatch) — the soak shortened to keep
    /// case counts practical.
    #[test]
    fn registered_suite_passes_for_arbitrary_seeds(seed in any::<u64>()) {
        let sim = SimConfig { seed, ..SimConfig::default() };
        let options = RunOptions { transaction_override: Some(200), ..RunOptions::default() };
        for test in fifosim::tb::registry::TEST_NAMES {
            let outcome = run_test(test, &sim, &FifoConfig::default(), &options).unwrap();
            prop_assert!(outcome.report.pass, "{} failed at seed {}", test, seed);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Geometry sweep: the whole suite stays green on non-default shapes.
    #[test]
    fn suite_passes_across_geometries(
        config in geometry_strategy(),
        seed in any::<u64>(),
    ) {
        let sim = SimConfig { seed, ..SimConfig::default() };
        let options = RunOptions { transaction_override: Some(150), ..RunOptions::default() };
        for test in fifosim::tb::registry::TEST_NAMES {
            let outcome = run_test(test, &sim, &config, &options).unwrap();
            prop_assert!(
                outcome.report.pass,
                "{} failed at seed {} for {:?}", test, seed, config
            );
        }
    }

    /// Coverage bins never decrease cycle over cycle within a run.
    #[test]
    fn coverage_is_monotone_over_a_run(seed in any::<u64>()) {
        // Observe monotonicity indirectly but end-to-end: a longer prefix
        // of the same stream can only grow the bins.
        let config = FifoConfig::default();
        let mut last_hits = 0u32;
        for transactions in [50usize, 100, 200, 400] {
            let sim = SimConfig { seed, ..SimConfig::default() };
            let options =
                RunOptions { transaction_override: Some(transactions), ..RunOptions::default() };
            let outcome = run_test("random_soak", &sim, &config, &options).unwrap();
            let hits = outcome.report.coverage.bins.hit_count();
            prop_assert!(hits >= last_hits, "coverage shrank with a longer run");
            last_hits = hits;
        }
    }
}

/// Oracle equivalence on full runs, pinned rather than property-sampled:
/// the directed suite plus three soak seeds, compared against a second
/// evaluation route (the batch runner with the sequential executor).
#[test]
fn batch_and_direct_execution_agree() {
    let sim = SimConfig::default();
    let config = FifoConfig::default();
    let jobs = fifosim::batch::suite_jobs(sim, config);
    let batched = fifosim::batch::run_batch(&jobs);
    let sequential = fifosim::batch::run_batch_sequential(&jobs);
    for (test, (a, b)) in fifosim::tb::registry::TEST_NAMES.iter().zip(batched.iter().zip(&sequential)) {
        let a = a.as_ref().unwrap();
        let b = b.as_ref().unwrap();
        assert_eq!(a, b, "{test} diverged between executors");
        let direct = run(test, &sim, &config).unwrap();
        assert_eq!(a, &direct, "{test} diverged between batch and direct runs");
    }
}
