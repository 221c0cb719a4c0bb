//! Cycle-accurate model of the synchronous FIFO under test.
//!
//! The design under test is a single-clock FIFO with registered outputs and
//! wrap-bit pointers: for a depth-D buffer (D a power of two) the write and
//! read pointers carry log2(D)+1 bits. The extra bit distinguishes full from
//! empty when the index bits coincide — equal pointers mean empty, pointers
//! that differ only in the wrap bit mean full. Occupancy is the pointer
//! difference modulo 2·D.
//!
//! [`Fifo::posedge`] applies one rising clock edge. All decisions are made
//! from pre-edge state, mirroring what a synthesized register stage does:
//! a write is accepted iff `wn` is asserted and the FIFO was not full
//! *before* the edge, a read iff `rn` is asserted and it was not empty, and
//! an accepted read returns the pre-edge memory content. Rejected requests
//! change nothing. Simultaneous read+write therefore degrades gracefully at
//! the boundaries: on an empty FIFO only the write lands, on a full FIFO
//! only the read.

use thiserror::Error;

/// Reasons a FIFO configuration or stimulus value is rejected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FifoError {
    #[error("depth must be a power of two and at least 2, got {0}")]
    Depth(usize),
    #[error("width must be between 1 and 64 bits, got {0}")]
    Width(u32),
    #[error("data_in {data:#x} does not fit the {width}-bit data port")]
    DataWidth { data: u64, width: u32 },
}

/// Validated geometry of a FIFO instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FifoConfig {
    depth: usize,
    width: u32,
}

impl FifoConfig {
    pub fn new(depth: usize, width: u32) -> Result<Self, FifoError> {
        if depth < 2 || !depth.is_power_of_two() {
            return Err(FifoError::Depth(depth));
        }
        if width == 0 || width > 64 {
            return Err(FifoError::Width(width));
        }
        Ok(Self { depth, width })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Mask covering exactly the data bits: `2^width - 1`.
    pub fn value_mask(&self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }

    /// Number of bits in each pointer, including the wrap bit.
    pub fn pointer_bits(&self) -> u32 {
        self.depth.trailing_zeros() + 1
    }

    /// Pointers count modulo `2·depth`.
    pub fn pointer_modulus(&self) -> u32 {
        2 * self.depth as u32
    }
}

impl Default for FifoConfig {
    /// The reference geometry: eight entries of eight bits.
    fn default() -> Self {
        Self { depth: 8, width: 8 }
    }
}

/// Optional behavioral corruption, used to demonstrate that the checkers
/// actually catch bugs. `InvertFull` flips the full flag everywhere it is
/// consulted, so the model both reports the wrong flag and accepts writes
/// it should reject.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FaultMode {
    #[default]
    None,
    InvertFull,
}

/// Input pins sampled at a rising clock edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FifoInputs {
    pub data_in: u64,
    /// Write request (write-enable, active high).
    pub wn: bool,
    /// Read request (read-enable, active high).
    pub rn: bool,
    /// Synchronous reset, active high; dominates `wn`/`rn`.
    pub reset: bool,
}

/// Registered output pins as visible after a clock edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FifoOutputs {
    pub data_out: u64,
    pub full: bool,
    pub empty: bool,
}

/// The FIFO state: memory array, both pointers, and the output register.
///
/// Equality and hashing cover the complete architectural state, so two
/// models compare equal exactly when no subsequent stimulus could ever
/// distinguish them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fifo {
    config: FifoConfig,
    fault: FaultMode,
    mem: Vec<u64>,
    wptr: u32,
    rptr: u32,
    data_out: u64,
}

impl Fifo {
    /// A freshly reset FIFO: zeroed memory, both pointers zero, zero output.
    pub fn new(config: FifoConfig) -> Self {
        Self::with_fault(config, FaultMode::None)
    }

    pub fn with_fault(config: FifoConfig, fault: FaultMode) -> Self {
        Self {
            config,
            fault,
            mem: vec![0; config.depth()],
            wptr: 0,
            rptr: 0,
            data_out: 0,
        }
    }

    pub fn config(&self) -> &FifoConfig {
        &self.config
    }

    pub fn is_full(&self) -> bool {
        // Wrap bits differ, index bits equal: the XOR leaves only the wrap
        // bit set, whose value is exactly `depth`.
        let full = (self.wptr ^ self.rptr) == self.config.depth() as u32;
        match self.fault {
            FaultMode::None => full,
            FaultMode::InvertFull => !full,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.wptr == self.rptr
    }

    /// Number of stored entries, computed from the pointers alone:
    /// `(wptr - rptr) mod 2·depth`.
    pub fn occupancy(&self) -> usize {
        let m = self.config.pointer_modulus();
        ((self.wptr + m - self.rptr) % m) as usize
    }

    /// Full pointer values (index bits plus wrap bit), for waveform dumps.
    pub fn wptr(&self) -> u32 {
        self.wptr
    }

    pub fn rptr(&self) -> u32 {
        self.rptr
    }

    fn write_index(&self) -> usize {
        (self.wptr as usize) % self.config.depth()
    }

    fn read_index(&self) -> usize {
        (self.rptr as usize) % self.config.depth()
    }

    /// The registered outputs as they stand, without advancing the clock.
    pub fn outputs(&self) -> FifoOutputs {
        FifoOutputs {
            data_out: self.data_out,
            full: self.is_full(),
            empty: self.is_empty(),
        }
    }

    /// Apply one rising clock edge and return the post-edge outputs.
    ///
    /// Accept/reject decisions use the flags as they were before the edge.
    /// An accepted read captures the memory word addressed by the pre-edge
    /// read pointer — even when a write is accepted on the same edge, the
    /// read never sees same-cycle data. A synchronous reset clears memory,
    /// pointers, and the output register, and ignores `wn`/`rn`.
    pub fn posedge(&mut self, inputs: &FifoInputs) -> Result<FifoOutputs, FifoError> {
        if inputs.data_in & !self.config.value_mask() != 0 {
            return Err(FifoError::DataWidth {
                data: inputs.data_in,
                width: self.config.width(),
            });
        }
        if inputs.reset {
            self.mem.fill(0);
            self.wptr = 0;
            self.rptr = 0;
            self.data_out = 0;
            return Ok(self.outputs());
        }

        let write_accept = inputs.wn && !self.is_full();
        let read_accept = inputs.rn && !self.is_empty();
        // Capture before the write lands so the read is pre-edge by
        // construction, not by index-disjointness arguments.
        let read_value = if read_accept {
            Some(self.mem[self.read_index()])
        } else {
            None
        };

        let modulus = self.config.pointer_modulus();
        if write_accept {
            let idx = self.write_index();
            self.mem[idx] = inputs.data_in;
            self.wptr = (self.wptr + 1) % modulus;
        }
        if let Some(value) = read_value {
            self.data_out = value;
            self.rptr = (self.rptr + 1) % modulus;
        }
        Ok(self.outputs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(data: u64) -> FifoInputs {
        FifoInputs { data_in: data, wn: true, rn: false, reset: false }
    }

    fn read() -> FifoInputs {
        FifoInputs { data_in: 0, wn: false, rn: true, reset: false }
    }

    fn both(data: u64) -> FifoInputs {
        FifoInputs { data_in: data, wn: true, rn: true, reset: false }
    }

    #[test]
    fn config_rejects_bad_geometry() {
        assert_eq!(FifoConfig::new(0, 8), Err(FifoError::Depth(0)));
        assert_eq!(FifoConfig::new(1, 8), Err(FifoError::Depth(1)));
        assert_eq!(FifoConfig::new(7, 8), Err(FifoError::Depth(7)));
        assert_eq!(FifoConfig::new(8, 0), Err(FifoError::Width(0)));
        assert_eq!(FifoConfig::new(8, 65), Err(FifoError::Width(65)));
        assert!(FifoConfig::new(2, 1).is_ok());
        assert!(FifoConfig::new(64, 64).is_ok());
    }

    #[test]
    fn new_fifo_is_fully_zeroed() {
        let fifo = Fifo::new(FifoConfig::default());
        assert_eq!(fifo.mem, vec![0; 8]);
        assert_eq!((fifo.wptr, fifo.rptr), (0, 0));
        assert!(fifo.is_empty());
        assert!(!fifo.is_full());
        assert_eq!(fifo.occupancy(), 0);
        assert_eq!(
            fifo.outputs(),
            FifoOutputs { data_out: 0, full: false, empty: true }
        );
    }

    #[test]
    fn pointer_flag_relations() {
        // Depth 8: pointers carry 4 bits, the wrap bit has value 8.
        let mut fifo = Fifo::new(FifoConfig::default());
        fifo.wptr = 0b1000;
        fifo.rptr = 0b0000;
        assert!(fifo.is_full());
        assert_eq!(fifo.occupancy(), 8);

        fifo.wptr = 0b0101;
        fifo.rptr = 0b0101;
        assert!(fifo.is_empty());
        assert!(!fifo.is_full());
        assert_eq!(fifo.occupancy(), 0);

        fifo.wptr = 0b0011;
        fifo.rptr = 0b0001;
        assert!(!fifo.is_full());
        assert!(!fifo.is_empty());
        assert_eq!(fifo.occupancy(), 2);

        // Wrapped case: wptr re-entered the low half, rptr still high.
        fifo.wptr = 0b0001;
        fifo.rptr = 0b1111;
        assert_eq!(fifo.occupancy(), 2);
        assert!(!fifo.is_full());

        fifo.wptr = 0b1101;
        fifo.rptr = 0b0101;
        assert!(fifo.is_full());
        assert_eq!(fifo.occupancy(), 8);
    }

    #[test]
    fn fill_raises_full_on_the_last_write() {
        let mut fifo = Fifo::new(FifoConfig::default());
        let data = [0x00, 0xA1, 0xB2, 0xC3, 0xD4, 0xE5, 0xF6, 0x07];
        for (i, &d) in data.iter().enumerate() {
            let out = fifo.posedge(&write(d)).unwrap();
            assert_eq!(fifo.occupancy(), i + 1);
            assert_eq!(out.full, i == 7, "full flag wrong after write {i}");
            assert!(!out.empty);
        }
        assert_eq!(fifo.mem, data.to_vec());
    }

    #[test]
    fn drain_returns_writes_in_order_and_reasserts_empty() {
        let mut fifo = Fifo::new(FifoConfig::default());
        let data = [0x00, 0xA1, 0xB2, 0xC3, 0xD4, 0xE5, 0xF6, 0x07];
        for &d in &data {
            fifo.posedge(&write(d)).unwrap();
        }
        for (i, &d) in data.iter().enumerate() {
            let out = fifo.posedge(&read()).unwrap();
            assert_eq!(out.data_out, d, "read {i} out of order");
            assert_eq!(out.empty, i == 7);
            assert!(!out.full);
        }
    }

    #[test]
    fn write_on_full_changes_nothing() {
        let mut fifo = Fifo::new(FifoConfig::default());
        for d in 1..=8 {
            fifo.posedge(&write(d)).unwrap();
        }
        let before = fifo.clone();
        let out = fifo.posedge(&write(0x5A)).unwrap();
        assert_eq!(fifo, before);
        assert!(out.full);
    }

    #[test]
    fn read_on_empty_changes_nothing() {
        let mut fifo = Fifo::new(FifoConfig::default());
        fifo.posedge(&write(0x42)).unwrap();
        fifo.posedge(&read()).unwrap();
        assert_eq!(fifo.data_out, 0x42);
        let before = fifo.clone();
        let out = fifo.posedge(&read()).unwrap();
        assert_eq!(fifo, before);
        assert!(out.empty);
        // Output register holds the last successfully read value.
        assert_eq!(out.data_out, 0x42);
    }

    #[test]
    fn simultaneous_rw_holds_occupancy_and_reads_pre_edge_data() {
        let mut fifo = Fifo::new(FifoConfig::default());
        for d in [0x11, 0x22, 0x33] {
            fifo.posedge(&write(d)).unwrap();
        }
        let out = fifo.posedge(&both(0x44)).unwrap();
        assert_eq!(out.data_out, 0x11);
        assert_eq!(fifo.occupancy(), 3);
        for expected in [0x22, 0x33, 0x44] {
            let out = fifo.posedge(&read()).unwrap();
            assert_eq!(out.data_out, expected);
        }
        assert!(fifo.is_empty());
    }

    #[test]
    fn simultaneous_rw_on_empty_only_writes() {
        let mut fifo = Fifo::new(FifoConfig::default());
        let out = fifo.posedge(&both(0x99)).unwrap();
        assert_eq!(fifo.occupancy(), 1);
        // The read was rejected: output register still at its reset value.
        assert_eq!(out.data_out, 0);
        assert_eq!(fifo.rptr, 0);
        assert_eq!(fifo.wptr, 1);
    }

    #[test]
    fn simultaneous_rw_on_full_only_reads() {
        let mut fifo = Fifo::new(FifoConfig::default());
        for d in 1..=8 {
            fifo.posedge(&write(d)).unwrap();
        }
        let wptr_before = fifo.wptr;
        let out = fifo.posedge(&both(0x77)).unwrap();
        assert_eq!(out.data_out, 1);
        assert_eq!(fifo.occupancy(), 7);
        assert_eq!(fifo.wptr, wptr_before);
        // 0x77 must not have been stored anywhere.
        assert!(!fifo.mem.contains(&0x77));
    }

    #[test]
    fn reset_dominates_and_zeroes_everything() {
        let mut fifo = Fifo::new(FifoConfig::default());
        for d in 1..=5 {
            fifo.posedge(&write(d)).unwrap();
        }
        fifo.posedge(&read()).unwrap();
        let out = fifo
            .posedge(&FifoInputs { data_in: 0x3C, wn: true, rn: true, reset: true })
            .unwrap();
        assert_eq!(fifo, Fifo::new(FifoConfig::default()));
        assert_eq!(
            out,
            FifoOutputs { data_out: 0, full: false, empty: true }
        );
    }

    #[test]
    fn oversized_data_is_a_contract_violation() {
        let mut fifo = Fifo::new(FifoConfig::new(8, 4).unwrap());
        assert_eq!(
            fifo.posedge(&write(0x10)),
            Err(FifoError::DataWidth { data: 0x10, width: 4 })
        );
        assert!(fifo.posedge(&write(0x0F)).is_ok());
    }

    #[test]
    fn width_64_masks_nothing() {
        let mut fifo = Fifo::new(FifoConfig::new(2, 64).unwrap());
        fifo.posedge(&write(u64::MAX)).unwrap();
        let out = fifo.posedge(&read()).unwrap();
        assert_eq!(out.data_out, u64::MAX);
    }

    #[test]
    fn inverted_full_fault_flips_flag_and_guard() {
        let mut fifo = Fifo::with_fault(FifoConfig::default(), FaultMode::InvertFull);
        // Empty FIFO claims to be full and rejects the write.
        assert!(fifo.is_full());
        let before_mem = fifo.mem.clone();
        fifo.posedge(&write(0xAB)).unwrap();
        assert_eq!(fifo.mem, before_mem);
        assert_eq!(fifo.occupancy(), 0);
    }

    #[test]
    fn pointers_stay_below_modulus_under_random_traffic() {
        let mut rng = crate::prng::SplitMix64::new(42);
        let config = FifoConfig::new(4, 3).unwrap();
        let mut fifo = Fifo::new(config);
        for _ in 0..5000 {
            let r = rng.next_u64();
            let inputs = FifoInputs {
                data_in: r & config.value_mask(),
                wn: r & 0x100 != 0,
                rn: r & 0x200 != 0,
                reset: r.is_multiple_of(97),
            };
            fifo.posedge(&inputs).unwrap();
            assert!(fifo.wptr < config.pointer_modulus());
            assert!(fifo.rptr < config.pointer_modulus());
            assert!(fifo.occupancy() <= config.depth());
            assert_eq!(fifo.is_empty(), fifo.occupancy() == 0);
            assert_eq!(fifo.is_full(), fifo.occupancy() == config.depth());
        }
    }
}
