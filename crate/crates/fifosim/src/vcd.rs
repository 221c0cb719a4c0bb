//! Bit-exact VCD (value change dump) writer and a minimal parser.
//!
//! The writer emits the subset of IEEE 1364 VCD that standard waveform
//! viewers need: a fixed header, `#<time>` markers, scalar changes as
//! `<bit><id>` and vector changes as `b<bits> <id>`. Values are two-state
//! (no `x`/`z`) and vectors are always written at full declared width, so
//! a given trace has exactly one textual encoding — which is what makes
//! byte-for-byte determinism checks meaningful.
//!
//! The parser accepts exactly what the writer produces. It exists as the
//! round-trip oracle: parsing an emitted file and replaying the events
//! through a fresh writer must reproduce the original bytes.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum VcdError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("duplicate signal id code {0:?}")]
    DuplicateId(String),
    #[error("signal {0:?} declared with width 0")]
    ZeroWidth(String),
    #[error("change references undeclared id code {0:?}")]
    UnknownSignal(String),
    #[error("value {value:?} is not a width-{width} bit string for signal {id:?}")]
    ValueWidth { id: String, width: u32, value: String },
    #[error("time {time} precedes already-emitted time {last}")]
    TimeRegression { time: u64, last: u64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Signal flavor in the `$var` declaration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalKind {
    Wire,
    Reg,
}

impl SignalKind {
    fn keyword(self) -> &'static str {
        match self {
            SignalKind::Wire => "wire",
            SignalKind::Reg => "reg",
        }
    }
}

/// One `$var` declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalDecl {
    pub name: String,
    pub width: u32,
    pub kind: SignalKind,
    /// Short printable-ASCII identifier, unique within the file.
    pub id_code: String,
}

impl SignalDecl {
    pub fn wire(name: &str, width: u32, id_code: &str) -> Self {
        Self { name: name.to_string(), width, kind: SignalKind::Wire, id_code: id_code.to_string() }
    }

    pub fn reg(name: &str, width: u32, id_code: &str) -> Self {
        Self { name: name.to_string(), width, kind: SignalKind::Reg, id_code: id_code.to_string() }
    }
}

/// One timestamped value change. `value` is a bit string of exactly the
/// declared width, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcdEvent {
    pub time: u64,
    pub signal: String,
    pub value: String,
}

/// Render `value` as a full-width bit string.
pub fn bits(value: u64, width: u32) -> String {
    (0..width).rev().map(|b| if value >> b & 1 == 1 { '1' } else { '0' }).collect()
}

/// Streaming VCD writer. Construction emits the complete header plus the
/// `#0` marker and an all-zeros initial value for every signal; changes
/// equal to a signal's last emitted value are silently suppressed, and
/// time may never move backwards.
#[derive(Debug)]
pub struct VcdWriter<W: Write> {
    out: W,
    signals: Vec<SignalDecl>,
    index: HashMap<String, usize>,
    last_values: Vec<String>,
    last_time: u64,
    /// Whether `#last_time` has been written yet.
    time_marked: bool,
}

impl VcdWriter<BufWriter<File>> {
    /// Open `path` and write the header for `signals`.
    pub fn create<P: AsRef<Path>>(
        path: P,
        timescale_ns: u64,
        signals: Vec<SignalDecl>,
    ) -> Result<Self, VcdError> {
        let file = File::create(path)?;
        Self::new(BufWriter::new(file), timescale_ns, signals)
    }
}

impl<W: Write> VcdWriter<W> {
    pub fn new(mut out: W, timescale_ns: u64, signals: Vec<SignalDecl>) -> Result<Self, VcdError> {
        let mut index = HashMap::new();
        for (i, sig) in signals.iter().enumerate() {
            if sig.width == 0 {
                return Err(VcdError::ZeroWidth(sig.name.clone()));
            }
            if index.insert(sig.id_code.clone(), i).is_some() {
                return Err(VcdError::DuplicateId(sig.id_code.clone()));
            }
        }

        writeln!(out, "$timescale {timescale_ns}ns $end")?;
        writeln!(out, "$scope module tb $end")?;
        for sig in &signals {
            writeln!(out, "$var {} {} {} {} $end", sig.kind.keyword(), sig.width, sig.id_code, sig.name)?;
        }
        writeln!(out, "$upscope $end")?;
        writeln!(out, "$enddefinitions $end")?;
        writeln!(out, "#0")?;
        let mut last_values = Vec::with_capacity(signals.len());
        for sig in &signals {
            let zero = bits(0, sig.width);
            write_change(&mut out, sig, &zero)?;
            last_values.push(zero);
        }
        Ok(Self { out, signals, index, last_values, last_time: 0, time_marked: true })
    }

    pub fn signals(&self) -> &[SignalDecl] {
        &self.signals
    }

    /// Emit one event. No-op when the value equals the signal's last
    /// emitted value; errors when the timestamp moves backwards or the
    /// value does not fit the declaration.
    pub fn change(&mut self, event: &VcdEvent) -> Result<(), VcdError> {
        let &idx = self
            .index
            .get(&event.signal)
            .ok_or_else(|| VcdError::UnknownSignal(event.signal.clone()))?;
        let sig = &self.signals[idx];
        if event.value.len() != sig.width as usize
            || !event.value.bytes().all(|b| b == b'0' || b == b'1')
        {
            return Err(VcdError::ValueWidth {
                id: sig.id_code.clone(),
                width: sig.width,
                value: event.value.clone(),
            });
        }
        if event.time < self.last_time {
            return Err(VcdError::TimeRegression { time: event.time, last: self.last_time });
        }
        if event.time > self.last_time {
            self.last_time = event.time;
            self.time_marked = false;
        }
        if self.last_values[idx] == event.value {
            return Ok(());
        }
        if !self.time_marked {
            writeln!(self.out, "#{}", self.last_time)?;
            self.time_marked = true;
        }
        write_change(&mut self.out, sig, &event.value)?;
        self.last_values[idx] = event.value.clone();
        Ok(())
    }

    /// Convenience wrapper formatting a numeric value at declared width.
    pub fn change_value(&mut self, time: u64, id_code: &str, value: u64) -> Result<(), VcdError> {
        let &idx = self
            .index
            .get(id_code)
            .ok_or_else(|| VcdError::UnknownSignal(id_code.to_string()))?;
        let width = self.signals[idx].width;
        self.change(&VcdEvent { time, signal: id_code.to_string(), value: bits(value, width) })
    }

    /// Flush and hand back the underlying writer.
    pub fn finish(mut self) -> Result<W, VcdError> {
        self.out.flush()?;
        Ok(self.out)
    }
}

fn write_change<W: Write>(out: &mut W, sig: &SignalDecl, value: &str) -> io::Result<()> {
    if sig.width == 1 {
        writeln!(out, "{}{}", value, sig.id_code)
    } else {
        writeln!(out, "b{} {}", value, sig.id_code)
    }
}

/// Everything recovered from a VCD file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedVcd {
    pub timescale_ns: u64,
    pub scope: String,
    pub signals: Vec<SignalDecl>,
    /// Ordered changes, including the `#0` initial values.
    pub events: Vec<VcdEvent>,
}

/// Parse a dump produced by [`VcdWriter`].
pub fn parse(input: &str) -> Result<ParsedVcd, VcdError> {
    let fail = |line: usize, msg: &str| VcdError::Parse { line: line + 1, msg: msg.to_string() };

    let mut timescale_ns = None;
    let mut scope = None;
    let mut signals: Vec<SignalDecl> = Vec::new();
    let mut widths: HashMap<String, u32> = HashMap::new();
    let mut events = Vec::new();
    let mut in_header = true;
    let mut time: Option<u64> = None;

    for (n, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if in_header {
            let words: Vec<&str> = line.split_whitespace().collect();
            if words.last() != Some(&"$end") {
                return Err(fail(n, "header directive not terminated by $end"));
            }
            match words[0] {
                "$timescale" => {
                    let [_, spec, _] = words[..] else {
                        return Err(fail(n, "malformed $timescale"));
                    };
                    let digits = spec.strip_suffix("ns").ok_or_else(|| fail(n, "timescale unit must be ns"))?;
                    timescale_ns =
                        Some(digits.parse().map_err(|_| fail(n, "bad timescale magnitude"))?);
                }
                "$scope" => {
                    let [_, "module", name, _] = words[..] else {
                        return Err(fail(n, "malformed $scope"));
                    };
                    scope = Some(name.to_string());
                }
                "$var" => {
                    let [_, kind, width, id, name, _] = words[..] else {
                        return Err(fail(n, "malformed $var"));
                    };
                    let kind = match kind {
                        "wire" => SignalKind::Wire,
                        "reg" => SignalKind::Reg,
                        _ => return Err(fail(n, "unsupported $var kind")),
                    };
                    let width: u32 = width.parse().map_err(|_| fail(n, "bad $var width"))?;
                    if width == 0 {
                        return Err(fail(n, "zero $var width"));
                    }
                    if widths.insert(id.to_string(), width).is_some() {
                        return Err(fail(n, "duplicate id code"));
                    }
                    signals.push(SignalDecl {
                        name: name.to_string(),
                        width,
                        kind,
                        id_code: id.to_string(),
                    });
                }
                "$upscope" => {}
                "$enddefinitions" => {
                    if timescale_ns.is_none() || scope.is_none() {
                        return Err(fail(n, "definitions ended before $timescale/$scope"));
                    }
                    in_header = false;
                }
                _ => return Err(fail(n, "unknown header directive")),
            }
            continue;
        }

        if let Some(stamp) = line.strip_prefix('#') {
            let t: u64 = stamp.parse().map_err(|_| fail(n, "bad timestamp"))?;
            if let Some(prev) = time {
                if t <= prev {
                    return Err(fail(n, "timestamps must strictly increase"));
                }
            }
            time = Some(t);
            continue;
        }

        let time = time.ok_or_else(|| fail(n, "value change before first timestamp"))?;
        let (value, id) = if let Some(rest) = line.strip_prefix('b') {
            rest.split_once(' ').ok_or_else(|| fail(n, "vector change missing id code"))?
        } else {
            line.split_at(1)
        };
        let width = *widths.get(id).ok_or_else(|| fail(n, "change references undeclared id"))?;
        if value.len() != width as usize || !value.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(fail(n, "value does not match declared width"));
        }
        events.push(VcdEvent { time, signal: id.to_string(), value: value.to_string() });
    }

    if in_header {
        return Err(VcdError::Parse {
            line: input.lines().count(),
            msg: "file ended inside header".to_string(),
        });
    }
    Ok(ParsedVcd {
        timescale_ns: timescale_ns.expect("checked at $enddefinitions"),
        scope: scope.expect("checked at $enddefinitions"),
        signals,
        events,
    })
}

/// Id codes for the fixed FIFO signal roster. Assigned sequentially from
/// `!` in declaration order, which pins the well-known ones: `!` clock,
/// `"` data_in, `&` full.
pub mod ids {
    pub const CLOCK: &str = "!";
    pub const DATA_IN: &str = "\"";
    pub const RESET: &str = "#";
    pub const WN: &str = "$";
    pub const RN: &str = "%";
    pub const FULL: &str = "&";
    pub const EMPTY: &str = "'";
    pub const DATA_OUT: &str = "(";
    pub const WPTR: &str = ")";
    pub const RPTR: &str = "*";
}

/// Fixed signal roster for FIFO simulation dumps, in declaration order.
pub fn fifo_roster(data_width: u32, pointer_bits: u32) -> Vec<SignalDecl> {
    vec![
        SignalDecl::wire("clock", 1, ids::CLOCK),
        SignalDecl::wire("data_in", data_width, ids::DATA_IN),
        SignalDecl::wire("reset", 1, ids::RESET),
        SignalDecl::wire("wn", 1, ids::WN),
        SignalDecl::wire("rn", 1, ids::RN),
        SignalDecl::wire("full", 1, ids::FULL),
        SignalDecl::wire("empty", 1, ids::EMPTY),
        SignalDecl::wire("data_out", data_width, ids::DATA_OUT),
        SignalDecl::reg("wptr", pointer_bits, ids::WPTR),
        SignalDecl::reg("rptr", pointer_bits, ids::RPTR),
    ]
}
