//! Gate-level circuits over AND, OR and NOT.
//!
//! A [`Netlist`] stores its gates in topological order: every operand of a
//! gate is a primary input, a constant or an earlier gate. Circuits are built
//! with [`Builder`], which also expands XOR and MUX into basic gates.

mod text;

pub use text::{load, parse, save, to_text, write_trace};

use std::fmt;

use thiserror::Error;

use crate::kleene::{BitWord, BoolFn, Trit, TritWord};

pub const DEFAULT_EVAL_BUDGET: u64 = 100_000_000;
/// Widest input the mc checker will tabulate.
pub const MAX_MC_WIDTH: usize = 20;

#[derive(Debug, Error)]
pub enum NetlistError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("cycle involving {0}")]
    Cycle(String),
    #[error("line {line}: gate {gate} ({kind}) expects {expected} operands, got {actual}")]
    Arity {
        line: usize,
        gate: String,
        kind: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("input has {actual} trits, circuit has {expected} inputs")]
    InputWidth { expected: usize, actual: usize },
    #[error("signal {signal} is not defined before gate {gate}")]
    BadOperand { gate: usize, signal: Signal },
    #[error("output {index} references undefined signal {signal}")]
    BadOutput { index: usize, signal: Signal },
    #[error("circuit shape {circuit} does not match oracle shape {oracle}")]
    Shape { circuit: String, oracle: String },
    #[error("input width {width} exceeds the limit of {max}")]
    TooWide { width: usize, max: usize },
    #[error("evaluation budget of {budget} exceeded (needs {needed})")]
    Budget { budget: u64, needed: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// A node reference: a constant, a primary input or a gate output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signal {
    Const(bool),
    Input(usize),
    Gate(usize),
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Signal::Const(false) => f.write_str("ZERO"),
            Signal::Const(true) => f.write_str("ONE"),
            Signal::Input(i) => write!(f, "in{i}"),
            Signal::Gate(g) => write!(f, "n{g}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    And(Signal, Signal),
    Or(Signal, Signal),
    Not(Signal),
}

impl Gate {
    pub fn operands(&self) -> impl Iterator<Item = Signal> {
        let (a, b) = match *self {
            Gate::And(a, b) | Gate::Or(a, b) => (a, Some(b)),
            Gate::Not(a) => (a, None),
        };
        std::iter::once(a).chain(b)
    }

    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::And(..) => "AND",
            Gate::Or(..) => "OR",
            Gate::Not(..) => "NOT",
        }
    }

    fn map(&self, f: impl Fn(Signal) -> Signal) -> Gate {
        match *self {
            Gate::And(a, b) => Gate::And(f(a), f(b)),
            Gate::Or(a, b) => Gate::Or(f(a), f(b)),
            Gate::Not(a) => Gate::Not(f(a)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircuitStats {
    pub size: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    inputs: Vec<String>,
    gates: Vec<Gate>,
    outputs: Vec<Signal>,
}

impl Netlist {
    /// Builds a netlist, checking that every operand precedes its use.
    pub fn new(inputs: Vec<String>, gates: Vec<Gate>, outputs: Vec<Signal>) -> Result<Self, NetlistError> {
        let valid = |s: Signal, before: usize| match s {
            Signal::Const(_) => true,
            Signal::Input(i) => i < inputs.len(),
            Signal::Gate(g) => g < before,
        };
        for (g, gate) in gates.iter().enumerate() {
            if let Some(signal) = gate.operands().find(|s| !valid(*s, g)) {
                return Err(NetlistError::BadOperand { gate: g, signal });
            }
        }
        for (index, s) in outputs.iter().enumerate() {
            if !valid(*s, gates.len()) {
                return Err(NetlistError::BadOutput { index, signal: *s });
            }
        }
        Ok(Netlist { inputs, gates, outputs })
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[Signal] {
        &self.outputs
    }

    pub fn input_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn output_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn input_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().position(|n| n == name)
    }

    pub fn stats(&self) -> CircuitStats {
        let mut depth = vec![0usize; self.gates.len()];
        let of = |s: Signal, depth: &[usize]| match s {
            Signal::Gate(g) => depth[g],
            _ => 0,
        };
        for (g, gate) in self.gates.iter().enumerate() {
            depth[g] = 1 + gate.operands().map(|s| of(s, &depth)).max().unwrap_or(0);
        }
        CircuitStats {
            size: self.gates.len(),
            depth: self.outputs.iter().map(|s| of(*s, &depth)).max().unwrap_or(0),
        }
    }

    fn check_width(&self, actual: usize) -> Result<(), NetlistError> {
        if actual != self.inputs.len() {
            return Err(NetlistError::InputWidth {
                expected: self.inputs.len(),
                actual,
            });
        }
        Ok(())
    }

    /// Generic topological evaluation over any value type.
    fn run<T: Copy>(
        &self,
        inputs: &[T],
        konst: impl Fn(bool) -> T,
        and: impl Fn(T, T) -> T,
        or: impl Fn(T, T) -> T,
        not: impl Fn(T) -> T,
    ) -> Vec<T> {
        let mut vals: Vec<T> = Vec::with_capacity(self.gates.len());
        let get = |s: Signal, vals: &[T]| match s {
            Signal::Const(b) => konst(b),
            Signal::Input(i) => inputs[i],
            Signal::Gate(g) => vals[g],
        };
        for gate in &self.gates {
            let v = match *gate {
                Gate::And(a, b) => and(get(a, &vals), get(b, &vals)),
                Gate::Or(a, b) => or(get(a, &vals), get(b, &vals)),
                Gate::Not(a) => not(get(a, &vals)),
            };
            vals.push(v);
        }
        self.outputs.iter().map(|s| get(*s, &vals)).collect()
    }

    /// Ternary evaluation with Kleene gate semantics.
    pub fn eval(&self, x: &TritWord) -> Result<TritWord, NetlistError> {
        self.check_width(x.len())?;
        let out = self.run(x.trits(), Trit::from_bool, |a, b| a & b, |a, b| a | b, |a| !a);
        Ok(TritWord::new(out))
    }

    pub fn eval_bool(&self, x: &BitWord) -> Result<BitWord, NetlistError> {
        self.check_width(x.len())?;
        let out = self.run(x.bits(), |b| b, |a, b| a & b, |a, b| a | b, |a| !a);
        Ok(BitWord::new(out))
    }

    /// Boolean evaluation of 64 inputs at once; `lanes[i]` holds input `i`.
    pub fn eval_lanes(&self, lanes: &[u64]) -> Result<Vec<u64>, NetlistError> {
        self.check_width(lanes.len())?;
        Ok(self.run(lanes, |b| if b { !0 } else { 0 }, |a, b| a & b, |a, b| a | b, |a| !a))
    }

    /// Ternary evaluation of 64 inputs at once in dual-rail form: each lane
    /// pair is `(can_be_one, can_be_zero)`, so `M` is `(1, 1)`.
    pub fn eval_ternary_lanes(&self, lanes: &[(u64, u64)]) -> Result<Vec<(u64, u64)>, NetlistError> {
        self.check_width(lanes.len())?;
        Ok(self.run(
            lanes,
            |b| if b { (!0, 0) } else { (0, !0) },
            |a, b| (a.0 & b.0, a.1 | b.1),
            |a, b| (a.0 | b.0, a.1 & b.1),
            |a| (a.1, a.0),
        ))
    }
}

impl BoolFn for Netlist {
    fn input_width(&self) -> usize {
        self.inputs.len()
    }

    fn output_width(&self) -> usize {
        self.outputs.len()
    }

    /// # Panics
    /// If `x` does not have one bit per input.
    fn apply(&self, x: &BitWord) -> BitWord {
        self.eval_bool(x).expect("input width checked by caller")
    }
}

/// Incremental netlist construction with constant folding.
///
/// Only folds that are exact under Kleene semantics are applied
/// (`AND(0, x) = 0`, `AND(1, x) = x` and their duals), so a built circuit
/// behaves on metastable inputs exactly like its gate-by-gate description.
#[derive(Debug, Default, Clone)]
pub struct Builder {
    inputs: Vec<String>,
    gates: Vec<Gate>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn input(&mut self, name: impl Into<String>) -> Signal {
        self.inputs.push(name.into());
        Signal::Input(self.inputs.len() - 1)
    }

    /// Declares `prefix1 .. prefix{count}`.
    pub fn inputs(&mut self, prefix: &str, count: usize) -> Vec<Signal> {
        (1..=count).map(|i| self.input(format!("{prefix}{i}"))).collect()
    }

    pub fn constant(&self, value: bool) -> Signal {
        Signal::Const(value)
    }

    fn push(&mut self, gate: Gate) -> Signal {
        self.gates.push(gate);
        Signal::Gate(self.gates.len() - 1)
    }

    pub fn not(&mut self, a: Signal) -> Signal {
        match a {
            Signal::Const(v) => Signal::Const(!v),
            _ => self.push(Gate::Not(a)),
        }
    }

    pub fn and(&mut self, a: Signal, b: Signal) -> Signal {
        match (a, b) {
            (Signal::Const(false), _) | (_, Signal::Const(false)) => Signal::Const(false),
            (Signal::Const(true), x) | (x, Signal::Const(true)) => x,
            _ => self.push(Gate::And(a, b)),
        }
    }

    pub fn or(&mut self, a: Signal, b: Signal) -> Signal {
        match (a, b) {
            (Signal::Const(true), _) | (_, Signal::Const(true)) => Signal::Const(true),
            (Signal::Const(false), x) | (x, Signal::Const(false)) => x,
            _ => self.push(Gate::Or(a, b)),
        }
    }

    /// `OR(AND(a, NOT b), AND(NOT a, b))`.
    pub fn xor(&mut self, a: Signal, b: Signal) -> Signal {
        let nb = self.not(b);
        let na = self.not(a);
        let l = self.and(a, nb);
        let r = self.and(na, b);
        self.or(l, r)
    }

    /// `OR(AND(a, NOT s), AND(b, s))`: selects `a` when `s = 0`.
    pub fn mux(&mut self, a: Signal, b: Signal, s: Signal) -> Signal {
        let ns = self.not(s);
        let l = self.and(a, ns);
        let r = self.and(b, s);
        self.or(l, r)
    }

    fn balanced(&mut self, xs: &[Signal], unit: bool, op: fn(&mut Self, Signal, Signal) -> Signal) -> Signal {
        match xs {
            [] => Signal::Const(unit),
            [x] => *x,
            _ => {
                let (l, r) = xs.split_at(xs.len() / 2);
                let l = self.balanced(l, unit, op);
                let r = self.balanced(r, unit, op);
                op(self, l, r)
            }
        }
    }

    /// Balanced AND tree; `ONE` for no operands.
    pub fn and_all(&mut self, xs: &[Signal]) -> Signal {
        self.balanced(xs, true, Self::and)
    }

    /// Balanced OR tree; `ZERO` for no operands.
    pub fn or_all(&mut self, xs: &[Signal]) -> Signal {
        self.balanced(xs, false, Self::or)
    }

    /// Copies `sub` into this circuit with its inputs bound to `args` and
    /// returns the signals of its outputs.
    ///
    /// # Panics
    /// If `args` does not have one signal per input of `sub`.
    pub fn instantiate(&mut self, sub: &Netlist, args: &[Signal]) -> Vec<Signal> {
        assert_eq!(args.len(), sub.input_count(), "instantiate: argument count");
        let mut map: Vec<Signal> = Vec::with_capacity(sub.gates.len());
        let tr = |s: Signal, map: &[Signal]| match s {
            Signal::Input(i) => args[i],
            Signal::Gate(g) => map[g],
            c => c,
        };
        for gate in &sub.gates {
            let s = match gate.map(|s| tr(s, &map)) {
                Gate::And(a, b) => self.and(a, b),
                Gate::Or(a, b) => self.or(a, b),
                Gate::Not(a) => self.not(a),
            };
            map.push(s);
        }
        sub.outputs.iter().map(|s| tr(*s, &map)).collect()
    }

    /// Finishes the circuit, dropping gates that no output depends on.
    pub fn finish(self, outputs: Vec<Signal>) -> Netlist {
        let mut live = vec![false; self.gates.len()];
        for s in &outputs {
            if let Signal::Gate(g) = s {
                live[*g] = true;
            }
        }
        for g in (0..self.gates.len()).rev() {
            if live[g] {
                for s in self.gates[g].operands() {
                    if let Signal::Gate(h) = s {
                        live[h] = true;
                    }
                }
            }
        }
        let mut renumber = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::with_capacity(live.iter().filter(|l| **l).count());
        let tr = |s: Signal, renumber: &[usize]| match s {
            Signal::Gate(g) => Signal::Gate(renumber[g]),
            c => c,
        };
        for (g, gate) in self.gates.iter().enumerate() {
            if live[g] {
                renumber[g] = gates.len();
                gates.push(gate.map(|s| tr(s, &renumber)));
            }
        }
        let outputs = outputs.iter().map(|s| tr(*s, &renumber)).collect();
        Netlist {
            inputs: self.inputs,
            gates,
            outputs,
        }
    }
}

/// Feeds the outputs of `first` into the inputs of `second`.
pub fn compose(first: &Netlist, second: &Netlist) -> Result<Netlist, NetlistError> {
    if first.output_count() != second.input_count() {
        return Err(NetlistError::Shape {
            circuit: format!("{} outputs", first.output_count()),
            oracle: format!("{} inputs", second.input_count()),
        });
    }
    let mut b = Builder::new();
    let args: Vec<Signal> = first.inputs.iter().map(|n| b.input(n.clone())).collect();
    let mid = b.instantiate(first, &args);
    let out = b.instantiate(second, &mid);
    Ok(b.finish(out))
}

/// Places two circuits side by side.
pub fn parallel(left: &Netlist, right: &Netlist) -> Netlist {
    let mut b = Builder::new();
    let la: Vec<Signal> = left.inputs.iter().map(|n| b.input(format!("l_{n}"))).collect();
    let ra: Vec<Signal> = right.inputs.iter().map(|n| b.input(format!("r_{n}"))).collect();
    let mut out = b.instantiate(left, &la);
    out.extend(b.instantiate(right, &ra));
    b.finish(out)
}

/// A failing point of [`mc_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McFailure {
    pub input: TritWord,
    pub expected: TritWord,
    pub actual: TritWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McReport {
    pub k: usize,
    pub checked: u64,
    pub failure: Option<McFailure>,
}

impl McReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Checks that `c` computes the metastable closure of `f` on every input
/// with at most `k` metastable trits. Inputs are visited in lexicographic
/// order with `0 < 1 < M`; the first failure is reported.
pub fn mc_check<F: BoolFn + ?Sized>(c: &Netlist, f: &F, k: usize, budget: u64) -> Result<McReport, NetlistError> {
    let w = c.input_count();
    let q = c.output_count();
    if w != f.input_width() || q != f.output_width() {
        return Err(NetlistError::Shape {
            circuit: format!("{w} -> {q}"),
            oracle: format!("{} -> {}", f.input_width(), f.output_width()),
        });
    }
    if w > MAX_MC_WIDTH {
        return Err(NetlistError::TooWide {
            width: w,
            max: MAX_MC_WIDTH,
        });
    }
    if q > 64 {
        return Err(NetlistError::TooWide { width: q, max: 64 });
    }
    let k = k.min(w);
    // Oracle work: every point with j Ms costs 2^j lookups.
    let needed = (0..=k as u64)
        .map(|j| binomial(w as u64, j).saturating_mul(1u64 << (w as u64)))
        .fold(1u64 << w, u64::saturating_add);
    if needed > budget {
        return Err(NetlistError::Budget { budget, needed });
    }
    let table: Vec<u64> = (0..1u64 << w)
        .map(|v| f.apply(&BitWord::from_u64(v, w)).to_u64())
        .collect();
    let mut walk = McWalk {
        c,
        table: &table,
        w,
        q,
        k,
        batch: Vec::with_capacity(64),
        checked: 0,
        failure: None,
    };
    walk.visit(0, 0, 0, 0)?;
    if walk.failure.is_none() {
        walk.flush()?;
    }
    Ok(McReport {
        k,
        checked: walk.checked,
        failure: walk.failure,
    })
}

struct McWalk<'a> {
    c: &'a Netlist,
    table: &'a [u64],
    w: usize,
    q: usize,
    k: usize,
    /// Points as `(stable bits, meta mask)`, first input most significant.
    batch: Vec<(u64, u64)>,
    checked: u64,
    failure: Option<McFailure>,
}

impl McWalk<'_> {
    fn visit(&mut self, pos: usize, val: u64, meta: u64, ms: usize) -> Result<(), NetlistError> {
        if self.failure.is_some() {
            return Ok(());
        }
        if pos == self.w {
            self.batch.push((val, meta));
            if self.batch.len() == 64 {
                self.flush()?;
            }
            return Ok(());
        }
        self.visit(pos + 1, val << 1, meta << 1, ms)?;
        self.visit(pos + 1, (val << 1) | 1, meta << 1, ms)?;
        if ms < self.k {
            self.visit(pos + 1, val << 1, (meta << 1) | 1, ms + 1)?;
        }
        Ok(())
    }

    fn closure(&self, val: u64, meta: u64) -> (u64, u64) {
        let (mut and, mut or) = (!0u64, 0u64);
        let mut s = 0u64;
        loop {
            let t = self.table[(val | s) as usize];
            and &= t;
            or |= t;
            if s == meta {
                break;
            }
            s = s.wrapping_sub(meta) & meta;
        }
        (and, or)
    }

    fn flush(&mut self) -> Result<(), NetlistError> {
        if self.batch.is_empty() {
            return Ok(());
        }
        let w = self.w;
        let lanes: Vec<(u64, u64)> = (0..w)
            .map(|i| {
                let bit = w - 1 - i;
                let mut l = (0u64, 0u64);
                for (j, (val, meta)) in self.batch.iter().enumerate() {
                    let v = (val >> bit) & 1 == 1;
                    let m = (meta >> bit) & 1 == 1;
                    l.0 |= ((v || m) as u64) << j;
                    l.1 |= ((!v || m) as u64) << j;
                }
                l
            })
            .collect();
        let out = self.c.eval_ternary_lanes(&lanes)?;
        let trit = |one: bool, zero: bool| match (one, zero) {
            (true, false) => Trit::One,
            (false, true) => Trit::Zero,
            _ => Trit::Meta,
        };
        for (j, (val, meta)) in self.batch.iter().enumerate() {
            let (and, or) = self.closure(*val, *meta);
            let q = self.q;
            let expected: TritWord = (0..q)
                .map(|o| {
                    let bit = q - 1 - o;
                    trit((or >> bit) & 1 == 1, (and >> bit) & 1 == 0)
                })
                .collect();
            let actual: TritWord = out
                .iter()
                .map(|(one, zero)| trit((one >> j) & 1 == 1, (zero >> j) & 1 == 1))
                .collect();
            self.checked += 1;
            if expected != actual {
                let input = (0..w)
                    .map(|i| {
                        let bit = w - 1 - i;
                        if (meta >> bit) & 1 == 1 {
                            Trit::Meta
                        } else {
                            Trit::from_bool((val >> bit) & 1 == 1)
                        }
                    })
                    .collect();
                self.failure = Some(McFailure {
                    input,
                    expected,
                    actual,
                });
                break;
            }
        }
        self.batch.clear();
        Ok(())
    }
}
