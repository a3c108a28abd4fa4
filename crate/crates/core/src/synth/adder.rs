//! The hybrid-code adder `ADD(n, k)` and its metastable closure.
//!
//! Each operand `g ∘ u` is split into its BRGC part `g` and unary part `u`.
//! `g` is translated to binary; the least significant binary bit is the
//! parity of `g` and selects the unary flavor. `u` is repaired by the `ũ`
//! circuit and translated to binary. The unary parts are added modulo
//! `k + 1`, the carry feeds the `n`-bit binary adder, and both sums are
//! translated back. The carry-out of the binary adder is `ovf`.

use super::prefix::prefix_add_in;
use super::translate::{bin_to_brgc_in, bin_to_un_in, brgc_to_bin_in, map_in, un_to_bin_in, unary_bits};
use super::SynthError;
use crate::codes::{Code, CodeSpec, Family};
use crate::kleene::{Trit, TritWord, DEFAULT_META_LIMIT};
use crate::netlist::{Builder, Netlist, Signal};

/// Adds two `l`-bit unary values modulo `k + 1`; returns the `l`-bit sum
/// and the wrap-around carry.
fn add_mod(b: &mut Builder, x: &[Signal], y: &[Signal], k: usize) -> (Vec<Signal>, Signal) {
    let l = x.len();
    let (sum, cout) = prefix_add_in(b, x, y, Signal::Const(false));
    if (k + 1).is_power_of_two() {
        return (sum, cout);
    }
    // t = x + y on l + 1 bits; t' = t - (k + 1) mod 2^(l+1) with carry
    // [t >= k + 1]. Both t < k + 1 and t - (k + 1) fit in l bits.
    let mut t = vec![cout];
    t.extend(sum);
    let offset = (1u64 << (l + 1)) - (k as u64 + 1);
    let konst: Vec<Signal> = (0..=l).map(|i| Signal::Const((offset >> (l - i)) & 1 == 1)).collect();
    let (t2, wrap) = prefix_add_in(b, &t, &konst, Signal::Const(false));
    let out = (1..=l).map(|i| b.mux(t[i], t2[i], wrap)).collect();
    (out, wrap)
}

/// `ADD(n, k)` with inputs `x1..x{n+k} y1..y{n+k}` and outputs
/// `s1..s{n+k} ovf`.
pub fn build_add(n: usize, k: usize) -> Result<Netlist, SynthError> {
    if k == 0 || n < k {
        return Err(SynthError::BadParams(format!("need n >= k >= 1, got n={n} k={k}")));
    }
    let mut b = Builder::new();
    let x = b.inputs("x", n + k);
    let y = b.inputs("y", n + k);
    let operand = |b: &mut Builder, w: &[Signal]| {
        let bin = brgc_to_bin_in(b, &w[..n]);
        let pi = bin[n - 1];
        let u = map_in(b, pi, &w[n..]);
        let v = un_to_bin_in(b, pi, &u);
        (bin, v)
    };
    let (xb, xv) = operand(&mut b, &x);
    let (yb, yv) = operand(&mut b, &y);
    debug_assert_eq!(xv.len(), unary_bits(k));
    let (uv, carry) = add_mod(&mut b, &xv, &yv, k);
    let (sb, ovf) = prefix_add_in(&mut b, &xb, &yb, carry);
    let pi = sb[n - 1];
    let mut out = bin_to_brgc_in(&mut b, &sb);
    out.extend(bin_to_un_in(&mut b, pi, &uv, k));
    out.push(ovf);
    Ok(b.finish(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddResult {
    pub sum: TritWord,
    pub ovf: Trit,
}

/// Functional closure of `ADD(n, k)`: superposes the stable circuit output
/// over every pair of resolutions of the operands.
#[derive(Debug, Clone)]
pub struct AddOracle {
    spec: CodeSpec,
    circuit: Netlist,
    meta_limit: usize,
}

impl AddOracle {
    pub fn new(n: usize, k: usize) -> Result<Self, SynthError> {
        let spec = CodeSpec::hybrid(n, k).map_err(|e| SynthError::BadParams(e.to_string()))?;
        Ok(AddOracle {
            spec,
            circuit: build_add(n, k)?,
            meta_limit: DEFAULT_META_LIMIT,
        })
    }

    pub fn for_spec(spec: CodeSpec) -> Result<Self, SynthError> {
        match spec.family() {
            Family::Hybrid { n, k } => Self::new(n, k),
            _ => Err(SynthError::BadParams(format!("{spec} is not a hybrid code"))),
        }
    }

    pub fn with_meta_limit(mut self, limit: usize) -> Self {
        self.meta_limit = limit;
        self
    }

    pub fn spec(&self) -> CodeSpec {
        self.spec
    }

    pub fn circuit(&self) -> &Netlist {
        &self.circuit
    }

    pub fn add(&self, x: &TritWord, y: &TritWord) -> Result<AddResult, SynthError> {
        let len = self.spec.word_len();
        for w in [x, y] {
            if w.len() != len {
                return Err(SynthError::Width {
                    expected: len,
                    actual: w.len(),
                });
            }
        }
        let count = x.meta_count() + y.meta_count();
        if count > self.meta_limit {
            return Err(SynthError::MetaLimit {
                count,
                limit: self.meta_limit,
            });
        }
        let xs: Vec<_> = x.resolutions().collect();
        let ys: Vec<_> = y.resolutions().collect();
        let width = self.circuit.output_count();
        let (mut and, mut or) = (vec![!0u64; width], vec![0u64; width]);
        let pairs: Vec<(usize, usize)> = (0..xs.len()).flat_map(|i| (0..ys.len()).map(move |j| (i, j))).collect();
        for batch in pairs.chunks(64) {
            let mut lanes = vec![0u64; 2 * len];
            for (lane, (i, j)) in batch.iter().enumerate() {
                let bits = xs[*i].bits().iter().chain(ys[*j].bits());
                for (slot, bit) in lanes.iter_mut().zip(bits) {
                    *slot |= (*bit as u64) << lane;
                }
            }
            let used = if batch.len() == 64 {
                !0
            } else {
                (1u64 << batch.len()) - 1
            };
            let out = self.circuit.eval_lanes(&lanes)?;
            for (o, v) in out.iter().enumerate() {
                and[o] &= v | !used;
                or[o] |= v & used;
            }
        }
        let trit = |o: usize| match (and[o] == !0, or[o] == 0) {
            (true, _) => Trit::One,
            (_, true) => Trit::Zero,
            _ => Trit::Meta,
        };
        Ok(AddResult {
            sum: (0..len).map(trit).collect(),
            ovf: trit(len),
        })
    }
}

/// One-shot form of [`AddOracle::add`].
pub fn mc_add_oracle(spec: CodeSpec, x: &TritWord, y: &TritWord) -> Result<AddResult, SynthError> {
    AddOracle::for_spec(spec)?.add(x, y)
}
