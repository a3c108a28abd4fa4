//! Exact metastable-closure synthesis from prime implicants.
//!
//! For each output bit the circuit is the OR over all prime implicants of
//! the AND of their literals. Under Kleene evaluation this computes the
//! closure on every ternary input `x`, because the resolutions of `x` form
//! a subcube `C`:
//!
//! - closure 1: `C` is an implicant, so it lies in a prime whose literals
//!   all sit on stable positions of `x` with matching values; that term is 1.
//! - closure 0: no implicant meets `C`, so every term has a literal
//!   contradicting a stable position of `x`; every term is 0.
//! - closure M: some point of `C` is covered by a prime whose literals are
//!   stable-and-matching or metastable, so that term is M or 1, and no term
//!   is 1 because that would force the whole subcube to 1.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::SynthError;
use crate::kleene::{BitWord, BoolFn};
use crate::netlist::{Builder, Netlist, Signal};

/// Widest truth table accepted by [`prime_implicants`].
pub const MAX_IMPLICANT_WIDTH: usize = 16;
pub const DEFAULT_IMPLICANT_LIMIT: usize = 50_000;
const MAX_TABLE_WIDTH: usize = 24;

/// Complete function table; row `r` holds the outputs for the input word
/// whose binary value is `r` (first input most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    names: Vec<String>,
    outputs: usize,
    rows: Vec<u64>,
}

impl TruthTable {
    pub fn from_fn<F: BoolFn + ?Sized>(f: &F) -> Result<Self, SynthError> {
        let names = (1..=f.input_width()).map(|i| format!("x{i}")).collect();
        Self::build(names, f.output_width(), |v| {
            f.apply(&BitWord::from_u64(v, f.input_width())).to_u64()
        })
    }

    /// Tabulates a netlist, keeping its input names.
    pub fn from_netlist(c: &Netlist) -> Result<Self, SynthError> {
        let w = c.input_count();
        check_table_shape(w, c.output_count())?;
        let q = c.output_count();
        let mut rows = Vec::with_capacity(1 << w);
        for base in (0..1u64 << w).step_by(64) {
            let count = (1u64 << w).saturating_sub(base).min(64);
            let lanes: Vec<u64> = (0..w)
                .map(|i| (0..count).fold(0u64, |acc, j| acc | ((((base + j) >> (w - 1 - i)) & 1) << j)))
                .collect();
            let out = c.eval_lanes(&lanes)?;
            for j in 0..count {
                rows.push(out.iter().fold(0u64, |acc, o| (acc << 1) | ((o >> j) & 1)));
            }
        }
        Ok(TruthTable {
            names: c.inputs().to_vec(),
            outputs: q,
            rows,
        })
    }

    fn build(names: Vec<String>, outputs: usize, f: impl Fn(u64) -> u64) -> Result<Self, SynthError> {
        check_table_shape(names.len(), outputs)?;
        let rows = (0..1u64 << names.len()).map(f).collect();
        Ok(TruthTable { names, outputs, rows })
    }

    /// `MUX(a, b, s)`: `a` when `s = 0`.
    pub fn mux() -> Self {
        let names = ["a", "b", "s"].map(String::from).to_vec();
        Self::build(names, 1, |v| if v & 1 == 1 { (v >> 1) & 1 } else { v >> 2 }).expect("small table")
    }

    /// Parity of `n` inputs.
    pub fn xor(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Self::build(names, 1, |v| (v.count_ones() % 2) as u64).expect("small table")
    }

    pub fn width(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn output_width(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Output `o` (0-based, first output first) at input row `row`.
    pub fn bit(&self, row: u64, o: usize) -> bool {
        (self.rows[row as usize] >> (self.outputs - 1 - o)) & 1 == 1
    }
}

fn check_table_shape(width: usize, outputs: usize) -> Result<(), SynthError> {
    if width > MAX_TABLE_WIDTH {
        return Err(SynthError::TooWide {
            width,
            max: MAX_TABLE_WIDTH,
        });
    }
    if outputs > 64 {
        return Err(SynthError::TooWide {
            width: outputs,
            max: 64,
        });
    }
    Ok(())
}

impl BoolFn for TruthTable {
    fn input_width(&self) -> usize {
        self.width()
    }

    fn output_width(&self) -> usize {
        self.outputs
    }

    fn apply(&self, input: &BitWord) -> BitWord {
        BitWord::from_u64(self.rows[input.to_u64() as usize], self.outputs)
    }
}

/// A product of literals. Position `i` (0-based, first input first) is a
/// literal iff bit `width - 1 - i` of `care` is set; its required value is
/// the same bit of `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    width: usize,
    care: u32,
    value: u32,
}

impl Cube {
    pub fn new(width: usize, care: u32, value: u32) -> Self {
        Cube {
            width,
            care,
            value: value & care,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Literals as `(position, required value)`, positions 0-based.
    pub fn literals(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        (0..self.width).filter_map(move |i| {
            let bit = 1u32 << (self.width - 1 - i);
            (self.care & bit != 0).then_some((i, self.value & bit != 0))
        })
    }

    pub fn contains(&self, row: u64) -> bool {
        (row as u32) & self.care == self.value
    }

    fn symbol(&self, i: usize) -> u8 {
        let bit = 1u32 << (self.width - 1 - i);
        match (self.care & bit != 0, self.value & bit != 0) {
            (true, false) => 0,
            (true, true) => 1,
            _ => 2,
        }
    }
}

impl Ord for Cube {
    /// Lexicographic on the ternary string with `0 < 1 < -`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.width.cmp(&other.width).then_with(|| {
            (0..self.width)
                .map(|i| self.symbol(i).cmp(&other.symbol(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            f.write_str(["0", "1", "-"][self.symbol(i) as usize])?;
        }
        Ok(())
    }
}

/// Prime implicants of output `output`, sorted.
pub fn prime_implicants(tt: &TruthTable, output: usize) -> Result<Vec<Cube>, SynthError> {
    if output >= tt.output_width() {
        return Err(SynthError::BadParams(format!(
            "output {output} out of range for {} outputs",
            tt.output_width()
        )));
    }
    let chunk = output / 8 * 8;
    let mut all = implicant_chunk(tt, chunk, (chunk + 8).min(tt.output_width()))?;
    Ok(std::mem::take(&mut all[output - chunk]))
}

/// Prime implicants of every output.
pub fn all_prime_implicants(tt: &TruthTable) -> Result<Vec<Vec<Cube>>, SynthError> {
    let mut out = Vec::with_capacity(tt.output_width());
    for start in (0..tt.output_width()).step_by(8) {
        out.extend(implicant_chunk(tt, start, (start + 8).min(tt.output_width()))?);
    }
    Ok(out)
}

/// Dynamic program over all `3^w` cubes, eight outputs at a time. A cube
/// with a free position is an implicant iff both halves obtained by fixing
/// that position are; a cube is prime iff freeing any literal breaks it.
fn implicant_chunk(tt: &TruthTable, from: usize, to: usize) -> Result<Vec<Vec<Cube>>, SynthError> {
    let w = tt.width();
    if w > MAX_IMPLICANT_WIDTH {
        return Err(SynthError::TooWide {
            width: w,
            max: MAX_IMPLICANT_WIDTH,
        });
    }
    let q = tt.output_width();
    // Digit i of a cube index (base 3, most significant first) describes
    // input i: 0, 1 or free.
    let pow: Vec<usize> = (0..w).map(|i| 3usize.pow((w - 1 - i) as u32)).collect();
    let total = 3usize.pow(w as u32);
    let mut imp = vec![0u8; total];
    for c in 0..total {
        let mut rest = c;
        let mut free = None;
        let mut row = 0u64;
        for (i, p) in pow.iter().enumerate() {
            let d = rest / p;
            rest %= p;
            if d == 2 && free.is_none() {
                free = Some(i);
            }
            row = (row << 1) | (d == 1) as u64;
        }
        imp[c] = match free {
            None => (from..to).fold(0u8, |acc, o| {
                acc | ((tt.rows[row as usize] >> (q - 1 - o) & 1) as u8) << (o - from)
            }),
            Some(i) => imp[c - 2 * pow[i]] & imp[c - pow[i]],
        };
    }
    let mut primes: Vec<Vec<Cube>> = vec![Vec::new(); to - from];
    for (c, mask) in imp.iter().enumerate() {
        if *mask == 0 {
            continue;
        }
        let mut widened = 0u8;
        let (mut care, mut value) = (0u32, 0u32);
        let mut rest = c;
        for (i, p) in pow.iter().enumerate() {
            let d = rest / p;
            rest %= p;
            if d < 2 {
                let up = c + (2 - d) * p;
                widened |= imp[up];
                care |= 1 << (w - 1 - i);
                value |= (d as u32) << (w - 1 - i);
            }
        }
        let prime = mask & !widened;
        for (o, list) in primes.iter_mut().enumerate() {
            if prime >> o & 1 == 1 {
                list.push(Cube::new(w, care, value));
            }
        }
    }
    for list in &mut primes {
        list.sort();
    }
    Ok(primes)
}

/// Builds the prime-implicant circuit of `tt`, which computes the metastable
/// closure of `tt` on every ternary input.
pub fn mc_transform(tt: &TruthTable) -> Result<Netlist, SynthError> {
    mc_transform_with_limit(tt, DEFAULT_IMPLICANT_LIMIT)
}

pub fn mc_transform_with_limit(tt: &TruthTable, limit: usize) -> Result<Netlist, SynthError> {
    let primes = all_prime_implicants(tt)?;
    let count: usize = primes.iter().map(Vec::len).sum();
    if count > limit {
        return Err(SynthError::TooManyImplicants { count, limit });
    }
    let mut b = Builder::new();
    let inputs: Vec<Signal> = tt.names().iter().map(|n| b.input(n.clone())).collect();
    let mut negated: Vec<Option<Signal>> = vec![None; inputs.len()];
    let mut terms: HashMap<Cube, Signal> = HashMap::new();
    let mut outs = Vec::with_capacity(primes.len());
    for list in &primes {
        let mut ors = Vec::with_capacity(list.len());
        for cube in list {
            if let Some(s) = terms.get(cube) {
                ors.push(*s);
                continue;
            }
            let lits: Vec<Signal> = cube
                .literals()
                .map(|(i, v)| {
                    if v {
                        inputs[i]
                    } else {
                        *negated[i].get_or_insert_with(|| b.not(inputs[i]))
                    }
                })
                .collect();
            let term = b.and_all(&lits);
            terms.insert(*cube, term);
            ors.push(term);
        }
        outs.push(b.or_all(&ors));
    }
    Ok(b.finish(outs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kleene::{closure_eval, TritWord};

    fn strings(cubes: &[Cube]) -> Vec<String> {
        cubes.iter().map(ToString::to_string).collect()
    }

    /// Independent oracle: enumerate every cube and test implicant and
    /// primality directly against the table.
    fn brute_primes(tt: &TruthTable, o: usize) -> Vec<Cube> {
        let w = tt.width();
        let is_imp = |cube: &Cube| (0..1u64 << w).filter(|r| cube.contains(*r)).all(|r| tt.bit(r, o));
        let mut out = Vec::new();
        for care in 0..1u32 << w {
            for value in 0..1u32 << w {
                if value & !care != 0 {
                    continue;
                }
                let c = Cube::new(w, care, value);
                if !is_imp(&c) {
                    continue;
                }
                let prime = (0..w).all(|i| {
                    let bit = 1u32 << i;
                    care & bit == 0 || !is_imp(&Cube::new(w, care & !bit, value & !bit))
                });
                if prime {
                    out.push(c);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn xor_primes() {
        assert_eq!(
            strings(&prime_implicants(&TruthTable::xor(2), 0).unwrap()),
            ["01", "10"]
        );
    }

    #[test]
    fn mux_primes_include_consensus() {
        let p = prime_implicants(&TruthTable::mux(), 0).unwrap();
        assert_eq!(strings(&p), ["11-", "1-0", "-11"]);
    }

    #[test]
    fn constant_functions() {
        let zero = TruthTable::build(vec!["a".into(), "b".into()], 1, |_| 0).unwrap();
        assert!(prime_implicants(&zero, 0).unwrap().is_empty());
        let one = TruthTable::build(vec!["a".into(), "b".into()], 1, |_| 1).unwrap();
        assert_eq!(strings(&prime_implicants(&one, 0).unwrap()), ["--"]);
        let c = mc_transform(&one).unwrap();
        assert_eq!(c.eval(&"MM".parse().unwrap()).unwrap().to_string(), "1");
    }

    #[test]
    fn dp_matches_brute_force() {
        // A handful of pseudo-random 4-input, 3-output tables.
        let mut seed = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..20 {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            let s = seed;
            let names = (1..=4).map(|i| format!("x{i}")).collect();
            let tt = TruthTable::build(names, 3, |v| (s >> (3 * v)) & 7).unwrap();
            for o in 0..3 {
                assert_eq!(prime_implicants(&tt, o).unwrap(), brute_primes(&tt, o));
            }
        }
    }

    #[test]
    fn mc_mux_is_hazard_free() {
        let c = mc_transform(&TruthTable::mux()).unwrap();
        assert_eq!(c.eval(&"11M".parse().unwrap()).unwrap().to_string(), "1");
        let tt = TruthTable::mux();
        for x in TritWord::new(vec![crate::kleene::Trit::Meta; 3]).resolutions() {
            assert_eq!(c.eval_bool(&x).unwrap(), tt.apply(&x));
        }
    }

    #[test]
    fn transform_computes_closure_on_all_inputs() {
        let tt = TruthTable::xor(3);
        let c = mc_transform(&tt).unwrap();
        // Every ternary word of width 3.
        for v in 0..27u32 {
            let x: TritWord = (0..3)
                .map(|i| crate::kleene::Trit::ALL[(v / 3u32.pow(i)) as usize % 3])
                .collect();
            assert_eq!(c.eval(&x).unwrap(), closure_eval(&tt, &x, 20).unwrap(), "{x}");
        }
    }

    #[test]
    fn implicant_limit_is_reported() {
        let tt = TruthTable::xor(4);
        assert!(matches!(
            mc_transform_with_limit(&tt, 3),
            Err(SynthError::TooManyImplicants { count: 8, limit: 3 })
        ));
    }

    #[test]
    fn table_from_netlist_matches_fn() {
        let c = mc_transform(&TruthTable::xor(3)).unwrap();
        let a = TruthTable::from_netlist(&c).unwrap();
        let b = TruthTable::from_fn(&c).unwrap();
        assert_eq!(a.rows(), b.rows());
        assert_eq!(a.rows(), TruthTable::xor(3).rows());
    }
}
