//! Kleene three-valued logic: trits, ternary and stable words, gate tables,
//! superposition, resolution and the metastable closure of a Boolean function.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};
use std::str::FromStr;

use thiserror::Error;

/// Default cap on the number of `M` trits a word may carry before
/// [`TritWord::resolve`] or [`closure_eval`] refuse to enumerate.
pub const DEFAULT_META_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KleeneError {
    #[error("{kind} expects {expected} operand(s), got {actual}")]
    Arity {
        kind: GateKind,
        expected: usize,
        actual: usize,
    },
    #[error("word length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("superposition of an empty set")]
    EmptySuperposition,
    #[error("word has {count} metastable trits, enumeration limit is {limit}")]
    MetaLimit { count: usize, limit: usize },
    #[error("invalid trit character {0:?} (expected 0, 1, M or X)")]
    BadTrit(char),
    #[error("word contains a metastable trit at position {0}")]
    NotStable(usize),
}

/// A ternary signal value. `Meta` models a metastable (unresolved) signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trit {
    Zero,
    One,
    Meta,
}

impl Trit {
    pub const ALL: [Trit; 3] = [Trit::Zero, Trit::One, Trit::Meta];

    #[inline]
    pub const fn from_bool(b: bool) -> Self {
        if b {
            Trit::One
        } else {
            Trit::Zero
        }
    }

    #[inline]
    pub const fn to_bool(self) -> Option<bool> {
        match self {
            Trit::Zero => Some(false),
            Trit::One => Some(true),
            Trit::Meta => None,
        }
    }

    #[inline]
    pub const fn is_stable(self) -> bool {
        !matches!(self, Trit::Meta)
    }

    /// `x * y`: equal trits pass through, anything else becomes `M`.
    #[inline]
    pub fn superpose(self, other: Trit) -> Trit {
        if self == other {
            self
        } else {
            Trit::Meta
        }
    }

    /// Information order: `self` is at most as precise as `other`
    /// (`M` is below both stable values).
    #[inline]
    pub fn covers(self, other: Trit) -> bool {
        self == Trit::Meta || self == other
    }

    pub fn from_char(c: char) -> Result<Self, KleeneError> {
        match c {
            '0' => Ok(Trit::Zero),
            '1' => Ok(Trit::One),
            'M' | 'm' | 'X' | 'x' => Ok(Trit::Meta),
            other => Err(KleeneError::BadTrit(other)),
        }
    }

    pub const fn to_char(self) -> char {
        match self {
            Trit::Zero => '0',
            Trit::One => '1',
            Trit::Meta => 'M',
        }
    }
}

impl fmt::Display for Trit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl From<bool> for Trit {
    fn from(b: bool) -> Self {
        Trit::from_bool(b)
    }
}

impl Not for Trit {
    type Output = Trit;

    fn not(self) -> Trit {
        match self {
            Trit::Zero => Trit::One,
            Trit::One => Trit::Zero,
            Trit::Meta => Trit::Meta,
        }
    }
}

impl BitAnd for Trit {
    type Output = Trit;

    fn bitand(self, rhs: Trit) -> Trit {
        match (self, rhs) {
            (Trit::Zero, _) | (_, Trit::Zero) => Trit::Zero,
            (Trit::One, Trit::One) => Trit::One,
            _ => Trit::Meta,
        }
    }
}

impl BitOr for Trit {
    type Output = Trit;

    fn bitor(self, rhs: Trit) -> Trit {
        match (self, rhs) {
            (Trit::One, _) | (_, Trit::One) => Trit::One,
            (Trit::Zero, Trit::Zero) => Trit::Zero,
            _ => Trit::Meta,
        }
    }
}

/// The basic gates of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    And,
    Or,
    Not,
}

impl GateKind {
    pub const fn arity(self) -> usize {
        match self {
            GateKind::And | GateKind::Or => 2,
            GateKind::Not => 1,
        }
    }

    pub const fn mnemonic(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Not => "NOT",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// Evaluates a basic gate according to the Kleene tables.
pub fn gate_eval(kind: GateKind, inputs: &[Trit]) -> Result<Trit, KleeneError> {
    if inputs.len() != kind.arity() {
        return Err(KleeneError::Arity {
            kind,
            expected: kind.arity(),
            actual: inputs.len(),
        });
    }
    Ok(match kind {
        GateKind::And => inputs[0] & inputs[1],
        GateKind::Or => inputs[0] | inputs[1],
        GateKind::Not => !inputs[0],
    })
}

/// A fixed-length ternary word. Position 1 is the leftmost trit, which is
/// the most significant bit for positional codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TritWord(Vec<Trit>);

impl TritWord {
    pub fn new(trits: Vec<Trit>) -> Self {
        TritWord(trits)
    }

    pub fn repeat(t: Trit, len: usize) -> Self {
        TritWord(vec![t; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trits(&self) -> &[Trit] {
        &self.0
    }

    pub fn into_trits(self) -> Vec<Trit> {
        self.0
    }

    /// 1-based positional access.
    pub fn get(&self, pos: usize) -> Option<Trit> {
        pos.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn meta_count(&self) -> usize {
        self.0.iter().filter(|t| **t == Trit::Meta).count()
    }

    pub fn is_stable(&self) -> bool {
        self.0.iter().all(|t| t.is_stable())
    }

    pub fn to_bits(&self) -> Result<BitWord, KleeneError> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, t)| t.to_bool().ok_or(KleeneError::NotStable(i + 1)))
            .collect::<Result<Vec<_>, _>>()
            .map(BitWord)
    }

    pub fn concat(&self, other: &TritWord) -> TritWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TritWord(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> TritWord {
        TritWord(self.0[from..to].to_vec())
    }

    pub fn superpose(&self, other: &TritWord) -> Result<TritWord, KleeneError> {
        if self.len() != other.len() {
            return Err(KleeneError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(TritWord(
            self.0.iter().zip(&other.0).map(|(a, b)| a.superpose(*b)).collect(),
        ))
    }

    /// True iff `stable` is one of the resolutions of `self`.
    pub fn admits(&self, stable: &BitWord) -> bool {
        self.len() == stable.len()
            && self
                .0
                .iter()
                .zip(stable.bits())
                .all(|(t, b)| t.covers(Trit::from_bool(*b)))
    }

    /// Information order on words, position-wise [`Trit::covers`].
    pub fn covers(&self, other: &TritWord) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.covers(*b))
    }

    /// All stable words agreeing with `self` on its stable positions, in
    /// lexicographic order (the leftmost `M` varies slowest).
    pub fn resolve(&self) -> Result<Vec<BitWord>, KleeneError> {
        self.resolve_with_limit(DEFAULT_META_LIMIT)
    }

    pub fn resolve_with_limit(&self, limit: usize) -> Result<Vec<BitWord>, KleeneError> {
        let count = self.meta_count();
        if count > limit {
            return Err(KleeneError::MetaLimit { count, limit });
        }
        Ok(self.resolutions().collect())
    }

    /// Lazy, unguarded version of [`TritWord::resolve`].
    pub fn resolutions(&self) -> Resolutions<'_> {
        let metas: Vec<usize> = (0..self.len()).filter(|&i| self.0[i] == Trit::Meta).collect();
        Resolutions {
            word: self,
            total: 1u128 << metas.len(),
            metas,
            next: 0,
        }
    }
}

pub struct Resolutions<'a> {
    word: &'a TritWord,
    metas: Vec<usize>,
    next: u128,
    total: u128,
}

impl Iterator for Resolutions<'_> {
    type Item = BitWord;

    fn next(&mut self) -> Option<BitWord> {
        if self.next >= self.total {
            return None;
        }
        let mut bits: Vec<bool> = self.word.0.iter().map(|t| *t == Trit::One).collect();
        let m = self.metas.len();
        for (j, &pos) in self.metas.iter().enumerate() {
            bits[pos] = (self.next >> (m - 1 - j)) & 1 == 1;
        }
        self.next += 1;
        Some(BitWord(bits))
    }
}

impl fmt::Display for TritWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{}", t.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for TritWord {
    type Err = KleeneError;

    /// Parses `0`, `1`, `M` (or `X`). Whitespace and `_` are ignored so that
    /// grouped forms such as `01M10 M00` are accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .map(Trit::from_char)
            .collect::<Result<Vec<_>, _>>()
            .map(TritWord)
    }
}

impl From<&BitWord> for TritWord {
    fn from(w: &BitWord) -> Self {
        TritWord(w.0.iter().map(|b| Trit::from_bool(*b)).collect())
    }
}

impl From<BitWord> for TritWord {
    fn from(w: BitWord) -> Self {
        TritWord::from(&w)
    }
}

impl FromIterator<Trit> for TritWord {
    fn from_iter<I: IntoIterator<Item = Trit>>(iter: I) -> Self {
        TritWord(iter.into_iter().collect())
    }
}

/// A word with no metastable position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitWord(Vec<bool>);

impl BitWord {
    pub fn new(bits: Vec<bool>) -> Self {
        BitWord(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitWord(vec![false; len])
    }

    /// `len` low bits of `value`, most significant first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        BitWord(
            (0..len)
                .map(|i| {
                    let shift = len - 1 - i;
                    shift < 64 && (value >> shift) & 1 == 1
                })
                .collect(),
        )
    }

    /// Reads the word as an unsigned integer, position 1 most significant.
    /// Only meaningful for words of at most 64 bits.
    pub fn to_u64(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, b| (acc << 1) | *b as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, pos: usize) -> Option<bool> {
        pos.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn complement(&self) -> BitWord {
        BitWord(self.0.iter().map(|b| !b).collect())
    }

    pub fn concat(&self, other: &BitWord) -> BitWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BitWord(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> BitWord {
        BitWord(self.0[from..to].to_vec())
    }

    pub fn hamming(&self, other: &BitWord) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitWord {
    type Err = KleeneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<TritWord>()?.to_bits()
    }
}

impl FromIterator<bool> for BitWord {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitWord(iter.into_iter().collect())
    }
}

/// Folds [`TritWord::superpose`] over a non-empty collection.
pub fn superpose_all<'a, I>(words: I) -> Result<TritWord, KleeneError>
where
    I: IntoIterator<Item = &'a TritWord>,
{
    let mut iter = words.into_iter();
    let first = iter.next().ok_or(KleeneError::EmptySuperposition)?.clone();
    iter.try_fold(first, |acc, w| acc.superpose(w))
}

/// Superposition of stable words.
pub fn superpose_bits<'a, I>(words: I) -> Result<TritWord, KleeneError>
where
    I: IntoIterator<Item = &'a BitWord>,
{
    let mut iter = words.into_iter();
    let first = TritWord::from(iter.next().ok_or(KleeneError::EmptySuperposition)?);
    iter.try_fold(first, |acc, w| acc.superpose(&TritWord::from(w)))
}

/// A total Boolean function `B^n -> B^m`.
pub trait BoolFn {
    fn input_width(&self) -> usize;
    fn output_width(&self) -> usize;
    fn apply(&self, input: &BitWord) -> BitWord;
}

/// Adapts a closure into a [`BoolFn`].
pub struct FnOracle<F> {
    inputs: usize,
    outputs: usize,
    f: F,
}

impl<F: Fn(&BitWord) -> BitWord> FnOracle<F> {
    pub fn new(inputs: usize, outputs: usize, f: F) -> Self {
        FnOracle { inputs, outputs, f }
    }
}

impl<F: Fn(&BitWord) -> BitWord> BoolFn for FnOracle<F> {
    fn input_width(&self) -> usize {
        self.inputs
    }

    fn output_width(&self) -> usize {
        self.outputs
    }

    fn apply(&self, input: &BitWord) -> BitWord {
        (self.f)(input)
    }
}

/// The metastable closure `f_M(x)`: superposition of `f` over every
/// resolution of `x`.
pub fn closure_eval<F: BoolFn + ?Sized>(f: &F, x: &TritWord, meta_limit: usize) -> Result<TritWord, KleeneError> {
    if x.len() != f.input_width() {
        return Err(KleeneError::LengthMismatch {
            left: x.len(),
            right: f.input_width(),
        });
    }
    let count = x.meta_count();
    if count > meta_limit {
        return Err(KleeneError::MetaLimit {
            count,
            limit: meta_limit,
        });
    }
    let mut acc: Option<TritWord> = None;
    for y in x.resolutions() {
        let out = TritWord::from(f.apply(&y));
        acc = Some(match acc {
            None => out,
            Some(a) => a.superpose(&out)?,
        });
        // Nothing left to learn once every position is M.
        if acc.as_ref().is_some_and(|a| a.meta_count() == a.len()) {
            break;
        }
    }
    acc.ok_or(KleeneError::EmptySuperposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Trit::{Meta as M, One as I, Zero as O};

    fn w(s: &str) -> TritWord {
        s.parse().unwrap()
    }

    #[test]
    fn gate_table_entries() {
        assert_eq!(gate_eval(GateKind::And, &[M, O]).unwrap(), O);
        assert_eq!(gate_eval(GateKind::Or, &[M, I]).unwrap(), I);
        assert_eq!(gate_eval(GateKind::Not, &[M]).unwrap(), M);
        assert_eq!(gate_eval(GateKind::And, &[I, M]).unwrap(), M);
        assert_eq!(gate_eval(GateKind::Or, &[O, M]).unwrap(), M);
    }

    #[test]
    fn gate_tables_match_printed_tables() {
        // Rows and columns ordered 0, 1, M.
        let and = [[O, O, O], [O, I, M], [O, M, M]];
        let or = [[O, I, M], [I, I, I], [M, I, M]];
        for (r, a) in Trit::ALL.iter().enumerate() {
            for (c, b) in Trit::ALL.iter().enumerate() {
                assert_eq!(gate_eval(GateKind::And, &[*a, *b]).unwrap(), and[r][c]);
                assert_eq!(gate_eval(GateKind::Or, &[*a, *b]).unwrap(), or[r][c]);
            }
        }
    }

    #[test]
    fn gate_arity_is_checked() {
        assert!(matches!(
            gate_eval(GateKind::Not, &[O, I]),
            Err(KleeneError::Arity {
                expected: 1,
                actual: 2,
                ..
            })
        ));
        assert!(gate_eval(GateKind::And, &[O]).is_err());
    }

    #[test]
    fn gates_are_monotone_in_information_order() {
        for kind in [GateKind::And, GateKind::Or] {
            for a in Trit::ALL {
                for b in Trit::ALL {
                    let out = gate_eval(kind, &[a, b]).unwrap();
                    for (a2, b2) in [(M, b), (a, M)] {
                        let weaker = gate_eval(kind, &[a2, b2]).unwrap();
                        assert!(weaker.covers(out), "{kind} {a}{b} -> {out}, {a2}{b2} -> {weaker}");
                    }
                }
            }
        }
        assert!((!M).covers(!O) && (!M).covers(!I));
    }

    #[test]
    fn stable_output_iff_stable_inputs_determine_it() {
        for kind in [GateKind::And, GateKind::Or] {
            for a in Trit::ALL {
                for b in Trit::ALL {
                    let out = gate_eval(kind, &[a, b]).unwrap();
                    let mut seen = Vec::new();
                    for ra in [O, I].into_iter().filter(|r| a.covers(*r)) {
                        for rb in [O, I].into_iter().filter(|r| b.covers(*r)) {
                            seen.push(gate_eval(kind, &[ra, rb]).unwrap());
                        }
                    }
                    let determined = seen.iter().all(|s| *s == seen[0]);
                    assert_eq!(out.is_stable(), determined);
                }
            }
        }
    }

    #[test]
    fn superposition_examples() {
        assert_eq!(w("100").superpose(&w("111")).unwrap(), w("1MM"));
        assert_eq!(w("0011").superpose(&w("0100")).unwrap(), w("0MMM"));
        let x = w("01M0");
        assert_eq!(x.superpose(&x).unwrap(), x);
        assert!(matches!(
            w("01").superpose(&w("011")),
            Err(KleeneError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn superpose_all_examples() {
        assert_eq!(superpose_all(&[w("0101"), w("0110")]).unwrap(), w("01MM"));
        assert_eq!(
            superpose_all(&[w("0100"), w("0101"), w("0110"), w("0111")]).unwrap(),
            w("01MM")
        );
        assert_eq!(superpose_all(&[w("100"), w("010"), w("001")]).unwrap(), w("MMM"));
        assert_eq!(superpose_all(std::iter::empty()), Err(KleeneError::EmptySuperposition));
    }

    #[test]
    fn trit_superposition_is_a_semilattice() {
        for a in Trit::ALL {
            assert_eq!(a.superpose(a), a);
            for b in Trit::ALL {
                assert_eq!(a.superpose(b), b.superpose(a));
                for c in Trit::ALL {
                    assert_eq!(a.superpose(b).superpose(c), a.superpose(b.superpose(c)));
                }
            }
        }
    }

    #[test]
    fn resolution_examples() {
        let r: Vec<String> = w("1MM").resolve().unwrap().iter().map(|b| b.to_string()).collect();
        assert_eq!(r, ["100", "101", "110", "111"]);
        let r: Vec<String> = w("0110").resolve().unwrap().iter().map(|b| b.to_string()).collect();
        assert_eq!(r, ["0110"]);
        let r: Vec<String> = w("MM").resolve().unwrap().iter().map(|b| b.to_string()).collect();
        assert_eq!(r, ["00", "01", "10", "11"]);
    }

    #[test]
    fn resolution_guard_trips() {
        let x = TritWord::repeat(M, 21);
        assert_eq!(x.resolve(), Err(KleeneError::MetaLimit { count: 21, limit: 20 }));
        assert_eq!(
            w("MMM").resolve_with_limit(2).unwrap_err(),
            KleeneError::MetaLimit { count: 3, limit: 2 }
        );
    }

    #[test]
    fn parse_accepts_x_alias_and_grouping() {
        assert_eq!(w("01X10 X00"), w("01M10M00"));
        assert_eq!(w("01x_m"), w("01MM"));
        assert!("01a".parse::<TritWord>().is_err());
        assert_eq!(w("0M1").get(2), Some(M));
        assert_eq!(w("0M1").get(0), None);
        assert_eq!(w("0M1").get(4), None);
    }

    #[test]
    fn bitword_integer_round_trip() {
        for v in 0..32u64 {
            let b = BitWord::from_u64(v, 5);
            assert_eq!(b.len(), 5);
            assert_eq!(b.to_u64(), v);
        }
        assert_eq!(BitWord::from_u64(5, 4).to_string(), "0101");
        assert!(w("0M").to_bits().is_err());
    }

    fn mux() -> FnOracle<impl Fn(&BitWord) -> BitWord> {
        FnOracle::new(3, 1, |x: &BitWord| {
            let b = x.bits();
            BitWord::new(vec![if b[2] { b[1] } else { b[0] }])
        })
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure_eval(&mux(), &w("11M"), DEFAULT_META_LIMIT).unwrap(), w("1"));
        assert_eq!(closure_eval(&mux(), &w("01M"), DEFAULT_META_LIMIT).unwrap(), w("M"));
        assert_eq!(closure_eval(&mux(), &w("011"), DEFAULT_META_LIMIT).unwrap(), w("1"));
        let xor = FnOracle::new(2, 1, |x: &BitWord| BitWord::new(vec![x.bits()[0] ^ x.bits()[1]]));
        assert_eq!(closure_eval(&xor, &w("M0"), DEFAULT_META_LIMIT).unwrap(), w("M"));
        assert!(matches!(
            closure_eval(&xor, &w("MM"), 1),
            Err(KleeneError::MetaLimit { count: 2, limit: 1 })
        ));
        assert!(closure_eval(&xor, &w("000"), 5).is_err());
    }
}
