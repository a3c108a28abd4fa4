//! Code families (binary, unary thermometer in both flavors, binary reflected
//! Gray code, hybrid) together with extended codewords, the unary mapping
//! `ũ` and the total decoders built on it.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::kleene::{BitWord, KleeneError, TritWord};

/// Widest BRGC/binary part we accept; keeps every domain inside `u64`.
pub const MAX_POSITIONAL_BITS: usize = 48;
/// Widest unary part we accept.
pub const MAX_UNARY_BITS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("invalid code parameters: {0}")]
    BadParams(String),
    #[error("value {value} is outside the domain [0, {domain})")]
    OutOfDomain { value: u64, domain: u64 },
    #[error("word length {actual} does not match code word length {expected}")]
    WrongLength { expected: usize, actual: usize },
    #[error("{0} is not a codeword")]
    NotCodeword(BitWord),
    #[error("interval {interval} is outside the domain [0, {domain})")]
    IntervalOutOfDomain { interval: Interval, domain: u64 },
    #[error("invalid interval: lo {lo} > hi {hi}")]
    BadInterval { lo: u64, hi: u64 },
    #[error("no recoverable extension defined for {0}")]
    NoExtension(String),
    #[error("code table is not injective: {0} appears twice")]
    DuplicateCodeword(BitWord),
    #[error(transparent)]
    Kleene(#[from] KleeneError),
}

/// Closed integer interval `<lo, hi>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: u64,
    hi: u64,
}

impl Interval {
    pub fn new(lo: u64, hi: u64) -> Result<Self, CodeError> {
        if lo > hi {
            return Err(CodeError::BadInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn singleton(v: u64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn imprecision(&self) -> u64 {
        self.hi - self.lo
    }

    pub fn size(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Interval sum `<lo + lo', hi + hi'>`.
    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.lo, self.hi)
    }
}

/// Anything that maps `[M]` injectively onto fixed-length stable words.
pub trait Code {
    fn word_len(&self) -> usize;
    fn domain_size(&self) -> u64;
    fn encode(&self, value: u64) -> Result<BitWord, CodeError>;
    fn decode(&self, word: &BitWord) -> Result<u64, CodeError>;

    /// Total decoder extending [`Code::decode`] to every word, where the
    /// family defines one.
    fn extended_decode(&self, word: &BitWord) -> Result<u64, CodeError> {
        let _ = word;
        Err(CodeError::NoExtension(self.name()))
    }

    fn has_extension(&self) -> bool {
        false
    }

    fn name(&self) -> String;

    fn is_codeword(&self, word: &BitWord) -> bool {
        self.decode(word).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Binary { n: usize },
    UnaryUp { n: usize },
    UnaryDown { n: usize },
    Brgc { n: usize },
    Hybrid { n: usize, k: usize },
}

/// A validated code family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeSpec(Family);

impl CodeSpec {
    pub fn new(family: Family) -> Result<Self, CodeError> {
        let bad = |m: &str| Err(CodeError::BadParams(m.to_string()));
        match family {
            Family::Binary { n } | Family::Brgc { n } => {
                if n == 0 || n > MAX_POSITIONAL_BITS {
                    return bad(&format!("n must be in 1..={MAX_POSITIONAL_BITS}, got {n}"));
                }
            }
            Family::UnaryUp { n } | Family::UnaryDown { n } => {
                if n == 0 || n > MAX_UNARY_BITS {
                    return bad(&format!("n must be in 1..={MAX_UNARY_BITS}, got {n}"));
                }
            }
            Family::Hybrid { n, k } => {
                if n == 0 || k == 0 {
                    return bad("hybrid code needs n >= 1 and k >= 1");
                }
                if n < k {
                    return bad(&format!("hybrid code needs n >= k, got n={n} k={k}"));
                }
                if n > MAX_POSITIONAL_BITS {
                    return bad(&format!("n must be at most {MAX_POSITIONAL_BITS}, got {n}"));
                }
            }
        }
        Ok(CodeSpec(family))
    }

    pub fn binary(n: usize) -> Result<Self, CodeError> {
        Self::new(Family::Binary { n })
    }

    pub fn unary_up(n: usize) -> Result<Self, CodeError> {
        Self::new(Family::UnaryUp { n })
    }

    pub fn unary_down(n: usize) -> Result<Self, CodeError> {
        Self::new(Family::UnaryDown { n })
    }

    pub fn brgc(n: usize) -> Result<Self, CodeError> {
        Self::new(Family::Brgc { n })
    }

    pub fn hybrid(n: usize, k: usize) -> Result<Self, CodeError> {
        Self::new(Family::Hybrid { n, k })
    }

    pub fn family(&self) -> Family {
        self.0
    }

    /// Splits a hybrid word into its BRGC and unary parts.
    pub fn split_hybrid(&self, word: &BitWord) -> Option<(BitWord, BitWord)> {
        match self.0 {
            Family::Hybrid { n, .. } if word.len() == self.word_len() => {
                Some((word.slice(0, n), word.slice(n, word.len())))
            }
            _ => None,
        }
    }

    /// Formats a word of this code, with a space between the BRGC and
    /// unary parts of hybrid words.
    pub fn format_word(&self, word: &TritWord) -> String {
        match self.0 {
            Family::Hybrid { n, .. } if word.len() == self.word_len() => {
                format!("{} {}", word.slice(0, n), word.slice(n, word.len()))
            }
            _ => word.to_string(),
        }
    }

    pub fn redundancy(&self) -> Measure {
        let len = self.word_len() as u64;
        match self.0 {
            Family::Binary { n } | Family::Brgc { n } => Measure::rational(len, n as u64),
            Family::UnaryUp { n } | Family::UnaryDown { n } => match exact_log2(n as u64 + 1) {
                Some(m) => Measure::rational(len, m),
                None => Measure::Real(len as f64 / ((n as f64) + 1.0).log2()),
            },
            Family::Hybrid { n, k } => match exact_log2(k as u64 + 1) {
                Some(m) => Measure::rational(len, n as u64 + m),
                None => Measure::Real(len as f64 / (n as f64 + ((k as f64) + 1.0).log2())),
            },
        }
    }

    pub fn rate(&self) -> Measure {
        self.redundancy().recip()
    }

    fn check_len(&self, word: &BitWord) -> Result<(), CodeError> {
        if word.len() != self.word_len() {
            return Err(CodeError::WrongLength {
                expected: self.word_len(),
                actual: word.len(),
            });
        }
        Ok(())
    }
}

fn exact_log2(v: u64) -> Option<u64> {
    v.is_power_of_two().then(|| v.trailing_zeros() as u64)
}

/// Redundancy or rate: exact where the logarithm is integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    Rational { num: u64, den: u64 },
    Real(f64),
}

impl Measure {
    fn rational(num: u64, den: u64) -> Self {
        let g = gcd(num, den);
        Measure::Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Measure::Rational { num, den } => num as f64 / den as f64,
            Measure::Real(v) => v,
        }
    }

    pub fn recip(&self) -> Self {
        match *self {
            Measure::Rational { num, den } => Measure::Rational { num: den, den: num },
            Measure::Real(v) => Measure::Real(1.0 / v),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Rational { num, den: 1 } => write!(f, "{num}"),
            Measure::Rational { num, den } => write!(f, "{num}/{den}"),
            Measure::Real(v) => write!(f, "{v:.12}"),
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Family::Binary { n } => write!(f, "binary({n})"),
            Family::UnaryUp { n } => write!(f, "unary-up({n})"),
            Family::UnaryDown { n } => write!(f, "unary-down({n})"),
            Family::Brgc { n } => write!(f, "brgc({n})"),
            Family::Hybrid { n, k } => write!(f, "hybrid({n},{k})"),
        }
    }
}

pub fn binary_encode(n: usize, i: u64) -> BitWord {
    BitWord::from_u64(i, n)
}

pub fn brgc_encode(n: usize, i: u64) -> BitWord {
    BitWord::from_u64(i ^ (i >> 1), n)
}

/// Inverse BRGC: prefix parities of the word.
pub fn brgc_decode(word: &BitWord) -> u64 {
    let mut acc = false;
    word.bits().iter().fold(0u64, |v, b| {
        acc ^= *b;
        (v << 1) | acc as u64
    })
}

pub fn unary_up_encode(n: usize, i: usize) -> BitWord {
    (0..n).map(|p| p < i).collect()
}

pub fn unary_down_encode(n: usize, i: usize) -> BitWord {
    (0..n).map(|p| p >= i).collect()
}

/// `Some(i)` iff `word` has the shape `1^i 0^(n-i)`.
pub fn unary_up_decode(word: &BitWord) -> Option<u64> {
    let ones = word.bits().iter().take_while(|b| **b).count();
    word.bits()[ones..].iter().all(|b| !b).then_some(ones as u64)
}

/// `Some(i)` iff `word` has the shape `0^i 1^(n-i)`.
pub fn unary_down_decode(word: &BitWord) -> Option<u64> {
    unary_up_decode(&word.complement())
}

/// Number of ones modulo two.
pub fn parity(word: &BitWord) -> bool {
    word.count_ones() % 2 == 1
}

/// Position indices of a stable word, 1-based; absent values use the
/// sentinels `0` (for maxima) and `len + 1` (for minima).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitIndices {
    pub min0: usize,
    pub min1: usize,
    pub max0: usize,
    pub max1: usize,
}

impl BitIndices {
    pub fn of(word: &BitWord) -> Self {
        let bits = word.bits();
        let n = bits.len();
        let min = |b: bool| bits.iter().position(|x| *x == b).map_or(n + 1, |i| i + 1);
        let max = |b: bool| bits.iter().rposition(|x| *x == b).map_or(0, |i| i + 1);
        BitIndices {
            min0: min(false),
            min1: min(true),
            max0: max(false),
            max1: max(true),
        }
    }
}

/// The unary mapping `ũ(π, x)`: maps any stable word onto a unary-up
/// codeword (π = 0) or unary-down codeword (π = 1), choosing the cut by the
/// bit at position `⌈k/2⌉`.
pub fn map_unary(pi: bool, x: &BitWord) -> BitWord {
    let k = x.len();
    if k == 0 {
        return BitWord::default();
    }
    let idx = BitIndices::of(x);
    let mid = x.bits()[k.div_ceil(2) - 1];
    match (pi, mid) {
        (false, false) => unary_up_encode(k, idx.min0 - 1),
        (false, true) => unary_up_encode(k, idx.max1),
        (true, false) => unary_down_encode(k, idx.max0),
        (true, true) => unary_down_encode(k, idx.min1 - 1),
    }
}

impl Code for CodeSpec {
    fn word_len(&self) -> usize {
        match self.0 {
            Family::Binary { n } | Family::UnaryUp { n } | Family::UnaryDown { n } | Family::Brgc { n } => n,
            Family::Hybrid { n, k } => n + k,
        }
    }

    fn domain_size(&self) -> u64 {
        match self.0 {
            Family::Binary { n } | Family::Brgc { n } => 1u64 << n,
            Family::UnaryUp { n } | Family::UnaryDown { n } => n as u64 + 1,
            Family::Hybrid { n, k } => (1u64 << n) * (k as u64 + 1),
        }
    }

    fn encode(&self, value: u64) -> Result<BitWord, CodeError> {
        let domain = self.domain_size();
        if value >= domain {
            return Err(CodeError::OutOfDomain { value, domain });
        }
        Ok(match self.0 {
            Family::Binary { n } => binary_encode(n, value),
            Family::Brgc { n } => brgc_encode(n, value),
            Family::UnaryUp { n } => unary_up_encode(n, value as usize),
            Family::UnaryDown { n } => unary_down_encode(n, value as usize),
            Family::Hybrid { n, k } => {
                let block = k as u64 + 1;
                let g = brgc_encode(n, value / block);
                let r = (value % block) as usize;
                let u = if parity(&g) {
                    unary_down_encode(k, r)
                } else {
                    unary_up_encode(k, r)
                };
                g.concat(&u)
            }
        })
    }

    fn decode(&self, word: &BitWord) -> Result<u64, CodeError> {
        self.check_len(word)?;
        let not_cw = || CodeError::NotCodeword(word.clone());
        match self.0 {
            Family::Binary { .. } => Ok(word.to_u64()),
            Family::Brgc { .. } => Ok(brgc_decode(word)),
            Family::UnaryUp { .. } => unary_up_decode(word).ok_or_else(not_cw),
            Family::UnaryDown { .. } => unary_down_decode(word).ok_or_else(not_cw),
            Family::Hybrid { k, .. } => {
                let (g, u) = self.split_hybrid(word).ok_or_else(not_cw)?;
                let r = if parity(&g) {
                    unary_down_decode(&u)
                } else {
                    unary_up_decode(&u)
                }
                .ok_or_else(not_cw)?;
                Ok(brgc_decode(&g) * (k as u64 + 1) + r)
            }
        }
    }

    fn extended_decode(&self, word: &BitWord) -> Result<u64, CodeError> {
        self.check_len(word)?;
        match self.0 {
            Family::UnaryUp { .. } => self.decode(&map_unary(false, word)),
            Family::UnaryDown { .. } => self.decode(&map_unary(true, word)),
            Family::Hybrid { .. } => {
                let (g, u) = self
                    .split_hybrid(word)
                    .ok_or_else(|| CodeError::NotCodeword(word.clone()))?;
                let repaired = g.concat(&map_unary(parity(&g), &u));
                self.decode(&repaired)
            }
            Family::Binary { .. } | Family::Brgc { .. } => Err(CodeError::NoExtension(self.to_string())),
        }
    }

    fn has_extension(&self) -> bool {
        matches!(
            self.0,
            Family::UnaryUp { .. } | Family::UnaryDown { .. } | Family::Hybrid { .. }
        )
    }

    fn name(&self) -> String {
        self.to_string()
    }
}

/// An explicit code given by its list of codewords, `table[i] = γ(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTable {
    words: Vec<BitWord>,
    index: HashMap<BitWord, u64>,
    len: usize,
}

impl CodeTable {
    pub fn new(words: Vec<BitWord>) -> Result<Self, CodeError> {
        let len = words.first().map_or(0, BitWord::len);
        let mut index = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.len() != len {
                return Err(CodeError::WrongLength {
                    expected: len,
                    actual: w.len(),
                });
            }
            if index.insert(w.clone(), i as u64).is_some() {
                return Err(CodeError::DuplicateCodeword(w.clone()));
            }
        }
        Ok(CodeTable { words, index, len })
    }

    pub fn words(&self) -> &[BitWord] {
        &self.words
    }
}

impl Code for CodeTable {
    fn word_len(&self) -> usize {
        self.len
    }

    fn domain_size(&self) -> u64 {
        self.words.len() as u64
    }

    fn encode(&self, value: u64) -> Result<BitWord, CodeError> {
        self.words.get(value as usize).cloned().ok_or(CodeError::OutOfDomain {
            value,
            domain: self.domain_size(),
        })
    }

    fn decode(&self, word: &BitWord) -> Result<u64, CodeError> {
        if word.len() != self.len {
            return Err(CodeError::WrongLength {
                expected: self.len,
                actual: word.len(),
            });
        }
        self.index
            .get(word)
            .copied()
            .ok_or_else(|| CodeError::NotCodeword(word.clone()))
    }

    fn name(&self) -> String {
        let words: Vec<String> = self.words.iter().map(ToString::to_string).collect();
        format!("table[{}]", words.join(","))
    }
}

/// Superposition of the codewords of every value in `interval`.
pub fn extended_codeword<C: Code + ?Sized>(code: &C, interval: Interval) -> Result<TritWord, CodeError> {
    let domain = code.domain_size();
    if interval.hi() >= domain {
        return Err(CodeError::IntervalOutOfDomain { interval, domain });
    }
    let mut acc = TritWord::from(code.encode(interval.lo())?);
    for v in interval.lo() + 1..=interval.hi() {
        acc = acc.superpose(&TritWord::from(code.encode(v)?))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn t(s: &str) -> TritWord {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(CodeSpec::brgc(4).unwrap().encode(10).unwrap(), b("1111"));
        assert_eq!(CodeSpec::hybrid(5, 3).unwrap().encode(37).unwrap(), b("01101011"));
        assert_eq!(CodeSpec::hybrid(4, 4).unwrap().encode(25).unwrap(), b("01111111"));
        assert_eq!(CodeSpec::unary_up(4).unwrap().encode(3).unwrap(), b("1110"));
        assert_eq!(CodeSpec::unary_down(4).unwrap().encode(3).unwrap(), b("0001"));
        assert_eq!(CodeSpec::binary(4).unwrap().encode(7).unwrap(), b("0111"));
    }

    #[test]
    fn hybrid_values_listed_for_the_running_example() {
        let h = CodeSpec::hybrid(5, 3).unwrap();
        let listed = [
            (21, "00111 011"),
            (25, "00101 100"),
            (26, "00101 110"),
            (37, "01101 011"),
            (47, "01110 000"),
            (48, "01010 000"),
            (49, "01010 100"),
            (62, "01000 001"),
            (63, "01000 000"),
            (68, "11001 111"),
            (69, "11001 011"),
            (70, "11001 001"),
        ];
        for (v, word) in listed {
            let enc = h.encode(v).unwrap();
            assert_eq!(h.format_word(&TritWord::from(&enc)), word, "value {v}");
            assert_eq!(h.decode(&enc).unwrap(), v);
        }
    }

    #[test]
    fn encode_rejects_out_of_domain() {
        let h = CodeSpec::hybrid(5, 3).unwrap();
        assert_eq!(
            h.encode(128),
            Err(CodeError::OutOfDomain {
                value: 128,
                domain: 128
            })
        );
        assert!(CodeSpec::unary_up(4).unwrap().encode(5).is_err());
    }

    #[test]
    fn hybrid_requires_n_at_least_k() {
        assert!(CodeSpec::hybrid(2, 3).is_err());
        assert!(CodeSpec::hybrid(3, 3).is_ok());
        assert!(CodeSpec::hybrid(3, 0).is_err());
        assert!(CodeSpec::brgc(0).is_err());
    }

    #[test]
    fn decode_examples_and_errors() {
        let h = CodeSpec::hybrid(5, 3).unwrap();
        assert_eq!(h.decode(&b("01101011")).unwrap(), 37);
        assert_eq!(CodeSpec::brgc(4).unwrap().decode(&b("0000")).unwrap(), 0);
        assert_eq!(CodeSpec::unary_down(4).unwrap().decode(&b("0001")).unwrap(), 3);
        assert!(matches!(h.decode(&b("01110100")), Err(CodeError::NotCodeword(_))));
        assert!(matches!(h.decode(&b("0111010")), Err(CodeError::WrongLength { .. })));
    }

    #[test]
    fn is_codeword_examples() {
        let h = CodeSpec::hybrid(5, 3).unwrap();
        let all: Vec<BitWord> = (0..128).map(|i| h.encode(i).unwrap()).collect();
        assert!(!all.contains(&b("01110100")));
        assert!(!h.is_codeword(&b("01110100")));
        assert!(!CodeSpec::unary_up(4).unwrap().is_codeword(&b("1010")));
        let g = CodeSpec::brgc(4).unwrap();
        assert!((0..16).all(|v| g.is_codeword(&BitWord::from_u64(v, 4))));
    }

    #[test]
    fn extended_codeword_examples() {
        let h = CodeSpec::hybrid(4, 4).unwrap();
        let x = extended_codeword(&h, Interval::new(25, 29).unwrap()).unwrap();
        assert_eq!(h.format_word(&x), "0111 MMMM");
        let x = extended_codeword(&h, Interval::new(18, 22).unwrap()).unwrap();
        assert_eq!(h.format_word(&x), "0M10 MM0M");
        assert!(extended_codeword(&h, Interval::new(79, 80).unwrap()).is_err());
    }

    #[test]
    fn unary_extended_codeword_shape() {
        for n in 1..=8usize {
            let up = CodeSpec::unary_up(n).unwrap();
            let down = CodeSpec::unary_down(n).unwrap();
            for i in 0..=n {
                for p in 0..=(n - i) {
                    let iv = Interval::new(i as u64, (i + p) as u64).unwrap();
                    let want: String = "1".repeat(i) + &"M".repeat(p) + &"0".repeat(n - i - p);
                    assert_eq!(extended_codeword(&up, iv).unwrap().to_string(), want);
                    let want: String = "0".repeat(i) + &"M".repeat(p) + &"1".repeat(n - i - p);
                    assert_eq!(extended_codeword(&down, iv).unwrap().to_string(), want);
                }
            }
        }
    }

    #[test]
    fn parity_examples() {
        assert!(parity(&b("00111")));
        assert!(!parity(&BitWord::default()));
        assert!(!parity(&b("0110")));
    }

    #[test]
    fn index_fixture() {
        let idx = BitIndices::of(&b("00110011"));
        assert_eq!(
            idx,
            BitIndices {
                min0: 1,
                min1: 3,
                max0: 6,
                max1: 8
            }
        );
        let idx = BitIndices::of(&b("1111"));
        assert_eq!((idx.min0, idx.max0), (5, 0));
    }

    #[test]
    fn map_unary_examples() {
        assert_eq!(map_unary(false, &b("0110")), b("1110"));
        assert_eq!(map_unary(true, &b("0110")), b("0111"));
        assert_eq!(map_unary(true, &b("100")), b("000"));
        assert_eq!(map_unary(false, &b("1010")), b("1000"));
    }

    #[test]
    fn map_unary_fixes_codewords() {
        for k in 1..=10usize {
            for v in 0..=k {
                let up = unary_up_encode(k, v);
                let down = unary_down_encode(k, v);
                assert_eq!(map_unary(false, &up), up);
                assert_eq!(map_unary(true, &down), down);
            }
        }
    }

    #[test]
    fn map_unary_negation_identity() {
        for k in 1..=12usize {
            for v in 0..(1u64 << k) {
                let x = BitWord::from_u64(v, k);
                for pi in [false, true] {
                    assert_eq!(
                        map_unary(pi, &x).complement(),
                        map_unary(!pi, &x.complement()),
                        "k={k} x={x} pi={pi}"
                    );
                }
            }
        }
    }

    #[test]
    fn extended_decode_examples() {
        let h = CodeSpec::hybrid(5, 3).unwrap();
        assert_eq!(h.extended_decode(&b("01110100")).unwrap(), 47);
        assert_eq!(h.extended_decode(&b("01101011")).unwrap(), 37);
        let up = CodeSpec::unary_up(4).unwrap();
        // 1010 resolves 1MM0 (the extended codeword of <1,3>).
        let v = up.extended_decode(&b("1010")).unwrap();
        assert!(Interval::new(1, 3).unwrap().contains(v));
        assert_eq!(v, 1);
        assert!(matches!(
            CodeSpec::brgc(4).unwrap().extended_decode(&b("0000")),
            Err(CodeError::NoExtension(_))
        ));
        assert!(CodeSpec::binary(4).unwrap().extended_decode(&b("0000")).is_err());
    }

    #[test]
    fn redundancy_examples() {
        assert_eq!(
            CodeSpec::binary(7).unwrap().redundancy(),
            Measure::Rational { num: 1, den: 1 }
        );
        let u = CodeSpec::unary_up(6).unwrap().redundancy();
        assert!((u.value() - 6.0 / 7f64.log2()).abs() < 1e-12);
        assert_eq!(
            CodeSpec::unary_up(7).unwrap().redundancy(),
            Measure::Rational { num: 7, den: 3 }
        );
        let h = CodeSpec::hybrid(5, 3).unwrap();
        assert_eq!(h.redundancy(), Measure::Rational { num: 8, den: 7 });
        assert_eq!(h.rate(), Measure::Rational { num: 7, den: 8 });
        let h = CodeSpec::hybrid(6, 2).unwrap().redundancy().value();
        assert!((h - 8.0 / (6.0 + 3f64.log2())).abs() < 1e-12);
    }

    #[test]
    fn redundancy_is_at_least_one() {
        for n in 1..=12 {
            for spec in [
                CodeSpec::binary(n),
                CodeSpec::brgc(n),
                CodeSpec::unary_up(n),
                CodeSpec::unary_down(n),
            ] {
                assert!(spec.unwrap().redundancy().value() >= 1.0 - 1e-12);
            }
            for k in 1..=n {
                assert!(CodeSpec::hybrid(n, k).unwrap().redundancy().value() >= 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn code_table_rejects_duplicates() {
        assert!(matches!(
            CodeTable::new(vec![b("01"), b("01")]),
            Err(CodeError::DuplicateCodeword(_))
        ));
        let t3 = CodeTable::new(vec![b("100"), b("010"), b("001")]).unwrap();
        assert_eq!(t3.decode(&b("010")).unwrap(), 1);
        assert_eq!(extended_codeword(&t3, Interval::new(0, 2).unwrap()).unwrap(), t("MMM"));
    }
}
