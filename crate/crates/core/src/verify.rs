//! Exhaustive checkers for k-preservation and k-recoverability, the
//! minimum M-count property, the domain bound and a small exhaustive code search.
//!
//! Codewords are packed into `u64` (first bit most significant), so an
//! extended codeword is a pair of masks: the AND and the OR over its window.
//! Bits where the two differ are metastable.
//!
//! Recoverability is decided per stable word: a total extension of the
//! decoder exists iff, for every word, the intervals whose extended codeword
//! resolves to it have a common point. Integer intervals intersect to an
//! interval and each word constrains only itself, so this test is exact
//! (pairwise intersection suffices in one dimension).

use std::fmt;

use thiserror::Error;

use crate::codes::{Code, CodeError, CodeTable, Interval};
use crate::kleene::BitWord;

/// Largest word length the checkers will enumerate.
pub const MAX_CHECK_WORD_LEN: usize = 24;
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("word length {len} exceeds the enumeration limit of {max} bits")]
    WordTooLong { len: usize, max: usize },
    #[error("enumeration budget of {budget} evaluations exceeded")]
    Budget { budget: u64 },
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Preserving,
    Recoverable,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Preserving => "preserving",
            Property::Recoverable => "recoverable",
        })
    }
}

/// A counterexample to one of the two properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Resolving the extended codeword of `interval` yields `codeword`,
    /// which encodes a value outside the interval.
    Leak { interval: Interval, codeword: BitWord },
    /// `word` is a resolution of the extended codewords of two disjoint
    /// intervals, so no decoder can map it into both.
    Conflict {
        word: BitWord,
        first: Interval,
        second: Interval,
    },
}

impl Witness {
    /// Re-checks the witness against the definitions; true iff it really is
    /// a counterexample at level `k`.
    pub fn recheck<C: Code + ?Sized>(&self, code: &C, k: usize) -> bool {
        let within = |iv: &Interval| iv.imprecision() <= k as u64 && iv.hi() < code.domain_size();
        let admits = |iv: &Interval, w: &BitWord| crate::codes::extended_codeword(code, *iv).is_ok_and(|x| x.admits(w));
        match self {
            Witness::Leak { interval, codeword } => {
                within(interval)
                    && admits(interval, codeword)
                    && code.decode(codeword).is_ok_and(|v| !interval.contains(v))
            }
            Witness::Conflict { word, first, second } => {
                within(first)
                    && within(second)
                    && first.intersect(second).is_none()
                    && admits(first, word)
                    && admits(second, word)
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Leak { interval, codeword } => {
                write!(f, "extended codeword of {interval} resolves to codeword {codeword}")
            }
            Witness::Conflict { word, first, second } => write!(f, "word {word} resolves both {first} and {second}"),
        }
    }
}

/// Result of checking the family's own total decoder against the
/// recoverability definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCheck {
    pub holds: bool,
    /// First interval and resolution the decoder maps outside the interval.
    pub witness: Option<(Interval, BitWord)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub k: usize,
    pub holds: bool,
    pub witness: Option<Witness>,
    pub extension: Option<ExtensionCheck>,
}

/// Packed view of a code used by all checkers.
struct Packed {
    len: usize,
    words: Vec<u64>,
}

impl Packed {
    fn new<C: Code + ?Sized>(code: &C) -> Result<Self, VerifyError> {
        let len = code.word_len();
        if len > MAX_CHECK_WORD_LEN {
            return Err(VerifyError::WordTooLong {
                len,
                max: MAX_CHECK_WORD_LEN,
            });
        }
        let words = (0..code.domain_size())
            .map(|v| code.encode(v).map(|w| w.to_u64()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Packed { len, words })
    }

    fn unpack(&self, w: u64) -> BitWord {
        BitWord::from_u64(w, self.len)
    }

    /// Calls `f` for every interval of imprecision at most `k`, in order of
    /// `(lo, hi)`, with the AND and OR masks of its window.
    fn for_each_window<E>(&self, k: usize, mut f: impl FnMut(Interval, u64, u64) -> Result<bool, E>) -> Result<(), E> {
        let d = self.words.len();
        for lo in 0..d {
            let (mut and, mut or) = (self.words[lo], self.words[lo]);
            for hi in lo..d.min(lo + k + 1) {
                and &= self.words[hi];
                or |= self.words[hi];
                let iv = Interval::new(lo as u64, hi as u64).expect("lo <= hi");
                if !f(iv, and, or)? {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

/// Iterates the submasks of `mask` starting at zero.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let s = next?;
        next = if s == mask {
            None
        } else {
            Some(s.wrapping_sub(mask) & mask)
        };
        Some(s)
    })
}

struct Meter {
    used: u64,
    budget: u64,
}

impl Meter {
    fn charge(&mut self, n: u64) -> Result<(), VerifyError> {
        self.used = self.used.saturating_add(n);
        if self.used > self.budget {
            return Err(VerifyError::Budget { budget: self.budget });
        }
        Ok(())
    }
}

const NOT_CODEWORD: u32 = u32::MAX;

fn decode_table(p: &Packed) -> Vec<u32> {
    let mut t = vec![NOT_CODEWORD; 1usize << p.len];
    for (i, w) in p.words.iter().enumerate() {
        t[*w as usize] = i as u32;
    }
    t
}

pub fn check_preserving<C: Code + ?Sized>(code: &C, k: usize) -> Result<PropertyReport, VerifyError> {
    check_preserving_with_budget(code, k, DEFAULT_BUDGET)
}

pub fn check_preserving_with_budget<C: Code + ?Sized>(
    code: &C,
    k: usize,
    budget: u64,
) -> Result<PropertyReport, VerifyError> {
    let p = Packed::new(code)?;
    let table = decode_table(&p);
    let d = p.words.len() as u64;
    let mut meter = Meter { used: 0, budget };
    let mut witness = None;
    p.for_each_window(k, |iv, and, or| {
        let meta = and ^ or;
        let resolutions = 1u64 << meta.count_ones();
        // Smallest domain index of a codeword outside the interval that the
        // window admits, found by whichever enumeration is shorter.
        let leak = if resolutions < d {
            meter.charge(resolutions)?;
            submasks(meta)
                .map(|s| table[(and | s) as usize])
                .filter(|v| *v != NOT_CODEWORD && !iv.contains(*v as u64))
                .min()
        } else {
            meter.charge(d)?;
            p.words
                .iter()
                .enumerate()
                .find(|(v, w)| !iv.contains(*v as u64) && **w & !meta == and)
                .map(|(v, _)| v as u32)
        };
        if let Some(v) = leak {
            witness = Some(Witness::Leak {
                interval: iv,
                codeword: p.unpack(p.words[v as usize]),
            });
            return Ok(false);
        }
        Ok::<_, VerifyError>(true)
    })?;
    Ok(PropertyReport {
        property: Property::Preserving,
        k,
        holds: witness.is_none(),
        witness,
        extension: None,
    })
}

pub fn check_recoverable<C: Code + ?Sized>(code: &C, k: usize) -> Result<PropertyReport, VerifyError> {
    check_recoverable_with_budget(code, k, DEFAULT_BUDGET)
}

#[derive(Clone, Copy)]
struct Constraint {
    lo: Interval,
    hi: Interval,
}

pub fn check_recoverable_with_budget<C: Code + ?Sized>(
    code: &C,
    k: usize,
    budget: u64,
) -> Result<PropertyReport, VerifyError> {
    let p = Packed::new(code)?;
    let mut meter = Meter { used: 0, budget };
    // Per word: the interval with the largest lower end and the one with the
    // smallest upper end among those constraining it.
    let mut cons: Vec<Option<Constraint>> = vec![None; 1usize << p.len];
    p.for_each_window(k, |iv, and, or| {
        let meta = and ^ or;
        meter.charge(1u64 << meta.count_ones())?;
        for s in submasks(meta) {
            let slot = &mut cons[(and | s) as usize];
            match slot {
                None => *slot = Some(Constraint { lo: iv, hi: iv }),
                Some(c) => {
                    if iv.lo() > c.lo.lo() {
                        c.lo = iv;
                    }
                    if iv.hi() < c.hi.hi() {
                        c.hi = iv;
                    }
                }
            }
        }
        Ok::<_, VerifyError>(true)
    })?;
    let witness = cons.iter().enumerate().find_map(|(w, c)| {
        let c = c.as_ref()?;
        (c.hi.hi() < c.lo.lo()).then(|| Witness::Conflict {
            word: p.unpack(w as u64),
            first: c.hi,
            second: c.lo,
        })
    });
    let extension = if code.has_extension() {
        Some(check_extension(code, &p, k, &mut meter)?)
    } else {
        None
    };
    Ok(PropertyReport {
        property: Property::Recoverable,
        k,
        holds: witness.is_none(),
        witness,
        extension,
    })
}

fn check_extension<C: Code + ?Sized>(
    code: &C,
    p: &Packed,
    k: usize,
    meter: &mut Meter,
) -> Result<ExtensionCheck, VerifyError> {
    let size = 1u64 << p.len;
    meter.charge(size)?;
    let decoded = (0..size)
        .map(|w| code.extended_decode(&p.unpack(w)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut witness = None;
    p.for_each_window(k, |iv, and, or| {
        let meta = and ^ or;
        meter.charge(1u64 << meta.count_ones())?;
        if let Some(s) = submasks(meta).find(|s| !iv.contains(decoded[(and | s) as usize])) {
            witness = Some((iv, p.unpack(and | s)));
            return Ok(false);
        }
        Ok::<_, VerifyError>(true)
    })?;
    Ok(ExtensionCheck {
        holds: witness.is_none(),
        witness,
    })
}

/// True iff every extended codeword of imprecision `p <= k` has at least
/// `p` metastable positions.
pub fn check_m_count<C: Code + ?Sized>(code: &C, k: usize) -> bool {
    let d = code.domain_size();
    (0..d).all(|lo| {
        let Ok(first) = code.encode(lo) else {
            return false;
        };
        let mut acc = crate::kleene::TritWord::from(first);
        (lo + 1..d.min(lo + k as u64 + 1)).all(|hi| {
            let next = code.encode(hi).map(crate::kleene::TritWord::from);
            match next.ok().and_then(|w| acc.superpose(&w).ok()) {
                Some(s) => {
                    acc = s;
                    acc.meta_count() as u64 >= hi - lo
                }
                None => false,
            }
        })
    })
}

/// Largest domain of an `n`-bit `k`-recoverable code: `2^(n-k) (k+1)`.
pub fn max_domain(n: usize, k: usize) -> Result<u64, VerifyError> {
    if k > n {
        return Err(VerifyError::BadParams(format!("need k <= n, got n={n} k={k}")));
    }
    if n - k >= 63 {
        return Err(VerifyError::BadParams(format!("2^{} does not fit in u64", n - k)));
    }
    (1u64 << (n - k))
        .checked_mul(k as u64 + 1)
        .ok_or_else(|| VerifyError::BadParams("domain does not fit in u64".into()))
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub budget: u64,
    /// Fix the first codeword to all zeros. XOR with a constant word maps
    /// every k-recoverable code to another one, so this loses no generality.
    pub fast: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            fast: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// True iff no injective `n`-bit code on `m` values is `k`-recoverable.
    pub no_code_exists: bool,
    /// The first recoverable code found, in search order.
    pub witness: Option<CodeTable>,
    /// Search nodes visited.
    pub nodes: u64,
}

/// Counts ordered injections `[m] -> [words]`, saturating at `cap + 1`.
fn injections(words: u64, m: u64, cap: u64) -> u64 {
    if m > words {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..m {
        acc = acc.saturating_mul(words - i);
        if acc > cap {
            return cap.saturating_add(1);
        }
    }
    acc
}

/// Searches all injective codes `[m] -> B^n` for one that is
/// `k`-recoverable.
pub fn exhaustive_bound_search(n: usize, k: usize, m: u64, opts: SearchOptions) -> Result<SearchOutcome, VerifyError> {
    if n == 0 || n > 16 {
        return Err(VerifyError::BadParams(format!("n must be in 1..=16, got {n}")));
    }
    let space = 1u64 << n;
    let total = if opts.fast {
        if m == 0 {
            1
        } else {
            injections(space - 1, m - 1, opts.budget)
        }
    } else {
        injections(space, m, opts.budget)
    };
    if total > opts.budget {
        return Err(VerifyError::Budget { budget: opts.budget });
    }
    if m > space {
        return Ok(SearchOutcome {
            no_code_exists: true,
            witness: None,
            nodes: 0,
        });
    }
    let mut s = Search {
        k,
        m: m as usize,
        space: space as usize,
        gamma: Vec::with_capacity(m as usize),
        used: vec![false; space as usize],
        cons: vec![(0, u64::MAX); space as usize],
        trail: Vec::new(),
        nodes: 0,
        budget: opts.budget,
    };
    let found = if opts.fast && m > 0 {
        s.place(0)? && s.extend()?
    } else {
        s.extend()?
    };
    let witness = if found {
        let words = s.gamma.iter().map(|w| BitWord::from_u64(*w, n)).collect();
        Some(CodeTable::new(words)?)
    } else {
        None
    };
    Ok(SearchOutcome {
        no_code_exists: !found,
        witness,
        nodes: s.nodes,
    })
}

struct Search {
    k: usize,
    m: usize,
    space: usize,
    gamma: Vec<u64>,
    used: Vec<bool>,
    /// Current intersection `(lo, hi)` of the intervals constraining a word.
    cons: Vec<(u64, u64)>,
    trail: Vec<(usize, (u64, u64))>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn extend(&mut self) -> Result<bool, VerifyError> {
        if self.gamma.len() == self.m {
            return Ok(true);
        }
        for w in 0..self.space {
            if self.used[w] {
                continue;
            }
            let mark = self.trail.len();
            if self.place(w as u64)? && self.extend()? {
                return Ok(true);
            }
            self.unplace(mark);
        }
        Ok(false)
    }

    /// Assigns the next value to `w` and applies the constraints of every
    /// interval ending at it; false if some word's intersection empties.
    fn place(&mut self, w: u64) -> Result<bool, VerifyError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(VerifyError::Budget { budget: self.budget });
        }
        self.used[w as usize] = true;
        self.gamma.push(w);
        let hi = self.gamma.len() - 1;
        let (mut and, mut or) = (w, w);
        for lo in (hi.saturating_sub(self.k)..=hi).rev() {
            and &= self.gamma[lo];
            or |= self.gamma[lo];
            let meta = and ^ or;
            for s in submasks(meta) {
                let x = (and | s) as usize;
                let old = self.cons[x];
                let new = (old.0.max(lo as u64), old.1.min(hi as u64));
                if new == old {
                    continue;
                }
                self.trail.push((x, old));
                self.cons[x] = new;
                if new.0 > new.1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn unplace(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (x, old) = self.trail.pop().expect("nonempty trail");
            self.cons[x] = old;
        }
        if let Some(w) = self.gamma.pop() {
            self.used[w as usize] = false;
        }
    }
}
