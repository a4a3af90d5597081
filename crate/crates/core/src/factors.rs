//! Distinct factor counts.
//!
//! `f_w` is the number of distinct nonempty factors of `w`; `f(n)` is its
//! maximum over words of length `n`. The counts come from an online suffix
//! automaton, so every prefix count is available in one pass.

use std::ops::Range;

use crate::debruijn::least_debruijn_word;
use crate::error::{Error, Result};
use crate::words::{Symbol, Word};

/// Default number of words [`max_factors_exhaustive`] may scan.
pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 1 << 18;

#[derive(Debug, Clone)]
struct State {
    len: usize,
    link: Option<usize>,
    next: Vec<(Symbol, usize)>,
}

impl State {
    fn go(&self, c: Symbol) -> Option<usize> {
        self.next.iter().find(|(a, _)| *a == c).map(|(_, t)| *t)
    }

    fn set(&mut self, c: Symbol, t: usize) {
        match self.next.iter_mut().find(|(a, _)| *a == c) {
            Some(slot) => slot.1 = t,
            None => self.next.push((c, t)),
        }
    }
}

/// Online suffix automaton of a growing word.
#[derive(Debug, Clone)]
pub struct SuffixAutomaton {
    states: Vec<State>,
    last: usize,
    distinct: u64,
}

impl Default for SuffixAutomaton {
    fn default() -> Self {
        Self::new()
    }
}

impl SuffixAutomaton {
    pub fn new() -> Self {
        SuffixAutomaton {
            states: vec![State {
                len: 0,
                link: None,
                next: Vec::new(),
            }],
            last: 0,
            distinct: 0,
        }
    }

    pub fn push(&mut self, c: Symbol) {
        let cur = self.states.len();
        self.states.push(State {
            len: self.states[self.last].len + 1,
            link: None,
            next: Vec::new(),
        });
        let mut p = Some(self.last);
        while let Some(pi) = p {
            if self.states[pi].go(c).is_some() {
                break;
            }
            self.states[pi].set(c, cur);
            p = self.states[pi].link;
        }
        match p {
            None => self.states[cur].link = Some(0),
            Some(pi) => {
                let q = self.states[pi].go(c).unwrap();
                if self.states[pi].len + 1 == self.states[q].len {
                    self.states[cur].link = Some(q);
                } else {
                    let clone = self.states.len();
                    let mut cloned = self.states[q].clone();
                    cloned.len = self.states[pi].len + 1;
                    self.states.push(cloned);
                    let mut p = Some(pi);
                    while let Some(pj) = p {
                        if self.states[pj].go(c) != Some(q) {
                            break;
                        }
                        self.states[pj].set(c, clone);
                        p = self.states[pj].link;
                    }
                    self.states[q].link = Some(clone);
                    self.states[cur].link = Some(clone);
                }
            }
        }
        self.last = cur;
        // splitting q into q and its clone leaves the total unchanged
        let link_len = self.states[self.states[cur].link.unwrap()].len;
        self.distinct += (self.states[cur].len - link_len) as u64;
    }

    /// Distinct nonempty factors of the word pushed so far.
    pub fn distinct_factors(&self) -> u64 {
        self.distinct
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }
}

/// `f_w`, the number of distinct nonempty factors.
pub fn distinct_factors(w: &Word) -> Result<u64> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut sam = SuffixAutomaton::new();
    for &c in w.iter() {
        sam.push(c);
    }
    Ok(sam.distinct_factors())
}

/// `f` of every prefix: entry `i` counts the factors of `w[..=i]`.
pub fn prefix_factor_counts(w: &Word) -> Vec<u64> {
    let mut sam = SuffixAutomaton::new();
    w.iter()
        .map(|&c| {
            sam.push(c);
            sam.distinct_factors()
        })
        .collect()
}

/// `n(n+1)/2`: factor occurrences of a length-`n` word, repeats included.
pub fn factor_occurrences(n: u64) -> u64 {
    n * (n + 1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorStats {
    pub length: usize,
    pub distinct: u64,
    pub alphabet_size: usize,
}

impl FactorStats {
    pub fn of(w: &Word, alphabet_size: usize) -> Result<Self> {
        Ok(FactorStats {
            length: w.len(),
            distinct: distinct_factors(w)?,
            alphabet_size,
        })
    }
}

/// Best word found by a scan; merging is associative and commutative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMax {
    pub distinct: u64,
    /// Lexicographically least word attaining `distinct`.
    pub witness: Word,
}

impl FactorMax {
    pub fn merge(self, other: FactorMax) -> FactorMax {
        match self.distinct.cmp(&other.distinct) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal if self.witness <= other.witness => self,
            std::cmp::Ordering::Equal => other,
        }
    }
}

fn word_count(n: usize, k: usize, limit: u64) -> Result<u64> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    match (k as u64).checked_pow(n as u32) {
        Some(c) if c <= limit => Ok(c),
        _ => Err(Error::GuardExceeded {
            what: "exhaustive factor scan",
            required: format!("{k}^{n} words"),
            limit,
        }),
    }
}

/// Scans words of length `n` over `k` letters whose rank (as base-`k`
/// numbers) lies in `ranks`. Partitions of the rank space merge to the
/// result of one full scan.
pub fn scan_factor_max(n: usize, k: usize, ranks: Range<u64>) -> Option<FactorMax> {
    let mut best: Option<FactorMax> = None;
    let mut digits = vec![0 as Symbol; n];
    let mut r = ranks.start;
    for slot in digits.iter_mut().rev() {
        *slot = (r % k as u64) as Symbol;
        r /= k as u64;
    }
    for _ in ranks {
        let mut sam = SuffixAutomaton::new();
        for &c in &digits {
            sam.push(c);
        }
        let d = sam.distinct_factors();
        // ranks ascend lexicographically, so only a strict gain replaces
        if best.as_ref().is_none_or(|b| d > b.distinct) {
            best = Some(FactorMax {
                distinct: d,
                witness: Word::from(digits.as_slice()),
            });
        }
        for slot in digits.iter_mut().rev() {
            *slot += 1;
            if (*slot as usize) < k {
                break;
            }
            *slot = 0;
        }
    }
    best
}

/// `f(n)` by exhaustive search, with the lexicographically least witness.
pub fn max_factors_exhaustive(n: usize, k: usize, limit: u64) -> Result<FactorMax> {
    let total = word_count(n, k, limit)?;
    Ok(scan_factor_max(n, k, 0..total).expect("at least one word"))
}

fn check_regime(n: u64, k: u64) -> Result<()> {
    if k < 2 || n <= k {
        return Err(Error::InvalidParameter(format!(
            "need n > k >= 2, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Largest `r` with `r + k^r <= n`.
pub fn repetition_depth(n: u64, k: u64) -> Result<u64> {
    check_regime(n, k)?;
    let mut t = 0;
    while let Some(p) = k.checked_pow(t as u32 + 1) {
        if t + 1 + p > n {
            break;
        }
        t += 1;
    }
    Ok(t)
}

/// Lower bound on repeated factors of any length-`n` word:
/// `Σ_{r=1..t} (n - r + 1 - k^r) = (n+1)t - t(t+1)/2 - k(k^t - 1)/(k - 1)`.
pub fn repeated_factor_lower_bound(n: u64, k: u64) -> Result<u64> {
    let t = repetition_depth(n, k)?;
    let kt = k.pow(t as u32);
    Ok((n + 1) * t - t * (t + 1) / 2 - k * (kt - 1) / (k - 1))
}

/// `n(n+1)/2` minus the repeated-factor bound.
pub fn factor_upper_bound(n: u64, k: u64) -> Result<u64> {
    Ok(factor_occurrences(n) - repeated_factor_lower_bound(n, k)?)
}

/// Smallest `m` with `n <= k^m`, i.e. `k^(m-1) < n <= k^m`.
pub fn witness_span(n: u64, k: u64) -> Result<u32> {
    check_regime(n, k)?;
    let mut m = 1u32;
    while k.checked_pow(m).is_some_and(|p| p < n) {
        m += 1;
    }
    Ok(m)
}

/// `(n-m+1)(n-m+2)/2`
pub fn witness_bound(n: u64, m: u32) -> u64 {
    let d = n - m as u64;
    (d + 1) * (d + 2) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorWitness {
    pub word: Word,
    pub span: u32,
    pub distinct: u64,
    pub bound: u64,
}

/// Prefix of length `n` of the least de Bruijn word of span `m`, where
/// `k^(m-1) < n <= k^m`. Its factors of length `>= m` are pairwise distinct,
/// hence `f_w >= (n-m+1)(n-m+2)/2`.
pub fn debruijn_factor_witness(n: usize, k: usize) -> Result<FactorWitness> {
    let m = witness_span(n as u64, k as u64)?;
    let db = least_debruijn_word(k, m)?;
    let word = Word::from(&db[..n]);
    let distinct = distinct_factors(&word)?;
    Ok(FactorWitness {
        word,
        span: m,
        distinct,
        bound: witness_bound(n as u64, m),
    })
}

/// `(n, span, f_w, bound)` for the witness of every `n` in `k+1..=max_n`.
/// One de Bruijn word and one automaton pass per span.
pub fn debruijn_factor_witnesses(max_n: usize, k: usize) -> Result<Vec<(usize, u32, u64, u64)>> {
    let mut rows = Vec::new();
    if max_n <= k {
        return Ok(rows);
    }
    let top = witness_span(max_n as u64, k as u64)?;
    for m in 1..=top {
        let lo = if m == 1 { k + 1 } else { k.pow(m - 1) + 1 }.max(k + 1);
        let hi = k.pow(m).min(max_n);
        if lo > hi {
            continue;
        }
        let db = least_debruijn_word(k, m)?;
        let counts = prefix_factor_counts(&Word::from(&db[..hi]));
        for n in lo..=hi {
            rows.push((n, m, counts[n - 1], witness_bound(n as u64, m)));
        }
    }
    Ok(rows)
}
