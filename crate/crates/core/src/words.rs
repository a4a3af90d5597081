//! Alphabets, words and necklaces.
//!
//! Symbols are stored as contiguous codes `0..k`; the code order is the
//! letter order. An [`Alphabet`] only matters when words are read from or
//! written to text. Without one, codes render as `a`, `b`, `c`, ...

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter code. Alphabets have at most 256 letters.
pub type Symbol = u8;

/// Ordered alphabet: code `i` is rendered as `chars[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    chars: Vec<char>,
    codes: HashMap<char, Symbol>,
}

impl Alphabet {
    /// Alphabet whose letter order is the order of `chars`.
    pub fn new<I: IntoIterator<Item = char>>(chars: I) -> Result<Self> {
        let chars: Vec<char> = chars.into_iter().collect();
        if chars.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if chars.len() > 256 {
            return Err(Error::AlphabetTooLarge(chars.len()));
        }
        let mut codes = HashMap::with_capacity(chars.len());
        for (i, &c) in chars.iter().enumerate() {
            if codes.insert(c, i as Symbol).is_some() {
                return Err(Error::DuplicateSymbol(c));
            }
        }
        Ok(Alphabet { chars, codes })
    }

    /// `a < b < c < ...` with `k` letters (`k <= 26`).
    pub fn latin(k: usize) -> Result<Self> {
        if k > 26 {
            return Err(Error::InvalidParameter(format!(
                "latin alphabet has 26 letters, {k} requested"
            )));
        }
        Self::new((0..k as u8).map(|c| (b'a' + c) as char))
    }

    /// The sorted set of characters occurring in `text`, ordered by code point.
    pub fn inferred(text: &str) -> Result<Self> {
        let mut chars: Vec<char> = text.chars().collect();
        chars.sort_unstable();
        chars.dedup();
        Self::new(chars)
    }

    pub fn size(&self) -> usize {
        self.chars.len()
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn code(&self, c: char) -> Option<Symbol> {
        self.codes.get(&c).copied()
    }

    pub fn char_of(&self, code: Symbol) -> Option<char> {
        self.chars.get(code as usize).copied()
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        text.chars()
            .enumerate()
            .map(|(position, ch)| {
                self.code(ch)
                    .ok_or(Error::UnknownCharacter { ch, position })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::new)
    }

    pub fn render(&self, w: &Word) -> Result<String> {
        w.iter()
            .map(|&code| {
                self.char_of(code).ok_or(Error::CodeOutOfRange {
                    code,
                    size: self.size(),
                })
            })
            .collect()
    }

    /// Checks that every symbol of `w` is a code of this alphabet.
    pub fn check(&self, w: &Word) -> Result<()> {
        match w.iter().find(|&&c| c as usize >= self.size()) {
            Some(&code) => Err(Error::CodeOutOfRange {
                code,
                size: self.size(),
            }),
            None => Ok(()),
        }
    }
}

/// A finite word over symbol codes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }

    /// `|w|_a`
    pub fn count(&self, a: Symbol) -> usize {
        self.0.iter().filter(|&&c| c == a).count()
    }

    /// The content `c(w)`, ascending.
    pub fn content(&self) -> Vec<Symbol> {
        let mut seen = [false; 256];
        for &c in &self.0 {
            seen[c as usize] = true;
        }
        (0..=255u8).filter(|&c| seen[c as usize]).collect()
    }

    /// The rotation starting at position `i`.
    pub fn rotation(&self, i: usize) -> Word {
        let i = i % self.len().max(1);
        let mut out = Vec::with_capacity(self.len());
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&self.0[..i]);
        Word(out)
    }

    pub fn pow(&self, t: usize) -> Word {
        Word(self.0.repeat(t))
    }

    pub fn concat<'a, I: IntoIterator<Item = &'a Word>>(parts: I) -> Word {
        Word(
            parts
                .into_iter()
                .flat_map(|w| w.0.iter().copied())
                .collect(),
        )
    }

    /// Prefix of `w^ω` of length `len`.
    pub fn power_prefix(&self, len: usize) -> Word {
        assert!(!self.is_empty() || len == 0);
        Word((0..len).map(|i| self.0[i % self.len()]).collect())
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

/// Parses lowercase latin letters, `a` being code 0.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(position, ch)| match ch {
                'a'..='z' => Ok(ch as u8 - b'a'),
                _ => Err(Error::UnknownCharacter { ch, position }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.0 {
            if c < 26 {
                write!(f, "{}", (b'a' + c) as char)?;
            } else {
                write!(f, "<{c}>")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

/// Conjugacy class of a primitive word, held by its Lyndon word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Necklace {
    lyndon: Word,
}

impl Necklace {
    /// Accepts `w` only if it already is a Lyndon word.
    pub fn from_lyndon(w: Word) -> Result<Self> {
        let necklace = lyndon_representative(&w)?;
        if necklace.lyndon != w {
            return Err(Error::NotLyndon {
                word: w,
                lyndon: necklace.lyndon,
            });
        }
        Ok(necklace)
    }

    pub fn lyndon(&self) -> &Word {
        &self.lyndon
    }

    pub fn into_lyndon(self) -> Word {
        self.lyndon
    }

    pub fn len(&self) -> usize {
        self.lyndon.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The words of the necklace in lexicographic order.
    pub fn words(&self) -> Vec<Word> {
        let mut words: Vec<Word> = (0..self.len()).map(|i| self.lyndon.rotation(i)).collect();
        words.sort();
        words
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.lyndon.fmt(f)
    }
}

fn nonempty(w: &Word) -> Result<()> {
    if w.is_empty() {
        Err(Error::EmptyWord)
    } else {
        Ok(())
    }
}

/// `au ↦ ua`.
pub fn conjugate_shift(w: &Word) -> Result<Word> {
    nonempty(w)?;
    Ok(w.rotation(1))
}

/// Prefix function: `table[i]` is the length of the longest proper border
/// of `s[..=i]`.
pub(crate) fn border_table(s: &[Symbol]) -> Vec<usize> {
    let mut table = vec![0usize; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = table[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        table[i] = k;
    }
    table
}

fn root_len(s: &[Symbol]) -> usize {
    let n = s.len();
    let period = n - border_table(s)[n - 1];
    if n.is_multiple_of(period) {
        period
    } else {
        n
    }
}

/// Shortest `r` with `w = r^t`.
pub fn root(w: &Word) -> Result<Word> {
    nonempty(w)?;
    Ok(Word::from(&w[..root_len(w)]))
}

pub fn is_primitive(w: &Word) -> Result<bool> {
    nonempty(w)?;
    Ok(root_len(w) == w.len())
}

/// Start index of the lexicographically least rotation (Booth).
pub fn least_rotation(s: &[Symbol]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = fail[j - k - 1];
        while i != -1 && sj != s[(k + i as usize + 1) % n] {
            if sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        let next = s[((k as isize + i + 1) as usize) % n];
        if i == -1 && sj != next {
            if sj < next {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k
}

/// The necklace of a primitive word.
pub fn lyndon_representative(w: &Word) -> Result<Necklace> {
    nonempty(w)?;
    let r = root_len(w);
    if r != w.len() {
        return Err(Error::NotPrimitive {
            root: Word::from(&w[..r]),
        });
    }
    Ok(Necklace {
        lyndon: w.rotation(least_rotation(w)),
    })
}

pub fn has_border(w: &Word) -> Result<bool> {
    nonempty(w)?;
    Ok(border_table(w)[w.len() - 1] > 0)
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Compares `u^ω` with `v^ω` using prefixes of length
/// `|u| + |v| - gcd(|u|, |v|)`, which decides the order (Fine and Wilf).
pub fn omega_compare(u: &Word, v: &Word) -> Result<Ordering> {
    nonempty(u)?;
    nonempty(v)?;
    Ok(omega_compare_slices(u, 0, v, 0))
}

/// ω-order of the rotation of `u` at `i` against the rotation of `v` at `j`.
pub(crate) fn omega_compare_slices(u: &[Symbol], i: usize, v: &[Symbol], j: usize) -> Ordering {
    let (m, n) = (u.len(), v.len());
    let bound = m + n - gcd(m, n);
    let (mut p, mut q) = (i % m, j % n);
    for _ in 0..bound {
        match u[p].cmp(&v[q]) {
            Ordering::Equal => {}
            other => return other,
        }
        p += 1;
        if p == m {
            p = 0;
        }
        q += 1;
        if q == n {
            q = 0;
        }
    }
    Ordering::Equal
}

/// The `|w|` length-`m` factors of `w^ω` starting at positions `0..|w|`.
pub fn cyclic_factors(w: &Word, m: usize) -> Result<Vec<Word>> {
    if m == 0 || m > w.len() {
        return Err(Error::FactorLength { m, len: w.len() });
    }
    let n = w.len();
    Ok((0..n)
        .map(|i| Word::new((i..i + m).map(|p| w[p % n]).collect()))
        .collect())
}
