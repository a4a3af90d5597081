//! de Bruijn sets and words through the inverse transform.
//!
//! Alphabets here are `0 < 1 < ⋯ < k-1`. `G` is the set of the `k!` words
//! that list every letter once, and `Γ(k,n) = G^(k^(n-1))` is exactly the set
//! of transforms of de Bruijn sets of span `n`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::ebwt::{inverse_transform, NecklaceMultiset};
use crate::error::{Error, Result};
use crate::words::{Symbol, Word};

/// Longest de Bruijn word (`k^n`) that generation will build.
pub const MAX_GENERATED_LEN: u64 = 1 << 24;

/// Largest result, in bits, that [`count_debruijn_words`] will compute.
pub const MAX_COUNT_BITS: f64 = (1u64 << 24) as f64;

/// `k^n`, or `None` on overflow.
pub fn checked_power(k: usize, n: u32) -> Option<u64> {
    (k as u64).checked_pow(n)
}

fn check_params(k: usize, n: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {k} < 2")));
    }
    if k > 256 {
        return Err(Error::InvalidParameter(format!("alphabet size {k} > 256")));
    }
    if n < 1 {
        return Err(Error::InvalidParameter("span must be at least 1".into()));
    }
    Ok(())
}

fn generated_len(k: usize, n: u32) -> Result<usize> {
    check_params(k, n)?;
    match checked_power(k, n) {
        Some(len) if len <= MAX_GENERATED_LEN => Ok(len as usize),
        _ => Err(Error::GuardExceeded {
            what: "de Bruijn word length",
            required: format!("{k}^{n}"),
            limit: MAX_GENERATED_LEN,
        }),
    }
}

/// A word of `Γ(k,n)`: `k^(n-1)` blocks of length `k`, each a permutation
/// of the alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaWord {
    word: Word,
    k: usize,
    n: u32,
}

impl GammaWord {
    pub fn new(word: Word, k: usize, n: u32) -> Result<Self> {
        check_params(k, n)?;
        let expected = checked_power(k, n).unwrap_or(u64::MAX);
        if word.len() as u64 != expected {
            return Err(Error::GammaLength {
                len: word.len(),
                k,
                n,
                expected,
            });
        }
        if let Some(index) = word.chunks(k).position(|b| !is_permutation_block(b, k)) {
            return Err(Error::GammaBlock { index });
        }
        Ok(GammaWord { word, k, n })
    }

    /// `α^(k^(n-1))` with `α = 0 1 ⋯ (k-1)`.
    pub fn alpha_power(k: usize, n: u32) -> Result<Self> {
        let len = generated_len(k, n)?;
        let word: Vec<Symbol> = (0..len).map(|i| (i % k) as Symbol).collect();
        Ok(GammaWord {
            word: word.into(),
            k,
            n,
        })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn span(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[Symbol]> + '_ {
        self.word.chunks(self.k)
    }
}

fn is_permutation_block(block: &[Symbol], k: usize) -> bool {
    let mut seen = vec![false; k];
    block.len() == k
        && block.iter().all(|&c| {
            let c = c as usize;
            c < k && !std::mem::replace(&mut seen[c], true)
        })
}

/// `|w| = k^n` and every length-`k` block is a permutation of the alphabet.
pub fn is_gamma(w: &Word, k: usize, n: u32) -> bool {
    GammaWord::new(w.clone(), k, n).is_ok()
}

/// A de Bruijn set of span `n` over `k` letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeBruijnSet {
    necklaces: NecklaceMultiset,
    k: usize,
    n: u32,
}

impl DeBruijnSet {
    pub fn necklaces(&self) -> &NecklaceMultiset {
        &self.necklaces
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn span(&self) -> u32 {
        self.n
    }

    /// Length of the longest necklace; always at least the span.
    pub fn longest(&self) -> usize {
        self.necklaces
            .entries()
            .iter()
            .map(|(nk, _)| nk.len())
            .max()
            .unwrap_or(0)
    }
}

/// True iff the necklaces have total length `k^n` and their length-`n`
/// power prefixes, read from every rotation, are all of `A^n` without repeats.
pub fn is_debruijn_set(m: &NecklaceMultiset, k: usize, n: u32) -> bool {
    if k == 0 || n == 0 {
        return false;
    }
    let total = match checked_power(k, n) {
        Some(t) if t <= MAX_GENERATED_LEN => t as usize,
        _ => return false,
    };
    if m.total_length() != total {
        return false;
    }
    let mut seen = vec![false; total];
    for nk in m.iter_with_repeats() {
        let u = nk.lyndon();
        for start in 0..u.len() {
            let mut code = 0usize;
            for i in 0..n as usize {
                let c = u[(start + i) % u.len()] as usize;
                if c >= k {
                    return false;
                }
                code = code * k + c;
            }
            if std::mem::replace(&mut seen[code], true) {
                return false;
            }
        }
    }
    true
}

/// Inverts a `Γ(k,n)` word into its de Bruijn set.
///
/// Panics if the result is not a de Bruijn set, which would contradict the
/// characterization of `Γ(k,n)`.
pub fn debruijn_set_from_gamma(v: &GammaWord) -> DeBruijnSet {
    let necklaces = inverse_transform(v.word());
    assert!(
        is_debruijn_set(&necklaces, v.k, v.n),
        "inverse of a Gamma word is not a de Bruijn set"
    );
    DeBruijnSet {
        necklaces,
        k: v.k,
        n: v.n,
    }
}

/// The lexicographically least de Bruijn word of span `n`: the Lyndon words
/// of the inverse of `α^(k^(n-1))`, concatenated in ascending order.
pub fn least_debruijn_word(k: usize, n: u32) -> Result<Word> {
    let v = GammaWord::alpha_power(k, n)?;
    Ok(inverse_transform(v.word()).concatenation())
}

/// Lyndon words over `k` letters whose length divides `n`, in lexicographic
/// order, by the successor step: repeat the current word to length `n`, drop
/// trailing maximal letters, increment the last letter.
pub fn lyndon_words_dividing(k: usize, n: u32) -> Result<Vec<Word>> {
    generated_len(k, n)?;
    let n = n as usize;
    let top = (k - 1) as Symbol;
    let mut out = Vec::new();
    let mut cur: Vec<Symbol> = vec![0];
    loop {
        if n.is_multiple_of(cur.len()) {
            out.push(Word::from(cur.as_slice()));
        }
        let len = cur.len();
        while cur.len() < n {
            cur.push(cur[cur.len() - len]);
        }
        while cur.last() == Some(&top) {
            cur.pop();
        }
        match cur.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    Ok(out)
}

/// Concatenation of all Lyndon words of length dividing `n`, computed
/// without the transform.
pub fn lyndon_concatenation_oracle(k: usize, n: u32) -> Result<Word> {
    Ok(Word::concat(&lyndon_words_dividing(k, n)?))
}

fn factorial(k: usize) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Number of de Bruijn words of span `n`: `(k!)^(k^(n-1)) / k^n`.
pub fn count_debruijn_words(k: usize, n: u32) -> Result<BigUint> {
    check_params(k, n)?;
    let exponent = checked_power(k, n - 1);
    let fact = factorial(k);
    let bits = exponent.map(|e| e as f64 * fact.bits() as f64);
    let exponent = match (exponent, bits) {
        (Some(e), Some(b)) if b <= MAX_COUNT_BITS => e as u32,
        _ => {
            return Err(Error::GuardExceeded {
                what: "de Bruijn count",
                required: format!("about ({k}!)^({k}^{}) bits", n - 1),
                limit: MAX_COUNT_BITS as u64,
            })
        }
    };
    let numerator = fact.pow(exponent);
    let denominator = BigUint::from(k).pow(n);
    debug_assert!((&numerator % &denominator).is_zero());
    Ok(numerator / denominator)
}

/// Permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<Symbol>> {
    let mut cur: Vec<Symbol> = (0..k as Symbol).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Every word of `Γ(k,n)`, in lexicographic order.
pub fn enumerate_gamma(k: usize, n: u32, limit: u64) -> Result<GammaIter> {
    check_params(k, n)?;
    let blocks = checked_power(k, n - 1).filter(|&b| b <= MAX_GENERATED_LEN);
    let fact = factorial(k);
    let count = blocks.and_then(|b| {
        // (k!)^b fits below the limit only if b·log2(k!) < 64
        (b as f64 * fact.bits() as f64 <= 64.0).then(|| fact.pow(b as u32))
    });
    match count.as_ref().and_then(ToPrimitive::to_u64) {
        Some(c) if c <= limit => {}
        _ => {
            let required = match &count {
                Some(c) => c.to_string(),
                None => format!("({k}!)^({k}^{})", n - 1),
            };
            return Err(Error::GuardExceeded {
                what: "Gamma enumeration",
                required,
                limit,
            });
        }
    }
    let blocks = blocks.expect("count was computed") as usize;
    Ok(GammaIter {
        perms: permutations(k),
        digits: vec![0; blocks],
        k,
        n,
        done: false,
    })
}

/// Odometer over block choices; the last block varies fastest.
#[derive(Debug, Clone)]
pub struct GammaIter {
    perms: Vec<Vec<Symbol>>,
    digits: Vec<usize>,
    k: usize,
    n: u32,
    done: bool,
}

impl Iterator for GammaIter {
    type Item = GammaWord;

    fn next(&mut self) -> Option<GammaWord> {
        if self.done {
            return None;
        }
        let word: Vec<Symbol> = self
            .digits
            .iter()
            .flat_map(|&d| self.perms[d].iter().copied())
            .collect();
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < self.perms.len() {
                break;
            }
            self.digits[pos] = 0;
        }
        Some(GammaWord {
            word: word.into(),
            k: self.k,
            n: self.n,
        })
    }
}
