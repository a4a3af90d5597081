//! The extended Burrows-Wheeler transform and its inverse.
//!
//! [`transform`] maps a multiset of necklaces to the last column of the
//! sorted table of their rotations. [`inverse_transform`] recovers the
//! multiset from the cycles of the [`StandardPermutation`] of a word.
//! The full rotation table ([`RotationTable`]) is only ever built on demand,
//! behind a size guard, since its width is an lcm.

use std::ops::Range;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::words::{self, Necklace, Symbol, Word};

/// Default cell budget for [`build_table`].
pub const DEFAULT_TABLE_CELLS: u64 = 1 << 20;

/// Multiset of necklaces, sorted by Lyndon word with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NecklaceMultiset {
    entries: Vec<(Necklace, usize)>,
}

impl NecklaceMultiset {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a multiset from `(necklace, multiplicity)` pairs in any order.
    /// Repeated necklaces have their multiplicities added.
    pub fn new<I: IntoIterator<Item = (Necklace, usize)>>(entries: I) -> Result<Self> {
        let mut entries: Vec<(Necklace, usize)> = entries.into_iter().collect();
        if let Some((nk, _)) = entries.iter().find(|(_, m)| *m == 0) {
            return Err(Error::InvalidParameter(format!(
                "necklace {nk} has multiplicity 0"
            )));
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Necklace, usize)> = Vec::with_capacity(entries.len());
        for (nk, m) in entries {
            match merged.last_mut() {
                Some((last, count)) if *last == nk => *count += m,
                _ => merged.push((nk, m)),
            }
        }
        Ok(NecklaceMultiset { entries: merged })
    }

    pub fn from_necklaces<I: IntoIterator<Item = Necklace>>(necklaces: I) -> Self {
        Self::new(necklaces.into_iter().map(|nk| (nk, 1))).expect("multiplicities are 1")
    }

    pub fn entries(&self) -> &[(Necklace, usize)] {
        &self.entries
    }

    /// Number of distinct necklaces.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    /// Number of necklaces counted with multiplicity.
    pub fn count(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `n = Σ multiplicity · |necklace|`
    pub fn total_length(&self) -> usize {
        self.entries.iter().map(|(nk, m)| nk.len() * m).sum()
    }

    /// True if every multiplicity is 1.
    pub fn is_set(&self) -> bool {
        self.entries.iter().all(|(_, m)| *m == 1)
    }

    /// Necklaces repeated according to multiplicity, ascending.
    pub fn iter_with_repeats(&self) -> impl Iterator<Item = &Necklace> + '_ {
        self.entries
            .iter()
            .flat_map(|(nk, m)| std::iter::repeat_n(nk, *m))
    }

    /// Lyndon words concatenated in ascending order, with repeats.
    pub fn concatenation(&self) -> Word {
        Word::concat(self.iter_with_repeats().map(Necklace::lyndon))
    }
}

/// (necklace word, rotation offset) for every row of the rotation table,
/// sorted by the ω-order of the rotations.
fn sorted_rows(m: &NecklaceMultiset) -> Vec<(&Word, usize)> {
    let mut rows: Vec<(&Word, usize)> = Vec::with_capacity(m.total_length());
    for nk in m.iter_with_repeats() {
        rows.extend((0..nk.len()).map(|off| (nk.lyndon(), off)));
    }
    rows.sort_by(|(u, i), (v, j)| words::omega_compare_slices(u, *i, v, *j));
    rows
}

/// The extended transform: last letters of all rotations of all necklaces,
/// read in the ω-order of the rotations.
pub fn transform(m: &NecklaceMultiset) -> Word {
    sorted_rows(m)
        .into_iter()
        .map(|(u, off)| u[(off + u.len() - 1) % u.len()])
        .collect::<Vec<_>>()
        .into()
}

/// Roots of the rows of the rotation table `T(M)`, top to bottom.
pub fn sorted_rotations(m: &NecklaceMultiset) -> Vec<Word> {
    sorted_rows(m)
        .into_iter()
        .map(|(u, off)| u.rotation(off))
        .collect()
}

/// The part of the standard permutation belonging to one letter: the
/// order-preserving partial injection `dom[j] ↦ ran[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterMap {
    pub letter: Symbol,
    /// Positions of the letter in the sorted rearrangement `f(w)`.
    pub dom: Range<usize>,
    /// Positions of the letter in `w`, increasing.
    pub ran: Vec<usize>,
}

impl LetterMap {
    pub fn apply(&self, i: usize) -> Option<usize> {
        self.dom.contains(&i).then(|| self.ran[i - self.dom.start])
    }
}

/// Standard permutation of a word, kept as the union of its per-letter maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardPermutation {
    image: Vec<usize>,
    maps: Vec<LetterMap>,
    sorted: Vec<Symbol>,
}

pub fn standard_permutation(w: &Word) -> Result<StandardPermutation> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut positions: Vec<Vec<usize>> = vec![Vec::new(); 256];
    for (i, &c) in w.iter().enumerate() {
        positions[c as usize].push(i);
    }
    let mut image = vec![0usize; w.len()];
    let mut sorted = Vec::with_capacity(w.len());
    let mut maps = Vec::new();
    let mut start = 0;
    for (letter, ran) in positions.into_iter().enumerate() {
        if ran.is_empty() {
            continue;
        }
        let dom = start..start + ran.len();
        for (j, &r) in ran.iter().enumerate() {
            image[start + j] = r;
        }
        sorted.extend(std::iter::repeat_n(letter as Symbol, ran.len()));
        start = dom.end;
        maps.push(LetterMap {
            letter: letter as Symbol,
            dom,
            ran,
        });
    }
    Ok(StandardPermutation {
        image,
        maps,
        sorted,
    })
}

impl StandardPermutation {
    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `image[i] = i·π`
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// Letter maps in ascending letter order; only letters of `c(w)` appear.
    pub fn letter_maps(&self) -> &[LetterMap] {
        &self.maps
    }

    pub fn letter_map(&self, a: Symbol) -> Option<&LetterMap> {
        self.maps
            .binary_search_by_key(&a, |m| m.letter)
            .ok()
            .map(|k| &self.maps[k])
    }

    /// The letter `c` with `i ∈ dom π_c`.
    pub fn letter_at(&self, i: usize) -> Symbol {
        self.sorted[i]
    }

    /// The rearrangement `f(w)`.
    pub fn sorted_word(&self) -> Word {
        Word::new(self.sorted.clone())
    }

    /// `i·π_a`, if defined.
    pub fn partial(&self, a: Symbol, i: usize) -> Option<usize> {
        (self.letter_at(i) == a).then(|| self.image[i])
    }

    /// `i·π_u`: the letter maps composed left to right along `u`.
    pub fn word_action(&self, i: usize, u: &[Symbol]) -> Option<usize> {
        u.iter().try_fold(i, |pos, &a| self.partial(a, pos))
    }

    /// Disjoint cycles, ordered by least element; each starts at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut cycles = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.image[i];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// The word read along a cycle: each element replaced by its letter.
    pub fn cycle_word(&self, cycle: &[usize]) -> Word {
        cycle
            .iter()
            .map(|&i| self.letter_at(i))
            .collect::<Vec<_>>()
            .into()
    }
}

/// `i·π_u` for the standard permutation `p`; `None` if undefined.
pub fn word_action(p: &StandardPermutation, i: usize, u: &Word) -> Option<usize> {
    p.word_action(i, u)
}

/// The inverse transform: one necklace per cycle of the standard permutation.
pub fn inverse_transform(w: &Word) -> NecklaceMultiset {
    if w.is_empty() {
        return NecklaceMultiset::empty();
    }
    let p = standard_permutation(w).expect("nonempty");
    NecklaceMultiset::from_necklaces(p.cycles().iter().map(|c| {
        // cycle words are primitive: a proper power would revisit its start early
        words::lyndon_representative(&p.cycle_word(c)).expect("cycle word is primitive")
    }))
}

/// Table of rotations: every row has width `l`, the lcm of root lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationTable {
    rows: Vec<Word>,
    width: usize,
}

impl RotationTable {
    /// Builds `T(M)` directly: powers of every rotation to width `l`, sorted.
    pub fn from_multiset(m: &NecklaceMultiset, max_cells: u64) -> Result<Self> {
        let width = guarded_width(
            m.total_length(),
            m.entries().iter().map(|(nk, _)| nk.len()),
            max_cells,
        )?;
        let mut rows: Vec<Word> = m
            .iter_with_repeats()
            .flat_map(|nk| (0..nk.len()).map(move |i| nk.lyndon().rotation(i)))
            .map(|r| r.pow(width / r.len()))
            .collect();
        rows.sort();
        Ok(RotationTable { rows, width })
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entry(&self, i: usize, j: usize) -> Symbol {
        self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Word {
        self.rows.iter().map(|r| r[j]).collect::<Vec<_>>().into()
    }

    pub fn last_column(&self) -> Word {
        if self.width == 0 {
            Word::empty()
        } else {
            self.column(self.width - 1)
        }
    }
}

fn guarded_width<I: IntoIterator<Item = usize>>(
    rows: usize,
    lengths: I,
    max_cells: u64,
) -> Result<usize> {
    let lcm = lengths.into_iter().fold(BigUint::one(), |acc, len| {
        let len = BigUint::from(len);
        let g = gcd_big(&acc, &len);
        acc / g * len
    });
    let cells = &lcm * BigUint::from(rows);
    if rows == 0 {
        return Ok(0);
    }
    if cells > BigUint::from(max_cells) {
        return Err(Error::TableTooLarge {
            rows,
            lcm: lcm.to_string(),
            limit: max_cells,
        });
    }
    Ok(lcm.to_usize().expect("bounded by guard"))
}

fn gcd_big(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = (a.clone(), b.clone());
    while b != BigUint::from(0u8) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// `T(w)`: row `i` is the unique width-`l` word `u` with `i·π_u` defined,
/// `l` being the lcm of the cycle lengths of `π(w)`.
pub fn build_table(w: &Word, max_cells: u64) -> Result<RotationTable> {
    if w.is_empty() {
        return Ok(RotationTable {
            rows: Vec::new(),
            width: 0,
        });
    }
    let p = standard_permutation(w)?;
    let width = guarded_width(w.len(), p.cycles().iter().map(Vec::len), max_cells)?;
    let rows = (0..p.len())
        .map(|start| {
            let mut i = start;
            let mut row = Vec::with_capacity(width);
            for _ in 0..width {
                row.push(p.letter_at(i));
                i = p.apply(i);
            }
            Word::new(row)
        })
        .collect();
    Ok(RotationTable { rows, width })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{conjugate_shift, lyndon_representative, root};
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ms(list: &[&str]) -> NecklaceMultiset {
        NecklaceMultiset::from_necklaces(list.iter().map(|s| Necklace::from_lyndon(w(s)).unwrap()))
    }

    #[test]
    fn transform_examples() {
        assert_eq!(transform(&ms(&["aab", "ab", "abb"])), w("babbaaba"));
        assert_eq!(transform(&NecklaceMultiset::empty()), Word::empty());
        assert_eq!(transform(&ms(&["ab"])), w("ba"));
        assert_eq!(transform(&ms(&["ab", "ab"])), w("bbaa"));
    }

    #[test]
    fn standard_permutation_examples() {
        let p = standard_permutation(&w("babbaaba")).unwrap();
        assert_eq!(p.image(), &[1, 4, 5, 7, 0, 2, 3, 6]);
        assert_eq!(p.cycles(), vec![vec![0, 1, 4], vec![2, 5], vec![3, 7, 6]]);
        assert_eq!(p.letter_map(0).unwrap().dom, 0..4);
        assert_eq!(p.letter_map(1).unwrap().dom, 4..8);
        assert_eq!(p.sorted_word(), w("aaaabbbb"));

        let p = standard_permutation(&w("ab")).unwrap();
        assert_eq!(p.image(), &[0, 1]);
        let p = standard_permutation(&w("ba")).unwrap();
        assert_eq!(p.image(), &[1, 0]);
        assert_eq!(p.letter_map(0).unwrap().ran, vec![1]);

        assert_eq!(standard_permutation(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_transform(&w("babbaaba")), ms(&["aab", "ab", "abb"]));
        assert_eq!(inverse_transform(&Word::empty()), NecklaceMultiset::empty());
        assert_eq!(
            inverse_transform(&w("ab").pow(16)),
            ms(&["a", "aaaab", "aaabb", "aabab", "aabbb", "ababb", "abbbb", "b"])
        );
        let twice = inverse_transform(&w("bbaa"));
        assert_eq!(twice.entries().len(), 1);
        assert_eq!(twice.entries()[0].1, 2);
    }

    #[test]
    fn word_action_examples() {
        let p = standard_permutation(&w("babbaaba")).unwrap();
        assert_eq!(word_action(&p, 0, &w("aab")), Some(0));
        assert_eq!(word_action(&p, 5, &Word::empty()), Some(5));
        assert_eq!(word_action(&p, 0, &w("b")), None);
    }

    #[test]
    fn table_examples() {
        let t = build_table(&w("babbaaba"), DEFAULT_TABLE_CELLS).unwrap();
        let rows: Vec<String> = t.rows().iter().map(Word::to_string).collect();
        assert_eq!(
            rows,
            ["aabaab", "abaaba", "ababab", "abbabb", "baabaa", "bababa", "babbab", "bbabba"]
        );
        assert_eq!(t.width(), 6);

        let t = build_table(&w("a"), DEFAULT_TABLE_CELLS).unwrap();
        assert_eq!(t.rows(), &[w("a")]);
        let t = build_table(&w("ba"), DEFAULT_TABLE_CELLS).unwrap();
        assert_eq!(t.rows(), &[w("ab"), w("ba")]);
    }

    #[test]
    fn table_guard_names_lcm() {
        // cycles of lengths 3 and 2 give width 6 over 8 rows
        match build_table(&w("babbaaba"), 47) {
            Err(Error::TableTooLarge {
                rows: 8,
                lcm,
                limit: 47,
            }) => assert_eq!(lcm, "6"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(build_table(&w("babbaaba"), 48).is_ok());
    }

    #[test]
    fn table_of_word_equals_table_of_multiset() {
        let m = ms(&["aab", "ab", "abb"]);
        assert_eq!(
            RotationTable::from_multiset(&m, DEFAULT_TABLE_CELLS).unwrap(),
            build_table(&transform(&m), DEFAULT_TABLE_CELLS).unwrap()
        );
    }

    #[test]
    fn multiset_merges_repeats() {
        let a = Necklace::from_lyndon(w("ab")).unwrap();
        let b = Necklace::from_lyndon(w("a")).unwrap();
        let m = NecklaceMultiset::new([(a.clone(), 1), (b.clone(), 2), (a.clone(), 3)]).unwrap();
        assert_eq!(m.entries(), &[(b, 2), (a, 4)]);
        assert_eq!(m.total_length(), 10);
        assert_eq!(m.count(), 6);
        assert!(!m.is_set());
        assert!(NecklaceMultiset::new([(Necklace::from_lyndon(w("a")).unwrap(), 0)]).is_err());
    }

    fn all_words(k: u8, n: usize) -> impl Iterator<Item = Word> {
        let total = (k as usize).pow(n as u32);
        (0..total).map(move |mut x| {
            let mut v = vec![0u8; n];
            for slot in v.iter_mut().rev() {
                *slot = (x % k as usize) as u8;
                x /= k as usize;
            }
            Word::new(v)
        })
    }

    #[test]
    fn round_trip_words_exhaustive_small() {
        for n in 0..=10 {
            for x in all_words(2, n) {
                assert_eq!(transform(&inverse_transform(&x)), x);
            }
        }
        for n in 0..=6 {
            for x in all_words(3, n) {
                assert_eq!(transform(&inverse_transform(&x)), x);
            }
        }
    }

    pub(crate) fn multiset_strategy() -> impl Strategy<Value = NecklaceMultiset> {
        let entry = (2u8..=3)
            .prop_flat_map(|k| prop::collection::vec(0..k, 1..=8))
            .prop_filter_map("primitive", |v| lyndon_representative(&Word::new(v)).ok());
        prop::collection::vec((entry, 1usize..=2), 0..=5)
            .prop_map(|e| NecklaceMultiset::new(e).unwrap())
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        (1u8..=3).prop_flat_map(|k| prop::collection::vec(0..k, 1..=14).prop_map(Word::new))
    }

    proptest! {
        #[test]
        fn round_trip_multisets(m in multiset_strategy()) {
            prop_assert_eq!(inverse_transform(&transform(&m)), m);
        }

        #[test]
        fn standard_permutation_partitions(x in word_strategy()) {
            let p = standard_permutation(&x).unwrap();
            let mut hit = vec![0u8; x.len()];
            let mut next_dom = 0;
            for map in p.letter_maps() {
                prop_assert_eq!(map.dom.start, next_dom);
                next_dom = map.dom.end;
                prop_assert_eq!(map.dom.len(), x.count(map.letter));
                prop_assert!(map.ran.windows(2).all(|r| r[0] < r[1]));
                for &r in &map.ran {
                    prop_assert_eq!(x[r], map.letter);
                    hit[r] += 1;
                }
            }
            prop_assert_eq!(next_dom, x.len());
            prop_assert!(hit.iter().all(|&h| h == 1));
        }

        // rows under π are the conjugation map on rows
        #[test]
        fn pi_is_conjugation_on_rows(m in multiset_strategy()) {
            prop_assume!(!m.is_empty());
            let t = RotationTable::from_multiset(&m, DEFAULT_TABLE_CELLS).unwrap();
            let bw = transform(&m);
            let p = standard_permutation(&bw).unwrap();
            prop_assert_eq!(&build_table(&bw, DEFAULT_TABLE_CELLS).unwrap(), &t);
            for i in 0..p.len() {
                prop_assert_eq!(&conjugate_shift(&t.rows()[i]).unwrap(), &t.rows()[p.apply(i)]);
            }
        }

        #[test]
        fn pi_shifts_columns(x in word_strategy()) {
            let t = build_table(&x, DEFAULT_TABLE_CELLS).unwrap();
            let p = standard_permutation(&x).unwrap();
            let l = t.width();
            for i in 0..x.len() {
                for j in 0..l {
                    prop_assert_eq!(t.entry(i, j), t.entry(p.apply(i), (j + l - 1) % l));
                }
            }
        }

        #[test]
        fn table_of_word_properties(x in word_strategy()) {
            let t = build_table(&x, DEFAULT_TABLE_CELLS).unwrap();
            let p = standard_permutation(&x).unwrap();
            let mut cycle_len = vec![0; x.len()];
            for c in p.cycles() {
                for &i in &c {
                    cycle_len[i] = c.len();
                }
            }
            // (i) root length is the cycle length
            for (i, row) in t.rows().iter().enumerate() {
                prop_assert_eq!(root(row).unwrap().len(), cycle_len[i]);
            }
            // (ii) conjugates of a root appear equally often
            let roots: Vec<Word> = t.rows().iter().map(|r| root(r).unwrap()).collect();
            for r in &roots {
                let mult = roots.iter().filter(|s| *s == r).count();
                for j in 1..r.len() {
                    let c = r.rotation(j);
                    prop_assert_eq!(roots.iter().filter(|s| **s == c).count(), mult);
                }
            }
            // (iii) sorted, (iv) last column is the word
            prop_assert!(t.rows().windows(2).all(|r| r[0] <= r[1]));
            prop_assert_eq!(t.last_column(), x);
        }

        #[test]
        fn lyndon_rows_in_lex_order(m in multiset_strategy()) {
            let rows = sorted_rotations(&m);
            let lyndon_rows: Vec<&Word> = rows
                .iter()
                .filter(|r| lyndon_representative(r).unwrap().lyndon() == *r)
                .collect();
            prop_assert!(lyndon_rows.windows(2).all(|p| p[0] <= p[1]));
            // a row with Lyndon root lies below the root of every later distinct row
            let t = RotationTable::from_multiset(&m, DEFAULT_TABLE_CELLS).unwrap();
            for (i, u) in t.rows().iter().enumerate() {
                let ru = root(u).unwrap();
                if lyndon_representative(&ru).unwrap().lyndon() != &ru {
                    continue;
                }
                for v in t.rows()[i + 1..].iter().filter(|v| *v != u) {
                    prop_assert!(u < &root(v).unwrap(), "{} {}", u, v);
                }
            }
        }
    }
}
