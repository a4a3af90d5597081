//! Semigroups attached to necklaces.
//!
//! Two independent constructions of the same semigroup:
//!
//! * `S(u)`: the closure of the letter maps `a'` acting on the necklace of
//!   `u` by `ax ↦ xa` ([`letter_actions`], [`generate_closure`]);
//! * `S_u`: the syntactic semigroup of `{u^m : m ≥ 1}`, taken as the
//!   transition semigroup of its minimal complete automaton
//!   ([`syntactic_semigroup`]).
//!
//! [`letter_induced_isomorphic`] decides whether matching generators by
//! letter extends to an isomorphism. [`semigroup_of_multiset`] builds `S(M)`
//! with one restriction per cycle of the standard permutation.
//!
//! Composition is left to right throughout: `x·(fg) = (x·f)·g`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::ebwt::{standard_permutation, transform, NecklaceMultiset};
use crate::error::{Error, Result};
use crate::words::{self, Necklace, Symbol, Word};

/// Default bound on the number of elements a closure may reach.
pub const DEFAULT_CLOSURE_LIMIT: usize = 1_000_000;

/// An element that can be composed left to right.
pub trait Element: Clone + Eq + Hash {
    /// `self` followed by `other`.
    fn then(&self, other: &Self) -> Self;
}

/// Partial one-to-one map on `0..degree`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialInjection {
    map: Vec<Option<u32>>,
}

impl PartialInjection {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(degree: usize, pairs: I) -> Result<Self> {
        let mut map = vec![None; degree];
        let mut hit = vec![false; degree];
        for (s, t) in pairs {
            if s >= degree || t >= degree {
                return Err(Error::NotInjective(format!(
                    "pair ({s}, {t}) outside degree {degree}"
                )));
            }
            if map[s].is_some() {
                return Err(Error::NotInjective(format!("source {s} repeated")));
            }
            if std::mem::replace(&mut hit[t], true) {
                return Err(Error::NotInjective(format!("target {t} repeated")));
            }
            map[s] = Some(t as u32);
        }
        Ok(PartialInjection { map })
    }

    pub fn identity(degree: usize) -> Self {
        PartialInjection {
            map: (0..degree as u32).map(Some).collect(),
        }
    }

    pub fn empty(degree: usize) -> Self {
        PartialInjection {
            map: vec![None; degree],
        }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> Option<usize> {
        self.map.get(i).copied().flatten().map(|t| t as usize)
    }

    /// The graph as `(source, target)` pairs sorted by source.
    pub fn graph(&self) -> Vec<(usize, usize)> {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(s, t)| t.map(|t| (s, t as usize)))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.map.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    /// Membership in `POI_n`: sorted sources have sorted targets.
    pub fn is_order_preserving(&self) -> bool {
        self.map
            .iter()
            .flatten()
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| w[0] < w[1])
    }

    /// Restriction to the pairs inside `chain`, relabelled by rank in `chain`.
    /// `chain` must be sorted.
    pub fn restrict(&self, chain: &[usize]) -> PartialInjection {
        let mut rank = vec![None; self.degree()];
        for (r, &x) in chain.iter().enumerate() {
            rank[x] = Some(r as u32);
        }
        PartialInjection {
            map: chain
                .iter()
                .map(|&x| self.apply(x).and_then(|t| rank[t]))
                .collect(),
        }
    }
}

impl Element for PartialInjection {
    fn then(&self, other: &Self) -> Self {
        PartialInjection {
            map: self
                .map
                .iter()
                .map(|t| t.and_then(|t| other.map[t as usize]))
                .collect(),
        }
    }
}

impl fmt::Debug for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (s, t)) in self.graph().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}→{t}")?;
        }
        write!(f, "}}/{}", self.degree())
    }
}

/// Total map on automaton states.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Transformation(pub Vec<u32>);

impl Element for Transformation {
    fn then(&self, other: &Self) -> Self {
        Transformation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }
}

/// A finite semigroup given by letter-labelled generators and its right
/// Cayley graph.
#[derive(Clone, Debug)]
pub struct FiniteSemigroup<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    letters: Vec<Symbol>,
    generators: Vec<usize>,
    /// `right[e * g + i]` is element `e` times generator `i`.
    right: Vec<usize>,
    words: Vec<Word>,
}

impl<E: Element> FiniteSemigroup<E> {
    /// Breadth-first closure of `gens` under composition. Letters must be
    /// distinct. Elements are numbered in discovery order, so the stored
    /// word for each element is a shortest one.
    pub fn generate(mut gens: Vec<(Symbol, E)>, limit: usize) -> Result<Self> {
        gens.sort_by_key(|(a, _)| *a);
        if gens.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter("generator letters repeat".into()));
        }
        let mut s = FiniteSemigroup {
            elements: Vec::new(),
            index: HashMap::new(),
            letters: gens.iter().map(|(a, _)| *a).collect(),
            generators: Vec::with_capacity(gens.len()),
            right: Vec::new(),
            words: Vec::new(),
        };
        for (a, e) in &gens {
            let idx = match s.index.get(e) {
                Some(&i) => i,
                None => s.insert(e.clone(), Word::new(vec![*a]), limit)?,
            };
            s.generators.push(idx);
        }
        let mut next = 0;
        while next < s.elements.len() {
            for (a, gen) in &gens {
                let product = s.elements[next].then(gen);
                let idx = match s.index.get(&product) {
                    Some(&i) => i,
                    None => {
                        let mut w = s.words[next].symbols().to_vec();
                        w.push(*a);
                        s.insert(product, Word::new(w), limit)?
                    }
                };
                s.right.push(idx);
            }
            next += 1;
        }
        Ok(s)
    }

    fn insert(&mut self, e: E, word: Word, limit: usize) -> Result<usize> {
        if self.elements.len() >= limit {
            return Err(Error::GuardExceeded {
                what: "semigroup closure",
                required: format!("more than {limit} elements"),
                limit: limit as u64,
            });
        }
        let i = self.elements.len();
        self.words.push(word);
        self.index.insert(e.clone(), i);
        self.elements.push(e);
        Ok(i)
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }
}

impl<E> FiniteSemigroup<E> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    /// Generator labels, ascending.
    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    /// Element index of the generator labelled `a`.
    pub fn generator(&self, a: Symbol) -> Option<usize> {
        self.letters
            .binary_search(&a)
            .ok()
            .map(|i| self.generators[i])
    }

    /// A shortest generator word for element `i`.
    pub fn word_of(&self, i: usize) -> &Word {
        &self.words[i]
    }

    /// Element `i` times the generator at position `g` of [`letters`](Self::letters).
    pub fn times_generator(&self, i: usize, g: usize) -> usize {
        self.right[i * self.letters.len() + g]
    }

    /// Value of a nonempty generator word, or `None` if it is empty or uses
    /// an unknown letter.
    pub fn evaluate(&self, w: &[Symbol]) -> Option<usize> {
        let (&first, rest) = w.split_first()?;
        let mut cur = self.generator(first)?;
        for &a in rest {
            let g = self.letters.binary_search(&a).ok()?;
            cur = self.times_generator(cur, g);
        }
        Some(cur)
    }

    /// Product of elements `i` and `j`, read off the Cayley graph.
    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.words[j].iter().fold(i, |cur, a| {
            let g = self.letters.binary_search(a).expect("word uses generators");
            self.times_generator(cur, g)
        })
    }

    /// Full multiplication table, if `order²` fits in `max_cells`.
    pub fn multiplication_table(&self, max_cells: u64) -> Result<Vec<Vec<usize>>> {
        let n = self.order() as u64;
        if n.saturating_mul(n) > max_cells {
            return Err(Error::GuardExceeded {
                what: "multiplication table",
                required: format!("{} cells", n as u128 * n as u128),
                limit: max_cells,
            });
        }
        Ok((0..self.order())
            .map(|i| (0..self.order()).map(|j| self.multiply(i, j)).collect())
            .collect())
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.multiply(a, b);
                (0..n).all(|c| self.multiply(ab, c) == self.multiply(a, self.multiply(b, c)))
            })
        })
    }
}

/// Closure of letter-labelled partial injections of a common degree.
pub fn generate_closure(
    gens: Vec<(Symbol, PartialInjection)>,
    limit: usize,
) -> Result<FiniteSemigroup<PartialInjection>> {
    if let Some((_, first)) = gens.first() {
        if let Some((_, bad)) = gens.iter().find(|(_, g)| g.degree() != first.degree()) {
            return Err(Error::DegreeMismatch(first.degree(), bad.degree()));
        }
    }
    FiniteSemigroup::generate(gens, limit)
}

/// The necklace of a primitive `u`, in lexicographic order.
pub fn necklace_order(u: &Word) -> Result<Vec<Word>> {
    Ok(words::lyndon_representative(u)?.words())
}

/// For each letter `a` of `c(u)`, the map `a'` on the ordered necklace of
/// `u` sending `ax` to `xa`.
pub fn letter_actions(u: &Word) -> Result<BTreeMap<Symbol, PartialInjection>> {
    letter_actions_over(u, &u.content())
}

/// As [`letter_actions`], over an explicit letter set; letters outside
/// `c(u)` act as the empty map.
pub fn letter_actions_over(
    u: &Word,
    letters: &[Symbol],
) -> Result<BTreeMap<Symbol, PartialInjection>> {
    let order = necklace_order(u)?;
    let n = order.len();
    let mut pairs: BTreeMap<Symbol, Vec<(usize, usize)>> =
        letters.iter().map(|&a| (a, Vec::new())).collect();
    for (j, x) in order.iter().enumerate() {
        let shifted = x.rotation(1);
        let target = order
            .binary_search(&shifted)
            .expect("necklace closed under shift");
        pairs.entry(x[0]).or_default().push((j, target));
    }
    pairs
        .into_iter()
        .map(|(a, p)| Ok((a, PartialInjection::new(n, p)?)))
        .collect()
}

/// `S(u)`: closure of the letter maps of `u`.
pub fn necklace_semigroup(u: &Word, limit: usize) -> Result<FiniteSemigroup<PartialInjection>> {
    generate_closure(letter_actions(u)?.into_iter().collect(), limit)
}

/// Complete deterministic automaton over a fixed list of letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognizer {
    letters: Vec<Symbol>,
    /// `delta[state][letter index]`
    delta: Vec<Vec<u32>>,
    start: u32,
    accepting: Vec<bool>,
}

impl Recognizer {
    /// Automaton for `{u^m : m ≥ 1}`: a start state, one state per position
    /// of `u` (the last accepting), and a sink.
    pub fn powers_of(u: &Word, letters: &[Symbol]) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut letters = letters.to_vec();
        letters.sort_unstable();
        letters.dedup();
        if u.iter().any(|a| letters.binary_search(a).is_err()) {
            return Err(Error::LetterMismatch);
        }
        let n = u.len();
        let sink = (n + 1) as u32;
        // state 0 = start, state i in 1..=n = read i letters of the current copy
        let delta = (0..=n + 1)
            .map(|state| {
                letters
                    .iter()
                    .map(|&a| {
                        let pos = match state {
                            0 => 0,
                            s if s == n => 0,
                            s if s == n + 1 => return sink,
                            s => s,
                        };
                        if u[pos] == a {
                            (pos + 1) as u32
                        } else {
                            sink
                        }
                    })
                    .collect()
            })
            .collect();
        let mut accepting = vec![false; n + 2];
        accepting[n] = true;
        Ok(Recognizer {
            letters,
            delta,
            start: 0,
            accepting,
        })
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        let mut state = self.start;
        for a in w {
            match self.letters.binary_search(a) {
                Ok(i) => state = self.delta[state as usize][i],
                Err(_) => return false,
            }
        }
        self.accepting[state as usize]
    }

    /// Minimal equivalent automaton: unreachable states dropped, then
    /// equivalent states merged by partition refinement.
    pub fn minimize(&self) -> Recognizer {
        let mut reach = vec![false; self.state_count()];
        let mut queue = VecDeque::from([self.start]);
        reach[self.start as usize] = true;
        while let Some(s) = queue.pop_front() {
            for &t in &self.delta[s as usize] {
                if !std::mem::replace(&mut reach[t as usize], true) {
                    queue.push_back(t);
                }
            }
        }
        let live: Vec<usize> = (0..self.state_count()).filter(|&s| reach[s]).collect();

        let mut class: Vec<usize> = vec![0; self.state_count()];
        for &s in &live {
            class[s] = self.accepting[s] as usize;
        }
        let mut classes = [false, true]
            .iter()
            .filter(|&&acc| live.iter().any(|&s| self.accepting[s] == acc))
            .count();
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; self.state_count()];
            for &s in &live {
                let sig = (
                    class[s],
                    self.delta[s].iter().map(|&t| class[t as usize]).collect(),
                );
                let fresh = ids.len();
                next[s] = *ids.entry(sig).or_insert(fresh);
            }
            let count = ids.len();
            class = next;
            if count == classes {
                break;
            }
            classes = count;
        }

        let mut delta = vec![Vec::new(); classes];
        let mut accepting = vec![false; classes];
        for &s in &live {
            let c = class[s];
            if delta[c].is_empty() {
                delta[c] = self.delta[s]
                    .iter()
                    .map(|&t| class[t as usize] as u32)
                    .collect();
                accepting[c] = self.accepting[s];
            }
        }
        Recognizer {
            letters: self.letters.clone(),
            delta,
            start: class[self.start as usize] as u32,
            accepting,
        }
    }

    /// Generators of the transition semigroup, one per letter.
    pub fn letter_transformations(&self) -> Vec<(Symbol, Transformation)> {
        self.letters
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                (
                    a,
                    Transformation(self.delta.iter().map(|row| row[i]).collect()),
                )
            })
            .collect()
    }
}

/// Syntactic semigroup of `{u^m : m ≥ 1}` with the automaton it came from.
#[derive(Debug, Clone)]
pub struct SyntacticSemigroup {
    pub semigroup: FiniteSemigroup<Transformation>,
    pub recognizer: Recognizer,
    /// False when `u` is a proper power; the result is still the syntactic
    /// semigroup of the powers of `u`.
    pub primitive: bool,
}

/// `S_u = A⁺/ρ_u` over `A = c(u)`.
pub fn syntactic_semigroup(u: &Word, limit: usize) -> Result<SyntacticSemigroup> {
    syntactic_semigroup_over(u, &u.content(), limit)
}

pub fn syntactic_semigroup_over(
    u: &Word,
    letters: &[Symbol],
    limit: usize,
) -> Result<SyntacticSemigroup> {
    let primitive = words::is_primitive(u)?;
    let recognizer = Recognizer::powers_of(u, letters)?.minimize();
    let semigroup = FiniteSemigroup::generate(recognizer.letter_transformations(), limit)?;
    Ok(SyntacticSemigroup {
        semigroup,
        recognizer,
        primitive,
    })
}

/// Whether sending each generator of `s1` to the generator of `s2` with the
/// same letter extends to an isomorphism, i.e. two generator words are equal
/// in `s1` exactly when they are equal in `s2`.
pub fn letter_induced_isomorphic<E1, E2>(
    s1: &FiniteSemigroup<E1>,
    s2: &FiniteSemigroup<E2>,
) -> Result<bool> {
    if s1.letters() != s2.letters() {
        return Err(Error::LetterMismatch);
    }
    if s1.order() != s2.order() {
        return Ok(false);
    }
    let mut to2: Vec<Option<usize>> = vec![None; s1.order()];
    let mut to1: Vec<Option<usize>> = vec![None; s2.order()];
    let mut queue = VecDeque::new();
    let mut pair = |x: usize, y: usize, queue: &mut VecDeque<(usize, usize)>| match (to2[x], to1[y])
    {
        (None, None) => {
            to2[x] = Some(y);
            to1[y] = Some(x);
            queue.push_back((x, y));
            true
        }
        (Some(b), Some(a)) => a == x && b == y,
        _ => false,
    };
    for &a in s1.letters() {
        let (x, y) = (s1.generator(a).unwrap(), s2.generator(a).unwrap());
        if !pair(x, y, &mut queue) {
            return Ok(false);
        }
    }
    while let Some((x, y)) = queue.pop_front() {
        for g in 0..s1.letters().len() {
            if !pair(
                s1.times_generator(x, g),
                s2.times_generator(y, g),
                &mut queue,
            ) {
                return Ok(false);
            }
        }
    }
    Ok(to2.iter().all(Option::is_some) && to1.iter().all(Option::is_some))
}

/// `S(M)` with its restrictions to the cycles of `π(BW(M))`.
#[derive(Debug, Clone)]
pub struct MultisetSemigroup {
    pub semigroup: FiniteSemigroup<PartialInjection>,
    /// Cycle domains, each sorted ascending, ordered by least element.
    pub cycles: Vec<Vec<usize>>,
    /// Necklace read along each cycle.
    pub necklaces: Vec<Necklace>,
    /// For each cycle `C`, the semigroup generated by `π_a|C` for `a` in the
    /// content of that cycle's necklace.
    pub projections: Vec<FiniteSemigroup<PartialInjection>>,
}

impl MultisetSemigroup {
    pub fn restriction_tuple(&self, element: usize) -> Vec<PartialInjection> {
        let e = self.semigroup.element(element);
        self.cycles.iter().map(|c| e.restrict(c)).collect()
    }

    /// Whether distinct elements have distinct restriction tuples.
    pub fn restrictions_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        (0..self.semigroup.order()).all(|i| seen.insert(self.restriction_tuple(i)))
    }
}

/// Closure of the letter maps of the standard permutation of `BW(M)`.
pub fn semigroup_of_multiset(m: &NecklaceMultiset, limit: usize) -> Result<MultisetSemigroup> {
    let bw = transform(m);
    if bw.is_empty() {
        return Ok(MultisetSemigroup {
            semigroup: FiniteSemigroup::generate(Vec::new(), limit)?,
            cycles: Vec::new(),
            necklaces: Vec::new(),
            projections: Vec::new(),
        });
    }
    let p = standard_permutation(&bw)?;
    let n = p.len();
    let gens: Vec<(Symbol, PartialInjection)> = p
        .letter_maps()
        .iter()
        .map(|lm| {
            let pairs = lm.dom.clone().zip(lm.ran.iter().copied());
            Ok((lm.letter, PartialInjection::new(n, pairs)?))
        })
        .collect::<Result<_>>()?;
    let semigroup = generate_closure(gens.clone(), limit)?;

    let mut cycles = Vec::new();
    let mut necklaces = Vec::new();
    let mut projections = Vec::new();
    for cycle in p.cycles() {
        let necklace = words::lyndon_representative(&p.cycle_word(&cycle))?;
        let mut domain = cycle;
        domain.sort_unstable();
        let content = necklace.lyndon().content();
        let restricted = gens
            .iter()
            .filter(|(a, _)| content.binary_search(a).is_ok())
            .map(|(a, g)| (*a, g.restrict(&domain)))
            .collect();
        projections.push(generate_closure(restricted, limit)?);
        cycles.push(domain);
        necklaces.push(necklace);
    }
    Ok(MultisetSemigroup {
        semigroup,
        cycles,
        necklaces,
        projections,
    })
}
