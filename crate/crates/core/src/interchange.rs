//! Text and JSON forms of necklace multisets.
//!
//! Text: one entry per line, `lyndon` or `lyndon xN` for multiplicity `N`.
//! Blank lines are skipped. JSON:
//! `{"necklaces":[{"lyndon":"aab","multiplicity":1}, ...]}`.

use serde::{Deserialize, Serialize};

use crate::ebwt::NecklaceMultiset;
use crate::error::{Error, Result};
use crate::words::{self, Alphabet, Necklace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceEntry {
    pub lyndon: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisetDocument {
    pub necklaces: Vec<NecklaceEntry>,
}

/// How entries that are primitive but not Lyndon words are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntryPolicy {
    /// Reject them.
    #[default]
    Strict,
    /// Replace them by their Lyndon rotation.
    Canonicalize,
}

fn entry_necklace(
    text: &str,
    alphabet: &Alphabet,
    policy: EntryPolicy,
    line: usize,
) -> Result<Necklace> {
    let parse_err = |e: Error| Error::Parse {
        line,
        message: format!("entry {text:?}: {e}"),
    };
    let word = alphabet.parse(text).map_err(parse_err)?;
    let render = |w: &words::Word| alphabet.render(w).unwrap_or_else(|_| w.to_string());
    match policy {
        EntryPolicy::Canonicalize => words::lyndon_representative(&word),
        EntryPolicy::Strict => Necklace::from_lyndon(word),
    }
    .map_err(|e| Error::Parse {
        line,
        message: match e {
            Error::NotPrimitive { root } => {
                format!("entry {text:?} is not primitive (root {})", render(&root))
            }
            Error::NotLyndon { lyndon, .. } => {
                format!(
                    "entry {text:?} is not a Lyndon word (expected {})",
                    render(&lyndon)
                )
            }
            other => format!("entry {text:?}: {other}"),
        },
    })
}

/// Parses the line format. Lines are numbered from 1 in errors.
pub fn parse_multiset_text(
    input: &str,
    alphabet: &Alphabet,
    policy: EntryPolicy,
) -> Result<NecklaceMultiset> {
    let mut entries = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        let Some(word) = tokens.next() else { continue };
        let multiplicity = match tokens.next() {
            None => 1,
            Some(tok) => tok
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&m| m > 0)
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("bad multiplicity {tok:?}, expected xN with N >= 1"),
                })?,
        };
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line,
                message: format!("unexpected token {extra:?}"),
            });
        }
        entries.push((entry_necklace(word, alphabet, policy, line)?, multiplicity));
    }
    NecklaceMultiset::new(entries)
}

/// Canonical line format: ascending, newline-terminated entries.
pub fn render_multiset_text(m: &NecklaceMultiset, alphabet: &Alphabet) -> Result<String> {
    let mut out = String::new();
    for (nk, mult) in m.entries() {
        out.push_str(&alphabet.render(nk.lyndon())?);
        if *mult > 1 {
            out.push_str(&format!(" x{mult}"));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn to_document(m: &NecklaceMultiset, alphabet: &Alphabet) -> Result<MultisetDocument> {
    Ok(MultisetDocument {
        necklaces: m
            .entries()
            .iter()
            .map(|(nk, mult)| {
                Ok(NecklaceEntry {
                    lyndon: alphabet.render(nk.lyndon())?,
                    multiplicity: *mult,
                })
            })
            .collect::<Result<_>>()?,
    })
}

pub fn from_document(
    doc: &MultisetDocument,
    alphabet: &Alphabet,
    policy: EntryPolicy,
) -> Result<NecklaceMultiset> {
    let entries = doc
        .necklaces
        .iter()
        .enumerate()
        .map(|(i, e)| {
            if e.multiplicity == 0 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("entry {:?} has multiplicity 0", e.lyndon),
                });
            }
            Ok((
                entry_necklace(&e.lyndon, alphabet, policy, i + 1)?,
                e.multiplicity,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    NecklaceMultiset::new(entries)
}

pub fn parse_multiset_json(
    input: &str,
    alphabet: &Alphabet,
    policy: EntryPolicy,
) -> Result<NecklaceMultiset> {
    let doc: MultisetDocument = serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    from_document(&doc, alphabet, policy)
}

/// Characters used by the words of a multiset input, in either format.
/// Useful for inferring an alphabet before parsing.
pub fn multiset_letters(input: &str) -> String {
    if input.trim_start().starts_with('{') {
        serde_json::from_str::<MultisetDocument>(input)
            .map(|doc| doc.necklaces.into_iter().map(|e| e.lyndon).collect())
            .unwrap_or_default()
    } else {
        input
            .lines()
            .filter_map(|l| l.split_whitespace().next())
            .collect()
    }
}
