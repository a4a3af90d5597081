//! `ebwt`: command-line access to the transform, de Bruijn, semigroup and
//! factor-count operations.
//!
//! Exit codes: 0 success, 2 input error, 3 resource guard exceeded.

use std::fmt::Write as _;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ebwt_core::debruijn::{self, GammaWord};
use ebwt_core::ebwt::DEFAULT_TABLE_CELLS;
use ebwt_core::factors::{self, DEFAULT_EXHAUSTIVE_LIMIT};
use ebwt_core::interchange::{self, EntryPolicy};
use ebwt_core::semigroup::{self, DEFAULT_CLOSURE_LIMIT};
use ebwt_core::{Alphabet, Error, NecklaceMultiset, Word};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ebwt",
    version,
    about = "Extended Burrows-Wheeler transform toolkit"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Ordered alphabet, least letter first (default: letters of the input,
    /// sorted; `a`, `b`, ... for commands that take a size `k`).
    #[arg(long, global = true, value_name = "CHARS")]
    alphabet: Option<String>,

    /// Override every resource guard (table cells, semigroup elements,
    /// words scanned) with this value.
    #[arg(long, global = true, value_name = "N")]
    guard_cells: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input text; read from --file or standard input when absent.
    input: Option<String>,

    /// Read input from a file.
    #[arg(long, conflicts_with = "input")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a multiset of necklaces (lines `lyndon [xN]`, or JSON) to a word.
    Transform {
        #[command(flatten)]
        input: Input,
        /// Accept any primitive word and replace it by its Lyndon rotation.
        #[arg(long)]
        canonicalize: bool,
    },
    /// Recover the multiset of necklaces whose transform is the word.
    Invert {
        #[command(flatten)]
        input: Input,
        /// Also print the rotation table.
        #[arg(long)]
        table: bool,
    },
    /// De Bruijn words over `k` letters of span `n`.
    Debruijn {
        k: Option<usize>,
        n: Option<u32>,
        /// Least de Bruijn word of span n.
        #[arg(long, group = "mode")]
        least: bool,
        /// Invert a word of Γ(k,n), a product of permutations of the alphabet.
        #[arg(long, group = "mode", value_name = "WORD")]
        from_gamma: Option<String>,
        /// Number of de Bruijn words of span n.
        #[arg(long, group = "mode")]
        count: bool,
    },
    /// Semigroups attached to a primitive word.
    Semigroup {
        word: String,
        /// Syntactic semigroup of the positive powers of the word.
        #[arg(long, group = "mode")]
        syntactic: bool,
        /// Semigroup generated by the letter actions on the necklace.
        #[arg(long, group = "mode")]
        action: bool,
        /// Whether the letters induce an isomorphism between the two.
        #[arg(long, group = "mode")]
        check_iso: bool,
        /// Multiplication table of the action semigroup.
        #[arg(long, group = "mode")]
        table: bool,
    },
    /// Distinct factor counts.
    Factors {
        word: Option<String>,
        /// Exhaustive maximum f(n) for n = 1..=N over K letters.
        #[arg(long, num_args = 2, value_names = ["N", "K"], group = "mode")]
        max: Option<Vec<usize>>,
        /// De Bruijn prefix witness of length N over K letters.
        #[arg(long, num_args = 2, value_names = ["N", "K"], group = "mode")]
        witness: Option<Vec<usize>>,
    },
}

enum Failure {
    Input(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TableTooLarge { .. } | Error::GuardExceeded { .. } => {
                Failure::Guard(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_input(input: &Input) -> Result<String, Failure> {
    if let Some(text) = &input.input {
        return Ok(text.clone());
    }
    let mut text = String::new();
    match &input.file {
        Some(path) => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("standard input: {e}")))?;
        }
    }
    Ok(text)
}

struct Context {
    json: bool,
    alphabet: Option<Alphabet>,
    guard: Option<u64>,
}

impl Context {
    /// Explicit alphabet, else the sorted letters of `text`.
    fn alphabet_for(&self, text: &str) -> Result<Option<Alphabet>, Failure> {
        match &self.alphabet {
            Some(a) => Ok(Some(a.clone())),
            None if text.is_empty() => Ok(None),
            None => Ok(Some(Alphabet::inferred(text)?)),
        }
    }

    /// Explicit alphabet, which must have `k` letters, else `a`, `b`, ...
    fn alphabet_of_size(&self, k: usize) -> Result<Alphabet, Failure> {
        match &self.alphabet {
            Some(a) if a.size() == k => Ok(a.clone()),
            Some(a) => Err(Failure::Input(format!(
                "--alphabet has {} letters but k = {k}",
                a.size()
            ))),
            None => Ok(Alphabet::latin(k)?),
        }
    }

    fn limit(&self, default: u64) -> u64 {
        self.guard.unwrap_or(default)
    }

    fn emit(&self, value: Value, text: String) -> String {
        if self.json {
            value.to_string()
        } else {
            text
        }
    }
}

fn multiset_output(ctx: &Context, m: &NecklaceMultiset, alphabet: Option<&Alphabet>) -> Outcome {
    let Some(alphabet) = alphabet else {
        return Ok(ctx.emit(json!({ "necklaces": [] }), String::new()));
    };
    let doc = interchange::to_document(m, alphabet)?;
    let text = interchange::render_multiset_text(m, alphabet)?;
    let value = serde_json::to_value(doc).expect("document serializes");
    Ok(ctx.emit(value, text.trim_end_matches('\n').to_string()))
}

fn cmd_transform(ctx: &Context, input: &Input, canonicalize: bool) -> Outcome {
    let text = read_input(input)?;
    let letters = interchange::multiset_letters(&text);
    let policy = if canonicalize {
        EntryPolicy::Canonicalize
    } else {
        EntryPolicy::Strict
    };
    let Some(alphabet) = ctx.alphabet_for(&letters)? else {
        if text.trim_start().starts_with('{') {
            serde_json::from_str::<interchange::MultisetDocument>(&text)
                .map_err(|e| Failure::Input(e.to_string()))?;
        }
        return Ok(ctx.emit(json!({ "word": "" }), String::new()));
    };
    let m = if text.trim_start().starts_with('{') {
        interchange::parse_multiset_json(&text, &alphabet, policy)?
    } else {
        interchange::parse_multiset_text(&text, &alphabet, policy)?
    };
    let word = alphabet.render(&ebwt_core::transform(&m))?;
    Ok(ctx.emit(json!({ "word": word }), word))
}

fn cmd_invert(ctx: &Context, input: &Input, table: bool) -> Outcome {
    let text = read_input(input)?;
    let text = text.trim();
    let alphabet = ctx.alphabet_for(text)?;
    let word = match &alphabet {
        Some(a) => a.parse(text)?,
        None => Word::empty(),
    };
    let m = ebwt_core::inverse_transform(&word);
    if !table || word.is_empty() {
        return multiset_output(ctx, &m, alphabet.as_ref());
    }
    let alphabet = alphabet.expect("nonempty word has an alphabet");
    let t = ebwt_core::build_table(&word, ctx.limit(DEFAULT_TABLE_CELLS))?;
    let rows = t
        .rows()
        .iter()
        .map(|r| alphabet.render(r))
        .collect::<Result<Vec<_>, _>>()?;
    let listing = multiset_output(ctx, &m, Some(&alphabet))?;
    let value = json!({
        "necklaces": serde_json::to_value(interchange::to_document(&m, &alphabet)?)
            .expect("document serializes")["necklaces"],
        "table": rows,
    });
    Ok(ctx.emit(value, format!("{listing}\n\n{}", rows.join("\n"))))
}

fn span_params(k: Option<usize>, n: Option<u32>) -> Result<(usize, u32), Failure> {
    match (k, n) {
        (Some(k), Some(n)) => Ok((k, n)),
        _ => Err(Failure::Input("expected arguments K N".into())),
    }
}

fn cmd_debruijn(
    ctx: &Context,
    k: Option<usize>,
    n: Option<u32>,
    least: bool,
    from_gamma: Option<&str>,
    count: bool,
) -> Outcome {
    if let Some(text) = from_gamma {
        let alphabet = match (&ctx.alphabet, k) {
            (_, Some(k)) => ctx.alphabet_of_size(k)?,
            (Some(a), None) => a.clone(),
            (None, None) => Alphabet::inferred(text)?,
        };
        let k = alphabet.size();
        let word = alphabet.parse(text)?;
        let n = match n {
            Some(n) => n,
            None => infer_span(word.len(), k)?,
        };
        let v = GammaWord::new(word, k, n)?;
        let set = debruijn::debruijn_set_from_gamma(&v);
        return multiset_output(ctx, set.necklaces(), Some(&alphabet));
    }
    let (k, n) = span_params(k, n)?;
    if count {
        let c = debruijn::count_debruijn_words(k, n)?.to_string();
        return Ok(ctx.emit(json!({ "k": k, "n": n, "count": c }), c));
    }
    if !least {
        return Err(Failure::Input(
            "choose one of --least, --from-gamma, --count".into(),
        ));
    }
    let alphabet = ctx.alphabet_of_size(k)?;
    let word = alphabet.render(&debruijn::least_debruijn_word(k, n)?)?;
    Ok(ctx.emit(json!({ "k": k, "n": n, "word": word }), word))
}

/// `n` with `k^n == len`.
fn infer_span(len: usize, k: usize) -> Result<u32, Failure> {
    let mut n = 1u32;
    while let Some(p) = debruijn::checked_power(k, n) {
        if p == len as u64 {
            return Ok(n);
        }
        if p > len as u64 || k < 2 {
            break;
        }
        n += 1;
    }
    Err(Failure::Input(format!(
        "length {len} is not a power k^n of the alphabet size k = {k}"
    )))
}

fn cmd_semigroup(ctx: &Context, text: &str, mode: SemigroupMode) -> Outcome {
    let alphabet = ctx
        .alphabet_for(text)?
        .ok_or(Failure::Input(Error::EmptyWord.to_string()))?;
    let u = alphabet.parse(text)?;
    if u.is_empty() {
        return Err(Error::EmptyWord.into());
    }
    let limit = ctx.limit(DEFAULT_CLOSURE_LIMIT as u64) as usize;
    match mode {
        SemigroupMode::Syntactic => {
            let s = semigroup::syntactic_semigroup(&u, limit)?;
            let (order, states) = (s.semigroup.order(), s.recognizer.state_count());
            Ok(ctx.emit(
                json!({ "word": text, "syntactic_order": order, "automaton_states": states }),
                format!("order: {order}\nautomaton states: {states}"),
            ))
        }
        SemigroupMode::Action => {
            let s = semigroup::necklace_semigroup(&u, limit)?;
            let order = s.order();
            Ok(ctx.emit(
                json!({ "word": text, "action_order": order }),
                format!("order: {order}"),
            ))
        }
        SemigroupMode::CheckIso => {
            let syn = semigroup::syntactic_semigroup(&u, limit)?;
            let act = semigroup::necklace_semigroup(&u, limit)?;
            let iso = semigroup::letter_induced_isomorphic(&syn.semigroup, &act)?;
            let (so, ao) = (syn.semigroup.order(), act.order());
            let verdict = if iso { "ISOMORPHIC" } else { "NOT ISOMORPHIC" };
            Ok(ctx.emit(
                json!({ "word": text, "syntactic_order": so, "action_order": ao, "isomorphic": iso }),
                format!("syntactic order: {so}\naction order: {ao}\n{verdict}"),
            ))
        }
        SemigroupMode::Table => {
            let s = semigroup::necklace_semigroup(&u, limit)?;
            let table = s.multiplication_table(ctx.limit(DEFAULT_TABLE_CELLS))?;
            let names = (0..s.order())
                .map(|i| alphabet.render(s.word_of(i)))
                .collect::<Result<Vec<_>, _>>()?;
            let width = s.order().saturating_sub(1).to_string().len();
            let mut out = format!("order: {}\n", s.order());
            for (i, name) in names.iter().enumerate() {
                let _ = writeln!(out, "{i:>width$} = {name}");
            }
            for row in &table {
                out.push('\n');
                let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                out.push_str(&cells.join(" "));
            }
            Ok(ctx.emit(
                json!({ "word": text, "order": s.order(), "elements": names, "table": table }),
                out,
            ))
        }
    }
}

#[derive(Clone, Copy)]
enum SemigroupMode {
    Syntactic,
    Action,
    CheckIso,
    Table,
}

fn cmd_factors(
    ctx: &Context,
    word: Option<&str>,
    max: Option<&[usize]>,
    witness: Option<&[usize]>,
) -> Outcome {
    if let Some(&[n_max, k]) = max {
        let alphabet = ctx.alphabet_of_size(k)?;
        let limit = ctx.limit(DEFAULT_EXHAUSTIVE_LIMIT);
        let mut rows = Vec::new();
        let mut text = String::from("n\tf(n)\tupper\twitness");
        for n in 1..=n_max {
            let best = factors::max_factors_exhaustive(n, k, limit)?;
            let upper = if n > k {
                factors::factor_upper_bound(n as u64, k as u64)?
            } else {
                factors::factor_occurrences(n as u64)
            };
            let wit = alphabet.render(&best.witness)?;
            let _ = write!(text, "\n{n}\t{}\t{upper}\t{wit}", best.distinct);
            rows.push(json!({ "n": n, "max": best.distinct, "upper": upper, "witness": wit }));
        }
        return Ok(ctx.emit(json!({ "k": k, "rows": rows }), text));
    }
    if let Some(&[n, k]) = witness {
        let alphabet = ctx.alphabet_of_size(k)?;
        let wit = factors::debruijn_factor_witness(n, k)?;
        let word = alphabet.render(&wit.word)?;
        return Ok(ctx.emit(
            json!({ "n": n, "k": k, "span": wit.span, "word": word,
                    "distinct": wit.distinct, "bound": wit.bound }),
            format!(
                "word: {word}\nspan: {}\ndistinct: {}\nbound: {}",
                wit.span, wit.distinct, wit.bound
            ),
        ));
    }
    let text = word.ok_or(Failure::Input("expected a word, --max or --witness".into()))?;
    let alphabet = ctx
        .alphabet_for(text)?
        .ok_or(Failure::Input(Error::EmptyWord.to_string()))?;
    let w = alphabet.parse(text)?;
    let f = factors::distinct_factors(&w)?;
    Ok(ctx.emit(json!({ "word": text, "distinct": f }), f.to_string()))
}

fn run(cli: Cli) -> Outcome {
    let ctx = Context {
        json: cli.json,
        alphabet: cli
            .alphabet
            .as_deref()
            .map(|a| Alphabet::new(a.chars()))
            .transpose()?,
        guard: cli.guard_cells,
    };
    match &cli.command {
        Command::Transform {
            input,
            canonicalize,
        } => cmd_transform(&ctx, input, *canonicalize),
        Command::Invert { input, table } => cmd_invert(&ctx, input, *table),
        Command::Debruijn {
            k,
            n,
            least,
            from_gamma,
            count,
        } => cmd_debruijn(&ctx, *k, *n, *least, from_gamma.as_deref(), *count),
        Command::Semigroup {
            word,
            syntactic,
            action,
            check_iso,
            table,
        } => {
            let mode = match (syntactic, action, check_iso, table) {
                (_, true, _, _) => SemigroupMode::Action,
                (_, _, true, _) => SemigroupMode::CheckIso,
                (_, _, _, true) => SemigroupMode::Table,
                _ => SemigroupMode::Syntactic,
            };
            cmd_semigroup(&ctx, word, mode)
        }
        Command::Factors { word, max, witness } => {
            cmd_factors(&ctx, word.as_deref(), max.as_deref(), witness.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
