use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ebwt(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ebwt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = ebwt(args, stdin);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], stdin: Option<&str>) -> i32 {
    ebwt(args, stdin).status.code().unwrap()
}

#[test]
fn transform_examples() {
    assert_eq!(ok(&["transform"], Some("aab\nab\nabb\n")), "babbaaba\n");
    assert_eq!(ok(&["transform", "aab\nab\nabb"], None), "babbaaba\n");
    assert_eq!(ok(&["transform", ""], None), "\n");
    assert_eq!(ok(&["transform", "ab x2"], None), "bbaa\n");
}

#[test]
fn transform_reads_files_and_json() {
    let dir = std::env::temp_dir().join(format!("ebwt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    std::fs::write(&path, r#"{"necklaces":[{"lyndon":"ab","multiplicity":2}]}"#).unwrap();
    assert_eq!(
        ok(&["transform", "--file", path.to_str().unwrap()], None),
        "bbaa\n"
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn invert_examples() {
    assert_eq!(ok(&["invert", "babbaaba"], None), "aab\nab\nabb\n");
    assert_eq!(ok(&["invert", "a"], None), "a\n");
    assert_eq!(ok(&["invert", "bbaa"], None), "ab x2\n");
    assert_eq!(ok(&["invert"], Some("babbaaba\n")), "aab\nab\nabb\n");
}

#[test]
fn invert_table_lists_sorted_rows() {
    let out = ok(&["invert", "--table", "babbaaba"], None);
    let rows: Vec<&str> = out.split("\n\n").nth(1).unwrap().lines().collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0], "aabaab");
    assert!(rows.windows(2).all(|r| r[0] <= r[1]));
    let last: String = rows.iter().map(|r| r.chars().last().unwrap()).collect();
    assert_eq!(last, "babbaaba");
}

#[test]
fn explicit_alphabet_orders_letters() {
    // with b < a the word reads as abaabbab under the usual order
    let listing = ok(&["--alphabet", "ba", "invert", "babbaaba"], None);
    assert_eq!(listing, "b\nbbbaaa\na\n");
    assert_eq!(ok(&["invert", "abaabbab"], None), "a\naaabbb\nb\n");
    assert_eq!(
        ok(&["--alphabet", "ba", "transform"], Some(&listing)),
        "babbaaba\n"
    );
    assert_eq!(code(&["--alphabet", "ab", "invert", "abc"], None), 2);
}

#[test]
fn pipe_round_trips() {
    for text in ["aab\nab\nabb\n", "a x3\nab\nb\n", "aabac\nabc x2\nc\n"] {
        let word = ok(&["transform", text], None);
        assert_eq!(ok(&["invert", word.trim_end()], None), text);
    }
    for word in ["babbaaba", "cabbacab", "aaaa", "abcabcabcba"] {
        let listing = ok(&["invert", word], None);
        assert_eq!(ok(&["transform"], Some(&listing)), format!("{word}\n"));
    }
}

#[test]
fn json_matches_text() {
    let text = ok(&["invert", "cabbacab"], None);
    let json: Value = serde_json::from_str(&ok(&["--json", "invert", "cabbacab"], None)).unwrap();
    let from_json: Vec<String> = json["necklaces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| match e["multiplicity"].as_u64().unwrap() {
            1 => e["lyndon"].as_str().unwrap().to_string(),
            m => format!("{} x{m}", e["lyndon"].as_str().unwrap()),
        })
        .collect();
    assert_eq!(text.lines().collect::<Vec<_>>(), from_json);

    let word = ok(&["transform"], Some(&text));
    let json: Value = serde_json::from_str(&ok(&["--json", "transform"], Some(&text))).unwrap();
    assert_eq!(json["word"].as_str().unwrap(), word.trim_end());

    let json: Value = serde_json::from_str(&ok(&["--json", "factors", "abab"], None)).unwrap();
    assert_eq!(json["distinct"], 7);
    let json: Value =
        serde_json::from_str(&ok(&["--json", "debruijn", "--count", "3", "3"], None)).unwrap();
    assert_eq!(json["count"], "373248");
}

#[test]
fn debruijn_examples() {
    let least = [
        "a", "aaaab", "aaabb", "aabab", "aabbb", "ababb", "abbbb", "b",
    ]
    .concat();
    assert_eq!(
        ok(&["debruijn", "--least", "2", "5"], None),
        format!("{least}\n")
    );
    assert_eq!(ok(&["debruijn", "--count", "2", "3"], None), "2\n");
    // β⁴αβ³ with α = ab, β = ba
    assert_eq!(
        ok(&["debruijn", "--from-gamma", "babababaabbababa"], None),
        "aaaabbbbaababbab\n"
    );
    assert_eq!(
        ok(&["debruijn", "--from-gamma", "baababbabaababba"], None),
        "aaaabaabbbbabb\nab\n"
    );
}

#[test]
fn bad_gamma_names_block() {
    let out = ebwt(&["debruijn", "--from-gamma", "bababababbbababa"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("block 4"));
    assert_eq!(
        code(&["debruijn", "--from-gamma", "abab", "2", "3"], None),
        2
    );
}

#[test]
fn semigroup_examples() {
    assert_eq!(
        ok(&["semigroup", "--check-iso", "ab"], None),
        "syntactic order: 5\naction order: 5\nISOMORPHIC\n"
    );
    assert_eq!(ok(&["semigroup", "--action", "ab"], None), "order: 5\n");
    for u in ["aab", "abb", "aabab", "abaabb", "abc", "acb", "aabbc"] {
        assert!(ok(&["semigroup", "--check-iso", u], None).ends_with("\nISOMORPHIC\n"));
    }
    assert_eq!(code(&["semigroup", "--action", "abab"], None), 2);
}

#[test]
fn semigroup_table_is_consistent() {
    let out = ok(&["semigroup", "--table", "ab"], None);
    let (head, grid) = out.split_once("\n\n").unwrap();
    assert!(head.starts_with("order: 5\n"));
    let rows: Vec<Vec<usize>> = grid
        .lines()
        .map(|l| l.split_whitespace().map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    for x in 0..5 {
        for y in 0..5 {
            for z in 0..5 {
                assert_eq!(rows[rows[x][y]][z], rows[x][rows[y][z]]);
            }
        }
    }
}

#[test]
fn factors_examples() {
    assert_eq!(ok(&["factors", "abab"], None), "7\n");
    assert_eq!(ok(&["factors", "abc"], None), "6\n");
    let table = ok(&["factors", "--max", "3", "2"], None);
    let last: Vec<&str> = table.lines().last().unwrap().split('\t').collect();
    assert_eq!(last[..2], ["3", "5"]);
    let wit = ok(&["factors", "--witness", "16", "2"], None);
    assert!(
        wit.contains("span: 4\n") && wit.contains("bound: 91\n"),
        "{wit}"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["invert", "babbaaba"], None), 0);
    assert_eq!(code(&["transform", "aab\nba"], None), 2);
    assert_eq!(code(&["transform", "abab"], None), 2);
    assert_eq!(code(&["transform", "--canonicalize", "ba"], None), 0);
    assert_eq!(code(&["transform", "ab x0"], None), 2);
    assert_eq!(code(&["transform", "{not json"], None), 2);
    assert_eq!(code(&["no-such-command"], None), 2);
    assert_eq!(
        code(
            &["--guard-cells", "5", "invert", "--table", "babbaaba"],
            None
        ),
        3
    );
    assert_eq!(code(&["factors", "--max", "20", "2"], None), 3);
    assert_eq!(
        code(
            &["--guard-cells", "3", "semigroup", "--action", "aab"],
            None
        ),
        3
    );
    assert_eq!(code(&["debruijn", "--least", "2", "30"], None), 3);
}

#[test]
fn transform_error_names_line() {
    let out = ebwt(&["transform"], Some("aab\nab\nbaa\n"));
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("line 3") && msg.contains("\"baa\""), "{msg}");
}
