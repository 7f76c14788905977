use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use flate2::write::GzEncoder;
use flate2::Compression;
use shallow::{evaluate, format_report, read_corpus_str, train_baseline, Chunker, EvalConfig};
use tempfile::TempDir;

const TREES: &str = "\
( (S (NP-SBJ (PRP He)) (VP (VBZ reckons) (SBAR (-NONE- 0) (S (NP-SBJ (DT the) (JJ current) (NN account) (NN deficit)) (VP (MD will) (VP (VB narrow) (PP-DIR (TO to) (NP (QP (RB only) (# #) (CD 1.8) (CD billion)) (-NONE- *U*))) (PP-TMP (IN in) (NP-TMP (NNP September)))))))) (. .)) )
( (S (NP-SBJ (NNP Mr.) (NNP Icahn)) (VP (MD may) (RB not) (VP (VB want) (S (NP-SBJ (-NONE- *-1)) (VP (TO to) (VP (VB sell) (NP (PRP it))))))) (. .)) )
( (S (NP-SBJ (PRP They)) (VP (VBD went) (PRT (RP on)) (PP (IN with) (NP (DT the) (NN plan)))) (. .)) )
";

const TAGGED: &str = "\
He PRP B-NP
reckons VBZ B-VP
the DT B-NP
deficit NN I-NP
. . O

They PRP B-NP
went VBD B-VP
on RP B-PRT
with IN B-PP
the DT B-NP
plan NN I-NP
. . O
";

fn shallow(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_shallow"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    // The binary may exit before reading its input.
    if let Err(err) = pipe.write_all(stdin.unwrap_or_default().as_bytes()) {
        assert_eq!(err.kind(), std::io::ErrorKind::BrokenPipe);
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn convert_then_decode() {
    let out = stdout(&shallow(&["convert"], Some(TREES)));
    let corpus = read_corpus_str(&out).unwrap();
    assert_eq!(corpus.len(), 3);
    let brackets = stdout(&shallow(&["decode"], Some(&out)));
    let lines: Vec<&str> = brackets.lines().collect();
    assert_eq!(
        lines[1],
        "[NP Mr./NNP Icahn/NNP ] [VP may/MD not/RB want/VB to/TO sell/VB ] [NP it/PRP ] ./."
    );
    assert_eq!(
        lines[2],
        "[NP They/PRP ] [VP went/VBD ] [PRT on/RP ] [PP with/IN ] [NP the/DT plan/NN ] ./."
    );
    assert_eq!(stdout(&shallow(&["encode"], Some(&brackets))), out);
}

#[test]
fn custom_head_rules_are_loaded() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "rules.txt", "head NP right NN\n");
    let out = shallow(&["convert", "--head-rules", s(&bad)], Some(TREES));
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn repair_rewrites_inside_tags() {
    let out = stdout(&shallow(
        &["repair"],
        Some("a DT I-NP\nb NN I-NP\nc VBZ I-VP\nd . O\n"),
    ));
    assert_eq!(out, "a DT B-NP\nb NN I-NP\nc VBZ B-VP\nd . O\n\n");
}

#[test]
fn self_evaluation_is_perfect() {
    let dir = TempDir::new().unwrap();
    let gold = write(&dir, "gold.txt", TAGGED);
    let out = stdout(&shallow(
        &["eval", "--gold", s(&gold), "--pred", s(&gold)],
        None,
    ));
    assert!(
        out.starts_with("precision: 100.00%; recall: 100.00%; FB1: 100.00\n"),
        "{out}"
    );
}

#[test]
fn cli_pipeline_matches_library() {
    let dir = TempDir::new().unwrap();
    let gold = write(&dir, "gold.txt", TAGGED);
    let model = dir.path().join("baseline.model");
    stdout(&shallow(
        &["baseline-train", s(&gold), "--model", s(&model)],
        None,
    ));
    let pred = dir.path().join("pred.txt");
    stdout(&shallow(
        &["tag", s(&gold), "--model", s(&model), "--out", s(&pred)],
        None,
    ));
    let report = stdout(&shallow(
        &["eval", "--gold", s(&gold), "--pred", s(&pred)],
        None,
    ));

    let corpus = read_corpus_str(TAGGED).unwrap();
    let trained = train_baseline(&corpus).unwrap();
    let expected = evaluate(
        &corpus,
        &trained.tag_corpus(&corpus).unwrap(),
        &EvalConfig::default(),
    )
    .unwrap();
    assert_eq!(report, format_report(&expected));
    assert_eq!(std::fs::read_to_string(&model).unwrap(), trained.to_text());
}

#[test]
fn markov_training_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let gold = write(&dir, "gold.txt", TAGGED);
    let (a, b) = (dir.path().join("a.model"), dir.path().join("b.model"));
    for m in [&a, &b] {
        stdout(&shallow(
            &[
                "markov-train",
                s(&gold),
                "--model",
                s(m),
                "--smoothing",
                "0.5",
                "--cutoff",
                "1",
            ],
            None,
        ));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("# shallow markov model v1\nsmoothing\t0.5\ncutoff\t1\n"));
    let tagged = stdout(&shallow(&["tag", "--model", s(&a), s(&gold)], None));
    assert_eq!(read_corpus_str(&tagged).unwrap().len(), 2);
}

#[test]
fn gzipped_input() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("gold.txt.gz");
    let mut enc = GzEncoder::new(Vec::new(), Compression::default());
    enc.write_all(TAGGED.as_bytes()).unwrap();
    std::fs::write(&path, enc.finish().unwrap()).unwrap();
    let out = stdout(&shallow(&["stats", s(&path)], None));
    assert!(
        out.ends_with("sentences: 2; tokens: 12; chunks: 8\n"),
        "{out}"
    );
    assert!(out.contains("      4  50%  NP\n"), "{out}");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let gold = write(&dir, "gold.txt", TAGGED);
    let short = write(&dir, "short.txt", "He PRP B-NP\n");
    let bad = write(&dir, "bad.txt", "He PRP B-XX\n");

    assert_eq!(shallow(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(
        shallow(&["eval", "--gold", s(&gold)], None).status.code(),
        Some(2)
    );
    let out = shallow(
        &[
            "eval",
            "--gold",
            s(&gold),
            "--pred",
            s(&gold),
            "--beta",
            "-1",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(2));

    let out = shallow(&["eval", "--gold", s(&gold), "--pred", s(&bad)], None);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(
        shallow(&["convert"], Some("(S (NP x)")).status.code(),
        Some(3)
    );

    let out = shallow(&["eval", "--gold", s(&gold), "--pred", s(&short)], None);
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());

    let missing = dir.path().join("missing.txt");
    assert_eq!(
        shallow(&["stats", s(&missing)], None).status.code(),
        Some(1)
    );
}

#[test]
fn key_value_report() {
    let dir = TempDir::new().unwrap();
    let gold = write(&dir, "gold.txt", TAGGED);
    let out = stdout(&shallow(
        &[
            "eval",
            "--gold",
            s(&gold),
            "--pred",
            s(&gold),
            "--format",
            "key-value",
        ],
        None,
    ));
    assert!(out.contains("overall.correct=8\n"), "{out}");
    assert!(out.contains("PRT.f=100\n"), "{out}");
}
