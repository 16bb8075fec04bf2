//! End-to-end checks of the command-line surface: identity evaluation,
//! self-comparison significance, version output, exit codes, and the
//! token dump format.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tsa_core::corpus::{generate_synthetic, save_corpus, SynthConfig};
use tsa_core::eval::{gold_as_predictions, predictions_to_dump};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_tsa")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn tsa")
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tsa_cli_{name}_{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn version_reports_model_format() {
    let out = run_in(&std::env::temp_dir(), &["--version"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("model format v1"), "{text}");
}

#[test]
fn evaluating_gold_as_predictions_scores_everything_100() {
    let dir = workdir("identity");
    let (posts, _) = generate_synthetic(&SynthConfig {
        n_posts: 15,
        ..Default::default()
    })
    .unwrap();
    save_corpus(dir.join("gold.jsonl"), &posts).unwrap();
    std::fs::write(
        dir.join("preds.tsv"),
        predictions_to_dump(&gold_as_predictions(&posts)),
    )
    .unwrap();

    let out = run_in(
        &dir,
        &["evaluate", "--gold", "gold.jsonl", "--predictions", "preds.tsv", "--out", "r.json"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = String::from_utf8(out.stdout).unwrap();
    for metric in ["target_recall", "target_f", "acc_sent", "f_all"] {
        let line = table.lines().find(|l| l.starts_with(metric)).unwrap();
        assert!(line.ends_with("100.0"), "{line}");
    }
}

#[test]
fn sigtest_against_self_gives_p_one() {
    let dir = workdir("sigself");
    let (posts, _) = generate_synthetic(&SynthConfig {
        n_posts: 12,
        ..Default::default()
    })
    .unwrap();
    save_corpus(dir.join("gold.jsonl"), &posts).unwrap();
    let dump = predictions_to_dump(&gold_as_predictions(&posts));
    std::fs::write(dir.join("a.tsv"), &dump).unwrap();
    std::fs::write(dir.join("b.tsv"), &dump).unwrap();

    let out = run_in(
        &dir,
        &[
            "sigtest", "--a", "a.tsv", "--b", "b.tsv", "--gold", "gold.jsonl",
            "--metric", "f_all", "--iters", "500",
        ],
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split('\t').collect();
    assert_eq!(fields[0], "f_all");
    assert_eq!(fields[1].parse::<f64>().unwrap(), 0.0);
    assert_eq!(fields[2].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn tokenize_emits_two_column_rows() {
    let dir = workdir("tok");
    let (posts, _) = generate_synthetic(&SynthConfig {
        n_posts: 2,
        ..Default::default()
    })
    .unwrap();
    save_corpus(dir.join("c.jsonl"), &posts).unwrap();
    let out = run_in(
        &dir,
        &["tokenize", "--input", "c.jsonl", "--scheme", "lemma_d3", "--post-id", &posts[0].id],
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with("##"))
        .collect();
    assert!(!rows.is_empty());
    for row in rows {
        assert_eq!(row.split('\t').count(), 2, "{row}");
    }
}

#[test]
fn overlap_match_mode_is_a_polite_stub() {
    let dir = workdir("overlap");
    let (posts, _) = generate_synthetic(&SynthConfig {
        n_posts: 3,
        ..Default::default()
    })
    .unwrap();
    save_corpus(dir.join("gold.jsonl"), &posts).unwrap();
    std::fs::write(
        dir.join("p.tsv"),
        predictions_to_dump(&gold_as_predictions(&posts)),
    )
    .unwrap();
    let out = run_in(
        &dir,
        &[
            "evaluate", "--gold", "gold.jsonl", "--predictions", "p.tsv",
            "--match-mode", "overlap", "--out", "r.json",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stub"));
}

#[test]
fn usage_errors_exit_one_data_errors_exit_two() {
    let dir = workdir("codes");
    let out = run_in(&dir, &["no-such-command"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run_in(
        &dir,
        &["split", "--input", "absent.jsonl", "--out-dir", "x"],
    );
    assert_eq!(out.status.code(), Some(2));

    // bad ratios are a data/config problem, not a clap-level usage error
    let (posts, _) = generate_synthetic(&SynthConfig {
        n_posts: 5,
        ..Default::default()
    })
    .unwrap();
    save_corpus(dir.join("c.jsonl"), &posts).unwrap();
    let out = run_in(
        &dir,
        &["split", "--input", "c.jsonl", "--ratios", "0.9,0.9,0.9", "--out-dir", "x"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sum to 1"));
}

#[test]
fn data_dir_env_var_resolves_relative_inputs() {
    let data_home = workdir("datahome");
    let (posts, _) = generate_synthetic(&SynthConfig {
        n_posts: 3,
        ..Default::default()
    })
    .unwrap();
    save_corpus(data_home.join("corpus.jsonl"), &posts).unwrap();

    let elsewhere = workdir("elsewhere");
    let out = Command::new(bin())
        .args(["tokenize", "--input", "corpus.jsonl", "--scheme", "lemma"])
        .current_dir(&elsewhere)
        .env("TSA_DATA_DIR", &data_home)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
