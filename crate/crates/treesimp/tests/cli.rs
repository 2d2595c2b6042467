//! End-to-end tests of the `treesimp` binary: flags, formats, exit codes.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_treesimp"))
}

fn rules_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("rules/default.rules")
}

fn corpus_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/sample_corpus.ptb")
}

fn run_with_stdin(mut cmd: Command, input: &str) -> Output {
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn write_temp(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

const TWO_TREES: &str = "(S (NP (NP (NN role)) (PP (IN of) (NP (NN p53)))) (VP (VBZ matters)) (. .))\n(S (NP (NN water)) (VP (VBZ boils)) (. .))\n";

#[test]
fn sentences_format_emits_blank_separated_blocks() {
    let mut cmd = bin();
    cmd.arg("simplify")
        .arg("--rules")
        .arg(rules_path())
        .args(["--format", "sentences"]);
    let out = run_with_stdin(cmd, TWO_TREES);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let blocks: Vec<&str> = stdout.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 2, "{stdout}");
    assert!(blocks[0].contains("Role of p53 matters."));
    assert!(blocks[0].contains("Role matters."));
    assert_eq!(blocks[1], "Water boils.");
}

#[test]
fn trees_format_emits_canonical_serializations() {
    let mut cmd = bin();
    cmd.arg("simplify")
        .arg("--rules")
        .arg(rules_path())
        .args(["--format", "trees", "--jobs", "1"]);
    let out = run_with_stdin(cmd, TWO_TREES);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let blocks: Vec<&str> = stdout.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 2, "{stdout}");
    // every line parses back to a well-formed tree
    for line in stdout.lines().filter(|l| !l.is_empty()) {
        assert!(line.starts_with("(S "), "{line}");
        treesimp::parse_ptb(line).unwrap();
    }
    assert!(stdout.contains("(S (NP (NN role)) (VP (VBZ matters)) (. .))"));
}

#[test]
fn jsonl_format_has_stable_fields_and_provenance() {
    let mut cmd = bin();
    cmd.arg("simplify").arg("--rules").arg(rules_path());
    let out = run_with_stdin(cmd, TWO_TREES);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let records: Vec<serde_json::Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(records.len() >= 3);
    for r in &records {
        let obj = r.as_object().unwrap();
        for field in [
            "id",
            "sentence",
            "tree",
            "provenance",
            "tokenCount",
            "isBase",
        ] {
            assert!(obj.contains_key(field), "missing {field} in {r}");
        }
    }
    assert_eq!(records[0]["isBase"], true);
    assert_eq!(records[0]["provenance"].as_array().unwrap().len(), 0);
    let derived = records
        .iter()
        .find(|r| r["sentence"] == "Role matters.")
        .expect("prepositional postmodifier drop");
    assert_eq!(derived["provenance"][0]["rule"], "np_pp_postmod");
    assert!(derived["provenance"][0]["path"].is_array());
    assert_eq!(derived["tokenCount"], 3);
}

#[test]
fn missing_rules_file_is_fatal() {
    let out = bin()
        .arg("simplify")
        .args(["--rules", "/nonexistent/missing.rules"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_sentence_is_recorded_and_run_continues() {
    let mut cmd = bin();
    cmd.arg("simplify").arg("--rules").arg(rules_path());
    let input = "(S (NP (NN water)) (VP (VBZ boils)) (. .))\n(S (NP broken\n(S (NP (NN code)) (VP (VBZ runs)) (. .))\n";
    let out = run_with_stdin(cmd, input);
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let records: Vec<serde_json::Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(records
        .iter()
        .any(|r| r["id"] == 1 && r["error"].is_string()));
    assert!(records
        .iter()
        .any(|r| r["id"] == 0 && r["sentence"] == "Water boils."));
    assert!(records
        .iter()
        .any(|r| r["id"] == 2 && r["sentence"] == "Code runs."));
}

#[test]
fn stdout_is_byte_identical_across_runs() {
    let run = || {
        let mut cmd = bin();
        cmd.arg("simplify")
            .arg("--rules")
            .arg(rules_path())
            .arg(corpus_path());
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn corpus_results_arrive_in_input_order() {
    let out = bin()
        .arg("simplify")
        .arg("--rules")
        .arg(rules_path())
        .arg(corpus_path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let ids: Vec<i64> = stdout
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["id"]
                .as_i64()
                .unwrap()
        })
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted, "ids must be nondecreasing");
    let distinct: std::collections::BTreeSet<i64> = ids.into_iter().collect();
    assert_eq!(distinct.len(), 189);
}

#[test]
fn no_base_echo_input_and_collapse_duplicates() {
    let mut cmd = bin();
    cmd.arg("simplify").arg("--rules").arg(rules_path()).args([
        "--no-base",
        "--echo-input",
        "--collapse-duplicates",
    ]);
    let out = run_with_stdin(cmd, TWO_TREES);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let records: Vec<serde_json::Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // echoed inputs are flagged; bases are suppressed
    assert_eq!(records[0]["echoedInput"], true);
    assert!(records
        .iter()
        .filter(|r| r.get("echoedInput").is_none())
        .all(|r| r["isBase"] == false));
    // collapsing leaves sentence strings unique per input
    let mut seen = std::collections::BTreeSet::new();
    for r in records.iter().filter(|r| r.get("echoedInput").is_none()) {
        let key = (r["id"].as_i64().unwrap(), r["sentence"].to_string());
        assert!(seen.insert(key), "duplicate sentence survived: {r}");
    }
}

#[test]
fn tag_filter_restricts_rules() {
    let mut cmd = bin();
    cmd.arg("simplify")
        .arg("--rules")
        .arg(rules_path())
        .args(["--tags", "precise"]);
    let out = run_with_stdin(cmd, TWO_TREES);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    // np_pp_postmod is untagged, so "Role matters." must not appear
    assert!(!stdout.contains("\"Role matters.\""), "{stdout}");
}

#[test]
fn stats_file_reports_run_shape() {
    let dir = tempfile::tempdir().unwrap();
    let stats_path = dir.path().join("stats.json");
    let mut cmd = bin();
    cmd.arg("simplify")
        .arg("--rules")
        .arg(rules_path())
        .arg("--stats")
        .arg(&stats_path)
        .args(["--jobs", "2"]);
    let out = run_with_stdin(cmd, TWO_TREES);
    assert!(out.status.success());
    let stats: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&stats_path).unwrap()).unwrap();
    assert_eq!(stats["sentencesIn"], 2);
    assert_eq!(stats["rulesLoaded"], 12);
    assert_eq!(stats["tokensIn"], 8);
    assert!(stats["outputsTotal"].as_u64().unwrap() >= 3);
    assert_eq!(stats["wallTimePerSentenceMs"].as_array().unwrap().len(), 2);
    assert!(stats["ruleFireCounts"]["np_pp_postmod"].as_u64().unwrap() >= 1);
    assert!(stats["outputsPerSentence"].is_object());
}

#[test]
fn validate_rules_prints_summary() {
    let out = bin()
        .arg("validate-rules")
        .arg(rules_path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("12 rules OK"), "{stdout}");
    assert_eq!(
        stdout
            .lines()
            .filter(|l| l.contains("partition=ok shrink=ok"))
            .count(),
        12
    );
}

#[test]
fn validate_rules_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let unbound = write_temp(
        dir.path(),
        "unbound.rules",
        "rule r mode=optional tags=()\n  match NP [ $a:NP $p:PP ]\n  keep [ $a ]\n  del { $p }\n  spawn { S: $x }\n",
    );
    let out = bin().arg("validate-rules").arg(&unbound).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("$x"));

    let unpartitioned = write_temp(
        dir.path(),
        "partition.rules",
        "rule r mode=optional tags=()\n  match NP [ $a:NP $p:PP ]\n  keep [ $a ]\n",
    );
    let out = bin()
        .arg("validate-rules")
        .arg(&unpartitioned)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("partitioned"));
}

#[test]
fn bench_runs_and_reports_exponent() {
    let out = bin()
        .arg("bench")
        .args(["--sizes", "10,20,40", "--seed", "7", "--reps", "2"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("fitted growth exponent"), "{stdout}");
    assert!(stdout.lines().count() >= 4);
}

#[test]
fn multiline_blocks_parse_with_override() {
    let mut cmd = bin();
    cmd.arg("simplify").arg("--rules").arg(rules_path()).args([
        "--format",
        "sentences",
        "--input-format",
        "blocks",
    ]);
    let input = "(S\n  (NP (NN water))\n  (VP (VBZ boils))\n  (. .))\n\n(S\n  (NP (NN code))\n  (VP (VBZ runs))\n  (. .))\n";
    let out = run_with_stdin(cmd, input);
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim_end().split("\n\n").count(), 2);
}

#[test]
fn bad_flags_are_fatal_and_help_is_not() {
    let out = bin().arg("simplify").output().unwrap(); // missing --rules
    assert_eq!(out.status.code(), Some(1));
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("simplify"));
}
