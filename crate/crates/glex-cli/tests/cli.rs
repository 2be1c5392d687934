//! End-to-end tests of the `glex` binary: exit codes, output formats,
//! and error handling.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn glex() -> Command {
    Command::new(env!("CARGO_BIN_EXE_glex"))
}

fn sample_ldl() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../glex/data/sample.ldl")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no exit code")
}

fn compile_sample(dir: &Path) -> PathBuf {
    let out = dir.join("sample.glex");
    let output = glex()
        .arg("compile")
        .arg(sample_ldl())
        .arg("-o")
        .arg(&out)
        .output()
        .expect("compile runs");
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    out
}

#[test]
fn compile_writes_a_loadable_lexicon() {
    let dir = tempfile::tempdir().unwrap();
    let glex_path = compile_sample(dir.path());
    assert!(glex_path.exists());
    let bytes = fs::read(&glex_path).unwrap();
    assert_eq!(&bytes[0..4], b"GLEX");
}

#[test]
fn compile_check_mode_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let ldl = dir.path().join("one.ldl");
    fs::write(&ldl, "lemma κεφάλι\n  lexeme n\n    stem κε-φαλ\n    infl ι@P\n  end\nend\n")
        .unwrap();
    let output = glex().arg("compile").arg(&ldl).arg("--check").output().unwrap();
    assert_eq!(code(&output), 0);
    assert!(!dir.path().join("one.glex").exists());
}

#[test]
fn compile_empty_file_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let ldl = dir.path().join("empty.ldl");
    fs::write(&ldl, "").unwrap();
    let out = dir.path().join("empty.glex");
    let output = glex().arg("compile").arg(&ldl).arg("-o").arg(&out).output().unwrap();
    assert_eq!(code(&output), 0);
    assert!(out.exists());
}

#[test]
fn compile_malformed_file_exits_one_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let ldl = dir.path().join("bad.ldl");
    fs::write(&ldl, "lemma κεφάλι\n  lexeme n\n    stem κε-φάλ\n    infl ι@P\n  end\nend\n")
        .unwrap();
    let output = glex().arg("compile").arg(&ldl).output().unwrap();
    assert_eq!(code(&output), 1);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("stress-in-morpheme"), "{stderr}");
    assert!(stderr.contains("bad.ldl:3:"), "{stderr}");
}

#[test]
fn compile_unreadable_input_exits_two() {
    let output = glex().arg("compile").arg("/nonexistent/x.ldl").output().unwrap();
    assert_eq!(code(&output), 2);
}

#[test]
fn check_reports_findings_and_respects_strict() {
    let dir = tempfile::tempdir().unwrap();
    let glex_path = compile_sample(dir.path());
    let text = dir.path().join("text.txt");
    fs::write(&text, "κεφάλι κέφαλι\n").unwrap();

    let output =
        glex().arg("check").arg("--lexicon").arg(&glex_path).arg(&text).output().unwrap();
    assert_eq!(code(&output), 0, "findings are not failures without --strict");
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("κέφαλι"), "{stdout}");
    assert!(stdout.contains("stress-error"), "{stdout}");
    assert!(!stdout.contains("7:κεφάλι"), "correct token must not be a finding: {stdout}");

    let output = glex()
        .arg("check")
        .arg("--lexicon")
        .arg(&glex_path)
        .arg("--strict")
        .arg(&text)
        .output()
        .unwrap();
    assert_eq!(code(&output), 1);
}

#[test]
fn check_clean_text_is_silent() {
    let dir = tempfile::tempdir().unwrap();
    let glex_path = compile_sample(dir.path());
    let text = dir.path().join("text.txt");
    fs::write(&text, "κεφάλι και θάλασσα. 42!\n").unwrap();
    let output = glex()
        .arg("check")
        .arg("--lexicon")
        .arg(&glex_path)
        .arg("--strict")
        .arg(&text)
        .output()
        .unwrap();
    assert_eq!(code(&output), 0);
    assert!(output.stdout.is_empty());
}

#[test]
fn check_json_emits_parseable_records() {
    let dir = tempfile::tempdir().unwrap();
    let glex_path = compile_sample(dir.path());
    let text = dir.path().join("text.txt");
    fs::write(&text, "κέφαλι eμαιλ ξζξζ\n").unwrap();
    let output = glex()
        .arg("check")
        .arg("--lexicon")
        .arg(&glex_path)
        .arg("--suggest")
        .arg("3")
        .arg("--json")
        .arg(&text)
        .output()
        .unwrap();
    assert_eq!(code(&output), 0);
    let stdout = String::from_utf8(output.stdout).unwrap();
    let records: Vec<serde_json::Value> =
        stdout.lines().map(|l| serde_json::from_str(l).expect("valid JSON")).collect();
    assert_eq!(records.len(), 3, "{stdout}");

    assert_eq!(records[0]["token"], "κέφαλι");
    assert_eq!(records[0]["verdict"], "stress-error");
    assert_eq!(records[0]["offset"], 0);
    assert_eq!(records[0]["suggestions"][0]["surface"], "κεφάλι");
    assert_eq!(records[0]["suggestions"][0]["tier"], "stress");

    assert_eq!(records[1]["token"], "eμαιλ");
    assert_eq!(records[1]["verdict"], "mixed");

    assert_eq!(records[2]["token"], "ξζξζ");
    assert_eq!(records[2]["verdict"], "unknown");
}

#[test]
fn check_missing_or_corrupt_lexicon_exits_two() {
    let output = glex().arg("check").arg("--lexicon").arg("/nonexistent.glex").output().unwrap();
    assert_eq!(code(&output), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.glex");
    fs::write(&bad, b"not a lexicon at all").unwrap();
    let text = dir.path().join("t.txt");
    fs::write(&text, "x").unwrap();
    let output =
        glex().arg("check").arg("--lexicon").arg(&bad).arg(&text).output().unwrap();
    assert_eq!(code(&output), 2);

    // a truncated real lexicon is also rejected whole
    let good = compile_sample(dir.path());
    let bytes = fs::read(&good).unwrap();
    let truncated = dir.path().join("trunc.glex");
    fs::write(&truncated, &bytes[..bytes.len() / 2]).unwrap();
    let output =
        glex().arg("check").arg("--lexicon").arg(&truncated).arg(&text).output().unwrap();
    assert_eq!(code(&output), 2);
}

#[test]
fn hyphenate_words_and_strict_mode() {
    let output = glex().arg("hyphenate").arg("κεφάλι").arg("α").arg("ρρ").output().unwrap();
    assert_eq!(code(&output), 0);
    let stdout = String::from_utf8_lossy(&output.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "κε-φά-λι");
    assert_eq!(lines[1], "α");
    assert!(lines[2].contains("no vowel"), "{stdout}");

    let output =
        glex().arg("hyphenate").arg("--strict").arg("κεφάλι").arg("ρρ").output().unwrap();
    assert_eq!(code(&output), 1);
}

#[test]
fn hyphenate_reads_stdin() {
    let mut child = glex()
        .arg("hyphenate")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all("θάλασσα εύρεση\n".as_bytes()).unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(code(&output), 0);
    assert_eq!(String::from_utf8_lossy(&output.stdout), "θά-λασ-σα\nεύ-ρε-ση\n");
}

#[test]
fn hyphenate_uses_lexicon_exceptions_when_given() {
    let dir = tempfile::tempdir().unwrap();
    let glex_path = compile_sample(dir.path());
    // βιβλία: the derived rules alone would keep ι+α together, the
    // lexicon's stored pattern splits it
    let output = glex()
        .arg("hyphenate")
        .arg("--lexicon")
        .arg(&glex_path)
        .arg("βιβλία")
        .output()
        .unwrap();
    assert_eq!(code(&output), 0);
    assert_eq!(String::from_utf8_lossy(&output.stdout).trim(), "βι-βλί-α");
}

#[test]
fn forms_prints_the_paradigm() {
    let dir = tempfile::tempdir().unwrap();
    let glex_path = compile_sample(dir.path());
    let output =
        glex().arg("forms").arg("--lexicon").arg(&glex_path).arg("κεφάλι").output().unwrap();
    assert_eq!(code(&output), 0);
    let stdout = String::from_utf8_lossy(&output.stdout);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4, "{stdout}");
    assert!(lines[0].starts_with("κεφάλι\t"), "{stdout}");
    assert!(lines[0].contains("stem:κεφαλ+infl:ι"), "{stdout}");
    assert!(lines[0].ends_with("κε-φά-λι"), "{stdout}");
    assert!(lines[1].starts_with("κεφαλιού\t"), "{stdout}");
}

#[test]
fn forms_json_and_missing_headword() {
    let dir = tempfile::tempdir().unwrap();
    let glex_path = compile_sample(dir.path());
    let output = glex()
        .arg("forms")
        .arg("--lexicon")
        .arg(&glex_path)
        .arg("--json")
        .arg("κεφάλι")
        .output()
        .unwrap();
    assert_eq!(code(&output), 0);
    let stdout = String::from_utf8(output.stdout).unwrap();
    for line in stdout.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["surface"].is_string());
        assert!(v["segmentation"].is_array());
    }

    let output = glex()
        .arg("forms")
        .arg("--lexicon")
        .arg(&glex_path)
        .arg("ανύπαρκτο")
        .output()
        .unwrap();
    assert_eq!(code(&output), 1);
}

#[test]
fn stats_reports_counts_and_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let glex_path = compile_sample(dir.path());
    let output = glex().arg("stats").arg("--lexicon").arg(&glex_path).output().unwrap();
    assert_eq!(code(&output), 0);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("lemmas: 184"), "{stdout}");
    assert!(stdout.contains("forms: 1644"), "{stdout}");
    assert!(stdout.contains("section TRIE:"), "{stdout}");
    assert!(stdout.contains("trie/key-list ratio: 0."), "{stdout}");
}

#[test]
fn stats_on_an_empty_lexicon() {
    let dir = tempfile::tempdir().unwrap();
    let ldl = dir.path().join("empty.ldl");
    fs::write(&ldl, "# nothing\n").unwrap();
    let out = dir.path().join("empty.glex");
    let output = glex().arg("compile").arg(&ldl).arg("-o").arg(&out).output().unwrap();
    assert_eq!(code(&output), 0);
    let output = glex().arg("stats").arg("--lexicon").arg(&out).output().unwrap();
    assert_eq!(code(&output), 0);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("lemmas: 0"), "{stdout}");
    assert!(stdout.contains("forms: 0"), "{stdout}");
    assert!(stdout.contains("ratio: n/a"), "{stdout}");
}
