//! `glex` — compile LDL lexicons and run the spell checker, hyphenator,
//! and form inspector over the compiled GLEX file.
//!
//! Exit codes: 0 clean, 1 findings or input errors, 2 environment errors
//! (missing or corrupt lexicon, unreadable input).

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use glex::alphabet::{classify, nfc, TokenClass};
use glex::binary;
use glex::compile::{compile, CompiledLexicon};
use glex::diag::{has_errors, Severity};
use glex::hyphen::{hyphenate, HyphenError, HyphenRuleSet};
use glex::ldl::{parse, validate};
use glex::speller::{check, suggest, CheckResult};

#[derive(Parser)]
#[command(name = "glex", version, about = "Greek lexicon compiler and NLP tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile an LDL source into a GLEX lexicon
    Compile {
        /// LDL input path
        input: PathBuf,
        /// GLEX output path
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Validate only; write nothing
        #[arg(long)]
        check: bool,
    },
    /// Spell-check text against a compiled lexicon
    Check {
        /// GLEX lexicon path
        #[arg(short, long)]
        lexicon: PathBuf,
        /// Text input path (stdin when omitted)
        input: Option<PathBuf>,
        /// Emit up to N ranked suggestions per finding
        #[arg(long, value_name = "N")]
        suggest: Option<usize>,
        /// Exit 1 when any finding is reported
        #[arg(long)]
        strict: bool,
        /// One JSON record per finding
        #[arg(long)]
        json: bool,
    },
    /// Hyphenate words with rules, or rules plus lexicon
    Hyphenate {
        /// Optional GLEX lexicon for stored patterns and exceptions
        #[arg(short, long)]
        lexicon: Option<PathBuf>,
        /// Words to hyphenate (stdin when omitted)
        words: Vec<String>,
        /// Exit 1 when any word cannot be hyphenated
        #[arg(long)]
        strict: bool,
    },
    /// Print every word form of a lemma
    Forms {
        /// GLEX lexicon path
        #[arg(short, long)]
        lexicon: PathBuf,
        /// The lemma headword
        headword: String,
        /// One JSON record per form
        #[arg(long)]
        json: bool,
    },
    /// Lexicon statistics and index sizes
    Stats {
        /// GLEX lexicon path
        #[arg(short, long)]
        lexicon: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Compile { input, output, check } => cmd_compile(&input, output.as_deref(), check),
        Command::Check { lexicon, input, suggest, strict, json } => {
            cmd_check(&lexicon, input.as_deref(), suggest, strict, json)
        }
        Command::Hyphenate { lexicon, words, strict } => {
            cmd_hyphenate(lexicon.as_deref(), &words, strict)
        }
        Command::Forms { lexicon, headword, json } => cmd_forms(&lexicon, &headword, json),
        Command::Stats { lexicon } => cmd_stats(&lexicon),
    };
    match code {
        Ok(code) => code,
        Err(err) => {
            eprintln!("glex: {err}");
            ExitCode::from(2)
        }
    }
}

/// Environment failures (exit 2) travel as errors; findings set the code.
type CmdResult = Result<ExitCode, anyhow::Error>;

fn load_lexicon(path: &Path) -> Result<CompiledLexicon, anyhow::Error> {
    let bytes = fs::read(path)
        .map_err(|e| anyhow::anyhow!("cannot read lexicon {}: {e}", path.display()))?;
    binary::read_from_slice(&bytes)
        .map_err(|e| anyhow::anyhow!("cannot load lexicon {}: {e}", path.display()))
}

fn read_input(path: Option<&Path>) -> Result<String, anyhow::Error> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| anyhow::anyhow!("cannot read {}: {e}", p.display()))
        }
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn cmd_compile(input: &Path, output: Option<&Path>, check_only: bool) -> CmdResult {
    let source = fs::read_to_string(input)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", input.display()))?;
    let name = input.display().to_string();
    let (doc, mut diags) = parse(&name, &source);
    diags.extend(validate(&doc));
    for d in &diags {
        eprintln!("{}", d.display_with_source(&name));
    }
    if has_errors(&diags) {
        return Ok(ExitCode::from(1));
    }
    let lexicon = match compile(&doc) {
        Ok(cl) => cl,
        Err(errors) => {
            for d in &errors {
                if d.severity == Severity::Error {
                    eprintln!("{}", d.display_with_source(&name));
                }
            }
            return Ok(ExitCode::from(1));
        }
    };
    if check_only {
        eprintln!(
            "{}: ok ({} lemmas, {} forms)",
            name,
            lexicon.lemmas().len(),
            lexicon.forms().len()
        );
        return Ok(ExitCode::SUCCESS);
    }
    let output = match output {
        Some(p) => p.to_path_buf(),
        None => input.with_extension("glex"),
    };
    let mut file = fs::File::create(&output)
        .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", output.display()))?;
    binary::write_binary(&lexicon, &mut file)?;
    eprintln!(
        "wrote {} ({} lemmas, {} forms)",
        output.display(),
        lexicon.lemmas().len(),
        lexicon.forms().len()
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SuggestionRecord {
    surface: String,
    tier: &'static str,
    detail: String,
}

#[derive(Serialize)]
struct FindingRecord<'a> {
    offset: usize,
    token: &'a str,
    verdict: &'static str,
    suggestions: Vec<SuggestionRecord>,
}

/// Maximal runs of alphabetic scalars, with their scalar offsets.
fn tokens(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, c) in text.chars().enumerate() {
        if c.is_alphabetic() {
            if current.is_empty() {
                start = i;
            }
            current.push(c);
        } else if !current.is_empty() {
            out.push((start, std::mem::take(&mut current)));
        }
    }
    if !current.is_empty() {
        out.push((start, current));
    }
    out
}

fn cmd_check(
    lexicon: &Path,
    input: Option<&Path>,
    suggest_n: Option<usize>,
    strict: bool,
    json: bool,
) -> CmdResult {
    let cl = load_lexicon(lexicon)?;
    let text = read_input(input)?;
    let text = nfc(&text);

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut checked = 0usize;
    let mut stress = 0usize;
    let mut unknown = 0usize;
    let mut mixed = 0usize;

    for (offset, token) in tokens(&text) {
        let verdict = match classify(&token) {
            TokenClass::NonGreek => continue,
            TokenClass::Mixed => {
                mixed += 1;
                "mixed"
            }
            TokenClass::GreekWord => {
                checked += 1;
                match check(&cl, &token) {
                    Ok(CheckResult::Correct) => continue,
                    Ok(CheckResult::StressError(_)) => {
                        stress += 1;
                        "stress-error"
                    }
                    Ok(CheckResult::Unknown) => {
                        unknown += 1;
                        "unknown"
                    }
                    Err(_) => continue,
                }
            }
        };
        let suggestions: Vec<SuggestionRecord> = match (verdict, suggest_n) {
            ("mixed", _) | (_, None) => Vec::new(),
            (_, Some(n)) => suggest(&cl, &token, n)
                .into_iter()
                .map(|s| SuggestionRecord {
                    surface: s.surface,
                    tier: s.tier.name(),
                    detail: s.detail,
                })
                .collect(),
        };
        if json {
            let record = FindingRecord { offset, token: &token, verdict, suggestions };
            writeln!(out, "{}", serde_json::to_string(&record)?)?;
        } else if suggestions.is_empty() {
            writeln!(out, "{offset}:{token}: {verdict}")?;
        } else {
            let list: Vec<&str> = suggestions.iter().map(|s| s.surface.as_str()).collect();
            writeln!(out, "{offset}:{token}: {verdict} -> {}", list.join(", "))?;
        }
    }

    let findings = stress + unknown + mixed;
    eprintln!(
        "checked {checked} tokens: {findings} findings ({stress} stress, {unknown} unknown, {mixed} mixed)"
    );
    if strict && findings > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_hyphenate(lexicon: Option<&Path>, words: &[String], strict: bool) -> CmdResult {
    let cl = match lexicon {
        Some(path) => Some(load_lexicon(path)?),
        None => None,
    };
    let owned_words: Vec<String> = if words.is_empty() {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        text.split_whitespace().map(str::to_string).collect()
    } else {
        words.to_vec()
    };

    let rules = match &cl {
        Some(cl) => cl.rule_set(),
        None => HyphenRuleSet::handcrafted().clone(),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut failures = 0usize;
    for word in &owned_words {
        if word.is_empty() || classify(word) != TokenClass::GreekWord {
            writeln!(out, "{word}: error: not a greek word")?;
            failures += 1;
            continue;
        }
        match hyphenate(&rules, cl.as_ref(), word) {
            Ok(pattern) => writeln!(out, "{pattern}")?,
            Err(HyphenError::NoVowel) => {
                writeln!(out, "{word}: error: no vowel")?;
                failures += 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if strict && failures > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

#[derive(Serialize)]
struct FormRecord<'a> {
    surface: &'a str,
    tags: &'a str,
    stress: &'static str,
    lexeme: &'a str,
    segmentation: Vec<SegmentRecord<'a>>,
    hyphenation: String,
}

#[derive(Serialize)]
struct SegmentRecord<'a> {
    kind: &'static str,
    letters: &'a str,
}

fn hyphenated_surface(surface: &str, breaks: &[usize]) -> String {
    let chars: Vec<char> = surface.chars().collect();
    let mut parts = Vec::with_capacity(breaks.len() + 1);
    let mut start = 0;
    for &b in breaks {
        parts.push(chars[start..b].iter().collect::<String>());
        start = b;
    }
    parts.push(chars[start..].iter().collect());
    parts.join("-")
}

fn cmd_forms(lexicon: &Path, headword: &str, json: bool) -> CmdResult {
    let cl = load_lexicon(lexicon)?;
    let Some(lemma) = cl.lemma_by_headword(headword) else {
        eprintln!("glex: headword {headword:?} not found");
        return Ok(ExitCode::from(1));
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for lexeme in &lemma.lexemes {
        for form in cl.forms_of_lexeme(lexeme.id) {
            let hyphenation = hyphenated_surface(&form.surface, &form.hyphen_pattern);
            if json {
                let record = FormRecord {
                    surface: &form.surface,
                    tags: &form.tags,
                    stress: form.stress.name(),
                    lexeme: &lexeme.name,
                    segmentation: form
                        .segmentation
                        .iter()
                        .map(|(k, letters)| SegmentRecord { kind: k.name(), letters })
                        .collect(),
                    hyphenation,
                };
                writeln!(out, "{}", serde_json::to_string(&record)?)?;
            } else {
                let seg: Vec<String> = form
                    .segmentation
                    .iter()
                    .map(|(k, letters)| {
                        let letters = if letters.is_empty() { "0" } else { letters };
                        format!("{}:{}", k.name(), letters)
                    })
                    .collect();
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    form.surface,
                    form.tags,
                    form.stress.name(),
                    seg.join("+"),
                    hyphenation
                )?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(lexicon: &Path) -> CmdResult {
    let bytes = fs::read(lexicon)
        .map_err(|e| anyhow::anyhow!("cannot read lexicon {}: {e}", lexicon.display()))?;
    let cl = binary::read_from_slice(&bytes)
        .map_err(|e| anyhow::anyhow!("cannot load lexicon {}: {e}", lexicon.display()))?;
    let sections = binary::section_sizes(&bytes)?;

    let lexeme_count: usize = cl.lemmas().iter().map(|l| l.lexemes.len()).sum();
    let distinct_keys = cl.trie().walk_prefix("").count();
    let key_list = cl.key_list_bytes();
    let trie_bytes = sections
        .iter()
        .find(|(name, _)| name == "TRIE")
        .map(|(_, len)| *len)
        .unwrap_or_default();

    println!("lemmas: {}", cl.lemmas().len());
    println!("lexemes: {lexeme_count}");
    println!("forms: {}", cl.forms().len());
    println!("distinct keys: {distinct_keys}");
    println!("trie nodes: {}", cl.trie().node_count());
    for (name, len) in &sections {
        println!("section {name}: {len} bytes");
    }
    println!("sorted key list: {key_list} bytes");
    if key_list > 0 {
        println!("trie/key-list ratio: {:.3}", trie_bytes as f64 / key_list as f64);
    } else {
        println!("trie/key-list ratio: n/a");
    }
    println!("phonetic keys: {}", cl.phonetic_index().len());
    println!("hyphenation exceptions: {}", cl.rule_set().exceptions().len());
    Ok(ExitCode::SUCCESS)
}
