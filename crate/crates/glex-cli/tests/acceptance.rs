//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Run with `cargo test -p glex-cli --test acceptance -- --nocapture`.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use glex::alphabet::{fold_case, render_final_sigma, KEY_ALPHABET};
use glex::compile::{compile, CompiledLexicon};
use glex::hyphen::{hyphenate, HyphenRuleSet};
use glex::ldl::parse;
use glex::morph::{place_stress, StressPosition};
use glex::speller::{check, suggest, CheckResult, ConfusionTable};
use glex::trie::PayloadRecord;

const SAMPLE: &str = include_str!("../../glex/data/sample.ldl");

fn sample() -> CompiledLexicon {
    let (doc, diags) = parse("sample.ldl", SAMPLE);
    assert!(diags.is_empty(), "{diags:#?}");
    compile(&doc).expect("sample compiles")
}

fn sample_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../glex/data/sample.ldl")
}

fn glex_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_glex"))
}

#[test]
fn criterion_1_paper_example_reproduction() {
    let started = Instant::now();
    let cl = sample();

    match check(&cl, "κέφαλι").unwrap() {
        CheckResult::StressError(matches) => {
            assert_eq!(matches[0].surface, "κεφάλι");
        }
        other => panic!("κέφαλι should be a stress error, got {other:?}"),
    }
    let suggestions = suggest(&cl, "κέφαλι", 10);
    assert_eq!(suggestions[0].surface, "κεφάλι", "{suggestions:?}");

    let s = suggest(&cl, "έβρεση", 10);
    assert!(s.iter().any(|x| x.surface == "εύρεση"), "{s:?}");
    let s = suggest(&cl, "άνχος", 10);
    assert!(s.iter().any(|x| x.surface == "άγχος"), "{s:?}");

    let pairs: BTreeSet<(&str, &str)> = ConfusionTable::optical_pairs().into_iter().collect();
    let expected: BTreeSet<(&str, &str)> =
        [("Α", "Δ"), ("Τ", "Γ"), ("ΛΛ", "Μ"), ("α", "σ")].into_iter().collect();
    assert_eq!(pairs, expected);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("[criterion 1] PASS — paper examples reproduced in {elapsed:?}");
}

#[test]
fn criterion_2_round_trip_completeness() {
    let started = Instant::now();
    let (doc, _) = parse("sample.ldl", SAMPLE);
    assert!(doc.lemmas.len() >= 120, "{} lemmas", doc.lemmas.len());
    let cl = compile(&doc).unwrap();
    assert!(cl.forms().len() >= 1000, "{} forms", cl.forms().len());

    for (id, form) in cl.forms().iter().enumerate() {
        let payloads = cl.lookup(&form.destressed_key);
        let payload = payloads
            .iter()
            .find(|p| p.form_id == id as u32)
            .unwrap_or_else(|| panic!("lookup misses {}", form.surface));

        // re-render from the indexed data and compare byte-for-byte
        let keep = payload.flags & PayloadRecord::FLAG_KEEP_STRESS != 0;
        let stressed =
            place_stress(&form.destressed_key, &form.hyphen_pattern, payload.stress, keep)
                .unwrap();
        assert_eq!(render_final_sigma(&stressed), form.surface);
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "[criterion 2] PASS — {} forms round-trip byte-for-byte in {elapsed:?}",
        cl.forms().len()
    );
}

#[test]
fn criterion_3_stress_error_sweep() {
    let cl = sample();

    // every folded surface stored under each key
    let mut surfaces_of: BTreeMap<&str, BTreeSet<String>> = BTreeMap::new();
    for form in cl.forms() {
        surfaces_of
            .entry(form.destressed_key.as_str())
            .or_default()
            .insert(fold_case(&form.surface));
    }

    let positions = [
        StressPosition::Final,
        StressPosition::Penultimate,
        StressPosition::Antepenultimate,
    ];
    let mut swept = 0usize;
    for form in cl.forms() {
        let syllables = form.hyphen_pattern.len() + 1;
        if syllables < 2 {
            continue;
        }
        for position in positions {
            if position.required_syllables() > syllables || position == form.stress {
                continue;
            }
            let variant =
                place_stress(&form.destressed_key, &form.hyphen_pattern, position, false)
                    .unwrap();
            let variant = render_final_sigma(&variant);
            // a restressing that lands on another valid word is not a
            // wrong stressing (νόμος → νομός)
            if surfaces_of[form.destressed_key.as_str()].contains(&fold_case(&variant)) {
                continue;
            }
            match check(&cl, &variant).unwrap() {
                CheckResult::StressError(_) => {}
                other => panic!("{variant} (from {}): {other:?}", form.surface),
            }
            let suggestions = suggest(&cl, &variant, 10);
            assert!(
                suggestions.iter().any(|s| s.surface == form.surface),
                "{variant}: true form {} missing from {suggestions:?}",
                form.surface
            );
            swept += 1;
        }
    }
    assert!(swept > 1000, "sweep covered only {swept} restressings");
    println!("[criterion 3] PASS — {swept} wrong restressings all classified and corrected");
}

#[test]
fn criterion_4_edit_recall() {
    let cl = sample();
    let mut rng = ChaCha8Rng::seed_from_u64(0x474C_4558);

    // sample 200 forms whose keys admit all four edits (long enough,
    // with at least one transposable adjacent pair)
    let eligible: Vec<usize> = (0..cl.forms().len())
        .filter(|&i| {
            let chars: Vec<char> = cl.forms()[i].destressed_key.chars().collect();
            chars.len() >= 3 && chars.windows(2).any(|w| w[0] != w[1])
        })
        .collect();
    let mut sampled = eligible.clone();
    sampled.shuffle(&mut rng);
    sampled.truncate(200);
    assert_eq!(sampled.len(), 200);

    let mut attempts = 0usize;
    let mut misses = 0usize;
    for &form_index in &sampled {
        let form = &cl.forms()[form_index];
        let chars: Vec<char> = form.destressed_key.chars().collect();
        // positions where swapping adjacent letters changes the key
        let swappable: Vec<usize> =
            (0..chars.len() - 1).filter(|&i| chars[i] != chars[i + 1]).collect();
        for op in 0..4 {
            let corrupted: Vec<char> = loop {
                let mut c = chars.clone();
                match op {
                    0 => {
                        // missing letter
                        c.remove(rng.gen_range(0..c.len()));
                    }
                    1 => {
                        // added letter
                        let i = rng.gen_range(0..=c.len());
                        c.insert(i, KEY_ALPHABET[rng.gen_range(0..KEY_ALPHABET.len())]);
                    }
                    2 => {
                        // transposed letters
                        let i = swappable[rng.gen_range(0..swappable.len())];
                        c.swap(i, i + 1);
                    }
                    _ => {
                        // wrong letter
                        let i = rng.gen_range(0..c.len());
                        c[i] = KEY_ALPHABET[rng.gen_range(0..KEY_ALPHABET.len())];
                    }
                }
                if c != chars {
                    break c;
                }
            };
            let token: String = corrupted.into_iter().collect();
            attempts += 1;
            // a corruption that is itself a valid key collides with
            // another word; those misses are permitted
            if !cl.lookup(&token).is_empty() {
                continue;
            }
            let suggestions = suggest(&cl, &token, 10);
            if !suggestions.iter().any(|s| s.surface == form.surface) {
                misses += 1;
            }
        }
    }

    assert_eq!(attempts, 800);
    let allowed = attempts / 100;
    assert!(
        misses <= allowed,
        "{misses} misses out of {attempts} (allowed {allowed})"
    );
    println!(
        "[criterion 4] PASS — {}/{attempts} corruptions recovered in the top 10",
        attempts - misses
    );
}

#[test]
fn criterion_5_trie_oracle_equivalence() {
    let cl = sample();
    let trie = cl.trie();

    trie.check_structure().expect("path compression holds");

    // oracle rebuilt from the form table
    let mut oracle: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    for (id, form) in cl.forms().iter().enumerate() {
        oracle.entry(form.destressed_key.clone()).or_default().push(id as u32);
    }
    for (key, want) in &oracle {
        let got: Vec<u32> = trie.lookup(key).iter().map(|p| p.form_id).collect();
        assert_eq!(&got, want, "{key}");
        let (_, visits) = trie.lookup_with_visits(key);
        assert!(visits <= key.chars().count() + 1, "{key}: {visits} visits");
    }

    // 10,000 random absent keys agree with the oracle too
    let mut rng = ChaCha8Rng::seed_from_u64(0x74726965);
    let mut absent = 0;
    while absent < 10_000 {
        let len = rng.gen_range(1..=12);
        let key: String =
            (0..len).map(|_| KEY_ALPHABET[rng.gen_range(0..KEY_ALPHABET.len())]).collect();
        if oracle.contains_key(&key) {
            continue;
        }
        absent += 1;
        assert!(trie.lookup(&key).is_empty(), "{key}");
        let (_, visits) = trie.lookup_with_visits(&key);
        assert!(visits <= key.chars().count() + 1);
    }

    // serialization replays identically
    let bytes = trie.serialize_to_vec();
    let back = glex::trie::CompressedTrie::deserialize(&mut bytes.as_slice()).unwrap();
    back.check_structure().unwrap();
    for key in oracle.keys() {
        assert_eq!(trie.lookup(key), back.lookup(key), "{key}");
    }

    println!(
        "[criterion 5] PASS — {} keys + 10000 absent keys agree with the oracle",
        oracle.len()
    );
}

#[test]
fn criterion_6_hyphenation_master_property() {
    let cl = sample();
    let rules = cl.rule_set();

    // the derived rule set reproduces every stored pattern
    for form in cl.forms() {
        let got = hyphenate(&rules, None, &form.destressed_key).unwrap();
        assert_eq!(got.breaks, form.hyphen_pattern, "{}", form.surface);
    }

    // hand-verified gold set for the handcrafted rules alone
    let handcrafted = HyphenRuleSet::handcrafted();
    let gold = gold_set();
    assert!(gold.len() >= 100, "only {} gold words", gold.len());
    for entry in &gold {
        let word = entry.replace('-', "");
        let got = hyphenate(handcrafted, None, &word).unwrap().to_string();
        assert_eq!(&got, entry, "{word}");
    }

    println!(
        "[criterion 6] PASS — {} stored patterns replayed, {} gold words exact",
        cl.forms().len(),
        gold.len()
    );
}

#[test]
fn criterion_7_determinism() {
    // compiling twice in-process yields identical bytes
    let (doc, _) = parse("sample.ldl", SAMPLE);
    let first = glex::binary::write_to_vec(&compile(&doc).unwrap());
    let second = glex::binary::write_to_vec(&compile(&doc).unwrap());
    assert_eq!(first, second);

    // the CLI reproduces identical GLEX files across runs
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.glex");
    let out_b = dir.path().join("b.glex");
    for out in [&out_a, &out_b] {
        let status = glex_bin()
            .arg("compile")
            .arg(sample_path())
            .arg("-o")
            .arg(out)
            .status()
            .expect("compile runs");
        assert!(status.success());
    }
    let bytes_a = std::fs::read(&out_a).unwrap();
    let bytes_b = std::fs::read(&out_b).unwrap();
    assert_eq!(bytes_a, bytes_b);
    assert_eq!(bytes_a, first, "CLI output differs from in-process compilation");

    // cmd_check output is byte-identical across runs
    let text_path = dir.path().join("input.txt");
    std::fs::write(&text_path, "Το κέφαλι και η έβρεση του άνχος.\nΚΕΦΑΛΙ κεφαλι ξζξζ e-mail\n")
        .unwrap();
    let run_check = || {
        let output = glex_bin()
            .arg("check")
            .arg("--lexicon")
            .arg(&out_a)
            .arg("--suggest")
            .arg("5")
            .arg("--json")
            .arg(&text_path)
            .output()
            .expect("check runs");
        assert!(output.status.success());
        output.stdout
    };
    let check_a = run_check();
    let check_b = run_check();
    assert!(!check_a.is_empty());
    assert_eq!(check_a, check_b);

    println!("[criterion 7] PASS — byte-identical GLEX files and check output across runs");
}

#[test]
fn criterion_8_compression_property() {
    let cl = sample();
    let trie_bytes = cl.trie().serialize_to_vec().len();
    let key_list = cl.key_list_bytes();
    assert!(
        trie_bytes < key_list,
        "trie {trie_bytes}B not smaller than key list {key_list}B"
    );

    // the same ratio as reported by the stats command
    let dir = tempfile::tempdir().unwrap();
    let glex_path = dir.path().join("sample.glex");
    let status = glex_bin()
        .arg("compile")
        .arg(sample_path())
        .arg("-o")
        .arg(&glex_path)
        .status()
        .unwrap();
    assert!(status.success());
    let output = glex_bin().arg("stats").arg("--lexicon").arg(&glex_path).output().unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    let ratio_line = stdout
        .lines()
        .find(|l| l.starts_with("trie/key-list ratio:"))
        .expect("stats reports the ratio");
    let ratio: f64 = ratio_line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(ratio < 1.0, "{ratio_line}");

    println!(
        "[criterion 8] PASS — trie {trie_bytes}B vs key list {key_list}B (ratio {ratio:.3})"
    );
}

/// Hyphenations hand-derived from the handcrafted rules: a single
/// consonant joins the next vowel; a cluster moves whole iff a word can
/// begin with it, else it breaks after its first consonant (identical
/// doubles split between); the seven digraphs stay in one syllable, a
/// dialytika splits, and other adjacent vowels split.
fn gold_set() -> Vec<&'static str> {
    vec![
        // V-CV
        "κε-φά-λι", "κα-λά", "ώ-ρα", "μέ-ρα", "νε-ρό", "γά-λα", "θέ-μα", "πα-τέ-ρας",
        "μη-τέ-ρα", "σχο-λή", "μό-νο", "πί-νω", "φω-νή", "τυ-ρί", "ψω-μί", "κρα-σί",
        "πό-δι", "χέ-ρι", "μά-τι", "σπί-τι", "λε-μό-νι", "πα-ρά-θυ-ρο", "τη-λέ-φω-νο",
        "κα-λη-μέ-ρα", "σή-με-ρα", "κα-λο-καί-ρι", "πο-τή-ρι", "μο-λύ-βι", "ψά-ρι",
        "τα-ξί-δι", "ξύ-λο", "ζά-χα-ρη",
        // identical double consonants split between
        "θά-λασ-σα", "γράμ-μα", "άλ-λος", "ελ-λη-νι-κά", "άμ-μος", "φύλ-λο", "ίπ-πος",
        "γέν-νη-ση", "συγ-γρα-φέ-ας", "πα-ράλ-λη-λος", "κόκ-κι-νος",
        // clusters that can begin a word move whole
        "ά-στρο", "βι-βλί-ο", "κό-σμος", "ύ-πνος", "τέ-χνη", "έ-θνος", "α-τμός",
        "κα-πνός", "έ-τσι", "ντο-μά-τα", "μπα-μπάς", "δά-χτυ-λο", "ά-σχη-μος",
        "έ-μπο-ρος", "α-ντί-ο", "πε-θαί-νω", "στρα-τός", "σκο-τά-δι", "δε-σπό-τες",
        "α-κτή", "κύ-κνος", "κά-μπος", "τσά-ντα",
        // clusters no word begins with break after the first consonant
        "άρ-τος", "άγ-χος", "κορ-μός", "βαθ-μός", "περ-πα-τώ", "άν-δρας", "κάλ-τσα",
        "έρ-χο-μαι", "φεγ-γά-ρι", "αν-θρώ-πι-νος", "καρ-πός", "έρ-γο",
        "δελ-φί-νι", "μάρ-μα-ρο", "βαλ-βί-δα",
        // the seven digraphs stay together
        "παι-δί", "εύ-ρε-ση", "αυ-γό", "ου-ρα-νός", "γυ-ναί-κα", "και-ρός", "πεύ-κο",
        "ναύ-της", "βου-νό", "κοι-λά-δα", "εί-μαι", "οι-κο-νο-μί-α", "αί-μα",
        "ευ-χα-ρι-στώ", "λου-λού-δι", "τρα-γού-δι", "ποι-η-τής",
        // other adjacent vowels split
        "θε-ός", "ζω-ή", "ι-δέ-α", "α-η-δό-νι", "νε-ο-λαί-α", "ω-κε-α-νός",
        "α-ε-ρο-πλά-νο", "θέ-α-τρο", "ρο-ή", "ποί-η-μα", "βο-ή-θει-α",
        // the dialytika always splits
        "προ-ϊ-όν", "κα-ΐ-κι", "ευ-νο-ϊ-κός", "αρ-χα-ϊ-κός",
    ]
}
