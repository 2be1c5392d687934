//! Check words against the sample lexicon and show ranked suggestions:
//! stress-position errors first, then phonetic, optical, and typographic
//! candidates.
//!
//! ```bash
//! cargo run -p glex --example spell_check
//! ```

use std::path::Path;

use glex::compile::compile;
use glex::ldl::parse;
use glex::speller::{check, suggest, CheckResult};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sample.ldl");
    let source = std::fs::read_to_string(path).expect("sample.ldl is readable");
    let (doc, _) = parse("sample.ldl", &source);
    let lexicon = compile(&doc).expect("sample compiles");

    let words = [
        "κεφάλι",  // correct
        "κέφαλι",  // stress on the wrong syllable
        "κεφαλι",  // stress missing entirely
        "ΚΕΦΑΛΙ",  // all-caps text carries no stress mark
        "νομός",   // homograph of νόμος; both stressings are words
        "έβρεση",  // phonetic spelling of εύρεση
        "άνχος",   // phonetic spelling of άγχος
        "κεφσλι",  // σ misread for α
        "κεφλι",   // a letter missing
        "θαλλασα", // a letter doubled in the wrong place
        "ξζξζ",    // no such word
    ];

    for word in words {
        match check(&lexicon, word) {
            Ok(CheckResult::Correct) => println!("{word:<10} correct"),
            Ok(CheckResult::Unknown) => {
                let s = suggest(&lexicon, word, 5);
                println!("{word:<10} unknown     {}", render(&s));
            }
            Ok(CheckResult::StressError(_)) => {
                let s = suggest(&lexicon, word, 5);
                println!("{word:<10} stress error {}", render(&s));
            }
            Err(e) => println!("{word:<10} skipped ({e})"),
        }
    }
}

fn render(suggestions: &[glex::speller::Suggestion]) -> String {
    let parts: Vec<String> = suggestions
        .iter()
        .map(|s| format!("{} [{}]", s.surface, s.tier.name()))
        .collect();
    format!("-> {}", parts.join(", "))
}
