//! Hyphenate words three ways: with the handcrafted rules alone, with
//! the rules derived from the lexicon, and with the lexicon's stored
//! patterns taking precedence.
//!
//! ```bash
//! cargo run -p glex --example hyphenate
//! ```

use std::path::Path;

use glex::compile::compile;
use glex::hyphen::{hyphenate, HyphenRuleSet};
use glex::ldl::parse;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sample.ldl");
    let source = std::fs::read_to_string(path).expect("sample.ldl is readable");
    let (doc, _) = parse("sample.ldl", &source);
    let lexicon = compile(&doc).expect("sample compiles");

    let handcrafted = HyphenRuleSet::handcrafted();
    let derived = lexicon.rule_set();

    println!("{:<12} {:<14} {:<14} {:<14}", "word", "handcrafted", "derived", "with lexicon");
    for word in [
        "κεφάλι",    // plain V-CV
        "θάλασσα",   // double consonant splits
        "άνθρωπος",  // cluster that no word begins with
        "άστρο",     // cluster that a word begins with
        "εύρεση",    // digraph stays together
        "βιβλία",    // the lexicon splits ι-α here
        "ποτήρια",   // …but keeps it here
        "προϊόν",    // the dialytika always splits
        "αεροπλάνο", // vowel run with three nuclei
        "ανεξάρτητος", // not in the lexicon: rules decide alone
    ] {
        let a = hyphenate(handcrafted, None, word).unwrap().to_string();
        let b = hyphenate(&derived, None, word).unwrap().to_string();
        let c = hyphenate(&derived, Some(&lexicon), word).unwrap().to_string();
        println!("{word:<12} {a:<14} {b:<14} {c:<14}");
    }

    // the derived decisions that differ from the handcrafted seed
    println!("\nvowel combinations the lexicon resolved:");
    for (pair, decision) in derived.decisions() {
        if handcrafted.decisions().get(pair) != Some(decision) {
            println!("  {}{} -> {decision:?}", pair.0, pair.1);
        }
    }
    println!("exception table: {} forms", derived.exceptions().len());
}
