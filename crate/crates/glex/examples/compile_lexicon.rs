//! Compile the sample lexicon: parse, validate, expand every form, and
//! round-trip the result through the GLEX binary container.
//!
//! ```bash
//! cargo run -p glex --example compile_lexicon
//! ```

use std::path::Path;

use glex::binary::{read_from_slice, write_to_vec};
use glex::compile::compile;
use glex::diag::Severity;
use glex::ldl::{parse, validate};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sample.ldl");
    let source = std::fs::read_to_string(&path).expect("sample.ldl is readable");

    let (doc, diags) = parse("sample.ldl", &source);
    let mut diags = diags;
    diags.extend(validate(&doc));
    for d in &diags {
        eprintln!("{d}");
    }
    if diags.iter().any(|d| d.severity == Severity::Error) {
        eprintln!("aborting: the document has errors");
        std::process::exit(1);
    }

    let lexicon = compile(&doc).expect("validated documents compile");
    println!("lemmas:    {}", lexicon.lemmas().len());
    println!("forms:     {}", lexicon.forms().len());
    println!("trie keys: {}", lexicon.trie().walk_prefix("").count());
    println!("phonetic:  {} classes", lexicon.phonetic_index().len());
    println!("hyphen exceptions: {}", lexicon.rule_set().exceptions().len());

    // the container: magic, version, five checksummed sections
    let bytes = write_to_vec(&lexicon);
    println!("GLEX size: {} bytes", bytes.len());
    let reloaded = read_from_slice(&bytes).expect("round trip");
    assert_eq!(reloaded.forms(), lexicon.forms());
    println!("reloaded lexicon answers identically");

    // a couple of fresh lookups against the reloaded copy
    for key in ["κεφαλι", "ανθρωπων", "ξζξζ"] {
        let hits: Vec<&str> = reloaded
            .lookup(key)
            .iter()
            .map(|p| reloaded.forms()[p.form_id as usize].surface.as_str())
            .collect();
        println!("lookup {key:<10} -> {hits:?}");
    }
}
