//! The path-compressed trie: exact lookup, ordered prefix walks, and the
//! size of the serialized stream against the raw key list.
//!
//! ```bash
//! cargo run -p glex --example trie_index
//! ```

use std::path::Path;

use glex::compile::compile;
use glex::ldl::parse;
use glex::trie::CompressedTrie;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/sample.ldl");
    let source = std::fs::read_to_string(path).expect("sample.ldl is readable");
    let (doc, _) = parse("sample.ldl", &source);
    let lexicon = compile(&doc).expect("sample compiles");
    let trie = lexicon.trie();

    trie.check_structure().expect("path compression holds");
    println!("nodes: {} for {} distinct keys", trie.node_count(), trie.walk_prefix("").count());

    // exact lookups count their node visits; the bound is |key|+1
    for key in ["κεφαλι", "κεφαλιων", "ανθρωποσ", "ξζξζ"] {
        let (payloads, visits) = trie.lookup_with_visits(key);
        println!(
            "lookup {key:<10} {} payload(s), {visits} visits (max {})",
            payloads.len(),
            key.chars().count() + 1
        );
    }

    // everything under a prefix, in key order
    println!("\nkeys under κεφαλ:");
    for (key, payloads) in trie.walk_prefix("κεφαλ") {
        let surfaces: Vec<&str> = payloads
            .iter()
            .map(|p| lexicon.forms()[p.form_id as usize].surface.as_str())
            .collect();
        println!("  {key:<10} {surfaces:?}");
    }

    // the serialized stream against the newline-joined sorted key list
    let trie_bytes = trie.serialize_to_vec();
    let key_list = lexicon.key_list_bytes();
    println!(
        "\nserialized trie: {} bytes, key list: {} bytes, ratio {:.3}",
        trie_bytes.len(),
        key_list,
        trie_bytes.len() as f64 / key_list as f64
    );

    let reloaded = CompressedTrie::deserialize(&mut trie_bytes.as_slice()).unwrap();
    assert_eq!(reloaded.lookup("κεφαλι"), trie.lookup("κεφαλι"));
    println!("deserialized copy answers identically");
}
