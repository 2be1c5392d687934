//! Morphological lexicon toolkit for Modern Greek.
//!
//! `glex` turns a lexicon description (the LDL text format) into a fully
//! expanded, indexed dictionary of word forms and builds two NLP tools on
//! top of it: a spell checker with ranked suggestions and a rule-plus-
//! exception hyphenator.
//!
//! The pipeline:
//!
//! 1. [`ldl::parse`] reads an LDL source into a document of lemmas, each a
//!    set of lexemes built from hyphenated, stress-free morphemes.
//! 2. [`compile::compile`] expands every inflection slot into a stressed,
//!    hyphenated surface form, builds a path-compressed trie over the
//!    stress-free keys, a phonetic index, and a derived hyphenation rule
//!    set with its exception table.
//! 3. [`binary::write_binary`] / [`binary::read_binary`] persist the
//!    compiled lexicon as a sectioned, checksummed GLEX file.
//! 4. [`speller`] and [`hyphen`] answer queries over the compiled lexicon.
//!
//! Runnable examples live in `examples/`, one per capability:
//!
//! ```bash
//! cargo run -p glex --example compile_lexicon
//! cargo run -p glex --example spell_check
//! cargo run -p glex --example hyphenate
//! cargo run -p glex --example word_forms
//! cargo run -p glex --example trie_index
//! cargo run -p glex --example phonetic_keys
//! ```

pub mod alphabet;
pub mod binary;
pub mod compile;
pub mod diag;
pub mod hyphen;
pub mod ldl;
pub mod morph;
pub mod speller;
pub mod trie;
mod varint;

pub use compile::CompiledLexicon;
pub use diag::{Diagnostic, Severity};
pub use morph::{Lemma, Lexeme, StressPosition, WordFormEntry};
pub use trie::CompressedTrie;
