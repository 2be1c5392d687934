//! Canonical LDL printer; `parse(print(doc))` reproduces the document.

use std::fmt::Write;

use crate::morph::{Lemma, Lexeme, MorphemeKind};

use super::LdlDocument;

/// Render the document in canonical form: two-space indentation, lexical
/// morphemes one per line in author order, all slots of a lexeme on one
/// `infl` line.
pub fn print(doc: &LdlDocument) -> String {
    let mut out = String::new();
    for lemma in &doc.lemmas {
        print_lemma(&mut out, lemma);
    }
    out
}

fn print_lemma(out: &mut String, lemma: &Lemma) {
    writeln!(out, "lemma {}", lemma.headword).unwrap();
    for lexeme in &lemma.lexemes {
        print_lexeme(out, lexeme);
    }
    writeln!(out, "end").unwrap();
}

fn print_lexeme(out: &mut String, lexeme: &Lexeme) {
    write!(out, "  lexeme {}", lexeme.name).unwrap();
    if !lexeme.pos.is_empty() {
        write!(out, " pos={}", lexeme.pos).unwrap();
    }
    if lexeme.keep_stress {
        out.push_str(" keep-stress");
    }
    out.push('\n');

    for m in &lexeme.morphology.lexical {
        let keyword = match m.kind {
            MorphemeKind::Prefix => "prefix",
            MorphemeKind::Stem => "stem",
            MorphemeKind::Infix => "infix",
            MorphemeKind::Inflection => unreachable!("inflections live on slots"),
        };
        writeln!(out, "    {keyword} {}", m.hyphenated()).unwrap();
    }

    out.push_str("    infl");
    for slot in &lexeme.morphology.inflections {
        write!(out, " {}@{}", slot.suffix.hyphenated(), slot.stress.tag()).unwrap();
        if !slot.tags.is_empty() {
            write!(out, "/{}", slot.tags).unwrap();
        }
    }
    out.push('\n');

    for sense in &lexeme.senses {
        write!(out, "    sense \"{}\"", sense.gloss).unwrap();
        for r in &sense.refs {
            write!(out, " {}={}", r.relation.key(), r.headword).unwrap();
        }
        out.push('\n');
    }

    out.push_str("  end\n");
}
