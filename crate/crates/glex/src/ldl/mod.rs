//! The lexicon description language: parser, printer, and validator.
//!
//! An LDL file is a sequence of lemma blocks:
//!
//! ```text
//! # comments run to end of line
//! lemma κεφάλι
//!   lexeme n [pos=noun-neut] [keep-stress]
//!     prefix <hyphenated-letters>      (zero or more)
//!     stem κε-φαλ                      (one or more)
//!     infix <hyphenated-letters>       (zero or more)
//!     infl ι@P/sg-nom ιου@F/sg-gen     (one or more, @F|@P|@A stress)
//!     sense "μέρος του σώματος" syn=κεφαλή
//!   end
//! end
//! ```
//!
//! Morphemes are written stress-free with `-` marking their internal
//! syllable breaks; `0` stands for the empty inflection suffix. The
//! parser recovers at the next `lemma` keyword after a malformed block,
//! so one bad lemma does not hide errors in the rest of the file.

mod parse;
mod print;

use std::collections::BTreeMap;

use crate::alphabet::fold_case;
use crate::diag::{Diagnostic, Location};
use crate::morph::{generate_word_forms, Lemma};

pub use parse::parse;
pub use print::print;

/// A parsed LDL source: lemmas plus the source positions needed for
/// diagnostics, kept parallel to the lemma list.
#[derive(Debug, Clone, Default)]
pub struct LdlDocument {
    pub source_name: String,
    pub lemmas: Vec<Lemma>,
    pub meta: Vec<LemmaMeta>,
}

#[derive(Debug, Clone, Default)]
pub struct LemmaMeta {
    pub location: Location,
    pub lexemes: Vec<LexemeMeta>,
}

#[derive(Debug, Clone, Default)]
pub struct LexemeMeta {
    pub location: Location,
    pub slots: Vec<Location>,
    pub senses: Vec<Location>,
}

impl LdlDocument {
    fn meta_for(&self, lemma: usize) -> LemmaMeta {
        self.meta.get(lemma).cloned().unwrap_or_default()
    }
}

/// Cross-lemma checks run before compilation. Errors block compilation;
/// warnings do not.
pub fn validate(doc: &LdlDocument) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    // duplicate headwords after case folding
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (i, lemma) in doc.lemmas.iter().enumerate() {
        let folded = fold_case(&lemma.headword);
        if let Some(&first) = seen.get(&folded) {
            diags.push(Diagnostic::error(
                doc.meta_for(i).location,
                "duplicate-headword",
                format!(
                    "headword {:?} already defined as {:?}",
                    lemma.headword, doc.lemmas[first].headword
                ),
            ));
        } else {
            seen.insert(folded, i);
        }
    }

    // per-lexeme trial generation: unplaceable stress, vowel-less
    // segments, duplicate (surface, tags) pairs
    let mut key_owners: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut key_patterns: BTreeMap<String, (usize, Vec<usize>)> = BTreeMap::new();
    for (i, lemma) in doc.lemmas.iter().enumerate() {
        let meta = doc.meta_for(i);
        for (j, lexeme) in lemma.lexemes.iter().enumerate() {
            let lexeme_loc =
                meta.lexemes.get(j).map(|m| m.location).unwrap_or(meta.location);
            match generate_word_forms(lexeme, 0) {
                Err(err) => {
                    let code = match err {
                        crate::morph::GenerateError::StressUnplaceable { .. } => {
                            "stress-unplaceable"
                        }
                        _ => "bad-hyphenation",
                    };
                    diags.push(Diagnostic::error(lexeme_loc, code, err.to_string()));
                }
                Ok(forms) => {
                    let pairs: std::collections::BTreeSet<(&str, &str)> = forms
                        .iter()
                        .map(|f| (f.surface.as_str(), f.tags.as_str()))
                        .collect();
                    if pairs.len() != forms.len() {
                        diags.push(Diagnostic::error(
                            lexeme_loc,
                            "duplicate-form",
                            format!(
                                "lexeme {:?} of {:?} generates duplicate (surface, tags) pairs",
                                lexeme.name, lemma.headword
                            ),
                        ));
                    }
                    for form in &forms {
                        let owners = key_owners.entry(form.destressed_key.clone()).or_default();
                        if !owners.contains(&i) {
                            owners.push(i);
                        }
                        match key_patterns.get(&form.destressed_key) {
                            None => {
                                key_patterns.insert(
                                    form.destressed_key.clone(),
                                    (i, form.hyphen_pattern.clone()),
                                );
                            }
                            Some((first, pattern)) if pattern != &form.hyphen_pattern => {
                                diags.push(Diagnostic::warning(
                                    lexeme_loc,
                                    "hyphenation-conflict",
                                    format!(
                                        "form {:?} hyphenated differently under {:?} and {:?}",
                                        form.destressed_key,
                                        doc.lemmas[*first].headword,
                                        lemma.headword
                                    ),
                                ));
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
    }

    // homograph surfaces across lemmas share a destressed key
    for (key, owners) in &key_owners {
        if owners.len() > 1 {
            let names: Vec<&str> =
                owners.iter().map(|&i| doc.lemmas[i].headword.as_str()).collect();
            diags.push(Diagnostic::warning(
                doc.meta_for(owners[1]).location,
                "homograph",
                format!("key {:?} is shared by lemmas {}", key, names.join(", ")),
            ));
        }
    }

    // sense references must name existing headwords
    let headwords: BTreeMap<&str, ()> =
        doc.lemmas.iter().map(|l| (l.headword.as_str(), ())).collect();
    for (i, lemma) in doc.lemmas.iter().enumerate() {
        let meta = doc.meta_for(i);
        for (j, lexeme) in lemma.lexemes.iter().enumerate() {
            for (k, sense) in lexeme.senses.iter().enumerate() {
                let loc = meta
                    .lexemes
                    .get(j)
                    .and_then(|m| m.senses.get(k))
                    .copied()
                    .unwrap_or(meta.location);
                for r in &sense.refs {
                    if !headwords.contains_key(r.headword.as_str()) {
                        diags.push(Diagnostic::error(
                            loc,
                            "unresolved-ref",
                            format!(
                                "{}={} does not name a headword in this lexicon",
                                r.relation.key(),
                                r.headword
                            ),
                        ));
                    }
                }
            }
        }
    }

    diags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diag::has_errors;

    const MINIMAL: &str = "lemma κεφάλι\n  lexeme n pos=noun\n    stem κε-φαλ\n    infl ι@P\n  end\nend\n";

    #[test]
    fn validate_accepts_a_minimal_document() {
        let (doc, diags) = parse("test.ldl", MINIMAL);
        assert!(diags.is_empty(), "{diags:?}");
        assert!(validate(&doc).is_empty());
    }

    #[test]
    fn duplicate_headwords_error() {
        let text = format!("{MINIMAL}{}", MINIMAL.replace("lexeme n", "lexeme m"));
        let (doc, diags) = parse("test.ldl", &text);
        assert!(diags.is_empty());
        let diags = validate(&doc);
        assert!(diags.iter().any(|d| d.code == "duplicate-headword" && d.is_error()));
    }

    #[test]
    fn unresolved_reference_errors() {
        let text = "lemma κεφάλι\n  lexeme n\n    stem κε-φαλ\n    infl ι@P\n    sense \"x\" syn=ανύπαρκτο\n  end\nend\n";
        let (doc, diags) = parse("test.ldl", text);
        assert!(diags.is_empty(), "{diags:?}");
        let diags = validate(&doc);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, "unresolved-ref");
        assert!(diags[0].is_error());
    }

    #[test]
    fn homograph_keys_warn_but_do_not_block() {
        let text = "lemma νόμος\n  lexeme n\n    stem νομ\n    infl ος@P\n  end\nend\nlemma νομός\n  lexeme n\n    stem νομ\n    infl ος@F\n  end\nend\n";
        let (doc, diags) = parse("test.ldl", text);
        assert!(diags.is_empty());
        let diags = validate(&doc);
        assert!(!has_errors(&diags));
        let homographs: Vec<_> = diags.iter().filter(|d| d.code == "homograph").collect();
        assert_eq!(homographs.len(), 1);
        assert!(homographs[0].message.contains("νομοσ"));
    }

    #[test]
    fn unplaceable_stress_is_an_error() {
        let text = "lemma άγχος\n  lexeme n\n    stem αγχ\n    infl ος@A\n  end\nend\n";
        let (doc, diags) = parse("test.ldl", text);
        assert!(diags.is_empty());
        let diags = validate(&doc);
        assert!(diags.iter().any(|d| d.code == "stress-unplaceable" && d.is_error()));
    }

    #[test]
    fn duplicate_surface_tag_pairs_error() {
        let text = "lemma κεφάλι\n  lexeme n\n    stem κε-φαλ\n    infl ι@P/sg ι@P/sg\n  end\nend\n";
        let (doc, diags) = parse("test.ldl", text);
        assert!(diags.is_empty());
        let diags = validate(&doc);
        assert!(diags.iter().any(|d| d.code == "duplicate-form"));
    }
}
