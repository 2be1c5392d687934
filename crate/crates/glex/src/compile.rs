//! Compilation: expand every lexeme into word forms and build the
//! indexes the tools query — the trie over destressed keys, the phonetic
//! index, and the derived hyphenation rules with their exceptions.
//!
//! Compilation is deterministic: the same document bytes produce the same
//! compiled lexicon, byte for byte, when serialized.

use std::collections::BTreeMap;

use crate::diag::{has_errors, Diagnostic};
use crate::hyphen::{derive_vowel_rules, ExceptionTable, HyphenRuleSet, VowelDecisions};
use crate::ldl::{validate, LdlDocument};
use crate::morph::{generate_word_forms, Sense, WordFormEntry};
use crate::speller::phonetic_key;
use crate::trie::{CompressedTrie, PayloadRecord};

pub const FORMAT_VERSION: u16 = 1;

/// Lexeme metadata kept in the compiled lexicon (morphology is consumed
/// during generation; the segmentation lives on each form).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexemeInfo {
    pub id: u32,
    pub name: String,
    pub pos: String,
    pub keep_stress: bool,
    pub senses: Vec<Sense>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaInfo {
    pub headword: String,
    pub lexemes: Vec<LexemeInfo>,
}

/// A fully expanded, indexed lexicon. Immutable; safe for unlimited
/// concurrent readers.
#[derive(Debug, Clone)]
pub struct CompiledLexicon {
    pub(crate) version: u16,
    pub(crate) lemmas: Vec<LemmaInfo>,
    pub(crate) forms: Vec<WordFormEntry>,
    pub(crate) trie: CompressedTrie,
    pub(crate) phonetic: BTreeMap<String, Vec<u32>>,
    pub(crate) hyphen_decisions: VowelDecisions,
    pub(crate) hyphen_exceptions: ExceptionTable,
}

impl CompiledLexicon {
    pub fn version(&self) -> u16 {
        self.version
    }

    pub fn lemmas(&self) -> &[LemmaInfo] {
        &self.lemmas
    }

    pub fn forms(&self) -> &[WordFormEntry] {
        &self.forms
    }

    pub fn trie(&self) -> &CompressedTrie {
        &self.trie
    }

    pub fn phonetic_index(&self) -> &BTreeMap<String, Vec<u32>> {
        &self.phonetic
    }

    /// Exact destressed-key lookup.
    pub fn lookup(&self, key: &str) -> &[PayloadRecord] {
        self.trie.lookup(key)
    }

    /// The full hyphenation rule set: handcrafted onsets plus the
    /// decisions and exceptions derived from this lexicon.
    pub fn rule_set(&self) -> HyphenRuleSet {
        HyphenRuleSet::handcrafted()
            .with_derived(self.hyphen_decisions.clone(), self.hyphen_exceptions.clone())
    }

    /// Find a lemma by its headword; falls back to a unique destressed
    /// match so that `νομος` still finds νόμος when unambiguous.
    pub fn lemma_by_headword(&self, headword: &str) -> Option<&LemmaInfo> {
        use crate::alphabet::{destress, fold_case, nfc};
        let wanted = nfc(headword);
        if let Some(lemma) = self.lemmas.iter().find(|l| l.headword == wanted.as_ref()) {
            return Some(lemma);
        }
        let key = destress(&fold_case(&wanted));
        let mut hits =
            self.lemmas.iter().filter(|l| destress(&fold_case(&l.headword)) == key);
        match (hits.next(), hits.next()) {
            (Some(lemma), None) => Some(lemma),
            _ => None,
        }
    }

    pub fn forms_of_lexeme(&self, lexeme_id: u32) -> impl Iterator<Item = &WordFormEntry> {
        self.forms.iter().filter(move |f| f.lexeme_id == lexeme_id)
    }

    /// Byte size of the newline-joined sorted distinct key list, the
    /// baseline the trie section is measured against.
    pub fn key_list_bytes(&self) -> usize {
        let mut total = 0usize;
        let mut count = 0usize;
        for (key, _) in self.trie.walk_prefix("") {
            total += key.len();
            count += 1;
        }
        total + count.saturating_sub(1)
    }
}

/// Compile a validated document. Any error-severity diagnostic aborts;
/// warnings never do.
pub fn compile(doc: &LdlDocument) -> Result<CompiledLexicon, Vec<Diagnostic>> {
    let diags = validate(doc);
    if has_errors(&diags) {
        return Err(diags);
    }

    let mut lemmas = Vec::with_capacity(doc.lemmas.len());
    let mut forms: Vec<WordFormEntry> = Vec::new();
    let mut next_lexeme_id = 0u32;

    for lemma in &doc.lemmas {
        let mut infos = Vec::with_capacity(lemma.lexemes.len());
        for lexeme in &lemma.lexemes {
            let id = next_lexeme_id;
            next_lexeme_id += 1;
            let generated = generate_word_forms(lexeme, id).map_err(|e| {
                vec![Diagnostic::error(
                    Default::default(),
                    "generation",
                    format!("{}: {e}", lemma.headword),
                )]
            })?;
            forms.extend(generated);
            infos.push(LexemeInfo {
                id,
                name: lexeme.name.clone(),
                pos: lexeme.pos.clone(),
                keep_stress: lexeme.keep_stress,
                senses: lexeme.senses.clone(),
            });
        }
        lemmas.push(LemmaInfo { headword: lemma.headword.clone(), lexemes: infos });
    }

    let keep_stress_of: BTreeMap<u32, bool> = lemmas
        .iter()
        .flat_map(|l| l.lexemes.iter().map(|x| (x.id, x.keep_stress)))
        .collect();

    let pairs = forms.iter().enumerate().map(|(i, form)| {
        let flags = if keep_stress_of.get(&form.lexeme_id).copied().unwrap_or(false) {
            PayloadRecord::FLAG_KEEP_STRESS
        } else {
            0
        };
        (
            form.destressed_key.clone(),
            PayloadRecord { form_id: i as u32, stress: form.stress, flags },
        )
    });
    let trie = CompressedTrie::build(pairs).map_err(|e| {
        vec![Diagnostic::error(Default::default(), "index", e.to_string())]
    })?;

    let mut phonetic: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    for (i, form) in forms.iter().enumerate() {
        phonetic.entry(phonetic_key(&form.destressed_key)).or_default().push(i as u32);
    }

    let (hyphen_decisions, hyphen_exceptions) =
        derive_vowel_rules(HyphenRuleSet::handcrafted(), &forms);

    Ok(CompiledLexicon {
        version: FORMAT_VERSION,
        lemmas,
        forms,
        trie,
        phonetic,
        hyphen_decisions,
        hyphen_exceptions,
    })
}
