//! Lemmas, lexemes, morphemes, and the word-form generator.
//!
//! A lexeme's forms are produced by concatenating its lexical morphemes
//! (prefixes, stems, infixes, in author order) with each inflection
//! suffix, resolving the hyphenation at morpheme boundaries with the
//! handcrafted syllable rules, and placing the tonos on the syllable the
//! slot demands. Morphemes are stored stress-free; the stress position
//! travels with the inflection slot.

use std::fmt;

use crate::alphabet::{
    add_tonos, destress, fold_case, has_dialytika, is_greek_letter, is_vowel,
    render_final_sigma,
};
use crate::hyphen::HyphenRuleSet;

/// The three legal stress positions, counted from the end of the word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StressPosition {
    Final,
    Penultimate,
    Antepenultimate,
}

impl StressPosition {
    /// Syllables needed for the position to exist.
    pub fn required_syllables(self) -> usize {
        match self {
            StressPosition::Final => 1,
            StressPosition::Penultimate => 2,
            StressPosition::Antepenultimate => 3,
        }
    }

    pub fn tag(self) -> char {
        match self {
            StressPosition::Final => 'F',
            StressPosition::Penultimate => 'P',
            StressPosition::Antepenultimate => 'A',
        }
    }

    pub fn from_tag(tag: char) -> Option<StressPosition> {
        match tag {
            'F' => Some(StressPosition::Final),
            'P' => Some(StressPosition::Penultimate),
            'A' => Some(StressPosition::Antepenultimate),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StressPosition::Final => "final",
            StressPosition::Penultimate => "penultimate",
            StressPosition::Antepenultimate => "antepenultimate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MorphemeKind {
    Prefix,
    Stem,
    Infix,
    Inflection,
}

impl MorphemeKind {
    pub fn name(self) -> &'static str {
        match self {
            MorphemeKind::Prefix => "prefix",
            MorphemeKind::Stem => "stem",
            MorphemeKind::Infix => "infix",
            MorphemeKind::Inflection => "infl",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphemeError {
    #[error("morpheme contains a stress mark: {0:?}")]
    StressInMorpheme(String),
    #[error("morpheme must be lowercase Greek letters: {0:?}")]
    NotGreek(String),
    #[error("misplaced hyphen in morpheme: {0:?}")]
    BadHyphen(String),
    #[error("only an inflection may be empty")]
    Empty,
}

/// A stress-free word-building unit with its internal syllable breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morpheme {
    pub kind: MorphemeKind,
    /// Destressed lowercase letters, σ regularized. Empty only for an
    /// inflection ("0" in the text format).
    pub letters: String,
    /// Ascending break offsets, strictly inside the letters.
    pub hyphen_points: Vec<usize>,
}

impl Morpheme {
    /// Parse "κε-φαλ"-style hyphenated text into a morpheme. A final
    /// sigma is regularized to σ; any tonos is an error since stress
    /// lives on the inflection slot, never inside a morpheme.
    pub fn from_hyphenated(kind: MorphemeKind, text: &str) -> Result<Morpheme, MorphemeError> {
        if text.is_empty() {
            return if kind == MorphemeKind::Inflection {
                Ok(Morpheme { kind, letters: String::new(), hyphen_points: Vec::new() })
            } else {
                Err(MorphemeError::Empty)
            };
        }
        let mut letters = String::new();
        let mut points = Vec::new();
        let mut offset = 0usize;
        let mut prev_hyphen = true; // a leading hyphen is misplaced
        for c in text.chars() {
            if c == '-' {
                if prev_hyphen {
                    return Err(MorphemeError::BadHyphen(text.to_string()));
                }
                points.push(offset);
                prev_hyphen = true;
                continue;
            }
            prev_hyphen = false;
            if crate::alphabet::has_tonos(c) {
                return Err(MorphemeError::StressInMorpheme(text.to_string()));
            }
            let folded = if c == 'ς' { 'σ' } else { c };
            if !is_greek_letter(folded) || folded.is_uppercase() {
                return Err(MorphemeError::NotGreek(text.to_string()));
            }
            letters.push(folded);
            offset += 1;
        }
        if prev_hyphen {
            return Err(MorphemeError::BadHyphen(text.to_string()));
        }
        Ok(Morpheme { kind, letters, hyphen_points: points })
    }

    /// Re-render with hyphens; the empty inflection prints as "0".
    pub fn hyphenated(&self) -> String {
        if self.letters.is_empty() {
            return "0".to_string();
        }
        let chars: Vec<char> = self.letters.chars().collect();
        let mut out = String::new();
        let mut next_point = self.hyphen_points.iter().peekable();
        for (i, c) in chars.iter().enumerate() {
            if next_point.peek() == Some(&&i) {
                out.push('-');
                next_point.next();
            }
            out.push(*c);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.letters.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// One inflection suffix with its stress position and grammatical tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InflectionSlot {
    pub suffix: Morpheme,
    pub stress: StressPosition,
    pub tags: String,
}

/// The word-building recipe of a lexeme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphology {
    /// Prefixes, stems, and infixes in author order; at least one stem.
    pub lexical: Vec<Morpheme>,
    pub inflections: Vec<InflectionSlot>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SenseRelation {
    Synonym,
    Antonym,
    Hyponym,
    Related,
}

impl SenseRelation {
    pub fn key(self) -> &'static str {
        match self {
            SenseRelation::Synonym => "syn",
            SenseRelation::Antonym => "ant",
            SenseRelation::Hyponym => "hypo",
            SenseRelation::Related => "rel",
        }
    }

    pub fn from_key(key: &str) -> Option<SenseRelation> {
        match key {
            "syn" => Some(SenseRelation::Synonym),
            "ant" => Some(SenseRelation::Antonym),
            "hypo" => Some(SenseRelation::Hyponym),
            "rel" => Some(SenseRelation::Related),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseRef {
    pub relation: SenseRelation,
    pub headword: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sense {
    pub gloss: String,
    pub refs: Vec<SenseRef>,
}

/// One inflectional paradigm under a lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexeme {
    pub name: String,
    pub pos: String,
    /// Keep the written tonos on one-syllable forms (ή, πού, πώς).
    pub keep_stress: bool,
    pub morphology: Morphology,
    pub senses: Vec<Sense>,
}

/// A headword grouping one or more lexemes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma {
    pub headword: String,
    pub lexemes: Vec<Lexeme>,
}

/// One generated surface form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordFormEntry {
    /// Stressed rendering with the final sigma applied.
    pub surface: String,
    /// destress(fold_case(surface)).
    pub destressed_key: String,
    pub stress: StressPosition,
    pub tags: String,
    /// Morpheme kinds and letters in surface order.
    pub segmentation: Vec<(MorphemeKind, String)>,
    /// Ascending break offsets over the destressed form.
    pub hyphen_pattern: Vec<usize>,
    pub lexeme_id: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("{word:?} has {available} syllable(s), {required} needed for {position} stress")]
    StressUnplaceable {
        word: String,
        position: &'static str,
        required: usize,
        available: usize,
    },
    #[error("syllable {syllable} of {word:?} has no vowel")]
    NoNucleus { word: String, syllable: usize },
    #[error("segment {segment:?} of {word:?} has no vowel")]
    SegmentWithoutVowel { word: String, segment: String },
}

/// The seven digraph vowels; the tonos goes on their second letter.
const STRESS_DIGRAPHS: [(char, char); 7] =
    [('ο', 'υ'), ('α', 'ι'), ('ε', 'ι'), ('ο', 'ι'), ('υ', 'ι'), ('α', 'υ'), ('ε', 'υ')];

fn is_stress_digraph(a: char, b: char) -> bool {
    STRESS_DIGRAPHS.contains(&(a, b))
}

fn syllable_spans(len: usize, pattern: &[usize]) -> Vec<(usize, usize)> {
    let mut spans = Vec::with_capacity(pattern.len() + 1);
    let mut start = 0;
    for &b in pattern {
        spans.push((start, b));
        start = b;
    }
    spans.push((start, len));
    spans
}

/// For each syllable, the position of the vowel that carries the tonos:
/// the last vowel of the syllable's nucleus, where a digraph nucleus is
/// marked on its second letter and a trailing dialytika vowel gives the
/// mark back to the nucleus before it (γάι, not γαΐ).
pub fn syllable_nuclei(destressed: &str, pattern: &[usize]) -> Result<Vec<usize>, GenerateError> {
    let chars: Vec<char> = destressed.chars().collect();
    let mut out = Vec::new();
    for (index, (start, end)) in syllable_spans(chars.len(), pattern).into_iter().enumerate() {
        // group the syllable's vowels into nuclei: digraph pairs merge,
        // anything else (and any dialytika vowel) starts a new nucleus
        let mut nuclei: Vec<Vec<usize>> = Vec::new();
        for p in start..end {
            if !is_vowel(chars[p]) {
                continue;
            }
            let joins = match nuclei.last() {
                Some(last) => {
                    let prev = *last.last().unwrap();
                    prev + 1 == p
                        && last.len() == 1
                        && !has_dialytika(chars[p])
                        && is_stress_digraph(chars[prev], chars[p])
                }
                None => false,
            };
            if joins {
                nuclei.last_mut().unwrap().push(p);
            } else {
                nuclei.push(vec![p]);
            }
        }
        if nuclei.is_empty() {
            return Err(GenerateError::NoNucleus { word: destressed.to_string(), syllable: index });
        }
        let pick = if nuclei.len() >= 2 {
            let last = nuclei.last().unwrap();
            if last.len() == 1 && has_dialytika(chars[last[0]]) {
                &nuclei[nuclei.len() - 2]
            } else {
                last
            }
        } else {
            nuclei.last().unwrap()
        };
        out.push(*pick.last().unwrap());
    }
    Ok(out)
}

/// Apply the tonos to the requested syllable, counted from the end.
/// One-syllable words stay unmarked unless `keep_stress` is set.
pub fn place_stress(
    destressed: &str,
    pattern: &[usize],
    position: StressPosition,
    keep_stress: bool,
) -> Result<String, GenerateError> {
    let syllables = if destressed.is_empty() { 0 } else { pattern.len() + 1 };
    let required = position.required_syllables();
    if syllables < required {
        return Err(GenerateError::StressUnplaceable {
            word: destressed.to_string(),
            position: position.name(),
            required,
            available: syllables,
        });
    }
    if syllables == 1 && !keep_stress {
        return Ok(destressed.to_string());
    }
    let nuclei = syllable_nuclei(destressed, pattern)?;
    let target = nuclei[syllables - required];
    let mut chars: Vec<char> = destressed.chars().collect();
    chars[target] = add_tonos(chars[target])
        .expect("nucleus positions always hold a markable vowel");
    Ok(chars.into_iter().collect())
}

/// Expand a lexeme into one entry per inflection slot, in slot order.
pub fn generate_word_forms(
    lexeme: &Lexeme,
    lexeme_id: u32,
) -> Result<Vec<WordFormEntry>, GenerateError> {
    let rules = HyphenRuleSet::handcrafted();
    let mut entries = Vec::with_capacity(lexeme.morphology.inflections.len());
    for slot in &lexeme.morphology.inflections {
        entries.push(generate_one(lexeme, slot, lexeme_id, rules)?);
    }
    Ok(entries)
}

fn generate_one(
    lexeme: &Lexeme,
    slot: &InflectionSlot,
    lexeme_id: u32,
    rules: &HyphenRuleSet,
) -> Result<WordFormEntry, GenerateError> {
    let mut chars: Vec<char> = Vec::new();
    let mut pattern: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
    let mut boundaries: Vec<usize> = Vec::new();
    let mut segmentation: Vec<(MorphemeKind, String)> = Vec::new();

    let pieces = lexeme.morphology.lexical.iter().chain(std::iter::once(&slot.suffix));
    for morpheme in pieces {
        if !chars.is_empty() && !morpheme.is_empty() {
            boundaries.push(chars.len());
        }
        let offset = chars.len();
        chars.extend(morpheme.letters.chars());
        pattern.extend(morpheme.hyphen_points.iter().map(|p| p + offset));
        segmentation.push((morpheme.kind, morpheme.letters.clone()));
    }

    pattern.extend(rules.boundary_breaks(&chars, &boundaries));
    let destressed: String = chars.iter().collect();
    let pattern: Vec<usize> = pattern.into_iter().collect();

    let syllables = if destressed.is_empty() { 0 } else { pattern.len() + 1 };
    let required = slot.stress.required_syllables();
    if syllables < required {
        return Err(GenerateError::StressUnplaceable {
            word: destressed,
            position: slot.stress.name(),
            required,
            available: syllables,
        });
    }
    for (start, end) in syllable_spans(chars.len(), &pattern) {
        if !chars[start..end].iter().any(|c| is_vowel(*c)) {
            return Err(GenerateError::SegmentWithoutVowel {
                word: destressed,
                segment: chars[start..end].iter().collect(),
            });
        }
    }

    let stressed = place_stress(&destressed, &pattern, slot.stress, lexeme.keep_stress)?;
    let surface = render_final_sigma(&stressed);
    debug_assert_eq!(destress(&fold_case(&surface)), destressed);

    Ok(WordFormEntry {
        surface,
        destressed_key: destressed,
        stress: slot.stress,
        tags: slot.tags.clone(),
        segmentation,
        hyphen_pattern: pattern,
        lexeme_id,
    })
}

impl fmt::Display for StressPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
