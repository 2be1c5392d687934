//! Greek alphabet knowledge and text normalization.
//!
//! Everything downstream (keys, morphemes, hyphenation, stress) works on
//! case-folded, NFC-normalized text. Folding lowercases Greek letters and
//! regularizes the final sigma `ς` to `σ` so that keys are position
//! independent; destressing removes the tonos but never the dialytika,
//! since only the stress position is re-derivable from the lexicon.
//!
//! Scope is monotonic Modern Greek: polytonic scalars from the Greek
//! Extended block are treated as non-Greek.

use std::borrow::Cow;

use unicode_normalization::{is_nfc_quick, IsNormalized, UnicodeNormalization};

/// Classification of a single scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharClass {
    Vowel,
    Consonant,
    NonGreek,
}

/// A classified Greek scalar with its diacritics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreekChar {
    pub ch: char,
    pub class: CharClass,
    pub tonos: bool,
    pub dialytika: bool,
}

/// Classification of a whole token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenClass {
    /// Every scalar is a Greek letter (tonos/dialytika carriers included).
    GreekWord,
    /// At least one Greek letter and at least one non-Greek letter.
    Mixed,
    NonGreek,
}

/// A token in its three canonical spellings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedToken {
    pub original: String,
    /// Lowercased, final sigma regularized to σ, tonos preserved.
    pub folded: String,
    /// `folded` with the tonos removed; dialytika preserved.
    pub destressed: String,
}

/// The stress-free lowercase alphabet over which keys are built:
/// the 24 letters (σ only, never ς) plus the two dialytika vowels.
pub const KEY_ALPHABET: [char; 26] = [
    'α', 'β', 'γ', 'δ', 'ε', 'ζ', 'η', 'θ', 'ι', 'κ', 'λ', 'μ', 'ν', 'ξ', 'ο', 'π', 'ρ', 'σ',
    'τ', 'υ', 'φ', 'χ', 'ψ', 'ω', 'ϊ', 'ϋ',
];

/// Normalize to NFC. Inputs are normalized once on entry; all internal
/// tables assume precomposed scalars (ά, not α + U+0301).
pub fn nfc(s: &str) -> Cow<'_, str> {
    match is_nfc_quick(s.chars()) {
        IsNormalized::Yes => Cow::Borrowed(s),
        _ => Cow::Owned(s.nfc().collect()),
    }
}

/// Lowercase one Greek scalar, regularizing sigma. Non-Greek scalars are
/// returned unchanged.
pub fn fold_char(c: char) -> char {
    match c {
        'Α'..='Ρ' | 'Σ'..='Ω' => char::from_u32(c as u32 + 0x20).unwrap(),
        'ς' => 'σ',
        'Ά' => 'ά',
        'Έ' => 'έ',
        'Ή' => 'ή',
        'Ί' => 'ί',
        'Ό' => 'ό',
        'Ύ' => 'ύ',
        'Ώ' => 'ώ',
        'Ϊ' => 'ϊ',
        'Ϋ' => 'ϋ',
        _ => c,
    }
}

/// Case-fold a word: Greek uppercase lowered, every sigma regularized to
/// σ. Total; non-Greek scalars pass through unchanged.
pub fn fold_case(word: &str) -> String {
    word.chars().map(fold_char).collect()
}

/// Remove the tonos from one scalar, preserving dialytika.
pub fn strip_tonos(c: char) -> char {
    match c {
        'ά' => 'α',
        'έ' => 'ε',
        'ή' => 'η',
        'ί' => 'ι',
        'ό' => 'ο',
        'ύ' => 'υ',
        'ώ' => 'ω',
        'ΐ' => 'ϊ',
        'ΰ' => 'ϋ',
        'Ά' => 'Α',
        'Έ' => 'Ε',
        'Ή' => 'Η',
        'Ί' => 'Ι',
        'Ό' => 'Ο',
        'Ύ' => 'Υ',
        'Ώ' => 'Ω',
        _ => c,
    }
}

/// Put the tonos on a lowercase vowel. `None` for anything that cannot
/// carry one.
pub fn add_tonos(c: char) -> Option<char> {
    Some(match c {
        'α' => 'ά',
        'ε' => 'έ',
        'η' => 'ή',
        'ι' => 'ί',
        'ο' => 'ό',
        'υ' => 'ύ',
        'ω' => 'ώ',
        'ϊ' => 'ΐ',
        'ϋ' => 'ΰ',
        _ => return None,
    })
}

pub fn has_tonos(c: char) -> bool {
    matches!(
        c,
        'ά' | 'έ' | 'ή' | 'ί' | 'ό' | 'ύ' | 'ώ' | 'ΐ' | 'ΰ' | 'Ά' | 'Έ' | 'Ή' | 'Ί' | 'Ό' | 'Ύ' | 'Ώ'
    )
}

pub fn has_dialytika(c: char) -> bool {
    matches!(c, 'ϊ' | 'ϋ' | 'ΐ' | 'ΰ' | 'Ϊ' | 'Ϋ')
}

/// Remove every tonos from a case-folded word. Length-preserving; the
/// dialytika stays (ϊ is not ι, and ΐ destresses to ϊ).
pub fn destress(word: &str) -> String {
    word.chars().map(strip_tonos).collect()
}

/// The bare letter with all diacritics removed (ΐ → ι). Lowercase input.
pub fn base_letter(c: char) -> char {
    match strip_tonos(c) {
        'ϊ' => 'ι',
        'ϋ' => 'υ',
        other => other,
    }
}

/// True for any letter of the monotonic Greek alphabet, upper or lower,
/// with or without tonos/dialytika.
pub fn is_greek_letter(c: char) -> bool {
    matches!(c,
        'α'..='ω' | 'Α'..='Ρ' | 'Σ'..='Ω'
        | 'ά' | 'έ' | 'ή' | 'ί' | 'ό' | 'ύ' | 'ώ' | 'ΐ' | 'ΰ' | 'ϊ' | 'ϋ'
        | 'Ά' | 'Έ' | 'Ή' | 'Ί' | 'Ό' | 'Ύ' | 'Ώ' | 'Ϊ' | 'Ϋ'
    )
}

/// True for vowels in any spelling (base, tonos, dialytika, uppercase).
pub fn is_vowel(c: char) -> bool {
    matches!(
        base_letter(fold_char(c)),
        'α' | 'ε' | 'η' | 'ι' | 'ο' | 'υ' | 'ω'
    )
}

pub fn is_consonant(c: char) -> bool {
    is_greek_letter(c) && !is_vowel(c)
}

/// Classify one scalar.
pub fn classify_char(c: char) -> GreekChar {
    let class = if !is_greek_letter(c) {
        CharClass::NonGreek
    } else if is_vowel(c) {
        CharClass::Vowel
    } else {
        CharClass::Consonant
    };
    GreekChar { ch: c, class, tonos: has_tonos(c), dialytika: has_dialytika(c) }
}

/// Classify a token. A token is a Greek word iff every scalar is a Greek
/// letter; it is mixed iff it holds at least one Greek and one non-Greek
/// letter.
pub fn classify(word: &str) -> TokenClass {
    let mut greek = false;
    let mut foreign_letter = false;
    let mut all_greek = true;
    for c in word.chars() {
        if is_greek_letter(c) {
            greek = true;
        } else {
            all_greek = false;
            if c.is_alphabetic() {
                foreign_letter = true;
            }
        }
    }
    if all_greek {
        TokenClass::GreekWord
    } else if greek && foreign_letter {
        TokenClass::Mixed
    } else {
        TokenClass::NonGreek
    }
}

/// Produce all three spellings of a token in one pass over the input.
pub fn normalize_token(word: &str) -> NormalizedToken {
    let original = nfc(word).into_owned();
    let folded = fold_case(&original);
    let destressed = destress(&folded);
    NormalizedToken { original, folded, destressed }
}

/// Render the word-final sigma: a stressless internal σ at the last
/// position becomes ς.
pub fn render_final_sigma(word: &str) -> String {
    let mut out: Vec<char> = word.chars().collect();
    if let Some(last) = out.last_mut() {
        if *last == 'σ' {
            *last = 'ς';
        }
    }
    out.into_iter().collect()
}
