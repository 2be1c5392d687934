//! Word checking and ranked suggestion generation.
//!
//! A token is looked up without its stress; an exact destressed hit whose
//! stored stressed rendering differs from the input is a stress-position
//! error, the dominant Greek error class. Suggestions then come from four
//! more sources, ranked by tier:
//!
//! 0. stress variants of the exact destressed match,
//! 1. phonetic-index hits (iotacism, αυ/ευ, velar nasals, doubles),
//! 2. optical confusions (Α-Δ, Τ-Γ, ΛΛ-Μ, α-σ),
//! 3. keys one edit away (missing, added, transposed, wrong letter),
//! 4. keys two edits away, computed only when the limit is not yet met.
//!
//! Ties break by absolute length difference, then lexicographically, so
//! the ranking is a total, deterministic order.

use std::collections::BTreeSet;

use crate::alphabet::{
    classify, fold_case, has_tonos, normalize_token, TokenClass, KEY_ALPHABET,
};
use crate::compile::CompiledLexicon;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("token is not a Greek word")]
    NotGreek,
}

/// An exact-key entry whose stressed rendering the input should have used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StressMatch {
    pub form_id: u32,
    pub surface: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckResult {
    Correct,
    /// The destressed key exists but no stored stressing matches.
    StressError(Vec<StressMatch>),
    Unknown,
}

/// Check one token against the lexicon.
///
/// All-caps tokens without a tonos are accepted on the destressed match
/// alone, since Greek all-caps text omits the stress mark.
pub fn check(cl: &CompiledLexicon, token: &str) -> Result<CheckResult, CheckError> {
    let t = normalize_token(token);
    if classify(&t.original) != TokenClass::GreekWord || t.original.is_empty() {
        return Err(CheckError::NotGreek);
    }
    let payloads = cl.lookup(&t.destressed);
    if payloads.is_empty() {
        return Ok(CheckResult::Unknown);
    }
    let stressless_caps = t.original.chars().any(char::is_uppercase)
        && !t.original.chars().any(char::is_lowercase)
        && !t.folded.chars().any(has_tonos);
    if stressless_caps {
        return Ok(CheckResult::Correct);
    }
    let mut matches: Vec<StressMatch> = Vec::new();
    for payload in payloads {
        let surface = &cl.forms()[payload.form_id as usize].surface;
        if fold_case(surface) == t.folded {
            return Ok(CheckResult::Correct);
        }
        if !matches.iter().any(|m| &m.surface == surface) {
            matches.push(StressMatch { form_id: payload.form_id, surface: surface.clone() });
        }
    }
    matches.sort_by(|a, b| a.surface.cmp(&b.surface).then(a.form_id.cmp(&b.form_id)));
    Ok(CheckResult::StressError(matches))
}

/// Deterministic pronunciation key. Equivalent spellings (έβρεση/εύρεση,
/// άνχος/άγχος, αβγό/αυγό, all iotacisms) collapse to the same key; the
/// output alphabet is Latin-plus-digits and is a fixed point of the
/// mapping.
pub fn phonetic_key(destressed: &str) -> String {
    let chars: Vec<char> = destressed.chars().collect();

    // nasal neutralization before velars: άνχος and άγχος agree
    let mut nasal: Vec<char> = Vec::with_capacity(chars.len());
    for (i, &c) in chars.iter().enumerate() {
        if c == 'ν' && matches!(chars.get(i + 1), Some('κ' | 'γ' | 'χ' | 'ξ')) {
            nasal.push('γ');
        } else {
            nasal.push(c);
        }
    }

    // digraphs, longest match first, left to right
    const UNVOICED: [char; 9] = ['θ', 'κ', 'ξ', 'π', 'σ', 'τ', 'φ', 'χ', 'ψ'];
    let mut out = String::with_capacity(nasal.len());
    let mut i = 0;
    while i < nasal.len() {
        let pair = (nasal[i], nasal.get(i + 1).copied());
        let consumed = match pair {
            ('ο', Some('υ')) => {
                out.push('u');
                2
            }
            ('α', Some('ι')) => {
                out.push('e');
                2
            }
            ('ε', Some('ι')) | ('ο', Some('ι')) | ('υ', Some('ι')) => {
                out.push('i');
                2
            }
            ('α', Some('υ')) | ('ε', Some('υ')) => {
                out.push(if pair.0 == 'α' { 'a' } else { 'e' });
                let voiced = match nasal.get(i + 2) {
                    Some(next) => !UNVOICED.contains(next),
                    None => true,
                };
                out.push(if voiced { 'v' } else { 'f' });
                2
            }
            ('μ', Some('π')) => {
                out.push('b');
                2
            }
            ('ν', Some('τ')) => {
                out.push('d');
                2
            }
            ('γ', Some('κ')) | ('γ', Some('γ')) => {
                out.push('g');
                2
            }
            _ => {
                out.push(transliterate(nasal[i]));
                1
            }
        };
        i += consumed;
    }

    // collapse adjacent identical letters (λλ → λ, σσ → σ)
    let mut collapsed = String::with_capacity(out.len());
    for c in out.chars() {
        if !collapsed.ends_with(c) {
            collapsed.push(c);
        }
    }
    collapsed
}

fn transliterate(c: char) -> char {
    match c {
        'α' => 'a',
        'β' => 'v',
        'γ' => 'g',
        'δ' => 'd',
        'ε' => 'e',
        'ζ' => 'z',
        'η' | 'ι' | 'υ' | 'ϊ' | 'ϋ' => 'i',
        'θ' => '8',
        'κ' => 'k',
        'λ' => 'l',
        'μ' => 'm',
        'ν' => 'n',
        'ξ' => '3',
        'ο' | 'ω' => 'o',
        'π' => 'p',
        'ρ' => 'r',
        'σ' => 's',
        'τ' => 't',
        'φ' => 'f',
        'χ' => 'x',
        'ψ' => '4',
        // callers pass folded keys; map the final sigma anyway
        'ς' => 's',
        other => other,
    }
}

/// The shape-confusion table: the four optical pairs, symmetric, with
/// their case-folded substitution forms.
pub struct ConfusionTable;

impl ConfusionTable {
    /// The pairs as printed: uppercase shapes plus the α-σ pair.
    pub fn optical_pairs() -> [(&'static str, &'static str); 4] {
        [("Α", "Δ"), ("Τ", "Γ"), ("ΛΛ", "Μ"), ("α", "σ")]
    }

    /// Case-folded substitution pairs applied to destressed keys.
    pub fn folded_pairs() -> [(&'static str, &'static str); 4] {
        [("α", "δ"), ("τ", "γ"), ("λλ", "μ"), ("α", "σ")]
    }
}

/// The four typographic edit operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EditOp {
    /// The input has an extra letter.
    Deletion,
    /// The input misses a letter.
    Insertion,
    Transposition,
    Substitution,
}

impl EditOp {
    pub fn name(self) -> &'static str {
        match self {
            EditOp::Deletion => "added-letter",
            EditOp::Insertion => "missing-letter",
            EditOp::Transposition => "transposed-letter",
            EditOp::Substitution => "wrong-letter",
        }
    }
}

/// All in-lexicon keys reachable by one confusion-pair substitution,
/// labelled with the pair that produced them.
pub fn optical_candidates(cl: &CompiledLexicon, key: &str) -> BTreeSet<(String, String)> {
    let chars: Vec<char> = key.chars().collect();
    let mut out = BTreeSet::new();
    for (a, b) in ConfusionTable::folded_pairs() {
        for (from, to) in [(a, b), (b, a)] {
            let pattern: Vec<char> = from.chars().collect();
            let replacement: Vec<char> = to.chars().collect();
            if chars.len() < pattern.len() {
                continue;
            }
            for i in 0..=chars.len() - pattern.len() {
                if chars[i..i + pattern.len()] == pattern[..] {
                    let mut candidate: Vec<char> = chars[..i].to_vec();
                    candidate.extend(&replacement);
                    candidate.extend(&chars[i + pattern.len()..]);
                    let candidate: String = candidate.into_iter().collect();
                    if candidate != key && !cl.lookup(&candidate).is_empty() {
                        out.insert((candidate, format!("{a}↔{b}")));
                    }
                }
            }
        }
    }
    out
}

/// All in-lexicon keys exactly one edit operation away from `key`,
/// labelled with the operation. The identity is excluded by construction.
pub fn edit_candidates(cl: &CompiledLexicon, key: &str) -> BTreeSet<(String, EditOp)> {
    let chars: Vec<char> = key.chars().collect();
    let mut out = BTreeSet::new();
    let probe = |candidate: String, op: EditOp, set: &mut BTreeSet<(String, EditOp)>| {
        if candidate != key && !cl.lookup(&candidate).is_empty() {
            set.insert((candidate, op));
        }
    };

    for i in 0..chars.len() {
        let mut c = chars.clone();
        c.remove(i);
        probe(c.into_iter().collect(), EditOp::Deletion, &mut out);
    }
    for i in 0..=chars.len() {
        for letter in KEY_ALPHABET {
            let mut c = chars.clone();
            c.insert(i, letter);
            probe(c.into_iter().collect(), EditOp::Insertion, &mut out);
        }
    }
    for i in 0..chars.len().saturating_sub(1) {
        if chars[i] != chars[i + 1] {
            let mut c = chars.clone();
            c.swap(i, i + 1);
            probe(c.into_iter().collect(), EditOp::Transposition, &mut out);
        }
    }
    for i in 0..chars.len() {
        for letter in KEY_ALPHABET {
            if letter != chars[i] {
                let mut c = chars.clone();
                c[i] = letter;
                probe(c.into_iter().collect(), EditOp::Substitution, &mut out);
            }
        }
    }
    out
}

/// Optimal-string-alignment distance (the four edit operations), capped;
/// `None` when the distance exceeds the cap.
pub fn osa_distance_capped(a: &str, b: &str, cap: usize) -> Option<usize> {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.len().abs_diff(b.len()) > cap {
        return None;
    }
    let mut prev_prev: Vec<usize> = Vec::new();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for i in 1..=a.len() {
        let mut row = vec![0usize; b.len() + 1];
        row[0] = i;
        let mut row_min = row[0];
        for j in 1..=b.len() {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            let mut d = (prev[j] + 1).min(row[j - 1] + 1).min(prev[j - 1] + cost);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                d = d.min(prev_prev[j - 2] + 1);
            }
            row[j] = d;
            row_min = row_min.min(d);
        }
        if row_min > cap {
            return None;
        }
        prev_prev = std::mem::replace(&mut prev, row);
    }
    (prev[b.len()] <= cap).then_some(prev[b.len()])
}

/// Keys at edit distance exactly two, found by a bounded walk over the
/// whole key set.
fn second_edit_keys(cl: &CompiledLexicon, key: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for (candidate, _) in cl.trie().walk_prefix("") {
        if osa_distance_capped(key, &candidate, 2) == Some(2) {
            out.insert(candidate);
        }
    }
    out
}

/// Ranking tiers of a suggestion, strongest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SuggestionTier {
    Stress = 0,
    Phonetic = 1,
    Optical = 2,
    Edit1 = 3,
    Edit2 = 4,
}

impl SuggestionTier {
    pub fn name(self) -> &'static str {
        match self {
            SuggestionTier::Stress => "stress",
            SuggestionTier::Phonetic => "phonetic",
            SuggestionTier::Optical => "optical",
            SuggestionTier::Edit1 => "edit1",
            SuggestionTier::Edit2 => "edit2",
        }
    }
}

/// A correction candidate: a stressed lexicon surface, the tier it came
/// from, and the transformation that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Suggestion {
    pub surface: String,
    pub tier: SuggestionTier,
    pub detail: String,
}

/// Ranked corrections for a token that did not check as Correct.
pub fn suggest(cl: &CompiledLexicon, token: &str, limit: usize) -> Vec<Suggestion> {
    let t = normalize_token(token);
    let key_len = t.destressed.chars().count();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut out: Vec<(SuggestionTier, usize, String, String)> = Vec::new();

    let push = |out: &mut Vec<(SuggestionTier, usize, String, String)>,
                    seen: &mut BTreeSet<String>,
                    tier: SuggestionTier,
                    surface: &str,
                    detail: String| {
        if fold_case(surface) == t.folded || !seen.insert(surface.to_string()) {
            return;
        }
        let diff = surface.chars().count().abs_diff(key_len);
        out.push((tier, diff, surface.to_string(), detail));
    };

    for payload in cl.lookup(&t.destressed) {
        let surface = &cl.forms()[payload.form_id as usize].surface;
        push(&mut out, &mut seen, SuggestionTier::Stress, surface, "stress-variant".into());
    }

    let phon = phonetic_key(&t.destressed);
    if let Some(ids) = cl.phonetic_index().get(&phon) {
        for &id in ids {
            let surface = &cl.forms()[id as usize].surface;
            push(&mut out, &mut seen, SuggestionTier::Phonetic, surface, format!("phonetic:{phon}"));
        }
    }

    for (key, pair) in optical_candidates(cl, &t.destressed) {
        for payload in cl.lookup(&key) {
            let surface = &cl.forms()[payload.form_id as usize].surface;
            push(&mut out, &mut seen, SuggestionTier::Optical, surface, format!("optical:{pair}"));
        }
    }

    for (key, op) in edit_candidates(cl, &t.destressed) {
        for payload in cl.lookup(&key) {
            let surface = &cl.forms()[payload.form_id as usize].surface;
            push(&mut out, &mut seen, SuggestionTier::Edit1, surface, format!("edit:{}", op.name()));
        }
    }

    if out.len() < limit {
        for key in second_edit_keys(cl, &t.destressed) {
            for payload in cl.lookup(&key) {
                let surface = &cl.forms()[payload.form_id as usize].surface;
                push(&mut out, &mut seen, SuggestionTier::Edit2, surface, "edit2".into());
            }
        }
    }

    out.sort();
    out.truncate(limit);
    out.into_iter()
        .map(|(tier, _, surface, detail)| Suggestion { surface, tier, detail })
        .collect()
}
