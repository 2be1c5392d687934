//! Syllabification of Greek words.
//!
//! Three layers, in precedence order:
//!
//! 1. an exception table mapping destressed forms to exact break patterns,
//! 2. the compiled lexicon's stored pattern for known words,
//! 3. handcrafted rules: a single consonant between vowels joins the
//!    following vowel; a consonant cluster moves whole to the next
//!    syllable iff some Greek word begins with it, otherwise it breaks
//!    after its first consonant (identical doubles therefore split
//!    between); adjacent vowels group into one nucleus or split according
//!    to the vowel-combination table.
//!
//! The vowel-combination decisions and the exception table can be derived
//! from a compiled lexicon with [`derive_vowel_rules`]: the majority
//! behavior of each tracked combination becomes its decision, and every
//! form the resulting rules still get wrong becomes an exception.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use crate::alphabet::{destress, fold_case, has_dialytika, is_vowel, nfc};
use crate::compile::CompiledLexicon;
use crate::morph::WordFormEntry;

const ONSET_DATA: &str = include_str!("../data/onset_clusters.txt");
const VOWEL_DATA: &str = include_str!("../data/vowel_combinations.txt");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HyphenError {
    #[error("word contains no vowel")]
    NoVowel,
    #[error("invalid rule data: {0}")]
    InvalidData(String),
}

/// How a tracked vowel combination behaves during syllabification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VowelDecision {
    KeepTogether,
    Split,
    /// Word-dependent; acts as `Split` until lexicon data resolves it.
    LexiconDependent,
}

/// Decision table over tracked vowel pairs.
pub type VowelDecisions = BTreeMap<(char, char), VowelDecision>;

/// Destressed form → its exact break pattern.
pub type ExceptionTable = BTreeMap<String, Vec<usize>>;

impl VowelDecision {
    fn keeps(self) -> bool {
        matches!(self, VowelDecision::KeepTogether)
    }
}

/// A word together with its internal break offsets (scalar positions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakPattern {
    pub word: String,
    pub breaks: Vec<usize>,
}

impl BreakPattern {
    /// The syllables of the original word.
    pub fn segments(&self) -> Vec<String> {
        let chars: Vec<char> = self.word.chars().collect();
        let mut out = Vec::with_capacity(self.breaks.len() + 1);
        let mut start = 0;
        for &b in &self.breaks {
            out.push(chars[start..b].iter().collect());
            start = b;
        }
        out.push(chars[start..].iter().collect());
        out
    }
}

impl fmt::Display for BreakPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.segments().join("-"))
    }
}

/// Handcrafted rules, vowel-combination decisions, and the exception
/// table. Immutable once built; all queries are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyphenRuleSet {
    onsets: BTreeSet<String>,
    decisions: VowelDecisions,
    exceptions: ExceptionTable,
}

impl HyphenRuleSet {
    /// The built-in rule set: embedded onset table and vowel-combination
    /// seed, empty exception table.
    pub fn handcrafted() -> &'static HyphenRuleSet {
        static RULES: OnceLock<HyphenRuleSet> = OnceLock::new();
        RULES.get_or_init(|| {
            HyphenRuleSet::from_data(ONSET_DATA, VOWEL_DATA)
                .expect("embedded hyphenation data is well-formed")
        })
    }

    /// Build a rule set from onset-cluster and vowel-combination tables
    /// (one entry per line, `#` comments).
    pub fn from_data(onsets: &str, vowel_pairs: &str) -> Result<HyphenRuleSet, HyphenError> {
        let mut onset_set = BTreeSet::new();
        for line in data_lines(onsets) {
            let cluster: Vec<char> = line.chars().collect();
            if cluster.len() < 2 || cluster.iter().any(|c| is_vowel(*c)) {
                return Err(HyphenError::InvalidData(format!(
                    "onset cluster must be two or more consonants: {line:?}"
                )));
            }
            onset_set.insert(line.to_string());
        }
        let mut decisions = BTreeMap::new();
        for line in data_lines(vowel_pairs) {
            let mut parts = line.split_whitespace();
            let pair: Vec<char> = parts.next().unwrap_or("").chars().collect();
            let decision = match parts.next() {
                Some("keep") => VowelDecision::KeepTogether,
                Some("split") => VowelDecision::Split,
                Some("lexicon") => VowelDecision::LexiconDependent,
                other => {
                    return Err(HyphenError::InvalidData(format!(
                        "expected keep|split|lexicon, got {other:?} in {line:?}"
                    )))
                }
            };
            if pair.len() != 2 || !pair.iter().all(|c| is_vowel(*c)) {
                return Err(HyphenError::InvalidData(format!(
                    "vowel combination must be two vowels: {line:?}"
                )));
            }
            decisions.insert((pair[0], pair[1]), decision);
        }
        Ok(HyphenRuleSet { onsets: onset_set, decisions, exceptions: BTreeMap::new() })
    }

    /// Replace decisions and exceptions, keeping the onset table.
    pub fn with_derived(
        &self,
        decisions: VowelDecisions,
        exceptions: ExceptionTable,
    ) -> HyphenRuleSet {
        HyphenRuleSet { onsets: self.onsets.clone(), decisions, exceptions }
    }

    pub fn decisions(&self) -> &VowelDecisions {
        &self.decisions
    }

    pub fn exceptions(&self) -> &ExceptionTable {
        &self.exceptions
    }

    /// True iff a Greek word can begin with this consonant cluster.
    ///
    /// The cluster must hold at least two consonants; single consonants
    /// always join the following vowel and never reach this test.
    pub fn leading_cluster_test(&self, cluster: &str) -> bool {
        assert!(
            cluster.chars().count() >= 2,
            "leading_cluster_test needs at least two consonants, got {cluster:?}"
        );
        self.onsets.contains(cluster)
    }

    fn keeps_together(&self, a: char, b: char) -> bool {
        self.decisions.get(&(a, b)).is_some_and(|d| d.keeps())
    }

    /// Group the vowels of a destressed word into nuclei: spans that stay
    /// in one syllable. A vowel with the dialytika always starts a new
    /// nucleus.
    fn nuclei(&self, chars: &[char]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if !is_vowel(chars[i]) {
                i += 1;
                continue;
            }
            let start = i;
            let mut end = i + 1;
            while end < chars.len()
                && is_vowel(chars[end])
                && !has_dialytika(chars[end])
                && self.keeps_together(chars[end - 1], chars[end])
            {
                end += 1;
            }
            out.push((start, end));
            i = end;
        }
        out
    }

    /// The break position between two adjacent nuclei, given the span of
    /// consonants between them (`gap_start..gap_end`, possibly empty).
    fn junction_break(&self, chars: &[char], gap_start: usize, gap_end: usize) -> usize {
        match gap_end - gap_start {
            // adjacent vowels that did not merge split between
            0 => gap_start,
            // V-CV: the consonant joins the following vowel
            1 => gap_start,
            _ => {
                let cluster: String = chars[gap_start..gap_end].iter().collect();
                if self.onsets.contains(&cluster) {
                    gap_start
                } else {
                    // identical doubles split between; any other cluster
                    // that no word begins with breaks after its first
                    // consonant, which is the same position
                    gap_start + 1
                }
            }
        }
    }

    /// Rule-based break offsets for a destressed, folded word.
    pub fn rule_breaks(&self, destressed: &str) -> Vec<usize> {
        let chars: Vec<char> = destressed.chars().collect();
        self.rule_breaks_chars(&chars)
    }

    fn rule_breaks_chars(&self, chars: &[char]) -> Vec<usize> {
        let nuclei = self.nuclei(chars);
        let mut breaks = Vec::new();
        for pair in nuclei.windows(2) {
            breaks.push(self.junction_break(chars, pair[0].1, pair[1].0));
        }
        breaks
    }

    /// Resolve morpheme-boundary breaks for a concatenated form: for each
    /// boundary offset, one break placed by the junction rules between the
    /// nuclei on either side. Boundaries swallowed by a merged nucleus, or
    /// with no vowel on one side, yield no break.
    pub fn boundary_breaks(&self, chars: &[char], boundaries: &[usize]) -> BTreeSet<usize> {
        let nuclei = self.nuclei(chars);
        let mut out = BTreeSet::new();
        for &b in boundaries {
            if b == 0 || b >= chars.len() {
                continue;
            }
            if nuclei.iter().any(|&(s, e)| s < b && b < e) {
                continue;
            }
            let left = nuclei.iter().rev().find(|&&(_, e)| e <= b);
            let right = nuclei.iter().find(|&&(s, _)| s >= b);
            if let (Some(&(_, left_end)), Some(&(right_start, _))) = (left, right) {
                out.insert(self.junction_break(chars, left_end, right_start));
            }
        }
        out
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

/// Hyphenate a word. Precedence: exception table, then the lexicon's
/// stored pattern, then the handcrafted rules. The tonos is ignored for
/// segmentation; break offsets refer to the word as given.
pub fn hyphenate(
    rules: &HyphenRuleSet,
    lexicon: Option<&CompiledLexicon>,
    word: &str,
) -> Result<BreakPattern, HyphenError> {
    let original = nfc(word).into_owned();
    let key = destress(&fold_case(&original));
    if !key.chars().any(is_vowel) {
        return Err(HyphenError::NoVowel);
    }
    if let Some(pattern) = rules.exceptions.get(&key) {
        return Ok(BreakPattern { word: original, breaks: pattern.clone() });
    }
    if let Some(cl) = lexicon {
        if let Some(record) = cl.lookup(&key).first() {
            let pattern = cl.forms()[record.form_id as usize].hyphen_pattern.clone();
            return Ok(BreakPattern { word: original, breaks: pattern });
        }
    }
    let breaks = rules.rule_breaks(&key);
    Ok(BreakPattern { word: original, breaks })
}

/// Derive vowel-combination decisions and an exception table from
/// compiled forms.
///
/// For every tracked combination the majority behavior across all form
/// occurrences wins (ties resolve to split); combinations that never
/// occur keep their seed default. Every form whose stored pattern the
/// resulting rules fail to reproduce enters the exception table, first
/// form per key winning.
pub fn derive_vowel_rules(
    seed: &HyphenRuleSet,
    forms: &[WordFormEntry],
) -> (VowelDecisions, ExceptionTable) {
    let mut tallies: BTreeMap<(char, char), (u32, u32)> = BTreeMap::new();
    for form in forms {
        let chars: Vec<char> = form.destressed_key.chars().collect();
        let pattern: BTreeSet<usize> = form.hyphen_pattern.iter().copied().collect();
        for i in 0..chars.len().saturating_sub(1) {
            let pair = (chars[i], chars[i + 1]);
            if !seed.decisions.contains_key(&pair) {
                continue;
            }
            let tally = tallies.entry(pair).or_insert((0, 0));
            if pattern.contains(&(i + 1)) {
                tally.1 += 1;
            } else {
                tally.0 += 1;
            }
        }
    }

    let mut decisions = seed.decisions.clone();
    for (pair, (stay, split)) in &tallies {
        let decision =
            if stay > split { VowelDecision::KeepTogether } else { VowelDecision::Split };
        decisions.insert(*pair, decision);
    }

    let derived = seed.with_derived(decisions.clone(), BTreeMap::new());
    let mut exceptions: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for form in forms {
        if exceptions.contains_key(&form.destressed_key) {
            continue;
        }
        if derived.rule_breaks(&form.destressed_key) != form.hyphen_pattern {
            exceptions.insert(form.destressed_key.clone(), form.hyphen_pattern.clone());
        }
    }
    (decisions, exceptions)
}
