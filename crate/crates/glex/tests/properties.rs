//! Property-based invariants over random inputs.

use std::collections::BTreeMap;

use proptest::prelude::*;

use glex::alphabet::{
    classify, destress, fold_case, has_dialytika, has_tonos, is_vowel, TokenClass, KEY_ALPHABET,
};
use glex::hyphen::{hyphenate, HyphenRuleSet};
use glex::morph::{place_stress, StressPosition};
use glex::speller::{osa_distance_capped, phonetic_key};
use glex::trie::{CompressedTrie, PayloadRecord};

fn greek_char() -> impl Strategy<Value = char> {
    prop::sample::select(
        "αβγδεζηθικλμνξοπρστυφχψωςάέήίόύώϊϋΐΰΑΒΓΔΕΖΗΘΙΚΛΜΝΞΟΠΡΣΤΥΦΧΨΩΆΈΉΊΌΎΏ"
            .chars()
            .collect::<Vec<char>>(),
    )
}

fn greek_word() -> impl Strategy<Value = String> {
    prop::collection::vec(greek_char(), 0..14).prop_map(|v| v.into_iter().collect())
}

fn key_char() -> impl Strategy<Value = char> {
    prop::sample::select(KEY_ALPHABET.to_vec())
}

/// A destressed key guaranteed to contain at least one vowel.
fn voweled_key() -> impl Strategy<Value = String> {
    (
        prop::collection::vec(key_char(), 0..6),
        prop::sample::select(vec!['α', 'ε', 'η', 'ι', 'ο', 'υ', 'ω']),
        prop::collection::vec(key_char(), 0..6),
    )
        .prop_map(|(a, v, b)| {
            let mut s: String = a.into_iter().collect();
            s.push(v);
            s.extend(b);
            s
        })
}

proptest! {
    #[test]
    fn fold_case_is_idempotent(w in greek_word()) {
        let once = fold_case(&w);
        prop_assert_eq!(fold_case(&once), once);
    }

    #[test]
    fn destress_is_idempotent_and_length_preserving(w in greek_word()) {
        let folded = fold_case(&w);
        let once = destress(&folded);
        prop_assert_eq!(destress(&once), once.clone());
        prop_assert_eq!(once.chars().count(), w.chars().count());
        prop_assert!(once.chars().all(|c| !has_tonos(c)));
    }

    #[test]
    fn destress_never_touches_dialytika(w in greek_word()) {
        let folded = fold_case(&w);
        let stripped = destress(&folded);
        let before = folded.chars().filter(|c| has_dialytika(*c)).count();
        let after = stripped.chars().filter(|c| has_dialytika(*c)).count();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn greek_words_classify_as_greek(w in greek_word()) {
        prop_assert_eq!(classify(&w), TokenClass::GreekWord);
    }

    #[test]
    fn phonetic_key_is_a_fixed_point(w in voweled_key()) {
        let key = phonetic_key(&w);
        prop_assert_eq!(phonetic_key(&key), key);
    }

    #[test]
    fn rule_segments_rebuild_the_word_and_hold_a_vowel(w in voweled_key()) {
        let rules = HyphenRuleSet::handcrafted();
        let pattern = hyphenate(rules, None, &w).unwrap();
        prop_assert_eq!(pattern.segments().concat(), w.clone());
        for seg in pattern.segments() {
            prop_assert!(seg.chars().any(is_vowel), "{}: {:?}", w, seg);
        }
    }

    #[test]
    fn hyphenation_ignores_the_tonos(w in voweled_key(), seed in 0usize..32) {
        // put a tonos on some vowel; the break offsets must not move
        let rules = HyphenRuleSet::handcrafted();
        let chars: Vec<char> = w.chars().collect();
        let vowels: Vec<usize> =
            (0..chars.len()).filter(|&i| is_vowel(chars[i])).collect();
        let target = vowels[seed % vowels.len()];
        let mut stressed = chars.clone();
        if let Some(marked) = glex::alphabet::add_tonos(stressed[target]) {
            stressed[target] = marked;
        }
        let stressed: String = stressed.into_iter().collect();
        prop_assert_eq!(
            hyphenate(rules, None, &stressed).unwrap().breaks,
            hyphenate(rules, None, &w).unwrap().breaks
        );
    }

    #[test]
    fn stress_placement_round_trips(w in voweled_key()) {
        let rules = HyphenRuleSet::handcrafted();
        let pattern = hyphenate(rules, None, &w).unwrap().breaks;
        let syllables = pattern.len() + 1;
        for position in [
            StressPosition::Final,
            StressPosition::Penultimate,
            StressPosition::Antepenultimate,
        ] {
            if syllables < position.required_syllables() {
                prop_assert!(place_stress(&w, &pattern, position, false).is_err());
                continue;
            }
            let stressed = place_stress(&w, &pattern, position, false).unwrap();
            prop_assert_eq!(destress(&stressed), w.clone());
            let marks = stressed.chars().filter(|c| has_tonos(*c)).count();
            prop_assert_eq!(marks, usize::from(syllables > 1), "{}", stressed);
        }
    }

    #[test]
    fn trie_agrees_with_a_map_oracle(
        keys in prop::collection::vec(
            prop::collection::vec(prop::sample::select(vec!['α', 'β', 'ι']), 1..8),
            0..40,
        ),
        absent in prop::collection::vec(
            prop::collection::vec(prop::sample::select(vec!['α', 'β', 'ι', 'ω']), 1..9),
            0..40,
        ),
    ) {
        let mut oracle: BTreeMap<String, Vec<PayloadRecord>> = BTreeMap::new();
        let mut pairs = Vec::new();
        for (i, key) in keys.iter().enumerate() {
            let key: String = key.iter().collect();
            let record = PayloadRecord {
                form_id: i as u32,
                stress: StressPosition::Final,
                flags: 0,
            };
            oracle.entry(key.clone()).or_default().push(record);
            pairs.push((key, record));
        }
        let trie = CompressedTrie::build(pairs).unwrap();
        trie.check_structure().unwrap();

        for (key, want) in &oracle {
            prop_assert_eq!(trie.lookup(key), want.as_slice());
            let (_, visits) = trie.lookup_with_visits(key);
            prop_assert!(visits <= key.chars().count() + 1);
        }
        for key in &absent {
            let key: String = key.iter().collect();
            if !oracle.contains_key(&key) {
                prop_assert!(trie.lookup(&key).is_empty());
            }
            let (_, visits) = trie.lookup_with_visits(&key);
            prop_assert!(visits <= key.chars().count() + 1);
        }

        // enumeration yields exactly the key set, sorted
        let walked: Vec<String> = trie.walk_prefix("").map(|(k, _)| k).collect();
        let expected: Vec<String> = oracle.keys().cloned().collect();
        prop_assert_eq!(walked, expected);

        // serialization replays identically
        let bytes = trie.serialize_to_vec();
        let back = CompressedTrie::deserialize(&mut bytes.as_slice()).unwrap();
        for key in oracle.keys() {
            prop_assert_eq!(trie.lookup(key), back.lookup(key));
        }
    }

    #[test]
    fn osa_distance_is_symmetric_and_bounded(a in voweled_key(), b in voweled_key()) {
        let d1 = osa_distance_capped(&a, &b, 4);
        let d2 = osa_distance_capped(&b, &a, 4);
        prop_assert_eq!(d1, d2);
        if a == b {
            prop_assert_eq!(d1, Some(0));
        }
        if let Some(d) = d1 {
            prop_assert!(d <= 4);
            prop_assert!(d >= a.chars().count().abs_diff(b.chars().count()));
        }
    }
}

#[test]
fn compiled_lexicon_is_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<glex::CompiledLexicon>();
    assert_send_sync::<glex::CompressedTrie>();
    assert_send_sync::<HyphenRuleSet>();
}
