//! Expand lexemes into word forms: stress placement per inflection slot,
//! morpheme segmentation, and hyphenation, shown on three paradigms.
//!
//! ```bash
//! cargo run -p glex --example word_forms
//! ```

use glex::morph::{
    generate_word_forms, InflectionSlot, Lexeme, Morpheme, MorphemeKind, Morphology,
    StressPosition,
};

fn slot(suffix: &str, stress: StressPosition, tags: &str) -> InflectionSlot {
    let text = if suffix == "0" { "" } else { suffix };
    InflectionSlot {
        suffix: Morpheme::from_hyphenated(MorphemeKind::Inflection, text).unwrap(),
        stress,
        tags: tags.to_string(),
    }
}

fn show(title: &str, lexeme: &Lexeme) {
    println!("{title}");
    for form in generate_word_forms(lexeme, 0).unwrap() {
        let seg: Vec<String> = form
            .segmentation
            .iter()
            .map(|(kind, letters)| {
                format!("{}:{}", kind.name(), if letters.is_empty() { "0" } else { letters })
            })
            .collect();
        let chars: Vec<char> = form.surface.chars().collect();
        let mut hyphenated = String::new();
        let mut start = 0;
        for &b in &form.hyphen_pattern {
            hyphenated.extend(&chars[start..b]);
            hyphenated.push('-');
            start = b;
        }
        hyphenated.extend(&chars[start..]);
        println!(
            "  {:<10} {:<16} {:<16} {}",
            form.surface,
            form.tags,
            seg.join("+"),
            hyphenated
        );
    }
    println!();
}

fn main() {
    use StressPosition::{Antepenultimate as A, Final as F, Penultimate as P};

    // a neuter noun whose genitive pulls the stress to the ending
    let noun = Lexeme {
        name: "n".into(),
        pos: "noun-neut".into(),
        keep_stress: false,
        morphology: Morphology {
            lexical: vec![Morpheme::from_hyphenated(MorphemeKind::Stem, "κε-φαλ").unwrap()],
            inflections: vec![
                slot("ι", P, "sg-nom"),
                slot("ιου", F, "sg-gen"),
                slot("ια", P, "pl-nom"),
                slot("ιων", F, "pl-gen"),
            ],
        },
        senses: vec![],
    };
    show("κεφάλι — stress shifts between stem and ending", &noun);

    // the imperfect: the augment prefix takes the antepenultimate
    let imperfect = Lexeme {
        name: "ipf".into(),
        pos: "verb".into(),
        keep_stress: false,
        morphology: Morphology {
            lexical: vec![
                Morpheme::from_hyphenated(MorphemeKind::Prefix, "ε").unwrap(),
                Morpheme::from_hyphenated(MorphemeKind::Stem, "γραφ").unwrap(),
            ],
            inflections: vec![
                slot("α", A, "1sg"),
                slot("ες", A, "2sg"),
                slot("ε", A, "3sg"),
                slot("αν", A, "3pl"),
            ],
        },
        senses: vec![],
    };
    show("έγραφα — the augment carries the stress", &imperfect);

    // a monosyllable that keeps its written tonos
    let conjunction = Lexeme {
        name: "w".into(),
        pos: "conj".into(),
        keep_stress: true,
        morphology: Morphology {
            lexical: vec![Morpheme::from_hyphenated(MorphemeKind::Stem, "η").unwrap()],
            inflections: vec![slot("0", F, "indecl")],
        },
        senses: vec![],
    };
    show("ή — keep-stress marks the monosyllable", &conjunction);
}
