//! Phonetic keys: spellings that sound alike collapse to one key, which
//! is how the speller finds iotacism and αυ/ευ misspellings.
//!
//! ```bash
//! cargo run -p glex --example phonetic_keys
//! ```

use glex::speller::phonetic_key;

fn main() {
    println!("{:<12} {:<12} key", "spelling", "variant");
    for (a, b) in [
        ("ευρεση", "εβρεση"),   // ευ before a voiced sound reads as εβ
        ("αγχοσ", "ανχοσ"),     // the nasal neutralizes before velars
        ("αυγο", "αβγο"),       // both spellings are pronounced the same
        ("πειρα", "πιρα"),      // iotacism: ει and ι merge
        ("λιπη", "λυπη"),       // …as do υ and ι and η
        ("θαλασσα", "θαλασα"),  // doubled letters collapse
        ("αγγελοσ", "αγκελοσ"), // γγ and γκ share a class
        ("μπαλα", "μπαλλα"),
    ] {
        let ka = phonetic_key(a);
        let kb = phonetic_key(b);
        assert_eq!(ka, kb, "{a} vs {b}");
        println!("{a:<12} {b:<12} {ka}");
    }

    println!("\nvoicing of αυ/ευ depends on what follows:");
    for word in ["αυτοσ", "αυρα", "ευθυσ", "ευγενησ"] {
        println!("  {:<10} -> {}", word, phonetic_key(word));
    }

    println!("\nkeys are fixed points: re-keying changes nothing");
    for word in ["ευρεση", "αγχοσ", "γλωσσα"] {
        let key = phonetic_key(word);
        assert_eq!(phonetic_key(&key), key);
        println!("  key({word}) = key(key({word})) = {key}");
    }
}
