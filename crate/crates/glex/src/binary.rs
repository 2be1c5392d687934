//! The GLEX binary container.
//!
//! Layout, little-endian throughout:
//!
//! ```text
//! "GLEX" | u16 version | u16 section count
//! per section: 4-byte id | u64 offset | u64 length | u32 crc32
//! section payloads, concatenated
//! ```
//!
//! Sections: `LEMM` (lemma and lexeme metadata), `FORM` (word forms),
//! `TRIE` (the preorder trie stream), `PHON` (phonetic index), `HYPH`
//! (derived vowel decisions and hyphenation exceptions). Every section is
//! length-prefixed and checksummed so a damaged file is rejected whole —
//! no partial lexicon is ever returned.

use std::collections::BTreeMap;
use std::io::{self, Read, Write};

use crate::alphabet::{destress, fold_case};
use crate::compile::{CompiledLexicon, LemmaInfo, LexemeInfo, FORMAT_VERSION};
use crate::hyphen::{ExceptionTable, VowelDecision, VowelDecisions};
use crate::morph::{
    MorphemeKind, Sense, SenseRef, SenseRelation, StressPosition, WordFormEntry,
};
use crate::trie::CompressedTrie;
use crate::varint;

const MAGIC: &[u8; 4] = b"GLEX";
const SEC_LEMMAS: [u8; 4] = *b"LEMM";
const SEC_FORMS: [u8; 4] = *b"FORM";
const SEC_TRIE: [u8; 4] = *b"TRIE";
const SEC_PHONETIC: [u8; 4] = *b"PHON";
const SEC_HYPHEN: [u8; 4] = *b"HYPH";

#[derive(Debug, thiserror::Error)]
pub enum GlexError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("not a GLEX file (bad magic)")]
    BadMagic,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u16),
    #[error("corrupt lexicon file: {0}")]
    Corrupt(String),
}

fn corrupt(what: impl Into<String>) -> GlexError {
    GlexError::Corrupt(what.into())
}

/// Serialize a compiled lexicon. Identical lexicons produce identical
/// bytes.
pub fn write_binary(cl: &CompiledLexicon, sink: &mut impl Write) -> io::Result<()> {
    let sections: [([u8; 4], Vec<u8>); 5] = [
        (SEC_LEMMAS, encode_lemmas(cl.lemmas())),
        (SEC_FORMS, encode_forms(cl.forms())),
        (SEC_TRIE, cl.trie().serialize_to_vec()),
        (SEC_PHONETIC, encode_phonetic(cl.phonetic_index())),
        (SEC_HYPHEN, encode_hyphen(&cl.hyphen_decisions, &cl.hyphen_exceptions)),
    ];

    sink.write_all(MAGIC)?;
    sink.write_all(&cl.version().to_le_bytes())?;
    sink.write_all(&(sections.len() as u16).to_le_bytes())?;

    let table_len = 4 + 2 + 2 + sections.len() * (4 + 8 + 8 + 4);
    let mut offset = table_len as u64;
    for (id, payload) in &sections {
        sink.write_all(id)?;
        sink.write_all(&offset.to_le_bytes())?;
        sink.write_all(&(payload.len() as u64).to_le_bytes())?;
        sink.write_all(&crc32fast::hash(payload).to_le_bytes())?;
        offset += payload.len() as u64;
    }
    for (_, payload) in &sections {
        sink.write_all(payload)?;
    }
    Ok(())
}

pub fn write_to_vec(cl: &CompiledLexicon) -> Vec<u8> {
    let mut out = Vec::new();
    write_binary(cl, &mut out).expect("writing to a Vec cannot fail");
    out
}

/// Deserialize a GLEX stream, verifying the magic, version, and every
/// section checksum before reconstructing anything.
pub fn read_binary(source: &mut impl Read) -> Result<CompiledLexicon, GlexError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    read_from_slice(&bytes)
}

pub fn read_from_slice(bytes: &[u8]) -> Result<CompiledLexicon, GlexError> {
    if bytes.len() < 8 {
        return Err(corrupt("file shorter than the header"));
    }
    if &bytes[0..4] != MAGIC {
        return Err(GlexError::BadMagic);
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(GlexError::UnsupportedVersion(version));
    }
    let count = u16::from_le_bytes([bytes[6], bytes[7]]) as usize;
    let table_len = 8 + count * 24;
    if bytes.len() < table_len {
        return Err(corrupt("truncated section table"));
    }

    let mut sections: BTreeMap<[u8; 4], &[u8]> = BTreeMap::new();
    for i in 0..count {
        let entry = &bytes[8 + i * 24..8 + (i + 1) * 24];
        let id: [u8; 4] = entry[0..4].try_into().unwrap();
        let offset = u64::from_le_bytes(entry[4..12].try_into().unwrap()) as usize;
        let len = u64::from_le_bytes(entry[12..20].try_into().unwrap()) as usize;
        let crc = u32::from_le_bytes(entry[20..24].try_into().unwrap());
        let end = offset.checked_add(len).ok_or_else(|| corrupt("section bounds overflow"))?;
        if end > bytes.len() {
            return Err(corrupt(format!("section {} exceeds the file", show_id(id))));
        }
        let payload = &bytes[offset..end];
        if crc32fast::hash(payload) != crc {
            return Err(corrupt(format!("checksum mismatch in section {}", show_id(id))));
        }
        sections.insert(id, payload);
    }

    let take = |id: [u8; 4]| -> Result<&[u8], GlexError> {
        sections.get(&id).copied().ok_or_else(|| corrupt(format!("missing section {}", show_id(id))))
    };

    let lemmas = decode_lemmas(take(SEC_LEMMAS)?)?;
    let forms = decode_forms(take(SEC_FORMS)?)?;
    let trie = CompressedTrie::deserialize(&mut take(SEC_TRIE)?.to_vec().as_slice())
        .map_err(|e| corrupt(e.to_string()))?;
    let phonetic = decode_phonetic(take(SEC_PHONETIC)?)?;
    let (hyphen_decisions, hyphen_exceptions) = decode_hyphen(take(SEC_HYPHEN)?)?;

    for (key, _) in trie.walk_prefix("") {
        for record in trie.lookup(&key) {
            if record.form_id as usize >= forms.len() {
                return Err(corrupt("trie payload references a missing form"));
            }
        }
    }
    for ids in phonetic.values() {
        if ids.iter().any(|&id| id as usize >= forms.len()) {
            return Err(corrupt("phonetic index references a missing form"));
        }
    }

    Ok(CompiledLexicon {
        version,
        lemmas,
        forms,
        trie,
        phonetic,
        hyphen_decisions,
        hyphen_exceptions,
    })
}

fn show_id(id: [u8; 4]) -> String {
    String::from_utf8_lossy(&id).into_owned()
}

/// Section names and byte lengths, in file order, without decoding the
/// payloads.
pub fn section_sizes(bytes: &[u8]) -> Result<Vec<(String, u64)>, GlexError> {
    if bytes.len() < 8 {
        return Err(corrupt("file shorter than the header"));
    }
    if &bytes[0..4] != MAGIC {
        return Err(GlexError::BadMagic);
    }
    let count = u16::from_le_bytes([bytes[6], bytes[7]]) as usize;
    if bytes.len() < 8 + count * 24 {
        return Err(corrupt("truncated section table"));
    }
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let entry = &bytes[8 + i * 24..8 + (i + 1) * 24];
        let id: [u8; 4] = entry[0..4].try_into().unwrap();
        let len = u64::from_le_bytes(entry[12..20].try_into().unwrap());
        out.push((show_id(id), len));
    }
    Ok(out)
}

// --- encoding -------------------------------------------------------------

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(buf: &'a [u8]) -> Cursor<'a> {
        Cursor { buf, pos: 0 }
    }

    fn varint(&mut self) -> Result<u64, GlexError> {
        let mut rest = &self.buf[self.pos.min(self.buf.len())..];
        let before = rest.len();
        let value = varint::read(&mut rest).map_err(|e| corrupt(format!("varint: {e}")))?;
        self.pos += before - rest.len();
        Ok(value)
    }

    fn length(&mut self) -> Result<usize, GlexError> {
        let v = self.varint()?;
        usize::try_from(v).map_err(|_| corrupt("length overflow"))
    }

    fn byte(&mut self) -> Result<u8, GlexError> {
        let b = *self.buf.get(self.pos).ok_or_else(|| corrupt("unexpected end of section"))?;
        self.pos += 1;
        Ok(b)
    }

    fn str(&mut self) -> Result<String, GlexError> {
        let len = self.length()?;
        let end = self.pos.checked_add(len).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| corrupt("string exceeds the section"))?;
        let s = std::str::from_utf8(&self.buf[self.pos..end])
            .map_err(|_| corrupt("string is not UTF-8"))?;
        self.pos = end;
        Ok(s.to_string())
    }

    fn done(&self) -> Result<(), GlexError> {
        if self.pos == self.buf.len() {
            Ok(())
        } else {
            Err(corrupt("trailing bytes in section"))
        }
    }
}

fn put_varint(out: &mut Vec<u8>, value: u64) {
    varint::write(out, value).expect("writing to a Vec cannot fail");
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    put_varint(out, s.len() as u64);
    out.extend_from_slice(s.as_bytes());
}

fn stress_byte(s: StressPosition) -> u8 {
    match s {
        StressPosition::Final => 0,
        StressPosition::Penultimate => 1,
        StressPosition::Antepenultimate => 2,
    }
}

fn stress_from(b: u8) -> Result<StressPosition, GlexError> {
    match b {
        0 => Ok(StressPosition::Final),
        1 => Ok(StressPosition::Penultimate),
        2 => Ok(StressPosition::Antepenultimate),
        other => Err(corrupt(format!("invalid stress byte {other}"))),
    }
}

fn kind_byte(k: MorphemeKind) -> u8 {
    match k {
        MorphemeKind::Prefix => 0,
        MorphemeKind::Stem => 1,
        MorphemeKind::Infix => 2,
        MorphemeKind::Inflection => 3,
    }
}

fn kind_from(b: u8) -> Result<MorphemeKind, GlexError> {
    match b {
        0 => Ok(MorphemeKind::Prefix),
        1 => Ok(MorphemeKind::Stem),
        2 => Ok(MorphemeKind::Infix),
        3 => Ok(MorphemeKind::Inflection),
        other => Err(corrupt(format!("invalid morpheme kind {other}"))),
    }
}

fn relation_byte(r: SenseRelation) -> u8 {
    match r {
        SenseRelation::Synonym => 0,
        SenseRelation::Antonym => 1,
        SenseRelation::Hyponym => 2,
        SenseRelation::Related => 3,
    }
}

fn relation_from(b: u8) -> Result<SenseRelation, GlexError> {
    match b {
        0 => Ok(SenseRelation::Synonym),
        1 => Ok(SenseRelation::Antonym),
        2 => Ok(SenseRelation::Hyponym),
        3 => Ok(SenseRelation::Related),
        other => Err(corrupt(format!("invalid relation byte {other}"))),
    }
}

fn encode_lemmas(lemmas: &[LemmaInfo]) -> Vec<u8> {
    let mut out = Vec::new();
    put_varint(&mut out, lemmas.len() as u64);
    for lemma in lemmas {
        put_str(&mut out, &lemma.headword);
        put_varint(&mut out, lemma.lexemes.len() as u64);
        for lexeme in &lemma.lexemes {
            put_varint(&mut out, lexeme.id as u64);
            put_str(&mut out, &lexeme.name);
            put_str(&mut out, &lexeme.pos);
            out.push(u8::from(lexeme.keep_stress));
            put_varint(&mut out, lexeme.senses.len() as u64);
            for sense in &lexeme.senses {
                put_str(&mut out, &sense.gloss);
                put_varint(&mut out, sense.refs.len() as u64);
                for r in &sense.refs {
                    out.push(relation_byte(r.relation));
                    put_str(&mut out, &r.headword);
                }
            }
        }
    }
    out
}

fn decode_lemmas(bytes: &[u8]) -> Result<Vec<LemmaInfo>, GlexError> {
    let mut c = Cursor::new(bytes);
    let lemma_count = c.length()?;
    let mut lemmas = Vec::with_capacity(lemma_count.min(1 << 20));
    for _ in 0..lemma_count {
        let headword = c.str()?;
        let lexeme_count = c.length()?;
        let mut lexemes = Vec::with_capacity(lexeme_count.min(1 << 10));
        for _ in 0..lexeme_count {
            let id = u32::try_from(c.varint()?).map_err(|_| corrupt("lexeme id overflow"))?;
            let name = c.str()?;
            let pos = c.str()?;
            let keep_stress = c.byte()? != 0;
            let sense_count = c.length()?;
            let mut senses = Vec::with_capacity(sense_count.min(1 << 10));
            for _ in 0..sense_count {
                let gloss = c.str()?;
                let ref_count = c.length()?;
                let mut refs = Vec::with_capacity(ref_count.min(1 << 10));
                for _ in 0..ref_count {
                    let relation = relation_from(c.byte()?)?;
                    refs.push(SenseRef { relation, headword: c.str()? });
                }
                senses.push(Sense { gloss, refs });
            }
            lexemes.push(LexemeInfo { id, name, pos, keep_stress, senses });
        }
        lemmas.push(LemmaInfo { headword, lexemes });
    }
    c.done()?;
    Ok(lemmas)
}

fn encode_forms(forms: &[WordFormEntry]) -> Vec<u8> {
    let mut out = Vec::new();
    put_varint(&mut out, forms.len() as u64);
    for form in forms {
        put_str(&mut out, &form.surface);
        out.push(stress_byte(form.stress));
        put_str(&mut out, &form.tags);
        put_varint(&mut out, form.lexeme_id as u64);
        put_varint(&mut out, form.segmentation.len() as u64);
        for (kind, letters) in &form.segmentation {
            out.push(kind_byte(*kind));
            put_str(&mut out, letters);
        }
        put_varint(&mut out, form.hyphen_pattern.len() as u64);
        for &b in &form.hyphen_pattern {
            put_varint(&mut out, b as u64);
        }
    }
    out
}

fn decode_forms(bytes: &[u8]) -> Result<Vec<WordFormEntry>, GlexError> {
    let mut c = Cursor::new(bytes);
    let count = c.length()?;
    let mut forms = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        let surface = c.str()?;
        let stress = stress_from(c.byte()?)?;
        let tags = c.str()?;
        let lexeme_id = u32::try_from(c.varint()?).map_err(|_| corrupt("lexeme id overflow"))?;
        let seg_count = c.length()?;
        let mut segmentation = Vec::with_capacity(seg_count.min(1 << 10));
        for _ in 0..seg_count {
            let kind = kind_from(c.byte()?)?;
            segmentation.push((kind, c.str()?));
        }
        let break_count = c.length()?;
        let mut hyphen_pattern = Vec::with_capacity(break_count.min(1 << 10));
        for _ in 0..break_count {
            hyphen_pattern.push(c.length()?);
        }
        // the key is a pure function of the surface
        let destressed_key = destress(&fold_case(&surface));
        forms.push(WordFormEntry {
            surface,
            destressed_key,
            stress,
            tags,
            segmentation,
            hyphen_pattern,
            lexeme_id,
        });
    }
    c.done()?;
    Ok(forms)
}

fn encode_phonetic(index: &BTreeMap<String, Vec<u32>>) -> Vec<u8> {
    let mut out = Vec::new();
    put_varint(&mut out, index.len() as u64);
    for (key, ids) in index {
        put_str(&mut out, key);
        put_varint(&mut out, ids.len() as u64);
        for &id in ids {
            put_varint(&mut out, id as u64);
        }
    }
    out
}

fn decode_phonetic(bytes: &[u8]) -> Result<BTreeMap<String, Vec<u32>>, GlexError> {
    let mut c = Cursor::new(bytes);
    let count = c.length()?;
    let mut index = BTreeMap::new();
    for _ in 0..count {
        let key = c.str()?;
        let id_count = c.length()?;
        let mut ids = Vec::with_capacity(id_count.min(1 << 20));
        for _ in 0..id_count {
            ids.push(u32::try_from(c.varint()?).map_err(|_| corrupt("form id overflow"))?);
        }
        index.insert(key, ids);
    }
    c.done()?;
    Ok(index)
}

fn decision_byte(d: VowelDecision) -> u8 {
    match d {
        VowelDecision::KeepTogether => 0,
        VowelDecision::Split => 1,
        VowelDecision::LexiconDependent => 2,
    }
}

fn decision_from(b: u8) -> Result<VowelDecision, GlexError> {
    match b {
        0 => Ok(VowelDecision::KeepTogether),
        1 => Ok(VowelDecision::Split),
        2 => Ok(VowelDecision::LexiconDependent),
        other => Err(corrupt(format!("invalid vowel decision {other}"))),
    }
}

fn encode_hyphen(decisions: &VowelDecisions, exceptions: &ExceptionTable) -> Vec<u8> {
    let mut out = Vec::new();
    put_varint(&mut out, decisions.len() as u64);
    for ((a, b), decision) in decisions {
        let pair: String = [*a, *b].iter().collect();
        put_str(&mut out, &pair);
        out.push(decision_byte(*decision));
    }
    put_varint(&mut out, exceptions.len() as u64);
    for (key, breaks) in exceptions {
        put_str(&mut out, key);
        put_varint(&mut out, breaks.len() as u64);
        for &b in breaks {
            put_varint(&mut out, b as u64);
        }
    }
    out
}

type HyphenData = (VowelDecisions, ExceptionTable);

fn decode_hyphen(bytes: &[u8]) -> Result<HyphenData, GlexError> {
    let mut c = Cursor::new(bytes);
    let decision_count = c.length()?;
    let mut decisions = BTreeMap::new();
    for _ in 0..decision_count {
        let pair = c.str()?;
        let mut chars = pair.chars();
        let (Some(a), Some(b), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(corrupt(format!("vowel pair {pair:?} is not two scalars")));
        };
        decisions.insert((a, b), decision_from(c.byte()?)?);
    }
    let exception_count = c.length()?;
    let mut exceptions = BTreeMap::new();
    for _ in 0..exception_count {
        let key = c.str()?;
        let break_count = c.length()?;
        let mut breaks = Vec::with_capacity(break_count.min(1 << 10));
        for _ in 0..break_count {
            breaks.push(c.length()?);
        }
        exceptions.insert(key, breaks);
    }
    c.done()?;
    Ok((decisions, exceptions))
}
