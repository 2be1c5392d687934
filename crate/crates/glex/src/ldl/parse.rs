//! Line-oriented LDL parser with per-block error recovery.

use crate::alphabet::{classify, nfc, TokenClass};
use crate::diag::{Diagnostic, Location};
use crate::morph::{
    InflectionSlot, Lemma, Lexeme, Morpheme, MorphemeError, MorphemeKind, Morphology, Sense,
    SenseRef, SenseRelation, StressPosition,
};

use super::{LdlDocument, LemmaMeta, LexemeMeta};

#[derive(Debug, Clone)]
struct Token {
    column: usize,
    text: String,
}

impl Token {
    fn loc(&self, line: usize) -> Location {
        Location::new(line, self.column)
    }
}

/// Split one line into tokens, tracking scalar columns. `#` starts a
/// comment and `"…"` forms a single token, quotes included.
fn tokenize(line_no: usize, line: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let start = i;
        if c == '"' {
            i += 1;
            while i < chars.len() && chars[i] != '"' {
                i += 1;
            }
            if i == chars.len() {
                return Err(Diagnostic::error(
                    Location::new(line_no, start + 1),
                    "syntax",
                    "unterminated string",
                ));
            }
            i += 1;
        } else {
            while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '#' {
                i += 1;
            }
        }
        tokens.push(Token { column: start + 1, text: chars[start..i].iter().collect() });
    }
    Ok(tokens)
}

fn morpheme_code(err: &MorphemeError) -> &'static str {
    match err {
        MorphemeError::StressInMorpheme(_) => "stress-in-morpheme",
        MorphemeError::BadHyphen(_) => "bad-hyphen",
        _ => "bad-morpheme",
    }
}

struct LemmaBuilder {
    lemma: Lemma,
    meta: LemmaMeta,
    /// Content errors were reported inside this block; drop it at `end`.
    poisoned: bool,
}

struct LexemeBuilder {
    lexeme: Lexeme,
    meta: LexemeMeta,
}

enum State {
    TopLevel,
    InLemma(LemmaBuilder),
    InLexeme(LemmaBuilder, LexemeBuilder),
}

/// Parse LDL text. Returns every lemma that parsed cleanly together with
/// all diagnostics; any error-severity diagnostic means the document must
/// not be compiled.
pub fn parse(source_name: &str, text: &str) -> (LdlDocument, Vec<Diagnostic>) {
    let text = nfc(text);
    let mut doc = LdlDocument {
        source_name: source_name.to_string(),
        lemmas: Vec::new(),
        meta: Vec::new(),
    };
    let mut diags = Vec::new();
    let mut state = State::TopLevel;
    let mut skipping = false;
    let mut last_line = 0;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let tokens = match tokenize(line_no, raw_line) {
            Ok(t) => t,
            Err(d) => {
                diags.push(d);
                skipping = true;
                state = State::TopLevel;
                continue;
            }
        };
        let Some(head) = tokens.first() else { continue };

        if skipping {
            if head.text == "lemma" {
                skipping = false;
            } else {
                continue;
            }
        }

        state = match state {
            State::TopLevel => match head.text.as_str() {
                "lemma" => match parse_lemma_header(line_no, &tokens) {
                    Ok(builder) => State::InLemma(builder),
                    Err(d) => {
                        diags.push(d);
                        skipping = true;
                        State::TopLevel
                    }
                },
                _ => {
                    diags.push(Diagnostic::error(
                        head.loc(line_no),
                        "syntax",
                        format!("expected `lemma`, found {:?}", head.text),
                    ));
                    skipping = true;
                    State::TopLevel
                }
            },

            State::InLemma(lemma) => match head.text.as_str() {
                "lexeme" => match parse_lexeme_header(line_no, &tokens, &lemma) {
                    Ok(lexeme) => State::InLexeme(lemma, lexeme),
                    Err(d) => {
                        diags.push(d);
                        skipping = true;
                        State::TopLevel
                    }
                },
                "end" => {
                    finish_lemma(lemma, &mut doc, &mut diags);
                    State::TopLevel
                }
                _ => {
                    diags.push(Diagnostic::error(
                        head.loc(line_no),
                        "syntax",
                        format!("expected `lexeme` or `end`, found {:?}", head.text),
                    ));
                    skipping = true;
                    State::TopLevel
                }
            },

            State::InLexeme(mut lemma, mut lexeme) => match head.text.as_str() {
                "prefix" | "stem" | "infix" => {
                    let kind = match head.text.as_str() {
                        "prefix" => MorphemeKind::Prefix,
                        "stem" => MorphemeKind::Stem,
                        _ => MorphemeKind::Infix,
                    };
                    match parse_lexical_line(line_no, &tokens, kind) {
                        Ok(m) => lexeme.lexeme.morphology.lexical.push(m),
                        Err(d) => {
                            diags.push(d);
                            lemma.poisoned = true;
                        }
                    }
                    State::InLexeme(lemma, lexeme)
                }
                "infl" => {
                    if tokens.len() == 1 {
                        diags.push(Diagnostic::error(
                            head.loc(line_no),
                            "syntax",
                            "`infl` needs at least one slot",
                        ));
                        lemma.poisoned = true;
                    }
                    for tok in &tokens[1..] {
                        match parse_slot(line_no, tok) {
                            Ok(slot) => {
                                lexeme.lexeme.morphology.inflections.push(slot);
                                lexeme.meta.slots.push(tok.loc(line_no));
                            }
                            Err(d) => {
                                diags.push(d);
                                lemma.poisoned = true;
                            }
                        }
                    }
                    State::InLexeme(lemma, lexeme)
                }
                "sense" => {
                    match parse_sense(line_no, &tokens) {
                        Ok(sense) => {
                            lexeme.lexeme.senses.push(sense);
                            lexeme.meta.senses.push(head.loc(line_no));
                        }
                        Err(d) => {
                            diags.push(d);
                            lemma.poisoned = true;
                        }
                    }
                    State::InLexeme(lemma, lexeme)
                }
                "end" => {
                    if lexeme.lexeme.morphology.lexical.iter().all(|m| m.kind != MorphemeKind::Stem)
                    {
                        diags.push(Diagnostic::error(
                            lexeme.meta.location,
                            "missing-stem",
                            format!("lexeme {:?} has no stem", lexeme.lexeme.name),
                        ));
                        lemma.poisoned = true;
                    }
                    if lexeme.lexeme.morphology.inflections.is_empty() {
                        diags.push(Diagnostic::error(
                            lexeme.meta.location,
                            "missing-inflection",
                            format!("lexeme {:?} has no inflection slots", lexeme.lexeme.name),
                        ));
                        lemma.poisoned = true;
                    }
                    lemma.lemma.lexemes.push(lexeme.lexeme);
                    lemma.meta.lexemes.push(lexeme.meta);
                    State::InLemma(lemma)
                }
                _ => {
                    diags.push(Diagnostic::error(
                        head.loc(line_no),
                        "syntax",
                        format!(
                            "expected prefix/stem/infix/infl/sense or `end`, found {:?}",
                            head.text
                        ),
                    ));
                    skipping = true;
                    State::TopLevel
                }
            },
        };
    }

    match state {
        State::TopLevel => {}
        State::InLemma(b) | State::InLexeme(b, _) => {
            diags.push(Diagnostic::error(
                Location::new(last_line, 1),
                "syntax",
                format!("unexpected end of file inside lemma {:?}", b.lemma.headword),
            ));
        }
    }

    (doc, diags)
}

fn parse_lemma_header(line_no: usize, tokens: &[Token]) -> Result<LemmaBuilder, Diagnostic> {
    let loc = tokens[0].loc(line_no);
    let headword = match tokens.get(1) {
        Some(t) => t,
        None => return Err(Diagnostic::error(loc, "syntax", "`lemma` needs a headword")),
    };
    if tokens.len() > 2 {
        return Err(Diagnostic::error(
            tokens[2].loc(line_no),
            "syntax",
            "a headword is a single word",
        ));
    }
    if classify(&headword.text) != TokenClass::GreekWord {
        return Err(Diagnostic::error(
            headword.loc(line_no),
            "bad-headword",
            format!("headword {:?} is not a Greek word", headword.text),
        ));
    }
    Ok(LemmaBuilder {
        lemma: Lemma { headword: headword.text.clone(), lexemes: Vec::new() },
        meta: LemmaMeta { location: loc, lexemes: Vec::new() },
        poisoned: false,
    })
}

fn parse_lexeme_header(
    line_no: usize,
    tokens: &[Token],
    lemma: &LemmaBuilder,
) -> Result<LexemeBuilder, Diagnostic> {
    let loc = tokens[0].loc(line_no);
    let name = match tokens.get(1) {
        Some(t) => t.text.clone(),
        None => return Err(Diagnostic::error(loc, "syntax", "`lexeme` needs a name")),
    };
    if lemma.lemma.lexemes.iter().any(|l| l.name == name) {
        return Err(Diagnostic::error(
            tokens[1].loc(line_no),
            "duplicate-lexeme",
            format!("lexeme {name:?} already defined in this lemma"),
        ));
    }
    let mut pos = String::new();
    let mut keep_stress = false;
    for tok in &tokens[2..] {
        if let Some(tag) = tok.text.strip_prefix("pos=") {
            pos = tag.to_string();
        } else if tok.text == "keep-stress" {
            keep_stress = true;
        } else {
            return Err(Diagnostic::error(
                tok.loc(line_no),
                "syntax",
                format!("unknown lexeme attribute {:?}", tok.text),
            ));
        }
    }
    Ok(LexemeBuilder {
        lexeme: Lexeme {
            name,
            pos,
            keep_stress,
            morphology: Morphology { lexical: Vec::new(), inflections: Vec::new() },
            senses: Vec::new(),
        },
        meta: LexemeMeta { location: loc, slots: Vec::new(), senses: Vec::new() },
    })
}

fn parse_lexical_line(
    line_no: usize,
    tokens: &[Token],
    kind: MorphemeKind,
) -> Result<Morpheme, Diagnostic> {
    let loc = tokens[0].loc(line_no);
    let text = match tokens.get(2) {
        None => match tokens.get(1) {
            Some(t) => t,
            None => {
                return Err(Diagnostic::error(
                    loc,
                    "syntax",
                    format!("`{}` needs hyphenated letters", kind.name()),
                ))
            }
        },
        Some(extra) => {
            return Err(Diagnostic::error(extra.loc(line_no), "syntax", "one morpheme per line"))
        }
    };
    Morpheme::from_hyphenated(kind, &text.text)
        .map_err(|e| Diagnostic::error(text.loc(line_no), morpheme_code(&e), e.to_string()))
}

/// One `suffix@S[/tags]` slot; `0` is the empty suffix.
fn parse_slot(line_no: usize, tok: &Token) -> Result<InflectionSlot, Diagnostic> {
    let loc = tok.loc(line_no);
    let (suffix_text, rest) = tok
        .text
        .split_once('@')
        .ok_or_else(|| Diagnostic::error(loc, "syntax", format!("missing `@` in {:?}", tok.text)))?;
    let (stress_text, tags) = match rest.split_once('/') {
        Some((s, t)) => (s, t.to_string()),
        None => (rest, String::new()),
    };
    let stress = match stress_text {
        "F" => StressPosition::Final,
        "P" => StressPosition::Penultimate,
        "A" => StressPosition::Antepenultimate,
        other => {
            return Err(Diagnostic::error(
                loc,
                "bad-stress-tag",
                format!("stress must be F, P or A, got {other:?}"),
            ))
        }
    };
    let suffix_src = if suffix_text == "0" { "" } else { suffix_text };
    let suffix = Morpheme::from_hyphenated(MorphemeKind::Inflection, suffix_src)
        .map_err(|e| Diagnostic::error(loc, morpheme_code(&e), e.to_string()))?;
    Ok(InflectionSlot { suffix, stress, tags })
}

fn parse_sense(line_no: usize, tokens: &[Token]) -> Result<Sense, Diagnostic> {
    let loc = tokens[0].loc(line_no);
    let gloss_tok = tokens
        .get(1)
        .ok_or_else(|| Diagnostic::error(loc, "syntax", "`sense` needs a quoted gloss"))?;
    let gloss = gloss_tok
        .text
        .strip_prefix('"')
        .and_then(|t| t.strip_suffix('"'))
        .ok_or_else(|| {
            Diagnostic::error(gloss_tok.loc(line_no), "syntax", "gloss must be quoted")
        })?
        .to_string();
    let mut refs = Vec::new();
    for tok in &tokens[2..] {
        let (key, value) = tok.text.split_once('=').ok_or_else(|| {
            Diagnostic::error(
                tok.loc(line_no),
                "syntax",
                format!("expected key=headword, found {:?}", tok.text),
            )
        })?;
        let relation = SenseRelation::from_key(key).ok_or_else(|| {
            Diagnostic::error(
                tok.loc(line_no),
                "syntax",
                format!("unknown relation {key:?} (use syn/ant/hypo/rel)"),
            )
        })?;
        refs.push(SenseRef { relation, headword: value.to_string() });
    }
    Ok(Sense { gloss, refs })
}

fn finish_lemma(builder: LemmaBuilder, doc: &mut LdlDocument, diags: &mut Vec<Diagnostic>) {
    if builder.lemma.lexemes.is_empty() {
        diags.push(Diagnostic::error(
            builder.meta.location,
            "empty-lemma",
            format!("lemma {:?} defines no lexemes", builder.lemma.headword),
        ));
        return;
    }
    if builder.poisoned {
        return;
    }
    doc.lemmas.push(builder.lemma);
    doc.meta.push(builder.meta);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diag::has_errors;

    #[test]
    fn parses_a_minimal_lemma() {
        let text = "lemma κεφάλι\n  lexeme n pos=noun\n    stem κε-φαλ\n    infl ι@P/sg\n  end\nend\n";
        let (doc, diags) = parse("t.ldl", text);
        assert!(diags.is_empty(), "{diags:?}");
        assert_eq!(doc.lemmas.len(), 1);
        let lemma = &doc.lemmas[0];
        assert_eq!(lemma.headword, "κεφάλι");
        assert_eq!(lemma.lexemes.len(), 1);
        let lexeme = &lemma.lexemes[0];
        assert_eq!(lexeme.pos, "noun");
        assert_eq!(lexeme.morphology.lexical.len(), 1);
        assert_eq!(lexeme.morphology.inflections.len(), 1);
        assert_eq!(lexeme.morphology.inflections[0].tags, "sg");
    }

    #[test]
    fn empty_source_parses_to_an_empty_document() {
        let (doc, diags) = parse("t.ldl", "");
        assert!(doc.lemmas.is_empty());
        assert!(diags.is_empty());
        let (doc, diags) = parse("t.ldl", "# only a comment\n\n");
        assert!(doc.lemmas.is_empty() && diags.is_empty());
    }

    #[test]
    fn stress_inside_a_morpheme_is_rejected() {
        let text = "lemma κεφάλι\n  lexeme n\n    stem κε-φάλ\n    infl ι@P\n  end\nend\n";
        let (doc, diags) = parse("t.ldl", text);
        assert!(doc.lemmas.is_empty());
        assert!(diags.iter().any(|d| d.code == "stress-in-morpheme"));
        // the position points at the offending token
        let d = diags.iter().find(|d| d.code == "stress-in-morpheme").unwrap();
        assert_eq!(d.location.line, 3);
        assert_eq!(d.location.column, 10);
    }

    #[test]
    fn bad_stress_tag_is_rejected() {
        let text = "lemma κεφάλι\n  lexeme n\n    stem κε-φαλ\n    infl ι@X\n  end\nend\n";
        let (_, diags) = parse("t.ldl", text);
        assert!(diags.iter().any(|d| d.code == "bad-stress-tag"));
    }

    #[test]
    fn recovery_reports_errors_in_later_lemmas() {
        let text = "lemma κεφάλι\n  lexeme n\n    stemm κε-φαλ\nlemma ήλιος\n  lexeme n\n    stem η-λι\n    infl ος@X\n  end\nend\n";
        let (_, diags) = parse("t.ldl", text);
        assert!(has_errors(&diags));
        assert!(diags.iter().any(|d| d.code == "syntax"));
        assert!(diags.iter().any(|d| d.code == "bad-stress-tag"), "{diags:?}");
    }

    #[test]
    fn eof_inside_block_is_an_error() {
        let (_, diags) = parse("t.ldl", "lemma κεφάλι\n  lexeme n\n");
        assert!(diags.iter().any(|d| d.message.contains("end of file")));
    }

    #[test]
    fn keep_stress_and_multiple_slots() {
        let text = "lemma ή\n  lexeme p keep-stress\n    stem η\n    infl 0@F\n  end\nend\n";
        let (doc, diags) = parse("t.ldl", text);
        assert!(diags.is_empty(), "{diags:?}");
        assert!(doc.lemmas[0].lexemes[0].keep_stress);
        assert!(doc.lemmas[0].lexemes[0].morphology.inflections[0].suffix.is_empty());
    }

    #[test]
    fn senses_with_refs() {
        let text = "lemma κεφάλι\n  lexeme n\n    stem κε-φαλ\n    infl ι@P\n    sense \"μέρος του σώματος\" syn=κεφαλή rel=σώμα\n  end\nend\n";
        let (doc, diags) = parse("t.ldl", text);
        assert!(diags.is_empty(), "{diags:?}");
        let sense = &doc.lemmas[0].lexemes[0].senses[0];
        assert_eq!(sense.gloss, "μέρος του σώματος");
        assert_eq!(sense.refs.len(), 2);
        assert_eq!(sense.refs[0].relation, SenseRelation::Synonym);
        assert_eq!(sense.refs[0].headword, "κεφαλή");
    }

    #[test]
    fn unterminated_gloss_is_an_error() {
        let text = "lemma κεφάλι\n  lexeme n\n    stem κε-φαλ\n    infl ι@P\n    sense \"μέρος\n  end\nend\n";
        let (_, diags) = parse("t.ldl", text);
        assert!(diags.iter().any(|d| d.message.contains("unterminated")));
    }

    #[test]
    fn duplicate_lexeme_names_are_rejected() {
        let text = "lemma κεφάλι\n  lexeme n\n    stem κε-φαλ\n    infl ι@P\n  end\n  lexeme n\n    stem κε-φαλ\n    infl ια@P\n  end\nend\n";
        let (_, diags) = parse("t.ldl", text);
        assert!(diags.iter().any(|d| d.code == "duplicate-lexeme"));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# file comment\nlemma κεφάλι # trailing\n\n  lexeme n\n    stem κε-φαλ\n    infl ι@P\n  end\nend\n";
        let (doc, diags) = parse("t.ldl", text);
        assert!(diags.is_empty(), "{diags:?}");
        assert_eq!(doc.lemmas.len(), 1);
    }
}
