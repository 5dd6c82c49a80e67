//! Sentence/token segmentation and heuristic morphosyntactic annotation.
//!
//! The built-in annotator is a deterministic lexicon+suffix tagger: closed
//! classes come from the loaded dictionaries, open classes from per-language
//! suffix rules, with mid-sentence capitalization and a NOUN fallback behind
//! them. Externally produced annotations can be ingested from a
//! one-token-per-line file instead (see [`ingest_annotations`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Document, Language};
use crate::error::{Error, Result};
use crate::lexicon::{LexiconSet, ListKind};

mod rules;

pub use rules::language_profile;
use rules::{LanguageProfile, LemmaRule, PosRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum Pos {
    NOUN,
    PROPN,
    VERB,
    AUX,
    ADJ,
    ADV,
    PRON,
    CONJ,
    SCONJ,
    DET,
    NUM,
    PUNCT,
    SYM,
    PART,
    INTJ,
    X,
}

impl Pos {
    pub const ALL: [Pos; 16] = [
        Pos::NOUN,
        Pos::PROPN,
        Pos::VERB,
        Pos::AUX,
        Pos::ADJ,
        Pos::ADV,
        Pos::PRON,
        Pos::CONJ,
        Pos::SCONJ,
        Pos::DET,
        Pos::NUM,
        Pos::PUNCT,
        Pos::SYM,
        Pos::PART,
        Pos::INTJ,
        Pos::X,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Pos::NOUN => "NOUN",
            Pos::PROPN => "PROPN",
            Pos::VERB => "VERB",
            Pos::AUX => "AUX",
            Pos::ADJ => "ADJ",
            Pos::ADV => "ADV",
            Pos::PRON => "PRON",
            Pos::CONJ => "CONJ",
            Pos::SCONJ => "SCONJ",
            Pos::DET => "DET",
            Pos::NUM => "NUM",
            Pos::PUNCT => "PUNCT",
            Pos::SYM => "SYM",
            Pos::PART => "PART",
            Pos::INTJ => "INTJ",
            Pos::X => "X",
        }
    }
}

impl FromStr for Pos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pos::ALL
            .iter()
            .find(|p| p.name() == s)
            .copied()
            .ok_or_else(|| Error::Validation(format!("unknown POS tag '{s}'")))
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MorphFlag {
    Comparative,
    Superlative,
    PastParticiple,
    Modal,
    Personal,
    SecondPerson,
    FirstSingular,
    Interrogative,
}

impl MorphFlag {
    pub const ALL: [MorphFlag; 8] = [
        MorphFlag::Comparative,
        MorphFlag::Superlative,
        MorphFlag::PastParticiple,
        MorphFlag::Modal,
        MorphFlag::Personal,
        MorphFlag::SecondPerson,
        MorphFlag::FirstSingular,
        MorphFlag::Interrogative,
    ];

    fn bit(&self) -> u8 {
        match self {
            MorphFlag::Comparative => 1,
            MorphFlag::Superlative => 1 << 1,
            MorphFlag::PastParticiple => 1 << 2,
            MorphFlag::Modal => 1 << 3,
            MorphFlag::Personal => 1 << 4,
            MorphFlag::SecondPerson => 1 << 5,
            MorphFlag::FirstSingular => 1 << 6,
            MorphFlag::Interrogative => 1 << 7,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MorphFlag::Comparative => "comparative",
            MorphFlag::Superlative => "superlative",
            MorphFlag::PastParticiple => "past_participle",
            MorphFlag::Modal => "modal",
            MorphFlag::Personal => "personal",
            MorphFlag::SecondPerson => "second_person",
            MorphFlag::FirstSingular => "first_singular",
            MorphFlag::Interrogative => "interrogative",
        }
    }
}

impl FromStr for MorphFlag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MorphFlag::ALL
            .iter()
            .find(|f| f.name() == s)
            .copied()
            .ok_or_else(|| Error::Validation(format!("unknown morph flag '{s}'")))
    }
}

/// Morphological flag bit set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorphFlags(u8);

impl MorphFlags {
    pub fn empty() -> Self {
        MorphFlags(0)
    }

    pub fn with(mut self, flag: MorphFlag) -> Self {
        self.set(flag);
        self
    }

    pub fn set(&mut self, flag: MorphFlag) {
        self.0 |= flag.bit();
    }

    pub fn has(&self, flag: MorphFlag) -> bool {
        self.0 & flag.bit() != 0
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = MorphFlag> + '_ {
        MorphFlag::ALL.into_iter().filter(|f| self.has(*f))
    }
}

impl fmt::Display for MorphFlags {
    /// Comma-joined flag names, `_` when empty (the annotation file syntax).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("_");
        }
        let names: Vec<&str> = self.iter().map(|fl| fl.name()).collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for MorphFlags {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut flags = MorphFlags::empty();
        if s == "_" || s.is_empty() {
            return Ok(flags);
        }
        for part in s.split(',') {
            flags.set(part.trim().parse()?);
        }
        Ok(flags)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
    pub morph: MorphFlags,
}

impl Token {
    pub fn is_word(&self) -> bool {
        !matches!(self.pos, Pos::PUNCT | Pos::SYM)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedDocument {
    pub doc_id: String,
    pub sentences: Vec<Vec<Token>>,
}

impl AnnotatedDocument {
    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn sentence_count(&self) -> usize {
        self.sentences.len()
    }
}

/// Opening quotation marks counted by the `quotes` feature.
pub const OPENING_QUOTES: [char; 5] = ['«', '"', '\u{201C}', '\u{201E}', '\''];

/// Currency symbols counted by the `money_symbols` feature.
pub const CURRENCY_SYMBOLS: [char; 5] = ['$', '€', '£', '₴', '₽'];

const CLOSING_TRAILERS: [char; 6] = ['»', '"', '\u{201D}', '\'', ')', ']'];

fn is_symbol_char(c: char) -> bool {
    CURRENCY_SYMBOLS.contains(&c) || matches!(c, '%' | '§' | '№' | '+' | '=' | '<' | '>')
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// French proclitics split off at the apostrophe ("l'armée" → "l'" + "armée").
const FR_CLITICS: [&str; 12] = [
    "l", "d", "n", "j", "s", "c", "m", "t", "qu", "jusqu", "lorsqu", "puisqu",
];

#[derive(Debug)]
struct RawTok {
    text: String,
    /// True on abbreviation words: the period that follows is not terminal.
    guards_period: bool,
}

impl RawTok {
    fn plain(text: impl Into<String>) -> Self {
        RawTok {
            text: text.into(),
            guards_period: false,
        }
    }
}

fn split_chunk(chunk: &str, language: Language, out: &mut Vec<RawTok>) {
    let chars: Vec<char> = chunk.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if is_word_char(c) {
            let start = i;
            let mut j = i;
            while j < chars.len() {
                let cj = chars[j];
                if is_word_char(cj) {
                    j += 1;
                } else if (cj == '\'' || cj == '’' || cj == '-')
                    && j > start
                    && j + 1 < chars.len()
                    && is_word_char(chars[j + 1])
                {
                    // Apostrophes/hyphens between word characters stay inside.
                    j += 1;
                } else if (cj == '.' || cj == ',')
                    && j > start
                    && j + 1 < chars.len()
                    && chars[j - 1].is_numeric()
                    && chars[j + 1].is_numeric()
                {
                    // Decimal points and thousands separators inside numbers.
                    j += 1;
                } else {
                    break;
                }
            }
            let word: String = chars[start..j].iter().collect();
            push_word(word, language, out);
            i = j;
        } else if c == '.' {
            // Group periods so an ellipsis is one token.
            let start = i;
            while i < chars.len() && chars[i] == '.' {
                i += 1;
            }
            out.push(RawTok::plain(chars[start..i].iter().collect::<String>()));
        } else if c.is_whitespace() {
            i += 1;
        } else {
            out.push(RawTok::plain(c.to_string()));
            i += 1;
        }
    }
}

fn push_word(word: String, language: Language, out: &mut Vec<RawTok>) {
    if language == Language::Fr && word.to_lowercase() != "aujourd'hui" {
        for apo in ['\'', '’'] {
            if let Some(pos) = word.find(apo) {
                let prefix = &word[..pos];
                if FR_CLITICS.contains(&prefix.to_lowercase().as_str()) {
                    let end = pos + apo.len_utf8();
                    out.push(RawTok::plain(&word[..end]));
                    let rest = word[end..].to_string();
                    if !rest.is_empty() {
                        push_word(rest, language, out);
                    }
                    return;
                }
            }
        }
    }
    out.push(RawTok::plain(word));
}

fn is_terminal(token: &str) -> bool {
    !token.is_empty()
        && token.starts_with(['.', '!', '?', '…'])
        && token.chars().all(|c| !c.is_alphanumeric())
}

/// Split text into sentences and surface tokens.
///
/// Sentences end on terminal punctuation (`. ! ? …`) unless the preceding
/// word is a known abbreviation or a single-letter initial; punctuation and
/// currency symbols are retained as tokens; closing quotes and brackets
/// right after a terminal mark stay with their sentence. Errors when the
/// text has no alphabetic token.
pub fn tokenize_and_segment(
    text: &str,
    language: Language,
    abbreviations: &BTreeSet<String>,
) -> Result<Vec<Vec<String>>> {
    let mut tokens: Vec<RawTok> = Vec::new();
    for chunk in text.split_whitespace() {
        // Peel leading punctuation so "(Mr." still hits the guard below.
        let mut rest = chunk;
        while let Some(c) = rest.chars().next() {
            if is_word_char(c) || c == '.' {
                break;
            }
            tokens.push(RawTok::plain(c.to_string()));
            rest = &rest[c.len_utf8()..];
        }
        if rest.is_empty() {
            continue;
        }
        let lower = rest.to_lowercase();
        if let Some(stripped) = lower.strip_suffix('.') {
            let known_abbrev = !stripped.is_empty()
                && (abbreviations.contains(stripped)
                    || abbreviations.contains(stripped.trim_end_matches('.')));
            let initial = stripped.chars().count() == 1
                && stripped.chars().all(char::is_alphabetic);
            if known_abbrev || initial {
                let word_len = rest.len() - 1;
                tokens.push(RawTok {
                    text: rest[..word_len].to_string(),
                    guards_period: true,
                });
                tokens.push(RawTok::plain("."));
                continue;
            }
        }
        split_chunk(rest, language, &mut tokens);
    }

    if !tokens
        .iter()
        .any(|t| t.text.chars().any(char::is_alphabetic))
    {
        return Err(Error::Annotation {
            doc_id: String::new(),
            message: "text has no alphabetic tokens".into(),
        });
    }

    let mut sentences: Vec<Vec<String>> = Vec::new();
    let mut current: Vec<String> = Vec::new();
    let mut guard = false;
    let mut iter = tokens.into_iter().peekable();
    while let Some(tok) = iter.next() {
        let terminal = !guard && is_terminal(&tok.text);
        guard = tok.guards_period;
        current.push(tok.text);
        if terminal {
            while let Some(next) = iter.peek() {
                let mut cs = next.text.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) if CLOSING_TRAILERS.contains(&c) => {
                        current.push(iter.next().unwrap().text);
                    }
                    _ => break,
                }
            }
            sentences.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}

/// Deterministic lemmatizer: irregular map → dictionary identity →
/// dictionary-checked suffix rewrites → default rewrites → identity.
///
/// The dictionary is the union of every function-word list word, emotion
/// lemma, and glossary phrase word of the language, so list and glossary
/// entries always land on themselves and inflected text forms are pulled
/// onto known lemmas where a rewrite rule reaches one.
pub struct Lemmatizer {
    profile: &'static LanguageProfile,
    irregulars: BTreeMap<&'static str, &'static str>,
    known: BTreeSet<String>,
}

impl Lemmatizer {
    pub fn new(language: Language, lexicons: &LexiconSet) -> Result<Self> {
        let res = lexicons.require_language(language)?;
        let mut known = BTreeSet::new();
        for kind in ListKind::ALL {
            for phrase in res.function_words.get(kind) {
                for word in phrase {
                    known.insert(word.clone());
                }
            }
        }
        for (lemma, _) in res.emotion.iter() {
            known.insert(lemma.clone());
        }
        for entry in lexicons.glossary.iter() {
            if let Some(phrases) = entry.forms.get(&language) {
                for phrase in phrases {
                    for word in phrase {
                        known.insert(word.clone());
                    }
                }
            }
        }
        let profile = language_profile(language);
        for word in profile.protected {
            known.insert((*word).to_string());
        }
        let irregulars = profile.irregulars.iter().copied().collect();
        Ok(Self {
            profile,
            irregulars,
            known,
        })
    }

    pub fn lemma(&self, surface: &str) -> String {
        let lower = surface.to_lowercase();
        if let Some(mapped) = self.irregulars.get(lower.as_str()) {
            return (*mapped).to_string();
        }
        if self.known.contains(&lower) {
            return lower;
        }
        let chars = lower.chars().count();
        for rule in self.profile.lemma_rules {
            if let Some(candidate) = apply_lemma_rule(&lower, chars, rule) {
                if self.known.contains(&candidate) {
                    return candidate;
                }
            }
        }
        for rule in self.profile.default_lemma_rules {
            if let Some(candidate) = apply_lemma_rule(&lower, chars, rule) {
                return candidate;
            }
        }
        lower
    }
}

fn apply_lemma_rule(word: &str, char_len: usize, rule: &LemmaRule) -> Option<String> {
    let stem = word.strip_suffix(rule.suffix)?;
    let suffix_chars = rule.suffix.chars().count();
    if char_len < suffix_chars + rule.min_stem {
        return None;
    }
    if let Some(last) = stem.chars().last() {
        if rule.not_after.contains(last) {
            return None;
        }
    }
    Some(format!("{stem}{}", rule.replacement))
}

struct ClosedClass {
    pos: BTreeMap<String, Pos>,
    personal: BTreeSet<String>,
    second_person: BTreeSet<String>,
    first_singular: BTreeSet<String>,
    interrogative: BTreeSet<String>,
    modal: BTreeSet<String>,
}

struct LanguageAnnotator {
    lemmatizer: Lemmatizer,
    closed: ClosedClass,
    profile: &'static LanguageProfile,
    participles: BTreeSet<&'static str>,
    degree: BTreeMap<&'static str, MorphFlag>,
    superlative_upgraders: BTreeSet<&'static str>,
}

/// The heuristic annotator. Immutable after construction; documents may be
/// annotated concurrently.
pub struct Annotator<'a> {
    lexicons: &'a LexiconSet,
    per_language: BTreeMap<Language, LanguageAnnotator>,
}

impl<'a> Annotator<'a> {
    pub fn new(lexicons: &'a LexiconSet) -> Result<Self> {
        let mut per_language = BTreeMap::new();
        for language in lexicons.supported_languages() {
            let res = lexicons.require_language(language)?;
            let fw = &res.function_words;
            for required in [
                ListKind::PersonalPronouns,
                ListKind::CoordinatingConjunctions,
                ListKind::Determiners,
                ListKind::PassiveAuxiliaries,
                ListKind::ModalVerbs,
            ] {
                if fw.get(required).is_empty() {
                    return Err(Error::Config(format!(
                        "language '{language}': closed-class list '{required}' is empty; cannot build annotator"
                    )));
                }
            }
            let lemmatizer = Lemmatizer::new(language, lexicons)?;
            let mut pos: BTreeMap<String, Pos> = BTreeMap::new();
            let collect =
                |kind: ListKind| -> Vec<String> { fw.single_words(kind).map(str::to_string).collect() };
            // First insert wins, so walk categories from highest priority down.
            let ordered: [(Vec<String>, Pos); 11] = [
                (collect(ListKind::PersonalPronouns), Pos::PRON),
                (collect(ListKind::RelativePronouns), Pos::PRON),
                (collect(ListKind::InterrogativeWords), Pos::PRON),
                (collect(ListKind::Determiners), Pos::DET),
                (collect(ListKind::CoordinatingConjunctions), Pos::CONJ),
                (collect(ListKind::ButForms), Pos::CONJ),
                (collect(ListKind::SubordinatorsConcession), Pos::SCONJ),
                (collect(ListKind::SubordinatorsReason), Pos::SCONJ),
                (collect(ListKind::SubordinatorsPurpose), Pos::SCONJ),
                (collect(ListKind::SubordinatorsCondition), Pos::SCONJ),
                (collect(ListKind::SubordinatorsTime), Pos::SCONJ),
            ];
            for (words, tag) in ordered {
                for w in words {
                    pos.entry(w).or_insert(tag);
                }
            }
            for w in collect(ListKind::PassiveAuxiliaries) {
                pos.entry(w).or_insert(Pos::AUX);
            }
            for w in collect(ListKind::ModalVerbs) {
                pos.entry(w).or_insert(Pos::AUX);
            }
            for w in collect(ListKind::Negations) {
                pos.entry(w).or_insert(Pos::PART);
            }
            let closed = ClosedClass {
                pos,
                personal: fw
                    .single_words(ListKind::PersonalPronouns)
                    .map(str::to_string)
                    .collect(),
                second_person: fw
                    .single_words(ListKind::SecondPersonForms)
                    .map(str::to_string)
                    .collect(),
                first_singular: fw
                    .single_words(ListKind::FirstSingularForms)
                    .map(str::to_string)
                    .collect(),
                interrogative: fw
                    .single_words(ListKind::InterrogativeWords)
                    .map(str::to_string)
                    .collect(),
                modal: fw
                    .single_words(ListKind::ModalVerbs)
                    .map(str::to_string)
                    .collect(),
            };
            let profile = language_profile(language);
            per_language.insert(
                language,
                LanguageAnnotator {
                    lemmatizer,
                    closed,
                    profile,
                    participles: profile.participles.iter().copied().collect(),
                    degree: profile.degree_markers.iter().copied().collect(),
                    superlative_upgraders: profile
                        .superlative_upgraders
                        .iter()
                        .copied()
                        .collect(),
                },
            );
        }
        Ok(Self {
            lexicons,
            per_language,
        })
    }

    pub fn lexicons(&self) -> &LexiconSet {
        self.lexicons
    }

    pub fn lemmatizer(&self, language: Language) -> Result<&Lemmatizer> {
        self.per_language
            .get(&language)
            .map(|l| &l.lemmatizer)
            .ok_or_else(|| Error::Config(format!("language '{language}' not loaded")))
    }

    /// Tokenize, segment, and tag one document.
    pub fn annotate_document(&self, doc: &Document) -> Result<AnnotatedDocument> {
        let res = self.lexicons.require_language(doc.language)?;
        let skeleton =
            tokenize_and_segment(&doc.text, doc.language, &res.abbreviations).map_err(|e| {
                match e {
                    Error::Annotation { message, .. } => Error::Annotation {
                        doc_id: doc.id.clone(),
                        message,
                    },
                    other => other,
                }
            })?;
        self.annotate_skeleton(&doc.id, doc.language, &skeleton)
    }

    /// Annotate many documents, preserving input order.
    pub fn annotate_all(&self, docs: &[Document]) -> Result<Vec<AnnotatedDocument>> {
        docs.par_iter()
            .map(|d| self.annotate_document(d))
            .collect()
    }

    /// Tag a pre-tokenized sentence/token skeleton.
    pub fn annotate_skeleton(
        &self,
        doc_id: &str,
        language: Language,
        sentences: &[Vec<String>],
    ) -> Result<AnnotatedDocument> {
        let lang = self
            .per_language
            .get(&language)
            .ok_or_else(|| Error::Config(format!("language '{language}' not loaded")))?;
        let mut sentences_out: Vec<Vec<Token>> = Vec::with_capacity(sentences.len());
        for sentence in sentences {
            let mut tokens: Vec<Token> = Vec::with_capacity(sentence.len());
            let mut word_seen = false;
            for surface in sentence {
                let token = tag_token(surface, lang, word_seen, tokens.last());
                if token.is_word() {
                    word_seen = true;
                }
                tokens.push(token);
            }
            if !tokens.is_empty() {
                sentences_out.push(tokens);
            }
        }
        if sentences_out.is_empty() {
            return Err(Error::Annotation {
                doc_id: doc_id.to_string(),
                message: "no sentences".into(),
            });
        }
        Ok(AnnotatedDocument {
            doc_id: doc_id.to_string(),
            sentences: sentences_out,
        })
    }
}

fn tag_token(
    surface: &str,
    lang: &LanguageAnnotator,
    mid_sentence: bool,
    prev: Option<&Token>,
) -> Token {
    let has_alpha = surface.chars().any(char::is_alphabetic);
    if !has_alpha {
        let pos = if surface.chars().any(char::is_numeric) {
            Pos::NUM
        } else if surface.chars().all(is_symbol_char) {
            Pos::SYM
        } else {
            Pos::PUNCT
        };
        return Token {
            surface: surface.to_string(),
            lemma: surface.to_lowercase(),
            pos,
            morph: MorphFlags::empty(),
        };
    }

    let lemma = lang.lemmatizer.lemma(surface);
    let lower = surface.to_lowercase();

    let mut morph = MorphFlags::empty();
    if lang.closed.personal.contains(&lemma) || lang.closed.personal.contains(&lower) {
        morph.set(MorphFlag::Personal);
    }
    if lang.closed.second_person.contains(&lemma) || lang.closed.second_person.contains(&lower) {
        morph.set(MorphFlag::SecondPerson);
    }
    if lang.closed.first_singular.contains(&lemma) || lang.closed.first_singular.contains(&lower) {
        morph.set(MorphFlag::FirstSingular);
    }
    if lang.closed.interrogative.contains(&lemma) || lang.closed.interrogative.contains(&lower) {
        morph.set(MorphFlag::Interrogative);
    }
    if lang.closed.modal.contains(&lemma) {
        morph.set(MorphFlag::Modal);
    }
    if let Some(flag) = lang.degree.get(lower.as_str()) {
        let flag = if *flag == MorphFlag::Comparative
            && prev.map_or(false, |p| {
                lang.superlative_upgraders.contains(p.lemma.as_str())
            }) {
            MorphFlag::Superlative
        } else {
            *flag
        };
        morph.set(flag);
    }
    if lang.participles.contains(lower.as_str()) {
        morph.set(MorphFlag::PastParticiple);
    }
    for prefix in lang.profile.superlative_prefixes {
        if lower.starts_with(prefix) && lower.chars().count() >= prefix.chars().count() + 3 {
            morph.set(MorphFlag::Superlative);
        }
    }

    // (1) Closed-class dictionary lookup.
    let dict_pos = lang
        .closed
        .pos
        .get(&lemma)
        .or_else(|| lang.closed.pos.get(&lower))
        .copied();
    if let Some(pos) = dict_pos {
        return Token {
            surface: surface.to_string(),
            lemma,
            pos,
            morph,
        };
    }

    // (2) Mid-sentence capitalization beats suffix guessing: an unknown
    // capitalized word inside a sentence is treated as a proper noun.
    let capitalized = surface.chars().next().map_or(false, char::is_uppercase);
    if capitalized && mid_sentence {
        return Token {
            surface: surface.to_string(),
            lemma,
            pos: Pos::PROPN,
            morph,
        };
    }

    // (3) Language-specific suffix rules.
    if lang.participles.contains(lower.as_str()) {
        return Token {
            surface: surface.to_string(),
            lemma,
            pos: Pos::VERB,
            morph,
        };
    }
    let char_len = lower.chars().count();
    for rule in lang.profile.pos_rules {
        if matches_pos_rule(&lower, char_len, rule, lang.profile) {
            if let Some(flag) = rule.flag {
                morph.set(flag);
            }
            return Token {
                surface: surface.to_string(),
                lemma,
                pos: rule.pos,
                morph,
            };
        }
    }

    // (4) Fallback.
    Token {
        surface: surface.to_string(),
        lemma,
        pos: Pos::NOUN,
        morph,
    }
}

fn matches_pos_rule(
    lower: &str,
    char_len: usize,
    rule: &PosRule,
    profile: &LanguageProfile,
) -> bool {
    if char_len < rule.min_len || !lower.ends_with(rule.suffix) {
        return false;
    }
    !profile.pos_rule_exceptions.contains(&lower)
}

/// Serialize annotated documents in the annotation file format: a
/// `# doc_id = …` line per document, one token per line
/// (`surface<TAB>lemma<TAB>POS<TAB>morph<TAB>index`), blank line between
/// sentences.
pub fn export_annotations(docs: &[AnnotatedDocument]) -> String {
    let mut out = String::new();
    for doc in docs {
        out.push_str(&format!("# doc_id = {}\n", doc.doc_id));
        for (s, sentence) in doc.sentences.iter().enumerate() {
            for (i, token) in sentence.iter().enumerate() {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    token.surface, token.lemma, token.pos, token.morph, i
                ));
            }
            if s + 1 < doc.sentences.len() {
                out.push('\n');
            }
        }
        out.push('\n');
    }
    out
}

/// Read annotated documents from a file in the format written by
/// [`export_annotations`].
pub fn ingest_annotations(path: &Path) -> Result<Vec<AnnotatedDocument>> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(display.clone(), e))?;
    parse_annotations(&content, &display)
}

pub fn parse_annotations(content: &str, origin: &str) -> Result<Vec<AnnotatedDocument>> {
    let mut docs: Vec<AnnotatedDocument> = Vec::new();
    let mut current_doc: Option<AnnotatedDocument> = None;
    let mut current_sentence: Vec<Token> = Vec::new();

    fn flush_sentence(doc: &mut Option<AnnotatedDocument>, sentence: &mut Vec<Token>) {
        if let (Some(doc), false) = (doc.as_mut(), sentence.is_empty()) {
            doc.sentences.push(std::mem::take(sentence));
        }
    }

    fn flush_doc(
        docs: &mut Vec<AnnotatedDocument>,
        doc: &mut Option<AnnotatedDocument>,
        sentence: &mut Vec<Token>,
    ) -> Result<()> {
        flush_sentence(doc, sentence);
        if let Some(doc) = doc.take() {
            if doc.sentences.is_empty() {
                return Err(Error::Validation(format!(
                    "annotated document '{}' has no sentences",
                    doc.doc_id
                )));
            }
            docs.push(doc);
        }
        Ok(())
    }

    for (lineno, line) in content.lines().enumerate() {
        let line_no = lineno + 1;
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(id) = rest.strip_prefix("doc_id") {
                let id = id.trim_start().strip_prefix('=').map(str::trim).unwrap_or("");
                if id.is_empty() {
                    return Err(Error::parse(origin, line_no, "empty doc_id"));
                }
                flush_doc(&mut docs, &mut current_doc, &mut current_sentence)?;
                current_doc = Some(AnnotatedDocument {
                    doc_id: id.to_string(),
                    sentences: Vec::new(),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            flush_sentence(&mut current_doc, &mut current_sentence);
            continue;
        }
        let doc = current_doc.as_ref().ok_or_else(|| {
            Error::parse(origin, line_no, "token line before any '# doc_id =' header")
        })?;
        let _ = doc;
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(Error::parse(
                origin,
                line_no,
                format!("expected 5 tab-separated columns, found {}", cols.len()),
            ));
        }
        let pos: Pos = cols[2]
            .parse()
            .map_err(|e: Error| Error::parse(origin, line_no, e.to_string()))?;
        let morph: MorphFlags = cols[3]
            .parse()
            .map_err(|e: Error| Error::parse(origin, line_no, e.to_string()))?;
        let index: usize = cols[4].trim().parse().map_err(|_| {
            Error::parse(origin, line_no, format!("bad token index '{}'", cols[4]))
        })?;
        if index != current_sentence.len() {
            return Err(Error::parse(
                origin,
                line_no,
                format!(
                    "token index {index} does not match position {}",
                    current_sentence.len()
                ),
            ));
        }
        if cols[0].is_empty() {
            return Err(Error::parse(origin, line_no, "empty surface form"));
        }
        current_sentence.push(Token {
            surface: cols[0].to_string(),
            lemma: cols[1].to_string(),
            pos,
            morph,
        });
    }
    flush_doc(&mut docs, &mut current_doc, &mut current_sentence)?;
    Ok(docs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::LexiconSet;

    fn small_lexicon_set() -> LexiconSet {
        crate::lexicon::builtin().expect("builtin resources parse").0
    }

    fn abbrevs(words: &[&str]) -> BTreeSet<String> {
        words.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_terminal_periods_make_two_sentences() {
        let sents =
            tokenize_and_segment("Це війна. Це правда.", Language::Uk, &BTreeSet::new()).unwrap();
        assert_eq!(sents.len(), 2);
        let tokens: Vec<&String> = sents.iter().flatten().collect();
        assert_eq!(tokens.len(), 6);
        assert_eq!(sents[0], vec!["Це", "війна", "."]);
    }

    #[test]
    fn abbreviation_guard_blocks_split() {
        let sents =
            tokenize_and_segment("Mr. Smith left.", Language::En, &abbrevs(&["mr"])).unwrap();
        assert_eq!(sents.len(), 1, "got {sents:?}");
        assert_eq!(sents[0], vec!["Mr", ".", "Smith", "left", "."]);
    }

    #[test]
    fn single_letter_initial_guard() {
        let sents =
            tokenize_and_segment("T. Snyder writes.", Language::En, &BTreeSet::new()).unwrap();
        assert_eq!(sents.len(), 1);
    }

    #[test]
    fn currency_symbol_splits_off() {
        let sents = tokenize_and_segment("$5 million", Language::En, &BTreeSet::new()).unwrap();
        assert_eq!(sents[0], vec!["$", "5", "million"]);
    }

    #[test]
    fn decimal_number_stays_whole() {
        let sents =
            tokenize_and_segment("about 18,229 texts and 5.5 weeks", Language::En, &BTreeSet::new())
                .unwrap();
        assert!(sents[0].contains(&"18,229".to_string()));
        assert!(sents[0].contains(&"5.5".to_string()));
    }

    #[test]
    fn no_alphabetic_tokens_is_an_error() {
        let err = tokenize_and_segment("123 456 !!!", Language::En, &BTreeSet::new()).unwrap_err();
        assert!(matches!(err, Error::Annotation { .. }));
    }

    #[test]
    fn closing_quote_stays_with_sentence() {
        let sents =
            tokenize_and_segment("«Це війна.» Потім тиша.", Language::Uk, &BTreeSet::new())
                .unwrap();
        assert_eq!(sents.len(), 2);
        assert_eq!(sents[0].last().unwrap(), "»");
    }

    #[test]
    fn french_clitics_split_after_apostrophe() {
        let sents = tokenize_and_segment("L'armée n'est pas prête.", Language::Fr, &BTreeSet::new())
            .unwrap();
        assert_eq!(
            sents[0],
            vec!["L'", "armée", "n'", "est", "pas", "prête", "."]
        );
    }

    #[test]
    fn ellipsis_is_one_token() {
        let sents = tokenize_and_segment("Well... maybe.", Language::En, &BTreeSet::new()).unwrap();
        assert_eq!(sents.len(), 2);
        assert_eq!(sents[0], vec!["Well", "..."]);
    }

    #[test]
    fn token_conservation_up_to_whitespace() {
        let texts = [
            ("The $5 \"deal\" failed, badly.", Language::En),
            ("Це — війна… «Так.»", Language::Uk),
            ("L'armée, dit-il, gagne.", Language::Fr),
        ];
        for (text, lang) in texts {
            let sents = tokenize_and_segment(text, lang, &BTreeSet::new()).unwrap();
            let joined: String = sents.iter().flatten().map(String::as_str).collect();
            let original: String = text.chars().filter(|c| !c.is_whitespace()).collect();
            assert_eq!(joined, original, "conservation failed for {text:?}");
        }
    }

    #[test]
    fn heuristic_tagging_examples() {
        let set = small_lexicon_set();
        let annotator = Annotator::new(&set).unwrap();
        let doc = annotator
            .annotate_skeleton(
                "t",
                Language::En,
                &[vec![
                    "He".into(),
                    "quickly".into(),
                    "left".into(),
                    "Kyiv".into(),
                    "in".into(),
                    "the".into(),
                    "strongest".into(),
                    "storm".into(),
                    ".".into(),
                ]],
            )
            .unwrap();
        let toks = &doc.sentences[0];
        assert_eq!(toks[1].pos, Pos::ADV, "quickly");
        assert_eq!(toks[3].pos, Pos::PROPN, "Kyiv mid-sentence");
        assert_eq!(toks[6].pos, Pos::ADJ, "strongest");
        assert!(toks[6].morph.has(MorphFlag::Superlative));
        assert_eq!(toks[5].pos, Pos::DET, "the");
        assert_eq!(toks[8].pos, Pos::PUNCT);
    }

    #[test]
    fn closed_class_beats_suffix_rules() {
        let set = small_lexicon_set();
        let annotator = Annotator::new(&set).unwrap();
        // "her" ends in -er but is a personal pronoun, never ADJ+comparative.
        let doc = annotator
            .annotate_skeleton("t", Language::En, &[vec!["She".into(), "saw".into(), "her".into()]])
            .unwrap();
        let tok = &doc.sentences[0][2];
        assert_eq!(tok.pos, Pos::PRON);
        assert!(!tok.morph.has(MorphFlag::Comparative));
        assert!(tok.morph.has(MorphFlag::Personal));
    }

    #[test]
    fn determinism_same_input_same_annotation() {
        let set = small_lexicon_set();
        let annotator = Annotator::new(&set).unwrap();
        let skeleton = tokenize_and_segment(
            "The bridge was destroyed because the army was not prepared.",
            Language::En,
            &BTreeSet::new(),
        )
        .unwrap();
        let a = annotator.annotate_skeleton("x", Language::En, &skeleton).unwrap();
        let b = annotator.annotate_skeleton("x", Language::En, &skeleton).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn passive_participle_flagged_en() {
        let set = small_lexicon_set();
        let annotator = Annotator::new(&set).unwrap();
        let doc = annotator
            .annotate_skeleton(
                "t",
                Language::En,
                &[vec!["it".into(), "was".into(), "destroyed".into()]],
            )
            .unwrap();
        let toks = &doc.sentences[0];
        assert_eq!(toks[1].lemma, "be");
        assert_eq!(toks[1].pos, Pos::AUX);
        assert!(toks[2].morph.has(MorphFlag::PastParticiple), "{:?}", toks[2]);
    }

    #[test]
    fn annotation_round_trip() {
        let set = small_lexicon_set();
        let annotator = Annotator::new(&set).unwrap();
        let skeleton = tokenize_and_segment(
            "The war was not declared. Who benefits?",
            Language::En,
            &BTreeSet::new(),
        )
        .unwrap();
        let doc = annotator.annotate_skeleton("doc-1", Language::En, &skeleton).unwrap();
        let exported = export_annotations(&[doc.clone()]);
        let parsed = parse_annotations(&exported, "test").unwrap();
        assert_eq!(parsed, vec![doc]);
    }

    #[test]
    fn ingest_reports_column_mismatch_line() {
        let content = "# doc_id = d\nThe\tthe\tDET\t_\t0\nbad\tline\tNOUN\n";
        let err = parse_annotations(content, "test").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn ingest_rejects_unknown_pos() {
        let content = "# doc_id = d\nThe\tthe\tDETX\t_\t0\n";
        let err = parse_annotations(content, "test").unwrap_err();
        assert!(err.to_string().contains("DETX"));
    }

    #[test]
    fn ingest_two_sentence_block() {
        let content = "# doc_id = d\nA\ta\tDET\t_\t0\nwar\twar\tNOUN\t_\t1\n\nIt\tit\tPRON\tpersonal\t0\nended\tend\tVERB\tpast_participle\t1\n";
        let docs = parse_annotations(content, "test").unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].sentences.len(), 2);
        assert!(docs[0].sentences[1][1].morph.has(MorphFlag::PastParticiple));
    }
}
