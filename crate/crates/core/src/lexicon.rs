//! Per-language dictionary resources: the emotion lexicon, the function-word
//! lists backing the linguistic features, and the keyword glossary.
//!
//! All resources load from plain TSV/text files referenced by a TOML
//! manifest, are lowercased on load, and are immutable afterwards.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use unicode_normalization::UnicodeNormalization;

use crate::corpus::Language;
use crate::error::{Error, Result};

/// The ten categories of the word-emotion association lexicon: eight basic
/// emotions plus the two sentiment polarities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmotionCategory {
    Anger,
    Fear,
    Anticipation,
    Trust,
    Surprise,
    Sadness,
    Joy,
    Disgust,
    Negative,
    Positive,
}

impl EmotionCategory {
    pub const ALL: [EmotionCategory; 10] = [
        EmotionCategory::Anger,
        EmotionCategory::Fear,
        EmotionCategory::Anticipation,
        EmotionCategory::Trust,
        EmotionCategory::Surprise,
        EmotionCategory::Sadness,
        EmotionCategory::Joy,
        EmotionCategory::Disgust,
        EmotionCategory::Negative,
        EmotionCategory::Positive,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EmotionCategory::Anger => "anger",
            EmotionCategory::Fear => "fear",
            EmotionCategory::Anticipation => "anticipation",
            EmotionCategory::Trust => "trust",
            EmotionCategory::Surprise => "surprise",
            EmotionCategory::Sadness => "sadness",
            EmotionCategory::Joy => "joy",
            EmotionCategory::Disgust => "disgust",
            EmotionCategory::Negative => "negative",
            EmotionCategory::Positive => "positive",
        }
    }
}

impl FromStr for EmotionCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EmotionCategory::ALL
            .iter()
            .find(|c| c.name() == s)
            .copied()
            .ok_or_else(|| Error::Validation(format!("unknown emotion category '{s}'")))
    }
}

impl fmt::Display for EmotionCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Lemma → set of associated categories.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmotionLexicon {
    entries: BTreeMap<String, BTreeSet<EmotionCategory>>,
}

impl EmotionLexicon {
    pub fn categories(&self, lemma: &str) -> Option<&BTreeSet<EmotionCategory>> {
        self.entries.get(lemma)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BTreeSet<EmotionCategory>)> {
        self.entries.iter()
    }
}

fn normalize_entry(s: &str) -> String {
    s.nfc().collect::<String>().trim().to_lowercase()
}

/// Load the emotion lexicon from its standard three-column distribution
/// layout: `lemma<TAB>category<TAB>flag` where flag is 0 or 1. Only flag=1
/// rows are retained. An empty result is legal but reported as a warning.
pub fn load_emotion_lexicon(path: &Path) -> Result<(EmotionLexicon, Vec<String>)> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(display.clone(), e))?;
    parse_emotion_lexicon(&content, &display)
}

pub fn parse_emotion_lexicon(content: &str, origin: &str) -> Result<(EmotionLexicon, Vec<String>)> {
    let mut entries: BTreeMap<String, BTreeSet<EmotionCategory>> = BTreeMap::new();
    let mut seen: BTreeSet<(String, EmotionCategory)> = BTreeSet::new();
    let mut warnings = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = trimmed.split('\t').collect();
        if cols.len() != 3 {
            return Err(Error::parse(
                origin,
                line_no,
                format!("expected 3 tab-separated columns, found {}", cols.len()),
            ));
        }
        let lemma = normalize_entry(cols[0]);
        if lemma.is_empty() {
            return Err(Error::parse(origin, line_no, "empty lemma"));
        }
        let category: EmotionCategory = cols[1]
            .trim()
            .parse()
            .map_err(|e: Error| Error::parse(origin, line_no, e.to_string()))?;
        if !seen.insert((lemma.clone(), category)) {
            return Err(Error::parse(
                origin,
                line_no,
                format!("duplicate (lemma, category) pair ('{lemma}', {category})"),
            ));
        }
        let flag = cols[2].trim();
        match flag {
            "1" => {
                entries.entry(lemma).or_default().insert(category);
            }
            "0" => {}
            other => {
                return Err(Error::parse(
                    origin,
                    line_no,
                    format!("flag must be 0 or 1, found '{other}'"),
                ));
            }
        }
    }
    if entries.is_empty() {
        warnings.push(format!("emotion lexicon '{origin}' is empty"));
    }
    Ok((EmotionLexicon { entries }, warnings))
}

/// The named function-word lists a language must provide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ListKind {
    Negations,
    StateVerbs,
    ActionVerbMarkers,
    AbstractNouns,
    AssertiveWords,
    SurveyWords,
    ReportingWords,
    DiscourseMarkers,
    ClaimWords,
    HighModalityWords,
    ModalVerbs,
    PersonalPronouns,
    SecondPersonForms,
    FirstSingularForms,
    InterrogativeWords,
    ButForms,
    CoordinatingConjunctions,
    PassiveAuxiliaries,
    MoneyWords,
    SubordinatorsConcession,
    SubordinatorsReason,
    SubordinatorsPurpose,
    SubordinatorsCondition,
    SubordinatorsTime,
    RelativePronouns,
    Determiners,
}

impl ListKind {
    pub const ALL: [ListKind; 26] = [
        ListKind::Negations,
        ListKind::StateVerbs,
        ListKind::ActionVerbMarkers,
        ListKind::AbstractNouns,
        ListKind::AssertiveWords,
        ListKind::SurveyWords,
        ListKind::ReportingWords,
        ListKind::DiscourseMarkers,
        ListKind::ClaimWords,
        ListKind::HighModalityWords,
        ListKind::ModalVerbs,
        ListKind::PersonalPronouns,
        ListKind::SecondPersonForms,
        ListKind::FirstSingularForms,
        ListKind::InterrogativeWords,
        ListKind::ButForms,
        ListKind::CoordinatingConjunctions,
        ListKind::PassiveAuxiliaries,
        ListKind::MoneyWords,
        ListKind::SubordinatorsConcession,
        ListKind::SubordinatorsReason,
        ListKind::SubordinatorsPurpose,
        ListKind::SubordinatorsCondition,
        ListKind::SubordinatorsTime,
        ListKind::RelativePronouns,
        ListKind::Determiners,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ListKind::Negations => "negations",
            ListKind::StateVerbs => "state_verbs",
            ListKind::ActionVerbMarkers => "action_verb_markers",
            ListKind::AbstractNouns => "abstract_nouns",
            ListKind::AssertiveWords => "assertive_words",
            ListKind::SurveyWords => "survey_words",
            ListKind::ReportingWords => "reporting_words",
            ListKind::DiscourseMarkers => "discourse_markers",
            ListKind::ClaimWords => "claim_words",
            ListKind::HighModalityWords => "high_modality_words",
            ListKind::ModalVerbs => "modal_verbs",
            ListKind::PersonalPronouns => "personal_pronouns",
            ListKind::SecondPersonForms => "second_person_forms",
            ListKind::FirstSingularForms => "first_singular_forms",
            ListKind::InterrogativeWords => "interrogative_words",
            ListKind::ButForms => "but_forms",
            ListKind::CoordinatingConjunctions => "coordinating_conjunctions",
            ListKind::PassiveAuxiliaries => "passive_auxiliaries",
            ListKind::MoneyWords => "money_words",
            ListKind::SubordinatorsConcession => "subordinators_concession",
            ListKind::SubordinatorsReason => "subordinators_reason",
            ListKind::SubordinatorsPurpose => "subordinators_purpose",
            ListKind::SubordinatorsCondition => "subordinators_condition",
            ListKind::SubordinatorsTime => "subordinators_time",
            ListKind::RelativePronouns => "relative_pronouns",
            ListKind::Determiners => "determiners",
        }
    }
}

impl FromStr for ListKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ListKind::ALL
            .iter()
            .find(|k| k.name() == s)
            .copied()
            .ok_or_else(|| Error::Validation(format!("unknown function-word list '{s}'")))
    }
}

impl fmt::Display for ListKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A dictionary entry: one lemma or a multiword lemma phrase.
pub type Phrase = Vec<String>;

/// The function-word lists of a single language.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionWordLists {
    lists: BTreeMap<ListKind, Vec<Phrase>>,
}

impl FunctionWordLists {
    pub fn get(&self, kind: ListKind) -> &[Phrase] {
        self.lists.get(&kind).map_or(&[], Vec::as_slice)
    }

    pub fn insert(&mut self, kind: ListKind, phrase: Phrase) {
        let list = self.lists.entry(kind).or_default();
        if !list.contains(&phrase) {
            list.push(phrase);
        }
    }

    /// Single-word entries of a list, for closed-class POS dictionaries.
    pub fn single_words(&self, kind: ListKind) -> impl Iterator<Item = &str> {
        self.get(kind)
            .iter()
            .filter(|p| p.len() == 1)
            .map(|p| p[0].as_str())
    }

    pub fn missing_lists(&self) -> Vec<ListKind> {
        ListKind::ALL
            .iter()
            .filter(|k| self.get(**k).is_empty())
            .copied()
            .collect()
    }
}

/// Load a language's function-word lists from a two-column TSV
/// (`list_name<TAB>entry`); entries may be multiword phrases.
pub fn load_function_words(path: &Path) -> Result<FunctionWordLists> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(display.clone(), e))?;
    parse_function_words(&content, &display)
}

pub fn parse_function_words(content: &str, origin: &str) -> Result<FunctionWordLists> {
    let mut lists = FunctionWordLists::default();
    for (lineno, line) in content.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut parts = trimmed.splitn(2, '\t');
        let kind_str = parts.next().unwrap_or("").trim();
        let entry = parts
            .next()
            .ok_or_else(|| Error::parse(origin, line_no, "expected two tab-separated columns"))?;
        let kind: ListKind = kind_str
            .parse()
            .map_err(|e: Error| Error::parse(origin, line_no, e.to_string()))?;
        let phrase: Phrase = normalize_entry(entry)
            .split_whitespace()
            .map(str::to_string)
            .collect();
        if phrase.is_empty() {
            return Err(Error::parse(origin, line_no, "empty entry"));
        }
        lists.insert(kind, phrase);
    }
    Ok(lists)
}

/// Stance association of a glossary keyword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StanceHint {
    KremlinMarker,
    WesternMarker,
    Neutral,
}

impl FromStr for StanceHint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kremlin_marker" => Ok(StanceHint::KremlinMarker),
            "western_marker" => Ok(StanceHint::WesternMarker),
            "neutral" => Ok(StanceHint::Neutral),
            other => Err(Error::Validation(format!("unknown stance hint '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlossaryEntry {
    pub canonical_id: String,
    pub stance_hint: StanceHint,
    /// Per-language surface forms as lowercased word sequences.
    pub forms: BTreeMap<Language, Vec<Phrase>>,
}

/// The keyword glossary: politically loaded terms with per-language forms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeywordGlossary {
    entries: BTreeMap<String, GlossaryEntry>,
}

impl KeywordGlossary {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, canonical_id: &str) -> Option<&GlossaryEntry> {
        self.entries.get(canonical_id)
    }

    /// Entries in canonical-id order — the order keyword feature slots use.
    pub fn iter(&self) -> impl Iterator<Item = &GlossaryEntry> {
        self.entries.values()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Stable content hash binding trained models to the glossary version.
    pub fn version_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for entry in self.entries.values() {
            hasher.update(entry.canonical_id.as_bytes());
            hasher.update([0u8]);
            hasher.update(format!("{:?}", entry.stance_hint).as_bytes());
            for (lang, phrases) in &entry.forms {
                hasher.update(lang.code().as_bytes());
                for phrase in phrases {
                    hasher.update(phrase.join(" ").as_bytes());
                    hasher.update([1u8]);
                }
            }
            hasher.update([2u8]);
        }
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Load the glossary from TSV rows `canonical_id<TAB>stance_hint<TAB>language
/// <TAB>phrase`, one row per surface form. Every entry must provide forms for
/// every language in `supported`. Duplicate rows dedup with a warning.
pub fn load_glossary(
    path: &Path,
    supported: &[Language],
) -> Result<(KeywordGlossary, Vec<String>)> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(display.clone(), e))?;
    parse_glossary(&content, &display, supported)
}

pub fn parse_glossary(
    content: &str,
    origin: &str,
    supported: &[Language],
) -> Result<(KeywordGlossary, Vec<String>)> {
    let mut entries: BTreeMap<String, GlossaryEntry> = BTreeMap::new();
    let mut warnings = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = trimmed.split('\t').collect();
        if cols.len() != 4 {
            return Err(Error::parse(
                origin,
                line_no,
                format!("expected 4 tab-separated columns, found {}", cols.len()),
            ));
        }
        let id = cols[0].trim().to_string();
        let hint: StanceHint = cols[1]
            .trim()
            .parse()
            .map_err(|e: Error| Error::parse(origin, line_no, e.to_string()))?;
        let lang: Language = cols[2]
            .trim()
            .parse()
            .map_err(|e: Error| Error::parse(origin, line_no, e.to_string()))?;
        let phrase: Phrase = normalize_entry(cols[3])
            .split_whitespace()
            .map(str::to_string)
            .collect();
        if phrase.is_empty() {
            return Err(Error::parse(origin, line_no, "empty phrase"));
        }
        let entry = entries.entry(id.clone()).or_insert_with(|| GlossaryEntry {
            canonical_id: id.clone(),
            stance_hint: hint,
            forms: BTreeMap::new(),
        });
        if entry.stance_hint != hint {
            return Err(Error::parse(
                origin,
                line_no,
                format!("conflicting stance hints for glossary entry '{id}'"),
            ));
        }
        let forms = entry.forms.entry(lang).or_default();
        if forms.contains(&phrase) {
            warnings.push(format!(
                "{origin}:{line_no}: duplicate glossary row ({id}, {lang}, '{}') ignored",
                phrase.join(" ")
            ));
        } else {
            forms.push(phrase);
        }
    }
    // Coverage: every entry needs forms for every supported language.
    let mut gaps = Vec::new();
    for entry in entries.values() {
        let missing: Vec<&str> = supported
            .iter()
            .filter(|l| !entry.forms.contains_key(l))
            .map(|l| l.code())
            .collect();
        if !missing.is_empty() {
            gaps.push(format!(
                "entry '{}' missing languages: {}",
                entry.canonical_id,
                missing.join(", ")
            ));
        }
    }
    if !gaps.is_empty() {
        return Err(Error::Coverage(gaps.join("; ")));
    }
    Ok((KeywordGlossary { entries }, warnings))
}

/// All dictionary resources for one language.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageResources {
    pub emotion: EmotionLexicon,
    pub function_words: FunctionWordLists,
    /// Lowercased abbreviations (without the trailing period) that block
    /// sentence splits, e.g. "mr", "e.g".
    pub abbreviations: BTreeSet<String>,
}

/// The complete, immutable dictionary bundle used by annotation and feature
/// extraction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconSet {
    languages: BTreeMap<Language, LanguageResources>,
    pub glossary: KeywordGlossary,
}

impl LexiconSet {
    pub fn new(
        languages: BTreeMap<Language, LanguageResources>,
        glossary: KeywordGlossary,
    ) -> Self {
        Self {
            languages,
            glossary,
        }
    }

    pub fn supported_languages(&self) -> Vec<Language> {
        self.languages.keys().copied().collect()
    }

    pub fn language(&self, lang: Language) -> Option<&LanguageResources> {
        self.languages.get(&lang)
    }

    pub fn require_language(&self, lang: Language) -> Result<&LanguageResources> {
        self.language(lang).ok_or_else(|| {
            Error::Config(format!("no lexicon resources loaded for language '{lang}'"))
        })
    }

    /// Load from a TOML manifest listing per-language resource paths.
    ///
    /// ```toml
    /// version = 1
    /// glossary = "glossary.tsv"
    /// [languages.en]
    /// function_words = "en/function_words.tsv"
    /// emotion = "en/emotion.tsv"
    /// abbreviations = "en/abbreviations.txt"
    /// ```
    pub fn load(manifest_path: &Path) -> Result<(Self, Vec<String>)> {
        let display = manifest_path.display().to_string();
        let content =
            std::fs::read_to_string(manifest_path).map_err(|e| Error::io(display.clone(), e))?;
        let manifest: ResourceManifest = toml::from_str(&content)
            .map_err(|e| Error::Config(format!("bad resource manifest {display}: {e}")))?;
        if manifest.version != 1 {
            return Err(Error::Contract(format!(
                "resource manifest version {} unsupported (expected 1)",
                manifest.version
            )));
        }
        let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));
        let mut warnings = Vec::new();
        let mut languages = BTreeMap::new();
        for (lang_code, paths) in &manifest.languages {
            let lang: Language = lang_code.parse()?;
            let (emotion, mut w) = load_emotion_lexicon(&base.join(&paths.emotion))?;
            warnings.append(&mut w);
            let function_words = load_function_words(&base.join(&paths.function_words))?;
            let abbreviations = match &paths.abbreviations {
                Some(p) => load_word_set(&base.join(p))?,
                None => BTreeSet::new(),
            };
            languages.insert(
                lang,
                LanguageResources {
                    emotion,
                    function_words,
                    abbreviations,
                },
            );
        }
        let supported: Vec<Language> = languages.keys().copied().collect();
        let (glossary, mut w) = load_glossary(&base.join(&manifest.glossary), &supported)?;
        warnings.append(&mut w);
        Ok((
            Self {
                languages,
                glossary,
            },
            warnings,
        ))
    }
}

macro_rules! res {
    ($p:literal) => {
        include_str!(concat!("../resources/", $p))
    };
}

/// The starter resources shipped with the crate: all five languages plus the
/// keyword glossary. An on-disk resource tree (see [`LexiconSet::load`])
/// overrides these when provided.
pub fn builtin() -> Result<(LexiconSet, Vec<String>)> {
    let mut warnings = Vec::new();
    let mut languages = BTreeMap::new();
    let data: [(Language, &str, &str, &str); 5] = [
        (
            Language::En,
            res!("en/function_words.tsv"),
            res!("en/emotion.tsv"),
            res!("en/abbreviations.txt"),
        ),
        (
            Language::Uk,
            res!("uk/function_words.tsv"),
            res!("uk/emotion.tsv"),
            res!("uk/abbreviations.txt"),
        ),
        (
            Language::Ru,
            res!("ru/function_words.tsv"),
            res!("ru/emotion.tsv"),
            res!("ru/abbreviations.txt"),
        ),
        (
            Language::Ro,
            res!("ro/function_words.tsv"),
            res!("ro/emotion.tsv"),
            res!("ro/abbreviations.txt"),
        ),
        (
            Language::Fr,
            res!("fr/function_words.tsv"),
            res!("fr/emotion.tsv"),
            res!("fr/abbreviations.txt"),
        ),
    ];
    for (lang, fw, emo, abbr) in data {
        let function_words = parse_function_words(fw, &format!("builtin:{lang}"))?;
        let (emotion, mut w) = parse_emotion_lexicon(emo, &format!("builtin:{lang}"))?;
        warnings.append(&mut w);
        let abbreviations = abbr
            .lines()
            .map(normalize_entry)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        languages.insert(
            lang,
            LanguageResources {
                emotion,
                function_words,
                abbreviations,
            },
        );
    }
    let (glossary, mut w) = parse_glossary(res!("glossary.tsv"), "builtin:glossary", &Language::ALL)?;
    warnings.append(&mut w);
    Ok((
        LexiconSet {
            languages,
            glossary,
        },
        warnings,
    ))
}

fn load_word_set(path: &Path) -> Result<BTreeSet<String>> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(display, e))?;
    Ok(content
        .lines()
        .map(|l| normalize_entry(l))
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

#[derive(Debug, Deserialize)]
struct ResourceManifest {
    version: u32,
    glossary: PathBuf,
    languages: BTreeMap<String, LanguagePaths>,
}

#[derive(Debug, Deserialize)]
struct LanguagePaths {
    function_words: PathBuf,
    emotion: PathBuf,
    #[serde(default)]
    abbreviations: Option<PathBuf>,
}

/// Severity of a validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationFinding {
    pub severity: Severity,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub findings: Vec<ValidationFinding>,
}

impl ValidationReport {
    pub fn has_errors(&self) -> bool {
        self.findings
            .iter()
            .any(|f| f.severity == Severity::Error)
    }

    /// Findings at `Error` severity only.
    pub fn errors(&self) -> impl Iterator<Item = &ValidationFinding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }
}

/// The glossary size the reference experiments assume; other sizes are legal
/// and reported as informational findings.
pub const REFERENCE_GLOSSARY_SIZE: usize = 116;

/// Check a lexicon set for per-language gaps and report sizes.
pub fn validate_lexicon_set(set: &LexiconSet) -> ValidationReport {
    let mut findings = Vec::new();
    for lang in set.supported_languages() {
        let res = set.language(lang).expect("listed language present");
        for kind in res.function_words.missing_lists() {
            findings.push(ValidationFinding {
                severity: Severity::Error,
                message: format!("language '{lang}': function-word list '{kind}' is empty"),
            });
        }
        if res.emotion.is_empty() {
            findings.push(ValidationFinding {
                severity: Severity::Warning,
                message: format!("language '{lang}': emotion lexicon is empty"),
            });
        } else {
            findings.push(ValidationFinding {
                severity: Severity::Info,
                message: format!(
                    "language '{lang}': emotion lexicon has {} lemmas",
                    res.emotion.len()
                ),
            });
        }
        for entry in set.glossary.iter() {
            if !entry.forms.contains_key(&lang) {
                findings.push(ValidationFinding {
                    severity: Severity::Error,
                    message: format!(
                        "glossary entry '{}' has no forms for language '{lang}'",
                        entry.canonical_id
                    ),
                });
            }
        }
    }
    let n = set.glossary.len();
    findings.push(ValidationFinding {
        severity: Severity::Info,
        message: if n == REFERENCE_GLOSSARY_SIZE {
            format!("glossary has {n} entries (matches the reference size)")
        } else {
            format!("glossary has {n} entries (reference size is {REFERENCE_GLOSSARY_SIZE})")
        },
    });
    ValidationReport { findings }
}
