//! Feature extraction: map an annotated document plus the lexicon set onto
//! the fixed-order numeric feature vector (43 linguistic features plus one
//! slot per glossary keyword), length-normalized by token count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annotate::{
    AnnotatedDocument, Lemmatizer, MorphFlag, Pos, Token, CURRENCY_SYMBOLS, OPENING_QUOTES,
};
use crate::corpus::Language;
use crate::error::{Error, Result};
use crate::lexicon::{EmotionCategory, KeywordGlossary, LexiconSet, ListKind};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Feature group tags (surface/morphosyntax, emotion, lexical, neutrality,
/// clause, keyword).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureGroup {
    Surface,
    Emotion,
    Lexical,
    Neutrality,
    Clause,
    Keyword,
}

impl fmt::Display for FeatureGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FeatureGroup::Surface => "surface",
            FeatureGroup::Emotion => "emotion",
            FeatureGroup::Lexical => "lexical",
            FeatureGroup::Neutrality => "neutrality",
            FeatureGroup::Clause => "clause",
            FeatureGroup::Keyword => "keyword",
        })
    }
}

/// The canonical linguistic feature schema, in vector order.
pub const LINGUISTIC_FEATURES: [(&str, FeatureGroup); 43] = [
    ("negations", FeatureGroup::Surface),
    ("adverbs", FeatureGroup::Surface),
    ("avg_sentence_length", FeatureGroup::Surface),
    ("proper_nouns", FeatureGroup::Surface),
    ("passive_voice", FeatureGroup::Surface),
    ("quotes", FeatureGroup::Surface),
    ("conjunctions", FeatureGroup::Surface),
    ("but_conjunction", FeatureGroup::Surface),
    ("comparatives", FeatureGroup::Surface),
    ("superlatives", FeatureGroup::Surface),
    ("state_verbs", FeatureGroup::Surface),
    ("personal_pronouns", FeatureGroup::Surface),
    ("modal_verbs", FeatureGroup::Surface),
    ("interrogatives", FeatureGroup::Surface),
    ("anger", FeatureGroup::Emotion),
    ("fear", FeatureGroup::Emotion),
    ("anticipation", FeatureGroup::Emotion),
    ("trust", FeatureGroup::Emotion),
    ("surprise", FeatureGroup::Emotion),
    ("sadness", FeatureGroup::Emotion),
    ("joy", FeatureGroup::Emotion),
    ("disgust", FeatureGroup::Emotion),
    ("negative", FeatureGroup::Emotion),
    ("positive", FeatureGroup::Emotion),
    ("adjectives", FeatureGroup::Lexical),
    ("verbs_total", FeatureGroup::Lexical),
    ("action_verbs", FeatureGroup::Lexical),
    ("abstract_nouns", FeatureGroup::Lexical),
    ("money_symbols", FeatureGroup::Lexical),
    ("assertive_words", FeatureGroup::Lexical),
    ("second_person", FeatureGroup::Lexical),
    ("first_person_singular", FeatureGroup::Lexical),
    ("survey_words", FeatureGroup::Neutrality),
    ("reporting_words", FeatureGroup::Neutrality),
    ("discourse_markers", FeatureGroup::Neutrality),
    ("claim_words", FeatureGroup::Neutrality),
    ("high_modality", FeatureGroup::Neutrality),
    ("clause_concession", FeatureGroup::Clause),
    ("clause_reason", FeatureGroup::Clause),
    ("clause_purpose", FeatureGroup::Clause),
    ("clause_condition", FeatureGroup::Clause),
    ("clause_time", FeatureGroup::Clause),
    ("clause_relative", FeatureGroup::Clause),
];

/// Prefix for keyword feature slots (`kw_<canonical_id>`).
pub const KEYWORD_PREFIX: &str = "kw_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureMode {
    LinguisticOnly,
    LinguisticPlusKeywords,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureName {
    pub name: String,
    pub group: FeatureGroup,
}

/// The ordered feature-name list; the single source of truth for vector
/// indexing, stored inside every trained model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureManifest {
    features: Vec<FeatureName>,
    pub glossary_hash: String,
    pub mode: FeatureMode,
}

impl FeatureManifest {
    /// Full manifest: 43 linguistic features plus one keyword slot per
    /// glossary entry in canonical-id order.
    pub fn full(glossary: &KeywordGlossary) -> Self {
        let mut features: Vec<FeatureName> = LINGUISTIC_FEATURES
            .iter()
            .map(|(name, group)| FeatureName {
                name: (*name).to_string(),
                group: *group,
            })
            .collect();
        for id in glossary.ids() {
            features.push(FeatureName {
                name: format!("{KEYWORD_PREFIX}{id}"),
                group: FeatureGroup::Keyword,
            });
        }
        Self {
            features,
            glossary_hash: glossary.version_hash(),
            mode: FeatureMode::LinguisticPlusKeywords,
        }
    }

    /// Restrict to a feature mode. Idempotent.
    pub fn with_mode(&self, mode: FeatureMode) -> Self {
        let features = match mode {
            FeatureMode::LinguisticOnly => self
                .features
                .iter()
                .filter(|f| f.group != FeatureGroup::Keyword)
                .cloned()
                .collect(),
            FeatureMode::LinguisticPlusKeywords => self.features.clone(),
        };
        Self {
            features,
            glossary_hash: self.glossary_hash.clone(),
            mode,
        }
    }

    /// A manifest with the same entries in caller-chosen order (used by the
    /// permutation-consistency tests).
    pub fn reordered(&self, order: &[usize]) -> Self {
        Self {
            features: order.iter().map(|&i| self.features[i].clone()).collect(),
            glossary_hash: self.glossary_hash.clone(),
            mode: self.mode,
        }
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn features(&self) -> &[FeatureName] {
        &self.features
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.features.iter().map(|f| f.name.as_str())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|f| f.name == name)
    }
}

/// One document's feature vector, aligned to a manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector<S> {
    pub values: Vec<S>,
    pub token_count: usize,
}

/// Lemma-phrase matcher: longest-match-first, non-overlapping scan.
#[derive(Debug, Clone, Default)]
struct PhraseMatcher {
    /// first lemma → candidate (phrase, payload), longest phrase first.
    by_first: BTreeMap<String, Vec<(Vec<String>, usize)>>,
}

#[derive(Clone, Copy)]
enum MatchGuard {
    Anywhere,
    /// Match must start the sentence or directly follow a punctuation token.
    ClauseInitial,
}

impl PhraseMatcher {
    fn add(&mut self, phrase: &[String], payload: usize) {
        if phrase.is_empty() {
            return;
        }
        let list = self.by_first.entry(phrase[0].clone()).or_default();
        let candidate = (phrase.to_vec(), payload);
        if !list.contains(&candidate) {
            list.push(candidate);
            list.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        }
    }

    /// Scan one sentence, incrementing `counts[payload]` per match.
    fn scan(&self, sentence: &[Token], guard: MatchGuard, counts: &mut [usize]) {
        let lemmas: Vec<&str> = sentence.iter().map(|t| t.lemma.as_str()).collect();
        let mut i = 0;
        while i < lemmas.len() {
            let eligible = match guard {
                MatchGuard::Anywhere => true,
                MatchGuard::ClauseInitial => i == 0 || sentence[i - 1].pos == Pos::PUNCT,
            };
            if eligible {
                if let Some(candidates) = self.by_first.get(lemmas[i]) {
                    let mut advanced = false;
                    for (phrase, payload) in candidates {
                        if i + phrase.len() <= lemmas.len()
                            && phrase.iter().zip(&lemmas[i..]).all(|(p, l)| p == l)
                        {
                            counts[*payload] += 1;
                            i += phrase.len();
                            advanced = true;
                            break;
                        }
                    }
                    if advanced {
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}

const CLAUSE_LISTS: [ListKind; 5] = [
    ListKind::SubordinatorsConcession,
    ListKind::SubordinatorsReason,
    ListKind::SubordinatorsPurpose,
    ListKind::SubordinatorsCondition,
    ListKind::SubordinatorsTime,
];

/// Per-language compiled matching state.
struct LangFeatures {
    /// Simple lemma-list matchers, one per counted list.
    lists: BTreeMap<ListKind, PhraseMatcher>,
    /// The five clause subordinator matchers (payload = clause type index).
    clauses: PhraseMatcher,
    emotion: BTreeMap<String, BTreeSet<EmotionCategory>>,
    state_verb_lemmas: BTreeSet<String>,
    passive_aux_lemmas: BTreeSet<String>,
    interrogative_lemmas: BTreeSet<String>,
    /// Combined glossary matcher (payload = keyword slot index).
    glossary: PhraseMatcher,
}

/// Window (in tokens) after a passive auxiliary in which a past participle
/// still counts as a passive construction ("was not seen").
const PASSIVE_WINDOW: usize = 3;

/// Feature extractor for one lexicon set. Pure and immutable; documents may
/// be processed concurrently.
pub struct FeatureExtractor {
    per_language: BTreeMap<Language, LangFeatures>,
    keyword_ids: Vec<String>,
    glossary_hash: String,
}

/// The lists counted by direct lemma/phrase matching, with their feature
/// names.
const LIST_FEATURES: [(ListKind, &str); 12] = [
    (ListKind::Negations, "negations"),
    (ListKind::StateVerbs, "state_verbs"),
    (ListKind::ModalVerbs, "modal_verbs"),
    (ListKind::ButForms, "but_conjunction"),
    (ListKind::AbstractNouns, "abstract_nouns"),
    (ListKind::AssertiveWords, "assertive_words"),
    (ListKind::SurveyWords, "survey_words"),
    (ListKind::ReportingWords, "reporting_words"),
    (ListKind::DiscourseMarkers, "discourse_markers"),
    (ListKind::ClaimWords, "claim_words"),
    (ListKind::HighModalityWords, "high_modality"),
    (ListKind::RelativePronouns, "clause_relative"),
];

impl FeatureExtractor {
    pub fn new(lexicons: &LexiconSet) -> Result<Self> {
        let keyword_ids: Vec<String> = lexicons.glossary.ids().map(str::to_string).collect();
        let mut per_language = BTreeMap::new();
        for language in lexicons.supported_languages() {
            let res = lexicons.require_language(language)?;
            let lemmatizer = Lemmatizer::new(language, lexicons)?;
            let canon = |phrase: &[String]| -> Vec<String> {
                phrase.iter().map(|w| lemmatizer.lemma(w)).collect()
            };

            let mut lists: BTreeMap<ListKind, PhraseMatcher> = BTreeMap::new();
            for (kind, _) in LIST_FEATURES {
                let mut matcher = PhraseMatcher::default();
                for phrase in res.function_words.get(kind) {
                    matcher.add(&canon(phrase), 0);
                }
                lists.insert(kind, matcher);
            }
            let mut money = PhraseMatcher::default();
            for phrase in res.function_words.get(ListKind::MoneyWords) {
                money.add(&canon(phrase), 0);
            }
            lists.insert(ListKind::MoneyWords, money);

            let mut clauses = PhraseMatcher::default();
            for (ci, kind) in CLAUSE_LISTS.iter().enumerate() {
                for phrase in res.function_words.get(*kind) {
                    clauses.add(&canon(phrase), ci);
                }
            }

            let mut emotion: BTreeMap<String, BTreeSet<EmotionCategory>> = BTreeMap::new();
            for (lemma, cats) in res.emotion.iter() {
                emotion
                    .entry(lemmatizer.lemma(lemma))
                    .or_default()
                    .extend(cats.iter().copied());
            }

            let collect_lemmas = |kind: ListKind| -> BTreeSet<String> {
                res.function_words
                    .single_words(kind)
                    .map(|w| lemmatizer.lemma(w))
                    .collect()
            };

            let mut glossary = PhraseMatcher::default();
            for (slot, id) in keyword_ids.iter().enumerate() {
                let entry = lexicons.glossary.get(id).expect("id from glossary");
                if let Some(phrases) = entry.forms.get(&language) {
                    for phrase in phrases {
                        glossary.add(&canon(phrase), slot);
                    }
                }
            }

            per_language.insert(
                language,
                LangFeatures {
                    lists,
                    clauses,
                    emotion,
                    state_verb_lemmas: collect_lemmas(ListKind::StateVerbs),
                    passive_aux_lemmas: collect_lemmas(ListKind::PassiveAuxiliaries),
                    interrogative_lemmas: collect_lemmas(ListKind::InterrogativeWords),
                    glossary,
                },
            );
        }
        Ok(Self {
            per_language,
            keyword_ids,
            glossary_hash: lexicons.glossary.version_hash(),
        })
    }

    pub fn glossary_hash(&self) -> &str {
        &self.glossary_hash
    }

    pub fn keyword_ids(&self) -> &[String] {
        &self.keyword_ids
    }

    /// Extract the feature vector for one document, aligned to `manifest`.
    pub fn extract<S: Scalar>(
        &self,
        doc: &AnnotatedDocument,
        language: Language,
        manifest: &FeatureManifest,
    ) -> Result<FeatureVector<S>> {
        let named = self.extract_named(doc, language)?;
        let mut values = Vec::with_capacity(manifest.len());
        for feature in manifest.features() {
            let v = named.values.get(feature.name.as_str()).ok_or_else(|| {
                Error::Contract(format!("manifest names unknown feature '{}'", feature.name))
            })?;
            values.push(S::from_f64_lit(*v));
        }
        Ok(FeatureVector {
            values,
            token_count: named.token_count,
        })
    }

    /// All features by name (normalized), before manifest projection.
    fn extract_named(&self, doc: &AnnotatedDocument, language: Language) -> Result<NamedFeatures> {
        let lang = self.per_language.get(&language).ok_or_else(|| {
            Error::Extraction {
                doc_id: doc.doc_id.clone(),
                message: format!("no lexicon coverage for language '{language}'"),
            }
        })?;
        let token_count = doc.token_count();
        let sentence_count = doc.sentence_count();
        if token_count == 0 || sentence_count == 0 {
            return Err(Error::Extraction {
                doc_id: doc.doc_id.clone(),
                message: "empty annotation".into(),
            });
        }

        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        let mut list_hits: BTreeMap<ListKind, usize> = BTreeMap::new();
        let mut clause_hits = [0usize; 5];
        let mut emotion_hits: BTreeMap<EmotionCategory, usize> = BTreeMap::new();
        let mut keyword_hits = vec![0usize; self.keyword_ids.len()];

        for sentence in &doc.sentences {
            // Token-level counts.
            for token in sentence {
                match token.pos {
                    Pos::ADV => *counts.entry("adverbs").or_default() += 1,
                    Pos::ADJ => *counts.entry("adjectives").or_default() += 1,
                    Pos::PROPN => *counts.entry("proper_nouns").or_default() += 1,
                    Pos::CONJ => *counts.entry("conjunctions").or_default() += 1,
                    _ => {}
                }
                if matches!(token.pos, Pos::VERB | Pos::AUX) {
                    *counts.entry("verbs_total").or_default() += 1;
                }
                if token.pos == Pos::VERB && !lang.state_verb_lemmas.contains(&token.lemma) {
                    *counts.entry("action_verbs").or_default() += 1;
                }
                if token.morph.has(MorphFlag::Comparative) {
                    *counts.entry("comparatives").or_default() += 1;
                }
                if token.morph.has(MorphFlag::Superlative) {
                    *counts.entry("superlatives").or_default() += 1;
                }
                if token.morph.has(MorphFlag::Personal) {
                    *counts.entry("personal_pronouns").or_default() += 1;
                }
                if token.morph.has(MorphFlag::SecondPerson) {
                    *counts.entry("second_person").or_default() += 1;
                }
                if token.morph.has(MorphFlag::FirstSingular) {
                    *counts.entry("first_person_singular").or_default() += 1;
                }
                let mut chars = token.surface.chars();
                if let (Some(c), None) = (chars.next(), chars.next()) {
                    if OPENING_QUOTES.contains(&c) {
                        *counts.entry("quotes").or_default() += 1;
                    }
                    if token.pos == Pos::SYM && CURRENCY_SYMBOLS.contains(&c) {
                        *counts.entry("money_symbols").or_default() += 1;
                    }
                }
                if let Some(cats) = lang.emotion.get(&token.lemma) {
                    for cat in cats {
                        *emotion_hits.entry(*cat).or_default() += 1;
                    }
                }
            }

            // Passive: auxiliary lemma followed by a participle within the window.
            for (i, token) in sentence.iter().enumerate() {
                if lang.passive_aux_lemmas.contains(&token.lemma) {
                    let window = &sentence[i + 1..sentence.len().min(i + 1 + PASSIVE_WINDOW)];
                    if window.iter().any(|t| t.morph.has(MorphFlag::PastParticiple)) {
                        *counts.entry("passive_voice").or_default() += 1;
                    }
                }
            }

            // Interrogatives: question-final sentences plus interrogative-word starts.
            if sentence.last().map_or(false, |t| t.surface == "?") {
                *counts.entry("interrogatives").or_default() += 1;
            }
            if let Some(first_word) = sentence.iter().find(|t| t.is_word()) {
                if lang.interrogative_lemmas.contains(&first_word.lemma) {
                    *counts.entry("interrogatives").or_default() += 1;
                }
            }

            // List features.
            for (kind, _) in LIST_FEATURES {
                let mut hit = [0usize];
                lang.lists[&kind].scan(sentence, MatchGuard::Anywhere, &mut hit);
                *list_hits.entry(kind).or_default() += hit[0];
            }
            let mut money_hit = [0usize];
            lang.lists[&ListKind::MoneyWords].scan(sentence, MatchGuard::Anywhere, &mut money_hit);
            *counts.entry("money_symbols").or_default() += money_hit[0];

            // Clause subordinators at clause-initial positions.
            lang.clauses
                .scan(sentence, MatchGuard::ClauseInitial, &mut clause_hits);

            // Keywords: combined longest-match scan.
            lang.glossary
                .scan(sentence, MatchGuard::Anywhere, &mut keyword_hits);
        }

        let n = token_count as f64;
        let mut values: BTreeMap<&str, f64> = BTreeMap::new();
        for (name, _) in LINGUISTIC_FEATURES {
            values.insert(name, 0.0);
        }
        for (name, count) in &counts {
            values.insert(name, *count as f64 / n);
        }
        for (kind, feature_name) in LIST_FEATURES {
            let hits = list_hits.get(&kind).copied().unwrap_or(0);
            let slot = values
                .get_mut(feature_name)
                .expect("list feature in schema");
            *slot += hits as f64 / n;
        }
        for (ci, name) in [
            "clause_concession",
            "clause_reason",
            "clause_purpose",
            "clause_condition",
            "clause_time",
        ]
        .iter()
        .enumerate()
        {
            values.insert(name, clause_hits[ci] as f64 / n);
        }
        for cat in EmotionCategory::ALL {
            let hits = emotion_hits.get(&cat).copied().unwrap_or(0);
            values.insert(cat.name(), hits as f64 / n);
        }
        values.insert(
            "avg_sentence_length",
            token_count as f64 / sentence_count as f64,
        );

        let mut keyword_values: BTreeMap<String, f64> = BTreeMap::new();
        for (slot, id) in self.keyword_ids.iter().enumerate() {
            keyword_values.insert(
                format!("{KEYWORD_PREFIX}{id}"),
                keyword_hits[slot] as f64 / n,
            );
        }

        let mut all: BTreeMap<String, f64> =
            values.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        all.append(&mut keyword_values);
        Ok(NamedFeatures {
            values: all,
            token_count,
        })
    }

    /// Extract a feature matrix for many documents. Row order matches input
    /// order with failed documents skipped; their errors are returned
    /// alongside the partial matrix.
    pub fn batch_extract<S: Scalar>(
        &self,
        docs: &[(AnnotatedDocument, Language)],
        manifest: &FeatureManifest,
    ) -> BatchExtraction<S> {
        let results: Vec<(String, Result<FeatureVector<S>>)> = docs
            .par_iter()
            .map(|(doc, lang)| (doc.doc_id.clone(), self.extract(doc, *lang, manifest)))
            .collect();
        let mut rows = Vec::new();
        let mut ids = Vec::new();
        let mut token_counts = Vec::new();
        let mut errors = Vec::new();
        for (id, result) in results {
            match result {
                Ok(v) => {
                    ids.push(id);
                    token_counts.push(v.token_count);
                    rows.push(v.values);
                }
                Err(e) => errors.push((id, e)),
            }
        }
        let matrix = if rows.is_empty() {
            Matrix::zeros(0, manifest.len())
        } else {
            Matrix::from_rows(rows)
        };
        BatchExtraction {
            matrix,
            ids,
            token_counts,
            errors,
        }
    }
}

struct NamedFeatures {
    values: BTreeMap<String, f64>,
    token_count: usize,
}

/// Result of [`FeatureExtractor::batch_extract`].
pub struct BatchExtraction<S> {
    pub matrix: Matrix<S>,
    pub ids: Vec<String>,
    pub token_counts: Vec<usize>,
    pub errors: Vec<(String, Error)>,
}

/// Feature matrix CSV: header `doc_id,<manifest names…>`, one row per
/// document.
pub fn export_feature_csv<S: Scalar>(
    matrix: &Matrix<S>,
    ids: &[String],
    manifest: &FeatureManifest,
) -> String {
    let mut out = String::from("doc_id");
    for name in manifest.names() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, id) in ids.iter().enumerate() {
        out.push_str(id);
        for v in matrix.row(i) {
            out.push(',');
            out.push_str(&format!("{v}"));
        }
        out.push('\n');
    }
    out
}

/// Parse a feature CSV produced by [`export_feature_csv`]. The header must
/// match the manifest name-for-name.
pub fn parse_feature_csv<S: Scalar>(
    content: &str,
    origin: &str,
    manifest: &FeatureManifest,
) -> Result<(Matrix<S>, Vec<String>)> {
    let mut lines = content.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(origin, 1, "empty feature CSV"))?;
    let expected: Vec<&str> = std::iter::once("doc_id").chain(manifest.names()).collect();
    let got: Vec<&str> = header.split(',').collect();
    if got != expected {
        return Err(Error::Contract(format!(
            "feature CSV header does not match manifest: expected {} columns starting with {:?}, found {} starting with {:?}",
            expected.len(),
            &expected[..expected.len().min(4)],
            got.len(),
            &got[..got.len().min(4)]
        )));
    }
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let id = parts.next().unwrap_or("").to_string();
        if id.is_empty() {
            return Err(Error::parse(origin, lineno + 1, "empty doc id"));
        }
        let mut row = Vec::with_capacity(manifest.len());
        for part in parts {
            let v: f64 = part.parse().map_err(|_| {
                Error::parse(origin, lineno + 1, format!("bad float '{part}'"))
            })?;
            row.push(S::from_f64_lit(v));
        }
        if row.len() != manifest.len() {
            return Err(Error::parse(
                origin,
                lineno + 1,
                format!("expected {} values, found {}", manifest.len(), row.len()),
            ));
        }
        ids.push(id);
        rows.push(row);
    }
    let matrix = if rows.is_empty() {
        Matrix::zeros(0, manifest.len())
    } else {
        Matrix::from_rows(rows)
    };
    Ok((matrix, ids))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::Annotator;
    use crate::corpus::Language;

    fn setup() -> (LexiconSet, FeatureManifest) {
        let set = crate::lexicon::builtin().expect("builtin resources").0;
        let manifest = FeatureManifest::full(&set.glossary);
        (set, manifest)
    }

    fn annotate(set: &LexiconSet, text: &str, lang: Language) -> AnnotatedDocument {
        let annotator = Annotator::new(set).unwrap();
        let doc = crate::corpus::Document {
            id: "t".into(),
            text: text.into(),
            language: lang,
            genre: crate::corpus::Genre::Newspaper,
            source: "s".into(),
            stance: None,
            collected_on: chrono::NaiveDate::from_ymd_opt(2022, 3, 1).unwrap(),
        };
        annotator.annotate_document(&doc).unwrap()
    }

    fn value(
        vec: &FeatureVector<f64>,
        manifest: &FeatureManifest,
        name: &str,
    ) -> f64 {
        vec.values[manifest.index_of(name).unwrap_or_else(|| panic!("feature {name}"))]
    }

    #[test]
    fn english_golden_document() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        let doc = annotate(
            &set,
            "The bridge was destroyed, because the army was not ready. \
             War brings fear and sanctions. Why do they claim victory?",
            Language::En,
        );
        assert_eq!(doc.token_count(), 24, "{doc:?}");
        assert_eq!(doc.sentence_count(), 3);
        let v: FeatureVector<f64> = extractor.extract(&doc, Language::En, &manifest).unwrap();
        let n = 24.0;
        assert_eq!(value(&v, &manifest, "negations"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "passive_voice"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "clause_reason"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "avg_sentence_length"), 8.0);
        assert_eq!(value(&v, &manifest, "conjunctions"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "state_verbs"), 2.0 / n);
        assert_eq!(value(&v, &manifest, "personal_pronouns"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "interrogatives"), 2.0 / n);
        assert_eq!(value(&v, &manifest, "fear"), 3.0 / n);
        assert_eq!(value(&v, &manifest, "negative"), 3.0 / n);
        assert_eq!(value(&v, &manifest, "joy"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "claim_words"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "abstract_nouns"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "action_verbs"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "verbs_total"), 3.0 / n);
        assert_eq!(value(&v, &manifest, "kw_war"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "kw_sanctions"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "kw_invasion"), 0.0);
    }

    #[test]
    fn single_keyword_token_normalizes_to_one() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        let doc = annotate(&set, "war", Language::En);
        let v: FeatureVector<f64> = extractor.extract(&doc, Language::En, &manifest).unwrap();
        assert_eq!(value(&v, &manifest, "kw_war"), 1.0);
        for name in [
            "clause_concession",
            "clause_reason",
            "clause_purpose",
            "clause_condition",
            "clause_time",
        ] {
            assert_eq!(value(&v, &manifest, name), 0.0);
        }
    }

    #[test]
    fn zero_hit_text_has_zero_list_features() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        // Words chosen to avoid every list and the glossary; no punctuation
        // patterns either.
        let doc = annotate(&set, "kremlinology textbook volume seven", Language::En);
        let v: FeatureVector<f64> = extractor.extract(&doc, Language::En, &manifest).unwrap();
        for feature in manifest.features() {
            let val = value(&v, &manifest, &feature.name);
            if feature.name == "avg_sentence_length" {
                assert_eq!(val, 4.0);
            } else {
                assert_eq!(val, 0.0, "{} should be zero", feature.name);
            }
        }
    }

    #[test]
    fn self_concatenation_leaves_features_unchanged() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        let text = "The bridge was destroyed, because the army was not ready. \
                    War brings fear and sanctions. Why do they claim victory?";
        let single = annotate(&set, text, Language::En);
        let doubled = annotate(&set, &format!("{text} {text}"), Language::En);
        assert_eq!(doubled.token_count(), 2 * single.token_count());
        let a: FeatureVector<f64> = extractor.extract(&single, Language::En, &manifest).unwrap();
        let b: FeatureVector<f64> = extractor.extract(&doubled, Language::En, &manifest).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn multiword_keyword_longest_match() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        let doc = annotate(&set, "They documented war crimes today.", Language::En);
        let v: FeatureVector<f64> = extractor.extract(&doc, Language::En, &manifest).unwrap();
        let n = doc.token_count() as f64;
        // "war crimes" must consume both tokens: the bare "war" slot stays 0.
        assert_eq!(value(&v, &manifest, "kw_war_crimes"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "kw_war"), 0.0);
    }

    #[test]
    fn ukrainian_keyword_and_clause_counting() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        let doc = annotate(
            &set,
            "Це вторгнення, бо війська атакували місто. Війна триває в Україні.",
            Language::Uk,
        );
        let v: FeatureVector<f64> = extractor.extract(&doc, Language::Uk, &manifest).unwrap();
        let n = doc.token_count() as f64;
        assert_eq!(value(&v, &manifest, "kw_invasion"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "kw_war"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "kw_in_ukraine"), 1.0 / n);
        assert_eq!(value(&v, &manifest, "clause_reason"), 1.0 / n);
    }

    #[test]
    fn feature_mode_restriction_and_idempotence() {
        let (set, _) = setup();
        let full = FeatureManifest::full(&set.glossary);
        assert_eq!(full.len(), 43 + set.glossary.len());
        let ling = full.with_mode(FeatureMode::LinguisticOnly);
        assert_eq!(ling.len(), 43);
        let again = ling.with_mode(FeatureMode::LinguisticOnly);
        assert_eq!(ling, again);
        let back = full.with_mode(FeatureMode::LinguisticPlusKeywords);
        assert_eq!(back.len(), full.len());
    }

    #[test]
    fn manifest_reordering_permutes_vector() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        let doc = annotate(&set, "War brings fear, because armies attack.", Language::En);
        let v: FeatureVector<f64> = extractor.extract(&doc, Language::En, &manifest).unwrap();
        let order: Vec<usize> = (0..manifest.len()).rev().collect();
        let reordered = manifest.reordered(&order);
        let w: FeatureVector<f64> = extractor.extract(&doc, Language::En, &reordered).unwrap();
        for (new_idx, &old_idx) in order.iter().enumerate() {
            assert_eq!(w.values[new_idx], v.values[old_idx]);
        }
    }

    #[test]
    fn batch_extract_keeps_order_and_collects_errors() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        let annotator = Annotator::new(&set).unwrap();
        let good1 = annotator
            .annotate_skeleton("a", Language::En, &[vec!["war".into(), ".".into()]])
            .unwrap();
        let good2 = annotator
            .annotate_skeleton("c", Language::En, &[vec!["peace".into(), ".".into()]])
            .unwrap();
        // A document in a language without resources fails extraction but
        // not the batch.
        let docs = vec![
            (good1, Language::En),
            (
                AnnotatedDocument {
                    doc_id: "b".into(),
                    sentences: vec![vec![]],
                },
                Language::En,
            ),
            (good2, Language::En),
        ];
        let batch: BatchExtraction<f64> = extractor.batch_extract(&docs, &manifest);
        assert_eq!(batch.ids, vec!["a".to_string(), "c".to_string()]);
        assert_eq!(batch.matrix.n_rows(), 2);
        assert_eq!(batch.errors.len(), 1);
        assert_eq!(batch.errors[0].0, "b");
    }

    #[test]
    fn feature_csv_round_trip() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        let docs = vec![
            (annotate(&set, "War brings sanctions.", Language::En), Language::En),
            (annotate(&set, "Peace talks continue today.", Language::En), Language::En),
        ];
        let batch: BatchExtraction<f64> = extractor.batch_extract(&docs, &manifest);
        assert!(batch.errors.is_empty());
        let csv = export_feature_csv(&batch.matrix, &batch.ids, &manifest);
        let (matrix, ids) = parse_feature_csv::<f64>(&csv, "test", &manifest).unwrap();
        assert_eq!(ids, batch.ids);
        assert_eq!(matrix, batch.matrix);
    }

    #[test]
    fn bounded_and_nonnegative() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        let doc = annotate(
            &set,
            "No! Never again war, death and fear. If they attack, we fight; \
             although peace seems far, hope remains. \"Victory,\" they say.",
            Language::En,
        );
        let v: FeatureVector<f64> = extractor.extract(&doc, Language::En, &manifest).unwrap();
        let mut emotion_sum = 0.0;
        for (i, feature) in manifest.features().iter().enumerate() {
            let val = v.values[i];
            assert!(val >= 0.0 && val.is_finite());
            if feature.name != "avg_sentence_length" {
                assert!(val <= 1.0, "{} = {val}", feature.name);
            }
            if feature.group == FeatureGroup::Emotion {
                emotion_sum += val;
            }
        }
        assert!(emotion_sum <= 8.0);
    }

    #[test]
    fn monotonicity_extra_negation_increases_count() {
        let (set, manifest) = setup();
        let extractor = FeatureExtractor::new(&set).unwrap();
        let base = annotate(&set, "They agreed to the plan quickly.", Language::En);
        let more = annotate(&set, "They never agreed to the plan quickly.", Language::En);
        let a: FeatureVector<f64> = extractor.extract(&base, Language::En, &manifest).unwrap();
        let b: FeatureVector<f64> = extractor.extract(&more, Language::En, &manifest).unwrap();
        let idx = manifest.index_of("negations").unwrap();
        let raw_a = a.values[idx] * a.token_count as f64;
        let raw_b = b.values[idx] * b.token_count as f64;
        assert!(raw_b > raw_a);
    }
}
