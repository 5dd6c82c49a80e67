//! Corpus loading, validation, labeling, deduplication, and splitting.
//!
//! The canonical corpus file is UTF-8, one JSON record per line with fields
//! `id`, `text`, `language`, `genre`, `source`, `collected_on` (ISO-8601
//! date) and optional `stance`. The source-stance map is a two-column TSV
//! (`source<TAB>stance`).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use chrono::NaiveDate;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Uk,
    Ru,
    Ro,
    En,
    Fr,
}

impl Language {
    pub const ALL: [Language; 5] = [
        Language::Uk,
        Language::Ru,
        Language::Ro,
        Language::En,
        Language::Fr,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            Language::Uk => "uk",
            Language::Ru => "ru",
            Language::Ro => "ro",
            Language::En => "en",
            Language::Fr => "fr",
        }
    }
}

impl FromStr for Language {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uk" => Ok(Language::Uk),
            "ru" => Ok(Language::Ru),
            "ro" => Ok(Language::Ro),
            "en" => Ok(Language::En),
            "fr" => Ok(Language::Fr),
            other => Err(Error::Validation(format!("unknown language '{other}'"))),
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Genre {
    Newspaper,
    Telegram,
}

impl FromStr for Genre {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "newspaper" => Ok(Genre::Newspaper),
            "telegram" => Ok(Genre::Telegram),
            other => Err(Error::Validation(format!("unknown genre '{other}'"))),
        }
    }
}

impl fmt::Display for Genre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Genre::Newspaper => "newspaper",
            Genre::Telegram => "telegram",
        })
    }
}

/// Binary stance label. `ProKremlin` is the positive class everywhere
/// (metrics, decision scores, importance directions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stance {
    ProWestern,
    ProKremlin,
}

impl Stance {
    /// {-1, +1} encoding used by the classifiers; pro-Kremlin is +1.
    pub fn signed(&self) -> f64 {
        match self {
            Stance::ProWestern => -1.0,
            Stance::ProKremlin => 1.0,
        }
    }

    pub fn from_signed(v: f64) -> Stance {
        if v > 0.0 {
            Stance::ProKremlin
        } else {
            Stance::ProWestern
        }
    }
}

impl FromStr for Stance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pro_western" => Ok(Stance::ProWestern),
            "pro_kremlin" => Ok(Stance::ProKremlin),
            other => Err(Error::Validation(format!("unknown stance '{other}'"))),
        }
    }
}

impl fmt::Display for Stance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stance::ProWestern => "pro_western",
            Stance::ProKremlin => "pro_kremlin",
        })
    }
}

/// One text with its metadata. `stance` is `None` for unlabeled documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub language: Language,
    pub genre: Genre,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stance: Option<Stance>,
    pub collected_on: NaiveDate,
}

/// Source name → stance, per the corpus-construction convention that labels
/// derive from the outlet, never from the individual text.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceStanceMap {
    entries: BTreeMap<String, Stance>,
}

impl SourceStanceMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, source: impl Into<String>, stance: Stance) {
        self.entries.insert(source.into(), stance);
    }

    pub fn get(&self, source: &str) -> Option<Stance> {
        self.entries.get(source).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Load from two-column TSV: `source<TAB>stance`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn load(path: &Path) -> Result<Self> {
        let display = path.display().to_string();
        let content =
            std::fs::read_to_string(path).map_err(|e| Error::io(display.clone(), e))?;
        let mut map = SourceStanceMap::new();
        for (lineno, line) in content.lines().enumerate() {
            let line_no = lineno + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut parts = trimmed.splitn(2, '\t');
            let source = parts.next().unwrap_or("").trim();
            let stance = parts
                .next()
                .ok_or_else(|| {
                    Error::parse(&display, line_no, "expected two tab-separated columns")
                })?
                .trim();
            if source.is_empty() {
                return Err(Error::parse(&display, line_no, "empty source name"));
            }
            let stance: Stance = stance
                .parse()
                .map_err(|e: Error| Error::parse(&display, line_no, e.to_string()))?;
            if map.entries.insert(source.to_string(), stance).is_some() {
                return Err(Error::parse(
                    &display,
                    line_no,
                    format!("duplicate source '{source}'"),
                ));
            }
        }
        Ok(map)
    }
}

fn normalize_text(text: &str) -> String {
    text.nfc().collect::<String>().trim().to_string()
}

#[derive(Debug, Deserialize)]
struct RawRecord {
    id: String,
    text: String,
    language: String,
    genre: String,
    source: String,
    collected_on: String,
    #[serde(default)]
    stance: Option<String>,
}

/// Load, validate, NFC-normalize, label, and deduplicate a corpus file.
///
/// With `map = Some(..)` the stance of every document is assigned from the
/// source-stance map (an unknown source is an error, overriding any stance
/// present in the file). With `map = None`, stances present in the file are
/// kept as-is and absent ones stay unlabeled.
///
/// Duplicates — records whose normalized text is identical to an earlier
/// record's — are dropped, keeping the first occurrence.
pub fn load_corpus(path: &Path, map: Option<&SourceStanceMap>) -> Result<Vec<Document>> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(display.clone(), e))?;
    parse_corpus(&content, &display, map)
}

/// Parser behind [`load_corpus`]; exposed for in-memory corpora in tests.
pub fn parse_corpus(
    content: &str,
    origin: &str,
    map: Option<&SourceStanceMap>,
) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();
    let mut seen_texts: HashSet<String> = HashSet::new();
    for (lineno, line) in content.lines().enumerate() {
        let line_no = lineno + 1;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(line)
            .map_err(|e| Error::parse(origin, line_no, e.to_string()))?;
        let text = normalize_text(&raw.text);
        if text.is_empty() {
            return Err(Error::Validation(format!(
                "document '{}' has empty text after normalization",
                raw.id
            )));
        }
        if !seen_ids.insert(raw.id.clone()) {
            return Err(Error::Validation(format!("duplicate document id '{}'", raw.id)));
        }
        let language: Language = raw
            .language
            .parse()
            .map_err(|e: Error| Error::parse(origin, line_no, e.to_string()))?;
        let genre: Genre = raw
            .genre
            .parse()
            .map_err(|e: Error| Error::parse(origin, line_no, e.to_string()))?;
        let collected_on = NaiveDate::parse_from_str(&raw.collected_on, "%Y-%m-%d")
            .map_err(|e| Error::parse(origin, line_no, format!("bad collected_on date: {e}")))?;
        let stance = match map {
            Some(m) => Some(m.get(&raw.source).ok_or_else(|| Error::UnknownSource {
                source_name: raw.source.clone(),
                doc_id: raw.id.clone(),
            })?),
            None => match &raw.stance {
                Some(s) => Some(
                    s.parse::<Stance>()
                        .map_err(|e: Error| Error::parse(origin, line_no, e.to_string()))?,
                ),
                None => None,
            },
        };
        // Dedup on identical normalized text, first record wins.
        if !seen_texts.insert(text.clone()) {
            continue;
        }
        docs.push(Document {
            id: raw.id,
            text,
            language,
            genre,
            source: raw.source,
            stance,
            collected_on,
        });
    }
    Ok(docs)
}

/// Serialize documents in the canonical line-delimited format.
pub fn write_corpus(docs: &[Document]) -> String {
    let mut out = String::new();
    for doc in docs {
        out.push_str(&serde_json::to_string(doc).expect("document serializes"));
        out.push('\n');
    }
    out
}

/// Content hash of a corpus: SHA-256 over (id, text) pairs in order.
pub fn corpus_hash(docs: &[Document]) -> String {
    let mut hasher = Sha256::new();
    for doc in docs {
        hasher.update(doc.id.as_bytes());
        hasher.update([0u8]);
        hasher.update(doc.text.as_bytes());
        hasher.update([0u8]);
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Stratification key: always the stance label, optionally language too.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StratifyOn {
    Label,
    LabelAndLanguage,
}

impl Default for StratifyOn {
    fn default() -> Self {
        StratifyOn::Label
    }
}

/// A cross-validation plan: per-fold train/test id lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub folds: Vec<Fold>,
    pub stratify_on: StratifyOn,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fold {
    pub train_ids: Vec<String>,
    pub test_ids: Vec<String>,
}

fn strata<'a>(
    docs: &'a [Document],
    stratify_on: StratifyOn,
) -> Result<BTreeMap<String, Vec<&'a Document>>> {
    let mut groups: BTreeMap<String, Vec<&Document>> = BTreeMap::new();
    for doc in docs {
        let stance = doc.stance.ok_or_else(|| {
            Error::Stratification(format!("document '{}' is unlabeled", doc.id))
        })?;
        let key = match stratify_on {
            StratifyOn::Label => stance.to_string(),
            StratifyOn::LabelAndLanguage => format!("{}|{}", stance, doc.language),
        };
        groups.entry(key).or_default().push(doc);
    }
    Ok(groups)
}

/// Stratified k-fold split. Deterministic for a fixed seed; per-fold class
/// counts differ from an even spread by at most one document.
pub fn stratified_kfold(docs: &[Document], k: usize, seed: u64) -> Result<SplitPlan> {
    stratified_kfold_on(docs, k, seed, StratifyOn::Label)
}

pub fn stratified_kfold_on(
    docs: &[Document],
    k: usize,
    seed: u64,
    stratify_on: StratifyOn,
) -> Result<SplitPlan> {
    if k < 2 {
        return Err(Error::Stratification(format!("k must be at least 2, got {k}")));
    }
    let groups = strata(docs, stratify_on)?;
    for (key, members) in &groups {
        if members.len() < k {
            return Err(Error::Stratification(format!(
                "class '{key}' has {} members, fewer than k={k}",
                members.len()
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test_sets: Vec<Vec<String>> = vec![Vec::new(); k];
    // Shuffle each stratum and deal its members round-robin across folds.
    for members in groups.values() {
        let mut ids: Vec<&str> = members.iter().map(|d| d.id.as_str()).collect();
        ids.shuffle(&mut rng);
        for (i, id) in ids.iter().enumerate() {
            test_sets[i % k].push(id.to_string());
        }
    }
    let all_ids: Vec<String> = docs.iter().map(|d| d.id.clone()).collect();
    let folds = test_sets
        .into_iter()
        .map(|test_ids| {
            let test_set: HashSet<&str> = test_ids.iter().map(String::as_str).collect();
            let train_ids = all_ids
                .iter()
                .filter(|id| !test_set.contains(id.as_str()))
                .cloned()
                .collect();
            Fold {
                train_ids,
                test_ids,
            }
        })
        .collect();
    Ok(SplitPlan {
        folds,
        stratify_on,
        seed,
    })
}

/// Single stratified holdout split (`test_fraction` of each class goes to
/// test, rounded down but at least one per class).
pub fn stratified_holdout(
    docs: &[Document],
    test_fraction: f64,
    seed: u64,
) -> Result<SplitPlan> {
    if !(0.0..1.0).contains(&test_fraction) || test_fraction <= 0.0 {
        return Err(Error::Stratification(format!(
            "test fraction must be in (0, 1), got {test_fraction}"
        )));
    }
    let groups = strata(docs, StratifyOn::Label)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test_ids = Vec::new();
    for members in groups.values() {
        if members.len() < 2 {
            return Err(Error::Stratification(
                "every class needs at least 2 members for a holdout split".into(),
            ));
        }
        let mut ids: Vec<&str> = members.iter().map(|d| d.id.as_str()).collect();
        ids.shuffle(&mut rng);
        let n_test = ((members.len() as f64 * test_fraction).floor() as usize).max(1);
        test_ids.extend(ids[..n_test].iter().map(|s| s.to_string()));
    }
    let test_set: HashSet<&str> = test_ids.iter().map(String::as_str).collect();
    let train_ids = docs
        .iter()
        .filter(|d| !test_set.contains(d.id.as_str()))
        .map(|d| d.id.clone())
        .collect();
    Ok(SplitPlan {
        folds: vec![Fold {
            train_ids,
            test_ids,
        }],
        stratify_on: StratifyOn::Label,
        seed,
    })
}

/// Subset filter. Empty sets act as wildcards; document order is preserved.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetFilter {
    #[serde(default)]
    pub languages: Vec<Language>,
    #[serde(default)]
    pub genres: Vec<Genre>,
    #[serde(default)]
    pub stances: Vec<Stance>,
}

impl SubsetFilter {
    pub fn matches(&self, doc: &Document) -> bool {
        (self.languages.is_empty() || self.languages.contains(&doc.language))
            && (self.genres.is_empty() || self.genres.contains(&doc.genre))
            && (self.stances.is_empty()
                || doc.stance.map_or(false, |s| self.stances.contains(&s)))
    }
}

/// Documents matching all provided filters, original order preserved.
pub fn filter_subset<'a>(docs: &'a [Document], filter: &SubsetFilter) -> Vec<&'a Document> {
    docs.iter().filter(|d| filter.matches(d)).collect()
}

/// Index from document id to position, for resolving split plans.
pub fn index_by_id(docs: &[Document]) -> HashMap<&str, usize> {
    docs.iter()
        .enumerate()
        .map(|(i, d)| (d.id.as_str(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, text: &str, source: &str) -> String {
        format!(
            r#"{{"id":"{id}","text":"{text}","language":"en","genre":"newspaper","source":"{source}","collected_on":"2022-03-01"}}"#
        )
    }

    fn doc(id: &str, stance: Stance) -> Document {
        Document {
            id: id.to_string(),
            text: format!("text {id}"),
            language: Language::En,
            genre: Genre::Newspaper,
            source: "src".into(),
            stance: Some(stance),
            collected_on: NaiveDate::from_ymd_opt(2022, 3, 1).unwrap(),
        }
    }

    fn balanced_docs(n: usize) -> Vec<Document> {
        (0..n)
            .map(|i| {
                doc(
                    &format!("d{i}"),
                    if i % 2 == 0 {
                        Stance::ProWestern
                    } else {
                        Stance::ProKremlin
                    },
                )
            })
            .collect()
    }

    #[test]
    fn dedup_keeps_first_of_identical_texts() {
        let content = [
            record("a", "same text.", "s1"),
            record("b", "same text.", "s1"),
            record("c", "other text.", "s1"),
        ]
        .join("\n");
        let docs = parse_corpus(&content, "test", None).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].id, "a");
        assert_eq!(docs[1].id, "c");
    }

    #[test]
    fn dedup_is_idempotent() {
        let content = [
            record("a", "same text.", "s1"),
            record("b", "same text.", "s1"),
            record("c", "other text.", "s1"),
        ]
        .join("\n");
        let docs = parse_corpus(&content, "test", None).unwrap();
        let reserialized = write_corpus(&docs);
        let again = parse_corpus(&reserialized, "test", None).unwrap();
        assert_eq!(docs, again);
    }

    #[test]
    fn stance_assigned_from_source_map() {
        let mut map = SourceStanceMap::new();
        map.insert("Ria news", Stance::ProKremlin);
        let content = record("a", "Deployment continues.", "Ria news");
        let docs = parse_corpus(&content, "test", Some(&map)).unwrap();
        assert_eq!(docs[0].stance, Some(Stance::ProKremlin));
    }

    #[test]
    fn unknown_source_is_an_error_when_labeling() {
        let map = SourceStanceMap::new();
        let content = record("a", "Deployment continues.", "Mystery Outlet");
        let err = parse_corpus(&content, "test", Some(&map)).unwrap_err();
        assert!(matches!(err, Error::UnknownSource { ref source_name, .. } if source_name == "Mystery Outlet"));
    }

    #[test]
    fn empty_text_names_the_document() {
        let content = record("empty-one", "   ", "s1");
        let err = parse_corpus(&content, "test", None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("empty-one"), "message was: {msg}");
    }

    #[test]
    fn malformed_record_reports_line_number() {
        let content = format!("{}\nnot json at all", record("a", "ok text.", "s1"));
        let err = parse_corpus(&content, "test", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "got: {err}");
    }

    #[test]
    fn nfc_normalization_applied() {
        // "é" as e + combining acute must normalize to the precomposed form.
        let content = r#"{"id":"a","text":"déjà vu","language":"fr","genre":"newspaper","source":"s","collected_on":"2022-03-01"}"#;
        let docs = parse_corpus(content, "test", None).unwrap();
        assert_eq!(docs[0].text, "déjà vu");
    }

    #[test]
    fn kfold_exact_divisibility() {
        let docs = balanced_docs(100);
        let plan = stratified_kfold(&docs, 5, 7).unwrap();
        assert_eq!(plan.folds.len(), 5);
        for fold in &plan.folds {
            assert_eq!(fold.test_ids.len(), 20);
            assert_eq!(fold.train_ids.len(), 80);
            let by_id = index_by_id(&docs);
            let kremlin = fold
                .test_ids
                .iter()
                .filter(|id| docs[by_id[id.as_str()]].stance == Some(Stance::ProKremlin))
                .count();
            assert_eq!(kremlin, 10);
        }
    }

    #[test]
    fn kfold_fold_sizes_on_large_corpus() {
        // 18229 documents split 5 ways: test folds of 3645 or 3646.
        let docs = balanced_docs(18229);
        let plan = stratified_kfold(&docs, 5, 3).unwrap();
        let mut sizes: Vec<usize> = plan.folds.iter().map(|f| f.test_ids.len()).collect();
        sizes.sort_unstable();
        assert!(sizes.iter().all(|&s| s == 3645 || s == 3646), "sizes: {sizes:?}");
        assert_eq!(sizes.iter().sum::<usize>(), 18229);
    }

    #[test]
    fn kfold_deterministic_and_seed_sensitive() {
        let docs = balanced_docs(50);
        let a = stratified_kfold(&docs, 5, 11).unwrap();
        let b = stratified_kfold(&docs, 5, 11).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        let c = stratified_kfold(&docs, 5, 12).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn kfold_folds_partition_ids() {
        let docs = balanced_docs(37);
        let plan = stratified_kfold(&docs, 5, 2).unwrap();
        let mut seen: Vec<&str> = Vec::new();
        for fold in &plan.folds {
            for id in &fold.test_ids {
                seen.push(id);
            }
            // No id in both train and test of the same fold.
            let train: HashSet<&str> = fold.train_ids.iter().map(String::as_str).collect();
            assert!(fold.test_ids.iter().all(|id| !train.contains(id.as_str())));
            assert_eq!(fold.train_ids.len() + fold.test_ids.len(), docs.len());
        }
        seen.sort_unstable();
        let mut all: Vec<&str> = docs.iter().map(|d| d.id.as_str()).collect();
        all.sort_unstable();
        assert_eq!(seen, all);
    }

    #[test]
    fn kfold_class_balance_within_one() {
        // 23 western / 17 kremlin, k=4.
        let mut docs = Vec::new();
        for i in 0..23 {
            docs.push(doc(&format!("w{i}"), Stance::ProWestern));
        }
        for i in 0..17 {
            docs.push(doc(&format!("k{i}"), Stance::ProKremlin));
        }
        let plan = stratified_kfold(&docs, 4, 5).unwrap();
        let by_id = index_by_id(&docs);
        for fold in &plan.folds {
            let kremlin = fold
                .test_ids
                .iter()
                .filter(|id| docs[by_id[id.as_str()]].stance == Some(Stance::ProKremlin))
                .count() as isize;
            // 17/4 = 4.25 → 4 or 5 per fold.
            assert!((4..=5).contains(&kremlin), "kremlin per fold: {kremlin}");
        }
    }

    #[test]
    fn kfold_small_class_rejected() {
        let mut docs = balanced_docs(10);
        docs.retain(|d| d.stance == Some(Stance::ProWestern) || d.id == "d1");
        let err = stratified_kfold(&docs, 5, 0).unwrap_err();
        assert!(matches!(err, Error::Stratification(_)));
    }

    #[test]
    fn holdout_split_sizes() {
        let docs = balanced_docs(100);
        let plan = stratified_holdout(&docs, 0.1, 9).unwrap();
        assert_eq!(plan.folds.len(), 1);
        assert_eq!(plan.folds[0].test_ids.len(), 10);
        assert_eq!(plan.folds[0].train_ids.len(), 90);
    }

    #[test]
    fn filter_matches_all_criteria() {
        let mut docs = balanced_docs(6);
        docs[0].genre = Genre::Telegram;
        docs[1].language = Language::Fr;
        let newspaper_only = filter_subset(
            &docs,
            &SubsetFilter {
                genres: vec![Genre::Newspaper],
                ..Default::default()
            },
        );
        assert_eq!(newspaper_only.len(), 5);
        let fr_only = filter_subset(
            &docs,
            &SubsetFilter {
                languages: vec![Language::Fr],
                stances: vec![Stance::ProWestern, Stance::ProKremlin],
                ..Default::default()
            },
        );
        assert_eq!(fr_only.len(), 1);
        assert_eq!(fr_only[0].id, "d1");
    }

    #[test]
    fn empty_filter_is_identity() {
        let docs = balanced_docs(4);
        let all = filter_subset(&docs, &SubsetFilter::default());
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn source_map_loads_tsv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("map.tsv");
        std::fs::write(&path, "# comment\nRia news\tpro_kremlin\nBBC\tpro_western\n").unwrap();
        let map = SourceStanceMap::load(&path).unwrap();
        assert_eq!(map.get("Ria news"), Some(Stance::ProKremlin));
        assert_eq!(map.get("BBC"), Some(Stance::ProWestern));
        assert_eq!(map.len(), 2);
    }
}
