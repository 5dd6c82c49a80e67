//! Metrics, cross-validation, and the declarative experiment runner.
//!
//! Pro-Kremlin is the positive class: a false positive is a pro-Western
//! text flagged as propaganda.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::annotate::Annotator;
use crate::classify::{
    load_embedding_table, train, Hyperparameters, ModelKind, ModelManifest,
    TrainingData,
};
use crate::corpus::{
    corpus_hash, filter_subset, stratified_holdout, stratified_kfold, Document, Genre, Language,
    Stance, SubsetFilter,
};
use crate::error::{Error, Result};
use crate::features::{FeatureExtractor, FeatureManifest, FeatureMode};
use crate::lexicon::LexiconSet;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Binary confusion counts; pro-Kremlin is the positive class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn add(&mut self, other: &ConfusionMatrix) {
        self.tp += other.tp;
        self.fp += other.fp;
        self.fn_ += other.fn_;
        self.tn += other.tn;
    }

    pub fn from_labels(actual: &[Stance], predicted: &[Stance]) -> Self {
        let mut cm = ConfusionMatrix::default();
        for (a, p) in actual.iter().zip(predicted) {
            match (a, p) {
                (Stance::ProKremlin, Stance::ProKremlin) => cm.tp += 1,
                (Stance::ProWestern, Stance::ProKremlin) => cm.fp += 1,
                (Stance::ProKremlin, Stance::ProWestern) => cm.fn_ += 1,
                (Stance::ProWestern, Stance::ProWestern) => cm.tn += 1,
            }
        }
        cm
    }
}

/// F1 of the positive class. Defined as 0 when tp = 0 but some positives
/// exist; an all-zero matrix is a metric error.
pub fn f1_score(cm: &ConfusionMatrix) -> Result<f64> {
    if cm.total() == 0 {
        return Err(Error::Metric("confusion matrix is all zeros".into()));
    }
    if cm.tp + cm.fp == 0 && cm.tp + cm.fn_ == 0 {
        // No positive predictions and no positive labels.
        return Ok(0.0);
    }
    if cm.tp == 0 {
        return Ok(0.0);
    }
    let precision = cm.tp as f64 / (cm.tp + cm.fp) as f64;
    let recall = cm.tp as f64 / (cm.tp + cm.fn_) as f64;
    Ok(2.0 * precision * recall / (precision + recall))
}

/// Cohen's kappa: (p_o − p_e) / (1 − p_e), with κ = 0 when p_e = 1.
pub fn cohens_kappa(cm: &ConfusionMatrix) -> Result<f64> {
    let n = cm.total();
    if n == 0 {
        return Err(Error::Metric("confusion matrix is all zeros".into()));
    }
    let n = n as f64;
    let p_o = (cm.tp + cm.tn) as f64 / n;
    let pred_pos = (cm.tp + cm.fp) as f64;
    let actual_pos = (cm.tp + cm.fn_) as f64;
    let pred_neg = (cm.fn_ + cm.tn) as f64;
    let actual_neg = (cm.fp + cm.tn) as f64;
    let p_e = (pred_pos * actual_pos + pred_neg * actual_neg) / (n * n);
    if (1.0 - p_e).abs() < 1e-15 {
        return Ok(0.0);
    }
    Ok((p_o - p_e) / (1.0 - p_e))
}

/// How an experiment selects its test set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplitSpec {
    /// Stratified k-fold cross-validation over the train selection.
    Kfold { k: usize },
    /// Single stratified holdout (e.g. 0.1 for a 90/10 split).
    Holdout { test_fraction: f64 },
    /// Train on the full train selection; test on a separate filter.
    FixedTest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub seed: u64,
    pub model: ModelKind,
    pub feature_mode: FeatureMode,
    pub split: SplitSpec,
    pub train_filter: SubsetFilter,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_filter: Option<SubsetFilter>,
    /// Cap on fixed-test size (stratified, seeded); the reference French
    /// test size is corpus-dependent, so it stays a free parameter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_test_docs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperparameters: Option<Hyperparameters>,
    /// Embedding table path; required for `embedding_linear`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embeddings: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_toml(content: &str, origin: &str) -> Result<Self> {
        toml::from_str(content)
            .map_err(|e| Error::Config(format!("bad experiment config {origin}: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        match &self.split {
            SplitSpec::Kfold { k } if *k < 2 => {
                return Err(Error::Config(format!("split.k must be at least 2, got {k}")))
            }
            SplitSpec::Holdout { test_fraction } if !(*test_fraction > 0.0 && *test_fraction < 1.0) => {
                return Err(Error::Config(format!(
                    "split.test_fraction must be in (0, 1), got {test_fraction}"
                )))
            }
            SplitSpec::FixedTest if self.test_filter.is_none() => {
                return Err(Error::Config(
                    "split kind 'fixed_test' requires a [test_filter] section".into(),
                ))
            }
            _ => {}
        }
        if let Some(h) = &self.hyperparameters {
            if h.kind() != self.model {
                return Err(Error::Config(format!(
                    "hyperparameters are for '{}' but model is '{}'",
                    h.kind(),
                    self.model
                )));
            }
        }
        if self.model == ModelKind::EmbeddingLinear && self.embeddings.is_none() {
            return Err(Error::Config(
                "model 'embedding_linear' requires the 'embeddings' path field".into(),
            ));
        }
        Ok(())
    }
}

const NEWSPAPER_LANGS_4: [Language; 4] = [Language::Ru, Language::Uk, Language::Ro, Language::En];

/// The shipped experiment presets.
pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let newspapers = |languages: Vec<Language>| SubsetFilter {
        languages,
        genres: vec![Genre::Newspaper],
        stances: vec![],
    };
    let base = |name: &str, split: SplitSpec, train: SubsetFilter| ExperimentConfig {
        name: name.to_string(),
        seed: 0,
        model: ModelKind::SvmRbf,
        feature_mode: FeatureMode::LinguisticOnly,
        split,
        train_filter: train,
        test_filter: None,
        max_test_docs: None,
        hyperparameters: None,
        embeddings: None,
    };
    match name {
        // Four-language newspaper training, in-domain 5-fold evaluation.
        "exp1_1" => Ok(base(
            "exp1_1",
            SplitSpec::Kfold { k: 5 },
            newspapers(NEWSPAPER_LANGS_4.to_vec()),
        )),
        // Same training selection, tested on held-out French newspapers.
        "exp1_2" => {
            let mut cfg = base(
                "exp1_2",
                SplitSpec::FixedTest,
                newspapers(NEWSPAPER_LANGS_4.to_vec()),
            );
            cfg.test_filter = Some(newspapers(vec![Language::Fr]));
            Ok(cfg)
        }
        // Five-language newspaper training, in-domain 5-fold evaluation.
        "exp2_1" => Ok(base(
            "exp2_1",
            SplitSpec::Kfold { k: 5 },
            newspapers(Language::ALL.to_vec()),
        )),
        // Five-language newspaper training, tested on Telegram posts.
        "exp2_2" => {
            let mut cfg = base(
                "exp2_2",
                SplitSpec::FixedTest,
                newspapers(Language::ALL.to_vec()),
            );
            cfg.test_filter = Some(SubsetFilter {
                languages: vec![],
                genres: vec![Genre::Telegram],
                stances: vec![],
            });
            Ok(cfg)
        }
        // Newspapers and Telegram combined, in-domain 5-fold evaluation.
        "exp3" => Ok(base(
            "exp3",
            SplitSpec::Kfold { k: 5 },
            SubsetFilter::default(),
        )),
        other => Err(Error::Config(format!(
            "unknown preset '{other}' (expected exp1_1, exp1_2, exp2_1, exp2_2, exp3)"
        ))),
    }
}

pub const PRESET_NAMES: [&str; 5] = ["exp1_1", "exp1_2", "exp2_1", "exp2_2", "exp3"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LanguageRow {
    pub language: Language,
    pub confusion: ConfusionMatrix,
    pub f1: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldReport {
    pub fold: usize,
    pub confusion: ConfusionMatrix,
    pub f1: f64,
    pub kappa: f64,
    pub per_language: Vec<LanguageRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceHashes {
    pub corpus: String,
    pub glossary: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub folds: Vec<FoldReport>,
    /// Metrics recomputed from the summed per-fold confusions.
    pub aggregate: FoldReport,
    /// Mean of the per-fold metrics.
    pub mean_f1: f64,
    pub mean_kappa: f64,
    /// Index (into `folds`) of the best fold by F1, ties to kappa then index.
    pub best_fold: usize,
    pub resource_hashes: ResourceHashes,
}

fn metrics_for(cm: &ConfusionMatrix) -> Result<(f64, f64)> {
    Ok((f1_score(cm)?, cohens_kappa(cm)?))
}

fn language_rows(
    langs: &[Language],
    actual: &[Stance],
    predicted: &[Stance],
) -> Result<Vec<LanguageRow>> {
    let mut by_lang: BTreeMap<Language, (Vec<Stance>, Vec<Stance>)> = BTreeMap::new();
    for ((lang, a), p) in langs.iter().zip(actual).zip(predicted) {
        let entry = by_lang.entry(*lang).or_default();
        entry.0.push(*a);
        entry.1.push(*p);
    }
    let mut rows = Vec::new();
    for (language, (a, p)) in by_lang {
        let confusion = ConfusionMatrix::from_labels(&a, &p);
        let (f1, kappa) = metrics_for(&confusion)?;
        rows.push(LanguageRow {
            language,
            confusion,
            f1,
            kappa,
        });
    }
    Ok(rows)
}

/// Aggregate per-language breakdown of a report: rows sum to the aggregate
/// confusion matrix.
pub fn per_language_breakdown(report: &ExperimentReport) -> Vec<LanguageRow> {
    let mut by_lang: BTreeMap<Language, ConfusionMatrix> = BTreeMap::new();
    for fold in &report.folds {
        for row in &fold.per_language {
            by_lang.entry(row.language).or_default().add(&row.confusion);
        }
    }
    by_lang
        .into_iter()
        .map(|(language, confusion)| {
            let f1 = f1_score(&confusion).unwrap_or(0.0);
            let kappa = cohens_kappa(&confusion).unwrap_or(0.0);
            LanguageRow {
                language,
                confusion,
                f1,
                kappa,
            }
        })
        .collect()
}

/// Everything the runner derives from corpus + lexicons once per run.
struct PreparedFeatures<S: Scalar> {
    matrix: Matrix<S>,
    by_id: BTreeMap<String, usize>,
    manifest: ModelManifest,
}

fn prepare_rows<S: Scalar>(
    cfg: &ExperimentConfig,
    docs: &[&Document],
    lexicons: &LexiconSet,
) -> Result<PreparedFeatures<S>> {
    if cfg.model == ModelKind::EmbeddingLinear {
        let path = cfg.embeddings.as_ref().ok_or_else(|| {
            Error::Config("model 'embedding_linear' requires the 'embeddings' path field".into())
        })?;
        let table = load_embedding_table::<S>(path)?;
        let ids: Vec<String> = docs.iter().map(|d| d.id.clone()).collect();
        let matrix = table.rows_for(&ids)?;
        let by_id = ids.into_iter().enumerate().map(|(i, id)| (id, i)).collect();
        Ok(PreparedFeatures {
            matrix,
            by_id,
            manifest: ModelManifest::Embedding {
                dimension: table.dimension(),
            },
        })
    } else {
        let annotator = Annotator::new(lexicons)?;
        let extractor = FeatureExtractor::new(lexicons)?;
        let manifest = FeatureManifest::full(&lexicons.glossary).with_mode(cfg.feature_mode);
        let annotated = annotator.annotate_all(&docs.iter().map(|d| (*d).clone()).collect::<Vec<_>>())?;
        let pairs: Vec<_> = annotated
            .into_iter()
            .zip(docs.iter().map(|d| d.language))
            .collect();
        let batch = extractor.batch_extract::<S>(&pairs, &manifest);
        if let Some((id, err)) = batch.errors.into_iter().next() {
            return Err(Error::Extraction {
                doc_id: id,
                message: err.to_string(),
            });
        }
        let by_id = batch
            .ids
            .into_iter()
            .enumerate()
            .map(|(i, id)| (id, i))
            .collect();
        Ok(PreparedFeatures {
            matrix: batch.matrix,
            by_id,
            manifest: ModelManifest::Features(manifest),
        })
    }
}

fn labeled_stance(doc: &Document) -> Result<Stance> {
    doc.stance.ok_or_else(|| {
        Error::Validation(format!("document '{}' is unlabeled", doc.id))
    })
}

/// Stratified, seeded truncation of a document list.
fn cap_test_docs<'a>(docs: Vec<&'a Document>, max: usize, seed: u64) -> Vec<&'a Document> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    if docs.len() <= max {
        return docs;
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x7e57);
    let mut by_class: BTreeMap<String, Vec<&Document>> = BTreeMap::new();
    for d in docs {
        by_class
            .entry(d.stance.map(|s| s.to_string()).unwrap_or_default())
            .or_default()
            .push(d);
    }
    for group in by_class.values_mut() {
        group.shuffle(&mut rng);
    }
    let mut out = Vec::with_capacity(max);
    let mut round = 0;
    while out.len() < max {
        let mut took = false;
        for group in by_class.values() {
            if out.len() >= max {
                break;
            }
            if let Some(d) = group.get(round) {
                out.push(*d);
                took = true;
            }
        }
        if !took {
            break;
        }
        round += 1;
    }
    out
}

/// Execute one experiment: filter → annotate → extract → train → predict →
/// metrics, per fold.
pub fn run_experiment<S: Scalar>(
    cfg: &ExperimentConfig,
    corpus: &[Document],
    lexicons: &LexiconSet,
) -> Result<ExperimentReport> {
    cfg.validate()?;
    let train_docs: Vec<&Document> = filter_subset(corpus, &cfg.train_filter);
    if train_docs.is_empty() {
        return Err(Error::Config(format!(
            "experiment '{}': train filter selects no documents",
            cfg.name
        )));
    }
    for doc in &train_docs {
        labeled_stance(doc)?;
    }

    // (train ids, test ids) per fold.
    let folds: Vec<(Vec<String>, Vec<String>)> = match &cfg.split {
        SplitSpec::Kfold { k } => {
            let owned: Vec<Document> = train_docs.iter().map(|d| (*d).clone()).collect();
            stratified_kfold(&owned, *k, cfg.seed)?
                .folds
                .into_iter()
                .map(|f| (f.train_ids, f.test_ids))
                .collect()
        }
        SplitSpec::Holdout { test_fraction } => {
            let owned: Vec<Document> = train_docs.iter().map(|d| (*d).clone()).collect();
            stratified_holdout(&owned, *test_fraction, cfg.seed)?
                .folds
                .into_iter()
                .map(|f| (f.train_ids, f.test_ids))
                .collect()
        }
        SplitSpec::FixedTest => {
            let filter = cfg.test_filter.as_ref().expect("validated");
            let train_ids: std::collections::HashSet<&str> =
                train_docs.iter().map(|d| d.id.as_str()).collect();
            // Train/test id sets must be disjoint.
            let mut test_docs: Vec<&Document> = filter_subset(corpus, filter)
                .into_iter()
                .filter(|d| !train_ids.contains(d.id.as_str()))
                .collect();
            if let Some(max) = cfg.max_test_docs {
                test_docs = cap_test_docs(test_docs, max, cfg.seed);
            }
            if test_docs.is_empty() {
                return Err(Error::Config(format!(
                    "experiment '{}': test filter selects no documents (after excluding training ids)",
                    cfg.name
                )));
            }
            for doc in &test_docs {
                labeled_stance(doc)?;
            }
            vec![(
                train_docs.iter().map(|d| d.id.clone()).collect(),
                test_docs.iter().map(|d| d.id.clone()).collect(),
            )]
        }
    };

    // Feature rows for every document involved in any fold.
    let mut involved: Vec<&Document> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let by_id: BTreeMap<&str, &Document> = corpus.iter().map(|d| (d.id.as_str(), d)).collect();
    for (train_ids, test_ids) in &folds {
        for id in train_ids.iter().chain(test_ids) {
            if seen.insert(id.as_str()) {
                involved.push(by_id[id.as_str()]);
            }
        }
    }
    let prepared = prepare_rows::<S>(cfg, &involved, lexicons)?;
    let hyper = cfg
        .hyperparameters
        .clone()
        .unwrap_or_else(|| Hyperparameters::defaults(cfg.model));
    let corpus_digest = {
        let owned: Vec<Document> = involved.iter().map(|d| (*d).clone()).collect();
        corpus_hash(&owned)
    };

    let mut fold_reports = Vec::with_capacity(folds.len());
    for (fold_idx, (train_ids, test_ids)) in folds.iter().enumerate() {
        let rows_of = |ids: &[String]| -> Result<(Matrix<S>, Vec<Stance>, Vec<Language>)> {
            let mut indices = Vec::with_capacity(ids.len());
            let mut stances = Vec::with_capacity(ids.len());
            let mut langs = Vec::with_capacity(ids.len());
            for id in ids {
                let idx = *prepared.by_id.get(id).ok_or_else(|| {
                    Error::Validation(format!("no feature row for document '{id}'"))
                })?;
                indices.push(idx);
                let doc = by_id[id.as_str()];
                stances.push(labeled_stance(doc)?);
                langs.push(doc.language);
            }
            Ok((prepared.matrix.select_rows(&indices), stances, langs))
        };
        let (train_rows, train_labels, _) = rows_of(train_ids)?;
        let (test_rows, test_labels, test_langs) = rows_of(test_ids)?;
        let data = TrainingData {
            rows: &train_rows,
            labels: &train_labels,
            manifest: prepared.manifest.clone(),
            corpus_hash: corpus_digest.clone(),
        };
        let model = train(&data, &hyper, cfg.seed)?;
        let predictions = model.predict(&test_rows)?;
        let confusion = ConfusionMatrix::from_labels(&test_labels, &predictions.labels);
        let (f1, kappa) = metrics_for(&confusion)?;
        fold_reports.push(FoldReport {
            fold: fold_idx + 1,
            confusion,
            f1,
            kappa,
            per_language: language_rows(&test_langs, &test_labels, &predictions.labels)?,
        });
    }

    let mut total = ConfusionMatrix::default();
    for fold in &fold_reports {
        total.add(&fold.confusion);
    }
    let (agg_f1, agg_kappa) = metrics_for(&total)?;
    let aggregate = FoldReport {
        fold: 0,
        confusion: total,
        f1: agg_f1,
        kappa: agg_kappa,
        per_language: Vec::new(),
    };
    let n = fold_reports.len() as f64;
    let mean_f1 = fold_reports.iter().map(|f| f.f1).sum::<f64>() / n;
    let mean_kappa = fold_reports.iter().map(|f| f.kappa).sum::<f64>() / n;
    let best_fold = fold_reports
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            a.f1.partial_cmp(&b.f1)
                .unwrap()
                .then(a.kappa.partial_cmp(&b.kappa).unwrap())
                .then(ib.cmp(ia))
        })
        .map(|(i, _)| i)
        .unwrap_or(0);

    Ok(ExperimentReport {
        config: cfg.clone(),
        folds: fold_reports,
        aggregate,
        mean_f1,
        mean_kappa,
        best_fold,
        resource_hashes: ResourceHashes {
            corpus: corpus_digest,
            glossary: lexicons.glossary.version_hash(),
        },
    })
}

/// Summary CSV mirroring the reference results-table columns
/// (algorithm, Cohen's kappa, F1, false positives, false negatives), one row
/// per fold plus mean, best-fold, and aggregate rows.
pub fn report_summary_csv(report: &ExperimentReport) -> String {
    let mut out = String::from("algorithm,fold,kappa,f1,fp,fn\n");
    let algo = report.config.model.name();
    for fold in &report.folds {
        out.push_str(&format!(
            "{algo},{},{},{},{},{}\n",
            fold.fold, fold.kappa, fold.f1, fold.confusion.fp, fold.confusion.fn_
        ));
    }
    out.push_str(&format!(
        "{algo},mean,{},{},,\n",
        report.mean_kappa, report.mean_f1
    ));
    let best = &report.folds[report.best_fold];
    out.push_str(&format!(
        "{algo},best,{},{},{},{}\n",
        best.kappa, best.f1, best.confusion.fp, best.confusion.fn_
    ));
    out.push_str(&format!(
        "{algo},aggregate,{},{},{},{}\n",
        report.aggregate.kappa,
        report.aggregate.f1,
        report.aggregate.confusion.fp,
        report.aggregate.confusion.fn_
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic::{generate, SyntheticConfig};

    fn cm(tp: usize, fp: usize, fn_: usize, tn: usize) -> ConfusionMatrix {
        ConfusionMatrix { tp, fp, fn_, tn }
    }

    #[test]
    fn f1_hand_derived_values() {
        // P = R = 50/60, F1 = 5/6.
        let v = f1_score(&cm(50, 10, 10, 50)).unwrap();
        assert!((v - 5.0 / 6.0).abs() < 1e-12);
        assert_eq!(f1_score(&cm(30, 0, 0, 70)).unwrap(), 1.0);
        assert_eq!(f1_score(&cm(0, 0, 5, 5)).unwrap(), 0.0);
        assert!(f1_score(&cm(0, 0, 0, 0)).is_err());
    }

    #[test]
    fn kappa_hand_derived_values() {
        // p_o = 5/6, p_e = 1/2, kappa = 2/3.
        let v = cohens_kappa(&cm(50, 10, 10, 50)).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(cohens_kappa(&cm(30, 0, 0, 70)).unwrap(), 1.0);
        // Constant positive prediction on balanced labels.
        assert_eq!(cohens_kappa(&cm(10, 10, 0, 0)).unwrap(), 0.0);
    }

    #[test]
    fn kappa_symmetry_under_class_swap() {
        for (tp, fp, fn_, tn) in [(50, 10, 10, 50), (3, 7, 2, 9), (1, 0, 5, 20)] {
            let a = cohens_kappa(&cm(tp, fp, fn_, tn)).unwrap();
            let b = cohens_kappa(&cm(tn, fn_, fp, tp)).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn kappa_is_one_iff_no_errors() {
        assert_eq!(cohens_kappa(&cm(5, 0, 0, 7)).unwrap(), 1.0);
        for bad in [cm(5, 1, 0, 7), cm(5, 0, 1, 7)] {
            assert!(cohens_kappa(&bad).unwrap() < 1.0);
        }
    }

    #[test]
    fn kappa_bounded_by_observed_agreement() {
        for (tp, fp, fn_, tn) in [(50, 10, 10, 50), (20, 5, 15, 60), (9, 9, 1, 1)] {
            let c = cm(tp, fp, fn_, tn);
            let kappa = cohens_kappa(&c).unwrap();
            let p_o = (tp + tn) as f64 / c.total() as f64;
            assert!(kappa <= p_o + 1e-12);
        }
    }

    fn small_corpus() -> (Vec<Document>, LexiconSet) {
        let lexicons = crate::lexicon::builtin().unwrap().0;
        let config = SyntheticConfig {
            n_docs: 60,
            languages: vec![Language::En],
            genre: Genre::Newspaper,
            sentences_per_doc: (4, 7),
            words_per_sentence: (6, 10),
            seed: 5,
            ..Default::default()
        };
        (generate(&config, &lexicons), lexicons)
    }

    fn quick_config(name: &str) -> ExperimentConfig {
        ExperimentConfig {
            name: name.into(),
            seed: 3,
            model: ModelKind::Logistic,
            feature_mode: FeatureMode::LinguisticPlusKeywords,
            split: SplitSpec::Kfold { k: 3 },
            train_filter: SubsetFilter::default(),
            test_filter: None,
            max_test_docs: None,
            hyperparameters: None,
            embeddings: None,
        }
    }

    #[test]
    fn planted_corpus_is_separable() {
        let (docs, lexicons) = small_corpus();
        let report = run_experiment::<f64>(&quick_config("sep"), &docs, &lexicons).unwrap();
        assert!(
            report.aggregate.f1 >= 0.95,
            "aggregate F1 = {}",
            report.aggregate.f1
        );
    }

    #[test]
    fn report_is_deterministic_for_fixed_seed() {
        let (docs, lexicons) = small_corpus();
        let a = run_experiment::<f64>(&quick_config("d"), &docs, &lexicons).unwrap();
        let b = run_experiment::<f64>(&quick_config("d"), &docs, &lexicons).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn aggregate_matches_summed_folds() {
        let (docs, lexicons) = small_corpus();
        let report = run_experiment::<f64>(&quick_config("agg"), &docs, &lexicons).unwrap();
        let mut total = ConfusionMatrix::default();
        for fold in &report.folds {
            total.add(&fold.confusion);
            // Per-language rows partition each fold's confusion.
            let mut lang_total = ConfusionMatrix::default();
            for row in &fold.per_language {
                lang_total.add(&row.confusion);
            }
            assert_eq!(lang_total, fold.confusion);
        }
        assert_eq!(total, report.aggregate.confusion);
        assert_eq!(
            f1_score(&total).unwrap(),
            report.aggregate.f1,
            "aggregate F1 recomputation"
        );
    }

    #[test]
    fn fold_train_test_disjoint() {
        let (docs, lexicons) = small_corpus();
        let cfg = quick_config("disjoint");
        let owned: Vec<Document> = filter_subset(&docs, &cfg.train_filter)
            .into_iter()
            .cloned()
            .collect();
        let plan = stratified_kfold(&owned, 3, cfg.seed).unwrap();
        for fold in &plan.folds {
            let train: std::collections::HashSet<&str> =
                fold.train_ids.iter().map(String::as_str).collect();
            assert!(fold.test_ids.iter().all(|id| !train.contains(id.as_str())));
        }
    }

    #[test]
    fn missing_genre_is_config_error() {
        let (docs, lexicons) = small_corpus();
        // exp2_2 preset needs Telegram documents; this corpus has none.
        let mut cfg = preset("exp2_2").unwrap();
        cfg.model = ModelKind::Logistic;
        let err = run_experiment::<f64>(&cfg, &docs, &lexicons).unwrap_err();
        assert!(matches!(err, Error::Config(_)), "{err}");
    }

    #[test]
    fn per_language_breakdown_sums_to_aggregate() {
        let lexicons = crate::lexicon::builtin().unwrap().0;
        let mut docs = generate(
            &SyntheticConfig {
                n_docs: 40,
                languages: vec![Language::En],
                seed: 8,
                ..Default::default()
            },
            &lexicons,
        );
        docs.extend(generate(
            &SyntheticConfig {
                n_docs: 40,
                languages: vec![Language::Uk],
                seed: 9,
                id_prefix: "uk".into(),
                ..Default::default()
            },
            &lexicons,
        ));
        let report = run_experiment::<f64>(&quick_config("langs"), &docs, &lexicons).unwrap();
        let rows = per_language_breakdown(&report);
        assert_eq!(rows.len(), 2);
        let mut total = ConfusionMatrix::default();
        for row in &rows {
            total.add(&row.confusion);
        }
        assert_eq!(total, report.aggregate.confusion);
    }

    #[test]
    fn inverted_language_shows_negative_kappa() {
        let lexicons = crate::lexicon::builtin().unwrap().0;
        let mut docs = generate(
            &SyntheticConfig {
                n_docs: 60,
                languages: vec![Language::En],
                seed: 10,
                ..Default::default()
            },
            &lexicons,
        );
        // Same generative rules for Ukrainian but with flipped labels.
        let mut flipped = generate(
            &SyntheticConfig {
                n_docs: 30,
                languages: vec![Language::Uk],
                seed: 11,
                id_prefix: "uk".into(),
                ..Default::default()
            },
            &lexicons,
        );
        for doc in &mut flipped {
            doc.stance = Some(match doc.stance.unwrap() {
                Stance::ProKremlin => Stance::ProWestern,
                Stance::ProWestern => Stance::ProKremlin,
            });
        }
        docs.extend(flipped);
        // Train only on English; test on everything else via fixed split.
        let mut cfg = quick_config("inv");
        cfg.split = SplitSpec::FixedTest;
        cfg.train_filter = SubsetFilter {
            languages: vec![Language::En],
            ..Default::default()
        };
        cfg.test_filter = Some(SubsetFilter {
            languages: vec![Language::Uk],
            ..Default::default()
        });
        let report = run_experiment::<f64>(&cfg, &docs, &lexicons).unwrap();
        let rows = per_language_breakdown(&report);
        let uk = rows.iter().find(|r| r.language == Language::Uk).unwrap();
        assert!(uk.kappa < -0.5, "inverted language kappa = {}", uk.kappa);
    }

    #[test]
    fn presets_validate() {
        for name in PRESET_NAMES {
            let cfg = preset(name).unwrap();
            cfg.validate().unwrap();
            // Round-trip through TOML.
            let toml_str = cfg.to_toml();
            let parsed = ExperimentConfig::from_toml(&toml_str, "test").unwrap();
            assert_eq!(cfg, parsed);
        }
        assert!(preset("exp9").is_err());
    }

    #[test]
    fn summary_csv_has_reference_columns() {
        let (docs, lexicons) = small_corpus();
        let report = run_experiment::<f64>(&quick_config("csv"), &docs, &lexicons).unwrap();
        let csv = report_summary_csv(&report);
        let header = csv.lines().next().unwrap();
        assert_eq!(header, "algorithm,fold,kappa,f1,fp,fn");
        assert!(csv.lines().any(|l| l.contains(",best,")));
        assert!(csv.lines().any(|l| l.contains(",aggregate,")));
    }
}
