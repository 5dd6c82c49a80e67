//! The model zoo: kernel SVM, logistic regression, CART decision tree, MLP,
//! and a linear head over externally supplied embedding vectors, behind a
//! uniform train/predict/persist interface.
//!
//! Pro-Kremlin is the positive class (+1) everywhere. Margin models
//! threshold their score at 0, probabilistic models at 0.5; a score exactly
//! at the threshold predicts pro-Western.

mod embedding;
mod logistic;
mod mlp;
mod svm;
mod tree;

pub use embedding::{embedding_table_to_string, load_embedding_table, parse_embedding_table, EmbeddingTable};
pub use mlp::mlp_loss_closure;
pub use tree::{tree_depth, TreeNode};

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::Stance;
use crate::error::{Error, Result};
use crate::features::FeatureManifest;
use crate::lexicon::LexiconSet;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    SvmRbf,
    Logistic,
    Tree,
    Mlp,
    EmbeddingLinear,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::SvmRbf => "svm_rbf",
            ModelKind::Logistic => "logistic",
            ModelKind::Tree => "tree",
            ModelKind::Mlp => "mlp",
            ModelKind::EmbeddingLinear => "embedding_linear",
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svm_rbf" => Ok(ModelKind::SvmRbf),
            "logistic" => Ok(ModelKind::Logistic),
            "tree" => Ok(ModelKind::Tree),
            "mlp" => Ok(ModelKind::Mlp),
            "embedding_linear" => Ok(ModelKind::EmbeddingLinear),
            other => Err(Error::Validation(format!("unknown model kind '{other}'"))),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Kind-specific hyperparameters, pre-loaded with the reference defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Hyperparameters {
    SvmRbf {
        gamma: f64,
        c: f64,
        tol: f64,
        max_passes: usize,
        cache_bytes: usize,
        standardize: bool,
    },
    Logistic {
        l2: f64,
        tol: f64,
        max_iter: usize,
        standardize: bool,
    },
    Tree {
        max_depth: Option<usize>,
        min_split: usize,
    },
    Mlp {
        hidden: (usize, usize),
        alpha: f64,
        tol: f64,
        max_iter: usize,
        standardize: bool,
    },
    EmbeddingLinear {
        learning_rate: f64,
        epochs: usize,
        batch_size: usize,
        standardize: bool,
    },
}

impl Hyperparameters {
    /// Reference defaults per model kind (RBF γ=100/C=46; MLP 2×64 tanh with
    /// L2 1e-5 trained by L-BFGS; embedding head 1e-4/4 epochs/batch 16).
    pub fn defaults(kind: ModelKind) -> Self {
        match kind {
            ModelKind::SvmRbf => Hyperparameters::SvmRbf {
                gamma: 100.0,
                c: 46.0,
                tol: 1e-3,
                max_passes: 10_000,
                cache_bytes: 64 << 20,
                // The reference gamma assumes raw length-normalized counts;
                // z-scoring would blow distances up and zero the kernel.
                standardize: false,
            },
            ModelKind::Logistic => Hyperparameters::Logistic {
                l2: 1e-4,
                tol: 1e-6,
                max_iter: 500,
                standardize: true,
            },
            ModelKind::Tree => Hyperparameters::Tree {
                max_depth: None,
                min_split: 2,
            },
            ModelKind::Mlp => Hyperparameters::Mlp {
                hidden: (64, 64),
                alpha: 1e-5,
                tol: 1e-5,
                max_iter: 300,
                standardize: true,
            },
            ModelKind::EmbeddingLinear => Hyperparameters::EmbeddingLinear {
                learning_rate: 1e-4,
                epochs: 4,
                batch_size: 16,
                standardize: false,
            },
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            Hyperparameters::SvmRbf { .. } => ModelKind::SvmRbf,
            Hyperparameters::Logistic { .. } => ModelKind::Logistic,
            Hyperparameters::Tree { .. } => ModelKind::Tree,
            Hyperparameters::Mlp { .. } => ModelKind::Mlp,
            Hyperparameters::EmbeddingLinear { .. } => ModelKind::EmbeddingLinear,
        }
    }

    fn standardize(&self) -> bool {
        match self {
            Hyperparameters::SvmRbf { standardize, .. } => *standardize,
            Hyperparameters::Logistic { standardize, .. } => *standardize,
            Hyperparameters::Tree { .. } => false,
            Hyperparameters::Mlp { standardize, .. } => *standardize,
            Hyperparameters::EmbeddingLinear { standardize, .. } => *standardize,
        }
    }
}

/// Per-feature z-score statistics fitted on the training split only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer<S> {
    pub means: Vec<S>,
    pub stds: Vec<S>,
    pub apply: bool,
}

impl<S: Scalar> Standardizer<S> {
    pub fn fit(matrix: &Matrix<S>, apply: bool) -> Self {
        let n = matrix.n_rows().max(1);
        let cols = matrix.n_cols();
        let mut means = vec![S::zero(); cols];
        for row in matrix.iter_rows() {
            for (m, v) in means.iter_mut().zip(row) {
                *m = *m + *v;
            }
        }
        let count = S::from_count(n);
        for m in means.iter_mut() {
            *m = *m / count;
        }
        let mut vars = vec![S::zero(); cols];
        for row in matrix.iter_rows() {
            for ((var, v), m) in vars.iter_mut().zip(row).zip(&means) {
                let d = *v - *m;
                *var = *var + d * d;
            }
        }
        let stds = vars
            .into_iter()
            .map(|v| {
                let s = (v / count).sqrt();
                // Constant columns pass through unscaled.
                if s > S::zero() {
                    s
                } else {
                    S::one()
                }
            })
            .collect();
        Self {
            means,
            stds,
            apply,
        }
    }

    pub fn transform(&self, matrix: &Matrix<S>) -> Matrix<S> {
        if !self.apply {
            return matrix.clone();
        }
        let mut out = matrix.clone();
        for i in 0..out.n_rows() {
            let row = out.row_mut(i);
            for ((v, m), s) in row.iter_mut().zip(&self.means).zip(&self.stds) {
                *v = (*v - *m) / *s;
            }
        }
        out
    }
}

/// What the model's input rows mean: a feature manifest or a raw embedding
/// dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelManifest {
    Features(FeatureManifest),
    Embedding { dimension: usize },
}

impl ModelManifest {
    pub fn width(&self) -> usize {
        match self {
            ModelManifest::Features(m) => m.len(),
            ModelManifest::Embedding { dimension } => *dimension,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainMeta {
    pub seed: u64,
    pub corpus_hash: String,
    pub trained_on: String,
}

/// Training date: `SOURCE_DATE_EPOCH` wins when set, so archived runs and
/// tests produce byte-identical model files.
pub fn training_date() -> String {
    if let Ok(epoch) = std::env::var("SOURCE_DATE_EPOCH") {
        if let Ok(secs) = epoch.parse::<i64>() {
            if let Some(dt) = chrono::DateTime::from_timestamp(secs, 0) {
                return dt.date_naive().to_string();
            }
        }
    }
    chrono::Utc::now().date_naive().to_string()
}

/// Kind-specific learned parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelParams<S> {
    Svm {
        support_vectors: Matrix<S>,
        /// Per support vector: alpha_i * y_i.
        alpha_y: Vec<S>,
        bias: S,
        gamma: f64,
    },
    Linear {
        weights: Vec<S>,
        bias: S,
    },
    Tree {
        nodes: Vec<TreeNode<S>>,
    },
    Mlp {
        /// (weights row-major [out x in], biases) per layer.
        layers: Vec<(Matrix<S>, Vec<S>)>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel<S> {
    pub kind: ModelKind,
    pub hyperparameters: Hyperparameters,
    pub manifest: ModelManifest,
    pub standardizer: Standardizer<S>,
    pub parameters: ModelParams<S>,
    pub train_meta: TrainMeta,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Predictions<S> {
    pub labels: Vec<Stance>,
    pub scores: Vec<S>,
}

/// Inputs shared by every `train` call.
pub struct TrainingData<'a, S> {
    pub rows: &'a Matrix<S>,
    pub labels: &'a [Stance],
    pub manifest: ModelManifest,
    pub corpus_hash: String,
}

/// Train a model of the given kind.
///
/// Validates that both classes are present and that every feature is
/// finite; fits standardization statistics on these rows (the training
/// split) and stores them in the model whether or not they are applied.
pub fn train<S: Scalar>(
    data: &TrainingData<'_, S>,
    hyper: &Hyperparameters,
    seed: u64,
) -> Result<TrainedModel<S>> {
    let rows = data.rows;
    if rows.n_rows() != data.labels.len() {
        return Err(Error::Training(format!(
            "{} rows but {} labels",
            rows.n_rows(),
            data.labels.len()
        )));
    }
    if rows.n_rows() < 2 {
        return Err(Error::Training("need at least 2 training rows".into()));
    }
    if rows.n_cols() != data.manifest.width() {
        return Err(Error::Contract(format!(
            "row width {} does not match manifest width {}",
            rows.n_cols(),
            data.manifest.width()
        )));
    }
    let kremlin = data.labels.iter().filter(|s| **s == Stance::ProKremlin).count();
    if kremlin == 0 || kremlin == data.labels.len() {
        return Err(Error::Training(
            "training labels contain a single class".into(),
        ));
    }
    if let Some((r, c)) = rows.first_non_finite() {
        return Err(Error::Validation(format!(
            "non-finite feature value at row {r}, column {c}"
        )));
    }

    let standardizer = Standardizer::fit(rows, hyper.standardize());
    let x = standardizer.transform(rows);
    let y: Vec<f64> = data.labels.iter().map(|s| s.signed()).collect();

    let parameters = match hyper {
        Hyperparameters::SvmRbf {
            gamma,
            c,
            tol,
            max_passes,
            cache_bytes,
            ..
        } => svm::train(&x, &y, *gamma, *c, *tol, *max_passes, *cache_bytes)?,
        Hyperparameters::Logistic {
            l2, tol, max_iter, ..
        } => logistic::train(&x, &y, *l2, *tol, *max_iter)?,
        Hyperparameters::Tree {
            max_depth,
            min_split,
        } => tree::train(&x, &y, *max_depth, *min_split)?,
        Hyperparameters::Mlp {
            hidden,
            alpha,
            tol,
            max_iter,
            ..
        } => mlp::train(&x, &y, *hidden, *alpha, *tol, *max_iter, seed)?,
        Hyperparameters::EmbeddingLinear {
            learning_rate,
            epochs,
            batch_size,
            ..
        } => embedding::train(&x, &y, *learning_rate, *epochs, *batch_size, seed)?,
    };

    Ok(TrainedModel {
        kind: hyper.kind(),
        hyperparameters: hyper.clone(),
        manifest: data.manifest.clone(),
        standardizer,
        parameters,
        train_meta: TrainMeta {
            seed,
            corpus_hash: data.corpus_hash.clone(),
            trained_on: training_date(),
        },
    })
}

impl<S: Scalar> TrainedModel<S> {
    /// Predict labels and decision scores for `rows` (manifest order).
    pub fn predict(&self, rows: &Matrix<S>) -> Result<Predictions<S>> {
        if rows.n_cols() != self.manifest.width() {
            let expected: Vec<String> = match &self.manifest {
                ModelManifest::Features(m) => m.names().take(4).map(str::to_string).collect(),
                ModelManifest::Embedding { dimension } => {
                    vec![format!("<{dimension}-dimensional embedding>")]
                }
            };
            return Err(Error::Contract(format!(
                "row width {} does not match model manifest width {} (expects {:?}…)",
                rows.n_cols(),
                self.manifest.width(),
                expected
            )));
        }
        let x = self.standardizer.transform(rows);
        let scores: Vec<S> = match &self.parameters {
            ModelParams::Svm {
                support_vectors,
                alpha_y,
                bias,
                gamma,
            } => svm::decision_scores(support_vectors, alpha_y, *bias, *gamma, &x),
            ModelParams::Linear { weights, bias } => logistic::scores(weights, *bias, &x),
            ModelParams::Tree { nodes } => tree::scores(nodes, &x),
            ModelParams::Mlp { layers } => mlp::scores(layers, &x),
        };
        let threshold = match self.kind {
            ModelKind::SvmRbf => S::zero(),
            _ => S::from_f64_lit(0.5),
        };
        // Scores exactly on the threshold go to the non-flagged class.
        let labels = scores
            .iter()
            .map(|s| {
                if *s > threshold {
                    Stance::ProKremlin
                } else {
                    Stance::ProWestern
                }
            })
            .collect();
        Ok(Predictions { labels, scores })
    }

    pub fn feature_manifest(&self) -> Option<&FeatureManifest> {
        match &self.manifest {
            ModelManifest::Features(m) => Some(m),
            ModelManifest::Embedding { .. } => None,
        }
    }

    /// Compare the stored glossary hash with the active lexicon set's.
    /// Returns `(stored, current)` when they differ.
    pub fn glossary_skew(&self, lexicons: &LexiconSet) -> Option<(String, String)> {
        let manifest = self.feature_manifest()?;
        let current = lexicons.glossary.version_hash();
        if manifest.glossary_hash != current {
            Some((manifest.glossary_hash.clone(), current))
        } else {
            None
        }
    }
}

const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ModelContainer<S> {
    format_version: u32,
    model: TrainedModel<S>,
}

/// Serialize a model to the versioned container format.
pub fn model_to_string<S: Scalar>(model: &TrainedModel<S>) -> String {
    serde_json::to_string_pretty(&ModelContainer {
        format_version: MODEL_FORMAT_VERSION,
        model: model.clone(),
    })
    .expect("model serializes")
}

pub fn save_model<S: Scalar>(model: &TrainedModel<S>, path: &Path) -> Result<()> {
    std::fs::write(path, model_to_string(model))
        .map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn model_from_str<S: Scalar>(content: &str, origin: &str) -> Result<TrainedModel<S>> {
    let container: ModelContainer<S> = serde_json::from_str(content)
        .map_err(|e| Error::parse(origin, e.line(), e.to_string()))?;
    if container.format_version != MODEL_FORMAT_VERSION {
        return Err(Error::Contract(format!(
            "model format version {} unsupported (expected {MODEL_FORMAT_VERSION})",
            container.format_version
        )));
    }
    Ok(container.model)
}

pub fn load_model<S: Scalar>(path: &Path) -> Result<TrainedModel<S>> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(display.clone(), e))?;
    model_from_str(&content, &display)
}
