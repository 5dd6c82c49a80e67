//! Permutation feature importance over any trained model.
//!
//! Importance of a feature is the drop in held-out F1 caused by shuffling
//! its column, averaged over seeded repeats. Permutation importance is
//! unsigned, so a separate probe assigns each feature a direction: the sign
//! of the mean score shift when the column is increased by one within-data
//! standard deviation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{ModelManifest, TrainedModel};
use crate::corpus::Stance;
use crate::error::{Error, Result};
use crate::evaluate::{f1_score, ConfusionMatrix};
use crate::features::FeatureGroup;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Larger values push the score toward pro-Kremlin.
    ProKremlinIndicative,
    ProWesternIndicative,
    Neutral,
}

impl Direction {
    pub fn name(&self) -> &'static str {
        match self {
            Direction::ProKremlinIndicative => "pro_kremlin",
            Direction::ProWesternIndicative => "pro_western",
            Direction::Neutral => "neutral",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceEntry {
    pub feature: String,
    pub group: Option<FeatureGroup>,
    /// Mean F1 drop over repeats (positive = feature matters).
    pub importance: f64,
    /// Standard deviation of the drop over repeats.
    pub std: f64,
    pub direction: Direction,
    /// Set for constant columns, whose importance is 0 by definition.
    pub constant_column: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceReport {
    pub entries: Vec<ImportanceEntry>,
    pub baseline_f1: f64,
    pub repeats: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct PermutationOptions {
    pub repeats: usize,
    pub seed: u64,
    /// Force identity permutations (test hook: importances become 0).
    pub force_identity: bool,
}

impl Default for PermutationOptions {
    fn default() -> Self {
        Self {
            repeats: 20,
            seed: 0,
            force_identity: false,
        }
    }
}

fn feature_names<S: Scalar>(model: &TrainedModel<S>) -> Vec<(String, Option<FeatureGroup>)> {
    match &model.manifest {
        ModelManifest::Features(m) => m
            .features()
            .iter()
            .map(|f| (f.name.clone(), Some(f.group)))
            .collect(),
        ModelManifest::Embedding { dimension } => (0..*dimension)
            .map(|i| (format!("dim_{i}"), None))
            .collect(),
    }
}

fn shuffled_indices(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng);
    idx
}

/// Measure permutation importance of every feature on held-out rows.
pub fn permutation_importance<S: Scalar>(
    model: &TrainedModel<S>,
    rows: &Matrix<S>,
    labels: &[Stance],
    options: &PermutationOptions,
) -> Result<ImportanceReport> {
    if rows.n_rows() == 0 || labels.is_empty() {
        return Err(Error::Validation(
            "permutation importance needs non-empty rows and labels".into(),
        ));
    }
    if rows.n_rows() != labels.len() {
        return Err(Error::Validation(format!(
            "{} rows but {} labels",
            rows.n_rows(),
            labels.len()
        )));
    }
    if options.repeats == 0 {
        return Err(Error::Validation("repeats must be at least 1".into()));
    }
    let baseline_pred = model.predict(rows)?;
    let baseline_f1 = f1_score(&ConfusionMatrix::from_labels(labels, &baseline_pred.labels))?;
    let baseline_scores: Vec<f64> = baseline_pred
        .scores
        .iter()
        .map(|s| s.to_f64().unwrap())
        .collect();
    let baseline_mean_score = baseline_scores.iter().sum::<f64>() / baseline_scores.len() as f64;

    let names = feature_names(model);
    let n = rows.n_rows();
    let entries: Vec<ImportanceEntry> = (0..rows.n_cols())
        .into_par_iter()
        .map(|j| -> Result<ImportanceEntry> {
            let (feature, group) = names[j].clone();
            let column = rows.column(j);
            let col64: Vec<f64> = column.iter().map(|v| v.to_f64().unwrap()).collect();
            let mean = col64.iter().sum::<f64>() / n as f64;
            let var = col64.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
            let std_dev = var.sqrt();
            let constant_column = col64.iter().all(|v| *v == col64[0]);

            let mut drops = Vec::with_capacity(options.repeats);
            let mut work = rows.clone();
            for r in 0..options.repeats {
                let drop = if constant_column {
                    0.0
                } else {
                    let order = if options.force_identity {
                        (0..n).collect::<Vec<usize>>()
                    } else {
                        // Independent stream per (feature, repeat).
                        shuffled_indices(
                            n,
                            options
                                .seed
                                .wrapping_add((j as u64) << 24)
                                .wrapping_add(r as u64),
                        )
                    };
                    let permuted: Vec<S> = order.iter().map(|&i| column[i]).collect();
                    work.set_column(j, &permuted);
                    let pred = model.predict(&work)?;
                    let f1 = f1_score(&ConfusionMatrix::from_labels(labels, &pred.labels))?;
                    baseline_f1 - f1
                };
                drops.push(drop);
            }
            work.set_column(j, &column);

            let importance = drops.iter().sum::<f64>() / drops.len() as f64;
            let dvar = drops
                .iter()
                .map(|d| (d - importance) * (d - importance))
                .sum::<f64>()
                / drops.len() as f64;

            // Direction probe: bump the column by one standard deviation.
            let direction = if constant_column {
                Direction::Neutral
            } else {
                let bumped: Vec<S> = column
                    .iter()
                    .map(|v| *v + S::from_f64_lit(std_dev))
                    .collect();
                work.set_column(j, &bumped);
                let probe = model.predict(&work)?;
                work.set_column(j, &column);
                let mean_score = probe
                    .scores
                    .iter()
                    .map(|s| s.to_f64().unwrap())
                    .sum::<f64>()
                    / n as f64;
                let shift = mean_score - baseline_mean_score;
                if shift > 1e-12 {
                    Direction::ProKremlinIndicative
                } else if shift < -1e-12 {
                    Direction::ProWesternIndicative
                } else {
                    Direction::Neutral
                }
            };

            Ok(ImportanceEntry {
                feature,
                group,
                importance,
                std: dvar.sqrt(),
                direction,
                constant_column,
            })
        })
        .collect::<Result<_>>()?;

    Ok(ImportanceReport {
        entries,
        baseline_f1,
        repeats: options.repeats,
        seed: options.seed,
    })
}

/// Ranked view: keywords and linguistic features in separate sections,
/// each descending by |importance| with ties kept in manifest order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedImportance {
    pub keywords: Vec<ImportanceEntry>,
    pub linguistic: Vec<ImportanceEntry>,
}

pub fn rank_importance(report: &ImportanceReport, top_k: Option<usize>) -> RankedImportance {
    let mut keywords = Vec::new();
    let mut linguistic = Vec::new();
    for entry in &report.entries {
        if entry.group == Some(FeatureGroup::Keyword) {
            keywords.push(entry.clone());
        } else {
            linguistic.push(entry.clone());
        }
    }
    let sort = |list: &mut Vec<ImportanceEntry>| {
        // Stable sort keeps manifest order among equal magnitudes.
        list.sort_by(|a, b| {
            b.importance
                .abs()
                .partial_cmp(&a.importance.abs())
                .expect("finite importances")
        });
        if let Some(k) = top_k {
            list.truncate(k);
        }
    };
    sort(&mut keywords);
    sort(&mut linguistic);
    RankedImportance {
        keywords,
        linguistic,
    }
}

/// CSV with columns (feature, group, importance, std, direction), keyword
/// section first, mirroring the ranked view.
pub fn importance_csv(ranked: &RankedImportance) -> String {
    let mut out = String::from("feature,group,importance,std,direction\n");
    for entry in ranked.keywords.iter().chain(&ranked.linguistic) {
        let group = entry
            .group
            .map(|g| g.to_string())
            .unwrap_or_else(|| "embedding".into());
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            entry.feature,
            group,
            entry.importance,
            entry.std,
            entry.direction.name()
        ));
    }
    out
}
