//! Chronological and cross-group distributional summaries of features and
//! keywords: per-group boxplot statistics and baseline/comparison deltas.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::corpus::{Genre, Language, Stance};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKey {
    Date,
    Language,
    Stance,
    Genre,
}

impl GroupKey {
    pub fn name(&self) -> &'static str {
        match self {
            GroupKey::Date => "date",
            GroupKey::Language => "language",
            GroupKey::Stance => "stance",
            GroupKey::Genre => "genre",
        }
    }
}

impl FromStr for GroupKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "date" => Ok(GroupKey::Date),
            "language" => Ok(GroupKey::Language),
            "stance" => Ok(GroupKey::Stance),
            "genre" => Ok(GroupKey::Genre),
            other => Err(Error::Config(format!(
                "unknown grouping key '{other}' (expected date, language, stance, genre)"
            ))),
        }
    }
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One document's metadata and feature values.
#[derive(Debug, Clone)]
pub struct FeatureRecord<S> {
    pub language: Language,
    pub stance: Option<Stance>,
    pub genre: Genre,
    pub date: NaiveDate,
    pub values: Vec<S>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionSummary {
    /// (key name, value) pairs, e.g. `[("date", "2022-03-18")]`; empty for
    /// the global group.
    pub group: Vec<(String, String)>,
    pub stats: BTreeMap<String, FeatureStats>,
}

impl DistributionSummary {
    pub fn group_label(&self) -> String {
        if self.group.is_empty() {
            "all".to_string()
        } else {
            self.group
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";")
        }
    }
}

/// Type-7 quantile: linear interpolation between order statistics.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = (n - 1) as f64 * q;
    let lo = pos.floor() as usize;
    let frac = pos - lo as f64;
    if lo + 1 < n {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[n - 1]
    }
}

fn group_value<S>(record: &FeatureRecord<S>, key: GroupKey) -> String {
    match key {
        GroupKey::Date => record.date.to_string(),
        GroupKey::Language => record.language.to_string(),
        GroupKey::Stance => record
            .stance
            .map(|s| s.to_string())
            .unwrap_or_else(|| "unlabeled".into()),
        GroupKey::Genre => record.genre.to_string(),
    }
}

/// One summary per non-empty group; quantiles by linear interpolation.
pub fn summarize<S: Scalar>(
    records: &[FeatureRecord<S>],
    feature_names: &[String],
    group_by: &[GroupKey],
) -> Result<Vec<DistributionSummary>> {
    for record in records {
        if record.values.len() != feature_names.len() {
            return Err(Error::Validation(format!(
                "feature record has {} values but {} names",
                record.values.len(),
                feature_names.len()
            )));
        }
    }
    let mut groups: BTreeMap<Vec<String>, Vec<&FeatureRecord<S>>> = BTreeMap::new();
    for record in records {
        let key: Vec<String> = group_by.iter().map(|k| group_value(record, *k)).collect();
        groups.entry(key).or_default().push(record);
    }
    let mut summaries = Vec::with_capacity(groups.len());
    for (key, members) in groups {
        let mut stats = BTreeMap::new();
        for (j, name) in feature_names.iter().enumerate() {
            let mut values: Vec<f64> = members
                .iter()
                .map(|r| r.values[j].to_f64().unwrap())
                .collect();
            values.sort_by(|a, b| a.partial_cmp(b).expect("finite features"));
            let count = values.len();
            let mean = values.iter().sum::<f64>() / count as f64;
            stats.insert(
                name.clone(),
                FeatureStats {
                    min: values[0],
                    q1: quantile(&values, 0.25),
                    median: quantile(&values, 0.5),
                    q3: quantile(&values, 0.75),
                    max: values[count - 1],
                    mean,
                    count,
                },
            );
        }
        summaries.push(DistributionSummary {
            group: group_by
                .iter()
                .map(|k| k.name().to_string())
                .zip(key)
                .collect(),
            stats,
        });
    }
    Ok(summaries)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaRow {
    pub feature: String,
    pub baseline_median: f64,
    pub comparison_median: f64,
    pub median_difference: f64,
    /// (comparison − baseline) / |baseline|; infinite when the baseline
    /// median is zero and the comparison is not.
    pub relative_change: f64,
    pub flagged: bool,
}

/// Default flagging threshold on |relative change|.
pub const DEFAULT_DELTA_THRESHOLD: f64 = 0.25;

/// Per-feature difference table between two groups.
pub fn delta_report(
    summaries: &[DistributionSummary],
    baseline: &[(String, String)],
    comparison: &[(String, String)],
    threshold: f64,
) -> Result<Vec<DeltaRow>> {
    let find = |key: &[(String, String)]| -> Result<&DistributionSummary> {
        summaries.iter().find(|s| s.group == key).ok_or_else(|| {
            let label = key
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";");
            Error::Config(format!("group '{label}' not found in summaries"))
        })
    };
    let base = find(baseline)?;
    let comp = find(comparison)?;
    let mut rows = Vec::new();
    for (feature, base_stats) in &base.stats {
        let Some(comp_stats) = comp.stats.get(feature) else {
            continue;
        };
        let difference = comp_stats.median - base_stats.median;
        let relative_change = if base_stats.median == 0.0 {
            if difference == 0.0 {
                0.0
            } else {
                f64::INFINITY * difference.signum()
            }
        } else {
            difference / base_stats.median.abs()
        };
        rows.push(DeltaRow {
            feature: feature.clone(),
            baseline_median: base_stats.median,
            comparison_median: comp_stats.median,
            median_difference: difference,
            relative_change,
            flagged: relative_change.abs() >= threshold,
        });
    }
    Ok(rows)
}

/// Boxplot-statistics CSV: one row per (group, feature).
pub const TRENDS_CSV_VERSION: u32 = 1;

pub fn summaries_csv(summaries: &[DistributionSummary]) -> String {
    let mut out = format!("# trends_csv_version = {TRENDS_CSV_VERSION}\n");
    out.push_str("group,feature,min,q1,median,q3,max,mean,count\n");
    for summary in summaries {
        let label = summary.group_label();
        for (feature, s) in &summary.stats {
            out.push_str(&format!(
                "{label},{feature},{},{},{},{},{},{},{}\n",
                s.min, s.q1, s.median, s.q3, s.max, s.mean, s.count
            ));
        }
    }
    out
}

pub fn delta_csv(rows: &[DeltaRow]) -> String {
    let mut out = format!("# trends_csv_version = {TRENDS_CSV_VERSION}\n");
    out.push_str("feature,baseline_median,comparison_median,median_difference,relative_change,flagged\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.feature,
            row.baseline_median,
            row.comparison_median,
            row.median_difference,
            row.relative_change,
            row.flagged
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(date: (i32, u32, u32), genre: Genre, values: Vec<f64>) -> FeatureRecord<f64> {
        FeatureRecord {
            language: Language::En,
            stance: Some(Stance::ProWestern),
            genre,
            date: NaiveDate::from_ymd_opt(date.0, date.1, date.2).unwrap(),
            values,
        }
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("f{i}")).collect()
    }

    #[test]
    fn hand_computed_order_statistics() {
        let records: Vec<FeatureRecord<f64>> = [1.0, 2.0, 3.0, 4.0, 5.0]
            .iter()
            .map(|v| record((2022, 3, 1), Genre::Newspaper, vec![*v]))
            .collect();
        let summaries = summarize(&records, &names(1), &[GroupKey::Genre]).unwrap();
        assert_eq!(summaries.len(), 1);
        let stats = &summaries[0].stats["f0"];
        assert_eq!(stats.median, 3.0);
        assert_eq!(stats.q1, 2.0);
        assert_eq!(stats.q3, 4.0);
        assert_eq!(stats.min, 1.0);
        assert_eq!(stats.max, 5.0);
        assert_eq!(stats.mean, 3.0);
        assert_eq!(stats.count, 5);
    }

    #[test]
    fn single_document_group_degenerates() {
        let records = vec![record((2022, 3, 1), Genre::Telegram, vec![0.42])];
        let summaries = summarize(&records, &names(1), &[GroupKey::Date]).unwrap();
        let stats = &summaries[0].stats["f0"];
        assert!(
            stats.min == 0.42
                && stats.q1 == 0.42
                && stats.median == 0.42
                && stats.q3 == 0.42
                && stats.max == 0.42
        );
    }

    #[test]
    fn empty_group_by_gives_one_global_summary() {
        let records = vec![
            record((2022, 3, 1), Genre::Newspaper, vec![1.0]),
            record((2022, 3, 8), Genre::Telegram, vec![3.0]),
        ];
        let summaries = summarize(&records, &names(1), &[]).unwrap();
        assert_eq!(summaries.len(), 1);
        assert_eq!(summaries[0].group_label(), "all");
        assert_eq!(summaries[0].stats["f0"].count, 2);
    }

    #[test]
    fn shuffling_records_never_changes_summaries() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut records: Vec<FeatureRecord<f64>> = (0..20)
            .map(|i| {
                record(
                    (2022, 3, 1 + (i % 3) as u32),
                    Genre::Newspaper,
                    vec![i as f64 / 3.0, (i * i) as f64 / 50.0],
                )
            })
            .collect();
        let base = summarize(&records, &names(2), &[GroupKey::Date]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            records.shuffle(&mut rng);
            let shuffled = summarize(&records, &names(2), &[GroupKey::Date]).unwrap();
            assert_eq!(base, shuffled);
        }
    }

    #[test]
    fn date_groups_partition_the_global_count() {
        let records: Vec<FeatureRecord<f64>> = (0..17)
            .map(|i| record((2022, 3, 1 + (i % 4) as u32), Genre::Newspaper, vec![i as f64]))
            .collect();
        let global = summarize(&records, &names(1), &[]).unwrap();
        let by_date = summarize(&records, &names(1), &[GroupKey::Date]).unwrap();
        let total: usize = by_date.iter().map(|s| s.stats["f0"].count).sum();
        assert_eq!(total, global[0].stats["f0"].count);
    }

    #[test]
    fn quantile_sandwich_property() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(1..30);
            let records: Vec<FeatureRecord<f64>> = (0..n)
                .map(|_| record((2022, 3, 1), Genre::Newspaper, vec![rng.gen::<f64>()]))
                .collect();
            let s = summarize(&records, &names(1), &[]).unwrap();
            let st = &s[0].stats["f0"];
            assert!(st.min <= st.q1 && st.q1 <= st.median && st.median <= st.q3 && st.q3 <= st.max);
        }
    }

    #[test]
    fn identical_groups_produce_zero_deltas() {
        let records: Vec<FeatureRecord<f64>> = (0..10)
            .flat_map(|i| {
                vec![
                    record((2022, 3, 1), Genre::Newspaper, vec![i as f64]),
                    record((2022, 3, 8), Genre::Newspaper, vec![i as f64]),
                ]
            })
            .collect();
        let summaries = summarize(&records, &names(1), &[GroupKey::Date]).unwrap();
        let rows = delta_report(
            &summaries,
            &[("date".to_string(), "2022-03-01".to_string())],
            &[("date".to_string(), "2022-03-08".to_string())],
            DEFAULT_DELTA_THRESHOLD,
        )
        .unwrap();
        assert!(rows.iter().all(|r| r.median_difference == 0.0 && !r.flagged));
    }

    #[test]
    fn exact_quarter_increase_is_flagged_at_default_threshold() {
        let records = vec![
            record((2022, 3, 1), Genre::Newspaper, vec![0.5]),
            record((2022, 3, 8), Genre::Newspaper, vec![0.625]),
        ];
        let summaries = summarize(&records, &names(1), &[GroupKey::Date]).unwrap();
        let rows = delta_report(
            &summaries,
            &[("date".to_string(), "2022-03-01".to_string())],
            &[("date".to_string(), "2022-03-08".to_string())],
            DEFAULT_DELTA_THRESHOLD,
        )
        .unwrap();
        assert_eq!(rows[0].relative_change, 0.25);
        assert!(rows[0].flagged);
    }

    #[test]
    fn missing_group_is_a_lookup_error() {
        let records = vec![record((2022, 3, 1), Genre::Newspaper, vec![1.0])];
        let summaries = summarize(&records, &names(1), &[GroupKey::Date]).unwrap();
        let err = delta_report(
            &summaries,
            &[("date".to_string(), "2022-03-01".to_string())],
            &[("date".to_string(), "1999-01-01".to_string())],
            0.25,
        )
        .unwrap_err();
        assert!(err.to_string().contains("1999-01-01"));
    }

    #[test]
    fn planted_spike_flags_only_its_date_and_feature() {
        // Feature 0 spikes on 03-18; feature 1 stays flat.
        let mut records = Vec::new();
        for day in [1u32, 8, 18] {
            for i in 0..7 {
                let spike = if day == 18 { 0.3 } else { 0.1 };
                records.push(record(
                    (2022, 3, day),
                    Genre::Newspaper,
                    vec![spike + i as f64 * 1e-4, 0.2 + i as f64 * 1e-4],
                ));
            }
        }
        let summaries = summarize(&records, &names(2), &[GroupKey::Date]).unwrap();
        let base = [("date".to_string(), "2022-03-01".to_string())];
        for (other, expect_flag) in [("2022-03-08", false), ("2022-03-18", true)] {
            let rows = delta_report(
                &summaries,
                &base,
                &[("date".to_string(), other.to_string())],
                DEFAULT_DELTA_THRESHOLD,
            )
            .unwrap();
            let f0 = rows.iter().find(|r| r.feature == "f0").unwrap();
            let f1 = rows.iter().find(|r| r.feature == "f1").unwrap();
            assert_eq!(f0.flagged, expect_flag, "{other}");
            assert!(!f1.flagged, "{other}");
        }
    }

    #[test]
    fn csv_shapes() {
        let records = vec![
            record((2022, 3, 1), Genre::Newspaper, vec![1.0]),
            record((2022, 3, 8), Genre::Newspaper, vec![2.0]),
        ];
        let summaries = summarize(&records, &names(1), &[GroupKey::Date]).unwrap();
        let csv = summaries_csv(&summaries);
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("# trends_csv_version"));
        assert_eq!(
            lines.next().unwrap(),
            "group,feature,min,q1,median,q3,max,mean,count"
        );
        assert_eq!(csv.lines().count(), 4);
    }
}
