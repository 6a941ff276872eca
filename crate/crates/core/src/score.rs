//! Occupation-level exposure scores: weighted averages of ability
//! exposure, z-standardization, and top-k ranking.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::matrix::{ability_exposure, AbilityExposureVector, RelatednessMatrix, WeightVector};
use crate::profile::{OccupationProfile, ScaleBounds};
use crate::stats;

/// One scored occupation. `standardized_score` is absent when the raw
/// scores of the table had zero variance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow {
    pub soc_code: String,
    pub title: String,
    pub raw_score: f64,
    pub standardized_score: Option<f64>,
}

impl ScoreRow {
    /// Score used for ranking, aggregation, and comparison: the
    /// standardized score when present, otherwise the raw score (the
    /// two induce the same order).
    pub fn ranking_score(&self) -> f64 {
        self.standardized_score.unwrap_or(self.raw_score)
    }
}

/// Raw-score statistics backing the standardization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableStats {
    pub count: usize,
    pub raw_mean: f64,
    /// Sample standard deviation (n - 1); `None` when fewer than two
    /// rows or zero variance.
    pub raw_std_dev: Option<f64>,
}

/// Per-occupation exposure scores under one named weight vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub weight_name: String,
    pub rows: Vec<ScoreRow>,
    pub stats: TableStats,
}

impl ScoreTable {
    /// Builds a table from already-computed rows, e.g. when reloading a
    /// serialized table. Validates identifier uniqueness and finiteness;
    /// the stats are recomputed from the raw scores.
    pub fn from_rows(weight_name: impl Into<String>, rows: Vec<ScoreRow>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for row in &rows {
            if row.soc_code.trim().is_empty() {
                return Err(Error::Validation(format!(
                    "score row {:?} has an empty soc_code",
                    row.title
                )));
            }
            if !seen.insert(row.soc_code.as_str()) {
                return Err(Error::Validation(format!(
                    "duplicate soc_code in score table: {}",
                    row.soc_code
                )));
            }
            if !row.raw_score.is_finite()
                || row.standardized_score.is_some_and(|s| !s.is_finite())
            {
                return Err(Error::Validation(format!(
                    "non-finite score for occupation {}",
                    row.soc_code
                )));
            }
        }
        let stats = compute_stats(&rows);
        Ok(Self {
            weight_name: weight_name.into(),
            rows,
            stats,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

fn compute_stats(rows: &[ScoreRow]) -> TableStats {
    if rows.is_empty() {
        return TableStats {
            count: 0,
            raw_mean: f64::NAN,
            raw_std_dev: None,
        };
    }
    let raw: Vec<f64> = rows.iter().map(|r| r.raw_score).collect();
    let mean = stats::mean(&raw);
    let std_dev = if raw.len() >= 2 {
        Some(stats::sample_std(&raw, mean)).filter(|s| *s > 0.0)
    } else {
        None
    };
    TableStats {
        count: rows.len(),
        raw_mean: mean,
        raw_std_dev: std_dev,
    }
}

/// An occupation dropped from a score table, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedOccupation {
    pub soc_code: String,
    pub title: String,
    pub reason: String,
}

/// Result of [`score_all`]: the table plus everything a run report needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreOutcome {
    pub table: ScoreTable,
    pub excluded: Vec<ExcludedOccupation>,
    pub warnings: Vec<String>,
}

/// Exposure score for one occupation: the ability exposures averaged
/// under the occupation's combined level-importance weights. Always a
/// convex combination of the exposure values.
///
/// Errors with [`Error::DegenerateProfile`] when every combined weight
/// is zero.
pub fn occupation_raw_score(
    exposure: &AbilityExposureVector,
    profile: &OccupationProfile,
    bounds: &ScaleBounds,
) -> Result<f64> {
    if profile.ability_count() != exposure.values().len() {
        return Err(Error::Alignment(format!(
            "occupation {} rates {} abilities but the exposure vector has {}",
            profile.soc_code(),
            profile.ability_count(),
            exposure.values().len()
        )));
    }

    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for (j, ability) in exposure.abilities().iter().enumerate() {
        let w = profile.combined_weight_named(j, ability, bounds)?;
        numerator += exposure.values()[j] * w;
        denominator += w;
    }
    if denominator == 0.0 {
        return Err(Error::DegenerateProfile {
            soc_code: profile.soc_code().to_string(),
        });
    }
    Ok(numerator / denominator)
}

/// Scores every profile against the matrix under the given weights and
/// standardizes the raw scores to zero mean and unit sample standard
/// deviation.
///
/// Rows keep the input profile order. Degenerate profiles are excluded
/// and reported in the outcome rather than failing the run; any other
/// per-profile error aborts. Needs at least two scoreable profiles.
pub fn score_all(
    matrix: &RelatednessMatrix,
    weights: &WeightVector,
    profiles: &[OccupationProfile],
    bounds: &ScaleBounds,
) -> Result<ScoreOutcome> {
    score_all_with(matrix, weights, profiles, bounds, Execution::default())
}

/// [`score_all`] with an explicit execution mode. Sequential and
/// parallel runs produce bit-identical tables.
pub fn score_all_with(
    matrix: &RelatednessMatrix,
    weights: &WeightVector,
    profiles: &[OccupationProfile],
    bounds: &ScaleBounds,
    exec: Execution,
) -> Result<ScoreOutcome> {
    bounds.validate()?;
    let exposure = ability_exposure(matrix, weights)?;

    let mut seen = std::collections::HashSet::new();
    for p in profiles {
        if !seen.insert(p.soc_code()) {
            return Err(Error::Validation(format!(
                "duplicate soc_code in profile set: {}",
                p.soc_code()
            )));
        }
    }

    let raw_results = map_ordered(profiles, exec, |p| {
        occupation_raw_score(&exposure, p, bounds)
    });

    let mut rows = Vec::with_capacity(profiles.len());
    let mut excluded = Vec::new();
    for (profile, result) in profiles.iter().zip(raw_results) {
        match result {
            Ok(raw_score) => rows.push(ScoreRow {
                soc_code: profile.soc_code().to_string(),
                title: profile.title().to_string(),
                raw_score,
                standardized_score: None,
            }),
            Err(Error::DegenerateProfile { soc_code }) => excluded.push(ExcludedOccupation {
                soc_code,
                title: profile.title().to_string(),
                reason: "all combined ability weights are zero".to_string(),
            }),
            Err(other) => return Err(other),
        }
    }

    if rows.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 2 scoreable occupations, got {} ({} excluded)",
            rows.len(),
            excluded.len()
        )));
    }

    let raw: Vec<f64> = rows.iter().map(|r| r.raw_score).collect();
    let mean = stats::mean(&raw);
    let std_dev = stats::sample_std(&raw, mean);
    let mut warnings = Vec::new();
    if std_dev > 0.0 {
        for row in &mut rows {
            row.standardized_score = Some((row.raw_score - mean) / std_dev);
        }
    } else {
        warnings.push(
            "raw scores have zero variance; standardized scores omitted".to_string(),
        );
    }

    let table = ScoreTable {
        weight_name: weights.name().to_string(),
        rows,
        stats: TableStats {
            count: raw.len(),
            raw_mean: mean,
            raw_std_dev: Some(std_dev).filter(|s| *s > 0.0),
        },
    };

    Ok(ScoreOutcome {
        table,
        excluded,
        warnings,
    })
}

/// Sort order for [`rank_ordered`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankOrder {
    Descending,
    Ascending,
}

/// A ranked occupation; `rank` is 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedRow {
    pub rank: usize,
    pub soc_code: String,
    pub title: String,
    pub score: f64,
}

/// Top `k` occupations by standardized score, descending. Ties break by
/// soc_code ascending; fewer than `k` rows returns them all.
pub fn rank_top(table: &ScoreTable, k: usize) -> Vec<RankedRow> {
    rank_ordered(table, k, RankOrder::Descending)
}

/// Like [`rank_top`] but with an explicit sort order. Ties break by
/// soc_code ascending in either order.
pub fn rank_ordered(table: &ScoreTable, k: usize, order: RankOrder) -> Vec<RankedRow> {
    let mut rows: Vec<&ScoreRow> = table.rows.iter().collect();
    rows.sort_by(|a, b| {
        let by_score = match order {
            RankOrder::Descending => b.ranking_score().total_cmp(&a.ranking_score()),
            RankOrder::Ascending => a.ranking_score().total_cmp(&b.ranking_score()),
        };
        by_score.then_with(|| a.soc_code.cmp(&b.soc_code))
    });
    rows.iter()
        .take(k)
        .enumerate()
        .map(|(i, row)| RankedRow {
            rank: i + 1,
            soc_code: row.soc_code.clone(),
            title: row.title.clone(),
            score: row.ranking_score(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ability_exposure;

    fn matrix_1x3(values: [f64; 3]) -> RelatednessMatrix {
        RelatednessMatrix::new(
            vec!["app".into()],
            vec!["a".into(), "b".into(), "c".into()],
            vec![values.to_vec()],
        )
        .unwrap()
    }

    /// Profile concentrated on one ability with maximal ratings.
    fn one_hot_profile(soc: &str, index: usize) -> OccupationProfile {
        let mut level = vec![None; 3];
        let mut importance = vec![None; 3];
        level[index] = Some(7.0);
        importance[index] = Some(5.0);
        OccupationProfile::new(soc, format!("Occupation {soc}"), level, importance).unwrap()
    }

    fn exposure_2(values: [f64; 2]) -> AbilityExposureVector {
        let m = RelatednessMatrix::new(
            vec!["app".into()],
            vec!["a".into(), "b".into()],
            vec![values.to_vec()],
        )
        .unwrap();
        ability_exposure(&m, &WeightVector::uniform(1).unwrap()).unwrap()
    }

    #[test]
    fn equal_weights_average_the_exposures() {
        let exposure = exposure_2([0.5, 1.0]);
        let p = OccupationProfile::new(
            "11-0001",
            "Balanced",
            vec![Some(7.0), Some(7.0)],
            vec![Some(5.0), Some(5.0)],
        )
        .unwrap();
        let raw = occupation_raw_score(&exposure, &p, &ScaleBounds::default()).unwrap();
        assert!((raw - 0.75).abs() < 1e-15);
    }

    #[test]
    fn single_ability_returns_that_exposure() {
        let exposure = exposure_2([0.5, 1.0]);
        let p = OccupationProfile::new(
            "11-0002",
            "Narrow",
            vec![Some(7.0), None],
            vec![Some(5.0), None],
        )
        .unwrap();
        let raw = occupation_raw_score(&exposure, &p, &ScaleBounds::default()).unwrap();
        assert_eq!(raw, 0.5);
    }

    #[test]
    fn constant_exposure_scores_the_constant() {
        let exposure = exposure_2([0.4, 0.4]);
        let p = OccupationProfile::new(
            "11-0003",
            "Any",
            vec![Some(3.0), Some(6.0)],
            vec![Some(2.0), Some(4.0)],
        )
        .unwrap();
        let raw = occupation_raw_score(&exposure, &p, &ScaleBounds::default()).unwrap();
        assert!((raw - 0.4).abs() < 1e-15);
    }

    #[test]
    fn degenerate_profile_is_an_error() {
        let exposure = exposure_2([0.5, 1.0]);
        let p = OccupationProfile::new("11-0004", "Empty", vec![None, None], vec![None, None])
            .unwrap();
        let err = occupation_raw_score(&exposure, &p, &ScaleBounds::default()).unwrap_err();
        assert!(matches!(err, Error::DegenerateProfile { .. }));
    }

    #[test]
    fn arithmetic_raw_scores_standardize_to_unit_steps() {
        // Raw scores (1, 2, 3) by construction.
        let m = matrix_1x3([1.0, 2.0, 3.0]);
        let w = WeightVector::uniform(1).unwrap();
        let profiles = vec![
            one_hot_profile("11-0001", 0),
            one_hot_profile("11-0002", 1),
            one_hot_profile("11-0003", 2),
        ];
        let out = score_all(&m, &w, &profiles, &ScaleBounds::default()).unwrap();
        let std: Vec<f64> = out
            .table
            .rows
            .iter()
            .map(|r| r.standardized_score.unwrap())
            .collect();
        for (got, want) in std.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-12, "{std:?}");
        }
        assert_eq!(out.table.stats.count, 3);
        assert!((out.table.stats.raw_mean - 2.0).abs() < 1e-15);
    }

    #[test]
    fn permuting_profiles_permutes_rows() {
        let m = matrix_1x3([1.0, 2.0, 3.0]);
        let w = WeightVector::uniform(1).unwrap();
        let a = vec![
            one_hot_profile("11-0001", 0),
            one_hot_profile("11-0002", 1),
            one_hot_profile("11-0003", 2),
        ];
        let b = vec![a[2].clone(), a[0].clone(), a[1].clone()];
        let bounds = ScaleBounds::default();
        let out_a = score_all(&m, &w, &a, &bounds).unwrap();
        let out_b = score_all(&m, &w, &b, &bounds).unwrap();
        assert_eq!(out_a.table.rows[2], out_b.table.rows[0]);
        assert_eq!(out_a.table.rows[0], out_b.table.rows[1]);
        assert_eq!(out_a.table.rows[1], out_b.table.rows[2]);
    }

    #[test]
    fn degenerate_profiles_are_excluded_and_reported() {
        let m = matrix_1x3([1.0, 2.0, 3.0]);
        let w = WeightVector::uniform(1).unwrap();
        let empty = OccupationProfile::new(
            "11-0009",
            "Unrated",
            vec![None, None, None],
            vec![None, None, None],
        )
        .unwrap();
        let profiles = vec![
            one_hot_profile("11-0001", 0),
            empty,
            one_hot_profile("11-0003", 2),
        ];
        let out = score_all(&m, &w, &profiles, &ScaleBounds::default()).unwrap();
        assert_eq!(out.table.len(), 2);
        assert_eq!(out.excluded.len(), 1);
        assert_eq!(out.excluded[0].soc_code, "11-0009");
    }

    #[test]
    fn fewer_than_two_scoreable_is_insufficient() {
        let m = matrix_1x3([1.0, 2.0, 3.0]);
        let w = WeightVector::uniform(1).unwrap();
        let profiles = vec![one_hot_profile("11-0001", 0)];
        let err = score_all(&m, &w, &profiles, &ScaleBounds::default()).unwrap_err();
        assert!(matches!(err, Error::InsufficientData(_)));
    }

    #[test]
    fn zero_variance_keeps_raw_scores_without_standardized() {
        let m = matrix_1x3([2.0, 2.0, 2.0]);
        let w = WeightVector::uniform(1).unwrap();
        let profiles = vec![one_hot_profile("11-0001", 0), one_hot_profile("11-0002", 1)];
        let out = score_all(&m, &w, &profiles, &ScaleBounds::default()).unwrap();
        assert!(out.table.rows.iter().all(|r| r.standardized_score.is_none()));
        assert!(out.table.rows.iter().all(|r| r.raw_score == 2.0));
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn duplicate_soc_codes_rejected() {
        let m = matrix_1x3([1.0, 2.0, 3.0]);
        let w = WeightVector::uniform(1).unwrap();
        let profiles = vec![one_hot_profile("11-0001", 0), one_hot_profile("11-0001", 1)];
        let err = score_all(&m, &w, &profiles, &ScaleBounds::default()).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    fn table(rows: &[(&str, &str, f64)]) -> ScoreTable {
        ScoreTable::from_rows(
            "test",
            rows.iter()
                .map(|(soc, title, s)| ScoreRow {
                    soc_code: soc.to_string(),
                    title: title.to_string(),
                    raw_score: *s,
                    standardized_score: Some(*s),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_top_sorts_descending_with_soc_tiebreak() {
        let t = table(&[
            ("22-0002", "B", 1.0),
            ("11-0001", "A", 1.0),
            ("33-0003", "C", 2.0),
        ]);
        let ranked = rank_top(&t, 10);
        let order: Vec<&str> = ranked.iter().map(|r| r.soc_code.as_str()).collect();
        assert_eq!(order, ["33-0003", "11-0001", "22-0002"]);
        assert_eq!(ranked[0].rank, 1);
    }

    #[test]
    fn rank_truncates_to_k_and_to_table_size() {
        let t = table(&[("11-0001", "A", 1.0), ("22-0002", "B", 2.0)]);
        assert_eq!(rank_top(&t, 1).len(), 1);
        assert_eq!(rank_top(&t, 5).len(), 2);
    }

    #[test]
    fn rank_ascending_starts_at_minimum() {
        let t = table(&[
            ("11-0001", "A", 0.5),
            ("22-0002", "B", -1.5),
            ("33-0003", "C", 2.0),
        ]);
        let ranked = rank_ordered(&t, 1, RankOrder::Ascending);
        assert_eq!(ranked[0].soc_code, "22-0002");
        assert_eq!(ranked[0].score, -1.5);
    }

    #[test]
    fn empty_table_ranks_empty() {
        let t = ScoreTable::from_rows("empty", Vec::new()).unwrap();
        assert!(rank_top(&t, 3).is_empty());
    }
}
