//! Employment-weighted aggregation of occupation scores to groups
//! (industries or geographies).

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::score::ScoreTable;

/// One (group, occupation, employment) staffing row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub group_id: String,
    pub group_name: String,
    pub soc_code: String,
    pub employment: f64,
}

/// Employment weights linking occupations to groups. `group_kind` is a
/// free label, conventionally "industry" or "geography".
#[derive(Debug, Clone, PartialEq)]
pub struct GroupWeights {
    pub group_kind: String,
    pub entries: Vec<GroupEntry>,
}

impl GroupWeights {
    pub fn new(group_kind: impl Into<String>, entries: Vec<GroupEntry>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &entries {
            if e.group_id.trim().is_empty() || e.soc_code.trim().is_empty() {
                return Err(Error::Validation(
                    "grouping entry with empty group_id or soc_code".to_string(),
                ));
            }
            if !e.employment.is_finite() || e.employment < 0.0 {
                return Err(Error::Validation(format!(
                    "employment for ({}, {}) must be finite and >= 0, got {}",
                    e.group_id, e.soc_code, e.employment
                )));
            }
            if !seen.insert((e.group_id.as_str(), e.soc_code.as_str())) {
                return Err(Error::Validation(format!(
                    "duplicate grouping pair ({}, {})",
                    e.group_id, e.soc_code
                )));
            }
        }
        Ok(Self {
            group_kind: group_kind.into(),
            entries,
        })
    }
}

/// One aggregated group score. `coverage` is the fraction of the
/// group's employment that matched a scored occupation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupRow {
    pub group_id: String,
    pub group_name: String,
    pub exposure_score: f64,
    pub coverage: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupScoreTable {
    pub group_kind: String,
    pub rows: Vec<GroupRow>,
}

/// A group dropped from the aggregation, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedGroup {
    pub group_id: String,
    pub group_name: String,
    pub reason: String,
}

/// Result of [`aggregate`]: the group table plus report material.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateOutcome {
    pub table: GroupScoreTable,
    pub skipped: Vec<SkippedGroup>,
    /// Grouping rows whose soc_code is absent from the score table.
    pub unmatched: Vec<GroupEntry>,
}

/// Employment-weighted mean of the occupation scores within each group.
///
/// Groups appear in order of first appearance in the staffing entries.
/// A group none of whose employment joins a scored occupation is skipped
/// and reported; if no pair joins at all the whole call fails with
/// [`Error::EmptyJoin`].
pub fn aggregate(table: &ScoreTable, weights: &GroupWeights) -> Result<AggregateOutcome> {
    aggregate_with(table, weights, Execution::default())
}

/// [`aggregate`] with an explicit execution mode; sequential and
/// parallel runs produce bit-identical tables.
pub fn aggregate_with(
    table: &ScoreTable,
    weights: &GroupWeights,
    exec: Execution,
) -> Result<AggregateOutcome> {
    let scores: HashMap<&str, f64> = table
        .rows
        .iter()
        .map(|r| (r.soc_code.as_str(), r.ranking_score()))
        .collect();

    // Bucket entries per group, keeping first-appearance order.
    let mut order: Vec<&str> = Vec::new();
    let mut buckets: HashMap<&str, Vec<&GroupEntry>> = HashMap::new();
    for entry in &weights.entries {
        let bucket = buckets.entry(entry.group_id.as_str()).or_default();
        if bucket.is_empty() {
            order.push(entry.group_id.as_str());
        }
        bucket.push(entry);
    }

    let groups: Vec<&Vec<&GroupEntry>> = order.iter().map(|id| &buckets[id]).collect();
    let aggregated = map_ordered(&groups, exec, |entries| {
        let mut total_employment = 0.0;
        let mut matched_employment = 0.0;
        let mut weighted_score = 0.0;
        for e in *entries {
            total_employment += e.employment;
            if let Some(&score) = scores.get(e.soc_code.as_str()) {
                matched_employment += e.employment;
                weighted_score += score * e.employment;
            }
        }
        if matched_employment > 0.0 {
            Ok(GroupRow {
                group_id: entries[0].group_id.clone(),
                group_name: entries[0].group_name.clone(),
                exposure_score: weighted_score / matched_employment,
                coverage: matched_employment / total_employment,
            })
        } else {
            Err(SkippedGroup {
                group_id: entries[0].group_id.clone(),
                group_name: entries[0].group_name.clone(),
                reason: "no employment matched a scored occupation".to_string(),
            })
        }
    });

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for result in aggregated {
        match result {
            Ok(row) => rows.push(row),
            Err(skip) => skipped.push(skip),
        }
    }

    if rows.is_empty() {
        return Err(Error::EmptyJoin);
    }

    let unmatched: Vec<GroupEntry> = weights
        .entries
        .iter()
        .filter(|e| !scores.contains_key(e.soc_code.as_str()))
        .cloned()
        .collect();

    Ok(AggregateOutcome {
        table: GroupScoreTable {
            group_kind: weights.group_kind.clone(),
            rows,
        },
        skipped,
        unmatched,
    })
}

/// A ranked group; `rank` is 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedGroup {
    pub rank: usize,
    pub group_id: String,
    pub group_name: String,
    pub exposure_score: f64,
}

/// Top `k` groups by exposure, descending; ties break by group_id
/// ascending.
pub fn rank_groups(table: &GroupScoreTable, k: usize) -> Vec<RankedGroup> {
    let mut rows: Vec<&GroupRow> = table.rows.iter().collect();
    rows.sort_by(|a, b| {
        b.exposure_score
            .total_cmp(&a.exposure_score)
            .then_with(|| a.group_id.cmp(&b.group_id))
    });
    rows.iter()
        .take(k)
        .enumerate()
        .map(|(i, row)| RankedGroup {
            rank: i + 1,
            group_id: row.group_id.clone(),
            group_name: row.group_name.clone(),
            exposure_score: row.exposure_score,
        })
        .collect()
}
