//! Application-ability relatedness matrix and per-application weights.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Dense application x ability matrix of relatedness scores.
///
/// Row order follows `applications`, column order follows `abilities`.
/// All values are finite and nonnegative; identifiers are unique.
#[derive(Debug, Clone, PartialEq)]
pub struct RelatednessMatrix {
    applications: Vec<String>,
    abilities: Vec<String>,
    /// Row-major, `applications.len() * abilities.len()` values.
    values: Vec<f64>,
}

impl RelatednessMatrix {
    pub fn new(
        applications: Vec<String>,
        abilities: Vec<String>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if applications.is_empty() || abilities.is_empty() {
            return Err(Error::Validation(
                "relatedness matrix must have at least one application and one ability"
                    .to_string(),
            ));
        }
        check_unique("application", &applications)?;
        check_unique("ability", &abilities)?;
        if rows.len() != applications.len() {
            return Err(Error::Validation(format!(
                "matrix has {} rows but {} applications",
                rows.len(),
                applications.len()
            )));
        }

        let mut values = Vec::with_capacity(applications.len() * abilities.len());
        for (app, row) in applications.iter().zip(&rows) {
            if row.len() != abilities.len() {
                return Err(Error::Validation(format!(
                    "row for application {app} has {} values but there are {} abilities",
                    row.len(),
                    abilities.len()
                )));
            }
            for (ability, &v) in abilities.iter().zip(row) {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Validation(format!(
                        "relatedness score for ({app}, {ability}) must be finite and >= 0, got {v}"
                    )));
                }
            }
            values.extend_from_slice(row);
        }

        Ok(Self {
            applications,
            abilities,
            values,
        })
    }

    pub fn applications(&self) -> &[String] {
        &self.applications
    }

    pub fn abilities(&self) -> &[String] {
        &self.abilities
    }

    pub fn application_count(&self) -> usize {
        self.applications.len()
    }

    pub fn ability_count(&self) -> usize {
        self.abilities.len()
    }

    /// Relatedness score for (application row `i`, ability column `j`).
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.abilities.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.abilities.len();
        &self.values[i * w..(i + 1) * w]
    }

    pub fn application_index(&self, id: &str) -> Option<usize> {
        self.applications.iter().position(|a| a == id)
    }
}

fn check_unique(kind: &str, ids: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if id.trim().is_empty() {
            return Err(Error::Validation(format!("{kind} identifier is empty")));
        }
        if !seen.insert(id.as_str()) {
            return Err(Error::Validation(format!(
                "duplicate {kind} identifier: {id}"
            )));
        }
    }
    Ok(())
}

/// Named per-application weights, aligned to a matrix's application order.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    name: String,
    weights: Vec<f64>,
}

impl WeightVector {
    /// Weights must be finite and nonnegative, with at least one positive
    /// entry; all-zero weights would make every exposure vanish.
    pub fn new(name: impl Into<String>, weights: Vec<f64>) -> Result<Self> {
        let name = name.into();
        if weights.is_empty() {
            return Err(Error::Validation(format!(
                "weight vector {name} is empty"
            )));
        }
        for (i, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::Validation(format!(
                    "weight vector {name} has invalid weight {w} at position {}",
                    i + 1
                )));
            }
        }
        if weights.iter().all(|&w| w == 0.0) {
            return Err(Error::Validation(format!(
                "weight vector {name} must have at least one weight > 0"
            )));
        }
        Ok(Self { name, weights })
    }

    /// All-ones weights: every application counts equally.
    pub fn uniform(count: usize) -> Result<Self> {
        Self::new("uniform", vec![1.0; count])
    }

    /// Weight 1 on a single application, 0 elsewhere.
    pub fn one_hot(name: impl Into<String>, count: usize, index: usize) -> Result<Self> {
        if index >= count {
            return Err(Error::Validation(format!(
                "one-hot index {index} out of range for {count} applications"
            )));
        }
        let mut weights = vec![0.0; count];
        weights[index] = 1.0;
        Self::new(name, weights)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Per-ability exposure: the weighted column sums of the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AbilityExposureVector {
    abilities: Vec<String>,
    values: Vec<f64>,
}

impl AbilityExposureVector {
    pub fn abilities(&self) -> &[String] {
        &self.abilities
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Weighted sum of relatedness scores per ability: for each ability j,
/// the exposure is `sum_i weights[i] * matrix[i][j]`, summed in row order.
pub fn ability_exposure(
    matrix: &RelatednessMatrix,
    weights: &WeightVector,
) -> Result<AbilityExposureVector> {
    if weights.len() != matrix.application_count() {
        return Err(Error::Alignment(format!(
            "weight vector {} has {} weights but the matrix has {} applications",
            weights.name(),
            weights.len(),
            matrix.application_count()
        )));
    }

    let mut values = vec![0.0; matrix.ability_count()];
    for (i, &alpha) in weights.weights().iter().enumerate() {
        for (j, value) in values.iter_mut().enumerate() {
            *value += alpha * matrix.value(i, j);
        }
    }

    Ok(AbilityExposureVector {
        abilities: matrix.abilities().to_vec(),
        values,
    })
}
