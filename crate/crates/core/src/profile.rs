//! Occupation ability profiles and the level/importance weighting.

use serde::Deserialize;

use crate::error::{Error, Result};

/// Fixed rating-scale bounds used to put level and importance on a
/// common [0, 1] interval before they are multiplied.
///
/// Using fixed scale bounds (rather than per-dataset min/max) keeps
/// scores stable when profiles are loaded in subsets.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct ScaleBounds {
    #[serde(default = "default_level_min")]
    pub level_min: f64,
    #[serde(default = "default_level_max")]
    pub level_max: f64,
    #[serde(default = "default_importance_min")]
    pub importance_min: f64,
    #[serde(default = "default_importance_max")]
    pub importance_max: f64,
}

fn default_level_min() -> f64 {
    0.0
}
fn default_level_max() -> f64 {
    7.0
}
fn default_importance_min() -> f64 {
    1.0
}
fn default_importance_max() -> f64 {
    5.0
}

impl Default for ScaleBounds {
    /// O*NET rating scales: level 0-7, importance 1-5.
    fn default() -> Self {
        Self {
            level_min: 0.0,
            level_max: 7.0,
            importance_min: 1.0,
            importance_max: 5.0,
        }
    }
}

impl ScaleBounds {
    pub fn validate(&self) -> Result<()> {
        for (name, min, max) in [
            ("level", self.level_min, self.level_max),
            ("importance", self.importance_min, self.importance_max),
        ] {
            if !min.is_finite() || !max.is_finite() || min >= max {
                return Err(Error::Configuration(format!(
                    "{name} scale bounds must be finite with min < max, got [{min}, {max}]"
                )));
            }
        }
        Ok(())
    }

    fn rescale(
        &self,
        measure: Measure,
        value: f64,
        soc_code: &str,
        ability: &str,
    ) -> Result<f64> {
        let (min, max) = match measure {
            Measure::Level => (self.level_min, self.level_max),
            Measure::Importance => (self.importance_min, self.importance_max),
        };
        if value < min || value > max {
            return Err(Error::Validation(format!(
                "occupation {soc_code}, ability {ability}: {} value {value} outside scale bounds [{min}, {max}]",
                measure.name()
            )));
        }
        Ok((value - min) / (max - min))
    }
}

#[derive(Debug, Clone, Copy)]
enum Measure {
    Level,
    Importance,
}

impl Measure {
    fn name(self) -> &'static str {
        match self {
            Measure::Level => "level",
            Measure::Importance => "importance",
        }
    }
}

/// Per-occupation ability ratings, positionally aligned to the ability
/// order of the relatedness matrix. `None` marks a rating the source
/// data does not provide; such abilities get combined weight 0.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationProfile {
    soc_code: String,
    title: String,
    level: Vec<Option<f64>>,
    importance: Vec<Option<f64>>,
}

impl OccupationProfile {
    pub fn new(
        soc_code: impl Into<String>,
        title: impl Into<String>,
        level: Vec<Option<f64>>,
        importance: Vec<Option<f64>>,
    ) -> Result<Self> {
        let soc_code = soc_code.into();
        let title = title.into();
        if soc_code.trim().is_empty() {
            return Err(Error::Validation(format!(
                "occupation {title:?} has an empty soc_code"
            )));
        }
        if level.len() != importance.len() {
            return Err(Error::Validation(format!(
                "occupation {soc_code}: level has {} entries, importance {}",
                level.len(),
                importance.len()
            )));
        }
        for (measure, values) in [("level", &level), ("importance", &importance)] {
            if let Some(v) = values.iter().flatten().find(|v| !v.is_finite() || **v < 0.0) {
                return Err(Error::Validation(format!(
                    "occupation {soc_code}: {measure} value {v} must be finite and >= 0"
                )));
            }
        }
        Ok(Self {
            soc_code,
            title,
            level,
            importance,
        })
    }

    pub fn soc_code(&self) -> &str {
        &self.soc_code
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn ability_count(&self) -> usize {
        self.level.len()
    }

    pub fn level(&self, ability_index: usize) -> Option<f64> {
        self.level[ability_index]
    }

    pub fn importance(&self, ability_index: usize) -> Option<f64> {
        self.importance[ability_index]
    }

    /// Combined prevalence-importance weight for one ability: both
    /// ratings min-max rescaled onto [0, 1] and multiplied. An ability
    /// missing either rating weighs 0.
    pub fn combined_weight(&self, ability_index: usize, bounds: &ScaleBounds) -> Result<f64> {
        let ability = format!("#{}", ability_index + 1);
        self.combined_weight_named(ability_index, &ability, bounds)
    }

    pub(crate) fn combined_weight_named(
        &self,
        ability_index: usize,
        ability: &str,
        bounds: &ScaleBounds,
    ) -> Result<f64> {
        let (Some(level), Some(importance)) =
            (self.level[ability_index], self.importance[ability_index])
        else {
            return Ok(0.0);
        };
        let l = bounds.rescale(Measure::Level, level, &self.soc_code, ability)?;
        let i = bounds.rescale(Measure::Importance, importance, &self.soc_code, ability)?;
        Ok(l * i)
    }
}
