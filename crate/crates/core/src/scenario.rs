// SPDX-License-Identifier: Apache-2.0

//! Batch input for the report commands: a bus, the patterns to time and the
//! models to time them with. Units are spelled out in the bus keys.

use serde::{Deserialize, Serialize};

use crate::analytic::{worst_pattern, Evaluation, ProfileEvaluator, WindowModel};
use crate::bus::{BusSpec, CrosstalkClass, ModelTag, TransitionPattern};
use crate::error::{Error, Result};

/// Reference bus on three wires, worst pattern per class, closed-form delays.
pub const REFERENCE_SCENARIO: &str = include_str!("../scenarios/reference.json");

/// Same bus on five wires.
pub const FIVE_WIRE_SCENARIO: &str = include_str!("../scenarios/five_wire.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::InvalidScenario(format!("unknown output format {s:?}"))),
        }
    }
}

/// Expands into several patterns once the bus width is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Directive {
    /// Worst pattern of every class of the window model matching the bus
    /// width (three or five wires).
    WorstPerClass,
    /// Worst pattern of every class of the named window model; the bus must
    /// be exactly as wide as the window.
    Worst(WindowModel),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternEntry {
    Pattern(TransitionPattern),
    Directive(Directive),
}

/// One concrete row: pattern plus the wire it is timed on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub pattern: TransitionPattern,
    /// Zero-based.
    pub wire: usize,
    /// Set for rows expanded from a directive.
    pub class: Option<CrosstalkClass>,
}

fn default_models() -> Vec<ModelTag> {
    vec![ModelTag::Baseline, ModelTag::Simulator]
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub bus: BusSpec,
    #[serde(default)]
    pub patterns: Vec<PatternEntry>,
    #[serde(default = "default_models")]
    pub models: Vec<ModelTag>,
    #[serde(default)]
    pub evaluation: Evaluation,
    #[serde(default = "yes")]
    pub buffered: bool,
    /// Zero-based wire timed for explicit patterns; defaults to the middle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed_wire: Option<usize>,
    #[serde(default)]
    pub output: OutputFormat,
}

impl Scenario {
    pub fn reference() -> Self {
        Scenario::from_json(REFERENCE_SCENARIO).expect("bundled scenario parses")
    }

    /// Parses and validates.
    pub fn from_json(text: &str) -> Result<Self> {
        let scenario: Scenario = serde_json::from_str(text)?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn evaluator(&self) -> ProfileEvaluator {
        ProfileEvaluator { evaluation: self.evaluation, buffered: self.buffered }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.bus.wire_count();
        if let Some(w) = self.observed_wire {
            if w >= m {
                return Err(Error::WireOutOfRange { index: w, count: m });
            }
        }
        for (i, entry) in self.patterns.iter().enumerate() {
            if let PatternEntry::Pattern(p) = entry {
                if p.wire_count() != m {
                    return Err(Error::InvalidScenario(format!(
                        "pattern {} ({p}) has {} wires, bus has {m}",
                        i + 1,
                        p.wire_count()
                    )));
                }
            }
        }
        let mut seen = Vec::new();
        for &model in &self.models {
            if seen.contains(&model) {
                return Err(Error::InvalidScenario(format!("model {model} listed twice")));
            }
            seen.push(model);
        }
        self.cases().map(|_| ())
    }

    /// Explicit patterns and expanded directives, in file order.
    pub fn cases(&self) -> Result<Vec<Case>> {
        let m = self.bus.wire_count();
        let observed = self.observed_wire.unwrap_or(m / 2);
        let mut out = Vec::new();
        for entry in &self.patterns {
            match *entry {
                PatternEntry::Pattern(ref pattern) => {
                    out.push(Case { pattern: pattern.clone(), wire: observed, class: None })
                }
                PatternEntry::Directive(directive) => {
                    let model = match directive {
                        Directive::WorstPerClass => match m {
                            3 => WindowModel::ThreeWire,
                            5 => WindowModel::FiveWire,
                            _ => {
                                return Err(Error::InvalidScenario(format!(
                                    "worst-per-class needs a 3- or 5-wire bus, got {m}"
                                )))
                            }
                        },
                        Directive::Worst(model) => model,
                    };
                    if model.width() != m {
                        return Err(Error::InvalidScenario(format!(
                            "{model} worst patterns need a {}-wire bus, got {m}",
                            model.width()
                        )));
                    }
                    for class in CrosstalkClass::ALL.into_iter().filter(|c| *c <= model.max_class()) {
                        out.push(Case {
                            pattern: worst_pattern(model, class)?,
                            wire: model.observed(),
                            class: Some(class),
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}
